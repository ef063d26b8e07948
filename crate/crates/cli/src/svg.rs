//! Minimal hand-written SVG scatter plot with a per-group legend.

use std::collections::BTreeMap;
use std::fmt::Write as _;

const WIDTH: f64 = 640.0;
const HEIGHT: f64 = 480.0;
const LEFT: f64 = 64.0;
const RIGHT: f64 = 150.0;
const TOP: f64 = 24.0;
const BOTTOM: f64 = 52.0;
const TICKS: usize = 5;

const PALETTE: [&str; 10] = [
    "#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf",
];

pub struct Point<'a> {
    pub x: f64,
    pub y: f64,
    pub group: &'a str,
}

/// Axis range snapped outward to multiples of 0.05.
fn axis_range(values: impl Iterator<Item = f64>) -> (f64, f64) {
    let (mut lo, mut hi) = values.fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| (lo.min(v), hi.max(v)));
    if !lo.is_finite() {
        return (0.0, 1.0);
    }
    lo = (lo / 0.05).floor() * 0.05;
    hi = (hi / 0.05).ceil() * 0.05;
    if hi - lo < 0.05 {
        hi = lo + 0.05;
    }
    (lo, hi)
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;").replace('"', "&quot;")
}

pub fn scatter(points: &[Point<'_>], x_label: &str, y_label: &str, comment: &str) -> String {
    let groups: BTreeMap<&str, &str> = {
        let mut names: Vec<&str> = points.iter().map(|p| p.group).collect();
        names.sort_unstable();
        names.dedup();
        names.into_iter().enumerate().map(|(i, n)| (n, PALETTE[i % PALETTE.len()])).collect()
    };
    let (x0, x1) = axis_range(points.iter().map(|p| p.x));
    let (y0, y1) = axis_range(points.iter().map(|p| p.y));
    let pw = WIDTH - LEFT - RIGHT;
    let ph = HEIGHT - TOP - BOTTOM;
    let sx = |x: f64| LEFT + (x - x0) / (x1 - x0) * pw;
    let sy = |y: f64| TOP + ph - (y - y0) / (y1 - y0) * ph;

    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="11">"#
    );
    let _ = writeln!(s, "<!-- {} -->", escape(comment));
    let _ = writeln!(s, r#"<rect x="0" y="0" width="{WIDTH}" height="{HEIGHT}" fill="white"/>"#);
    let _ = writeln!(
        s,
        r#"<rect x="{LEFT}" y="{TOP}" width="{pw}" height="{ph}" fill="none" stroke="black"/>"#
    );
    for i in 0..TICKS {
        let t = i as f64 / (TICKS - 1) as f64;
        let xv = x0 + t * (x1 - x0);
        let yv = y0 + t * (y1 - y0);
        let (px, py) = (sx(xv), sy(yv));
        let _ = writeln!(
            s,
            r##"<line x1="{px:.2}" y1="{:.2}" x2="{px:.2}" y2="{:.2}" stroke="#ccc"/><text x="{px:.2}" y="{:.2}" text-anchor="middle">{xv:.3}</text>"##,
            TOP,
            TOP + ph,
            TOP + ph + 16.0
        );
        let _ = writeln!(
            s,
            r##"<line x1="{LEFT}" y1="{py:.2}" x2="{:.2}" y2="{py:.2}" stroke="#ccc"/><text x="{:.2}" y="{:.2}" text-anchor="end">{yv:.3}</text>"##,
            LEFT + pw,
            LEFT - 6.0,
            py + 4.0
        );
    }
    let _ = writeln!(
        s,
        r#"<text x="{:.2}" y="{:.2}" text-anchor="middle">{}</text>"#,
        LEFT + pw / 2.0,
        HEIGHT - 12.0,
        escape(x_label)
    );
    let _ = writeln!(
        s,
        r#"<text x="16" y="{:.2}" text-anchor="middle" transform="rotate(-90 16 {:.2})">{}</text>"#,
        TOP + ph / 2.0,
        TOP + ph / 2.0,
        escape(y_label)
    );
    for p in points {
        let _ = writeln!(
            s,
            r#"<circle cx="{:.2}" cy="{:.2}" r="3.5" fill="{}" fill-opacity="0.8"/>"#,
            sx(p.x),
            sy(p.y),
            groups[p.group]
        );
    }
    for (i, (name, color)) in groups.iter().enumerate() {
        let y = TOP + 10.0 + 18.0 * i as f64;
        let x = LEFT + pw + 16.0;
        let _ = writeln!(
            s,
            r#"<g class="legend"><circle cx="{x:.2}" cy="{y:.2}" r="4" fill="{color}"/><text x="{:.2}" y="{:.2}">{}</text></g>"#,
            x + 10.0,
            y + 4.0,
            escape(name)
        );
    }
    s.push_str("</svg>\n");
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn legend_has_one_entry_per_group() {
        let pts = [
            Point { x: 0.9, y: 0.5, group: "b" },
            Point { x: 0.95, y: 0.7, group: "a" },
            Point { x: 1.0, y: 1.0, group: "b" },
        ];
        let svg = scatter(&pts, "D", "S_sim", "hash");
        assert_eq!(svg.matches(r#"class="legend""#).count(), 2);
        assert_eq!(svg.matches("<circle").count(), 5);
        assert_eq!(svg, scatter(&pts, "D", "S_sim", "hash"));
    }

    #[test]
    fn degenerate_range_is_widened() {
        assert_eq!(axis_range([1.0, 1.0].into_iter()), (1.0, 1.05));
        let (lo, hi) = axis_range([0.93, 0.97].into_iter());
        assert!((lo - 0.9).abs() < 1e-12 && (hi - 1.0).abs() < 1e-12);
    }
}
