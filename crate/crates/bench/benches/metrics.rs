use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use srif_core::filter::gaussian_blur;
use srif_core::synthetic::textured_image;
use srif_core::{lpc_si, reduce, score_pair, structure_map, DfConfig, LpcConfig, SrifConfig};

fn pyramid(c: &mut Criterion) {
    let mut g = c.benchmark_group("reduce");
    for size in [128usize, 512] {
        let img = textured_image(size, size, 1);
        g.bench_with_input(BenchmarkId::from_parameter(size), &img, |b, img| b.iter(|| reduce(img).unwrap()));
    }
    g.finish();
}

fn structure(c: &mut Criterion) {
    let cfg = DfConfig::default();
    let x = textured_image(256, 256, 2);
    let y = gaussian_blur(&x, 1.0);
    c.bench_function("structure_map/256", |b| b.iter(|| structure_map(&x, &y, &cfg).unwrap()));
}

fn sharpness(c: &mut Criterion) {
    let cfg = LpcConfig::default();
    let mut g = c.benchmark_group("lpc_si");
    for size in [128usize, 256] {
        let img = textured_image(size, size, 3);
        g.bench_with_input(BenchmarkId::from_parameter(size), &img, |b, img| b.iter(|| lpc_si(img, &cfg).unwrap()));
    }
    g.finish();
}

fn end_to_end(c: &mut Criterion) {
    let cfg = SrifConfig::default();
    let mut g = c.benchmark_group("score_pair");
    g.sample_size(10);
    for size in [256usize, 512] {
        let r = textured_image(size, size, 4);
        let t = gaussian_blur(&r, 1.5);
        g.bench_function(BenchmarkId::from_parameter(size), |b| b.iter(|| score_pair(&r, &t, &cfg, None).unwrap()));
    }
    g.finish();
}

criterion_group!(benches, pyramid, structure, sharpness, end_to_end);
criterion_main!(benches);
