use crate::error::{Result, SrifError};

/// A single-channel image with samples in `[0, 1]`, stored row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct ImagePlane {
    width: usize,
    height: usize,
    data: Vec<f64>,
}

impl ImagePlane {
    /// Builds a plane from raw samples. Non-finite samples become 0 and
    /// everything else is clamped to `[0, 1]`.
    pub fn new(width: usize, height: usize, data: Vec<f64>) -> Result<Self> {
        if data.len() != width * height {
            return Err(SrifError::DimensionMismatch {
                what: "sample buffer",
                expected_w: width,
                expected_h: height,
                got_w: data.len(),
                got_h: 1,
            });
        }
        let data = data
            .into_iter()
            .map(|v| if v.is_finite() { v.clamp(0.0, 1.0) } else { 0.0 })
            .collect();
        Ok(Self { width, height, data })
    }

    /// Builds a plane without clamping. Used for band-pass maps (Laplacian
    /// levels, normalized bands) whose samples are signed.
    pub fn from_raw(width: usize, height: usize, data: Vec<f64>) -> Self {
        assert_eq!(data.len(), width * height, "sample buffer length");
        Self { width, height, data }
    }

    pub fn filled(width: usize, height: usize, value: f64) -> Self {
        Self::from_raw(width, height, vec![value; width * height])
    }

    pub fn from_fn(width: usize, height: usize, mut f: impl FnMut(usize, usize) -> f64) -> Self {
        let mut data = Vec::with_capacity(width * height);
        for y in 0..height {
            for x in 0..width {
                data.push(f(x, y));
            }
        }
        Self::from_raw(width, height, data)
    }

    #[inline]
    pub fn width(&self) -> usize {
        self.width
    }

    #[inline]
    pub fn height(&self) -> usize {
        self.height
    }

    #[inline]
    pub fn dims(&self) -> (usize, usize) {
        (self.width, self.height)
    }

    #[inline]
    pub fn data(&self) -> &[f64] {
        &self.data
    }

    pub fn into_data(self) -> Vec<f64> {
        self.data
    }

    #[inline]
    pub fn get(&self, x: usize, y: usize) -> f64 {
        self.data[y * self.width + x]
    }

    #[inline]
    pub fn set(&mut self, x: usize, y: usize, v: f64) {
        self.data[y * self.width + x] = v;
    }

    pub fn row(&self, y: usize) -> &[f64] {
        &self.data[y * self.width..(y + 1) * self.width]
    }

    pub fn mean(&self) -> f64 {
        self.data.iter().sum::<f64>() / self.data.len() as f64
    }

    /// Element-wise map, keeping dimensions.
    pub fn map(&self, f: impl Fn(f64) -> f64) -> Self {
        Self::from_raw(self.width, self.height, self.data.iter().map(|&v| f(v)).collect())
    }

    /// Transposed copy (rotation helpers and column passes use it).
    pub fn transpose(&self) -> Self {
        Self::from_fn(self.height, self.width, |x, y| self.get(y, x))
    }

    /// Rotates by 90 degrees counter-clockwise.
    pub fn rotate90(&self) -> Self {
        let (w, h) = self.dims();
        Self::from_fn(h, w, |x, y| self.get(w - 1 - y, x))
    }

    pub(crate) fn ensure_same_dims(&self, other: &Self, what: &'static str) -> Result<()> {
        if self.dims() != other.dims() {
            return Err(SrifError::DimensionMismatch {
                what,
                expected_w: self.width,
                expected_h: self.height,
                got_w: other.width,
                got_h: other.height,
            });
        }
        Ok(())
    }

    pub(crate) fn ensure_min(&self, min: usize, what: &'static str) -> Result<()> {
        if self.width < min || self.height < min {
            return Err(SrifError::DimensionTooSmall {
                what,
                min,
                width: self.width,
                height: self.height,
            });
        }
        Ok(())
    }
}

impl std::ops::Sub for &ImagePlane {
    type Output = ImagePlane;

    fn sub(self, rhs: &ImagePlane) -> ImagePlane {
        assert_eq!(self.dims(), rhs.dims());
        let data = self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect();
        ImagePlane::from_raw(self.width, self.height, data)
    }
}

impl std::ops::Add for &ImagePlane {
    type Output = ImagePlane;

    fn add(self, rhs: &ImagePlane) -> ImagePlane {
        assert_eq!(self.dims(), rhs.dims());
        let data = self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect();
        ImagePlane::from_raw(self.width, self.height, data)
    }
}
