use num_complex::Complex64 as C64;

use super::Grid;
use crate::error::{LabError, Result};

/// Boundary cells must sit at or below this fraction of the peak magnitude.
pub const ADMISSIBLE_RATIO: f64 = 1e-12;

/// Samples below this fraction of the peak are treated as numerically zero
/// when a field is divided by, or multiplied with, a Gaussian.
pub const NOISE_FLOOR: f64 = 1e-14;

fn check_values(grid: &Grid, values: &[C64]) -> Result<()> {
    if values.len() != grid.len() {
        return Err(LabError::Dimension(format!(
            "expected {} samples, got {}",
            grid.len(),
            values.len()
        )));
    }
    if let Some(index) = values.iter().position(|v| !(v.re.is_finite() && v.im.is_finite())) {
        return Err(LabError::NonFinite { index });
    }
    Ok(())
}

fn boundary_ratio(grid: &Grid, values: &[C64]) -> f64 {
    let mut peak = 0.0f64;
    let mut edge = 0.0f64;
    for (i, v) in values.iter().enumerate() {
        let m = v.norm();
        peak = peak.max(m);
        if grid.is_boundary(i) {
            edge = edge.max(m);
        }
    }
    if peak == 0.0 {
        0.0
    } else {
        edge / peak
    }
}

fn l2(values: &[C64], weight: f64) -> f64 {
    (values.iter().map(|v| v.norm_sqr()).sum::<f64>() * weight).sqrt()
}

/// Relative discrete L2 distance `|a - b| / |b|` (absolute when `b` vanishes).
pub fn relative_l2(a: &[C64], b: &[C64]) -> f64 {
    assert_eq!(a.len(), b.len());
    let num: f64 = a.iter().zip(b).map(|(x, y)| (x - y).norm_sqr()).sum();
    let den: f64 = b.iter().map(|y| y.norm_sqr()).sum();
    if den == 0.0 {
        num.sqrt()
    } else {
        (num / den).sqrt()
    }
}

pub fn max_abs_diff(a: &[C64], b: &[C64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}

/// Complex samples of a function on the spatial grid.
#[derive(Debug, Clone, PartialEq)]
pub struct SampledField {
    grid: Grid,
    values: Vec<C64>,
    boundary_ratio: f64,
}

impl SampledField {
    pub fn new(grid: Grid, values: Vec<C64>) -> Result<Self> {
        check_values(&grid, &values)?;
        let boundary_ratio = boundary_ratio(&grid, &values);
        Ok(SampledField {
            grid,
            values,
            boundary_ratio,
        })
    }

    pub fn zeros(grid: Grid) -> Self {
        SampledField {
            grid,
            values: vec![C64::new(0.0, 0.0); grid.len()],
            boundary_ratio: 0.0,
        }
    }

    /// Samples `f` at every grid point; `f` receives `[x, y]` (y = 0 in 1D).
    pub fn from_fn(grid: Grid, f: impl Fn([f64; 2]) -> C64) -> Result<Self> {
        let values = (0..grid.len()).map(|i| f(grid.point(i))).collect();
        Self::new(grid, values)
    }

    pub fn from_real_fn(grid: Grid, f: impl Fn([f64; 2]) -> f64) -> Result<Self> {
        Self::from_fn(grid, |p| C64::new(f(p), 0.0))
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn values(&self) -> &[C64] {
        &self.values
    }

    pub fn into_values(self) -> Vec<C64> {
        self.values
    }

    pub fn boundary_ratio(&self) -> f64 {
        self.boundary_ratio
    }

    pub fn is_admissible(&self) -> bool {
        self.boundary_ratio <= ADMISSIBLE_RATIO
    }

    pub fn norm(&self) -> f64 {
        l2(&self.values, self.grid.cell_volume())
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }

    /// `<self, other> = sum self * conj(other) dx^n`.
    pub fn inner(&self, other: &SampledField) -> C64 {
        let s: C64 = self.values.iter().zip(&other.values).map(|(a, b)| a * b.conj()).sum();
        s * self.grid.cell_volume()
    }

    pub fn map(&self, f: impl Fn([f64; 2], C64) -> C64) -> Result<Self> {
        let values = self
            .values
            .iter()
            .enumerate()
            .map(|(i, v)| f(self.grid.point(i), *v))
            .collect();
        Self::new(self.grid, values)
    }

    pub fn scale(&self, c: C64) -> Self {
        let values = self.values.iter().map(|v| v * c).collect();
        SampledField {
            grid: self.grid,
            values,
            boundary_ratio: self.boundary_ratio,
        }
    }

    pub fn conj(&self) -> Self {
        let values = self.values.iter().map(|v| v.conj()).collect();
        SampledField {
            grid: self.grid,
            values,
            boundary_ratio: self.boundary_ratio,
        }
    }

    pub fn sub(&self, other: &SampledField) -> Result<Self> {
        if self.grid != other.grid {
            return Err(LabError::Dimension("fields on different grids".into()));
        }
        let values = self.values.iter().zip(&other.values).map(|(a, b)| a - b).collect();
        Self::new(self.grid, values)
    }

    pub fn relative_distance(&self, reference: &SampledField) -> f64 {
        relative_l2(&self.values, &reference.values)
    }
}

/// Fourier coefficients on the dual grid of `grid`.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralField {
    grid: Grid,
    values: Vec<C64>,
    boundary_ratio: f64,
    aliasing_warning: bool,
}

impl SpectralField {
    pub fn new(grid: Grid, values: Vec<C64>) -> Result<Self> {
        check_values(&grid, &values)?;
        let boundary_ratio = boundary_ratio(&grid, &values);
        Ok(SpectralField {
            grid,
            values,
            boundary_ratio,
            aliasing_warning: false,
        })
    }

    pub(crate) fn with_warning(mut self, warn: bool) -> Self {
        self.aliasing_warning = warn;
        self
    }

    /// Samples `f` at every dual-grid frequency `[xi, eta]`.
    pub fn from_fn(grid: Grid, f: impl Fn([f64; 2]) -> C64) -> Result<Self> {
        let values = (0..grid.len()).map(|i| f(grid.freq_point(i))).collect();
        Self::new(grid, values)
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn values(&self) -> &[C64] {
        &self.values
    }

    pub fn into_values(self) -> Vec<C64> {
        self.values
    }

    pub fn boundary_ratio(&self) -> f64 {
        self.boundary_ratio
    }

    pub fn is_admissible(&self) -> bool {
        self.boundary_ratio <= ADMISSIBLE_RATIO
    }

    /// Set when the spatial source was not boundary-admissible, so aliasing
    /// is not controlled.
    pub fn aliasing_warning(&self) -> bool {
        self.aliasing_warning
    }

    pub fn norm(&self) -> f64 {
        l2(&self.values, self.grid.freq_cell_volume())
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }

    pub fn inner(&self, other: &SpectralField) -> C64 {
        let s: C64 = self.values.iter().zip(&other.values).map(|(a, b)| a * b.conj()).sum();
        s * self.grid.freq_cell_volume()
    }

    pub fn map(&self, f: impl Fn([f64; 2], C64) -> C64) -> Result<Self> {
        let values = self
            .values
            .iter()
            .enumerate()
            .map(|(i, v)| f(self.grid.freq_point(i), *v))
            .collect();
        Self::new(self.grid, values)
    }

    pub fn scale(&self, c: C64) -> Self {
        let values = self.values.iter().map(|v| v * c).collect();
        SpectralField { values, ..self.clone() }
    }

    pub fn relative_distance(&self, reference: &SpectralField) -> f64 {
        relative_l2(&self.values, &reference.values)
    }
}
