use std::f64::consts::PI;

use serde::Serialize;

use crate::error::{LabError, Result};

/// Uniform, cell-centered tensor grid on `[-L, L)^dim`.
///
/// Sample `j` along an axis sits at `x_j = -L + (j + 1/2) dx`, so the origin
/// is never a sample point. The dual frequency grid is
/// `xi_k = -pi/dx + k * pi/L`, which does contain zero (at `k = N/2`).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Grid {
    dim: usize,
    points: usize,
    half_width: f64,
}

impl Grid {
    pub fn new(dim: usize, points: usize, half_width: f64) -> Result<Self> {
        if !(1..=2).contains(&dim) {
            return Err(LabError::InvalidGrid(format!("dimension {dim} not supported (1 or 2)")));
        }
        if !points.is_multiple_of(2) {
            return Err(LabError::InvalidGrid(format!(
                "points per axis must be even, got {points}"
            )));
        }
        if points < 8 {
            return Err(LabError::InvalidGrid(format!(
                "points per axis must be at least 8, got {points}"
            )));
        }
        if !(half_width > 0.0 && half_width.is_finite()) {
            return Err(LabError::InvalidGrid(format!(
                "half width must be positive, got {half_width}"
            )));
        }
        Ok(Grid {
            dim,
            points,
            half_width,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn points(&self) -> usize {
        self.points
    }

    pub fn half_width(&self) -> f64 {
        self.half_width
    }

    pub fn spacing(&self) -> f64 {
        2.0 * self.half_width / self.points as f64
    }

    pub fn len(&self) -> usize {
        self.points.pow(self.dim as u32)
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Same axis layout in one dimension.
    pub fn axis_grid(&self) -> Grid {
        Grid { dim: 1, ..*self }
    }

    pub fn with_dim(&self, dim: usize) -> Result<Grid> {
        Grid::new(dim, self.points, self.half_width)
    }

    pub fn coord(&self, j: usize) -> f64 {
        -self.half_width + (j as f64 + 0.5) * self.spacing()
    }

    pub fn coords(&self) -> Vec<f64> {
        (0..self.points).map(|j| self.coord(j)).collect()
    }

    pub fn freq_spacing(&self) -> f64 {
        PI / self.half_width
    }

    pub fn freq(&self, k: usize) -> f64 {
        -PI / self.spacing() + k as f64 * self.freq_spacing()
    }

    pub fn freqs(&self) -> Vec<f64> {
        (0..self.points).map(|k| self.freq(k)).collect()
    }

    /// Largest frequency magnitude represented, `pi / dx`.
    pub fn nyquist(&self) -> f64 {
        PI / self.spacing()
    }

    /// Per-axis indices of flat index `idx` (axis 0 varies slowest).
    pub fn unravel(&self, idx: usize) -> [usize; 2] {
        match self.dim {
            1 => [idx, 0],
            _ => [idx / self.points, idx % self.points],
        }
    }

    /// Spatial point of flat index `idx`.
    pub fn point(&self, idx: usize) -> [f64; 2] {
        let [i, j] = self.unravel(idx);
        match self.dim {
            1 => [self.coord(i), 0.0],
            _ => [self.coord(i), self.coord(j)],
        }
    }

    pub fn radius_sq(&self, idx: usize) -> f64 {
        let p = self.point(idx);
        p[0] * p[0] + p[1] * p[1]
    }

    /// Dual frequency point of flat index `idx`.
    pub fn freq_point(&self, idx: usize) -> [f64; 2] {
        let [i, j] = self.unravel(idx);
        match self.dim {
            1 => [self.freq(i), 0.0],
            _ => [self.freq(i), self.freq(j)],
        }
    }

    pub fn freq_radius_sq(&self, idx: usize) -> f64 {
        let p = self.freq_point(idx);
        p[0] * p[0] + p[1] * p[1]
    }

    /// Whether flat index `idx` lies in a boundary cell (first or last along any axis).
    pub fn is_boundary(&self, idx: usize) -> bool {
        let last = self.points - 1;
        let [i, j] = self.unravel(idx);
        match self.dim {
            1 => i == 0 || i == last,
            _ => i == 0 || i == last || j == 0 || j == last,
        }
    }

    /// Quadrature weight `dx^dim`.
    pub fn cell_volume(&self) -> f64 {
        self.spacing().powi(self.dim as i32)
    }

    pub fn freq_cell_volume(&self) -> f64 {
        self.freq_spacing().powi(self.dim as i32)
    }

    pub fn contains(&self, x: f64) -> bool {
        x >= -self.half_width && x < self.half_width
    }

    pub fn freq_contains(&self, xi: f64) -> bool {
        xi >= -self.nyquist() && xi < self.nyquist()
    }
}
