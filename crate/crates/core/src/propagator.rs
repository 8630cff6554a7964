//! Free Schrodinger evolution `i u_t + Delta u = 0` in three independent
//! realizations, the Gaussian free wave and the `t -> 1/t - 1` transform.

use std::f64::consts::PI;

use num_complex::Complex64 as C64;
use serde::Serialize;

use crate::error::{LabError, Result};
use crate::field::{
    dtft_tensor, forward_values, free_wave_oracle, inv_half_power, inverse_values, map_axis, resample_tensor,
    ComplexGaussian, Grid, SampledField, ADMISSIBLE_RATIO,
};

/// Smallest `|t|` accepted by the kernel-based routes.
pub const DEFAULT_T_MIN: f64 = 1e-3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Spectral,
    Convolution,
    Pseudoconformal,
    Oracle,
}

#[derive(Debug, Clone, PartialEq)]
pub struct EvolvedWave {
    pub time: f64,
    pub field: SampledField,
    pub method: Method,
}

impl EvolvedWave {
    /// `| ||u(t)|| / ||h|| - 1 |`.
    pub fn unitarity_drift(&self, initial: &SampledField) -> f64 {
        let n0 = initial.norm();
        if n0 == 0.0 {
            self.field.norm()
        } else {
            (self.field.norm() / n0 - 1.0).abs()
        }
    }
}

/// `e^{-i pi n sgn(t) / 4}`, the phase of `(4 pi i t)^{-n/2}`.
fn kernel_phase(t: f64, dim: usize) -> C64 {
    C64::from_polar(1.0, -PI * dim as f64 * t.signum() / 4.0)
}

fn check_time(t: f64, t_min: f64) -> Result<()> {
    if !t.is_finite() || t.abs() < t_min {
        return Err(LabError::KernelTooOscillatory { t, t_min });
    }
    Ok(())
}

/// Smallest `|t|` at which the sampled kernel resolves the data: the
/// integrand `K(x - y) h(y)` has local frequency at most
/// `(L + R)/(2|t|) + B`, with `R` and `B` the per-axis support and bandwidth
/// of `h` above `ADMISSIBLE_RATIO`, and the Riemann sum is exact below `2 pi/dx`.
pub fn convolution_t_min(h: &SampledField) -> f64 {
    let grid = h.grid();
    let peak = h.max_abs();
    if peak == 0.0 {
        return 0.0;
    }
    let spec = forward_values(h.values(), grid);
    let spec_peak = spec.iter().map(|v| v.norm()).fold(0.0, f64::max);
    let (mut r, mut b) = (0.0f64, 0.0f64);
    for i in 0..grid.len() {
        let [x, y] = grid.point(i);
        if h.values()[i].norm() > ADMISSIBLE_RATIO * peak {
            r = r.max(x.abs()).max(y.abs());
        }
        let [p, q] = grid.freq_point(i);
        if spec[i].norm() > ADMISSIBLE_RATIO * spec_peak {
            b = b.max(p.abs()).max(q.abs());
        }
    }
    let room = 2.0 * PI / grid.spacing() - b;
    if room <= 0.0 {
        return f64::INFINITY;
    }
    (grid.half_width() + r) / (2.0 * room)
}

/// Multiplies the spectrum by `e^{-i |xi|^2 t}`. Exact group law on the grid.
pub fn evolve_spectral(h: &SampledField, t: f64) -> EvolvedWave {
    let grid = h.grid();
    let mut spec = forward_values(h.values(), grid);
    for (i, v) in spec.iter_mut().enumerate() {
        *v *= C64::from_polar(1.0, -grid.freq_radius_sq(i) * t);
    }
    let field = SampledField::new(*grid, inverse_values(&spec, grid)).expect("unit multiplier");
    EvolvedWave {
        time: t,
        field,
        method: Method::Spectral,
    }
}

/// Direct quadrature of `(4 pi |t|)^{-n/2} e^{-i pi n sgn t/4} \int e^{i|x-y|^2/4t} h(y) dy`.
/// Cost `O(N^{n+1})`. Refuses `|t|` below `t_min` or [`convolution_t_min`].
pub fn evolve_convolution(h: &SampledField, t: f64) -> Result<EvolvedWave> {
    evolve_convolution_with(h, t, DEFAULT_T_MIN)
}

pub fn evolve_convolution_with(h: &SampledField, t: f64, t_min: f64) -> Result<EvolvedWave> {
    check_time(t, t_min)?;
    check_time(t, convolution_t_min(h))?;
    let grid = h.grid();
    let n = grid.points();
    let dx = grid.spacing();
    // kernel by index offset d = i - j, stored at d + N - 1
    let kernel: Vec<C64> = (0..2 * n - 1)
        .map(|k| {
            let z = (k as f64 - (n - 1) as f64) * dx;
            C64::from_polar(1.0, z * z / (4.0 * t))
        })
        .collect();
    let per_axis = kernel_phase(t, 1) * dx / (4.0 * PI * t.abs()).sqrt();
    let mut values = h.values().to_vec();
    for axis in 0..grid.dim() {
        values = map_axis(&values, grid, axis, |line| {
            (0..n)
                .map(|i| {
                    let s: C64 = line.iter().enumerate().map(|(j, v)| kernel[i + n - 1 - j] * v).sum();
                    s * per_axis
                })
                .collect()
        });
    }
    let field = SampledField::new(*grid, values)?;
    Ok(EvolvedWave {
        time: t,
        field,
        method: Method::Convolution,
    })
}

/// `u(x,t) = (2|t|)^{-n/2} e^{-i pi n sgn t/4} e^{i|x|^2/4t} F[e^{i|.|^2/4t} h](x/2t)`,
/// with the transform evaluated off-grid by direct trigonometric sums.
pub fn evolve_pseudoconformal(h: &SampledField, t: f64) -> Result<EvolvedWave> {
    evolve_pseudoconformal_with(h, t, DEFAULT_T_MIN)
}

pub fn evolve_pseudoconformal_with(h: &SampledField, t: f64, t_min: f64) -> Result<EvolvedWave> {
    check_time(t, t_min)?;
    let grid = h.grid();
    let chirped: Vec<C64> = h
        .values()
        .iter()
        .enumerate()
        .map(|(i, v)| v * C64::from_polar(1.0, grid.radius_sq(i) / (4.0 * t)))
        .collect();
    // the chirped datum must be resolved on the dual grid
    let spec = SampledField::new(*grid, forward_values(&chirped, grid))?;
    if !spec.is_admissible() {
        return Err(LabError::TimeTooSmallForDomain { t, t_min });
    }
    let nyquist = grid.nyquist();
    let targets: Vec<f64> = grid
        .coords()
        .iter()
        .map(|x| x / (2.0 * t))
        .map(|xi| if xi.abs() < nyquist { xi } else { f64::NAN })
        .collect();
    let finite_targets: Vec<f64> = targets.iter().map(|&xi| if xi.is_nan() { 0.0 } else { xi }).collect();
    let mut values = dtft_tensor(&chirped, grid, &finite_targets);
    let prefactor = kernel_phase(t, grid.dim()) * (2.0 * t.abs()).powf(-(grid.dim() as f64) / 2.0);
    for (i, v) in values.iter_mut().enumerate() {
        let [a, b] = grid.unravel(i);
        let outside = targets[a].is_nan() || (grid.dim() == 2 && targets[b].is_nan());
        *v = if outside {
            C64::new(0.0, 0.0)
        } else {
            *v * prefactor * C64::from_polar(1.0, grid.radius_sq(i) / (4.0 * t))
        };
    }
    let field = SampledField::new(*grid, values)?;
    Ok(EvolvedWave {
        time: t,
        field,
        method: Method::Pseudoconformal,
    })
}

/// Closed-form evolution of an exact Gaussian.
pub fn evolve_oracle(h: &ComplexGaussian, t: f64, grid: &Grid) -> Result<EvolvedWave> {
    let field = h.evolve(t)?.sample(grid)?;
    Ok(EvolvedWave {
        time: t,
        field,
        method: Method::Oracle,
    })
}

/// `G(x,t) = (t-i)^{-n/2} e^{-(1-it)|x|^2 / (4(1+t^2))}`.
pub fn gaussian_free_wave_oracle(dim: usize, t: f64) -> Result<ComplexGaussian> {
    free_wave_oracle(dim, t)
}

pub fn gaussian_free_wave(t: f64, grid: &Grid) -> Result<SampledField> {
    free_wave_oracle(grid.dim(), t)?.sample(grid)
}

/// `v(x,t) = (it)^{-n/2} e^{-|x|^2/4it} conj(u(x/t, 1/t - 1))` for `t_min <= t <= 1`.
///
/// `u_at(s)` must return the wave at time `s` on a fixed grid; the result lives
/// on the same grid. Rescaled points beyond the grid are zero when `u(s)` is
/// boundary-admissible and an error otherwise.
pub fn v_transform<F>(u_at: F, t: f64, t_min: f64) -> Result<SampledField>
where
    F: Fn(f64) -> Result<SampledField>,
{
    if !(t >= t_min && t <= 1.0) {
        return Err(LabError::TimeOutOfRange { t, lo: t_min, hi: 1.0 });
    }
    let u = u_at(1.0 / t - 1.0)?;
    let grid = *u.grid();
    let coords = grid.coords();
    let outside: Vec<bool> = coords.iter().map(|x| !grid.contains(x / t)).collect();
    if outside.iter().any(|&o| o) && u.boundary_ratio() > ADMISSIBLE_RATIO {
        return Err(LabError::OutOfDomain { t });
    }
    let targets: Vec<f64> = coords.iter().map(|x| x / t).collect();
    let resampled = resample_tensor(u.values(), &grid, &targets);
    let prefactor = inv_half_power(C64::new(0.0, t), grid.dim());
    let values = resampled
        .iter()
        .enumerate()
        .map(|(i, w)| {
            let [a, b] = grid.unravel(i);
            if outside[a] || (grid.dim() == 2 && outside[b]) {
                return C64::new(0.0, 0.0);
            }
            // -|x|^2/(4 i t) = i |x|^2 / (4t)
            prefactor * C64::from_polar(1.0, grid.radius_sq(i) / (4.0 * t)) * w.conj()
        })
        .collect();
    SampledField::new(grid, values)
}

/// Oracle form of [`v_transform`] for Gaussian data `h`.
pub fn v_transform_oracle(h: &ComplexGaussian, t: f64) -> Result<ComplexGaussian> {
    let u = h.evolve(1.0 / t - 1.0)?.conj().rescale(1.0 / t);
    let zero = vec![C64::new(0.0, 0.0); h.dim()];
    let chirp = C64::new(0.0, -1.0 / (4.0 * t));
    Ok(u.modulate(chirp, &zero)?
        .scale(inv_half_power(C64::new(0.0, t), h.dim())))
}
