//! Unitary Fourier transform `F[h](xi) = (2 pi)^{-n/2} \int e^{-i xi.x} h(x) dx`
//! on the cell-centered grid, plus band-limited off-grid evaluation.
//!
//! With `x_j = x_0 + j dx`, `xi_k = -pi/dx + k dxi` and `dx dxi = 2 pi / N`,
//! the Riemann sum factors as
//!
//! ```text
//! F_k = (dx / sqrt(2 pi)) * i (-1)^{N/2 + k} e^{-i pi k / N} * DFT[(-1)^j f_j]_k
//! ```
//!
//! which is exactly unitary between the `dx`- and `dxi`-weighted discrete
//! L2 norms. The inverse undoes each factor.

use std::cell::RefCell;
use std::f64::consts::PI;
use std::sync::Arc;

use num_complex::Complex64 as C64;
use rustfft::{Fft, FftPlanner};

use super::{Grid, SampledField, SpectralField};

thread_local! {
    static PLANNER: RefCell<FftPlanner<f64>> = RefCell::new(FftPlanner::new());
}

fn plan(n: usize, inverse: bool) -> Arc<dyn Fft<f64>> {
    PLANNER.with(|p| {
        let mut p = p.borrow_mut();
        if inverse {
            p.plan_fft_inverse(n)
        } else {
            p.plan_fft_forward(n)
        }
    })
}

fn sign(k: usize) -> f64 {
    if k.is_multiple_of(2) {
        1.0
    } else {
        -1.0
    }
}

/// Offset phases `i (-1)^{N/2 + k} e^{-i pi k / N}`.
fn offset_phases(n: usize) -> Vec<C64> {
    (0..n)
        .map(|k| {
            let theta = -PI * k as f64 / n as f64;
            C64::new(0.0, sign(n / 2 + k)) * C64::from_polar(1.0, theta)
        })
        .collect()
}

/// Applies `f` to every line of `values` running along `axis`.
pub(crate) fn map_axis(values: &[C64], grid: &Grid, axis: usize, mut f: impl FnMut(&[C64]) -> Vec<C64>) -> Vec<C64> {
    let n = grid.points();
    if grid.dim() == 1 {
        return f(values);
    }
    let mut out = vec![C64::new(0.0, 0.0); values.len()];
    let mut line = vec![C64::new(0.0, 0.0); n];
    for other in 0..n {
        for j in 0..n {
            let idx = if axis == 0 { j * n + other } else { other * n + j };
            line[j] = values[idx];
        }
        let mapped = f(&line);
        for j in 0..n {
            let idx = if axis == 0 { j * n + other } else { other * n + j };
            out[idx] = mapped[j];
        }
    }
    out
}

fn forward_line(line: &[C64], dx: f64, phases: &[C64], fft: &Arc<dyn Fft<f64>>) -> Vec<C64> {
    let mut buf: Vec<C64> = line.iter().enumerate().map(|(j, v)| v * sign(j)).collect();
    fft.process(&mut buf);
    let s = dx / (2.0 * PI).sqrt();
    buf.iter().zip(phases).map(|(v, p)| v * p * s).collect()
}

fn inverse_line(line: &[C64], dxi: f64, phases: &[C64], ifft: &Arc<dyn Fft<f64>>) -> Vec<C64> {
    let mut buf: Vec<C64> = line.iter().zip(phases).map(|(v, p)| v * p.conj()).collect();
    ifft.process(&mut buf);
    let s = dxi / (2.0 * PI).sqrt();
    buf.iter().enumerate().map(|(j, v)| v * (sign(j) * s)).collect()
}

pub(crate) fn forward_values(values: &[C64], grid: &Grid) -> Vec<C64> {
    let n = grid.points();
    let phases = offset_phases(n);
    let fft = plan(n, false);
    let dx = grid.spacing();
    let mut out = values.to_vec();
    for axis in 0..grid.dim() {
        out = map_axis(&out, grid, axis, |l| forward_line(l, dx, &phases, &fft));
    }
    out
}

pub(crate) fn inverse_values(values: &[C64], grid: &Grid) -> Vec<C64> {
    let n = grid.points();
    let phases = offset_phases(n);
    let ifft = plan(n, true);
    let dxi = grid.freq_spacing();
    let mut out = values.to_vec();
    for axis in 0..grid.dim() {
        out = map_axis(&out, grid, axis, |l| inverse_line(l, dxi, &phases, &ifft));
    }
    out
}

/// Forward transform. A non-admissible source is flagged on the result
/// rather than rejected.
pub fn forward_fourier(f: &SampledField) -> SpectralField {
    let values = forward_values(f.values(), f.grid());
    SpectralField::new(*f.grid(), values)
        .expect("finite input gives finite transform")
        .with_warning(!f.is_admissible())
}

pub fn inverse_fourier(spec: &SpectralField) -> SampledField {
    let values = inverse_values(spec.values(), spec.grid());
    SampledField::new(*spec.grid(), values).expect("finite input gives finite transform")
}

/// Evaluates `(dx / sqrt(2 pi)) sum_j e^{-i xi x_j} f_j` at arbitrary `xi`:
/// the band-limited continuation of a spectral line.
pub fn dtft_line(line: &[C64], axis: &Grid, targets: &[f64]) -> Vec<C64> {
    let xs = axis.coords();
    let s = axis.spacing() / (2.0 * PI).sqrt();
    targets
        .iter()
        .map(|&xi| {
            let sum: C64 = xs
                .iter()
                .zip(line)
                .map(|(&x, v)| v * C64::from_polar(1.0, -xi * x))
                .sum();
            sum * s
        })
        .collect()
}

/// Evaluates `(dxi / sqrt(2 pi)) sum_k e^{i xi_k x} F_k` at arbitrary `x`:
/// band-limited interpolation of a spatial line given its spectrum.
pub fn inverse_dtft_line(spec_line: &[C64], axis: &Grid, targets: &[f64]) -> Vec<C64> {
    let xis = axis.freqs();
    let s = axis.freq_spacing() / (2.0 * PI).sqrt();
    targets
        .iter()
        .map(|&x| {
            let sum: C64 = xis
                .iter()
                .zip(spec_line)
                .map(|(&xi, v)| v * C64::from_polar(1.0, xi * x))
                .sum();
            sum * s
        })
        .collect()
}

/// Band-limited value of a sampled field at an arbitrary point.
pub fn interpolate_at(field: &SampledField, point: [f64; 2]) -> C64 {
    let grid = field.grid();
    let spec = forward_values(field.values(), grid);
    let axis = grid.axis_grid();
    match grid.dim() {
        1 => inverse_dtft_line(&spec, &axis, &[point[0]])[0],
        _ => {
            let n = grid.points();
            // collapse axis 1 first, then axis 0
            let col: Vec<C64> = (0..n)
                .map(|i| inverse_dtft_line(&spec[i * n..(i + 1) * n], &axis, &[point[1]])[0])
                .collect();
            inverse_dtft_line(&col, &axis, &[point[0]])[0]
        }
    }
}

/// Band-limited value of a spectral field at an arbitrary frequency.
pub fn interpolate_spectral_at(spec: &SpectralField, xi: [f64; 2]) -> C64 {
    let grid = spec.grid();
    let spatial = inverse_values(spec.values(), grid);
    let axis = grid.axis_grid();
    match grid.dim() {
        1 => dtft_line(&spatial, &axis, &[xi[0]])[0],
        _ => {
            let n = grid.points();
            let col: Vec<C64> = (0..n)
                .map(|i| dtft_line(&spatial[i * n..(i + 1) * n], &axis, &[xi[1]])[0])
                .collect();
            dtft_line(&col, &axis, &[xi[0]])[0]
        }
    }
}

/// Transform of spatial samples evaluated on the tensor product of
/// `targets` (one list per axis, length `N`), by direct sums per axis.
pub fn dtft_tensor(values: &[C64], grid: &Grid, targets: &[f64]) -> Vec<C64> {
    let axis = grid.axis_grid();
    let mut out = values.to_vec();
    for a in (0..grid.dim()).rev() {
        out = map_axis(&out, grid, a, |l| dtft_line(l, &axis, targets));
    }
    out
}

/// Band-limited interpolant of spatial samples on the tensor product of
/// `targets`. Targets outside `[-L, L)` see the periodic continuation.
pub fn resample_tensor(values: &[C64], grid: &Grid, targets: &[f64]) -> Vec<C64> {
    let axis = grid.axis_grid();
    let mut out = forward_values(values, grid);
    for a in (0..grid.dim()).rev() {
        out = map_axis(&out, grid, a, |l| inverse_dtft_line(l, &axis, targets));
    }
    out
}

/// Spectral partial derivative along `axis`: `F[-i x_axis F^{-1}[spec]]`.
pub fn spectral_derivative(spec: &[C64], grid: &Grid, axis: usize) -> Vec<C64> {
    let mut spatial = inverse_values(spec, grid);
    for (i, v) in spatial.iter_mut().enumerate() {
        let x = grid.point(i)[axis];
        *v *= C64::new(0.0, -x);
    }
    forward_values(&spatial, grid)
}

/// Spectral Laplacian of spatial samples.
pub fn laplacian(field: &SampledField) -> SampledField {
    let grid = field.grid();
    let mut spec = forward_values(field.values(), grid);
    for (i, v) in spec.iter_mut().enumerate() {
        *v *= -grid.freq_radius_sq(i);
    }
    SampledField::new(*grid, inverse_values(&spec, grid)).expect("finite")
}
