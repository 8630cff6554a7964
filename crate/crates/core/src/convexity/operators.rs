//! The symmetric/skew-symmetric splitting of
//! `xi/(t-i) . grad + (n - lambda.xi)/(t-i) = S + A`, with `c = 1/(1+t^2)`
//! and `D = xi . grad + n/2`:
//!
//! ```text
//! S   = i c D - t c lambda.xi + n t c / 2
//! A   = t c D - i c lambda.xi + i n c / 2
//! S_t = -2 i t c^2 D - (1 - t^2) c^2 lambda.xi + n (1 - t^2) c^2 / 2
//! ```

use num_complex::Complex64 as C64;

use super::spacetime::{lambda_xi, slice_admissible, xi_dot_grad, SpaceTimeField};
use crate::error::{LabError, Result};
use crate::field::Grid;

/// `D f = xi . grad f + (n/2) f`.
fn apply_d(values: &[C64], grid: &Grid) -> Vec<C64> {
    let half_n = grid.dim() as f64 / 2.0;
    xi_dot_grad(values, grid)
        .iter()
        .zip(values)
        .map(|(d, v)| d + v * half_n)
        .collect()
}

/// `p D f + (q lambda.xi + r) f`.
fn combine(values: &[C64], grid: &Grid, lambda: [f64; 2], p: C64, q: C64, r: C64) -> Vec<C64> {
    let d = apply_d(values, grid);
    values
        .iter()
        .enumerate()
        .map(|(i, v)| p * d[i] + (q * lambda_xi(lambda, grid, i) + r) * v)
        .collect()
}

fn c_of(t: f64) -> f64 {
    1.0 / (1.0 + t * t)
}

pub fn apply_s_slice(values: &[C64], grid: &Grid, t: f64, lambda: [f64; 2]) -> Vec<C64> {
    let c = c_of(t);
    let n = grid.dim() as f64;
    combine(
        values,
        grid,
        lambda,
        C64::new(0.0, c),
        C64::new(-t * c, 0.0),
        C64::new(n * t * c / 2.0, 0.0),
    )
}

pub fn apply_a_slice(values: &[C64], grid: &Grid, t: f64, lambda: [f64; 2]) -> Vec<C64> {
    let c = c_of(t);
    let n = grid.dim() as f64;
    combine(
        values,
        grid,
        lambda,
        C64::new(t * c, 0.0),
        C64::new(0.0, -c),
        C64::new(0.0, n * c / 2.0),
    )
}

/// Time derivative of the coefficients of `S`, from its closed form.
pub fn apply_st_slice(values: &[C64], grid: &Grid, t: f64, lambda: [f64; 2]) -> Vec<C64> {
    let c = c_of(t);
    let c2 = c * c;
    let n = grid.dim() as f64;
    let w = 1.0 - t * t;
    combine(
        values,
        grid,
        lambda,
        C64::new(0.0, -2.0 * t * c2),
        C64::new(-w * c2, 0.0),
        C64::new(n * w * c2 / 2.0, 0.0),
    )
}

fn check_schwartz(f: &SpaceTimeField) -> Result<()> {
    let grid = *f.grid();
    let bad: Vec<f64> = (0..f.len())
        .filter(|&k| {
            let s = f.slice(k);
            !(slice_admissible(&grid, s) && slice_admissible(&grid, &apply_d(s, &grid)))
        })
        .map(|k| f.times()[k])
        .collect();
    if bad.is_empty() {
        Ok(())
    } else {
        Err(LabError::InadmissibleSlices { times: bad })
    }
}

pub fn apply_s(f: &SpaceTimeField, lambda: [f64; 2]) -> Result<SpaceTimeField> {
    check_schwartz(f)?;
    let grid = *f.grid();
    f.map_slices(|t, s| apply_s_slice(s, &grid, t, lambda))
}

pub fn apply_a(f: &SpaceTimeField, lambda: [f64; 2]) -> Result<SpaceTimeField> {
    check_schwartz(f)?;
    let grid = *f.grid();
    f.map_slices(|t, s| apply_a_slice(s, &grid, t, lambda))
}

/// Discrete inner product `sum f conj(g) dxi^n` on one slice.
pub fn slice_inner(f: &[C64], g: &[C64], grid: &Grid) -> C64 {
    f.iter().zip(g).map(|(a, b)| a * b.conj()).sum::<C64>() * grid.freq_cell_volume()
}

fn rel(residual: &[C64], base: &[C64]) -> f64 {
    let num: f64 = residual.iter().map(|v| v.norm_sqr()).sum();
    let den: f64 = base.iter().map(|v| v.norm_sqr()).sum();
    if den == 0.0 {
        num.sqrt()
    } else {
        (num / den).sqrt()
    }
}

/// Residuals of one slice: `[S,A] f - c lambda.xi f` and
/// `(1+t^2) S_t f + (1+t^2)[S,A] f + 2t S f - (n/2) f`, relative to `||f||`.
pub fn slice_residuals(values: &[C64], grid: &Grid, t: f64, lambda: [f64; 2]) -> (f64, f64) {
    let c = c_of(t);
    let n = grid.dim() as f64;
    let s = |v: &[C64]| apply_s_slice(v, grid, t, lambda);
    let a = |v: &[C64]| apply_a_slice(v, grid, t, lambda);
    let sa = s(&a(values));
    let as_ = a(&s(values));
    let comm: Vec<C64> = sa.iter().zip(&as_).map(|(x, y)| x - y).collect();
    let r1: Vec<C64> = comm
        .iter()
        .zip(values)
        .enumerate()
        .map(|(i, (cm, v))| cm - v * (c * lambda_xi(lambda, grid, i)))
        .collect();
    let st = apply_st_slice(values, grid, t, lambda);
    let sf = s(values);
    let one_t2 = 1.0 + t * t;
    let r2: Vec<C64> = (0..values.len())
        .map(|i| one_t2 * st[i] + one_t2 * comm[i] + 2.0 * t * sf[i] - values[i] * (n / 2.0))
        .collect();
    (rel(&r1, values), rel(&r2, values))
}

/// Max over slices of the two commutator-identity residuals.
pub fn commutator_identity_residuals(f: &SpaceTimeField, lambda: [f64; 2]) -> Result<(f64, f64)> {
    check_schwartz(f)?;
    let grid = *f.grid();
    let mut worst = (0.0f64, 0.0f64);
    for k in 0..f.len() {
        let (a, b) = slice_residuals(f.slice(k), &grid, f.times()[k], lambda);
        worst = (worst.0.max(a), worst.1.max(b));
    }
    Ok(worst)
}
