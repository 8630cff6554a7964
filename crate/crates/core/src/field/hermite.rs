use std::f64::consts::PI;

use num_complex::Complex64 as C64;

use super::{Grid, SampledField};
use crate::error::Result;

/// Physicists' Hermite polynomial `H_k(x)`.
pub fn hermite_poly(k: usize, x: f64) -> f64 {
    let (mut prev, mut cur) = (1.0, 2.0 * x);
    if k == 0 {
        return prev;
    }
    for j in 1..k {
        let next = 2.0 * x * cur - 2.0 * j as f64 * prev;
        prev = cur;
        cur = next;
    }
    cur
}

/// L^2-normalized Hermite function `psi_k(x) = (2^k k! sqrt(pi))^{-1/2} H_k(x) e^{-x^2/2}`,
/// evaluated by the stable three-term recurrence.
pub fn hermite_function(k: usize, x: f64) -> f64 {
    let mut prev = 0.0;
    let mut cur = PI.powf(-0.25) * (-x * x / 2.0).exp();
    for j in 0..k {
        let jf = j as f64;
        let next = (2.0 / (jf + 1.0)).sqrt() * x * cur - (jf / (jf + 1.0)).sqrt() * prev;
        prev = cur;
        cur = next;
    }
    cur
}

/// `psi_k` on a 1D grid, or the tensor product `psi_k(x) psi_j(y)` in 2D.
pub fn hermite_field(grid: &Grid, k: usize, j: usize) -> Result<SampledField> {
    let dim = grid.dim();
    SampledField::from_real_fn(*grid, |p| {
        let v = hermite_function(k, p[0]);
        if dim == 2 {
            v * hermite_function(j, p[1])
        } else {
            v
        }
    })
}

/// Linear combination `sum_m coeffs[m] * psi_{k_m}` (tensor indices in 2D).
pub fn hermite_mixture(grid: &Grid, terms: &[(C64, usize, usize)]) -> Result<SampledField> {
    let dim = grid.dim();
    SampledField::from_fn(*grid, |p| {
        terms
            .iter()
            .map(|&(c, k, j)| {
                let v = hermite_function(k, p[0]);
                c * if dim == 2 { v * hermite_function(j, p[1]) } else { v }
            })
            .sum()
    })
}

/// Eigenvalue of `psi_k` under the unitary transform.
pub fn hermite_eigenvalue(k: usize) -> C64 {
    match k % 4 {
        0 => C64::new(1.0, 0.0),
        1 => C64::new(0.0, -1.0),
        2 => C64::new(-1.0, 0.0),
        _ => C64::new(0.0, 1.0),
    }
}
