use num_complex::Complex64 as C64;

use crate::error::{LabError, Result};
use crate::field::{
    forward_values, free_wave_oracle, spectral_derivative, ComplexGaussian, Grid, SampledField, SpectralField,
    NOISE_FLOOR,
};
use crate::numeric::is_uniform;
use crate::propagator::evolve_spectral;

/// Time series of spectral slices on the dual grid of `grid`, stored time-major.
#[derive(Debug, Clone, PartialEq)]
pub struct SpaceTimeField {
    grid: Grid,
    times: Vec<f64>,
    values: Vec<C64>,
}

impl SpaceTimeField {
    /// Times must be strictly increasing and uniformly spaced.
    pub fn new(grid: Grid, times: Vec<f64>, values: Vec<C64>) -> Result<Self> {
        if times.is_empty() {
            return Err(LabError::TooFewTimes { found: 0, needed: 1 });
        }
        if times.windows(2).any(|w| w[1] <= w[0]) || !is_uniform(&times) {
            return Err(LabError::NonUniformTimes);
        }
        if values.len() != times.len() * grid.len() {
            return Err(LabError::Dimension(format!(
                "expected {} values, got {}",
                times.len() * grid.len(),
                values.len()
            )));
        }
        if let Some(index) = values.iter().position(|v| !(v.re.is_finite() && v.im.is_finite())) {
            return Err(LabError::NonFinite { index });
        }
        Ok(SpaceTimeField { grid, times, values })
    }

    /// Samples `f(t, xi)` at every time and dual-grid frequency.
    pub fn from_fn(grid: Grid, times: Vec<f64>, f: impl Fn(f64, [f64; 2]) -> C64) -> Result<Self> {
        let mut values = Vec::with_capacity(times.len() * grid.len());
        for &t in &times {
            values.extend((0..grid.len()).map(|i| f(t, grid.freq_point(i))));
        }
        Self::new(grid, times, values)
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn times(&self) -> &[f64] {
        &self.times
    }

    pub fn values(&self) -> &[C64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    pub fn dt(&self) -> f64 {
        if self.times.len() < 2 {
            0.0
        } else {
            (self.times[self.times.len() - 1] - self.times[0]) / (self.times.len() - 1) as f64
        }
    }

    pub fn slice(&self, k: usize) -> &[C64] {
        let m = self.grid.len();
        &self.values[k * m..(k + 1) * m]
    }

    pub fn spectral_slice(&self, k: usize) -> SpectralField {
        SpectralField::new(self.grid, self.slice(k).to_vec()).expect("finite by construction")
    }

    /// `||slice_k||` with the `dxi^n` weight.
    pub fn slice_norm(&self, k: usize) -> f64 {
        let s: f64 = self.slice(k).iter().map(|v| v.norm_sqr()).sum();
        (s * self.grid.freq_cell_volume()).sqrt()
    }

    /// Slices with `lo <= t <= hi`.
    pub fn restrict(&self, lo: f64, hi: f64) -> Result<Self> {
        let keep: Vec<usize> = (0..self.len())
            .filter(|&k| self.times[k] >= lo - 1e-12 && self.times[k] <= hi + 1e-12)
            .collect();
        let times = keep.iter().map(|&k| self.times[k]).collect();
        let values = keep.iter().flat_map(|&k| self.slice(k).iter().copied()).collect();
        Self::new(self.grid, times, values)
    }

    pub(crate) fn map_slices(&self, f: impl Fn(f64, &[C64]) -> Vec<C64>) -> Result<Self> {
        let mut values = Vec::with_capacity(self.values.len());
        for (k, &t) in self.times.iter().enumerate() {
            values.extend(f(t, self.slice(k)));
        }
        Self::new(self.grid, self.times.clone(), values)
    }
}

/// Whether a slice has negligible magnitude on the boundary cells of the
/// dual grid.
pub(crate) fn slice_admissible(grid: &Grid, values: &[C64]) -> bool {
    SpectralField::new(*grid, values.to_vec())
        .map(|s| s.is_admissible())
        .unwrap_or(false)
}

/// `phi(t) = F[u(t) / G(t)]` with `u` evolved spectrally from `h`.
///
/// `g = u/G` is formed only where `|u| > NOISE_FLOOR * max|u|` and set to zero
/// elsewhere; dividing rounding noise by the decaying `G` would otherwise
/// dominate. Slices where `u`, `g` or `phi` fail boundary admissibility are
/// reported together.
pub fn phi_from_wave(h: &SampledField, times: &[f64]) -> Result<SpaceTimeField> {
    let grid = *h.grid();
    let mut bad = Vec::new();
    let mut values = Vec::with_capacity(times.len() * grid.len());
    for &t in times {
        let u = evolve_spectral(h, t).field;
        let gw = free_wave_oracle(grid.dim(), t)?;
        let floor = NOISE_FLOOR * u.max_abs();
        let g: Vec<C64> = u
            .values()
            .iter()
            .enumerate()
            .map(|(i, v)| {
                if v.norm() > floor {
                    v / gw.eval(grid.point(i))
                } else {
                    C64::new(0.0, 0.0)
                }
            })
            .collect();
        let g = SampledField::new(grid, g)?;
        let phi = forward_values(g.values(), &grid);
        if !(u.is_admissible() && g.is_admissible() && slice_admissible(&grid, &phi)) {
            bad.push(t);
        }
        values.extend(phi);
    }
    if !bad.is_empty() {
        return Err(LabError::InadmissibleSlices { times: bad });
    }
    SpaceTimeField::new(grid, times.to_vec(), values)
}

/// Closed form `phi(t) = F[e^{itDelta} h / G(t)]` for Gaussian data.
pub fn phi_oracle(h: &ComplexGaussian, t: f64) -> Result<ComplexGaussian> {
    h.evolve(t)?.ratio(&free_wave_oracle(h.dim(), t)?)?.fourier()
}

/// Samples [`phi_oracle`] on the dual grid; slices that are formal or not
/// boundary-admissible are reported.
pub fn phi_from_gaussian(h: &ComplexGaussian, grid: &Grid, times: &[f64]) -> Result<SpaceTimeField> {
    let mut bad = Vec::new();
    let mut values = Vec::with_capacity(times.len() * grid.len());
    for &t in times {
        match phi_oracle(h, t).and_then(|p| p.sample_spectral(grid)) {
            Ok(s) if s.is_admissible() => values.extend_from_slice(s.values()),
            Ok(s) => {
                bad.push(t);
                values.extend_from_slice(s.values());
            }
            Err(_) => {
                bad.push(t);
                values.extend(std::iter::repeat_n(C64::new(0.0, 0.0), grid.len()));
            }
        }
    }
    if !bad.is_empty() {
        return Err(LabError::InadmissibleSlices { times: bad });
    }
    SpaceTimeField::new(*grid, times.to_vec(), values)
}

/// Per-time admissibility of the Gaussian-data construction.
pub fn gaussian_phi_admissible(h: &ComplexGaussian, grid: &Grid, t: f64) -> bool {
    phi_oracle(h, t)
        .and_then(|p| p.sample_spectral(grid))
        .map(|s| s.is_admissible())
        .unwrap_or(false)
}

/// Largest run of consecutive `true` flags containing index `center`.
pub fn admissible_run(flags: &[bool], center: usize) -> Option<(usize, usize)> {
    if center >= flags.len() || !flags[center] {
        return None;
    }
    let mut lo = center;
    while lo > 0 && flags[lo - 1] {
        lo -= 1;
    }
    let mut hi = center;
    while hi + 1 < flags.len() && flags[hi + 1] {
        hi += 1;
    }
    Some((lo, hi))
}

/// `xi . grad` applied spectrally to one slice.
pub(crate) fn xi_dot_grad(values: &[C64], grid: &Grid) -> Vec<C64> {
    let mut out = vec![C64::new(0.0, 0.0); values.len()];
    for axis in 0..grid.dim() {
        let d = spectral_derivative(values, grid, axis);
        for (i, v) in out.iter_mut().enumerate() {
            *v += d[i] * grid.freq_point(i)[axis];
        }
    }
    out
}

/// Max over interior slices of
/// `|| d_t phi - xi/(t-i) . grad phi - n/(t-i) phi + i|xi|^2 phi || / ||phi||`,
/// central differences in time and spectral differentiation in `xi`.
pub fn phi_equation_residual(phi: &SpaceTimeField) -> Result<f64> {
    if phi.len() < 3 {
        return Err(LabError::TooFewTimes {
            found: phi.len(),
            needed: 3,
        });
    }
    let grid = *phi.grid();
    let n = grid.dim() as f64;
    let dt = phi.dt();
    let mut worst: f64 = 0.0;
    for k in 1..phi.len() - 1 {
        let t = phi.times()[k];
        let z = C64::new(t, -1.0);
        let cur = phi.slice(k);
        let grad = xi_dot_grad(cur, &grid);
        let (prev, next) = (phi.slice(k - 1), phi.slice(k + 1));
        let mut num = 0.0;
        let mut den = 0.0;
        for i in 0..grid.len() {
            let dphi = (next[i] - prev[i]) / (2.0 * dt);
            let r = dphi - grad[i] / z - n / z * cur[i] + C64::new(0.0, grid.freq_radius_sq(i)) * cur[i];
            num += r.norm_sqr();
            den += cur[i].norm_sqr();
        }
        if den > 0.0 {
            worst = worst.max((num / den).sqrt());
        }
    }
    Ok(worst)
}

fn lambda_dot(lambda: [f64; 2], xi: [f64; 2], dim: usize) -> f64 {
    if dim == 1 {
        lambda[0] * xi[0]
    } else {
        lambda[0] * xi[0] + lambda[1] * xi[1]
    }
}

pub(crate) fn lambda_xi(lambda: [f64; 2], grid: &Grid, i: usize) -> f64 {
    lambda_dot(lambda, grid.freq_point(i), grid.dim())
}

/// `f = e^{lambda.xi - |xi|^2 (1+t^2)/2} phi`, with slice admissibility enforced.
pub fn f_lambda(phi: &SpaceTimeField, lambda: [f64; 2]) -> Result<SpaceTimeField> {
    let (f, bad) = f_lambda_unchecked(phi, lambda);
    if !bad.is_empty() {
        return Err(LabError::InadmissibleSlices { times: bad });
    }
    Ok(f)
}

/// [`f_lambda`] returning the inadmissible slice times instead of failing.
pub fn f_lambda_unchecked(phi: &SpaceTimeField, lambda: [f64; 2]) -> (SpaceTimeField, Vec<f64>) {
    let grid = *phi.grid();
    let mut bad = Vec::new();
    let f = phi
        .map_slices(|t, s| {
            let out: Vec<C64> = s
                .iter()
                .enumerate()
                .map(|(i, v)| {
                    let e = lambda_xi(lambda, &grid, i) - grid.freq_radius_sq(i) * (1.0 + t * t) / 2.0;
                    v * e.exp()
                })
                .collect();
            out
        })
        .expect("weights are finite on the grid");
    for k in 0..f.len() {
        if !slice_admissible(&grid, f.slice(k)) {
            bad.push(f.times()[k]);
        }
    }
    (f, bad)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::linspace;

    #[test]
    fn phi_numeric_matches_oracle_when_well_conditioned() {
        let grid = Grid::new(1, 256, 12.0).unwrap();
        let h = ComplexGaussian::real(1, 4.0).unwrap();
        let times = linspace(-0.04, 0.04, 5);
        let numeric = phi_from_wave(&h.sample(&grid).unwrap(), &times).unwrap();
        let oracle = phi_from_gaussian(&h, &grid, &times).unwrap();
        let err = crate::field::relative_l2(numeric.values(), oracle.values());
        assert!(err < 1e-8, "{err}");
    }

    #[test]
    fn phi_of_the_free_wave_is_flagged() {
        let grid = Grid::new(1, 512, 20.0).unwrap();
        let h = ComplexGaussian::real(1, 0.25).unwrap().sample(&grid).unwrap();
        assert!(matches!(
            phi_from_wave(&h, &[0.0, 0.5]),
            Err(LabError::InadmissibleSlices { .. })
        ));
        let zero = phi_from_wave(&SampledField::zeros(grid), &[0.0, 0.1]).unwrap();
        assert!(zero.values().iter().all(|v| v.norm() == 0.0));
    }

    #[test]
    fn constant_phi_has_large_residual() {
        let grid = Grid::new(1, 128, 10.0).unwrap();
        let phi = SpaceTimeField::from_fn(grid, linspace(0.0, 0.2, 5), |_, _| C64::new(1.0, 0.0)).unwrap();
        assert!(phi_equation_residual(&phi).unwrap() > 0.1);
    }

    #[test]
    fn admissible_runs() {
        let f = [false, true, true, true, false, true];
        assert_eq!(admissible_run(&f, 2), Some((1, 3)));
        assert_eq!(admissible_run(&f, 0), None);
    }

    #[test]
    fn rejects_non_uniform_times() {
        let grid = Grid::new(1, 8, 1.0).unwrap();
        let r = SpaceTimeField::from_fn(grid, vec![0.0, 0.1, 0.3], |_, _| C64::new(0.0, 0.0));
        assert_eq!(r, Err(LabError::NonUniformTimes));
    }
}
