//! Transforms linking the sup-norm, L^2, polynomial-weighted, distributional
//! and Beurling forms of the uncertainty principle, with numeric scans.

use std::f64::consts::PI;

use num_complex::Complex64 as C64;
use serde::{Serialize, Serializer};

use crate::error::{LabError, Result};
use crate::field::{
    dtft_line, forward_fourier, forward_values, interpolate_at, inverse_values, relative_l2, ComplexGaussian, Grid,
    SampledField, SpectralField, NOISE_FLOOR,
};
use crate::numeric::{cumulative_integral, logsumexp, midpoint_sum};

fn require_1d(grid: &Grid) -> Result<()> {
    if grid.dim() != 1 {
        return Err(LabError::Dimension("operation is defined for 1D fields".into()));
    }
    Ok(())
}

/// `T h = (h - h(0) e^{-x^2/4}) / x`, with `h(0)` by band-limited interpolation.
/// The grid never contains `x = 0`.
pub fn reduce_t(h: &SampledField) -> Result<SampledField> {
    require_1d(h.grid())?;
    let h0 = interpolate_at(h, [0.0, 0.0]);
    h.map(|p, v| (v - h0 * (-p[0] * p[0] / 4.0).exp()) / p[0])
}

/// `T^k h`; `k = 0` is the identity.
pub fn iterate_t(h: &SampledField, k: usize) -> Result<SampledField> {
    require_1d(h.grid())?;
    let mut f = h.clone();
    for _ in 0..k {
        f = reduce_t(&f)?;
    }
    Ok(f)
}

/// Least-squares projection of `f` onto the line spanned by `e^{-|x|^2/4}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GaussianLineFit {
    pub coefficient: C64,
    /// `||f - c e^{-|x|^2/4}||`.
    pub residual: f64,
    /// `residual / ||f||` (0 for the zero field).
    pub relative: f64,
}

pub fn gaussian_line_fit(f: &SampledField) -> GaussianLineFit {
    let grid = f.grid();
    let e: Vec<f64> = (0..grid.len()).map(|i| (-grid.radius_sq(i) / 4.0).exp()).collect();
    let ee: f64 = e.iter().map(|v| v * v).sum();
    let fe: C64 = f.values().iter().zip(&e).map(|(v, w)| v * w).sum();
    let c = fe / ee;
    let r2: f64 = f.values().iter().zip(&e).map(|(v, w)| (v - c * w).norm_sqr()).sum();
    let residual = (r2 * grid.cell_volume()).sqrt();
    let norm = f.norm();
    GaussianLineFit {
        coefficient: c,
        residual,
        relative: if norm == 0.0 { 0.0 } else { residual / norm },
    }
}

/// Relative mass tolerance of [`sign_convolution`].
pub const MASS_TOLERANCE: f64 = 1e-8;

/// `(sgn * g^)(xi) = 2 int_{-inf}^{xi} g^ - int g^`, which is `2 int_{-inf}^{xi} g^`
/// once the mass vanishes. Then `F[g/x] = (-i/2) (sgn * g^)`.
///
/// Requires `|int g^| <= 1e-8 ||g^||_1`, i.e. `g(0) = 0`.
pub fn sign_convolution(ghat: &SpectralField) -> Result<SpectralField> {
    let grid = ghat.grid();
    require_1d(grid)?;
    let dxi = grid.freq_spacing();
    let mass = midpoint_sum(ghat.values(), dxi);
    let l1: f64 = ghat.values().iter().map(|v| v.norm()).sum::<f64>() * dxi;
    if mass.norm() > MASS_TOLERANCE * l1 {
        return Err(LabError::NonzeroMass { mass: mass.norm() });
    }
    let c = cumulative_integral(ghat.values(), dxi);
    SpectralField::new(*grid, c.iter().map(|v| 2.0 * v - mass).collect())
}

/// Relative L^2 distance between `F[T h]` and `(-i/2) sgn * F[h - h(0) e^{-x^2/4}]`.
pub fn sign_identity_residual(h: &SampledField) -> Result<f64> {
    require_1d(h.grid())?;
    let h0 = interpolate_at(h, [0.0, 0.0]);
    let g = h.map(|p, v| v - h0 * (-p[0] * p[0] / 4.0).exp())?;
    let lhs = forward_fourier(&reduce_t(h)?);
    let rhs = sign_convolution(&forward_fourier(&g))?.scale(C64::new(0.0, -0.5));
    Ok(lhs.relative_distance(&rhs))
}

fn slice_grid(h: &SampledField) -> Result<Grid> {
    if h.grid().dim() != 2 {
        return Err(LabError::Dimension("slice transform needs a 2D field".into()));
    }
    Ok(h.grid().axis_grid())
}

fn check_eta(grid: &Grid, eta: f64) -> Result<()> {
    if !grid.freq_contains(eta) {
        return Err(LabError::EtaOutOfSpan { eta });
    }
    Ok(())
}

/// `h_eta(x) = (2 pi)^{-1/2} int e^{-i y eta} h(x, y) dy` by quadrature in `y`.
pub fn slice_transform(h: &SampledField, eta: f64) -> Result<SampledField> {
    let axis = slice_grid(h)?;
    check_eta(&axis, eta)?;
    let n = axis.points();
    let values = (0..n)
        .map(|i| dtft_line(&h.values()[i * n..(i + 1) * n], &axis, &[eta])[0])
        .collect();
    SampledField::new(axis, values)
}

/// `h^(xi_k, eta)` on the dual `xi` grid from the 2D transform, interpolated
/// in `eta` by band-limited evaluation.
pub fn spectrum_at_eta(h: &SampledField, eta: f64) -> Result<SpectralField> {
    let axis = slice_grid(h)?;
    check_eta(&axis, eta)?;
    let n = axis.points();
    let spec = forward_values(h.values(), h.grid());
    let values = (0..n)
        .map(|k| {
            // back to y for this xi row, then evaluate the y-transform at eta
            let row = inverse_values(&spec[k * n..(k + 1) * n], &axis);
            dtft_line(&row, &axis, &[eta])[0]
        })
        .collect();
    SpectralField::new(axis, values)
}

/// Distance between `F[h_eta]` and `h^(., eta)` over the larger of `||h^(., eta)||`
/// and `||h||`; a slice through a zero of the `y`-profile vanishes identically.
pub fn slice_consistency(h: &SampledField, eta: f64) -> Result<f64> {
    let a = forward_fourier(&slice_transform(h, eta)?);
    let b = spectrum_at_eta(h, eta)?;
    let scale = b.norm().max(h.norm());
    if scale == 0.0 {
        return Ok(0.0);
    }
    let diff: f64 = a.values().iter().zip(b.values()).map(|(x, y)| (x - y).norm_sqr()).sum();
    Ok((diff * a.grid().freq_cell_volume()).sqrt() / scale)
}

/// Edge-to-interior growth allowed for a weighted factor before it counts
/// as unresolvable on the grid.
pub const RESOLVABLE_GROWTH: f64 = 1e6;

/// Checks that `e^{|p|^2/2} |v|` at the outermost resolved samples is within
/// `RESOLVABLE_GROWTH` of its maximum over `|p| <= r/2`.
fn check_resolvable(values: &[C64], radii_sq: &[f64], what: &'static str) -> Result<()> {
    let peak = values.iter().map(|v| v.norm()).fold(0.0, f64::max);
    if peak == 0.0 {
        return Ok(());
    }
    let floor = NOISE_FLOOR * peak;
    let logs: Vec<(f64, f64)> = values
        .iter()
        .zip(radii_sq)
        .filter(|(v, _)| v.norm() > floor)
        .map(|(v, r2)| (*r2, r2 / 2.0 + v.norm().ln()))
        .collect();
    let r_max = logs.iter().map(|p| p.0).fold(0.0, f64::max).sqrt();
    let inner = logs
        .iter()
        .filter(|p| p.0.sqrt() <= r_max / 2.0)
        .map(|p| p.1)
        .fold(f64::NEG_INFINITY, f64::max);
    let outer = logs
        .iter()
        .filter(|p| p.0.sqrt() > 0.9 * r_max)
        .map(|p| p.1)
        .fold(f64::NEG_INFINITY, f64::max);
    if outer - inner > RESOLVABLE_GROWTH.ln() {
        return Err(LabError::UnresolvableWeight(what));
    }
    Ok(())
}

/// `(e^{-|.|^2 / 2} * Phi)(x) e^{-x^2/4}`; returns the exponent-combined sum
/// `sum_j dy e^{s(x) - (x-y_j)^2/2} Phi_j` for a caller-chosen shift `s`.
fn gaussian_conv(phi: &SampledField, x: f64, shift: f64) -> C64 {
    let grid = phi.grid();
    let dy = grid.spacing();
    grid.coords()
        .iter()
        .zip(phi.values())
        .map(|(&y, v)| v * (shift - (x - y) * (x - y) / 2.0).exp())
        .sum::<C64>()
        * dy
}

/// `Psi = e^{-x^2/4} (e^{-|.|^2/2} * Phi)` by direct quadrature (1D).
pub fn smooth_psi(phi: &SampledField) -> Result<SampledField> {
    require_1d(phi.grid())?;
    phi.map(|p, _| gaussian_conv(phi, p[0], -p[0] * p[0] / 4.0))
}

/// Relative residuals of
/// `e^{x^2/2} Psi(x) = (e^{-|.|^2} * Upsilon_1)(x/2)` with `Upsilon_1 = e^{|.|^2/2} Phi`, and
/// `e^{xi^2/2} Psi^(xi) = sqrt(2) (e^{-2|.|^2} * Upsilon_2)(xi/2)` with `Upsilon_2 = e^{|.|^2/2} Phi^`.
///
/// The `sqrt 2` is the convolution constant of the unitary transform. Each
/// side is compared where `|Psi| >= 1e-6 max|Psi|` (resp. `|Psi^|`), since
/// the weight amplifies rounding noise elsewhere.
pub fn psi_identity_residuals(phi: &SampledField) -> Result<(f64, f64)> {
    let grid = *phi.grid();
    require_1d(&grid)?;
    let xs = grid.coords();
    let r2: Vec<f64> = xs.iter().map(|x| x * x).collect();
    check_resolvable(phi.values(), &r2, "e^{|x|^2/2} Phi")?;
    let phi_hat = forward_fourier(phi);
    let xis = grid.freqs();
    let k2: Vec<f64> = xis.iter().map(|x| x * x).collect();
    check_resolvable(phi_hat.values(), &k2, "e^{|xi|^2/2} Phi^")?;
    if phi.max_abs() == 0.0 {
        return Ok((0.0, 0.0));
    }
    let dy = grid.spacing();

    // identity 1: the weighted sampled Psi against the convolution of
    // Upsilon_1 at x/2, on the resolved support of Psi
    let psi = smooth_psi(phi)?;
    let psi_peak = psi.max_abs();
    let (mut lhs1, mut rhs1) = (Vec::new(), Vec::new());
    for (&x, v) in xs.iter().zip(psi.values()) {
        if v.norm() < 1e-6 * psi_peak {
            continue;
        }
        lhs1.push(v * (x * x / 2.0).exp());
        let s = x / 2.0;
        // Upsilon_1 weight folded into each exponent so it cannot overflow
        let r: C64 = xs
            .iter()
            .zip(phi.values())
            .map(|(&y, w)| w * (y * y / 2.0 - (s - y) * (s - y)).exp())
            .sum::<C64>()
            * dy;
        rhs1.push(r);
    }
    let res1 = relative_l2(&lhs1, &rhs1);

    // identity 2: Psi^ from the sampled Psi, compared on its resolved support
    let psi_hat = forward_fourier(&psi);
    let peak = psi_hat.max_abs();
    let dxi = grid.freq_spacing();
    let hat_floor = NOISE_FLOOR * phi_hat.max_abs();
    let (mut lhs2, mut rhs2) = (Vec::new(), Vec::new());
    for (k, &xi) in xis.iter().enumerate() {
        let v = psi_hat.values()[k];
        if v.norm() < 1e-6 * peak {
            continue;
        }
        lhs2.push(v * (xi * xi / 2.0).exp());
        let s = xi / 2.0;
        let r: C64 = xis
            .iter()
            .zip(phi_hat.values())
            .filter(|(_, w)| w.norm() > hat_floor)
            .map(|(&eta, w)| w * (eta * eta / 2.0 - 2.0 * (s - eta) * (s - eta)).exp())
            .sum::<C64>()
            * (dxi * 2f64.sqrt());
        rhs2.push(r);
    }
    let res2 = relative_l2(&lhs2, &rhs2);
    Ok((res1, res2))
}

/// A sup-weighted bound: finite, or still growing at the edge of the
/// resolved region.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Bound {
    Finite(f64),
    Unresolved,
}

impl Bound {
    pub fn is_finite(&self) -> bool {
        matches!(self, Bound::Finite(_))
    }
}

impl Serialize for Bound {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Bound::Finite(v) => s.serialize_f64(*v),
            Bound::Unresolved => s.serialize_str("unresolved"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Regime {
    /// `1/(alpha beta) > 1/4`.
    Subcritical,
    Endpoint,
    /// `1/(alpha beta) < 1/4`.
    Supercritical,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Classification {
    ConsistentOnlyWithZero,
    ConsistentWithGaussianLine,
    Unconstrained,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct HardyVerdict {
    pub alpha: f64,
    pub beta: f64,
    pub sup_x_bound: Bound,
    pub sup_xi_bound: Bound,
    pub regime: Regime,
    pub classification: Classification,
}

pub fn regime(alpha: f64, beta: f64) -> Regime {
    let inv = 1.0 / (alpha * beta);
    if (inv - 0.25).abs() <= 1e-12 * 0.25 {
        Regime::Endpoint
    } else if inv > 0.25 {
        Regime::Subcritical
    } else {
        Regime::Supercritical
    }
}

pub fn classify(regime: Regime, x: Bound, xi: Bound) -> Classification {
    match (regime, x.is_finite() && xi.is_finite()) {
        (Regime::Subcritical, true) => Classification::ConsistentOnlyWithZero,
        (Regime::Endpoint, true) => Classification::ConsistentWithGaussianLine,
        _ => Classification::Unconstrained,
    }
}

/// Samples below this fraction of the peak do not enter sup-weighted profiles.
pub const PROFILE_FLOOR: f64 = 1e-8;

/// `sup e^{w |p|^2} |v|` over resolved samples; unresolved when the supremum
/// over all samples exceeds the one over `|p| <= r_max/2` by more than `1e-6`
/// relative, i.e. the weighted profile is still growing outward.
fn sup_weighted(values: &[C64], radii_sq: &[f64], w: f64) -> Bound {
    let peak = values.iter().map(|v| v.norm()).fold(0.0, f64::max);
    if peak == 0.0 {
        return Bound::Finite(0.0);
    }
    let pts: Vec<(f64, f64)> = values
        .iter()
        .zip(radii_sq)
        .filter(|(v, _)| v.norm() >= PROFILE_FLOOR * peak)
        .map(|(v, r2)| (*r2, w * r2 + v.norm().ln()))
        .collect();
    let r_max = pts.iter().map(|p| p.0).fold(0.0, f64::max).sqrt();
    let all = pts.iter().map(|p| p.1).fold(f64::NEG_INFINITY, f64::max);
    let inner = pts
        .iter()
        .filter(|p| p.0.sqrt() <= r_max / 2.0)
        .map(|p| p.1)
        .fold(f64::NEG_INFINITY, f64::max);
    if all > inner + (1e-6f64).ln_1p() {
        Bound::Unresolved
    } else {
        Bound::Finite(all.exp())
    }
}

/// Numeric reading of `|h| = O(e^{-|x|^2/beta^2})`, `|h^| = O(e^{-4|xi|^2/alpha^2})`.
pub fn hardy_certificate(h: &SampledField, alpha: f64, beta: f64) -> HardyVerdict {
    let grid = h.grid();
    let r2: Vec<f64> = (0..grid.len()).map(|i| grid.radius_sq(i)).collect();
    let k2: Vec<f64> = (0..grid.len()).map(|i| grid.freq_radius_sq(i)).collect();
    let sup_x = sup_weighted(h.values(), &r2, 1.0 / (beta * beta));
    let spec = forward_fourier(h);
    let sup_xi = sup_weighted(spec.values(), &k2, 4.0 / (alpha * alpha));
    let reg = regime(alpha, beta);
    HardyVerdict {
        alpha,
        beta,
        sup_x_bound: sup_x,
        sup_xi_bound: sup_xi,
        regime: reg,
        classification: classify(reg, sup_x, sup_xi),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ScanRow {
    pub gamma: f64,
    pub x_side_finite: bool,
    pub xi_side_finite: bool,
}

impl ScanRow {
    pub fn doubly_finite(&self) -> bool {
        self.x_side_finite && self.xi_side_finite
    }
}

fn nonnegative(v: f64, scale: f64) -> bool {
    v >= -1e-12 * scale
}

/// Exact finiteness of `sup e^{|x|^2/beta^2} e^{-gamma x^2}` and of
/// `sup e^{4|xi|^2/alpha^2} |F[e^{-gamma x^2}]|`, read off the oracle.
pub fn gaussian_family_scan(gammas: &[f64], alpha: f64, beta: f64) -> Result<Vec<ScanRow>> {
    gammas
        .iter()
        .map(|&gamma| {
            if !(gamma > 0.0) {
                return Err(LabError::InvalidParameter {
                    name: "gamma",
                    value: gamma,
                    reason: "must be positive",
                });
            }
            let g = ComplexGaussian::real(1, gamma)?;
            let wx = 1.0 / (beta * beta);
            let x_side = nonnegative(g.quad().re - wx, wx.max(gamma));
            let spec = g.fourier()?;
            let wxi = 4.0 / (alpha * alpha);
            let xi_side = nonnegative(spec.quad().re - wxi, wxi.max(spec.quad().re));
            Ok(ScanRow {
                gamma,
                x_side_finite: x_side,
                xi_side_finite: xi_side,
            })
        })
        .collect()
}

/// `[1/beta^2, alpha^2/16]` when nonempty (up to `1e-12` relative).
pub fn doubly_finite_interval(alpha: f64, beta: f64) -> Option<(f64, f64)> {
    let (lo, hi) = (1.0 / (beta * beta), alpha * alpha / 16.0);
    if hi >= lo * (1.0 - 1e-12) {
        Some((lo, hi.max(lo)))
    } else {
        None
    }
}

/// `count` values spread over `[lo, hi]`, plus both interval endpoints of
/// [`doubly_finite_interval`], sorted with duplicates removed.
pub fn scan_gammas(alpha: f64, beta: f64, lo: f64, hi: f64, count: usize) -> Vec<f64> {
    let mut g = crate::numeric::linspace(lo, hi, count);
    g.push(1.0 / (beta * beta));
    g.push(alpha * alpha / 16.0);
    g.sort_by(f64::total_cmp);
    g.dedup_by(|a, b| (*a - *b).abs() <= 1e-12 * b.abs().max(1e-300));
    g
}

pub fn scan_to_csv(rows: &[ScanRow]) -> String {
    let mut s = String::from("gamma,x_side_finite,xi_side_finite\n");
    for r in rows {
        s.push_str(&format!("{:.16e},{},{}\n", r.gamma, r.x_side_finite, r.xi_side_finite));
    }
    s
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BeurlingReport {
    pub cutoff: f64,
    pub value: f64,
    pub half_cutoff_value: f64,
    /// `value / half_cutoff_value` (`1` when both vanish).
    pub growth_ratio: f64,
}

fn beurling_log(h: &SampledField, spec: &SpectralField, cutoff: f64) -> f64 {
    let grid = h.grid();
    let hp = h.max_abs();
    let sp = spec.max_abs();
    let xs: Vec<(usize, f64)> = (0..grid.len())
        .filter(|&i| grid.radius_sq(i) <= cutoff * cutoff && h.values()[i].norm() > NOISE_FLOOR * hp)
        .map(|i| (i, h.values()[i].norm().ln()))
        .collect();
    let ks: Vec<(usize, f64)> = (0..grid.len())
        .filter(|&k| grid.freq_radius_sq(k) <= cutoff * cutoff && spec.values()[k].norm() > NOISE_FLOOR * sp)
        .map(|k| (k, spec.values()[k].norm().ln()))
        .collect();
    let cell = (grid.cell_volume() * grid.freq_cell_volume()).ln();
    let terms = xs.iter().flat_map(|&(i, lh)| {
        let x = grid.point(i);
        ks.iter().map(move |&(k, ls)| {
            let xi = grid.freq_point(k);
            lh + ls + (x[0] * xi[0] + x[1] * xi[1]).abs()
        })
    });
    logsumexp(terms) + cell
}

/// `int int_{|x|,|xi| <= c} |h(x)| |h^(xi)| e^{|x.xi|}` in the log domain,
/// at `c = cutoff` and `c = cutoff/2`. Samples below the noise floor count as zero.
pub fn beurling_integral(h: &SampledField, cutoff: f64) -> Result<BeurlingReport> {
    let grid = h.grid();
    if !(cutoff > 0.0 && cutoff <= grid.half_width()) {
        return Err(LabError::InvalidParameter {
            name: "cutoff",
            value: cutoff,
            reason: "must lie in (0, L]",
        });
    }
    if h.max_abs() == 0.0 {
        return Ok(BeurlingReport {
            cutoff,
            value: 0.0,
            half_cutoff_value: 0.0,
            growth_ratio: 1.0,
        });
    }
    let spec = forward_fourier(h);
    let full = beurling_log(h, &spec, cutoff);
    if full > 709.0 {
        return Err(LabError::Diverging { cutoff });
    }
    let half = beurling_log(h, &spec, cutoff / 2.0);
    let growth_ratio = if half == f64::NEG_INFINITY {
        if full == f64::NEG_INFINITY {
            1.0
        } else {
            f64::INFINITY
        }
    } else {
        (full - half).exp()
    };
    Ok(BeurlingReport {
        cutoff,
        value: full.exp(),
        half_cutoff_value: half.exp(),
        growth_ratio,
    })
}

/// `sqrt(2 pi)` convolution constant of the unitary transform in 1D.
pub fn convolution_constant() -> f64 {
    (2.0 * PI).sqrt()
}
