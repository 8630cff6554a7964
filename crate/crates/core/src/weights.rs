//! Gaussian-weighted norms and the interpolation of Gaussian decay between
//! two times: the weight `a(t)`, its root `R`, and the convexity of `1/a`.

use serde::Serialize;

use crate::error::{LabError, Result};
use crate::field::{ComplexGaussian, SampledField, NOISE_FLOOR};
use crate::numeric::logsumexp;
use crate::propagator::evolve_spectral;

/// The weighted integrand at the edge of the resolved region may not exceed
/// this fraction of its peak.
pub const WEIGHT_TAIL_RATIO: f64 = 1e-12;

/// Samples below this fraction of the peak are excluded from decay fits.
pub const FIT_FLOOR: f64 = 1e-8;

/// Parameters of the decay interpolation. `R` is derived.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct WeightSpec {
    pub alpha: f64,
    pub beta: f64,
    #[serde(rename = "T")]
    pub t_final: f64,
    #[serde(rename = "R")]
    pub r: f64,
}

impl WeightSpec {
    pub fn new(alpha: f64, beta: f64, t_final: f64) -> Result<Self> {
        let r = smallest_root_r(alpha, beta, t_final)?;
        Ok(WeightSpec {
            alpha,
            beta,
            t_final,
            r,
        })
    }

    /// `T / (alpha beta)`; admissible iff at most 1/4.
    pub fn ratio(&self) -> f64 {
        self.t_final / (self.alpha * self.beta)
    }
}

fn positive(name: &'static str, v: f64) -> Result<()> {
    if v > 0.0 && v.is_finite() {
        Ok(())
    } else {
        Err(LabError::InvalidParameter {
            name,
            value: v,
            reason: "must be positive and finite",
        })
    }
}

/// Smaller root of `2T R^2 - alpha beta R + 2T = 0`.
///
/// Uses `R = 4T / (alpha beta + sqrt(alpha^2 beta^2 - 16 T^2))`, which is
/// free of cancellation and exact (`R = 1`) at the endpoint.
pub fn smallest_root_r(alpha: f64, beta: f64, t_final: f64) -> Result<f64> {
    positive("alpha", alpha)?;
    positive("beta", beta)?;
    positive("T", t_final)?;
    let ab = alpha * beta;
    let ratio = t_final / ab;
    if ratio > 0.25 * (1.0 + 1e-12) {
        return Err(LabError::BeyondEndpoint { ratio });
    }
    let disc = (ab * ab - 16.0 * t_final * t_final).max(0.0);
    Ok(4.0 * t_final / (ab + disc.sqrt()))
}

/// `a(t) = alpha beta R T / (2(alpha t + beta(T-t))^2 + 2R^2(alpha t - beta(T-t))^2)`.
pub fn decay_rate_a(t: f64, w: &WeightSpec) -> Result<f64> {
    let tt = w.t_final;
    if !(0.0..=tt).contains(&t) {
        return Err(LabError::TimeOutOfRange { t, lo: 0.0, hi: tt });
    }
    let (a, b, r) = (w.alpha, w.beta, w.r);
    let p = a * t + b * (tt - t);
    let m = a * t - b * (tt - t);
    Ok(a * b * r * tt / (2.0 * p * p + 2.0 * r * r * m * m))
}

/// `|alpha - beta| < R^2 (alpha + beta)`: `1/a` has its minimum inside `(0, T)`.
pub fn interior_min_condition(w: &WeightSpec) -> bool {
    (w.alpha - w.beta).abs() < w.r * w.r * (w.alpha + w.beta)
}

/// Argmin of `1/a` over a uniform grid of spacing at most `step` on `[0, T]`.
/// Returns `(t, index, last_index)`.
pub fn argmin_inverse_a(w: &WeightSpec, step: f64) -> (f64, usize, usize) {
    let n = (w.t_final / step).ceil().max(1.0) as usize;
    let mut best = (0.0, 0, f64::INFINITY);
    for k in 0..=n {
        let t = w.t_final * k as f64 / n as f64;
        let v = 1.0 / decay_rate_a(t, w).expect("t in range");
        if v < best.2 {
            best = (t, k, v);
        }
    }
    (best.0, best.1, n)
}

/// Peak-relative positions of the resolved region's edge: above-floor samples
/// lying on the grid boundary or next to a below-floor sample.
fn resolved_edge(f: &SampledField, floor: f64) -> Vec<bool> {
    let grid = f.grid();
    let n = grid.points();
    let above: Vec<bool> = f.values().iter().map(|v| v.norm() > floor).collect();
    (0..grid.len())
        .map(|i| {
            if !above[i] {
                return false;
            }
            if grid.is_boundary(i) {
                return true;
            }
            let neighbours: Vec<usize> = match grid.dim() {
                1 => vec![i - 1, i + 1],
                _ => vec![i - 1, i + 1, i - n, i + n],
            };
            neighbours.iter().any(|&j| !above[j])
        })
        .collect()
}

/// `|| e^{gamma |x|^2} f ||_{L^2}`, accumulated in the log domain.
///
/// Samples below `NOISE_FLOOR * max|f|` count as zero. Fails when the
/// weighted integrand at the edge of the resolved region is above
/// `WEIGHT_TAIL_RATIO` of its peak.
pub fn weighted_l2_norm(f: &SampledField, gamma: f64) -> Result<f64> {
    let grid = f.grid();
    let peak = f.max_abs();
    if peak == 0.0 {
        return Ok(0.0);
    }
    let floor = NOISE_FLOOR * peak;
    let logs: Vec<f64> = f
        .values()
        .iter()
        .enumerate()
        .map(|(i, v)| {
            let m = v.norm();
            if m > floor {
                2.0 * gamma * grid.radius_sq(i) + 2.0 * m.ln()
            } else {
                f64::NEG_INFINITY
            }
        })
        .collect();
    let top = logs.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let edge = resolved_edge(f, floor);
    let edge_top = logs
        .iter()
        .zip(&edge)
        .filter(|(_, &e)| e)
        .map(|(l, _)| *l)
        .fold(f64::NEG_INFINITY, f64::max);
    if edge_top - top > WEIGHT_TAIL_RATIO.ln() {
        return Err(LabError::WeightTailUnresolved { gamma });
    }
    let ln_sq = logsumexp(logs) + grid.cell_volume().ln();
    Ok((0.5 * ln_sq).exp())
}

/// Exact weighted norm of a Gaussian; infinite weights are reported as
/// unresolved, as the numeric route would.
pub fn weighted_l2_norm_oracle(g: &ComplexGaussian, gamma: f64) -> Result<f64> {
    let zero = vec![crate::C64::new(0.0, 0.0); g.dim()];
    let w = g.modulate(crate::C64::new(-gamma, 0.0), &zero)?;
    w.l2_norm().map_err(|_| LabError::WeightTailUnresolved { gamma })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Lemma1Row {
    pub t: f64,
    pub lhs: f64,
    pub rhs: f64,
    pub margin: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Lemma1Report {
    pub spec: WeightSpec,
    pub rows: Vec<Lemma1Row>,
    pub min_margin: f64,
    pub rhs: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Lemma1Summary {
    pub alpha: f64,
    pub beta: f64,
    #[serde(rename = "T")]
    pub t_final: f64,
    #[serde(rename = "R")]
    pub r: f64,
    pub min_margin: f64,
}

impl Lemma1Report {
    fn build(spec: WeightSpec, rhs: f64, lhs: Vec<(f64, f64)>) -> Self {
        let rows: Vec<Lemma1Row> = lhs
            .into_iter()
            .map(|(t, lhs)| Lemma1Row {
                t,
                lhs,
                rhs,
                margin: rhs - lhs,
            })
            .collect();
        let min_margin = rows.iter().map(|r| r.margin).fold(f64::INFINITY, f64::min);
        Lemma1Report {
            spec,
            rows,
            min_margin,
            rhs,
        }
    }

    pub fn summary(&self) -> Lemma1Summary {
        Lemma1Summary {
            alpha: self.spec.alpha,
            beta: self.spec.beta,
            t_final: self.spec.t_final,
            r: self.spec.r,
            min_margin: self.min_margin,
        }
    }

    /// CSV with header `t,lhs,rhs,margin`.
    pub fn to_csv(&self) -> String {
        let mut s = String::from("t,lhs,rhs,margin\n");
        for r in &self.rows {
            s.push_str(&format!(
                "{:.16e},{:.16e},{:.16e},{:.16e}\n",
                r.t, r.lhs, r.rhs, r.margin
            ));
        }
        s
    }
}

fn check_times(times: &[f64], w: &WeightSpec) -> Result<()> {
    for &t in times {
        if !(0.0..=w.t_final).contains(&t) {
            return Err(LabError::TimeOutOfRange {
                t,
                lo: 0.0,
                hi: w.t_final,
            });
        }
    }
    Ok(())
}

/// Evaluates `||e^{a(t)|x|^2} u(t)||` against
/// `||e^{|x|^2/beta^2} u(0)|| + ||e^{|x|^2/alpha^2} u(T)||`, evolving spectrally.
pub fn check_lemma1(h: &SampledField, w: &WeightSpec, times: &[f64]) -> Result<Lemma1Report> {
    check_times(times, w)?;
    let u_t = evolve_spectral(h, w.t_final).field;
    let rhs = weighted_l2_norm(h, 1.0 / (w.beta * w.beta))? + weighted_l2_norm(&u_t, 1.0 / (w.alpha * w.alpha))?;
    let lhs = times
        .iter()
        .map(|&t| {
            let u = evolve_spectral(h, t).field;
            Ok((t, weighted_l2_norm(&u, decay_rate_a(t, w)?)?))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Lemma1Report::build(*w, rhs, lhs))
}

/// Closed-form counterpart of [`check_lemma1`] for Gaussian data.
pub fn check_lemma1_oracle(h: &ComplexGaussian, w: &WeightSpec, times: &[f64]) -> Result<Lemma1Report> {
    check_times(times, w)?;
    let rhs = weighted_l2_norm_oracle(h, 1.0 / (w.beta * w.beta))?
        + weighted_l2_norm_oracle(&h.evolve(w.t_final)?, 1.0 / (w.alpha * w.alpha))?;
    let lhs = times
        .iter()
        .map(|&t| Ok((t, weighted_l2_norm_oracle(&h.evolve(t)?, decay_rate_a(t, w)?)?)))
        .collect::<Result<Vec<_>>>()?;
    Ok(Lemma1Report::build(*w, rhs, lhs))
}

/// Least-squares fit `ln|f| ~ ln A - rate |x|^2`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DecayProfile {
    pub rate: f64,
    pub amplitude: f64,
    /// Weighted RMS of the log-residuals.
    pub residual: f64,
}

/// Fits a centered Gaussian profile to the samples above `FIT_FLOOR * max|f|`,
/// weighting each sample by `1 + |x|^2` so the tail dominates.
pub fn fit_gaussian_decay(f: &SampledField) -> Result<DecayProfile> {
    let grid = f.grid();
    let peak = f.max_abs();
    let pts: Vec<(f64, f64)> = f
        .values()
        .iter()
        .enumerate()
        .filter(|(_, v)| peak > 0.0 && v.norm() >= FIT_FLOOR * peak)
        .map(|(i, v)| (grid.radius_sq(i), v.norm().ln()))
        .collect();
    if pts.len() < 16 {
        return Err(LabError::TooFewSamples {
            found: pts.len(),
            needed: 16,
        });
    }
    let (mut sw, mut sx, mut sy, mut sxx, mut sxy) = (0.0, 0.0, 0.0, 0.0, 0.0);
    for &(x, y) in &pts {
        let w = 1.0 + x;
        sw += w;
        sx += w * x;
        sy += w * y;
        sxx += w * x * x;
        sxy += w * x * y;
    }
    let (mx, my) = (sx / sw, sy / sw);
    let slope = (sxy / sw - mx * my) / (sxx / sw - mx * mx);
    let intercept = my - slope * mx;
    let residual = (pts
        .iter()
        .map(|&(x, y)| (1.0 + x) * (y - intercept - slope * x).powi(2))
        .sum::<f64>()
        / sw)
        .sqrt();
    Ok(DecayProfile {
        rate: -slope,
        amplitude: intercept.exp(),
        residual,
    })
}
