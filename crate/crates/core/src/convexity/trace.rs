use serde::Serialize;

use super::spacetime::{admissible_run, f_lambda_unchecked, SpaceTimeField};
use crate::error::{LabError, Result};
use crate::numeric::{is_uniform, lagrange_weights, linspace};

/// Default regularization of `log H`.
pub const DEFAULT_EPSILON: f64 = 1e-6;

/// `H(t) = ||f(t)||^2` on a uniform time grid.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConvexityTrace {
    pub times: Vec<f64>,
    #[serde(rename = "H")]
    pub h: Vec<f64>,
    pub epsilon: f64,
    pub dim: usize,
}

impl ConvexityTrace {
    pub fn new(times: Vec<f64>, h: Vec<f64>, epsilon: f64, dim: usize) -> Result<Self> {
        if times.len() != h.len() {
            return Err(LabError::Dimension("times and H differ in length".into()));
        }
        if times.len() < 5 {
            return Err(LabError::TooFewTimes {
                found: times.len(),
                needed: 5,
            });
        }
        if times.windows(2).any(|w| w[1] <= w[0]) || !is_uniform(&times) {
            return Err(LabError::NonUniformTimes);
        }
        if let Some(index) = h.iter().position(|v| !(v.is_finite() && *v >= 0.0)) {
            return Err(LabError::NonFinite { index });
        }
        if !(epsilon > 0.0) {
            return Err(LabError::InvalidParameter {
                name: "epsilon",
                value: epsilon,
                reason: "must be positive",
            });
        }
        Ok(ConvexityTrace { times, h, epsilon, dim })
    }

    pub fn from_field(f: &SpaceTimeField, epsilon: f64) -> Result<Self> {
        let h = (0..f.len()).map(|k| f.slice_norm(k).powi(2)).collect();
        Self::new(f.times().to_vec(), h, epsilon, f.grid().dim())
    }

    fn dt(&self) -> f64 {
        (self.times[self.times.len() - 1] - self.times[0]) / (self.times.len() - 1) as f64
    }

    fn weight(&self, t: f64) -> f64 {
        (1.0 + t * t).powf(self.dim as f64 / 2.0)
    }

    /// `H / (1+t^2)^{n/2}`.
    pub fn normalized(&self) -> Vec<f64> {
        self.times
            .iter()
            .zip(&self.h)
            .map(|(t, h)| h / self.weight(*t))
            .collect()
    }

    /// `K = log((H + eps) / (1+t^2)^{n/2})`.
    pub fn k_values(&self) -> Vec<f64> {
        self.times
            .iter()
            .zip(&self.h)
            .map(|(t, h)| ((h + self.epsilon) / self.weight(*t)).ln())
            .collect()
    }
}

/// Discrete `d_t((1+t^2) d_t log(H+eps)) - n` at interior times, in the
/// conservative form with `1 + t^2` evaluated at half steps.
pub fn log_convexity_defect_profile(trace: &ConvexityTrace) -> Vec<f64> {
    let dt = trace.dt();
    let l: Vec<f64> = trace.h.iter().map(|h| (h + trace.epsilon).ln()).collect();
    let n = trace.dim as f64;
    (1..l.len() - 1)
        .map(|i| {
            let tp = trace.times[i] + dt / 2.0;
            let tm = trace.times[i] - dt / 2.0;
            ((1.0 + tp * tp) * (l[i + 1] - l[i]) - (1.0 + tm * tm) * (l[i] - l[i - 1])) / (dt * dt) - n
        })
        .collect()
}

/// Minimum of [`log_convexity_defect_profile`]; nonnegative for true solutions.
pub fn log_convexity_defect(trace: &ConvexityTrace) -> f64 {
    log_convexity_defect_profile(trace)
        .into_iter()
        .fold(f64::INFINITY, f64::min)
}

/// `theta(t, T) = (arctan T - arctan t) / (2 arctan T)`.
pub fn theta(t: f64, t_final: f64) -> f64 {
    (t_final.atan() - t.atan()) / (2.0 * t_final.atan())
}

/// `K` resampled on a uniform grid in `s = arctan t` with as many points as
/// the trace. Local Lagrange interpolation: 4 nodes below 64 samples, 6 above.
pub fn arctan_resample(trace: &ConvexityTrace) -> (Vec<f64>, Vec<f64>) {
    let s: Vec<f64> = trace.times.iter().map(|t| t.atan()).collect();
    let k = trace.k_values();
    let m = s.len();
    let width = if m < 64 { 4 } else { 6 };
    let grid = linspace(s[0], s[m - 1], m);
    let values = grid
        .iter()
        .map(|&x| {
            let j = s.partition_point(|&v| v <= x).clamp(1, m - 1) - 1;
            let lo = (j + 1).saturating_sub(width / 2).min(m - width);
            let nodes = &s[lo..lo + width];
            let w = lagrange_weights(nodes, x);
            w.iter().zip(&k[lo..lo + width]).map(|(w, v)| w * v).sum()
        })
        .collect();
    (grid, values)
}

/// Minimum raw second difference `K_{j+1} - 2K_j + K_{j-1}` on the uniform
/// arctan grid; nonnegative exactly when the three-point bound holds there.
pub fn arctan_convexity_check(trace: &ConvexityTrace) -> f64 {
    let (_, k) = arctan_resample(trace);
    k.windows(3)
        .map(|w| w[2] - 2.0 * w[1] + w[0])
        .fold(f64::INFINITY, f64::min)
}

/// Trace CSV with header `t,H,normH,s,K,defect`; `defect` is empty at the ends.
pub fn trace_to_csv(trace: &ConvexityTrace) -> String {
    let norm = trace.normalized();
    let k = trace.k_values();
    let defect = log_convexity_defect_profile(trace);
    let mut out = String::from("t,H,normH,s,K,defect\n");
    for i in 0..trace.times.len() {
        let d = if i == 0 || i + 1 == trace.times.len() {
            String::new()
        } else {
            format!("{:.16e}", defect[i - 1])
        };
        out.push_str(&format!(
            "{:.16e},{:.16e},{:.16e},{:.16e},{:.16e},{}\n",
            trace.times[i],
            trace.h[i],
            norm[i],
            trace.times[i].atan(),
            k[i],
            d
        ));
    }
    out
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Theorem3Row {
    pub lambda: Vec<f64>,
    pub ratio: f64,
    /// Contiguous window around `t = 0` (within `[-T, T]`) where every
    /// weighted slice is admissible.
    pub admissible_window: [f64; 2],
    pub inadmissible_times: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Theorem3Report {
    #[serde(rename = "T")]
    pub t_final: f64,
    pub rows: Vec<Theorem3Row>,
}

impl Theorem3Report {
    pub fn max_ratio(&self) -> f64 {
        self.rows.iter().map(|r| r.ratio).fold(0.0, f64::max)
    }
}

/// For each `lambda`, `sup_t ||f_lambda||^2 / (1+t^2)^{n/2}` divided by
/// `e^{|lambda|^2/(1+T^2)} sup_t ||phi||^2 / (1+t^2)^{n/2}`, over the admissible
/// window inside `|t| <= T`.
pub fn theorem3_sweep(phi: &SpaceTimeField, lambdas: &[[f64; 2]], t_final: f64) -> Result<Theorem3Report> {
    let phi = phi.restrict(-t_final, t_final)?;
    let n = phi.grid().dim();
    let weight = |t: f64| (1.0 + t * t).powf(n as f64 / 2.0);
    let center = phi
        .times()
        .iter()
        .enumerate()
        .min_by(|a, b| a.1.abs().total_cmp(&b.1.abs()))
        .map(|(k, _)| k)
        .unwrap_or(0);
    let mut rows = Vec::with_capacity(lambdas.len());
    for &lambda in lambdas {
        let (f, bad) = f_lambda_unchecked(&phi, lambda);
        let flags: Vec<bool> = phi.times().iter().map(|t| !bad.contains(t)).collect();
        let (lo, hi) =
            admissible_run(&flags, center).ok_or_else(|| LabError::InadmissibleSlices { times: bad.clone() })?;
        let sup = |field: &SpaceTimeField| {
            (lo..=hi)
                .map(|k| field.slice_norm(k).powi(2) / weight(field.times()[k]))
                .fold(0.0, f64::max)
        };
        let lam2: f64 = lambda[..n].iter().map(|l| l * l).sum();
        let denom = (lam2 / (1.0 + t_final * t_final)).exp() * sup(&phi);
        let num = sup(&f);
        let ratio = if denom == 0.0 { 0.0 } else { num / denom };
        rows.push(Theorem3Row {
            lambda: lambda[..n].to_vec(),
            ratio,
            admissible_window: [phi.times()[lo], phi.times()[hi]],
            inadmissible_times: bad,
        });
    }
    Ok(Theorem3Report { t_final, rows })
}
