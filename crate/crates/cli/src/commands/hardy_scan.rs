use hardy_core::equivalence::{
    doubly_finite_interval, gaussian_family_scan, hardy_certificate, regime, scan_gammas, scan_to_csv, Regime,
};
use serde_json::json;

use crate::config::RunConfig;
use crate::data::datum;
use crate::output::{Check, Output};
use crate::Failure;

pub fn run(cfg: &RunConfig, out: &mut Output) -> Result<Vec<Check>, Failure> {
    let (alpha, beta) = (cfg.alpha, cfg.beta);
    let gammas = scan_gammas(alpha, beta, cfg.gamma_min, cfg.gamma_max, cfg.gamma_count);
    let rows = gaussian_family_scan(&gammas, alpha, beta)?;
    out.write("scan.csv", &scan_to_csv(&rows))?;
    let interval = doubly_finite_interval(alpha, beta);
    let doubly: Vec<f64> = rows.iter().filter(|r| r.doubly_finite()).map(|r| r.gamma).collect();
    let inside = |g: f64| match interval {
        Some((lo, hi)) => g >= lo * (1.0 - 1e-12) && g <= hi * (1.0 + 1e-12),
        None => false,
    };
    let mut checks = vec![
        Check::holds(
            "doubly-finite rows match [1/beta^2, alpha^2/16]",
            rows.iter().all(|r| r.doubly_finite() == inside(r.gamma)),
        ),
        Check::holds(
            "region nonempty iff alpha beta >= 4",
            interval.is_some() == (alpha * beta >= 4.0 * (1.0 - 1e-12)),
        ),
    ];
    let reg = regime(alpha, beta);
    if reg == Regime::Endpoint {
        let single = doubly.len() == 1 && (doubly[0] * beta * beta - 1.0).abs() <= 1e-12;
        checks.push(Check::holds("endpoint admits exactly gamma = 1/beta^2", single));
    }
    let d = datum(cfg)?;
    let verdict = hardy_certificate(&d.field, alpha, beta);
    let body = json!({
        "regime": reg,
        "doubly_finite_interval": interval.map(|(a, b)| [a, b]),
        "doubly_finite_gammas": doubly,
        "verdict": verdict,
    });
    out.report("hardy-scan", &cfg.resolved, body, &checks)?;
    Ok(checks)
}
