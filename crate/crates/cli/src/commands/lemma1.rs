use hardy_core::numeric::linspace;
use hardy_core::weights::{
    argmin_inverse_a, check_lemma1, check_lemma1_oracle, decay_rate_a, interior_min_condition, WeightSpec,
};
use serde_json::json;

use crate::config::RunConfig;
use crate::data::datum;
use crate::output::{Check, Output};
use crate::Failure;

pub fn run(cfg: &RunConfig, out: &mut Output) -> Result<Vec<Check>, Failure> {
    let w = WeightSpec::new(cfg.alpha, cfg.beta, cfg.t_final)?;
    let d = datum(cfg)?;
    let times = linspace(0.0, cfg.t_final, cfg.lemma1_steps);
    let report = check_lemma1(&d.field, &w, &times)?;
    out.write("lemma1.csv", &report.to_csv())?;
    let a0 = decay_rate_a(0.0, &w)?;
    let a_t = decay_rate_a(cfg.t_final, &w)?;
    let mut checks = vec![
        Check::at_least("min margin", report.min_margin, -1e-8 * report.rhs),
        Check::at_most("|a(0) beta^2 - 1|", (a0 * cfg.beta * cfg.beta - 1.0).abs(), 1e-12),
        Check::at_most("|a(T) alpha^2 - 1|", (a_t * cfg.alpha * cfg.alpha - 1.0).abs(), 1e-12),
    ];
    let mut oracle_gap = None;
    if let Some(g) = &d.gaussian {
        let exact = check_lemma1_oracle(g, &w, &times)?;
        let gap = report
            .rows
            .iter()
            .zip(&exact.rows)
            .map(|(a, b)| (a.lhs - b.lhs).abs() / exact.rhs)
            .fold((report.rhs - exact.rhs).abs() / exact.rhs, f64::max);
        checks.push(Check::at_most("sampled vs closed form (relative to rhs)", gap, 1e-8));
        oracle_gap = Some(gap);
    }
    let step = 1e-3 * cfg.t_final;
    let (t_star, idx, last) = argmin_inverse_a(&w, step);
    let interior = idx > 0 && idx < last;
    checks.push(Check::holds(
        "interior-minimum predicate matches grid argmin",
        interior == interior_min_condition(&w),
    ));
    let body = json!({
        "summary": report.summary(),
        "rhs": report.rhs,
        "a_0": a0,
        "a_T": a_t,
        "argmin_inverse_a": t_star,
        "interior_minimum": interior_min_condition(&w),
        "oracle_gap": oracle_gap,
    });
    out.report("lemma1", &cfg.resolved, body, &checks)?;
    Ok(checks)
}
