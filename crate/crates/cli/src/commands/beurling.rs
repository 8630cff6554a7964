use hardy_core::equivalence::beurling_integral;
use serde_json::json;

use crate::config::RunConfig;
use crate::data::datum;
use crate::output::{Check, Output};
use crate::Failure;

pub fn run(cfg: &RunConfig, out: &mut Output) -> Result<Vec<Check>, Failure> {
    let d = datum(cfg)?;
    let report = beurling_integral(&d.field, cfg.cutoff)?;
    let checks = vec![Check::at_least(
        "truncated integral is monotone in the cutoff",
        report.growth_ratio,
        1.0,
    )];
    out.report("beurling", &cfg.resolved, json!(report), &checks)?;
    Ok(checks)
}
