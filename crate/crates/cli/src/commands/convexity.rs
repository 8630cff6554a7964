use hardy_core::convexity::{
    arctan_convexity_check, f_lambda, log_convexity_defect, phi_equation_residual, phi_from_gaussian, phi_from_wave,
    theorem3_sweep, trace_to_csv, ConvexityTrace,
};
use serde::Serialize;
use serde_json::json;

use super::lambda_label;
use crate::config::RunConfig;
use crate::data::datum;
use crate::output::{Check, Output};
use crate::Failure;

#[derive(Serialize)]
struct TraceRow {
    lambda: String,
    file: String,
    defect: f64,
    arctan_second_difference: f64,
}

pub fn run(cfg: &RunConfig, out: &mut Output) -> Result<Vec<Check>, Failure> {
    let d = datum(cfg)?;
    let times = cfg.window();
    let phi = match &d.gaussian {
        Some(g) => phi_from_gaussian(g, &d.grid, &times)?,
        None => phi_from_wave(&d.field, &times)?,
    };
    let residual = phi_equation_residual(&phi)?;
    let mut traces = Vec::new();
    for (i, &lambda) in cfg.lambdas.iter().enumerate() {
        let f = f_lambda(&phi, lambda)?;
        let trace = ConvexityTrace::from_field(&f, cfg.epsilon)?;
        let file = format!("trace_lambda{i}.csv");
        out.write(&file, &trace_to_csv(&trace))?;
        traces.push(TraceRow {
            lambda: lambda_label(lambda, cfg.dim),
            file,
            defect: log_convexity_defect(&trace),
            arctan_second_difference: arctan_convexity_check(&trace),
        });
    }
    let sweep = theorem3_sweep(&phi, &cfg.lambdas, cfg.t_final)?;
    let min = |f: fn(&TraceRow) -> f64| traces.iter().map(f).fold(f64::INFINITY, f64::min);
    let checks = vec![
        Check::at_most("phi equation residual", residual, 1e-4),
        Check::at_least("min log-convexity defect", min(|r| r.defect), -1e-4),
        Check::at_least(
            "min arctan second difference",
            min(|r| r.arctan_second_difference),
            -1e-6,
        ),
        Check::at_most("max lambda-sweep ratio", sweep.max_ratio(), 1.0 + 1e-4),
    ];
    let body = json!({
        "phi_equation_residual": residual,
        "traces": traces,
        "theorem3": sweep,
    });
    out.report("convexity", &cfg.resolved, body, &checks)?;
    Ok(checks)
}
