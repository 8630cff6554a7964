use hardy_core::field::field_to_csv_string;
use hardy_core::propagator::{evolve_convolution_with, evolve_oracle, evolve_pseudoconformal_with, evolve_spectral};
use serde::Serialize;
use serde_json::json;

use crate::config::{MethodChoice, RunConfig};
use crate::data::datum;
use crate::output::{Check, Output};
use crate::Failure;

#[derive(Serialize)]
struct Row {
    t: f64,
    file: String,
    unitarity_drift: f64,
    convolution_vs_spectral: Option<f64>,
    pseudoconformal_vs_spectral: Option<f64>,
    oracle_vs_spectral: Option<f64>,
}

fn max_of(rows: &[Row], f: impl Fn(&Row) -> Option<f64>) -> Option<f64> {
    rows.iter().filter_map(f).reduce(f64::max)
}

pub fn run(cfg: &RunConfig, out: &mut Output) -> Result<Vec<Check>, Failure> {
    if matches!(cfg.method, MethodChoice::Convolution | MethodChoice::Pseudoconformal) {
        if let Some(t) = cfg.times.iter().find(|t| t.abs() < cfg.t_min) {
            return Err(Failure::Usage(format!(
                "time {t} is below t_min = {} for the selected method",
                cfg.t_min
            )));
        }
    }
    let d = datum(cfg)?;
    let mut rows = Vec::new();
    for (i, &t) in cfg.times.iter().enumerate() {
        let spectral = evolve_spectral(&d.field, t);
        let kernel_ok = t.abs() >= cfg.t_min;
        let want = |m: MethodChoice| kernel_ok && (cfg.method == MethodChoice::All || cfg.method == m);
        let conv = if want(MethodChoice::Convolution) {
            Some(evolve_convolution_with(&d.field, t, cfg.t_min)?)
        } else {
            None
        };
        let pc = if want(MethodChoice::Pseudoconformal) {
            Some(evolve_pseudoconformal_with(&d.field, t, cfg.t_min)?)
        } else {
            None
        };
        let oracle = match &d.gaussian {
            Some(g) => Some(evolve_oracle(g, t, &d.grid)?),
            None => None,
        };
        let written = match cfg.method {
            MethodChoice::Convolution => conv.as_ref().map(|w| &w.field),
            MethodChoice::Pseudoconformal => pc.as_ref().map(|w| &w.field),
            _ => None,
        }
        .unwrap_or(&spectral.field);
        let file = format!("field_t{i}.csv");
        out.write(&file, &field_to_csv_string(written))?;
        rows.push(Row {
            t,
            file,
            unitarity_drift: spectral.unitarity_drift(&d.field),
            convolution_vs_spectral: conv.map(|w| w.field.relative_distance(&spectral.field)),
            pseudoconformal_vs_spectral: pc.map(|w| w.field.relative_distance(&spectral.field)),
            oracle_vs_spectral: oracle.map(|w| spectral.field.relative_distance(&w.field)),
        });
    }
    let mut checks = vec![Check::at_most(
        "max unitarity drift",
        max_of(&rows, |r| Some(r.unitarity_drift)).unwrap_or(0.0),
        1e-10,
    )];
    if let Some(v) = max_of(&rows, |r| r.convolution_vs_spectral) {
        checks.push(Check::at_most("max convolution vs spectral", v, 1e-6));
    }
    if let Some(v) = max_of(&rows, |r| r.pseudoconformal_vs_spectral) {
        checks.push(Check::at_most("max pseudoconformal vs spectral", v, 1e-8));
    }
    if let Some(v) = max_of(&rows, |r| r.oracle_vs_spectral) {
        checks.push(Check::at_most("max spectral vs oracle", v, 1e-9));
    }
    out.report("evolve", &cfg.resolved, json!({ "times": rows }), &checks)?;
    Ok(checks)
}
