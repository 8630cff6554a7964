use hardy_core::convexity::{apply_a_slice, apply_s_slice, slice_inner, slice_residuals};
use hardy_core::field::{hermite_function, Grid};
use num_complex::Complex64 as C64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use super::lambda_label;
use crate::config::RunConfig;
use crate::data::grid;
use crate::output::{Check, Output};
use crate::Failure;

/// Random combination of one to three Hermite products on the frequency grid.
fn random_slice(grid: &Grid, rng: &mut ChaCha8Rng, k_max: usize) -> Vec<C64> {
    let terms: Vec<(C64, usize, usize)> = (0..rng.gen_range(1..=3))
        .map(|_| {
            let c = C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
            let j = if grid.dim() == 2 { rng.gen_range(0..=k_max) } else { 0 };
            (c, rng.gen_range(0..=k_max), j)
        })
        .collect();
    (0..grid.len())
        .map(|i| {
            let p = grid.freq_point(i);
            terms
                .iter()
                .map(|(c, k, j)| {
                    let y = if grid.dim() == 2 {
                        hermite_function(*j, p[1])
                    } else {
                        1.0
                    };
                    c * hermite_function(*k, p[0]) * y
                })
                .sum()
        })
        .collect()
}

fn norm(v: &[C64], grid: &Grid) -> f64 {
    slice_inner(v, v, grid).re.sqrt()
}

/// `|<Pf, g> - sign <f, Pg>| / (||Pf|| ||g|| + ||f|| ||Pg||)`.
fn adjoint_defect(pf: &[C64], pg: &[C64], f: &[C64], g: &[C64], grid: &Grid, sign: f64) -> f64 {
    let d = slice_inner(pf, g, grid) - slice_inner(f, pg, grid) * sign;
    d.norm() / (norm(pf, grid) * norm(g, grid) + norm(f, grid) * norm(pg, grid))
}

pub fn run(cfg: &RunConfig, out: &mut Output) -> Result<Vec<Check>, Failure> {
    let grid = grid(cfg)?;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut csv = String::from("sample,t,lambda,r1,r2,adj_s,adj_a\n");
    let (mut r1_max, mut r2_max, mut adj_max) = (0.0f64, 0.0f64, 0.0f64);
    for sample in 0..cfg.samples {
        let f = random_slice(&grid, &mut rng, cfg.hermite_max);
        let g = random_slice(&grid, &mut rng, cfg.hermite_max);
        for &t in &cfg.commutator_times {
            for &lambda in &cfg.lambdas {
                let (r1, r2) = slice_residuals(&f, &grid, t, lambda);
                let s = |v: &[C64]| apply_s_slice(v, &grid, t, lambda);
                let a = |v: &[C64]| apply_a_slice(v, &grid, t, lambda);
                let adj_s = adjoint_defect(&s(&f), &s(&g), &f, &g, &grid, 1.0);
                let adj_a = adjoint_defect(&a(&f), &a(&g), &f, &g, &grid, -1.0);
                csv.push_str(&format!(
                    "{sample},{t},{},{r1:.16e},{r2:.16e},{adj_s:.16e},{adj_a:.16e}\n",
                    lambda_label(lambda, cfg.dim)
                ));
                r1_max = r1_max.max(r1);
                r2_max = r2_max.max(r2);
                adj_max = adj_max.max(adj_s).max(adj_a);
            }
        }
    }
    out.write("commutators.csv", &csv)?;
    let checks = vec![
        Check::at_most("max [S,A] residual", r1_max, 1e-7),
        Check::at_most("max time-derivative identity residual", r2_max, 1e-7),
        Check::at_most("max adjointness defect", adj_max, 1e-8),
    ];
    let body = json!({
        "samples": cfg.samples,
        "max_commutator_residual": r1_max,
        "max_derivative_identity_residual": r2_max,
        "max_adjointness_defect": adj_max,
    });
    out.report("commutators", &cfg.resolved, body, &checks)?;
    Ok(checks)
}
