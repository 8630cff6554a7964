//! Acceptance suite: one pass/fail line per criterion, non-zero exit on failure.

use std::fs;
use std::path::Path;
use std::process::Command;

use hardy_core::convexity::*;
use hardy_core::equivalence::*;
use hardy_core::field::{
    forward_fourier, free_wave_oracle, hermite_eigenvalue, hermite_field, hermite_function, inverse_fourier,
    max_abs_diff, ComplexGaussian, Grid, SampledField, SpectralField,
};
use hardy_core::numeric::linspace;
use hardy_core::propagator::{evolve_convolution, evolve_oracle, evolve_pseudoconformal, evolve_spectral};
use hardy_core::weights::*;
use hardy_core::C64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn random_field(grid: Grid, rng: &mut ChaCha8Rng) -> SampledField {
    let v = (0..grid.len())
        .map(|_| C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
        .collect();
    SampledField::new(grid, v).unwrap()
}

fn fourier_layer() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut worst = 0.0f64;
    for grid in [Grid::new(1, 1024, 20.0).unwrap(), Grid::new(2, 64, 10.0).unwrap()] {
        for _ in 0..10 {
            let f = random_field(grid, &mut rng);
            let spec = forward_fourier(&f);
            worst = worst.max((spec.norm() - f.norm()).abs() / f.norm());
            worst = worst.max(inverse_fourier(&spec).relative_distance(&f));
        }
    }
    ensure(worst <= 1e-12, || format!("Plancherel/round trip {worst:e}"))?;
    let g = Grid::new(1, 1024, 20.0).unwrap();
    let h = SampledField::from_real_fn(g, |p| (-p[0] * p[0] / 4.0).exp()).unwrap();
    let expect = SpectralField::from_fn(g, |p| C64::new(2f64.sqrt() * (-p[0] * p[0]).exp(), 0.0)).unwrap();
    let gauss = max_abs_diff(forward_fourier(&h).values(), expect.values());
    ensure(gauss <= 1e-10, || format!("quarter Gaussian {gauss:e}"))?;
    Ok(format!(
        "Plancherel/round trip {worst:.1e}, quarter Gaussian {gauss:.1e}"
    ))
}

fn propagator_agreement() -> Outcome {
    let g = Grid::new(1, 4096, 40.0).unwrap();
    let (mut conv, mut pc) = (0.0f64, 0.0f64);
    for k in [0, 1, 2, 5] {
        let h = hermite_field(&g, k, 0).unwrap();
        for t in [-2.0, -0.7, -0.1, 0.1, 0.7, 2.0] {
            let s = evolve_spectral(&h, t).field;
            let c = evolve_convolution(&h, t).map_err(|e| e.to_string())?.field;
            let p = evolve_pseudoconformal(&h, t).map_err(|e| e.to_string())?.field;
            conv = conv.max(c.relative_distance(&s)).max(c.relative_distance(&p));
            pc = pc.max(p.relative_distance(&s));
        }
    }
    ensure(conv <= 1e-6, || format!("convolution {conv:e}"))?;
    ensure(pc <= 1e-8, || format!("pseudoconformal {pc:e}"))?;
    // the chirped narrow member spreads past |x| = 40 by |t| = 2
    let g = Grid::new(1, 4096, 80.0).unwrap();
    let mut oracle = 0.0f64;
    for (quad, lin) in [
        (C64::new(0.25, 0.0), 0.0),
        (C64::new(0.5, 0.3), 0.4),
        (C64::new(1.0, -0.5), -0.8),
    ] {
        let h = ComplexGaussian::new(1, C64::new(1.0, 0.0), quad, &[C64::new(lin, 0.2)]).unwrap();
        let sampled = h.sample(&g).unwrap();
        for t in [-2.0, -0.1, 0.1, 0.7, 2.0] {
            let exact = evolve_oracle(&h, t, &g).map_err(|e| e.to_string())?.field;
            ensure(exact.is_admissible(), || {
                format!("oracle wave leaves the box at t = {t}")
            })?;
            oracle = oracle.max(evolve_spectral(&sampled, t).field.relative_distance(&exact));
        }
    }
    ensure(oracle <= 1e-9, || format!("oracle {oracle:e}"))?;
    Ok(format!(
        "convolution {conv:.1e}, pseudoconformal {pc:.1e}, oracle {oracle:.1e}"
    ))
}

fn lemma1_quantitative() -> Outcome {
    let w = WeightSpec::new(2.0, 2.0, 1.0).unwrap();
    ensure(w.r == 1.0, || format!("R = {}", w.r))?;
    let mut weight = 0.0f64;
    for t in linspace(0.0, 1.0, 101) {
        let explicit = 1.0 / (4.0 * (1.0 - 2.0 * t * (1.0 - t)));
        weight = weight.max((decay_rate_a(t, &w).unwrap() - explicit).abs() / explicit);
    }
    ensure(weight <= 1e-12, || format!("endpoint weight {weight:e}"))?;
    let grid = Grid::new(1, 2048, 40.0).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let (mut ends, mut margin) = (0.0f64, f64::INFINITY);
    for _ in 0..50 {
        let gamma: f64 = rng.gen_range(0.3..1.0);
        let t_final: f64 = rng.gen_range(0.1..1.0);
        let (k0, k1): (f64, f64) = (rng.gen_range(0.2..0.55), rng.gen_range(0.2..0.55));
        let beta = 1.0 / (k0 * gamma).sqrt();
        let alpha = 1.0 / (k1 * gamma / (1.0 + 16.0 * gamma * gamma * t_final * t_final)).sqrt();
        let w = WeightSpec::new(alpha, beta, t_final).map_err(|e| e.to_string())?;
        let (b2, a2) = (1.0 / (beta * beta), 1.0 / (alpha * alpha));
        ends = ends.max((decay_rate_a(0.0, &w).unwrap() - b2).abs() / b2);
        ends = ends.max((decay_rate_a(t_final, &w).unwrap() - a2).abs() / a2);
        let h = ComplexGaussian::real(1, gamma).unwrap().sample(&grid).unwrap();
        let r = check_lemma1(&h, &w, &linspace(0.0, t_final, 41)).map_err(|e| e.to_string())?;
        margin = margin.min(r.min_margin / r.rhs);
    }
    ensure(ends <= 1e-12, || format!("end values {ends:e}"))?;
    ensure(margin >= -1e-8, || format!("min relative margin {margin:e}"))?;
    Ok(format!(
        "R = 1, weight {weight:.1e}, end values {ends:.1e}, min margin/rhs {margin:.3}"
    ))
}

fn inverse_weight_convexity() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let (mut worst, mut interior) = (f64::INFINITY, 0);
    for _ in 0..20 {
        let alpha: f64 = rng.gen_range(0.5..4.0);
        let beta: f64 = rng.gen_range(0.5..4.0);
        let t_final = rng.gen_range(0.05..0.25) * alpha * beta;
        let w = WeightSpec::new(alpha, beta, t_final).unwrap();
        let inv: Vec<f64> = linspace(0.0, t_final, 1001)
            .into_iter()
            .map(|t| 1.0 / decay_rate_a(t, &w).unwrap())
            .collect();
        for s in inv.windows(3) {
            worst = worst.min((s[0] - 2.0 * s[1] + s[2]) / s[1]);
        }
        let (_, idx, last) = argmin_inverse_a(&w, 1e-3 * t_final);
        let numeric = idx > 0 && idx < last;
        ensure(numeric == interior_min_condition(&w), || {
            format!("predicate mismatch at {w:?}")
        })?;
        interior += numeric as usize;
    }
    ensure(worst >= -1e-9, || format!("second difference {worst:e}"))?;
    Ok(format!(
        "min relative second difference {worst:.1e}, {interior}/20 interior minima"
    ))
}

fn hermite_slice(grid: &Grid, rng: &mut ChaCha8Rng) -> Vec<C64> {
    let terms: Vec<(C64, usize, usize)> = (0..rng.gen_range(1..=3))
        .map(|_| {
            (
                C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)),
                rng.gen_range(0..=5),
                rng.gen_range(0..=4),
            )
        })
        .collect();
    (0..grid.len())
        .map(|i| {
            let p = grid.freq_point(i);
            terms
                .iter()
                .map(|&(c, k, j)| {
                    c * hermite_function(k, p[0])
                        * if grid.dim() == 2 {
                            hermite_function(j, p[1])
                        } else {
                            1.0
                        }
                })
                .sum()
        })
        .collect()
}

fn operator_identities() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    let (mut adj, mut r1m, mut r2m) = (0.0f64, 0.0f64, 0.0f64);
    let cases = [
        (
            Grid::new(1, 1024, 20.0).unwrap(),
            vec![[0.0, 0.0], [1.0, 0.0], [-1.0, 0.0], [2.0, 0.0]],
        ),
        (
            Grid::new(2, 128, 20.0).unwrap(),
            vec![[0.0, 0.0], [1.0, 0.0], [-1.0, 0.5], [2.0, -1.0]],
        ),
    ];
    for (grid, lambdas) in &cases {
        let nrm = |v: &[C64]| slice_inner(v, v, grid).re.sqrt();
        for _ in 0..10 {
            let (f, g) = (hermite_slice(grid, &mut rng), hermite_slice(grid, &mut rng));
            for t in [-1.0, 0.0, 0.5, 3.0] {
                for &lambda in lambdas {
                    let (r1, r2) = slice_residuals(&f, grid, t, lambda);
                    r1m = r1m.max(r1);
                    r2m = r2m.max(r2);
                    for (pf, pg, sign) in [
                        (
                            apply_s_slice(&f, grid, t, lambda),
                            apply_s_slice(&g, grid, t, lambda),
                            1.0,
                        ),
                        (
                            apply_a_slice(&f, grid, t, lambda),
                            apply_a_slice(&g, grid, t, lambda),
                            -1.0,
                        ),
                    ] {
                        let d = slice_inner(&pf, &g, grid) - slice_inner(&f, &pg, grid) * sign;
                        adj = adj.max(d.norm() / (nrm(&pf) * nrm(&g) + nrm(&f) * nrm(&pg)));
                    }
                }
            }
        }
    }
    ensure(adj <= 1e-8, || format!("adjointness {adj:e}"))?;
    ensure(r1m <= 1e-7 && r2m <= 1e-7, || {
        format!("commutator {r1m:e}, time identity {r2m:e}")
    })?;
    Ok(format!(
        "adjointness {adj:.1e}, commutator {r1m:.1e}, time identity {r2m:.1e} (n = 1, 2)"
    ))
}

fn gaussian_phi(dt: f64, half: f64) -> Result<SpaceTimeField, String> {
    let grid = Grid::new(1, 2048, 96.0).unwrap();
    let h = ComplexGaussian::real(1, 0.3).unwrap();
    let n = (2.0 * half / dt).round() as usize + 1;
    phi_from_gaussian(&h, &grid, &linspace(-half, half, n)).map_err(|e| e.to_string())
}

fn trace(phi: &SpaceTimeField, lambda: f64) -> Result<ConvexityTrace, String> {
    let f = f_lambda(phi, [lambda, 0.0]).map_err(|e| e.to_string())?;
    ConvexityTrace::from_field(&f, DEFAULT_EPSILON).map_err(|e| e.to_string())
}

fn log_convexity() -> Outcome {
    let mut equality = 0.0f64;
    for dim in [1, 2] {
        let times = linspace(-1.0, 1.0, 2001);
        let h = times.iter().map(|t| (1.0 + t * t).powf(dim as f64 / 2.0)).collect();
        let tr = ConvexityTrace::new(times, h, 1e-12, dim).unwrap();
        equality = log_convexity_defect_profile(&tr)
            .iter()
            .fold(equality, |m, d| m.max(d.abs()));
    }
    ensure(equality <= 1e-6, || format!("equality case {equality:e}"))?;
    let phi = gaussian_phi(1e-3, 0.6)?;
    let (mut defect, mut arctan) = (f64::INFINITY, f64::INFINITY);
    for lambda in [0.0, 0.5, 1.0, 2.0] {
        let tr = trace(&phi, lambda)?;
        defect = defect.min(log_convexity_defect(&tr));
        arctan = arctan.min(arctan_convexity_check(&tr));
    }
    ensure(defect >= -1e-4, || format!("defect {defect:e}"))?;
    ensure(arctan >= -1e-6, || format!("arctan {arctan:e}"))?;
    let profile = |dt: f64| -> Result<Vec<f64>, String> {
        Ok(log_convexity_defect_profile(&trace(&gaussian_phi(dt, 0.8)?, 0.5)?))
    };
    let (p1, p2, p4) = (profile(0.02)?, profile(0.01)?, profile(0.005)?);
    let (mut d12, mut d24) = (0.0f64, 0.0f64);
    for (j, &a) in p1.iter().enumerate() {
        d12 = d12.max((a - p2[2 * j + 1]).abs());
        d24 = d24.max((p2[2 * j + 1] - p4[4 * j + 3]).abs());
    }
    let ratio = d12 / d24;
    ensure((ratio - 4.0).abs() <= 0.8, || format!("convergence ratio {ratio}"))?;
    Ok(format!(
        "equality {equality:.1e}, min defect {defect:.3}, min arctan {arctan:.1e}, halving ratio {ratio:.2}"
    ))
}

fn phi_machinery() -> Outcome {
    let phi = gaussian_phi(1e-3, 0.6)?;
    let gauss = phi_equation_residual(&phi).map_err(|e| e.to_string())?;
    let grid = Grid::new(1, 1024, 40.0).unwrap();
    let shifted_data = free_wave_oracle(1, 0.5).unwrap();
    let shifted = phi_from_gaussian(&shifted_data, &grid, &linspace(-1.1, -0.9, 201)).map_err(|e| e.to_string())?;
    let shift = phi_equation_residual(&shifted).map_err(|e| e.to_string())?;
    ensure(gauss <= 1e-4 && shift <= 1e-4, || {
        format!("residuals {gauss:e}, {shift:e}")
    })?;
    let lambdas = [[0.0, 0.0], [0.5, 0.0], [1.0, 0.0], [2.0, 0.0], [-1.5, 0.0]];
    let ratio = theorem3_sweep(&phi, &lambdas, 0.6)
        .map_err(|e| e.to_string())?
        .max_ratio();
    ensure(ratio <= 1.0 + 1e-4, || format!("sweep ratio {ratio}"))?;
    Ok(format!(
        "residual gaussian {gauss:.1e}, shifted {shift:.1e}, max sweep ratio {ratio:.4}"
    ))
}

fn poly_gauss(grid: &Grid, coeffs: &[f64]) -> SampledField {
    SampledField::from_real_fn(*grid, |p| {
        coeffs.iter().rev().fold(0.0, |a, c| a * p[0] + c) * (-p[0] * p[0] / 4.0).exp()
    })
    .unwrap()
}

fn transforms() -> Outcome {
    let g = Grid::new(1, 1024, 20.0).unwrap();
    let e = poly_gauss(&g, &[1.0]);
    let t0 = reduce_t(&e).unwrap().max_abs();
    let t1 = max_abs_diff(reduce_t(&poly_gauss(&g, &[0.0, 1.0])).unwrap().values(), e.values());
    ensure(t0 <= 1e-12 && t1 <= 1e-12, || format!("T basics {t0:e}, {t1:e}"))?;
    let mut sign = 0.0f64;
    let mut family = vec![
        poly_gauss(&g, &[0.5, -1.0, 0.0, 2.0, 1.0]),
        ComplexGaussian::real(1, 0.7).unwrap().sample(&g).unwrap(),
    ];
    family.extend((0..=5).map(|k| hermite_field(&g, k, 0).unwrap()));
    for h in &family {
        sign = sign.max(sign_identity_residual(h).map_err(|e| e.to_string())?);
    }
    ensure(sign <= 1e-8, || format!("sign identity {sign:e}"))?;
    let mut chain = 0.0f64;
    let coeffs = [1.0, -0.5, 0.75, 2.0, -1.25];
    for k in 0..=4 {
        let h = poly_gauss(&g, &coeffs[..=k]);
        chain = chain.max(gaussian_line_fit(&iterate_t(&h, k).unwrap()).relative);
        let past = iterate_t(&h, k + 1).unwrap();
        chain = chain
            .max(gaussian_line_fit(&past).residual / h.norm())
            .max(past.norm() / h.norm());
    }
    ensure(chain <= 1e-8, || format!("reduction chain {chain:e}"))?;
    let mut eigen = 0.0f64;
    for k in 0..=5 {
        let spec = forward_fourier(&hermite_field(&g, k, 0).unwrap());
        let expect = SpectralField::from_fn(g, |p| hermite_eigenvalue(k) * hermite_function(k, p[0])).unwrap();
        eigen = eigen.max(max_abs_diff(spec.values(), expect.values()));
    }
    ensure(eigen <= 1e-10, || format!("Hermite eigenrelation {eigen:e}"))?;
    let mut psi = 0.0f64;
    let pg = Grid::new(1, 256, 20.0).unwrap();
    for k in 0..=4 {
        let (r1, r2) = psi_identity_residuals(&hermite_field(&pg, k, 0).unwrap()).map_err(|e| e.to_string())?;
        psi = psi.max(r1).max(r2);
    }
    ensure(psi <= 1e-8, || format!("Psi identities {psi:e}"))?;
    Ok(format!(
        "T {:.1e}, sign {sign:.1e}, chain {chain:.1e}, eigen {eigen:.1e}, Psi {psi:.1e}",
        t0.max(t1)
    ))
}

fn hardy_region() -> Outcome {
    let (mut endpoints, mut checked) = (0, 0);
    for alpha in linspace(1.0, 3.25, 10) {
        for beta in [1.0, 1.6, 2.0, 2.5, 3.2] {
            let rows = gaussian_family_scan(&scan_gammas(alpha, beta, 0.01, 2.0, 60), alpha, beta)
                .map_err(|e| e.to_string())?;
            let both: Vec<f64> = rows.iter().filter(|r| r.doubly_finite()).map(|r| r.gamma).collect();
            let expect = alpha * beta >= 4.0 * (1.0 - 1e-12);
            ensure(!both.is_empty() == expect, || {
                format!("({alpha}, {beta}): {} doubly finite", both.len())
            })?;
            if regime(alpha, beta) == Regime::Endpoint {
                endpoints += 1;
                let unique = both.len() == 1 && (both[0] - 1.0 / (beta * beta)).abs() <= 1e-12 * both[0];
                ensure(unique, || format!("endpoint ({alpha}, {beta}): {both:?}"))?;
            }
            checked += 1;
        }
    }
    ensure(endpoints > 0, || "lattice misses the endpoint".into())?;
    Ok(format!(
        "{checked} lattice points, {endpoints} endpoint pairs with a single width 1/beta^2"
    ))
}

fn cli_run(command: &str, config: &Path, out: &Path) -> (Option<i32>, String) {
    let o = Command::new(env!("CARGO_BIN_EXE_hardy-lab"))
        .args([command, "--config"])
        .arg(config)
        .arg("--out")
        .arg(out)
        .output()
        .expect("binary runs");
    (o.status.code(), String::from_utf8_lossy(&o.stderr).into_owned())
}

fn snapshot(dir: &Path) -> Vec<(String, Vec<u8>)> {
    let mut v: Vec<_> = fs::read_dir(dir)
        .unwrap()
        .map(|e| {
            let e = e.unwrap();
            (
                e.file_name().to_string_lossy().into_owned(),
                fs::read(e.path()).unwrap(),
            )
        })
        .collect();
    v.sort();
    v
}

fn cli_contract() -> Outcome {
    let configs = Path::new(env!("CARGO_MANIFEST_DIR")).join("configs");
    let tmp = tempfile::tempdir().map_err(|e| e.to_string())?;
    for (command, file) in [("evolve", "evolve.cfg"), ("commutators", "commutators.cfg")] {
        let (a, b) = (
            tmp.path().join(format!("{command}-a")),
            tmp.path().join(format!("{command}-b")),
        );
        let ca = cli_run(command, &configs.join(file), &a).0;
        let cb = cli_run(command, &configs.join(file), &b).0;
        ensure(ca == Some(0) && cb == Some(0), || {
            format!("{command} exit {ca:?}/{cb:?}")
        })?;
        ensure(snapshot(&a) == snapshot(&b), || format!("{command} outputs differ"))?;
    }
    let write = |name: &str, text: &str| {
        let p = tmp.path().join(name);
        fs::write(&p, text).unwrap();
        p
    };
    let failing = write(
        "fail.cfg",
        "N = 2048\nL = 96\ngamma = 0.3\nt_start = -0.8\nt_end = 0.8\nlambdas = 0\nT = 0.8\n",
    );
    let (code, _) = cli_run("convexity", &failing, &tmp.path().join("fail"));
    ensure(code == Some(1), || format!("failed invariant exit {code:?}"))?;
    let unknown = write("unknown.cfg", "N = 256\nfrobnicate = 1\n");
    let (code, err) = cli_run("evolve", &unknown, &tmp.path().join("unknown"));
    ensure(code == Some(2) && err.contains("frobnicate"), || {
        format!("unknown key exit {code:?}: {err}")
    })?;
    let pc = write("pc.cfg", "method = pseudoconformal\ntimes = 0, 1\n");
    let (code, err) = cli_run("evolve", &pc, &tmp.path().join("pc"));
    ensure(code == Some(2) && err.contains("t_min"), || {
        format!("t = 0 exit {code:?}: {err}")
    })?;
    Ok("byte-identical reruns; exits 0, 1, 2 as specified".into())
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("Fourier layer", fourier_layer),
        ("propagator agreement", propagator_agreement),
        ("weighted interpolation bound", lemma1_quantitative),
        ("convexity of 1/a", inverse_weight_convexity),
        ("operator identities", operator_identities),
        ("log-convexity", log_convexity),
        ("quotient equation and sweep", phi_machinery),
        ("reduction and sign transforms", transforms),
        ("doubly-finite region", hardy_region),
        ("determinism and exit codes", cli_contract),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(detail) => println!("criterion {}: PASS {name} ({detail})", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {}: FAIL {name} ({detail})", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
