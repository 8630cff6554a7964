use hardy_core::equivalence::{
    gaussian_line_fit, iterate_t, psi_identity_residuals, reduce_t, sign_identity_residual, slice_consistency,
};
use hardy_core::field::{
    forward_fourier, hermite_eigenvalue, hermite_field, hermite_function, max_abs_diff, Grid, SampledField,
    SpectralField,
};
use num_complex::Complex64 as C64;
use serde_json::json;

use crate::config::RunConfig;
use crate::data::polynomial;
use crate::output::{Check, Output};
use crate::Failure;

pub fn run(cfg: &RunConfig, out: &mut Output) -> Result<Vec<Check>, Failure> {
    let grid = Grid::new(1, cfg.n, cfg.l)?;
    let e = polynomial(&grid, &[1.0])?;
    let xe = polynomial(&grid, &[0.0, 1.0])?;
    let t_e = reduce_t(&e)?.max_abs();
    let t_xe = max_abs_diff(reduce_t(&xe)?.values(), e.values());

    // degree-reduction chain on the configured polynomial datum
    let h = polynomial(&grid, &cfg.poly)?;
    let degree = cfg.poly.iter().rposition(|c| *c != 0.0).unwrap_or(0);
    let mut csv = String::from("k,norm,line_residual\n");
    for k in 0..=degree + 1 {
        let f = iterate_t(&h, k)?;
        csv.push_str(&format!(
            "{k},{:.16e},{:.16e}\n",
            f.norm(),
            gaussian_line_fit(&f).relative
        ));
    }
    out.write("chain.csv", &csv)?;
    let on_line = gaussian_line_fit(&iterate_t(&h, degree)?).relative;
    let vanished = iterate_t(&h, degree + 1)?.norm() / h.norm();
    let sign = sign_identity_residual(&h)?;

    let phi = hermite_field(&grid, cfg.hermite_k, 0)?;
    let (psi1, psi2) = psi_identity_residuals(&phi)?;

    let eigen = (0..=cfg.hermite_max)
        .map(|k| {
            let spec = forward_fourier(&hermite_field(&grid, k, 0)?);
            let expect = SpectralField::from_fn(grid, |p| hermite_eigenvalue(k) * hermite_function(k, p[0]))?;
            Ok(spec.relative_distance(&expect))
        })
        .collect::<Result<Vec<f64>, Failure>>()?
        .into_iter()
        .fold(0.0, f64::max);

    // a non-separable 2D datum on a coarser grid
    let g2 = Grid::new(2, cfg.n.min(128), cfg.l)?;
    let h2 = SampledField::from_fn(g2, |p| {
        let q = p[0] * p[0] + p[0] * p[1] + p[1] * p[1];
        C64::new(1.0 + p[1], p[0]) * (-q / 4.0).exp()
    })?;
    let slice = slice_consistency(&h2, cfg.eta)?;

    let checks = vec![
        Check::at_most("max |T e^{-x^2/4}|", t_e, 1e-12),
        Check::at_most("max |T(x e^{-x^2/4}) - e^{-x^2/4}|", t_xe, 1e-12),
        Check::at_most("T^deg h off the Gaussian line", on_line, 1e-8),
        Check::at_most("||T^(deg+1) h|| / ||h||", vanished, 1e-8),
        Check::at_most("sign-convolution identity", sign, 1e-8),
        Check::at_most("Psi identity 1", psi1, 1e-8),
        Check::at_most("Psi identity 2", psi2, 1e-8),
        Check::at_most("Hermite eigenrelation", eigen, 1e-10),
        Check::at_most("slice consistency", slice, 1e-8),
    ];
    let body = json!({
        "degree": degree,
        "chain_line_residual": on_line,
        "chain_vanishing": vanished,
        "sign_identity_residual": sign,
        "psi_residuals": [psi1, psi2],
        "hermite_eigen_residual": eigen,
        "slice_consistency": slice,
    });
    out.report("equivalence", &cfg.resolved, body, &checks)?;
    Ok(checks)
}
