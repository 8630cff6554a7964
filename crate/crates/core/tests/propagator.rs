use std::f64::consts::PI;

use hardy_core::field::{hermite_field, laplacian, ComplexGaussian, Grid, SampledField};
use hardy_core::propagator::{
    evolve_convolution, evolve_oracle, evolve_pseudoconformal, evolve_spectral, gaussian_free_wave, v_transform,
    v_transform_oracle,
};
use hardy_core::weights::fit_gaussian_decay;
use hardy_core::{LabError, C64};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(50))]

    #[test]
    fn spectral_matches_closed_form(
        re in 0.1f64..2.0, im in -1.0f64..1.0, b_abs in 0.0f64..1.0, b_arg in 0.0f64..(2.0 * PI),
        t in -1.0f64..1.0,
    ) {
        let g = Grid::new(1, 2048, 40.0).unwrap();
        let h = ComplexGaussian::new(1, C64::new(1.0, 0.0), C64::new(re, im), &[C64::from_polar(b_abs, b_arg)]).unwrap();
        let exact = evolve_oracle(&h, t, &g).unwrap();
        // a periodic grid can only represent waves that stay inside the box
        prop_assume!(exact.field.is_admissible());
        let numeric = evolve_spectral(&h.sample(&g).unwrap(), t);
        prop_assert!(numeric.field.relative_distance(&exact.field) <= 1e-9);
        prop_assert!(numeric.unitarity_drift(&h.sample(&g).unwrap()) <= 1e-10);
    }
}

#[test]
fn methods_agree_on_hermite_family() {
    // wide enough for |t| = 2, fine enough for the kernel at |t| = 0.1
    let g = Grid::new(1, 4096, 40.0).unwrap();
    for k in [0, 2, 5] {
        let h = hermite_field(&g, k, 0).unwrap();
        for t in [-2.0, -0.1, 0.1, 0.7, 2.0] {
            let s = evolve_spectral(&h, t).field;
            let c = evolve_convolution(&h, t).unwrap();
            let p = evolve_pseudoconformal(&h, t).unwrap();
            assert!(c.field.relative_distance(&s) < 1e-6, "k {k} t {t}");
            assert!(p.field.relative_distance(&s) < 1e-8, "k {k} t {t}");
            assert!(c.field.relative_distance(&p.field) < 1e-6, "k {k} t {t}");
            assert!(c.unitarity_drift(&h) < 1e-10 && p.unitarity_drift(&h) < 1e-10);
        }
    }
}

#[test]
fn methods_agree_in_two_dimensions() {
    let g = Grid::new(2, 128, 12.0).unwrap();
    let h = hermite_field(&g, 1, 2).unwrap();
    let s = evolve_spectral(&h, 0.6).field;
    assert!(evolve_convolution(&h, 0.6).unwrap().field.relative_distance(&s) < 1e-6);
    assert!(evolve_pseudoconformal(&h, 0.6).unwrap().field.relative_distance(&s) < 1e-8);
}

#[test]
fn gaussian_decay_law() {
    let g = Grid::new(1, 2048, 40.0).unwrap();
    for t in [0.0, 0.5, 1.0, 2.0] {
        let u = gaussian_free_wave(t, &g).unwrap();
        let fit = fit_gaussian_decay(&u).unwrap();
        let rate = 1.0 / (4.0 * (1.0 + t * t));
        assert!((fit.rate / rate - 1.0).abs() < 1e-6, "t {t}: {} vs {rate}", fit.rate);
        // the same law from evolving e^{-x^2/4} itself
        let h = SampledField::from_real_fn(g, |p| (-p[0] * p[0] / 4.0).exp()).unwrap();
        let fit = fit_gaussian_decay(&evolve_spectral(&h, t).field).unwrap();
        assert!((fit.rate / rate - 1.0).abs() < 1e-6);
    }
}

#[test]
fn v_transform_solves_free_equation() {
    let g = Grid::new(1, 1024, 30.0).unwrap();
    let h = hermite_field(&g, 2, 0).unwrap();
    let u_at = |s: f64| Ok(evolve_spectral(&h, s).field);
    let dt = 1e-3;
    for t in [0.5, 0.8] {
        let v = v_transform(u_at, t, 1e-3).unwrap();
        let vp = v_transform(u_at, t + dt, 1e-3).unwrap();
        let vm = v_transform(u_at, t - dt, 1e-3).unwrap();
        let lap = laplacian(&v);
        // i v_t + Delta v
        let res: Vec<C64> = (0..g.len())
            .map(|i| C64::i() * (vp.values()[i] - vm.values()[i]) / (2.0 * dt) + lap.values()[i])
            .collect();
        let r = SampledField::new(g, res).unwrap().norm() / lap.norm();
        assert!(r < 1e-4, "t {t}: {r}");
    }
}

#[test]
fn v_transform_matches_oracle_on_gaussians() {
    let g = Grid::new(1, 1024, 30.0).unwrap();
    let h = ComplexGaussian::new(1, C64::new(1.0, 0.0), C64::new(0.4, 0.2), &[C64::new(0.3, -0.5)]).unwrap();
    let u_at = |s: f64| evolve_oracle(&h, s, &g).map(|w| w.field);
    for t in [0.4, 0.75, 1.0] {
        let v = v_transform(u_at, t, 1e-3).unwrap();
        let exact = v_transform_oracle(&h, t).unwrap().sample(&g).unwrap();
        assert!(v.relative_distance(&exact) < 1e-8, "t {t}");
    }
    assert!(matches!(
        v_transform(u_at, 1.5, 1e-3),
        Err(LabError::TimeOutOfRange { .. })
    ));
}
