//! Initial data named by the config.

use hardy_core::field::{hermite_field, ComplexGaussian, Grid, SampledField};

use crate::config::{Data, RunConfig};
use crate::Failure;

pub struct Datum {
    pub grid: Grid,
    pub field: SampledField,
    /// Closed form, when the datum is a Gaussian.
    pub gaussian: Option<ComplexGaussian>,
}

pub fn grid(cfg: &RunConfig) -> Result<Grid, Failure> {
    Grid::new(cfg.dim, cfg.n, cfg.l).map_err(Failure::from)
}

/// `p(x) e^{-x^2/4}` with ascending coefficients.
pub fn polynomial(grid: &Grid, coeffs: &[f64]) -> Result<SampledField, Failure> {
    if grid.dim() != 1 {
        return Err(Failure::Usage("data = polynomial needs dim = 1".into()));
    }
    Ok(SampledField::from_real_fn(*grid, |p| {
        let x = p[0];
        coeffs.iter().rev().fold(0.0, |acc, c| acc * x + c) * (-x * x / 4.0).exp()
    })?)
}

/// `exp(-1 / (1 - |x|^2/rho^2))` inside the ball of radius `rho`, zero outside.
pub fn bump(grid: &Grid, rho: f64) -> Result<SampledField, Failure> {
    Ok(SampledField::from_real_fn(*grid, |p| {
        let s = (p[0] * p[0] + p[1] * p[1]) / (rho * rho);
        if s < 1.0 {
            (-1.0 / (1.0 - s)).exp()
        } else {
            0.0
        }
    })?)
}

pub fn datum(cfg: &RunConfig) -> Result<Datum, Failure> {
    let grid = grid(cfg)?;
    let (field, gaussian) = match cfg.data {
        Data::Gaussian => {
            let g = ComplexGaussian::real(cfg.dim, cfg.gamma)?;
            (g.sample(&grid)?, Some(g))
        }
        Data::Hermite => (hermite_field(&grid, cfg.hermite_k, cfg.hermite_j)?, None),
        Data::Polynomial => (polynomial(&grid, &cfg.poly)?, None),
        Data::Bump => (bump(&grid, cfg.bump_radius)?, None),
    };
    Ok(Datum { grid, field, gaussian })
}
