use std::f64::consts::PI;

use num_complex::Complex64 as C64;

use super::{Grid, SampledField, SpectralField};
use crate::error::{LabError, Result};

/// Exact object `c * exp(-a |x|^2 + b . x)` with isotropic `a`.
///
/// All half-integer powers use the principal branch. Objects with
/// `Re a <= 0` are formal: they can be sampled and multiplied, but
/// transforms and norms reject them.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComplexGaussian {
    dim: usize,
    amplitude: C64,
    quad: C64,
    lin: [C64; 2],
}

fn dim_check(dim: usize) -> Result<()> {
    if (1..=2).contains(&dim) {
        Ok(())
    } else {
        Err(LabError::Dimension(format!("dimension {dim} not supported")))
    }
}

/// `z^{-n/2}` on the principal branch.
pub(crate) fn inv_half_power(z: C64, dim: usize) -> C64 {
    match dim {
        1 => 1.0 / z.sqrt(),
        _ => 1.0 / z,
    }
}

impl ComplexGaussian {
    pub fn new(dim: usize, amplitude: C64, quad: C64, lin: &[C64]) -> Result<Self> {
        dim_check(dim)?;
        if lin.len() != dim {
            return Err(LabError::Dimension(format!(
                "linear coefficient has {} entries, dimension is {dim}",
                lin.len()
            )));
        }
        let mut b = [C64::new(0.0, 0.0); 2];
        b[..dim].copy_from_slice(lin);
        Ok(ComplexGaussian {
            dim,
            amplitude,
            quad,
            lin: b,
        })
    }

    /// Centered Gaussian `c * exp(-a |x|^2)`.
    pub fn centered(dim: usize, amplitude: C64, quad: C64) -> Result<Self> {
        dim_check(dim)?;
        Ok(ComplexGaussian {
            dim,
            amplitude,
            quad,
            lin: [C64::new(0.0, 0.0); 2],
        })
    }

    /// Real centered profile `exp(-gamma |x|^2)`.
    pub fn real(dim: usize, gamma: f64) -> Result<Self> {
        Self::centered(dim, C64::new(1.0, 0.0), C64::new(gamma, 0.0))
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn amplitude(&self) -> C64 {
        self.amplitude
    }

    pub fn quad(&self) -> C64 {
        self.quad
    }

    pub fn lin(&self) -> &[C64] {
        &self.lin[..self.dim]
    }

    pub fn is_formal(&self) -> bool {
        self.quad.re <= 0.0
    }

    fn require_normalizable(&self) -> Result<()> {
        if self.is_formal() {
            Err(LabError::FormalGaussian("Re a <= 0 is not normalizable"))
        } else {
            Ok(())
        }
    }

    fn exponent(&self, p: [f64; 2]) -> C64 {
        let mut e = -self.quad * (p[0] * p[0] + p[1] * p[1]);
        for (k, b) in self.lin().iter().enumerate() {
            e += b * p[k];
        }
        e
    }

    pub fn eval(&self, p: [f64; 2]) -> C64 {
        self.amplitude * self.exponent(p).exp()
    }

    /// `ln |g(p)|`, finite even where `g(p)` under- or overflows.
    pub fn ln_abs(&self, p: [f64; 2]) -> f64 {
        self.amplitude.norm().ln() + self.exponent(p).re
    }

    /// Samples on the spatial grid. Fails only if values overflow.
    pub fn sample(&self, grid: &Grid) -> Result<SampledField> {
        self.check_grid(grid)?;
        SampledField::from_fn(*grid, |p| self.eval(p))
    }

    /// Samples on the dual frequency grid.
    pub fn sample_spectral(&self, grid: &Grid) -> Result<SpectralField> {
        self.check_grid(grid)?;
        SpectralField::from_fn(*grid, |p| self.eval(p))
    }

    fn check_grid(&self, grid: &Grid) -> Result<()> {
        if grid.dim() != self.dim {
            return Err(LabError::Dimension(format!(
                "gaussian of dimension {} on grid of dimension {}",
                self.dim,
                grid.dim()
            )));
        }
        Ok(())
    }

    fn transform(&self, sign: f64) -> Result<Self> {
        self.require_normalizable()?;
        let a = self.quad;
        let sum_b2: C64 = self.lin().iter().map(|b| b * b).sum();
        let amplitude = self.amplitude * inv_half_power(2.0 * a, self.dim) * (sum_b2 / (4.0 * a)).exp();
        let mut lin = [C64::new(0.0, 0.0); 2];
        for (k, b) in self.lin().iter().enumerate() {
            lin[k] = C64::new(0.0, sign) * b / (2.0 * a);
        }
        Ok(ComplexGaussian {
            dim: self.dim,
            amplitude,
            quad: 1.0 / (4.0 * a),
            lin,
        })
    }

    /// Unitary Fourier transform.
    pub fn fourier(&self) -> Result<Self> {
        self.transform(-1.0)
    }

    pub fn inverse_fourier(&self) -> Result<Self> {
        self.transform(1.0)
    }

    /// Free evolution `e^{it Delta}`: the multiplier `e^{-i|xi|^2 t}` adds `it`
    /// to the spectral quad coefficient.
    pub fn evolve(&self, t: f64) -> Result<Self> {
        let mut spec = self.fourier()?;
        spec.quad += C64::new(0.0, t);
        spec.inverse_fourier()
    }

    pub fn product(&self, other: &Self) -> Result<Self> {
        self.same_dim(other)?;
        let mut lin = [C64::new(0.0, 0.0); 2];
        for k in 0..self.dim {
            lin[k] = self.lin[k] + other.lin[k];
        }
        Ok(ComplexGaussian {
            dim: self.dim,
            amplitude: self.amplitude * other.amplitude,
            quad: self.quad + other.quad,
            lin,
        })
    }

    pub fn ratio(&self, other: &Self) -> Result<Self> {
        self.same_dim(other)?;
        if other.amplitude == C64::new(0.0, 0.0) {
            return Err(LabError::InvalidParameter {
                name: "amplitude",
                value: 0.0,
                reason: "division by the zero Gaussian",
            });
        }
        let mut lin = [C64::new(0.0, 0.0); 2];
        for k in 0..self.dim {
            lin[k] = self.lin[k] - other.lin[k];
        }
        Ok(ComplexGaussian {
            dim: self.dim,
            amplitude: self.amplitude / other.amplitude,
            quad: self.quad - other.quad,
            lin,
        })
    }

    fn same_dim(&self, other: &Self) -> Result<()> {
        if self.dim != other.dim {
            return Err(LabError::Dimension("gaussians of different dimension".into()));
        }
        Ok(())
    }

    pub fn conj(&self) -> Self {
        let mut lin = self.lin;
        for b in &mut lin {
            *b = b.conj();
        }
        ComplexGaussian {
            amplitude: self.amplitude.conj(),
            quad: self.quad.conj(),
            lin,
            ..*self
        }
    }

    pub fn scale(&self, s: C64) -> Self {
        ComplexGaussian {
            amplitude: self.amplitude * s,
            ..*self
        }
    }

    /// The map `x -> g(k x)`.
    pub fn rescale(&self, k: f64) -> Self {
        let mut lin = self.lin;
        for b in &mut lin {
            *b *= k;
        }
        ComplexGaussian {
            quad: self.quad * (k * k),
            lin,
            ..*self
        }
    }

    /// Multiplies by `exp(-q |x|^2 + l . x)`.
    pub fn modulate(&self, q: C64, l: &[C64]) -> Result<Self> {
        let m = ComplexGaussian::new(self.dim, C64::new(1.0, 0.0), q, l)?;
        self.product(&m)
    }

    /// Exact `L^2(R^n)` norm: `|c| prod_k (pi / (2 Re a))^{1/4} e^{(Re b_k)^2 / (4 Re a)}`.
    pub fn l2_norm(&self) -> Result<f64> {
        self.require_normalizable()?;
        let ar = self.quad.re;
        let mut ln = self.amplitude.norm().ln();
        for _ in 0..self.dim {
            ln += 0.25 * (PI / (2.0 * ar)).ln();
        }
        for b in self.lin() {
            ln += b.re * b.re / (4.0 * ar);
        }
        Ok(ln.exp())
    }
}

/// The Gaussian free wave `G(x,t) = (t-i)^{-n/2} exp(-(1-it)|x|^2 / (4(1+t^2)))`.
pub fn free_wave_oracle(dim: usize, t: f64) -> Result<ComplexGaussian> {
    let z = C64::new(t, -1.0);
    let quad = C64::new(1.0, -t) / (4.0 * (1.0 + t * t));
    ComplexGaussian::centered(dim, inv_half_power(z, dim), quad)
}
