//! Numerical laboratory for the real-variable proof of Hardy's uncertainty
//! principle: free Schrodinger evolution, Gaussian-weighted norms,
//! log-convexity diagnostics and the transforms relating the different
//! forms of the principle.
//!
//! Fourier convention everywhere: `F[h](xi) = (2 pi)^{-n/2} \int e^{-i xi.x} h(x) dx`.

pub mod convexity;
pub mod equivalence;
pub mod error;
pub mod field;
pub mod numeric;
pub mod propagator;
pub mod weights;

pub use error::{LabError, Result};
pub use num_complex::Complex64 as C64;
