//! Grids, sampled fields, the unitary Fourier transform and the exact
//! complex-Gaussian algebra used as oracle throughout.

mod csv;
mod fourier;
mod gaussian;
mod grid;
mod hermite;
mod sampled;

pub use csv::{field_to_csv_string, read_field_csv, write_field_csv};
pub use fourier::{
    dtft_line, dtft_tensor, forward_fourier, interpolate_at, interpolate_spectral_at, inverse_dtft_line,
    inverse_fourier, laplacian, resample_tensor, spectral_derivative,
};
pub(crate) use fourier::{forward_values, inverse_values, map_axis};
pub(crate) use gaussian::inv_half_power;
pub use gaussian::{free_wave_oracle, ComplexGaussian};
pub use grid::Grid;
pub use hermite::{hermite_eigenvalue, hermite_field, hermite_function, hermite_mixture, hermite_poly};
pub use sampled::{max_abs_diff, relative_l2, SampledField, SpectralField, ADMISSIBLE_RATIO, NOISE_FLOOR};

/// Samples `gauss` on `grid`.
pub fn gaussian_eval(gauss: &ComplexGaussian, grid: &Grid) -> crate::Result<SampledField> {
    gauss.sample(grid)
}
