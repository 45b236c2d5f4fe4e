//! Certified finite-truncation checks for boundary representations of
//! positive kernels on the unit disc.
//!
//! The library answers one question at desk scale: given a positive kernel
//! `K_C(w, z) = Σ c_mn w̄^m z^n` on the disc and a measure `µ` on the circle,
//! does `K_C` reproduce itself by integrating its `L²(µ)`-boundary values?
//! The test is a matrix identity: with `M = (µ̂(n−m))` the Gram matrix of the
//! exponentials in `L²(µ)`, reproduction holds exactly when `C = CMC`. All
//! checks here are finite-window surrogates of that identity with explicit
//! residuals and truncation bounds.
//!
//! Components:
//!
//! - [`measure`]: measures presented through a Fourier-coefficient oracle
//!   `µ̂(k)` (Lebesgue, trigonometric densities, self-similar IFS measures,
//!   atomic measures), each with a certified error bound per coefficient.
//! - [`gamma`]: digit-set spectra `Γ` and their difference sets `𝒟(Γ)`,
//!   which control exactly which Fourier coefficients must vanish.
//! - [`kernel`]: evaluation of kernels from coefficient matrices (diagonal
//!   or dense Hermitian), the infinite-product forms `K₃`/`K₄`, Gram
//!   matrices at disc points, and PSD checks.
//! - [`moment`]: Toeplitz moment matrices `M` and the windowed residual
//!   checks `‖C − CMC‖`, `‖C − C²‖`, and the Fourier-vanishing criterion.
//! - [`boundary`]: boundary coefficient sequences, the reproduction identity
//!   by quadrature (absolutely continuous measures) or by the Fourier double
//!   series (any oracle), and norm-preservation residuals.
//! - [`builder`]: construction of absolutely continuous representing
//!   measures for a spectrum `Γ` with `𝒟(Γ) ≠ ℤ`, plus a combined
//!   certification pipeline.
//! - [`sampling`]: seeded, reproducible samplers used by the CLI and the
//!   acceptance checks.
//!
//! The quaternary Cantor measure against the kernel of its own spectrum is
//! the canonical positive case:
//!
//! ```
//! use hardyrep::{gamma, kernel::CoeffMatrix, measure::MeasureSpec, moment, report::NormTag};
//!
//! let spectrum = gamma::gamma4(8);
//! let c = CoeffMatrix::indicator(&spectrum);
//! let m = moment::build_moment_matrix(&MeasureSpec::mu4(), 64, false)?;
//! let report = moment::cmc_residual(&c, &m, NormTag::Max, None)?;
//! assert!(report.pass && report.residual < 1e-9);
//! # Ok::<(), hardyrep::Error>(())
//! ```

pub mod boundary;
pub mod builder;
pub mod error;
pub mod gamma;
pub mod kernel;
pub mod measure;
pub mod moment;
pub mod report;
pub mod sampling;
pub mod util;

pub use boundary::{
    boundary_coeffs, norm_preservation_residual, reproduce_residual_fourier,
    reproduce_residual_quadrature, transpose_identity_residual, BoundaryCoeffs,
};
pub use builder::{build_ac_representing_measure, certify, Certificate};
pub use error::{Error, Result};
pub use gamma::{Coverage, DigitGenerator, GammaSet};
pub use kernel::{
    eval_product, eval_series, gram_at_points, h2_norm_sq, psd_check, CoeffMatrix, DenseMatrix,
    Diagonal, Kernel, KernelValue, PsdReport,
};
pub use measure::{FourierCoeff, MeasureSpec};
pub use moment::{
    build_moment_matrix, cmc_residual, diag_nonexistence_certificate, fourier_vanishing_check,
    projection_residual, MomentMatrix, VanishingReport,
};
pub use report::{NormTag, ResidualReport};
