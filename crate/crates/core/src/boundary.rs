//! Boundary coefficient sequences and reproduction/norm-preservation checks.
//!
//! For `|w| < 1` the kernel section `K_C(w, ·)` has boundary coefficients
//! `a_n = Σ_m c_mn w̄^m`, so its boundary function is the Fourier series
//! `Σ_n a_n e^{2πinθ}`. Reproduction under `µ` means
//! `K_C(w, z) = ∫ K⋆(w, x) conj(K⋆(z, x)) dµ(x)`, checked here two ways:
//!
//! - by equispaced trapezoidal quadrature against the pointwise density
//!   (absolutely continuous measures only — the rule integrates
//!   trigonometric polynomials of degree < Q exactly);
//! - by the Fourier double series `Σ_{m,n<N} (CMC)_mn w̄^m z^n`, which needs
//!   nothing but the coefficient oracle and therefore also covers the
//!   singular families.
//!
//! Norm preservation is the quadratic-form comparison
//! `‖Σ a_n e^{2πiγ_n θ}‖²_µ` versus `Σ |a_n|²`, and the transpose variant
//! checks `Cᵀ = CᵀMCᵀ` for projections.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::kernel::{eval_series, CoeffMatrix};
use crate::measure::MeasureSpec;
use crate::moment::{
    build_moment_matrix, cmc_residual, ensure_bounded_regime, projection_residual,
};
use crate::report::{NormTag, ResidualAccum, ResidualReport};
use crate::util::{cpow, ensure_in_disc, unit_exp};

/// Tolerance used for the reference kernel evaluation inside the residual
/// checks; well below every pass threshold in use.
const INNER_TOL: f64 = 1e-13;

/// Truncated boundary coefficients of `K_C(w, ·)`.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundaryCoeffs {
    /// Anchor point `w`.
    pub anchor: Complex64,
    /// `a_n = Σ_m c_mn w̄^m` for `n < N`.
    pub coeffs: Vec<Complex64>,
    /// Bound on `Σ_{n≥N} |a_n|`, the sup-norm defect of the truncated
    /// boundary series.
    pub tail_bound: f64,
}

/// Boundary coefficients of `K_C(w, ·)` on the window `[0, N)`.
pub fn boundary_coeffs(c: &CoeffMatrix, w: Complex64, n: usize) -> Result<BoundaryCoeffs> {
    ensure_in_disc(w)?;
    let wc = w.conj();
    match c {
        CoeffMatrix::Diagonal(diag) => {
            let mut coeffs = Vec::with_capacity(n);
            let mut pow = Complex64::new(1.0, 0.0);
            for idx in 0..n as u64 {
                coeffs.push(diag.entry(idx) * pow);
                pow *= wc;
            }
            Ok(BoundaryCoeffs {
                anchor: w,
                coeffs,
                tail_bound: diag.tail_sum_bound(n as u64, w.norm()),
            })
        }
        CoeffMatrix::Dense(dense) => {
            let dim = dense.dim();
            let m = dense.entries();
            // Both indices are truncated at the window; the dropped rows and
            // columns are finite, so the defect of the window polynomial
            // against the full dense kernel is summed exactly.
            let partial_column = |col: usize, rows: std::ops::Range<usize>| {
                let mut acc = Complex64::default();
                let mut pow = cpow(wc, rows.start as u64);
                for row in rows {
                    acc += m[(row, col)] * pow;
                    pow *= wc;
                }
                acc
            };
            let mut coeffs = Vec::with_capacity(n);
            let mut tail_bound = 0.0;
            for col in 0..dim.min(n) {
                coeffs.push(partial_column(col, 0..dim.min(n)));
                tail_bound += partial_column(col, dim.min(n)..dim).norm();
            }
            for col in dim.min(n)..dim {
                tail_bound += partial_column(col, 0..dim).norm();
            }
            coeffs.resize(n, Complex64::default());
            Ok(BoundaryCoeffs {
                anchor: w,
                coeffs,
                tail_bound,
            })
        }
    }
}

impl BoundaryCoeffs {
    /// Evaluates the truncated boundary series at `θ ∈ [0, 1)`.
    pub fn eval(&self, theta: f64) -> Complex64 {
        let e = unit_exp(theta);
        let mut pow = Complex64::new(1.0, 0.0);
        let mut acc = Complex64::default();
        for &a in &self.coeffs {
            acc += a * pow;
            pow *= e;
        }
        acc
    }
}

/// Residual of the reproduction identity computed by quadrature against the
/// density: `|K_C(w,z) − (1/Q) Σ_q K⋆(w, q/Q) conj(K⋆(z, q/Q)) ρ(q/Q)|`.
///
/// Equispaced nodes on the periodic interval integrate trigonometric
/// polynomials of degree < Q exactly, and every integrand here is one.
pub fn reproduce_residual_quadrature(
    c: &CoeffMatrix,
    mu: &MeasureSpec,
    w: Complex64,
    z: Complex64,
    n: usize,
    q: usize,
) -> Result<f64> {
    mu.ensure_valid()?;
    if !mu.has_density() {
        return Err(Error::UnsupportedVariant {
            op: "reproduce_residual_quadrature",
            variant: "singular (use the Fourier route)",
        });
    }
    if q == 0 {
        return Err(Error::Parse("quadrature needs at least one node".into()));
    }
    let bw = boundary_coeffs(c, w, n)?;
    let bz = boundary_coeffs(c, z, n)?;
    let mut integral = Complex64::default();
    for node in 0..q {
        let theta = node as f64 / q as f64;
        let val = bw.eval(theta) * bz.eval(theta).conj() * mu.density_eval(theta)?;
        integral += val;
    }
    integral /= q as f64;
    let reference = eval_series(c, w, z, INNER_TOL)?;
    Ok((reference.value - integral).norm())
}

/// Residual of the reproduction identity computed through the coefficient
/// oracle: `|K_C(w,z) − Σ_{m,n<N} (CMC)_mn w̄^m z^n|`. Valid for every
/// measure variant when `C` is diagonal; dense `C` requires the
/// bounded-density regime.
pub fn reproduce_residual_fourier(
    c: &CoeffMatrix,
    mu: &MeasureSpec,
    w: Complex64,
    z: Complex64,
    n: usize,
) -> Result<f64> {
    ensure_in_disc(w)?;
    ensure_in_disc(z)?;
    let m = build_moment_matrix(mu, n, false)?;
    let wc = w.conj();
    let double_sum = match c {
        CoeffMatrix::Diagonal(diag) => {
            let d = diag.materialize(n);
            let wpow: Vec<Complex64> = powers(wc, n);
            let zpow: Vec<Complex64> = powers(z, n);
            let mut acc = Complex64::default();
            for row in 0..n {
                if d[row] == 0.0 {
                    continue;
                }
                for col in 0..n {
                    if d[col] == 0.0 {
                        continue;
                    }
                    acc += d[row] * m.entries()[(row, col)] * d[col] * wpow[row] * zpow[col];
                }
            }
            acc
        }
        CoeffMatrix::Dense(dense) => {
            ensure_bounded_regime(mu, "dense reproduction residual")?;
            if dense.dim() != n {
                return Err(Error::DimensionMismatch {
                    left: dense.dim(),
                    right: n,
                });
            }
            let cmc = dense.entries() * m.entries() * dense.entries();
            let wpow = powers(wc, n);
            let zpow = powers(z, n);
            let mut acc = Complex64::default();
            for row in 0..n {
                for col in 0..n {
                    acc += cmc[(row, col)] * wpow[row] * zpow[col];
                }
            }
            acc
        }
    };
    let reference = eval_series(c, w, z, INNER_TOL)?;
    Ok((reference.value - double_sum).norm())
}

fn powers(base: Complex64, n: usize) -> Vec<Complex64> {
    let mut out = Vec::with_capacity(n);
    let mut p = Complex64::new(1.0, 0.0);
    for _ in 0..n {
        out.push(p);
        p *= base;
    }
    out
}

/// The squared `L²(µ)` norm of `Σ_j a_j e^{2πiγ_j θ}` through the oracle:
/// `Σ_{j,k} a_j conj(a_k) µ̂(γ_k − γ_j)`.
pub fn l2mu_norm_sq(freqs: &[u64], coeffs: &[Complex64], mu: &MeasureSpec) -> Result<f64> {
    if freqs.len() != coeffs.len() {
        return Err(Error::DimensionMismatch {
            left: freqs.len(),
            right: coeffs.len(),
        });
    }
    mu.ensure_valid()?;
    let mut acc = Complex64::default();
    for (j, (&gj, &aj)) in freqs.iter().zip(coeffs).enumerate() {
        for (k, (&gk, &ak)) in freqs.iter().zip(coeffs).enumerate() {
            let offset = gk as i64 - gj as i64;
            let f = mu.fourier_coefficient(offset)?;
            acc += aj * ak.conj() * f.value;
            let _ = (j, k);
        }
    }
    // The quadratic form of a Hermitian Toeplitz matrix is real.
    Ok(acc.re)
}

/// `|‖Σ a_j e^{2πiγ_j θ}‖²_µ − Σ |a_j|²|`: zero exactly when the measure
/// preserves the Lebesgue norm on the span of the given frequencies.
pub fn norm_preservation_residual(
    freqs: &[u64],
    coeffs: &[Complex64],
    mu: &MeasureSpec,
) -> Result<f64> {
    let q = l2mu_norm_sq(freqs, coeffs, mu)?;
    let h2: f64 = coeffs.iter().map(|a| a.norm_sqr()).sum();
    Ok((q - h2).abs())
}

/// Residual `‖Cᵀ − CᵀMCᵀ‖` for a projection `C`.
///
/// Diagonal matrices are transpose-fixed, so the check reduces to the plain
/// residual; dense matrices additionally need the bounded-density regime.
pub fn transpose_identity_residual(
    c: &CoeffMatrix,
    mu: &MeasureSpec,
    n: usize,
    norm: NormTag,
    tol: Option<f64>,
) -> Result<ResidualReport> {
    let proj = projection_residual(c, NormTag::Max, None)?;
    if !proj.pass {
        return Err(Error::NotProjection {
            residual: proj.residual,
        });
    }
    let m = build_moment_matrix(mu, n, false)?;
    match c {
        CoeffMatrix::Diagonal(_) => {
            let report = cmc_residual(c, &m, norm, tol)?;
            Ok(report.with_note("diagonal C is transpose-fixed"))
        }
        CoeffMatrix::Dense(dense) => {
            ensure_bounded_regime(mu, "dense transpose identity")?;
            if dense.dim() != n {
                return Err(Error::DimensionMismatch {
                    left: dense.dim(),
                    right: n,
                });
            }
            let tol = tol.unwrap_or_else(|| mu.default_tol());
            let ct = dense.entries().transpose();
            let diff = &ct - &ct * m.entries() * &ct;
            let mut acc = ResidualAccum::new(norm);
            for row in 0..n {
                for col in 0..n {
                    acc.push(row, col, diff[(row, col)].norm());
                }
            }
            let (residual, worst) = acc.finish();
            Ok(ResidualReport::new(residual, norm, n, tol, worst))
        }
    }
}
