//! Moment matrices and the windowed matrix criterion `C = CMC`.
//!
//! `M = (µ̂(n−m))_{mn}` is the Gram matrix of the exponentials `e^{2πinθ}`
//! in `L²(µ)`: Toeplitz, Hermitian, with the total mass on the diagonal.
//! The residual checks here decide, on a finite window, whether a
//! coefficient matrix satisfies the reproduction identity `C = CMC` under a
//! given measure, together with its specializations: the projection test
//! against Lebesgue measure, the Fourier-vanishing reduction for 0/1
//! diagonals, and the diagonal obstruction `c_mm = ‖µ‖·c_mm²` whose failure
//! rules out every representing measure.
//!
//! The product `CMC` is only formed in the two regimes where the windowed
//! computation reflects the bi-infinite identity: diagonal `C` (closed form
//! `(CMC)_mn = c_mm µ̂(n−m) c_nn`, no matrix-multiplication error), or dense
//! `C` with a measure whose density is essentially bounded, so that `M` is a
//! bounded operator. Mixed cases are refused with a diagnostic.

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gamma::GammaSet;
use crate::kernel::{CoeffMatrix, Diagonal};
use crate::measure::MeasureSpec;
use crate::report::{NormTag, ResidualAccum, ResidualReport};

/// Truncated Toeplitz moment matrix of a measure.
#[derive(Debug, Clone, PartialEq)]
pub struct MomentMatrix {
    measure: MeasureSpec,
    entries: DMatrix<Complex64>,
    transposed: bool,
    /// Largest oracle error bound among the 2N−1 offsets used.
    coeff_error: f64,
}

impl MomentMatrix {
    pub fn size(&self) -> usize {
        self.entries.nrows()
    }

    pub fn entries(&self) -> &DMatrix<Complex64> {
        &self.entries
    }

    pub fn measure(&self) -> &MeasureSpec {
        &self.measure
    }

    pub fn transposed(&self) -> bool {
        self.transposed
    }

    pub fn coeff_error(&self) -> f64 {
        self.coeff_error
    }
}

/// Builds `M_mn = µ̂(n−m)` (or its transpose `µ̂(m−n)`) at size `n`, with one
/// oracle call per distinct offset — 2N−1 calls in total.
pub fn build_moment_matrix(mu: &MeasureSpec, n: usize, transpose: bool) -> Result<MomentMatrix> {
    mu.ensure_valid()?;
    if n == 0 {
        return Err(Error::DimensionMismatch { left: 0, right: 1 });
    }
    let mut coeffs = Vec::with_capacity(2 * n - 1);
    let mut coeff_error: f64 = 0.0;
    for offset in -(n as i64 - 1)..=(n as i64 - 1) {
        let f = mu.fourier_coefficient(offset)?;
        coeff_error = coeff_error.max(f.error);
        coeffs.push(f.value);
    }
    let at = |offset: i64| coeffs[(offset + n as i64 - 1) as usize];
    let entries = DMatrix::from_fn(n, n, |m, k| {
        let offset = k as i64 - m as i64;
        if transpose {
            at(-offset)
        } else {
            at(offset)
        }
    });
    Ok(MomentMatrix {
        measure: mu.clone(),
        entries,
        transposed: transpose,
        coeff_error,
    })
}

/// Residual `‖C − CMC‖` on the window of `M`.
///
/// `tol` overrides the default pass threshold (1e-10 for exact oracles,
/// 1e-8 when IFS truncation error enters the entries).
pub fn cmc_residual(
    c: &CoeffMatrix,
    m: &MomentMatrix,
    norm: NormTag,
    tol: Option<f64>,
) -> Result<ResidualReport> {
    let tol = tol.unwrap_or_else(|| m.measure.default_tol());
    let n = m.size();
    let mut acc = ResidualAccum::new(norm);
    match c {
        CoeffMatrix::Diagonal(diag) => {
            let d = diag.materialize(n);
            for row in 0..n {
                for col in 0..n {
                    let cmc = d[row] * m.entries[(row, col)] * d[col];
                    let c_entry = if row == col {
                        Complex64::new(d[row], 0.0)
                    } else {
                        Complex64::default()
                    };
                    acc.push(row, col, (c_entry - cmc).norm());
                }
            }
        }
        CoeffMatrix::Dense(dense) => {
            ensure_bounded_regime(&m.measure, "dense C = CMC residual")?;
            if dense.dim() != n {
                return Err(Error::DimensionMismatch {
                    left: dense.dim(),
                    right: n,
                });
            }
            let cm = dense.entries() * &m.entries;
            let cmc = cm * dense.entries();
            let diff = dense.entries() - cmc;
            for row in 0..n {
                for col in 0..n {
                    acc.push(row, col, diff[(row, col)].norm());
                }
            }
        }
    }
    let (residual, worst) = acc.finish();
    let report = ResidualReport::new(residual, norm, n, tol, worst);
    Ok(if m.coeff_error > 0.0 {
        report.with_note(&format!("oracle error per entry <= {:.3e}", m.coeff_error))
    } else {
        report.with_note("entries exact on the computed window")
    })
}

/// Residual `‖C − C²‖`; zero exactly when the truncated matrix is a
/// projection.
pub fn projection_residual(
    c: &CoeffMatrix,
    norm: NormTag,
    tol: Option<f64>,
) -> Result<ResidualReport> {
    let tol = tol.unwrap_or(1e-10);
    match c {
        CoeffMatrix::Diagonal(Diagonal::Ones) => Ok(ResidualReport::new(0.0, norm, 0, tol, None)
            .with_note("c_nn = 1 for every n: idempotent at all indices")),
        CoeffMatrix::Diagonal(Diagonal::Bergman) => {
            Ok(ResidualReport::new(f64::INFINITY, norm, 0, tol, None)
                .with_note("c_nn = n+1 gives |c − c²| = n(n+1), unbounded over the diagonal"))
        }
        CoeffMatrix::Diagonal(Diagonal::Sparse(map)) => {
            let n = map.keys().next_back().map_or(0, |&k| k as usize + 1);
            let mut acc = ResidualAccum::new(norm);
            for (&idx, &v) in map {
                acc.push(idx as usize, idx as usize, (v - v * v).abs());
            }
            let (residual, worst) = acc.finish();
            Ok(ResidualReport::new(residual, norm, n, tol, worst)
                .with_note("exact over the sparse support"))
        }
        CoeffMatrix::Dense(dense) => {
            let n = dense.dim();
            let sq = dense.entries() * dense.entries();
            let diff = dense.entries() - sq;
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

/// Result of the Fourier-vanishing criterion for a 0/1 diagonal: a
/// probability measure represents `K_Γ` exactly when `µ̂` vanishes on
/// `𝒟(Γ) \ {0}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VanishingReport {
    #[serde(rename = "maxAbs")]
    pub max_abs: f64,
    #[serde(rename = "worstOffset")]
    pub worst_offset: Option<i64>,
    pub pass: bool,
    pub bound: i64,
    pub tol: f64,
    /// Largest oracle error bound among the checked offsets.
    #[serde(rename = "coeffError")]
    pub coeff_error: f64,
}

/// Max of `|µ̂(d)|` over `d ∈ 𝒟(Γ) \ {0}`, `|d| ≤ bound`.
///
/// Only positive offsets are scanned: the oracle is Hermitian, so
/// `|µ̂(−d)| = |µ̂(d)|` and the worst offset is reported as its positive
/// representative.
pub fn fourier_vanishing_check(
    mu: &MeasureSpec,
    gamma: &GammaSet,
    bound: i64,
    tol: f64,
) -> Result<VanishingReport> {
    mu.ensure_valid()?;
    let mass = mu.fourier_coefficient(0)?;
    if (mass.value - Complex64::new(1.0, 0.0)).norm() > tol + mass.error {
        return Err(Error::NotProbability {
            mass: mass.value.re,
        });
    }
    let mut max_abs: f64 = 0.0;
    let mut worst: Option<i64> = None;
    let mut coeff_error: f64 = 0.0;
    for d in gamma.difference_set(bound) {
        if d <= 0 {
            continue;
        }
        let f = mu.fourier_coefficient(d)?;
        coeff_error = coeff_error.max(f.error);
        let a = f.value.norm();
        if a > max_abs {
            max_abs = a;
            worst = Some(d);
        }
    }
    if max_abs == 0.0 {
        worst = None;
    }
    Ok(VanishingReport {
        max_abs,
        worst_offset: worst,
        pass: max_abs <= tol,
        bound,
        tol,
        coeff_error,
    })
}

/// Indices `m < window` violating the diagonal necessary condition
/// `c_mm = ‖µ‖·c_mm²`. Two distinct nonzero diagonal values can never both
/// satisfy it, whatever the mass — the certificate that no representing
/// measure exists.
pub fn diag_nonexistence_certificate(
    diag: &Diagonal,
    window: usize,
    total_mass: f64,
) -> Vec<usize> {
    (0..window)
        .filter(|&m| {
            let c = diag.entry(m as u64);
            let rhs = total_mass * c * c;
            (c - rhs).abs() > 1e-12 * (1.0 + rhs.abs())
        })
        .collect()
}

pub(crate) fn ensure_bounded_regime(mu: &MeasureSpec, what: &str) -> Result<()> {
    if mu.moment_operator_bounded() {
        Ok(())
    } else {
        Err(Error::UnsupportedRegime(format!(
            "{what} needs a measure with essentially bounded density; \
             for singular measures only diagonal coefficient matrices are supported"
        )))
    }
}
