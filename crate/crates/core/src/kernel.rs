//! Kernels on the disc from coefficient matrices, with certified truncation.
//!
//! A coefficient matrix `C = (c_mn)` defines the kernel
//! `K_C(w, z) = Σ_m Σ_n c_mn w̄^m z^n` for `|w|, |z| < 1`. Supported shapes:
//!
//! - sparse nonnegative diagonals (0/1 indicators of a spectrum `Γ` give
//!   `K_Γ(w,z) = Σ_{γ∈Γ} (w̄z)^γ`),
//! - the all-ones diagonal (the Szegő kernel `1/(1 − w̄z)`),
//! - the `c_nn = n + 1` diagonal (the Bergman weight, polynomial growth),
//! - dense Hermitian truncations.
//!
//! Every evaluation returns the truncated value together with a tail bound
//! covering both the dropped terms and floating-point accumulation, so
//! downstream comparisons can be stated as `|a − b| ≤ tail(a) + tail(b)`.

use nalgebra::DMatrix;
use num_complex::Complex64;
use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::gamma::GammaSet;
use crate::util::{cpow, ensure_in_disc, format_complex, parse_complex};

/// Hard cap on adaptive series length; tolerances that need more terms at a
/// near-boundary point are refused rather than silently loosened.
const SERIES_CAP: usize = 5_000_000;

/// A truncated kernel value with a certified bound on `|value − true|`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KernelValue {
    pub value: Complex64,
    pub tail_bound: f64,
}

/// Diagonal coefficient matrices `c_nn ≥ 0`.
#[derive(Debug, Clone, PartialEq)]
pub enum Diagonal {
    /// Finitely supported entries; evaluation is an exact finite sum.
    Sparse(BTreeMap<u64, f64>),
    /// `c_nn = 1` for every n: the Szegő diagonal.
    Ones,
    /// `c_nn = n + 1`: polynomial growth of order one, admissible because
    /// `Σ (n+1) rⁿ < ∞` for every `r < 1`.
    Bergman,
}

impl Diagonal {
    /// 0/1 indicator of a spectrum.
    pub fn indicator(gamma: &GammaSet) -> Self {
        Diagonal::Sparse(gamma.elements().iter().map(|&g| (g, 1.0)).collect())
    }

    /// 0/1 indicator restricted to `[0, window)`.
    pub fn indicator_window(gamma: &GammaSet, window: u64) -> Self {
        Diagonal::Sparse(gamma.elements_below(window).map(|g| (g, 1.0)).collect())
    }

    /// Validates a user-supplied map: entries must be finite and ≥ 0.
    pub fn from_map(map: BTreeMap<u64, f64>) -> Result<Self> {
        if let Some((&n, &v)) = map.iter().find(|(_, &v)| v < 0.0 || !v.is_finite()) {
            return Err(Error::Parse(format!(
                "diagonal entry c_{n}{n} = {v} must be finite and nonnegative"
            )));
        }
        Ok(Diagonal::Sparse(map))
    }

    pub fn entry(&self, n: u64) -> f64 {
        match self {
            Diagonal::Sparse(map) => map.get(&n).copied().unwrap_or(0.0),
            Diagonal::Ones => 1.0,
            Diagonal::Bergman => (n + 1) as f64,
        }
    }

    /// Entries on `[0, window)` as a dense vector.
    pub fn materialize(&self, window: usize) -> Vec<f64> {
        (0..window as u64).map(|n| self.entry(n)).collect()
    }

    /// Largest index carrying a nonzero entry; `None` for the infinite kinds.
    pub fn support_max(&self) -> Option<u64> {
        match self {
            Diagonal::Sparse(map) => map.iter().rev().find(|(_, &v)| v != 0.0).map(|(&n, _)| n),
            _ => None,
        }
    }

    /// Upper bound for `Σ_{n ≥ from} c_nn xⁿ`, `0 ≤ x < 1`. Exact for sparse
    /// supports, closed form for the two infinite families.
    pub fn tail_sum_bound(&self, from: u64, x: f64) -> f64 {
        debug_assert!((0.0..1.0).contains(&x));
        match self {
            Diagonal::Sparse(map) => map
                .range(from..)
                .map(|(&n, &c)| c * x.powi(n.min(i32::MAX as u64) as i32))
                .sum(),
            Diagonal::Ones => x.powi(from as i32) / (1.0 - x),
            Diagonal::Bergman => {
                // Σ_{n≥N} (n+1) xⁿ = x^N ((N+1) − N x) / (1−x)²
                let n = from as f64;
                x.powi(from as i32) * ((n + 1.0) - n * x) / ((1.0 - x) * (1.0 - x))
            }
        }
    }
}

/// A finite Hermitian coefficient matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseMatrix {
    entries: DMatrix<Complex64>,
}

impl DenseMatrix {
    /// Wraps a square matrix after checking its two invariants: Hermitian
    /// symmetry (`c_nm = c̄_mn` within a scale-relative slack) and positive
    /// semidefiniteness up to `1e-10 · trace` — without it the coefficient
    /// matrix would not define a positive kernel at all.
    pub fn new(entries: DMatrix<Complex64>) -> Result<Self> {
        if entries.nrows() != entries.ncols() {
            return Err(Error::DimensionMismatch {
                left: entries.nrows(),
                right: entries.ncols(),
            });
        }
        check_hermitian(&entries)?;
        let psd = psd_check(&entries, 1e-10)?;
        if !psd.pass {
            return Err(Error::NotPsd {
                min_eigenvalue: psd.min_eigenvalue,
            });
        }
        Ok(DenseMatrix { entries })
    }

    pub fn identity(n: usize) -> Self {
        DenseMatrix {
            entries: DMatrix::identity(n, n),
        }
    }

    pub fn dim(&self) -> usize {
        self.entries.nrows()
    }

    pub fn entries(&self) -> &DMatrix<Complex64> {
        &self.entries
    }
}

fn check_hermitian(m: &DMatrix<Complex64>) -> Result<()> {
    let scale = 1.0 + m.iter().map(|z| z.norm()).fold(0.0, f64::max);
    for i in 0..m.nrows() {
        for j in i..m.ncols() {
            if (m[(i, j)] - m[(j, i)].conj()).norm() > 1e-10 * scale {
                return Err(Error::NotHermitian { row: i, col: j });
            }
        }
    }
    Ok(())
}

/// Coefficient matrix of a kernel: diagonal or dense Hermitian.
#[derive(Debug, Clone, PartialEq)]
pub enum CoeffMatrix {
    Diagonal(Diagonal),
    Dense(DenseMatrix),
}

impl CoeffMatrix {
    pub fn indicator(gamma: &GammaSet) -> Self {
        CoeffMatrix::Diagonal(Diagonal::indicator(gamma))
    }

    pub fn as_diagonal(&self) -> Option<&Diagonal> {
        match self {
            CoeffMatrix::Diagonal(d) => Some(d),
            CoeffMatrix::Dense(_) => None,
        }
    }
}

/// `K_C(w, z)` by direct summation, truncated so the reported tail bound is
/// at most `tol` (plus the floating-point slack of the accumulated sum).
pub fn eval_series(c: &CoeffMatrix, w: Complex64, z: Complex64, tol: f64) -> Result<KernelValue> {
    ensure_in_disc(w)?;
    ensure_in_disc(z)?;
    let u = w.conj() * z;
    let x = u.norm();
    match c {
        CoeffMatrix::Diagonal(Diagonal::Sparse(map)) => {
            let mut sum = Complex64::default();
            let mut abs_sum = 0.0;
            for (&n, &cn) in map {
                let term = cn * cpow(u, n);
                sum += term;
                abs_sum += term.norm();
            }
            Ok(KernelValue {
                value: sum,
                tail_bound: fp_slack(map.len(), abs_sum),
            })
        }
        CoeffMatrix::Diagonal(diag @ Diagonal::Ones)
        | CoeffMatrix::Diagonal(diag @ Diagonal::Bergman) => {
            let mut sum = Complex64::default();
            let mut abs_sum = 0.0;
            let mut pow = Complex64::new(1.0, 0.0);
            let mut n: u64 = 0;
            loop {
                let term = diag.entry(n) * pow;
                sum += term;
                abs_sum += term.norm();
                let tail = diag.tail_sum_bound(n + 1, x);
                if tail <= tol {
                    return Ok(KernelValue {
                        value: sum,
                        tail_bound: tail + fp_slack(n as usize + 1, abs_sum),
                    });
                }
                if n as usize >= SERIES_CAP {
                    return Err(Error::TruncationTooLarge {
                        tol,
                        cap: SERIES_CAP,
                    });
                }
                pow *= u;
                n += 1;
            }
        }
        CoeffMatrix::Dense(dense) => {
            let m = dense.entries();
            let n = dense.dim();
            let mut sum = Complex64::default();
            let mut abs_sum = 0.0;
            let mut wpow = Complex64::new(1.0, 0.0);
            for row in 0..n {
                let mut inner = Complex64::default();
                let mut zpow = Complex64::new(1.0, 0.0);
                for col in 0..n {
                    inner += m[(row, col)] * zpow;
                    abs_sum += (m[(row, col)] * zpow).norm();
                    zpow *= z;
                }
                sum += wpow.conj() * inner;
                wpow *= w;
            }
            Ok(KernelValue {
                value: sum,
                tail_bound: fp_slack(n * n, abs_sum),
            })
        }
    }
}

/// The lacunary product `K_B(w, z) = Π_{j≥0} (1 + (w̄z)^{B^j})`, truncated
/// once the certified bound on the remaining factors drops below `tol`.
///
/// For the dropped factors, `|Π_{j>J}(1 + u^{B^j}) − 1| ≤ e^S − 1` with
/// `S = Σ_{j>J} |u|^{B^j} ≤ |u|^{B^{J+1}}/(1 − |u|)`.
pub fn eval_product(base: u64, w: Complex64, z: Complex64, tol: f64) -> Result<KernelValue> {
    if base < 2 {
        return Err(Error::Parse(format!(
            "product base must be >= 2 (got {base})"
        )));
    }
    ensure_in_disc(w)?;
    ensure_in_disc(z)?;
    let u = w.conj() * z;
    let x = u.norm();
    let mut prod = Complex64::new(1.0, 0.0);
    let mut upow = u; // u^{B^j}
    let mut xpow = x;
    let mut factors = 0usize;
    loop {
        prod *= Complex64::new(1.0, 0.0) + upow;
        factors += 1;
        // |u|^{B^{j+1}} for the tail of dropped factors.
        let xnext = pow_u64(xpow, base);
        let s = xnext / (1.0 - x);
        let tail = prod.norm() * s.exp_m1();
        if tail <= tol || xnext == 0.0 {
            return Ok(KernelValue {
                value: prod,
                tail_bound: tail + fp_slack(factors, prod.norm()),
            });
        }
        if factors > 10_000 {
            return Err(Error::TruncationTooLarge { tol, cap: 10_000 });
        }
        upow = cpow(upow, base);
        xpow = xnext;
    }
}

fn pow_u64(x: f64, e: u64) -> f64 {
    let mut r = 1.0;
    let mut b = x;
    let mut e = e;
    while e > 0 {
        if e & 1 == 1 {
            r *= b;
        }
        b *= b;
        e >>= 1;
    }
    r
}

/// First-order bound on accumulation round-off: `n` terms of combined
/// magnitude `abs_sum`.
fn fp_slack(n: usize, abs_sum: f64) -> f64 {
    (n as f64 + 2.0) * f64::EPSILON * abs_sum
}

/// A kernel evaluator: either a lacunary digit product or a coefficient
/// matrix summed directly.
#[derive(Debug, Clone, PartialEq)]
pub enum Kernel {
    /// `K_B` as an infinite product (`base` 3 and 4 are the named cases).
    Product {
        base: u64,
    },
    Coeff(CoeffMatrix),
}

impl Kernel {
    pub fn szego() -> Self {
        Kernel::Coeff(CoeffMatrix::Diagonal(Diagonal::Ones))
    }

    pub fn bergman() -> Self {
        Kernel::Coeff(CoeffMatrix::Diagonal(Diagonal::Bergman))
    }

    pub fn eval(&self, w: Complex64, z: Complex64, tol: f64) -> Result<KernelValue> {
        match self {
            Kernel::Product { base } => eval_product(*base, w, z, tol),
            Kernel::Coeff(c) => eval_series(c, w, z, tol),
        }
    }
}

/// Gram matrix `(K(ζ_j, ζ_i))_{ij}` at disc points, Hermitian by
/// construction (the upper triangle is computed, the lower mirrored),
/// together with the largest per-entry tail bound.
pub fn gram_at_points(
    kernel: &Kernel,
    points: &[Complex64],
    tol: f64,
) -> Result<(DMatrix<Complex64>, f64)> {
    for &p in points {
        ensure_in_disc(p)?;
    }
    let n = points.len();
    let mut g = DMatrix::zeros(n, n);
    let mut max_tail: f64 = 0.0;
    for i in 0..n {
        for j in i..n {
            let kv = kernel.eval(points[j], points[i], tol)?;
            max_tail = max_tail.max(kv.tail_bound);
            if i == j {
                g[(i, i)] = Complex64::new(kv.value.re, 0.0);
            } else {
                g[(i, j)] = kv.value;
                g[(j, i)] = kv.value.conj();
            }
        }
    }
    Ok((g, max_tail))
}

/// Outcome of a positive-semidefiniteness check.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PsdReport {
    pub min_eigenvalue: f64,
    pub pass: bool,
}

/// Smallest eigenvalue of a Hermitian matrix; passes when it is no smaller
/// than `−tol · trace`.
pub fn psd_check(g: &DMatrix<Complex64>, tol: f64) -> Result<PsdReport> {
    if g.nrows() != g.ncols() {
        return Err(Error::DimensionMismatch {
            left: g.nrows(),
            right: g.ncols(),
        });
    }
    check_hermitian(g)?;
    if g.nrows() == 0 {
        return Ok(PsdReport {
            min_eigenvalue: 0.0,
            pass: true,
        });
    }
    let eig = g.clone().symmetric_eigen();
    let min_eigenvalue = eig
        .eigenvalues
        .iter()
        .copied()
        .fold(f64::INFINITY, f64::min);
    let trace: f64 = (0..g.nrows()).map(|i| g[(i, i)].re).sum();
    Ok(PsdReport {
        min_eigenvalue,
        pass: min_eigenvalue >= -tol * trace,
    })
}

/// `Σ_n |a_n|²` over the given (already truncated) coefficient slice.
pub fn h2_norm_sq(coeffs: &[Complex64]) -> f64 {
    coeffs.iter().map(|a| a.norm_sqr()).sum()
}

// --- file formats -----------------------------------------------------------

/// Parses a dense Hermitian matrix from CSV rows of `a+bi` literals.
pub fn dense_from_csv(text: &str) -> Result<DenseMatrix> {
    let mut rows: Vec<Vec<Complex64>> = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let row: Result<Vec<Complex64>> = line.split(',').map(parse_complex).collect();
        let row = row.map_err(|e| Error::Parse(format!("row {}: {e}", lineno + 1)))?;
        rows.push(row);
    }
    dense_from_rows(rows)
}

/// Serializes a dense matrix as CSV rows of `a+bi` literals.
pub fn dense_to_csv(m: &DenseMatrix) -> String {
    let n = m.dim();
    let mut out = String::new();
    for i in 0..n {
        let row: Vec<String> = (0..n)
            .map(|j| format_complex(m.entries()[(i, j)]))
            .collect();
        out.push_str(&row.join(","));
        out.push('\n');
    }
    out
}

/// Parses a dense matrix from a JSON 2-D array of `a+bi` strings.
pub fn dense_from_json(text: &str) -> Result<DenseMatrix> {
    let rows: Vec<Vec<String>> =
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("dense matrix JSON: {e}")))?;
    let rows: Result<Vec<Vec<Complex64>>> = rows
        .into_iter()
        .map(|r| r.iter().map(|s| parse_complex(s)).collect())
        .collect();
    dense_from_rows(rows?)
}

fn dense_from_rows(rows: Vec<Vec<Complex64>>) -> Result<DenseMatrix> {
    let n = rows.len();
    if rows.iter().any(|r| r.len() != n) {
        return Err(Error::Parse("dense matrix must be square".into()));
    }
    let entries = DMatrix::from_fn(n, n, |i, j| rows[i][j]);
    DenseMatrix::new(entries)
}
