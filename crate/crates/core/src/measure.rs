//! Measures on the circle presented through a Fourier-coefficient oracle.
//!
//! Every measure is a nonnegative Borel measure on `[0, 1)` and is queried
//! only through `µ̂(k) = ∫₀¹ e^{-2πikx} dµ(x)`. With this convention the
//! moment matrix entry is `∫ e^{2πimx} e^{-2πinx} dµ = µ̂(n−m)`, which is the
//! form every downstream identity uses. Three of the four families have
//! closed-form coefficients (error bound 0); the self-similar family is
//! evaluated by the refinement product with a certified geometric tail.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::f64::consts::TAU;

use crate::error::{Error, Result};
use crate::util::unit_exp_neg;

/// Default cutoff for the IFS refinement product: the factors beyond the cut
/// differ from 1 by less than this.
pub const IFS_PRODUCT_EPS: f64 = 1e-14;

/// A Fourier coefficient together with a bound on its absolute error.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FourierCoeff {
    pub value: Complex64,
    /// Nonnegative bound on `|value − µ̂(k)|`.
    pub error: f64,
}

/// A measure on `[0, 1)`, identified with the unit circle.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum MeasureSpec {
    /// Normalized Lebesgue measure; `µ̂(k) = δ_{k,0}`.
    Lebesgue,
    /// Absolutely continuous measure with density
    /// `1 + Σ_n b_n cos(2πnθ)`, keyed by positive frequency.
    /// Requires `Σ|b_n| < 1` so the density stays positive; an empty map is
    /// Lebesgue measure.
    #[serde(rename = "trig")]
    TrigDensity {
        #[serde(with = "freq_map")]
        b: BTreeMap<u64, f64>,
    },
    /// Self-similar measure of the maps `x ↦ (x + aᵢ)/R` with weights `pᵢ`.
    /// The quaternary Cantor measure is `scale 4, digits {0,2}, weights ½,½`;
    /// the ternary one uses scale 3 with the same digits.
    #[serde(rename = "ifs")]
    Ifs {
        scale: u32,
        digits: Vec<u32>,
        weights: Vec<f64>,
    },
    /// Finitely many point masses.
    Atomic { points: Vec<f64>, weights: Vec<f64> },
}

impl MeasureSpec {
    /// The quaternary Cantor measure.
    pub fn mu4() -> Self {
        MeasureSpec::Ifs {
            scale: 4,
            digits: vec![0, 2],
            weights: vec![0.5, 0.5],
        }
    }

    /// The ternary Cantor measure.
    pub fn mu3() -> Self {
        MeasureSpec::Ifs {
            scale: 3,
            digits: vec![0, 2],
            weights: vec![0.5, 0.5],
        }
    }

    /// Single trigonometric mode: density `1 + b·cos(2πnθ)`.
    pub fn single_mode(n: u64, b: f64) -> Self {
        let mut map = BTreeMap::new();
        map.insert(n, b);
        MeasureSpec::TrigDensity { b: map }
    }

    fn variant_name(&self) -> &'static str {
        match self {
            MeasureSpec::Lebesgue => "lebesgue",
            MeasureSpec::TrigDensity { .. } => "trig",
            MeasureSpec::Ifs { .. } => "ifs",
            MeasureSpec::Atomic { .. } => "atomic",
        }
    }

    /// Checks every structural invariant; returns the list of violations.
    pub fn validate(&self) -> Vec<String> {
        let mut v = Vec::new();
        match self {
            MeasureSpec::Lebesgue => {}
            MeasureSpec::TrigDensity { b } => {
                if b.keys().any(|&n| n == 0) {
                    v.push("trig density frequencies must be positive".into());
                }
                let l1: f64 = b.values().map(|c| c.abs()).sum();
                if !l1.is_finite() || b.values().any(|c| !c.is_finite()) {
                    v.push("trig density coefficients must be finite".into());
                } else if l1 >= 1.0 {
                    v.push(format!("sum of |b_n| must be < 1 (got {l1})"));
                }
            }
            MeasureSpec::Ifs {
                scale,
                digits,
                weights,
            } => {
                if *scale < 2 {
                    v.push("ifs scale must be >= 2".into());
                }
                if digits.is_empty() {
                    v.push("ifs digit set must be nonempty".into());
                }
                let mut sorted = digits.clone();
                sorted.sort_unstable();
                sorted.dedup();
                if sorted.len() != digits.len() {
                    v.push("ifs digits must be distinct".into());
                }
                if digits.iter().any(|&a| a >= *scale) {
                    v.push("ifs digits must lie in [0, scale)".into());
                }
                if weights.len() != digits.len() {
                    v.push("ifs weights must match digits in length".into());
                }
                if weights.iter().any(|&p| p <= 0.0 || !p.is_finite()) {
                    v.push("ifs weights must be positive".into());
                }
                let mass: f64 = weights.iter().sum();
                if (mass - 1.0).abs() > 1e-12 {
                    v.push(format!("ifs weights must sum to 1 (got {mass})"));
                }
            }
            MeasureSpec::Atomic { points, weights } => {
                if points.is_empty() {
                    v.push("atomic measure needs at least one point".into());
                }
                if points.len() != weights.len() {
                    v.push("atomic points and weights must match in length".into());
                }
                if points.iter().any(|&p| !(0.0..1.0).contains(&p)) {
                    v.push("atomic points must lie in [0, 1)".into());
                }
                let mut sorted = points.clone();
                sorted.sort_by(|a, b| a.total_cmp(b));
                if sorted.windows(2).any(|w| w[0] == w[1]) {
                    v.push("atomic points must be distinct".into());
                }
                if weights.iter().any(|&w| w <= 0.0 || !w.is_finite()) {
                    v.push("atomic weights must be positive".into());
                }
            }
        }
        v
    }

    /// Errors with the violation list when the spec is invalid.
    pub fn ensure_valid(&self) -> Result<()> {
        let v = self.validate();
        if v.is_empty() {
            Ok(())
        } else {
            Err(Error::InvalidMeasure(v))
        }
    }

    /// Total mass `µ̂(0)`.
    pub fn total_mass(&self) -> f64 {
        match self {
            MeasureSpec::Lebesgue | MeasureSpec::TrigDensity { .. } | MeasureSpec::Ifs { .. } => {
                1.0
            }
            MeasureSpec::Atomic { weights, .. } => weights.iter().sum(),
        }
    }

    /// Whether the moment matrix `(µ̂(n−m))` acts as a bounded operator on
    /// `ℓ²`: true exactly for the absolutely continuous families, whose
    /// densities are bounded by construction (`Σ|b_n| < 1`).
    pub fn moment_operator_bounded(&self) -> bool {
        matches!(
            self,
            MeasureSpec::Lebesgue | MeasureSpec::TrigDensity { .. }
        )
    }

    /// Whether a pointwise density exists (needed by the quadrature route).
    pub fn has_density(&self) -> bool {
        self.moment_operator_bounded()
    }

    /// Residual tolerance appropriate for this oracle: exact families get
    /// 1e-10, the truncated IFS product 1e-8.
    pub fn default_tol(&self) -> f64 {
        match self {
            MeasureSpec::Ifs { .. } => 1e-8,
            _ => 1e-10,
        }
    }

    /// Top frequency carried by the density (trig families only).
    pub fn top_density_frequency(&self) -> u64 {
        match self {
            MeasureSpec::TrigDensity { b } => b.keys().next_back().copied().unwrap_or(0),
            _ => 0,
        }
    }

    /// The Fourier coefficient `µ̂(k) = ∫₀¹ e^{-2πikx} dµ(x)` with a
    /// certified absolute error bound.
    pub fn fourier_coefficient(&self, k: i64) -> Result<FourierCoeff> {
        self.ensure_valid()?;
        let exact = |value: Complex64| FourierCoeff { value, error: 0.0 };
        match self {
            MeasureSpec::Lebesgue => Ok(exact(Complex64::new(if k == 0 { 1.0 } else { 0.0 }, 0.0))),
            MeasureSpec::TrigDensity { b } => {
                // ∫ e^{-2πikθ} cos(2πnθ) dθ = ½ when |k| = n, else 0.
                let value = if k == 0 {
                    1.0
                } else {
                    b.get(&k.unsigned_abs()).map_or(0.0, |c| c / 2.0)
                };
                Ok(exact(Complex64::new(value, 0.0)))
            }
            MeasureSpec::Atomic { points, weights } => {
                let value = points
                    .iter()
                    .zip(weights)
                    .map(|(&p, &w)| w * unit_exp_neg(k as f64 * p))
                    .sum();
                Ok(exact(value))
            }
            MeasureSpec::Ifs {
                scale,
                digits,
                weights,
            } => {
                let depth = ifs_depth(*scale, digits, k, IFS_PRODUCT_EPS);
                let value = ifs_product(*scale, digits, weights, k, depth);
                let error = ifs_tail_bound(*scale, digits, k, depth);
                Ok(FourierCoeff { value, error })
            }
        }
    }

    /// The density `dµ/dλ(θ)`; only the absolutely continuous families.
    pub fn density_eval(&self, theta: f64) -> Result<f64> {
        self.ensure_valid()?;
        match self {
            MeasureSpec::Lebesgue => Ok(1.0),
            MeasureSpec::TrigDensity { b } => {
                let mut d = 1.0;
                for (&n, &c) in b {
                    let t = n as f64 * theta;
                    d += c * (TAU * (t - t.floor())).cos();
                }
                Ok(d)
            }
            other => Err(Error::UnsupportedVariant {
                op: "density_eval",
                variant: other.variant_name(),
            }),
        }
    }

    /// Truncated refinement product at an explicit depth (IFS only);
    /// exposed so diagnostics can compare truncation levels.
    pub fn ifs_fourier_at_depth(&self, k: i64, depth: u32) -> Result<Complex64> {
        match self {
            MeasureSpec::Ifs {
                scale,
                digits,
                weights,
            } => {
                self.ensure_valid()?;
                Ok(ifs_product(*scale, digits, weights, k, depth))
            }
            other => Err(Error::UnsupportedVariant {
                op: "ifs_fourier_at_depth",
                variant: other.variant_name(),
            }),
        }
    }

    /// Tail bound of the refinement product beyond `depth` (IFS only).
    pub fn ifs_tail_at_depth(&self, k: i64, depth: u32) -> Result<f64> {
        match self {
            MeasureSpec::Ifs { scale, digits, .. } => Ok(ifs_tail_bound(*scale, digits, k, depth)),
            other => Err(Error::UnsupportedVariant {
                op: "ifs_tail_at_depth",
                variant: other.variant_name(),
            }),
        }
    }
}

/// JSON codec for the frequency map: keys are decimal strings (`{"3": 0.4}`),
/// spelled out because tagged-enum deserialization buffers the content and
/// loses the native integer-key conversion.
mod freq_map {
    use serde::de::Error as _;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};
    use std::collections::BTreeMap;

    pub fn serialize<S: Serializer>(map: &BTreeMap<u64, f64>, ser: S) -> Result<S::Ok, S::Error> {
        map.iter()
            .map(|(k, v)| (k.to_string(), *v))
            .collect::<BTreeMap<String, f64>>()
            .serialize(ser)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(de: D) -> Result<BTreeMap<u64, f64>, D::Error> {
        let raw = BTreeMap::<String, f64>::deserialize(de)?;
        raw.into_iter()
            .map(|(k, v)| {
                k.parse::<u64>()
                    .map(|n| (n, v))
                    .map_err(|_| D::Error::custom(format!("frequency key `{k}` is not an integer")))
            })
            .collect()
    }
}

/// One factor of the refinement product: `m(ξ) = Σᵢ pᵢ e^{-2πi ξ aᵢ}`.
fn ifs_mask(digits: &[u32], weights: &[f64], xi: f64) -> Complex64 {
    digits
        .iter()
        .zip(weights)
        .map(|(&a, &p)| p * unit_exp_neg(xi * a as f64))
        .sum()
}

/// `Π_{j=1..depth} m(k/R^j)`, the truncated self-similarity product.
fn ifs_product(scale: u32, digits: &[u32], weights: &[f64], k: i64, depth: u32) -> Complex64 {
    let r = scale as f64;
    let mut xi = k as f64;
    let mut prod = Complex64::new(1.0, 0.0);
    for _ in 0..depth {
        xi /= r;
        prod *= ifs_mask(digits, weights, xi);
    }
    prod
}

/// Depth at which the largest omitted phase spread `2π|k|·max(a)/R^d` drops
/// below `eps`.
fn ifs_depth(scale: u32, digits: &[u32], k: i64, eps: f64) -> u32 {
    let max_a = digits.iter().copied().max().unwrap_or(0) as f64;
    let mut spread = TAU * (k.unsigned_abs() as f64) * max_a;
    let r = scale as f64;
    let mut depth = 0u32;
    while spread >= eps && depth < 4096 {
        spread /= r;
        depth += 1;
    }
    depth
}

/// `Σ_{j>depth} 2π|k|·max(a)/R^j`: every omitted factor differs from 1 by at
/// most its phase spread, and `|m| ≤ 1`, so the geometric sum bounds the
/// truncation error of the product.
fn ifs_tail_bound(scale: u32, digits: &[u32], k: i64, depth: u32) -> f64 {
    let max_a = digits.iter().copied().max().unwrap_or(0) as f64;
    let r = scale as f64;
    let lead = TAU * (k.unsigned_abs() as f64) * max_a * r.powi(-(depth as i32));
    lead / (r - 1.0)
}
