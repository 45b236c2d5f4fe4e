//! Digit-set spectra and their difference sets.
//!
//! A `GammaSet` is a finite set of nonnegative integers, optionally generated
//! by a base-`B` digit expansion `{Σ_j l_j B^j : l_j ∈ L, j ≤ maxLevel}`.
//! The difference set `𝒟(Γ) = {x − y : x, y ∈ Γ}` determines which Fourier
//! coefficients of a measure must vanish for `Γ`'s 0/1 diagonal kernel, so
//! the bounded-window queries here feed directly into the vanishing checks.

use serde::{Deserialize, Serialize};
use std::collections::HashSet;

use crate::error::{Error, Result};

/// Generator metadata for digit-expansion sets.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DigitGenerator {
    pub base: u64,
    pub digits: Vec<u64>,
    #[serde(rename = "maxLevel")]
    pub max_level: u32,
}

/// A finite set of nonnegative integers, sorted and deduplicated.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "GammaSetRepr", into = "GammaSetRepr")]
pub struct GammaSet {
    elements: Vec<u64>,
    generator: Option<DigitGenerator>,
}

/// Result of a coverage scan of `[−bound, bound]` against `𝒟(Γ)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Coverage {
    /// Every integer of the window is a difference.
    Complete,
    /// Smallest absolute value missing from the difference set (reported as
    /// its positive representative; the set is symmetric).
    FirstMissing(i64),
}

impl GammaSet {
    /// Builds a set from explicit elements (sorted, deduplicated).
    pub fn from_elements(mut elements: Vec<u64>) -> Self {
        elements.sort_unstable();
        elements.dedup();
        GammaSet {
            elements,
            generator: None,
        }
    }

    /// Enumerates `{Σ_{j=0}^{maxLevel} l_j B^j : l_j ∈ digits}`.
    ///
    /// All `|digits|^(maxLevel+1)` strings are generated; duplicate sums are
    /// collapsed. Fails if `B^(maxLevel+1)` or any element leaves the 63-bit
    /// range (differences must fit in `i64`), or if the enumeration itself
    /// is beyond desk scale.
    pub fn generate(base: u64, digits: &[u64], max_level: u32) -> Result<Self> {
        if base < 2 {
            return Err(Error::CapacityExceeded(format!(
                "base must be >= 2 (got {base})"
            )));
        }
        if digits.is_empty() {
            return Err(Error::CapacityExceeded("digit set must be nonempty".into()));
        }
        let mut sorted = digits.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != digits.len() {
            return Err(Error::CapacityExceeded("digits must be distinct".into()));
        }
        let levels = max_level as usize + 1;
        let cap_err = || {
            Error::CapacityExceeded(format!(
                "base {base}, maxLevel {max_level} overflows the 63-bit element range"
            ))
        };
        // B^(maxLevel+1) must be representable.
        let mut powers = Vec::with_capacity(levels);
        let mut p: u64 = 1;
        for _ in 0..levels {
            powers.push(p);
            p = p.checked_mul(base).ok_or_else(cap_err)?;
        }
        let max_digit = *sorted.last().unwrap();
        // Largest element must fit in i64 so differences stay exact.
        let mut max_elt: u64 = 0;
        for &pw in &powers {
            max_elt = max_digit
                .checked_mul(pw)
                .and_then(|t| max_elt.checked_add(t))
                .ok_or_else(cap_err)?;
        }
        if max_elt > i64::MAX as u64 {
            return Err(cap_err());
        }
        let count = (digits.len() as u128).checked_pow(levels as u32);
        match count {
            Some(c) if c <= 1 << 26 => {}
            _ => {
                return Err(Error::CapacityExceeded(format!(
                    "{}^{levels} digit strings exceed the enumeration cap",
                    digits.len()
                )))
            }
        }

        let mut elements = vec![0u64];
        for &pw in &powers {
            let mut next = Vec::with_capacity(elements.len() * digits.len());
            for &e in &elements {
                for &d in digits {
                    next.push(e + d * pw);
                }
            }
            elements = next;
        }
        elements.sort_unstable();
        elements.dedup();
        Ok(GammaSet {
            elements,
            generator: Some(DigitGenerator {
                base,
                digits: digits.to_vec(),
                max_level,
            }),
        })
    }

    pub fn elements(&self) -> &[u64] {
        &self.elements
    }

    pub fn generator(&self) -> Option<&DigitGenerator> {
        self.generator.as_ref()
    }

    pub fn contains(&self, n: u64) -> bool {
        self.elements.binary_search(&n).is_ok()
    }

    /// Elements below `window`, as indices of a 0/1 diagonal.
    pub fn elements_below(&self, window: u64) -> impl Iterator<Item = u64> + '_ {
        self.elements
            .iter()
            .copied()
            .take_while(move |&e| e < window)
    }

    /// `𝒟(Γ) ∩ [−bound, bound]`, sorted ascending. Always contains 0 and is
    /// symmetric about it.
    pub fn difference_set(&self, bound: i64) -> Vec<i64> {
        let bound = bound.max(0);
        let mut seen: HashSet<i64> = HashSet::new();
        let els = &self.elements;
        let mut lo = 0usize;
        for &x in els {
            // Walk the window of y with |x − y| ≤ bound.
            while lo < els.len() && (x as i64) - (els[lo] as i64) > bound {
                lo += 1;
            }
            for &y in &els[lo..] {
                let d = (x as i64) - (y as i64);
                if d < -bound {
                    break;
                }
                seen.insert(d);
                seen.insert(-d);
            }
        }
        if els.is_empty() {
            return Vec::new();
        }
        let mut out: Vec<i64> = seen.into_iter().collect();
        out.sort_unstable();
        out
    }

    /// Scans `[−bound, bound]` for the first integer missing from `𝒟(Γ)`,
    /// in order of absolute value.
    pub fn check_coverage(&self, bound: i64) -> Coverage {
        let set: HashSet<i64> = self.difference_set(bound).into_iter().collect();
        for a in 0..=bound {
            if !set.contains(&a) {
                return Coverage::FirstMissing(a);
            }
        }
        Coverage::Complete
    }

    /// Intersection of this set's elements with `𝒟(Γ)` on `[0, bound]`.
    pub fn intersect_difference(&self, gamma: &GammaSet, bound: i64) -> Vec<u64> {
        let dset: HashSet<i64> = gamma.difference_set(bound).into_iter().collect();
        self.elements
            .iter()
            .copied()
            .take_while(|&a| a as i64 <= bound)
            .filter(|&a| dset.contains(&(a as i64)))
            .collect()
    }
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum GammaSetRepr {
    Generator {
        base: u64,
        digits: Vec<u64>,
        #[serde(rename = "maxLevel")]
        max_level: u32,
        #[serde(skip_serializing_if = "Option::is_none")]
        elements: Option<Vec<u64>>,
    },
    Elements {
        elements: Vec<u64>,
    },
}

impl TryFrom<GammaSetRepr> for GammaSet {
    type Error = Error;
    fn try_from(repr: GammaSetRepr) -> Result<Self> {
        match repr {
            GammaSetRepr::Generator {
                base,
                digits,
                max_level,
                ..
            } => GammaSet::generate(base, &digits, max_level),
            GammaSetRepr::Elements { elements } => Ok(GammaSet::from_elements(elements)),
        }
    }
}

impl From<GammaSet> for GammaSetRepr {
    fn from(g: GammaSet) -> Self {
        match g.generator {
            Some(gen) => GammaSetRepr::Generator {
                base: gen.base,
                digits: gen.digits,
                max_level: gen.max_level,
                elements: Some(g.elements),
            },
            None => GammaSetRepr::Elements {
                elements: g.elements,
            },
        }
    }
}

/// The quaternary spectrum at the given level: digits {0, 1} base 4.
pub fn gamma4(max_level: u32) -> GammaSet {
    GammaSet::generate(4, &[0, 1], max_level).expect("level within capacity")
}

/// The ternary analogue: digits {0, 1} base 3.
pub fn gamma3(max_level: u32) -> GammaSet {
    GammaSet::generate(3, &[0, 1], max_level).expect("level within capacity")
}

/// The companion set with digits {0, 2} base 4, disjoint from `𝒟(Γ₄)`
/// except at 0.
pub fn gamma4_prime(max_level: u32) -> GammaSet {
    GammaSet::generate(4, &[0, 2], max_level).expect("level within capacity")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn digit_generation_matches_listings() {
        assert_eq!(gamma4(2).elements(), &[0, 1, 4, 5, 16, 17, 20, 21],);
        assert_eq!(gamma3(2).elements(), &[0, 1, 3, 4, 9, 10, 12, 13],);
        assert_eq!(gamma4_prime(1).elements(), &[0, 2, 8, 10]);
    }

    #[test]
    fn duplicate_sums_are_collapsed() {
        // 3 = 0 + 1·3 = 3 + 0·3 when the digit set overshoots the base.
        let g = GammaSet::generate(3, &[0, 3], 1).unwrap();
        assert_eq!(g.elements(), &[0, 3, 9, 12]);
    }

    #[test]
    fn generation_rejects_overflow_and_bad_digits() {
        assert!(matches!(
            GammaSet::generate(4, &[0, 1], 40),
            Err(Error::CapacityExceeded(_))
        ));
        assert!(GammaSet::generate(1, &[0], 2).is_err());
        assert!(GammaSet::generate(4, &[0, 0], 2).is_err());
        assert!(GammaSet::generate(4, &[], 2).is_err());
    }

    #[test]
    fn difference_set_small_example() {
        let g = GammaSet::from_elements(vec![0, 1, 4, 5]);
        assert_eq!(g.difference_set(10), vec![-5, -4, -3, -1, 0, 1, 3, 4, 5]);
        let single = GammaSet::from_elements(vec![0]);
        assert_eq!(single.difference_set(5), vec![0]);
    }

    #[test]
    fn difference_set_respects_bound() {
        let g = gamma4(3);
        let d = g.difference_set(7);
        assert!(d.iter().all(|&x| x.abs() <= 7));
        assert!(d.contains(&0));
        for &x in &d {
            assert!(d.contains(&-x), "symmetry broken at {x}");
        }
    }

    #[test]
    fn coverage_examples() {
        assert_eq!(gamma3(9).check_coverage(1000), Coverage::Complete);
        assert_eq!(gamma4(8).check_coverage(10), Coverage::FirstMissing(2));
        let g = GammaSet::from_elements(vec![0, 1]);
        assert_eq!(g.check_coverage(1), Coverage::Complete);
    }

    #[test]
    fn disjoint_difference_examples() {
        let a = gamma4_prime(5);
        let g = gamma4(5);
        assert_eq!(a.intersect_difference(&g, 4096), vec![0]);

        let zero = GammaSet::from_elements(vec![0]);
        assert_eq!(zero.intersect_difference(&g, 100), vec![0]);

        let two = GammaSet::from_elements(vec![2]);
        let small = GammaSet::from_elements(vec![0, 1, 4, 5]);
        assert!(two.intersect_difference(&small, 10).is_empty());
    }

    #[test]
    fn json_round_trip_and_schema() {
        let g = gamma4(2);
        let s = serde_json::to_string(&g).unwrap();
        assert!(s.contains("\"base\":4"), "{s}");
        assert!(s.contains("\"maxLevel\":2"), "{s}");
        let back: GammaSet = serde_json::from_str(&s).unwrap();
        assert_eq!(back, g);

        let from_gen: GammaSet =
            serde_json::from_str(r#"{"base":4,"digits":[0,1],"maxLevel":2}"#).unwrap();
        assert_eq!(from_gen.elements(), g.elements());

        let from_els: GammaSet = serde_json::from_str(r#"{"elements":[5,1,3,3]}"#).unwrap();
        assert_eq!(from_els.elements(), &[1, 3, 5]);
    }
}
