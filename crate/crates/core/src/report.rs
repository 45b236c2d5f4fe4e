//! Machine-readable result records shared by the residual checks.

use serde::{Deserialize, Serialize};

/// Matrix norm used by a residual check.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum NormTag {
    /// Entrywise maximum; the default, matching the per-entry structure of
    /// the diagonal closed form.
    Max,
    /// Frobenius norm, offered for dense matrices.
    Frobenius,
}

impl std::str::FromStr for NormTag {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "max" => Ok(NormTag::Max),
            "frobenius" => Ok(NormTag::Frobenius),
            other => Err(format!("unknown norm `{other}` (expected max|frobenius)")),
        }
    }
}

/// Result of a matrix-identity residual check at a finite window.
///
/// The verdict is truncated by construction: a zero residual is necessary at
/// every window and sufficient only in the limit, which `tail_note` records
/// together with any oracle truncation error that entered the entries.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResidualReport {
    pub residual: f64,
    pub norm: NormTag,
    #[serde(rename = "N")]
    pub n: usize,
    pub pass: bool,
    #[serde(rename = "worstEntry")]
    pub worst_entry: Option<(usize, usize)>,
    #[serde(rename = "tailNote")]
    pub tail_note: String,
}

impl ResidualReport {
    pub fn new(
        residual: f64,
        norm: NormTag,
        n: usize,
        tol: f64,
        worst: Option<(usize, usize)>,
    ) -> Self {
        ResidualReport {
            residual,
            norm,
            n,
            pass: residual <= tol,
            worst_entry: worst,
            tail_note: format!(
                "windowed criterion at N={n}, tol={tol:.3e}: necessary at every window, sufficient in the limit"
            ),
        }
    }

    pub fn with_note(mut self, extra: &str) -> Self {
        self.tail_note.push_str("; ");
        self.tail_note.push_str(extra);
        self
    }
}

/// Accumulates residual norms entry by entry.
pub(crate) struct ResidualAccum {
    norm: NormTag,
    max: f64,
    worst: Option<(usize, usize)>,
    frob_sq: f64,
}

impl ResidualAccum {
    pub fn new(norm: NormTag) -> Self {
        ResidualAccum {
            norm,
            max: 0.0,
            worst: None,
            frob_sq: 0.0,
        }
    }

    pub fn push(&mut self, m: usize, n: usize, abs: f64) {
        if abs > self.max {
            self.max = abs;
            self.worst = Some((m, n));
        }
        self.frob_sq += abs * abs;
    }

    pub fn finish(self) -> (f64, Option<(usize, usize)>) {
        match self.norm {
            NormTag::Max => (self.max, self.worst),
            NormTag::Frobenius => (self.frob_sq.sqrt(), self.worst),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn report_json_field_names() {
        let r = ResidualReport::new(0.5, NormTag::Max, 8, 1e-10, Some((1, 3)));
        let v: serde_json::Value = serde_json::to_value(&r).unwrap();
        let obj = v.as_object().unwrap();
        for key in ["residual", "norm", "N", "pass", "worstEntry", "tailNote"] {
            assert!(obj.contains_key(key), "missing {key}: {v}");
        }
        assert_eq!(obj["norm"], "max");
        assert_eq!(obj["pass"], false);
    }

    #[test]
    fn accumulator_norms() {
        let mut acc = ResidualAccum::new(NormTag::Frobenius);
        acc.push(0, 0, 3.0);
        acc.push(0, 1, 4.0);
        let (r, worst) = acc.finish();
        assert!((r - 5.0).abs() < 1e-15);
        assert_eq!(worst, Some((0, 1)));
    }
}
