//! Constructs absolutely continuous representing measures for a spectrum Γ.
//!
//! Whenever `𝒟(Γ)` misses some positive integer, the density
//! `1 + Σ_n b_n cos(2πnθ)` with coefficients supported off the difference
//! set and `Σ|b_n| < 1` defines a probability measure whose Fourier
//! coefficients vanish on `𝒟(Γ) \ {0}` by construction — so its 0/1
//! diagonal satisfies the windowed criterion exactly. The coefficient
//! assignment is a deterministic geometric split of the mass budget over
//! the admissible frequencies in increasing order.

use num_complex::Complex64;
use serde::Serialize;
use std::collections::{BTreeMap, HashSet};

use crate::boundary::{reproduce_residual_fourier, reproduce_residual_quadrature};
use crate::error::{Error, Result};
use crate::gamma::GammaSet;
use crate::kernel::CoeffMatrix;
use crate::measure::MeasureSpec;
use crate::moment::{build_moment_matrix, cmc_residual, fourier_vanishing_check, VanishingReport};
use crate::report::{NormTag, ResidualReport};
use crate::util::format_complex;

/// Builds a trigonometric density supported exactly on the admissible
/// frequencies `n ∈ [1, freq_bound] \ 𝒟(Γ)`, with
/// `b_n = mass_budget·(1−decay)·decay^rank` in increasing frequency order,
/// so `Σ|b_n| < mass_budget < 1`.
///
/// ```
/// use hardyrep::builder::{build_ac_representing_measure, certify};
/// use hardyrep::gamma::gamma4;
///
/// let spectrum = gamma4(5);
/// let mu = build_ac_representing_measure(&spectrum, 100, 0.5, 0.5)?;
/// assert!(certify(&mu, &spectrum, 64)?.pass);
/// # Ok::<(), hardyrep::Error>(())
/// ```
pub fn build_ac_representing_measure(
    gamma: &GammaSet,
    freq_bound: u64,
    mass_budget: f64,
    decay: f64,
) -> Result<MeasureSpec> {
    if !(0.0 < mass_budget && mass_budget < 1.0) {
        return Err(Error::Parse(format!(
            "mass budget must lie in (0, 1), got {mass_budget}"
        )));
    }
    if !(0.0 < decay && decay < 1.0) {
        return Err(Error::Parse(format!(
            "decay must lie in (0, 1), got {decay}"
        )));
    }
    if freq_bound == 0 {
        return Err(Error::NoAdmissibleFrequency { bound: 0 });
    }
    let blocked: HashSet<i64> = gamma
        .difference_set(freq_bound as i64)
        .into_iter()
        .collect();
    let admissible: Vec<u64> = (1..=freq_bound)
        .filter(|&n| !blocked.contains(&(n as i64)))
        .collect();
    if admissible.is_empty() {
        return Err(Error::NoAdmissibleFrequency { bound: freq_bound });
    }
    let mut b = BTreeMap::new();
    let mut coeff = mass_budget * (1.0 - decay);
    for n in admissible {
        b.insert(n, coeff);
        coeff *= decay;
    }
    let spec = MeasureSpec::TrigDensity { b };
    spec.ensure_valid()?;
    Ok(spec)
}

/// One reproduction spot check inside a certificate.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReproduceCheck {
    pub w: String,
    pub z: String,
    pub route: &'static str,
    pub residual: f64,
    pub tol: f64,
    pub pass: bool,
}

/// Combined certificate: validation, Fourier vanishing, the windowed matrix
/// residual, and one reproduction spot check.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Certificate {
    pub pass: bool,
    pub violations: Vec<String>,
    pub vanishing: VanishingReport,
    pub cmc: ResidualReport,
    pub reproduce: ReproduceCheck,
}

/// Certifies that `µ` represents `K_Γ` on the window `[0, window)`.
///
/// Runs the validator, the vanishing check over `|d| ≤ window`, the
/// `C = CMC` residual at size `window`, and a reproduction spot check at
/// `(w, z) = (0.3, 0.5)` — by quadrature when a density exists, through the
/// Fourier double series otherwise.
pub fn certify(mu: &MeasureSpec, gamma: &GammaSet, window: usize) -> Result<Certificate> {
    let violations = mu.validate();
    if !violations.is_empty() {
        return Err(Error::InvalidMeasure(violations));
    }
    let tol = mu.default_tol();
    let vanishing = fourier_vanishing_check(mu, gamma, window as i64, tol)?;
    let c = CoeffMatrix::Diagonal(crate::kernel::Diagonal::indicator_window(
        gamma,
        window as u64,
    ));
    let m = build_moment_matrix(mu, window, false)?;
    let cmc = cmc_residual(&c, &m, NormTag::Max, Some(tol))?;

    let w = Complex64::new(0.3, 0.0);
    let z = Complex64::new(0.5, 0.0);
    let (route, residual) = if mu.has_density() {
        let top = mu.top_density_frequency().max(window as u64);
        let q = (4 * top).max(4) as usize;
        (
            "quadrature",
            reproduce_residual_quadrature(&c, mu, w, z, window, q)?,
        )
    } else {
        ("fourier", reproduce_residual_fourier(&c, mu, w, z, window)?)
    };
    let reproduce = ReproduceCheck {
        w: format_complex(w),
        z: format_complex(z),
        route,
        residual,
        tol,
        pass: residual <= tol,
    };
    Ok(Certificate {
        pass: vanishing.pass && cmc.pass && reproduce.pass,
        violations,
        vanishing,
        cmc,
        reproduce,
    })
}
