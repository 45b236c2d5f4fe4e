//! Independent oracles for the integration suites. Everything here is
//! deliberately written from scratch — straight loops against the defining
//! formulas — so agreement with the library is evidence, not tautology.

#![allow(dead_code)]

use num_complex::Complex64;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::collections::HashSet;
use std::f64::consts::TAU;

pub fn cx(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// `e^{-2πit}` without any clever reduction.
pub fn e_neg(t: f64) -> Complex64 {
    let (s, c) = (-TAU * t).sin_cos();
    Complex64::new(c, s)
}

/// Digit-expansion set `{Σ l_j B^j}` by plain recursion.
pub fn enumerate_digit_set(base: u64, digits: &[u64], max_level: u32) -> Vec<u64> {
    fn rec(base: u64, digits: &[u64], level: u32, max_level: u32, acc: u64, out: &mut Vec<u64>) {
        if level > max_level {
            out.push(acc);
            return;
        }
        let pow = base.pow(level);
        for &d in digits {
            rec(base, digits, level + 1, max_level, acc + d * pow, out);
        }
    }
    let mut out = Vec::new();
    rec(base, digits, 0, max_level, 0, &mut out);
    out.sort_unstable();
    out.dedup();
    out
}

/// All pairwise differences within the bound, by the defining double loop.
pub fn brute_difference_set(elements: &[u64], bound: i64) -> HashSet<i64> {
    let mut set = HashSet::new();
    for &x in elements {
        for &y in elements {
            let d = x as i64 - y as i64;
            if d.abs() <= bound {
                set.insert(d);
            }
        }
    }
    set
}

/// Fixed-depth refinement product for an IFS measure's Fourier transform,
/// with no adaptive depth selection and no phase reduction tricks.
pub fn naive_ifs_fourier(
    scale: u32,
    digits: &[u32],
    weights: &[f64],
    k: f64,
    depth: u32,
) -> Complex64 {
    let mut prod = cx(1.0, 0.0);
    for j in 1..=depth {
        let xi = k / (scale as f64).powi(j as i32);
        let mask: Complex64 = digits
            .iter()
            .zip(weights)
            .map(|(&a, &p)| p * e_neg(xi * a as f64))
            .sum();
        prod *= mask;
    }
    prod
}

/// A chaos-game orbit of the IFS: `x ← (x + a_i)/R` with digit `i` drawn by
/// weight. Returns the orbit after burn-in.
pub fn chaos_game_orbit(
    scale: u32,
    digits: &[u32],
    weights: &[f64],
    samples: usize,
    seed: u64,
) -> Vec<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut x = 0.5f64;
    let pick = |r: f64| {
        let mut acc = 0.0;
        for (i, &p) in weights.iter().enumerate() {
            acc += p;
            if r < acc {
                return i;
            }
        }
        weights.len() - 1
    };
    for _ in 0..64 {
        let i = pick(rng.gen::<f64>());
        x = (x + digits[i] as f64) / scale as f64;
    }
    let mut orbit = Vec::with_capacity(samples);
    for _ in 0..samples {
        let i = pick(rng.gen::<f64>());
        x = (x + digits[i] as f64) / scale as f64;
        orbit.push(x);
    }
    orbit
}

/// Monte-Carlo estimates of `µ̂(k)` for `k = 0..=k_max` from one orbit,
/// using incremental powers of `e^{-2πix}` per sample. Returns
/// `(estimate, standard_error)` per `k`.
pub fn chaos_game_fourier(orbit: &[f64], k_max: usize) -> Vec<(Complex64, f64)> {
    let n = orbit.len();
    let mut sum = vec![Complex64::default(); k_max + 1];
    let mut sum_re2 = vec![0.0f64; k_max + 1];
    let mut sum_im2 = vec![0.0f64; k_max + 1];
    for &x in orbit {
        let base = e_neg(x);
        let mut pow = cx(1.0, 0.0);
        for k in 0..=k_max {
            sum[k] += pow;
            sum_re2[k] += pow.re * pow.re;
            sum_im2[k] += pow.im * pow.im;
            pow *= base;
        }
    }
    (0..=k_max)
        .map(|k| {
            let mean = sum[k] / n as f64;
            let var_re = (sum_re2[k] / n as f64 - mean.re * mean.re).max(0.0);
            let var_im = (sum_im2[k] / n as f64 - mean.im * mean.im).max(0.0);
            let se = ((var_re + var_im) / n as f64).sqrt();
            (mean, se)
        })
        .collect()
}

/// Plain trapezoid rule for `∫₀¹ f(θ) e^{-2πikθ} dθ` at `q` equispaced
/// nodes (periodic, so the rule collapses to the uniform average).
pub fn quadrature_fourier<F: Fn(f64) -> f64>(f: &F, k: i64, q: usize) -> Complex64 {
    let mut acc = Complex64::default();
    for node in 0..q {
        let theta = node as f64 / q as f64;
        acc += f(theta) * e_neg(k as f64 * theta);
    }
    acc / q as f64
}
