//! Seeded, reproducible samplers for points, coefficients, and test
//! matrices. Every draw is a pure function of the seed, so reports that echo
//! the seed are reproducible byte for byte.

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use std::f64::consts::TAU;

use crate::kernel::DenseMatrix;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Uniform points in the closed disc of the given radius.
pub fn disc_points(seed: u64, count: usize, radius: f64) -> Vec<Complex64> {
    let mut r = rng(seed);
    (0..count)
        .map(|_| {
            let rho = radius * r.gen::<f64>().sqrt();
            let theta = TAU * r.gen::<f64>();
            Complex64::from_polar(rho, theta)
        })
        .collect()
}

/// Seeded point pairs for two-argument kernel checks.
pub fn disc_pairs(seed: u64, count: usize, radius: f64) -> Vec<(Complex64, Complex64)> {
    let pts = disc_points(seed, 2 * count, radius);
    pts.chunks(2).map(|c| (c[0], c[1])).collect()
}

/// Coefficient vectors with components uniform in the unit square
/// `[-1,1] × [-1,1]i`.
pub fn coeff_vector(seed: u64, len: usize) -> Vec<Complex64> {
    let mut r = rng(seed);
    (0..len)
        .map(|_| Complex64::new(r.gen_range(-1.0..=1.0), r.gen_range(-1.0..=1.0)))
        .collect()
}

/// A random subset of `[0, n)`, each index kept with probability ½; the
/// support of a seeded 0/1 diagonal.
pub fn random_indicator(seed: u64, n: u64) -> Vec<u64> {
    let mut r = rng(seed);
    (0..n).filter(|_| r.gen::<bool>()).collect()
}

fn gaussian_matrix(r: &mut ChaCha8Rng, rows: usize, cols: usize) -> DMatrix<Complex64> {
    DMatrix::from_fn(rows, cols, |_, _| {
        Complex64::new(r.sample(StandardNormal), r.sample(StandardNormal))
    })
}

/// Rank-`rank` orthogonal projection from the QR factors of a complex
/// Gaussian matrix. Idempotent and Hermitian up to round-off.
pub fn random_projection(seed: u64, n: usize, rank: usize) -> DenseMatrix {
    let mut r = rng(seed);
    let rank = rank.clamp(1, n);
    let g = gaussian_matrix(&mut r, n, rank);
    let q = g.qr().q();
    let p = &q * q.adjoint();
    // Symmetrize exactly so the Hermitian constructor cannot be tripped by
    // the last round-off bit.
    let h = (&p + p.adjoint()) * Complex64::new(0.5, 0.0);
    DenseMatrix::new(h).expect("projection is Hermitian")
}

/// A Hermitian PSD matrix that is decisively not a projection: a random
/// unitary conjugation of a diagonal with eigenvalues bounded away from
/// {0, 1}. The eigenvalue ½ guarantees `‖A − A²‖ ≥ 1/(4n)` entrywise.
pub fn random_psd_non_projection(seed: u64, n: usize) -> DenseMatrix {
    let mut r = rng(seed);
    let g = gaussian_matrix(&mut r, n, n);
    let q = g.qr().q();
    let eigs: Vec<f64> = (0..n)
        .map(|i| match i % 3 {
            0 => 0.5,
            1 => 2.0,
            _ => 0.3 + 0.4 * r.gen::<f64>(),
        })
        .collect();
    let d = DMatrix::from_fn(n, n, |i, j| {
        if i == j {
            Complex64::new(eigs[i], 0.0)
        } else {
            Complex64::default()
        }
    });
    let a = &q * d * q.adjoint();
    let h = (&a + a.adjoint()) * Complex64::new(0.5, 0.0);
    DenseMatrix::new(h).expect("conjugated diagonal is Hermitian")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::{psd_check, CoeffMatrix};
    use crate::moment::projection_residual;
    use crate::report::NormTag;

    #[test]
    fn sampling_is_deterministic() {
        assert_eq!(disc_points(7, 5, 0.9), disc_points(7, 5, 0.9));
        assert_ne!(disc_points(7, 5, 0.9), disc_points(8, 5, 0.9));
        assert_eq!(coeff_vector(3, 4), coeff_vector(3, 4));
        assert_eq!(random_indicator(11, 32), random_indicator(11, 32));
    }

    #[test]
    fn points_stay_inside_radius() {
        for p in disc_points(42, 200, 0.8) {
            assert!(p.norm() <= 0.8 + 1e-12);
        }
    }

    #[test]
    fn random_projection_is_projection() {
        for seed in 0..5u64 {
            let p = random_projection(seed, 16, 1 + seed as usize);
            let r = projection_residual(&CoeffMatrix::Dense(p), NormTag::Max, None).unwrap();
            assert!(r.residual <= 1e-12, "seed {seed}: {}", r.residual);
        }
    }

    #[test]
    fn random_psd_non_projection_is_psd_but_not_projection() {
        for seed in 0..5u64 {
            let a = random_psd_non_projection(seed, 16);
            let psd = psd_check(a.entries(), 1e-10).unwrap();
            assert!(psd.pass, "seed {seed}");
            let r = projection_residual(&CoeffMatrix::Dense(a), NormTag::Max, None).unwrap();
            assert!(r.residual >= 1.0 / 64.0, "seed {seed}: {}", r.residual);
        }
    }
}
