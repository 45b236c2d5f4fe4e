//! Small numeric and formatting helpers shared across modules.

use num_complex::Complex64;
use std::f64::consts::TAU;

use crate::error::{Error, Result};

/// `e^{2πi t}` with the phase reduced modulo 1 before scaling.
///
/// The reduction keeps the argument of `sin_cos` in `[0, 2π)`, which matters
/// when `t` encodes an integer frequency times a point: without it the
/// absolute error of the trig kernel grows linearly in `|t|`.
pub fn unit_exp(t: f64) -> Complex64 {
    let f = t - t.floor();
    let (s, c) = (TAU * f).sin_cos();
    Complex64::new(c, s)
}

/// `e^{-2πi t}`, reduced as in [`unit_exp`].
pub fn unit_exp_neg(t: f64) -> Complex64 {
    unit_exp(t).conj()
}

/// Complex power with a nonnegative 64-bit exponent (square and multiply).
pub fn cpow(base: Complex64, exp: u64) -> Complex64 {
    let mut result = Complex64::new(1.0, 0.0);
    let mut b = base;
    let mut e = exp;
    while e > 0 {
        if e & 1 == 1 {
            result *= b;
        }
        b *= b;
        e >>= 1;
    }
    result
}

/// Formats a complex number as `a+bi` / `a-bi` (the CLI literal syntax).
pub fn format_complex(z: Complex64) -> String {
    if z.im < 0.0 || (z.im == 0.0 && z.im.is_sign_negative()) {
        format!("{}-{}i", z.re, -z.im)
    } else {
        format!("{}+{}i", z.re, z.im)
    }
}

/// Parses a complex literal: `a+bi`, `a-bi`, `a`, `bi`, with optional leading
/// sign and scientific notation in either part.
pub fn parse_complex(s: &str) -> Result<Complex64> {
    let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if t.is_empty() {
        return Err(Error::Parse("empty complex literal".into()));
    }
    // Find the split between real and imaginary part: a sign that is not at
    // position 0 and not an exponent sign.
    let bytes = t.as_bytes();
    let mut split = None;
    for i in 1..bytes.len() {
        let c = bytes[i] as char;
        if (c == '+' || c == '-') && !matches!(bytes[i - 1] as char, 'e' | 'E') {
            split = Some(i);
        }
    }
    let bad = |what: &str| Error::Parse(format!("invalid complex literal `{s}`: {what}"));
    match split {
        Some(i) => {
            let (re_s, im_s) = (&t[..i], &t[i..]);
            let im_body = im_s
                .strip_suffix('i')
                .ok_or_else(|| bad("imaginary part must end in `i`"))?;
            let re: f64 = re_s.parse().map_err(|_| bad("bad real part"))?;
            let im: f64 = match im_body {
                "+" => 1.0,
                "-" => -1.0,
                other => other.parse().map_err(|_| bad("bad imaginary part"))?,
            };
            Ok(Complex64::new(re, im))
        }
        None => {
            if let Some(body) = t.strip_suffix('i') {
                let im: f64 = match body {
                    "" | "+" => 1.0,
                    "-" => -1.0,
                    other => other.parse().map_err(|_| bad("bad imaginary part"))?,
                };
                Ok(Complex64::new(0.0, im))
            } else {
                let re: f64 = t.parse().map_err(|_| bad("bad real part"))?;
                Ok(Complex64::new(re, 0.0))
            }
        }
    }
}

/// Rejects points on or outside the unit circle.
pub fn ensure_in_disc(z: Complex64) -> Result<()> {
    if z.norm() < 1.0 {
        Ok(())
    } else {
        Err(Error::PointOutsideDisc { re: z.re, im: z.im })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_round_trips() {
        for s in ["0.5+0.25i", "-1.5-2e-3i", "3", "0.7i", "-i", "1e-2+2E-4i"] {
            let z = parse_complex(s).unwrap();
            let back = parse_complex(&format_complex(z)).unwrap();
            assert_eq!(z, back, "{s}");
        }
        assert_eq!(
            parse_complex("1e-2+2E-4i").unwrap(),
            Complex64::new(0.01, 0.0002)
        );
        assert_eq!(
            parse_complex(" 0.5 - 0.5i ").unwrap(),
            Complex64::new(0.5, -0.5)
        );
        assert!(parse_complex("abc").is_err());
        assert!(parse_complex("1+2j").is_err());
    }

    #[test]
    fn cpow_matches_repeated_multiplication() {
        let z = Complex64::new(0.3, -0.4);
        let mut acc = Complex64::new(1.0, 0.0);
        for k in 0..40u64 {
            assert!((cpow(z, k) - acc).norm() < 1e-12);
            acc *= z;
        }
    }

    #[test]
    fn unit_exp_reduces_large_arguments() {
        // e^{2πi(n + 1/4)} = i for any integer n, even a large one.
        let z = unit_exp(1_048_576.25);
        assert!((z - Complex64::new(0.0, 1.0)).norm() < 1e-12);
    }
}
