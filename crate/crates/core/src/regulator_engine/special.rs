//! The branched logarithm and the principal dilogarithm.

use std::f64::consts::PI;

use num::{BigInt, One, ToPrimitive, Zero};
use once_cell::sync::Lazy;

use crate::coefficients::{Rational, C64};

use super::EngineError;

/// log on P¹ branched over ℝ⁻ = [−∞, 0], imaginary part in (−π, π).
pub fn log_branch(z: C64) -> Result<C64, EngineError> {
    if z.im == 0.0 && z.re <= 0.0 {
        return Err(EngineError::BranchCut(format!("log argument {} on R^-", z)));
    }
    Ok(z.ln())
}

const PI2_6: f64 = PI * PI / 6.0;

/// Bernoulli numbers B_0.. as f64, computed once from the exact recurrence.
static BERNOULLI: Lazy<Vec<f64>> = Lazy::new(|| {
    let count = 50usize;
    let mut exact: Vec<Rational> = Vec::with_capacity(count);
    for m in 0..count {
        if m == 0 {
            exact.push(Rational::one());
            continue;
        }
        // B_m = −1/(m+1) Σ_{j<m} C(m+1, j) B_j
        let mut acc = Rational::zero();
        let mut binom = BigInt::one(); // C(m+1, 0)
        for (j, b) in exact.iter().enumerate() {
            acc += b * Rational::from_integer(binom.clone());
            binom = binom * BigInt::from(m + 1 - j) / BigInt::from(j + 1);
        }
        exact.push(-acc / Rational::from_integer(BigInt::from(m + 1)));
    }
    exact.iter().map(|q| q.to_f64().unwrap()).collect()
});

/// Principal dilogarithm Li₂, cut along (1, ∞); absolute error ≤ 1e-12.
pub fn dilog(z: C64) -> Result<C64, EngineError> {
    if z.im == 0.0 && z.re > 1.0 {
        return Err(EngineError::BranchCut(format!(
            "dilog argument {} on the cut [1, inf)",
            z
        )));
    }
    Ok(dilog_inner(z))
}

fn dilog_inner(z: C64) -> C64 {
    if z.is_zero() {
        return C64::new(0.0, 0.0);
    }
    if (z - C64::new(1.0, 0.0)).norm() < 1e-15 {
        return C64::new(PI2_6, 0.0);
    }
    let r = z.norm();
    if r <= 0.5 {
        return dilog_series(z);
    }
    if r > 1.0 {
        // Li₂(z) = −Li₂(1/z) − π²/6 − ln²(−z)/2
        let inv = 1.0 / z;
        let l = (-z).ln();
        return -dilog_inner(inv) - C64::new(PI2_6, 0.0) - 0.5 * l * l;
    }
    if z.re > 0.5 {
        // reflection: Li₂(z) = π²/6 − ln(z)ln(1−z) − Li₂(1−z)
        let w = C64::new(1.0, 0.0) - z;
        return C64::new(PI2_6, 0.0) - z.ln() * w.ln() - dilog_inner(w);
    }
    // |z| in (0.5, 1], Re z ≤ 0.5: Bernoulli series in u = −ln(1−z)
    dilog_bernoulli(z)
}

fn dilog_series(z: C64) -> C64 {
    let mut term = z;
    let mut acc = C64::new(0.0, 0.0);
    for k in 1..200u32 {
        acc += term / ((k * k) as f64);
        term *= z;
        if term.norm() / ((k * k) as f64) < 1e-17 {
            break;
        }
    }
    acc
}

/// Li₂(z) = Σ_{n≥0} B_n u^{n+1}/(n+1)!, u = −ln(1−z); converges for |u| < 2π.
fn dilog_bernoulli(z: C64) -> C64 {
    let u = -(C64::new(1.0, 0.0) - z).ln();
    let mut acc = C64::new(0.0, 0.0);
    let mut pow = u; // u^{n+1}
    let mut factorial = 1.0f64; // (n+1)!
    for (n, &b) in BERNOULLI.iter().enumerate() {
        factorial *= (n + 1) as f64;
        if b != 0.0 {
            let term = pow * (b / factorial);
            acc += term;
            if term.norm() < 1e-18 && n > 4 {
                break;
            }
        }
        pow *= u;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn log_examples() {
        assert!((log_branch(c(1.0, 0.0)).unwrap()).norm() < 1e-15);
        let v = log_branch(c(0.0, 1.0)).unwrap();
        assert!((v - c(0.0, PI / 2.0)).norm() < 1e-15);
        let v = log_branch(c(std::f64::consts::E, 0.0)).unwrap();
        assert!((v - c(1.0, 0.0)).norm() < 1e-15);
        assert!(log_branch(c(-2.0, 0.0)).is_err());
        assert!(log_branch(c(0.0, 0.0)).is_err());
    }

    #[test]
    fn dilog_special_values() {
        // Li₂(1) = π²/6
        assert!((dilog(c(1.0, 0.0)).unwrap() - c(PI2_6, 0.0)).norm() < 1e-13);
        // Li₂(0) = 0
        assert!(dilog(c(0.0, 0.0)).unwrap().norm() < 1e-15);
        // Li₂(−1) = −π²/12
        assert!((dilog(c(-1.0, 0.0)).unwrap() - c(-PI * PI / 12.0, 0.0)).norm() < 1e-13);
        // Li₂(1/2) = π²/12 − ln²2/2
        let ln2 = std::f64::consts::LN_2;
        let expect = PI * PI / 12.0 - ln2 * ln2 / 2.0;
        assert!((dilog(c(0.5, 0.0)).unwrap() - c(expect, 0.0)).norm() < 1e-13);
        assert!(dilog(c(1.5, 0.0)).is_err());
    }

    /// Independent oracle: direct power series, usable for |z| < 1.
    fn oracle_series(z: C64) -> C64 {
        let mut acc = c(0.0, 0.0);
        let mut term = z;
        for k in 1..4_000_000u64 {
            let add = term / ((k * k) as f64);
            acc += add;
            term *= z;
            if add.norm() < 1e-16 && term.norm() < 1e-15 {
                break;
            }
        }
        acc
    }

    /// Euler-transform oracle for the alternating series at z = −1.
    fn oracle_eta2() -> f64 {
        // η(2) = Σ (−1)^{k+1}/k²; Euler transform of a_k = 1/(k+1)²
        let n = 40;
        let mut diffs: Vec<f64> = (0..n).map(|k| 1.0 / (((k + 1) * (k + 1)) as f64)).collect();
        let mut acc = 0.0;
        let mut pow2 = 2.0;
        for _ in 0..n {
            acc += diffs[0] / pow2;
            pow2 *= 2.0;
            for i in 0..diffs.len() - 1 {
                diffs[i] = diffs[i] - diffs[i + 1];
            }
            diffs.pop();
            if diffs.is_empty() {
                break;
            }
        }
        acc
    }

    #[test]
    fn dilog_matches_series_oracle() {
        for z in [
            c(0.5, 0.0),
            c(0.3, 0.2),
            c(0.7, -0.4),
            c(-0.5, 0.0),
            c(-0.9, 0.35),
            c(0.1, -0.85),
        ] {
            let direct = oracle_series(z);
            let fast = dilog(z).unwrap();
            assert!((direct - fast).norm() < 1e-12, "z = {}: {} vs {}", z, direct, fast);
        }
    }

    #[test]
    fn dilog_minus_one_matches_euler_accelerated_series() {
        let eta2 = oracle_eta2();
        let v = dilog(c(-1.0, 0.0)).unwrap();
        assert!((v.re + eta2).abs() < 1e-12, "{} vs {}", v.re, -eta2);
        assert!(v.im.abs() < 1e-14);
    }

    #[test]
    fn dilog_inversion_consistency() {
        // Li₂(z) + Li₂(1/z) = −π²/6 − ln²(−z)/2, checked at an outside point
        let z = c(-3.0, 1.5);
        let lhs = dilog(z).unwrap() + dilog(1.0 / z).unwrap();
        let l = (-z).ln();
        let rhs = -c(PI2_6, 0.0) - 0.5 * l * l;
        assert!((lhs - rhs).norm() < 1e-12);
    }

    #[test]
    fn euler_reflection_identity() {
        // Li₂(a) + Li₂(1−a) = π²/6 − ln(a)ln(1−a)
        for a in [c(0.3, 0.2), c(0.5, 0.0), c(0.7, -0.4)] {
            let one = c(1.0, 0.0);
            let lhs = dilog(a).unwrap() + dilog(one - a).unwrap();
            let rhs = c(PI2_6, 0.0) - a.ln() * (one - a).ln();
            assert!((lhs - rhs).norm() < 1e-12, "a = {}", a);
        }
    }
}
