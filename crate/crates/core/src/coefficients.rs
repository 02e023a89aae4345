//! Exact scalar arithmetic: arbitrary-precision rationals, Gaussian rationals,
//! and the τ-graded ring where τ is the formal unit 2πi.
//!
//! τ is never expanded in the symbolic layers; weight bookkeeping stays exact
//! and conversion to floating point happens only at the numeric boundary.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num::bigint::BigInt;
use num::{BigRational, Complex, One, Signed, ToPrimitive, Zero};

pub type Rational = BigRational;
pub type C64 = Complex<f64>;

/// Shorthand for an exact rational from an integer pair.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn rat_int(n: i64) -> Rational {
    Rational::from(BigInt::from(n))
}

/// Element of the τ-graded coefficient ring ℚ[τ, τ⁻¹], τ = 2πi kept formal.
///
/// Stored as a map τ-exponent → rational coefficient with no zero entries.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct TauScalar {
    terms: BTreeMap<i64, Rational>,
}

impl TauScalar {
    pub fn zero() -> Self {
        TauScalar { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        TauScalar::from_rational(Rational::one())
    }

    pub fn from_rational(q: Rational) -> Self {
        let mut t = TauScalar::zero();
        if !q.is_zero() {
            t.terms.insert(0, q);
        }
        t
    }

    pub fn from_int(n: i64) -> Self {
        TauScalar::from_rational(rat_int(n))
    }

    /// q · τ^k
    pub fn tau_pow(k: i64, q: Rational) -> Self {
        let mut t = TauScalar::zero();
        if !q.is_zero() {
            t.terms.insert(k, q);
        }
        t
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&i64, &Rational)> {
        self.terms.iter()
    }

    /// The single (exponent, coefficient) pair of a τ-homogeneous scalar.
    pub fn as_monomial(&self) -> Option<(i64, &Rational)> {
        if self.terms.len() == 1 {
            self.terms.iter().next().map(|(k, q)| (*k, q))
        } else {
            None
        }
    }

    /// Coefficient of τ^k.
    pub fn coefficient(&self, k: i64) -> Rational {
        self.terms.get(&k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn scale(&self, q: &Rational) -> Self {
        if q.is_zero() {
            return TauScalar::zero();
        }
        let mut out = TauScalar::zero();
        for (k, c) in &self.terms {
            out.terms.insert(*k, c * q);
        }
        out
    }

    /// Multiply by τ^k (shift the grading).
    pub fn shift(&self, k: i64) -> Self {
        let mut out = TauScalar::zero();
        for (e, c) in &self.terms {
            out.terms.insert(e + k, c.clone());
        }
        out
    }

    /// All coefficients integers (used by the integral-refinement checks).
    pub fn is_integral(&self) -> bool {
        self.terms.values().all(|q| q.is_integer())
    }

    /// Substitute τ = 2πi. `digits` requests the target relative precision;
    /// the f64-based result caps the effective precision near 15 digits.
    pub fn to_complex(&self, digits: u32) -> C64 {
        assert!(digits >= 1, "digits must be positive");
        let tau = C64::new(0.0, 2.0 * std::f64::consts::PI);
        let mut acc = C64::new(0.0, 0.0);
        for (k, q) in &self.terms {
            let coeff = q.to_f64().expect("rational out of f64 range");
            acc += coeff * tau.powi(*k as i32);
        }
        acc
    }
}

impl Add for &TauScalar {
    type Output = TauScalar;
    fn add(self, rhs: &TauScalar) -> TauScalar {
        let mut out = self.clone();
        for (k, q) in &rhs.terms {
            let entry = out.terms.entry(*k).or_insert_with(Rational::zero);
            *entry += q;
            if entry.is_zero() {
                out.terms.remove(k);
            }
        }
        out
    }
}

impl Sub for &TauScalar {
    type Output = TauScalar;
    fn sub(self, rhs: &TauScalar) -> TauScalar {
        self + &(-rhs)
    }
}

impl Neg for &TauScalar {
    type Output = TauScalar;
    fn neg(self) -> TauScalar {
        let mut out = TauScalar::zero();
        for (k, q) in &self.terms {
            out.terms.insert(*k, -q);
        }
        out
    }
}

impl Mul for &TauScalar {
    type Output = TauScalar;
    fn mul(self, rhs: &TauScalar) -> TauScalar {
        let mut out = TauScalar::zero();
        for (ka, qa) in &self.terms {
            for (kb, qb) in &rhs.terms {
                let k = ka + kb;
                let entry = out.terms.entry(k).or_insert_with(Rational::zero);
                *entry += qa * qb;
                if entry.is_zero() {
                    out.terms.remove(&k);
                }
            }
        }
        out
    }
}

impl fmt::Display for TauScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, q) in self.terms.iter().rev() {
            if !first {
                write!(f, " + ")?;
            }
            write!(f, "{} * tau^{}", q, k)?;
            first = false;
        }
        Ok(())
    }
}

impl fmt::Debug for TauScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

/// Element of ℚ(i): exact real and imaginary rational parts.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct GaussianRational {
    pub re: Rational,
    pub im: Rational,
}

impl GaussianRational {
    pub fn new(re: Rational, im: Rational) -> Self {
        GaussianRational { re, im }
    }

    pub fn from_int(n: i64) -> Self {
        GaussianRational::new(rat_int(n), Rational::zero())
    }

    pub fn from_rational(q: Rational) -> Self {
        GaussianRational::new(q, Rational::zero())
    }

    pub fn i() -> Self {
        GaussianRational::new(Rational::zero(), Rational::one())
    }

    pub fn zero() -> Self {
        GaussianRational::default()
    }

    pub fn one() -> Self {
        GaussianRational::from_rational(Rational::one())
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        GaussianRational::new(self.re.clone(), -&self.im)
    }

    /// |z|² ∈ ℚ.
    pub fn norm(&self) -> Rational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn inv(&self) -> Self {
        assert!(!self.is_zero(), "division by zero in Q(i)");
        let n = self.norm();
        GaussianRational::new(&self.re / &n, -&self.im / &n)
    }

    pub fn to_c64(&self) -> C64 {
        C64::new(self.re.to_f64().unwrap(), self.im.to_f64().unwrap())
    }

    /// Exact square root in ℚ(i), when one exists.
    pub fn sqrt_exact(&self) -> Option<Self> {
        if self.is_zero() {
            return Some(GaussianRational::zero());
        }
        // sqrt(x + iy) = u + iv with u² = (x + |z|)/2, v² = (|z| − x)/2, 2uv = y.
        let norm = self.norm();
        let r = rational_sqrt(&norm)?;
        let two = rat_int(2);
        let u2 = (&self.re + &r) / &two;
        let v2 = (&r - &self.re) / &two;
        let u = rational_sqrt(&u2)?;
        let v = rational_sqrt(&v2)?;
        // Fix the relative sign via 2uv = y.
        let candidates = [
            GaussianRational::new(u.clone(), v.clone()),
            GaussianRational::new(u, -&v),
        ];
        candidates.into_iter().find(|c| {
            let sq = c * c;
            sq == *self
        })
    }
}

/// Exact square root of a nonnegative rational, if it is a perfect square.
pub fn rational_sqrt(q: &Rational) -> Option<Rational> {
    if q.is_negative() {
        return None;
    }
    if q.is_zero() {
        return Some(Rational::zero());
    }
    let num = q.numer();
    let den = q.denom();
    let ns = num.sqrt();
    let ds = den.sqrt();
    if &(&ns * &ns) == num && &(&ds * &ds) == den {
        Some(Rational::new(ns, ds))
    } else {
        None
    }
}

impl Add for &GaussianRational {
    type Output = GaussianRational;
    fn add(self, rhs: &GaussianRational) -> GaussianRational {
        GaussianRational::new(&self.re + &rhs.re, &self.im + &rhs.im)
    }
}

impl Sub for &GaussianRational {
    type Output = GaussianRational;
    fn sub(self, rhs: &GaussianRational) -> GaussianRational {
        GaussianRational::new(&self.re - &rhs.re, &self.im - &rhs.im)
    }
}

impl Neg for &GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        GaussianRational::new(-&self.re, -&self.im)
    }
}

impl Mul for &GaussianRational {
    type Output = GaussianRational;
    fn mul(self, rhs: &GaussianRational) -> GaussianRational {
        GaussianRational::new(
            &self.re * &rhs.re - &self.im * &rhs.im,
            &self.re * &rhs.im + &self.im * &rhs.re,
        )
    }
}

impl fmt::Display for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            write!(f, "{}", self.re)
        } else if self.re.is_zero() {
            write!(f, "{}*i", self.im)
        } else if self.im.is_negative() {
            write!(f, "{} - {}*i", self.re, -&self.im)
        } else {
            write!(f, "{} + {}*i", self.re, self.im)
        }
    }
}

impl fmt::Debug for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

/// Operations every coefficient ring of the form layers provides. Implemented
/// by [`TauScalar`] (exact symbolic mode) and [`C64`] (numeric mode).
pub trait RingScalar: Clone + PartialEq + fmt::Debug {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    /// Exact division by a positive integer (for simplex integration).
    fn div_int(&self, n: u64) -> Self;

    fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }
}

impl RingScalar for TauScalar {
    fn zero() -> Self {
        TauScalar::zero()
    }
    fn one() -> Self {
        TauScalar::one()
    }
    fn is_zero(&self) -> bool {
        TauScalar::is_zero(self)
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn neg(&self) -> Self {
        -self
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn div_int(&self, n: u64) -> Self {
        self.scale(&Rational::new(BigInt::one(), BigInt::from(n)))
    }
}

impl RingScalar for C64 {
    fn zero() -> Self {
        C64::new(0.0, 0.0)
    }
    fn one() -> Self {
        C64::new(1.0, 0.0)
    }
    fn is_zero(&self) -> bool {
        self.re == 0.0 && self.im == 0.0
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn neg(&self) -> Self {
        -self
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn div_int(&self, n: u64) -> Self {
        self / n as f64
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(k: i64, num: i64, den: i64) -> TauScalar {
        TauScalar::tau_pow(k, rat(num, den))
    }

    #[test]
    fn tau_mul_adds_exponents() {
        assert_eq!(&t(1, 1, 1) * &t(1, 1, 1), t(2, 1, 1));
    }

    #[test]
    fn tau_add_same_grade() {
        assert_eq!(&t(0, 1, 2) + &t(0, 1, 2), t(0, 1, 1));
    }

    #[test]
    fn tau_add_mixed_grades() {
        let s = &t(1, 1, 1) + &t(0, 1, 1);
        assert_eq!(s.coefficient(1), rat_int(1));
        assert_eq!(s.coefficient(0), rat_int(1));
        assert_eq!(s.terms().count(), 2);
    }

    #[test]
    fn to_complex_basics() {
        let two_pi = 2.0 * std::f64::consts::PI;
        let v = t(1, 1, 1).to_complex(12);
        assert!((v - C64::new(0.0, two_pi)).norm() < 1e-12);
        let v = t(2, 1, 1).to_complex(12);
        assert!((v - C64::new(-two_pi * two_pi, 0.0)).norm() < 1e-9);
        let v = t(0, 1, 3).to_complex(12);
        assert!((v - C64::new(1.0 / 3.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn to_complex_is_ring_hom_up_to_precision() {
        let digits = 12u32;
        let a = &(&t(1, 3, 7) + &t(0, -2, 5)) + &t(-1, 1, 3);
        let b = &t(2, 1, 9) + &t(0, 4, 1);
        let lhs = (&a * &b).to_complex(digits);
        let rhs = a.to_complex(digits) * b.to_complex(digits);
        let mag = lhs.norm().max(rhs.norm()).max(1.0);
        assert!((lhs - rhs).norm() <= 1e-10 * mag);
    }

    #[test]
    fn gaussian_field_ops() {
        let z = GaussianRational::new(rat(1, 2), rat(-3, 4));
        let w = &z * &z.inv();
        assert_eq!(w, GaussianRational::one());
        assert_eq!(&z.conj() * &z, GaussianRational::from_rational(z.norm()));
    }

    #[test]
    fn gaussian_sqrt() {
        let z = GaussianRational::new(rat_int(0), rat_int(2)); // sqrt(2i) = 1 + i
        let s = z.sqrt_exact().unwrap();
        assert_eq!(&s * &s, z);
        assert_eq!(
            GaussianRational::from_int(9).sqrt_exact(),
            Some(GaussianRational::from_int(3))
        );
        // 2 is not a perfect square in Q(i)
        assert!(GaussianRational::from_int(2).sqrt_exact().is_none());
    }

    #[test]
    fn tau_display() {
        assert_eq!(format!("{}", t(2, 1, 2)), "1/2 * tau^2");
        assert_eq!(format!("{}", TauScalar::zero()), "0");
    }
}
