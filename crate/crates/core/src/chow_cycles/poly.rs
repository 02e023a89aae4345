//! Dense polynomials and rational functions in the curve parameter t, generic
//! over the coefficient field: exact Gaussian rationals or complex floats.

use std::fmt;

use num::Zero;

use crate::coefficients::{GaussianRational, Rational, C64};

/// Error conditions of the cycle layer.
#[derive(Debug, Clone, thiserror::Error)]
pub enum CycleError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("component contained in face: {0}")]
    Containment(String),
    #[error("improper intersection: {0}")]
    Improper(String),
    #[error("degenerate cycle: {0}")]
    Degenerate(String),
    #[error("parameter out of range: {0}")]
    ParameterRange(String),
    #[error("exact roots unavailable: {0}")]
    ExactRoots(String),
    #[error("inconsistent cycle data: {0}")]
    Inconsistent(String),
}

/// Coefficient field of a cycle parametrization.
pub trait CycleScalar: Clone + PartialEq + fmt::Debug + fmt::Display {
    /// Exact coefficient arithmetic (face roots and boundaries stay exact).
    const EXACT: bool;

    fn zero() -> Self;
    fn one() -> Self;
    fn from_int(n: i64) -> Self;
    fn from_gaussian(g: &GaussianRational) -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn div(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
    fn to_c64(&self) -> C64;
    fn scale_rational(&self, q: &Rational) -> Self;

    /// Equality to a small integer; tolerance applies only in numeric mode.
    fn close_to_int(&self, n: i64, tol: f64) -> bool;
    /// Membership in ℝ⁻ = [−∞, 0]; tolerance applies only in numeric mode.
    fn in_r_minus(&self, tol: f64) -> bool;

    /// Roots with multiplicity of the polynomial with these coefficients
    /// (index = power of t). Exact mode handles degree ≤ 2 (plus trailing
    /// zero roots); numeric mode is general.
    fn poly_roots(coeffs: &[Self]) -> Result<Vec<(Self, usize)>, CycleError>;

    /// Parser-compatible textual rendering (reparses to the same value).
    fn render(&self) -> String;
}

impl CycleScalar for GaussianRational {
    const EXACT: bool = true;

    fn zero() -> Self {
        GaussianRational::zero()
    }
    fn one() -> Self {
        GaussianRational::one()
    }
    fn from_int(n: i64) -> Self {
        GaussianRational::from_int(n)
    }
    fn from_gaussian(g: &GaussianRational) -> Self {
        g.clone()
    }
    fn is_zero(&self) -> bool {
        GaussianRational::is_zero(self)
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn div(&self, rhs: &Self) -> Self {
        self * &rhs.inv()
    }
    fn neg(&self) -> Self {
        -self
    }
    fn to_c64(&self) -> C64 {
        GaussianRational::to_c64(self)
    }
    fn scale_rational(&self, q: &Rational) -> Self {
        self * &GaussianRational::from_rational(q.clone())
    }

    fn close_to_int(&self, n: i64, _tol: f64) -> bool {
        *self == GaussianRational::from_int(n)
    }

    fn in_r_minus(&self, _tol: f64) -> bool {
        use num::Signed;
        self.im.is_zero() && !self.re.is_positive()
    }

    fn poly_roots(coeffs: &[Self]) -> Result<Vec<(Self, usize)>, CycleError> {
        let mut c: Vec<GaussianRational> = coeffs.to_vec();
        while c.last().map_or(false, |x| x.is_zero()) {
            c.pop();
        }
        if c.len() <= 1 {
            return Ok(vec![]); // constant: no roots (zero poly handled upstream)
        }
        let mut roots = Vec::new();
        // peel trailing zero coefficients: roots at t = 0
        let mut zero_mult = 0usize;
        while c.first().map_or(false, |x| x.is_zero()) {
            c.remove(0);
            zero_mult += 1;
        }
        if zero_mult > 0 {
            roots.push((GaussianRational::zero(), zero_mult));
        }
        match c.len() {
            0 | 1 => {}
            2 => {
                // c0 + c1 t = 0
                let r = c[0].div(&c[1]).neg();
                roots.push((r, 1));
            }
            3 => {
                // quadratic formula in Q(i)
                let a = &c[2];
                let b = &c[1];
                let cc = &c[0];
                let four = GaussianRational::from_int(4);
                let disc = &(b * b) - &(&four * &(a * cc));
                let sq = disc.sqrt_exact().ok_or_else(|| {
                    CycleError::ExactRoots(
                        "quadratic discriminant is not a perfect square in Q(i)".into(),
                    )
                })?;
                let two_a = &GaussianRational::from_int(2) * a;
                if sq.is_zero() {
                    roots.push((b.neg().div(&two_a), 2));
                } else {
                    roots.push(((&b.neg() + &sq).div(&two_a), 1));
                    roots.push(((&b.neg() - &sq).div(&two_a), 1));
                }
            }
            _ => {
                return Err(CycleError::ExactRoots(format!(
                    "exact root finding supports degree <= 2, got {}",
                    c.len() - 1
                )));
            }
        }
        Ok(roots)
    }

    fn render(&self) -> String {
        render_gaussian(self)
    }
}

fn render_gaussian(g: &GaussianRational) -> String {
    use num::Signed;
    let rat_str = |q: &Rational| -> String {
        if q.is_integer() {
            q.numer().to_string()
        } else {
            format!("{}/{}", q.numer(), q.denom())
        }
    };
    if g.im.is_zero() {
        return rat_str(&g.re);
    }
    let im_part = if g.im.abs() == Rational::from_integer(1.into()) {
        "i".to_string()
    } else {
        format!("{}*i", rat_str(&g.im.abs()))
    };
    if g.re.is_zero() {
        if g.im.is_negative() {
            format!("0 - {}", im_part)
        } else {
            im_part
        }
    } else if g.im.is_negative() {
        format!("{} - {}", rat_str(&g.re), im_part)
    } else {
        format!("{} + {}", rat_str(&g.re), im_part)
    }
}

impl CycleScalar for C64 {
    const EXACT: bool = false;

    fn zero() -> Self {
        C64::new(0.0, 0.0)
    }
    fn one() -> Self {
        C64::new(1.0, 0.0)
    }
    fn from_int(n: i64) -> Self {
        C64::new(n as f64, 0.0)
    }
    fn from_gaussian(g: &GaussianRational) -> Self {
        g.to_c64()
    }
    fn is_zero(&self) -> bool {
        self.re == 0.0 && self.im == 0.0
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn div(&self, rhs: &Self) -> Self {
        self / rhs
    }
    fn neg(&self) -> Self {
        -self
    }
    fn to_c64(&self) -> C64 {
        *self
    }
    fn scale_rational(&self, q: &Rational) -> Self {
        use num::ToPrimitive;
        self * q.to_f64().unwrap()
    }

    fn close_to_int(&self, n: i64, tol: f64) -> bool {
        (self - C64::new(n as f64, 0.0)).norm() <= tol
    }

    fn in_r_minus(&self, tol: f64) -> bool {
        self.im.abs() <= tol && self.re <= tol
    }

    fn poly_roots(coeffs: &[Self]) -> Result<Vec<(Self, usize)>, CycleError> {
        let mut c: Vec<C64> = coeffs.to_vec();
        let max_mag = c.iter().map(|z| z.norm()).fold(0.0f64, f64::max);
        let trim_tol = max_mag * 1e-13;
        while c.last().map_or(false, |x| x.norm() <= trim_tol) {
            c.pop();
        }
        if c.len() <= 1 {
            return Ok(vec![]);
        }
        let raw = durand_kerner(&c);
        // cluster nearby roots into multiplicities
        let cluster_tol = 1e-7;
        let mut clusters: Vec<(C64, usize)> = Vec::new();
        for r in raw {
            match clusters
                .iter_mut()
                .find(|(center, _)| (*center - r).norm() <= cluster_tol)
            {
                Some((center, count)) => {
                    *center = (*center * (*count as f64) + r) / (*count as f64 + 1.0);
                    *count += 1;
                }
                None => clusters.push((r, 1)),
            }
        }
        // deterministic ordering by argument then modulus
        clusters.sort_by(|(a, _), (b, _)| {
            a.arg()
                .partial_cmp(&b.arg())
                .unwrap()
                .then(a.norm().partial_cmp(&b.norm()).unwrap())
        });
        Ok(clusters)
    }

    fn render(&self) -> String {
        let rat = |x: f64| -> String {
            match Rational::from_float(x) {
                Some(q) => {
                    if q.is_integer() {
                        q.numer().to_string()
                    } else {
                        format!("{}/{}", q.numer(), q.denom())
                    }
                }
                None => "0".to_string(),
            }
        };
        if self.im == 0.0 {
            rat(self.re)
        } else if self.im < 0.0 {
            format!("{} - {}*i", rat(self.re), rat(-self.im))
        } else {
            format!("{} + {}*i", rat(self.re), rat(self.im))
        }
    }
}

/// All roots of a complex polynomial by the Durand–Kerner iteration.
pub fn durand_kerner(coeffs: &[C64]) -> Vec<C64> {
    let deg = coeffs.len() - 1;
    let lead = coeffs[deg];
    let monic: Vec<C64> = coeffs.iter().map(|c| c / lead).collect();
    // Cauchy bound for the root radius
    let radius = 1.0
        + monic[..deg]
            .iter()
            .map(|c| c.norm())
            .fold(0.0f64, f64::max);
    let mut z: Vec<C64> = (0..deg)
        .map(|k| {
            let angle = 2.0 * std::f64::consts::PI * (k as f64) / (deg as f64) + 0.4;
            C64::from_polar(radius * 0.7, angle)
        })
        .collect();
    let eval = |x: C64| -> C64 {
        let mut acc = C64::new(0.0, 0.0);
        for c in monic.iter().rev() {
            acc = acc * x + c;
        }
        acc
    };
    for _ in 0..300 {
        let mut max_step = 0.0f64;
        for i in 0..deg {
            let mut denom = C64::new(1.0, 0.0);
            for j in 0..deg {
                if i != j {
                    denom *= z[i] - z[j];
                }
            }
            if denom.norm() < 1e-300 {
                continue;
            }
            let step = eval(z[i]) / denom;
            z[i] -= step;
            max_step = max_step.max(step.norm());
        }
        if max_step < 1e-14 * radius.max(1.0) {
            break;
        }
    }
    z
}

/// Dense polynomial, index = power of t, no trailing zeros.
#[derive(Clone, PartialEq, Debug)]
pub struct Poly<K: CycleScalar>(pub Vec<K>);

impl<K: CycleScalar> Poly<K> {
    pub fn zero() -> Self {
        Poly(vec![])
    }

    pub fn constant(k: K) -> Self {
        Poly::new(vec![k])
    }

    pub fn one() -> Self {
        Poly::constant(K::one())
    }

    /// The monomial t.
    pub fn t() -> Self {
        Poly::new(vec![K::zero(), K::one()])
    }

    pub fn new(coeffs: Vec<K>) -> Self {
        let mut p = Poly(coeffs);
        p.normalize();
        p
    }

    fn normalize(&mut self) {
        while self.0.last().map_or(false, |c| c.is_zero()) {
            self.0.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        if self.0.is_empty() {
            None
        } else {
            Some(self.0.len() - 1)
        }
    }

    pub fn leading(&self) -> Option<&K> {
        self.0.last()
    }

    pub fn is_constant(&self) -> bool {
        self.0.len() <= 1
    }

    pub fn eval(&self, t: &K) -> K {
        let mut acc = K::zero();
        for c in self.0.iter().rev() {
            acc = acc.mul(t).add(c);
        }
        acc
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let n = self.0.len().max(rhs.0.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            let a = self.0.get(i).cloned().unwrap_or_else(K::zero);
            let b = rhs.0.get(i).cloned().unwrap_or_else(K::zero);
            out.push(a.add(&b));
        }
        Poly::new(out)
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> Self {
        Poly::new(self.0.iter().map(|c| c.neg()).collect())
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![K::zero(); self.0.len() + rhs.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.0.iter().enumerate() {
                out[i + j] = out[i + j].add(&a.mul(b));
            }
        }
        Poly::new(out)
    }

    pub fn scale(&self, k: &K) -> Self {
        Poly::new(self.0.iter().map(|c| c.mul(k)).collect())
    }

    pub fn derivative(&self) -> Self {
        if self.0.len() <= 1 {
            return Poly::zero();
        }
        let mut out = Vec::with_capacity(self.0.len() - 1);
        for (k, c) in self.0.iter().enumerate().skip(1) {
            out.push(c.mul(&K::from_int(k as i64)));
        }
        Poly::new(out)
    }

    /// Exact division with remainder (rhs nonzero).
    pub fn div_rem(&self, rhs: &Self) -> (Self, Self) {
        assert!(!rhs.is_zero(), "polynomial division by zero");
        let mut rem = self.clone();
        let mut quot = vec![K::zero(); self.0.len().saturating_sub(rhs.0.len()) + 1];
        let dlead = rhs.leading().unwrap().clone();
        while let (Some(rdeg), Some(ddeg)) = (rem.degree(), rhs.degree()) {
            if rdeg < ddeg || rem.is_zero() {
                break;
            }
            let factor = rem.leading().unwrap().div(&dlead);
            let shift = rdeg - ddeg;
            quot[shift] = quot[shift].add(&factor);
            let mut sub = vec![K::zero(); shift];
            sub.extend(rhs.0.iter().map(|c| c.mul(&factor)));
            rem = rem.sub(&Poly::new(sub));
            if rem.degree().map_or(true, |d| d < rdeg) {
                continue;
            } else {
                // numeric cancellation failed to lower the degree; force it
                let mut coeffs = rem.0.clone();
                coeffs.truncate(rdeg);
                rem = Poly::new(coeffs);
            }
        }
        (Poly::new(quot), rem)
    }

    /// Monic gcd by Euclid (exact coefficients only).
    pub fn gcd(&self, rhs: &Self) -> Self {
        assert!(K::EXACT, "gcd requires exact coefficients");
        let mut a = self.clone();
        let mut b = rhs.clone();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        if let Some(lead) = a.leading().cloned() {
            a = a.scale(&K::one().div(&lead));
        }
        a
    }

    pub fn roots(&self) -> Result<Vec<(K, usize)>, CycleError> {
        K::poly_roots(&self.0)
    }

    pub fn to_c64(&self) -> Poly<C64> {
        Poly::new(self.0.iter().map(|c| c.to_c64()).collect())
    }

    /// Parser-compatible rendering in the variable t.
    pub fn render(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut parts = Vec::new();
        for (k, c) in self.0.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let coeff = format!("({})", c.render());
            let part = match k {
                0 => coeff,
                1 => format!("{}*t", coeff),
                _ => format!("{}*t^{}", coeff, k),
            };
            parts.push(part);
        }
        parts.join(" + ")
    }
}

/// Value of a coordinate function on P¹.
#[derive(Clone, PartialEq, Debug)]
pub enum ProjValue<K> {
    Finite(K),
    Infinity,
}

impl<K: CycleScalar> ProjValue<K> {
    pub fn is_infinite(&self) -> bool {
        matches!(self, ProjValue::Infinity)
    }
}

/// Quotient of polynomials; denominator nonzero, normalized (reduced and
/// monic denominator in exact mode, monic denominator in numeric mode).
#[derive(Clone, PartialEq, Debug)]
pub struct RationalFunction<K: CycleScalar> {
    pub num: Poly<K>,
    pub den: Poly<K>,
}

impl<K: CycleScalar> RationalFunction<K> {
    pub fn new(num: Poly<K>, den: Poly<K>) -> Result<Self, CycleError> {
        if den.is_zero() {
            return Err(CycleError::Parse("zero denominator".into()));
        }
        let mut rf = RationalFunction { num, den };
        rf.normalize();
        Ok(rf)
    }

    pub fn constant(k: K) -> Self {
        RationalFunction { num: Poly::constant(k), den: Poly::one() }
    }

    pub fn t() -> Self {
        RationalFunction { num: Poly::t(), den: Poly::one() }
    }

    fn normalize(&mut self) {
        if K::EXACT && !self.num.is_zero() {
            let g = self.num.gcd(&self.den);
            if g.degree().map_or(false, |d| d > 0) {
                self.num = self.num.div_rem(&g).0;
                self.den = self.den.div_rem(&g).0;
            }
        }
        if let Some(lead) = self.den.leading().cloned() {
            let inv = K::one().div(&lead);
            self.num = self.num.scale(&inv);
            self.den = self.den.scale(&inv);
        }
    }

    pub fn is_constant(&self) -> bool {
        self.num.is_constant() && self.den.is_constant()
    }

    pub fn constant_value(&self) -> Option<K> {
        if self.is_constant() {
            let n = self.num.0.first().cloned().unwrap_or_else(K::zero);
            let d = self.den.0.first().cloned().unwrap_or_else(K::one);
            Some(n.div(&d))
        } else {
            None
        }
    }

    pub fn add(&self, rhs: &Self) -> Result<Self, CycleError> {
        RationalFunction::new(
            self.num.mul(&rhs.den).add(&rhs.num.mul(&self.den)),
            self.den.mul(&rhs.den),
        )
    }

    pub fn sub(&self, rhs: &Self) -> Result<Self, CycleError> {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> Self {
        RationalFunction { num: self.num.neg(), den: self.den.clone() }
    }

    pub fn mul(&self, rhs: &Self) -> Result<Self, CycleError> {
        RationalFunction::new(self.num.mul(&rhs.num), self.den.mul(&rhs.den))
    }

    pub fn div(&self, rhs: &Self) -> Result<Self, CycleError> {
        if rhs.num.is_zero() {
            return Err(CycleError::Parse("division by zero expression".into()));
        }
        RationalFunction::new(self.num.mul(&rhs.den), self.den.mul(&rhs.num))
    }

    pub fn pow(&self, e: i64) -> Result<Self, CycleError> {
        let mut base = if e >= 0 {
            self.clone()
        } else {
            RationalFunction::constant(K::one()).div(self)?
        };
        let mut exp = e.unsigned_abs();
        let mut acc = RationalFunction::constant(K::one());
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.mul(&base)?;
            }
            base = base.mul(&base)?;
            exp >>= 1;
        }
        Ok(acc)
    }

    pub fn eval(&self, t: &K) -> ProjValue<K> {
        let d = self.den.eval(t);
        if d.is_zero() {
            return ProjValue::Infinity;
        }
        ProjValue::Finite(self.num.eval(t).div(&d))
    }

    /// Value at t = ∞ from the degree comparison.
    pub fn eval_infinity(&self) -> ProjValue<K> {
        let dn = self.num.degree();
        let dd = self.den.degree();
        match (dn, dd) {
            (None, _) => ProjValue::Finite(K::zero()),
            (Some(_), None) => unreachable!("denominator nonzero"),
            (Some(a), Some(b)) => {
                if a > b {
                    ProjValue::Infinity
                } else if a < b {
                    ProjValue::Finite(K::zero())
                } else {
                    ProjValue::Finite(
                        self.num.leading().unwrap().div(self.den.leading().unwrap()),
                    )
                }
            }
        }
    }

    /// Multiplicity of the zero (ε=0) or pole (ε=∞) at t = ∞.
    pub fn infinity_multiplicity(&self, pole: bool) -> usize {
        let dn = self.num.degree().map(|d| d as i64).unwrap_or(i64::MIN);
        let dd = self.den.degree().map(|d| d as i64).unwrap_or(i64::MIN);
        let diff = dn - dd;
        if pole {
            diff.max(0) as usize
        } else {
            (-diff).max(0) as usize
        }
    }

    pub fn to_c64(&self) -> RationalFunction<C64> {
        RationalFunction { num: self.num.to_c64(), den: self.den.to_c64() }
    }

    /// dlog f = f'/f as a pair (numerator, denominator) of polynomials:
    /// (num' den − num den') / (num den).
    pub fn dlog_parts(&self) -> (Poly<K>, Poly<K>) {
        let n = self.num.derivative().mul(&self.den).sub(&self.num.mul(&self.den.derivative()));
        let d = self.num.mul(&self.den);
        (n, d)
    }

    /// The same function in the chart u = 1/t: f(1/u) as a rational function
    /// of u (both parts scaled by u^d, d = max degree).
    pub fn reciprocal_chart(&self) -> RationalFunction<K> {
        let d = self
            .num
            .degree()
            .unwrap_or(0)
            .max(self.den.degree().unwrap_or(0));
        let rev = |p: &Poly<K>| -> Poly<K> {
            let mut c = p.0.clone();
            c.resize(d + 1, K::zero());
            c.reverse();
            Poly::new(c)
        };
        RationalFunction { num: rev(&self.num), den: rev(&self.den) }
    }

    pub fn render(&self) -> String {
        if self.den.is_constant() {
            self.num.render()
        } else {
            format!("({}) / ({})", self.num.render(), self.den.render())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coefficients::rat;

    fn g(n: i64) -> GaussianRational {
        GaussianRational::from_int(n)
    }

    #[test]
    fn poly_arith() {
        let p = Poly::new(vec![g(1), g(2)]); // 1 + 2t
        let q = Poly::new(vec![g(-1), g(1)]); // t − 1
        assert_eq!(p.mul(&q), Poly::new(vec![g(-1), g(-1), g(2)]));
        let (quot, rem) = p.mul(&q).div_rem(&q);
        assert_eq!(quot, p);
        assert!(rem.is_zero());
    }

    #[test]
    fn exact_roots_linear_and_quadratic() {
        // t − 3
        let p = Poly::new(vec![g(-3), g(1)]);
        assert_eq!(p.roots().unwrap(), vec![(g(3), 1)]);
        // t² − 1 = (t−1)(t+1)
        let p = Poly::new(vec![g(-1), g(0), g(1)]);
        let roots = p.roots().unwrap();
        assert_eq!(roots.len(), 2);
        assert!(roots.iter().any(|(r, m)| *r == g(1) && *m == 1));
        assert!(roots.iter().any(|(r, m)| *r == g(-1) && *m == 1));
        // t² + 1 = (t−i)(t+i)
        let p = Poly::new(vec![g(1), g(0), g(1)]);
        let roots = p.roots().unwrap();
        assert!(roots.iter().any(|(r, _)| *r == GaussianRational::i()));
        // t² − 2 has no roots in Q(i)
        let p = Poly::new(vec![g(-2), g(0), g(1)]);
        assert!(p.roots().is_err());
        // t² · (t − 1) peels the zero roots but fails beyond degree 2? no: after
        // peeling it is degree 1
        let p = Poly::new(vec![g(0), g(0), g(-1), g(1)]);
        let roots = p.roots().unwrap();
        assert!(roots.contains(&(g(0), 2)));
        assert!(roots.contains(&(g(1), 1)));
    }

    #[test]
    fn numeric_roots() {
        // (t − 2)(t − i) = t² − (2+i)t + 2i
        let p = Poly::new(vec![C64::new(0.0, 2.0), C64::new(-2.0, -1.0), C64::new(1.0, 0.0)]);
        let roots = p.roots().unwrap();
        assert_eq!(roots.len(), 2);
        for (r, m) in roots {
            assert_eq!(m, 1);
            let near2 = (r - C64::new(2.0, 0.0)).norm() < 1e-9;
            let neari = (r - C64::new(0.0, 1.0)).norm() < 1e-9;
            assert!(near2 || neari, "unexpected root {}", r);
        }
    }

    #[test]
    fn rf_reduction_and_eval() {
        // (t² − t)/t reduces to t − 1
        let rf = RationalFunction::new(
            Poly::new(vec![g(0), g(-1), g(1)]),
            Poly::new(vec![g(0), g(1)]),
        )
        .unwrap();
        assert_eq!(rf.num, Poly::new(vec![g(-1), g(1)]));
        assert_eq!(rf.den, Poly::one());
        match rf.eval(&g(5)) {
            ProjValue::Finite(v) => assert_eq!(v, g(4)),
            _ => panic!(),
        }
    }

    #[test]
    fn rf_infinity() {
        // (t − a)/t → 1 at ∞
        let a = GaussianRational::new(rat(1, 2), rat(0, 1));
        let rf = RationalFunction::new(
            Poly::new(vec![a.neg(), g(1)]),
            Poly::t(),
        )
        .unwrap();
        assert_eq!(rf.eval_infinity(), ProjValue::Finite(g(1)));
        assert_eq!(rf.infinity_multiplicity(true), 0);
        // t has a pole at ∞
        let rf = RationalFunction::<GaussianRational>::t();
        assert!(rf.eval_infinity().is_infinite());
        assert_eq!(rf.infinity_multiplicity(true), 1);
    }

    #[test]
    fn render_round_trip_shape() {
        let rf = RationalFunction::new(
            Poly::new(vec![GaussianRational::new(rat(1, 2), rat(1, 3)), g(1)]),
            Poly::t(),
        )
        .unwrap();
        let s = rf.render();
        assert!(s.contains("t"), "{}", s);
    }
}
