//! Polynomial differential forms on the 1-simplex: the dg-algebra generated by
//! a degree-0 variable x, together with the evaluation map ev, its splitting s,
//! and the homotopy h witnessing s∘ev ≃ id.

use std::fmt;

use serde::Serialize;

use crate::coefficients::{RingScalar, TauScalar};

/// f(x) + g(x)·dx with dense coefficient lists (index = power of x).
/// dx² = 0 is enforced by the representation.
#[derive(Clone, PartialEq)]
pub struct PolyForm<C: RingScalar> {
    pub f: Vec<C>,
    pub g: Vec<C>,
}

impl<C: RingScalar> PolyForm<C> {
    pub fn zero() -> Self {
        PolyForm { f: vec![], g: vec![] }
    }

    pub fn new(f: Vec<C>, g: Vec<C>) -> Self {
        let mut p = PolyForm { f, g };
        p.normalize();
        p
    }

    pub fn constant(c: C) -> Self {
        PolyForm::new(vec![c], vec![])
    }

    pub fn one() -> Self {
        PolyForm::constant(C::one())
    }

    /// The monomial x^k.
    pub fn x_pow(k: usize) -> Self {
        let mut f = vec![C::zero(); k + 1];
        f[k] = C::one();
        PolyForm::new(f, vec![])
    }

    /// The monomial x^k dx.
    pub fn x_pow_dx(k: usize) -> Self {
        let mut g = vec![C::zero(); k + 1];
        g[k] = C::one();
        PolyForm::new(vec![], g)
    }

    /// 1 − x.
    pub fn one_minus_x() -> Self {
        PolyForm::new(vec![C::one(), C::one().neg()], vec![])
    }

    fn normalize(&mut self) {
        while self.f.last().map_or(false, |c| c.is_zero()) {
            self.f.pop();
        }
        while self.g.last().map_or(false, |c| c.is_zero()) {
            self.g.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.f.is_empty() && self.g.is_empty()
    }

    /// True if this is a constant 0-form (no x, no dx part).
    pub fn is_scalar(&self) -> bool {
        self.g.is_empty() && self.f.len() <= 1
    }

    pub fn scale(&self, c: &C) -> Self {
        PolyForm::new(
            self.f.iter().map(|a| a.mul(c)).collect(),
            self.g.iter().map(|a| a.mul(c)).collect(),
        )
    }

    pub fn add(&self, rhs: &Self) -> Self {
        PolyForm::new(add_poly(&self.f, &rhs.f), add_poly(&self.g, &rhs.g))
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> Self {
        PolyForm::new(
            self.f.iter().map(|c| c.neg()).collect(),
            self.g.iter().map(|c| c.neg()).collect(),
        )
    }

    /// Product in the dga: (f₁ + g₁dx)(f₂ + g₂dx) = f₁f₂ + (f₁g₂ + g₁f₂)dx.
    pub fn wedge(&self, rhs: &Self) -> Self {
        let f = mul_poly(&self.f, &rhs.f);
        let g = add_poly(&mul_poly(&self.f, &rhs.g), &mul_poly(&self.g, &rhs.f));
        PolyForm::new(f, g)
    }

    /// d(f + g dx) = f′(x) dx.
    pub fn differential(&self) -> Self {
        let mut g = Vec::with_capacity(self.f.len().saturating_sub(1));
        for (k, c) in self.f.iter().enumerate().skip(1) {
            let mut acc = C::zero();
            for _ in 0..k {
                acc = acc.add(c);
            }
            g.push(acc);
        }
        PolyForm::new(vec![], g)
    }

    /// f(ε) for ε ∈ {0, 1}; the dx part is discarded.
    pub fn evaluate_at(&self, endpoint: u8) -> C {
        match endpoint {
            0 => self.f.first().cloned().unwrap_or_else(C::zero),
            1 => self
                .f
                .iter()
                .fold(C::zero(), |acc, c| acc.add(c)),
            _ => panic!("simplex endpoint must be 0 or 1"),
        }
    }

    /// Fiber integration ∫₀¹: only the dx part contributes; 0-forms give 0.
    pub fn integrate_full(&self) -> C {
        let mut acc = C::zero();
        for (k, c) in self.g.iter().enumerate() {
            acc = acc.add(&c.div_int((k + 1) as u64));
        }
        acc
    }

    /// The 0-form G(x) = ∫₀ˣ g(u) du (G(0) = 0); 0-forms map to 0.
    pub fn integrate_partial(&self) -> Self {
        let mut f = vec![C::zero()];
        for (k, c) in self.g.iter().enumerate() {
            f.push(c.div_int((k + 1) as u64));
        }
        PolyForm::new(f, vec![])
    }

    /// ev: w ↦ (w(0), w(1), ∫₀¹ w).
    pub fn ev_map(&self) -> EvTriple<C> {
        EvTriple {
            at0: self.evaluate_at(0),
            at1: self.evaluate_at(1),
            integral: self.integrate_full(),
        }
    }

    /// Burgos Gil homotopy: h(f + g dx) = x·∫₀¹g − ∫₀ˣg, a 0-form.
    /// Satisfies dh + hd = s∘ev − id.
    pub fn homotopy_h(&self) -> Self {
        let total = self.integrate_full();
        let x_total = PolyForm::new(vec![C::zero(), total], vec![]);
        x_total.sub(&self.integrate_partial())
    }

    /// Homogeneous degree if any: Some(0) pure 0-form, Some(1) pure 1-form.
    pub fn homogeneous_degree(&self) -> Option<u8> {
        match (self.f.is_empty(), self.g.is_empty()) {
            (true, true) => Some(0),
            (false, true) => Some(0),
            (true, false) => Some(1),
            (false, false) => None,
        }
    }

    /// Degree-0 part (f) as its own form.
    pub fn part0(&self) -> Self {
        PolyForm::new(self.f.clone(), vec![])
    }

    /// Degree-1 part (g dx) as its own form.
    pub fn part1(&self) -> Self {
        PolyForm::new(vec![], self.g.clone())
    }
}

fn add_poly<C: RingScalar>(a: &[C], b: &[C]) -> Vec<C> {
    let n = a.len().max(b.len());
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let x = a.get(i).cloned().unwrap_or_else(C::zero);
        let y = b.get(i).cloned().unwrap_or_else(C::zero);
        out.push(x.add(&y));
    }
    out
}

fn mul_poly<C: RingScalar>(a: &[C], b: &[C]) -> Vec<C> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![C::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] = out[i + j].add(&x.mul(y));
        }
    }
    out
}

/// Image of ev: (w(0), w(1), ∫₀¹ w).
#[derive(Clone, PartialEq, Debug)]
pub struct EvTriple<C: RingScalar> {
    pub at0: C,
    pub at1: C,
    pub integral: C,
}

impl<C: RingScalar> EvTriple<C> {
    /// s: (a, b, c) ↦ (1−x)·a + x·b + dx·c. Splits ev exactly.
    pub fn split_s(&self) -> PolyForm<C> {
        PolyForm::new(
            vec![self.at0.clone(), self.at1.sub(&self.at0)],
            vec![self.integral.clone()],
        )
    }
}

/// Pretty-printer emitting forms like "(1 - 1*x^1) + (1*x^1) dx".
impl<C: RingScalar + fmt::Display> fmt::Display for PolyForm<C> {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn poly_str<C: RingScalar + fmt::Display>(coeffs: &[C]) -> String {
            let mut parts = Vec::new();
            for (k, c) in coeffs.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                if k == 0 {
                    parts.push(format!("{}", c));
                } else {
                    parts.push(format!("({})*x^{}", c, k));
                }
            }
            if parts.is_empty() {
                "0".to_string()
            } else {
                parts.join(" + ")
            }
        }
        if self.is_zero() {
            return write!(out, "0");
        }
        let mut pieces = Vec::new();
        if !self.f.is_empty() {
            pieces.push(poly_str(&self.f));
        }
        if !self.g.is_empty() {
            pieces.push(format!("({}) dx", poly_str(&self.g)));
        }
        write!(out, "{}", pieces.join(" + "))
    }
}

impl<C: RingScalar> fmt::Debug for PolyForm<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PolyForm {{ f: {:?}, g: {:?} }}", self.f, self.g)
    }
}

/// Serialized as {"f": [...], "g": [...]} per the external interface.
#[derive(Serialize)]
pub struct PolyFormJson {
    pub f: Vec<String>,
    pub g: Vec<String>,
}

impl PolyForm<TauScalar> {
    pub fn to_json(&self) -> PolyFormJson {
        PolyFormJson {
            f: self.f.iter().map(|c| c.to_string()).collect(),
            g: self.g.iter().map(|c| c.to_string()).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coefficients::{rat, rat_int, TauScalar};
    use proptest::prelude::*;

    type P = PolyForm<TauScalar>;

    fn x() -> P {
        P::x_pow(1)
    }
    fn dx() -> P {
        P::x_pow_dx(0)
    }
    fn one_minus_x() -> P {
        P::one_minus_x()
    }
    fn ts(n: i64, d: i64) -> TauScalar {
        TauScalar::from_rational(rat(n, d))
    }

    #[test]
    fn wedge_examples() {
        // x ∧ dx = x dx
        assert_eq!(x().wedge(&dx()), P::x_pow_dx(1));
        // dx ∧ dx = 0
        assert!(dx().wedge(&dx()).is_zero());
        // (1−x) ∧ (1−x) = 1 − 2x + x²
        let sq = one_minus_x().wedge(&one_minus_x());
        let expect = P::new(
            vec![TauScalar::from_int(1), TauScalar::from_int(-2), TauScalar::from_int(1)],
            vec![],
        );
        assert_eq!(sq, expect);
    }

    #[test]
    fn differential_examples() {
        assert_eq!(x().differential(), dx());
        // x(1−x)dx is top degree
        let top = x().wedge(&one_minus_x()).wedge(&dx());
        assert!(top.differential().is_zero());
        // d(1−x)² = −2(1−x)dx
        let d = one_minus_x().wedge(&one_minus_x()).differential();
        let expect = P::new(vec![], vec![TauScalar::from_int(-2), TauScalar::from_int(2)]);
        assert_eq!(d, expect);
    }

    #[test]
    fn evaluation_examples() {
        assert_eq!(one_minus_x().evaluate_at(0), TauScalar::from_int(1));
        assert_eq!(one_minus_x().evaluate_at(1), TauScalar::zero());
        let top = x().wedge(&one_minus_x()).wedge(&dx());
        assert_eq!(top.evaluate_at(0), TauScalar::zero());
    }

    #[test]
    fn integrate_beta_values() {
        // ∫₀¹ (1−x)^k x^(n−k−1) dx = k!(n−k−1)!/n!
        for n in 1..=8usize {
            for k in 0..n {
                let mut w = P::one();
                for _ in 0..k {
                    w = w.wedge(&one_minus_x());
                }
                w = w.wedge(&P::x_pow(n - k - 1)).wedge(&dx());
                let expect = beta_rational(k, n - k - 1);
                assert_eq!(w.integrate_full(), TauScalar::from_rational(expect));
            }
        }
        // x(1−x)dx → 1/6
        let w = x().wedge(&one_minus_x()).wedge(&dx());
        assert_eq!(w.integrate_full(), ts(1, 6));
        // (1−x)³ fiber-integrates to 0
        let w = one_minus_x().wedge(&one_minus_x()).wedge(&one_minus_x());
        assert_eq!(w.integrate_full(), TauScalar::zero());
    }

    fn beta_rational(k: usize, m: usize) -> crate::coefficients::Rational {
        // k! m! / (k+m+1)!
        let mut num = rat_int(1);
        for i in 1..=k {
            num = num * rat_int(i as i64);
        }
        for i in 1..=m {
            num = num * rat_int(i as i64);
        }
        let mut den = rat_int(1);
        for i in 1..=(k + m + 1) {
            den = den * rat_int(i as i64);
        }
        num / den
    }

    #[test]
    fn integrate_partial_examples() {
        assert_eq!(dx().integrate_partial(), x());
        let expect = P::new(vec![TauScalar::zero(), TauScalar::zero(), ts(1, 2)], vec![]);
        assert_eq!(P::x_pow_dx(1).integrate_partial(), expect);
        assert!(one_minus_x().integrate_partial().is_zero());
    }

    #[test]
    fn ev_examples() {
        let t = dx().ev_map();
        assert_eq!(
            (t.at0.clone(), t.at1.clone(), t.integral.clone()),
            (TauScalar::zero(), TauScalar::zero(), TauScalar::from_int(1))
        );
        let t = one_minus_x().ev_map();
        assert_eq!(t.at0, TauScalar::from_int(1));
        assert_eq!(t.at1, TauScalar::zero());
        assert_eq!(t.integral, TauScalar::zero());
        let t = x().wedge(&one_minus_x()).wedge(&dx()).ev_map();
        assert_eq!(t.integral, ts(1, 6));
    }

    #[test]
    fn split_examples() {
        let s = EvTriple {
            at0: TauScalar::from_int(1),
            at1: TauScalar::zero(),
            integral: TauScalar::zero(),
        }
        .split_s();
        assert_eq!(s, one_minus_x());
        let s = EvTriple {
            at0: TauScalar::zero(),
            at1: TauScalar::zero(),
            integral: TauScalar::from_int(1),
        }
        .split_s();
        assert_eq!(s, dx());
        let s = EvTriple {
            at0: TauScalar::from_int(1),
            at1: TauScalar::from_int(1),
            integral: TauScalar::zero(),
        }
        .split_s();
        assert_eq!(s, P::one());
    }

    #[test]
    fn homotopy_examples() {
        // h(x dx) = x/2 − x²/2
        let h = P::x_pow_dx(1).homotopy_h();
        let expect = P::new(vec![TauScalar::zero(), ts(1, 2), ts(-1, 2)], vec![]);
        assert_eq!(h, expect);
        // h of any 0-form is 0
        assert!(one_minus_x().homotopy_h().is_zero());
        // h(dx) = x·1 − x = 0
        assert!(dx().homotopy_h().is_zero());
    }

    fn check_homotopy_identity(w: &P) {
        // dh + hd = s∘ev − id
        let lhs = w.homotopy_h().differential().add(&w.differential().homotopy_h());
        let rhs = w.ev_map().split_s().sub(w);
        assert_eq!(lhs, rhs, "dh+hd != s∘ev−id on {:?}", w);
    }

    #[test]
    fn homotopy_identity_on_monomials() {
        for k in 0..=10usize {
            check_homotopy_identity(&P::x_pow(k));
            check_homotopy_identity(&P::x_pow_dx(k));
        }
    }

    #[test]
    fn split_is_chain_map_over_point() {
        // Over a point scalars are d-closed, so d_tot(a,b,c) = (0,0,b−a) and
        // split_s must intertwine: d(s(a,b,c)) = s(0,0,b−a).
        let t = EvTriple {
            at0: ts(2, 3),
            at1: ts(-1, 5),
            integral: ts(7, 2),
        };
        let lhs = t.split_s().differential();
        let rhs = EvTriple {
            at0: TauScalar::zero(),
            at1: TauScalar::zero(),
            integral: t.at1.sub(&t.at0),
        }
        .split_s();
        assert_eq!(lhs, rhs);
    }

    fn arb_polyform() -> impl Strategy<Value = P> {
        let coeff = (-6i64..=6, 1i64..=4).prop_map(|(n, d)| TauScalar::from_rational(rat(n, d)));
        (
            proptest::collection::vec(coeff.clone(), 0..6),
            proptest::collection::vec(coeff, 0..6),
        )
            .prop_map(|(f, g)| P::new(f, g))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn d_squared_zero(w in arb_polyform()) {
            prop_assert!(w.differential().differential().is_zero());
        }

        #[test]
        fn graded_leibniz(u in arb_polyform(), v in arb_polyform()) {
            for (up, sign_flip) in [(u.part0(), false), (u.part1(), true)] {
                let lhs = up.wedge(&v).differential();
                let dv_term = if sign_flip { up.wedge(&v.differential()).neg() } else { up.wedge(&v.differential()) };
                let rhs = up.differential().wedge(&v).add(&dv_term);
                prop_assert_eq!(lhs, rhs);
            }
        }

        #[test]
        fn ev_split_identity(a in -9i64..9, b in -9i64..9, c in -9i64..9) {
            let t = EvTriple {
                at0: TauScalar::from_int(a),
                at1: TauScalar::from_int(b),
                integral: TauScalar::from_int(c),
            };
            let back = t.split_s().ev_map();
            prop_assert_eq!(t, back);
        }

        #[test]
        fn homotopy_identity_random(w in arb_polyform()) {
            let lhs = w.homotopy_h().differential().add(&w.differential().homotopy_h());
            let rhs = w.ev_map().split_s().sub(&w);
            prop_assert_eq!(lhs, rhs);
        }
    }
}
