//! The 3-term total complex: total differential, Beilinson's α-product family,
//! and the exterior ⊠₀ product that builds R^n in the triple presentation.
//!
//! The total differential d(a, b, c) = (da, db, b − a − dc) is not printed in
//! the source material; it is forced by requiring the splitting s to be a
//! chain map, and is locked here by the dR¹ example.

use std::collections::BTreeMap;
use std::fmt;

use num::{One, Zero};

use crate::coefficients::Rational;
use crate::formal_currents::{FormalSum, FormalTriple};

/// What a slot of the 3-term complex must support.
pub trait SlotAlgebra: Clone + PartialEq + fmt::Debug {
    fn add(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
    fn scale(&self, q: &Rational) -> Self;
    /// The slot product (exterior ⊠ or intersection, depending on the model).
    fn mul(&self, rhs: &Self) -> Self;
    fn differential(&self) -> Self;
    fn is_zero(&self) -> bool;

    fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }
}

impl SlotAlgebra for FormalSum {
    fn add(&self, rhs: &Self) -> Self {
        FormalSum::add(self, rhs)
    }
    fn neg(&self) -> Self {
        FormalSum::neg(self)
    }
    fn scale(&self, q: &Rational) -> Self {
        self.scale_rational(q)
    }
    fn mul(&self, rhs: &Self) -> Self {
        self.boxtimes(rhs)
    }
    fn differential(&self) -> Self {
        FormalSum::differential(self)
    }
    fn is_zero(&self) -> bool {
        FormalSum::is_zero(self)
    }
}

/// Generic triple over any slot algebra, graded by the total degree r
/// (deg a = deg b = r, deg c = r − 1 when homogeneous).
#[derive(Clone, PartialEq, Debug)]
pub struct Triple<S: SlotAlgebra> {
    pub a: S,
    pub b: S,
    pub c: S,
    pub degree: i64,
}

impl<S: SlotAlgebra> Triple<S> {
    pub fn new(a: S, b: S, c: S, degree: i64) -> Self {
        Triple { a, b, c, degree }
    }

    /// d(a, b, c) = (da, db, b − a − dc); d² = 0.
    pub fn tot_differential(&self) -> Self {
        Triple {
            a: self.a.differential(),
            b: self.b.differential(),
            c: self.b.sub(&self.a).sub(&self.c.differential()),
            degree: self.degree + 1,
        }
    }

    /// Beilinson's product family: the 3×3 table with real parameter α.
    pub fn product_alpha(alpha: &Rational, t: &Self, u: &Self) -> Self {
        let (a, b, c) = product_alpha_parts(
            alpha,
            (&t.a, &t.b, &t.c, t.degree),
            (&u.a, &u.b, &u.c),
        );
        Triple { a, b, c, degree: t.degree + u.degree }
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero() && self.c.is_zero()
    }
}

/// The table, shared by the intersection and exterior versions:
/// (a∩ã, b∩b̃, α·c∩ã + (1−α)·c∩b̃ + (−1)^r[(1−α)·a∩c̃ + α·b∩c̃]).
fn product_alpha_parts<S: SlotAlgebra>(
    alpha: &Rational,
    (a, b, c, r): (&S, &S, &S, i64),
    (a2, b2, c2): (&S, &S, &S),
) -> (S, S, S) {
    let one_minus = Rational::one() - alpha;
    let mut third = c
        .mul(a2)
        .scale(alpha)
        .add(&c.mul(b2).scale(&one_minus));
    let mut right = a.mul(c2).scale(&one_minus).add(&b.mul(c2).scale(alpha));
    if r.rem_euclid(2) == 1 {
        right = right.neg();
    }
    third = third.add(&right);
    (a.mul(a2), b.mul(b2), third)
}

/// Exterior α-product on formal triples: the same table with slot-⊠.
pub fn boxtimes_alpha(alpha: &Rational, t: &FormalTriple, u: &FormalTriple) -> FormalTriple {
    let (a, b, c) = product_alpha_parts(
        alpha,
        (&t.a, &t.b, &t.c, t.degree),
        (&u.a, &u.b, &u.c),
    );
    FormalTriple { a, b, c, degree: t.degree + u.degree }
}

/// Total differential of a formal triple (slot differentials from the word
/// letter rules).
pub fn tot_differential(t: &FormalTriple) -> FormalTriple {
    FormalTriple {
        a: t.a.differential(),
        b: t.b.differential(),
        c: SlotAlgebra::sub(&SlotAlgebra::sub(&t.b, &t.a), &t.c.differential()),
        degree: t.degree + 1,
    }
}

// ---------------------------------------------------------------------------
// Free graded-commutative differential algebra on abstract generators: the
// minimal faithful model for testing the product laws, since the table's
// algebraic laws only use graded commutativity and associativity of the slot
// product.
// ---------------------------------------------------------------------------

/// Shared description of the generators: degree and image under d (another
/// generator index, or None for closed generators).
#[derive(Clone, Debug, PartialEq)]
pub struct GcaRing {
    pub degrees: Vec<u32>,
    pub d_of: Vec<Option<usize>>,
}

impl GcaRing {
    pub fn new(degrees: Vec<u32>, d_of: Vec<Option<usize>>) -> Self {
        assert_eq!(degrees.len(), d_of.len());
        for (i, d) in d_of.iter().enumerate() {
            if let Some(j) = d {
                assert_eq!(degrees[*j], degrees[i] + 1, "d must raise degree by 1");
            }
        }
        GcaRing { degrees, d_of }
    }

    /// A ring where every generator g_i gets a closed partner Dg_i = d(g_i).
    /// Returns the ring and the indices of the base generators.
    pub fn with_differentials(base_degrees: &[u32]) -> (Self, Vec<usize>) {
        let n = base_degrees.len();
        let mut degrees = Vec::with_capacity(2 * n);
        let mut d_of = Vec::with_capacity(2 * n);
        for &d in base_degrees {
            degrees.push(d);
            d_of.push(Some(n + degrees.len() - 1));
        }
        for &d in base_degrees {
            degrees.push(d + 1);
            d_of.push(None);
        }
        // fix partner indices: base i ↦ n + i
        for (i, slot) in d_of.iter_mut().enumerate().take(n) {
            *slot = Some(n + i);
        }
        (GcaRing::new(degrees, d_of), (0..n).collect())
    }
}

/// Element of the free graded-commutative algebra: monomials are sorted lists
/// of generator indices (odd generators square to zero).
#[derive(Clone, PartialEq, Debug)]
pub struct GcaElement {
    pub ring: GcaRing,
    pub terms: BTreeMap<Vec<usize>, Rational>,
}

impl GcaElement {
    pub fn zero(ring: &GcaRing) -> Self {
        GcaElement { ring: ring.clone(), terms: BTreeMap::new() }
    }

    pub fn one(ring: &GcaRing) -> Self {
        let mut e = GcaElement::zero(ring);
        e.terms.insert(vec![], Rational::one());
        e
    }

    pub fn generator(ring: &GcaRing, i: usize) -> Self {
        let mut e = GcaElement::zero(ring);
        e.terms.insert(vec![i], Rational::one());
        e
    }

    fn add_term(&mut self, mono: Vec<usize>, q: Rational) {
        if q.is_zero() {
            return;
        }
        let became_zero = match self.terms.get_mut(&mono) {
            Some(entry) => {
                *entry += q;
                entry.is_zero()
            }
            None => {
                self.terms.insert(mono.clone(), q);
                false
            }
        };
        if became_zero {
            self.terms.remove(&mono);
        }
    }

    /// Sort a raw index list into the canonical monomial, tracking the Koszul
    /// sign; odd repeats kill the term.
    fn normalize_monomial(&self, mut idx: Vec<usize>) -> Option<(Vec<usize>, bool)> {
        let deg = |i: usize| self.ring.degrees[i];
        let mut sign = false;
        // insertion sort counting odd-odd swaps
        for i in 1..idx.len() {
            let mut j = i;
            while j > 0 && idx[j - 1] > idx[j] {
                if deg(idx[j - 1]) % 2 == 1 && deg(idx[j]) % 2 == 1 {
                    sign = !sign;
                }
                idx.swap(j - 1, j);
                j -= 1;
            }
        }
        // odd generator repeated => square zero
        for w in idx.windows(2) {
            if w[0] == w[1] && deg(w[0]) % 2 == 1 {
                return None;
            }
        }
        Some((idx, sign))
    }

    pub fn degree_of_monomial(&self, mono: &[usize]) -> u32 {
        mono.iter().map(|&i| self.ring.degrees[i]).sum()
    }
}

impl SlotAlgebra for GcaElement {
    fn add(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        for (m, q) in &rhs.terms {
            out.add_term(m.clone(), q.clone());
        }
        out
    }

    fn neg(&self) -> Self {
        let mut out = GcaElement::zero(&self.ring);
        for (m, q) in &self.terms {
            out.terms.insert(m.clone(), -q);
        }
        out
    }

    fn scale(&self, q: &Rational) -> Self {
        let mut out = GcaElement::zero(&self.ring);
        if q.is_zero() {
            return out;
        }
        for (m, c) in &self.terms {
            out.terms.insert(m.clone(), c * q);
        }
        out
    }

    fn mul(&self, rhs: &Self) -> Self {
        let mut out = GcaElement::zero(&self.ring);
        for (ma, qa) in &self.terms {
            for (mb, qb) in &rhs.terms {
                let mut raw = ma.clone();
                raw.extend_from_slice(mb);
                if let Some((mono, sign)) = self.normalize_monomial(raw) {
                    let q = if sign { -(qa * qb) } else { qa * qb };
                    out.add_term(mono, q);
                }
            }
        }
        out
    }

    fn differential(&self) -> Self {
        let mut out = GcaElement::zero(&self.ring);
        for (mono, q) in &self.terms {
            let mut prefix_deg = 0u32;
            for (pos, &g) in mono.iter().enumerate() {
                if let Some(dg) = self.ring.d_of[g] {
                    let mut raw = mono.clone();
                    raw[pos] = dg;
                    if let Some((m, sign)) = self.normalize_monomial(raw) {
                        let flip = (prefix_deg % 2 == 1) != sign;
                        let coeff = if flip { -q } else { q.clone() };
                        out.add_term(m, coeff);
                    }
                }
                prefix_deg += self.ring.degrees[g];
            }
        }
        out
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}
