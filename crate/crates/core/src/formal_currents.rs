//! Exact combinatorial model of currents on the compactified n-cube as tensor
//! words over the alphabet {ℝ⁻, dlog, log, [0], [∞]}, with τ-graded polynomial
//! coefficients from the 1-simplex.
//!
//! Words are stored in the cohomological convention: [l₁, …, lₙ] denotes the
//! exterior product l₁ ⊠ … ⊠ lₙ with slot i carrying the cube coordinate z_i.

use std::collections::BTreeMap;
use std::fmt;

use itertools::Itertools;
use num::{BigInt, One, Zero};

use crate::coefficients::{Rational, TauScalar};
use crate::simplex_forms::PolyForm;

/// Generator currents on one cube factor.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Letter {
    /// The chain of integration over ℝ⁻ = [−∞, 0], degree 1.
    RNeg,
    /// The 1-form current dlog z, degree 1.
    DLog,
    /// The 0-form current log z (branched over ℝ⁻), degree 0.
    Log,
    /// The point current [0], degree 2.
    Pt0,
    /// The point current [∞], degree 2.
    PtInf,
}

impl Letter {
    pub fn degree(self) -> u32 {
        match self {
            Letter::RNeg | Letter::DLog => 1,
            Letter::Log => 0,
            Letter::Pt0 | Letter::PtInf => 2,
        }
    }

    fn is_odd(self) -> bool {
        self.degree() % 2 == 1
    }

    pub fn name(self) -> &'static str {
        match self {
            Letter::RNeg => "RNEG",
            Letter::DLog => "DLOG",
            Letter::Log => "LOG",
            Letter::Pt0 => "PT0",
            Letter::PtInf => "PTINF",
        }
    }
}

/// Ordered sequence of letters; slot i holds the current in coordinate z_i.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Word(pub Vec<Letter>);

impl Word {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|l| l.degree()).sum()
    }

    pub fn count(&self, l: Letter) -> usize {
        self.0.iter().filter(|&&x| x == l).count()
    }
}

/// Exact linear combination of same-length words with PolyForm coefficients.
#[derive(Clone, PartialEq)]
pub struct FormalSum {
    n: usize,
    terms: BTreeMap<Word, PolyForm<TauScalar>>,
}

impl FormalSum {
    pub fn zero(n: usize) -> Self {
        FormalSum { n, terms: BTreeMap::new() }
    }

    /// The empty-word unit of the ⊠ algebra.
    pub fn unit() -> Self {
        let mut s = FormalSum::zero(0);
        s.terms.insert(Word(vec![]), PolyForm::one());
        s
    }

    pub fn slots(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &PolyForm<TauScalar>)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, w: &Word) -> PolyForm<TauScalar> {
        self.terms.get(w).cloned().unwrap_or_else(PolyForm::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// All coefficients constant 0-forms (the shape of triple-slot sums).
    pub fn has_scalar_coefficients(&self) -> bool {
        self.terms.values().all(|c| c.is_scalar())
    }

    pub fn add_term(&mut self, w: Word, c: PolyForm<TauScalar>) {
        assert_eq!(w.len(), self.n, "word length must match slot count");
        if c.is_zero() {
            return;
        }
        let became_zero = match self.terms.get_mut(&w) {
            Some(entry) => {
                *entry = entry.add(&c);
                entry.is_zero()
            }
            None => {
                self.terms.insert(w.clone(), c);
                false
            }
        };
        if became_zero {
            self.terms.remove(&w);
        }
    }

    pub fn from_terms(n: usize, terms: Vec<(Word, PolyForm<TauScalar>)>) -> Self {
        let mut s = FormalSum::zero(n);
        for (w, c) in terms {
            s.add_term(w, c);
        }
        s
    }

    pub fn single(w: Word, c: PolyForm<TauScalar>) -> Self {
        let n = w.len();
        FormalSum::from_terms(n, vec![(w, c)])
    }

    pub fn add(&self, rhs: &Self) -> Self {
        assert_eq!(self.n, rhs.n);
        let mut out = self.clone();
        for (w, c) in &rhs.terms {
            out.add_term(w.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> Self {
        let mut out = FormalSum::zero(self.n);
        for (w, c) in &self.terms {
            out.terms.insert(w.clone(), c.neg());
        }
        out
    }

    pub fn scale(&self, s: &TauScalar) -> Self {
        let mut out = FormalSum::zero(self.n);
        for (w, c) in &self.terms {
            let sc = c.scale(s);
            if !sc.is_zero() {
                out.terms.insert(w.clone(), sc);
            }
        }
        out
    }

    pub fn scale_rational(&self, q: &Rational) -> Self {
        self.scale(&TauScalar::from_rational(q.clone()))
    }

    /// Wedge every coefficient with a simplex form.
    pub fn mul_form(&self, form: &PolyForm<TauScalar>) -> Self {
        let mut out = FormalSum::zero(self.n);
        for (w, c) in &self.terms {
            let fc = form.wedge(c);
            if !fc.is_zero() {
                out.terms.insert(w.clone(), fc);
            }
        }
        out
    }

    /// Homogeneous total degree (form degree + word degree), if homogeneous.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut deg = None;
        for (w, c) in &self.terms {
            for (part, pd) in [(c.part0(), 0u32), (c.part1(), 1u32)] {
                if part.is_zero() {
                    continue;
                }
                let d = w.degree() + pd;
                match deg {
                    None => deg = Some(d),
                    Some(existing) if existing == d => {}
                    _ => return None,
                }
            }
        }
        deg
    }

    /// Number of words whose coefficient has a nonzero dx-degree-i part.
    pub fn term_count_by_dx_degree(&self, i: u8) -> usize {
        self.terms
            .values()
            .filter(|c| match i {
                0 => !c.part0().is_zero(),
                1 => !c.part1().is_zero(),
                _ => false,
            })
            .count()
    }

    /// Exterior product: slot concatenation with the Koszul sign between the
    /// second factor's form degree and the first factor's word degree.
    pub fn boxtimes(&self, rhs: &Self) -> Self {
        let mut out = FormalSum::zero(self.n + rhs.n);
        for (wa, ca) in &self.terms {
            let sign_flip = wa.degree() % 2 == 1;
            for (wb, cb) in &rhs.terms {
                let mut word = wa.0.clone();
                word.extend_from_slice(&wb.0);
                // coefficient: ca ∧ cb with (−1)^{|gb part|·deg(wa)}
                let part0 = ca.wedge(&cb.part0());
                let part1 = ca.wedge(&cb.part1());
                let coeff = if sign_flip {
                    part0.sub(&part1)
                } else {
                    part0.add(&part1)
                };
                out.add_term(Word(word), coeff);
            }
        }
        out
    }

    /// Total differential: d_x on coefficients plus the current differential
    /// with rules d(log) = dlog − τ·ℝ⁻, d(ℝ⁻) = [0] − [∞], d(dlog) = τ([0] − [∞]),
    /// extended across slots by graded Leibniz.
    pub fn differential(&self) -> Self {
        let mut out = FormalSum::zero(self.n);
        for (w, c) in &self.terms {
            // d_x part
            out.add_term(w.clone(), c.differential());
            // current part, with (−1)^{form degree} passing d over the coefficient
            let c_signed = c.part0().sub(&c.part1());
            let mut prefix_deg = 0u32;
            for (i, l) in w.0.iter().enumerate() {
                let slot_sign = prefix_deg % 2 == 1;
                for (sub, scalar) in letter_differential(*l) {
                    let mut word = w.0.clone();
                    word[i] = sub;
                    let mut coeff = c_signed.scale(&scalar);
                    if slot_sign {
                        coeff = coeff.neg();
                    }
                    out.add_term(Word(word), coeff);
                }
                prefix_deg += l.degree();
            }
        }
        out
    }

    /// Push forward along a permutation of the slots (g[i] = target of slot i).
    /// Sign is the Koszul sign of reordering the odd-degree letters.
    pub fn permute_push(&self, g: &[usize]) -> Self {
        assert_eq!(g.len(), self.n, "permutation size mismatch");
        let mut out = FormalSum::zero(self.n);
        for (w, c) in &self.terms {
            let mut word = vec![Letter::Log; self.n];
            for (i, l) in w.0.iter().enumerate() {
                word[g[i]] = *l;
            }
            let mut sign = false;
            for i in 0..self.n {
                for j in (i + 1)..self.n {
                    if g[i] > g[j] && w.0[i].is_odd() && w.0[j].is_odd() {
                        sign = !sign;
                    }
                }
            }
            let coeff = if sign { c.neg() } else { c.clone() };
            out.add_term(Word(word), coeff);
        }
        out
    }

    /// The alternation projector (1/n!) Σ_g sgn(g) · g_*.
    pub fn alt_push(&self) -> Self {
        let n = self.n;
        let mut acc = FormalSum::zero(n);
        for perm in (0..n).permutations(n) {
            let pushed = self.permute_push(&perm);
            if perm_sign(&perm) {
                acc = acc.sub(&pushed);
            } else {
                acc = acc.add(&pushed);
            }
        }
        let inv_fact = Rational::new(BigInt::one(), factorial(n));
        acc.scale_rational(&inv_fact)
    }

    /// Apply ev coefficientwise, producing a triple of scalar-coefficient sums.
    pub fn ev_words(&self) -> FormalTriple {
        let mut a = FormalSum::zero(self.n);
        let mut b = FormalSum::zero(self.n);
        let mut c = FormalSum::zero(self.n);
        for (w, coeff) in &self.terms {
            let ev = coeff.ev_map();
            a.add_term(w.clone(), PolyForm::constant(ev.at0));
            b.add_term(w.clone(), PolyForm::constant(ev.at1));
            c.add_term(w.clone(), PolyForm::constant(ev.integral));
        }
        let degree = self.homogeneous_degree().map(|d| d as i64);
        FormalTriple { a, b, c, degree: degree.unwrap_or(0) }
    }
}

fn letter_differential(l: Letter) -> Vec<(Letter, TauScalar)> {
    match l {
        Letter::Log => vec![
            (Letter::DLog, TauScalar::one()),
            (Letter::RNeg, -&TauScalar::tau_pow(1, Rational::one())),
        ],
        Letter::RNeg => vec![
            (Letter::Pt0, TauScalar::one()),
            (Letter::PtInf, TauScalar::from_int(-1)),
        ],
        Letter::DLog => vec![
            (Letter::Pt0, TauScalar::tau_pow(1, Rational::one())),
            (Letter::PtInf, -&TauScalar::tau_pow(1, Rational::one())),
        ],
        Letter::Pt0 | Letter::PtInf => vec![],
    }
}

/// Parity of a permutation given in image form; true = odd.
pub fn perm_sign(g: &[usize]) -> bool {
    let mut inversions = 0usize;
    for i in 0..g.len() {
        for j in (i + 1)..g.len() {
            if g[i] > g[j] {
                inversions += 1;
            }
        }
    }
    inversions % 2 == 1
}

pub fn factorial(n: usize) -> BigInt {
    let mut acc = BigInt::one();
    for k in 2..=n {
        acc *= BigInt::from(k);
    }
    acc
}

/// Element of the 3-term complex with FormalSum slots; deg c = degree − 1.
#[derive(Clone, PartialEq)]
pub struct FormalTriple {
    pub a: FormalSum,
    pub b: FormalSum,
    pub c: FormalSum,
    pub degree: i64,
}

impl FormalTriple {
    pub fn new(a: FormalSum, b: FormalSum, c: FormalSum, degree: i64) -> Self {
        debug_assert!(a.has_scalar_coefficients());
        debug_assert!(b.has_scalar_coefficients());
        debug_assert!(c.has_scalar_coefficients());
        FormalTriple { a, b, c, degree }
    }

    pub fn slots(&self) -> usize {
        self.a.slots()
    }

    pub fn add(&self, rhs: &Self) -> Self {
        FormalTriple {
            a: self.a.add(&rhs.a),
            b: self.b.add(&rhs.b),
            c: self.c.add(&rhs.c),
            degree: self.degree,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero() && self.c.is_zero()
    }

    /// Slotwise alternation.
    pub fn alt_push(&self) -> Self {
        FormalTriple {
            a: self.a.alt_push(),
            b: self.b.alt_push(),
            c: self.c.alt_push(),
            degree: self.degree,
        }
    }

    /// Alternation of the connecting slot only: (id, id, alt).
    pub fn alt_third(&self) -> Self {
        FormalTriple {
            a: self.a.clone(),
            b: self.b.clone(),
            c: self.c.alt_push(),
            degree: self.degree,
        }
    }

    /// s: (a,b,c) ↦ (1−x)⊗a + x⊗b + dx⊗c, a path-model element.
    pub fn split_s(&self) -> FormalSum {
        let one_minus_x = PolyForm::one_minus_x();
        let x = PolyForm::x_pow(1);
        let dx = PolyForm::x_pow_dx(0);
        self.a
            .mul_form(&one_minus_x)
            .add(&self.b.mul_form(&x))
            .add(&self.c.mul_form(&dx))
    }
}

/// R¹ in the path model: (1−x)·τ·[ℝ⁻] + x·[dlog] + dx·[log].
pub fn r1_path() -> FormalSum {
    FormalSum::from_terms(
        1,
        vec![
            (
                Word(vec![Letter::RNeg]),
                PolyForm::one_minus_x().scale(&TauScalar::tau_pow(1, Rational::one())),
            ),
            (Word(vec![Letter::DLog]), PolyForm::x_pow(1)),
            (Word(vec![Letter::Log]), PolyForm::x_pow_dx(0)),
        ],
    )
}

/// R¹ in the 3-term model: (τ·[ℝ⁻], [dlog z], [log z]).
pub fn r1_triple() -> FormalTriple {
    FormalTriple::new(
        FormalSum::single(
            Word(vec![Letter::RNeg]),
            PolyForm::constant(TauScalar::tau_pow(1, Rational::one())),
        ),
        FormalSum::single(Word(vec![Letter::DLog]), PolyForm::one()),
        FormalSum::single(Word(vec![Letter::Log]), PolyForm::one()),
        1,
    )
}

/// n-fold ⊠-power of R¹ in the path model.
pub fn build_rp(n: usize) -> FormalSum {
    assert!(n >= 1, "build_rp needs n >= 1");
    let r1 = r1_path();
    let mut acc = r1.clone();
    for _ in 1..n {
        acc = acc.boxtimes(&r1);
    }
    acc
}

/// n-fold ⊠₀-power of R¹ in the 3-term model.
pub fn build_rc(n: usize) -> FormalTriple {
    assert!(n >= 1, "build_rc needs n >= 1");
    let r1 = r1_triple();
    let mut acc = r1.clone();
    for _ in 1..n {
        acc = crate::three_term::boxtimes_alpha(&Rational::zero(), &acc, &r1);
    }
    acc
}

/// Closed formula T^n = τ^n [ℝ⁻, …, ℝ⁻].
pub fn closed_tn(n: usize) -> FormalSum {
    FormalSum::single(
        Word(vec![Letter::RNeg; n]),
        PolyForm::constant(TauScalar::tau_pow(n as i64, Rational::one())),
    )
}

/// Closed formula Ω^n = [dlog, …, dlog].
pub fn closed_omega(n: usize) -> FormalSum {
    FormalSum::single(Word(vec![Letter::DLog; n]), PolyForm::one())
}

/// Closed formula L^n = Σ_k (−τ)^k [ℝ⁻^k, log, dlog^{n−k−1}].
pub fn closed_ln(n: usize) -> FormalSum {
    let mut out = FormalSum::zero(n);
    for k in 0..n {
        let mut word = vec![Letter::RNeg; k];
        word.push(Letter::Log);
        word.extend(vec![Letter::DLog; n - k - 1]);
        let mut q = Rational::one();
        if k % 2 == 1 {
            q = -q;
        }
        out.add_term(Word(word), PolyForm::constant(TauScalar::tau_pow(k as i64, q)));
    }
    out
}

impl fmt::Display for FormalSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        // dx-degree 0 terms first, mirroring the paper's display order
        let mut ordered: Vec<_> = self.terms.iter().collect();
        ordered.sort_by_key(|(w, c)| (!c.part1().is_zero(), (*w).clone()));
        for (w, c) in ordered {
            if !first {
                write!(f, "\n+ ")?;
            }
            write!(f, "[{}] {}", render_word(w, self.n), c)?;
            first = false;
        }
        Ok(())
    }
}

impl fmt::Debug for FormalSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Debug for FormalTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(\n{:?},\n{:?},\n{:?}\n)", self.a, self.b, self.c)
    }
}

/// Human-readable word rendering mirroring the paper's notation.
pub fn render_word(w: &Word, n: usize) -> String {
    let parts: Vec<String> = w
        .0
        .iter()
        .enumerate()
        .map(|(i, l)| {
            let z = if n == 1 { "z".to_string() } else { format!("z{}", i + 1) };
            match l {
                Letter::RNeg => "ℝ⁻".to_string(),
                Letter::DLog => format!("dlog {}", z),
                Letter::Log => format!("log {}", z),
                Letter::Pt0 => format!("[0]_{}", i + 1),
                Letter::PtInf => format!("[∞]_{}", i + 1),
            }
        })
        .collect();
    parts.join(" ⊠ ")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coefficients::rat;
    use proptest::prelude::*;

    fn tau(k: i64) -> TauScalar {
        TauScalar::tau_pow(k, Rational::one())
    }

    fn w(ls: &[Letter]) -> Word {
        Word(ls.to_vec())
    }

    use Letter::{DLog as D, Log as L, Pt0, PtInf, RNeg as R};

    /// R² transcribed from the printed display (τ-powers made explicit).
    fn printed_r2() -> FormalSum {
        let x = PolyForm::<TauScalar>::x_pow(1);
        let mx = PolyForm::<TauScalar>::one_minus_x();
        let dx = PolyForm::<TauScalar>::x_pow_dx(0);
        let x2 = x.wedge(&x);
        let mx2 = mx.wedge(&mx);
        let xmx = x.wedge(&mx);
        let xdx = x.wedge(&dx);
        let mxdx = mx.wedge(&dx);
        FormalSum::from_terms(
            2,
            vec![
                (w(&[R, R]), mx2.scale(&tau(2))),
                (w(&[D, D]), x2.clone()),
                (w(&[R, D]), xmx.scale(&tau(1))),
                (w(&[D, R]), xmx.scale(&tau(1))),
                (w(&[L, D]), xdx.clone()),
                (w(&[D, L]), xdx.neg()),
                (w(&[L, R]), mxdx.scale(&tau(1))),
                (w(&[R, L]), mxdx.scale(&tau(1)).neg()),
            ],
        )
    }

    /// R³ transcribed from the printed display.
    fn printed_r3() -> FormalSum {
        let x = PolyForm::<TauScalar>::x_pow(1);
        let mx = PolyForm::<TauScalar>::one_minus_x();
        let dx = PolyForm::<TauScalar>::x_pow_dx(0);
        let x2 = x.wedge(&x);
        let x3 = x2.wedge(&x);
        let mx2 = mx.wedge(&mx);
        let mx3 = mx2.wedge(&mx);
        let mx2x = mx2.wedge(&x);
        let mxx2 = mx.wedge(&x2);
        let x2dx = x2.wedge(&dx);
        let mxxdx = mx.wedge(&x).wedge(&dx);
        let mx2dx = mx2.wedge(&dx);
        FormalSum::from_terms(
            3,
            vec![
                (w(&[R, R, R]), mx3.scale(&tau(3))),
                (w(&[R, R, D]), mx2x.scale(&tau(2))),
                (w(&[R, D, R]), mx2x.scale(&tau(2))),
                (w(&[D, R, R]), mx2x.scale(&tau(2))),
                (w(&[R, D, D]), mxx2.scale(&tau(1))),
                (w(&[D, R, D]), mxx2.scale(&tau(1))),
                (w(&[D, D, R]), mxx2.scale(&tau(1))),
                (w(&[D, D, D]), x3),
                (w(&[L, D, D]), x2dx.clone()),
                (w(&[D, L, D]), x2dx.neg()),
                (w(&[D, D, L]), x2dx.clone()),
                (w(&[L, R, D]), mxxdx.scale(&tau(1))),
                (w(&[R, L, D]), mxxdx.scale(&tau(1)).neg()),
                (w(&[R, D, L]), mxxdx.scale(&tau(1))),
                (w(&[L, D, R]), mxxdx.scale(&tau(1))),
                (w(&[D, L, R]), mxxdx.scale(&tau(1)).neg()),
                (w(&[D, R, L]), mxxdx.scale(&tau(1))),
                (w(&[L, R, R]), mx2dx.scale(&tau(2))),
                (w(&[R, L, R]), mx2dx.scale(&tau(2)).neg()),
                (w(&[R, R, L]), mx2dx.scale(&tau(2))),
            ],
        )
    }

    #[test]
    fn r1_display_matches() {
        let r1 = build_rp(1);
        assert_eq!(
            r1.coefficient(&w(&[R])),
            PolyForm::one_minus_x().scale(&tau(1))
        );
        assert_eq!(r1.coefficient(&w(&[D])), PolyForm::x_pow(1));
        assert_eq!(r1.coefficient(&w(&[L])), PolyForm::x_pow_dx(0));
        assert_eq!(r1.num_terms(), 3);
    }

    #[test]
    fn r2_matches_printed_display() {
        assert_eq!(build_rp(2), printed_r2());
    }

    #[test]
    fn r3_matches_printed_display() {
        assert_eq!(build_rp(3), printed_r3());
    }

    #[test]
    fn rc2_matches_printed_display() {
        let rc2 = build_rc(2);
        assert_eq!(rc2.a, closed_tn(2));
        assert_eq!(rc2.b, closed_omega(2));
        // L² = [log, dlog] − τ[ℝ⁻, log]
        let expect = FormalSum::from_terms(
            2,
            vec![
                (w(&[L, D]), PolyForm::one()),
                (w(&[R, L]), PolyForm::constant(-&tau(1))),
            ],
        );
        assert_eq!(rc2.c, expect);
    }

    #[test]
    fn rc3_matches_printed_display() {
        let rc3 = build_rc(3);
        assert_eq!(rc3.a, closed_tn(3));
        assert_eq!(rc3.b, closed_omega(3));
        let expect = FormalSum::from_terms(
            3,
            vec![
                (w(&[L, D, D]), PolyForm::one()),
                (w(&[R, L, D]), PolyForm::constant(-&tau(1))),
                (w(&[R, R, L]), PolyForm::constant(tau(2))),
            ],
        );
        assert_eq!(rc3.c, expect);
    }

    #[test]
    fn rc_matches_closed_formulas_up_to_6() {
        for n in 1..=6 {
            let rc = build_rc(n);
            assert_eq!(rc.a, closed_tn(n), "T^{}", n);
            assert_eq!(rc.b, closed_omega(n), "Omega^{}", n);
            assert_eq!(rc.c, closed_ln(n), "L^{}", n);
        }
    }

    #[test]
    fn term_counts() {
        for n in 1..=10usize {
            let rp = build_rp(n);
            assert_eq!(rp.term_count_by_dx_degree(0), 1usize << n, "dx^0 count at n={}", n);
            assert_eq!(
                rp.term_count_by_dx_degree(1),
                n * (1usize << (n - 1)),
                "dx^1 count at n={}",
                n
            );
        }
    }

    #[test]
    fn boxtimes_unit() {
        let a = build_rp(2);
        assert_eq!(FormalSum::unit().boxtimes(&a), a);
        assert_eq!(a.boxtimes(&FormalSum::unit()), a);
    }

    #[test]
    fn d_r1_is_divisor_class() {
        // dR¹ = τ([0] − [∞])
        let d = build_rp(1).differential();
        let expect = FormalSum::from_terms(
            1,
            vec![
                (w(&[Pt0]), PolyForm::constant(tau(1))),
                (w(&[PtInf]), PolyForm::constant(-&tau(1))),
            ],
        );
        assert_eq!(d, expect);
    }

    /// Independent oracle: Σ_{i=1}^n (−1)^{i+1} · (insert τ([0]−[∞]) at slot i
    /// into R^{n−1}).
    fn face_insertion_sum(n: usize) -> FormalSum {
        let base = if n == 1 { FormalSum::unit() } else { build_rp(n - 1) };
        let mut acc = FormalSum::zero(n);
        for i in 0..n {
            for (pt, sc) in [(Pt0, tau(1)), (PtInf, -&tau(1))] {
                let mut inserted = FormalSum::zero(n);
                for (word, coeff) in base.terms() {
                    let mut ls = word.0.clone();
                    ls.insert(i, pt);
                    inserted.add_term(Word(ls), coeff.scale(&sc));
                }
                if i % 2 == 1 {
                    inserted = inserted.neg();
                }
                acc = acc.add(&inserted);
            }
        }
        acc
    }

    #[test]
    fn differential_matches_face_insertion() {
        for n in 1..=6 {
            assert_eq!(build_rp(n).differential(), face_insertion_sum(n), "n={}", n);
        }
    }

    #[test]
    fn d_squared_zero_on_rp() {
        for n in 1..=6 {
            assert!(build_rp(n).differential().differential().is_zero(), "n={}", n);
        }
    }

    #[test]
    fn closed_word_of_dlogs() {
        let s = FormalSum::single(w(&[D, D]), PolyForm::one());
        assert!(s.differential().differential().is_zero());
        // d[dlog, dlog] is not zero (each dlog hits τ([0]−[∞])) but d² is.
    }

    #[test]
    fn permute_examples() {
        let swap = vec![1usize, 0];
        let s = FormalSum::single(w(&[L, D]), PolyForm::one());
        assert_eq!(
            s.permute_push(&swap),
            FormalSum::single(w(&[D, L]), PolyForm::one())
        );
        let s = FormalSum::single(w(&[D, D]), PolyForm::one());
        assert_eq!(
            s.permute_push(&swap),
            FormalSum::single(w(&[D, D]), PolyForm::one()).neg()
        );
        let id = vec![0usize, 1];
        let s = printed_r2();
        assert_eq!(s.permute_push(&id), s);
    }

    #[test]
    fn permute_is_group_action() {
        // (g∘h)_* = g_* ∘ h_* on a letter-diverse word
        let s = FormalSum::single(w(&[R, L, D]), PolyForm::x_pow_dx(1));
        let g = vec![2usize, 0, 1];
        let h = vec![1usize, 2, 0];
        let gh: Vec<usize> = (0..3).map(|i| g[h[i]]).collect();
        assert_eq!(s.permute_push(&h).permute_push(&g), s.permute_push(&gh));
    }

    #[test]
    fn alt_is_idempotent() {
        let s = build_rc(3).c;
        let once = s.alt_push();
        assert_eq!(once.alt_push(), once);
    }

    #[test]
    fn alt_orbit_coefficient_is_stabilizer_ratio() {
        // coefficient of [ℝ⁻^k, log, dlog^{n−k−1}] inside alt of itself is
        // k!(n−k−1)!/n!
        for n in 2..=5usize {
            for k in 0..n {
                let mut ls = vec![R; k];
                ls.push(L);
                ls.extend(vec![D; n - k - 1]);
                let word = Word(ls);
                let s = FormalSum::single(word.clone(), PolyForm::one());
                let coeff = s.alt_push().coefficient(&word);
                let expect = Rational::new(
                    factorial(k) * factorial(n - k - 1),
                    factorial(n),
                );
                assert_eq!(coeff, PolyForm::constant(TauScalar::from_rational(expect)));
            }
        }
    }

    #[test]
    fn ev_r1_is_r1_triple() {
        let t = build_rp(1).ev_words();
        let rc = r1_triple();
        assert_eq!(t.a, rc.a);
        assert_eq!(t.b, rc.b);
        assert_eq!(t.c, rc.c);
    }

    #[test]
    fn comparison_lemma_exact() {
        // ev(R^n_P) = alt_*(R^n_C) for n = 1..6
        for n in 1..=6 {
            let lhs = build_rp(n).ev_words();
            let rhs = build_rc(n).alt_push();
            assert_eq!(lhs.a, rhs.a, "a slot, n={}", n);
            assert_eq!(lhs.b, rhs.b, "b slot, n={}", n);
            assert_eq!(lhs.c, rhs.c, "c slot, n={}", n);
        }
    }

    #[test]
    fn integral_refinement_exact() {
        // ev(R^n_P) = (id, id, alt)(R^n_C); first two slots integral.
        for n in 1..=6 {
            let lhs = build_rp(n).ev_words();
            let rhs = build_rc(n).alt_third();
            assert_eq!(lhs.a, rhs.a, "n={}", n);
            assert_eq!(lhs.b, rhs.b, "n={}", n);
            assert_eq!(lhs.c, rhs.c, "n={}", n);
            for (_, coeff) in rhs.a.terms().chain(rhs.b.terms()) {
                for c in coeff.f.iter().chain(coeff.g.iter()) {
                    assert!(c.is_integral(), "non-integral τ-coefficient at n={}", n);
                }
            }
        }
    }

    #[test]
    fn first_two_components_agree_without_alt() {
        for n in 1..=6 {
            let ev = build_rp(n).ev_words();
            let rc = build_rc(n);
            assert_eq!(ev.a, rc.a, "n={}", n);
            assert_eq!(ev.b, rc.b, "n={}", n);
        }
    }

    fn arb_letter() -> impl Strategy<Value = Letter> {
        prop_oneof![
            Just(R),
            Just(D),
            Just(L),
            Just(Pt0),
            Just(PtInf),
        ]
    }

    fn arb_sum(n: usize) -> impl Strategy<Value = FormalSum> {
        let coeff = (0usize..3, -3i64..=3, prop::bool::ANY).prop_map(|(k, q, dx)| {
            let base = PolyForm::x_pow(k).scale(&TauScalar::from_rational(rat(q, 1)));
            if dx {
                base.wedge(&PolyForm::x_pow_dx(0))
            } else {
                base
            }
        });
        proptest::collection::vec(
            (proptest::collection::vec(arb_letter(), n), coeff),
            1..4,
        )
        .prop_map(move |terms| {
            FormalSum::from_terms(
                n,
                terms.into_iter().map(|(ls, c)| (Word(ls), c)).collect(),
            )
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn boxtimes_associative(a in arb_sum(1), b in arb_sum(2), c in arb_sum(1)) {
            prop_assert_eq!(a.boxtimes(&b).boxtimes(&c), a.boxtimes(&b.boxtimes(&c)));
        }

        #[test]
        fn d_squared_zero_random(a in arb_sum(2)) {
            prop_assert!(a.differential().differential().is_zero());
        }

        #[test]
        fn alt_idempotent_random(a in arb_sum(3)) {
            let once = a.alt_push();
            prop_assert_eq!(once.alt_push(), once);
        }
    }

    #[test]
    fn block_swap_graded_commutativity() {
        // B ⊠ A = (−1)^{deg A · deg B} · blockswap_*(A ⊠ B) on homogeneous sums
        let cases: Vec<(FormalSum, u32)> = vec![
            (FormalSum::single(w(&[R]), PolyForm::one()), 1),
            (FormalSum::single(w(&[L]), PolyForm::x_pow_dx(0)), 1),
            (FormalSum::single(w(&[D, R]), PolyForm::x_pow(1)), 2),
            (FormalSum::single(w(&[L]), PolyForm::x_pow(2)), 0),
        ];
        for (a, da) in &cases {
            for (b, db) in &cases {
                let na = a.slots();
                let nb = b.slots();
                // block swap: first na slots to the end
                let mut g = Vec::new();
                for i in 0..na {
                    g.push(nb + i);
                }
                for j in 0..nb {
                    g.push(j);
                }
                let mut lhs = b.boxtimes(a);
                let rhs = a.boxtimes(b).permute_push(&g);
                if (da * db) % 2 == 1 {
                    lhs = lhs.neg();
                }
                assert_eq!(lhs, rhs);
            }
        }
    }
}
