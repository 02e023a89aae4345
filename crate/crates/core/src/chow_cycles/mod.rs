//! Cubical higher Chow chains over a point, given by rational-function
//! parametrizations of their components in the n-cube: face maps, the Bloch
//! differential, admissibility reports, the signed S_n action, alternation,
//! and the worked example cycles.

pub mod expr;
mod poly;

pub use expr::{load_cycle_file, parse_cycle_json, LoadedCycle};
pub use poly::{durand_kerner, CycleError, CycleScalar, Poly, ProjValue, RationalFunction};

use itertools::Itertools;
use num::{BigInt, One, Zero};

use crate::coefficients::{GaussianRational, Rational, C64};
use crate::formal_currents::{factorial, perm_sign};

/// Tolerance for face-point classification in numeric mode.
pub const FACE_TOL: f64 = 1e-9;

#[derive(Clone, PartialEq, Debug)]
pub enum ComponentData<K: CycleScalar> {
    /// Rational parametrization of a curve component (one function per slot).
    Curve(Vec<RationalFunction<K>>),
    /// Explicit coordinates of a point component.
    Point(Vec<K>),
}

#[derive(Clone, PartialEq, Debug)]
pub struct CycleComponent<K: CycleScalar> {
    pub multiplicity: Rational,
    pub data: ComponentData<K>,
}

/// Higher Chow chain over a point: components in cube^n of codimension p.
#[derive(Clone, PartialEq, Debug)]
pub struct ParamCycle<K: CycleScalar> {
    pub n: usize,
    pub p: usize,
    pub components: Vec<CycleComponent<K>>,
}

/// Formal sum of points in cube^n with rational multiplicities.
#[derive(Clone, PartialEq, Debug)]
pub struct PointCycle<K: CycleScalar> {
    pub n: usize,
    pub points: Vec<(Rational, Vec<K>)>,
}

#[derive(Clone, Copy, PartialEq, Debug)]
pub enum FaceValue {
    Zero,
    Infinity,
}

#[derive(Clone, Debug, Default)]
pub struct AdmissibilityReport {
    pub violations: Vec<String>,
    pub degenerate: Vec<String>,
}

impl AdmissibilityReport {
    pub fn admissible(&self) -> bool {
        self.violations.is_empty()
    }
}

impl<K: CycleScalar> PointCycle<K> {
    pub fn empty(n: usize) -> Self {
        PointCycle { n, points: vec![] }
    }

    pub fn is_zero(&self) -> bool {
        self.points.is_empty()
    }

    pub fn add_point(&mut self, mult: Rational, values: Vec<K>, merge_tol: f64) {
        assert_eq!(values.len(), self.n);
        if mult.is_zero() {
            return;
        }
        for (m, vs) in self.points.iter_mut() {
            let same = vs
                .iter()
                .zip(values.iter())
                .all(|(a, b)| a.sub(b).close_to_int(0, merge_tol));
            if same {
                *m += &mult;
                self.points.retain(|(m, _)| !m.is_zero());
                return;
            }
        }
        self.points.push((mult, values));
        self.sort_points();
    }

    fn sort_points(&mut self) {
        self.points.sort_by(|(_, a), (_, b)| {
            let ka: Vec<(f64, f64)> = a.iter().map(|v| (v.to_c64().re, v.to_c64().im)).collect();
            let kb: Vec<(f64, f64)> = b.iter().map(|v| (v.to_c64().re, v.to_c64().im)).collect();
            ka.partial_cmp(&kb).unwrap_or(std::cmp::Ordering::Equal)
        });
    }

    pub fn add(&self, rhs: &Self) -> Self {
        assert_eq!(self.n, rhs.n);
        let mut out = self.clone();
        for (m, vs) in &rhs.points {
            out.add_point(m.clone(), vs.clone(), FACE_TOL);
        }
        out
    }

    pub fn scale(&self, q: &Rational) -> Self {
        if q.is_zero() {
            return PointCycle::empty(self.n);
        }
        PointCycle {
            n: self.n,
            points: self.points.iter().map(|(m, v)| (m * q, v.clone())).collect(),
        }
    }

    /// Signed S_n alternation of a point cycle.
    pub fn alt(&self) -> Self {
        let n = self.n;
        let mut out = PointCycle::empty(n);
        let inv_fact = Rational::new(BigInt::one(), factorial(n));
        for perm in (0..n).permutations(n) {
            let sign = if perm_sign(&perm) { -&inv_fact } else { inv_fact.clone() };
            for (m, vs) in &self.points {
                let mut permuted = vec![K::zero(); n];
                for (i, v) in vs.iter().enumerate() {
                    permuted[perm[i]] = v.clone();
                }
                out.add_point(m * &sign, permuted, FACE_TOL);
            }
        }
        out
    }

    /// The Bloch boundary of a point cycle is empty: admissible points meet
    /// no face.
    pub fn bloch_boundary(&self) -> PointCycle<K> {
        PointCycle::empty(self.n.saturating_sub(1))
    }
}

impl<K: CycleScalar> ParamCycle<K> {
    pub fn new(
        n: usize,
        p: usize,
        components: Vec<CycleComponent<K>>,
    ) -> Result<Self, CycleError> {
        for comp in &components {
            match &comp.data {
                ComponentData::Curve(coords) => {
                    if coords.len() != n {
                        return Err(CycleError::Inconsistent(format!(
                            "curve component has {} coordinates, expected {}",
                            coords.len(),
                            n
                        )));
                    }
                    if p + 1 != n {
                        return Err(CycleError::Inconsistent(format!(
                            "curve component over a point requires p = n - 1, got (n, p) = ({}, {})",
                            n, p
                        )));
                    }
                }
                ComponentData::Point(values) => {
                    if values.len() != n {
                        return Err(CycleError::Inconsistent(format!(
                            "point component has {} coordinates, expected {}",
                            values.len(),
                            n
                        )));
                    }
                    if p != n {
                        return Err(CycleError::Inconsistent(format!(
                            "point component over a point requires p = n, got (n, p) = ({}, {})",
                            n, p
                        )));
                    }
                }
            }
        }
        Ok(ParamCycle { n, p, components })
    }

    pub fn negate(&self) -> Self {
        ParamCycle {
            n: self.n,
            p: self.p,
            components: self
                .components
                .iter()
                .map(|c| CycleComponent { multiplicity: -&c.multiplicity, data: c.data.clone() })
                .collect(),
        }
    }

    /// Formal difference; components are concatenated with signs.
    pub fn sub(&self, rhs: &Self) -> Result<Self, CycleError> {
        if self.n != rhs.n || self.p != rhs.p {
            return Err(CycleError::Inconsistent("mismatched (n, p) in difference".into()));
        }
        let mut comps = self.components.clone();
        comps.extend(rhs.negate().components);
        ParamCycle::new(self.n, self.p, comps)
    }

    /// Intersection with the codimension-1 face {z_i = ε}; slot is 0-based.
    pub fn face(&self, slot: usize, eps: FaceValue) -> Result<PointCycle<K>, CycleError> {
        assert!(slot < self.n);
        let mut out = PointCycle::empty(self.n - 1);
        for comp in &self.components {
            let coords = match &comp.data {
                ComponentData::Point(_) => continue, // admissible points avoid faces
                ComponentData::Curve(coords) => coords,
            };
            let phi = &coords[slot];
            if let Some(v) = phi.constant_value() {
                let contained = match eps {
                    FaceValue::Zero => v.close_to_int(0, FACE_TOL),
                    FaceValue::Infinity => false, // finite constant
                };
                if contained || phi.num.is_zero() {
                    return Err(CycleError::Containment(format!(
                        "coordinate {} identically {:?}",
                        slot + 1,
                        eps
                    )));
                }
                continue;
            }
            // finite roots plus the root at t = ∞ by degree deficit
            let mut roots: Vec<(ProjValue<K>, usize)> = Vec::new();
            let finite = match eps {
                FaceValue::Zero => phi.num.roots()?,
                FaceValue::Infinity => phi.den.roots()?,
            };
            for (r, m) in finite {
                // a common zero of num and den is a spurious artifact
                let other = match eps {
                    FaceValue::Zero => phi.den.eval(&r),
                    FaceValue::Infinity => phi.num.eval(&r),
                };
                if other.close_to_int(0, FACE_TOL) {
                    return Err(CycleError::Inconsistent(format!(
                        "coordinate {} has a common numerator/denominator root",
                        slot + 1
                    )));
                }
                roots.push((ProjValue::Finite(r), m));
            }
            let inf_mult = phi.infinity_multiplicity(matches!(eps, FaceValue::Infinity));
            if inf_mult > 0 {
                roots.push((ProjValue::Infinity, inf_mult));
            }
            for (root, mult) in roots {
                let mut values = Vec::with_capacity(self.n - 1);
                let mut discard = false;
                let mut improper: Option<String> = None;
                for (j, psi) in coords.iter().enumerate() {
                    if j == slot {
                        continue;
                    }
                    let value = match &root {
                        ProjValue::Finite(t0) => psi.eval(t0),
                        ProjValue::Infinity => psi.eval_infinity(),
                    };
                    match value {
                        ProjValue::Finite(v) => {
                            if v.close_to_int(1, FACE_TOL) {
                                discard = true; // lies in the boundary divisor
                                break;
                            }
                            if v.close_to_int(0, FACE_TOL) {
                                improper = Some(format!(
                                    "face z_{} = {:?} meets z_{} = 0",
                                    slot + 1,
                                    eps,
                                    j + 1
                                ));
                            }
                            values.push(v);
                        }
                        ProjValue::Infinity => {
                            improper = Some(format!(
                                "face z_{} = {:?} meets z_{} = infinity",
                                slot + 1,
                                eps,
                                j + 1
                            ));
                            values.push(K::zero());
                        }
                    }
                }
                if discard {
                    continue;
                }
                if let Some(msg) = improper {
                    return Err(CycleError::Improper(msg));
                }
                let total = &comp.multiplicity * Rational::from_integer(BigInt::from(mult));
                out.add_point(total, values, FACE_TOL);
            }
        }
        Ok(out)
    }

    /// ∂ = Σ_{i=1}^n (−1)^{i+1} ((∂_{i,0})* − (∂_{i,∞})*).
    pub fn bloch_boundary(&self) -> Result<PointCycle<K>, CycleError> {
        let mut out = PointCycle::empty(self.n.saturating_sub(1));
        if self.n == 0 {
            return Ok(out);
        }
        for i in 0..self.n {
            let sign = if i % 2 == 0 { Rational::one() } else { -Rational::one() };
            let at0 = self.face(i, FaceValue::Zero)?;
            let atinf = self.face(i, FaceValue::Infinity)?;
            out = out.add(&at0.scale(&sign));
            out = out.add(&atinf.scale(&-sign));
        }
        Ok(out)
    }

    /// Algebraic admissibility report: containment in faces, improper face
    /// evaluations, and degenerate (constant-coordinate) components.
    pub fn is_admissible(&self) -> AdmissibilityReport {
        let mut report = AdmissibilityReport::default();
        for (ci, comp) in self.components.iter().enumerate() {
            match &comp.data {
                ComponentData::Point(values) => {
                    for (j, v) in values.iter().enumerate() {
                        if v.close_to_int(0, FACE_TOL) || v.close_to_int(1, FACE_TOL) {
                            report.violations.push(format!(
                                "component {}: point coordinate {} lies in {{0, 1}}",
                                ci + 1,
                                j + 1
                            ));
                        }
                    }
                }
                ComponentData::Curve(coords) => {
                    for (j, phi) in coords.iter().enumerate() {
                        if let Some(v) = phi.constant_value() {
                            report
                                .degenerate
                                .push(format!("component {}: coordinate {} is constant", ci + 1, j + 1));
                            if v.close_to_int(0, FACE_TOL) || v.close_to_int(1, FACE_TOL) {
                                report.violations.push(format!(
                                    "component {}: constant coordinate {} lies in the boundary",
                                    ci + 1,
                                    j + 1
                                ));
                            }
                        }
                    }
                }
            }
        }
        // face computations surface containment/improper violations
        for i in 0..self.n {
            for eps in [FaceValue::Zero, FaceValue::Infinity] {
                if let Err(e) = self.face(i, eps) {
                    report.violations.push(e.to_string());
                }
            }
        }
        report
    }

    /// Real-admissibility: arcs meet pairwise in finite point sets, triple
    /// intersections are empty, point coordinates avoid ℝ⁻.
    pub fn is_real_admissible(&self, tol: f64) -> AdmissibilityReport {
        crate::real_arcs::real_admissibility_report(self, tol)
    }

    /// Coordinate permutation with sign sgn(g); g[i] is the target slot of
    /// slot i.
    pub fn permute(&self, g: &[usize]) -> (Rational, Self) {
        assert_eq!(g.len(), self.n);
        let sign = if perm_sign(g) { -Rational::one() } else { Rational::one() };
        let components = self
            .components
            .iter()
            .map(|comp| {
                let data = match &comp.data {
                    ComponentData::Curve(coords) => {
                        let mut out = vec![RationalFunction::constant(K::zero()); self.n];
                        for (i, c) in coords.iter().enumerate() {
                            out[g[i]] = c.clone();
                        }
                        ComponentData::Curve(out)
                    }
                    ComponentData::Point(values) => {
                        let mut out = vec![K::zero(); self.n];
                        for (i, v) in values.iter().enumerate() {
                            out[g[i]] = v.clone();
                        }
                        ComponentData::Point(out)
                    }
                };
                CycleComponent { multiplicity: comp.multiplicity.clone(), data }
            })
            .collect();
        (sign, ParamCycle { n: self.n, p: self.p, components })
    }

    /// alt: Z ↦ (1/n!) Σ_g sgn(g)·g·Z, merging equal components.
    pub fn alt_cycle(&self) -> Self {
        let n = self.n;
        let inv_fact = Rational::new(BigInt::one(), factorial(n));
        let mut merged: Vec<CycleComponent<K>> = Vec::new();
        for perm in (0..n).permutations(n) {
            let (sign, permuted) = self.permute(&perm);
            for comp in permuted.components {
                let mult = &comp.multiplicity * &sign * &inv_fact;
                match merged.iter_mut().find(|m| m.data == comp.data) {
                    Some(existing) => existing.multiplicity += mult,
                    None => merged.push(CycleComponent { multiplicity: mult, data: comp.data }),
                }
            }
        }
        merged.retain(|c| !c.multiplicity.is_zero());
        ParamCycle { n, p: self.p, components: merged }
    }
}

impl ParamCycle<GaussianRational> {
    pub fn to_numeric(&self) -> ParamCycle<C64> {
        ParamCycle {
            n: self.n,
            p: self.p,
            components: self
                .components
                .iter()
                .map(|c| CycleComponent {
                    multiplicity: c.multiplicity.clone(),
                    data: match &c.data {
                        ComponentData::Curve(coords) => {
                            ComponentData::Curve(coords.iter().map(|r| r.to_c64()).collect())
                        }
                        ComponentData::Point(values) => {
                            ComponentData::Point(values.iter().map(|v| v.to_c64()).collect())
                        }
                    },
                })
                .collect(),
        }
    }
}

fn check_totaro_parameter<K: CycleScalar>(a: &K, name: &str) -> Result<(), CycleError> {
    if a.is_zero() {
        return Err(CycleError::ParameterRange(format!("{}(0) degenerates", name)));
    }
    let z = a.to_c64();
    if z.im.abs() <= 1e-12 && (z.re <= 1e-12 || z.re > 1.0 + 1e-12) {
        return Err(CycleError::ParameterRange(format!(
            "{} parameter must avoid R_(<=0) and R_(>1), got {}",
            name, z
        )));
    }
    Ok(())
}

/// C(a) = {(t, 1 − a/t, 1 − t)} ∩ cube³, codimension 2.
pub fn totaro_c<K: CycleScalar>(a: &K) -> Result<ParamCycle<K>, CycleError> {
    check_totaro_parameter(a, "C")?;
    let coords = vec![
        RationalFunction::t(),
        RationalFunction::new(Poly::new(vec![a.neg(), K::one()]), Poly::t())?,
        RationalFunction::new(Poly::new(vec![K::one(), K::from_int(-1)]), Poly::one())?,
    ];
    ParamCycle::new(
        3,
        2,
        vec![CycleComponent { multiplicity: Rational::one(), data: ComponentData::Curve(coords) }],
    )
}

/// D(b) = {(1 − t, 1 − b/t, t)} ∩ cube³, codimension 2.
pub fn totaro_d<K: CycleScalar>(b: &K) -> Result<ParamCycle<K>, CycleError> {
    check_totaro_parameter(b, "D")?;
    let coords = vec![
        RationalFunction::new(Poly::new(vec![K::one(), K::from_int(-1)]), Poly::one())?,
        RationalFunction::new(Poly::new(vec![b.neg(), K::one()]), Poly::t())?,
        RationalFunction::t(),
    ];
    ParamCycle::new(
        3,
        2,
        vec![CycleComponent { multiplicity: Rational::one(), data: ComponentData::Curve(coords) }],
    )
}

/// The graph of a nonzero constant: the point f in cube¹, (n, p) = (1, 1).
pub fn graph_point<K: CycleScalar>(f: &K) -> Result<ParamCycle<K>, CycleError> {
    if f.in_r_minus(1e-12) || f.close_to_int(1, 1e-12) {
        return Err(CycleError::ParameterRange(format!(
            "graph point must avoid R^- and {{0, 1}}, got {}",
            f
        )));
    }
    ParamCycle::new(
        1,
        1,
        vec![CycleComponent {
            multiplicity: Rational::one(),
            data: ComponentData::Point(vec![f.clone()]),
        }],
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coefficients::rat;
    use num::Signed;

    fn g(n: i64) -> GaussianRational {
        GaussianRational::from_int(n)
    }
    fn gr(n: i64, d: i64) -> GaussianRational {
        GaussianRational::from_rational(rat(n, d))
    }

    fn one_minus<K: CycleScalar>(v: &K) -> K {
        K::one().sub(v)
    }

    #[test]
    fn totaro_c_parametrization() {
        let c = totaro_c(&g(1)).unwrap();
        match &c.components[0].data {
            ComponentData::Curve(coords) => {
                assert_eq!(coords[0], RationalFunction::t());
                assert_eq!(
                    coords[1],
                    RationalFunction::new(Poly::new(vec![g(-1), g(1)]), Poly::t()).unwrap()
                );
                assert_eq!(
                    coords[2],
                    RationalFunction::new(Poly::new(vec![g(1), g(-1)]), Poly::one()).unwrap()
                );
            }
            _ => panic!(),
        }
        assert_eq!((c.n, c.p), (3, 2));
    }

    #[test]
    fn totaro_d_parametrization() {
        let d = totaro_d(&gr(1, 2)).unwrap();
        match &d.components[0].data {
            ComponentData::Curve(coords) => {
                assert_eq!(
                    coords[0],
                    RationalFunction::new(Poly::new(vec![g(1), g(-1)]), Poly::one()).unwrap()
                );
                assert_eq!(coords[2], RationalFunction::t());
            }
            _ => panic!(),
        }
    }

    #[test]
    fn totaro_rejects_bad_parameters() {
        assert!(totaro_c(&g(0)).is_err());
        assert!(totaro_c(&g(-1)).is_err());
        assert!(totaro_c(&g(2)).is_err());
        assert!(totaro_c(&g(1)).is_ok());
        assert!(totaro_c(&GaussianRational::new(rat(3, 10), rat(1, 5))).is_ok());
    }

    #[test]
    fn graph_point_examples() {
        let p = graph_point(&g(2)).unwrap();
        assert_eq!((p.n, p.p), (1, 1));
        assert!(graph_point(&g(-2)).is_err());
        assert!(graph_point(&g(1)).is_err());
        assert!(graph_point(&g(0)).is_err());
    }

    #[test]
    fn face_of_c_a_slot2_zero() {
        // face(C(a), slot 2 (1-based), 0) = +(a, 1−a) at t = a
        let a = gr(1, 2);
        let c = totaro_c(&a).unwrap();
        let f = c.face(1, FaceValue::Zero).unwrap();
        assert_eq!(f.points.len(), 1);
        let (m, vs) = &f.points[0];
        assert_eq!(m, &Rational::one());
        assert_eq!(vs[0], a);
        assert_eq!(vs[1], one_minus(&a));
    }

    #[test]
    fn face_of_c_a_slot3_zero_discarded() {
        // evaluation at t = 1 gives (1, 1−a): coordinate 1 → discarded
        let c = totaro_c(&gr(1, 2)).unwrap();
        let f = c.face(2, FaceValue::Zero).unwrap();
        assert!(f.is_zero());
    }

    #[test]
    fn face_of_c_1_slot1_zero_discarded() {
        // at t = 0 the pattern (∞, 1) contains coordinate 1 → discarded
        let c = totaro_c(&g(1)).unwrap();
        let f = c.face(0, FaceValue::Zero).unwrap();
        assert!(f.is_zero());
    }

    #[test]
    fn boundary_of_c_a() {
        // ∂C(a) = −(a, 1−a), exactly, for Gaussian-rational a
        for a in [gr(1, 2), GaussianRational::new(rat(3, 10), rat(1, 5))] {
            let c = totaro_c(&a).unwrap();
            let b = c.bloch_boundary().unwrap();
            assert_eq!(b.points.len(), 1, "a = {}", a);
            let (m, vs) = &b.points[0];
            assert_eq!(m, &(-Rational::one()));
            assert_eq!(vs[0], a);
            assert_eq!(vs[1], one_minus(&a));
        }
    }

    #[test]
    fn boundary_of_c_1_vanishes() {
        let c = totaro_c(&g(1)).unwrap();
        assert!(c.bloch_boundary().unwrap().is_zero());
    }

    #[test]
    fn boundary_of_c_minus_d_vanishes() {
        // ∂(C(a) − D(1−a)) = 0 exactly
        for a in [gr(1, 2), GaussianRational::new(rat(3, 10), rat(1, 5))] {
            let z = totaro_c(&a)
                .unwrap()
                .sub(&totaro_d(&one_minus(&a)).unwrap())
                .unwrap();
            assert!(z.bloch_boundary().unwrap().is_zero(), "a = {}", a);
        }
    }

    #[test]
    fn boundary_squared_zero() {
        let c = totaro_c(&gr(1, 2)).unwrap();
        let b = c.bloch_boundary().unwrap();
        assert!(b.bloch_boundary().is_zero());
    }

    #[test]
    fn face_degree_conservation() {
        // total root multiplicity (with t = ∞) equals max(deg num, deg den)
        let a = gr(1, 2);
        let c = totaro_c(&a).unwrap();
        let coords = match &c.components[0].data {
            ComponentData::Curve(coords) => coords.clone(),
            _ => panic!(),
        };
        for phi in &coords {
            let d = phi
                .num
                .degree()
                .unwrap_or(0)
                .max(phi.den.degree().unwrap_or(0));
            for pole in [false, true] {
                let finite: usize = if pole {
                    phi.den.roots().unwrap().iter().map(|(_, m)| m).sum()
                } else {
                    phi.num.roots().unwrap().iter().map(|(_, m)| m).sum()
                };
                let total = finite + phi.infinity_multiplicity(pole);
                assert_eq!(total, d);
            }
        }
    }

    #[test]
    fn permute_c_to_d_with_sign() {
        // the transposition exchanging slots 1 and 3 sends C(b) to D(b), sign −1
        let b = gr(1, 2);
        let c = totaro_c(&b).unwrap();
        let g13 = vec![2usize, 1, 0];
        let (sign, permuted) = c.permute(&g13);
        assert_eq!(sign, -Rational::one());
        assert_eq!(permuted, totaro_d(&b).unwrap());
    }

    #[test]
    fn permute_is_group_action() {
        let c = totaro_c(&gr(1, 2)).unwrap();
        let g = vec![2usize, 0, 1];
        let ginv = vec![1usize, 2, 0];
        let (s1, once) = c.permute(&g);
        let (s2, back) = once.permute(&ginv);
        assert_eq!(&s1 * &s2, Rational::one());
        assert_eq!(back, c);
        let id = vec![0usize, 1, 2];
        let (s, same) = c.permute(&id);
        assert_eq!(s, Rational::one());
        assert_eq!(same, c);
    }

    #[test]
    fn alt_cycle_of_c1_has_six_components() {
        let c = totaro_c(&g(1)).unwrap();
        let alt = c.alt_cycle();
        assert_eq!(alt.components.len(), 6);
        for comp in &alt.components {
            assert_eq!(comp.multiplicity.abs(), rat(1, 6));
        }
    }

    #[test]
    fn alt_cycle_idempotent() {
        let c = totaro_c(&gr(1, 2)).unwrap();
        let once = c.alt_cycle();
        let twice = once.alt_cycle();
        // compare as multisets of (multiplicity, data)
        assert_eq!(once.components.len(), twice.components.len());
        for comp in &once.components {
            let m: Rational = twice
                .components
                .iter()
                .filter(|c2| c2.data == comp.data)
                .map(|c2| c2.multiplicity.clone())
                .sum();
            assert_eq!(m, comp.multiplicity);
        }
    }

    #[test]
    fn alt_commutes_with_boundary() {
        // ∂(alt C(a)) = alt'(∂ C(a)) with exact face arithmetic
        for a in [gr(1, 2), gr(1, 3), GaussianRational::new(rat(3, 10), rat(1, 5))] {
            let c = totaro_c(&a).unwrap();
            let lhs = c.alt_cycle().bloch_boundary().unwrap();
            let rhs = c.bloch_boundary().unwrap().alt();
            assert_eq!(lhs, rhs, "a = {}", a);
        }
        // for generic a the alternated boundary is −(1/2)[(a,1−a) − (1−a,a)]
        let a = gr(1, 3);
        let rhs = totaro_c(&a).unwrap().bloch_boundary().unwrap().alt();
        let expect: Vec<(Rational, Vec<GaussianRational>)> = vec![
            (rat(-1, 2), vec![a.clone(), one_minus(&a)]),
            (rat(1, 2), vec![one_minus(&a), a.clone()]),
        ];
        for (m, vs) in expect {
            assert!(rhs.points.iter().any(|(m2, v2)| *m2 == m && *v2 == vs));
        }
        // at a = 1/2 the boundary point is symmetric and its alternation cancels
        let sym = totaro_c(&gr(1, 2)).unwrap().bloch_boundary().unwrap().alt();
        assert!(sym.is_zero());
    }

    #[test]
    fn admissibility_reports() {
        assert!(totaro_c(&gr(1, 2)).unwrap().is_admissible().admissible());
        // constant coordinate = degenerate; constant 0 also a violation
        let degenerate = ParamCycle::new(
            2,
            1,
            vec![CycleComponent {
                multiplicity: Rational::one(),
                data: ComponentData::Curve(vec![
                    RationalFunction::t(),
                    RationalFunction::constant(g(0)),
                ]),
            }],
        )
        .unwrap();
        let report = degenerate.is_admissible();
        assert!(!report.admissible());
        assert!(!report.degenerate.is_empty());
        // point with a coordinate equal to 1 is inadmissible
        let bad_point = ParamCycle::new(
            2,
            2,
            vec![CycleComponent {
                multiplicity: Rational::one(),
                data: ComponentData::Point(vec![g(1), g(5)]),
            }],
        )
        .unwrap();
        assert!(!bad_point.is_admissible().admissible());
    }

    #[test]
    fn numeric_boundary_matches_exact() {
        let a = GaussianRational::new(rat(3, 10), rat(1, 5));
        let exact = totaro_c(&a).unwrap().bloch_boundary().unwrap();
        let numeric = totaro_c(&a).unwrap().to_numeric().bloch_boundary().unwrap();
        assert_eq!(exact.points.len(), numeric.points.len());
        for ((m1, v1), (m2, v2)) in exact.points.iter().zip(numeric.points.iter()) {
            assert_eq!(m1, m2);
            for (x, y) in v1.iter().zip(v2.iter()) {
                assert!((x.to_c64() - y).norm() < 1e-12);
            }
        }
    }
}
