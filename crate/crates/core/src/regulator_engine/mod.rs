//! Numerical evaluation of the regulators r_P and r_C for parametrized cycles
//! over a point.
//!
//! Term enumeration is driven by the formal R^n of both models; each tensor
//! word is paired against the cycle by dimension count: a word with k ℝ⁻
//! constraints and m dlog factors contributes on a component only when m
//! equals the real dimension of the constrained locus (2 − k on a curve, 0 on
//! a point). Pure-dlog words on a curve vanish because the pullback of a
//! (2,0)-form to a holomorphic curve is zero; this is asserted numerically and
//! the terms are then zeroed.

pub mod quad;
pub mod special;

pub use quad::{integrate_over_arc, ArcIntegrand, ChartedCoords};
pub use special::{dilog, log_branch};

use std::collections::BTreeMap;

use num::ToPrimitive;

use crate::chow_cycles::{ComponentData, CycleScalar, ParamCycle};
use crate::coefficients::{TauScalar, C64};
use crate::formal_currents::{build_rc, build_rp, FormalSum, Letter, Word};
use crate::real_arcs::{extract_arcs, pairwise_proper, real_admissibility_report, Arc, Crossing};
use crate::simplex_forms::{EvTriple, PolyForm};

#[derive(Debug, Clone, thiserror::Error)]
pub enum EngineError {
    #[error("inadmissible cycle: {0}")]
    Inadmissible(String),
    #[error("quadrature failure: {0}")]
    Quadrature(String),
    #[error("argument on a branch cut: {0}")]
    BranchCut(String),
    #[error("unsupported dimensions: {0}")]
    Unsupported(String),
    #[error("{0}")]
    Cycle(String),
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Model {
    Path,
    Triple,
}

/// Numeric element of the 3-term complex over a point.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct NumericTriple {
    pub a: C64,
    pub b: C64,
    pub c: C64,
}

#[derive(Clone, Debug)]
pub enum Payload {
    Path(PolyForm<C64>),
    Triple(NumericTriple),
}

#[derive(Clone, Debug)]
pub struct TermDiagnostic {
    pub term: String,
    pub value: C64,
    pub error: f64,
}

/// A computed regulator value, tagged with weight p and cube dimension n.
#[derive(Clone, Debug)]
pub struct RegulatorValue {
    pub model: Model,
    pub p: usize,
    pub n: usize,
    pub payload: Payload,
    pub diagnostics: Vec<TermDiagnostic>,
}

impl RegulatorValue {
    pub fn path_payload(&self) -> &PolyForm<C64> {
        match &self.payload {
            Payload::Path(p) => p,
            Payload::Triple(_) => panic!("triple-model value has no path payload"),
        }
    }

    pub fn triple_payload(&self) -> NumericTriple {
        match &self.payload {
            Payload::Triple(t) => *t,
            Payload::Path(_) => panic!("path-model value has no triple payload"),
        }
    }

    /// Apply ev to a path-model value: (w(0), w(1), ∫₀¹ w).
    pub fn ev(&self) -> NumericTriple {
        let EvTriple { at0, at1, integral } = self.path_payload().ev_map();
        NumericTriple { a: at0, b: at1, c: integral }
    }

    /// ∫₀¹ of the payload (the Abel–Jacobi integrand).
    pub fn integral(&self) -> C64 {
        match &self.payload {
            Payload::Path(p) => p.integrate_full(),
            Payload::Triple(t) => t.c,
        }
    }

    pub fn total_error(&self) -> f64 {
        self.diagnostics.iter().map(|d| d.error).sum()
    }
}

/// Arc/crossing data of one curve component, built once per evaluation.
struct CurveContext {
    coords: ChartedCoords,
    arcs: Vec<Vec<Arc>>,
    crossings: BTreeMap<(usize, usize), Vec<Crossing>>,
}

impl CurveContext {
    fn build(
        coords: &[crate::chow_cycles::RationalFunction<C64>],
        tol: f64,
    ) -> Result<Self, EngineError> {
        let charted = ChartedCoords::new(coords);
        let n = coords.len();
        let mut arcs = Vec::with_capacity(n);
        for slot in 0..n {
            let a = extract_arcs(coords, slot, 512)
                .map_err(|e| EngineError::Quadrature(e.to_string()))?;
            arcs.push(a);
        }
        let mut crossings = BTreeMap::new();
        for i in 0..n {
            for j in (i + 1)..n {
                let report = pairwise_proper(&arcs[i], &arcs[j], tol);
                if !report.proper() {
                    return Err(EngineError::Inadmissible(format!(
                        "arcs of slots {} and {} overlap",
                        i + 1,
                        j + 1
                    )));
                }
                crossings.insert((i, j), report.crossings);
            }
        }
        Ok(CurveContext { coords: charted, arcs, crossings })
    }
}

struct WordShape {
    rneg: Vec<usize>,
    log: Vec<usize>,
    dlog: Vec<usize>,
    has_points: bool,
    /// Koszul sign from moving the chain letters (ℝ⁻) in front of the forms.
    front_sign: f64,
}

fn shape(word: &Word) -> WordShape {
    let mut s = WordShape {
        rneg: vec![],
        log: vec![],
        dlog: vec![],
        has_points: false,
        front_sign: 1.0,
    };
    let mut dlogs_seen = 0usize;
    for (i, l) in word.0.iter().enumerate() {
        match l {
            Letter::RNeg => {
                if dlogs_seen % 2 == 1 {
                    s.front_sign = -s.front_sign;
                }
                s.rneg.push(i);
            }
            Letter::Log => s.log.push(i),
            Letter::DLog => {
                dlogs_seen += 1;
                s.dlog.push(i);
            }
            Letter::Pt0 | Letter::PtInf => s.has_points = true,
        }
    }
    s
}

/// Max sampled magnitude of the (2,0)-pullback pairing of a double-dlog word
/// against the real tangent frame of the curve; identically zero because the
/// two wedge factors are proportional to the same dt.
fn holomorphic_pairing_residue(
    coords: &ChartedCoords,
    dlog_slots: (usize, usize),
    log_slots: &[usize],
) -> f64 {
    let mut worst = 0.0f64;
    for k in 0..8 {
        let theta = 0.13 + 0.77 * k as f64;
        let t = C64::from_polar(0.7, theta);
        let value = |slot: usize| -> Option<C64> {
            let rf = &coords.t[slot];
            let n = rf.num.eval(&t);
            let d = rf.den.eval(&t);
            if n.norm() < 1e-12 || d.norm() < 1e-12 {
                return None;
            }
            let dn = rf.num.derivative().eval(&t);
            let dd = rf.den.derivative().eval(&t);
            Some(dn / n - dd / d)
        };
        let (Some(f), Some(g)) = (value(dlog_slots.0), value(dlog_slots.1)) else {
            continue;
        };
        let mut scale = C64::new(1.0, 0.0);
        let mut skip = false;
        for &j in log_slots {
            let rf = &coords.t[j];
            let d = rf.den.eval(&t);
            if d.norm() < 1e-12 {
                skip = true;
                break;
            }
            match log_branch(rf.num.eval(&t) / d) {
                Ok(v) => scale *= v,
                Err(_) => {
                    skip = true;
                    break;
                }
            }
        }
        if skip {
            continue;
        }
        // pairing of (f dt) ∧ (g dt) with the frame (∂x, ∂y): f·(ig) − (if)·g
        let i = C64::new(0.0, 1.0);
        let pairing = scale * (f * (i * g) - (i * f) * g);
        worst = worst.max(pairing.norm());
    }
    worst
}

fn eval_word_on_curve(
    word: &Word,
    ctx: &CurveContext,
    abs_tol: f64,
) -> Result<(C64, f64), EngineError> {
    let s = shape(word);
    if s.has_points {
        return Ok((C64::new(0.0, 0.0), 0.0));
    }
    let k = s.rneg.len();
    let m = s.dlog.len();
    if m + k != 2 {
        // form degree must match the dimension of the constrained locus
        return Ok((C64::new(0.0, 0.0), 0.0));
    }
    match k {
        0 => {
            // two dlog factors, no constraint: (2,0)-pullback to a curve is zero
            let residue =
                holomorphic_pairing_residue(&ctx.coords, (s.dlog[0], s.dlog[1]), &s.log);
            if residue > 1e-6 {
                return Err(EngineError::Quadrature(format!(
                    "holomorphic-vanishing assertion failed: residue {}",
                    residue
                )));
            }
            Ok((C64::new(0.0, 0.0), residue))
        }
        1 => {
            let slot = s.rneg[0];
            let integrand = ArcIntegrand { log_slots: s.log.clone(), dlog_slot: s.dlog[0] };
            let mut acc = C64::new(0.0, 0.0);
            let mut err = 0.0f64;
            for arc in &ctx.arcs[slot] {
                let (v, e) = integrate_over_arc(arc, &ctx.coords, &integrand, abs_tol)?;
                acc += v;
                err += e;
            }
            Ok((acc * s.front_sign, err))
        }
        2 => {
            let (i, j) = (s.rneg[0], s.rneg[1]);
            let list = ctx.crossings.get(&(i, j)).cloned().unwrap_or_default();
            let mut acc = C64::new(0.0, 0.0);
            for c in &list {
                let mut value = C64::new(c.sign as f64, 0.0);
                for &l in &s.log {
                    let rf = &ctx.coords.t[l];
                    let d = rf.den.eval(&c.t);
                    if d.norm() == 0.0 {
                        return Err(EngineError::Quadrature(
                            "crossing point hits a coordinate pole".into(),
                        ));
                    }
                    value *= log_branch(rf.num.eval(&c.t) / d)
                        .map_err(|e| EngineError::Quadrature(e.to_string()))?;
                }
                acc += value;
            }
            Ok((acc * s.front_sign, 0.0))
        }
        _ => Ok((C64::new(0.0, 0.0), 0.0)),
    }
}

fn eval_word_on_point(
    word: &Word,
    points: &[(num::BigRational, Vec<C64>)],
) -> Result<(C64, f64), EngineError> {
    let s = shape(word);
    if s.has_points || !s.dlog.is_empty() {
        // forms of positive degree vanish on a 0-dimensional component
        return Ok((C64::new(0.0, 0.0), 0.0));
    }
    let mut acc = C64::new(0.0, 0.0);
    for (mult, values) in points {
        let in_locus = s.rneg.iter().all(|&i| values[i].in_r_minus(1e-12));
        if !in_locus {
            continue;
        }
        let mut v = C64::new(mult.to_f64().unwrap(), 0.0);
        for &j in &s.log {
            v *= log_branch(values[j]).map_err(|e| EngineError::Quadrature(e.to_string()))?;
        }
        acc += v * s.front_sign;
    }
    Ok((acc, 0.0))
}

enum ComponentContext {
    Curve { context: CurveContext, multiplicity: f64 },
    Point { points: Vec<(num::BigRational, Vec<C64>)> },
}

fn build_contexts(
    cycle: &ParamCycle<C64>,
    abs_tol: f64,
) -> Result<Vec<ComponentContext>, EngineError> {
    let mut out = Vec::new();
    for comp in &cycle.components {
        match &comp.data {
            ComponentData::Curve(coords) => {
                if cycle.n > 3 {
                    return Err(EngineError::Unsupported(format!(
                        "curve components are supported for n <= 3, got n = {}",
                        cycle.n
                    )));
                }
                out.push(ComponentContext::Curve {
                    context: CurveContext::build(coords, abs_tol)?,
                    multiplicity: comp.multiplicity.to_f64().unwrap(),
                });
            }
            ComponentData::Point(values) => out.push(ComponentContext::Point {
                points: vec![(comp.multiplicity.clone(), values.clone())],
            }),
        }
    }
    Ok(out)
}

fn eval_word(
    word: &Word,
    contexts: &[ComponentContext],
    abs_tol: f64,
) -> Result<(C64, f64), EngineError> {
    let mut acc = C64::new(0.0, 0.0);
    let mut err = 0.0;
    for ctx in contexts {
        match ctx {
            ComponentContext::Curve { context, multiplicity } => {
                let (v, e) = eval_word_on_curve(word, context, abs_tol)?;
                acc += v * *multiplicity;
                err += e * multiplicity.abs();
            }
            ComponentContext::Point { points } => {
                let (v, e) = eval_word_on_point(word, points)?;
                acc += v;
                err += e;
            }
        }
    }
    Ok((acc, err))
}

fn check_admissible(cycle: &ParamCycle<C64>, tol: f64) -> Result<(), EngineError> {
    let report = cycle.is_admissible();
    if !report.admissible() {
        return Err(EngineError::Inadmissible(report.violations.join("; ")));
    }
    let report = real_admissibility_report(cycle, tol);
    if !report.admissible() {
        return Err(EngineError::Inadmissible(report.violations.join("; ")));
    }
    Ok(())
}

/// Convert an exact τ-graded PolyForm into a complex one, including the
/// pushforward twist τ^{p−n}.
fn twist_to_complex(coeff: &PolyForm<TauScalar>, twist: i64) -> PolyForm<C64> {
    let conv = |c: &TauScalar| c.shift(twist).to_complex(15);
    PolyForm::new(
        coeff.f.iter().map(conv).collect(),
        coeff.g.iter().map(conv).collect(),
    )
}

/// The regulator into the path complex, assembled from build_RP(n).
pub fn regulate_p(cycle: &ParamCycle<C64>, abs_tol: f64) -> Result<RegulatorValue, EngineError> {
    check_admissible(cycle, abs_tol)?;
    let contexts = build_contexts(cycle, abs_tol)?;
    let (n, p) = (cycle.n, cycle.p);
    let twist = p as i64 - n as i64;
    let rp = build_rp(n);
    let mut payload: PolyForm<C64> = PolyForm::zero();
    let mut diagnostics = Vec::new();
    for (word, coeff) in rp.terms() {
        let (value, error) = eval_word(word, &contexts, abs_tol)?;
        if value.norm() == 0.0 && error == 0.0 {
            continue;
        }
        let complex_coeff = twist_to_complex(coeff, twist);
        payload = payload.add(&complex_coeff.scale(&value));
        diagnostics.push(TermDiagnostic {
            term: crate::formal_currents::render_word(word, n),
            value,
            error,
        });
    }
    Ok(RegulatorValue { model: Model::Path, p, n, payload: Payload::Path(payload), diagnostics })
}

/// The regulator into the 3-term complex, assembled from build_RC(n).
pub fn regulate_c(cycle: &ParamCycle<C64>, abs_tol: f64) -> Result<RegulatorValue, EngineError> {
    check_admissible(cycle, abs_tol)?;
    let contexts = build_contexts(cycle, abs_tol)?;
    let (n, p) = (cycle.n, cycle.p);
    let twist = p as i64 - n as i64;
    let rc = build_rc(n);
    let mut diagnostics = Vec::new();
    let mut eval_slot = |sum: &FormalSum, name: &str| -> Result<C64, EngineError> {
        let mut acc = C64::new(0.0, 0.0);
        for (word, coeff) in sum.terms() {
            let scalar = coeff.evaluate_at(0); // scalar coefficients only
            let (value, error) = eval_word(word, &contexts, abs_tol)?;
            if value.norm() == 0.0 && error == 0.0 {
                continue;
            }
            acc += scalar.shift(twist).to_complex(15) * value;
            diagnostics.push(TermDiagnostic {
                term: format!("{}: {}", name, crate::formal_currents::render_word(word, n)),
                value,
                error,
            });
        }
        Ok(acc)
    };
    let a = eval_slot(&rc.a, "T")?;
    let b = eval_slot(&rc.b, "Omega")?;
    let c = eval_slot(&rc.c, "L")?;
    Ok(RegulatorValue {
        model: Model::Triple,
        p,
        n,
        payload: Payload::Triple(NumericTriple { a, b, c }),
        diagnostics,
    })
}

/// The three arc-integral pairs of the n = 3 worked example, in the order the
/// slots constrain (z₁, z₂, z₃).
pub fn abc_integrals(cycle: &ParamCycle<C64>, abs_tol: f64) -> Result<(C64, C64, C64), EngineError> {
    if cycle.n != 3 || cycle.components.len() != 1 {
        return Err(EngineError::Unsupported(
            "abc_integrals expects a single curve component in cube^3".into(),
        ));
    }
    let coords = match &cycle.components[0].data {
        ComponentData::Curve(coords) => coords,
        _ => return Err(EngineError::Unsupported("abc_integrals expects a curve".into())),
    };
    let ctx = CurveContext::build(coords, abs_tol)?;
    let pair = |arc_slot: usize,
                    first: (usize, usize),
                    second: (usize, usize)|
     -> Result<C64, EngineError> {
        let mut acc = C64::new(0.0, 0.0);
        for arc in &ctx.arcs[arc_slot] {
            let (v1, _) = integrate_over_arc(
                arc,
                &ctx.coords,
                &ArcIntegrand { log_slots: vec![first.0], dlog_slot: first.1 },
                abs_tol,
            )?;
            let (v2, _) = integrate_over_arc(
                arc,
                &ctx.coords,
                &ArcIntegrand { log_slots: vec![second.0], dlog_slot: second.1 },
                abs_tol,
            )?;
            acc += v1 - v2;
        }
        Ok(acc)
    };
    let a = pair(0, (2, 1), (1, 2))?;
    let b = pair(1, (0, 2), (2, 0))?;
    let c = pair(2, (1, 0), (0, 1))?;
    Ok((a, b, c))
}

#[derive(Clone, Debug)]
pub struct CheckOutcome {
    pub name: String,
    pub max_abs_diff: f64,
    pub tol: f64,
    pub pass: bool,
}

#[derive(Clone, Debug, Default)]
pub struct CrossCheckReport {
    pub checks: Vec<CheckOutcome>,
}

impl CrossCheckReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    fn push(&mut self, name: impl Into<String>, diff: f64, tol: f64) {
        let name = name.into();
        self.checks.push(CheckOutcome { name, max_abs_diff: diff, tol, pass: diff <= tol });
    }
}

fn triple_diff(x: NumericTriple, y: NumericTriple) -> f64 {
    (x.a - y.a).norm().max((x.b - y.b).norm()).max((x.c - y.c).norm())
}

fn payload_diff(x: &PolyForm<C64>, y: &PolyForm<C64>) -> f64 {
    let mut out = 0.0f64;
    let len_f = x.f.len().max(y.f.len());
    let len_g = x.g.len().max(y.g.len());
    for i in 0..len_f {
        let a = x.f.get(i).copied().unwrap_or_else(|| C64::new(0.0, 0.0));
        let b = y.f.get(i).copied().unwrap_or_else(|| C64::new(0.0, 0.0));
        out = out.max((a - b).norm());
    }
    for i in 0..len_g {
        let a = x.g.get(i).copied().unwrap_or_else(|| C64::new(0.0, 0.0));
        let b = y.g.get(i).copied().unwrap_or_else(|| C64::new(0.0, 0.0));
        out = out.max((a - b).norm());
    }
    out
}

/// Numerical verification of the structural identities on a concrete cycle:
/// (i) ev(r_P(Z)) = r_C(alt Z), (ii) the first two components of ev(r_P(Z))
/// equal those of r_C(Z), (iii) r_P(gZ) = sgn(g)·r_P(Z) for all g ∈ S_n.
pub fn cross_checks(
    cycle: &ParamCycle<C64>,
    abs_tol: f64,
    check_tol: f64,
) -> Result<CrossCheckReport, EngineError> {
    use itertools::Itertools;
    let mut report = CrossCheckReport::default();
    let rp = regulate_p(cycle, abs_tol)?;
    let ev = rp.ev();

    let alt = cycle.alt_cycle();
    let rc_alt = regulate_c(&alt, abs_tol)?.triple_payload();
    report.push("ev(r_P(Z)) = r_C(alt Z)", triple_diff(ev, rc_alt), check_tol);

    let rc = regulate_c(cycle, abs_tol)?.triple_payload();
    let first_two = (ev.a - rc.a).norm().max((ev.b - rc.b).norm());
    report.push("first two components of ev(r_P(Z)) = r_C(Z)", first_two, check_tol);

    let base = rp.path_payload();
    for perm in (0..cycle.n).permutations(cycle.n) {
        let (sign, permuted) = cycle.permute(&perm);
        let rp_g = regulate_p(&permuted, abs_tol)?;
        let expected = base.scale(&C64::new(sign.to_f64().unwrap(), 0.0));
        let diff = payload_diff(rp_g.path_payload(), &expected);
        report.push(format!("r_P(gZ) = sgn(g) r_P(Z) for g = {:?}", perm), diff, check_tol);
    }
    Ok(report)
}
