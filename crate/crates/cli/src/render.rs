//! Paper-style text rendering and JSON encoding of the formal kernels.

use deligne::coefficients::{Rational, TauScalar};
use deligne::formal_currents::{FormalSum, FormalTriple, Letter, Word};
use deligne::simplex_forms::PolyForm;
use num::{One, Signed, Zero};
use serde_json::{json, Value};

fn rational_str(q: &Rational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

fn tau_power_str(k: i64) -> Option<String> {
    match k {
        0 => None,
        1 => Some("2πi".to_string()),
        _ => Some(format!("(2πi)^{}", k)),
    }
}

fn letter_str(l: Letter, idx: usize, n: usize) -> String {
    let z = if n == 1 { "z".to_string() } else { format!("z{}", idx + 1) };
    match l {
        Letter::RNeg => "ℝ⁻".to_string(),
        Letter::DLog => format!("dlog {}", z),
        Letter::Log => format!("log {}", z),
        Letter::Pt0 => format!("[0]_{}", idx + 1),
        Letter::PtInf => format!("[∞]_{}", idx + 1),
    }
}

fn word_str(w: &Word, n: usize) -> String {
    w.0.iter()
        .enumerate()
        .map(|(i, l)| letter_str(*l, i, n))
        .collect::<Vec<_>>()
        .join(" ⊠ ")
}

/// Scalar-coefficient term in paper style: "±q (2πi)^k ℝ⁻ ⊠ log z2".
fn scalar_term_str(coeff: &TauScalar, word: &Word, n: usize) -> String {
    let (k, q) = coeff
        .as_monomial()
        .map(|(k, q)| (k, q.clone()))
        .unwrap_or((0, Rational::one()));
    let mut parts: Vec<String> = Vec::new();
    let mag = q.abs();
    if !mag.is_one() {
        parts.push(rational_str(&mag));
    }
    if let Some(tp) = tau_power_str(k) {
        parts.push(tp);
    }
    parts.push(word_str(word, n));
    let body = parts.join(" ");
    if q.is_negative() {
        format!("- {}", body)
    } else {
        body
    }
}

/// Render one slot of a formal triple as a signed sum.
pub fn render_scalar_sum(sum: &FormalSum) -> String {
    if sum.is_zero() {
        return "0".to_string();
    }
    let n = sum.slots();
    let mut out = String::new();
    let mut ordered: Vec<_> = sum.terms().collect();
    ordered.sort_by_key(|(w, _)| (w.count(Letter::RNeg), (*w).clone()));
    for (i, (word, coeff)) in ordered.into_iter().enumerate() {
        let scalar = coeff.evaluate_at(0);
        let term = scalar_term_str(&scalar, word, n);
        if i == 0 {
            out.push_str(&term);
        } else if let Some(rest) = term.strip_prefix("- ") {
            out.push_str(" - ");
            out.push_str(rest);
        } else {
            out.push_str(" + ");
            out.push_str(&term);
        }
    }
    out
}

pub fn render_triple(t: &FormalTriple) -> String {
    format!(
        "({}, {}, {})",
        render_scalar_sum(&t.a),
        render_scalar_sum(&t.b),
        render_scalar_sum(&t.c)
    )
}

fn simplex_poly_str(coeffs: &[Rational]) -> String {
    // polynomial in x with rational coefficients; pretty factorizations are
    // not attempted, terms are printed as q·x^k
    let mut parts = Vec::new();
    for (k, q) in coeffs.iter().enumerate() {
        if q.is_zero() {
            continue;
        }
        let mag = q.abs();
        let var = match k {
            0 => String::new(),
            1 => "x".to_string(),
            _ => format!("x^{}", k),
        };
        let body = if var.is_empty() {
            rational_str(&mag)
        } else if mag.is_one() {
            var
        } else {
            format!("{} {}", rational_str(&mag), var)
        };
        if parts.is_empty() {
            parts.push(if q.is_negative() { format!("-{}", body) } else { body });
        } else {
            parts.push(format!("{} {}", if q.is_negative() { "-" } else { "+" }, body));
        }
    }
    if parts.is_empty() {
        "0".to_string()
    } else {
        parts.join(" ")
    }
}

/// Decompose a τ-homogeneous PolyForm into (τ-power, f-coeffs, g-coeffs).
pub fn split_tau_polyform(p: &PolyForm<TauScalar>) -> Option<(i64, Vec<Rational>, Vec<Rational>)> {
    let mut power: Option<i64> = None;
    let mut extract = |c: &TauScalar| -> Option<Rational> {
        if c.is_zero() {
            return Some(Rational::from_integer(0.into()));
        }
        let (k, q) = c.as_monomial()?;
        match power {
            None => {
                power = Some(k);
                Some(q.clone())
            }
            Some(existing) if existing == k => Some(q.clone()),
            _ => None,
        }
    };
    let f: Option<Vec<Rational>> = p.f.iter().map(&mut extract).collect();
    let f = f?;
    let g: Option<Vec<Rational>> = p.g.iter().map(&mut extract).collect();
    let g = g?;
    Some((power.unwrap_or(0), f, g))
}

/// Path-model term in paper style: "coeff(x) [dx] word", with τ-power shown.
fn path_term_str(coeff: &PolyForm<TauScalar>, word: &Word, n: usize) -> String {
    match split_tau_polyform(coeff) {
        Some((k, f, g)) => {
            let mut pieces = Vec::new();
            if f.iter().any(|q| !q.is_zero()) {
                pieces.push(format!("({})", simplex_poly_str(&f)));
            }
            if g.iter().any(|q| !q.is_zero()) {
                pieces.push(format!("({}) dx", simplex_poly_str(&g)));
            }
            let mut head = pieces.join(" + ");
            if let Some(tp) = tau_power_str(k) {
                head = format!("{} {}", head, tp);
            }
            format!("{} · {}", head, word_str(word, n))
        }
        None => format!("{} · {}", coeff, word_str(word, n)),
    }
}

pub fn render_path_sum(sum: &FormalSum) -> String {
    let n = sum.slots();
    let mut lines: Vec<String> = Vec::new();
    // 0-form terms first, then dx terms, mirroring the printed displays
    let mut ordered: Vec<_> = sum.terms().collect();
    ordered.sort_by_key(|(w, c)| (!c.part1().is_zero(), (*w).clone()));
    for (word, coeff) in ordered {
        lines.push(path_term_str(coeff, word, n));
    }
    lines.join("\n+ ")
}

/// JSON term list per the external interface:
/// {word: ["RNEG", ...], f: [...], g: [...], tau: k}.
pub fn path_sum_json(sum: &FormalSum) -> Value {
    let terms: Vec<Value> = sum
        .terms()
        .map(|(word, coeff)| {
            let (tau, f, g) = split_tau_polyform(coeff)
                .expect("kernel coefficients are tau-homogeneous");
            json!({
                "word": word.0.iter().map(|l| l.name()).collect::<Vec<_>>(),
                "f": f.iter().map(rational_str).collect::<Vec<_>>(),
                "g": g.iter().map(rational_str).collect::<Vec<_>>(),
                "tau": tau,
            })
        })
        .collect();
    json!(terms)
}

pub fn scalar_sum_json(sum: &FormalSum) -> Value {
    let terms: Vec<Value> = sum
        .terms()
        .map(|(word, coeff)| {
            let scalar = coeff.evaluate_at(0);
            let (tau, q) = scalar
                .as_monomial()
                .map(|(k, q)| (k, q.clone()))
                .unwrap_or((0, Rational::one()));
            json!({
                "word": word.0.iter().map(|l| l.name()).collect::<Vec<_>>(),
                "coefficient": rational_str(&q),
                "tau": tau,
            })
        })
        .collect();
    json!(terms)
}

pub fn triple_json(t: &FormalTriple) -> Value {
    json!({
        "a": scalar_sum_json(&t.a),
        "b": scalar_sum_json(&t.b),
        "c": scalar_sum_json(&t.c),
        "degree": t.degree,
    })
}
