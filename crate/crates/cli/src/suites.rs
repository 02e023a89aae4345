//! Runtime verification suites: the exact structural identities, runnable
//! from the command line with a nonzero exit on any failure.

use deligne::chow_cycles::{totaro_c, totaro_d};
use deligne::coefficients::{rat, GaussianRational, Rational, TauScalar};
use deligne::formal_currents::{build_rc, build_rp, FormalSum, Letter, Word};
use deligne::simplex_forms::PolyForm;
use deligne::three_term::{boxtimes_alpha, GcaElement, GcaRing, SlotAlgebra, Triple};
use num::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

pub struct CheckLine {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

impl CheckLine {
    fn ok(name: impl Into<String>) -> Self {
        CheckLine { name: name.into(), pass: true, detail: "exact".into() }
    }

    fn fail(name: impl Into<String>, detail: impl Into<String>) -> Self {
        CheckLine { name: name.into(), pass: false, detail: detail.into() }
    }

    fn assert(name: impl Into<String>, pass: bool, detail: impl Into<String>) -> Self {
        if pass {
            CheckLine::ok(name)
        } else {
            CheckLine::fail(name, detail)
        }
    }
}

pub fn to_json(lines: &[CheckLine]) -> Value {
    json!(lines
        .iter()
        .map(|l| json!({"name": l.name, "pass": l.pass, "detail": l.detail}))
        .collect::<Vec<_>>())
}

pub fn comparison_suite(max_n: usize) -> Vec<CheckLine> {
    let mut out = Vec::new();
    for n in 1..=max_n {
        let ev = build_rp(n).ev_words();
        let alt = build_rc(n).alt_push();
        out.push(CheckLine::assert(
            format!("ev(R^{n}_P) = alt_*(R^{n}_C)"),
            ev.a == alt.a && ev.b == alt.b && ev.c == alt.c,
            "slot mismatch",
        ));
        let refined = build_rc(n).alt_third();
        let integral_first_two = refined
            .a
            .terms()
            .chain(refined.b.terms())
            .all(|(_, c)| {
                c.f.iter().chain(c.g.iter()).all(|t| t.is_integral())
            });
        out.push(CheckLine::assert(
            format!("ev(R^{n}_P) = (id, id, alt)(R^{n}_C), integral first slots"),
            ev.a == refined.a && ev.b == refined.b && ev.c == refined.c && integral_first_two,
            "refinement mismatch",
        ));
    }
    out
}

fn tau(k: i64) -> TauScalar {
    TauScalar::tau_pow(k, Rational::one())
}

fn divisor_class() -> FormalSum {
    FormalSum::from_terms(
        1,
        vec![
            (Word(vec![Letter::Pt0]), PolyForm::constant(tau(1))),
            (Word(vec![Letter::PtInf]), PolyForm::constant(-&tau(1))),
        ],
    )
}

fn face_insertion_sum(n: usize) -> FormalSum {
    let base = if n == 1 { FormalSum::unit() } else { build_rp(n - 1) };
    let mut acc = FormalSum::zero(n);
    for i in 0..n {
        for (pt, sc) in [(Letter::Pt0, tau(1)), (Letter::PtInf, -&tau(1))] {
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

pub fn differential_suite(max_n: usize) -> Vec<CheckLine> {
    let mut out = Vec::new();
    out.push(CheckLine::assert(
        "dR^1 = τ([0] − [∞])",
        build_rp(1).differential() == divisor_class(),
        "mismatch",
    ));
    for n in 1..=max_n {
        let d = build_rp(n).differential();
        out.push(CheckLine::assert(
            format!("dR^{n} equals the alternating face-insertion sum"),
            d == face_insertion_sum(n),
            "mismatch",
        ));
        out.push(CheckLine::assert(
            format!("d² R^{n} = 0"),
            d.differential().is_zero(),
            "nonzero",
        ));
    }
    out
}

pub fn homotopy_suite() -> Vec<CheckLine> {
    let mut out = Vec::new();
    // ev ∘ s = id on a spread of triples
    let mut all_split = true;
    for a in -3i64..=3 {
        for b in -2i64..=2 {
            let t = deligne::simplex_forms::EvTriple {
                at0: TauScalar::from_int(a),
                at1: TauScalar::from_int(b),
                integral: TauScalar::from_rational(rat(a + 2 * b, 7)),
            };
            if t.split_s().ev_map() != t {
                all_split = false;
            }
        }
    }
    out.push(CheckLine::assert("ev ∘ s = id", all_split, "splitting failed"));
    // dh + hd = s∘ev − id on all monomials of degree ≤ 10
    let mut all_monomials = true;
    for k in 0..=10usize {
        for w in [PolyForm::<TauScalar>::x_pow(k), PolyForm::x_pow_dx(k)] {
            let lhs = w.homotopy_h().differential().add(&w.differential().homotopy_h());
            let rhs = w.ev_map().split_s().sub(&w);
            if lhs != rhs {
                all_monomials = false;
            }
        }
    }
    out.push(CheckLine::assert(
        "dh + hd = s∘ev − id on monomials x^k, x^k dx, k ≤ 10",
        all_monomials,
        "identity failed",
    ));
    out
}

fn random_triples(rng: &mut ChaCha8Rng, count: usize) -> Vec<Triple<GcaElement>> {
    let mut base_degrees = Vec::new();
    let mut degrees = Vec::new();
    for _ in 0..count {
        let r: u32 = rng.gen_range(1..4);
        degrees.push(r);
        base_degrees.extend_from_slice(&[r, r, r - 1]);
    }
    let (ring, gens) = GcaRing::with_differentials(&base_degrees);
    (0..count)
        .map(|i| {
            Triple::new(
                GcaElement::generator(&ring, gens[3 * i]),
                GcaElement::generator(&ring, gens[3 * i + 1]),
                GcaElement::generator(&ring, gens[3 * i + 2]),
                degrees[i] as i64,
            )
        })
        .collect()
}

pub fn products_suite(seed: u64) -> Vec<CheckLine> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut assoc_ok = true;
    let mut comm_ok = true;
    let mut leibniz_ok = true;
    for _ in 0..200 {
        let ts = random_triples(&mut rng, 3);
        let (t, u, v) = (&ts[0], &ts[1], &ts[2]);
        for alpha in [Rational::zero(), Rational::one()] {
            let lhs = Triple::product_alpha(&alpha, &Triple::product_alpha(&alpha, t, u), v);
            let rhs = Triple::product_alpha(&alpha, t, &Triple::product_alpha(&alpha, u, v));
            if lhs != rhs {
                assoc_ok = false;
            }
        }
        let half = rat(1, 2);
        let lhs = Triple::product_alpha(&half, t, u);
        let mut rhs = Triple::product_alpha(&half, u, t);
        if (t.degree * u.degree).rem_euclid(2) == 1 {
            rhs = Triple::new(rhs.a.neg(), rhs.b.neg(), rhs.c.neg(), rhs.degree);
        }
        if lhs != rhs {
            comm_ok = false;
        }
        let alpha = rat(rng.gen_range(-3i64..=3), rng.gen_range(1i64..=4));
        let lhs = Triple::product_alpha(&alpha, t, u).tot_differential();
        let mut du_term = Triple::product_alpha(&alpha, t, &u.tot_differential());
        if t.degree.rem_euclid(2) == 1 {
            du_term =
                Triple::new(du_term.a.neg(), du_term.b.neg(), du_term.c.neg(), du_term.degree);
        }
        let dt_term = Triple::product_alpha(&alpha, &t.tot_differential(), u);
        let rhs = Triple::new(
            dt_term.a.add(&du_term.a),
            dt_term.b.add(&du_term.b),
            dt_term.c.add(&du_term.c),
            dt_term.degree,
        );
        if lhs != rhs {
            leibniz_ok = false;
        }
    }
    // exterior ⊠₀ associativity on the kernel factors
    let r1 = deligne::formal_currents::r1_triple();
    let zero = Rational::zero();
    let left = boxtimes_alpha(&zero, &boxtimes_alpha(&zero, &r1, &r1), &r1);
    let right = boxtimes_alpha(&zero, &r1, &boxtimes_alpha(&zero, &r1, &r1));
    vec![
        CheckLine::assert(
            "product_alpha associative at α ∈ {0, 1} (200 randomized)",
            assoc_ok,
            "failed",
        ),
        CheckLine::assert(
            "product_alpha graded-commutative at α = 1/2 (200 randomized)",
            comm_ok,
            "failed",
        ),
        CheckLine::assert("tot_differential Leibniz for product_alpha", leibniz_ok, "failed"),
        CheckLine::assert(
            "⊠₀ associative on R¹_C factors",
            left.a == right.a && left.b == right.b && left.c == right.c,
            "failed",
        ),
    ]
}

pub fn boundary_suite() -> Vec<CheckLine> {
    let mut out = Vec::new();
    let samples = [
        GaussianRational::from_rational(rat(1, 2)),
        GaussianRational::from_rational(rat(1, 3)),
        GaussianRational::new(rat(3, 10), rat(1, 5)),
    ];
    for a in &samples {
        let c = match totaro_c(a) {
            Ok(c) => c,
            Err(e) => {
                out.push(CheckLine::fail("construct C(a)", e.to_string()));
                continue;
            }
        };
        let boundary = match c.bloch_boundary() {
            Ok(b) => b,
            Err(e) => {
                out.push(CheckLine::fail("∂C(a)", e.to_string()));
                continue;
            }
        };
        let one_minus = &GaussianRational::one() - a;
        let expected = boundary.points.len() == 1 && {
            let (m, vs) = &boundary.points[0];
            *m == -Rational::one() && vs[0] == *a && vs[1] == one_minus
        };
        out.push(CheckLine::assert(
            format!("∂C({}) = −({}, {})", a, a, one_minus),
            expected,
            format!("{:?}", boundary),
        ));
        out.push(CheckLine::assert(
            format!("∂² = 0 on C({})", a),
            boundary.bloch_boundary().is_zero(),
            "nonzero",
        ));
        let z = c.sub(&totaro_d(&one_minus).unwrap()).unwrap();
        out.push(CheckLine::assert(
            format!("∂(C({a}) − D(1−{a})) = 0", a = a),
            z.bloch_boundary().map(|b| b.is_zero()).unwrap_or(false),
            "nonzero",
        ));
        let lhs = c.alt_cycle().bloch_boundary().unwrap();
        let rhs = c.bloch_boundary().unwrap().alt();
        out.push(CheckLine::assert(
            format!("alt ∘ ∂ = ∂ ∘ alt on C({})", a),
            lhs == rhs,
            "mismatch",
        ));
    }
    let c1 = totaro_c(&GaussianRational::from_int(1)).unwrap();
    out.push(CheckLine::assert(
        "∂C(1) = 0 (Totaro's cycle is closed)",
        c1.bloch_boundary().map(|b| b.is_zero()).unwrap_or(false),
        "nonzero",
    ));
    let alt = c1.alt_cycle();
    out.push(CheckLine::assert(
        "alt C(1) has 6 components of multiplicity ±1/6",
        alt.components.len() == 6
            && alt.components.iter().all(|comp| {
                comp.multiplicity == rat(1, 6) || comp.multiplicity == rat(-1, 6)
            }),
        format!("{} components", alt.components.len()),
    ));
    out
}

pub fn run_suite(name: &str, max_n: usize, seed: u64) -> Result<Vec<CheckLine>, String> {
    match name {
        "comparison" => Ok(comparison_suite(max_n)),
        "differential" => Ok(differential_suite(max_n)),
        "homotopy" => Ok(homotopy_suite()),
        "products" => Ok(products_suite(seed)),
        "boundary" => Ok(boundary_suite()),
        "all" => {
            let mut out = comparison_suite(max_n);
            out.extend(differential_suite(max_n));
            out.extend(homotopy_suite());
            out.extend(products_suite(seed));
            out.extend(boundary_suite());
            Ok(out)
        }
        other => Err(format!(
            "unknown suite '{}': expected comparison|differential|homotopy|products|boundary|all",
            other
        )),
    }
}
