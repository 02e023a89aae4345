//! Adaptive Gauss–Legendre quadrature with geometric endpoint subdivision for
//! logarithmic singularities, and the oriented arc integrals of the regulator.


use once_cell::sync::Lazy;

use crate::chow_cycles::RationalFunction;
use crate::coefficients::C64;
use crate::real_arcs::{Arc, Chart};

use super::{special::log_branch, EngineError};

/// Gauss–Legendre nodes and weights on [−1, 1] by Newton iteration.
fn gl_rule(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    for i in 0..n {
        // Chebyshev initial guess
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        for _ in 0..100 {
            // Legendre P_n and its derivative via the recurrence
            let (mut p0, mut p1) = (1.0f64, x);
            for k in 2..=n {
                let p2 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
                p0 = p1;
                p1 = p2;
            }
            let dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
            let dx = p1 / dp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let (mut p0, mut p1) = (1.0f64, x);
        for k in 2..=n {
            let p2 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
            p0 = p1;
            p1 = p2;
        }
        let dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
        nodes[i] = x;
        weights[i] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
    (nodes, weights)
}

static GL10: Lazy<(Vec<f64>, Vec<f64>)> = Lazy::new(|| gl_rule(10));
static GL20: Lazy<(Vec<f64>, Vec<f64>)> = Lazy::new(|| gl_rule(20));

fn panel<F>(f: &mut F, a: f64, b: f64) -> Result<(C64, f64), EngineError>
where
    F: FnMut(f64) -> Result<C64, EngineError>,
{
    let mid = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let eval_rule = |f: &mut F, rule: &(Vec<f64>, Vec<f64>)| -> Result<C64, EngineError> {
        let mut acc = C64::new(0.0, 0.0);
        for (x, w) in rule.0.iter().zip(rule.1.iter()) {
            acc += f(mid + half * x)? * *w;
        }
        Ok(acc * half)
    };
    let coarse = eval_rule(f, &GL10)?;
    let fine = eval_rule(f, &GL20)?;
    Ok((fine, (fine - coarse).norm()))
}

/// Adaptive integration of f over [0, 1] with initial geometric ladders
/// toward both endpoints (integrable log singularities allowed there).
///
/// Panels too small to split at f64 resolution are frozen; their error stays
/// in the reported estimate. The ladder near 1 is shallower than near 0
/// because the floating-point grid is coarser there.
pub fn integrate_unit_interval<F>(
    mut f: F,
    abs_tol: f64,
    max_panels: usize,
) -> Result<(C64, f64), EngineError>
where
    F: FnMut(f64) -> Result<C64, EngineError>,
{
    // ladder floor ~5e-13: Gauss nodes stay ≥ 1e-15 away from the endpoints,
    // so endpoint-anchored quantities (1 − t, t − pole) remain resolvable
    let levels_lo = 40i32;
    let levels_hi = 40i32;
    let mut bounds: Vec<f64> = Vec::new();
    for j in (0..=levels_lo).rev() {
        bounds.push(0.5f64.powi(j + 1));
    }
    for j in 1..=levels_hi {
        bounds.push(1.0 - 0.5f64.powi(j + 1));
    }
    bounds.dedup();

    struct Piece {
        a: f64,
        b: f64,
        value: C64,
        err: f64,
        frozen: bool,
    }
    let mut pieces: Vec<Piece> = Vec::new();
    let mut lo = 0.0f64;
    for &hi in bounds.iter().chain(std::iter::once(&1.0)) {
        if hi <= lo {
            continue;
        }
        let (value, err) = panel(&mut f, lo, hi)?;
        pieces.push(Piece { a: lo, b: hi, value, err, frozen: false });
        lo = hi;
    }
    loop {
        let total_err: f64 = pieces.iter().map(|p| p.err).sum();
        if total_err <= abs_tol {
            break;
        }
        if pieces.len() >= max_panels {
            return Err(EngineError::Quadrature(format!(
                "tolerance {} not reached within {} panels (err {})",
                abs_tol, max_panels, total_err
            )));
        }
        let worst = pieces
            .iter()
            .enumerate()
            .filter(|(_, p)| !p.frozen)
            .max_by(|(_, p), (_, q)| p.err.total_cmp(&q.err))
            .map(|(i, _)| i);
        let Some(worst) = worst else {
            break; // only irreducible roundoff-floor panels remain
        };
        let Piece { a, b, .. } = pieces[worst];
        let mid = 0.5 * (a + b);
        if mid <= a || mid >= b {
            pieces[worst].frozen = true;
            continue;
        }
        let (v1, e1) = panel(&mut f, a, mid)?;
        let (v2, e2) = panel(&mut f, mid, b)?;
        pieces[worst] = Piece { a, b: mid, value: v1, err: e1, frozen: false };
        pieces.push(Piece { a: mid, b, value: v2, err: e2, frozen: false });
    }
    let value = pieces.iter().fold(C64::new(0.0, 0.0), |acc, p| acc + p.value);
    let err = pieces.iter().map(|p| p.err).sum();
    Ok((value, err))
}

/// Integrand of an arc integral: ∫ Π_j log(φ_j) · dlog(φ_k) over the arc.
#[derive(Clone, Debug)]
pub struct ArcIntegrand {
    pub log_slots: Vec<usize>,
    pub dlog_slot: usize,
}

/// Coordinates of one curve component in both charts.
pub struct ChartedCoords {
    pub t: Vec<RationalFunction<C64>>,
    pub u: Vec<RationalFunction<C64>>,
}

impl ChartedCoords {
    pub fn new(coords: &[RationalFunction<C64>]) -> Self {
        ChartedCoords {
            t: coords.to_vec(),
            u: coords.iter().map(|c| c.reciprocal_chart()).collect(),
        }
    }

    fn in_chart(&self, chart: Chart) -> &[RationalFunction<C64>] {
        match chart {
            Chart::T => &self.t,
            Chart::U => &self.u,
        }
    }
}

/// Oriented integral over one arc (pole → zero): −∫₀¹ F(σ) dσ where the arc
/// is parametrized by σ with φ(t(σ)) = −σ/(1−σ).
pub fn integrate_over_arc(
    arc: &Arc,
    coords: &ChartedCoords,
    integrand: &ArcIntegrand,
    abs_tol: f64,
) -> Result<(C64, f64), EngineError> {
    let f = |sigma: f64| -> Result<C64, EngineError> {
        let (chart, pos) = arc
            .solve_at(sigma)
            .map_err(|e| EngineError::Quadrature(e.to_string()))?;
        let cs = coords.in_chart(chart);
        let mut value = C64::new(1.0, 0.0);
        for &j in &integrand.log_slots {
            let rf = &cs[j];
            let den = rf.den.eval(&pos);
            if den.norm() == 0.0 {
                return Err(EngineError::Quadrature(format!(
                    "log argument has a pole on the arc interior (slot {})",
                    j + 1
                )));
            }
            let arg = rf.num.eval(&pos) / den;
            value *= log_branch(arg).map_err(|_| {
                EngineError::Quadrature(format!(
                    "log argument crosses the branch cut on the arc interior (slot {})",
                    j + 1
                ))
            })?;
        }
        let rf = &cs[integrand.dlog_slot];
        let n = rf.num.eval(&pos);
        let d = rf.den.eval(&pos);
        let dn = rf.num.derivative().eval(&pos);
        let dd = rf.den.derivative().eval(&pos);
        if n.norm() == 0.0 || d.norm() == 0.0 {
            return Err(EngineError::Quadrature(format!(
                "dlog argument hits 0/infinity on the arc interior (slot {})",
                integrand.dlog_slot + 1
            )));
        }
        let dlog = dn / n - dd / d;
        let velocity = arc.velocity(sigma, chart, pos);
        Ok(value * dlog * velocity)
    };
    let (val, err) = integrate_unit_interval(f, abs_tol, 4000)?;
    // orientation pole → zero runs σ from 1 to 0
    Ok((-val * arc.multiplicity as f64, err * arc.multiplicity as f64))
}
