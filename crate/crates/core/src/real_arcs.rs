//! Extraction and orientation of the real-analytic arcs where a coordinate
//! function takes values in ℝ⁻ = [−∞, 0].
//!
//! For slot i with coordinate φ = num/den, the locus {φ(t) ∈ ℝ⁻} is swept by
//! the root paths of the homotopy P_σ(t) = (1−σ)·num(t) + σ·den(t), σ ∈ (0,1)
//! (so φ(t) = −σ/(1−σ)). Paths run from the zeros of φ (σ → 0) to its poles
//! (σ → 1); the arc orientation is pole → zero, matching ∂ℝ⁻ = 0 − ∞.
//! The point t = ∞ is handled in the chart u = 1/t.



use crate::chow_cycles::{durand_kerner, CycleScalar, Poly, RationalFunction};
use crate::coefficients::C64;

#[derive(Debug, Clone, thiserror::Error)]
pub enum ArcError {
    #[error("continuation breakdown: {0}")]
    Continuation(String),
    #[error("root solving failed: {0}")]
    RootSolve(String),
    #[error("constant coordinate has no arcs")]
    ConstantCoordinate,
}

/// Which coordinate chart of P¹ a position lives in.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Chart {
    /// The parameter t itself.
    T,
    /// u = 1/t near infinity.
    U,
}

#[derive(Clone, Copy, Debug)]
pub struct ArcNode {
    pub sigma: f64,
    pub chart: Chart,
    pub pos: C64,
}

impl ArcNode {
    /// Finite t-value, if the node is not at infinity.
    pub fn t_value(&self) -> Option<C64> {
        match self.chart {
            Chart::T => Some(self.pos),
            Chart::U => {
                if self.pos.norm() < 1e-300 {
                    None
                } else {
                    Some(1.0 / self.pos)
                }
            }
        }
    }
}

/// Endpoint of an arc on P¹.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum ProjPoint {
    Finite(C64),
    Infinity,
}

/// One oriented arc of the ℝ⁻ preimage for a fixed slot.
#[derive(Clone, Debug)]
pub struct Arc {
    pub slot: usize,
    pub multiplicity: usize,
    /// σ-ordered samples from the zero end (σ→0) to the pole end (σ→1).
    pub nodes: Vec<ArcNode>,
    /// t-value of the zero of φ this arc terminates at (boundary +).
    pub zero_endpoint: ProjPoint,
    /// t-value of the pole of φ this arc starts at (boundary −).
    pub pole_endpoint: ProjPoint,
    /// Homotopy data in the t chart: (num, den) of φ.
    pub num_t: Poly<C64>,
    pub den_t: Poly<C64>,
    /// The same in the u = 1/t chart.
    pub num_u: Poly<C64>,
    pub den_u: Poly<C64>,
}

impl Arc {
    /// Solve P_σ = 0 near the arc, Newton-seeded from the stored nodes.
    /// Returns the chart and position of the arc point at this σ.
    pub fn solve_at(&self, sigma: f64) -> Result<(Chart, C64), ArcError> {
        let idx = match self
            .nodes
            .binary_search_by(|n| n.sigma.partial_cmp(&sigma).unwrap())
        {
            Ok(i) => i,
            Err(i) => i.min(self.nodes.len() - 1),
        };
        let seed = &self.nodes[idx];
        let (mut chart, mut pos) = (seed.chart, seed.pos);
        for _attempt in 0..2 {
            match newton_homotopy(self.poly_pair(chart), sigma, pos) {
                Some(root) => {
                    if root.norm() > 1.5 {
                        // re-polish in the other chart for conditioning
                        let flipped = 1.0 / root;
                        let other = flip(chart);
                        if let Some(refined) = newton_homotopy(self.poly_pair(other), sigma, flipped)
                        {
                            return Ok((other, refined));
                        }
                    }
                    return Ok((chart, root));
                }
                None => {
                    chart = flip(chart);
                    pos = if pos.norm() < 1e-300 { C64::new(1e300, 0.0) } else { 1.0 / pos };
                }
            }
        }
        Err(ArcError::RootSolve(format!(
            "Newton did not converge at sigma = {} on slot {}",
            sigma, self.slot
        )))
    }

    fn poly_pair(&self, chart: Chart) -> (&Poly<C64>, &Poly<C64>) {
        match chart {
            Chart::T => (&self.num_t, &self.den_t),
            Chart::U => (&self.num_u, &self.den_u),
        }
    }

    /// d(pos)/dσ at an arc point: −∂P/∂σ / ∂P/∂pos with P = (1−σ)num + σden.
    pub fn velocity(&self, sigma: f64, chart: Chart, pos: C64) -> C64 {
        let (num, den) = self.poly_pair(chart);
        let dp_dsigma = den.eval(&pos) - num.eval(&pos);
        let dp_dpos =
            num.derivative().eval(&pos) * (1.0 - sigma) + den.derivative().eval(&pos) * sigma;
        -dp_dsigma / dp_dpos
    }
}

fn flip(c: Chart) -> Chart {
    match c {
        Chart::T => Chart::U,
        Chart::U => Chart::T,
    }
}

fn newton_homotopy((num, den): (&Poly<C64>, &Poly<C64>), sigma: f64, seed: C64) -> Option<C64> {
    let p = |z: &C64| num.eval(z) * (1.0 - sigma) + den.eval(z) * sigma;
    let dnum = num.derivative();
    let dden = den.derivative();
    let dp = |z: &C64| dnum.eval(z) * (1.0 - sigma) + dden.eval(z) * sigma;
    let mut z = seed;
    let mut last = f64::INFINITY;
    for _ in 0..80 {
        let val = p(&z);
        let deriv = dp(&z);
        if deriv.norm() < 1e-280 {
            return None;
        }
        let step = val / deriv;
        z -= step;
        let s = step.norm();
        if s < 1e-14 * z.norm().max(1.0) {
            return Some(z);
        }
        if s > 10.0 * last && last < 1e-6 {
            return Some(z); // converged then dithered at roundoff
        }
        last = s;
    }
    None
}

/// Chordal metric on P¹ (handles crossings through ∞).
pub(crate) fn chordal(a: C64, b: C64) -> f64 {
    let na = (1.0 + a.norm_sqr()).sqrt();
    let nb = (1.0 + b.norm_sqr()).sqrt();
    (a - b).norm() / (na * nb)
}

fn as_chart_point(chart: Chart, pos: C64) -> C64 {
    match chart {
        Chart::T => pos,
        Chart::U => {
            if pos.norm() < 1e-300 {
                C64::new(f64::MAX, 0.0)
            } else {
                1.0 / pos
            }
        }
    }
}

/// Default continuation grid: geometric clustering toward both endpoints.
pub fn default_sigma_grid(steps: usize) -> Vec<f64> {
    let half = steps / 2;
    let lo = 1e-9f64;
    let hi = 0.5f64;
    let ratio = (hi / lo).powf(1.0 / (half.saturating_sub(1)).max(1) as f64);
    let mut grid = Vec::with_capacity(steps);
    let mut v = lo;
    for _ in 0..half {
        grid.push(v);
        v *= ratio;
    }
    let mirrored: Vec<f64> = grid.iter().rev().map(|s| 1.0 - s).collect();
    grid.extend(mirrored);
    grid.dedup();
    grid
}

/// Extract the oriented arcs of {φ_slot ∈ ℝ⁻} for a curve parametrization.
pub fn extract_arcs(
    coords: &[RationalFunction<C64>],
    slot: usize,
    grid_steps: usize,
) -> Result<Vec<Arc>, ArcError> {
    let phi = &coords[slot];
    if phi.is_constant() {
        return Err(ArcError::ConstantCoordinate);
    }
    let num_t = phi.num.clone();
    let den_t = phi.den.clone();
    let recip = phi.reciprocal_chart();
    let (num_u, den_u) = (recip.num.clone(), recip.den.clone());
    let degree = num_t
        .degree()
        .unwrap_or(0)
        .max(den_t.degree().unwrap_or(0));
    let grid = default_sigma_grid(grid_steps);

    // endpoints: zeros (σ=0) and poles (σ=1) of φ, including t = ∞
    let mut zeros: Vec<ProjPoint> = Vec::new();
    for (r, m) in num_t
        .roots()
        .map_err(|e| ArcError::RootSolve(e.to_string()))?
    {
        for _ in 0..m {
            zeros.push(ProjPoint::Finite(r));
        }
    }
    for _ in 0..phi.infinity_multiplicity(false) {
        zeros.push(ProjPoint::Infinity);
    }
    let mut poles: Vec<ProjPoint> = Vec::new();
    for (r, m) in den_t
        .roots()
        .map_err(|e| ArcError::RootSolve(e.to_string()))?
    {
        for _ in 0..m {
            poles.push(ProjPoint::Finite(r));
        }
    }
    for _ in 0..phi.infinity_multiplicity(true) {
        poles.push(ProjPoint::Infinity);
    }

    // root paths across the grid, matched by chordal proximity
    let mut paths: Vec<Vec<ArcNode>> = vec![Vec::with_capacity(grid.len()); degree];
    let mut previous: Option<Vec<C64>> = None; // t-chart representatives
    for &sigma in &grid {
        let homotopy: Vec<C64> = {
            let mut c = num_t.0.clone();
            c.resize(degree + 1, C64::new(0.0, 0.0));
            let mut d = den_t.0.clone();
            d.resize(degree + 1, C64::new(0.0, 0.0));
            c.iter()
                .zip(d.iter())
                .map(|(a, b)| a * (1.0 - sigma) + b * sigma)
                .collect()
        };
        // effective degree can drop if the leading coefficient cancels
        let mut coeffs = homotopy.clone();
        let scale = coeffs.iter().map(|z| z.norm()).fold(0.0, f64::max);
        while coeffs.len() > 1 && coeffs.last().unwrap().norm() <= scale * 1e-13 {
            coeffs.pop();
        }
        let mut roots: Vec<C64> = if coeffs.len() > 1 {
            durand_kerner(&coeffs)
        } else {
            vec![]
        };
        // degree deficit = roots at infinity
        while roots.len() < degree {
            roots.push(C64::new(f64::MAX, 0.0));
        }
        let assignment: Vec<usize> = match &previous {
            None => (0..degree).collect(),
            Some(prev) => greedy_match(prev, &roots),
        };
        let ordered: Vec<C64> = assignment.iter().map(|&j| roots[j]).collect();
        for (path, &t) in paths.iter_mut().zip(ordered.iter()) {
            let (chart, pos) = if t.norm() > 1.0 {
                (
                    Chart::U,
                    if t.re == f64::MAX { C64::new(0.0, 0.0) } else { 1.0 / t },
                )
            } else {
                (Chart::T, t)
            };
            path.push(ArcNode { sigma, chart, pos });
        }
        previous = Some(ordered);
    }

    // associate endpoints: nearest zero to the first node, nearest pole to the last
    let mut arcs: Vec<Arc> = Vec::new();
    for path in paths {
        let first = as_chart_point(path[0].chart, path[0].pos);
        let last = as_chart_point(path[path.len() - 1].chart, path[path.len() - 1].pos);
        let zero_endpoint = nearest(&zeros, first);
        let pole_endpoint = nearest(&poles, last);
        let candidate = Arc {
            slot,
            multiplicity: 1,
            nodes: path,
            zero_endpoint,
            pole_endpoint,
            num_t: num_t.clone(),
            den_t: den_t.clone(),
            num_u: num_u.clone(),
            den_u: den_u.clone(),
        };
        // coinciding paths (multiple roots) merge into one arc with multiplicity
        match arcs.iter_mut().find(|a| paths_coincide(a, &candidate)) {
            Some(existing) => existing.multiplicity += 1,
            None => arcs.push(candidate),
        }
    }
    Ok(arcs)
}

fn nearest(points: &[ProjPoint], target: C64) -> ProjPoint {
    let target_proj = if target.re == f64::MAX { None } else { Some(target) };
    let mut best = ProjPoint::Infinity;
    let mut best_d = f64::INFINITY;
    for p in points {
        let d = match (p, target_proj) {
            (ProjPoint::Finite(q), Some(t)) => chordal(*q, t),
            (ProjPoint::Finite(q), None) => 1.0 / (1.0 + q.norm_sqr()).sqrt(),
            (ProjPoint::Infinity, Some(t)) => 1.0 / (1.0 + t.norm_sqr()).sqrt(),
            (ProjPoint::Infinity, None) => 0.0,
        };
        if d < best_d {
            best_d = d;
            best = *p;
        }
    }
    if points.is_empty() {
        ProjPoint::Infinity
    } else {
        best
    }
}

fn greedy_match(prev: &[C64], roots: &[C64]) -> Vec<usize> {
    let n = prev.len();
    let mut taken = vec![false; n];
    let mut assignment = vec![0usize; n];
    // visit previous points in order of their tightest available match
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| {
        let da = roots
            .iter()
            .map(|r| chordal(prev[a], *r))
            .fold(f64::INFINITY, f64::min);
        let db = roots
            .iter()
            .map(|r| chordal(prev[b], *r))
            .fold(f64::INFINITY, f64::min);
        da.partial_cmp(&db).unwrap()
    });
    for &i in &order {
        let mut best = usize::MAX;
        let mut best_d = f64::INFINITY;
        for (j, r) in roots.iter().enumerate() {
            if taken[j] {
                continue;
            }
            let d = chordal(prev[i], *r);
            if d < best_d {
                best_d = d;
                best = j;
            }
        }
        assignment[i] = best;
        taken[best] = true;
    }
    assignment
}

fn paths_coincide(a: &Arc, b: &Arc) -> bool {
    if a.nodes.len() != b.nodes.len() {
        return false;
    }
    a.nodes.iter().zip(b.nodes.iter()).all(|(x, y)| {
        chordal(as_chart_point(x.chart, x.pos), as_chart_point(y.chart, y.pos)) < 1e-8
    })
}

/// A transversal crossing of two arcs in the parameter plane.
#[derive(Clone, Copy, Debug)]
pub struct Crossing {
    pub t: C64,
    /// Orientation sign: sgn Im(conj(τ_i)·τ_j) for the (i, j) tangents.
    pub sign: i32,
    pub sigma_i: f64,
    pub sigma_j: f64,
}

#[derive(Clone, Debug, Default)]
pub struct PairwiseReport {
    pub crossings: Vec<Crossing>,
    pub overlap: bool,
}

impl PairwiseReport {
    pub fn proper(&self) -> bool {
        !self.overlap
    }
}

/// Detect intersections of two arc families in parameter space: finite
/// transversal crossings are proper, overlapping segments are not.
pub fn pairwise_proper(arcs_i: &[Arc], arcs_j: &[Arc], tol: f64) -> PairwiseReport {
    let mut report = PairwiseReport::default();
    for a in arcs_i {
        for b in arcs_j {
            pair_scan(a, b, tol, &mut report);
        }
    }
    report
}

fn pair_scan(a: &Arc, b: &Arc, tol: f64, report: &mut PairwiseReport) {
    // coincidence fraction: nodes of a lying on b
    let mut coincident = 0usize;
    let b_points: Vec<C64> = b
        .nodes
        .iter()
        .map(|n| as_chart_point(n.chart, n.pos))
        .collect();
    for n in &a.nodes {
        let p = as_chart_point(n.chart, n.pos);
        if b_points.iter().any(|q| chordal(p, *q) < tol.max(1e-12)) {
            coincident += 1;
        }
    }
    if coincident > a.nodes.len() / 8 {
        report.overlap = true;
        return;
    }
    // segment-segment crossings in the finite t chart
    let seg = |arc: &Arc, k: usize| -> Option<(C64, C64, f64, f64)> {
        let n0 = arc.nodes[k];
        let n1 = arc.nodes[k + 1];
        let p0 = n0.t_value()?;
        let p1 = n1.t_value()?;
        if p0.norm() > 1e8 || p1.norm() > 1e8 {
            return None;
        }
        Some((p0, p1, n0.sigma, n1.sigma))
    };
    for k in 0..a.nodes.len() - 1 {
        let Some((a0, a1, sa0, sa1)) = seg(a, k) else { continue };
        for l in 0..b.nodes.len() - 1 {
            let Some((b0, b1, sb0, sb1)) = seg(b, l) else { continue };
            if let Some((s, u)) = segment_intersection(a0, a1, b0, b1) {
                let sigma_i = sa0 + (sa1 - sa0) * s;
                let sigma_j = sb0 + (sb1 - sb0) * u;
                // refine the crossing with Newton on both coordinates
                if let Some(c) = refine_crossing(a, b, sigma_i, sigma_j) {
                    // skip near-endpoint touchings: they lie on the cube boundary
                    let interior = |sigma: f64| sigma > 1e-7 && sigma < 1.0 - 1e-7;
                    if interior(c.sigma_i) && interior(c.sigma_j) {
                        let dup = report
                            .crossings
                            .iter()
                            .any(|prev| chordal(prev.t, c.t) < 1e-7);
                        if !dup {
                            report.crossings.push(c);
                        }
                    }
                }
            }
        }
    }
}

/// Parametric intersection of segments [a0, a1] and [b0, b1] in the plane.
fn segment_intersection(a0: C64, a1: C64, b0: C64, b1: C64) -> Option<(f64, f64)> {
    let d1 = a1 - a0;
    let d2 = b1 - b0;
    let denom = d1.re * (-d2.im) - (-d2.re) * d1.im;
    if denom.abs() < 1e-300 {
        return None;
    }
    let rhs = b0 - a0;
    let s = (rhs.re * (-d2.im) - (-d2.re) * rhs.im) / denom;
    let u = (d1.re * rhs.im - rhs.re * d1.im) / denom;
    if (0.0..=1.0).contains(&s) && (0.0..=1.0).contains(&u) {
        Some((s, u))
    } else {
        None
    }
}

/// Polish a crossing candidate: solve Im φ_a(t) = Im φ_b(t) = 0 by Newton in
/// the real plane, then validate both values lie in the interior of ℝ⁻.
fn refine_crossing(a: &Arc, b: &Arc, sigma_i: f64, _sigma_j: f64) -> Option<Crossing> {
    let (ca, pa) = a.solve_at(sigma_i.clamp(1e-9, 1.0 - 1e-9)).ok()?;
    let mut t = as_chart_point(ca, pa);
    let phi = |arc: &Arc, z: C64| -> (C64, C64) {
        let n = arc.num_t.eval(&z);
        let d = arc.den_t.eval(&z);
        let f = n / d;
        let dn = arc.num_t.derivative().eval(&z);
        let dd = arc.den_t.derivative().eval(&z);
        let fp = (dn * d - n * dd) / (d * d);
        (f, fp)
    };
    for _ in 0..60 {
        let (fa, fpa) = phi(a, t);
        let (fb, fpb) = phi(b, t);
        // F = (Im fa, Im fb); J rows (∂/∂x, ∂/∂y) = (Im f', Re f')
        let det = fpa.im * fpb.re - fpa.re * fpb.im;
        if det.abs() < 1e-250 {
            return None;
        }
        let dx = (fa.im * fpb.re - fb.im * fpa.re) / det;
        let dy = (fpa.im * fb.im - fpb.im * fa.im) / det;
        t -= C64::new(dx, dy);
        if dx.hypot(dy) < 1e-13 * t.norm().max(1.0) {
            break;
        }
    }
    let (fa, fpa) = phi(a, t);
    let (fb, fpb) = phi(b, t);
    if fa.im.abs() > 1e-8 || fb.im.abs() > 1e-8 || fa.re > -1e-9 || fb.re > -1e-9 {
        return None;
    }
    // oriented tangents: direction τ with φ'·τ real negative (falling toward −∞,
    // i.e. from the zero endpoint toward the pole), then reversed to match the
    // pole → zero orientation.
    let tangent = |fp: C64| -> C64 {
        let tau = fp.conj() / fp.norm();
        let along = (fp * tau).re;
        let toward_pole = if along > 0.0 { -tau } else { tau };
        -toward_pole
    };
    let ta = tangent(fpa);
    let tb = tangent(fpb);
    let cross = (ta.conj() * tb).im;
    let sign = if cross >= 0.0 { 1 } else { -1 };
    let to_sigma = |f: C64| {
        let s = -f.re;
        s / (1.0 + s)
    };
    Some(Crossing { t, sign, sigma_i: to_sigma(fa), sigma_j: to_sigma(fb) })
}

/// Arc dump for diagnostics.
pub fn arc_summary_json(arc: &Arc) -> serde_json::Value {
    let endpoint = |p: &ProjPoint| match p {
        ProjPoint::Finite(z) => serde_json::json!({"re": z.re, "im": z.im}),
        ProjPoint::Infinity => serde_json::json!("infinity"),
    };
    serde_json::json!({
        "slot": arc.slot + 1,
        "multiplicity": arc.multiplicity,
        "nodes": arc.nodes.len(),
        "zero_endpoint": endpoint(&arc.zero_endpoint),
        "pole_endpoint": endpoint(&arc.pole_endpoint),
    })
}

/// Real-admissibility over the arcs: pairwise intersections finite, triple
/// intersections empty; point components avoid ℝ⁻ in every coordinate.
pub fn real_admissibility_report<K: CycleScalar>(
    cycle: &crate::chow_cycles::ParamCycle<K>,
    tol: f64,
) -> crate::chow_cycles::AdmissibilityReport {
    use crate::chow_cycles::ComponentData;
    let mut report = crate::chow_cycles::AdmissibilityReport::default();
    for (ci, comp) in cycle.components.iter().enumerate() {
        match &comp.data {
            ComponentData::Point(values) => {
                for (j, v) in values.iter().enumerate() {
                    if v.in_r_minus(tol) {
                        report.violations.push(format!(
                            "component {}: point coordinate {} lies in R^-",
                            ci + 1,
                            j + 1
                        ));
                    }
                }
            }
            ComponentData::Curve(coords) => {
                let coords: Vec<RationalFunction<C64>> =
                    coords.iter().map(|c| c.to_c64()).collect();
                let mut per_slot: Vec<Vec<Arc>> = Vec::new();
                let mut failed = false;
                for slot in 0..coords.len() {
                    match extract_arcs(&coords, slot, 512) {
                        Ok(arcs) => per_slot.push(arcs),
                        Err(e) => {
                            report
                                .violations
                                .push(format!("component {}: slot {}: {}", ci + 1, slot + 1, e));
                            failed = true;
                            break;
                        }
                    }
                }
                if failed {
                    continue;
                }
                let mut crossing_points: Vec<(usize, usize, C64)> = Vec::new();
                for i in 0..per_slot.len() {
                    for j in (i + 1)..per_slot.len() {
                        let pr = pairwise_proper(&per_slot[i], &per_slot[j], tol);
                        if pr.overlap {
                            report.violations.push(format!(
                                "component {}: arcs of slots {} and {} overlap",
                                ci + 1,
                                i + 1,
                                j + 1
                            ));
                        }
                        for c in pr.crossings {
                            crossing_points.push((i, j, c.t));
                        }
                    }
                }
                // triple intersections must be empty
                for (i, j, t) in &crossing_points {
                    for (k, arcs) in per_slot.iter().enumerate() {
                        if k == *i || k == *j {
                            continue;
                        }
                        let near = arcs.iter().any(|arc| {
                            arc.nodes
                                .iter()
                                .any(|n| n.t_value().map_or(false, |v| chordal(v, *t) < tol.max(1e-7)))
                        });
                        if near {
                            report.violations.push(format!(
                                "component {}: triple intersection of slots {}, {}, {} near t = {}",
                                ci + 1,
                                i + 1,
                                j + 1,
                                k + 1,
                                t
                            ));
                        }
                    }
                }
            }
        }
    }
    report
}
