//! Acceptance suite: one line per criterion, nonzero exit if any fails.
//!
//! Reference values come from closed forms or from oracles written here,
//! independently of the library code they check.

use std::f64::consts::PI;
use std::time::{Duration, Instant};

use cat0_core::boxtimes::global_minimum;
use cat0_core::complex::{build_surface, ComplexBuilder, Piece, Surface};
use cat0_core::graph::permutations;
use cat0_core::quad::{classify_with_pivot, QuadVerdict};
use cat0_core::witness::Model;
use cat0_core::{
    boxtimes_form, construct, decide_cat0_embeddable, gen, minimize_boxtimes, space_satisfies, verify, ComplexSpace,
    Error, FiniteMetricSpace, QuadraticMetricInequality, SimpleGraph, Verdict, Witness, WitnessConfig,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

type P3 = [f64; 3];

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

fn within(t: Duration, limit: f64) -> bool {
    t.as_secs_f64() < limit
}

fn example() -> FiniteMetricSpace {
    let r = 3f64.sqrt();
    FiniteMetricSpace::from_distances(
        &[vec![0.0, 1.0, r, r], vec![1.0, 0.0, 1.0, r], vec![r, 1.0, 0.0, 1.0], vec![r, r, 1.0, 0.0]],
        1e-9,
    )
    .unwrap()
}

// ---- independent geometry ----

fn dist3(a: P3, b: P3) -> f64 {
    ((a[0] - b[0]).powi(2) + (a[1] - b[1]).powi(2) + (a[2] - b[2]).powi(2)).sqrt()
}

fn cos_rule(a: f64, b: f64, opposite: f64) -> f64 {
    ((a * a + b * b - opposite * opposite) / (2.0 * a * b)).clamp(-1.0, 1.0).acos()
}

/// Comparison angle at `o` between `a` and `b`.
fn angle(x: &FiniteMetricSpace, a: usize, o: usize, b: usize) -> f64 {
    cos_rule(x.d(a, o), x.d(b, o), x.d(a, b))
}

/// Planar hinge of the triangles x z y and x z w over the axis x z, with w on
/// the side of y (`same = true`) or opposite. Returns x, y, z, w.
fn hinge(x: &FiniteMetricSpace, r: [usize; 4], same: bool) -> [[f64; 2]; 4] {
    let [a, b, c, d] = r;
    let xz = x.d(a, c);
    let ty = cos_rule(x.d(a, b), xz, x.d(b, c));
    let tw = cos_rule(x.d(a, d), xz, x.d(d, c));
    let y = [x.d(a, b) * ty.cos(), x.d(a, b) * ty.sin()];
    let s = if same { 1.0 } else { -1.0 };
    let w = [x.d(a, d) * tw.cos(), s * x.d(a, d) * tw.sin()];
    [[0.0, 0.0], y, [xz, 0.0], w]
}

/// Realisable range of |yw| for roles `r = [x, y, z, w]`, by rotating w
/// about the axis x z through `steps` equal angles in [0, π].
fn sweep_bounds(x: &FiniteMetricSpace, r: [usize; 4], steps: usize) -> (f64, f64) {
    let [_, y, _, w] = hinge(x, r, true);
    let y3 = [y[0], y[1], 0.0];
    let (mut lo, mut hi) = (f64::INFINITY, 0.0f64);
    for k in 0..=steps {
        let th = PI * k as f64 / steps as f64;
        let d = dist3(y3, [w[0], w[1] * th.cos(), w[1] * th.sin()]);
        lo = lo.min(d);
        hi = hi.max(d);
    }
    (lo, hi)
}

#[derive(Clone, Copy, PartialEq, Debug)]
enum Oracle {
    Under,
    Over,
    Inside,
}

/// Classification of roles `r` relative to the pivot {r[1], r[3]} with a
/// dead band of `band` around the two boundaries (`None` inside the band).
fn oracle_class(x: &FiniteMetricSpace, r: [usize; 4], band: f64) -> Option<Oracle> {
    let [_, y, _, w] = hinge(x, r, true);
    let lo = ((y[0] - w[0]).powi(2) + (y[1] - w[1]).powi(2)).sqrt();
    let hi = ((y[0] - w[0]).powi(2) + (y[1] + w[1]).powi(2)).sqrt();
    let d = x.d(r[1], r[3]);
    if d < lo - band {
        Some(Oracle::Under)
    } else if d > hi + band {
        Some(Oracle::Over)
    } else if d > lo + band && d < hi - band {
        Some(Oracle::Inside)
    } else {
        None
    }
}

fn orient(a: [f64; 2], b: [f64; 2], c: [f64; 2]) -> f64 {
    (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])
}

/// Closed segments [a, b] and [c, d] meet, with slack `e` on lengths.
fn segments_meet(a: [f64; 2], b: [f64; 2], c: [f64; 2], d: [f64; 2], e: f64) -> bool {
    let e2 = e * e.max(1.0);
    let (o1, o2, o3, o4) = (orient(a, b, c), orient(a, b, d), orient(c, d, a), orient(c, d, b));
    let sign = |o: f64| if o > e2 { 1 } else if o < -e2 { -1 } else { 0 };
    let (s1, s2, s3, s4) = (sign(o1), sign(o2), sign(o3), sign(o4));
    if s1 * s2 < 0 && s3 * s4 < 0 {
        return true;
    }
    let on = |p: [f64; 2], q: [f64; 2], r: [f64; 2], s: i32| {
        s == 0
            && r[0] >= p[0].min(q[0]) - e
            && r[0] <= p[0].max(q[0]) + e
            && r[1] >= p[1].min(q[1]) - e
            && r[1] <= p[1].max(q[1]) + e
    };
    on(a, b, c, s1) || on(a, b, d, s2) || on(c, d, a, s3) || on(c, d, b, s4)
}

fn distinct(x: &FiniteMetricSpace) -> bool {
    let s = 1e-6 * x.scale();
    (0..x.len()).all(|i| (i + 1..x.len()).all(|j| x.d(i, j) > s))
}

fn all_graphs() -> Vec<SimpleGraph> {
    SimpleGraph::isomorphism_classes(5).into_iter().chain(SimpleGraph::isomorphism_classes(4)).collect()
}

fn complexes(m: &Model, out: &mut Vec<ComplexSpace>) {
    match m {
        Model::Complex { space, .. } => out.push(space.clone()),
        Model::Composite(c) => {
            complexes(&c.left, out);
            complexes(&c.right, out);
        }
        _ => {}
    }
}

// ---- criteria ----

fn c1() -> Outcome {
    let t = Instant::now();
    let x = example();
    let d = decide_cat0_embeddable(&x, 1e-9).unwrap();
    let Verdict::NotEmbeddable(c) = d.verdict else {
        return outcome(false, "verdict is not NotEmbeddable");
    };
    let value_ok = (c.value + 0.125).abs() < 1e-9;
    let at = |roles: [usize; 4], s: f64, tt: f64| {
        c.roles == roles && (c.s - s).abs() < 1e-9 && (c.t - tt).abs() < 1e-9
    };
    let arg_ok = at([0, 1, 2, 3], 0.375, 0.625) || at([1, 2, 3, 0], 0.375, 0.375);
    let (qmin, _) = QuadraticMetricInequality::quadrilateral().min_over_tuples(&x).unwrap();
    let qmi_ok = qmin.abs() < 1e-9;
    let el = t.elapsed();
    outcome(
        value_ok && arg_ok && qmi_ok && within(el, 1.0),
        format!(
            "value {:.12} at roles {:?} (s, t) = ({:.6}, {:.6}); quadrilateral min {qmin:.1e}; {el:.2?}",
            c.value, c.roles, c.s, c.t
        ),
    )
}

fn c2() -> Outcome {
    let s = (3f64.sqrt() - 1.0) / 2.0;
    let v = boxtimes_form(&example().quadruple(1, 2, 3, 0), s, s).unwrap();
    let expect = 12.0 - 7.0 * 3f64.sqrt();
    outcome((v - expect).abs() < 1e-12 && v < 0.0, format!("value {v:.15}, expected {expect:.15}"))
}

fn c3() -> Outcome {
    let t = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut bad = Vec::new();
    let mut check = |kind: &str, x: FiniteMetricSpace| {
        if !decide_cat0_embeddable(&x, 1e-9).unwrap().is_positive() {
            bad.push(kind.to_string());
        }
    };
    for _ in 0..1000 {
        check("euclidean", gen::euclidean(5, 3, &mut rng));
    }
    for _ in 0..200 {
        check("tree", gen::tree(5, &mut rng));
    }
    for _ in 0..200 {
        check("complex", gen::complex_sample(5, &mut rng).unwrap().1);
    }
    let el = t.elapsed();
    outcome(bad.is_empty() && within(el, 30.0), format!("1400 spaces, {} rejected {:?}; {el:.2?}", bad.len(), bad))
}

fn c4() -> Outcome {
    let t = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut failed = 0;
    for _ in 0..200 {
        let x = gen::snowflaked(&gen::random_metric(5, &mut rng), 0.5).unwrap();
        if space_satisfies(&x, 1e-9).verdict != Verdict::Holds {
            failed += 1;
        }
    }
    let el = t.elapsed();
    outcome(failed == 0 && within(el, 10.0), format!("200 snowflakes, {failed} violated; {el:.2?}"))
}

fn c5() -> Outcome {
    let t = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let (mut verdicts, mut bound_err, mut mismatches, mut repro_err, mut embeddable) = (0, 0.0f64, 0, 0.0f64, 0);
    for i in 0..10_000 {
        let x = match i % 3 {
            0 => gen::random_metric(4, &mut rng),
            1 => gen::perturbed(&gen::euclidean(4, 3, &mut rng), 0.2, &mut rng),
            _ => gen::boxtimes_space(4, &mut rng, 1e-9).unwrap(),
        };
        if !distinct(&x) {
            continue;
        }
        let scale = x.scale();
        for roles in [[0, 1, 2, 3], [1, 0, 3, 2]] {
            let c = classify_with_pivot(&x, roles, [roles[1], roles[3]], 1e-9).unwrap();
            let n = [c.is_embeddable(), c.is_under(), c.is_over()].iter().filter(|b| **b).count();
            if n == 1 {
                verdicts += 1;
            }
            let (lo, hi) = sweep_bounds(&x, roles, 10_000);
            bound_err = bound_err.max((lo - c.lo).abs().max((hi - c.hi).abs()) / scale);
            let expected = oracle_class(&x, roles, 1e-7 * scale);
            let got = match c.verdict {
                QuadVerdict::Embeddable(_) => Oracle::Inside,
                QuadVerdict::UnderDistance => Oracle::Under,
                QuadVerdict::OverDistance => Oracle::Over,
            };
            if expected.is_some_and(|e| e != got) {
                mismatches += 1;
            }
            if let QuadVerdict::Embeddable(cfg) = &c.verdict {
                embeddable += 1;
                let p = cfg.points;
                for a in 0..4 {
                    for b in a + 1..4 {
                        let e = (dist3(p[a], p[b]) - x.d(roles[a], roles[b])).abs() / scale;
                        repro_err = repro_err.max(e);
                    }
                }
            }
        }
    }
    let el = t.elapsed();
    let pass = verdicts == 20_000 && bound_err <= 1e-7 && mismatches == 0 && repro_err <= 1e-9;
    outcome(
        pass,
        format!(
            "{verdicts}/20000 single verdicts, sweep bound error {bound_err:.1e}, {mismatches} verdict mismatches, \
             {embeddable} embeddable with distance error {repro_err:.1e}; {el:.2?}"
        ),
    )
}

struct Corpus {
    spaces: Vec<FiniteMetricSpace>,
    witnesses: Vec<Witness>,
}

fn c6(corpus: &mut Corpus) -> Outcome {
    let t = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let cfg = WitnessConfig { tol: 1e-7, ..WitnessConfig::default() };
    let graphs = all_graphs();
    let (mut cycles, mut search_failed, mut other_failures) = (0, 0, Vec::new());
    for _ in 0..100 {
        let x = gen::boxtimes_space(5, &mut rng, 1e-9).unwrap();
        for g in &graphs {
            let f: Vec<usize> = (0..g.n()).collect();
            let y = x.pull_back(&f).unwrap();
            let is_cycle = matches!(cat0_core::witness::strategy_for(&y, g, cfg.tol), cat0_core::Strategy::Cycle(_));
            cycles += usize::from(is_cycle);
            match construct(&x, &f, g, &cfg) {
                Ok(w) => {
                    let rep = verify(&x, &f, g, &w, cfg.tol).unwrap();
                    if rep.pass {
                        corpus.witnesses.push(w);
                    } else {
                        other_failures.push(format!("{:?} fails verify", g.edges()));
                    }
                }
                Err(Error::SearchFailed(_)) if is_cycle => search_failed += 1,
                Err(e) => other_failures.push(format!("{:?}: {e}", g.edges())),
            }
        }
        corpus.spaces.push(x);
    }
    let el = t.elapsed();
    let rate = search_failed as f64 / cycles.max(1) as f64;
    outcome(
        other_failures.is_empty() && rate < 0.05 && within(el, 600.0),
        format!(
            "{} witnesses verified over 100 spaces x {} graphs; cycle search failed {search_failed}/{cycles} \
             ({:.2}%); other failures {:?}; {el:.2?}",
            corpus.witnesses.len(),
            graphs.len(),
            100.0 * rate,
            other_failures.iter().take(3).collect::<Vec<_>>()
        ),
    )
}

fn tetra_regular() -> [P3; 4] {
    let s = 1.0 / 8f64.sqrt();
    [[s, s, s], [s, -s, -s], [-s, s, -s], [-s, -s, s]]
}

fn mid(a: P3, b: P3) -> P3 {
    [(a[0] + b[0]) / 2.0, (a[1] + b[1]) / 2.0, (a[2] + b[2]) / 2.0]
}

fn fixtures() -> (ComplexSpace, ComplexSpace, ComplexSpace) {
    let mut b = ComplexBuilder::new("flat square");
    let sq = [[0.0, 0.0, 0.0], [1.0, 0.0, 0.0], [1.0, 1.0, 0.0], [0.0, 1.0, 0.0]];
    let k = b.add_piece(Piece::polygon(sq.to_vec()));
    for (i, p) in sq.iter().enumerate() {
        b.mark_at(format!("c{i}"), k, *p).unwrap();
    }
    let square = b.build().unwrap();

    let double = build_surface(Surface::Double([1.0, 1.0, 1.0])).unwrap();
    let g = &double.pieces[0].generators;
    let centre = [(g[0][0] + g[1][0] + g[2][0]) / 3.0, (g[0][1] + g[1][1] + g[2][1]) / 3.0, 0.0];
    let mut b = ComplexBuilder::from_complex(&double);
    b.mark_at("front", 0, centre).unwrap();
    b.mark_at("back", 1, centre).unwrap();
    let double = b.build().unwrap();

    let v = tetra_regular();
    let tetra = build_surface(Surface::TetraBoundary(v)).unwrap();
    let mut b = ComplexBuilder::from_complex(&tetra);
    // faces are [0,1,2], [0,1,3], [0,2,3], [1,2,3]
    b.mark_at("m01", 0, mid(v[0], v[1])).unwrap();
    b.mark_at("m23", 2, mid(v[2], v[3])).unwrap();
    let tetra = b.build().unwrap();
    (square, double, tetra)
}

fn c7(corpus: &Corpus) -> Outcome {
    let t = Instant::now();
    let (square, double, tetra) = fixtures();
    let mut all = vec![square, double.clone(), tetra.clone()];
    for w in &corpus.witnesses {
        complexes(&w.model, &mut all);
    }
    let (mut pairs, mut worst_low, mut worst_high) = (0, 0.0f64, 0.0f64);
    for c in &all {
        let scale = c.scale();
        let d = c.distance_table();
        let o = c.oracle_table(128);
        for i in 0..d.len() {
            for j in i + 1..d.len() {
                pairs += 1;
                worst_low = worst_low.max((d[i][j] - o[i][j]) / scale);
                worst_high = worst_high.max((o[i][j] - d[i][j]) / scale);
            }
        }
    }
    let dd = double.distance("front", "back").unwrap();
    let td = tetra.distance("m01", "m23").unwrap();
    let fixtures_ok = (dd - 3f64.sqrt() / 3.0).abs() < 1e-6 && (td - 1.0).abs() < 1e-6;
    let el = t.elapsed();
    outcome(
        worst_low <= 1e-9 && worst_high <= 0.02 && fixtures_ok,
        format!(
            "{} complexes, {pairs} pairs; max (distance - oracle)/scale {worst_low:.1e}, \
             max (oracle - distance)/scale {worst_high:.2e}; double centres {dd:.9}, tetra midpoints {td:.9}; {el:.2?}",
            all.len()
        ),
    )
}

fn c8(corpus: &Corpus) -> Outcome {
    let mut discs = Vec::new();
    for w in &corpus.witnesses {
        let mut cs = Vec::new();
        complexes(&w.model, &mut cs);
        discs.extend(cs.into_iter().filter(|c| c.name.contains("disc") || c.name == "D"));
    }
    let mut failures = 0;
    let mut min_apex = f64::INFINITY;
    for c in &discs {
        let apex = c.link_report().vertices.iter().map(|v| v.angle_sum).fold(0.0, f64::max);
        min_apex = min_apex.min(apex);
        if !c.local_cat0_check(1e-9) || apex < 2.0 * PI - 1e-9 {
            failures += 1;
        }
    }
    outcome(
        failures == 0 && !discs.is_empty(),
        format!("{} discs, {failures} failures, smallest apex angle sum {:.6} (2π = {:.6})", discs.len(), min_apex, 2.0 * PI),
    )
}

fn c9(corpus: &Corpus) -> Outcome {
    let t = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut inputs = vec![example()];
    inputs.extend(corpus.spaces.iter().take(30).cloned());
    inputs.extend((0..30).map(|_| gen::random_metric(5, &mut rng)));
    let cfg = WitnessConfig { tol: 1e-7, ..WitnessConfig::default() };
    let graphs = all_graphs();
    let mut changes = Vec::new();
    for (k, x) in inputs.iter().enumerate() {
        let n = x.len();
        let base_decision = decide_cat0_embeddable(x, 1e-9).unwrap();
        let classes = |x: &FiniteMetricSpace| -> Vec<String> {
            let mut v = Vec::new();
            for p in permutations(n).into_iter().filter(|p| p.len() >= 4) {
                let r = [p[0], p[1], p[2], p[3]];
                let c = classify_with_pivot(x, r, [r[1], r[3]], 1e-9).map(|c| match c.verdict {
                    QuadVerdict::Embeddable(_) => "E",
                    QuadVerdict::UnderDistance => "U",
                    QuadVerdict::OverDistance => "O",
                });
                v.push(format!("{c:?}"));
            }
            v
        };
        let argmins = |x: &FiniteMetricSpace| -> Vec<(f64, f64)> {
            permutations(n)
                .into_iter()
                .map(|p| {
                    let (_, pt) = minimize_boxtimes(&x.quadruple(p[0], p[1], p[2], p[3]));
                    (pt.s, pt.t)
                })
                .collect()
        };
        let witness_pass = |x: &FiniteMetricSpace| -> Vec<bool> {
            if k % 10 != 0 {
                return Vec::new();
            }
            graphs
                .iter()
                .filter(|g| g.n() <= n)
                .map(|g| {
                    let f: Vec<usize> = (0..g.n()).collect();
                    construct(x, &f, g, &cfg).is_ok_and(|w| w.report.is_some_and(|r| r.pass))
                })
                .collect()
        };
        let (bc, ba, bw) = (classes(x), argmins(x), witness_pass(x));
        for lambda in [1e-3, 1e3] {
            let y = x.scaled(lambda);
            let d = decide_cat0_embeddable(&y, 1e-9).unwrap();
            if d.is_positive() != base_decision.is_positive() {
                changes.push(format!("space {k} x{lambda}: decision"));
            }
            if classes(&y) != bc {
                changes.push(format!("space {k} x{lambda}: classification"));
            }
            let a = argmins(&y);
            if a.iter().zip(&ba).any(|(p, q)| (p.0 - q.0).abs() > 1e-9 || (p.1 - q.1).abs() > 1e-9) {
                changes.push(format!("space {k} x{lambda}: argmin"));
            }
            if witness_pass(&y) != bw {
                changes.push(format!("space {k} x{lambda}: witness verdicts"));
            }
        }
    }
    let el = t.elapsed();
    outcome(changes.is_empty(), format!("{} spaces x 2 scalings, changes {:?}; {el:.2?}", inputs.len(), changes))
}

#[derive(Default)]
struct Tally {
    instances: usize,
    counterexamples: usize,
    first: Vec<String>,
}

impl Tally {
    fn record(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.instances += 1;
        if !ok {
            self.counterexamples += 1;
            if self.first.len() < 3 {
                self.first.push(what());
            }
        }
    }
    fn pass(&self) -> bool {
        self.instances >= 1000 && self.counterexamples == 0
    }
}

fn c10() -> Outcome {
    let t = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let (mut no_triple, mut long, mut short, mut double_short) =
        (Tally::default(), Tally::default(), Tally::default(), Tally::default());
    let perms = permutations(5);
    let (mut spaces, mut marginal) = (0, 0);
    while spaces < 100_000 && [&no_triple, &long, &short, &double_short].iter().any(|t| t.instances < 1000) {
        let x = gen::boxtimes_space(5, &mut rng, 1e-9).unwrap();
        spaces += 1;
        if !distinct(&x) {
            continue;
        }
        // the patterns assume the inequalities hold exactly, not up to a tolerance
        if global_minimum(&x).is_some_and(|c| c.value < 0.0) {
            marginal += 1;
            continue;
        }
        let band = 1e-9 * x.scale();
        let cls = |r: [usize; 4]| oracle_class(&x, r, band);
        for p in &perms {
            let [a, b, c, d, e] = [p[0], p[1], p[2], p[3], p[4]];
            // four-point patterns on roles (x, y, z, w) = (a, b, c, d); the
            // frame/pivot symmetry x <-> z, y <-> w is factored out
            if a < c && b < d {
                match cls([a, b, c, d]) {
                    Some(Oracle::Over) => {
                        let s = angle(&x, b, a, c) + angle(&x, c, a, d);
                        let s2 = angle(&x, b, c, a) + angle(&x, a, c, d);
                        long.record(s > PI - 1e-9 || s2 > PI - 1e-9, || format!("{:?} roles {:?} sums {s} {s2}", x.matrix(), [a, b, c, d]));
                    }
                    Some(Oracle::Under) => {
                        let ok = [true, false].into_iter().all(|same| {
                            let q = hinge(&x, [a, b, c, d], same);
                            let e2 = 1e-12 * x.scale() * x.scale();
                            let col = orient(q[0], q[2], q[1]).abs() <= e2 && orient(q[0], q[2], q[3]).abs() <= e2;
                            !segments_meet(q[0], q[1], q[2], q[3], 1e-12 * x.scale())
                                && !segments_meet(q[0], q[3], q[1], q[2], 1e-12 * x.scale())
                                && !col
                        });
                        short.record(ok, || format!("{:?} roles {:?}", x.matrix(), [a, b, c, d]));
                    }
                    _ => {}
                }
            }
            // over with respect to {x, w} and {y, w} excludes {z, w}; x <-> y is a symmetry
            if a < b {
                let over = |u: usize, v: usize, piv: usize| cls([u, piv, v, d]) == Some(Oracle::Over);
                if over(b, c, a) && over(a, c, b) {
                    no_triple.record(cls([a, c, b, d]) != Some(Oracle::Over), || format!("{:?} roles {:?}", x.matrix(), [a, b, c, d]));
                }
            }
            // (p, x, y, z, w) = (a, b, c, d, e); reversal x <-> w, y <-> z is a symmetry
            if b < e {
                let under = |q: [usize; 4]| cls(q) == Some(Oracle::Under);
                // {p, x, y, z} w.r.t. {x, y}: frame {p, z}; w.r.t. {y, z}: frame {p, x}
                let h1 = under([a, b, d, c]) && under([a, c, b, d]);
                // {p, y, z, w} w.r.t. {y, z}: frame {p, w}; w.r.t. {z, w}: frame {p, y}
                let h2 = under([a, c, e, d]) && under([a, d, c, e]);
                if h1 && h2 {
                    let s1 = angle(&x, b, a, c) + angle(&x, c, a, e);
                    let s2 = angle(&x, b, a, d) + angle(&x, d, a, e);
                    double_short.record(s1 < PI + 1e-9 && s2 < PI + 1e-9, || format!("{:?} roles {:?} sums {s1} {s2}", x.matrix(), p));
                }
            }
        }
    }
    let el = t.elapsed();
    let pass = no_triple.pass() && long.pass() && short.pass() && double_short.pass();
    let fmt = |name: &str, t: &Tally| format!("{name} {}/{} {:?}", t.counterexamples, t.instances, t.first);
    outcome(
        pass,
        format!(
            "counterexamples/instances over {spaces} spaces ({marginal} with a slightly negative minimum skipped): \
             {}, {}, {}, {}; {el:.2?}",
            fmt("no triple over-distance", &no_triple),
            fmt("over-distance angle sum", &long),
            fmt("under-distance hinge", &short),
            fmt("double under-distance angles", &double_short),
        ),
    )
}

fn main() {
    let started = Instant::now();
    let mut corpus = Corpus { spaces: Vec::new(), witnesses: Vec::new() };
    let mut results: Vec<(&str, Outcome)> = vec![
        ("1 example space certificate", c1()),
        ("2 parameter point value", c2()),
        ("3 soundness on CAT(0) samples", c3()),
        ("4 snowflake metrics", c4()),
        ("5 four-point trichotomy", c5()),
    ];
    results.push(("6 witness completeness", c6(&mut corpus)));
    results.push(("7 complex distance oracle", c7(&corpus)));
    results.push(("8 disc curvature", c8(&corpus)));
    results.push(("9 scale invariance", c9(&corpus)));
    results.push(("10 four- and five-point patterns", c10()));
    let mut failed = 0;
    for (name, o) in &results {
        println!("[{}] criterion {name}: {}", if o.pass { "PASS" } else { "FAIL" }, o.detail);
        failed += usize::from(!o.pass);
    }
    println!("acceptance: {} of {} criteria pass ({:.1?})", results.len() - failed, results.len(), started.elapsed());
    if failed > 0 {
        std::process::exit(1);
    }
}
