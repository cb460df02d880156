use cat0_core::gen;
use cat0_core::graph::{self, SimpleGraph};
use cat0_core::witness::{planar_search, Relation, Strategy};
use cat0_core::{construct, verify, Error, FiniteMetricSpace, QuadraticMetricInequality, Witness, WitnessConfig};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn cfg(tol: f64) -> WitnessConfig {
    WitnessConfig { tol, ..WitnessConfig::default() }
}

fn example() -> FiniteMetricSpace {
    let r = 3f64.sqrt();
    FiniteMetricSpace::from_distances(
        &[vec![0.0, 1.0, r, r], vec![1.0, 0.0, 1.0, r], vec![r, 1.0, 0.0, 1.0], vec![r, r, 1.0, 0.0]],
        1e-9,
    )
    .unwrap()
}

fn points(p: &[[f64; 2]]) -> FiniteMetricSpace {
    let t: Vec<Vec<f64>> = p
        .iter()
        .map(|a| p.iter().map(|b| (a[0] - b[0]).hypot(a[1] - b[1])).collect())
        .collect();
    FiniteMetricSpace::from_distances(&t, 1e-9).unwrap()
}

fn spaces(n: usize, count: usize, seed: u64) -> Vec<FiniteMetricSpace> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| gen::boxtimes_space(n, &mut rng, 1e-9).unwrap()).collect()
}

#[test]
fn every_labeled_pattern_has_a_witness() {
    let c = cfg(1e-7);
    for (n, count) in [(4, 6), (5, 3)] {
        let id: Vec<usize> = (0..n).collect();
        for x in spaces(n, count, 11 + n as u64) {
            for g in SimpleGraph::all_labeled(n) {
                let w = construct(&x, &id, &g, &c)
                    .unwrap_or_else(|e| panic!("{:?} on {:?}: {e}", g.edges(), x.matrix()));
                assert!(w.report.as_ref().unwrap().pass);
                assert!(verify(&x, &id, &g, &w, 1e-7).unwrap().pass);
            }
        }
    }
}

#[test]
fn non_injective_maps_use_the_quotient() {
    let x = spaces(4, 1, 5).pop().unwrap();
    let f = [0, 1, 1, 2, 3];
    for g in [SimpleGraph::complete(5).unwrap(), SimpleGraph::cycle(5).unwrap()] {
        let w = construct(&x, &f, &g, &cfg(1e-9)).unwrap();
        assert_eq!(w.strategy, Strategy::Quotient);
        assert!(verify(&x, &f, &g, &w, 1e-9).unwrap().pass);
    }
}

#[test]
fn witnesses_survive_a_json_round_trip() {
    let c = cfg(1e-7);
    let id: Vec<usize> = (0..5).collect();
    let x = spaces(5, 1, 21).pop().unwrap();
    for g in graph::five_vertex_catalogue().into_iter().chain([SimpleGraph::path(5).unwrap()]) {
        let w = construct(&x, &id, &g, &c).unwrap();
        let text = serde_json::to_string(&w.to_json()).unwrap();
        let back = Witness::from_json(&text).unwrap();
        assert_eq!(back.strategy, w.strategy);
        assert_eq!(back.assignment(), w.assignment());
        assert!(verify(&x, &id, &g, &back, 1e-7).unwrap().pass, "{:?}", w.strategy);
    }
}

#[test]
fn construction_is_deterministic() {
    let c = cfg(1e-7);
    let id: Vec<usize> = (0..5).collect();
    for x in spaces(5, 2, 31) {
        for g in graph::five_vertex_catalogue() {
            let a = construct(&x, &id, &g, &c).unwrap();
            let b = construct(&x, &id, &g, &c).unwrap();
            assert_eq!(a, b);
        }
    }
}

#[test]
fn example_square_pattern_has_no_planar_witness() {
    let c4 = SimpleGraph::cycle(4).unwrap();
    match planar_search(&example(), &c4, &cfg(1e-9)) {
        Err(Error::SearchFailed(p)) => assert!(p > 0.0),
        other => panic!("expected a failed search, got {other:?}"),
    }
}

#[test]
fn square_and_pentagon_searches_succeed() {
    let c = cfg(1e-9);
    let square = points(&[[0.0, 0.0], [1.0, 0.0], [1.0, 1.0], [0.0, 1.0]]);
    let pentagon = points(
        &(0..5)
            .map(|k| {
                let a = 2.0 * std::f64::consts::PI * k as f64 / 5.0;
                [a.cos(), a.sin()]
            })
            .collect::<Vec<_>>(),
    );
    for (x, g) in [(square, SimpleGraph::cycle(4).unwrap()), (pentagon, SimpleGraph::cycle(5).unwrap())] {
        let p = planar_search(&x, &g, &c).unwrap();
        let scale = x.scale();
        for (u, v) in g.edges() {
            let d = (p[u][0] - p[v][0]).hypot(p[u][1] - p[v][1]);
            assert!(d <= x.d(u, v) + 1e-9 * scale);
        }
        let id: Vec<usize> = (0..g.n()).collect();
        assert!(construct(&x, &id, &g, &c).is_ok());
    }
}

#[test]
fn violated_spaces_are_refused() {
    let r = 3f64.sqrt();
    // the example with a fifth point at distance 2 from everything
    let mut t = vec![
        vec![0.0, 1.0, r, r, 2.0],
        vec![1.0, 0.0, 1.0, r, 2.0],
        vec![r, 1.0, 0.0, 1.0, 2.0],
        vec![r, r, 1.0, 0.0, 2.0],
        vec![2.0; 5],
    ];
    t[4][4] = 0.0;
    let x = FiniteMetricSpace::from_distances(&t, 1e-9).unwrap();
    let id: Vec<usize> = (0..5).collect();
    for g in [SimpleGraph::complete(5).unwrap(), SimpleGraph::cycle(5).unwrap()] {
        match construct(&x, &id, &g, &cfg(1e-9)) {
            Err(Error::BoxtimesViolated(c)) => assert!(c.value < 0.0),
            other => panic!("expected a refusal, got {other:?}"),
        }
    }
}

#[test]
fn fans_reproduce_their_triangles() {
    let g = graph::named("G5_3").unwrap();
    let id: Vec<usize> = (0..5).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(41);
    for _ in 0..20 {
        let x = gen::euclidean(5, 2, &mut rng);
        let w = construct(&x, &id, &g, &cfg(1e-9)).unwrap();
        assert_eq!(w.strategy, Strategy::Fan35);
        let r = w.report.unwrap();
        for p in &r.pairs {
            if g.has_edge(p.pair.0, p.pair.1) {
                assert!((p.witness - p.metric).abs() <= 1e-9 * r.scale, "{p:?}");
            } else {
                assert_eq!(p.relation, Relation::Ge);
                assert!(p.slack >= -1e-9 * r.scale, "{p:?}");
            }
        }
    }
}

// Induced four-cycles on (0, 1, 2, 3) in the order x, y, z, w.
fn square_tuples(g: &SimpleGraph) -> Vec<[usize; 4]> {
    let mut out = Vec::new();
    for p in graph::permutations(g.n()) {
        let t = [p[0], p[1], p[2], p[3]];
        let edges = [(t[0], t[1]), (t[1], t[2]), (t[2], t[3]), (t[3], t[0])];
        if edges.iter().all(|&(a, b)| g.has_edge(a, b)) && !g.has_edge(t[0], t[2]) && !g.has_edge(t[1], t[3]) {
            out.push(t);
        }
    }
    out
}

#[test]
fn witnesses_transfer_the_quadrilateral_inequality() {
    let q = QuadraticMetricInequality::quadrilateral();
    let tol = 1e-7;
    let mut checked = 0;
    for x in spaces(5, 8, 51) {
        let id: Vec<usize> = (0..5).collect();
        for g in SimpleGraph::isomorphism_classes(5) {
            let w = construct(&x, &id, &g, &cfg(tol)).unwrap();
            if w.kirszbraun_required && !w.exact {
                continue;
            }
            let wd = w.model.distances().unwrap();
            let scale2 = x.scale().powi(2);
            for t in square_tuples(&g) {
                let wt: Vec<Vec<f64>> = t.iter().map(|&a| t.iter().map(|&b| wd[a][b]).collect()).collect();
                let bound = q.transfer_bound(&x, &t, &wt, tol).unwrap();
                let at_witness = q.evaluate_distances(&wt).unwrap();
                assert!(bound >= at_witness - 10.0 * tol * scale2, "{bound} < {at_witness}");
                assert!(bound >= -10.0 * tol * scale2, "{bound}");
                checked += 1;
            }
        }
    }
    assert!(checked > 0);
}
