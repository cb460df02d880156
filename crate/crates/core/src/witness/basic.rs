//! Exact models of at most four points and the structural strategies.

use super::{build, triangles_model, vname, Composite, Model, Strategy, Witness, WitnessConfig};
use crate::complex::{ComplexBuilder, Piece};
use crate::error::{Error, Result};
use crate::geom::P3;
use crate::graph::SimpleGraph;
use crate::metric::FiniteMetricSpace;
use crate::quad::{classify_in_space, place_triangle, QuadVerdict};

/// The six pivot pairs of four points, as role orders `[x, y, z, w]` with
/// pivot `{y, w}`.
pub(super) const PIVOTS: [[usize; 4]; 6] = [
    [0, 1, 2, 3],
    [0, 2, 1, 3],
    [0, 1, 3, 2],
    [1, 0, 2, 3],
    [1, 0, 3, 2],
    [2, 0, 3, 1],
];

/// An R³ embedding of the points `pts`, in that order, if one exists.
pub(super) fn embed4(y: &FiniteMetricSpace, pts: [usize; 4], tol: f64) -> Option<[P3; 4]> {
    for perm in &PIVOTS {
        let roles = perm.map(|i| pts[i]);
        if let Ok(c) = classify_in_space(y, roles, tol) {
            if let QuadVerdict::Embeddable(cfg) = c.verdict {
                let mut out = [[0.0; 3]; 4];
                for k in 0..4 {
                    out[perm[k]] = cfg.points[k];
                }
                return Some(out);
            }
        }
    }
    None
}

/// A model reproducing every distance of `y` (at most four points).
///
/// Four points embed in R³ or, failing that, in a CAT(0) disc D(a; b, c, d)
/// around an apex whose comparison angles exceed π.
pub(super) fn exact_model(y: &FiniteMetricSpace, tol: f64) -> Result<Model> {
    match y.len() {
        0 => Ok(Model::RealLine(vec![])),
        1 => Ok(Model::RealLine(vec![0.0])),
        2 => Ok(Model::RealLine(vec![0.0, y.d(0, 1)])),
        3 => {
            let p = place_triangle(y.d(0, 1), y.d(1, 2), y.d(2, 0))?;
            Ok(Model::Plane(p.to_vec()))
        }
        4 => exact4(y, tol),
        n => Err(Error::ArityMismatch(4, n)),
    }
}

fn exact4(y: &FiniteMetricSpace, tol: f64) -> Result<Model> {
    if let Some(p) = embed4(y, [0, 1, 2, 3], tol) {
        let mut b = ComplexBuilder::new("R3");
        let k = b.add_piece(Piece::polytope(p.to_vec()));
        for (v, q) in p.iter().enumerate() {
            b.mark_at(vname(v), k, *q)?;
        }
        return Ok(Model::Complex { space: b.build()?, marks: (0..4).map(vname).collect() });
    }
    let scale = y.scale();
    let mut tried = Vec::new();
    for perm in PIVOTS {
        let c = match classify_in_space(y, perm, tol) {
            Ok(c) => c,
            Err(e) => {
                tried.push(format!("pivot {perm:?}: {e}"));
                continue;
            }
        };
        if !c.is_over() {
            continue;
        }
        let [x, yy, z, w] = perm;
        for (apex, other) in [(x, z), (z, x)] {
            let tris = [[apex, yy, other], [apex, other, w], [apex, w, yy]];
            let m = match triangles_model(y, "D", &tris, &[(0, 1), (1, 2), (2, 0)]) {
                Ok(m) => m,
                Err(e) => {
                    tried.push(format!("disc at {apex}: {e}"));
                    continue;
                }
            };
            let t = m.distances()?;
            let err = (0..4)
                .flat_map(|i| (0..4).map(move |j| (i, j)))
                .map(|(i, j)| (t[i][j] - y.d(i, j)).abs())
                .fold(0.0, f64::max);
            if err <= tol * scale && m.curvature_ok(false, tol.max(1e-12)) {
                return Ok(m);
            }
            tried.push(format!("disc at {apex}: error {err:.3e}"));
        }
    }
    Err(Error::CaseDispatchAmbiguous(format!("no exact model of four points: {}", tried.join("; "))))
}

pub(super) fn quotient(y: &FiniteMetricSpace, cfg: &WitnessConfig) -> Result<Witness> {
    let rep = super::quotient_classes(y, cfg.tol);
    let reps: Vec<usize> = (0..y.len()).filter(|&v| rep[v] == v).collect();
    let inner = exact_model(&y.restrict(&reps)?, cfg.tol)?;
    let map: Vec<usize> = rep.iter().map(|r| reps.iter().position(|u| u == r).expect("representative")).collect();
    Ok(Witness::new(Strategy::Quotient, inner.reindexed(&map)?, "coincident points identified, exact model of the rest").exact())
}

pub(super) fn line(y: &FiniteMetricSpace, g: &SimpleGraph) -> Result<Witness> {
    let v0 = g.line_vertex().ok_or(Error::NoSuchVertex)?;
    let x = (0..y.len()).map(|v| y.d(v0, v)).collect();
    Ok(Witness::new(Strategy::Line, Model::RealLine(x), format!("distance from vertex {v0}")))
}

/// Metric tree with one segment per edge.
pub(super) fn tree(y: &FiniteMetricSpace, g: &SimpleGraph) -> Result<Witness> {
    if !g.is_tree() {
        return Err(Error::NotATree);
    }
    let mut b = ComplexBuilder::new("tree");
    // first occurrence of each vertex: (piece, coordinates)
    let mut at: Vec<Option<(usize, P3)>> = vec![None; g.n()];
    for (u, v) in g.edges() {
        let len = y.d(u, v);
        let (pu, pv) = ([0.0; 3], [len, 0.0, 0.0]);
        let s = b.add_piece(Piece::segment(pu, pv));
        for (w, p) in [(u, pu), (v, pv)] {
            match at[w] {
                Some((piece, q)) => b.glue_points(piece, q, s, p),
                None => at[w] = Some((s, p)),
            }
        }
    }
    for (v, a) in at.iter().enumerate() {
        let (piece, p) = a.ok_or(Error::NotATree)?;
        b.mark_at(vname(v), piece, p)?;
    }
    let model = Model::Complex { space: b.build()?, marks: (0..g.n()).map(vname).collect() };
    Ok(Witness::new(Strategy::Tree, model, "metric tree on the edges"))
}

/// Disconnected graph: witnesses of one component and of the rest, joined
/// by a segment as long as the diameter.
pub(super) fn spacer(y: &FiniteMetricSpace, g: &SimpleGraph, cfg: &WitnessConfig) -> Result<Witness> {
    let comps = g.components();
    if comps.len() < 2 {
        return Err(Error::BadSplit);
    }
    let a = comps[0].clone();
    let mut b: Vec<usize> = comps[1..].concat();
    b.sort_unstable();
    let wa = build(&y.restrict(&a)?, &g.induced(&a), cfg)?;
    let wb = build(&y.restrict(&b)?, &g.induced(&b), cfg)?;
    let model = Model::Composite(Box::new(Composite {
        left: wa.model,
        left_vertices: a,
        right: wb.model,
        right_vertices: b,
        anchors: [0, 0],
        spacer: y.scale(),
    }));
    let prov = format!("components joined by a spacer ({:?} and {:?})", wa.strategy, wb.strategy);
    Ok(Witness::new(Strategy::SegmentSpacerGlue, model, prov))
}

/// Cut vertex: exact models of both sides glued at the cut vertex.
pub(super) fn point_glue(y: &FiniteMetricSpace, g: &SimpleGraph, cfg: &WitnessConfig) -> Result<Witness> {
    let c = g.cut_vertex().ok_or(Error::BadSplit)?;
    let rest: Vec<usize> = (0..g.n()).filter(|&v| v != c).collect();
    let comps = g.components_within(&rest);
    let mut a = vec![c];
    a.extend(&comps[0]);
    let mut b = vec![c];
    b.extend(comps[1..].concat());
    let ma = exact_model(&y.restrict(&a)?, cfg.tol)?;
    let mb = exact_model(&y.restrict(&b)?, cfg.tol)?;
    let model = Model::Composite(Box::new(Composite {
        left: ma,
        left_vertices: a,
        right: mb,
        right_vertices: b,
        anchors: [0, 0],
        spacer: 0.0,
    }));
    Ok(Witness::new(Strategy::PointGlue, model, format!("exact models glued at cut vertex {c}")))
}

