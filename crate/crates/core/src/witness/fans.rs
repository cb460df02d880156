//! Fans of triangles and the three cases of the graph with edges
//! 12, 23, 34, 45, 51, 24, 35 (vertices numbered from 1 as in the catalogue).

use super::{first_verifying, iso, triangles_model, vname, Model, Strategy, Witness, WitnessConfig};
use crate::complex::{ComplexBuilder, Piece};
use crate::error::Result;
use crate::geom::{self, P3};
use crate::graph::SimpleGraph;
use crate::metric::FiniteMetricSpace;
use crate::quad::{classify_in_space, place_triangle, QuadVerdict};

/// Triangles (1,2,5), (2,3,5), (3,4,5) glued along 25 and 35.
pub(super) fn fan35(y: &FiniteMetricSpace, g: &SimpleGraph) -> Result<Witness> {
    let m = iso(g, &[3, 5])?;
    let tris = [[m[0], m[1], m[4]], [m[1], m[2], m[4]], [m[2], m[3], m[4]]];
    let model = triangles_model(y, "fan", &tris, &[(0, 1), (1, 2)])?;
    Ok(Witness::new(Strategy::Fan35, model, "fan of three triangles around one vertex"))
}

/// Triangles (1,2,5), (2,3,5), (2,4,5), all sharing the side 25.
pub(super) fn fan46(y: &FiniteMetricSpace, g: &SimpleGraph) -> Result<Witness> {
    let m = iso(g, &[4, 6])?;
    let tris = [[m[0], m[1], m[4]], [m[1], m[2], m[4]], [m[1], m[3], m[4]]];
    let model = triangles_model(y, "book", &tris, &[(0, 1), (1, 2)])?;
    Ok(Witness::new(Strategy::Fan46, model, "book of three triangles on a common side"))
}

fn lift3(p: [[f64; 2]; 3]) -> [P3; 3] {
    p.map(geom::lift)
}

// The triangle (2, 5, 1) as a piece, with its vertices in that order.
fn outer_triangle(y: &FiniteMetricSpace, a: [usize; 5]) -> Result<(Piece, [P3; 3])> {
    let p = lift3(place_triangle(y.d(a[1], a[4]), y.d(a[4], a[0]), y.d(a[0], a[1]))?);
    Ok((Piece::triangle(p[0], p[1], p[2]), p))
}

// A piece holding 2, 3, 4, 5 at `q` (in that order) with the triangle
// (1, 2, 5) glued along the segment 25.
fn with_outer_triangle(y: &FiniteMetricSpace, a: [usize; 5], piece: Piece, q: [P3; 4], name: &str) -> Result<Model> {
    let mut b = ComplexBuilder::new(name);
    let k = b.add_piece(piece);
    let (tri, p) = outer_triangle(y, a)?;
    let t = b.add_piece(tri);
    b.glue_segments(k, [q[0], q[3]], t, [p[0], p[1]]);
    for (i, v) in a[1..].iter().enumerate() {
        b.mark_at(vname(*v), k, q[i])?;
    }
    b.mark_at(vname(a[0]), t, p[2])?;
    Ok(Model::Complex { space: b.build()?, marks: (0..5).map(vname).collect() })
}

/// `a[k]` is the vertex playing catalogue vertex `k + 1`.
fn g7_candidates(y: &FiniteMetricSpace, a: [usize; 5], tol: f64, label: &str) -> Vec<(String, Result<Witness>)> {
    let [a1, a2, a3, a4, a5] = a;
    let c = match classify_in_space(y, [a3, a2, a4, a5], tol) {
        Ok(c) => c,
        Err(e) => return vec![(format!("{label}: classification"), Err(e))],
    };
    let w = |m: Result<Model>, prov: &str| m.map(|m| Witness::new(Strategy::CaseG7, m, prov));
    match c.verdict {
        QuadVerdict::Embeddable(cfg) => {
            // roles are (3, 2, 4, 5)
            let q = [cfg.points[1], cfg.points[0], cfg.points[2], cfg.points[3]];
            let m = with_outer_triangle(y, a, Piece::polytope(q.to_vec()), q, "G7 spatial");
            vec![(format!("{label}: embeddable"), w(m, "spatial tetrahedron on 2345 with triangle 125 on 25"))]
        }
        QuadVerdict::UnderDistance => {
            let m = (|| {
                let [y2, y5, y3] = place_triangle(y.d(a2, a5), y.d(a5, a3), y.d(a3, a2))?;
                let [_, _, c] = place_triangle(y.d(a2, a5), y.d(a5, a4), y.d(a4, a2))?;
                let y4 = [c[0], -c[1]];
                let q = [y2, y3, y4, y5].map(geom::lift);
                with_outer_triangle(y, a, Piece::polygon(q.to_vec()), q, "G7 planar")
            })();
            vec![(format!("{label}: under-distance"), w(m, "planar quadrilateral on 2345 with triangle 125 on 25"))]
        }
        QuadVerdict::OverDistance => {
            let tris = [[a3, a2, a4], [a3, a4, a5], [a3, a5, a2], [a2, a5, a1]];
            let m = triangles_model(y, "G7 disc", &tris, &[(0, 1), (1, 2), (2, 0), (2, 3)]);
            vec![(format!("{label}: over-distance"), w(m, "disc D(3; 2, 4, 5) with triangle 125 on 25"))]
        }
    }
}

pub(super) fn case_g7(y: &FiniteMetricSpace, g: &SimpleGraph, cfg: &WitnessConfig) -> Result<Witness> {
    let m = iso(g, &[7])?;
    let a = [m[0], m[1], m[2], m[3], m[4]];
    // the automorphism exchanging 2 with 5 and 3 with 4
    let s = [a[0], a[4], a[3], a[2], a[1]];
    let mut cands = g7_candidates(y, a, cfg.tol, "labeling");
    cands.extend(g7_candidates(y, s, cfg.tol, "reflected labeling"));
    first_verifying(y, g, cfg, cands)
}
