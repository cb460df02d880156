//! The graph with a hub joined to every other vertex and a 4-cycle on the
//! rest (edges 12, 13, 14, 15, 23, 34, 45, 52).
//!
//! The non-adjacent pairs {p, q} = {2, 4} and {3, 5} each leave a triangle
//! x, y, z with x the hub, and the construction depends on how the two
//! quadruples {p, x, y, z} and {q, x, y, z} sit in space:
//!
//! - both embed in R³: two tetrahedra glued on xyz, a bipyramid surface, or
//!   a double of xyz;
//! - exactly one embeds: that tetrahedron with a CAT(0) disc glued on xyz,
//!   or a surface, double or plane holding the second point on xyz;
//! - both over-distance: two discs sharing the triangle xyz;
//! - both under-distance: a double of xyz or a plane.
//!
//! Surfaces and planes satisfy the hub pattern and rely on Kirszbraun's
//! theorem. Every applicable branch is tried and the first that verifies
//! is kept.

use std::f64::consts::PI;

use super::basic::embed4;
use super::{first_verifying, iso, triangles_model, vname, Model, Strategy, Witness, WitnessConfig};
use crate::complex::{build_surface, ComplexBuilder, Curvature, Piece, Surface};
use crate::error::{Error, Result};
use crate::geom::{self, P2, P3};
use crate::graph::SimpleGraph;
use crate::metric::FiniteMetricSpace;
use crate::quad::{classify_with_pivot, place_triangle};

#[derive(Debug, Clone, Copy)]
struct Roles {
    x: usize,
    p: usize,
    q: usize,
    y: usize,
    z: usize,
}

impl Roles {
    fn swapped(self) -> Self {
        Self { p: self.q, q: self.p, ..self }
    }
}

type Candidates = Vec<(String, Result<Witness>)>;

struct Ctx<'a> {
    sp: &'a FiniteMetricSpace,
    r: Roles,
    tol: f64,
    scale: f64,
    /// x', y', z' in the plane.
    t: [P2; 3],
}

fn angle(sp: &FiniteMetricSpace, a: usize, o: usize, b: usize) -> f64 {
    sp.comparison_angle(a, o, b).unwrap_or(0.0)
}

/// The point at distances `da`, `db` from `a`, `b` on the side of the line
/// ab where `reference` lies.
fn apex_on_side(a: P2, b: P2, da: f64, db: f64, reference: P2) -> Option<P2> {
    let l = geom::dist2(a, b);
    if l == 0.0 {
        return None;
    }
    let e = [(b[0] - a[0]) / l, (b[1] - a[1]) / l];
    let n = [-e[1], e[0]];
    let s = (da * da - db * db + l * l) / (2.0 * l);
    let h = (da * da - s * s).max(0.0).sqrt();
    let h = if geom::orient2(a, b, reference) >= 0.0 { h } else { -h };
    Some([a[0] + s * e[0] + h * n[0], a[1] + s * e[1] + h * n[1]])
}

fn strictly_inside(p: P2, t: [P2; 3], eps: f64) -> bool {
    let o = [geom::orient2(t[0], t[1], p), geom::orient2(t[1], t[2], p), geom::orient2(t[2], t[0], p)];
    o.iter().all(|&v| v > eps) || o.iter().all(|&v| v < -eps)
}

impl<'a> Ctx<'a> {
    fn d(&self, a: usize, b: usize) -> f64 {
        self.sp.d(a, b)
    }

    fn area_eps(&self) -> f64 {
        self.tol * self.scale * self.scale
    }

    /// The point with the distances of `v` to x, y, z, on the side `sign` of
    /// the plane through x', y', z'.
    fn trilaterate(&self, v: usize, sign: f64) -> P3 {
        let [_, y, z] = self.t;
        let (d0, d1, d2) = (self.d(self.r.x, v), self.d(self.r.y, v), self.d(self.r.z, v));
        let a = y[0];
        let px = (d0 * d0 - d1 * d1 + a * a) / (2.0 * a);
        if z[1].abs() > self.tol * self.scale {
            let py = (d0 * d0 - d2 * d2 + z[0] * z[0] + z[1] * z[1] - 2.0 * px * z[0]) / (2.0 * z[1]);
            let h = (d0 * d0 - px * px - py * py).max(0.0).sqrt();
            [px, py, sign * h]
        } else {
            [px, 0.0, sign * (d0 * d0 - px * px).max(0.0).sqrt()]
        }
    }

    fn frame3(&self) -> [P3; 3] {
        self.t.map(geom::lift)
    }

    fn witness(&self, m: Result<Model>, prov: &str) -> Result<Witness> {
        m.map(|m| Witness::new(Strategy::CaseG9, m, prov))
    }

    fn kirszbraun(&self, m: Result<Model>, prov: &str) -> Result<Witness> {
        self.witness(m, prov).map(|w| w.kirszbraun(self.r.x))
    }

    fn plane(&self, p: P2, q: P2) -> Model {
        let mut pts = vec![[0.0; 2]; 5];
        let r = self.r;
        for (v, c) in [(r.x, self.t[0]), (r.y, self.t[1]), (r.z, self.t[2]), (r.p, p), (r.q, q)] {
            pts[v] = c;
        }
        Model::Plane(pts)
    }

    /// Double of xyz with p on the front copy and q on the back copy.
    fn double(&self, p: P2, q: P2) -> Result<Model> {
        let r = self.r;
        let s = build_surface(Surface::Double([self.d(r.x, r.y), self.d(r.y, r.z), self.d(r.z, r.x)]))?;
        let mut b = ComplexBuilder::from_complex(&s);
        for m in &mut b.marks {
            m.name = vname(match m.name.as_str() {
                "a" => r.x,
                "b" => r.y,
                _ => r.z,
            });
        }
        b.mark_at(vname(r.p), 0, geom::lift(p))?;
        b.mark_at(vname(r.q), 1, geom::lift(q))?;
        Ok(Model::Complex { space: b.build()?, marks: (0..5).map(vname).collect() })
    }

    /// Boundary of the tetrahedron `[p, x, y, z]` with q at `q3` on the face xyz.
    fn tetra_surface(&self, v: [P3; 4], q3: P3) -> Result<Model> {
        let r = self.r;
        let s = build_surface(Surface::TetraBoundary(v))?;
        let names = [r.p, r.x, r.y, r.z];
        let mut b = ComplexBuilder::from_complex(&s);
        for m in &mut b.marks {
            let k: usize = m.name[1..].parse().expect("surface marks are v0..v3");
            m.name = vname(names[k]);
        }
        // faces are 012, 013, 023, 123; the last is xyz
        b.mark_at(vname(r.q), 3, q3)?;
        Ok(Model::Complex { space: b.build()?, marks: (0..5).map(vname).collect() })
    }

    fn both_embed(&self) -> Candidates {
        let r = self.r;
        let p = self.trilaterate(r.p, 1.0);
        let q = self.trilaterate(r.q, -1.0);
        let eps = self.tol * self.scale;
        let (p_in, q_in) = (p[2].abs() <= eps, q[2].abs() <= eps);
        let crossings: Vec<P2> = if p_in && q_in {
            vec![[p[0], p[1]], [q[0], q[1]]]
        } else {
            let s = p[2] / (p[2] - q[2]);
            vec![[p[0] + s * (q[0] - p[0]), p[1] + s * (q[1] - p[1])]]
        };
        let outside = crossings.iter().any(|&c| !strictly_inside(c, self.t, self.area_eps()));
        let mut out = Candidates::new();
        if outside {
            let m = (|| {
                let f = self.frame3();
                let mut b = ComplexBuilder::new("tetrahedra on xyz");
                let kp = b.add_piece(Piece::polytope(vec![f[0], f[1], f[2], p]));
                let kq = b.add_piece(Piece::polytope(vec![f[0], f[1], f[2], q]));
                b.glue_facets(kp, f, kq, f);
                for (v, c) in [(r.x, f[0]), (r.y, f[1]), (r.z, f[2]), (r.p, p)] {
                    b.mark_at(vname(v), kp, c)?;
                }
                b.mark_at(vname(r.q), kq, q)?;
                Ok(Model::Complex { space: b.build()?, marks: (0..5).map(vname).collect() })
            })();
            out.push(("both embed: tetrahedra".into(), self.witness(m, "two tetrahedra glued on the hub triangle")));
        } else if !(p_in && q_in) {
            let m = (|| {
                let t = [
                    [r.p, r.x, r.y],
                    [r.p, r.y, r.z],
                    [r.p, r.z, r.x],
                    [r.q, r.x, r.y],
                    [r.q, r.y, r.z],
                    [r.q, r.z, r.x],
                ];
                let joins = [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3), (0, 3), (1, 4), (2, 5)];
                let mut m = triangles_model(self.sp, "bipyramid", &t, &joins)?;
                if let Model::Complex { space, .. } = &mut m {
                    space.curvature = Curvature::Nonnegative;
                }
                Ok(m)
            })();
            out.push(("both embed: bipyramid".into(), self.kirszbraun(m, "bipyramid surface over the hub triangle")));
        } else {
            let m = self.double([p[0], p[1]], [q[0], q[1]]);
            out.push(("both embed: double".into(), self.kirszbraun(m, "double of the hub triangle")));
        }
        out
    }

    /// Over-distance pivots {v, u} of {v, x, y, z} and the apexes of the
    /// matching discs: `(apex, u, third)` with the angle sum at the apex above π.
    fn disc_options(&self, v: usize, pivots: &[usize]) -> Vec<(usize, usize, usize)> {
        let r = self.r;
        let mut out = Vec::new();
        for &u in pivots {
            let Ok(c) = classify_with_pivot(self.sp, [r.x, r.y, r.z, v], [v, u], self.tol) else {
                continue;
            };
            if !c.is_over() {
                continue;
            }
            let others: Vec<usize> = [r.x, r.y, r.z].into_iter().filter(|&w| w != u).collect();
            for (a, c) in [(others[0], others[1]), (others[1], others[0])] {
                if angle(self.sp, u, a, c) + angle(self.sp, c, a, v) > PI {
                    out.push((a, u, c));
                }
            }
        }
        out
    }

    /// p's quadruple embeds as `phi = [x, y, z, p]`, q's does not.
    fn mixed(&self, phi: [P3; 4]) -> Candidates {
        let r = self.r;
        let mut out = Candidates::new();
        let at = |v: usize| phi[[r.x, r.y, r.z, r.p].iter().position(|&w| w == v).expect("role")];
        for (a, u, c) in self.disc_options(r.q, &[r.y, r.z]) {
            let m = (|| {
                let disc = triangles_model(self.sp, "disc", &[[a, u, c], [a, c, r.q], [a, r.q, u]], &[(0, 1), (1, 2), (2, 0)])?;
                let Model::Complex { space: disc, .. } = disc else { unreachable!() };
                let mut b = ComplexBuilder::new("tetrahedron and disc");
                let off = b.absorb(&disc);
                let g = &disc.pieces[0].generators;
                let k = b.add_piece(Piece::polytope(phi.to_vec()));
                b.glue_facets(off, [g[0], g[1], g[2]], k, [at(a), at(u), at(c)]);
                b.mark_at(vname(r.p), k, phi[3])?;
                Ok(Model::Complex { space: b.build()?, marks: (0..5).map(vname).collect() })
            })();
            let label = format!("mixed: disc at {a} over {{{}, {u}}}", r.q);
            out.push((label, self.witness(m, "tetrahedron with a disc glued on the hub triangle")));
        }
        let under = |u: usize| {
            classify_with_pivot(self.sp, [r.x, r.y, r.z, r.q], [r.q, u], self.tol).is_ok_and(|c| c.is_under())
        };
        if under(r.y) && under(r.z) {
            let [x, y, z] = self.t;
            let Some(q2) = apex_on_side(x, z, self.d(r.x, r.q), self.d(r.z, r.q), y) else {
                return out;
            };
            let vol = geom::dot3(
                geom::sub3(phi[1], phi[0]),
                geom::cross3(geom::sub3(phi[2], phi[0]), geom::sub3(phi[3], phi[0])),
            );
            if vol.abs() > self.tol * self.scale.powi(3) {
                let m = (|| {
                    let bc = geom::barycentric3(geom::lift(q2), geom::lift(x), geom::lift(y), geom::lift(z))
                        .ok_or_else(|| Error::DegenerateInput("flat hub triangle".into()))?;
                    let q3 = (0..3).fold([0.0; 3], |acc, i| geom::add3(acc, geom::scale3(phi[i], bc[i])));
                    self.tetra_surface([phi[3], phi[0], phi[1], phi[2]], q3)
                })();
                out.push(("mixed: tetrahedron surface".into(), self.kirszbraun(m, "tetrahedron boundary")));
            } else {
                let p3 = self.trilaterate(r.p, 1.0);
                let p2 = [p3[0], p3[1]];
                if geom::in_triangle(p2, x, y, z, self.area_eps()) {
                    let m = self.double(p2, q2);
                    out.push(("mixed: double".into(), self.kirszbraun(m, "double of the hub triangle")));
                }
                let m = Ok(self.plane(p2, q2));
                out.push(("mixed: plane".into(), self.kirszbraun(m, "planar configuration")));
            }
        }
        out
    }

    fn both_over(&self) -> Candidates {
        let r = self.r;
        let all = [r.x, r.y, r.z];
        let mut out = Candidates::new();
        for (a1, a2, a3) in self.disc_options(r.p, &all) {
            for (b1, b2, b3) in self.disc_options(r.q, &all) {
                let t = [[r.x, r.y, r.z], [a1, a3, r.p], [a1, r.p, a2], [b1, b3, r.q], [b1, r.q, b2]];
                let m = triangles_model(self.sp, "twin discs", &t, &[(0, 1), (0, 2), (1, 2), (0, 3), (0, 4), (3, 4)]);
                out.push((
                    format!("over/over: apexes {a1}, {b1}"),
                    self.witness(m, "two discs sharing the hub triangle"),
                ));
            }
        }
        out
    }

    // Positions of v hinged across x and the other of y, z, for each
    // under-distance pivot {v, u}.
    fn hinged(&self, v: usize) -> Vec<P2> {
        let r = self.r;
        let [x, y, z] = self.t;
        let mut out = Vec::new();
        for (u, pu, w, pw) in [(r.y, y, r.z, z), (r.z, z, r.y, y)] {
            let under = classify_with_pivot(self.sp, [r.x, r.y, r.z, v], [v, u], self.tol).is_ok_and(|c| c.is_under());
            if under {
                if let Some(c) = apex_on_side(x, pw, self.d(r.x, v), self.d(w, v), pu) {
                    out.push(c);
                }
            }
        }
        out
    }

    fn both_under(&self) -> Candidates {
        let [x, y, z] = self.t;
        let eps = self.area_eps();
        let mut out = Candidates::new();
        for p in self.hinged(self.r.p) {
            for q in self.hinged(self.r.q) {
                if geom::in_triangle(p, x, y, z, eps) && geom::in_triangle(q, x, y, z, eps) {
                    out.push(("under/under: double".into(), self.kirszbraun(self.double(p, q), "double of the hub triangle")));
                }
                out.push(("under/under: plane".into(), self.kirszbraun(Ok(self.plane(p, q)), "planar configuration")));
            }
        }
        out
    }
}

fn candidates(sp: &FiniteMetricSpace, r: Roles, tol: f64) -> Result<Candidates> {
    let t = place_triangle(sp.d(r.x, r.y), sp.d(r.y, r.z), sp.d(r.z, r.x))?;
    let ctx = |r: Roles| Ctx { sp, r, tol, scale: sp.scale(), t };
    let ep = embed4(sp, [r.x, r.y, r.z, r.p], tol);
    let eq = embed4(sp, [r.x, r.y, r.z, r.q], tol);
    Ok(match (ep, eq) {
        (Some(_), Some(_)) => ctx(r).both_embed(),
        (Some(_), None) | (None, Some(_)) => {
            let r = if ep.is_some() { r } else { r.swapped() };
            let c = ctx(r);
            // re-embed with x, y, z on the frame triangle
            let p3 = c.trilaterate(r.p, 1.0);
            let f = c.frame3();
            c.mixed([f[0], f[1], f[2], p3])
        }
        (None, None) => {
            let c = ctx(r);
            let mut out = c.both_over();
            out.extend(c.both_under());
            out
        }
    })
}

pub(super) fn case_g9(y: &FiniteMetricSpace, g: &SimpleGraph, cfg: &WitnessConfig) -> Result<Witness> {
    let m = iso(g, &[9])?;
    let v = |k: usize| m[k - 1];
    let roles = [
        Roles { x: v(1), p: v(2), q: v(4), y: v(3), z: v(5) },
        Roles { x: v(1), p: v(3), q: v(5), y: v(2), z: v(4) },
    ];
    let mut cands = Candidates::new();
    for (i, r) in roles.into_iter().enumerate() {
        match candidates(y, r, cfg.tol) {
            Ok(c) => cands.extend(c.into_iter().map(|(l, w)| (format!("pairs {}: {l}", i + 1), w))),
            Err(e) => cands.push((format!("pairs {}", i + 1), Err(e))),
        }
    }
    first_verifying(y, g, cfg, cands)
}
