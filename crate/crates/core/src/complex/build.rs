//! Builders for the complexes used by the witness constructions.

use super::{ComplexBuilder, ComplexSpace, Curvature, Piece};
use crate::error::{Error, Result};
use crate::geom::{self, P3};
use crate::quad::place_triangle;

/// A labeled triangle given by its side lengths
/// `[|l0 l1|, |l1 l2|, |l2 l0|]`.
#[derive(Debug, Clone, PartialEq)]
pub struct FanTriangle {
    pub labels: [String; 3],
    pub sides: [f64; 3],
}

impl FanTriangle {
    pub fn new(labels: [&str; 3], sides: [f64; 3]) -> Self {
        Self { labels: labels.map(String::from), sides }
    }

    fn place(&self) -> Result<[P3; 3]> {
        let [a, b, c] = place_triangle(self.sides[0], self.sides[1], self.sides[2])?;
        Ok([geom::lift(a), geom::lift(b), geom::lift(c)])
    }
}

/// Triangles glued along the sides named by `joins` (pairs of triangle
/// indices sharing exactly two labels). Each label is marked once.
pub fn triangle_complex(name: &str, tris: &[FanTriangle], joins: &[(usize, usize)]) -> Result<ComplexSpace> {
    let mut b = ComplexBuilder::new(name);
    let mut coords = Vec::new();
    for t in tris {
        let p = t.place()?;
        b.add_piece(Piece::triangle(p[0], p[1], p[2]));
        coords.push(p);
    }
    for &(i, j) in joins {
        let shared: Vec<(usize, usize)> = (0..3)
            .filter_map(|a| tris[j].labels.iter().position(|l| *l == tris[i].labels[a]).map(|bb| (a, bb)))
            .collect();
        if shared.len() != 2 {
            return Err(Error::DegenerateInput(format!("triangles {i} and {j} do not share a side")));
        }
        let (s0, s1) = (shared[0], shared[1]);
        b.glue_segments(i, [coords[i][s0.0], coords[i][s1.0]], j, [coords[j][s0.1], coords[j][s1.1]]);
    }
    let mut seen: Vec<String> = Vec::new();
    for (i, t) in tris.iter().enumerate() {
        for (k, l) in t.labels.iter().enumerate() {
            if !seen.contains(l) {
                seen.push(l.clone());
                b.mark_at(l.clone(), i, coords[i][k])?;
            }
        }
    }
    b.build()
}

/// Chain of triangles, each glued to the next along their common side.
pub fn build_fan(tris: &[FanTriangle]) -> Result<ComplexSpace> {
    let joins: Vec<(usize, usize)> = (1..tris.len()).map(|i| (i - 1, i)).collect();
    triangle_complex("fan", tris, &joins)
}

/// D(x; y, z, w): triangles (x,y,z), (x,z,w), (x,w,y) glued pairwise along
/// the segments through the apex x.
pub fn build_disc(dxy: f64, dxz: f64, dxw: f64, dyz: f64, dzw: f64, dwy: f64) -> Result<ComplexSpace> {
    let tris = [
        FanTriangle::new(["x", "y", "z"], [dxy, dyz, dxz]),
        FanTriangle::new(["x", "z", "w"], [dxz, dzw, dxw]),
        FanTriangle::new(["x", "w", "y"], [dxw, dwy, dxy]),
    ];
    triangle_complex("D(x;y,z,w)", &tris, &[(0, 1), (1, 2), (2, 0)])
}

/// Closed nonnegatively curved surfaces.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Surface {
    /// Two copies of the triangle with sides `[|ab|, |bc|, |ca|]` glued along
    /// their boundaries.
    Double([f64; 3]),
    /// Boundary of the tetrahedron with these vertices.
    TetraBoundary([P3; 4]),
}

/// Builds a double or a tetrahedron boundary; vertices are marked
/// `a, b, c` resp. `v0..v3`.
pub fn build_surface(kind: Surface) -> Result<ComplexSpace> {
    match kind {
        Surface::Double(sides) => {
            let [a, b, c] = place_triangle(sides[0], sides[1], sides[2])?;
            if geom::orient2(a, b, c).abs() <= 1e-12 * sides.iter().fold(0.0f64, |m, &s| m.max(s)).powi(2) {
                return Err(Error::DegenerateInput("degenerate triangle".into()));
            }
            let p = [a, b, c].map(geom::lift);
            let mut bl = ComplexBuilder::new("double");
            bl.curvature = Curvature::Nonnegative;
            let f0 = bl.add_piece(Piece::triangle(p[0], p[1], p[2]).labeled("front"));
            let f1 = bl.add_piece(Piece::triangle(p[0], p[1], p[2]).labeled("back"));
            for i in 0..3 {
                let s = [p[i], p[(i + 1) % 3]];
                bl.glue_segments(f0, s, f1, s);
            }
            for (n, q) in ["a", "b", "c"].into_iter().zip(p) {
                bl.mark_at(n, f0, q)?;
            }
            bl.build()
        }
        Surface::TetraBoundary(v) => {
            let vol = geom::dot3(geom::sub3(v[1], v[0]), geom::cross3(geom::sub3(v[2], v[0]), geom::sub3(v[3], v[0])));
            let scale = (0..4)
                .flat_map(|i| (0..4).map(move |j| (i, j)))
                .map(|(i, j)| geom::dist3(v[i], v[j]))
                .fold(0.0, f64::max);
            if vol.abs() <= 1e-12 * scale.powi(3) {
                return Err(Error::DegenerateInput("coplanar tetrahedron".into()));
            }
            let faces = [[0, 1, 2], [0, 1, 3], [0, 2, 3], [1, 2, 3]];
            let mut bl = ComplexBuilder::new("tetra_boundary");
            bl.curvature = Curvature::Nonnegative;
            for f in faces {
                bl.add_piece(Piece::triangle(v[f[0]], v[f[1]], v[f[2]]));
            }
            for i in 0..4 {
                for j in i + 1..4 {
                    let common: Vec<usize> = faces[i].iter().copied().filter(|k| faces[j].contains(k)).collect();
                    let s = [v[common[0]], v[common[1]]];
                    bl.glue_segments(i, s, j, s);
                }
            }
            for k in 0..4 {
                let f = faces.iter().position(|f| f.contains(&k)).unwrap();
                bl.mark_at(format!("v{k}"), f, v[k])?;
            }
            bl.build()
        }
    }
}

fn fresh_name(taken: &[String], base: &str) -> String {
    let mut n = base.to_string();
    while taken.contains(&n) {
        n.push('\'');
    }
    n
}

/// Wedge sum identifying mark `a` of `x` with mark `b` of `y`.
///
/// Marks of `y` whose names collide with marks of `x` get primes appended.
pub fn glue_at_point(x: &ComplexSpace, a: &str, y: &ComplexSpace, b: &str) -> Result<ComplexSpace> {
    let ma = x.mark(a)?.clone();
    let mb = y.mark(b)?.clone();
    let mut bl = ComplexBuilder::from_complex(x);
    bl.name = format!("{} v {}", x.name, y.name);
    if y.curvature == Curvature::Nonnegative {
        bl.curvature = Curvature::Nonnegative;
    }
    let mut renamed = y.clone();
    let mut taken: Vec<String> = x.marks.iter().map(|m| m.name.clone()).collect();
    for m in &mut renamed.marks {
        m.name = fresh_name(&taken, &m.name);
        taken.push(m.name.clone());
    }
    let off = bl.absorb(&renamed);
    bl.glue_points(ma.piece, x.position(&ma), mb.piece + off, y.position(&mb));
    bl.build()
}

/// Attaches a segment of length `len` at mark `a`; its far end is marked `end`.
pub fn attach_segment(x: &ComplexSpace, a: &str, len: f64, end: &str) -> Result<ComplexSpace> {
    if len < 0.0 || len.is_nan() {
        return Err(Error::NegativeLength(len));
    }
    let ma = x.mark(a)?.clone();
    let mut bl = ComplexBuilder::from_complex(x);
    let s = bl.add_piece(Piece::segment([0.0; 3], [len, 0.0, 0.0]));
    bl.glue_points(ma.piece, x.position(&ma), s, [0.0; 3]);
    let taken: Vec<String> = x.marks.iter().map(|m| m.name.clone()).collect();
    bl.mark_at(fresh_name(&taken, end), s, [len, 0.0, 0.0])?;
    bl.build()
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn equilateral_disc_fails_the_link_check() {
        let d = build_disc(1.0, 1.0, 1.0, 1.0, 1.0, 1.0).unwrap();
        assert!((d.angle_sum("x").unwrap() - PI).abs() < 1e-12);
        assert!(!d.local_cat0_check(1e-9));
    }

    #[test]
    fn flat_square() {
        let r = 2f64.sqrt();
        let f = build_fan(&[
            FanTriangle::new(["a", "b", "c"], [1.0, 1.0, r]),
            FanTriangle::new(["a", "c", "d"], [r, 1.0, 1.0]),
        ])
        .unwrap();
        assert!((f.distance("b", "d").unwrap() - r).abs() < 1e-9);
        assert!(f.local_cat0_check(1e-9));
        assert!(matches!(f.angle_sum("a"), Err(Error::NotInteriorVertex)));
    }

    #[test]
    fn fan_length_mismatch() {
        let f = build_fan(&[
            FanTriangle::new(["a", "b", "c"], [1.0, 1.0, 1.0]),
            FanTriangle::new(["a", "c", "d"], [1.1, 1.0, 1.0]),
        ]);
        assert!(matches!(f, Err(Error::LengthMismatch(_))));
    }

    #[test]
    fn wedges_and_segments() {
        let mut b = ComplexBuilder::new("s");
        let s = b.add_piece(Piece::segment([0.0; 3], [1.0, 0.0, 0.0]));
        b.mark_at("p", s, [0.0; 3]).unwrap();
        b.mark_at("q", s, [1.0, 0.0, 0.0]).unwrap();
        let one = b.build().unwrap();
        let w = glue_at_point(&one, "q", &one, "p").unwrap();
        assert!((w.distance("p", "q'").unwrap() - 2.0).abs() < 1e-12);
        let t = attach_segment(&one, "q", 0.0, "r").unwrap();
        assert!(t.distance("q", "r").unwrap().abs() < 1e-12);
        assert!(matches!(attach_segment(&one, "q", -1.0, "r"), Err(Error::NegativeLength(_))));
        // triangle wedged to a segment at a vertex: distances add
        let tri = build_fan(&[FanTriangle::new(["a", "b", "c"], [3.0, 4.0, 5.0])]).unwrap();
        let t = attach_segment(&tri, "a", 2.0, "e").unwrap();
        assert!((t.distance("c", "e").unwrap() - 7.0).abs() < 1e-9);
    }

    #[test]
    fn double_of_equilateral() {
        let d = build_surface(Surface::Double([1.0; 3])).unwrap();
        let p = d.pieces[0].generators.clone();
        let center = geom::scale3(geom::add3(p[0], geom::add3(p[1], p[2])), 1.0 / 3.0);
        let mut b = ComplexBuilder::from_complex(&d);
        b.mark_at("front", 0, center).unwrap();
        b.mark_at("back", 1, center).unwrap();
        let d = b.build().unwrap();
        let v = d.distance("front", "back").unwrap();
        assert!((v - 3f64.sqrt() / 3.0).abs() < 1e-9, "{v}");
        assert!(!d.local_cat0_check(1e-9));
    }

    #[test]
    fn regular_tetra_opposite_midpoints() {
        let s = 1.0 / 2f64.sqrt();
        let v = [[s, 0.0, 0.0], [0.0, s, 0.0], [0.0, 0.0, s], [s, s, s]];
        let t = build_surface(Surface::TetraBoundary(v)).unwrap();
        // side length 1: |v0 v1| = 1
        assert!((geom::dist3(v[0], v[1]) - 1.0).abs() < 1e-12);
        let mut b = ComplexBuilder::from_complex(&t);
        b.mark_at("m01", 0, geom::lerp3(v[0], v[1], 0.5)).unwrap();
        b.mark_at("m23", 3, geom::lerp3(v[2], v[3], 0.5)).unwrap();
        let t = b.build().unwrap();
        let d = t.distance("m01", "m23").unwrap();
        assert!((d - 1.0).abs() < 1e-9, "{d}");
    }
}
