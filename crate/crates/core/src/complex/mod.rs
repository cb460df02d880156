//! Piecewise-Euclidean complexes.
//!
//! A complex is a set of convex Euclidean pieces (segments, triangles, convex
//! polygons, polytopes or all of R³) glued along points, segments and
//! triangular facets. Every piece carries coordinates in R³ regardless of its
//! intrinsic dimension. Marked points are convex combinations of a piece's
//! generators.

mod build;
mod curvature;
mod dist;
mod oracle;

pub use build::{
    attach_segment, build_disc, build_fan, build_surface, glue_at_point, triangle_complex, FanTriangle, Surface,
};
pub use curvature::LinkReport;
pub use dist::DistanceReport;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geom::{self, P3};

/// Relative tolerance for gluing length checks.
pub const GLUE_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Piece {
    /// Intrinsic dimension: 1, 2 or 3.
    pub dim: usize,
    pub generators: Vec<P3>,
    /// Set for a piece standing for all of R³; `generators` then only lists
    /// the points of interest.
    #[serde(default)]
    pub unbounded: bool,
    #[serde(default)]
    pub label: String,
}

impl Piece {
    pub fn segment(a: P3, b: P3) -> Self {
        Self { dim: 1, generators: vec![a, b], unbounded: false, label: String::new() }
    }

    pub fn triangle(a: P3, b: P3, c: P3) -> Self {
        Self { dim: 2, generators: vec![a, b, c], unbounded: false, label: String::new() }
    }

    /// A convex planar polygon (its generators' hull).
    pub fn polygon(points: Vec<P3>) -> Self {
        Self { dim: 2, generators: points, unbounded: false, label: String::new() }
    }

    pub fn polytope(points: Vec<P3>) -> Self {
        Self { dim: 3, generators: points, unbounded: false, label: String::new() }
    }

    pub fn space(points: Vec<P3>) -> Self {
        Self { dim: 3, generators: points, unbounded: true, label: String::new() }
    }

    pub fn labeled(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    pub fn is_triangle(&self) -> bool {
        self.dim == 2 && self.generators.len() == 3
    }

    pub fn extent(&self) -> f64 {
        let g = &self.generators;
        let mut e: f64 = 0.0;
        for i in 0..g.len() {
            for j in i + 1..g.len() {
                e = e.max(geom::dist3(g[i], g[j]));
            }
        }
        e
    }
}

/// A gluing feature inside a piece, in that piece's coordinates.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum Feature {
    Point(P3),
    Segment(P3, P3),
    Triangle(P3, P3, P3),
}

impl Feature {
    /// Number of crossing parameters.
    pub fn params(&self) -> usize {
        match self {
            Feature::Point(_) => 0,
            Feature::Segment(..) => 1,
            Feature::Triangle(..) => 2,
        }
    }

    /// Point at parameters `u` (length as given by `params`).
    pub fn at(&self, u: &[f64]) -> P3 {
        match *self {
            Feature::Point(p) => p,
            Feature::Segment(a, b) => geom::lerp3(a, b, u[0]),
            Feature::Triangle(a, b, c) => geom::add3(
                a,
                geom::add3(geom::scale3(geom::sub3(b, a), u[0]), geom::scale3(geom::sub3(c, a), u[1])),
            ),
        }
    }

    /// Base point and direction vectors of the affine parametrisation.
    pub fn affine(&self) -> (P3, Vec<P3>) {
        match *self {
            Feature::Point(p) => (p, vec![]),
            Feature::Segment(a, b) => (a, vec![geom::sub3(b, a)]),
            Feature::Triangle(a, b, c) => (a, vec![geom::sub3(b, a), geom::sub3(c, a)]),
        }
    }

    pub fn vertices(&self) -> Vec<P3> {
        match *self {
            Feature::Point(p) => vec![p],
            Feature::Segment(a, b) => vec![a, b],
            Feature::Triangle(a, b, c) => vec![a, b, c],
        }
    }

    fn side_lengths(&self) -> Vec<f64> {
        let v = self.vertices();
        let mut out = Vec::new();
        for i in 0..v.len() {
            for j in i + 1..v.len() {
                out.push(geom::dist3(v[i], v[j]));
            }
        }
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum GluingKind {
    Point,
    Segment,
    Facet,
}

/// Identifies `features[0]` in piece `pieces[0]` with `features[1]` in
/// `pieces[1]`; equal parameters correspond.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Gluing {
    pub kind: GluingKind,
    pub pieces: [usize; 2],
    pub features: [Feature; 2],
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MarkedPoint {
    pub name: String,
    pub piece: usize,
    pub bary: Vec<f64>,
}

/// Curvature class a complex is built to have.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Curvature {
    /// Built to be CAT(0); the local link check applies.
    Cat0,
    /// A closed surface with nonnegative curvature (doubles, polytope boundaries).
    Nonnegative,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComplexSpace {
    pub name: String,
    pub pieces: Vec<Piece>,
    pub gluings: Vec<Gluing>,
    pub marks: Vec<MarkedPoint>,
    pub curvature: Curvature,
    #[serde(skip)]
    adjacency: Vec<Vec<(usize, usize)>>,
    #[serde(skip)]
    gaps: Vec<Vec<Vec<f64>>>,
}

/// Mutable staging area for a complex; [`ComplexBuilder::build`] validates it.
#[derive(Debug, Clone)]
pub struct ComplexBuilder {
    pub name: String,
    pub pieces: Vec<Piece>,
    pub gluings: Vec<Gluing>,
    pub marks: Vec<MarkedPoint>,
    pub curvature: Curvature,
}

impl Default for ComplexBuilder {
    fn default() -> Self {
        Self::new("")
    }
}

impl ComplexBuilder {
    pub fn new(name: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            pieces: vec![],
            gluings: vec![],
            marks: vec![],
            curvature: Curvature::Cat0,
        }
    }

    pub fn from_complex(c: &ComplexSpace) -> Self {
        Self {
            name: c.name.clone(),
            pieces: c.pieces.clone(),
            gluings: c.gluings.clone(),
            marks: c.marks.clone(),
            curvature: c.curvature,
        }
    }

    pub fn add_piece(&mut self, p: Piece) -> usize {
        self.pieces.push(p);
        self.pieces.len() - 1
    }

    pub fn glue_points(&mut self, pa: usize, a: P3, pb: usize, b: P3) {
        self.gluings.push(Gluing {
            kind: GluingKind::Point,
            pieces: [pa, pb],
            features: [Feature::Point(a), Feature::Point(b)],
        });
    }

    /// Glues [a0, a1] in `pa` to [b0, b1] in `pb`, a0 ↦ b0.
    pub fn glue_segments(&mut self, pa: usize, a: [P3; 2], pb: usize, b: [P3; 2]) {
        self.gluings.push(Gluing {
            kind: GluingKind::Segment,
            pieces: [pa, pb],
            features: [Feature::Segment(a[0], a[1]), Feature::Segment(b[0], b[1])],
        });
    }

    pub fn glue_facets(&mut self, pa: usize, a: [P3; 3], pb: usize, b: [P3; 3]) {
        self.gluings.push(Gluing {
            kind: GluingKind::Facet,
            pieces: [pa, pb],
            features: [Feature::Triangle(a[0], a[1], a[2]), Feature::Triangle(b[0], b[1], b[2])],
        });
    }

    /// Marks the point `p` (piece coordinates) of piece `piece`.
    ///
    /// Segments and triangles use barycentric coordinates; for other pieces
    /// `p` must be a generator or, for unbounded pieces, is appended as one.
    pub fn mark_at(&mut self, name: impl Into<String>, piece: usize, p: P3) -> Result<()> {
        let name = name.into();
        let pc = &mut self.pieces[piece];
        let g = &pc.generators;
        let tol = 1e-9 * pc.extent().max(geom::norm3(p)).max(1.0);
        let bary = match (pc.dim, g.len()) {
            (1, 2) => {
                let d = geom::sub3(g[1], g[0]);
                let l2 = geom::dot3(d, d);
                let t = if l2 > 0.0 { geom::dot3(geom::sub3(p, g[0]), d) / l2 } else { 0.0 };
                vec![1.0 - t, t]
            }
            (2, 3) => match geom::barycentric3(p, g[0], g[1], g[2]) {
                Some(b) => b.to_vec(),
                // flat triangle: locate p on one of its sides
                None => (0..3)
                    .find_map(|i| {
                        let (a, b) = (g[i], g[(i + 1) % 3]);
                        let d = geom::sub3(b, a);
                        let l2 = geom::dot3(d, d);
                        let t = if l2 > 0.0 { (geom::dot3(geom::sub3(p, a), d) / l2).clamp(0.0, 1.0) } else { 0.0 };
                        (geom::dist3(geom::lerp3(a, b, t), p) <= tol).then(|| {
                            let mut w = vec![0.0; 3];
                            w[i] = 1.0 - t;
                            w[(i + 1) % 3] = t;
                            w
                        })
                    })
                    .ok_or_else(|| Error::BadBarycentric(name.clone()))?,
            },
            _ => {
                let k = match g.iter().position(|&q| geom::dist3(p, q) <= tol) {
                    Some(k) => k,
                    None if pc.unbounded => {
                        pc.generators.push(p);
                        pc.generators.len() - 1
                    }
                    None => return Err(Error::BadBarycentric(name)),
                };
                let mut b = vec![0.0; pc.generators.len()];
                b[k] = 1.0;
                b
            }
        };
        self.marks.push(MarkedPoint { name, piece, bary });
        Ok(())
    }

    /// Appends every piece, gluing and mark of `other`; returns the piece offset.
    pub fn absorb(&mut self, other: &ComplexSpace) -> usize {
        let off = self.pieces.len();
        self.pieces.extend(other.pieces.iter().cloned());
        for g in &other.gluings {
            let mut g = *g;
            g.pieces = [g.pieces[0] + off, g.pieces[1] + off];
            self.gluings.push(g);
        }
        for m in &other.marks {
            let mut m = m.clone();
            m.piece += off;
            self.marks.push(m);
        }
        off
    }

    pub fn build(self) -> Result<ComplexSpace> {
        assemble(self.name, self.pieces, self.gluings, self.marks, self.curvature)
    }
}

/// Validates pieces, gluings and marks and builds the adjacency index.
pub fn assemble(
    name: String,
    pieces: Vec<Piece>,
    gluings: Vec<Gluing>,
    marks: Vec<MarkedPoint>,
    curvature: Curvature,
) -> Result<ComplexSpace> {
    if pieces.is_empty() {
        return Err(Error::DegenerateInput("complex without pieces".into()));
    }
    let scale = pieces.iter().map(Piece::extent).fold(0.0, f64::max).max(f64::MIN_POSITIVE);
    let mut adjacency = vec![Vec::new(); pieces.len()];
    for (k, g) in gluings.iter().enumerate() {
        if g.pieces.iter().any(|&p| p >= pieces.len()) {
            return Err(Error::BadIndex(k));
        }
        let kind_ok = matches!(
            (g.kind, g.features[0], g.features[1]),
            (GluingKind::Point, Feature::Point(_), Feature::Point(_))
                | (GluingKind::Segment, Feature::Segment(..), Feature::Segment(..))
                | (GluingKind::Facet, Feature::Triangle(..), Feature::Triangle(..))
        );
        if !kind_ok {
            return Err(Error::DegenerateInput(format!("gluing {k} has mismatched features")));
        }
        let (la, lb) = (g.features[0].side_lengths(), g.features[1].side_lengths());
        if la.iter().zip(&lb).any(|(a, b)| (a - b).abs() > GLUE_TOL * scale) {
            return Err(Error::LengthMismatch(k));
        }
        adjacency[g.pieces[0]].push((k, 0));
        adjacency[g.pieces[1]].push((k, 1));
    }
    for m in &marks {
        let Some(p) = pieces.get(m.piece) else {
            return Err(Error::BadBarycentric(m.name.clone()));
        };
        let sum: f64 = m.bary.iter().sum();
        if m.bary.len() != p.generators.len() || m.bary.iter().any(|&b| b < -1e-9) || (sum - 1.0).abs() > 1e-9 {
            return Err(Error::BadBarycentric(m.name.clone()));
        }
    }
    // connectivity
    let mut seen = vec![false; pieces.len()];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(p) = stack.pop() {
        for &(k, side) in &adjacency[p] {
            let o = gluings[k].pieces[1 - side];
            if !seen[o] {
                seen[o] = true;
                stack.push(o);
            }
        }
    }
    if seen.iter().any(|s| !s) {
        return Err(Error::DisconnectedComplex);
    }
    let gaps = dist::feature_gaps(&gluings, &adjacency);
    Ok(ComplexSpace { name, pieces, gluings, marks, curvature, adjacency, gaps })
}

impl ComplexSpace {
    pub fn from_json(text: &str) -> Result<Self> {
        let c: ComplexSpace =
            serde_json::from_str(text).map_err(|e| Error::BadParams(format!("invalid complex JSON: {e}")))?;
        assemble(c.name, c.pieces, c.gluings, c.marks, c.curvature)
    }

    /// Rebuilds the derived indices, e.g. after deserialising as part of a
    /// larger document.
    pub fn reassemble(self) -> Result<Self> {
        assemble(self.name, self.pieces, self.gluings, self.marks, self.curvature)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("plain data serialises")
    }

    pub fn mark(&self, name: &str) -> Result<&MarkedPoint> {
        self.marks.iter().find(|m| m.name == name).ok_or_else(|| Error::UnknownMark(name.into()))
    }

    pub fn mark_index(&self, name: &str) -> Result<usize> {
        self.marks.iter().position(|m| m.name == name).ok_or_else(|| Error::UnknownMark(name.into()))
    }

    /// Coordinates of a mark in its piece.
    pub fn position(&self, m: &MarkedPoint) -> P3 {
        let g = &self.pieces[m.piece].generators;
        let mut p = [0.0; 3];
        for (w, q) in m.bary.iter().zip(g) {
            p = geom::add3(p, geom::scale3(*q, *w));
        }
        p
    }

    pub fn adjacency(&self, piece: usize) -> &[(usize, usize)] {
        &self.adjacency[piece]
    }

    /// Largest piece extent.
    pub fn scale(&self) -> f64 {
        self.pieces.iter().map(Piece::extent).fold(0.0, f64::max)
    }

    pub fn is_cat0_declared(&self) -> bool {
        self.curvature == Curvature::Cat0
    }

    /// Exact intrinsic distance between two marks.
    pub fn distance(&self, p: &str, q: &str) -> Result<f64> {
        Ok(self.distance_report(self.mark_index(p)?, self.mark_index(q)?).value)
    }

    /// Full distance table between all marks, in mark order.
    pub fn distance_table(&self) -> Vec<Vec<f64>> {
        let n = self.marks.len();
        let mut t = vec![vec![0.0; n]; n];
        for i in 0..n {
            for j in i + 1..n {
                let d = self.distance_report(i, j).value;
                t[i][j] = d;
                t[j][i] = d;
            }
        }
        t
    }

    /// Upper bound by shortest paths over a sampled graph.
    pub fn distance_oracle(&self, p: &str, q: &str, mesh_n: usize) -> Result<f64> {
        let (i, j) = (self.mark_index(p)?, self.mark_index(q)?);
        Ok(self.oracle_from(i, mesh_n)[j])
    }

    pub fn oracle_table(&self, mesh_n: usize) -> Vec<Vec<f64>> {
        (0..self.marks.len()).map(|i| self.oracle_from(i, mesh_n)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_segments_make_a_path() {
        let mut b = ComplexBuilder::new("path");
        let s = b.add_piece(Piece::segment([0.0; 3], [1.0, 0.0, 0.0]));
        let t = b.add_piece(Piece::segment([0.0; 3], [1.0, 0.0, 0.0]));
        b.glue_points(s, [1.0, 0.0, 0.0], t, [0.0; 3]);
        b.mark_at("a", s, [0.0; 3]).unwrap();
        b.mark_at("b", t, [1.0, 0.0, 0.0]).unwrap();
        let c = b.build().unwrap();
        assert!((c.distance("a", "b").unwrap() - 2.0).abs() < 1e-12);
    }

    #[test]
    fn mismatched_segment_lengths() {
        let mut b = ComplexBuilder::new("bad");
        let s = b.add_piece(Piece::segment([0.0; 3], [1.0, 0.0, 0.0]));
        let t = b.add_piece(Piece::segment([0.0; 3], [1.1, 0.0, 0.0]));
        b.glue_segments(s, [[0.0; 3], [1.0, 0.0, 0.0]], t, [[0.0; 3], [1.1, 0.0, 0.0]]);
        assert!(matches!(b.build(), Err(Error::LengthMismatch(0))));
    }

    #[test]
    fn disconnected() {
        let mut b = ComplexBuilder::new("two");
        b.add_piece(Piece::segment([0.0; 3], [1.0, 0.0, 0.0]));
        b.add_piece(Piece::segment([0.0; 3], [1.0, 0.0, 0.0]));
        assert!(matches!(b.build(), Err(Error::DisconnectedComplex)));
    }

    #[test]
    fn json_round_trip() {
        let c = build_disc(1.0, 1.0, 1.0, 1.0, 1.0, 1.0).unwrap();
        let d = ComplexSpace::from_json(&c.to_json()).unwrap();
        assert_eq!(c.pieces, d.pieces);
        assert!((d.distance("y", "w").unwrap() - 1.0).abs() < 1e-9);
    }
}
