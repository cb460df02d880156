//! Four-point comparison geometry.
//!
//! A quadruple (x, y, z, w) is classified relative to the pivot pair {y, w}.
//! Fix the five distances other than |yw|, put x, z on the first axis and y in
//! the upper half of the first coordinate plane, and rotate w about the x–z
//! axis by θ. Then |ỹ − w̃(θ)| increases from `lo` (θ = 0) to `hi` (θ = π).
//! The quadruple embeds in R³ iff |yw| ∈ [lo, hi]; it is under-distance below
//! the interval and over-distance above it.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geom::{self, P2, P3};
use crate::metric::FiniteMetricSpace;

/// Plain distances of a quadruple with roles x, y, z, w.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuadDistances {
    pub xy: f64,
    pub yz: f64,
    pub zw: f64,
    pub wx: f64,
    pub xz: f64,
    pub yw: f64,
}

impl QuadDistances {
    pub fn from_space(x: &FiniteMetricSpace, roles: [usize; 4]) -> Self {
        let [a, b, c, d] = roles;
        Self {
            xy: x.d(a, b),
            yz: x.d(b, c),
            zw: x.d(c, d),
            wx: x.d(d, a),
            xz: x.d(a, c),
            yw: x.d(b, d),
        }
    }

    pub fn scale(&self) -> f64 {
        [self.xy, self.yz, self.zw, self.wx, self.xz, self.yw]
            .into_iter()
            .fold(0.0, f64::max)
    }

    /// Distance between role indices (0 = x, 1 = y, 2 = z, 3 = w).
    pub fn get(&self, a: usize, b: usize) -> f64 {
        let (a, b) = if a <= b { (a, b) } else { (b, a) };
        match (a, b) {
            (0, 1) => self.xy,
            (1, 2) => self.yz,
            (2, 3) => self.zw,
            (0, 3) => self.wx,
            (0, 2) => self.xz,
            (1, 3) => self.yw,
            _ => 0.0,
        }
    }

    /// Distances after permuting roles: new role `i` is old role `perm[i]`.
    pub fn permuted(&self, perm: [usize; 4]) -> Self {
        let g = |i: usize, j: usize| self.get(perm[i], perm[j]);
        Self {
            xy: g(0, 1),
            yz: g(1, 2),
            zw: g(2, 3),
            wx: g(3, 0),
            xz: g(0, 2),
            yw: g(1, 3),
        }
    }

    pub fn scaled(&self, k: f64) -> Self {
        Self {
            xy: self.xy * k,
            yz: self.yz * k,
            zw: self.zw * k,
            wx: self.wx * k,
            xz: self.xz * k,
            yw: self.yw * k,
        }
    }
}

/// Comparison triangle: a = (0,0), b = (dab, 0), c in the closed upper half-plane.
pub fn place_triangle(dab: f64, dbc: f64, dca: f64) -> Result<[P2; 3]> {
    let scale = dab.max(dbc).max(dca);
    let slack = 1e-9 * scale;
    if dab > dbc + dca + slack || dbc > dab + dca + slack || dca > dab + dbc + slack {
        return Err(Error::TriangleViolation(0, 1, 2, (dab - dbc - dca).max(dbc - dab - dca).max(dca - dab - dbc)));
    }
    if dab == 0.0 {
        return Ok([[0.0, 0.0], [0.0, 0.0], [dca, 0.0]]);
    }
    let cx = (dab * dab + dca * dca - dbc * dbc) / (2.0 * dab);
    let cy = (dca * dca - cx * cx).max(0.0).sqrt();
    Ok([[0.0, 0.0], [dab, 0.0], [cx, cy]])
}

/// Which side of the x′z′ line w′ is placed on in a hinge.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum HingeSide {
    SameAsY,
    OppositeY,
}

/// Named planar points.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PlanarConfig {
    pub names: Vec<String>,
    pub points: Vec<P2>,
}

impl PlanarConfig {
    pub fn point(&self, name: &str) -> Option<P2> {
        self.names.iter().position(|n| n == name).map(|i| self.points[i])
    }
}

/// Two triangles xyz and xwz sharing the side xz, laid out in the plane.
pub fn hinge(dxy: f64, dyz: f64, dzx: f64, dxw: f64, dwz: f64, side: HingeSide) -> Result<PlanarConfig> {
    let [x, z, y] = place_triangle(dzx, dyz, dxy)?;
    let [_, _, w] = place_triangle(dzx, dwz, dxw)?;
    let w = match side {
        HingeSide::SameAsY => w,
        HingeSide::OppositeY => [w[0], -w[1]],
    };
    Ok(PlanarConfig {
        names: ["x", "y", "z", "w"].map(String::from).to_vec(),
        points: vec![x, y, z, w],
    })
}

/// Four points in R³ realising a quadruple, in role order x, y, z, w.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpatialConfig {
    pub points: [P3; 4],
    pub theta0: f64,
}

impl SpatialConfig {
    /// Largest deviation from the prescribed distances.
    pub fn max_error(&self, q: &QuadDistances) -> f64 {
        let mut e: f64 = 0.0;
        for i in 0..4 {
            for j in i + 1..4 {
                e = e.max((geom::dist3(self.points[i], self.points[j]) - q.get(i, j)).abs());
            }
        }
        e
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum QuadVerdict {
    Embeddable(SpatialConfig),
    UnderDistance,
    OverDistance,
}

/// Trichotomy result. `pivot` holds the role indices of y and w, or the
/// point indices when produced by [`classify_in_space`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Classification {
    pub verdict: QuadVerdict,
    pub lo: f64,
    pub hi: f64,
    pub pivot: [usize; 2],
}

impl Classification {
    pub fn is_embeddable(&self) -> bool {
        matches!(self.verdict, QuadVerdict::Embeddable(_))
    }
    pub fn is_under(&self) -> bool {
        matches!(self.verdict, QuadVerdict::UnderDistance)
    }
    pub fn is_over(&self) -> bool {
        matches!(self.verdict, QuadVerdict::OverDistance)
    }
}

struct Frame {
    y: P2,
    w: P2,
}

fn frame(q: &QuadDistances) -> Result<Frame> {
    let [_, _, y] = place_triangle(q.xz, q.yz, q.xy)?;
    let [_, _, w] = place_triangle(q.xz, q.zw, q.wx)?;
    Ok(Frame { y, w })
}

/// Interval of realisable |yw| for the frame x, z.
pub fn pivot_bounds(q: &QuadDistances) -> Result<(f64, f64)> {
    let f = frame(q)?;
    let dx = f.y[0] - f.w[0];
    Ok((dx.hypot(f.y[1] - f.w[1]), dx.hypot(f.y[1] + f.w[1])))
}

/// Classifies the quadruple with respect to the pivot pair {y, w}.
pub fn classify(q: &QuadDistances, tol: f64) -> Result<Classification> {
    let scale = q.scale();
    let slack = tol * scale;
    if q.xz <= slack {
        return classify_tripod(q, slack);
    }
    let (lo, hi) = pivot_bounds(q)?;
    let verdict = if q.yw < lo - slack {
        QuadVerdict::UnderDistance
    } else if q.yw > hi + slack {
        QuadVerdict::OverDistance
    } else {
        QuadVerdict::Embeddable(embed_r3_unchecked(q)?)
    };
    Ok(Classification { verdict, lo, hi, pivot: [1, 3] })
}

// x and z coincide, so the quadruple is the triangle x, y, w.
fn classify_tripod(q: &QuadDistances, slack: f64) -> Result<Classification> {
    if (q.xy - q.yz).abs() > 2.0 * slack || (q.wx - q.zw).abs() > 2.0 * slack {
        return Err(Error::PivotDegenerate);
    }
    let lo = (q.xy - q.wx).abs();
    let hi = q.xy + q.wx;
    if q.yw < lo - slack || q.yw > hi + slack {
        return Err(Error::PivotDegenerate);
    }
    let [x, y, w] = place_triangle(q.xy, q.yw, q.wx)?;
    let cfg = SpatialConfig {
        points: [geom::lift(x), geom::lift(y), geom::lift(x), geom::lift(w)],
        theta0: 0.0,
    };
    Ok(Classification { verdict: QuadVerdict::Embeddable(cfg), lo, hi, pivot: [1, 3] })
}

fn embed_r3_unchecked(q: &QuadDistances) -> Result<SpatialConfig> {
    let f = frame(q)?;
    let (y1, y2, w1, w2) = (f.y[0], f.y[1], f.w[0], f.w[1]);
    let denom = 2.0 * y2 * w2;
    let theta0 = if denom <= 0.0 {
        0.0
    } else {
        let c = ((y1 - w1).powi(2) + y2 * y2 + w2 * w2 - q.yw * q.yw) / denom;
        c.clamp(-1.0, 1.0).acos()
    };
    Ok(SpatialConfig {
        points: [
            [0.0, 0.0, 0.0],
            [y1, y2, 0.0],
            [q.xz, 0.0, 0.0],
            [w1, w2 * theta0.cos(), w2 * theta0.sin()],
        ],
        theta0,
    })
}

/// Embeds the quadruple in R³: x at the origin, z on the first axis, y in the
/// upper half of the first coordinate plane, w with nonnegative third coordinate.
pub fn embed_r3(q: &QuadDistances, tol: f64) -> Result<SpatialConfig> {
    match classify(q, tol)?.verdict {
        QuadVerdict::Embeddable(c) => Ok(c),
        _ => Err(Error::NotEmbeddable),
    }
}

/// Classifies points `roles = [x, y, z, w]` of `space` with respect to {y, w}.
pub fn classify_in_space(space: &FiniteMetricSpace, roles: [usize; 4], tol: f64) -> Result<Classification> {
    let mut c = classify(&QuadDistances::from_space(space, roles), tol)?;
    c.pivot = [roles[1], roles[3]];
    Ok(c)
}

/// Classifies four points relative to the pivot pair `pivot`, which must be a
/// two-element subset of `points`. The frame pair is taken in the order it
/// appears in `points`.
pub fn classify_with_pivot(
    space: &FiniteMetricSpace,
    points: [usize; 4],
    pivot: [usize; 2],
    tol: f64,
) -> Result<Classification> {
    let frame: Vec<usize> = points.iter().copied().filter(|p| !pivot.contains(p)).collect();
    if frame.len() != 2 || pivot[0] == pivot[1] || !pivot.iter().all(|p| points.contains(p)) {
        return Err(Error::BadParams("pivot must be two of the four points".into()));
    }
    classify_in_space(space, [frame[0], pivot[0], frame[1], pivot[1]], tol)
}

/// Predicate bundle over a four-point planar configuration.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConfigReport {
    /// ((a, b), (c, d), meets) for every pair of disjoint index pairs.
    pub segments: Vec<([usize; 2], [usize; 2], bool)>,
    /// Whether point i lies in the closed hull of the other three.
    pub in_hull_of_others: Vec<bool>,
    /// (p, a, b, sign) with sign the orientation of p relative to the line a→b.
    pub sides: Vec<(usize, usize, usize, i8)>,
    /// (a, o, b, angle) for every vertex o and unordered pair a < b.
    pub angles: Vec<(usize, usize, usize, f64)>,
    /// Collinear triples.
    pub collinear: Vec<[usize; 3]>,
    pub all_collinear: bool,
}

impl ConfigReport {
    pub fn meets(&self, a: usize, b: usize, c: usize, d: usize) -> bool {
        let norm = |u: usize, v: usize| if u < v { [u, v] } else { [v, u] };
        let (p, q) = (norm(a, b), norm(c, d));
        self.segments
            .iter()
            .find(|(s, t, _)| (*s == p && *t == q) || (*s == q && *t == p))
            .map(|s| s.2)
            .unwrap_or(false)
    }

    pub fn angle(&self, a: usize, o: usize, b: usize) -> f64 {
        let (a, b) = if a < b { (a, b) } else { (b, a) };
        self.angles
            .iter()
            .find(|e| e.0 == a && e.1 == o && e.2 == b)
            .map(|e| e.3)
            .unwrap_or(f64::NAN)
    }
}

/// Geometric predicates on a four-point configuration.
pub fn config_report(c: &PlanarConfig) -> ConfigReport {
    let p = &c.points;
    let n = p.len();
    let scale = (0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .map(|(i, j)| geom::dist2(p[i], p[j]))
        .fold(0.0, f64::max);
    let eps = 1e-12 * scale * scale;

    let mut segments = Vec::new();
    let pairs: Vec<[usize; 2]> = (0..n).flat_map(|i| (i + 1..n).map(move |j| [i, j])).collect();
    for (k, a) in pairs.iter().enumerate() {
        for b in &pairs[k + 1..] {
            if a[0] != b[0] && a[0] != b[1] && a[1] != b[0] && a[1] != b[1] {
                let m = geom::segments_intersect(p[a[0]], p[a[1]], p[b[0]], p[b[1]], eps);
                segments.push((*a, *b, m));
            }
        }
    }
    let in_hull_of_others = (0..n)
        .map(|i| {
            let o: Vec<usize> = (0..n).filter(|&j| j != i).collect();
            o.len() == 3 && geom::in_triangle(p[i], p[o[0]], p[o[1]], p[o[2]], eps)
        })
        .collect();
    let mut sides = Vec::new();
    let mut angles = Vec::new();
    let mut collinear = Vec::new();
    for a in 0..n {
        for b in 0..n {
            if a == b {
                continue;
            }
            for q in 0..n {
                if q != a && q != b {
                    sides.push((q, a, b, geom::side(p[a], p[b], p[q], eps)));
                }
            }
        }
    }
    for o in 0..n {
        for a in 0..n {
            for b in a + 1..n {
                if a != o && b != o {
                    angles.push((a, o, b, geom::angle2(p[a], p[o], p[b])));
                }
            }
        }
    }
    for a in 0..n {
        for b in a + 1..n {
            for d in b + 1..n {
                if geom::collinear(p[a], p[b], p[d], eps) {
                    collinear.push([a, b, d]);
                }
            }
        }
    }
    let all_collinear = collinear.len() == n * (n - 1) * (n - 2) / 6;
    ConfigReport { segments, in_hull_of_others, sides, angles, collinear, all_collinear }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn place_examples() {
        let [a, b, c] = place_triangle(1.0, 1.0, 1.0).unwrap();
        assert_eq!(a, [0.0, 0.0]);
        assert_eq!(b, [1.0, 0.0]);
        assert!((c[0] - 0.5).abs() < 1e-15 && (c[1] - 3f64.sqrt() / 2.0).abs() < 1e-15);
        let [_, _, c] = place_triangle(1.0, 1.0, 2.0).unwrap();
        assert_eq!(c, [2.0, 0.0]);
        let [_, _, c] = place_triangle(3.0, 4.0, 5.0).unwrap();
        assert!((c[0] - 3.0).abs() < 1e-12 && (c[1] - 4.0).abs() < 1e-12);
        assert!(place_triangle(1.0, 1.0, 3.0).is_err());
    }

    #[test]
    fn hinge_examples() {
        let r = 2f64.sqrt();
        let h = hinge(1.0, 1.0, r, 1.0, 1.0, HingeSide::SameAsY).unwrap();
        assert!(geom::dist2(h.points[1], h.points[3]) < 1e-12);
        let h = hinge(1.0, 1.0, r, 1.0, 1.0, HingeSide::OppositeY).unwrap();
        assert!((geom::dist2(h.points[1], h.points[3]) - r).abs() < 1e-12);
        let h = hinge(1.0, 2.0, 2.5, 1.05, 2.05, HingeSide::SameAsY).unwrap();
        let (y, w) = (h.points[1], h.points[3]);
        assert!((y[0] - 0.65).abs() < 1e-12 && (w[0] - 0.63).abs() < 1e-12 && (w[1] - 0.84).abs() < 1e-12);
        let expect = (0.02f64.powi(2) + (0.84 - 0.5775f64.sqrt()).powi(2)).sqrt();
        assert!((geom::dist2(y, w) - expect).abs() < 1e-12);
        assert!((expect - 0.0826).abs() < 1e-4);
    }

    #[test]
    fn square_diagonal_pivot_is_planar() {
        let r = 2f64.sqrt();
        let q = QuadDistances { xy: 1.0, yz: 1.0, zw: 1.0, wx: 1.0, xz: r, yw: r };
        let c = classify(&q, 1e-9).unwrap();
        match c.verdict {
            QuadVerdict::Embeddable(s) => {
                assert!(s.theta0.abs() < 1e-6 || (s.theta0 - std::f64::consts::PI).abs() < 1e-6);
                assert!(s.max_error(&q) < 1e-9);
            }
            v => panic!("{v:?}"),
        }
    }

    #[test]
    fn under_example() {
        let q = QuadDistances { xy: 1.0, yz: 2.0, xz: 2.5, wx: 1.05, zw: 2.05, yw: 0.06 };
        let c = classify(&q, 1e-9).unwrap();
        assert!(c.is_under(), "{c:?}");
        assert!((c.lo - 0.0826).abs() < 1e-4);
    }

    #[test]
    fn regular_tetrahedron() {
        let q = QuadDistances { xy: 1.0, yz: 1.0, zw: 1.0, wx: 1.0, xz: 1.0, yw: 1.0 };
        let s = embed_r3(&q, 1e-9).unwrap();
        assert!(s.max_error(&q) < 1e-12);
        assert!(s.points[3][2] > 0.5);
    }

    #[test]
    fn collinear_quadruple() {
        // points 0, 1, 2, 3 on a line with roles x=0, y=1, z=2, w=3
        let q = QuadDistances { xy: 1.0, yz: 1.0, zw: 1.0, wx: 3.0, xz: 2.0, yw: 2.0 };
        let s = embed_r3(&q, 1e-9).unwrap();
        assert!(s.max_error(&q) < 1e-9);
        for p in s.points {
            assert!(p[1].abs() < 1e-6 && p[2].abs() < 1e-6);
        }
    }

    #[test]
    fn tripod_fallback() {
        let q = QuadDistances { xy: 1.0, yz: 1.0, zw: 2.0, wx: 2.0, xz: 0.0, yw: 2.5 };
        assert!(classify(&q, 1e-9).unwrap().is_embeddable());
        let bad = QuadDistances { yz: 1.5, ..q };
        assert!(matches!(classify(&bad, 1e-9), Err(Error::PivotDegenerate)));
    }

    #[test]
    fn square_report() {
        let c = PlanarConfig {
            names: ["a", "b", "c", "d"].map(String::from).to_vec(),
            points: vec![[0.0, 0.0], [1.0, 0.0], [1.0, 1.0], [0.0, 1.0]],
        };
        let r = config_report(&c);
        assert!(r.meets(0, 2, 1, 3));
        assert!(!r.meets(0, 1, 2, 3));
        assert!(r.in_hull_of_others.iter().all(|&b| !b));
        assert!(r.collinear.is_empty());
        let c = PlanarConfig { points: vec![[0.0, 0.0], [1.0, 0.0], [2.0, 0.0], [0.5, 1.0]], ..c };
        assert_eq!(config_report(&c).collinear, vec![[0, 1, 2]]);
    }
}
