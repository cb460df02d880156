//! Small fixed-size vector helpers and planar predicates.
//!
//! Predicates take an explicit epsilon so callers can scale it with the input.

pub type P2 = [f64; 2];
pub type P3 = [f64; 3];

#[inline]
pub fn sub3(a: P3, b: P3) -> P3 {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

#[inline]
pub fn add3(a: P3, b: P3) -> P3 {
    [a[0] + b[0], a[1] + b[1], a[2] + b[2]]
}

#[inline]
pub fn scale3(a: P3, k: f64) -> P3 {
    [a[0] * k, a[1] * k, a[2] * k]
}

#[inline]
pub fn dot3(a: P3, b: P3) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

#[inline]
pub fn cross3(a: P3, b: P3) -> P3 {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

#[inline]
pub fn norm3(a: P3) -> f64 {
    dot3(a, a).sqrt()
}

#[inline]
pub fn dist3(a: P3, b: P3) -> f64 {
    norm3(sub3(a, b))
}

pub fn lerp3(a: P3, b: P3, t: f64) -> P3 {
    add3(a, scale3(sub3(b, a), t))
}

#[inline]
pub fn dist2(a: P2, b: P2) -> f64 {
    (a[0] - b[0]).hypot(a[1] - b[1])
}

pub fn lift(p: P2) -> P3 {
    [p[0], p[1], 0.0]
}

/// Twice the signed area of (a, b, c); positive when counter-clockwise.
#[inline]
pub fn orient2(a: P2, b: P2, c: P2) -> f64 {
    (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])
}

/// Sign of `orient2` with a dead band of width `eps`.
pub fn side(a: P2, b: P2, c: P2, eps: f64) -> i8 {
    let o = orient2(a, b, c);
    if o > eps {
        1
    } else if o < -eps {
        -1
    } else {
        0
    }
}

fn on_segment(a: P2, b: P2, p: P2, eps: f64) -> bool {
    if side(a, b, p, eps) != 0 {
        return false;
    }
    let tol = eps.sqrt();
    p[0] >= a[0].min(b[0]) - tol
        && p[0] <= a[0].max(b[0]) + tol
        && p[1] >= a[1].min(b[1]) - tol
        && p[1] <= a[1].max(b[1]) + tol
}

/// Whether the closed segments [a, b] and [c, d] meet.
pub fn segments_intersect(a: P2, b: P2, c: P2, d: P2, eps: f64) -> bool {
    let d1 = side(c, d, a, eps);
    let d2 = side(c, d, b, eps);
    let d3 = side(a, b, c, eps);
    let d4 = side(a, b, d, eps);
    if d1 * d2 < 0 && d3 * d4 < 0 {
        return true;
    }
    (d1 == 0 && on_segment(c, d, a, eps))
        || (d2 == 0 && on_segment(c, d, b, eps))
        || (d3 == 0 && on_segment(a, b, c, eps))
        || (d4 == 0 && on_segment(a, b, d, eps))
}

/// Whether `p` lies in the closed triangle (a, b, c), which may be degenerate.
pub fn in_triangle(p: P2, a: P2, b: P2, c: P2, eps: f64) -> bool {
    let area = orient2(a, b, c);
    if area.abs() <= eps {
        return on_segment(a, b, p, eps) || on_segment(b, c, p, eps) || on_segment(c, a, p, eps);
    }
    let s = area.signum();
    s * orient2(a, b, p) >= -eps && s * orient2(b, c, p) >= -eps && s * orient2(c, a, p) >= -eps
}

pub fn collinear(a: P2, b: P2, c: P2, eps: f64) -> bool {
    side(a, b, c, eps) == 0
}

/// Planar angle at `o` between rays towards `a` and `b`, in [0, π].
pub fn angle2(a: P2, o: P2, b: P2) -> f64 {
    let u = [a[0] - o[0], a[1] - o[1]];
    let v = [b[0] - o[0], b[1] - o[1]];
    let cr = u[0] * v[1] - u[1] * v[0];
    let dt = u[0] * v[0] + u[1] * v[1];
    cr.abs().atan2(dt)
}

/// Angle at `o` in a Euclidean triangle with the given sides, clamped.
pub fn law_of_cosines_angle(adj1: f64, adj2: f64, opposite: f64) -> f64 {
    if adj1 <= 0.0 || adj2 <= 0.0 {
        return 0.0;
    }
    let c = (adj1 * adj1 + adj2 * adj2 - opposite * opposite) / (2.0 * adj1 * adj2);
    c.clamp(-1.0, 1.0).acos()
}

/// Barycentric coordinates of `p` with respect to the triangle (a, b, c) in R³.
///
/// `p` is projected onto the triangle's plane first. Returns `None` for
/// degenerate triangles.
pub fn barycentric3(p: P3, a: P3, b: P3, c: P3) -> Option<[f64; 3]> {
    let v0 = sub3(b, a);
    let v1 = sub3(c, a);
    let v2 = sub3(p, a);
    let d00 = dot3(v0, v0);
    let d01 = dot3(v0, v1);
    let d11 = dot3(v1, v1);
    let d20 = dot3(v2, v0);
    let d21 = dot3(v2, v1);
    let den = d00 * d11 - d01 * d01;
    if den.abs() <= 1e-24 * (d00 * d11).max(f64::MIN_POSITIVE) {
        return None;
    }
    let v = (d11 * d20 - d01 * d21) / den;
    let w = (d00 * d21 - d01 * d20) / den;
    Some([1.0 - v - w, v, w])
}
