//! The ⊠-form and the embeddability decision for at most five points.
//!
//! For roles (x, y, z, w) and (s, t) in the unit square the form is
//!
//! ```text
//! (1-t)(1-s)|xy|² + t(1-s)|yz|² + ts|zw|² + (1-t)s|wx|² - t(1-t)|xz|² - s(1-s)|yw|²
//! ```
//!
//! Expanded it reads `a + αs + βt + γst + g s² + e t²` with `a = |xy|²`,
//! `e = |xz|²`, `g = |yw|²`, `α = |wx|² - a - g`, `β = |yz|² - a - e` and
//! `γ = a - |yz|² + |zw|² - |wx|²`, a quadratic in two variables, so its minimum
//! over the square is found in closed form.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::metric::{FiniteMetricSpace, QuadrupleView};

/// A parameter point in the unit square.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoxtimesPoint {
    pub s: f64,
    pub t: f64,
}

/// An ordered role assignment together with a parameter point and the value
/// of the form there.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoxtimesCertificate {
    pub roles: [usize; 4],
    pub s: f64,
    pub t: f64,
    pub value: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum Verdict {
    Holds,
    Violated(BoxtimesCertificate),
    Embeddable,
    NotEmbeddable(BoxtimesCertificate),
}

/// Outcome of a ⊠ check. `minimum` is the global minimum certificate over all
/// role assignments, reported whatever the verdict.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Decision {
    pub verdict: Verdict,
    pub minimum: Option<BoxtimesCertificate>,
}

impl Decision {
    /// True for `Holds` and `Embeddable`.
    pub fn is_positive(&self) -> bool {
        matches!(self.verdict, Verdict::Holds | Verdict::Embeddable)
    }

    pub fn certificate(&self) -> Option<&BoxtimesCertificate> {
        match &self.verdict {
            Verdict::Violated(c) | Verdict::NotEmbeddable(c) => Some(c),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, Copy)]
struct Coeffs {
    a: f64,
    alpha: f64,
    beta: f64,
    gamma: f64,
    g: f64,
    e: f64,
}

impl Coeffs {
    fn of(q: &QuadrupleView) -> Self {
        let a = q.d2_xy;
        Self {
            a,
            alpha: q.d2_wx - a - q.d2_yw,
            beta: q.d2_yz - a - q.d2_xz,
            gamma: a - q.d2_yz + q.d2_zw - q.d2_wx,
            g: q.d2_yw,
            e: q.d2_xz,
        }
    }

    fn eval(&self, s: f64, t: f64) -> f64 {
        self.a + self.alpha * s + self.beta * t + self.gamma * s * t + self.g * s * s + self.e * t * t
    }
}

fn form(q: &QuadrupleView, s: f64, t: f64) -> f64 {
    (1.0 - t) * (1.0 - s) * q.d2_xy + t * (1.0 - s) * q.d2_yz + t * s * q.d2_zw + (1.0 - t) * s * q.d2_wx
        - t * (1.0 - t) * q.d2_xz
        - s * (1.0 - s) * q.d2_yw
}

/// Evaluates the ⊠-form at (s, t).
pub fn boxtimes_form(q: &QuadrupleView, s: f64, t: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&s) || !(0.0..=1.0).contains(&t) {
        return Err(Error::ParamOutOfRange(s, t));
    }
    Ok(form(q, s, t))
}

/// Minimiser of `c0 + c1 u + c2 u²` over [0, 1], or `None` when the
/// parabola's vertex is outside the open interval (the corners cover it).
fn edge_vertex(c1: f64, c2: f64) -> Option<f64> {
    if c2 <= 0.0 {
        return None;
    }
    let u = -c1 / (2.0 * c2);
    (u > 0.0 && u < 1.0).then_some(u)
}

/// Relative margin under which two candidate values count as tied.
const TIE: f64 = 1e-12;

/// Exact global minimum of the form over the unit square.
///
/// Candidates are the interior stationary point, the vertex of each edge
/// parabola, and the four corners, visited in that order; a later candidate
/// replaces the current one only if smaller by more than `TIE` relative to
/// the largest squared distance, so that ties resolve the same way at every
/// scale.
pub fn minimize_boxtimes(q: &QuadrupleView) -> (f64, BoxtimesPoint) {
    let c = Coeffs::of(q);
    let mut cands: Vec<(f64, f64)> = Vec::with_capacity(9);

    let det = 4.0 * c.g * c.e - c.gamma * c.gamma;
    let mag = (4.0 * c.g * c.e).abs() + c.gamma * c.gamma;
    if det.abs() > 1e-14 * mag && mag > 0.0 {
        let s = (-c.alpha * 2.0 * c.e + c.beta * c.gamma) / det;
        let t = (-c.beta * 2.0 * c.g + c.alpha * c.gamma) / det;
        if (0.0..=1.0).contains(&s) && (0.0..=1.0).contains(&t) {
            cands.push((s, t));
        }
    }
    // s = 0 and s = 1: quadratics in t with leading coefficient e.
    if let Some(t) = edge_vertex(c.beta, c.e) {
        cands.push((0.0, t));
    }
    if let Some(t) = edge_vertex(c.beta + c.gamma, c.e) {
        cands.push((1.0, t));
    }
    // t = 0 and t = 1: quadratics in s with leading coefficient g.
    if let Some(s) = edge_vertex(c.alpha, c.g) {
        cands.push((s, 0.0));
    }
    if let Some(s) = edge_vertex(c.alpha + c.gamma, c.g) {
        cands.push((s, 1.0));
    }
    cands.extend([(0.0, 0.0), (0.0, 1.0), (1.0, 1.0), (1.0, 0.0)]);

    let q2 = [q.d2_xy, q.d2_yz, q.d2_zw, q.d2_wx, q.d2_xz, q.d2_yw];
    let margin = TIE * q2.iter().fold(0.0f64, |m, &v| m.max(v));
    let mut best = (f64::INFINITY, BoxtimesPoint { s: 0.0, t: 0.0 });
    for (s, t) in cands {
        let v = c.eval(s, t);
        if v < best.0 - margin {
            best = (v, BoxtimesPoint { s, t });
        }
    }
    let p = best.1;
    (form(q, p.s, p.t), p)
}

/// Global minimum certificate over all role assignments of `x`.
///
/// Tuples may repeat points. Only tuples with `x <= z` and `y <= w` are
/// visited: swapping x with z (t ↦ 1−t) or y with w (s ↦ 1−s) preserves the
/// form's range. Ties (up to `TIE` relative to the squared scale) keep the
/// lexicographically smallest role tuple.
pub fn global_minimum(x: &FiniteMetricSpace) -> Option<BoxtimesCertificate> {
    let n = x.len();
    let margin = TIE * x.scale() * x.scale();
    let mut best: Option<BoxtimesCertificate> = None;
    for i in 0..n {
        for j in 0..n {
            for k in i..n {
                for l in j..n {
                    let q = x.quadruple(i, j, k, l);
                    let (value, p) = minimize_boxtimes(&q);
                    if best.map_or(true, |b| value < b.value - margin) {
                        best = Some(BoxtimesCertificate { roles: [i, j, k, l], s: p.s, t: p.t, value });
                    }
                }
            }
        }
    }
    best
}

/// Decides the ⊠-inequalities for `x` at relative tolerance `tol`.
pub fn space_satisfies(x: &FiniteMetricSpace, tol: f64) -> Decision {
    let minimum = global_minimum(x);
    let scale = x.scale();
    let verdict = match minimum {
        Some(c) if c.value < -tol * scale * scale => Verdict::Violated(c),
        _ => Verdict::Holds,
    };
    Decision { verdict, minimum }
}

/// Decides CAT(0) embeddability for spaces with at most five points.
pub fn decide_cat0_embeddable(x: &FiniteMetricSpace, tol: f64) -> Result<Decision> {
    if x.len() > 5 {
        return Err(Error::TooManyPoints(x.len()));
    }
    let d = space_satisfies(x, tol);
    let verdict = match d.verdict {
        Verdict::Violated(c) => Verdict::NotEmbeddable(c),
        _ => Verdict::Embeddable,
    };
    Ok(Decision { verdict, minimum: d.minimum })
}

/// Outcome of [`midpoint_inequality_check`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum MidpointCheck {
    Applicable(bool),
    NotApplicable,
}

/// When y lies metrically between x and z, checks the comparison inequality
/// `|yw|² ≤ (1−t)|xw|² + t|zw|² − t(1−t)|xz|²` with `t = |xy|/|xz|`.
pub fn midpoint_inequality_check(
    x: &FiniteMetricSpace,
    px: usize,
    py: usize,
    pz: usize,
    pw: usize,
    tol: f64,
) -> MidpointCheck {
    let scale = x.scale();
    let dxz = x.d(px, pz);
    if px == pz || dxz == 0.0 || (dxz - x.d(px, py) - x.d(py, pz)).abs() > tol * scale {
        return MidpointCheck::NotApplicable;
    }
    let t = x.d(px, py) / dxz;
    let rhs = (1.0 - t) * x.d(px, pw).powi(2) + t * x.d(pz, pw).powi(2) - t * (1.0 - t) * dxz * dxz;
    MidpointCheck::Applicable(x.d(py, pw).powi(2) <= rhs + tol * scale * scale)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn square() -> QuadrupleView {
        let r = 2f64.sqrt();
        QuadrupleView::from_distances(1.0, 1.0, 1.0, 1.0, r, r)
    }

    #[test]
    fn unit_square_is_flat() {
        assert!(boxtimes_form(&square(), 0.5, 0.5).unwrap().abs() < 1e-15);
        let (v, p) = minimize_boxtimes(&square());
        assert!(v.abs() < 1e-15);
        assert!((p.s - 0.5).abs() < 1e-12 && (p.t - 0.5).abs() < 1e-12);
    }

    #[test]
    fn corners() {
        let q = QuadrupleView::from_distances(1.0, 2.0, 3.0, 2.5, 1.7, 2.2);
        assert_eq!(boxtimes_form(&q, 0.0, 0.0).unwrap(), q.d2_xy);
        assert_eq!(boxtimes_form(&q, 0.0, 1.0).unwrap(), q.d2_yz);
        assert_eq!(boxtimes_form(&q, 1.0, 1.0).unwrap(), q.d2_zw);
        assert_eq!(boxtimes_form(&q, 1.0, 0.0).unwrap(), q.d2_wx);
        assert!(matches!(boxtimes_form(&q, 1.5, 0.0), Err(Error::ParamOutOfRange(..))));
    }

    #[test]
    fn six_points_refused() {
        let m = vec![vec![1.0; 6]; 6];
        let m: Vec<Vec<f64>> = (0..6).map(|i| (0..6).map(|j| if i == j { 0.0 } else { m[i][j] }).collect()).collect();
        let x = FiniteMetricSpace::from_distances(&m, 1e-9).unwrap();
        assert!(matches!(decide_cat0_embeddable(&x, 1e-9), Err(Error::TooManyPoints(6))));
    }

    #[test]
    fn midpoint_guard() {
        let x = FiniteMetricSpace::from_distances(
            &[
                vec![0.0, 1.0, 3.0, 5f64.sqrt()],
                vec![1.0, 0.0, 2.0, 2.0],
                vec![3.0, 2.0, 0.0, 8f64.sqrt()],
                vec![5f64.sqrt(), 2.0, 8f64.sqrt(), 0.0],
            ],
            1e-9,
        )
        .unwrap();
        // points 0, 1, 3 at (0,0), (1,0), (3,0) and w = (1, 2)
        assert_eq!(midpoint_inequality_check(&x, 0, 1, 2, 3, 1e-9), MidpointCheck::Applicable(true));
        assert_eq!(midpoint_inequality_check(&x, 0, 3, 2, 1, 1e-9), MidpointCheck::NotApplicable);
    }
}
