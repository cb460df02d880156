//! Witness spaces for graph patterns.
//!
//! Given a map `f: V → X` from the vertices of a graph `G` into a metric
//! space, a witness is a space `Y` with points `g(v)` such that
//! `|g(u) g(v)| ≤ |f(u) f(v)|` on edges and `≥` on non-edges, where `Y` is
//! CAT(0). Some constructions only produce a nonnegatively curved surface or
//! a plane with the weaker pattern "≤ on the hub row, ≥ elsewhere"; those are
//! flagged `kirszbraun_required`, since Kirszbraun's extension theorem then
//! supplies the CAT(0) witness.
//!
//! [`construct`] picks a strategy from the shape of `G` and always returns a
//! witness that passes [`verify`] at the configured tolerance.

mod basic;
mod fans;
mod hub;
mod search;

use serde::{Deserialize, Serialize};

use crate::boxtimes::space_satisfies;
use crate::complex::{triangle_complex, ComplexSpace, Curvature, FanTriangle};
use crate::error::{Error, Result};
use crate::geom::{self, P2};
use crate::graph::{five_vertex_catalogue, SimpleGraph};
use crate::metric::FiniteMetricSpace;

pub use search::planar_search;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Strategy {
    Quotient,
    Planar,
    Line,
    Tree,
    PointGlue,
    SegmentSpacerGlue,
    Cycle(usize),
    Fan35,
    Fan46,
    CaseG7,
    CaseG9,
}

/// Where the vertices land.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum Model {
    RealLine(Vec<f64>),
    Plane(Vec<P2>),
    /// Vertex `v` sits at the mark named `marks[v]`.
    Complex { space: ComplexSpace, marks: Vec<String> },
    Composite(Box<Composite>),
}

/// Two models joined at an anchor of each, either directly (`spacer = 0`)
/// or by a segment of length `spacer`. Distances across add up.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Composite {
    pub left: Model,
    pub left_vertices: Vec<usize>,
    pub right: Model,
    pub right_vertices: Vec<usize>,
    /// Positions of the anchors in `left_vertices` and `right_vertices`.
    pub anchors: [usize; 2],
    pub spacer: f64,
}

impl Model {
    pub fn len(&self) -> usize {
        match self {
            Model::RealLine(v) => v.len(),
            Model::Plane(v) => v.len(),
            Model::Complex { marks, .. } => marks.len(),
            Model::Composite(c) => {
                c.left_vertices.iter().chain(&c.right_vertices).max().map_or(0, |m| m + 1)
            }
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Pairwise distances between the images of the vertices.
    pub fn distances(&self) -> Result<Vec<Vec<f64>>> {
        let n = self.len();
        let mut t = vec![vec![0.0; n]; n];
        match self {
            Model::RealLine(x) => {
                for i in 0..n {
                    for j in 0..n {
                        t[i][j] = (x[i] - x[j]).abs();
                    }
                }
            }
            Model::Plane(p) => {
                for i in 0..n {
                    for j in 0..n {
                        t[i][j] = geom::dist2(p[i], p[j]);
                    }
                }
            }
            Model::Complex { space, marks } => {
                let idx: Vec<usize> = marks.iter().map(|m| space.mark_index(m)).collect::<Result<_>>()?;
                for i in 0..n {
                    for j in i + 1..n {
                        if idx[i] != idx[j] {
                            let d = space.distance_report(idx[i], idx[j]).value;
                            t[i][j] = d;
                            t[j][i] = d;
                        }
                    }
                }
            }
            Model::Composite(c) => {
                let dl = c.left.distances()?;
                let dr = c.right.distances()?;
                let [al, ar] = c.anchors;
                let find = |vs: &[usize], v: usize| vs.iter().position(|&u| u == v);
                for u in 0..n {
                    for v in 0..n {
                        let (lu, lv) = (find(&c.left_vertices, u), find(&c.left_vertices, v));
                        let (ru, rv) = (find(&c.right_vertices, u), find(&c.right_vertices, v));
                        t[u][v] = match (lu, lv, ru, rv) {
                            (Some(a), Some(b), _, _) => dl[a][b],
                            (_, _, Some(a), Some(b)) => dr[a][b],
                            (Some(a), None, _, Some(b)) => dl[a][al] + c.spacer + dr[ar][b],
                            (None, Some(b), Some(a), _) => dr[a][ar] + c.spacer + dl[al][b],
                            _ => return Err(Error::BadIndex(u.max(v))),
                        };
                    }
                }
            }
        }
        Ok(t)
    }

    /// The model with vertex `v` placed where vertex `map[v]` was.
    fn reindexed(&self, map: &[usize]) -> Result<Model> {
        Ok(match self {
            Model::RealLine(x) => Model::RealLine(map.iter().map(|&i| x[i]).collect()),
            Model::Plane(p) => Model::Plane(map.iter().map(|&i| p[i]).collect()),
            Model::Complex { space, marks } => Model::Complex {
                space: space.clone(),
                marks: map.iter().map(|&i| marks[i].clone()).collect(),
            },
            Model::Composite(_) => return Err(Error::BadParams("cannot reindex a composite".into())),
        })
    }

    /// Whether the model has the curvature its witness claims: CAT(0) unless
    /// `kirszbraun`, in which case nonnegatively curved surfaces are allowed.
    pub fn curvature_ok(&self, kirszbraun: bool, tol: f64) -> bool {
        match self {
            Model::RealLine(_) | Model::Plane(_) => true,
            Model::Complex { space, .. } => match space.curvature {
                Curvature::Cat0 => space.local_cat0_check(tol),
                Curvature::Nonnegative => {
                    kirszbraun
                        && space
                            .link_report()
                            .vertices
                            .iter()
                            .all(|v| v.angle_sum <= 2.0 * std::f64::consts::PI + tol)
                }
            },
            Model::Composite(c) => c.left.curvature_ok(kirszbraun, tol) && c.right.curvature_ok(kirszbraun, tol),
        }
    }

    fn assignment(&self) -> Vec<String> {
        match self {
            Model::RealLine(x) => x.iter().map(|v| format!("{v}")).collect(),
            Model::Plane(p) => p.iter().map(|q| format!("({}, {})", q[0], q[1])).collect(),
            Model::Complex { marks, .. } => marks.clone(),
            Model::Composite(c) => {
                let (l, r) = (c.left.assignment(), c.right.assignment());
                (0..self.len())
                    .map(|v| {
                        if let Some(i) = c.left_vertices.iter().position(|&u| u == v) {
                            format!("left:{}", l[i])
                        } else if let Some(i) = c.right_vertices.iter().position(|&u| u == v) {
                            format!("right:{}", r[i])
                        } else {
                            String::new()
                        }
                    })
                    .collect()
            }
        }
    }

    fn reassemble(self) -> Result<Model> {
        Ok(match self {
            Model::Complex { space, marks } => Model::Complex { space: space.reassemble()?, marks },
            Model::Composite(c) => {
                let c = *c;
                Model::Composite(Box::new(Composite {
                    left: c.left.reassemble()?,
                    right: c.right.reassemble()?,
                    ..c
                }))
            }
            m => m,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Relation {
    #[serde(rename = "<=")]
    Le,
    #[serde(rename = ">=")]
    Ge,
    #[serde(rename = "=")]
    Eq,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PairCheck {
    pub pair: (usize, usize),
    pub relation: Relation,
    pub witness: f64,
    pub metric: f64,
    /// Nonnegative when the relation holds exactly.
    pub slack: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub pass: bool,
    pub pairs: Vec<PairCheck>,
    pub curvature_ok: bool,
    pub tol: f64,
    pub scale: f64,
}

impl VerificationReport {
    /// Pairs whose slack is below `-tol * scale`.
    pub fn offending(&self) -> Vec<(usize, usize)> {
        self.pairs
            .iter()
            .filter(|p| p.slack < -self.tol * self.scale)
            .map(|p| p.pair)
            .collect()
    }

    pub fn min_slack(&self) -> f64 {
        self.pairs.iter().map(|p| p.slack).fold(f64::INFINITY, f64::min)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Witness {
    pub strategy: Strategy,
    pub model: Model,
    pub kirszbraun_required: bool,
    /// The vertex whose row must be `≤` when `kirszbraun_required`.
    pub hub: Option<usize>,
    /// Every pair is reproduced exactly.
    pub exact: bool,
    pub provenance: String,
    /// Case branches attempted before this one succeeded.
    #[serde(default)]
    pub tried: Vec<String>,
    #[serde(default)]
    pub report: Option<VerificationReport>,
}

impl Witness {
    fn new(strategy: Strategy, model: Model, provenance: impl Into<String>) -> Self {
        Self {
            strategy,
            model,
            kirszbraun_required: false,
            hub: None,
            exact: false,
            provenance: provenance.into(),
            tried: Vec::new(),
            report: None,
        }
    }

    fn exact(mut self) -> Self {
        self.exact = true;
        self
    }

    fn kirszbraun(mut self, hub: usize) -> Self {
        self.kirszbraun_required = true;
        self.hub = Some(hub);
        self
    }

    /// Human-readable image of every vertex.
    pub fn assignment(&self) -> Vec<String> {
        self.model.assignment()
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "strategy": self.strategy,
            "model": self.model,
            "assignment": self
                .assignment()
                .into_iter()
                .enumerate()
                .map(|(v, m)| (v.to_string(), serde_json::Value::String(m)))
                .collect::<serde_json::Map<_, _>>(),
            "kirszbraun_required": self.kirszbraun_required,
            "hub": self.hub,
            "exact": self.exact,
            "provenance": self.provenance,
            "tried": self.tried,
            "report": self.report,
        })
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let w: Witness =
            serde_json::from_str(text).map_err(|e| Error::BadParams(format!("invalid witness JSON: {e}")))?;
        Ok(Witness { model: w.model.clone().reassemble()?, ..w })
    }

    /// Relation required between vertices `u` and `v`.
    pub fn relation(&self, g: &SimpleGraph, u: usize, v: usize) -> Relation {
        if self.exact {
            Relation::Eq
        } else if self.kirszbraun_required {
            if self.hub == Some(u) || self.hub == Some(v) {
                Relation::Le
            } else {
                Relation::Ge
            }
        } else if g.has_edge(u, v) {
            Relation::Le
        } else {
            Relation::Ge
        }
    }
}

/// Search and tolerance settings for [`construct`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WitnessConfig {
    /// Relative tolerance: slacks down to `-tol * scale` are accepted.
    pub tol: f64,
    pub seed: u64,
    pub multistarts: usize,
    pub max_iter: usize,
}

impl Default for WitnessConfig {
    fn default() -> Self {
        Self { tol: crate::DEFAULT_TOL, seed: 0x5eed, multistarts: 64, max_iter: 10_000 }
    }
}

/// Checks a witness against the pulled-back metric `x ∘ f`.
pub fn verify(
    x: &FiniteMetricSpace,
    f: &[usize],
    g: &SimpleGraph,
    w: &Witness,
    tol: f64,
) -> Result<VerificationReport> {
    if f.len() != g.n() {
        return Err(Error::ArityMismatch(g.n(), f.len()));
    }
    verify_pulled(&x.pull_back(f)?, g, w, tol)
}

fn verify_pulled(y: &FiniteMetricSpace, g: &SimpleGraph, w: &Witness, tol: f64) -> Result<VerificationReport> {
    let n = g.n();
    if w.model.len() != n {
        return Err(Error::ArityMismatch(n, w.model.len()));
    }
    let t = w.model.distances()?;
    let scale = y.scale();
    let mut pairs = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            let relation = w.relation(g, u, v);
            let (wd, md) = (t[u][v], y.d(u, v));
            let slack = match relation {
                Relation::Le => md - wd,
                Relation::Ge => wd - md,
                Relation::Eq => -(wd - md).abs(),
            };
            pairs.push(PairCheck { pair: (u, v), relation, witness: wd, metric: md, slack });
        }
    }
    let curvature_ok = w.model.curvature_ok(w.kirszbraun_required, tol.max(1e-12));
    let pass = curvature_ok && pairs.iter().all(|p| p.slack >= -tol * scale);
    Ok(VerificationReport { pass, pairs, curvature_ok, tol, scale })
}

fn quotient_classes(y: &FiniteMetricSpace, tol: f64) -> Vec<usize> {
    let slack = tol * y.scale();
    let mut rep: Vec<usize> = (0..y.len()).collect();
    for v in 0..y.len() {
        if let Some(r) = (0..v).find(|&u| rep[u] == u && y.d(u, v) <= slack) {
            rep[v] = r;
        }
    }
    rep
}

/// The strategy [`construct`] uses for `g` on the pulled-back space `y`.
pub fn strategy_for(y: &FiniteMetricSpace, g: &SimpleGraph, tol: f64) -> Strategy {
    let n = g.n();
    let rep = quotient_classes(y, tol);
    if n > 1 && rep.iter().enumerate().any(|(v, &r)| r != v) {
        return Strategy::Quotient;
    }
    if n <= 3 {
        return Strategy::Planar;
    }
    if g.line_vertex().is_some() {
        return Strategy::Line;
    }
    if g.is_tree() {
        return Strategy::Tree;
    }
    if !g.is_connected() {
        return Strategy::SegmentSpacerGlue;
    }
    if g.cut_vertex().is_some() {
        return Strategy::PointGlue;
    }
    if g.cycle_order().is_some() {
        return Strategy::Cycle(n);
    }
    let cat = five_vertex_catalogue();
    let is = |k: usize| g.is_isomorphic(&cat[k - 1]);
    if is(3) || is(5) {
        Strategy::Fan35
    } else if is(4) || is(6) {
        Strategy::Fan46
    } else if is(7) {
        Strategy::CaseG7
    } else {
        Strategy::CaseG9
    }
}

/// Builds and verifies a witness for the pattern of `g` on `x ∘ f`.
///
/// Fails with [`Error::BoxtimesViolated`] when the pulled-back space violates
/// a ⊠-inequality, with [`Error::SearchFailed`] when the cycle search gives up
/// and with [`Error::CaseDispatchAmbiguous`] when no case branch verifies.
pub fn construct(x: &FiniteMetricSpace, f: &[usize], g: &SimpleGraph, cfg: &WitnessConfig) -> Result<Witness> {
    if f.len() != g.n() {
        return Err(Error::ArityMismatch(g.n(), f.len()));
    }
    let y = x.pull_back(f)?;
    if let Some(c) = space_satisfies(&y, cfg.tol).certificate() {
        return Err(Error::BoxtimesViolated(*c));
    }
    let mut w = build(&y, g, cfg)?;
    let report = verify_pulled(&y, g, &w, cfg.tol)?;
    if !report.pass {
        return Err(Error::CaseDispatchAmbiguous(format!(
            "{:?} witness fails at {:?}",
            w.strategy,
            report.offending()
        )));
    }
    w.report = Some(report);
    Ok(w)
}

// Dispatch on the pulled-back space; no ⊠ check and no final verification.
fn build(y: &FiniteMetricSpace, g: &SimpleGraph, cfg: &WitnessConfig) -> Result<Witness> {
    match strategy_for(y, g, cfg.tol) {
        Strategy::Quotient => basic::quotient(y, cfg),
        Strategy::Planar => Ok(Witness::new(Strategy::Planar, basic::exact_model(y, cfg.tol)?, "exact planar embedding").exact()),
        Strategy::Line => basic::line(y, g),
        Strategy::Tree => basic::tree(y, g),
        Strategy::SegmentSpacerGlue => basic::spacer(y, g, cfg),
        Strategy::PointGlue => basic::point_glue(y, g, cfg),
        Strategy::Cycle(k) => search::cycle(y, g, k, cfg),
        Strategy::Fan35 => fans::fan35(y, g),
        Strategy::Fan46 => fans::fan46(y, g),
        Strategy::CaseG7 => fans::case_g7(y, g, cfg),
        Strategy::CaseG9 => hub::case_g9(y, g, cfg),
    }
}

/// Tries candidates in order and keeps the first that verifies.
fn first_verifying(
    y: &FiniteMetricSpace,
    g: &SimpleGraph,
    cfg: &WitnessConfig,
    candidates: Vec<(String, Result<Witness>)>,
) -> Result<Witness> {
    let mut tried = Vec::new();
    for (label, c) in candidates {
        match c {
            Ok(mut w) => match verify_pulled(y, g, &w, cfg.tol) {
                Ok(r) if r.pass => {
                    w.tried = tried;
                    return Ok(w);
                }
                Ok(r) => tried.push(format!("{label}: min slack {:.3e}, curvature ok {}", r.min_slack(), r.curvature_ok)),
                Err(e) => tried.push(format!("{label}: {e}")),
            },
            Err(e) => tried.push(format!("{label}: {e}")),
        }
    }
    Err(Error::CaseDispatchAmbiguous(tried.join("; ")))
}

/// Isomorphism from the first matching catalogue graph (numbered from 1):
/// catalogue vertex `k` is played by vertex `m[k]` of `g`.
fn iso(g: &SimpleGraph, classes: &[usize]) -> Result<Vec<usize>> {
    let cat = five_vertex_catalogue();
    classes.iter().find_map(|&k| g.isomorphism_from(&cat[k - 1])).ok_or(Error::BadGraph)
}

fn vname(v: usize) -> String {
    format!("v{v}")
}

fn tri(y: &FiniteMetricSpace, [a, b, c]: [usize; 3]) -> FanTriangle {
    let (na, nb, nc) = (vname(a), vname(b), vname(c));
    FanTriangle::new([&na, &nb, &nc], [y.d(a, b), y.d(b, c), y.d(c, a)])
}

/// Triangles on vertices of `y` glued along the sides named by `joins`.
fn triangles_model(
    y: &FiniteMetricSpace,
    name: &str,
    tris: &[[usize; 3]],
    joins: &[(usize, usize)],
) -> Result<Model> {
    let ft: Vec<FanTriangle> = tris.iter().map(|&t| tri(y, t)).collect();
    let space = triangle_complex(name, &ft, joins)?;
    Ok(Model::Complex { space, marks: (0..y.len()).map(vname).collect() })
}
