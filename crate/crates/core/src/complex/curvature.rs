//! Vertex links and the local CAT(0) check.
//!
//! At every vertex the link is modelled as a metric graph: nodes are the
//! directions of segments through the vertex (triangle sides and glued
//! segments, identified across gluings) and every piece of dimension ≥ 2
//! contributes an edge between each pair of its directions, weighted by the
//! angle between them. A closed loop in the link must leave each piece it
//! enters, so only cycles whose consecutive edges come from different pieces
//! count. The check passes when every such cycle has length ≥ 2π − tol. Arcs
//! lying in a glued facet are shared by both polytopes and counted once.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use super::{ComplexSpace, Feature, GluingKind};
use crate::error::{Error, Result};
use crate::geom::{self, P3};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VertexLink {
    /// A piece containing the vertex and its coordinates there.
    pub piece: usize,
    pub position: P3,
    /// Sum of all incident corner angles.
    pub angle_sum: f64,
    /// Length of the shortest admissible link cycle, if any.
    pub girth: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LinkReport {
    pub vertices: Vec<VertexLink>,
    pub min_girth: Option<f64>,
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn find(&mut self, i: usize) -> usize {
        let mut r = i;
        while self.0[r] != r {
            r = self.0[r];
        }
        let mut k = i;
        while self.0[k] != r {
            let n = self.0[k];
            self.0[k] = r;
            k = n;
        }
        r
    }
    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.0[ra.max(rb)] = ra.min(rb);
        }
    }
    fn add(&mut self) -> usize {
        self.0.push(self.0.len());
        self.0.len() - 1
    }
}

struct Links {
    // vertex ids: (piece, coordinates)
    verts: Vec<(usize, P3)>,
    vuf: UnionFind,
    // direction ids: (piece, vertex id, other vertex id)
    dirs: Vec<(usize, usize, usize)>,
    duf: UnionFind,
    dir_index: BTreeMap<(usize, usize, usize), usize>,
    tol: f64,
}

impl Links {
    fn vertex(&mut self, piece: usize, p: P3) -> usize {
        if let Some(i) = self
            .verts
            .iter()
            .position(|&(q, x)| q == piece && geom::dist3(x, p) <= self.tol)
        {
            return i;
        }
        self.verts.push((piece, p));
        self.vuf.add()
    }

    fn direction(&mut self, piece: usize, a: P3, b: P3) -> Option<usize> {
        let va = self.vertex(piece, a);
        let vb = self.vertex(piece, b);
        if va == vb {
            return None;
        }
        let key = (piece, va, vb);
        if let Some(&d) = self.dir_index.get(&key) {
            return Some(d);
        }
        self.dirs.push(key);
        let d = self.duf.add();
        self.dir_index.insert(key, d);
        Some(d)
    }

    fn segment(&mut self, piece: usize, a: P3, b: P3) -> (Option<usize>, Option<usize>) {
        (self.direction(piece, a, b), self.direction(piece, b, a))
    }
}

#[derive(Clone, Copy)]
struct LinkEdge {
    a: usize,
    b: usize,
    w: f64,
    // piece index, or pieces.len() + facet gluing index for shared facet arcs
    owner: usize,
}

impl ComplexSpace {
    fn link_structure(&self) -> (Links, Vec<LinkEdge>) {
        let scale = self.scale().max(f64::MIN_POSITIVE);
        let mut l = Links {
            verts: vec![],
            vuf: UnionFind(vec![]),
            dirs: vec![],
            duf: UnionFind(vec![]),
            dir_index: BTreeMap::new(),
            tol: 1e-9 * scale,
        };
        for (pi, p) in self.pieces.iter().enumerate() {
            if p.is_triangle() {
                let g = &p.generators;
                for i in 0..3 {
                    l.segment(pi, g[i], g[(i + 1) % 3]);
                }
            }
        }
        let mut facet_arcs: Vec<(usize, usize, [P3; 3])> = Vec::new();
        for (k, g) in self.gluings.iter().enumerate() {
            let [pa, pb] = g.pieces;
            match (g.features[0], g.features[1]) {
                (Feature::Point(a), Feature::Point(b)) => {
                    let (va, vb) = (l.vertex(pa, a), l.vertex(pb, b));
                    l.vuf.union(va, vb);
                }
                (Feature::Segment(a0, a1), Feature::Segment(b0, b1)) => {
                    let (da, ra) = l.segment(pa, a0, a1);
                    let (db, rb) = l.segment(pb, b0, b1);
                    let (v0, w0) = (l.vertex(pa, a0), l.vertex(pb, b0));
                    l.vuf.union(v0, w0);
                    let (v1, w1) = (l.vertex(pa, a1), l.vertex(pb, b1));
                    l.vuf.union(v1, w1);
                    if let (Some(x), Some(y)) = (da, db) {
                        l.duf.union(x, y);
                    }
                    if let (Some(x), Some(y)) = (ra, rb) {
                        l.duf.union(x, y);
                    }
                }
                (Feature::Triangle(a0, a1, a2), Feature::Triangle(b0, b1, b2)) => {
                    let (a, b) = ([a0, a1, a2], [b0, b1, b2]);
                    for i in 0..3 {
                        let j = (i + 1) % 3;
                        let (da, ra) = l.segment(pa, a[i], a[j]);
                        let (db, rb) = l.segment(pb, b[i], b[j]);
                        let (v, w) = (l.vertex(pa, a[i]), l.vertex(pb, b[i]));
                        l.vuf.union(v, w);
                        if let (Some(x), Some(y)) = (da, db) {
                            l.duf.union(x, y);
                        }
                        if let (Some(x), Some(y)) = (ra, rb) {
                            l.duf.union(x, y);
                        }
                    }
                    facet_arcs.push((k, pa, a));
                    facet_arcs.push((k, pb, b));
                }
                _ => {}
            }
            debug_assert!(matches!(g.kind, GluingKind::Point | GluingKind::Segment | GluingKind::Facet));
        }
        // arcs inside glued facets, keyed by the pair of direction classes
        let mut shared: BTreeSet<(usize, usize)> = BTreeSet::new();
        let mut edges = Vec::new();
        for &(k, piece, t) in &facet_arcs {
            for i in 0..3 {
                let (o1, o2) = (t[(i + 1) % 3], t[(i + 2) % 3]);
                let (Some(d1), Some(d2)) = (l.direction(piece, t[i], o1), l.direction(piece, t[i], o2)) else {
                    continue;
                };
                let (c1, c2) = (l.duf.find(d1), l.duf.find(d2));
                let key = (c1.min(c2), c1.max(c2));
                if shared.insert(key) {
                    let w = geom::law_of_cosines_angle(
                        geom::dist3(t[i], o1),
                        geom::dist3(t[i], o2),
                        geom::dist3(o1, o2),
                    );
                    edges.push(LinkEdge { a: key.0, b: key.1, w, owner: self.pieces.len() + k });
                }
            }
        }
        // per piece, angle edges between its directions at a common vertex
        let mut at: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
        for (d, &(piece, v, _)) in l.dirs.iter().enumerate() {
            at.entry((piece, v)).or_default().push(d);
        }
        for (&(piece, v), ds) in &at {
            if self.pieces[piece].dim < 2 {
                continue;
            }
            let o = l.verts[v].1;
            for i in 0..ds.len() {
                for j in i + 1..ds.len() {
                    let (c1, c2) = (l.duf.find(ds[i]), l.duf.find(ds[j]));
                    if c1 == c2 {
                        continue;
                    }
                    let key = (c1.min(c2), c1.max(c2));
                    if shared.contains(&key) {
                        continue;
                    }
                    let (p1, p2) = (l.verts[l.dirs[ds[i]].2].1, l.verts[l.dirs[ds[j]].2].1);
                    let u = geom::sub3(p1, o);
                    let w = geom::sub3(p2, o);
                    let ang = geom::norm3(geom::cross3(u, w)).atan2(geom::dot3(u, w));
                    edges.push(LinkEdge { a: key.0, b: key.1, w: ang, owner: piece });
                }
            }
        }
        (l, edges)
    }

    /// Link data for every vertex class.
    pub fn link_report(&self) -> LinkReport {
        let (mut l, edges) = self.link_structure();
        // group link edges by the vertex class of their directions
        let mut by_vertex: BTreeMap<usize, Vec<LinkEdge>> = BTreeMap::new();
        for e in &edges {
            let v = l.dirs[e.a].1;
            let cls = l.vuf.find(v);
            by_vertex.entry(cls).or_default().push(*e);
        }
        let mut vertices = Vec::new();
        let mut min_girth: Option<f64> = None;
        for (cls, es) in by_vertex {
            let angle_sum = es.iter().map(|e| e.w).sum();
            let girth = girth(&es);
            if let Some(g) = girth {
                min_girth = Some(min_girth.map_or(g, |m: f64| m.min(g)));
            }
            let (piece, position) = l.verts[cls];
            vertices.push(VertexLink { piece, position, angle_sum, girth });
        }
        LinkReport { vertices, min_girth }
    }

    /// Passes iff every admissible link cycle has length ≥ 2π − tol.
    pub fn local_cat0_check(&self, tol: f64) -> bool {
        self.link_report()
            .min_girth
            .map_or(true, |g| g >= 2.0 * std::f64::consts::PI - tol)
    }

    /// Sum of the corner angles at the vertex where mark `name` sits.
    pub fn angle_sum(&self, name: &str) -> Result<f64> {
        let m = self.mark(name)?;
        let p = self.position(m);
        let scale = self.scale().max(f64::MIN_POSITIVE);
        let rep = self.link_report();
        let (mut l, _) = self.link_structure();
        let Some(v) = l
            .verts
            .iter()
            .position(|&(q, x)| q == m.piece && geom::dist3(x, p) <= 1e-9 * scale)
        else {
            return Err(Error::NotInteriorVertex);
        };
        let cls = l.vuf.find(v);
        let (piece, position) = l.verts[cls];
        rep.vertices
            .iter()
            .find(|vl| vl.piece == piece && vl.position == position && vl.girth.is_some())
            .map(|vl| vl.angle_sum)
            .ok_or(Error::NotInteriorVertex)
    }
}

// Shortest cycle whose consecutive edges have different owners.
fn girth(edges: &[LinkEdge]) -> Option<f64> {
    let mut best: Option<f64> = None;
    for (ei, e) in edges.iter().enumerate() {
        // Dijkstra over (node, owner of the last edge) from e.b back to e.a.
        let mut dist: BTreeMap<(usize, usize), f64> = BTreeMap::new();
        let mut frontier: Vec<(f64, usize, usize)> = vec![(0.0, e.b, e.owner)];
        dist.insert((e.b, e.owner), 0.0);
        let mut found: Option<f64> = None;
        while !frontier.is_empty() {
            frontier.sort_by(|a, b| b.0.total_cmp(&a.0));
            let (d, node, owner) = frontier.pop().unwrap();
            if dist.get(&(node, owner)).is_some_and(|&x| x < d) {
                continue;
            }
            if found.is_some_and(|f| d >= f) {
                break;
            }
            if node == e.a && owner != e.owner {
                found = Some(found.map_or(d, |f: f64| f.min(d)));
                continue;
            }
            for (fi, f) in edges.iter().enumerate() {
                if fi == ei || f.owner == owner {
                    continue;
                }
                let next = if f.a == node {
                    f.b
                } else if f.b == node {
                    f.a
                } else {
                    continue;
                };
                let nd = d + f.w;
                if dist.get(&(next, f.owner)).map_or(true, |&x| nd < x) {
                    dist.insert((next, f.owner), nd);
                    frontier.push((nd, next, f.owner));
                }
            }
        }
        if let Some(f) = found {
            let c = f + e.w;
            best = Some(best.map_or(c, |b: f64| b.min(c)));
        }
    }
    best
}
