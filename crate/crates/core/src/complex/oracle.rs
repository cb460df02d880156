//! Sampled shortest-path upper bound for intrinsic distances.
//!
//! Nodes are the marks plus samples of every gluing feature; samples of
//! glued features are shared by both sides. Inside a piece every pair of
//! nodes is joined by its Euclidean distance. Segment samples sit at
//! multiples of `1/mesh_n` and triangle samples on a grid of step
//! `1/min(mesh_n, TRIANGLE_CAP)`, so refining a power-of-two mesh only adds nodes.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use super::{ComplexSpace, Feature};
use crate::geom::{self, P3};

pub const TRIANGLE_CAP: usize = 64;

struct Node {
    // (piece, coordinates in that piece) for every piece the node lies in
    places: Vec<(usize, P3)>,
}

#[derive(PartialEq)]
struct Item(f64, usize);

impl Eq for Item {}

impl PartialOrd for Item {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Item {
    fn cmp(&self, other: &Self) -> Ordering {
        other.0.total_cmp(&self.0).then_with(|| other.1.cmp(&self.1))
    }
}

fn params(f: &Feature, mesh_n: usize) -> Vec<Vec<f64>> {
    match f {
        Feature::Point(_) => vec![vec![]],
        Feature::Segment(..) => (0..=mesh_n).map(|k| vec![k as f64 / mesh_n as f64]).collect(),
        Feature::Triangle(..) => {
            let m = mesh_n.min(TRIANGLE_CAP);
            let mut out = Vec::new();
            for i in 0..=m {
                for j in 0..=m - i {
                    out.push(vec![i as f64 / m as f64, j as f64 / m as f64]);
                }
            }
            out
        }
    }
}

impl ComplexSpace {
    /// Sampled distances from mark `src` to every mark.
    pub(super) fn oracle_from(&self, src: usize, mesh_n: usize) -> Vec<f64> {
        let mesh_n = mesh_n.max(2);
        let mut nodes: Vec<Node> = Vec::new();
        for m in &self.marks {
            nodes.push(Node { places: vec![(m.piece, self.position(m))] });
        }
        for g in &self.gluings {
            for u in params(&g.features[0], mesh_n) {
                nodes.push(Node {
                    places: vec![(g.pieces[0], g.features[0].at(&u)), (g.pieces[1], g.features[1].at(&u))],
                });
            }
        }
        let mut by_piece: Vec<Vec<(usize, P3)>> = vec![Vec::new(); self.pieces.len()];
        for (i, n) in nodes.iter().enumerate() {
            for &(p, x) in &n.places {
                by_piece[p].push((i, x));
            }
        }
        let mut dist = vec![f64::INFINITY; nodes.len()];
        let mut done = vec![false; nodes.len()];
        let mut heap = BinaryHeap::new();
        dist[src] = 0.0;
        heap.push(Item(0.0, src));
        while let Some(Item(d, i)) = heap.pop() {
            if done[i] {
                continue;
            }
            done[i] = true;
            for &(p, x) in &nodes[i].places {
                for &(j, y) in &by_piece[p] {
                    if done[j] {
                        continue;
                    }
                    let nd = d + geom::dist3(x, y);
                    if nd < dist[j] {
                        dist[j] = nd;
                        heap.push(Item(nd, j));
                    }
                }
            }
        }
        dist.truncate(self.marks.len());
        dist
    }
}
