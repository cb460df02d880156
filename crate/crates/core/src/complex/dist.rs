//! Exact intrinsic distances by enumeration of crossing sequences.
//!
//! A path between two marks is described by the sequence of gluings it
//! crosses. Inside each piece the path is straight, so for a fixed sequence
//! its length is a convex function of the crossing parameters. Sequences are
//! enumerated by increasing length up to [`MAX_CROSSINGS`], each gluing used
//! at most twice, with branch-and-bound on precomputed feature gaps.

use serde::{Deserialize, Serialize};

use super::{ComplexSpace, Feature, Gluing};
use crate::geom::{self, P3};
use crate::solver::{Block, Leg, Problem};

pub const MAX_CROSSINGS: usize = 6;
const MAX_GLUING_USES: usize = 2;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DistanceReport {
    pub value: f64,
    /// Dual lower bound over the solved sequences.
    pub lower_bound: f64,
    /// Number of crossings of the best sequence.
    pub crossings: usize,
    /// Whether the best sequence used the full crossing budget.
    pub saturated: bool,
}

// One end of a leg inside a piece: a fixed point or a feature.
#[derive(Clone, Copy)]
enum End {
    Fixed(P3),
    Feat(Feature, usize),
}

fn block_of(f: &Feature) -> Option<Block> {
    match f {
        Feature::Point(_) => None,
        Feature::Segment(..) => Some(Block::Interval),
        Feature::Triangle(..) => Some(Block::Triangle),
    }
}

// Adds `sign * end` to the leg.
fn push_end(leg: &mut Leg, end: &End, offsets: &[usize], sign: f64) {
    match end {
        End::Fixed(p) => leg.b = geom::add3(leg.b, geom::scale3(*p, sign)),
        End::Feat(f, blk) => {
            let (base, dirs) = f.affine();
            leg.b = geom::add3(leg.b, geom::scale3(base, sign));
            for (i, d) in dirs.into_iter().enumerate() {
                leg.terms.push((offsets[*blk] + i, geom::scale3(d, sign)));
            }
        }
    }
}

fn build_problem(ends: &[(End, End)], blocks: Vec<Block>) -> Problem {
    let mut offsets = Vec::with_capacity(blocks.len());
    let mut k = 0;
    for b in &blocks {
        offsets.push(k);
        k += b.width();
    }
    let legs = ends
        .iter()
        .map(|(a, b)| {
            let mut leg = Leg::default();
            push_end(&mut leg, a, &offsets, 1.0);
            push_end(&mut leg, b, &offsets, -1.0);
            leg
        })
        .collect();
    Problem { blocks, legs }
}

/// Minimum distance between two features of one piece (a valid lower bound).
pub(super) fn feature_gap(a: &Feature, b: &Feature) -> f64 {
    let mut blocks = Vec::new();
    let ea = match block_of(a) {
        Some(bl) => {
            blocks.push(bl);
            End::Feat(*a, blocks.len() - 1)
        }
        None => End::Fixed(a.at(&[])),
    };
    let eb = match block_of(b) {
        Some(bl) => {
            blocks.push(bl);
            End::Feat(*b, blocks.len() - 1)
        }
        None => End::Fixed(b.at(&[])),
    };
    let p = build_problem(&[(ea, eb)], blocks);
    p.solve(None).lower_bound.max(0.0)
}

/// Gap tables: for each piece, gaps between its incident gluing features.
pub(super) fn feature_gaps(gluings: &[Gluing], adjacency: &[Vec<(usize, usize)>]) -> Vec<Vec<Vec<f64>>> {
    adjacency
        .iter()
        .map(|adj| {
            let n = adj.len();
            let mut t = vec![vec![0.0; n]; n];
            for i in 0..n {
                for j in i + 1..n {
                    let fa = gluings[adj[i].0].features[adj[i].1];
                    let fb = gluings[adj[j].0].features[adj[j].1];
                    let g = feature_gap(&fa, &fb);
                    t[i][j] = g;
                    t[j][i] = g;
                }
            }
            t
        })
        .collect()
}

struct Search<'a> {
    c: &'a ComplexSpace,
    src: P3,
    dst: P3,
    dst_piece: usize,
    src_gap: Vec<f64>,
    dst_gap: Vec<f64>,
    uses: Vec<usize>,
    // (gluing, side entered from, index in the source piece's adjacency, index in the target piece's adjacency)
    walk: Vec<(usize, usize, usize, usize)>,
    best: DistanceReport,
    any: bool,
}

impl ComplexSpace {
    pub fn distance_report(&self, i: usize, j: usize) -> DistanceReport {
        let (mp, mq) = (&self.marks[i], &self.marks[j]);
        let src = self.position(mp);
        let dst = self.position(mq);
        let gap_to = |piece: usize, pt: P3| -> Vec<f64> {
            self.adjacency[piece]
                .iter()
                .map(|&(k, s)| feature_gap(&Feature::Point(pt), &self.gluings[k].features[s]))
                .collect()
        };
        let mut s = Search {
            c: self,
            src,
            dst,
            dst_piece: mq.piece,
            src_gap: gap_to(mp.piece, src),
            dst_gap: gap_to(mq.piece, dst),
            uses: vec![0; self.gluings.len()],
            walk: Vec::new(),
            best: DistanceReport { value: f64::INFINITY, lower_bound: f64::INFINITY, crossings: 0, saturated: false },
            any: false,
        };
        if mp.piece == mq.piece {
            let d = geom::dist3(src, dst);
            s.best = DistanceReport { value: d, lower_bound: d, crossings: 0, saturated: false };
            s.any = true;
        }
        for len in 1..=MAX_CROSSINGS {
            s.extend(mp.piece, 0.0, len);
        }
        s.best.lower_bound = s.best.lower_bound.min(s.best.value);
        s.best
    }
}

impl Search<'_> {
    fn extend(&mut self, piece: usize, prefix_lb: f64, target_len: usize) {
        if self.walk.len() == target_len {
            if piece == self.dst_piece {
                self.finish(prefix_lb);
            }
            return;
        }
        let adj = self.c.adjacency[piece].clone();
        for (ai, &(k, side)) in adj.iter().enumerate() {
            if self.uses[k] >= MAX_GLUING_USES {
                continue;
            }
            if let Some(&(pk, _, _, _)) = self.walk.last() {
                if pk == k {
                    continue;
                }
            }
            let leg_lb = match self.walk.last() {
                None => self.src_gap[ai],
                Some(&(_, _, _, entry)) => self.c.gaps[piece][entry][ai],
            };
            let lb = prefix_lb + leg_lb;
            if self.any && lb >= self.best.value {
                continue;
            }
            let g = &self.c.gluings[k];
            let next = g.pieces[1 - side];
            let entry = self.c.adjacency[next]
                .iter()
                .position(|&(kk, ss)| kk == k && ss == 1 - side)
                .expect("adjacency is symmetric");
            self.uses[k] += 1;
            self.walk.push((k, side, ai, entry));
            self.extend(next, lb, target_len);
            self.walk.pop();
            self.uses[k] -= 1;
        }
    }

    fn finish(&mut self, prefix_lb: f64) {
        let Some(&(_, _, _, last_entry)) = self.walk.last() else { return };
        let lb = prefix_lb + self.dst_gap[last_entry];
        if self.any && lb >= self.best.value {
            return;
        }
        let mut blocks = Vec::new();
        let mut ends: Vec<(End, End)> = Vec::new();
        let mut prev = End::Fixed(self.src);
        for &(k, side, _, _) in &self.walk {
            let g = &self.c.gluings[k];
            let (near, far) = match block_of(&g.features[side]) {
                Some(b) => {
                    blocks.push(b);
                    let i = blocks.len() - 1;
                    (End::Feat(g.features[side], i), End::Feat(g.features[1 - side], i))
                }
                None => (End::Fixed(g.features[side].at(&[])), End::Fixed(g.features[1 - side].at(&[]))),
            };
            ends.push((prev, near));
            prev = far;
        }
        ends.push((prev, End::Fixed(self.dst)));
        let sol = build_problem(&ends, blocks).solve(None);
        let n = self.walk.len();
        if !self.any || sol.value < self.best.value {
            self.best.value = sol.value;
            self.best.crossings = n;
            self.best.saturated = n == MAX_CROSSINGS;
        }
        self.best.lower_bound = self.best.lower_bound.min(sol.lower_bound);
        self.any = true;
    }
}
