//! Simple graphs on at most five vertices and their isomorphism catalogue.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Simple graph on `n ≤ 5` vertices stored as adjacency bitmasks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SimpleGraph {
    n: usize,
    adj: [u8; 5],
}

/// All permutations of `0..n`, in lexicographic order.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn rec(cur: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if cur.len() == used.len() {
            out.push(cur.clone());
            return;
        }
        for i in 0..used.len() {
            if !used[i] {
                used[i] = true;
                cur.push(i);
                rec(cur, used, out);
                cur.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

impl SimpleGraph {
    pub fn empty(n: usize) -> Result<Self> {
        if n > 5 {
            return Err(Error::BadGraph);
        }
        Ok(Self { n, adj: [0; 5] })
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Self::empty(n)?;
        for &(a, b) in edges {
            if a >= n || b >= n || a == b {
                return Err(Error::BadGraph);
            }
            g.adj[a] |= 1 << b;
            g.adj[b] |= 1 << a;
        }
        Ok(g)
    }

    pub fn complete(n: usize) -> Result<Self> {
        let e: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
        Self::from_edges(n, &e)
    }

    pub fn cycle(n: usize) -> Result<Self> {
        let e: Vec<(usize, usize)> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Self::from_edges(n, &e)
    }

    pub fn path(n: usize) -> Result<Self> {
        let e: Vec<(usize, usize)> = (1..n).map(|i| (i - 1, i)).collect();
        Self::from_edges(n, &e)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        a != b && self.adj[a] >> b & 1 == 1
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones() as usize
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut e = Vec::new();
        for i in 0..self.n {
            for j in i + 1..self.n {
                if self.has_edge(i, j) {
                    e.push((i, j));
                }
            }
        }
        e
    }

    pub fn edge_count(&self) -> usize {
        self.edges().len()
    }

    /// Edge set as a bitmask over the pairs (i < j) in lexicographic order.
    pub fn code(&self) -> u16 {
        let mut c = 0u16;
        let mut k = 0;
        for i in 0..self.n {
            for j in i + 1..self.n {
                if self.has_edge(i, j) {
                    c |= 1 << k;
                }
                k += 1;
            }
        }
        c
    }

    /// All labeled graphs on `n` vertices.
    pub fn all_labeled(n: usize) -> Vec<Self> {
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
        (0u32..1 << pairs.len())
            .map(|mask| {
                let e: Vec<(usize, usize)> =
                    pairs.iter().enumerate().filter(|(k, _)| mask >> k & 1 == 1).map(|(_, p)| *p).collect();
                Self::from_edges(n, &e).expect("valid")
            })
            .collect()
    }

    /// Graph with vertex `perm[v]` in place of `v`.
    pub fn relabel(&self, perm: &[usize]) -> Self {
        let e: Vec<(usize, usize)> = self.edges().into_iter().map(|(a, b)| (perm[a], perm[b])).collect();
        Self::from_edges(self.n, &e).expect("permutation keeps edges valid")
    }

    /// Canonical representative: the relabeling with the smallest code.
    pub fn canonical(&self) -> Self {
        permutations(self.n)
            .iter()
            .map(|p| self.relabel(p))
            .min_by_key(|g| g.code())
            .expect("at least the identity")
    }

    /// One graph per isomorphism class on `n` vertices.
    pub fn isomorphism_classes(n: usize) -> Vec<Self> {
        let mut seen = std::collections::BTreeSet::new();
        let mut out = Vec::new();
        for g in Self::all_labeled(n) {
            let c = g.canonical();
            if seen.insert(c.code()) {
                out.push(c);
            }
        }
        out
    }

    /// A map `m` with `template.has_edge(a, b) == self.has_edge(m[a], m[b])`.
    pub fn isomorphism_from(&self, template: &SimpleGraph) -> Option<Vec<usize>> {
        if self.n != template.n || self.edge_count() != template.edge_count() {
            return None;
        }
        permutations(self.n).into_iter().find(|m| {
            (0..self.n).all(|a| (a + 1..self.n).all(|b| template.has_edge(a, b) == self.has_edge(m[a], m[b])))
        })
    }

    pub fn is_isomorphic(&self, other: &SimpleGraph) -> bool {
        self.isomorphism_from(other).is_some()
    }

    /// Subgraph induced on `keep`, relabeled `0..keep.len()` in that order.
    pub fn induced(&self, keep: &[usize]) -> Self {
        let mut g = Self { n: keep.len(), adj: [0; 5] };
        for (i, &a) in keep.iter().enumerate() {
            for (j, &b) in keep.iter().enumerate() {
                if self.has_edge(a, b) {
                    g.adj[i] |= 1 << j;
                }
            }
        }
        g
    }

    /// Connected components of the subgraph induced on `keep`.
    pub fn components_within(&self, keep: &[usize]) -> Vec<Vec<usize>> {
        let mut comp: Vec<Vec<usize>> = Vec::new();
        let mut seen = [false; 5];
        for &s in keep {
            if seen[s] {
                continue;
            }
            let mut c = vec![s];
            seen[s] = true;
            let mut i = 0;
            while i < c.len() {
                let v = c[i];
                for &u in keep {
                    if !seen[u] && self.has_edge(v, u) {
                        seen[u] = true;
                        c.push(u);
                    }
                }
                i += 1;
            }
            c.sort_unstable();
            comp.push(c);
        }
        comp
    }

    pub fn components(&self) -> Vec<Vec<usize>> {
        let all: Vec<usize> = (0..self.n).collect();
        self.components_within(&all)
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    pub fn is_tree(&self) -> bool {
        self.n >= 1 && self.is_connected() && self.edge_count() == self.n - 1
    }

    /// A vertex whose removal disconnects the graph.
    pub fn cut_vertex(&self) -> Option<usize> {
        if !self.is_connected() {
            return None;
        }
        (0..self.n).find(|&v| {
            let rest: Vec<usize> = (0..self.n).filter(|&u| u != v).collect();
            self.components_within(&rest).len() > 1
        })
    }

    /// A vertex `v0` such that every pair avoiding it is an edge.
    pub fn line_vertex(&self) -> Option<usize> {
        (0..self.n).find(|&v0| {
            (0..self.n).all(|a| (a + 1..self.n).all(|b| a == v0 || b == v0 || self.has_edge(a, b)))
        })
    }

    /// Cyclic vertex order if the graph is a cycle on all its vertices.
    pub fn cycle_order(&self) -> Option<Vec<usize>> {
        if self.n < 3 || !self.is_connected() || (0..self.n).any(|v| self.degree(v) != 2) {
            return None;
        }
        let mut order = vec![0];
        let mut prev = usize::MAX;
        let mut cur = 0;
        loop {
            let next = (0..self.n).find(|&u| self.has_edge(cur, u) && u != prev)?;
            if next == 0 {
                break;
            }
            order.push(next);
            prev = cur;
            cur = next;
        }
        (order.len() == self.n).then_some(order)
    }

    /// Parses `"0-1,1-2"` style edge lists (vertex count `n`) or a catalogue name.
    pub fn parse(spec: &str, n: usize) -> Result<Self> {
        if let Some(g) = named(spec) {
            return Ok(g);
        }
        let mut e = Vec::new();
        for part in spec.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let (a, b) = part.split_once('-').ok_or(Error::BadGraph)?;
            let a: usize = a.trim().parse().map_err(|_| Error::BadGraph)?;
            let b: usize = b.trim().parse().map_err(|_| Error::BadGraph)?;
            e.push((a, b));
        }
        Self::from_edges(n, &e)
    }
}

fn g(n: usize, e: &[(usize, usize)]) -> SimpleGraph {
    SimpleGraph::from_edges(n, e).expect("catalogue graphs are valid")
}

// Edge lists in one-based vertex labels.
fn g1(n: usize, e: &[(usize, usize)]) -> SimpleGraph {
    let e: Vec<(usize, usize)> = e.iter().map(|&(a, b)| (a - 1, b - 1)).collect();
    g(n, &e)
}

/// The eleven graphs on four vertices, by increasing edge count.
pub fn four_vertex_catalogue() -> Vec<SimpleGraph> {
    vec![
        g(4, &[]),
        g(4, &[(0, 1)]),
        g(4, &[(0, 1), (1, 2)]),
        g(4, &[(0, 1), (2, 3)]),
        g(4, &[(0, 1), (0, 2), (0, 3)]),
        g(4, &[(0, 1), (1, 2), (2, 3)]),
        g(4, &[(0, 1), (1, 2), (0, 2)]),
        g(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]),
        g(4, &[(0, 1), (1, 2), (0, 2), (2, 3)]),
        g(4, &[(0, 1), (1, 2), (2, 3), (3, 0), (0, 2)]),
        SimpleGraph::complete(4).expect("valid"),
    ]
}

/// The eleven graphs on five vertices with minimum degree at least two.
///
/// Labelings follow the constructions in [`crate::witness`]: the fan graphs
/// use the triangles (1,2,5), (2,3,5), (3,4,5) resp. (1,2,5), (2,3,5),
/// (2,4,5) (one-based), and in the wheel the hub is vertex 1.
pub fn five_vertex_catalogue() -> Vec<SimpleGraph> {
    vec![
        SimpleGraph::cycle(5).expect("valid"),
        g1(5, &[(1, 2), (2, 3), (1, 3), (3, 4), (4, 5), (3, 5)]),
        g1(5, &[(1, 2), (2, 3), (3, 4), (4, 5), (5, 1), (2, 5)]),
        g1(5, &[(1, 2), (2, 3), (4, 5), (5, 1), (2, 4), (3, 5)]),
        g1(5, &[(1, 2), (2, 3), (3, 4), (4, 5), (5, 1), (2, 5), (3, 5)]),
        g1(5, &[(1, 2), (2, 3), (4, 5), (5, 1), (2, 4), (3, 5), (2, 5)]),
        g1(5, &[(1, 2), (2, 3), (3, 4), (4, 5), (5, 1), (2, 4), (3, 5)]),
        g1(5, &[(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4), (3, 5), (4, 5)]),
        g1(5, &[(1, 2), (1, 3), (1, 4), (1, 5), (2, 3), (3, 4), (4, 5), (5, 2)]),
        g1(5, &[(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (2, 5), (3, 4), (3, 5), (4, 5)]),
        SimpleGraph::complete(5).expect("valid"),
    ]
}

/// Looks up `G4_k`, `G5_k`, `K5`, `C4`, `C5` or `P5`.
pub fn named(name: &str) -> Option<SimpleGraph> {
    match name {
        "K5" => return SimpleGraph::complete(5).ok(),
        "C4" => return SimpleGraph::cycle(4).ok(),
        "C5" => return SimpleGraph::cycle(5).ok(),
        "P5" => return SimpleGraph::path(5).ok(),
        _ => {}
    }
    let (cat, k) = if let Some(k) = name.strip_prefix("G4_") {
        (four_vertex_catalogue(), k)
    } else if let Some(k) = name.strip_prefix("G5_") {
        (five_vertex_catalogue(), k)
    } else {
        return None;
    };
    let k: usize = k.parse().ok()?;
    (1..=cat.len()).contains(&k).then(|| cat[k - 1])
}
