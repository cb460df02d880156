//! Quadratic metric inequalities `0 ≤ Σ a_ij d(x_i, x_j)²`.
//!
//! An inequality of arity `n` is a set of coefficients on unordered index
//! pairs. Its associated graph has an edge wherever the coefficient is
//! strictly positive; a witness for that graph pattern transfers the
//! inequality from a model space back to the original points.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::SimpleGraph;
use crate::metric::FiniteMetricSpace;

/// Coefficients `a_ij` for `i < j < n`. Missing pairs are zero.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawQmi", into = "RawQmi")]
pub struct QuadraticMetricInequality {
    n: usize,
    coeffs: BTreeMap<(usize, usize), f64>,
}

#[derive(Serialize, Deserialize)]
struct RawQmi {
    n: usize,
    a: BTreeMap<String, f64>,
}

impl TryFrom<RawQmi> for QuadraticMetricInequality {
    type Error = Error;

    fn try_from(raw: RawQmi) -> Result<Self> {
        let mut q = Self::zero(raw.n);
        for (key, v) in raw.a {
            let bad = || Error::BadParams(format!("pair key {key:?} is not \"i,j\""));
            let (i, j) = key.split_once(',').ok_or_else(bad)?;
            let i: usize = i.trim().parse().map_err(|_| bad())?;
            let j: usize = j.trim().parse().map_err(|_| bad())?;
            q.set(i, j, v)?;
        }
        Ok(q)
    }
}

impl From<QuadraticMetricInequality> for RawQmi {
    fn from(q: QuadraticMetricInequality) -> Self {
        let a = q.coeffs.iter().map(|(&(i, j), &v)| (format!("{i},{j}"), v)).collect();
        RawQmi { n: q.n, a }
    }
}

impl QuadraticMetricInequality {
    /// The inequality of arity `n` with all coefficients zero.
    pub fn zero(n: usize) -> Self {
        Self { n, coeffs: BTreeMap::new() }
    }

    pub fn new(n: usize, coeffs: &[((usize, usize), f64)]) -> Result<Self> {
        let mut q = Self::zero(n);
        for &((i, j), v) in coeffs {
            q.set(i, j, v)?;
        }
        Ok(q)
    }

    /// Sets `a_ij`. Diagonal pairs and indices `≥ n` are rejected.
    pub fn set(&mut self, i: usize, j: usize, v: f64) -> Result<()> {
        if i == j {
            return Err(Error::BadIndex(i));
        }
        if i.max(j) >= self.n {
            return Err(Error::BadIndex(i.max(j)));
        }
        if !v.is_finite() {
            return Err(Error::BadParams(format!("coefficient {v} for ({i}, {j})")));
        }
        let key = (i.min(j), i.max(j));
        if v == 0.0 {
            self.coeffs.remove(&key);
        } else {
            self.coeffs.insert(key, v);
        }
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn coeff(&self, i: usize, j: usize) -> f64 {
        self.coeffs.get(&(i.min(j), i.max(j))).copied().unwrap_or(0.0)
    }

    /// Nonzero coefficients in pair order.
    pub fn coeffs(&self) -> impl Iterator<Item = ((usize, usize), f64)> + '_ {
        self.coeffs.iter().map(|(&k, &v)| (k, v))
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::BadParams(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("coefficients are finite")
    }

    /// The quadrilateral inequality on roles (x, y, z, w) = (0, 1, 2, 3):
    /// the four sides count `+1`, the diagonals `-1`.
    pub fn quadrilateral() -> Self {
        quad_with([1.0, 1.0, 1.0, 1.0, -1.0, -1.0])
    }

    /// The ⊠-inequality at `(s, t)` on roles (x, y, z, w) = (0, 1, 2, 3).
    pub fn boxtimes_family(s: f64, t: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&s) || !(0.0..=1.0).contains(&t) {
            return Err(Error::ParamOutOfRange(s, t));
        }
        Ok(quad_with([
            (1.0 - t) * (1.0 - s),
            t * (1.0 - s),
            t * s,
            (1.0 - t) * s,
            -t * (1.0 - t),
            -s * (1.0 - s),
        ]))
    }

    /// `Σ a_ij d_ij²` for an `n × n` table of distances.
    pub fn evaluate_distances(&self, d: &[Vec<f64>]) -> Result<f64> {
        if d.len() != self.n {
            return Err(Error::ArityMismatch(self.n, d.len()));
        }
        Ok(self.coeffs().map(|((i, j), a)| a * d[i][j] * d[i][j]).sum())
    }

    /// `Σ a_ij d(x_{tuple_i}, x_{tuple_j})²`.
    pub fn evaluate(&self, x: &FiniteMetricSpace, tuple: &[usize]) -> Result<f64> {
        if tuple.len() != self.n {
            return Err(Error::ArityMismatch(self.n, tuple.len()));
        }
        if let Some(&bad) = tuple.iter().find(|&&p| p >= x.len()) {
            return Err(Error::BadIndex(bad));
        }
        Ok(self.coeffs().map(|((i, j), a)| a * x.d(tuple[i], tuple[j]).powi(2)).sum())
    }

    /// Exhaustive minimum over all `|X|ⁿ` tuples, repetitions allowed. Ties
    /// keep the lexicographically first tuple.
    pub fn min_over_tuples(&self, x: &FiniteMetricSpace) -> Result<(f64, Vec<usize>)> {
        if x.is_empty() {
            return Err(Error::EmptySubset);
        }
        let m = x.len();
        let mut tuple = vec![0; self.n];
        let mut best = (self.evaluate(x, &tuple)?, tuple.clone());
        // odometer over tuples in lexicographic order
        loop {
            let mut k = self.n;
            loop {
                if k == 0 {
                    return Ok(best);
                }
                k -= 1;
                tuple[k] += 1;
                if tuple[k] < m {
                    break;
                }
                tuple[k] = 0;
            }
            let v = self.evaluate(x, &tuple)?;
            if v < best.0 {
                best = (v, tuple.clone());
            }
        }
    }

    /// Graph on `n` vertices whose edges are the pairs with `a_ij > 0`.
    pub fn associated_graph(&self) -> Result<SimpleGraph> {
        let edges: Vec<(usize, usize)> = self.coeffs().filter(|&(_, a)| a > 0.0).map(|(p, _)| p).collect();
        SimpleGraph::from_edges(self.n, &edges)
    }

    /// Checks that `w` (distances between the images of the tuple in a
    /// witness) follows the associated graph pattern, `w ≤ d` on positive
    /// pairs and `w ≥ d` elsewhere, up to `tol · scale`, and returns
    /// `evaluate(x, tuple)`. Under the pattern this value is at least
    /// `evaluate_distances(w)`.
    pub fn transfer_bound(&self, x: &FiniteMetricSpace, tuple: &[usize], w: &[Vec<f64>], tol: f64) -> Result<f64> {
        let value = self.evaluate(x, tuple)?;
        if w.len() != self.n || w.iter().any(|row| row.len() != self.n) {
            return Err(Error::ArityMismatch(self.n, w.len()));
        }
        let slack = tol * x.scale();
        for i in 0..self.n {
            for j in i + 1..self.n {
                let d = x.d(tuple[i], tuple[j]);
                let ok = if self.coeff(i, j) > 0.0 { w[i][j] <= d + slack } else { w[i][j] >= d - slack };
                if !ok {
                    return Err(Error::PatternViolated(i, j));
                }
            }
        }
        Ok(value)
    }
}

// Coefficients in the order xy, yz, zw, wx, xz, yw.
fn quad_with(a: [f64; 6]) -> QuadraticMetricInequality {
    let pairs = [(0, 1), (1, 2), (2, 3), (0, 3), (0, 2), (1, 3)];
    let mut q = QuadraticMetricInequality::zero(4);
    for (p, v) in pairs.into_iter().zip(a) {
        q.set(p.0, p.1, v).expect("pairs are in range");
    }
    q
}
