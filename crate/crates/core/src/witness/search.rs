//! Planar witnesses by penalty minimisation.
//!
//! The penalty of a configuration `p` is
//! `Σ_edges max(0, |p_u p_v| - d)² + Σ_non-edges max(0, d - |p_u p_v|)²`.
//! It is a sum of squared one-sided residuals, minimised by damped
//! Gauss–Newton steps from several starts: classical multidimensional
//! scaling first, then seeded random configurations.

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{Model, Strategy, Witness, WitnessConfig};
use crate::error::{Error, Result};
use crate::geom::P2;
use crate::graph::SimpleGraph;
use crate::metric::FiniteMetricSpace;

struct Pair {
    u: usize,
    v: usize,
    d: f64,
    edge: bool,
}

fn residuals(x: &[f64], pairs: &[Pair], jac: Option<&mut DMatrix<f64>>) -> DVector<f64> {
    let mut r = DVector::zeros(pairs.len());
    let mut jac = jac;
    if let Some(j) = jac.as_deref_mut() {
        j.fill(0.0);
    }
    for (k, p) in pairs.iter().enumerate() {
        let (dx, dy) = (x[2 * p.u] - x[2 * p.v], x[2 * p.u + 1] - x[2 * p.v + 1]);
        let len = dx.hypot(dy);
        let (res, sign) = if p.edge { (len - p.d, 1.0) } else { (p.d - len, -1.0) };
        if res <= 0.0 {
            continue;
        }
        r[k] = res;
        if let Some(j) = jac.as_deref_mut() {
            let (ux, uy) = if len > 0.0 { (dx / len, dy / len) } else { (1.0, 0.0) };
            j[(k, 2 * p.u)] = sign * ux;
            j[(k, 2 * p.u + 1)] = sign * uy;
            j[(k, 2 * p.v)] = -sign * ux;
            j[(k, 2 * p.v + 1)] = -sign * uy;
        }
    }
    r
}

// Damped Gauss–Newton from `x`; returns the final penalty.
fn descend(x: &mut Vec<f64>, pairs: &[Pair], target: f64, max_iter: usize) -> f64 {
    let dim = x.len();
    let mut jac = DMatrix::zeros(pairs.len(), dim);
    let mut r = residuals(x, pairs, Some(&mut jac));
    let mut pen = r.norm_squared();
    let mut mu = 1e-3;
    for _ in 0..max_iter {
        if pen <= target {
            break;
        }
        let jt = jac.transpose();
        let mut a = &jt * &jac;
        for i in 0..dim {
            a[(i, i)] += mu * (1.0 + a[(i, i)]);
        }
        let grad = &jt * &r;
        let Some(step) = a.cholesky().map(|c| c.solve(&(-grad))) else {
            mu *= 4.0;
            continue;
        };
        let trial: Vec<f64> = x.iter().zip(step.iter()).map(|(a, b)| a + b).collect();
        let tr = residuals(&trial, pairs, None);
        let tp = tr.norm_squared();
        if tp < pen {
            *x = trial;
            r = residuals(x, pairs, Some(&mut jac));
            pen = tp;
            mu = (mu / 3.0).max(1e-15);
        } else {
            mu *= 4.0;
            if mu > 1e12 {
                break;
            }
        }
    }
    pen
}

// Classical scaling of the squared distance matrix onto its top two axes.
fn mds(y: &FiniteMetricSpace, scale: f64) -> Vec<f64> {
    let n = y.len();
    let d2 = DMatrix::from_fn(n, n, |i, j| (y.d(i, j) / scale).powi(2));
    let c = DMatrix::from_fn(n, n, |i, j| if i == j { 1.0 } else { 0.0 } - 1.0 / n as f64);
    let b = -0.5 * &c * d2 * &c;
    let eig = SymmetricEigen::new(b);
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[b].total_cmp(&eig.eigenvalues[a]));
    let mut x = vec![0.0; 2 * n];
    for (axis, &k) in order.iter().take(2).enumerate() {
        let s = eig.eigenvalues[k].max(0.0).sqrt();
        for i in 0..n {
            x[2 * i + axis] = eig.eigenvectors[(i, k)] * s;
        }
    }
    x
}

/// Searches for a planar configuration whose penalty is at most
/// `(tol · scale)²`. Fails with [`Error::SearchFailed`] carrying the best
/// penalty found.
pub fn planar_search(y: &FiniteMetricSpace, g: &SimpleGraph, cfg: &WitnessConfig) -> Result<Vec<P2>> {
    let n = g.n();
    if y.len() != n {
        return Err(Error::ArityMismatch(n, y.len()));
    }
    let scale = y.scale();
    if scale == 0.0 {
        return Ok(vec![[0.0, 0.0]; n]);
    }
    let pairs: Vec<Pair> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .map(|(u, v)| Pair { u, v, d: y.d(u, v) / scale, edge: g.has_edge(u, v) })
        .collect();
    let target = cfg.tol * cfg.tol;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut best = f64::INFINITY;
    for start in 0..cfg.multistarts.max(1) {
        let mut x = if start == 0 {
            mds(y, scale)
        } else {
            (0..2 * n).map(|_| rng.gen::<f64>()).collect()
        };
        let pen = descend(&mut x, &pairs, target, cfg.max_iter);
        if pen <= target {
            return Ok((0..n).map(|i| [x[2 * i] * scale, x[2 * i + 1] * scale]).collect());
        }
        best = best.min(pen);
    }
    Err(Error::SearchFailed(best * scale * scale))
}

pub(super) fn cycle(y: &FiniteMetricSpace, g: &SimpleGraph, k: usize, cfg: &WitnessConfig) -> Result<Witness> {
    let p = planar_search(y, g, cfg)?;
    Ok(Witness::new(Strategy::Cycle(k), Model::Plane(p), format!("planar {k}-cycle configuration from penalty search")))
}
