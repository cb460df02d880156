//! Minimisation of a sum of Euclidean norms of affine maps over a product of
//! intervals and triangles.
//!
//! The objective `F(u) = Σ ‖b_i + Σ_j c_ij u_j‖` is convex. It is smoothed as
//! `Σ √(‖r_i‖² + ε²)` and minimised by an active-set Newton method while ε is
//! driven towards zero. Besides the primal value the solver returns a dual
//! lower bound obtained from the unit vectors `r_i / φ_i`.

use nalgebra::{DMatrix, DVector};

use crate::geom::{self, P3};

/// A block of parameters and its feasible set.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Block {
    /// One parameter in [0, 1].
    Interval,
    /// Two parameters with u, v ≥ 0 and u + v ≤ 1.
    Triangle,
}

impl Block {
    pub fn width(self) -> usize {
        match self {
            Block::Interval => 1,
            Block::Triangle => 2,
        }
    }
}

/// One norm term: `b + Σ coef · u[idx]`.
#[derive(Debug, Clone, Default)]
pub struct Leg {
    pub b: P3,
    pub terms: Vec<(usize, P3)>,
}

#[derive(Debug, Clone, Default)]
pub struct Problem {
    pub blocks: Vec<Block>,
    pub legs: Vec<Leg>,
}

#[derive(Debug, Clone)]
pub struct Solution {
    pub value: f64,
    pub lower_bound: f64,
    /// Optimal crossing parameters.
    #[cfg_attr(not(test), allow(dead_code))]
    pub params: Vec<f64>,
}

// Constraint c · u >= d touching at most two coordinates.
#[derive(Debug, Clone, Copy)]
struct Constraint {
    idx: [usize; 2],
    coef: [f64; 2],
    rhs: f64,
    block: usize,
}

impl Constraint {
    fn dot(&self, v: &[f64]) -> f64 {
        self.coef[0] * v[self.idx[0]] + self.coef[1] * v[self.idx[1]]
    }
}

impl Problem {
    pub fn nparams(&self) -> usize {
        self.blocks.iter().map(|b| b.width()).sum()
    }

    /// Offset of every block's first parameter.
    pub fn offsets(&self) -> Vec<usize> {
        let mut off = Vec::with_capacity(self.blocks.len());
        let mut k = 0;
        for b in &self.blocks {
            off.push(k);
            k += b.width();
        }
        off
    }

    fn residual(&self, leg: &Leg, u: &[f64]) -> P3 {
        let mut r = leg.b;
        for &(j, c) in &leg.terms {
            r = geom::add3(r, geom::scale3(c, u[j]));
        }
        r
    }

    pub fn value(&self, u: &[f64]) -> f64 {
        self.legs.iter().map(|l| geom::norm3(self.residual(l, u))).sum()
    }

    fn smoothed(&self, u: &[f64], eps: f64) -> f64 {
        let e2 = eps * eps;
        self.legs
            .iter()
            .map(|l| {
                let r = self.residual(l, u);
                (geom::dot3(r, r) + e2).sqrt()
            })
            .sum()
    }

    fn constraints(&self) -> Vec<Constraint> {
        let mut out = Vec::new();
        for (b, (&blk, off)) in self.blocks.iter().zip(self.offsets()).enumerate() {
            match blk {
                Block::Interval => {
                    out.push(Constraint { idx: [off, off], coef: [1.0, 0.0], rhs: 0.0, block: b });
                    out.push(Constraint { idx: [off, off], coef: [-1.0, 0.0], rhs: -1.0, block: b });
                }
                Block::Triangle => {
                    out.push(Constraint { idx: [off, off + 1], coef: [1.0, 0.0], rhs: 0.0, block: b });
                    out.push(Constraint { idx: [off, off + 1], coef: [0.0, 1.0], rhs: 0.0, block: b });
                    out.push(Constraint { idx: [off, off + 1], coef: [-1.0, -1.0], rhs: -1.0, block: b });
                }
            }
        }
        out
    }

    /// Length scale of the problem, used to set the smoothing schedule.
    fn scale(&self) -> f64 {
        let mut s: f64 = 0.0;
        for l in &self.legs {
            s = s.max(geom::norm3(l.b));
            for &(_, c) in &l.terms {
                s = s.max(geom::norm3(c));
            }
        }
        s
    }

    /// Minimises the objective; `start` is an optional feasible warm start.
    pub fn solve(&self, start: Option<&[f64]>) -> Solution {
        let n = self.nparams();
        let mut u: Vec<f64> = match start {
            Some(s) => s.to_vec(),
            None => {
                let mut v = Vec::with_capacity(n);
                for b in &self.blocks {
                    match b {
                        Block::Interval => v.push(0.5),
                        Block::Triangle => v.extend([1.0 / 3.0, 1.0 / 3.0]),
                    }
                }
                v
            }
        };
        if n == 0 {
            let value = self.value(&u);
            return Solution { value, lower_bound: value, params: u };
        }
        let scale = self.scale().max(f64::MIN_POSITIVE);
        let cons = self.constraints();
        let mut active: Vec<usize> = Vec::new();
        let mut eps = 1e-2 * scale;
        let mut last_eps = eps;
        while eps >= 1e-12 * scale {
            self.newton_stage(&mut u, &cons, &mut active, eps);
            last_eps = eps;
            eps *= 1e-2;
        }
        let value = self.value(&u);
        let lower_bound = self.dual_bound(&u, last_eps).min(value);
        Solution { value, lower_bound, params: u }
    }

    fn grad_hess(&self, u: &[f64], eps: f64) -> (DVector<f64>, DMatrix<f64>) {
        let n = u.len();
        let mut g = DVector::zeros(n);
        let mut h = DMatrix::zeros(n, n);
        let e2 = eps * eps;
        for l in &self.legs {
            let r = self.residual(l, u);
            let phi = (geom::dot3(r, r) + e2).sqrt();
            // d phi / du_j = c_j · r / phi
            for &(j, c) in &l.terms {
                g[j] += geom::dot3(c, r) / phi;
            }
            for &(j, cj) in &l.terms {
                let rj = geom::dot3(cj, r);
                for &(k, ck) in &l.terms {
                    let rk = geom::dot3(ck, r);
                    h[(j, k)] += geom::dot3(cj, ck) / phi - rj * rk / (phi * phi * phi);
                }
            }
        }
        (g, h)
    }

    // Basis of directions keeping every active constraint at equality.
    fn null_space(&self, n: usize, cons: &[Constraint], active: &[usize]) -> DMatrix<f64> {
        let mut cols: Vec<DVector<f64>> = Vec::new();
        for (b, (&blk, off)) in self.blocks.iter().zip(self.offsets()).enumerate() {
            let act: Vec<&Constraint> = active.iter().map(|&k| &cons[k]).filter(|c| c.block == b).collect();
            let unit = |i: usize| {
                let mut v = DVector::zeros(n);
                v[i] = 1.0;
                v
            };
            match (blk, act.len()) {
                (_, 0) => {
                    for i in 0..blk.width() {
                        cols.push(unit(off + i));
                    }
                }
                (Block::Triangle, 1) => {
                    // direction along the single active edge: orthogonal to its normal
                    let c = act[0].coef;
                    let mut v = DVector::zeros(n);
                    v[off] = -c[1];
                    v[off + 1] = c[0];
                    let nv = v.norm();
                    cols.push(v / nv);
                }
                _ => {}
            }
        }
        let mut z = DMatrix::zeros(n, cols.len());
        for (j, c) in cols.iter().enumerate() {
            z.set_column(j, c);
        }
        z
    }

    fn newton_stage(&self, u: &mut Vec<f64>, cons: &[Constraint], active: &mut Vec<usize>, eps: f64) {
        let n = u.len();
        let tiny = 1e-16 * self.scale().max(f64::MIN_POSITIVE);
        for _ in 0..200 {
            let (g, h) = self.grad_hess(u, eps);
            let z = self.null_space(n, cons, active);
            let mut p = DVector::zeros(n);
            if z.ncols() > 0 {
                let zt = z.transpose();
                let mut rh = &zt * &h * &z;
                let reg = 1e-13 * (0..rh.nrows()).map(|i| rh[(i, i)].abs()).fold(0.0, f64::max) + 1e-300;
                for i in 0..rh.nrows() {
                    rh[(i, i)] += reg;
                }
                let rg = &zt * &g;
                let y = match rh.clone().cholesky() {
                    Some(ch) => ch.solve(&(-&rg)),
                    None => -rg,
                };
                p = &z * y;
            }
            let slope = g.dot(&p);
            if p.norm() <= 1e-14 || -slope <= tiny {
                if !self.release_constraint(&g, cons, active) {
                    return;
                }
                continue;
            }
            // ratio test against inactive constraints
            let pv: Vec<f64> = p.iter().copied().collect();
            let mut amax = f64::INFINITY;
            let mut blocking = None;
            for (k, c) in cons.iter().enumerate() {
                if active.contains(&k) {
                    continue;
                }
                let cp = c.dot(&pv);
                if cp < 0.0 {
                    let a = ((c.rhs - c.dot(u)) / cp).max(0.0);
                    if a < amax {
                        amax = a;
                        blocking = Some(k);
                    }
                }
            }
            if amax <= 0.0 {
                if let Some(k) = blocking {
                    active.push(k);
                }
                continue;
            }
            let mut alpha = amax.min(1.0);
            let f0 = self.smoothed(u, eps);
            let mut trial: Vec<f64>;
            loop {
                trial = u.iter().zip(&pv).map(|(a, b)| a + alpha * b).collect();
                if self.smoothed(&trial, eps) <= f0 + 1e-4 * alpha * slope || alpha < 1e-12 {
                    break;
                }
                alpha *= 0.5;
            }
            if alpha < 1e-12 {
                return;
            }
            let hit = alpha >= amax;
            *u = trial;
            self.project(u);
            if hit {
                if let Some(k) = blocking {
                    active.push(k);
                }
            }
            if alpha * p.norm() < 1e-15 && !hit {
                return;
            }
        }
    }

    // Drops the active constraint with the most negative multiplier.
    fn release_constraint(&self, g: &DVector<f64>, cons: &[Constraint], active: &mut Vec<usize>) -> bool {
        if active.is_empty() {
            return false;
        }
        let mut worst: Option<(usize, f64)> = None;
        for (b, (&blk, off)) in self.blocks.iter().zip(self.offsets()).enumerate() {
            let act: Vec<usize> = active.iter().copied().filter(|&k| cons[k].block == b).collect();
            if act.is_empty() {
                continue;
            }
            let gb: Vec<f64> = (0..blk.width()).map(|i| g[off + i]).collect();
            let lambdas: Vec<f64> = match (blk, act.len()) {
                (Block::Interval, _) => vec![gb[0] / cons[act[0]].coef[0]],
                (Block::Triangle, 1) => {
                    let c = cons[act[0]].coef;
                    vec![(gb[0] * c[0] + gb[1] * c[1]) / (c[0] * c[0] + c[1] * c[1])]
                }
                _ => {
                    // two active rows: solve the 2x2 system g = λ1 c1 + λ2 c2
                    let (c1, c2) = (cons[act[0]].coef, cons[act[1]].coef);
                    let det = c1[0] * c2[1] - c2[0] * c1[1];
                    vec![
                        (gb[0] * c2[1] - c2[0] * gb[1]) / det,
                        (c1[0] * gb[1] - gb[0] * c1[1]) / det,
                    ]
                }
            };
            for (k, l) in act.iter().zip(lambdas) {
                if worst.map_or(true, |w| l < w.1) {
                    worst = Some((*k, l));
                }
            }
        }
        match worst {
            Some((k, l)) if l < -1e-14 * g.norm().max(1e-300) => {
                active.retain(|&a| a != k);
                true
            }
            _ => false,
        }
    }

    fn project(&self, u: &mut [f64]) {
        for (&blk, off) in self.blocks.iter().zip(self.offsets()) {
            match blk {
                Block::Interval => u[off] = u[off].clamp(0.0, 1.0),
                Block::Triangle => {
                    let (a, b) = (u[off].max(0.0), u[off + 1].max(0.0));
                    let s = a + b;
                    if s > 1.0 {
                        u[off] = a / s;
                        u[off + 1] = b / s;
                    } else {
                        u[off] = a;
                        u[off + 1] = b;
                    }
                }
            }
        }
    }

    /// Weak duality: with unit vectors λ_i, `Σ‖r_i‖ ≥ Σ λ_i · r_i`, whose
    /// minimum over the feasible set is attained at block vertices.
    fn dual_bound(&self, u: &[f64], eps: f64) -> f64 {
        let n = u.len();
        let mut lin = vec![0.0; n];
        let mut c0 = 0.0;
        for l in &self.legs {
            let r = self.residual(l, u);
            let phi = (geom::dot3(r, r) + eps * eps).sqrt();
            let lam = geom::scale3(r, 1.0 / phi);
            c0 += geom::dot3(lam, l.b);
            for &(j, c) in &l.terms {
                lin[j] += geom::dot3(lam, c);
            }
        }
        let mut lb = c0;
        for (&blk, off) in self.blocks.iter().zip(self.offsets()) {
            lb += match blk {
                Block::Interval => lin[off].min(0.0),
                Block::Triangle => 0.0f64.min(lin[off]).min(lin[off + 1]),
            };
        }
        lb
    }
}
