//! Random metric spaces for tests, benchmarks and the command line.
//!
//! Every generator takes the random source explicitly, so a seeded
//! `ChaCha8Rng` reproduces a corpus exactly.

use std::f64::consts::PI;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::boxtimes::space_satisfies;
use crate::complex::{triangle_complex, ComplexBuilder, ComplexSpace, FanTriangle};
use crate::error::{Error, Result};
use crate::metric::FiniteMetricSpace;

fn from_table(t: Vec<Vec<f64>>) -> FiniteMetricSpace {
    FiniteMetricSpace::from_distances(&t, 1e-9).expect("generated tables are metrics")
}

/// `n` points uniform in the unit cube of R^dim.
pub fn euclidean<R: Rng>(n: usize, dim: usize, rng: &mut R) -> FiniteMetricSpace {
    let pts: Vec<Vec<f64>> = (0..n).map(|_| (0..dim).map(|_| rng.gen::<f64>()).collect()).collect();
    let t = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| pts[i].iter().zip(&pts[j]).map(|(a, b)| (a - b).powi(2)).sum::<f64>().sqrt())
                .collect()
        })
        .collect();
    from_table(t)
}

/// `n` distinct vertices of a random weighted tree with `n + 3` vertices.
pub fn tree<R: Rng>(n: usize, rng: &mut R) -> FiniteMetricSpace {
    let m = n + 3;
    let mut d = vec![vec![0.0; m]; m];
    for v in 1..m {
        let parent = rng.gen_range(0..v);
        let w = rng.gen_range(0.2..1.0);
        for u in 0..v {
            let x = d[parent][u] + w;
            d[v][u] = x;
            d[u][v] = x;
        }
    }
    let mut pick: Vec<usize> = (0..m).collect();
    pick.shuffle(rng);
    pick.truncate(n);
    from_table(pick.iter().map(|&i| pick.iter().map(|&j| d[i][j]).collect()).collect())
}

/// Distances in [1, 2], which always form a metric.
pub fn random_metric<R: Rng>(n: usize, rng: &mut R) -> FiniteMetricSpace {
    let mut t = vec![vec![0.0; n]; n];
    for i in 0..n {
        for j in i + 1..n {
            let v = rng.gen_range(1.0..2.0);
            t[i][j] = v;
            t[j][i] = v;
        }
    }
    from_table(t)
}

/// Multiplies each distance by a factor in `[1 - eps, 1 + eps]` and takes
/// the shortest-path closure, which is again a metric.
pub fn perturbed<R: Rng>(x: &FiniteMetricSpace, eps: f64, rng: &mut R) -> FiniteMetricSpace {
    let n = x.len();
    let mut t = x.matrix().to_vec();
    for i in 0..n {
        for j in i + 1..n {
            let v = x.d(i, j) * (1.0 + eps * rng.gen_range(-1.0..=1.0));
            t[i][j] = v;
            t[j][i] = v;
        }
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                if t[i][k] + t[k][j] < t[i][j] {
                    t[i][j] = t[i][k] + t[k][j];
                }
            }
        }
    }
    from_table(t)
}

/// Snowflake transform `d ↦ d^alpha`.
pub fn snowflaked(x: &FiniteMetricSpace, alpha: f64) -> Result<FiniteMetricSpace> {
    x.snowflake(alpha)
}

/// Random CAT(0) complexes: a disc around an apex with angle sum at least
/// 2π, a chain of triangles, or three triangles sharing a side.
pub fn random_complex<R: Rng>(rng: &mut R) -> Result<ComplexSpace> {
    let side = |a: f64, b: f64, ang: f64| (a * a + b * b - 2.0 * a * b * ang.cos()).max(0.0).sqrt();
    match rng.gen_range(0..3) {
        0 => {
            // three corners at the apex, each below π, summing to at least 2π
            let ang: Vec<f64> = loop {
                let a: Vec<f64> = (0..3).map(|_| rng.gen_range(0.55 * PI..0.97 * PI)).collect();
                if a.iter().sum::<f64>() >= 2.0 * PI {
                    break a;
                }
            };
            let r: Vec<f64> = (0..3).map(|_| rng.gen_range(0.5..1.5)).collect();
            let names = ["y", "z", "w"];
            let tris: Vec<FanTriangle> = (0..3)
                .map(|i| {
                    let j = (i + 1) % 3;
                    FanTriangle::new(["x", names[i], names[j]], [r[i], side(r[i], r[j], ang[i]), r[j]])
                })
                .collect();
            triangle_complex("disc", &tris, &[(0, 1), (1, 2), (2, 0)])
        }
        1 => {
            let k = rng.gen_range(2..=4);
            let r: Vec<f64> = (0..=k).map(|_| rng.gen_range(0.5..1.5)).collect();
            let names: Vec<String> = (0..=k).map(|i| format!("r{i}")).collect();
            let tris: Vec<FanTriangle> = (0..k)
                .map(|i| {
                    let ang = rng.gen_range(0.2 * PI..0.9 * PI);
                    FanTriangle::new(["o", &names[i], &names[i + 1]], [r[i], side(r[i], r[i + 1], ang), r[i + 1]])
                })
                .collect();
            let joins: Vec<(usize, usize)> = (1..k).map(|i| (i - 1, i)).collect();
            triangle_complex("fan", &tris, &joins)
        }
        _ => {
            let base = rng.gen_range(0.8..1.5);
            let tris: Vec<FanTriangle> = (0..3)
                .map(|i| {
                    let a = rng.gen_range(0.5..1.5);
                    let ang = rng.gen_range(0.2 * PI..0.8 * PI);
                    let label = format!("t{i}");
                    FanTriangle::new(["a", "b", &label], [base, side(base, a, ang), a])
                })
                .collect();
            triangle_complex("book", &tris, &[(0, 1), (1, 2)])
        }
    }
}

/// `n` random points of a random CAT(0) complex, returned with the complex
/// (the points are its marks `s0, s1, ...`).
pub fn complex_sample<R: Rng>(n: usize, rng: &mut R) -> Result<(ComplexSpace, FiniteMetricSpace)> {
    let c = random_complex(rng)?;
    let mut b = ComplexBuilder::from_complex(&c);
    b.marks.clear();
    for i in 0..n {
        let piece = rng.gen_range(0..c.pieces.len());
        let w: Vec<f64> = (0..3).map(|_| -rng.gen::<f64>().max(1e-12).ln()).collect();
        let s: f64 = w.iter().sum();
        let g = &c.pieces[piece].generators;
        let p = (0..3).fold([0.0; 3], |acc, k| {
            [acc[0] + g[k][0] * w[k] / s, acc[1] + g[k][1] * w[k] / s, acc[2] + g[k][2] * w[k] / s]
        });
        b.mark_at(format!("s{i}"), piece, p)?;
    }
    let c = b.build()?;
    let t = c.distance_table();
    let x = FiniteMetricSpace::from_distances(&t, 1e-9)?;
    Ok((c, x))
}

/// A random five-or-fewer point space satisfying the ⊠-inequalities, drawn
/// from a rotating mix of families so that all four-point configurations
/// (embeddable, under- and over-distance) occur.
pub fn boxtimes_space<R: Rng>(n: usize, rng: &mut R, tol: f64) -> Result<FiniteMetricSpace> {
    for _ in 0..1000 {
        let x = match rng.gen_range(0..6) {
            0 => euclidean(n, 3, rng),
            1 => tree(n, rng),
            2 => snowflaked(&random_metric(n, rng), 0.5)?,
            3 => complex_sample(n, rng)?.1,
            4 => random_metric(n, rng),
            _ => perturbed(&euclidean(n, 2, rng), 0.05, rng),
        };
        if space_satisfies(&x, tol).is_positive() {
            return Ok(x);
        }
    }
    Err(Error::BadParams("no ⊠-satisfying sample in 1000 draws".into()))
}
