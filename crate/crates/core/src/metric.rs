//! Finite metric spaces.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Labeled points with a validated symmetric distance matrix.
///
/// Zero distances between distinct points are allowed (pseudometrics); the
/// witness constructions quotient them out.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FiniteMetricSpace {
    labels: Vec<String>,
    #[serde(rename = "d")]
    dist: Vec<Vec<f64>>,
}

#[derive(Deserialize)]
struct RawSpace {
    labels: Vec<String>,
    d: Vec<Vec<f64>>,
}

impl FiniteMetricSpace {
    /// Validates `matrix` and builds the space.
    ///
    /// The triangle inequality may fail by at most `tol * scale`, where
    /// `scale` is the largest entry. Symmetry and the diagonal are checked
    /// with the same allowance; the stored matrix is symmetrised.
    pub fn from_matrix<S: AsRef<str>>(labels: &[S], matrix: &[Vec<f64>], tol: f64) -> Result<Self> {
        let n = labels.len();
        if matrix.len() != n || matrix.iter().any(|r| r.len() != n) {
            return Err(Error::ShapeMismatch(n));
        }
        let mut seen = std::collections::HashSet::new();
        for l in labels {
            if !seen.insert(l.as_ref()) {
                return Err(Error::DuplicateLabel(l.as_ref().to_string()));
            }
        }
        let scale = matrix
            .iter()
            .flatten()
            .fold(0.0f64, |m, &v| if v.is_finite() { m.max(v.abs()) } else { f64::INFINITY });
        if !scale.is_finite() {
            return Err(Error::BadParams("non-finite distance".into()));
        }
        let slack = tol * scale;
        for i in 0..n {
            if matrix[i][i].abs() > slack {
                return Err(Error::NonzeroDiagonal(i));
            }
            for j in 0..n {
                if matrix[i][j] < 0.0 {
                    return Err(Error::NegativeDistance(i, j));
                }
                if (matrix[i][j] - matrix[j][i]).abs() > slack {
                    return Err(Error::AsymmetricMatrix(i, j));
                }
            }
        }
        let mut dist = vec![vec![0.0; n]; n];
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    dist[i][j] = 0.5 * (matrix[i][j] + matrix[j][i]);
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let deficit = dist[i][k] - dist[i][j] - dist[j][k];
                    if deficit > slack {
                        return Err(Error::TriangleViolation(i, j, k, deficit));
                    }
                }
            }
        }
        Ok(Self {
            labels: labels.iter().map(|l| l.as_ref().to_string()).collect(),
            dist,
        })
    }

    /// Builds a space with labels `p0, p1, ...`.
    pub fn from_distances(matrix: &[Vec<f64>], tol: f64) -> Result<Self> {
        let labels: Vec<String> = (0..matrix.len()).map(|i| format!("p{i}")).collect();
        Self::from_matrix(&labels, matrix, tol)
    }

    /// Parses the `{"labels": [...], "d": [[...]]}` format.
    pub fn from_json(text: &str, tol: f64) -> Result<Self> {
        let raw: RawSpace =
            serde_json::from_str(text).map_err(|e| Error::BadParams(format!("invalid metric JSON: {e}")))?;
        Self::from_matrix(&raw.labels, &raw.d, tol)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("plain data serialises")
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn matrix(&self) -> &[Vec<f64>] {
        &self.dist
    }

    #[inline]
    pub fn d(&self, i: usize, j: usize) -> f64 {
        self.dist[i][j]
    }

    /// Largest pairwise distance.
    pub fn scale(&self) -> f64 {
        self.dist.iter().flatten().fold(0.0, |m: f64, &v| m.max(v))
    }

    /// Comparison angle at `b` of the triple (a, b, c).
    pub fn comparison_angle(&self, a: usize, b: usize, c: usize) -> Result<f64> {
        let (ab, bc, ac) = (self.d(a, b), self.d(b, c), self.d(a, c));
        if ab == 0.0 || bc == 0.0 {
            return Err(Error::DegenerateVertex);
        }
        Ok(crate::geom::law_of_cosines_angle(ab, bc, ac))
    }

    /// Induced subspace on `subset`, in the given order.
    pub fn restrict(&self, subset: &[usize]) -> Result<Self> {
        if subset.is_empty() {
            return Err(Error::EmptySubset);
        }
        if let Some(&bad) = subset.iter().find(|&&i| i >= self.len()) {
            return Err(Error::BadIndex(bad));
        }
        let labels = subset.iter().map(|&i| self.labels[i].clone()).collect();
        let dist = subset
            .iter()
            .map(|&i| subset.iter().map(|&j| self.dist[i][j]).collect())
            .collect();
        Ok(Self { labels, dist })
    }

    /// Pull back along an arbitrary vertex map, allowing repeats.
    ///
    /// Repeated points get distinct labels so the result is a pseudometric
    /// space indexed by the map's domain.
    pub fn pull_back(&self, f: &[usize]) -> Result<Self> {
        if let Some(&bad) = f.iter().find(|&&i| i >= self.len()) {
            return Err(Error::BadIndex(bad));
        }
        let labels = f
            .iter()
            .enumerate()
            .map(|(v, &i)| format!("{}#{v}", self.labels[i]))
            .collect();
        let dist = f.iter().map(|&i| f.iter().map(|&j| self.dist[i][j]).collect()).collect();
        Ok(Self { labels, dist })
    }

    /// Raises every distance to the power `alpha`.
    pub fn snowflake(&self, alpha: f64) -> Result<Self> {
        if !(alpha > 0.0 && alpha <= 1.0) {
            return Err(Error::BadExponent(alpha));
        }
        let dist = self
            .dist
            .iter()
            .map(|r| r.iter().map(|&v| if alpha == 1.0 { v } else { v.powf(alpha) }).collect())
            .collect();
        Ok(Self { labels: self.labels.clone(), dist })
    }

    /// Multiplies every distance by `lambda`.
    pub fn scaled(&self, lambda: f64) -> Self {
        let dist = self.dist.iter().map(|r| r.iter().map(|&v| v * lambda).collect()).collect();
        Self { labels: self.labels.clone(), dist }
    }

    /// Role-labeled squared distances for the ordered quadruple (x, y, z, w).
    pub fn quadruple(&self, x: usize, y: usize, z: usize, w: usize) -> QuadrupleView {
        let s = |a: usize, b: usize| self.dist[a][b] * self.dist[a][b];
        QuadrupleView {
            d2_xy: s(x, y),
            d2_yz: s(y, z),
            d2_zw: s(z, w),
            d2_wx: s(w, x),
            d2_xz: s(x, z),
            d2_yw: s(y, w),
        }
    }
}

/// Six squared distances bound to the roles x, y, z, w of the ⊠-form.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuadrupleView {
    pub d2_xy: f64,
    pub d2_yz: f64,
    pub d2_zw: f64,
    pub d2_wx: f64,
    pub d2_xz: f64,
    pub d2_yw: f64,
}

impl QuadrupleView {
    /// Builds a view from plain (unsquared) distances.
    pub fn from_distances(xy: f64, yz: f64, zw: f64, wx: f64, xz: f64, yw: f64) -> Self {
        Self {
            d2_xy: xy * xy,
            d2_yz: yz * yz,
            d2_zw: zw * zw,
            d2_wx: wx * wx,
            d2_xz: xz * xz,
            d2_yw: yw * yw,
        }
    }

    /// Swap the roles of x and z.
    pub fn swap_xz(&self) -> Self {
        Self {
            d2_xy: self.d2_yz,
            d2_yz: self.d2_xy,
            d2_zw: self.d2_wx,
            d2_wx: self.d2_zw,
            ..*self
        }
    }

    /// Swap the roles of y and w.
    pub fn swap_yw(&self) -> Self {
        Self {
            d2_xy: self.d2_wx,
            d2_wx: self.d2_xy,
            d2_yz: self.d2_zw,
            d2_zw: self.d2_yz,
            ..*self
        }
    }

    pub fn scaled(&self, lambda: f64) -> Self {
        let l2 = lambda * lambda;
        Self {
            d2_xy: self.d2_xy * l2,
            d2_yz: self.d2_yz * l2,
            d2_zw: self.d2_zw * l2,
            d2_wx: self.d2_wx * l2,
            d2_xz: self.d2_xz * l2,
            d2_yw: self.d2_yw * l2,
        }
    }
}
