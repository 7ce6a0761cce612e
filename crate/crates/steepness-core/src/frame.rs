use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

/// Default tolerance on dot products for orthonormality checks.
pub const ORTHONORMAL_TOL: f64 = 1e-10;

/// An ordered orthonormal `m`-tuple in `ℝⁿ`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Frame {
    n: usize,
    vectors: Vec<Vec<f64>>,
}

pub(crate) fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub(crate) fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

impl Frame {
    /// Validates orthonormality within `tol` on every dot product.
    pub fn new(vectors: Vec<Vec<f64>>, tol: f64) -> Result<Frame> {
        let n = Self::check_shape(&vectors)?;
        let mut worst: f64 = 0.0;
        for i in 0..vectors.len() {
            for j in i..vectors.len() {
                let target = if i == j { 1.0 } else { 0.0 };
                worst = worst.max((dot(&vectors[i], &vectors[j]) - target).abs());
            }
        }
        if worst > tol {
            return Err(Error::NotOrthonormal {
                deviation: worst,
                tol,
            });
        }
        Ok(Frame { n, vectors })
    }

    fn check_shape(vectors: &[Vec<f64>]) -> Result<usize> {
        let first = vectors
            .first()
            .ok_or_else(|| Error::invalid("a frame needs at least one vector"))?;
        let n = first.len();
        if n == 0 {
            return Err(Error::invalid("frame vectors must be non-empty"));
        }
        for (k, v) in vectors.iter().enumerate() {
            if v.len() != n {
                return Err(Error::invalid(format!(
                    "vectors[{k}] has length {}, expected {n}",
                    v.len()
                )));
            }
            if v.iter().any(|x| !x.is_finite()) {
                return Err(Error::invalid(format!(
                    "vectors[{k}] has a non-finite entry"
                )));
            }
        }
        if vectors.len() > n {
            return Err(Error::invalid(format!(
                "{} vectors cannot be independent in dimension {n}",
                vectors.len()
            )));
        }
        Ok(n)
    }

    /// The first `m` standard basis vectors of `ℝⁿ`.
    pub fn standard(n: usize, m: usize) -> Frame {
        let vectors = (0..m)
            .map(|i| {
                let mut e = vec![0.0; n];
                e[i] = 1.0;
                e
            })
            .collect();
        Frame { n, vectors }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.vectors.len()
    }

    pub fn vectors(&self) -> &[Vec<f64>] {
        &self.vectors
    }

    pub fn vector(&self, i: usize) -> &[f64] {
        &self.vectors[i]
    }

    /// Euclidean distance from `x` to the span of the frame.
    pub fn distance_to_span(&self, x: &[f64]) -> f64 {
        let mut res = x.to_vec();
        for u in &self.vectors {
            let c = dot(&res, u);
            res.iter_mut().zip(u).for_each(|(r, ui)| *r -= c * ui);
        }
        norm(&res)
    }

    /// `Σ x_i u_i`.
    pub fn embed(&self, x: &[f64]) -> Vec<f64> {
        let mut out = vec![0.0; self.n];
        for (xi, u) in x.iter().zip(&self.vectors) {
            out.iter_mut().zip(u).for_each(|(o, ui)| *o += xi * ui);
        }
        out
    }

    /// Largest `|u_i · g|` over the frame.
    pub fn max_dot(&self, g: &[f64]) -> f64 {
        self.vectors
            .iter()
            .map(|u| dot(u, g).abs())
            .fold(0.0, f64::max)
    }
}

/// Modified Gram–Schmidt in the given order. Fails when a vector's residual
/// after projection falls below `tol` times its original norm.
pub fn gram_schmidt(vectors: &[Vec<f64>], tol: f64) -> Result<Frame> {
    let n = Frame::check_shape(vectors)?;
    let mut out: Vec<Vec<f64>> = Vec::with_capacity(vectors.len());
    for (index, v) in vectors.iter().enumerate() {
        let scale = norm(v);
        let mut w = v.clone();
        // two passes keep the residual orthogonal in floating point
        for _ in 0..2 {
            for u in &out {
                let c = dot(&w, u);
                w.iter_mut().zip(u).for_each(|(wi, ui)| *wi -= c * ui);
            }
        }
        let residual = norm(&w);
        if scale == 0.0 || residual <= tol * scale {
            return Err(Error::RankDeficient { index, residual });
        }
        w.iter_mut().for_each(|x| *x /= residual);
        out.push(w);
    }
    Ok(Frame { n, vectors: out })
}

/// A frame `(u_1,…,u_m)` with the sheared leading vector
/// `v = u_1 + Σ_{j≥2} a_{j1} u_j`.
#[derive(Debug, Clone, PartialEq)]
pub struct AnisotropicBasis {
    frame: Frame,
    a1: Vec<f64>,
    v: Vec<f64>,
}

impl AnisotropicBasis {
    pub fn new(frame: Frame, a1: Vec<f64>) -> Result<Self> {
        if a1.len() + 1 != frame.m() {
            return Err(Error::DimensionMismatch {
                what: "linear curve coefficients",
                expected: frame.m() - 1,
                found: a1.len(),
            });
        }
        let mut v = frame.vector(0).to_vec();
        for (a, u) in a1.iter().zip(&frame.vectors()[1..]) {
            v.iter_mut().zip(u).for_each(|(vi, ui)| *vi += a * ui);
        }
        Ok(AnisotropicBasis { frame, a1, v })
    }

    pub fn frame(&self) -> &Frame {
        &self.frame
    }

    pub fn a1(&self) -> &[f64] {
        &self.a1
    }

    pub fn v(&self) -> &[f64] {
        &self.v
    }

    pub fn m(&self) -> usize {
        self.frame.m()
    }

    /// `(v, u_2, …, u_m)`.
    pub fn sheared_vectors(&self) -> Vec<Vec<f64>> {
        let mut out = vec![self.v.clone()];
        out.extend(self.frame.vectors()[1..].iter().cloned());
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gram_schmidt_examples() {
        let f = gram_schmidt(&[vec![1.0, 0.0], vec![1.0, 1.0]], 1e-12).unwrap();
        assert_eq!(f.vectors(), &[vec![1.0, 0.0], vec![0.0, 1.0]]);
        let f = gram_schmidt(&[vec![2.0, 0.0]], 1e-12).unwrap();
        assert_eq!(f.vectors(), &[vec![1.0, 0.0]]);
        let s = 1.0 / 2f64.sqrt();
        let f = gram_schmidt(&[vec![1.0, 1.0, 0.0], vec![1.0, -1.0, 0.0]], 1e-12).unwrap();
        for (got, want) in f.vectors().iter().zip([[s, s, 0.0], [s, -s, 0.0]]) {
            for (g, w) in got.iter().zip(want) {
                assert!((g - w).abs() < 1e-15);
            }
        }
    }

    #[test]
    fn rank_deficiency_is_reported() {
        let err = gram_schmidt(&[vec![1.0, 1.0], vec![2.0, 2.0]], 1e-10).unwrap_err();
        assert!(matches!(err, Error::RankDeficient { index: 1, .. }));
    }

    #[test]
    fn frame_validation() {
        assert!(Frame::new(vec![vec![1.0, 0.0], vec![0.5, 1.0]], 1e-10).is_err());
        assert!(Frame::new(vec![vec![1.0, 0.0], vec![0.0, 1.0]], 1e-10).is_ok());
        assert!(Frame::new(vec![], 1e-10).is_err());
    }
}
