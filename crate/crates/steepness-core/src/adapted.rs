//! Unit-triangular shears `y_j = x_j − b_j x_i` and their action on jets and
//! curve truncations.

use crate::error::{Error, Result};
use crate::multiindex::MultiIndex;
use crate::poly::Jet;
use crate::series::Series;
use serde::{Deserialize, Serialize};

/// Order-`s` truncation of a curve parametrized by coordinate `i`:
/// `x_i = t`, `x_j = Σ_{k=1..s} a_{jk} t^k` for `j ≠ i`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CurveTruncation {
    m: usize,
    s: usize,
    i: usize,
    /// One row per `j ≠ i`, in increasing `j`; row entries are `a_{j1..js}`.
    a: Vec<Vec<f64>>,
}

impl CurveTruncation {
    pub fn new(m: usize, s: usize, i: usize, a: Vec<Vec<f64>>) -> Result<Self> {
        if m == 0 {
            return Err(Error::invalid("`m` must be at least 1"));
        }
        if s == 0 {
            return Err(Error::invalid("`s` must be at least 1"));
        }
        if i >= m {
            return Err(Error::invalid(format!("`i` = {i} is not below m = {m}")));
        }
        if a.len() != m - 1 {
            return Err(Error::invalid(format!(
                "`a` has {} rows, expected m − 1 = {}",
                a.len(),
                m - 1
            )));
        }
        for (k, row) in a.iter().enumerate() {
            if row.len() != s {
                return Err(Error::invalid(format!(
                    "`a[{k}]` has {} entries, expected s = {s}",
                    row.len()
                )));
            }
            if row.iter().any(|x| !x.is_finite()) {
                return Err(Error::invalid(format!("`a[{k}]` has a non-finite entry")));
            }
        }
        Ok(CurveTruncation { m, s, i, a })
    }

    /// Curve parametrized by coordinate 0 in the form `(t, x_2(t), …)`.
    pub fn adapted_first(m: usize, s: usize, higher: &[Vec<f64>]) -> Result<Self> {
        let a = higher
            .iter()
            .map(|row| {
                let mut full = vec![0.0];
                full.extend_from_slice(row);
                full
            })
            .collect();
        CurveTruncation::new(m, s, 0, a)
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn s(&self) -> usize {
        self.s
    }

    pub fn i(&self) -> usize {
        self.i
    }

    pub fn rows(&self) -> &[Vec<f64>] {
        &self.a
    }

    fn row_of(&self, j: usize) -> Option<usize> {
        match j.cmp(&self.i) {
            std::cmp::Ordering::Less => Some(j),
            std::cmp::Ordering::Equal => None,
            std::cmp::Ordering::Greater => Some(j - 1),
        }
    }

    /// `a_{jk}` with the parametrizing component reading as `t`.
    pub fn coeff(&self, j: usize, k: usize) -> f64 {
        if k == 0 || k > self.s {
            return 0.0;
        }
        match self.row_of(j) {
            None => f64::from(k == 1),
            Some(r) => self.a[r][k - 1],
        }
    }

    /// Component `j` as a series of order `s`.
    pub fn component(&self, j: usize) -> Series {
        let coeffs = (0..=self.s).map(|k| self.coeff(j, k)).collect();
        Series::from_coeffs(coeffs, self.s)
    }

    /// Linear coefficients `a_{j1}`, `j ≠ i`.
    pub fn linear_coeffs(&self) -> Vec<f64> {
        self.a.iter().map(|row| row[0]).collect()
    }

    pub fn is_adapted(&self) -> bool {
        self.a.iter().all(|row| row[0] == 0.0)
    }

    /// Same curve with coordinates reordered by `perm` (new index of old
    /// coordinate `j` is `perm[j]`).
    pub(crate) fn permuted(&self, perm: &[usize]) -> CurveTruncation {
        let new_i = perm[self.i];
        let mut rows = vec![Vec::new(); self.m - 1];
        for j in (0..self.m).filter(|&j| j != self.i) {
            let nj = perm[j];
            let slot = if nj < new_i { nj } else { nj - 1 };
            rows[slot] = self.a[self.row_of(j).unwrap()].clone();
        }
        CurveTruncation {
            m: self.m,
            s: self.s,
            i: new_i,
            a: rows,
        }
    }
}

/// `ℒ_b: y_i = x_i, y_j = x_j − b_j x_i` for `j ≠ i`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ShearMap {
    m: usize,
    i: usize,
    /// Full-length coefficient vector with `b[i] = 0`.
    b: Vec<f64>,
}

impl ShearMap {
    /// `b` lists `b_j` for `j ≠ i` in increasing `j`.
    pub fn new(m: usize, i: usize, b: Vec<f64>) -> Result<Self> {
        if i >= m {
            return Err(Error::invalid(format!(
                "special coordinate {i} is not below m = {m}"
            )));
        }
        if b.len() + 1 != m {
            return Err(Error::DimensionMismatch {
                what: "shear coefficients",
                expected: m - 1,
                found: b.len(),
            });
        }
        let mut full = b;
        full.insert(i, 0.0);
        Ok(ShearMap { m, i, b: full })
    }

    pub fn identity(m: usize, i: usize) -> Self {
        ShearMap {
            m,
            i,
            b: vec![0.0; m],
        }
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn i(&self) -> usize {
        self.i
    }

    /// `b_j` for `j ≠ i`.
    pub fn coefficients(&self) -> Vec<f64> {
        (0..self.m)
            .filter(|&j| j != self.i)
            .map(|j| self.b[j])
            .collect()
    }

    pub fn is_identity(&self) -> bool {
        self.b.iter().all(|&x| x == 0.0)
    }

    pub fn inverse(&self) -> ShearMap {
        ShearMap {
            m: self.m,
            i: self.i,
            b: self.b.iter().map(|x| -x).collect(),
        }
    }

    /// `self ∘ other`; shears sharing the special coordinate add.
    pub fn compose(&self, other: &ShearMap) -> Result<ShearMap> {
        if self.i != other.i {
            return Err(Error::ShearCoordinateMismatch {
                left: self.i,
                right: other.i,
            });
        }
        if self.m != other.m {
            return Err(Error::DimensionMismatch {
                what: "shear dimension",
                expected: self.m,
                found: other.m,
            });
        }
        Ok(ShearMap {
            m: self.m,
            i: self.i,
            b: self.b.iter().zip(&other.b).map(|(x, y)| x + y).collect(),
        })
    }

    pub fn apply(&self, x: &[f64]) -> Vec<f64> {
        let xi = x[self.i];
        x.iter().zip(&self.b).map(|(xj, bj)| xj - bj * xi).collect()
    }

    pub fn apply_inverse(&self, y: &[f64]) -> Vec<f64> {
        self.inverse().apply(y)
    }

    /// Columns of `ℒ_b⁻¹`: the image of `e_i` is `e_i + Σ b_j e_j`.
    fn inverse_columns(&self) -> Vec<Vec<f64>> {
        (0..self.m)
            .map(|c| {
                if c == self.i {
                    let mut col = self.b.clone();
                    col[self.i] = 1.0;
                    col
                } else {
                    let mut col = vec![0.0; self.m];
                    col[c] = 1.0;
                    col
                }
            })
            .collect()
    }
}

/// `P ∘ ℒ_b⁻¹`.
pub fn pullback_jet(p: &Jet, shear: &ShearMap) -> Result<Jet> {
    if p.n() != shear.m {
        return Err(Error::DimensionMismatch {
            what: "jet variables vs shear dimension",
            expected: shear.m,
            found: p.n(),
        });
    }
    if shear.is_identity() {
        return Ok(p.clone());
    }
    p.substitute(&shear.inverse_columns())
}

/// `ℒ_b ∘ c`, so `y_j(t) = (a_{j1} − b_j) t + Σ_{k≥2} a_{jk} t^k`.
pub fn push_forward(c: &CurveTruncation, shear: &ShearMap) -> Result<CurveTruncation> {
    if c.m != shear.m {
        return Err(Error::DimensionMismatch {
            what: "curve dimension vs shear dimension",
            expected: shear.m,
            found: c.m,
        });
    }
    if c.i != shear.i {
        return Err(Error::ShearCoordinateMismatch {
            left: shear.i,
            right: c.i,
        });
    }
    let mut out = c.clone();
    for j in (0..c.m).filter(|&j| j != c.i) {
        let r = c.row_of(j).unwrap();
        out.a[r][0] -= shear.b[j];
    }
    Ok(out)
}

/// Shear absorbing the linear terms of `c`, with the adapted curve.
pub fn adapt_truncation(c: &CurveTruncation) -> (ShearMap, CurveTruncation) {
    let shear = ShearMap::new(c.m, c.i, c.linear_coeffs()).expect("shape checked by curve");
    let adapted = push_forward(c, &shear).expect("same coordinate");
    (shear, adapted)
}

/// Index `e_b + e_c` (with `b, c ≠ i`).
pub fn varpi_index(m: usize, b: usize, c: usize) -> MultiIndex {
    let mut mu = vec![0u32; m];
    mu[b] += 1;
    mu[c] += 1;
    MultiIndex::new(mu)
}

/// Quadratic coefficients free of the special coordinate, before and after
/// a shear.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct QuadraticInvariants {
    /// Pairs `(b, c)` with `b ≤ c`, both different from the special coordinate.
    pub pairs: Vec<(usize, usize)>,
    pub before: Vec<f64>,
    pub after: Vec<f64>,
}

/// Pairs `(b, c)`, `b ≤ c`, avoiding coordinate `i`.
pub fn varpi_pairs(m: usize, i: usize) -> Vec<(usize, usize)> {
    let others: Vec<usize> = (0..m).filter(|&j| j != i).collect();
    let mut out = Vec::new();
    for (x, &b) in others.iter().enumerate() {
        for &c in &others[x..] {
            out.push((b, c));
        }
    }
    out
}

pub fn quadratic_invariants(p: &Jet, shear: &ShearMap) -> Result<QuadraticInvariants> {
    if shear.m < 2 {
        return Err(Error::invalid("quadratic invariants need m ≥ 2"));
    }
    let q = pullback_jet(p, shear)?;
    let pairs = varpi_pairs(shear.m, shear.i);
    let read = |j: &Jet| {
        pairs
            .iter()
            .map(|&(b, c)| j.coeff(&varpi_index(shear.m, b, c)))
            .collect::<Vec<f64>>()
    };
    Ok(QuadraticInvariants {
        before: read(p),
        after: read(&q),
        pairs,
    })
}
