//! Truncated real polynomials and jets.
//!
//! [`Poly`] is a general polynomial of degree at most `r` (constant term
//! allowed); gradients live there. [`Jet`] wraps a `Poly` whose constant
//! term is zero.

use crate::error::{Error, Result};
use crate::frame::Frame;
use crate::multiindex::{count_up_to, rank, unrank, MultiIndex};
use std::collections::BTreeMap;
use std::ops::Deref;

/// Above this many coefficients the table is stored sparsely.
pub const DENSE_LIMIT: u64 = 1_000_000;

#[derive(Debug, Clone, PartialEq)]
enum Storage {
    Dense(Vec<f64>),
    Sparse(BTreeMap<u64, f64>),
}

#[derive(Debug, Clone, PartialEq)]
pub struct Poly {
    n: usize,
    r: usize,
    store: Storage,
}

impl Poly {
    pub fn zeros(n: usize, r: usize) -> Poly {
        let size = count_up_to(n, r);
        let store = if size <= DENSE_LIMIT {
            Storage::Dense(vec![0.0; size as usize])
        } else {
            Storage::Sparse(BTreeMap::new())
        };
        Poly { n, r, store }
    }

    pub fn constant_poly(n: usize, c: f64) -> Poly {
        let mut p = Poly::zeros(n, 0);
        p.set(&vec![0; n], c);
        p
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn is_dense(&self) -> bool {
        matches!(self.store, Storage::Dense(_))
    }

    fn get_rank(&self, k: u64) -> f64 {
        match &self.store {
            Storage::Dense(v) => v.get(k as usize).copied().unwrap_or(0.0),
            Storage::Sparse(m) => m.get(&k).copied().unwrap_or(0.0),
        }
    }

    fn add_rank(&mut self, k: u64, c: f64) {
        match &mut self.store {
            Storage::Dense(v) => v[k as usize] += c,
            Storage::Sparse(m) => {
                let e = m.entry(k).or_insert(0.0);
                *e += c;
                if *e == 0.0 {
                    m.remove(&k);
                }
            }
        }
    }

    fn set_rank(&mut self, k: u64, c: f64) {
        match &mut self.store {
            Storage::Dense(v) => v[k as usize] = c,
            Storage::Sparse(m) => {
                if c == 0.0 {
                    m.remove(&k);
                } else {
                    m.insert(k, c);
                }
            }
        }
    }

    /// Coefficient of `x^μ`; zero when `|μ| > r`.
    pub fn coeff(&self, mu: &[u32]) -> f64 {
        debug_assert_eq!(mu.len(), self.n);
        let d: usize = mu.iter().map(|&e| e as usize).sum();
        if d > self.r {
            return 0.0;
        }
        self.get_rank(rank(mu))
    }

    /// Panics if `|μ| > r`.
    pub fn set(&mut self, mu: &[u32], c: f64) {
        assert_eq!(mu.len(), self.n, "multi-index length");
        let d: usize = mu.iter().map(|&e| e as usize).sum();
        assert!(
            d <= self.r,
            "multi-index {mu:?} above degree bound {}",
            self.r
        );
        self.set_rank(rank(mu), c);
    }

    /// Adds `c` to the coefficient of `x^μ`, silently dropping `|μ| > r`.
    pub fn add_term(&mut self, mu: &[u32], c: f64) {
        let d: usize = mu.iter().map(|&e| e as usize).sum();
        if d <= self.r {
            self.add_rank(rank(mu), c);
        }
    }

    pub fn constant(&self) -> f64 {
        self.get_rank(0)
    }

    /// Nonzero terms in graded-lex order.
    pub fn terms(&self) -> Vec<(MultiIndex, f64)> {
        let mut out = Vec::new();
        match &self.store {
            Storage::Dense(v) => {
                let mut mu = MultiIndex::zero(self.n);
                for (k, &c) in v.iter().enumerate() {
                    if c != 0.0 {
                        out.push((mu.clone(), c));
                    }
                    if k + 1 < v.len() {
                        if k == 0 {
                            mu = MultiIndex::unit(self.n, 0);
                        } else {
                            mu.advance();
                        }
                    }
                }
            }
            Storage::Sparse(m) => {
                for (&k, &c) in m {
                    out.push((unrank(self.n, k), c));
                }
            }
        }
        out
    }

    pub fn max_abs_coeff(&self) -> f64 {
        match &self.store {
            Storage::Dense(v) => v.iter().fold(0.0, |a, c| a.max(c.abs())),
            Storage::Sparse(m) => m.values().fold(0.0, |a, c| a.max(c.abs())),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.max_abs_coeff() == 0.0
    }

    pub fn eval(&self, x: &[f64]) -> Result<f64> {
        if x.len() != self.n {
            return Err(Error::DimensionMismatch {
                what: "evaluation point",
                expected: self.n,
                found: x.len(),
            });
        }
        let pows: Vec<Vec<f64>> = x
            .iter()
            .map(|&xi| {
                let mut p = Vec::with_capacity(self.r + 1);
                let mut acc = 1.0;
                for _ in 0..=self.r {
                    p.push(acc);
                    acc *= xi;
                }
                p
            })
            .collect();
        Ok(self
            .terms()
            .iter()
            .map(|(mu, c)| {
                c * mu
                    .iter()
                    .enumerate()
                    .map(|(i, &e)| pows[i][e as usize])
                    .product::<f64>()
            })
            .sum())
    }

    /// `∂/∂x_l`, of degree bound `r − 1`.
    pub fn partial(&self, l: usize) -> Poly {
        let mut out = Poly::zeros(self.n, self.r.saturating_sub(1));
        for (mu, c) in self.terms() {
            if let Some(low) = mu.lowered(l) {
                out.add_term(&low, c * mu[l] as f64);
            }
        }
        out
    }

    pub fn gradient(&self) -> Vec<Poly> {
        (0..self.n).map(|l| self.partial(l)).collect()
    }

    /// Degree-`d` homogeneous part, with the same degree bound.
    pub fn homogeneous_part(&self, d: usize) -> Poly {
        let mut out = Poly::zeros(self.n, self.r);
        for (mu, c) in self.terms() {
            if mu.order() == d {
                out.set(&mu, c);
            }
        }
        out
    }

    /// Copy with a new degree bound; terms above it are dropped.
    pub fn with_degree(&self, r: usize) -> Poly {
        let mut out = Poly::zeros(self.n, r);
        for (mu, c) in self.terms() {
            out.add_term(&mu, c);
        }
        out
    }

    pub fn scaled(&self, s: f64) -> Poly {
        let mut out = self.clone();
        match &mut out.store {
            Storage::Dense(v) => v.iter_mut().for_each(|c| *c *= s),
            Storage::Sparse(m) => {
                m.values_mut().for_each(|c| *c *= s);
                m.retain(|_, c| *c != 0.0);
            }
        }
        out
    }

    /// `self + s·other`, keeping `self`'s degree bound.
    pub fn add_scaled(&mut self, other: &Poly, s: f64) {
        assert_eq!(self.n, other.n);
        for (mu, c) in other.terms() {
            self.add_term(&mu, s * c);
        }
    }

    /// Product truncated at degree `r`.
    pub fn mul_truncated(&self, other: &Poly, r: usize) -> Poly {
        assert_eq!(self.n, other.n);
        let mut out = Poly::zeros(self.n, r);
        let a = self.terms();
        let b = other.terms();
        for (ma, ca) in &a {
            let da = ma.order();
            if da > r {
                continue;
            }
            for (mb, cb) in &b {
                if da + mb.order() <= r {
                    out.add_rank(rank(&ma.add(mb)), ca * cb);
                }
            }
        }
        out
    }

    /// Composition `y ↦ self(Σ_i y_i cols[i])`, an `m = cols.len()`
    /// variable polynomial of the same degree bound.
    pub fn substitute_linear(&self, cols: &[Vec<f64>]) -> Result<Poly> {
        let m = cols.len();
        for c in cols {
            if c.len() != self.n {
                return Err(Error::DimensionMismatch {
                    what: "substitution vector",
                    expected: self.n,
                    found: c.len(),
                });
            }
        }
        let r = self.r;
        // pows[k][e] = (x_k as a linear form in y)^e
        let mut pows: Vec<Vec<Poly>> = Vec::with_capacity(self.n);
        for k in 0..self.n {
            let mut lin = Poly::zeros(m, r.max(1));
            for (i, col) in cols.iter().enumerate() {
                if col[k] != 0.0 {
                    lin.set(&MultiIndex::unit(m, i), col[k]);
                }
            }
            let mut row = vec![Poly::constant_poly(m, 1.0).with_degree(r)];
            for e in 1..=r {
                let next = row[e - 1].mul_truncated(&lin, r);
                row.push(next);
            }
            pows.push(row);
        }
        let mut out = Poly::zeros(m, r);
        for (mu, c) in self.terms() {
            let mut prod = Poly::constant_poly(m, c).with_degree(r);
            for (k, &e) in mu.iter().enumerate() {
                if e > 0 {
                    prod = prod.mul_truncated(&pows[k][e as usize], r);
                }
            }
            out.add_scaled(&prod, 1.0);
        }
        Ok(out)
    }
}

/// A polynomial in `n ≥ 1` variables with degree at most `r ≥ 1` and zero
/// constant term.
#[derive(Debug, Clone, PartialEq)]
pub struct Jet(Poly);

impl Jet {
    pub fn zeros(n: usize, r: usize) -> Result<Jet> {
        if n == 0 {
            return Err(Error::invalid("`n` must be at least 1"));
        }
        if r == 0 {
            return Err(Error::invalid("`r` must be at least 1"));
        }
        Ok(Jet(Poly::zeros(n, r)))
    }

    /// Builds a jet from `(μ, c)` pairs. Rejects duplicates, constant terms,
    /// wrong lengths and `|μ| > r`.
    pub fn from_terms<I>(n: usize, r: usize, terms: I) -> Result<Jet>
    where
        I: IntoIterator<Item = (Vec<u32>, f64)>,
    {
        let mut p = Jet::zeros(n, r)?;
        let mut seen = std::collections::HashSet::new();
        for (k, (mu, c)) in terms.into_iter().enumerate() {
            if mu.len() != n {
                return Err(Error::invalid(format!(
                    "terms[{k}].mu has length {}, expected {n}",
                    mu.len()
                )));
            }
            let d: usize = mu.iter().map(|&e| e as usize).sum();
            if d == 0 {
                return Err(Error::invalid(format!(
                    "terms[{k}].mu is the zero index; jets have no constant term"
                )));
            }
            if d > r {
                return Err(Error::invalid(format!(
                    "terms[{k}].mu has order {d} above r = {r}"
                )));
            }
            if !c.is_finite() {
                return Err(Error::invalid(format!("terms[{k}].c is not finite")));
            }
            if !seen.insert(mu.clone()) {
                return Err(Error::invalid(format!(
                    "terms[{k}].mu duplicates an earlier multi-index {mu:?}"
                )));
            }
            p.0.set(&mu, c);
        }
        Ok(p)
    }

    /// Wraps a polynomial whose constant term is zero.
    pub fn from_poly(p: Poly) -> Result<Jet> {
        if p.n() == 0 || p.r() == 0 {
            return Err(Error::invalid("jets need n ≥ 1 and r ≥ 1"));
        }
        if p.constant() != 0.0 {
            return Err(Error::invalid("jets have no constant term"));
        }
        Ok(Jet(p))
    }

    /// Drops the constant term of `p`.
    pub(crate) fn from_poly_dropping_constant(mut p: Poly) -> Jet {
        p.set_rank(0, 0.0);
        Jet(p)
    }

    pub fn poly(&self) -> &Poly {
        &self.0
    }

    pub fn into_poly(self) -> Poly {
        self.0
    }

    /// Panics on the zero index or `|μ| > r`.
    pub fn set(&mut self, mu: &[u32], c: f64) {
        assert!(mu.iter().any(|&e| e > 0), "jets have no constant term");
        self.0.set(mu, c);
    }

    pub fn eval_jet(&self, x: &[f64]) -> Result<f64> {
        self.0.eval(x)
    }

    /// Component `l` carries `μ_l p_μ` at `μ − e_l`; linear terms become
    /// degree-0 entries.
    pub fn gradient_jet(&self) -> Vec<Poly> {
        self.0.gradient()
    }

    /// `∇q(0)`, the linear coefficients.
    pub fn gradient_at_origin(&self) -> Vec<f64> {
        (0..self.n())
            .map(|i| self.coeff(&MultiIndex::unit(self.n(), i)))
            .collect()
    }

    pub fn with_degree(&self, r: usize) -> Jet {
        Jet(self.0.with_degree(r.max(1)))
    }

    pub fn scaled(&self, s: f64) -> Jet {
        Jet(self.0.scaled(s))
    }

    /// `h^k[w_1^{m_1}, …]` where `k = Σ m_i`: the full contraction of the
    /// order-`k` symmetric derivative tensor at the origin.
    pub fn multilinear_form(&self, args: &[(&[f64], usize)]) -> Result<f64> {
        let order: usize = args.iter().map(|a| a.1).sum();
        if order > self.r() {
            return Err(Error::OrderTooHigh { order, r: self.r() });
        }
        if order == 0 {
            return Ok(0.0);
        }
        let n = self.n();
        let mut prod = Poly::constant_poly(n, 1.0).with_degree(order);
        for (w, mult) in args {
            if w.len() != n {
                return Err(Error::DimensionMismatch {
                    what: "multilinear argument",
                    expected: n,
                    found: w.len(),
                });
            }
            if *mult == 0 {
                continue;
            }
            let mut lin = Poly::zeros(n, order);
            for (i, &wi) in w.iter().enumerate() {
                if wi != 0.0 {
                    lin.set(&MultiIndex::unit(n, i), wi);
                }
            }
            for _ in 0..*mult {
                prod = prod.mul_truncated(&lin, order);
            }
        }
        Ok(prod
            .terms()
            .iter()
            .map(|(mu, c)| c * mu.factorial() * self.coeff(mu))
            .sum())
    }

    /// `h^k[w, …, w]`.
    pub fn form_diagonal(&self, w: &[f64], k: usize) -> Result<f64> {
        self.multilinear_form(&[(w, k)])
    }

    /// Jet of `x ↦ q(Σ x_i u_i)` for the vectors of `frame`.
    pub fn restrict_jet(&self, frame: &Frame) -> Result<Jet> {
        if frame.n() != self.n() {
            return Err(Error::DimensionMismatch {
                what: "frame ambient dimension",
                expected: self.n(),
                found: frame.n(),
            });
        }
        self.substitute(frame.vectors())
    }

    /// Jet of `y ↦ q(Σ y_i cols[i])` for arbitrary vectors.
    pub fn substitute(&self, cols: &[Vec<f64>]) -> Result<Jet> {
        if cols.is_empty() {
            return Err(Error::invalid("substitution needs at least one vector"));
        }
        let p = self.0.substitute_linear(cols)?;
        Ok(Jet::from_poly_dropping_constant(p))
    }
}

impl Deref for Jet {
    type Target = Poly;
    fn deref(&self) -> &Poly {
        &self.0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn example_h() -> Jet {
        // (I1 + I2)^2 / 2 + I3
        Jet::from_terms(
            3,
            3,
            vec![
                (vec![2, 0, 0], 0.5),
                (vec![1, 1, 0], 1.0),
                (vec![0, 2, 0], 0.5),
                (vec![0, 0, 1], 1.0),
            ],
        )
        .unwrap()
    }

    #[test]
    fn eval_examples() {
        assert_eq!(example_h().eval_jet(&[1.0, 1.0, 0.0]).unwrap(), 2.0);
        assert_eq!(example_h().eval_jet(&[0.0, 0.0, 0.0]).unwrap(), 0.0);
        let j = Jet::from_terms(2, 3, vec![(vec![1, 2], 3.0)]).unwrap();
        assert_eq!(j.eval_jet(&[2.0, 1.0]).unwrap(), 6.0);
        assert!(j.eval_jet(&[1.0]).is_err());
    }

    #[test]
    fn gradient_examples() {
        let j = Jet::from_terms(2, 2, vec![(vec![2, 0], 1.0)]).unwrap();
        let g = j.gradient_jet();
        assert_eq!(g[0].terms(), vec![(MultiIndex::new(vec![1, 0]), 2.0)]);
        let j = Jet::from_terms(2, 3, vec![(vec![1, 2], 1.0)]).unwrap();
        let g = j.gradient_jet();
        assert_eq!(g[1].terms(), vec![(MultiIndex::new(vec![1, 1]), 2.0)]);
        let g = example_h().gradient_jet();
        let at0: Vec<f64> = g.iter().map(|p| p.constant()).collect();
        assert_eq!(at0, vec![0.0, 0.0, 1.0]);
    }

    #[test]
    fn multilinear_examples() {
        let h = example_h();
        let eps = 0.5;
        let w = [1.0 + eps, -1.0, 0.0];
        assert!((h.form_diagonal(&w, 2).unwrap() - eps * eps).abs() < 1e-15);
        assert_eq!(h.form_diagonal(&[1.0, -1.0, 0.0], 2).unwrap(), 0.0);
        let cube = Jet::from_terms(1, 3, vec![(vec![3], 1.0)]).unwrap();
        assert_eq!(cube.form_diagonal(&[1.0], 3).unwrap(), 6.0);
        assert!(matches!(
            cube.form_diagonal(&[1.0], 4),
            Err(Error::OrderTooHigh { order: 4, r: 3 })
        ));
    }

    #[test]
    fn rejects_bad_terms() {
        assert!(Jet::from_terms(2, 2, vec![(vec![0, 0], 1.0)]).is_err());
        assert!(Jet::from_terms(2, 2, vec![(vec![1, 0], 1.0), (vec![1, 0], 2.0)]).is_err());
        assert!(Jet::from_terms(2, 2, vec![(vec![3, 0], 1.0)]).is_err());
        assert!(Jet::from_terms(2, 2, vec![(vec![1], 1.0)]).is_err());
    }

    #[test]
    fn sparse_storage_round_trip() {
        // C(40+6, 6) is above the dense limit.
        let mut p = Poly::zeros(40, 6);
        assert!(!p.is_dense());
        let mut mu = vec![0u32; 40];
        mu[3] = 2;
        mu[39] = 1;
        p.set(&mu, 1.5);
        let mut x = vec![0.0; 40];
        x[3] = 2.0;
        x[39] = 3.0;
        assert_eq!(p.eval(&x).unwrap(), 18.0);
        let g = p.partial(3);
        assert_eq!(g.eval(&x).unwrap(), 18.0);
    }
}
