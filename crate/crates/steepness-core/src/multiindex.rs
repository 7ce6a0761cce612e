//! Multi-indices in graded-lexicographic order.
//!
//! Within one total degree the order is lexicographic with the first entry
//! most significant and larger entries first, so for `n = 2` the degree-2
//! block reads `(2,0), (1,1), (0,2)`. Rank 0 is the zero index.

use serde::{Deserialize, Serialize};
use std::fmt;
use std::ops::Deref;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct MultiIndex(Vec<u32>);

impl MultiIndex {
    pub fn new(entries: Vec<u32>) -> Self {
        MultiIndex(entries)
    }

    pub fn zero(n: usize) -> Self {
        MultiIndex(vec![0; n])
    }

    /// The unit index `e_i`.
    pub fn unit(n: usize, i: usize) -> Self {
        let mut v = vec![0; n];
        v[i] = 1;
        MultiIndex(v)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    /// `|μ|`, the sum of the entries.
    pub fn order(&self) -> usize {
        self.0.iter().map(|&e| e as usize).sum()
    }

    pub fn entries(&self) -> &[u32] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<u32> {
        self.0
    }

    /// `μ!` as a float.
    pub fn factorial(&self) -> f64 {
        self.0.iter().map(|&e| factorial(e as usize)).product()
    }

    pub fn add(&self, other: &MultiIndex) -> MultiIndex {
        MultiIndex(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// `μ − e_i`, or `None` when `μ_i = 0`.
    pub fn lowered(&self, i: usize) -> Option<MultiIndex> {
        if self.0[i] == 0 {
            return None;
        }
        let mut v = self.0.clone();
        v[i] -= 1;
        Some(MultiIndex(v))
    }

    /// Graded-lex rank among all indices of the same dimension.
    pub fn rank(&self) -> u64 {
        rank(&self.0)
    }

    /// Successor in graded-lex order (moves to the next degree when the
    /// current degree block is exhausted).
    pub fn advance(&mut self) {
        next_grlex(&mut self.0)
    }
}

impl Deref for MultiIndex {
    type Target = [u32];
    fn deref(&self) -> &[u32] {
        &self.0
    }
}

impl From<Vec<u32>> for MultiIndex {
    fn from(v: Vec<u32>) -> Self {
        MultiIndex(v)
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, e) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, ")")
    }
}

pub fn factorial(k: usize) -> f64 {
    (2..=k).map(|i| i as f64).product()
}

/// Exact binomial coefficient, saturating at `u64::MAX`.
pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
        if acc > u64::MAX as u128 {
            return u64::MAX;
        }
    }
    acc as u64
}

/// Multinomial coefficient `total! / Π parts!` for parts summing to `total`.
pub fn multinomial(parts: &[u32]) -> f64 {
    let mut acc = 1.0;
    let mut running = 0u64;
    for &p in parts {
        running += p as u64;
        acc *= binomial(running, p as u64) as f64;
    }
    acc
}

/// Number of monomials of degree exactly `d` in `n` variables.
pub fn count_of_degree(n: usize, d: usize) -> u64 {
    if n == 0 {
        return u64::from(d == 0);
    }
    binomial((d + n - 1) as u64, (n - 1) as u64)
}

/// Number of monomials of degree at most `d` in `n` variables, `C(n+d, n)`.
pub fn count_up_to(n: usize, d: usize) -> u64 {
    binomial((n + d) as u64, n as u64)
}

pub fn rank(mu: &[u32]) -> u64 {
    let n = mu.len();
    let d: usize = mu.iter().map(|&e| e as usize).sum();
    if d == 0 {
        return 0;
    }
    let mut pos = count_up_to(n, d - 1);
    let mut rem = d;
    for i in 0..n.saturating_sub(1) {
        let mi = mu[i] as usize;
        for v in (mi + 1)..=rem {
            pos += count_of_degree(n - i - 1, rem - v);
        }
        rem -= mi;
    }
    pos
}

pub fn unrank(n: usize, mut pos: u64) -> MultiIndex {
    let mut d = 0;
    while count_up_to(n, d) <= pos {
        d += 1;
    }
    if d > 0 {
        pos -= count_up_to(n, d - 1);
    }
    let mut mu = vec![0u32; n];
    let mut rem = d;
    for i in 0..n.saturating_sub(1) {
        let mut v = rem;
        loop {
            let c = count_of_degree(n - i - 1, rem - v);
            if pos < c {
                break;
            }
            pos -= c;
            v -= 1;
        }
        mu[i] = v as u32;
        rem -= v;
    }
    if n > 0 {
        mu[n - 1] = rem as u32;
    }
    MultiIndex(mu)
}

fn next_grlex(mu: &mut [u32]) {
    let n = mu.len();
    if n == 0 {
        return;
    }
    let tail = mu[n - 1];
    mu[n - 1] = 0;
    match (0..n - 1).rev().find(|&j| mu[j] > 0) {
        Some(j) => {
            mu[j] -= 1;
            mu[j + 1] = tail + 1;
        }
        None => {
            // `mu` now holds only the zero index plus the removed tail.
            let d: u32 = mu.iter().sum::<u32>() + tail;
            mu.iter_mut().for_each(|e| *e = 0);
            mu[0] = d + 1;
        }
    }
}

/// All `μ` with `1 ≤ |μ| ≤ r`, in graded-lex order.
pub fn enumerate_multiindices(n: usize, r: usize) -> Vec<MultiIndex> {
    let mut out = Vec::with_capacity(count_up_to(n, r).saturating_sub(1) as usize);
    if n == 0 || r == 0 {
        return out;
    }
    let mut mu = MultiIndex::unit(n, 0);
    while mu.order() <= r {
        out.push(mu.clone());
        mu.advance();
    }
    out
}

/// All `μ` with `|μ| = d`, in graded-lex order.
pub fn indices_of_degree(n: usize, d: usize) -> Vec<MultiIndex> {
    let mut out = Vec::with_capacity(count_of_degree(n, d) as usize);
    if n == 0 {
        return out;
    }
    let mut v = vec![0u32; n];
    v[0] = d as u32;
    let mut mu = MultiIndex(v);
    for _ in 0..count_of_degree(n, d) {
        out.push(mu.clone());
        mu.advance();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts_match_stars_and_bars() {
        assert_eq!(enumerate_multiindices(2, 3).len(), 9);
        assert_eq!(enumerate_multiindices(3, 2).len(), 9);
        let one = enumerate_multiindices(1, 4);
        let flat: Vec<Vec<u32>> = one.into_iter().map(|m| m.into_vec()).collect();
        assert_eq!(flat, vec![vec![1], vec![2], vec![3], vec![4]]);
    }

    #[test]
    fn first_block_is_linear() {
        let idx = enumerate_multiindices(3, 2);
        assert!(idx[..3].iter().all(|m| m.order() == 1));
        assert_eq!(idx[3].entries(), &[2, 0, 0]);
        assert_eq!(idx[8].entries(), &[0, 0, 2]);
    }

    #[test]
    fn rank_matches_position() {
        for n in 1..5 {
            for (k, mu) in enumerate_multiindices(n, 5).iter().enumerate() {
                assert_eq!(mu.rank(), k as u64 + 1);
                assert_eq!(&unrank(n, k as u64 + 1), mu);
            }
            assert_eq!(unrank(n, 0), MultiIndex::zero(n));
        }
    }

    #[test]
    fn multinomial_small() {
        assert_eq!(multinomial(&[2, 1]), 3.0);
        assert_eq!(multinomial(&[1, 1, 1]), 6.0);
        assert_eq!(multinomial(&[]), 1.0);
        assert_eq!(multinomial(&[0, 3]), 1.0);
    }
}
