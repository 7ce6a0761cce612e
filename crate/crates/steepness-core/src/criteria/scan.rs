use super::jet1d::{check_jet_1d, require_gradient, SphereOutcome};
use crate::error::Result;
use crate::frame::{dot, gram_schmidt, norm, AnisotropicBasis};
use crate::optim::{multistart_with, Domain, ResidualMap, SearchConfig};
use crate::poly::Jet;
use crate::rng::{derive, gaussian_vec};
use crate::vanishing::h_quantities;
use serde::Serialize;

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum WitnessCandidate {
    Direction {
        w: Vec<f64>,
    },
    /// Frame `u_1..u_m` with curve coefficients `a[j−1][k−1] = a_{jk}`.
    Frame {
        frame: Vec<Vec<f64>>,
        a: Vec<Vec<f64>>,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScanEntry {
    pub m: usize,
    pub order: usize,
    /// Smallest residual norm reached.
    pub residual: f64,
    /// Residual below tolerance: finite-order evidence of non-steepness.
    pub suspected: bool,
    pub candidate: WitnessCandidate,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScanReport {
    pub entries: Vec<ScanEntry>,
    /// Budget ran out before every `(m, order)` pair was searched.
    pub partial: bool,
    pub iterations: usize,
}

impl ScanReport {
    pub fn any_suspected(&self) -> bool {
        self.entries.iter().any(|e| e.suspected)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScanConfig {
    pub r_max: usize,
    pub tol: f64,
    /// Cap on total optimizer iterations.
    pub budget: usize,
    pub samples: usize,
    pub seed: u64,
}

/// Orthonormal basis of `g^⊥`, `n − 1` vectors.
pub(crate) fn orthogonal_complement(g: &[f64]) -> Vec<Vec<f64>> {
    let n = g.len();
    let gn = norm(g);
    let ghat: Vec<f64> = g.iter().map(|x| x / gn).collect();
    let mut basis: Vec<Vec<f64>> = vec![ghat];
    for k in 0..n {
        let mut e = vec![0.0; n];
        e[k] = 1.0;
        for b in &basis {
            let c = dot(&e, b);
            e.iter_mut().zip(b).for_each(|(x, y)| *x -= c * y);
        }
        let en = norm(&e);
        if en > 1e-8 {
            basis.push(e.into_iter().map(|x| x / en).collect());
        }
        if basis.len() == n {
            break;
        }
    }
    basis.remove(0);
    basis
}

/// `(Z, a)` ↦ all `𝓗` entries, with `u = GS(N Z)`.
struct FrameMap<'a> {
    q: &'a Jet,
    complement: Vec<Vec<f64>>,
    m: usize,
    s: usize,
}

impl FrameMap<'_> {
    fn n_z(&self) -> usize {
        self.complement.len() * self.m
    }

    fn decode(&self, x: &[f64]) -> Option<(AnisotropicBasis, Vec<Vec<f64>>)> {
        let n = self.q.n();
        let k = self.complement.len();
        let vecs: Vec<Vec<f64>> = (0..self.m)
            .map(|i| {
                let mut u = vec![0.0; n];
                for (c, b) in self.complement.iter().enumerate() {
                    let z = x[i * k + c];
                    u.iter_mut().zip(b).for_each(|(ui, bi)| *ui += z * bi);
                }
                u
            })
            .collect();
        let frame = gram_schmidt(&vecs, 1e-8).ok()?;
        let off = self.n_z();
        let a: Vec<Vec<f64>> = (0..self.m - 1)
            .map(|j| x[off + j * self.s..off + (j + 1) * self.s].to_vec())
            .collect();
        let a1 = a.iter().map(|row| row[0]).collect();
        let basis = AnisotropicBasis::new(frame, a1).ok()?;
        Some((basis, a))
    }
}

impl ResidualMap for FrameMap<'_> {
    fn dim(&self) -> usize {
        self.n_z() + (self.m - 1) * self.s
    }

    fn residuals(&self, x: &[f64]) -> Vec<f64> {
        let count = self.m * self.s;
        let Some((basis, a)) = self.decode(x) else {
            return vec![1e6; count];
        };
        let higher: Vec<Vec<f64>> = a.iter().map(|row| row[1..].to_vec()).collect();
        match h_quantities(self.q, &basis, self.s, &higher) {
            Ok(t) => t.values.into_iter().flatten().collect(),
            Err(_) => vec![1e6; count],
        }
    }
}

/// Seeded witness searches over every subspace dimension and order up to
/// `min(r_max, r − 1)`. Suspected witnesses are finite-order evidence only.
pub fn nonsteep_witness_scan(q: &Jet, cfg: &ScanConfig) -> Result<ScanReport> {
    let g = require_gradient(q)?;
    let n = q.n();
    let max_order = cfg.r_max.min(q.r().saturating_sub(1));
    let scale = q.max_abs_coeff();
    let mut entries = Vec::new();
    let mut iterations = 0;
    let mut partial = false;
    let complement = orthogonal_complement(&g);

    'outer: for m in 1..n {
        for order in 1..=max_order {
            if iterations >= cfg.budget {
                partial = true;
                break 'outer;
            }
            let seed = derive(cfg.seed, (m * 1000 + order) as u64);
            if m == 1 {
                let rep = check_jet_1d(q, order, cfg.tol, cfg.samples, seed)?;
                iterations += rep.iterations;
                let (residual, w) = match rep.outcome {
                    SphereOutcome::Witness { w, residual } => (residual, w),
                    SphereOutcome::Nondegenerate { certificate, best } => (certificate, best),
                };
                entries.push(ScanEntry {
                    m,
                    order,
                    residual,
                    suspected: residual <= cfg.tol * scale,
                    candidate: WitnessCandidate::Direction { w },
                });
                continue;
            }
            let map = FrameMap {
                q,
                complement: complement.clone(),
                m,
                s: order,
            };
            let d = map.dim();
            let nz = map.n_z();
            let search = SearchConfig::new(cfg.samples, seed);
            let best = multistart_with(&map, Domain::Euclidean, &search, |rng| {
                let mut x = gaussian_vec(rng, d);
                x[nz..].iter_mut().for_each(|v| *v *= 0.5);
                x
            });
            iterations += best.iterations;
            let residual = best.residual_norm();
            let candidate = match map.decode(&best.point) {
                Some((basis, a)) => WitnessCandidate::Frame {
                    frame: basis.frame().vectors().to_vec(),
                    a,
                },
                None => WitnessCandidate::Frame {
                    frame: Vec::new(),
                    a: Vec::new(),
                },
            };
            entries.push(ScanEntry {
                m,
                order,
                residual,
                suspected: residual <= cfg.tol * scale,
                candidate,
            });
        }
    }
    Ok(ScanReport {
        entries,
        partial,
        iterations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complement_is_orthonormal() {
        let g = [0.3, -1.0, 2.0, 0.5];
        let c = orthogonal_complement(&g);
        assert_eq!(c.len(), 3);
        for (i, u) in c.iter().enumerate() {
            assert!(dot(u, &g).abs() < 1e-14);
            for (j, v) in c.iter().enumerate() {
                let want = if i == j { 1.0 } else { 0.0 };
                assert!((dot(u, v) - want).abs() < 1e-14);
            }
        }
    }
}
