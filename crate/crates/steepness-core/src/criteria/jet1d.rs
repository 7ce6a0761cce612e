use crate::error::{Error, Result};
use crate::multiindex::factorial;
use crate::optim::{multistart, Domain, PolyMap, SearchConfig};
use crate::poly::{Jet, Poly};
use serde::Serialize;

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SphereOutcome {
    /// No common zero found; `certificate` is the smallest residual norm reached.
    Nondegenerate { certificate: f64, best: Vec<f64> },
    /// Unit vector where all requested forms vanish to tolerance.
    Witness { w: Vec<f64>, residual: f64 },
}

impl SphereOutcome {
    pub fn is_witness(&self) -> bool {
        matches!(self, SphereOutcome::Witness { .. })
    }

    pub fn witness(&self) -> Option<&[f64]> {
        match self {
            SphereOutcome::Witness { w, .. } => Some(w),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Jet1dReport {
    pub s1: usize,
    pub outcome: SphereOutcome,
    /// `h^k[w,…,w]` for `k = 1..s1+1` at the reported point.
    pub forms: Vec<f64>,
    pub iterations: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ThreeJetReport {
    pub report: Jet1dReport,
    /// `(α_1, max α_m)` when the 3-jet is non-degenerate.
    pub index_bounds: Option<(usize, usize)>,
}

/// Flips `w` so its first clearly nonzero entry is positive.
pub(crate) fn canonical_sign(mut w: Vec<f64>) -> Vec<f64> {
    if let Some(first) = w.iter().copied().find(|x| x.abs() > 1e-12) {
        if first < 0.0 {
            w.iter_mut().for_each(|x| *x = -*x);
        }
    }
    w
}

pub(crate) fn require_gradient(q: &Jet) -> Result<Vec<f64>> {
    let g = q.gradient_at_origin();
    if g.iter().all(|&x| x == 0.0) {
        return Err(Error::ZeroGradient);
    }
    Ok(g)
}

/// Sphere search for `w` with `h¹[w] = … = h^{s1+1}[w,…,w] = 0`.
pub fn check_jet_1d(
    q: &Jet,
    s1: usize,
    tol: f64,
    samples: usize,
    seed: u64,
) -> Result<Jet1dReport> {
    if q.n() < 2 {
        return Err(Error::invalid("sphere criteria need n ≥ 2"));
    }
    if s1 == 0 {
        return Err(Error::invalid("`s` must be at least 1"));
    }
    if s1 + 1 > q.r() {
        return Err(Error::OrderTooHigh {
            order: s1 + 1,
            r: q.r(),
        });
    }
    require_gradient(q)?;
    let comps: Vec<Poly> = (1..=s1 + 1)
        .map(|k| q.homogeneous_part(k).scaled(factorial(k)))
        .collect();
    let map = PolyMap::new(comps);
    let best = multistart(
        &map,
        Domain::Sphere { radius: 1.0 },
        &SearchConfig::new(samples, seed),
    );
    let scale = q.max_abs_coeff();
    let residual = best.residual_norm();
    let w = canonical_sign(best.point.clone());
    let forms = (1..=s1 + 1)
        .map(|k| q.form_diagonal(&w, k))
        .collect::<Result<Vec<f64>>>()?;
    let outcome = if residual <= tol * scale {
        SphereOutcome::Witness { w, residual }
    } else {
        SphereOutcome::Nondegenerate {
            certificate: residual,
            best: w,
        }
    };
    Ok(Jet1dReport {
        s1,
        outcome,
        forms,
        iterations: best.iterations,
    })
}

/// The 3-jet test. Jets of degree below 3 are read as 3-jets with zero
/// cubic part.
pub fn check_3jet(q: &Jet, tol: f64, samples: usize, seed: u64) -> Result<ThreeJetReport> {
    let q3 = if q.r() < 3 {
        q.with_degree(3)
    } else {
        q.clone()
    };
    let report = check_jet_1d(&q3, 2, tol, samples, seed)?;
    let index_bounds = (!report.outcome.is_witness()).then_some((2, 3));
    Ok(ThreeJetReport {
        report,
        index_bounds,
    })
}
