//! Sphere minima of the restricted gradient and steepness index estimates.

use crate::criteria::{index_bounds, require_orthogonal};
use crate::error::{Error, Result};
use crate::frame::{norm, Frame};
use crate::optim::{multistart, Domain, PolyMap, SearchConfig};
use crate::poly::Jet;
use crate::rng::derive;
use rayon::prelude::*;
use serde::Serialize;

pub const DEFAULT_STARTS: usize = 64;
pub const DEFAULT_GRID_POINTS: usize = 24;
/// Profile values at or below this multiple of the jet scale count as zero.
pub const NONSTEEP_REL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ThalwegSample {
    pub eta: f64,
    pub argmin: Vec<f64>,
    /// `min ‖∇p‖₂` on the sphere of radius `eta`.
    pub value: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ProfilePoint {
    pub xi: f64,
    pub maxmin: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SteepnessEstimate {
    pub index_hat: f64,
    pub coeff_hat: f64,
    /// `(ξ_min, ξ_max)` of the fitted range.
    pub delta: (f64, f64),
    pub fit_r2: f64,
    pub maxmin_curve: Vec<ProfilePoint>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum IndexFit {
    Estimate(SteepnessEstimate),
    /// The profile vanishes up to `xi`.
    NonSteepEvidence {
        xi: f64,
        maxmin_curve: Vec<ProfilePoint>,
    },
}

impl IndexFit {
    pub fn is_nonsteep(&self) -> bool {
        matches!(self, IndexFit::NonSteepEvidence { .. })
    }

    pub fn estimate(&self) -> Option<&SteepnessEstimate> {
        match self {
            IndexFit::Estimate(e) => Some(e),
            _ => None,
        }
    }

    pub fn maxmin_curve(&self) -> &[ProfilePoint] {
        match self {
            IndexFit::Estimate(e) => &e.maxmin_curve,
            IndexFit::NonSteepEvidence { maxmin_curve, .. } => maxmin_curve,
        }
    }
}

/// `points` radii from `xi_max/10³` to `xi_max`, evenly spaced in log scale.
pub fn geometric_grid(xi_max: f64, points: usize) -> Vec<f64> {
    if points == 1 {
        return vec![xi_max];
    }
    let lo = (xi_max / 1e3).ln();
    let hi = xi_max.ln();
    (0..points)
        .map(|k| (lo + (hi - lo) * k as f64 / (points - 1) as f64).exp())
        .collect()
}

pub fn sphere_min(p: &Jet, eta: f64, samples: usize, seed: u64) -> Result<ThalwegSample> {
    if !(eta > 0.0 && eta.is_finite()) {
        return Err(Error::invalid(format!("`eta` must be positive, got {eta}")));
    }
    let map = PolyMap::new(p.gradient_jet());
    let best = multistart(
        &map,
        Domain::Sphere { radius: eta },
        &SearchConfig::new(samples, seed),
    );
    let g: Vec<f64> = p
        .gradient_jet()
        .iter()
        .map(|c| c.eval(&best.point))
        .collect::<Result<_>>()?;
    Ok(ThalwegSample {
        eta,
        argmin: best.point,
        value: norm(&g),
    })
}

/// Sphere minima on each radius, in grid order.
pub fn thalweg_samples(
    p: &Jet,
    grid: &[f64],
    samples: usize,
    seed: u64,
) -> Result<Vec<ThalwegSample>> {
    check_grid(grid)?;
    grid.par_iter()
        .enumerate()
        .map(|(k, &eta)| sphere_min(p, eta, samples, derive(seed, k as u64)))
        .collect()
}

fn check_grid(grid: &[f64]) -> Result<()> {
    if grid.is_empty() {
        return Err(Error::invalid("radius grid is empty"));
    }
    if !grid.iter().all(|x| *x > 0.0 && x.is_finite()) || grid.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::invalid(
            "radius grid must be positive and increasing",
        ));
    }
    Ok(())
}

/// Running maximum of the sphere minima over the grid.
pub fn maxmin_profile(
    p: &Jet,
    grid: &[f64],
    samples: usize,
    seed: u64,
) -> Result<Vec<ProfilePoint>> {
    Ok(running_max(&thalweg_samples(p, grid, samples, seed)?))
}

pub fn running_max(samples: &[ThalwegSample]) -> Vec<ProfilePoint> {
    let mut best = 0.0f64;
    samples
        .iter()
        .map(|s| {
            best = best.max(s.value);
            ProfilePoint {
                xi: s.eta,
                maxmin: best,
            }
        })
        .collect()
}

/// Log–log least squares `log maxmin ≈ index·log ξ + log coeff`.
/// Values at or below `NONSTEEP_REL·scale` give `NonSteepEvidence`.
pub fn fit_index(profile: &[ProfilePoint], scale: f64) -> Result<IndexFit> {
    if profile.is_empty() {
        return Err(Error::invalid("empty profile"));
    }
    let floor = NONSTEEP_REL * scale;
    if let Some(last_zero) = profile.iter().rev().find(|p| p.maxmin <= floor) {
        return Ok(IndexFit::NonSteepEvidence {
            xi: last_zero.xi,
            maxmin_curve: profile.to_vec(),
        });
    }
    if profile.len() < 2 {
        return Err(Error::invalid("fitting needs at least 2 profile points"));
    }
    let xs: Vec<f64> = profile.iter().map(|p| p.xi.ln()).collect();
    let ys: Vec<f64> = profile.iter().map(|p| p.maxmin.ln()).collect();
    let k = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / k;
    let my = ys.iter().sum::<f64>() / k;
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let syy: f64 = ys.iter().map(|y| (y - my).powi(2)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let fit_r2 = if syy == 0.0 {
        1.0
    } else {
        (sxy * sxy) / (sxx * syy)
    };
    Ok(IndexFit::Estimate(SteepnessEstimate {
        index_hat: slope,
        coeff_hat: intercept.exp(),
        delta: (profile[0].xi, profile[profile.len() - 1].xi),
        fit_r2,
        maxmin_curve: profile.to_vec(),
    }))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProbeConfig {
    pub xi_max: f64,
    pub points: usize,
    pub samples: usize,
    pub seed: u64,
    /// Orthogonality tolerance for the frame against `∇q(0)`.
    pub tol: f64,
    /// Vanishing order for the index bound comparison.
    pub s: Option<usize>,
}

impl ProbeConfig {
    pub fn new(xi_max: f64, seed: u64) -> Self {
        Self {
            xi_max,
            points: DEFAULT_GRID_POINTS,
            samples: DEFAULT_STARTS,
            seed,
            tol: 1e-8,
            s: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ProbeReport {
    pub m: usize,
    pub fit: IndexFit,
    pub index_bound: Option<i64>,
    pub within_bound: Option<bool>,
}

/// Restricts `q` to the frame's span and estimates the steepness index there.
pub fn probe_point(q: &Jet, f: &Frame, cfg: &ProbeConfig) -> Result<ProbeReport> {
    if !(cfg.xi_max > 0.0 && cfg.xi_max.is_finite()) {
        return Err(Error::invalid("`xi_max` must be positive"));
    }
    if cfg.points == 0 {
        return Err(Error::invalid("grid needs at least one point"));
    }
    require_orthogonal(q, f, cfg.tol)?;
    let p = q.restrict_jet(f)?;
    let grid = geometric_grid(cfg.xi_max, cfg.points);
    let profile = maxmin_profile(&p, &grid, cfg.samples, cfg.seed)?;
    let fit = fit_index(&profile, q.max_abs_coeff())?;
    let index_bound = cfg.s.map(|s| index_bounds(f.m(), s as i64));
    let within_bound = match (&fit, index_bound) {
        (IndexFit::Estimate(e), Some(b)) => Some(e.index_hat <= b as f64 + 0.05),
        _ => None,
    };
    Ok(ProbeReport {
        m: f.m(),
        fit,
        index_bound,
        within_bound,
    })
}
