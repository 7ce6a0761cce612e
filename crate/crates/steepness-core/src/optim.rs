//! Multi-start least squares on a sphere or on `ℝ^d`.
//!
//! Each start runs projected gradient descent with step halving, then a
//! Gauss–Newton polish using a truncated pseudo-inverse. The polish matters for degenerate zeros such
//! as `F(w) = (w_1 + w_2)^2`, where plain descent stalls far from the root.

use crate::poly::Poly;
use crate::rng::{sphere_point, stream, StreamRng};
use nalgebra::{DMatrix, DVector};
use rayon::prelude::*;

/// A vector-valued map whose squared norm is minimized.
pub trait ResidualMap: Sync {
    fn dim(&self) -> usize;
    fn residuals(&self, x: &[f64]) -> Vec<f64>;

    /// Rows are residuals, columns are variables. Central differences by
    /// default.
    fn jacobian(&self, x: &[f64]) -> DMatrix<f64> {
        let d = self.dim();
        let f0 = self.residuals(x);
        let mut jac = DMatrix::zeros(f0.len(), d);
        let mut xp = x.to_vec();
        for k in 0..d {
            let h = 1e-6 * x[k].abs().max(1.0);
            xp[k] = x[k] + h;
            let fp = self.residuals(&xp);
            xp[k] = x[k] - h;
            let fm = self.residuals(&xp);
            xp[k] = x[k];
            for r in 0..f0.len() {
                jac[(r, k)] = (fp[r] - fm[r]) / (2.0 * h);
            }
        }
        jac
    }
}

/// Residuals given by polynomials, with exact Jacobians.
pub struct PolyMap {
    dim: usize,
    comps: Vec<Poly>,
    grads: Vec<Vec<Poly>>,
}

impl PolyMap {
    pub fn new(comps: Vec<Poly>) -> Self {
        let dim = comps.first().map_or(0, |p| p.n());
        let grads = comps.iter().map(|p| p.gradient()).collect();
        PolyMap { dim, comps, grads }
    }
}

impl ResidualMap for PolyMap {
    fn dim(&self) -> usize {
        self.dim
    }

    fn residuals(&self, x: &[f64]) -> Vec<f64> {
        self.comps
            .iter()
            .map(|p| p.eval(x).expect("dimension fixed"))
            .collect()
    }

    fn jacobian(&self, x: &[f64]) -> DMatrix<f64> {
        let mut jac = DMatrix::zeros(self.comps.len(), self.dim);
        for (r, g) in self.grads.iter().enumerate() {
            for (k, gk) in g.iter().enumerate() {
                jac[(r, k)] = gk.eval(x).expect("dimension fixed");
            }
        }
        jac
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Domain {
    Sphere { radius: f64 },
    Euclidean,
}

impl Domain {
    /// Returns `false` when `x` cannot be projected (the origin, for spheres).
    fn project(&self, x: &mut [f64]) -> bool {
        if let Domain::Sphere { radius } = *self {
            let n = norm(x);
            if !(n > 0.0 && n.is_finite()) {
                return false;
            }
            x.iter_mut().for_each(|v| *v *= radius / n);
        }
        true
    }

    fn length_scale(&self, x: &[f64]) -> f64 {
        match *self {
            Domain::Sphere { radius } => radius,
            Domain::Euclidean => norm(x).max(1.0),
        }
    }

    /// Removes the normal component on the sphere.
    fn tangent(&self, x: &[f64], g: &mut [f64]) {
        if let Domain::Sphere { .. } = self {
            let xx = dot(x, x);
            if xx > 0.0 {
                let c = dot(g, x) / xx;
                g.iter_mut().zip(x).for_each(|(gi, xi)| *gi -= c * xi);
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SearchConfig {
    pub starts: usize,
    pub descent_iters: usize,
    pub polish_iters: usize,
    pub seed: u64,
}

impl SearchConfig {
    pub fn new(starts: usize, seed: u64) -> Self {
        SearchConfig {
            starts: starts.max(1),
            descent_iters: 200,
            polish_iters: 100,
            seed,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Candidate {
    pub point: Vec<f64>,
    /// `‖F(point)‖²`.
    pub value: f64,
    pub start: usize,
    /// Iterations spent across all starts.
    pub iterations: usize,
}

impl Candidate {
    pub fn residual_norm(&self) -> f64 {
        self.value.sqrt()
    }
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

fn objective<M: ResidualMap + ?Sized>(map: &M, x: &[f64]) -> f64 {
    map.residuals(x).iter().map(|v| v * v).sum()
}

/// Multi-start search with uniform sphere starts (or standard Gaussian
/// starts on `ℝ^d`).
pub fn multistart<M: ResidualMap>(map: &M, domain: Domain, cfg: &SearchConfig) -> Candidate {
    let d = map.dim();
    multistart_with(map, domain, cfg, |rng: &mut StreamRng| match domain {
        Domain::Sphere { radius } => sphere_point(rng, d, radius),
        Domain::Euclidean => crate::rng::gaussian_vec(rng, d),
    })
}

/// Multi-start search with caller-provided start generation. Start `k` uses
/// stream `k` of `cfg.seed`; the best value wins, ties go to the lower index.
pub fn multistart_with<M, S>(map: &M, domain: Domain, cfg: &SearchConfig, start: S) -> Candidate
where
    M: ResidualMap,
    S: Fn(&mut StreamRng) -> Vec<f64> + Sync,
{
    let runs: Vec<(Vec<f64>, f64, usize)> = (0..cfg.starts)
        .into_par_iter()
        .map(|k| {
            let mut rng = stream(cfg.seed, k as u64);
            let mut x = start(&mut rng);
            domain.project(&mut x);
            let (x, f, it) = local_search(map, domain, x, cfg);
            (x, f, it)
        })
        .collect();
    let iterations = runs.iter().map(|r| r.2).sum();
    let (best, (point, value, _)) = runs
        .into_iter()
        .enumerate()
        .min_by(|a, b| a.1 .1.total_cmp(&b.1 .1))
        .expect("at least one start");
    Candidate {
        point,
        value,
        start: best,
        iterations,
    }
}

/// Descent then polish from one start.
pub fn local_search<M: ResidualMap + ?Sized>(
    map: &M,
    domain: Domain,
    mut x: Vec<f64>,
    cfg: &SearchConfig,
) -> (Vec<f64>, f64, usize) {
    let mut f = objective(map, &x);
    let mut iterations = 0;
    let mut step = 0.5;
    for _ in 0..cfg.descent_iters {
        if f == 0.0 || !f.is_finite() {
            break;
        }
        iterations += 1;
        let res = map.residuals(&x);
        let jac = map.jacobian(&x);
        let mut g: Vec<f64> = (jac.transpose() * DVector::from_vec(res))
            .iter()
            .copied()
            .collect();
        domain.tangent(&x, &mut g);
        let gn = norm(&g);
        if gn == 0.0 {
            break;
        }
        let scale = domain.length_scale(&x);
        let mut accepted = false;
        while step > 1e-16 {
            let mut trial: Vec<f64> = x
                .iter()
                .zip(&g)
                .map(|(xi, gi)| xi - step * scale * gi / gn)
                .collect();
            if !domain.project(&mut trial) {
                step *= 0.5;
                continue;
            }
            let ft = objective(map, &trial);
            if ft < f {
                x = trial;
                f = ft;
                step = (step * 2.0).min(1.0);
                accepted = true;
                break;
            }
            step *= 0.5;
        }
        if !accepted {
            break;
        }
    }
    for _ in 0..cfg.polish_iters {
        if f == 0.0 || !f.is_finite() {
            break;
        }
        iterations += 1;
        let res = DVector::from_vec(map.residuals(&x));
        let mut jac = map.jacobian(&x);
        if let Domain::Sphere { .. } = domain {
            // J·(I − x̂x̂ᵀ)
            let xhat = DVector::from_vec(x.clone()) / norm(&x);
            let jx = &jac * &xhat;
            jac -= jx * xhat.transpose();
        }
        let svd = jac.svd(true, true);
        let smax = svd.singular_values.max();
        if smax == 0.0 {
            break;
        }
        let delta = match svd.solve(&res, 1e-14 * smax) {
            Ok(d) => d,
            Err(_) => break,
        };
        let mut improved = false;
        let mut t = 1.0;
        while t > 1e-4 {
            let mut trial: Vec<f64> = x
                .iter()
                .zip(delta.iter())
                .map(|(xi, di)| xi - t * di)
                .collect();
            if !domain.project(&mut trial) {
                t *= 0.5;
                continue;
            }
            let ft = objective(map, &trial);
            if ft < f {
                improved = trial != x;
                x = trial;
                f = ft;
                break;
            }
            t *= 0.5;
        }
        if !improved {
            break;
        }
    }
    (x, f, iterations)
}
