//! Planted s-vanishing instances.
//!
//! The residual rows are linear and triangular in the `ν`-family
//! coefficients, so solving for those coefficients one at a time turns any
//! jet into one that vanishes along a chosen adapted curve. The residuals
//! used here come from the series oracle.

use super::families::nu;
use super::oracle::residual_series_oracle;
use crate::adapted::{pullback_jet, push_forward, CurveTruncation, ShearMap};
use crate::error::{Error, Result};
use crate::multiindex::{enumerate_multiindices, factorial};
use crate::poly::Jet;
use rand::Rng;

/// Replaces the `ν`-family coefficients of `p` (orders `α ≤ s`) so that the
/// residual along `c` vanishes. `c` must be adapted with `i = 0`.
pub fn plant(p: &Jet, c: &CurveTruncation) -> Result<Jet> {
    if c.i() != 0 || !c.is_adapted() {
        return Err(Error::invalid(
            "planting needs an adapted curve parametrized by coordinate 0",
        ));
    }
    if p.n() != c.m() {
        return Err(Error::DimensionMismatch {
            what: "jet variables vs curve dimension",
            expected: c.m(),
            found: p.n(),
        });
    }
    if c.s() + 1 > p.r() {
        return Err(Error::OrderTooHigh {
            order: c.s() + 1,
            r: p.r(),
        });
    }
    let m = c.m();
    let mut out = p.clone();
    for alpha in 0..=c.s() {
        for l in (1..m).chain(std::iter::once(0)) {
            let q = residual_series_oracle(&out, c)?;
            let pivot = if l == 0 { (alpha + 1) as f64 } else { 1.0 };
            let idx = nu(m, l, alpha);
            let cur = out.coeff(&idx);
            out.set(&idx, cur - q.get(l, alpha) / factorial(alpha) / pivot);
        }
    }
    Ok(out)
}

/// Jet with every coefficient of order `1..=r` uniform in `[−scale, scale]`.
pub fn random_jet<R: Rng>(rng: &mut R, m: usize, r: usize, scale: f64) -> Jet {
    let terms = enumerate_multiindices(m, r)
        .into_iter()
        .map(|mu| (mu.into_vec(), rng.random_range(-scale..=scale)));
    Jet::from_terms(m, r, terms).expect("well-formed terms")
}

/// Adapted curve `(t, Σ_{k≥2} a_{jk} t^k)` with `a_{jk}` uniform in
/// `[−scale, scale]`.
pub fn random_adapted_curve<R: Rng>(
    rng: &mut R,
    m: usize,
    s: usize,
    scale: f64,
) -> CurveTruncation {
    let higher: Vec<Vec<f64>> = (1..m)
        .map(|_| (2..=s).map(|_| rng.random_range(-scale..=scale)).collect())
        .collect();
    CurveTruncation::adapted_first(m, s, &higher).expect("well-formed curve")
}

#[derive(Debug, Clone)]
pub struct PlantedInstance {
    /// Vanishing jet in adapted coordinates.
    pub adapted_jet: Jet,
    pub adapted_curve: CurveTruncation,
    /// Shear taking the original coordinates to the adapted ones.
    pub shear: ShearMap,
    /// The same instance in original coordinates.
    pub jet: Jet,
    pub curve: CurveTruncation,
}

/// Random planted instance. The linear curve coefficients are uniform in
/// `[−a1_scale, a1_scale]`; higher ones in `[−a_scale, a_scale]`.
pub fn planted_instance<R: Rng>(
    rng: &mut R,
    m: usize,
    r: usize,
    s: usize,
    a_scale: f64,
    a1_scale: f64,
) -> Result<PlantedInstance> {
    let base = random_jet(rng, m, r, 1.0);
    let adapted_curve = random_adapted_curve(rng, m, s, a_scale);
    let a1: Vec<f64> = (1..m)
        .map(|_| rng.random_range(-a1_scale..=a1_scale))
        .collect();
    from_parts(&base, adapted_curve, a1)
}

/// Plants `base` along `adapted_curve`, then moves to coordinates where the
/// curve has linear coefficients `a1`.
pub fn from_parts(
    base: &Jet,
    adapted_curve: CurveTruncation,
    a1: Vec<f64>,
) -> Result<PlantedInstance> {
    let m = adapted_curve.m();
    let adapted_jet = plant(base, &adapted_curve)?;
    let shear = ShearMap::new(m, 0, a1)?;
    let jet = pullback_jet(&adapted_jet, &shear.inverse())?;
    let curve = push_forward(&adapted_curve, &shear.inverse())?;
    Ok(PlantedInstance {
        adapted_jet,
        adapted_curve,
        shear,
        jet,
        curve,
    })
}
