//! s-vanishing systems: closed-form residuals, the series oracle, the
//! `𝓗` quantities and planted solutions.

mod closed_form;
pub mod families;
mod hquant;
mod oracle;
pub mod planted;

pub use closed_form::residual_closed_form;
pub use families::{build_families, gma, m_family, nu, IndexFamilies, KTable};
pub use hquant::{h_quantities, HTable};
pub use oracle::residual_series_oracle;

use crate::adapted::{CurveTruncation, ShearMap};
use crate::error::Result;
use crate::multiindex::factorial;
use crate::poly::Jet;
use serde::Serialize;

/// Default relative zero tolerance for vanishing verdicts.
pub const DEFAULT_TOL: f64 = 1e-9;

/// Table of `Q_{ℓα}` for `ℓ < m`, `α ≤ s`, stored with the `α!` factor.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VanishingResidual {
    pub m: usize,
    pub s: usize,
    /// `values[ℓ][α]`.
    pub values: Vec<Vec<f64>>,
    /// Shear applied before evaluation, when the input curve was not adapted.
    pub shear: Option<ShearMap>,
}

impl VanishingResidual {
    pub(crate) fn zeros(m: usize, s: usize) -> Self {
        VanishingResidual {
            m,
            s,
            values: vec![vec![0.0; s + 1]; m],
            shear: None,
        }
    }

    pub fn get(&self, l: usize, alpha: usize) -> f64 {
        self.values[l][alpha]
    }

    /// `Q_{ℓα} / α!`.
    pub fn normalized(&self, l: usize, alpha: usize) -> f64 {
        self.values[l][alpha] / factorial(alpha)
    }

    pub fn normalized_table(&self) -> Vec<Vec<f64>> {
        (0..self.m)
            .map(|l| (0..=self.s).map(|a| self.normalized(l, a)).collect())
            .collect()
    }

    pub fn max_abs(&self) -> f64 {
        self.values
            .iter()
            .flatten()
            .fold(0.0, |acc, v| acc.max(v.abs()))
    }
}

/// Which evaluator decides a verdict.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Method {
    #[default]
    ClosedForm,
    SeriesOracle,
}

pub fn residual(p: &Jet, c: &CurveTruncation, method: Method) -> Result<VanishingResidual> {
    match method {
        Method::ClosedForm => residual_closed_form(p, c),
        Method::SeriesOracle => residual_series_oracle(p, c),
    }
}

/// `max |Q| ≤ tol·(1 + max |p_μ|)`.
pub fn vanishing_verdict(p: &Jet, res: &VanishingResidual, tol: f64) -> bool {
    res.max_abs() <= tol * (1.0 + p.max_abs_coeff())
}

pub fn is_s_vanishing(p: &Jet, c: &CurveTruncation, tol: f64) -> Result<bool> {
    is_s_vanishing_with(p, c, tol, Method::ClosedForm)
}

pub fn is_s_vanishing_with(p: &Jet, c: &CurveTruncation, tol: f64, method: Method) -> Result<bool> {
    let res = residual(p, c, method)?;
    Ok(vanishing_verdict(p, &res, tol))
}
