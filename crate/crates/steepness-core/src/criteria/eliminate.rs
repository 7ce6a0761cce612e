use crate::adapted::{pullback_jet, push_forward, varpi_index, CurveTruncation, ShearMap};
use crate::error::{Error, Result};
use crate::poly::Jet;
use crate::vanishing::{residual_closed_form, vanishing_verdict, VanishingResidual};
use nalgebra::{DMatrix, DVector};
use serde::Serialize;

/// Symmetric matrix of quadratic coefficients free of coordinate 0:
/// diagonal `2 p_{2e_j}`, off-diagonal `p_{e_b + e_c}`, indices `1..m`.
pub fn h_matrix(p: &Jet) -> DMatrix<f64> {
    let m = p.n();
    let d = m.saturating_sub(1);
    let mut h = DMatrix::zeros(d, d);
    for b in 1..m {
        for c in b..m {
            let coef = p.coeff(&varpi_index(m, b, c));
            if b == c {
                h[(b - 1, b - 1)] = 2.0 * coef;
            } else {
                h[(b - 1, c - 1)] = coef;
                h[(c - 1, b - 1)] = coef;
            }
        }
    }
    h
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ElimSolver {
    /// LU with partial pivoting.
    #[default]
    Lu,
    /// Through the eigendecomposition of the symmetric matrix.
    Diagonalized,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Leftover {
    pub l: usize,
    pub alpha: usize,
    /// Stored `Q_{ℓα}`, including `α!`.
    pub value: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Elimination {
    /// Candidate truncation in the input coordinates.
    pub curve: CurveTruncation,
    pub adapted_curve: CurveTruncation,
    pub h1: Vec<Vec<f64>>,
    pub det: f64,
    /// Rows `α ∈ {0, 1}` and the `ℓ = 0` rows for `α ≥ 2`.
    pub leftover: Vec<Leftover>,
    /// Largest solved-row residual, a rounding check.
    pub solved_max: f64,
    pub residual: VanishingResidual,
    pub vanishing: bool,
}

/// Recovers `a_{jα}` for `α = 2..s` by linear solves with `ℍ¹`, parametrizing
/// by coordinate 0 with linear coefficients `a1`.
pub fn eliminate_curve_params(
    p: &Jet,
    a1: &[f64],
    s: usize,
    tol: f64,
    solver: ElimSolver,
) -> Result<Elimination> {
    let m = p.n();
    if s == 0 {
        return Err(Error::invalid("`s` must be at least 1"));
    }
    if s + 1 > p.r() {
        return Err(Error::OrderTooHigh {
            order: s + 1,
            r: p.r(),
        });
    }
    let shear = ShearMap::new(m, 0, a1.to_vec())?;
    let pa = pullback_jet(p, &shear)?;
    let h = h_matrix(&pa);
    let det = h.determinant();
    let entry_scale = h.iter().fold(p.max_abs_coeff(), |a, x| a.max(x.abs()));
    let threshold = tol * entry_scale.powi(m as i32 - 1);
    if m > 1 && !(det.abs() > threshold) {
        return Err(Error::IllConditioned { det, threshold });
    }
    let solve = |rhs: DVector<f64>| -> Result<DVector<f64>> {
        match solver {
            ElimSolver::Lu => h
                .clone()
                .lu()
                .solve(&rhs)
                .ok_or(Error::IllConditioned { det, threshold }),
            ElimSolver::Diagonalized => {
                let eig = h.clone().symmetric_eigen();
                let proj = eig.eigenvectors.transpose() * rhs;
                let scaled = DVector::from_iterator(
                    proj.len(),
                    proj.iter().zip(eig.eigenvalues.iter()).map(|(c, l)| c / l),
                );
                Ok(&eig.eigenvectors * scaled)
            }
        }
    };

    let mut higher = vec![vec![0.0; s - 1]; m - 1];
    for alpha in (2..=s).filter(|_| m > 1) {
        let curve = CurveTruncation::adapted_first(m, s, &higher)?;
        let res = residual_closed_form(&pa, &curve)?;
        let rhs = DVector::from_iterator(m - 1, (1..m).map(|l| -res.normalized(l, alpha)));
        let x = solve(rhs)?;
        for j in 1..m {
            higher[j - 1][alpha - 2] = x[j - 1];
        }
    }
    let adapted_curve = CurveTruncation::adapted_first(m, s, &higher)?;
    let residual = residual_closed_form(&pa, &adapted_curve)?;
    let mut leftover = Vec::new();
    let mut solved_max: f64 = 0.0;
    for alpha in 0..=s {
        for l in 0..m {
            let value = residual.get(l, alpha);
            if alpha <= 1 || l == 0 {
                leftover.push(Leftover { l, alpha, value });
            } else {
                solved_max = solved_max.max(value.abs());
            }
        }
    }
    let curve = push_forward(&adapted_curve, &shear.inverse())?;
    let vanishing = vanishing_verdict(&pa, &residual, tol);
    Ok(Elimination {
        curve,
        adapted_curve,
        h1: (0..h.nrows())
            .map(|i| h.row(i).iter().copied().collect())
            .collect(),
        det,
        leftover,
        solved_max,
        residual,
        vanishing,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hand_solved_two_by_two() {
        let (p21, p02, p30) = (0.6, 1.0, -0.8);
        let p = Jet::from_terms(
            2,
            3,
            vec![(vec![0, 2], p02), (vec![2, 1], p21), (vec![3, 0], p30)],
        )
        .unwrap();
        let e = eliminate_curve_params(&p, &[0.0], 2, 1e-9, ElimSolver::Lu).unwrap();
        assert!((e.adapted_curve.coeff(1, 2) + p21 / (2.0 * p02)).abs() < 1e-15);
        let row = e
            .leftover
            .iter()
            .find(|r| r.l == 0 && r.alpha == 2)
            .unwrap();
        // stored value carries 2!
        assert!((row.value / 2.0 - 3.0 * p30).abs() < 1e-15);
    }

    #[test]
    fn zero_matrix_is_ill_conditioned() {
        let p = Jet::from_terms(2, 3, vec![(vec![3, 0], 1.0), (vec![1, 1], 1.0)]).unwrap();
        assert!(matches!(
            eliminate_curve_params(&p, &[0.0], 2, 1e-9, ElimSolver::Lu),
            Err(Error::IllConditioned { .. })
        ));
    }
}
