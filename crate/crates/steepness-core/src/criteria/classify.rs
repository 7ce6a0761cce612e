use crate::error::{Error, Result};
use crate::frame::{norm, Frame};
use crate::poly::Jet;
use nalgebra::DMatrix;
use serde::Serialize;

/// Default relative threshold below which an eigenvalue counts as null.
pub const NULL_EIGEN_TOL: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum LambdaClass {
    Lambda0,
    Lambda1,
    LambdaGe2,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SubspaceClass {
    pub class: LambdaClass,
    pub null_count: usize,
    /// Eigenvalues of `[h²[u_i, u_j]]`, ascending.
    pub eigenvalues: Vec<f64>,
    /// `false` for `LambdaGe2`: no explicit criterion applies there.
    pub fast_criterion: bool,
}

/// `[h²[u_i, u_j]]` for the frame vectors.
pub fn restricted_hessian(q: &Jet, f: &Frame) -> Result<DMatrix<f64>> {
    if f.n() != q.n() {
        return Err(Error::DimensionMismatch {
            what: "frame ambient dimension",
            expected: q.n(),
            found: f.n(),
        });
    }
    let m = f.m();
    let mut h = DMatrix::zeros(m, m);
    for i in 0..m {
        for j in i..m {
            let v = if q.r() >= 2 {
                q.multilinear_form(&[(f.vector(i), 1), (f.vector(j), 1)])?
            } else {
                0.0
            };
            h[(i, j)] = v;
            h[(j, i)] = v;
        }
    }
    Ok(h)
}

/// Checks `|u_i · ∇q(0)| ≤ tol·‖∇q(0)‖` for every frame vector.
pub fn require_orthogonal(q: &Jet, f: &Frame, tol: f64) -> Result<()> {
    let g = q.gradient_at_origin();
    let dot = f.max_dot(&g);
    if dot > tol * norm(&g).max(f64::MIN_POSITIVE) {
        return Err(Error::NotOrthogonalToGradient { dot });
    }
    Ok(())
}

/// Null-eigenvalue count of the restricted Hessian on a gradient-orthogonal
/// subspace, with the matching class.
pub fn classify_subspace(q: &Jet, f: &Frame, tol: f64) -> Result<SubspaceClass> {
    require_orthogonal(q, f, tol)?;
    let h = restricted_hessian(q, f)?;
    let mut eigenvalues: Vec<f64> = h.symmetric_eigen().eigenvalues.iter().copied().collect();
    eigenvalues.sort_by(|a, b| a.total_cmp(b));
    let max = eigenvalues.iter().fold(0.0f64, |a, l| a.max(l.abs()));
    let null_count = eigenvalues.iter().filter(|l| l.abs() <= tol * max).count();
    let class = match null_count {
        0 => LambdaClass::Lambda0,
        1 => LambdaClass::Lambda1,
        _ => LambdaClass::LambdaGe2,
    };
    Ok(SubspaceClass {
        class,
        null_count,
        eigenvalues,
        fast_criterion: class != LambdaClass::LambdaGe2,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn jet(terms: &[([u32; 3], f64)]) -> Jet {
        Jet::from_terms(3, 3, terms.iter().map(|(m, c)| (m.to_vec(), *c))).unwrap()
    }

    #[test]
    fn classes_on_standard_plane() {
        let f = Frame::standard(3, 2);
        let bad = jet(&[
            ([2, 0, 0], 0.5),
            ([1, 1, 0], 1.0),
            ([0, 2, 0], 0.5),
            ([0, 0, 1], 1.0),
        ]);
        let c = classify_subspace(&bad, &f, NULL_EIGEN_TOL).unwrap();
        assert_eq!(c.class, LambdaClass::Lambda1);
        assert!(c.eigenvalues[0].abs() < 1e-14 && (c.eigenvalues[1] - 2.0).abs() < 1e-14);

        let convex = jet(&[([2, 0, 0], 0.5), ([0, 2, 0], 0.5), ([0, 0, 1], 1.0)]);
        let c = classify_subspace(&convex, &f, NULL_EIGEN_TOL).unwrap();
        assert_eq!(c.class, LambdaClass::Lambda0);
        assert_eq!(c.eigenvalues, vec![1.0, 1.0]);

        let flat = jet(&[([0, 0, 1], 1.0)]);
        let c = classify_subspace(&flat, &f, NULL_EIGEN_TOL).unwrap();
        assert_eq!(c.class, LambdaClass::LambdaGe2);
        assert!(!c.fast_criterion);
    }

    #[test]
    fn rejects_non_orthogonal_frame() {
        let q = jet(&[([1, 0, 0], 1.0)]);
        let err = classify_subspace(&q, &Frame::standard(3, 1), NULL_EIGEN_TOL).unwrap_err();
        assert!(matches!(err, Error::NotOrthogonalToGradient { .. }));
    }
}
