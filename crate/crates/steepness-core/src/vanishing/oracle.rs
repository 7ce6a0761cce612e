use super::VanishingResidual;
use crate::adapted::CurveTruncation;
use crate::error::{Error, Result};
use crate::multiindex::factorial;
use crate::poly::Jet;
use crate::series::Series;

/// Brute-force residuals: each `∂P/∂x_ℓ` composed with the curve in
/// truncated power series, `Q_{ℓα} = α!·[t^α]`. Works in any coordinates.
pub fn residual_series_oracle(p: &Jet, c: &CurveTruncation) -> Result<VanishingResidual> {
    if p.n() != c.m() {
        return Err(Error::DimensionMismatch {
            what: "jet variables vs curve dimension",
            expected: c.m(),
            found: p.n(),
        });
    }
    let m = c.m();
    let s = c.s();
    let powers: Vec<Vec<Series>> = (0..m).map(|j| c.component(j).powers(p.r())).collect();
    let mut out = VanishingResidual::zeros(m, s);
    for l in 0..m {
        let mut acc = Series::zero(s);
        for (mu, coef) in p.partial(l).terms() {
            let mut term = Series::one(s);
            for (j, &e) in mu.iter().enumerate() {
                if e > 0 {
                    term = term.mul(&powers[j][e as usize]);
                }
            }
            acc.add_scaled(&term, coef);
        }
        for alpha in 0..=s {
            out.values[l][alpha] = factorial(alpha) * acc.coeff(alpha);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn square_gives_two() {
        let p = Jet::from_terms(2, 3, vec![(vec![2, 0], 1.0)]).unwrap();
        let c = CurveTruncation::new(2, 2, 0, vec![vec![0.3, -4.0]]).unwrap();
        let q = residual_series_oracle(&p, &c).unwrap();
        assert_eq!(q.get(0, 1), 2.0);
    }

    #[test]
    fn linear_jet_rows() {
        let p = Jet::from_terms(3, 2, vec![(vec![1, 0, 0], 0.5), (vec![0, 0, 1], -2.0)]).unwrap();
        let c =
            CurveTruncation::new(3, 3, 0, vec![vec![1.0, 2.0, 3.0], vec![-1.0, 0.5, 0.0]]).unwrap();
        let q = residual_series_oracle(&p, &c).unwrap();
        assert_eq!(q.get(0, 0), 0.5);
        assert_eq!(q.get(1, 0), 0.0);
        assert_eq!(q.get(2, 0), -2.0);
        for l in 0..3 {
            for a in 1..=3 {
                assert_eq!(q.get(l, a), 0.0);
            }
        }
    }
}
