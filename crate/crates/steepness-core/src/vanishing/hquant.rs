use super::families::families;
use crate::error::{Error, Result};
use crate::frame::AnisotropicBasis;
use crate::multiindex::factorial;
use crate::poly::Jet;
use serde::Serialize;

/// `𝓗_{m,ℓ,α}` for `ℓ < m` and `1 ≤ α ≤ s`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HTable {
    pub m: usize,
    pub s: usize,
    /// `values[ℓ][α − 1]`.
    pub values: Vec<Vec<f64>>,
}

impl HTable {
    pub fn get(&self, l: usize, alpha: usize) -> f64 {
        self.values[l][alpha - 1]
    }

    pub fn sum_of_squares(&self) -> f64 {
        self.values.iter().flatten().map(|v| v * v).sum()
    }

    pub fn max_abs(&self) -> f64 {
        self.values
            .iter()
            .flatten()
            .fold(0.0, |a, v| a.max(v.abs()))
    }
}

/// Evaluates the `𝓗` quantities from multilinear forms of `q` on
/// `(v, u_2, …, u_m)`. `higher[j−1][k−2]` holds `a_{jk}` for `k = 2..s`.
pub fn h_quantities(
    q: &Jet,
    basis: &AnisotropicBasis,
    s: usize,
    higher: &[Vec<f64>],
) -> Result<HTable> {
    let m = basis.m();
    if basis.frame().n() != q.n() {
        return Err(Error::DimensionMismatch {
            what: "frame ambient dimension",
            expected: q.n(),
            found: basis.frame().n(),
        });
    }
    if s == 0 {
        return Err(Error::invalid("`s` must be at least 1"));
    }
    if higher.len() != m - 1 {
        return Err(Error::DimensionMismatch {
            what: "curve coefficient rows",
            expected: m - 1,
            found: higher.len(),
        });
    }
    for row in higher {
        if row.len() != s - 1 {
            return Err(Error::DimensionMismatch {
                what: "curve coefficients per row (orders 2..s)",
                expected: s - 1,
                found: row.len(),
            });
        }
    }
    if s + 1 > q.r() {
        return Err(Error::OrderTooHigh {
            order: s + 1,
            r: q.r(),
        });
    }
    let v = basis.v().to_vec();
    let u: Vec<Vec<f64>> = basis.frame().vectors().to_vec();
    let a = |j: usize, k: usize| -> f64 { higher[j - 1][k - 2] };
    let scaled = |j: usize, k: usize| -> Vec<f64> { u[j].iter().map(|x| a(j, k) * x).collect() };

    let mut values = vec![vec![0.0; s]; m];
    for l in 0..m {
        for alpha in 1..=s {
            let h = match (l, alpha) {
                (0, 1) => q.multilinear_form(&[(&v, 2)])?,
                (_, 1) => q.multilinear_form(&[(&v, 1), (&u[l], 1)])?,
                (0, 2) => q.multilinear_form(&[(&v, 3)])?,
                _ => {
                    let mut acc = if l == 0 {
                        q.multilinear_form(&[(&v, alpha + 1)])? / factorial(alpha)
                    } else {
                        q.multilinear_form(&[(&v, alpha), (&u[l], 1)])? / factorial(alpha)
                    };
                    if l == 0 {
                        for i in 1..m {
                            for beta in 1..alpha {
                                let f = q.multilinear_form(&[(&v, beta), (&u[i], 1)])?;
                                acc += f / factorial(beta - 1) * a(i, alpha - beta + 1);
                            }
                        }
                    }
                    for e in families(m, l, alpha).entries {
                        if !e.in_m || !e.in_e() {
                            continue;
                        }
                        let mu0 = e.mu[0] as usize;
                        for t in e.tables.iter() {
                            let mut args_owned: Vec<(Vec<f64>, usize)> = Vec::new();
                            let mut kfact = 1.0;
                            for (row, ks) in t.k.iter().enumerate() {
                                for (col, &k) in ks.iter().enumerate() {
                                    if k > 0 {
                                        args_owned.push((scaled(row + 1, col + 2), k as usize));
                                        kfact *= factorial(k as usize);
                                    }
                                }
                            }
                            let mut args: Vec<(&[f64], usize)> = vec![(&v, mu0)];
                            if l > 0 {
                                args.push((&u[l], 1));
                            }
                            args.extend(args_owned.iter().map(|(w, k)| (w.as_slice(), *k)));
                            let denom = if l == 0 {
                                factorial(mu0 - 1) * kfact
                            } else {
                                factorial(mu0) * kfact
                            };
                            acc += q.multilinear_form(&args)? / denom;
                        }
                    }
                    acc
                }
            };
            values[l][alpha - 1] = h;
        }
    }
    Ok(HTable { m, s, values })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frame::Frame;

    fn example_h() -> Jet {
        Jet::from_terms(
            3,
            3,
            vec![
                (vec![2, 0, 0], 0.5),
                (vec![1, 1, 0], 1.0),
                (vec![0, 2, 0], 0.5),
                (vec![0, 0, 1], 1.0),
            ],
        )
        .unwrap()
    }

    #[test]
    fn bad_direction_is_null() {
        let s = 1.0 / 2f64.sqrt();
        let frame = Frame::new(vec![vec![s, -s, 0.0], vec![s, s, 0.0]], 1e-12).unwrap();
        let basis = AnisotropicBasis::new(frame, vec![0.0]).unwrap();
        let h = h_quantities(&example_h(), &basis, 1, &[vec![]]).unwrap();
        assert_eq!(h.get(0, 1), 0.0);
    }

    #[test]
    fn perturbed_direction_gives_eps_squared() {
        // u1 = −e2, u2 = e1 and a21 = 1+ε give v = (1+ε, −1, 0).
        for eps in [0.5, 0.1] {
            let frame = Frame::new(vec![vec![0.0, -1.0, 0.0], vec![1.0, 0.0, 0.0]], 1e-12).unwrap();
            let basis = AnisotropicBasis::new(frame, vec![1.0 + eps]).unwrap();
            let h = h_quantities(&example_h(), &basis, 1, &[vec![]]).unwrap();
            assert!((h.get(0, 1) - eps * eps).abs() < 1e-14);
        }
    }
}
