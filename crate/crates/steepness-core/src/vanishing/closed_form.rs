use super::families::{families, nu, KTable};
use super::VanishingResidual;
use crate::adapted::{adapt_truncation, pullback_jet, CurveTruncation};
use crate::error::{Error, Result};
use crate::multiindex::{factorial, multinomial, MultiIndex};
use crate::poly::Jet;

/// `Q_{ℓα}` from the explicit family sums. Non-adapted curves are adapted
/// first and the shear is recorded; rows are then in adapted coordinates.
pub fn residual_closed_form(p: &Jet, c: &CurveTruncation) -> Result<VanishingResidual> {
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
    let (pa, ca, shear) = if c.is_adapted() {
        (p.clone(), c.clone(), None)
    } else {
        let (shear, ca) = adapt_truncation(c);
        (pullback_jet(p, &shear)?, ca, Some(shear))
    };
    let m = c.m();
    let i = ca.i();
    let perm: Vec<usize> = (0..m)
        .map(|j| match j {
            _ if j == i => 0,
            0 => i,
            _ => j,
        })
        .collect();
    let mut out = if i == 0 {
        adapted_table(&pa, &ca)
    } else {
        let t = adapted_table(&permute_jet(&pa, &perm), &ca.permuted(&perm));
        let mut back = VanishingResidual::zeros(m, c.s());
        for l in 0..m {
            back.values[l] = t.values[perm[l]].clone();
        }
        back
    };
    out.shear = shear;
    Ok(out)
}

fn permute_jet(p: &Jet, perm: &[usize]) -> Jet {
    let mut out = Jet::zeros(p.n(), p.r()).expect("valid shape");
    for (mu, c) in p.terms() {
        let mut nu = vec![0u32; p.n()];
        for (j, &e) in mu.iter().enumerate() {
            nu[perm[j]] = e;
        }
        out.set(&nu, c);
    }
    out
}

/// `Σ_k Π_j multinom(k_j) Π_i a_{ji}^{k_{ji}}` over one `𝒢` set.
fn table_sum(tables: &[KTable], c: &CurveTruncation) -> f64 {
    tables
        .iter()
        .map(|t| {
            t.k.iter()
                .enumerate()
                .map(|(row, ks)| {
                    let j = row + 1;
                    let mut term = multinomial(ks);
                    for (col, &k) in ks.iter().enumerate() {
                        if k > 0 {
                            term *= c.coeff(j, col + 2).powi(k as i32);
                        }
                    }
                    term
                })
                .product::<f64>()
        })
        .sum()
}

/// Coordinate 0 parametrizes and the curve has no linear terms.
fn adapted_table(p: &Jet, c: &CurveTruncation) -> VanishingResidual {
    let m = c.m();
    let s = c.s();
    let mut out = VanishingResidual::zeros(m, s);
    for l in 0..m {
        out.values[l][0] = p.coeff(&MultiIndex::unit(m, l));
    }
    for alpha in 1..=s {
        for l in 0..m {
            let mut acc = if l == 0 {
                (alpha + 1) as f64 * p.coeff(&nu(m, 0, alpha))
            } else {
                p.coeff(&nu(m, l, alpha))
            };
            if l == 0 {
                for i in 1..m {
                    for beta in 1..alpha {
                        acc +=
                            beta as f64 * p.coeff(&nu(m, i, beta)) * c.coeff(i, alpha - beta + 1);
                    }
                }
            }
            for e in families(m, l, alpha).entries {
                if !e.in_m || !e.in_e() {
                    continue;
                }
                let pm = p.coeff(&e.mu);
                if pm == 0.0 {
                    continue;
                }
                acc += e.mu[l] as f64 * pm * table_sum(&e.tables, c);
            }
            out.values[l][alpha] = factorial(alpha) * acc;
        }
    }
    out
}
