//! Multi-index families organizing the vanishing equations.
//!
//! Coordinates are 0-based: coordinate 0 is the parametrizing one, so the
//! 1-based `ν(1, β)` is `nu(m, 0, β)` here.

use crate::error::{Error, Result};
use crate::multiindex::{enumerate_multiindices, MultiIndex};
use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

/// `ν(0, β) = (β+1) e_0`; for `i ≥ 1`, `ν(i, β) = β e_0 + e_i`.
pub fn nu(m: usize, i: usize, beta: usize) -> MultiIndex {
    let mut mu = vec![0u32; m];
    if i == 0 {
        mu[0] = beta as u32 + 1;
    } else {
        mu[0] = beta as u32;
        mu[i] = 1;
    }
    MultiIndex::new(mu)
}

/// `Some((i, β))` when `mu = ν(i, β)`.
pub fn as_nu(mu: &[u32]) -> Option<(usize, usize)> {
    let rest: Vec<usize> = (1..mu.len()).filter(|&j| mu[j] > 0).collect();
    match rest.as_slice() {
        [] if mu[0] >= 1 => Some((0, mu[0] as usize - 1)),
        [j] if mu[*j] == 1 => Some((*j, mu[0] as usize)),
        _ => None,
    }
}

/// Indices with `2 ≤ |μ| ≤ α+1` that are not `ν(i, β)` for `1 ≤ β ≤ α`.
pub fn m_family(m: usize, alpha: usize) -> Vec<MultiIndex> {
    enumerate_multiindices(m, alpha + 1)
        .into_iter()
        .filter(|mu| mu.order() >= 2 && !is_low_nu(mu, alpha))
        .collect()
}

fn is_low_nu(mu: &[u32], alpha: usize) -> bool {
    matches!(as_nu(mu), Some((_, b)) if (1..=alpha).contains(&b))
}

/// Table `k[j−1][i−2]` for `j = 1..m−1`, `i = 2..α`: the number of factors
/// `a_{ji} t^i` drawn from component `j`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct KTable {
    pub k: Vec<Vec<u32>>,
}

impl KTable {
    /// `Σ_i k_{ji}` for each row.
    pub fn row_sums(&self) -> Vec<u32> {
        self.k.iter().map(|row| row.iter().sum()).collect()
    }

    /// `Σ_{j,i} i·k_{ji}`.
    pub fn weight(&self) -> usize {
        self.k
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .map(|(x, &c)| (x + 2) * c as usize)
                    .sum::<usize>()
            })
            .sum()
    }
}

type Cache = RwLock<HashMap<(usize, Vec<u32>), Arc<Vec<KTable>>>>;

fn cache() -> &'static Cache {
    static CACHE: OnceLock<Cache> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

/// All k-tables with row sums `μ̃_j` (`j ≥ 1`) and
/// `μ̃_0 + Σ i·k_{ji} = α`. Memoized.
pub fn gma(mu_tilde: &[u32], alpha: usize) -> Arc<Vec<KTable>> {
    let key = (alpha, mu_tilde.to_vec());
    if let Some(hit) = cache().read().expect("family cache poisoned").get(&key) {
        return hit.clone();
    }
    let built = Arc::new(enumerate_gma(mu_tilde, alpha));
    cache()
        .write()
        .expect("family cache poisoned")
        .entry(key)
        .or_insert(built)
        .clone()
}

fn enumerate_gma(mu_tilde: &[u32], alpha: usize) -> Vec<KTable> {
    let m = mu_tilde.len();
    let mut out = Vec::new();
    if (mu_tilde[0] as usize) > alpha {
        return out;
    }
    let budget = alpha - mu_tilde[0] as usize;
    let cols = alpha.saturating_sub(1);
    let units: Vec<u32> = mu_tilde[1..].to_vec();
    // every unit costs at least 2
    let min_cost: usize = units.iter().map(|&u| 2 * u as usize).sum();
    if min_cost > budget || (cols == 0 && units.iter().any(|&u| u > 0)) {
        return out;
    }
    let mut table = vec![vec![0u32; cols]; m - 1];
    dfs(&units, 0, 0, budget, &mut table, &mut out);
    out
}

fn dfs(
    units: &[u32],
    row: usize,
    col: usize,
    budget: usize,
    table: &mut Vec<Vec<u32>>,
    out: &mut Vec<KTable>,
) {
    if row == units.len() {
        if budget == 0 {
            out.push(KTable { k: table.clone() });
        }
        return;
    }
    let placed: u32 = table[row].iter().sum();
    let left = units[row] - placed;
    let later: usize = units[row + 1..].iter().map(|&u| 2 * u as usize).sum();
    let cols = table[row].len();
    if left == 0 {
        dfs(units, row + 1, 0, budget, table, out);
        return;
    }
    if col == cols {
        return;
    }
    let weight = col + 2;
    let last = col + 1 == cols;
    let max_here = left.min((budget / weight) as u32);
    let range: Vec<u32> = if last {
        vec![left]
    } else {
        (0..=max_here).collect()
    };
    for c in range {
        if c > max_here {
            continue;
        }
        let spent = weight * c as usize;
        let remaining_units = (left - c) as usize;
        // the rest of this row costs at least (weight+1) per unit
        if spent + remaining_units * (weight + 1) + later > budget {
            continue;
        }
        table[row][col] = c;
        dfs(units, row, col + 1, budget - spent, table, out);
        table[row][col] = 0;
    }
}

/// One index `μ` with `2 ≤ |μ| ≤ α+1` and `μ_ℓ ≥ 1`, seen from row `ℓ`.
#[derive(Debug, Clone)]
pub struct FamilyEntry {
    pub mu: MultiIndex,
    /// `μ ∈ 𝓜_m(α)`.
    pub in_m: bool,
    /// `𝒢_m(μ̃(ℓ), α)`.
    pub tables: Arc<Vec<KTable>>,
}

impl FamilyEntry {
    /// Membership in `𝓔_m(ℓ, α)`.
    pub fn in_e(&self) -> bool {
        !self.tables.is_empty()
    }
}

#[derive(Debug, Clone)]
pub struct IndexFamilies {
    pub m: usize,
    pub l: usize,
    pub alpha: usize,
    pub nu: Vec<MultiIndex>,
    pub m_set: Vec<MultiIndex>,
    pub entries: Vec<FamilyEntry>,
}

impl IndexFamilies {
    pub fn entry(&self, mu: &[u32]) -> Option<&FamilyEntry> {
        self.entries.iter().find(|e| e.mu.entries() == mu)
    }
}

/// Families for row `l`, order `alpha` (`m ≥ 2`, `l < m`, `alpha ≥ 1`).
pub fn build_families(m: usize, l: usize, alpha: usize) -> Result<IndexFamilies> {
    if m < 2 {
        return Err(Error::invalid("families need m ≥ 2"));
    }
    if l >= m {
        return Err(Error::invalid(format!("row {l} is not below m = {m}")));
    }
    if alpha == 0 {
        return Err(Error::invalid("families need α ≥ 1"));
    }
    Ok(families(m, l, alpha))
}

pub(crate) fn families(m: usize, l: usize, alpha: usize) -> IndexFamilies {
    let nu_list = (0..m)
        .flat_map(|i| (0..=alpha).map(move |b| nu(m, i, b)))
        .collect();
    let m_set = m_family(m, alpha);
    let entries = enumerate_multiindices(m, alpha + 1)
        .into_iter()
        .filter(|mu| mu.order() >= 2 && mu[l] >= 1)
        .map(|mu| {
            let tilde = mu.lowered(l).expect("μ_ℓ ≥ 1");
            let in_m = !is_low_nu(&mu, alpha);
            FamilyEntry {
                tables: gma(&tilde, alpha),
                in_m,
                mu,
            }
        })
        .collect();
    IndexFamilies {
        m,
        l,
        alpha,
        nu: nu_list,
        m_set,
        entries,
    }
}
