//! Closed-form index and codimension bounds.

/// Upper bound on the steepness index on `m`-dimensional subspaces from a
/// vanishing order `s_m`: `s_m` when `m = 1`, else `2 s_m − 1`.
pub fn index_bounds(m: usize, s_m: i64) -> i64 {
    if m == 1 {
        s_m
    } else {
        2 * s_m - 1
    }
}

/// `max{0, min_m (s_m − m(n−m−1))}` with `s[m−1] = s_m`, `m = 1..n−1`.
pub fn codim_bound(n: usize, s: &[i64]) -> i64 {
    let n = n as i64;
    let worst = s
        .iter()
        .enumerate()
        .map(|(k, &sm)| {
            let m = k as i64 + 1;
            sm - m * (n - m - 1)
        })
        .min()
        .unwrap_or(0);
    worst.max(0)
}

/// `n(n−2)/4` for even `n`, `(n−1)²/4` for odd `n`; an integer either way.
pub fn balance_term(n: usize) -> i64 {
    let n = n as i64;
    if n % 2 == 0 {
        n * (n - 2) / 4
    } else {
        (n - 1) * (n - 1) / 4
    }
}

/// `s̄_m = max{1, r − 1 + m(n−m−1) − balance_term(n)}`.
pub fn nekhoroshev_choice(n: usize, r: usize, m: usize) -> i64 {
    let (n, r, m) = (n as i64, r as i64, m as i64);
    (r - 1 + m * (n - m - 1) - balance_term(n as usize)).max(1)
}

/// Index bound at the choice `s̄_m`, written out: `s̄_1` for `m = 1`, else
/// `max{1, 2r − 3 + 2m(n−m−1) − 2·balance_term(n)}`.
pub fn bound2(n: usize, r: usize, m: usize) -> i64 {
    if m == 1 {
        return nekhoroshev_choice(n, r, 1);
    }
    let (ni, ri, mi) = (n as i64, r as i64, m as i64);
    (2 * ri - 3 + 2 * mi * (ni - mi - 1) - 2 * balance_term(n)).max(1)
}

/// `max{0, r − 1 − balance_term(n)}`.
pub fn codimension2(n: usize, r: usize) -> i64 {
    (r as i64 - 1 - balance_term(n)).max(0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_values() {
        assert_eq!(index_bounds(1, 5), 5);
        assert_eq!(index_bounds(3, 2), 3);
        let n = 5;
        let s: Vec<i64> = (1..n).map(|m| (m * (n - m - 1) + 1) as i64).collect();
        assert_eq!(codim_bound(n, &s), 1);
        assert_eq!(balance_term(4), 2);
        assert_eq!(balance_term(5), 4);
    }
}
