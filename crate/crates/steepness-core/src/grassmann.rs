//! Affine charts of the Grassmannian and the degeneracy locus of a
//! non-degenerate symmetric bilinear form.

use crate::error::{Error, Result};
use crate::frame::{gram_schmidt, Frame};
use crate::rng::{gaussian_vec, stream};
use nalgebra::DMatrix;
use rand::seq::index::sample;
use rayon::prelude::*;
use serde::Serialize;

/// A bilinear form in its diagonalizing basis.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DiagonalForm {
    alpha: Vec<f64>,
    /// Columns of the diagonalizing basis when built from a matrix.
    basis: Option<Vec<Vec<f64>>>,
}

impl DiagonalForm {
    pub fn new(alpha: Vec<f64>) -> Result<Self> {
        if alpha.is_empty() {
            return Err(Error::invalid("`alpha` must be non-empty"));
        }
        if let Some(k) = alpha.iter().position(|a| !(a.is_finite() && *a != 0.0)) {
            return Err(Error::invalid(format!(
                "`alpha[{k}]` must be finite and nonzero"
            )));
        }
        Ok(Self { alpha, basis: None })
    }

    /// Diagonalizes a symmetric matrix; eigenvalues ascending. Eigenvalues
    /// with `|λ| ≤ tol·max|λ|` make the form degenerate and are rejected.
    pub fn from_symmetric(matrix: &[Vec<f64>], tol: f64) -> Result<Self> {
        let n = matrix.len();
        if n == 0 {
            return Err(Error::invalid("`matrix` must be non-empty"));
        }
        for (i, row) in matrix.iter().enumerate() {
            if row.len() != n {
                return Err(Error::invalid(format!(
                    "`matrix[{i}]` must have {n} entries"
                )));
            }
        }
        let a = DMatrix::from_fn(n, n, |i, j| matrix[i][j]);
        let asym = (&a - a.transpose()).amax();
        if !(asym <= tol * a.amax().max(1.0)) {
            return Err(Error::invalid(format!(
                "`matrix` is not symmetric (deviation {asym:e})"
            )));
        }
        let eig = a.symmetric_eigen();
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&x, &y| eig.eigenvalues[x].total_cmp(&eig.eigenvalues[y]));
        let alpha: Vec<f64> = order.iter().map(|&k| eig.eigenvalues[k]).collect();
        let max = alpha.iter().fold(0.0f64, |m, a| m.max(a.abs()));
        if let Some(k) = alpha.iter().position(|a| a.abs() <= tol * max) {
            return Err(Error::invalid(format!(
                "`matrix` is degenerate: eigenvalue {k} is {:e}",
                alpha[k]
            )));
        }
        let basis = order
            .iter()
            .map(|&k| eig.eigenvectors.column(k).iter().copied().collect())
            .collect();
        Ok(Self {
            alpha,
            basis: Some(basis),
        })
    }

    pub fn n(&self) -> usize {
        self.alpha.len()
    }

    pub fn alpha(&self) -> &[f64] {
        &self.alpha
    }

    pub fn basis(&self) -> Option<&[Vec<f64>]> {
        self.basis.as_deref()
    }

    /// Maps diagonal coordinates back to the original basis.
    pub fn to_original(&self, x: &[f64]) -> Vec<f64> {
        match &self.basis {
            None => x.to_vec(),
            Some(cols) => {
                let mut y = vec![0.0; x.len()];
                for (c, xc) in cols.iter().zip(x) {
                    y.iter_mut().zip(c).for_each(|(yi, ci)| *yi += xc * ci);
                }
                y
            }
        }
    }

    pub fn apply(&self, x: &[f64], y: &[f64]) -> f64 {
        self.alpha
            .iter()
            .zip(x)
            .zip(y)
            .map(|((a, u), v)| a * u * v)
            .sum()
    }
}

/// Chart `W ↦ span(e_{i_ℓ} + Σ_k W_{ℓk} e_{j_k})`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GrassChart {
    i: Vec<usize>,
    j: Vec<usize>,
    w: Vec<Vec<f64>>,
}

impl GrassChart {
    pub fn new(i: Vec<usize>, j: Vec<usize>, w: Vec<Vec<f64>>) -> Result<Self> {
        let n = i.len() + j.len();
        let mut seen = vec![false; n];
        for (name, set) in [("I", &i), ("J", &j)] {
            for &k in set.iter() {
                if k >= n {
                    return Err(Error::invalid(format!(
                        "`{name}` entry {k} is out of range 0..{n}"
                    )));
                }
                if seen[k] {
                    return Err(Error::invalid(format!(
                        "index {k} appears twice in `I` ∪ `J`"
                    )));
                }
                seen[k] = true;
            }
        }
        if i.is_empty() {
            return Err(Error::invalid("`I` must be non-empty"));
        }
        if w.len() != i.len() {
            return Err(Error::DimensionMismatch {
                what: "rows of `W`",
                expected: i.len(),
                found: w.len(),
            });
        }
        for (l, row) in w.iter().enumerate() {
            if row.len() != j.len() {
                return Err(Error::invalid(format!(
                    "`W[{l}]` must have {} entries",
                    j.len()
                )));
            }
            if row.iter().any(|x| !x.is_finite()) {
                return Err(Error::invalid(format!("`W[{l}]` has a non-finite entry")));
            }
        }
        Ok(Self { i, j, w })
    }

    /// `J` is the ascending complement of `I` in `0..n`.
    pub fn with_complement(n: usize, i: Vec<usize>, w: Vec<Vec<f64>>) -> Result<Self> {
        let j = (0..n).filter(|k| !i.contains(k)).collect();
        Self::new(i, j, w)
    }

    pub fn zero(n: usize, i: Vec<usize>) -> Result<Self> {
        let w = vec![vec![0.0; n.saturating_sub(i.len())]; i.len()];
        Self::with_complement(n, i, w)
    }

    pub fn n(&self) -> usize {
        self.i.len() + self.j.len()
    }

    pub fn m(&self) -> usize {
        self.i.len()
    }

    pub fn i(&self) -> &[usize] {
        &self.i
    }

    pub fn j(&self) -> &[usize] {
        &self.j
    }

    pub fn w(&self) -> &[Vec<f64>] {
        &self.w
    }

    /// `e_{i_ℓ} + w_ℓ` in ambient coordinates.
    pub fn spanning_vectors(&self) -> Vec<Vec<f64>> {
        let n = self.n();
        self.i
            .iter()
            .zip(&self.w)
            .map(|(&il, row)| {
                let mut v = vec![0.0; n];
                v[il] = 1.0;
                for (&jk, x) in self.j.iter().zip(row) {
                    v[jk] = *x;
                }
                v
            })
            .collect()
    }
}

pub fn chart_to_frame(c: &GrassChart) -> Frame {
    gram_schmidt(&c.spanning_vectors(), 1e-14).expect("chart vectors are independent")
}

fn check_form(form: &DiagonalForm, c: &GrassChart) -> Result<()> {
    if form.n() != c.n() {
        return Err(Error::DimensionMismatch {
            what: "chart ambient dimension",
            expected: form.n(),
            found: c.n(),
        });
    }
    Ok(())
}

/// `ℳ_B[ℓ][ℓ'] = B(w_ℓ, w_ℓ') / α_{i_ℓ}`.
pub fn m_b(form: &DiagonalForm, c: &GrassChart) -> Result<DMatrix<f64>> {
    check_form(form, c)?;
    let m = c.m();
    let a = form.alpha();
    Ok(DMatrix::from_fn(m, m, |l, lp| {
        let b: f64 =
            c.j.iter()
                .enumerate()
                .map(|(k, &jk)| a[jk] * c.w[l][k] * c.w[lp][k])
                .sum();
        b / a[c.i[l]]
    }))
}

/// `det(ℳ_B + 𝕀)`; zero exactly when `B` restricted to the chart's subspace
/// is degenerate.
pub fn degeneracy_det(form: &DiagonalForm, c: &GrassChart) -> Result<f64> {
    let m = m_b(form, c)?;
    let k = m.nrows();
    Ok((m + DMatrix::identity(k, k)).determinant())
}

/// `[B(u_i, u_j)]` on an orthonormal frame of the chart's subspace.
pub fn restricted_form(form: &DiagonalForm, c: &GrassChart) -> Result<DMatrix<f64>> {
    check_form(form, c)?;
    let f = chart_to_frame(c);
    let m = f.m();
    Ok(DMatrix::from_fn(m, m, |i, j| {
        form.apply(f.vector(i), f.vector(j))
    }))
}

/// Coefficients `c_0..c_m` of `det(λ𝕀 − A)` (Faddeev–LeVerrier).
pub fn char_poly(a: &DMatrix<f64>) -> Vec<f64> {
    let m = a.nrows();
    let mut c = vec![0.0; m + 1];
    c[m] = 1.0;
    let mut mk = DMatrix::<f64>::zeros(m, m);
    for k in 1..=m {
        mk = a * &mk + DMatrix::identity(m, m) * c[m + 1 - k];
        c[m - k] = -(a * &mk).trace() / k as f64;
    }
    c
}

/// Sylvester resultant of polynomials given by ascending coefficients.
pub fn resultant(p: &[f64], q: &[f64]) -> f64 {
    let dp = p.len() - 1;
    let dq = q.len() - 1;
    let size = dp + dq;
    if size == 0 {
        return 1.0;
    }
    let mut s = DMatrix::zeros(size, size);
    for row in 0..dq {
        for (k, coef) in p.iter().rev().enumerate() {
            s[(row, row + k)] = *coef;
        }
    }
    for row in 0..dp {
        for (k, coef) in q.iter().rev().enumerate() {
            s[(dq + row, row + k)] = *coef;
        }
    }
    s.determinant()
}

/// Discriminant of a monic-or-not polynomial, ascending coefficients; 1 for
/// degree one.
pub fn poly_discriminant(p: &[f64]) -> f64 {
    let d = p.len() - 1;
    if d <= 1 {
        return 1.0;
    }
    let dp: Vec<f64> = (1..=d).map(|k| k as f64 * p[k]).collect();
    let sign = if (d * (d - 1) / 2).is_multiple_of(2) {
        1.0
    } else {
        -1.0
    };
    sign * resultant(p, &dp) / p[d]
}

/// Discriminant of the characteristic polynomial of `ℳ_B`.
pub fn discriminant_locus(form: &DiagonalForm, c: &GrassChart) -> Result<f64> {
    Ok(poly_discriminant(&char_poly(&m_b(form, c)?)))
}

/// Chart with `w_ℓ = sqrt((ℓ+1)|α_{i_ℓ}/α_{j_ℓ}|) e_{j_ℓ}`, which makes `ℳ_B`
/// diagonal with entries `±1, ±2, …, ±m`. Needs `m ≤ n − m`.
pub fn witness_chart(form: &DiagonalForm, i: Vec<usize>) -> Result<GrassChart> {
    let n = form.n();
    let m = i.len();
    if 2 * m > n {
        return Err(Error::invalid(format!(
            "witness chart needs m ≤ n − m, got m = {m}, n = {n}"
        )));
    }
    let base = GrassChart::zero(n, i)?;
    let a = form.alpha();
    let mut w = base.w.clone();
    for l in 0..m {
        let (il, jl) = (base.i[l], base.j[l]);
        w[l][l] = ((l + 1) as f64 * (a[il] / a[jl]).abs()).sqrt();
    }
    GrassChart::new(base.i, base.j, w)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ScanSettings {
    /// Lines are `t ↦ W₀ + t W₁` for `t ∈ [−half_width, half_width]`.
    pub half_width: f64,
    pub grid: usize,
    pub bisect_tol: f64,
}

impl Default for ScanSettings {
    fn default() -> Self {
        Self {
            half_width: 4.0,
            grid: 10_000,
            bisect_tol: 1e-12,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LineResult {
    pub i: Vec<usize>,
    pub roots: Vec<f64>,
    /// Roots where the discriminant is also small.
    pub joint_roots: usize,
    /// `det` vanishes on the whole sampled line.
    pub identically_zero: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CodimStats {
    pub lines: usize,
    pub lines_with_roots: usize,
    pub isolated_fraction: f64,
    pub total_roots: usize,
    pub joint_roots: usize,
    pub per_line: Vec<LineResult>,
}

fn line_chart(base: &GrassChart, w0: &[Vec<f64>], w1: &[Vec<f64>], t: f64) -> GrassChart {
    let w = w0
        .iter()
        .zip(w1)
        .map(|(a, b)| a.iter().zip(b).map(|(x, y)| x + t * y).collect())
        .collect();
    GrassChart {
        i: base.i.clone(),
        j: base.j.clone(),
        w,
    }
}

/// Root counts of `degeneracy_det` along seeded random lines in random charts.
pub fn codim_scan(form: &DiagonalForm, m: usize, lines: usize, seed: u64) -> Result<CodimStats> {
    codim_scan_with(form, m, lines, seed, ScanSettings::default())
}

pub fn codim_scan_with(
    form: &DiagonalForm,
    m: usize,
    lines: usize,
    seed: u64,
    settings: ScanSettings,
) -> Result<CodimStats> {
    let n = form.n();
    if m == 0 || m >= n {
        return Err(Error::invalid(format!("`m` must lie in 1..{n}, got {m}")));
    }
    if settings.grid < 2 {
        return Err(Error::invalid("scan grid needs at least 2 points"));
    }
    let per_line: Vec<LineResult> = (0..lines)
        .into_par_iter()
        .map(|k| scan_line(form, m, seed, k as u64, settings))
        .collect::<Result<_>>()?;
    let lines_with_roots = per_line.iter().filter(|l| !l.roots.is_empty()).count();
    let isolated = per_line.iter().filter(|l| !l.identically_zero).count();
    Ok(CodimStats {
        lines,
        lines_with_roots,
        isolated_fraction: if lines == 0 {
            1.0
        } else {
            isolated as f64 / lines as f64
        },
        total_roots: per_line.iter().map(|l| l.roots.len()).sum(),
        joint_roots: per_line.iter().map(|l| l.joint_roots).sum(),
        per_line,
    })
}

fn scan_line(
    form: &DiagonalForm,
    m: usize,
    seed: u64,
    k: u64,
    s: ScanSettings,
) -> Result<LineResult> {
    let n = form.n();
    let mut rng = stream(seed, k);
    let mut i: Vec<usize> = sample(&mut rng, n, m).into_vec();
    i.sort_unstable();
    let base = GrassChart::zero(n, i)?;
    let w0: Vec<Vec<f64>> = (0..m).map(|_| gaussian_vec(&mut rng, n - m)).collect();
    let w1: Vec<Vec<f64>> = (0..m).map(|_| gaussian_vec(&mut rng, n - m)).collect();
    let f = |t: f64| degeneracy_det(form, &line_chart(&base, &w0, &w1, t));

    let h = 2.0 * s.half_width / (s.grid - 1) as f64;
    let ts: Vec<f64> = (0..s.grid).map(|g| -s.half_width + g as f64 * h).collect();
    let vals: Vec<f64> = ts.iter().map(|&t| f(t)).collect::<Result<_>>()?;
    let identically_zero = vals.iter().all(|v| v.abs() <= 1e-12);
    let mut roots = Vec::new();
    if !identically_zero {
        for g in 0..s.grid - 1 {
            let (fa, fb) = (vals[g], vals[g + 1]);
            if fa == 0.0 {
                roots.push(ts[g]);
            } else if fa * fb < 0.0 {
                let (mut lo, mut hi, mut flo) = (ts[g], ts[g + 1], fa);
                while hi - lo > s.bisect_tol {
                    let mid = 0.5 * (lo + hi);
                    let fm = f(mid)?;
                    if fm == 0.0 {
                        lo = mid;
                        hi = mid;
                    } else if (fm < 0.0) == (flo < 0.0) {
                        lo = mid;
                        flo = fm;
                    } else {
                        hi = mid;
                    }
                }
                roots.push(0.5 * (lo + hi));
            }
        }
    }
    let mut joint_roots = 0;
    for &t in &roots {
        let c = line_chart(&base, &w0, &w1, t);
        let mb = m_b(form, &c)?;
        let scale = (1.0 + mb.amax()).powi((m * (m - 1)) as i32);
        if discriminant_locus(form, &c)?.abs() <= 1e-8 * scale {
            joint_roots += 1;
        }
    }
    Ok(LineResult {
        i: base.i,
        roots,
        joint_roots,
        identically_zero,
    })
}
