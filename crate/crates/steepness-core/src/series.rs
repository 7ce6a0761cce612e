//! Univariate power series truncated at a fixed order.

#[derive(Debug, Clone, PartialEq)]
pub struct Series {
    coeffs: Vec<f64>,
}

impl Series {
    /// Zero series keeping `t^0 … t^order`.
    pub fn zero(order: usize) -> Series {
        Series {
            coeffs: vec![0.0; order + 1],
        }
    }

    pub fn one(order: usize) -> Series {
        let mut s = Series::zero(order);
        s.coeffs[0] = 1.0;
        s
    }

    /// Truncates or pads `coeffs` to the given order.
    pub fn from_coeffs(mut coeffs: Vec<f64>, order: usize) -> Series {
        coeffs.resize(order + 1, 0.0);
        Series { coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> f64 {
        self.coeffs.get(k).copied().unwrap_or(0.0)
    }

    pub fn mul(&self, other: &Series) -> Series {
        let order = self.order().min(other.order());
        let mut out = Series::zero(order);
        for (i, &a) in self.coeffs.iter().enumerate().take(order + 1) {
            if a == 0.0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate().take(order + 1 - i) {
                out.coeffs[i + j] += a * b;
            }
        }
        out
    }

    pub fn add_scaled(&mut self, other: &Series, s: f64) {
        for (a, b) in self.coeffs.iter_mut().zip(&other.coeffs) {
            *a += s * b;
        }
    }

    /// `self^0, …, self^max` by repeated multiplication.
    pub fn powers(&self, max: usize) -> Vec<Series> {
        let mut out = vec![Series::one(self.order())];
        for k in 1..=max {
            let next = out[k - 1].mul(self);
            out.push(next);
        }
        out
    }
}
