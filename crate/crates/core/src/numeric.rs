//! Small numeric helpers.

use nalgebra::{Cholesky, DMatrix, Dyn};

/// Cholesky factorization that rejects semi-definite matrices: nalgebra
/// accepts zero pivots, which would silently give infinite covariances and
/// -inf log-determinants downstream.
pub(crate) fn spd_cholesky(k: &DMatrix<f64>) -> Option<Cholesky<f64, Dyn>> {
    let max_diag = k.diagonal().amax().max(f64::MIN_POSITIVE);
    let chol = k.clone().cholesky()?;
    let min_pivot = chol
        .l_dirty()
        .diagonal()
        .iter()
        .fold(f64::INFINITY, |acc, &l| acc.min(l * l));
    if min_pivot <= 1e-12 * max_diag {
        None
    } else {
        Some(chol)
    }
}

/// Numerically stable log(sum(exp(x_i))).
pub fn logsumexp(values: &[f64]) -> f64 {
    let max = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if !max.is_finite() {
        return max;
    }
    let sum: f64 = values.iter().map(|v| (v - max).exp()).sum();
    max + sum.ln()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matches_naive_sum_in_safe_range() {
        let xs = [0.5_f64, 2.0, -1.0];
        let naive = xs.iter().map(|x| x.exp()).sum::<f64>().ln();
        assert!((logsumexp(&xs) - naive).abs() <= 1e-14);
    }

    #[test]
    fn survives_large_magnitudes() {
        let xs = [1234.0, 1232.0];
        let expected = 1232.0 + (2.0_f64.exp() + 1.0).ln();
        assert!((logsumexp(&xs) - expected).abs() <= 1e-12);
        assert_eq!(logsumexp(&[f64::NEG_INFINITY; 3]), f64::NEG_INFINITY);
    }
}
