//! Dense real symmetric eigensolver.
//!
//! Backed by nalgebra's Householder tridiagonalization followed by implicit
//! symmetric QR iterations.

use nalgebra::{DMatrix, SymmetricEigen};

use crate::error::{Error, Result};
use crate::matrix::TruncatedMatrix;

/// Max allowed `|M_mn - M_nm|`, relative to `max |M_mn|`.
pub const SYMMETRY_TOLERANCE: f64 = 1e-12;

fn check_symmetric(m: &TruncatedMatrix) -> Result<()> {
    let allowed = SYMMETRY_TOLERANCE * m.max_abs().max(f64::MIN_POSITIVE);
    let asymmetry = m.max_asymmetry();
    if asymmetry > allowed {
        return Err(Error::NotSymmetric { asymmetry, allowed });
    }
    Ok(())
}

/// Ascending eigenvalues of a symmetric matrix.
pub fn symmetric_eigenvalues(m: &TruncatedMatrix) -> Result<Vec<f64>> {
    check_symmetric(m)?;
    if m.order() == 0 {
        return Ok(Vec::new());
    }
    let mut values: Vec<f64> = m
        .to_dmatrix()
        .symmetric_eigenvalues()
        .iter()
        .copied()
        .collect();
    values.sort_by(f64::total_cmp);
    Ok(values)
}

/// Eigenvalues (ascending) with unit eigenvectors as matching columns.
pub struct EigenPairs {
    pub values: Vec<f64>,
    pub vectors: DMatrix<f64>,
}

pub fn symmetric_eigen_pairs(m: &TruncatedMatrix) -> Result<EigenPairs> {
    check_symmetric(m)?;
    let eig = SymmetricEigen::new(m.to_dmatrix());
    let mut order: Vec<usize> = (0..m.order()).collect();
    order.sort_by(|&i, &j| eig.eigenvalues[i].total_cmp(&eig.eigenvalues[j]));
    let values = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let vectors = eig.eigenvectors.select_columns(order.iter());
    Ok(EigenPairs { values, vectors })
}

/// Largest `‖Mv - λv‖` over all pairs.
pub fn max_residual(m: &TruncatedMatrix, pairs: &EigenPairs) -> f64 {
    let dense = m.to_dmatrix();
    pairs
        .values
        .iter()
        .enumerate()
        .map(|(k, &lambda)| {
            let v = pairs.vectors.column(k);
            (&dense * v - v * lambda).norm()
        })
        .fold(0.0, f64::max)
}
