//! Closed-form matrix elements of the momentum operator `p = -i d/dx` and its
//! powers in the sine basis.
//!
//! All `*_entry` functions return the value with the factor `i` stripped where
//! the true entry is imaginary: `P_mn = i·momentum_entry(m, n)`.

pub mod quadrature;

use std::f64::consts::PI;

use crate::basis::BasisIndex;
use crate::error::Result;
use crate::matrix::{Convention, TruncatedMatrix};

/// `a_mn` on raw 1-based indices.
#[inline]
pub(crate) fn a(m: usize, n: usize) -> f64 {
    if (m + n).is_multiple_of(2) {
        return 0.0;
    }
    // One evaluation per unordered pair so that a(n, m) == -a(m, n) bit for bit.
    if m < n {
        raw(m, n)
    } else {
        -raw(n, m)
    }
}

#[inline]
fn raw(m: usize, n: usize) -> f64 {
    let (mf, nf) = (m as f64, n as f64);
    // m² - n² is an exact integer for any index we can realistically store.
    -4.0 * mf * nf / (PI * ((mf * mf) - (nf * nf)))
}

/// `a_mn` with `P_mn = i·a_mn`: `-4mn / (π(m² - n²))` for `m + n` odd, else 0.
pub fn momentum_entry(m: BasisIndex, n: BasisIndex) -> f64 {
    a(m.get(), n.get())
}

/// `(P²)_mn = mn·δ_mn`.
pub fn exact_p2_entry(m: BasisIndex, n: BasisIndex) -> f64 {
    if m == n {
        let v = m.get() as f64;
        v * v
    } else {
        0.0
    }
}

/// i-factored value of `∫ u_m (-i d/dx)³ u_n dx`, which is `n²·a_mn`.
///
/// This matrix is not Hermitian: `naive_p3_entry(n, m)` is `m²·a_nm`, not
/// `-n²·a_mn`.
pub fn naive_p3_entry(m: BasisIndex, n: BasisIndex) -> f64 {
    let nf = n.get() as f64;
    nf * nf * momentum_entry(m, n)
}

/// i-factored Hermitian part of the naive `P³`: `(m² + n²)/2 · a_mn`.
///
/// Computed as `(H_mn + conj(H_nm))/2` from [`naive_p3_entry`]; in i-factored
/// form the conjugate transpose contributes `-naive_p3_entry(n, m)`.
pub fn r_entry(m: BasisIndex, n: BasisIndex) -> f64 {
    (naive_p3_entry(m, n) - naive_p3_entry(n, m)) / 2.0
}

/// The truncated momentum matrix `Q` of order `order`, i-factored.
pub fn build_p(order: usize) -> Result<TruncatedMatrix> {
    if order == 0 {
        return Err(crate::Error::domain("truncation order must be at least 1"));
    }
    let mut q = TruncatedMatrix::zeros(order, Convention::IFactored)?;
    for m in 1..=order {
        // Opposite parity only; even m+n entries stay zero.
        for n in ((m + 1)..=order).step_by(2) {
            let v = raw(m, n);
            q.set(m, n, v);
            q.set(n, m, -v);
        }
    }
    Ok(q)
}
