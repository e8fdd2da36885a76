//! Contribution of the boundary row `r = N` and column `s = N - 1` to the
//! square-cutoff triple sum, and the approximations that show it cancels.
//!
//! Everything here omits the overall factor `64imn/π³`.

use crate::basis::BasisIndex;
use crate::error::{Error, Result};
use crate::summation::NeumaierSum;

/// Exact boundary-row expression, for `m` odd, `n` even, `N` even:
///
/// ```text
///   N²/(m² - N²) · Σ_{s odd < N} s² / ((N² - s²)(s² - n²))
/// + (N-1)²/((N-1)² - n²) · Σ_{r even ≤ N-2} r² / ((m² - r²)(r² - (N-1)²))
/// ```
///
/// Keeps the `m²` and `n²` terms that [`near_boundary_tail`] drops. Requires
/// `N ≥ 10(m + n)`.
pub fn boundary_row_tail(m: BasisIndex, n: BasisIndex, order: usize) -> Result<f64> {
    if !m.is_odd() || n.is_odd() || order % 2 == 1 {
        return Err(Error::domain(format!(
            "boundary tail needs m odd, n even, N even (got m = {m}, n = {n}, N = {order})"
        )));
    }
    if order < 10 * (m.get() + n.get()) {
        return Err(Error::domain(format!(
            "boundary tail needs N ≥ 10(m + n); got N = {order}"
        )));
    }
    let (m2, n2) = ((m.get() as f64).powi(2), (n.get() as f64).powi(2));
    let big = order as f64;
    let big2 = big * big;
    let prev2 = (big - 1.0) * (big - 1.0);

    let first: NeumaierSum = (1..order)
        .step_by(2)
        .map(|s| {
            let s2 = (s as f64) * (s as f64);
            s2 / ((big2 - s2) * (s2 - n2))
        })
        .collect();
    let second: NeumaierSum = (2..=order - 2)
        .step_by(2)
        .map(|r| {
            let r2 = (r as f64) * (r as f64);
            r2 / ((m2 - r2) * (r2 - prev2))
        })
        .collect();

    Ok(big2 / (m2 - big2) * first.value() + prev2 / (prev2 - n2) * second.value())
}

fn check_k_max(order: usize, k_max: usize) -> Result<()> {
    if order % 2 == 1 {
        return Err(Error::domain("near-boundary tail needs an even N"));
    }
    if k_max == 0 || 10 * k_max > order {
        return Err(Error::domain(format!(
            "k_max must lie in 1..=N/10 (got k_max = {k_max}, N = {order})"
        )));
    }
    Ok(())
}

/// The two sums of the near-boundary approximation, each positive:
/// `(Σ_{k=0}^{K-1} 1/((2k+1)(2N-2k-1)), Σ_{k=1}^{K} 1/((2k-1)(2N-2k-1)))`.
///
/// Both take `K = k_max` terms: the first runs over `s = N-1-2k`, the second
/// over `r = N-2k`.
pub fn near_boundary_parts(order: usize, k_max: usize) -> Result<(f64, f64)> {
    check_k_max(order, k_max)?;
    let big = order as f64;
    let first: NeumaierSum = (0..k_max)
        .map(|k| {
            let k = k as f64;
            1.0 / ((2.0 * k + 1.0) * (2.0 * big - 2.0 * k - 1.0))
        })
        .collect();
    let second: NeumaierSum = (1..=k_max)
        .map(|k| {
            let k = k as f64;
            1.0 / ((2.0 * k - 1.0) * (2.0 * big - 2.0 * k - 1.0))
        })
        .collect();
    Ok((first.value(), second.value()))
}

/// `-first + second` from [`near_boundary_parts`]: the boundary tail with the
/// `m²`, `n²` terms dropped and `r`, `s` restricted to within `2·k_max` of `N`.
pub fn near_boundary_tail(order: usize, k_max: usize) -> Result<f64> {
    let (first, second) = near_boundary_parts(order, k_max)?;
    Ok(second - first)
}

/// `Σ_{k=0}^{k_max} 1/(4k² - 1)`, summed directly.
pub fn telescoping_sum(k_max: usize) -> f64 {
    let acc: NeumaierSum = (0..=k_max)
        .map(|k| {
            let k = k as f64;
            1.0 / (4.0 * k * k - 1.0)
        })
        .collect();
    acc.value()
}

/// `-1/2 - 1/(2(2k_max + 1))`, the telescoped value of [`telescoping_sum`].
pub fn telescoping_closed_form(k_max: usize) -> f64 {
    -0.5 - 0.5 / (2.0 * k_max as f64 + 1.0)
}

/// The boundary contribution at one `(m, n, N)` and its two approximations.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TailEstimate {
    pub m: BasisIndex,
    pub n: BasisIndex,
    pub order: usize,
    pub k_max: usize,
    /// [`boundary_row_tail`]
    pub exact: f64,
    /// [`near_boundary_tail`]
    pub near_boundary: f64,
    /// `(1/N)(1/2 + telescoping_sum(k_max))`
    pub telescoped: f64,
}

impl TailEstimate {
    pub fn compute(m: BasisIndex, n: BasisIndex, order: usize, k_max: usize) -> Result<Self> {
        let exact = boundary_row_tail(m, n, order)?;
        let near_boundary = near_boundary_tail(order, k_max)?;
        let telescoped = (0.5 + telescoping_sum(k_max)) / order as f64;
        let estimate = TailEstimate {
            m,
            n,
            order,
            k_max,
            exact,
            near_boundary,
            telescoped,
        };
        if ![exact, near_boundary, telescoped]
            .iter()
            .all(|v| v.is_finite())
        {
            return Err(Error::domain("tail estimate is not finite"));
        }
        Ok(estimate)
    }
}
