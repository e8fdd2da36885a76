//! Finite-`N` products of the truncated momentum matrix.
//!
//! Sign bookkeeping: with `P = iA`, `P³ = -iA³`, so the reported `-i·S_mn`
//! equals `-(A³)_mn`; likewise `P² = -A²`.

use std::f64::consts::PI;

use crate::basis::BasisIndex;
use crate::error::{Error, Result};
use crate::operator::{a, build_p, r_entry};
use crate::summation::{Accumulation, Accumulator, NeumaierSum};

/// Values of a finite-`N` quantity over increasing truncation sizes.
#[derive(Debug, Clone, PartialEq)]
pub struct ConvergenceSeries {
    pub m: BasisIndex,
    pub n: BasisIndex,
    /// `(N, value)`, strictly increasing in `N`.
    pub points: Vec<(usize, f64)>,
    pub target: Option<f64>,
}

impl ConvergenceSeries {
    /// Signed `value - target` per point; empty when there is no target.
    pub fn errors(&self) -> Vec<(usize, f64)> {
        match self.target {
            Some(t) => self.points.iter().map(|&(n, v)| (n, v - t)).collect(),
            None => Vec::new(),
        }
    }

    /// True when consecutive points lie on opposite sides of the target.
    pub fn alternates(&self) -> bool {
        let errs = self.errors();
        !errs.is_empty() && errs.windows(2).all(|w| w[0].1 * w[1].1 < 0.0)
    }
}

fn check_cutoff(m: BasisIndex, n: BasisIndex, order: usize) -> Result<()> {
    if order < m.get().max(n.get()) {
        return Err(Error::domain(format!(
            "truncation order {order} is below max(m, n) = {}",
            m.get().max(n.get())
        )));
    }
    Ok(())
}

/// `-i·S_mn` at square cutoff `order`, i.e. `-Σ_{r,s ≤ N} a_mr a_rs a_sn`,
/// summed with compensation, `r` outer ascending and `s` inner ascending.
pub fn triple_sum(m: BasisIndex, n: BasisIndex, order: usize) -> Result<f64> {
    triple_sum_with(m, n, order, Accumulation::Compensated)
}

/// [`triple_sum`] with an explicit accumulation policy.
pub fn triple_sum_with(
    m: BasisIndex,
    n: BasisIndex,
    order: usize,
    policy: Accumulation,
) -> Result<f64> {
    check_cutoff(m, n, order)?;
    let (m, n) = (m.get(), n.get());
    let right: Vec<f64> = (1..=order).map(|s| a(s, n)).collect();
    let mut acc = Accumulator::new(policy);
    for r in 1..=order {
        let a_mr = a(m, r);
        if a_mr == 0.0 {
            continue;
        }
        // a_rs is nonzero only for s of the opposite parity to r.
        let first = if r % 2 == 1 { 2 } else { 1 };
        for s in (first..=order).step_by(2) {
            let a_sn = right[s - 1];
            if a_sn == 0.0 {
                continue;
            }
            acc.add(a_mr * a(r, s) * a_sn);
        }
    }
    Ok(-acc.value())
}

/// [`triple_sum`] at each size, paired with the target `-i·R_mn`.
pub fn sweep_triple_sum(
    m: BasisIndex,
    n: BasisIndex,
    sizes: &[usize],
) -> Result<ConvergenceSeries> {
    if sizes.is_empty() {
        return Err(Error::domain("sweep needs at least one truncation size"));
    }
    if sizes.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::domain(
            "truncation sizes must be strictly increasing",
        ));
    }
    let points = sizes
        .iter()
        .map(|&order| triple_sum(m, n, order).map(|v| (order, v)))
        .collect::<Result<Vec<_>>>()?;
    Ok(ConvergenceSeries {
        m,
        n,
        points,
        target: Some(r_entry(m, n)),
    })
}

/// Partial sum of `(P²)_mn = -Σ_{s ≤ N} a_ms a_sn`, which tends to `mn·δ_mn`.
pub fn p2_partial_sum(m: BasisIndex, n: BasisIndex, order: usize) -> f64 {
    let (m, n) = (m.get(), n.get());
    let mut acc = NeumaierSum::new();
    for s in 1..=order {
        let t = a(m, s) * a(s, n);
        if t != 0.0 {
            acc.add(-t);
        }
    }
    acc.value()
}

/// Both groupings of `P·P²` versus `P²·P` at `(m, n)`, i-factored.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AssociativityGap {
    /// `Σ_s P_ms (P²)_sn`
    pub left: f64,
    /// `Σ_s (P²)_ms P_sn`
    pub right: f64,
}

/// With `P²` exactly diagonal both sums collapse to one term: `n²·a_mn` on
/// the left and `m²·a_mn` on the right.
pub fn associativity_gap(m: BasisIndex, n: BasisIndex) -> AssociativityGap {
    let (m, n) = (m.get(), n.get());
    let p2 = |r: usize, s: usize| if r == s { (r * r) as f64 } else { 0.0 };
    let top = m.max(n);
    let left: f64 = (1..=top).map(|s| a(m, s) * p2(s, n)).sum();
    let right: f64 = (1..=top).map(|s| p2(m, s) * a(s, n)).sum();
    AssociativityGap { left, right }
}

/// Partial sum of the ill-defined `(P P² P)_mn`:
/// `-16mn/π² · Σ s⁴ / ((m² - s²)(s² - n²))` over `s ≤ s_max` of parity
/// opposite to `m` and `n`.
///
/// Each summand tends to `-1`, so this grows linearly in `s_max`.
pub fn pp2p_direct_partial(m: BasisIndex, n: BasisIndex, s_max: usize) -> Result<f64> {
    if !(m.get() + n.get()).is_multiple_of(2) {
        return Err(Error::domain(format!(
            "PP²P sum is empty for m + n odd (m = {m}, n = {n})"
        )));
    }
    let (mf, nf) = (m.get() as f64, n.get() as f64);
    let first = if m.is_odd() { 2 } else { 1 };
    let mut acc = NeumaierSum::new();
    for s in (first..=s_max).step_by(2) {
        let s2 = (s as f64) * (s as f64);
        acc.add(s2 * s2 / ((mf * mf - s2) * (s2 - nf * nf)));
    }
    Ok(-16.0 * mf * nf / (PI * PI) * acc.value())
}

/// `(Q⁴)_mn = Σ_s (Q²)_ms (Q²)_sn` for the order-`N` truncation, real.
///
/// Only rows `m` and `n` of `Q²` are formed, each entry exactly as
/// [`crate::spectra::q_squared`] computes it.
pub fn quad_power_entry(m: BasisIndex, n: BasisIndex, order: usize) -> Result<f64> {
    check_cutoff(m, n, order)?;
    let q = build_p(order)?;
    let row_m = q_squared_row(&q, m.get());
    let row_n = if m == n {
        row_m.clone()
    } else {
        q_squared_row(&q, n.get())
    };
    let acc: NeumaierSum = row_m.iter().zip(&row_n).map(|(x, y)| x * y).collect();
    Ok(acc.value())
}

/// Row `m` of `Q² = -A²`, using `(Q²)_mt = Σ_r a_mr a_tr` (antisymmetry of `a`).
pub(crate) fn q_squared_row(q: &crate::TruncatedMatrix, m: usize) -> Vec<f64> {
    let order = q.order();
    (1..=order)
        .map(|t| {
            if (m + t) % 2 == 1 {
                0.0
            } else {
                q_squared_dot(q.row(m), q.row(t), m)
            }
        })
        .collect()
}

/// `Σ_r a_mr a_tr` over `r` ascending, skipping the structurally zero half.
#[inline]
pub(crate) fn q_squared_dot(row_m: &[f64], row_t: &[f64], m: usize) -> f64 {
    let first = if m % 2 == 1 { 1 } else { 0 }; // 0-based slot of the first r with parity opposite m
    let mut sum = 0.0;
    let mut r = first;
    while r < row_m.len() {
        sum += row_m[r] * row_t[r];
        r += 2;
    }
    sum
}
