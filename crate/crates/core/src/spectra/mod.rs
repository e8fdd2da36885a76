//! Spectra of the truncated matrix `Q` and of `Q²`.
//!
//! `Q = iA` with `A` real antisymmetric, so `Q` has eigenvalues `±iλ`; they are
//! recovered from the real symmetric `Q² = -A²` rather than from a complex
//! solver. Reported `Q` eigenvalues are the magnitudes `λ = √μ` for `μ` in the
//! spectrum of `Q²`.

pub mod eigen;

use crate::algebra::q_squared_dot;
use crate::error::{Error, Result};
use crate::matrix::{Convention, TruncatedMatrix};
use crate::operator::build_p;

pub use eigen::{max_residual, symmetric_eigen_pairs, symmetric_eigenvalues, EigenPairs};

/// Relative tolerance under which two eigenvalues count as one degenerate level.
pub const DEGENERACY_TOLERANCE: f64 = 1e-6;

/// Eigenvalues below this fraction of the spectral radius are treated as zero.
pub const ZERO_MODE_TOLERANCE: f64 = 1e-9;

/// Sorted spectrum with degeneracy groups.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectrumReport {
    pub order: usize,
    pub eigenvalues: Vec<f64>,
    /// `(value, multiplicity)` per level, ascending.
    pub degeneracy_groups: Vec<(f64, usize)>,
    /// `|√λ - nearest reference integer|`, when a reference is attached.
    pub reference_errors: Option<Vec<f64>>,
}

impl SpectrumReport {
    pub fn from_eigenvalues(mut eigenvalues: Vec<f64>, tolerance: f64) -> Self {
        eigenvalues.sort_by(f64::total_cmp);
        let degeneracy_groups = group_levels(&eigenvalues, tolerance);
        SpectrumReport {
            order: eigenvalues.len(),
            eigenvalues,
            degeneracy_groups,
            reference_errors: None,
        }
    }

    pub fn is_nondegenerate(&self) -> bool {
        self.degeneracy_groups.iter().all(|&(_, k)| k == 1)
    }

    /// Attaches `|√λ - r|` for the reference integer `r` nearest to each `√λ`
    /// under `nearest`.
    pub fn with_reference(mut self, nearest: impl Fn(f64) -> f64) -> Self {
        self.reference_errors = Some(
            self.eigenvalues
                .iter()
                .map(|&l| {
                    let root = l.max(0.0).sqrt();
                    (root - nearest(root)).abs()
                })
                .collect(),
        );
        self
    }
}

/// Groups an ascending list into levels: each value joins the current level
/// when it lies within `tolerance` (relative) of the level's first value.
pub fn group_levels(sorted: &[f64], tolerance: f64) -> Vec<(f64, usize)> {
    let scale = sorted.iter().fold(0.0_f64, |acc, v| acc.max(v.abs()));
    let floor = ZERO_MODE_TOLERANCE * scale;
    let mut groups: Vec<(f64, usize)> = Vec::new();
    for &v in sorted {
        match groups.last_mut() {
            Some((head, count))
                if (v - *head).abs() <= tolerance * v.abs().max(head.abs()) + floor =>
            {
                *count += 1
            }
            _ => groups.push((v, 1)),
        }
    }
    groups
}

/// Eigen-decomposition of a symmetric matrix into a [`SpectrumReport`]
/// grouped at [`DEGENERACY_TOLERANCE`].
pub fn eigen_symmetric(m: &TruncatedMatrix) -> Result<SpectrumReport> {
    let values = symmetric_eigenvalues(m)?;
    Ok(SpectrumReport::from_eigenvalues(
        values,
        DEGENERACY_TOLERANCE,
    ))
}

/// `Q² = -A·A` for `A = build_p(order)`: real, symmetric, positive semidefinite.
///
/// Entries with `m + n` odd are exactly zero and the upper triangle is mirrored,
/// so the result is exactly symmetric. Each entry is the ascending sum
/// `Σ_r a_mr a_nr`, so the same `(m, n)` entry is bit-identical across any
/// orders where both sums see the same nonzero terms.
pub fn q_squared(order: usize) -> Result<TruncatedMatrix> {
    let q = build_p(order)?;
    let mut out = TruncatedMatrix::zeros(order, Convention::Plain)?;
    for m in 1..=order {
        for n in (m..=order).step_by(2) {
            let v = q_squared_dot(q.row(m), q.row(n), m);
            out.set(m, n, v);
            out.set(n, m, v);
        }
    }
    Ok(out)
}

/// `±λ` pairing of the eigenvalues of `Q`.
#[derive(Debug, Clone, PartialEq)]
pub struct PairingReport {
    pub order: usize,
    /// Positive `λ`, one per `±λ` pair, ascending.
    pub pair_magnitudes: Vec<f64>,
    pub zero_modes: usize,
    /// Levels of `Q²` that could not be split into `±` pairs.
    pub unpaired: Vec<f64>,
}

impl PairingReport {
    pub fn pair_count(&self) -> usize {
        self.pair_magnitudes.len()
    }

    /// Every nonzero eigenvalue paired, and a single zero mode iff the order is odd.
    pub fn is_consistent(&self) -> bool {
        self.unpaired.is_empty() && self.zero_modes == self.order % 2
    }
}

/// Pairs the eigenvalues of `Q` (order `order`) via the spectrum of `Q²`.
///
/// `tol` is the relative tolerance for calling two eigenvalues of `Q²` equal.
pub fn q_spectrum_pairing(order: usize, tol: f64) -> Result<PairingReport> {
    let values = symmetric_eigenvalues(&q_squared(order)?)?;
    Ok(pair_from_squared(order, &values, tol))
}

pub(crate) fn pair_from_squared(order: usize, squared: &[f64], tol: f64) -> PairingReport {
    let scale = squared.iter().fold(1.0_f64, |acc, v| acc.max(v.abs()));
    let zero = ZERO_MODE_TOLERANCE * scale;
    let mut report = PairingReport {
        order,
        pair_magnitudes: Vec::new(),
        zero_modes: 0,
        unpaired: Vec::new(),
    };
    let mut rest = Vec::with_capacity(squared.len());
    for &mu in squared {
        if mu.abs() <= zero {
            report.zero_modes += 1;
        } else {
            rest.push(mu);
        }
    }
    rest.sort_by(f64::total_cmp);
    for (level, count) in group_levels(&rest, tol) {
        let magnitude = level.max(0.0).sqrt();
        for _ in 0..count / 2 {
            report.pair_magnitudes.push(magnitude);
        }
        if count % 2 == 1 {
            report.unpaired.push(level);
        }
    }
    report
}

/// One eigenvalue magnitude of `Q` against the nearest integer of parity
/// opposite to the order.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NearInteger {
    pub magnitude: f64,
    pub integer: u64,
    pub error: f64,
}

/// Nearest integer to `x` (≥ 0) with the given parity (`odd = true` for 1, 3, 5, …).
pub fn nearest_with_parity(x: f64, odd: bool) -> u64 {
    if odd {
        (2.0 * ((x - 1.0) / 2.0).round() + 1.0).max(1.0) as u64
    } else {
        (2.0 * (x / 2.0).round()).max(0.0) as u64
    }
}

/// For each positive eigenvalue magnitude of `Q`, the distance to the nearest
/// integer whose parity is opposite to `order`'s.
pub fn near_integer_check(order: usize) -> Result<Vec<NearInteger>> {
    if order < 2 {
        return Err(Error::domain("near-integer check needs order at least 2"));
    }
    let pairing = q_spectrum_pairing(order, DEGENERACY_TOLERANCE)?;
    Ok(near_integers(order, &pairing.pair_magnitudes))
}

/// [`NearInteger`] for each given magnitude of an order-`order` `Q`.
pub fn near_integers(order: usize, magnitudes: &[f64]) -> Vec<NearInteger> {
    let odd_target = order.is_multiple_of(2);
    magnitudes
        .iter()
        .map(|&magnitude| {
            let integer = nearest_with_parity(magnitude, odd_target);
            NearInteger {
                magnitude,
                integer,
                error: (magnitude - integer as f64).abs(),
            }
        })
        .collect()
}

/// The 1-based indices `1, 3, 5, …, 2, 4, …` for an order-`order` matrix.
pub fn parity_permutation(order: usize) -> Vec<usize> {
    (1..=order)
        .step_by(2)
        .chain((2..=order).step_by(2))
        .collect()
}

/// Similarity transform by [`parity_permutation`]: odd indices first, then even.
pub fn parity_reorder(m: &TruncatedMatrix) -> TruncatedMatrix {
    m.select(&parity_permutation(m.order()))
}

/// The odd-odd and even-even principal blocks, each in ascending index order.
pub fn parity_blocks(m: &TruncatedMatrix) -> (TruncatedMatrix, TruncatedMatrix) {
    let odd: Vec<usize> = (1..=m.order()).step_by(2).collect();
    let even: Vec<usize> = (2..=m.order()).step_by(2).collect();
    (m.select(&odd), m.select(&even))
}

/// Square first, then drop trailing rows and columns.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TruncationSpec {
    /// Order of `Q` before squaring.
    pub build_order: usize,
    /// How many of the largest-index rows/columns of `Q²` to delete.
    pub deleted_tail: usize,
}

impl TruncationSpec {
    pub fn new(build_order: usize, deleted_tail: usize) -> Result<Self> {
        if deleted_tail >= build_order {
            return Err(Error::domain(format!(
                "cannot delete {deleted_tail} rows from an order-{build_order} matrix"
            )));
        }
        Ok(Self {
            build_order,
            deleted_tail,
        })
    }

    pub fn kept_order(&self) -> usize {
        self.build_order - self.deleted_tail
    }
}

/// `Q²` at `spec.build_order` with its last `spec.deleted_tail` rows and
/// columns removed (largest indices in the natural 1..N ordering).
pub fn truncate_after_squaring(spec: TruncationSpec) -> Result<TruncatedMatrix> {
    if spec.deleted_tail >= spec.build_order {
        return Err(Error::domain(
            "deleted tail must be smaller than the build order",
        ));
    }
    let full = q_squared(spec.build_order)?;
    if spec.deleted_tail == 0 {
        return Ok(full);
    }
    Ok(full.leading(spec.kept_order()))
}

/// Number of low eigenvalues compared against `1, 4, 9, …`.
pub const REPAIR_LEVELS: usize = 10;

#[derive(Debug, Clone, PartialEq)]
pub struct RepairPoint {
    pub deleted_tail: usize,
    /// Lowest [`REPAIR_LEVELS`] eigenvalues of the repaired matrix.
    pub lowest: Vec<f64>,
    /// `max_k |λ_k - k²| / k²` over those levels.
    pub max_relative_error: f64,
    /// No two of the lowest levels coincide at [`DEGENERACY_TOLERANCE`].
    pub nondegenerate: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RepairSeries {
    pub build_order: usize,
    pub points: Vec<RepairPoint>,
}

impl RepairSeries {
    /// Error never increases with the number of deleted rows (in the order given).
    pub fn is_monotone(&self) -> bool {
        self.points
            .windows(2)
            .all(|w| w[1].max_relative_error <= w[0].max_relative_error)
    }
}

/// Accuracy of the lowest levels of `Q²` after deleting `d` trailing rows and
/// columns, for each `d` in `deleted`.
pub fn repair_convergence(order: usize, deleted: &[usize]) -> Result<RepairSeries> {
    if let Some(&d) = deleted
        .iter()
        .find(|&&d| d >= order || order - d < REPAIR_LEVELS)
    {
        return Err(Error::domain(format!(
            "deleting {d} rows from order {order} leaves fewer than {REPAIR_LEVELS} levels"
        )));
    }
    let full = q_squared(order)?;
    let points = deleted
        .iter()
        .map(|&d| {
            let values = symmetric_eigenvalues(&full.leading(order - d))?;
            let lowest: Vec<f64> = values[..REPAIR_LEVELS].to_vec();
            let max_relative_error = lowest
                .iter()
                .enumerate()
                .map(|(k, &l)| {
                    let exact = ((k + 1) * (k + 1)) as f64;
                    (l - exact).abs() / exact
                })
                .fold(0.0, f64::max);
            let nondegenerate = group_levels(&lowest, DEGENERACY_TOLERANCE)
                .iter()
                .all(|&(_, c)| c == 1);
            Ok(RepairPoint {
                deleted_tail: d,
                lowest,
                max_relative_error,
                nondegenerate,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(RepairSeries {
        build_order: order,
        points,
    })
}
