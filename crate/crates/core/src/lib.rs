//! Momentum matrix of a particle in a box in the sine basis `u_m(x) = (2/π)^{1/2} sin mx`
//! on `[0, π]`, and the finite-truncation experiments built on it.
//!
//! Every entry of the momentum matrix `P` is purely imaginary, so matrices are
//! stored in *i-factored* form: `P = iA` with `A` real antisymmetric. Products
//! of even order (`P² = -A²`) are then real symmetric and can be handed to a
//! real eigensolver.
//!
//! Modules:
//! - [`operator`]: closed-form matrix elements and a quadrature oracle for them.
//! - [`algebra`]: finite-`N` triple products, partial sums and divergent probes.
//! - [`spectra`]: eigenvalues of the truncated `Q` and `Q²`, parity blocks and
//!   the delete-trailing-rows repair.
//! - [`asymptotics`]: boundary-row tail contribution and its approximations.
//!
//! All public indices are 1-based.

pub mod algebra;
pub mod asymptotics;
pub mod basis;
pub mod error;
pub mod fit;
pub mod matrix;
pub mod operator;
pub mod spectra;
pub mod summation;

pub use algebra::{
    associativity_gap, p2_partial_sum, pp2p_direct_partial, quad_power_entry, sweep_triple_sum,
    triple_sum, triple_sum_with, AssociativityGap, ConvergenceSeries,
};
pub use asymptotics::{
    boundary_row_tail, near_boundary_parts, near_boundary_tail, telescoping_closed_form,
    telescoping_sum, TailEstimate,
};
pub use basis::BasisIndex;
pub use error::{Error, Result};
pub use matrix::{Convention, TruncatedMatrix};
pub use operator::{
    build_p, exact_p2_entry, momentum_entry, naive_p3_entry, quadrature::quadrature_entry, r_entry,
};
pub use spectra::{
    eigen_symmetric, near_integer_check, parity_reorder, q_spectrum_pairing, q_squared,
    repair_convergence, truncate_after_squaring, NearInteger, PairingReport, RepairPoint,
    RepairSeries, SpectrumReport, TruncationSpec,
};
pub use summation::{Accumulation, NeumaierSum};
