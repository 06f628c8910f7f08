//! Bound states of the one-dimensional Dirac equation with point
//! interactions.
//!
//! The potential is `V(x) = sum_i g_i delta(x - r_i)`; levels are found in
//! the gap `(-m, m)` by two independent engines:
//!
//! * [`greens`]: zeros of `det Delta(E)`, the `2N x 2N` matrix built from the
//!   free Green's function;
//! * [`transfer`]: the matching condition on a chain of 2x2 connection and
//!   gap matrices, under either [`DeltaConvention`].
//!
//! [`closedform`] holds the explicit equations for one, two and three
//! centers, used as cross-checks and for the limiting-case audits.

pub mod closedform;
pub mod error;
pub mod gap;
pub mod greens;
pub mod matrix;
pub mod model;
pub mod presets;
pub mod rootfind;
pub mod transfer;

pub use error::{Error, Result};
pub use gap::{kappa_of, rho_of, rho_power_identities, x_variable, GapVariables, RhoPowers};
pub use greens::{assemble_delta_matrix, delta_determinant, free_greens, greens_spectrum, DeltaMatrix};
pub use matrix::Matrix2;
pub use model::{BoundStateProblem, DeltaCenter, DeltaConvention, EnergySpectrum, Mass, Multiplicity, SpectralRoot};
pub use presets::{Preset, PresetKind};
pub use rootfind::SolverOptions;
pub use transfer::{
    bound_state_residual, delta_connection, free_gap_matrix, is_valid_connection, segment_matrix, total_transfer,
    transfer_spectrum, ConnectionMatrix, RectangularSegment, ScaledTransfer,
};
