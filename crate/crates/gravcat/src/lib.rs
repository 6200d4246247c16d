//! Thermal two-qubit gravitational cat states in correlated dephasing
//! channels.
//!
//! Two massive superpositions ("gravcats") coupled by gravity are modeled as
//! two qubits. The crate builds their thermal Gibbs X-state in closed form,
//! evolves it through a classically correlated dephasing channel driven by
//! random-telegraph noise, and computes three quantumness measures: l1-norm
//! coherence, local quantum Fisher information, and the maximal Bell-CHSH
//! value. Every closed form is paired with an independent brute-force
//! oracle, and a sweep engine reproduces the published figure data as CSV
//! and SVG.
//!
//! Start with [`state::gibbs_closed_form`], [`channel::evolve_closed_form`],
//! and the functions in [`quantifiers`]; see the crate examples for complete
//! runnable walkthroughs.

// `!(x >= 0.0)` is used deliberately throughout to reject NaN along with
// out-of-range values; indexed loops are the natural shape of the small
// dense-matrix kernels.
#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::needless_range_loop)]

pub mod channel;
pub mod error;
pub mod matrix;
pub mod quantifiers;
pub mod state;
pub mod sweep;
pub mod verify;

pub use channel::{decoherence_factor, evolve_closed_form, memory_kernel, ChannelSpec, Regime};
pub use error::{GravcatError, Result};
pub use quantifiers::QuantifierRecord;
pub use state::{gibbs_closed_form, gibbs_oracle, GravcatXState, PhysicalParams};
