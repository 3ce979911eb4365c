//! Simulation of a single-atom stimulated-emission amplifier acting on
//! polarized single photons.
//!
//! The crate is organized bottom-up:
//!
//! - [`fock`]: single-photon polarization states, the three-dimensional
//!   symmetric two-photon space `{|2,0⟩, |1,1⟩, |0,2⟩}` and the rotation
//!   family `U(θ)` acting on it.
//! - [`amplifier`]: the amplifier output for an incoming photon at angle `θ`,
//!   for distinguishable and identical atom final states.
//! - [`ensemble`]: outcome probabilities for the equal mixture of `θ` and
//!   `θ+π/2` inputs, by closed form, by projection and by seeded Monte Carlo.
//! - [`protocol`]: the EPR-pair signaling scheme built on the amplifier and a
//!   density-matrix linearity diagnostic.
//! - [`causality`]: Lorentz kinematics for the two-frame, four-channel relay
//!   and the critical frame speed at which the relay closes a causal loop.
//!
//! All angles are in radians and all speeds are in units of `c`.

pub mod amplifier;
pub mod causality;
pub mod ensemble;
mod error;
pub mod fock;
pub mod protocol;
pub mod rng;

pub use amplifier::{
    branch_amplitudes, branch_weights, scatter, AmplifierBranch, AtomTag, BranchWeights,
    EmissionConstants, ScatteredState, Variant,
};
pub use causality::{
    boost, compose_velocity, run_loop, violation_threshold, Event, LoopConfig, LoopReport,
};
pub use ensemble::{
    closed_form_probs, differential_sigma_20, first_principles_probs, monte_carlo_counts,
    monte_carlo_probs, sweep, CountTriple, MixtureEnsemble, ProbabilityTriple, SweepRow,
};
pub use error::{Error, Result};
pub use fock::{
    projection_probability, rotated_basis, single_photon_state, symmetric_lift,
    two_photon_rotation, FockBasis, PolarizationAngle, RotationOperator2, RotationOperator3,
    SinglePhotonState, TwoPhotonState,
};
pub use protocol::{
    epr_conditional_input, linearity_gap, reduced_density, transmit, DensityMatrix2,
    LinearityReport, ProtocolConfig, TransmissionReport,
};
