//! Normalization pipeline: splitting, pseudo-Hamiltonian normal form,
//! reduction to a generalized normal form, and conjugacy checks.

pub mod counting;
pub mod gnf;
pub mod gphnf;
pub mod pushforward;
pub mod system;
pub mod verify;

pub use counting::{bracket_matrix, resonance_equation_count, resonant_set_count};
pub use gnf::{build_y_set, compute_gnf, compute_gnf_with, reduce_to_gnf, support, GnfOutcome, PairChoice, PairPolicy, Rule, Slot, YSet, YSlot};
pub use gphnf::{compute_gphnf, gphnf_step, is_gphnf, DegreeSets, MinimalSets, SetProvider, StepResult, UserSets};
pub use pushforward::{push_forward, push_forward_field};
pub use system::{coeffs_from_fg, split_perturbation, FgSplit, HamiltonianSystem, Transformation};
pub use verify::{verify_conjugacy, ConjugacyReport, DegreeResidual};
