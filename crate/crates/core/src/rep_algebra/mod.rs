//! Structural properties of representations and their prolongations as
//! executable, seed-deterministic checks: homomorphism, intertwiners,
//! invariant subspaces, commutants, direct sums and faithfulness.
//!
//! Every sample-based check draws its samples from a [`Sampler`](crate::lie_core::Sampler)
//! keyed by `(seed, index)` and reports the worst residual together with the
//! sample that produced it.

mod action;
mod checks;
mod commutant;
mod direct_sum;
mod faithfulness;
mod intertwiner;
mod report;
mod subspace;

pub use action::Action;
pub use checks::{check_homomorphism, check_oracle_agreement, check_prolonged_homomorphism, ORACLE_TOL};
pub use commutant::{
    certify_irreducible_2d, commutant_basis, reducibility_probe, Commutant, Reducibility, ReducibilityProbe,
    PROBE_TOL,
};
pub use direct_sum::{check_direct_sum_commutation, direct_sum, interleave_permutation, Permutation};
pub use faithfulness::{faithfulness_probe, COLLISION_TOL};
pub use intertwiner::{is_intertwiner, prolong_intertwiner, Intertwiner, TransferredIntertwiner};
pub use report::{CheckReport, Sample, Verdict, Witness};
pub use subspace::{
    base_invariance_from_prolonged, is_invariant_subspace, prolong_subspace, vertical_subspace, SubspaceBasis,
};
