//! Matrix groups, their Lie algebras, and the tangent group `TG` in right
//! trivialization.
//!
//! The group law on `TG` is the semidirect product
//! `[a, B] [a', B'] = [a a', B + a B' a^-1]`. It is stored explicitly; the
//! block embedding in [`crate::prolongation::jn_embed`] is its correctness
//! oracle.

mod exp;
mod group;
mod sample;
mod tangent;

pub use exp::{exp_matrix, log_matrix, mat_exp, EXP_NORM_LIMIT};
pub use group::{
    circle_generator, rotation, AlgebraElement, GroupElement, GroupKind, GroupSpec, KindTag,
    MEMBERSHIP_TOL,
};
pub use sample::{sample_group_element, Sampler};
pub use tangent::{tg_inverse, tg_multiply, TangentGroupElement};
