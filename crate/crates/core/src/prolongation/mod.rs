//! Prolongation of a representation `Phi: G -> GL(n)` to
//! `TG -> GL(2n)`:
//!
//! ```text
//! [a, B]  ->  | R    0 |     R = Phi(a),  K = dPhi(B)
//!             | K R  R |
//! ```
//!
//! acting on trivialized `TV` by `(p, v) -> (R p, K R p + R v)`.

mod differential;
mod embed;
mod oracle;
mod representation;

pub use differential::{differential_rep, differential_report, numeric_differential, DifferentialReport, FD_STEP};
pub use embed::{apply_prolonged, jn_embed, ProlongedMatrix};
pub use oracle::tangent_action_oracle;
pub use representation::Representation;

use crate::error::{Error, Result};
use crate::lie_core::TangentGroupElement;
use crate::matrix::SquareMatrix;

/// The prolonged matrix of `rep` at the tangent group element `x`.
pub fn prolong(rep: &Representation, x: &TangentGroupElement) -> Result<ProlongedMatrix> {
    if x.spec() != rep.group() {
        return Err(Error::GroupMismatch {
            left: rep.group().clone(),
            right: x.spec().clone(),
        });
    }
    let r = rep.apply(x.base())?;
    let sv = r.clone().into_inner().svd(false, false).singular_values;
    if sv.min().is_nan() || sv.min() <= 1e-14 * sv.max() {
        return Err(Error::Singular {
            context: "representation matrix",
        });
    }
    let k = differential_rep(rep, x.algebra())?;
    let kr = SquareMatrix::new(k.as_matrix() * r.as_matrix())?;
    ProlongedMatrix::new(r, kr)
}
