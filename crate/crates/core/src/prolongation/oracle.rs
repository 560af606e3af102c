use nalgebra::DVector;

use super::differential::FD_STEP;
use super::representation::Representation;
use crate::error::{Error, Result};
use crate::lie_core::{mat_exp, GroupElement};
use crate::tv_space::{ProductTangent, TangentVector};

/// The tangent map of the action `(a, p) -> Phi(a) p`, evaluated on
/// `([a, B], (p, v))` by differentiating the curve
/// `t -> Phi(exp(t B) a) (p + t v)` at `t = 0` with a central difference.
///
/// Independent of [`super::prolong`]: it touches the representation only
/// through `Phi` itself.
pub fn tangent_action_oracle(rep: &Representation, pair: &ProductTangent) -> Result<TangentVector> {
    let x = pair.first();
    let y = pair.second();
    if y.dim() != rep.target_dim() {
        return Err(Error::DimensionMismatch {
            expected: rep.target_dim(),
            found: y.dim(),
        });
    }
    let a = x.base();
    let curve = |t: f64| -> Result<DVector<f64>> {
        let moved = mat_exp(x.algebra(), t)?.matrix().as_matrix() * a.matrix().as_matrix();
        let g = GroupElement::from_matrix(a.spec().clone(), moved)?;
        let point = y.base() + y.fiber() * t;
        Ok(rep.apply(&g)?.as_matrix() * point)
    };
    let h = FD_STEP;
    let derivative = (curve(h)? - curve(-h)?) / (2.0 * h);
    if !derivative.iter().all(|v| v.is_finite()) {
        return Err(Error::StepSize { step: h });
    }
    let base = rep.apply(a)?.as_matrix() * y.base();
    TangentVector::new(base, derivative)
}
