use serde::Serialize;

use super::group::{same_group, AlgebraElement, GroupElement, GroupSpec};
use crate::error::Result;

/// A tangent vector `Y = TR_a(B)` to a matrix group, stored as the pair
/// `[a, B]` in right trivialization.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TangentGroupElement {
    base: GroupElement,
    algebra: AlgebraElement,
}

impl TangentGroupElement {
    pub fn new(base: GroupElement, algebra: AlgebraElement) -> Result<Self> {
        same_group(base.spec(), algebra.spec())?;
        Ok(Self { base, algebra })
    }

    pub fn identity(spec: GroupSpec) -> Self {
        Self {
            base: GroupElement::identity(spec.clone()),
            algebra: AlgebraElement::zero(spec),
        }
    }

    pub fn base(&self) -> &GroupElement {
        &self.base
    }

    pub fn algebra(&self) -> &AlgebraElement {
        &self.algebra
    }

    pub fn spec(&self) -> &GroupSpec {
        self.base.spec()
    }

    /// `[a, B] [a', B'] = [a a', B + a B' a^-1]`.
    pub fn multiply(&self, other: &TangentGroupElement) -> Result<TangentGroupElement> {
        same_group(self.spec(), other.spec())?;
        let a = self.base.matrix().as_matrix();
        let a_inv = self.base.matrix().inverse()?;
        let fiber = self.algebra.matrix().as_matrix()
            + a * other.algebra.matrix().as_matrix() * a_inv.as_matrix();
        Ok(Self {
            base: self.base.mul(&other.base)?,
            algebra: AlgebraElement::from_matrix(self.spec().clone(), fiber)?,
        })
    }

    /// `[a, B]^-1 = [a^-1, -a^-1 B a]`.
    pub fn inverse(&self) -> Result<TangentGroupElement> {
        let a = self.base.matrix().as_matrix();
        let base = self.base.inverse()?;
        let fiber = -(base.matrix().as_matrix() * self.algebra.matrix().as_matrix() * a);
        Ok(Self {
            algebra: AlgebraElement::from_matrix(self.spec().clone(), fiber)?,
            base,
        })
    }
}

pub fn tg_multiply(x: &TangentGroupElement, y: &TangentGroupElement) -> Result<TangentGroupElement> {
    x.multiply(y)
}

pub fn tg_inverse(x: &TangentGroupElement) -> Result<TangentGroupElement> {
    x.inverse()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;
    use crate::lie_core::sample::Sampler;
    use crate::matrix::rel_residual;
    use nalgebra::DMatrix;

    fn scalar(a: f64, b: f64) -> TangentGroupElement {
        let gl1 = GroupSpec::general_linear(1).unwrap();
        TangentGroupElement::new(
            GroupElement::from_matrix(gl1.clone(), DMatrix::from_element(1, 1, a)).unwrap(),
            AlgebraElement::from_matrix(gl1, DMatrix::from_element(1, 1, b)).unwrap(),
        )
        .unwrap()
    }

    fn parts(x: &TangentGroupElement) -> (f64, f64) {
        (x.base().matrix()[(0, 0)], x.algebra().matrix()[(0, 0)])
    }

    #[test]
    fn scalar_product_and_inverse() {
        assert_eq!(parts(&tg_multiply(&scalar(2.0, 3.0), &scalar(5.0, 7.0)).unwrap()), (10.0, 10.0));
        assert_eq!(parts(&tg_inverse(&scalar(2.0, 3.0)).unwrap()), (0.5, -3.0));
    }

    #[test]
    fn identity_is_neutral() {
        let spec = GroupSpec::special_orthogonal(3).unwrap();
        let x = Sampler::new(11).tangent(&spec, 0);
        let e = TangentGroupElement::identity(spec);
        assert_eq!(tg_multiply(&e, &x).unwrap(), x);
        assert_eq!(tg_inverse(&e).unwrap(), e);
    }

    #[test]
    fn zero_fiber_inverse_is_matrix_inverse() {
        let spec = GroupSpec::general_linear(3).unwrap();
        let a = Sampler::new(4).group(&spec, 0);
        let x = TangentGroupElement::new(a.clone(), AlgebraElement::zero(spec)).unwrap();
        let inv = tg_inverse(&x).unwrap();
        assert!(rel_residual(inv.base().matrix(), a.inverse().unwrap().matrix()) < 1e-12);
        assert_eq!(crate::matrix::max_abs(inv.algebra().matrix()), 0.0);
    }

    #[test]
    fn inverse_law_on_samples() {
        let spec = GroupSpec::special_linear(3).unwrap();
        let sampler = Sampler::new(8);
        for i in 0..50 {
            let x = sampler.tangent(&spec, i);
            let prod = tg_multiply(&x, &tg_inverse(&x).unwrap()).unwrap();
            assert!(rel_residual(prod.base().matrix(), &DMatrix::identity(3, 3)) < 1e-9);
            assert!(crate::matrix::max_abs(prod.algebra().matrix()) < 1e-9);
        }
    }

    #[test]
    fn mismatched_groups_are_rejected() {
        let x = Sampler::new(0).tangent(&GroupSpec::circle(), 0);
        let y = Sampler::new(0).tangent(&GroupSpec::special_orthogonal(2).unwrap(), 0);
        assert!(matches!(tg_multiply(&x, &y), Err(Error::GroupMismatch { .. })));
    }
}
