use nalgebra::DMatrix;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::lie_core::TangentGroupElement;
use crate::matrix::SquareMatrix;
use crate::tv_space::TangentVector;

/// The lower block-triangular matrix `[[R, 0], [KR, R]]`, stored by blocks so
/// the zero block and the repeated diagonal block are exact.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ProlongedMatrix {
    top_left: SquareMatrix,
    bottom_left: SquareMatrix,
}

impl ProlongedMatrix {
    /// Builds `[[r, 0], [kr, r]]`.
    pub fn new(r: SquareMatrix, kr: SquareMatrix) -> Result<Self> {
        if r.dim() != kr.dim() {
            return Err(Error::DimensionMismatch {
                expected: r.dim(),
                found: kr.dim(),
            });
        }
        Ok(Self {
            top_left: r,
            bottom_left: kr,
        })
    }

    pub fn identity(n: usize) -> Self {
        Self {
            top_left: SquareMatrix::identity(n),
            bottom_left: SquareMatrix::zeros(n),
        }
    }

    pub fn n(&self) -> usize {
        self.top_left.dim()
    }

    /// The diagonal block `R`.
    pub fn top_left(&self) -> &SquareMatrix {
        &self.top_left
    }

    /// The lower-left block `K R`.
    pub fn bottom_left(&self) -> &SquareMatrix {
        &self.bottom_left
    }

    pub fn dense(&self) -> DMatrix<f64> {
        let n = self.n();
        let mut out = DMatrix::zeros(2 * n, 2 * n);
        out.view_mut((0, 0), (n, n)).copy_from(self.top_left.as_matrix());
        out.view_mut((n, n), (n, n)).copy_from(self.top_left.as_matrix());
        out.view_mut((n, 0), (n, n)).copy_from(self.bottom_left.as_matrix());
        out
    }

    /// Block product, preserving the structure.
    pub fn mul(&self, other: &ProlongedMatrix) -> Result<ProlongedMatrix> {
        if self.n() != other.n() {
            return Err(Error::DimensionMismatch {
                expected: self.n(),
                found: other.n(),
            });
        }
        let r = self.top_left.as_matrix() * other.top_left.as_matrix();
        let kr = self.bottom_left.as_matrix() * other.top_left.as_matrix()
            + self.top_left.as_matrix() * other.bottom_left.as_matrix();
        Self::new(SquareMatrix::new(r)?, SquareMatrix::new(kr)?)
    }
}

/// `[a, B] -> [[a, 0], [B a, a]]`.
pub fn jn_embed(x: &TangentGroupElement) -> ProlongedMatrix {
    let a = x.base().matrix();
    let ba = x.algebra().matrix().as_matrix() * a.as_matrix();
    ProlongedMatrix {
        top_left: a.clone(),
        bottom_left: SquareMatrix::new(ba).expect("product of finite matrices"),
    }
}

/// `(p, v) -> (R p, K R p + R v)`.
pub fn apply_prolonged(m: &ProlongedMatrix, y: &TangentVector) -> Result<TangentVector> {
    if m.n() != y.dim() {
        return Err(Error::DimensionMismatch {
            expected: m.n(),
            found: y.dim(),
        });
    }
    let r = m.top_left.as_matrix();
    let base = r * y.base();
    let fiber = m.bottom_left.as_matrix() * y.base() + r * y.fiber();
    TangentVector::new(base, fiber)
}
