//! The tangent bundle `TV` of `V = R^n` as a `2n`-dimensional vector space.
//!
//! Tangent vectors are stored in trivialized coordinates `(p, v)`: the base
//! point and the fiber components. In these coordinates the bundle sum and
//! scalar product are componentwise.

use nalgebra::{DMatrix, DVector};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::lie_core::TangentGroupElement;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TangentVector {
    base: DVector<f64>,
    fiber: DVector<f64>,
}

impl TangentVector {
    pub fn new(base: DVector<f64>, fiber: DVector<f64>) -> Result<Self> {
        if base.len() != fiber.len() {
            return Err(Error::DimensionMismatch {
                expected: base.len(),
                found: fiber.len(),
            });
        }
        if !base.iter().chain(fiber.iter()).all(|x| x.is_finite()) {
            return Err(Error::NonFinite {
                context: "tangent vector",
            });
        }
        Ok(Self { base, fiber })
    }

    pub fn from_slices(base: &[f64], fiber: &[f64]) -> Result<Self> {
        Self::new(DVector::from_column_slice(base), DVector::from_column_slice(fiber))
    }

    pub fn zero(n: usize) -> Self {
        Self {
            base: DVector::zeros(n),
            fiber: DVector::zeros(n),
        }
    }

    /// Splits a `2n` coordinate vector `(p, v)`.
    pub fn from_coordinates(coords: &DVector<f64>) -> Result<Self> {
        if !coords.len().is_multiple_of(2) {
            return Err(Error::DimensionMismatch {
                expected: coords.len() + 1,
                found: coords.len(),
            });
        }
        let n = coords.len() / 2;
        Self::new(coords.rows(0, n).into_owned(), coords.rows(n, n).into_owned())
    }

    pub fn dim(&self) -> usize {
        self.base.len()
    }

    pub fn base(&self) -> &DVector<f64> {
        &self.base
    }

    pub fn fiber(&self) -> &DVector<f64> {
        &self.fiber
    }

    /// Stacked coordinates `(p, v)` of length `2n`.
    pub fn coordinates(&self) -> DVector<f64> {
        let n = self.dim();
        DVector::from_fn(2 * n, |i, _| if i < n { self.base[i] } else { self.fiber[i - n] })
    }
}

/// Bundle sum: `(p1, v1) + (p2, v2) = (p1 + p2, v1 + v2)`.
pub fn tv_add(u: &TangentVector, w: &TangentVector) -> Result<TangentVector> {
    if u.dim() != w.dim() {
        return Err(Error::DimensionMismatch {
            expected: u.dim(),
            found: w.dim(),
        });
    }
    Ok(TangentVector {
        base: &u.base + &w.base,
        fiber: &u.fiber + &w.fiber,
    })
}

/// Bundle scalar product: `c (p, v) = (c p, c v)`.
pub fn tv_scale(c: f64, u: &TangentVector) -> TangentVector {
    TangentVector {
        base: &u.base * c,
        fiber: &u.fiber * c,
    }
}

/// An ordered basis of `TV`.
#[derive(Clone, Debug, PartialEq)]
pub struct TVBasis {
    vectors: Vec<TangentVector>,
}

impl TVBasis {
    pub fn new(vectors: Vec<TangentVector>) -> Result<Self> {
        let Some(first) = vectors.first() else {
            return Err(Error::DimensionMismatch {
                expected: 2,
                found: 0,
            });
        };
        let n = first.dim();
        if vectors.len() != 2 * n || vectors.iter().any(|v| v.dim() != n) {
            return Err(Error::DimensionMismatch {
                expected: 2 * n,
                found: vectors.len(),
            });
        }
        let basis = Self { vectors };
        if crate::matrix::rank(&basis.coordinate_matrix(), crate::matrix::RANK_TOL) != 2 * n {
            return Err(Error::Singular {
                context: "tangent basis",
            });
        }
        Ok(basis)
    }

    pub fn vectors(&self) -> &[TangentVector] {
        &self.vectors
    }

    /// Matrix whose columns are the trivialized coordinates of the basis vectors.
    pub fn coordinate_matrix(&self) -> DMatrix<f64> {
        let cols: Vec<_> = self.vectors.iter().map(TangentVector::coordinates).collect();
        DMatrix::from_columns(&cols)
    }

    /// Coefficients of `u` in this basis.
    pub fn coefficients(&self, u: &TangentVector) -> Result<DVector<f64>> {
        if 2 * u.dim() != self.vectors.len() {
            return Err(Error::DimensionMismatch {
                expected: self.vectors.len() / 2,
                found: u.dim(),
            });
        }
        self.coordinate_matrix()
            .lu()
            .solve(&u.coordinates())
            .ok_or(Error::Singular {
                context: "tangent basis",
            })
    }

    /// `sum_i c_i e_i` built with the bundle operations.
    pub fn combine(&self, coefficients: &DVector<f64>) -> Result<TangentVector> {
        let n = self.vectors[0].dim();
        self.vectors
            .iter()
            .zip(coefficients.iter())
            .try_fold(TangentVector::zero(n), |acc, (v, &c)| tv_add(&acc, &tv_scale(c, v)))
    }
}

/// The basis `(e_1, 0), ..., (e_n, 0), (0, e_1), ..., (0, e_n)`.
pub fn canonical_basis(n: usize) -> Result<TVBasis> {
    if n == 0 {
        return Err(Error::DimensionMismatch {
            expected: 1,
            found: 0,
        });
    }
    let e = |i: usize| {
        let mut v = DVector::zeros(n);
        v[i] = 1.0;
        v
    };
    let horizontal = (0..n).map(|i| TangentVector {
        base: e(i),
        fiber: DVector::zeros(n),
    });
    let vertical = (0..n).map(|i| TangentVector {
        base: DVector::zeros(n),
        fiber: e(i),
    });
    Ok(TVBasis {
        vectors: horizontal.chain(vertical).collect(),
    })
}

/// A tangent vector to `G x V`: a tangent group element paired with a tangent
/// vector of `V`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ProductTangent {
    group: TangentGroupElement,
    vector: TangentVector,
}

impl ProductTangent {
    pub fn first(&self) -> &TangentGroupElement {
        &self.group
    }

    pub fn second(&self) -> &TangentVector {
        &self.vector
    }
}

pub fn pair_tangents(x: &TangentGroupElement, y: &TangentVector) -> ProductTangent {
    ProductTangent {
        group: x.clone(),
        vector: y.clone(),
    }
}
