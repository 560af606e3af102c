use std::fmt;
use std::sync::Arc;

use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::lie_core::{rotation, AlgebraElement, GroupElement, GroupSpec};
use crate::matrix::{invert, SquareMatrix};

type ApplyFn = dyn Fn(&GroupElement) -> Result<DMatrix<f64>> + Send + Sync;
type DifferentialFn = dyn Fn(&AlgebraElement) -> Result<DMatrix<f64>> + Send + Sync;

/// A finite-dimensional real representation `G -> GL(n)`, given by its
/// matrix map and, optionally, its analytic differential `dPhi` on the Lie
/// algebra.
#[derive(Clone)]
pub struct Representation {
    name: String,
    group: GroupSpec,
    target_dim: usize,
    apply: Arc<ApplyFn>,
    differential: Option<Arc<DifferentialFn>>,
}

impl fmt::Debug for Representation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Representation")
            .field("name", &self.name)
            .field("group", &self.group)
            .field("target_dim", &self.target_dim)
            .field("analytic_differential", &self.differential.is_some())
            .finish()
    }
}

impl Representation {
    pub fn new<F>(name: impl Into<String>, group: GroupSpec, target_dim: usize, apply: F) -> Result<Self>
    where
        F: Fn(&GroupElement) -> Result<DMatrix<f64>> + Send + Sync + 'static,
    {
        if target_dim == 0 {
            return Err(Error::DimensionMismatch {
                expected: 1,
                found: 0,
            });
        }
        Ok(Self {
            name: name.into(),
            group,
            target_dim,
            apply: Arc::new(apply),
            differential: None,
        })
    }

    /// Attaches an analytic differential `B -> dPhi(B)`.
    pub fn with_differential<F>(mut self, differential: F) -> Self
    where
        F: Fn(&AlgebraElement) -> Result<DMatrix<f64>> + Send + Sync + 'static,
    {
        self.differential = Some(Arc::new(differential));
        self
    }

    /// Drops the analytic differential so that `dPhi` is computed by finite
    /// differences.
    pub fn without_differential(mut self) -> Self {
        self.differential = None;
        self
    }

    pub fn renamed(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn group(&self) -> &GroupSpec {
        &self.group
    }

    pub fn target_dim(&self) -> usize {
        self.target_dim
    }

    pub fn has_analytic_differential(&self) -> bool {
        self.differential.is_some()
    }

    /// The matrix `Phi(a)`.
    pub fn apply(&self, a: &GroupElement) -> Result<SquareMatrix> {
        if a.spec() != &self.group {
            return Err(Error::GroupMismatch {
                left: self.group.clone(),
                right: a.spec().clone(),
            });
        }
        let m = SquareMatrix::new((self.apply)(a)?)?;
        if m.dim() != self.target_dim {
            return Err(Error::DimensionMismatch {
                expected: self.target_dim,
                found: m.dim(),
            });
        }
        Ok(m)
    }

    /// The analytic differential `dPhi(B)`, if one was supplied.
    pub fn analytic_differential(&self, b: &AlgebraElement) -> Option<Result<SquareMatrix>> {
        let f = self.differential.as_ref()?;
        if b.spec() != &self.group {
            return Some(Err(Error::GroupMismatch {
                left: self.group.clone(),
                right: b.spec().clone(),
            }));
        }
        Some(f(b).and_then(|m| {
            let m = SquareMatrix::new(m)?;
            if m.dim() == self.target_dim {
                Ok(m)
            } else {
                Err(Error::DimensionMismatch {
                    expected: self.target_dim,
                    found: m.dim(),
                })
            }
        }))
    }

    /// The defining representation `a -> a`, with `dPhi(B) = B`.
    pub fn defining(name: impl Into<String>, group: GroupSpec) -> Self {
        let n = group.dim();
        Self::new(name, group, n, |a| Ok(a.matrix().as_matrix().clone()))
            .expect("positive dimension")
            .with_differential(|b| Ok(b.matrix().as_matrix().clone()))
    }

    /// The trivial representation on `R^n`.
    pub fn trivial(name: impl Into<String>, group: GroupSpec, n: usize) -> Result<Self> {
        Ok(Self::new(name, group, n, move |_| Ok(DMatrix::identity(n, n)))?
            .with_differential(move |_| Ok(DMatrix::zeros(n, n))))
    }

    /// The circle representation `theta -> rotation(k theta)` on `R^2`.
    pub fn circle_winding(name: impl Into<String>, k: i32) -> Self {
        let kf = f64::from(k);
        Self::new(name, GroupSpec::circle(), 2, move |a| {
            let theta = a.circle_angle().expect("circle element");
            Ok(rotation(kf * theta))
        })
        .expect("positive dimension")
        .with_differential(move |b| Ok(b.matrix().as_matrix() * kf))
    }

    /// The equivalent representation `A Phi A^-1`.
    pub fn conjugated(&self, a0: &DMatrix<f64>) -> Result<Self> {
        if a0.nrows() != self.target_dim || a0.ncols() != self.target_dim {
            return Err(Error::DimensionMismatch {
                expected: self.target_dim,
                found: a0.nrows(),
            });
        }
        let a0_inv = invert(a0)?;
        let inner = self.clone();
        let (p, q) = (a0.clone(), a0_inv.clone());
        let mut out = Self::new(
            format!("conj({})", self.name),
            self.group.clone(),
            self.target_dim,
            move |g| Ok(&p * inner.apply(g)?.as_matrix() * &q),
        )?;
        if self.differential.is_some() {
            let inner = self.clone();
            let (p, q) = (a0.clone(), a0_inv);
            out = out.with_differential(move |b| {
                let k = inner
                    .analytic_differential(b)
                    .expect("checked above")?;
                Ok(&p * k.as_matrix() * &q)
            });
        }
        Ok(out)
    }
}
