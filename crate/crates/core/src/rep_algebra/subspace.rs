use nalgebra::{DMatrix, DVector};
use serde::{Serialize, Serializer};

use super::action::Action;
use super::report::{CheckReport, Sample, Witness, Worst};
use crate::error::{Error, Result};
use crate::lie_core::Sampler;
use crate::matrix::{column_span, rank, RANK_TOL};
use crate::prolongation::{prolong, Representation};

/// A linearly independent set of vectors spanning a subspace of `R^n`.
#[derive(Clone, Debug, PartialEq)]
pub struct SubspaceBasis {
    ambient_dim: usize,
    vectors: Vec<DVector<f64>>,
}

impl Serialize for SubspaceBasis {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr<'a> {
            ambient_dim: usize,
            vectors: Vec<&'a [f64]>,
        }
        Repr {
            ambient_dim: self.ambient_dim,
            vectors: self.vectors.iter().map(|v| v.as_slice()).collect(),
        }
        .serialize(serializer)
    }
}

impl SubspaceBasis {
    pub fn new(ambient_dim: usize, vectors: Vec<DVector<f64>>) -> Result<Self> {
        if ambient_dim == 0 {
            return Err(Error::DimensionMismatch {
                expected: 1,
                found: 0,
            });
        }
        if let Some(bad) = vectors.iter().find(|v| v.len() != ambient_dim) {
            return Err(Error::DimensionMismatch {
                expected: ambient_dim,
                found: bad.len(),
            });
        }
        if vectors.iter().flat_map(|v| v.iter()).any(|x| !x.is_finite()) {
            return Err(Error::NonFinite { context: "subspace basis" });
        }
        let basis = Self {
            ambient_dim,
            vectors,
        };
        if basis.vectors.len() > ambient_dim || rank(&basis.matrix(), RANK_TOL) != basis.vectors.len() {
            return Err(Error::Singular {
                context: "subspace basis is linearly dependent",
            });
        }
        Ok(basis)
    }

    pub fn from_slices(ambient_dim: usize, vectors: &[&[f64]]) -> Result<Self> {
        Self::new(ambient_dim, vectors.iter().map(|v| DVector::from_column_slice(v)).collect())
    }

    /// The zero subspace.
    pub fn zero(ambient_dim: usize) -> Self {
        Self {
            ambient_dim,
            vectors: vec![],
        }
    }

    pub fn full(ambient_dim: usize) -> Self {
        let eye = DMatrix::<f64>::identity(ambient_dim, ambient_dim);
        Self {
            ambient_dim,
            vectors: eye.column_iter().map(|c| c.into_owned()).collect(),
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.vectors.len()
    }

    pub fn vectors(&self) -> &[DVector<f64>] {
        &self.vectors
    }

    /// The basis vectors as columns.
    pub fn matrix(&self) -> DMatrix<f64> {
        if self.vectors.is_empty() {
            DMatrix::zeros(self.ambient_dim, 0)
        } else {
            DMatrix::from_columns(&self.vectors)
        }
    }

    /// `M U` for an invertible `M`.
    pub fn transformed(&self, m: &DMatrix<f64>) -> Result<Self> {
        Self::new(m.nrows(), self.vectors.iter().map(|v| m * v).collect())
    }

    /// Distance of `w` from the span, relative to `max(1, |w|)`.
    pub fn residual(&self, w: &DVector<f64>) -> f64 {
        let q = column_span(&self.matrix(), RANK_TOL);
        let projected = &q * (q.transpose() * w);
        (w - projected).norm() / w.norm().max(1.0)
    }
}

/// Checks `Phi(a) u` stays in `span(U)` for sampled `a` and every basis
/// vector `u`, by least-squares projection. Vacuously passes for the zero
/// subspace.
pub fn is_invariant_subspace(
    action: Action<'_>,
    u: &SubspaceBasis,
    sample_count: usize,
    seed: u64,
    tol: f64,
) -> Result<CheckReport> {
    if u.ambient_dim() != action.dim() {
        return Err(Error::DimensionMismatch {
            expected: action.dim(),
            found: u.ambient_dim(),
        });
    }
    const NAME: &str = "invariant_subspace";
    if u.dim() == 0 {
        return Ok(CheckReport::pass(NAME, 0.0).with_note("zero subspace"));
    }
    let q = column_span(&u.matrix(), RANK_TOL);
    let projector = &q * q.transpose();
    let sampler = Sampler::new(seed);
    let mut worst = Worst::default();
    for i in 0..sample_count as u64 {
        let sample = action.sample(&sampler, i);
        let m = action.matrix(&sample)?;
        let residual = q
            .column_iter()
            .map(|basis| {
                let w = &m * basis;
                (&w - &projector * &w).norm() / w.norm().max(1.0)
            })
            .fold(0.0, f64::max);
        worst.offer(residual, || Witness::Sample {
            seed,
            index: i,
            sample: sample.clone(),
        });
    }
    Ok(worst.into_report(NAME, tol))
}

/// `TU`: the `2k` vectors `(u_i, 0)` followed by `(0, u_i)`.
pub fn prolong_subspace(u: &SubspaceBasis) -> SubspaceBasis {
    let n = u.ambient_dim();
    let lift = |v: &DVector<f64>, offset: usize| {
        let mut out = DVector::zeros(2 * n);
        out.rows_mut(offset, n).copy_from(v);
        out
    };
    let vectors = u
        .vectors()
        .iter()
        .map(|v| lift(v, 0))
        .chain(u.vectors().iter().map(|v| lift(v, n)))
        .collect();
    SubspaceBasis {
        ambient_dim: 2 * n,
        vectors,
    }
}

/// The fiber directions `{(0, v)}` in `TV`, `dim V = n`.
pub fn vertical_subspace(n: usize) -> SubspaceBasis {
    let vectors = (0..n)
        .map(|i| {
            let mut v = DVector::zeros(2 * n);
            v[n + i] = 1.0;
            v
        })
        .collect();
    SubspaceBasis {
        ambient_dim: 2 * n,
        vectors,
    }
}

/// Recovers invariance of `U` from the prolongation: the base components of
/// the images of `(u, 0)` under sampled prolonged matrices must lie in `U`.
pub fn base_invariance_from_prolonged(
    rep: &Representation,
    u: &SubspaceBasis,
    sample_count: usize,
    seed: u64,
    tol: f64,
) -> Result<CheckReport> {
    let n = rep.target_dim();
    if u.ambient_dim() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: u.ambient_dim(),
        });
    }
    const NAME: &str = "base_invariance_from_prolonged";
    let sampler = Sampler::new(seed);
    let mut worst = Worst::default();
    for i in 0..sample_count as u64 {
        let x = sampler.tangent(rep.group(), i);
        let m = prolong(rep, &x)?.dense();
        let residual = u
            .vectors()
            .iter()
            .map(|v| {
                let mut lifted = DVector::zeros(2 * n);
                lifted.rows_mut(0, n).copy_from(v);
                let image = &m * lifted;
                u.residual(&image.rows(0, n).into_owned())
            })
            .fold(0.0, f64::max);
        worst.offer(residual, || Witness::Sample {
            seed,
            index: i,
            sample: Sample::Tangent(x.clone()),
        });
    }
    Ok(worst.into_report(NAME, tol))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie_core::GroupSpec;
    use crate::rep_algebra::Verdict;

    fn circle() -> Representation {
        Representation::circle_winding("circle_rotation", 1)
    }

    #[test]
    fn full_and_zero_subspaces_pass() {
        let rep = circle();
        assert!(is_invariant_subspace(Action::Base(&rep), &SubspaceBasis::full(2), 50, 0, 1e-9).unwrap().passed());
        let r = is_invariant_subspace(Action::Base(&rep), &SubspaceBasis::zero(2), 50, 0, 1e-9).unwrap();
        assert!(r.passed());
    }

    #[test]
    fn a_line_is_not_rotation_invariant() {
        let rep = circle();
        let line = SubspaceBasis::from_slices(2, &[&[1.0, 0.0]]).unwrap();
        let r = is_invariant_subspace(Action::Base(&rep), &line, 50, 0, 1e-9).unwrap();
        assert_eq!(r.verdict, Verdict::Fail);
        assert!(r.witness.is_some());
        // A quarter turn carries (1, 0) to a unit vector orthogonal to it.
        let quarter = rep.apply(&crate::lie_core::GroupElement::circle(std::f64::consts::FRAC_PI_2)).unwrap();
        assert!((line.residual(&(quarter.as_matrix() * line.vectors()[0].clone())) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn prolonged_subspace_layout() {
        let u = SubspaceBasis::from_slices(2, &[&[1.0, 0.0]]).unwrap();
        let tu = prolong_subspace(&u);
        assert_eq!(tu.ambient_dim(), 4);
        assert_eq!(tu.vectors()[0].as_slice(), &[1.0, 0.0, 0.0, 0.0]);
        assert_eq!(tu.vectors()[1].as_slice(), &[0.0, 0.0, 1.0, 0.0]);
        assert_eq!(prolong_subspace(&SubspaceBasis::full(3)).matrix(), DMatrix::identity(6, 6));
    }

    #[test]
    fn vertical_subspace_is_invariant_for_any_prolongation() {
        let reps = [
            circle(),
            Representation::defining("sl3", GroupSpec::special_linear(3).unwrap()),
        ];
        for rep in &reps {
            let v = vertical_subspace(rep.target_dim());
            assert!(is_invariant_subspace(Action::Prolonged(rep), &v, 100, 3, 1e-12).unwrap().passed());
        }
    }

    #[test]
    fn invariance_transfers_both_ways() {
        let rep = circle();
        let line = SubspaceBasis::from_slices(2, &[&[1.0, 0.0]]).unwrap();
        let tline = prolong_subspace(&line);
        let fwd = is_invariant_subspace(Action::Prolonged(&rep), &tline, 50, 0, 1e-9).unwrap();
        assert_eq!(fwd.verdict, Verdict::Fail);
        let back = base_invariance_from_prolonged(&rep, &line, 50, 0, 1e-9).unwrap();
        assert_eq!(back.verdict, Verdict::Fail);
    }

    #[test]
    fn dependent_basis_is_rejected() {
        assert!(SubspaceBasis::from_slices(2, &[&[1.0, 1.0], &[2.0, 2.0]]).is_err());
        assert!(SubspaceBasis::from_slices(2, &[&[1.0, 1.0, 0.0]]).is_err());
        let rep = circle();
        let wrong = SubspaceBasis::full(3);
        assert!(is_invariant_subspace(Action::Base(&rep), &wrong, 1, 0, 1e-9).is_err());
    }
}
