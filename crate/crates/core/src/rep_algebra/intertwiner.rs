use nalgebra::DMatrix;
use serde::Serialize;

use super::action::Action;
use super::report::{CheckReport, Witness, Worst};
use crate::error::{Error, Result};
use crate::lie_core::Sampler;
use crate::matrix::{block_diag, rank, rel_residual, RANK_TOL};

/// A linear map `A: V -> V'` between representation spaces, stored as a
/// `dim V' x dim V` matrix.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Intertwiner {
    matrix: DMatrix<f64>,
}

impl Intertwiner {
    pub fn new(matrix: DMatrix<f64>) -> Result<Self> {
        if matrix.is_empty() {
            return Err(Error::DimensionMismatch {
                expected: 1,
                found: 0,
            });
        }
        if !matrix.iter().all(|x| x.is_finite()) {
            return Err(Error::NonFinite {
                context: "intertwiner",
            });
        }
        Ok(Self { matrix })
    }

    pub fn identity(n: usize) -> Self {
        Self {
            matrix: DMatrix::identity(n, n),
        }
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.matrix
    }

    pub fn source_dim(&self) -> usize {
        self.matrix.ncols()
    }

    pub fn target_dim(&self) -> usize {
        self.matrix.nrows()
    }

    /// Square and of full rank.
    pub fn is_isomorphism(&self) -> bool {
        self.matrix.is_square() && rank(&self.matrix, RANK_TOL) == self.matrix.nrows()
    }
}

/// Max relative residual of `A Phi(a)` against `Phi'(a) A` over samples.
///
/// Both actions must be of the same kind (both base or both prolonged) over
/// the same group; each sample is fed to both.
pub fn is_intertwiner(
    a: &Intertwiner,
    source: Action<'_>,
    target: Action<'_>,
    sample_count: usize,
    seed: u64,
    tol: f64,
) -> Result<CheckReport> {
    if a.source_dim() != source.dim() {
        return Err(Error::DimensionMismatch {
            expected: source.dim(),
            found: a.source_dim(),
        });
    }
    if a.target_dim() != target.dim() {
        return Err(Error::DimensionMismatch {
            expected: target.dim(),
            found: a.target_dim(),
        });
    }
    if source.group() != target.group() {
        return Err(Error::GroupMismatch {
            left: source.group().clone(),
            right: target.group().clone(),
        });
    }
    if !source.same_kind(&target) {
        return Err(Error::InvalidGroup(
            "cannot compare a representation with a prolongation".into(),
        ));
    }
    let sampler = Sampler::new(seed);
    let mut worst = Worst::default();
    for i in 0..sample_count as u64 {
        let sample = source.sample(&sampler, i);
        let lhs = a.matrix() * source.matrix(&sample)?;
        let rhs = target.matrix(&sample)? * a.matrix();
        worst.offer(rel_residual(&lhs, &rhs), || Witness::Sample {
            seed,
            index: i,
            sample: sample.clone(),
        });
    }
    Ok(worst.into_report("intertwiner", tol))
}

/// The tangent map `TA = diag(A, A)` on trivialized coordinates, together
/// with whether it witnesses an equivalence.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TransferredIntertwiner {
    pub map: Intertwiner,
    /// `false` when `A` is rank deficient: `TA` still intertwines, but no
    /// equivalence is claimed.
    pub equivalence: bool,
}

pub fn prolong_intertwiner(a: &Intertwiner) -> TransferredIntertwiner {
    TransferredIntertwiner {
        map: Intertwiner {
            matrix: block_diag(a.matrix(), a.matrix()),
        },
        equivalence: a.is_isomorphism(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie_core::GroupSpec;
    use crate::prolongation::Representation;
    use crate::rep_algebra::Verdict;

    #[test]
    fn identity_intertwines_a_rep_with_itself() {
        let rep = Representation::defining("so3", GroupSpec::special_orthogonal(3).unwrap());
        let r = is_intertwiner(&Intertwiner::identity(3), Action::Base(&rep), Action::Base(&rep), 50, 0, 1e-12)
            .unwrap();
        assert_eq!(r.verdict, Verdict::Pass);
        assert_eq!(r.max_residual, 0.0);
    }

    #[test]
    fn conjugation_and_its_prolongation() {
        let rep = Representation::defining("sl2", GroupSpec::special_linear(2).unwrap());
        let a0 = Sampler::new(3).well_conditioned(2, 0);
        let conj = rep.conjugated(&a0).unwrap();
        let a = Intertwiner::new(a0).unwrap();
        assert!(is_intertwiner(&a, Action::Base(&rep), Action::Base(&conj), 100, 1, 1e-9).unwrap().passed());
        let ta = prolong_intertwiner(&a);
        assert!(ta.equivalence);
        let r = is_intertwiner(&ta.map, Action::Prolonged(&rep), Action::Prolonged(&conj), 100, 1, 1e-9).unwrap();
        assert!(r.passed(), "{r:?}");
    }

    #[test]
    fn random_map_between_inequivalent_reps_fails() {
        let w1 = Representation::circle_winding("w1", 1);
        let w2 = Representation::circle_winding("w2", 2);
        let a = Intertwiner::new(Sampler::new(0).well_conditioned(2, 0)).unwrap();
        let r = is_intertwiner(&a, Action::Base(&w1), Action::Base(&w2), 50, 0, 1e-9).unwrap();
        assert_eq!(r.verdict, Verdict::Fail);
        assert!(r.max_residual > 1e-2);
        assert!(r.witness.is_some());
    }

    #[test]
    fn prolonged_block_examples() {
        assert_eq!(prolong_intertwiner(&Intertwiner::identity(3)).map.matrix(), &DMatrix::identity(6, 6));
        let two = Intertwiner::new(DMatrix::from_element(1, 1, 2.0)).unwrap();
        assert_eq!(
            prolong_intertwiner(&two).map.matrix(),
            &DMatrix::from_row_slice(2, 2, &[2.0, 0.0, 0.0, 2.0])
        );
        let degenerate = Intertwiner::new(DMatrix::from_row_slice(2, 2, &[1.0, 1.0, 1.0, 1.0])).unwrap();
        assert!(!prolong_intertwiner(&degenerate).equivalence);
    }

    #[test]
    fn dimension_mismatch_is_an_error() {
        let rep = Representation::circle_winding("w1", 1);
        let a = Intertwiner::identity(3);
        assert!(is_intertwiner(&a, Action::Base(&rep), Action::Base(&rep), 1, 0, 1e-9).is_err());
    }
}
