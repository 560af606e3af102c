use nalgebra::DMatrix;
use serde::Serialize;

use super::report::{CheckReport, Sample, Witness, Worst};
use crate::error::{Error, Result};
use crate::lie_core::Sampler;
use crate::matrix::{block_diag, rel_residual};
use crate::prolongation::{differential_rep, prolong, Representation};

/// `Phi1 (+) Phi2` acting block-diagonally on `R^(n1 + n2)`.
pub fn direct_sum(rep1: &Representation, rep2: &Representation) -> Result<Representation> {
    if rep1.group() != rep2.group() {
        return Err(Error::GroupMismatch {
            left: rep1.group().clone(),
            right: rep2.group().clone(),
        });
    }
    let (r1, r2) = (rep1.clone(), rep2.clone());
    let (d1, d2) = (rep1.clone(), rep2.clone());
    Ok(Representation::new(
        format!("{}+{}", rep1.name(), rep2.name()),
        rep1.group().clone(),
        rep1.target_dim() + rep2.target_dim(),
        move |a| -> Result<DMatrix<f64>> { Ok(block_diag(r1.apply(a)?.as_matrix(), r2.apply(a)?.as_matrix())) },
    )?
    .with_differential(move |b| -> Result<DMatrix<f64>> {
        Ok(block_diag(differential_rep(&d1, b)?.as_matrix(), differential_rep(&d2, b)?.as_matrix()))
    }))
}

/// A coordinate permutation: output position `i` takes input coordinate
/// `source[i]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Permutation {
    source: Vec<usize>,
}

impl Permutation {
    pub fn source(&self) -> &[usize] {
        &self.source
    }

    pub fn len(&self) -> usize {
        self.source.len()
    }

    pub fn is_empty(&self) -> bool {
        self.source.is_empty()
    }

    /// The matrix `P` with `(P x)[i] = x[source[i]]`.
    pub fn matrix(&self) -> DMatrix<f64> {
        let n = self.len();
        let mut p = DMatrix::zeros(n, n);
        for (i, &j) in self.source.iter().enumerate() {
            p[(i, j)] = 1.0;
        }
        p
    }

    /// `P M P^-1`, computed by reindexing so no rounding is introduced.
    pub fn conjugate(&self, m: &DMatrix<f64>) -> DMatrix<f64> {
        DMatrix::from_fn(self.len(), self.len(), |i, j| m[(self.source[i], self.source[j])])
    }
}

/// Reorders trivialized coordinates `(p1, p2, v1, v2)` of `T(V1 (+) V2)` into
/// `(p1, v1, p2, v2)` of `TV1 (+) TV2`.
pub fn interleave_permutation(n1: usize, n2: usize) -> Result<Permutation> {
    if n1 == 0 || n2 == 0 {
        return Err(Error::DimensionMismatch {
            expected: 1,
            found: 0,
        });
    }
    let n = n1 + n2;
    let source = (0..n1)
        .chain(n..n + n1)
        .chain(n1..n)
        .chain(n + n1..2 * n)
        .collect();
    Ok(Permutation { source })
}

/// Checks `P prolong(Phi1 (+) Phi2, X) P^-1 = prolong(Phi1, X) (+) prolong(Phi2, X)`.
pub fn check_direct_sum_commutation(
    rep1: &Representation,
    rep2: &Representation,
    sample_count: usize,
    seed: u64,
    tol: f64,
) -> Result<CheckReport> {
    let sum = direct_sum(rep1, rep2)?;
    let perm = interleave_permutation(rep1.target_dim(), rep2.target_dim())?;
    let sampler = Sampler::new(seed);
    let mut worst = Worst::default();
    for i in 0..sample_count as u64 {
        let x = sampler.tangent(rep1.group(), i);
        let lhs = perm.conjugate(&prolong(&sum, &x)?.dense());
        let rhs = block_diag(&prolong(rep1, &x)?.dense(), &prolong(rep2, &x)?.dense());
        worst.offer(rel_residual(&lhs, &rhs), || Witness::Sample {
            seed,
            index: i,
            sample: Sample::Tangent(x.clone()),
        });
    }
    Ok(worst.into_report("direct_sum_commutation", tol))
}
