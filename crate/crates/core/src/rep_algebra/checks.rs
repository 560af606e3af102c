//! Sample-based residual checks on a single representation and its
//! prolongation.

use super::report::{CheckReport, Sample, Witness, Worst};
use crate::lie_core::{tg_multiply, Sampler};
use crate::matrix::rel_residual;
use crate::prolongation::{apply_prolonged, prolong, tangent_action_oracle, Representation};
use crate::tv_space::{pair_tangents, TangentVector};

/// Agreement bound between the block formula and the finite-difference
/// tangent-action oracle.
pub const ORACLE_TOL: f64 = 1e-5;

fn error_report(name: &str, err: crate::Error, witness: Witness) -> CheckReport {
    CheckReport::fail(name, f64::INFINITY, witness).with_note(format!("evaluation failed: {err}"))
}

/// Max relative residual of `Phi(ab)` against `Phi(a) Phi(b)` over sampled
/// pairs; `Pass` iff below `tol`.
pub fn check_homomorphism(rep: &Representation, sample_count: usize, seed: u64, tol: f64) -> CheckReport {
    const NAME: &str = "homomorphism";
    let sampler = Sampler::new(seed);
    let spec = rep.group();
    let mut worst = Worst::default();
    for i in 0..sample_count as u64 {
        let a = sampler.group(spec, 2 * i);
        let b = sampler.group(spec, 2 * i + 1);
        let witness = || Witness::SamplePair {
            seed,
            index: i,
            first: Sample::Group(a.clone()),
            second: Sample::Group(b.clone()),
        };
        let residual = (|| -> crate::Result<f64> {
            let lhs = rep.apply(&a.mul(&b)?)?;
            let rhs = rep.apply(&a)?.as_matrix() * rep.apply(&b)?.as_matrix();
            Ok(rel_residual(&lhs, &rhs))
        })();
        match residual {
            Ok(r) => worst.offer(r, witness),
            Err(e) => return error_report(NAME, e, witness()),
        }
    }
    worst.into_report(NAME, tol)
}

/// The same check for the prolongation on sampled pairs of tangent group
/// elements.
pub fn check_prolonged_homomorphism(
    rep: &Representation,
    sample_count: usize,
    seed: u64,
    tol: f64,
) -> CheckReport {
    const NAME: &str = "prolonged_homomorphism";
    let sampler = Sampler::new(seed);
    let spec = rep.group();
    let mut worst = Worst::default();
    for i in 0..sample_count as u64 {
        let x = sampler.tangent(spec, 2 * i);
        let y = sampler.tangent(spec, 2 * i + 1);
        let witness = || Witness::SamplePair {
            seed,
            index: i,
            first: Sample::Tangent(x.clone()),
            second: Sample::Tangent(y.clone()),
        };
        let residual = (|| -> crate::Result<f64> {
            let lhs = prolong(rep, &tg_multiply(&x, &y)?)?.dense();
            let rhs = prolong(rep, &x)?.dense() * prolong(rep, &y)?.dense();
            Ok(rel_residual(&lhs, &rhs))
        })();
        match residual {
            Ok(r) => worst.offer(r, witness),
            Err(e) => return error_report(NAME, e, witness()),
        }
    }
    worst.into_report(NAME, tol)
}

/// Max-abs disagreement between `apply_prolonged(prolong(rep, X), Y)` and the
/// finite-difference oracle over sampled `(X, Y)`.
pub fn check_oracle_agreement(rep: &Representation, sample_count: usize, seed: u64, tol: f64) -> CheckReport {
    const NAME: &str = "tangent_action_oracle";
    let sampler = Sampler::new(seed);
    let n = rep.target_dim();
    let mut worst = Worst::default();
    for i in 0..sample_count as u64 {
        let x = sampler.tangent(rep.group(), i);
        let witness = || Witness::Sample {
            seed,
            index: i,
            sample: Sample::Tangent(x.clone()),
        };
        let residual = (|| -> crate::Result<f64> {
            let y = TangentVector::new(sampler.vector(n, 2 * i), sampler.vector(n, 2 * i + 1))?;
            let direct = apply_prolonged(&prolong(rep, &x)?, &y)?;
            let oracle = tangent_action_oracle(rep, &pair_tangents(&x, &y))?;
            Ok((direct.coordinates() - oracle.coordinates()).amax())
        })();
        match residual {
            Ok(r) => worst.offer(r, witness),
            Err(e) => return error_report(NAME, e, witness()),
        }
    }
    worst.into_report(NAME, tol)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie_core::GroupSpec;
    use crate::rep_algebra::Verdict;
    use nalgebra::DMatrix;

    #[test]
    fn identity_and_circle_pass() {
        let gl3 = Representation::defining("gl_identity(3)", GroupSpec::general_linear(3).unwrap());
        let r = check_homomorphism(&gl3, 1000, 0, 1e-9);
        assert_eq!(r.verdict, Verdict::Pass);
        assert!(r.max_residual < 1e-13);
        let circle = Representation::circle_winding("circle_rotation", 1);
        assert!(check_homomorphism(&circle, 200, 1, 1e-9).passed());
        assert!(check_prolonged_homomorphism(&circle, 200, 1, 1e-9).passed());
        assert!(check_oracle_agreement(&circle, 200, 1, ORACLE_TOL).passed());
    }

    #[test]
    fn trivial_rep_has_zero_residual() {
        let t = Representation::trivial("trivial(2)", GroupSpec::circle(), 2).unwrap();
        let r = check_homomorphism(&t, 100, 0, 1e-9);
        assert!(r.passed());
        assert_eq!(r.max_residual, 0.0);
    }

    #[test]
    fn corrupted_rep_fails_with_witness() {
        let eps = 1e-3;
        let so3 = GroupSpec::special_orthogonal(3).unwrap();
        let corrupted = Representation::new("corrupted", so3, 3, move |a| {
            Ok(a.matrix().as_matrix() + DMatrix::from_element(3, 3, eps))
        })
        .unwrap();
        let r = check_homomorphism(&corrupted, 100, 0, 1e-9);
        assert_eq!(r.verdict, Verdict::Fail);
        assert!(matches!(r.witness, Some(Witness::SamplePair { .. })));
        assert!(r.max_residual > eps / 10.0 && r.max_residual < eps * 10.0, "{}", r.max_residual);
    }
}
