//! Commutant computation and the reducibility probes built on it.

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use serde::Serialize;

use super::action::Action;
use super::subspace::{is_invariant_subspace, SubspaceBasis};
use crate::error::{Error, Result};
use crate::lie_core::Sampler;
use crate::matrix::{nullspace, RANK_TOL};
use crate::prolongation::Representation;

/// Tolerance for accepting a candidate invariant subspace found by the probe.
pub const PROBE_TOL: f64 = 1e-8;

/// A basis of `{M : M Phi(a) = Phi(a) M}` estimated from sampled generators.
#[derive(Clone, Debug)]
pub struct Commutant {
    pub basis: Vec<DMatrix<f64>>,
    pub samples: usize,
    /// `false` when fewer than two samples were used; the basis then only
    /// bounds the commutant from above.
    pub conclusive: bool,
}

impl Commutant {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
}

/// Nullspace of the stacked linear system `M Phi(a_i) - Phi(a_i) M = 0`,
/// with rank threshold `rank_tol * sigma_max`.
pub fn commutant_basis(action: Action<'_>, generator_samples: usize, seed: u64, rank_tol: f64) -> Result<Commutant> {
    let n = action.dim();
    let sampler = Sampler::new(seed);
    let mut system = DMatrix::zeros(generator_samples.max(1) * n * n, n * n);
    for s in 0..generator_samples as u64 {
        let r = action.matrix(&action.sample(&sampler, s))?;
        let offset = s as usize * n * n;
        for i in 0..n {
            for j in 0..n {
                let row = offset + i * n + j;
                for l in 0..n {
                    system[(row, i * n + l)] += r[(l, j)];
                }
                for k in 0..n {
                    system[(row, k * n + j)] -= r[(i, k)];
                }
            }
        }
    }
    let basis = nullspace(&system, rank_tol)
        .into_iter()
        .map(|v| DMatrix::from_row_slice(n, n, v.as_slice()))
        .collect();
    Ok(Commutant {
        basis,
        samples: generator_samples,
        conclusive: generator_samples >= 2,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Reducibility {
    Irreducible,
    Reducible,
    Inconclusive,
}

#[derive(Clone, Debug, Serialize)]
pub struct ReducibilityProbe {
    pub outcome: Reducibility,
    pub commutant_dim: usize,
    /// A proper nonzero invariant subspace when `outcome` is `Reducible`.
    pub witness: Option<SubspaceBasis>,
}

fn cluster_eigenspaces(m: &DMatrix<f64>) -> Vec<Vec<DVector<f64>>> {
    let eig = SymmetricEigen::new(m.clone());
    let mut pairs: Vec<(f64, DVector<f64>)> = eig
        .eigenvalues
        .iter()
        .zip(eig.eigenvectors.column_iter())
        .map(|(&l, v)| (l, v.into_owned()))
        .collect();
    pairs.sort_by(|a, b| a.0.total_cmp(&b.0));
    let scale = pairs.iter().map(|p| p.0.abs()).fold(1.0, f64::max);
    let mut clusters: Vec<Vec<DVector<f64>>> = vec![];
    let mut last = f64::NEG_INFINITY;
    for (l, v) in pairs {
        if l - last > 1e-6 * scale || clusters.is_empty() {
            clusters.push(vec![]);
        }
        clusters.last_mut().expect("pushed").push(v);
        last = l;
    }
    clusters
}

fn real_eigenspaces(m: &DMatrix<f64>) -> Vec<Vec<DVector<f64>>> {
    let n = m.nrows();
    let scale = crate::matrix::max_abs(m).max(1.0);
    let mut out = vec![];
    for lambda in m.complex_eigenvalues().iter() {
        if lambda.im.abs() > 1e-8 * scale {
            continue;
        }
        let shifted = m - DMatrix::identity(n, n) * lambda.re;
        let space = nullspace(&shifted, 1e-7);
        if !space.is_empty() && space.len() < n {
            out.push(space);
        }
    }
    out
}

/// Looks for a proper invariant subspace via the commutant.
///
/// A one-dimensional commutant certifies irreducibility. Otherwise random
/// commutant elements are split into eigenspaces (of the symmetric part
/// first, then real eigenspaces of the element itself); any proper
/// eigenspace that passes the invariance check is returned as the witness.
/// When none does, the outcome is `Inconclusive`: the commutant may be a
/// complex or quaternionic division algebra.
pub fn reducibility_probe(rep: &Representation, samples: usize, seed: u64) -> Result<ReducibilityProbe> {
    let n = rep.target_dim();
    let commutant = commutant_basis(Action::Base(rep), samples, seed, RANK_TOL)?;
    let commutant_dim = commutant.dim();
    if commutant_dim == 1 && commutant.conclusive {
        return Ok(ReducibilityProbe {
            outcome: Reducibility::Irreducible,
            commutant_dim,
            witness: None,
        });
    }
    let sampler = Sampler::new(seed);
    for attempt in 0..4u64 {
        let coeffs = sampler.vector(commutant_dim, attempt);
        let c = commutant
            .basis
            .iter()
            .zip(coeffs.iter())
            .fold(DMatrix::zeros(n, n), |acc, (m, &k)| acc + m * k);
        let symmetric = (&c + c.transpose()) * 0.5;
        let candidates = cluster_eigenspaces(&symmetric)
            .into_iter()
            .filter(|space| space.len() < n)
            .chain(real_eigenspaces(&c));
        for space in candidates {
            let Ok(u) = SubspaceBasis::new(n, space) else {
                continue;
            };
            let check = is_invariant_subspace(Action::Base(rep), &u, samples, seed.wrapping_add(1), PROBE_TOL)?;
            if check.passed() {
                return Ok(ReducibilityProbe {
                    outcome: Reducibility::Reducible,
                    commutant_dim,
                    witness: Some(u),
                });
            }
        }
    }
    Ok(ReducibilityProbe {
        outcome: Reducibility::Inconclusive,
        commutant_dim,
        witness: None,
    })
}

/// Exhaustive line sweep for two-dimensional representations.
///
/// For each of `resolution` directions `u` the worst sine of the angle
/// between `u` and `Phi(a) u` is taken over the sampled `a`; that function
/// is Lipschitz with constant at most `1 + cond(Phi(a))`, so a grid minimum
/// exceeding the Lipschitz slack proves that no line is invariant.
pub fn certify_irreducible_2d(
    rep: &Representation,
    samples: usize,
    seed: u64,
    resolution: usize,
) -> Result<ReducibilityProbe> {
    if rep.target_dim() != 2 {
        return Err(Error::DimensionMismatch {
            expected: 2,
            found: rep.target_dim(),
        });
    }
    let sampler = Sampler::new(seed);
    let mut mats = Vec::with_capacity(samples);
    let mut lipschitz = 1.0_f64;
    for i in 0..samples as u64 {
        let m = rep.apply(&sampler.group(rep.group(), i))?.into_inner();
        let sv = m.clone().svd(false, false).singular_values;
        lipschitz = lipschitz.max(1.0 + sv.max() / sv.min());
        mats.push(m);
    }
    let resolution = resolution.max(1);
    let step = std::f64::consts::PI / resolution as f64;
    let mut best = (f64::INFINITY, 0.0);
    for j in 0..resolution {
        let phi = j as f64 * step;
        let u = DVector::from_vec(vec![phi.cos(), phi.sin()]);
        let worst = mats
            .iter()
            .map(|m| {
                let w = m * &u;
                (u[0] * w[1] - u[1] * w[0]).abs() / w.norm()
            })
            .fold(0.0, f64::max);
        if worst < best.0 {
            best = (worst, phi);
        }
    }
    let (min_sine, phi) = best;
    if min_sine > lipschitz * step / 2.0 {
        return Ok(ReducibilityProbe {
            outcome: Reducibility::Irreducible,
            commutant_dim: 0,
            witness: None,
        });
    }
    let line = SubspaceBasis::from_slices(2, &[&[phi.cos(), phi.sin()]])?;
    let check = is_invariant_subspace(Action::Base(rep), &line, samples, seed.wrapping_add(1), PROBE_TOL)?;
    Ok(ReducibilityProbe {
        outcome: if check.passed() {
            Reducibility::Reducible
        } else {
            Reducibility::Inconclusive
        },
        commutant_dim: 0,
        witness: check.passed().then_some(line),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie_core::GroupSpec;
    use crate::rep_algebra::direct_sum;

    /// Commutant dimension at n = 2 by Gaussian elimination on the
    /// four-unknown commutation system, independent of the SVD path.
    fn brute_force_commutant_dim(mats: &[DMatrix<f64>]) -> usize {
        let mut rows: Vec<[f64; 4]> = vec![];
        for r in mats {
            for i in 0..2 {
                for j in 0..2 {
                    let mut row = [0.0; 4];
                    for l in 0..2 {
                        row[i * 2 + l] += r[(l, j)];
                    }
                    for k in 0..2 {
                        row[k * 2 + j] -= r[(i, k)];
                    }
                    rows.push(row);
                }
            }
        }
        let mut rank = 0;
        for col in 0..4 {
            let Some(p) = (rank..rows.len()).max_by(|&a, &b| rows[a][col].abs().total_cmp(&rows[b][col].abs())) else {
                break;
            };
            if rows[p][col].abs() < 1e-9 {
                continue;
            }
            rows.swap(rank, p);
            for r in 0..rows.len() {
                if r != rank {
                    let f = rows[r][col] / rows[rank][col];
                    let pivot = rows[rank];
                    for (x, p) in rows[r].iter_mut().zip(pivot) {
                        *x -= f * p;
                    }
                }
            }
            rank += 1;
        }
        4 - rank
    }

    #[test]
    fn commutant_of_gl2_is_scalars() {
        let rep = Representation::defining("gl_identity(2)", GroupSpec::general_linear(2).unwrap());
        let c = commutant_basis(Action::Base(&rep), 5, 0, RANK_TOL).unwrap();
        assert_eq!(c.dim(), 1);
        let m = &c.basis[0];
        assert!((m[(0, 0)] - m[(1, 1)]).abs() < 1e-12 && m[(0, 1)].abs() < 1e-12);
        let sampler = Sampler::new(0);
        let mats: Vec<_> = (0..5).map(|i| rep.apply(&sampler.group(rep.group(), i)).unwrap().into_inner()).collect();
        assert_eq!(brute_force_commutant_dim(&mats), 1);
    }

    #[test]
    fn commutant_of_circle_is_two_dimensional() {
        let rep = Representation::circle_winding("circle_rotation", 1);
        let c = commutant_basis(Action::Base(&rep), 5, 0, RANK_TOL).unwrap();
        assert_eq!(c.dim(), 2);
        let sampler = Sampler::new(0);
        let mats: Vec<_> = (0..5).map(|i| rep.apply(&sampler.group(rep.group(), i)).unwrap().into_inner()).collect();
        assert_eq!(brute_force_commutant_dim(&mats), 2);
    }

    #[test]
    fn commutant_of_doubled_gl2() {
        let gl2 = Representation::defining("gl_identity(2)", GroupSpec::general_linear(2).unwrap());
        let sum = direct_sum(&gl2, &gl2).unwrap();
        assert_eq!(commutant_basis(Action::Base(&sum), 5, 0, RANK_TOL).unwrap().dim(), 4);
    }

    #[test]
    fn single_sample_is_inconclusive() {
        let rep = Representation::defining("gl_identity(2)", GroupSpec::general_linear(2).unwrap());
        assert!(!commutant_basis(Action::Base(&rep), 1, 0, RANK_TOL).unwrap().conclusive);
    }

    #[test]
    fn probe_outcomes() {
        let gl2 = Representation::defining("gl_identity(2)", GroupSpec::general_linear(2).unwrap());
        assert_eq!(reducibility_probe(&gl2, 20, 0).unwrap().outcome, Reducibility::Irreducible);

        let circle = Representation::circle_winding("circle_rotation", 1);
        let probe = reducibility_probe(&circle, 20, 0).unwrap();
        assert_eq!(probe.outcome, Reducibility::Inconclusive);
        assert_eq!(probe.commutant_dim, 2);

        let doubled = direct_sum(&circle, &circle).unwrap();
        let probe = reducibility_probe(&doubled, 20, 0).unwrap();
        assert_eq!(probe.outcome, Reducibility::Reducible);
        let w = probe.witness.unwrap();
        assert!(w.dim() > 0 && w.dim() < 4);
        assert!(is_invariant_subspace(Action::Base(&doubled), &w, 100, 9, 1e-8).unwrap().passed());

        let t = Representation::trivial("trivial(2)", GroupSpec::circle(), 2).unwrap();
        assert_eq!(reducibility_probe(&t, 20, 0).unwrap().outcome, Reducibility::Reducible);
    }

    #[test]
    fn line_sweep_certifies_rotations() {
        let circle = Representation::circle_winding("circle_rotation", 1);
        assert_eq!(certify_irreducible_2d(&circle, 20, 0, 720).unwrap().outcome, Reducibility::Irreducible);
        let t = Representation::trivial("trivial(2)", GroupSpec::circle(), 2).unwrap();
        let r = certify_irreducible_2d(&t, 20, 0, 720).unwrap();
        assert_eq!(r.outcome, Reducibility::Reducible);
        let so3 = Representation::defining("so3", GroupSpec::special_orthogonal(3).unwrap());
        assert!(certify_irreducible_2d(&so3, 5, 0, 10).is_err());
    }
}
