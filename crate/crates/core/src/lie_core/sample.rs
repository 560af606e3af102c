//! Seeded, replayable sampling of group, algebra and tangent elements.
//!
//! Every draw is addressed by `(seed, index)`: the index selects a ChaCha
//! stream, so sample `i` can be regenerated without replaying `0..i`.

use nalgebra::{DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::exp::mat_exp;
use super::group::{AlgebraElement, GroupElement, GroupSpec};
use super::tangent::TangentGroupElement;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Domain {
    Group = 1,
    Algebra = 2,
    Vector = 3,
    Pair = 4,
    Matrix = 5,
}

/// Deterministic source of test data keyed by a seed.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Sampler {
    seed: u64,
}

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Self { seed }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    fn rng(&self, domain: Domain, index: u64) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(
            self.seed ^ (domain as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15),
        );
        rng.set_stream(index);
        rng
    }

    /// A random algebra element whose generating entries lie in `[-1, 1]`.
    pub fn algebra(&self, spec: &GroupSpec, index: u64) -> AlgebraElement {
        random_algebra(spec, &mut self.rng(Domain::Algebra, index))
    }

    /// `exp(B)` for a random algebra element `B`.
    pub fn group(&self, spec: &GroupSpec, index: u64) -> GroupElement {
        let b = random_algebra(spec, &mut self.rng(Domain::Group, index));
        mat_exp(&b, 1.0).expect("exponential of a bounded algebra element")
    }

    pub fn tangent(&self, spec: &GroupSpec, index: u64) -> TangentGroupElement {
        let mut rng = self.rng(Domain::Pair, index);
        let base = mat_exp(&random_algebra(spec, &mut rng), 1.0)
            .expect("exponential of a bounded algebra element");
        let fiber = random_algebra(spec, &mut rng);
        TangentGroupElement::new(base, fiber).expect("same group")
    }

    /// A vector with entries uniform in `[-1, 1]`.
    pub fn vector(&self, len: usize, index: u64) -> DVector<f64> {
        let mut rng = self.rng(Domain::Vector, index);
        DVector::from_fn(len, |_, _| rng.random_range(-1.0..=1.0))
    }

    /// An invertible matrix `Q1 diag(s) Q2` with orthogonal `Q1, Q2` and
    /// singular values in `[0.5, 2]`, so its condition number is at most 4.
    pub fn well_conditioned(&self, n: usize, index: u64) -> DMatrix<f64> {
        let mut rng = self.rng(Domain::Matrix, index);
        let so = GroupSpec::special_orthogonal(n).expect("n >= 1");
        let q1 = mat_exp(&random_algebra(&so, &mut rng), 3.0).expect("bounded");
        let q2 = mat_exp(&random_algebra(&so, &mut rng), 3.0).expect("bounded");
        let s = DVector::from_fn(n, |_, _| rng.random_range(0.5..=2.0));
        q1.matrix().as_matrix() * DMatrix::from_diagonal(&s) * q2.matrix().as_matrix()
    }
}

fn random_algebra(spec: &GroupSpec, rng: &mut ChaCha8Rng) -> AlgebraElement {
    let n = spec.dim();
    let raw = DMatrix::from_fn(n, n, |_, _| rng.random_range(-1.0..=1.0));
    // Symmetric projection keeps entries in [-1, 1] for SO and the circle;
    // for products it zeroes the off-diagonal blocks.
    AlgebraElement::from_matrix(spec.clone(), spec.project_to_algebra(&raw))
        .expect("projection lands in the algebra")
}

/// `exp(B)` for a random algebra element with entries in `[-1, 1]`; the same
/// `(spec, seed)` always yields the same matrix.
pub fn sample_group_element(spec: &GroupSpec, seed: u64) -> GroupElement {
    Sampler::new(seed).group(spec, 0)
}
