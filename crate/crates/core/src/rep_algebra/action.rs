use nalgebra::DMatrix;

use super::report::Sample;
use crate::error::{Error, Result};
use crate::lie_core::{GroupSpec, Sampler};
use crate::prolongation::{prolong, Representation};

/// The family of matrices a sample-based check runs over: either `Phi(a)`
/// for sampled group elements, or the prolonged matrices for sampled tangent
/// group elements.
#[derive(Clone, Copy, Debug)]
pub enum Action<'a> {
    Base(&'a Representation),
    Prolonged(&'a Representation),
}

impl<'a> From<&'a Representation> for Action<'a> {
    fn from(rep: &'a Representation) -> Self {
        Action::Base(rep)
    }
}

impl Action<'_> {
    pub fn representation(&self) -> &Representation {
        match self {
            Action::Base(r) | Action::Prolonged(r) => r,
        }
    }

    pub fn group(&self) -> &GroupSpec {
        self.representation().group()
    }

    /// Dimension of the space acted on.
    pub fn dim(&self) -> usize {
        match self {
            Action::Base(r) => r.target_dim(),
            Action::Prolonged(r) => 2 * r.target_dim(),
        }
    }

    pub fn sample(&self, sampler: &Sampler, index: u64) -> Sample {
        match self {
            Action::Base(r) => Sample::Group(sampler.group(r.group(), index)),
            Action::Prolonged(r) => Sample::Tangent(sampler.tangent(r.group(), index)),
        }
    }

    pub fn matrix(&self, sample: &Sample) -> Result<DMatrix<f64>> {
        match (self, sample) {
            (Action::Base(r), Sample::Group(a)) => Ok(r.apply(a)?.into_inner()),
            (Action::Prolonged(r), Sample::Tangent(x)) => Ok(prolong(r, x)?.dense()),
            _ => Err(Error::InvalidGroup(
                "sample kind does not match the action".into(),
            )),
        }
    }

    pub(crate) fn same_kind(&self, other: &Action<'_>) -> bool {
        matches!(
            (self, other),
            (Action::Base(_), Action::Base(_)) | (Action::Prolonged(_), Action::Prolonged(_))
        )
    }
}
