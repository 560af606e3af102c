use serde::{Deserialize, Serialize};

use crate::lie_core::{GroupElement, TangentGroupElement};

use super::subspace::SubspaceBasis;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    Pass,
    Fail,
    Inconclusive,
}

/// A drawn sample: a group element for checks on `Phi`, a tangent group
/// element for checks on the prolongation.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Sample {
    Group(GroupElement),
    Tangent(TangentGroupElement),
}

/// Evidence attached to a verdict. Sample witnesses carry the `(seed, index)`
/// that regenerates them.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    Sample {
        seed: u64,
        index: u64,
        sample: Sample,
    },
    SamplePair {
        seed: u64,
        index: u64,
        first: Sample,
        second: Sample,
    },
    KernelCollision {
        element: GroupElement,
        separation: f64,
    },
    Subspace(SubspaceBasis),
    /// An element supplied by the caller rather than drawn from a sampler.
    Input {
        sample: Sample,
    },
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckReport {
    pub name: String,
    pub verdict: Verdict,
    pub max_residual: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl CheckReport {
    pub fn pass(name: impl Into<String>, max_residual: f64) -> Self {
        Self {
            name: name.into(),
            verdict: Verdict::Pass,
            max_residual,
            witness: None,
            note: None,
        }
    }

    /// A failing report always carries its witness.
    pub fn fail(name: impl Into<String>, max_residual: f64, witness: Witness) -> Self {
        Self {
            name: name.into(),
            verdict: Verdict::Fail,
            max_residual,
            witness: Some(witness),
            note: None,
        }
    }

    pub fn inconclusive(name: impl Into<String>, max_residual: f64) -> Self {
        Self {
            name: name.into(),
            verdict: Verdict::Inconclusive,
            max_residual,
            witness: None,
            note: None,
        }
    }

    pub fn with_witness(mut self, witness: Witness) -> Self {
        self.witness = Some(witness);
        self
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }

    pub fn renamed(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }

    pub fn failed(&self) -> bool {
        self.verdict == Verdict::Fail
    }
}

/// Running maximum of a residual over samples, remembering where it occurred.
#[derive(Debug, Default)]
pub(crate) struct Worst {
    pub residual: f64,
    pub witness: Option<Witness>,
}

impl Worst {
    pub fn offer(&mut self, residual: f64, witness: impl FnOnce() -> Witness) {
        let worse = residual > self.residual || residual.is_nan();
        if worse || self.witness.is_none() {
            self.residual = if residual.is_nan() { f64::INFINITY } else { residual.max(self.residual) };
            self.witness = Some(witness());
        }
    }

    pub fn into_report(self, name: &str, tol: f64) -> CheckReport {
        if self.residual < tol {
            CheckReport::pass(name, self.residual)
        } else {
            match self.witness {
                Some(w) => CheckReport::fail(name, self.residual, w),
                None => CheckReport::inconclusive(name, self.residual).with_note("no samples drawn"),
            }
        }
    }
}
