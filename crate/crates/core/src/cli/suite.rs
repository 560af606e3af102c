use std::fmt;
use std::str::FromStr;

use crate::catalog::CatalogEntry;
use crate::error::{Error, Result};
use crate::lie_core::Sampler;
use crate::prolongation::Representation;
use crate::rep_algebra::{
    base_invariance_from_prolonged, certify_irreducible_2d, check_direct_sum_commutation, check_homomorphism,
    check_oracle_agreement, check_prolonged_homomorphism, faithfulness_probe, is_intertwiner, is_invariant_subspace,
    prolong_intertwiner, prolong_subspace, reducibility_probe, vertical_subspace, Action, CheckReport, Intertwiner,
    Reducibility, Witness, ORACLE_TOL,
};

/// Tolerance of the direct-sum commutation identity, which involves only
/// exact reindexing and so holds far below the default tolerance.
pub const DIRECT_SUM_TOL: f64 = 1e-12;

/// Grid resolution of the two-dimensional irreducibility sweep.
pub const SWEEP_RESOLUTION: usize = 720;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Homomorphism,
    Oracle,
    Equivalence,
    Invariance,
    DirectSum,
    Faithfulness,
    All,
}

impl Suite {
    pub const EACH: [Suite; 6] = [
        Suite::Homomorphism,
        Suite::Oracle,
        Suite::Equivalence,
        Suite::Invariance,
        Suite::DirectSum,
        Suite::Faithfulness,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Suite::Homomorphism => "homomorphism",
            Suite::Oracle => "oracle",
            Suite::Equivalence => "equivalence",
            Suite::Invariance => "invariance",
            Suite::DirectSum => "directsum",
            Suite::Faithfulness => "faithfulness",
            Suite::All => "all",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::EACH
            .into_iter()
            .chain([Suite::All])
            .find(|k| k.as_str() == s)
            .ok_or_else(|| Error::UnknownSuite(s.to_string()))
    }
}

/// A representation under test, with catalog metadata when it has any.
#[derive(Clone, Debug)]
pub struct Target<'a> {
    pub rep: Representation,
    pub entry: Option<&'a CatalogEntry>,
}

impl<'a> Target<'a> {
    pub fn from_entry(entry: &'a CatalogEntry) -> Self {
        Self {
            rep: entry.rep.clone(),
            entry: Some(entry),
        }
    }

    pub fn from_rep(rep: Representation) -> Self {
        Self { rep, entry: None }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SuiteParams {
    pub samples: usize,
    pub seed: u64,
    pub tol: f64,
}

/// Runs one suite, or every suite for [`Suite::All`], in a fixed order.
pub fn run_suite(target: &Target<'_>, suite: Suite, params: SuiteParams) -> Result<Vec<CheckReport>> {
    if suite == Suite::All {
        let mut out = vec![];
        for s in Suite::EACH {
            out.extend(run_suite(target, s, params)?);
        }
        return Ok(out);
    }
    let SuiteParams { samples, seed, tol } = params;
    let rep = &target.rep;
    let n = rep.target_dim();
    let out = match suite {
        Suite::Homomorphism => vec![
            check_homomorphism(rep, samples, seed, tol),
            check_prolonged_homomorphism(rep, samples, seed, tol),
        ],
        Suite::Oracle => vec![check_oracle_agreement(rep, samples, seed, tol.max(ORACLE_TOL))],
        Suite::Equivalence => {
            let a0 = Sampler::new(seed).well_conditioned(n, 0);
            let conjugate = rep.conjugated(&a0)?;
            let a = Intertwiner::new(a0)?;
            let ta = prolong_intertwiner(&a);
            vec![
                is_intertwiner(&a, Action::Base(rep), Action::Base(&conjugate), samples, seed, tol)?
                    .renamed("equivalence_base"),
                is_intertwiner(&ta.map, Action::Prolonged(rep), Action::Prolonged(&conjugate), samples, seed, tol)?
                    .renamed("equivalence_prolonged"),
            ]
        }
        Suite::Invariance => invariance(target, params)?,
        Suite::DirectSum => {
            let (a, b) = match target.entry.and_then(|e| e.summands.as_ref()) {
                Some((a, b)) => (a.clone(), b.clone()),
                None => (rep.clone(), rep.clone()),
            };
            vec![check_direct_sum_commutation(&a, &b, samples, seed, DIRECT_SUM_TOL)?]
        }
        Suite::Faithfulness => {
            let witness = target.entry.and_then(|e| e.kernel_witness.as_ref());
            let mut r = faithfulness_probe(rep, samples, seed, witness)?;
            if r.failed() && target.entry.is_some_and(|e| !e.known_faithful) {
                r = r.with_note(
                    "expected for this non-faithful entry: the prolongation of a non-faithful \
                     representation is not faithful, contrary to the claim that T(gamma) is always one-to-one",
                );
            }
            vec![r]
        }
        Suite::All => unreachable!("handled above"),
    };
    Ok(out)
}

fn invariance(target: &Target<'_>, params: SuiteParams) -> Result<Vec<CheckReport>> {
    let SuiteParams { samples, seed, tol } = params;
    let rep = &target.rep;
    let n = rep.target_dim();
    let mut out = vec![is_invariant_subspace(Action::Prolonged(rep), &vertical_subspace(n), samples, seed, tol)?
        .renamed("vertical_subspace")];
    let declared = target.entry.map(|e| e.known_invariant_subspaces.as_slice()).unwrap_or(&[]);
    for (i, u) in declared.iter().enumerate() {
        out.push(is_invariant_subspace(Action::Base(rep), u, samples, seed, tol)?.renamed(format!("subspace[{i}]")));
        out.push(
            is_invariant_subspace(Action::Prolonged(rep), &prolong_subspace(u), samples, seed, tol)?
                .renamed(format!("prolonged_subspace[{i}]")),
        );
        out.push(
            base_invariance_from_prolonged(rep, u, samples, seed, tol)?.renamed(format!("subspace_from_prolonged[{i}]")),
        );
    }
    let probe_samples = samples.min(50);
    let mut probe = reducibility_probe(rep, probe_samples, seed)?;
    if probe.outcome == Reducibility::Inconclusive && n == 2 {
        let commutant_dim = probe.commutant_dim;
        probe = certify_irreducible_2d(rep, samples, seed, SWEEP_RESOLUTION)?;
        probe.commutant_dim = commutant_dim;
    }
    let dim_note = format!("commutant dimension {}", probe.commutant_dim);
    out.push(match probe.outcome {
        Reducibility::Irreducible => CheckReport::pass("reducibility_probe", 0.0).with_note(format!("irreducible; {dim_note}")),
        Reducibility::Reducible => {
            let witness = probe.witness.expect("reducible outcome carries a subspace");
            CheckReport::pass("reducibility_probe", 0.0)
                .with_witness(Witness::Subspace(witness))
                .with_note(format!("reducible; {dim_note}"))
        }
        Reducibility::Inconclusive => CheckReport::inconclusive("reducibility_probe", 0.0).with_note(format!(
            "no invariant subspace found and the commutant is not one-dimensional; {dim_note}"
        )),
    });
    Ok(out)
}
