//! Built-in representations with analytic differentials and declared
//! ground-truth properties.
//!
//! The catalog verifies itself the first time it is accessed: every entry must
//! be a homomorphism, every declared invariant subspace must be invariant and
//! every declared kernel witness must collapse under the prolongation. A
//! failure panics with the offending report instead of serving bad data.

mod descriptor;

use std::sync::OnceLock;

use serde::Serialize;

pub use descriptor::{
    load_representation, load_representation_file, load_representation_json, MapDescriptor, MatrixValue,
    RepresentationDescriptor, LOAD_SAMPLES, LOAD_TOL,
};

use crate::error::{Error, Result};
use crate::lie_core::{GroupElement, GroupSpec, KindTag};
use crate::prolongation::Representation;
use crate::rep_algebra::{
    check_homomorphism, direct_sum, faithfulness_probe, is_invariant_subspace, Action, CheckReport, SubspaceBasis,
    Witness,
};

/// Samples and tolerance used by the self-verification on first access.
pub const VERIFY_SAMPLES: usize = 64;
pub const VERIFY_TOL: f64 = 1e-9;

#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub name: String,
    pub rep: Representation,
    pub known_faithful: bool,
    /// A non-identity element of the kernel of `Phi`, for non-faithful entries.
    pub kernel_witness: Option<GroupElement>,
    /// Proper nonzero invariant subspaces of `V` (not of `TV`).
    pub known_invariant_subspaces: Vec<SubspaceBasis>,
    pub notes: String,
    /// The two summands, for direct-sum entries.
    pub summands: Option<(Representation, Representation)>,
}

/// The serializable part of an entry, as listed by the CLI.
#[derive(Serialize)]
pub struct EntrySummary<'a> {
    pub name: &'a str,
    pub group: &'a GroupSpec,
    pub group_label: String,
    pub target_dim: usize,
    pub known_faithful: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub kernel_witness: Option<&'a GroupElement>,
    pub known_invariant_subspaces: &'a [SubspaceBasis],
    pub notes: &'a str,
}

impl CatalogEntry {
    pub fn group_kind(&self) -> KindTag {
        self.rep.group().kind_tag()
    }

    pub fn summary(&self) -> EntrySummary<'_> {
        EntrySummary {
            name: &self.name,
            group: self.rep.group(),
            group_label: self.rep.group().to_string(),
            target_dim: self.rep.target_dim(),
            known_faithful: self.known_faithful,
            kernel_witness: self.kernel_witness.as_ref(),
            known_invariant_subspaces: &self.known_invariant_subspaces,
            notes: &self.notes,
        }
    }

    /// Runs the declared-property checks on this entry.
    pub fn verify(&self, samples: usize, seed: u64, tol: f64) -> Result<Vec<CheckReport>> {
        let mut reports = vec![check_homomorphism(&self.rep, samples, seed, tol)];
        for (i, u) in self.known_invariant_subspaces.iter().enumerate() {
            let r = is_invariant_subspace(Action::Base(&self.rep), u, samples, seed, tol)?;
            reports.push(r.renamed(format!("declared_subspace[{i}]")));
        }
        if let Some(k) = &self.kernel_witness {
            let r = faithfulness_probe(&self.rep, 0, seed, Some(k))?;
            let collided = matches!(r.witness, Some(Witness::KernelCollision { .. }));
            reports.push(if collided {
                CheckReport::pass("kernel_witness", r.max_residual)
            } else {
                CheckReport::fail(
                    "kernel_witness",
                    r.max_residual,
                    Witness::KernelCollision {
                        element: k.clone(),
                        separation: r.max_residual,
                    },
                )
                .with_note("declared kernel element does not collapse under the prolongation")
            });
        }
        Ok(reports)
    }
}

fn entry(name: &str, rep: Representation, faithful: bool, notes: &str) -> CatalogEntry {
    CatalogEntry {
        name: name.to_string(),
        rep: rep.renamed(name),
        known_faithful: faithful,
        kernel_witness: None,
        known_invariant_subspaces: vec![],
        notes: notes.to_string(),
        summands: None,
    }
}

fn coordinate_block(n: usize, start: usize, len: usize) -> SubspaceBasis {
    let vectors = (start..start + len)
        .map(|i| nalgebra::DVector::from_fn(n, |j, _| if i == j { 1.0 } else { 0.0 }))
        .collect();
    SubspaceBasis::new(n, vectors).expect("coordinate vectors are independent")
}

/// `{(x, x)}` inside `V (+) V`.
fn diagonal(half: usize) -> SubspaceBasis {
    let vectors = (0..half)
        .map(|i| nalgebra::DVector::from_fn(2 * half, |j, _| if j == i || j == i + half { 1.0 } else { 0.0 }))
        .collect();
    SubspaceBasis::new(2 * half, vectors).expect("diagonal vectors are independent")
}

fn sum_entry(a: &CatalogEntry, b: &CatalogEntry, notes: &str) -> CatalogEntry {
    let rep = direct_sum(&a.rep, &b.rep).expect("catalog summands share a group");
    let (n1, n2) = (a.rep.target_dim(), b.rep.target_dim());
    let n = n1 + n2;
    let name = rep.name().to_string();
    let mut e = entry(&name, rep, a.known_faithful || b.known_faithful, notes);
    e.known_invariant_subspaces = vec![coordinate_block(n, 0, n1), coordinate_block(n, n1, n2)];
    e.summands = Some((a.rep.clone(), b.rep.clone()));
    e.kernel_witness = match (&a.kernel_witness, b.known_faithful) {
        (Some(k), false) if b.rep.apply(k).is_ok_and(|m| m.as_matrix() == &nalgebra::DMatrix::identity(n2, n2)) => {
            Some(k.clone())
        }
        _ => None,
    };
    e
}

fn build() -> Vec<CatalogEntry> {
    let circle = GroupSpec::circle();
    let gl = |n| GroupSpec::general_linear(n).expect("positive dimension");

    let rotation = entry(
        "circle_rotation",
        Representation::circle_winding("circle_rotation", 1),
        true,
        "S1 acting on R^2 by rotation; irreducible over R with a two-dimensional commutant; \
         its prolongation leaves the fiber plane {(0,0,x,y)} invariant",
    );
    let mut winding2 = entry(
        "circle_winding_2",
        Representation::circle_winding("circle_winding_2", 2),
        false,
        "S1 acting by rotation through twice the angle; the half turn lies in the kernel",
    );
    winding2.kernel_witness = Some(GroupElement::circle(std::f64::consts::PI));

    let mut out = vec![rotation.clone(), winding2.clone()];
    for n in 1..=3 {
        let name = format!("gl_identity({n})");
        out.push(entry(
            &name,
            Representation::defining(name.as_str(), gl(n)),
            true,
            "defining representation of the general linear group",
        ));
    }
    let so3 = entry(
        "so3_standard",
        Representation::defining("so3_standard", GroupSpec::special_orthogonal(3).expect("n = 3")),
        true,
        "defining representation of SO(3); absolutely irreducible",
    );
    let sl2 = entry(
        "sl2_standard",
        Representation::defining("sl2_standard", GroupSpec::special_linear(2).expect("n = 2")),
        true,
        "defining representation of SL(2); absolutely irreducible",
    );
    out.push(so3.clone());
    out.push(sl2.clone());

    let mut trivials = vec![];
    for n in 1..=2 {
        let name = format!("trivial({n})");
        let mut t = entry(
            &name,
            Representation::trivial(name.as_str(), circle.clone(), n).expect("positive dimension"),
            false,
            "S1 acting trivially; every subspace is invariant and every element is in the kernel",
        );
        t.kernel_witness = Some(GroupElement::circle(1.0));
        if n > 1 {
            t.known_invariant_subspaces = vec![coordinate_block(n, 0, 1)];
        }
        trivials.push(t);
    }
    out.extend(trivials.iter().cloned());
    let trivial_so3 = entry(
        "trivial(1)",
        Representation::trivial("trivial(1)", GroupSpec::special_orthogonal(3).expect("n = 3"), 1).expect("n = 1"),
        false,
        "",
    );
    let trivial_sl2 = entry(
        "trivial(1)",
        Representation::trivial("trivial(1)", GroupSpec::special_linear(2).expect("n = 2"), 1).expect("n = 1"),
        false,
        "",
    );
    let gl2 = &out[3];

    let mut sums = vec![
        sum_entry(&rotation, &winding2, "rotation plus double rotation; faithful because the first summand is"),
        sum_entry(&rotation, &rotation, "two copies of the rotation; the diagonal is also invariant"),
        sum_entry(&so3, &trivial_so3, "SO(3) on R^3 plus a fixed line"),
        sum_entry(gl2, gl2, "two copies of the defining GL(2) representation; the diagonal is also invariant"),
        sum_entry(&winding2, &trivials[0], "non-faithful: the half turn acts trivially on both summands"),
        sum_entry(&sl2, &trivial_sl2, "SL(2) on R^2 plus a fixed line"),
    ];
    sums[1].known_invariant_subspaces.push(diagonal(2));
    sums[3].known_invariant_subspaces.push(diagonal(2));
    out.extend(sums);
    out
}

/// All catalog entries, verified on first access.
///
/// # Panics
///
/// If any declared property fails verification.
pub fn catalog_list() -> &'static [CatalogEntry] {
    static CATALOG: OnceLock<Vec<CatalogEntry>> = OnceLock::new();
    CATALOG.get_or_init(|| {
        let entries = build();
        for e in &entries {
            let reports = e
                .verify(VERIFY_SAMPLES, 0, VERIFY_TOL)
                .unwrap_or_else(|err| panic!("catalog entry `{}` could not be verified: {err}", e.name));
            if let Some(bad) = reports.iter().find(|r| !r.passed()) {
                panic!(
                    "catalog entry `{}` failed self-verification: {}",
                    e.name,
                    serde_json::to_string(bad).unwrap_or_else(|_| format!("{bad:?}"))
                );
            }
        }
        entries
    })
}

pub fn catalog_entry(name: &str) -> Result<&'static CatalogEntry> {
    catalog_list()
        .iter()
        .find(|e| e.name == name)
        .ok_or_else(|| Error::UnknownRepresentation(name.to_string()))
}

pub fn catalog_by_kind(kind: KindTag) -> Vec<&'static CatalogEntry> {
    catalog_list().iter().filter(|e| e.group_kind() == kind).collect()
}

/// Summand pairs of the direct-sum entries.
pub fn direct_sum_pairs() -> Vec<(&'static Representation, &'static Representation)> {
    catalog_list()
        .iter()
        .filter_map(|e| e.summands.as_ref().map(|(a, b)| (a, b)))
        .collect()
}
