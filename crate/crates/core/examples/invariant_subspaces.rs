// Invariant subspaces of a direct sum, their tangent lifts, and recovery of
// base invariance from the prolongation.

use tangent_prolong::catalog::catalog_entry;
use tangent_prolong::rep_algebra::{
    base_invariance_from_prolonged, is_invariant_subspace, prolong_subspace, reducibility_probe, Action,
    SubspaceBasis,
};

pub fn run_example() -> tangent_prolong::Result<()> {
    let entry = catalog_entry("circle_rotation+circle_rotation")?;
    let rep = &entry.rep;
    for u in &entry.known_invariant_subspaces {
        let base = is_invariant_subspace(Action::Base(rep), u, 200, 0, 1e-9)?;
        let lifted = is_invariant_subspace(Action::Prolonged(rep), &prolong_subspace(u), 200, 0, 1e-9)?;
        let back = base_invariance_from_prolonged(rep, u, 200, 0, 1e-9)?;
        println!("dim {}: U {:?}, TU {:?}, recovered {:?}", u.dim(), base.verdict, lifted.verdict, back.verdict);
        assert!(base.passed() && lifted.passed() && back.passed());
    }

    let skew = SubspaceBasis::from_slices(4, &[&[1.0, 0.0, 0.0, 1.0]])?;
    let report = is_invariant_subspace(Action::Base(rep), &skew, 200, 0, 1e-9)?;
    println!("a single line is not invariant: {:?} ({:.2})", report.verdict, report.max_residual);
    assert!(report.failed());

    let probe = reducibility_probe(rep, 50, 0)?;
    println!("commutant dimension {}, probe says {:?}", probe.commutant_dim, probe.outcome);
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("invariant_subspaces");
}
