// The rotation representation of the circle, its prolongation, and the fiber
// plane that the prolongation leaves invariant.

use tangent_prolong::catalog::catalog_entry;
use tangent_prolong::lie_core::{AlgebraElement, GroupElement, TangentGroupElement};
use tangent_prolong::prolongation::prolong;
use tangent_prolong::rep_algebra::{
    certify_irreducible_2d, is_invariant_subspace, reducibility_probe, vertical_subspace, Action, Reducibility,
};

pub fn run_example() -> tangent_prolong::Result<()> {
    let rep = &catalog_entry("circle_rotation")?.rep;
    let x = TangentGroupElement::new(GroupElement::circle(0.5), AlgebraElement::circle(2.0))?;
    let m = prolong(rep, &x)?;
    println!("prolonged matrix at theta = 0.5, omega = 2:{}", m.dense());

    let fiber = vertical_subspace(2);
    let check = is_invariant_subspace(Action::Prolonged(rep), &fiber, 200, 0, 1e-9)?;
    println!("fiber plane {{(0,0,x,y)}} invariant: {:?} (residual {:.1e})", check.verdict, check.max_residual);
    assert!(check.passed());

    let probe = reducibility_probe(rep, 50, 0)?;
    println!("commutant dimension {}, probe says {:?}", probe.commutant_dim, probe.outcome);
    let sweep = certify_irreducible_2d(rep, 50, 0, 720)?;
    println!("line sweep says {:?}", sweep.outcome);
    assert_eq!(sweep.outcome, Reducibility::Irreducible);
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("prolong_circle");
}
