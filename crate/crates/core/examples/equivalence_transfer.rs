// An intertwiner A between equivalent representations lifts to diag(A, A)
// between their prolongations.

use tangent_prolong::catalog::catalog_entry;
use tangent_prolong::lie_core::Sampler;
use tangent_prolong::rep_algebra::{is_intertwiner, prolong_intertwiner, Action, Intertwiner};

pub fn run_example() -> tangent_prolong::Result<()> {
    let rep = &catalog_entry("sl2_standard")?.rep;
    let a0 = Sampler::new(11).well_conditioned(2, 0);
    let conjugate = rep.conjugated(&a0)?;
    let a = Intertwiner::new(a0)?;

    let base = is_intertwiner(&a, Action::Base(rep), Action::Base(&conjugate), 200, 0, 1e-9)?;
    let lifted = prolong_intertwiner(&a);
    let tangent = is_intertwiner(&lifted.map, Action::Prolonged(rep), Action::Prolonged(&conjugate), 200, 0, 1e-9)?;
    println!("A intertwines Phi and A Phi A^-1: {:?} ({:.1e})", base.verdict, base.max_residual);
    println!("TA intertwines the prolongations: {:?} ({:.1e}), equivalence {}", tangent.verdict, tangent.max_residual, lifted.equivalence);
    assert!(base.passed() && tangent.passed() && lifted.equivalence);
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("equivalence_transfer");
}
