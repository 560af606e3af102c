// The prolongation of a direct sum is a coordinate shuffle of the direct sum
// of prolongations.

use tangent_prolong::catalog::catalog_entry;
use tangent_prolong::rep_algebra::{check_direct_sum_commutation, interleave_permutation};

pub fn run_example() -> tangent_prolong::Result<()> {
    println!("interleave(1, 1) = {:?}", interleave_permutation(1, 1)?.source());
    println!("interleave(2, 1) = {:?}", interleave_permutation(2, 1)?.source());

    let so3 = &catalog_entry("so3_standard")?.rep;
    let rotation = &catalog_entry("circle_rotation")?.rep;
    let winding = &catalog_entry("circle_winding_2")?.rep;
    let report = check_direct_sum_commutation(rotation, winding, 200, 0, 1e-12)?;
    println!("rotation + winding 2: {:?} ({:.1e})", report.verdict, report.max_residual);
    assert!(report.passed());
    let report = check_direct_sum_commutation(so3, so3, 200, 0, 1e-12)?;
    println!("so3 + so3: {:?} ({:.1e})", report.verdict, report.max_residual);
    assert!(report.passed());
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("direct_sum");
}
