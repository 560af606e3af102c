// Block formula against a finite-difference derivative of the base action.

use tangent_prolong::catalog::catalog_entry;
use tangent_prolong::lie_core::Sampler;
use tangent_prolong::prolongation::{apply_prolonged, differential_report, prolong, tangent_action_oracle};
use tangent_prolong::tv_space::{pair_tangents, TangentVector};

pub fn run_example() -> tangent_prolong::Result<()> {
    let rep = &catalog_entry("so3_standard")?.rep;
    let sampler = Sampler::new(3);
    let mut worst = 0.0_f64;
    for i in 0..50 {
        let x = sampler.tangent(rep.group(), i);
        let coords = sampler.vector(6, i);
        let y = TangentVector::from_coordinates(&coords)?;
        let block = apply_prolonged(&prolong(rep, &x)?, &y)?.coordinates();
        let oracle = tangent_action_oracle(rep, &pair_tangents(&x, &y))?.coordinates();
        worst = worst.max((block - oracle).amax());
    }
    println!("max |block - oracle| over 50 triples: {worst:.2e}");
    assert!(worst < 1e-5);

    let b = sampler.algebra(rep.group(), 99);
    let report = differential_report(rep, &b)?;
    println!("analytic vs numeric differential: {:.2e}", report.discrepancy);
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("tangent_action_oracle");
}
