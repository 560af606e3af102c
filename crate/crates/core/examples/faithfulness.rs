// Prolongations of non-faithful representations are not faithful.

use tangent_prolong::catalog::catalog_entry;
use tangent_prolong::rep_algebra::{faithfulness_probe, Witness};

pub fn run_example() -> tangent_prolong::Result<()> {
    for name in ["circle_rotation", "gl_identity(2)", "circle_winding_2", "trivial(2)"] {
        let entry = catalog_entry(name)?;
        let report = faithfulness_probe(&entry.rep, 1000, 0, entry.kernel_witness.as_ref())?;
        let evidence = match &report.witness {
            Some(Witness::KernelCollision { element, .. }) => format!("kernel element {:?}", element.circle_angle()),
            Some(Witness::SamplePair { index, .. }) => format!("colliding pair at index {index}"),
            _ => format!("smallest separation {:.2e}", report.max_residual),
        };
        println!("{name:<18} {:?}: {evidence}", report.verdict);
        assert_eq!(report.passed(), entry.known_faithful);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("faithfulness");
}
