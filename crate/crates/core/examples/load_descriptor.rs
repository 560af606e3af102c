// Loading representations from JSON descriptors.

use std::path::Path;

use tangent_prolong::catalog::{catalog_entry, load_representation_file};
use tangent_prolong::lie_core::GroupElement;
use tangent_prolong::Error;

pub fn run_example() -> tangent_prolong::Result<()> {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("examples/descriptors");

    let w2 = load_representation_file(dir.join("circle_winding_2_generators.json"))?;
    let a = GroupElement::circle(0.7);
    let reference = catalog_entry("circle_winding_2")?.rep.apply(&a)?;
    println!("{} at 0.7:{}", w2.name(), w2.apply(&a)?.as_matrix());
    assert!((w2.apply(&a)?.into_inner() - reference.into_inner()).amax() < 1e-13);

    let so3 = load_representation_file(dir.join("so3_named.json"))?;
    println!("{} loaded on {}", so3.name(), so3.group());

    match load_representation_file(dir.join("so3_perturbed.json")) {
        Err(Error::RepresentationRejected { reason, residual, witness }) => {
            println!("perturbed generators rejected: {reason} (residual {residual:.2e})");
            assert!(witness.is_some());
        }
        other => panic!("expected a rejection, got {other:?}"),
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("load_descriptor");
}
