// Tangent group multiplication and the block embedding into GL(2n).

use tangent_prolong::lie_core::{AlgebraElement, GroupElement, GroupSpec, Sampler, TangentGroupElement};
use tangent_prolong::matrix::rel_residual;
use tangent_prolong::prolongation::jn_embed;

pub fn run_example() -> tangent_prolong::Result<()> {
    let gl1 = GroupSpec::general_linear(1)?;
    let scalar = |a: f64, b: f64| -> tangent_prolong::Result<TangentGroupElement> {
        TangentGroupElement::new(
            GroupElement::from_matrix(gl1.clone(), nalgebra::dmatrix![a])?,
            AlgebraElement::from_matrix(gl1.clone(), nalgebra::dmatrix![b])?,
        )
    };
    let x = scalar(2.0, 3.0)?;
    let y = scalar(5.0, 7.0)?;
    let xy = x.multiply(&y)?;
    println!("[2,3][5,7] = [{}, {}]", xy.base().matrix()[(0, 0)], xy.algebra().matrix()[(0, 0)]);
    println!("J([2,3]) = {}", jn_embed(&x).dense());

    let gl3 = GroupSpec::general_linear(3)?;
    let sampler = Sampler::new(42);
    let mut worst = 0.0_f64;
    for i in 0..100 {
        let x = sampler.tangent(&gl3, 2 * i);
        let y = sampler.tangent(&gl3, 2 * i + 1);
        let lhs = jn_embed(&x.multiply(&y)?).dense();
        let rhs = jn_embed(&x).dense() * jn_embed(&y).dense();
        worst = worst.max(rel_residual(&lhs, &rhs));
    }
    println!("worst embedding residual over 100 pairs in T(GL(3)): {worst:.2e}");
    assert!(worst < 1e-9);
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("jn_embedding");
}
