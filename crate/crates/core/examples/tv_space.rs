// The vector space structure of TV in trivialized coordinates.

use tangent_prolong::tv_space::{canonical_basis, tv_add, tv_scale, TangentVector};

pub fn run_example() -> tangent_prolong::Result<()> {
    let u = TangentVector::from_slices(&[1.0, 2.0], &[3.0, 4.0])?;
    let w = TangentVector::from_slices(&[0.5, -1.0], &[0.0, 2.0])?;
    let sum = tv_add(&u, &w)?;
    let scaled = tv_scale(2.0, &u);
    println!("u + w = {:?} / {:?}", sum.base().as_slice(), sum.fiber().as_slice());
    println!("2u    = {:?} / {:?}", scaled.base().as_slice(), scaled.fiber().as_slice());

    let basis = canonical_basis(2)?;
    let coeffs = basis.coefficients(&u)?;
    println!("coordinates of u in the canonical basis: {:?}", coeffs.as_slice());
    assert_eq!(coeffs.as_slice(), &[1.0, 2.0, 3.0, 4.0]);
    assert_eq!(basis.combine(&coeffs)?, u);
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("tv_space");
}
