use nalgebra::{DMatrix, DVector};
use proptest::prelude::*;

use tangent_prolong::catalog::catalog_list;
use tangent_prolong::lie_core::{GroupSpec, Sampler, TangentGroupElement, MEMBERSHIP_TOL};
use tangent_prolong::matrix::{rank, rel_residual};
use tangent_prolong::prolongation::{apply_prolonged, jn_embed, prolong};
use tangent_prolong::rep_algebra::{
    base_invariance_from_prolonged, is_invariant_subspace, prolong_subspace, reducibility_probe, Action,
    Reducibility,
};
use tangent_prolong::tv_space::{canonical_basis, tv_add, tv_scale, TangentVector};

fn specs() -> Vec<GroupSpec> {
    vec![
        GroupSpec::general_linear(1).unwrap(),
        GroupSpec::general_linear(2).unwrap(),
        GroupSpec::general_linear(3).unwrap(),
        GroupSpec::general_linear(4).unwrap(),
        GroupSpec::special_linear(2).unwrap(),
        GroupSpec::special_orthogonal(3).unwrap(),
        GroupSpec::circle(),
    ]
}

fn tangent_triple(spec: &GroupSpec, seed: u64) -> [TangentGroupElement; 3] {
    let s = Sampler::new(seed);
    [s.tangent(spec, 0), s.tangent(spec, 1), s.tangent(spec, 2)]
}

fn dense(x: &TangentGroupElement) -> DMatrix<f64> {
    jn_embed(x).dense()
}

/// Multiples of 1/8 in [-8, 8]: sums and products of a few of these are
/// exact in f64.
fn dyadic_vector(n: usize) -> impl Strategy<Value = TangentVector> {
    prop::collection::vec(-64i32..=64, 2 * n).prop_map(move |ks| {
        let v: Vec<f64> = ks.iter().map(|&k| f64::from(k) / 8.0).collect();
        TangentVector::from_slices(&v[..n], &v[n..]).unwrap()
    })
}

fn dyadic_scalar() -> impl Strategy<Value = f64> {
    (-64i32..=64).prop_map(|k| f64::from(k) / 8.0)
}

fn tv_triple() -> impl Strategy<Value = (TangentVector, TangentVector, TangentVector, f64, f64)> {
    (1usize..=5).prop_flat_map(|n| (dyadic_vector(n), dyadic_vector(n), dyadic_vector(n), dyadic_scalar(), dyadic_scalar()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn tangent_group_is_associative(spec_index in 0usize..7, seed in any::<u64>()) {
        let spec = &specs()[spec_index];
        let [x, y, z] = tangent_triple(spec, seed);
        let left = x.multiply(&y).unwrap().multiply(&z).unwrap();
        let right = x.multiply(&y.multiply(&z).unwrap()).unwrap();
        prop_assert!(rel_residual(&dense(&left), &dense(&right)) < 1e-8);
    }

    #[test]
    fn identity_inverse_and_membership(spec_index in 0usize..7, seed in any::<u64>()) {
        let spec = &specs()[spec_index];
        let [x, y, _] = tangent_triple(spec, seed);
        let e = TangentGroupElement::identity(spec.clone());
        prop_assert_eq!(&x.multiply(&e).unwrap(), &x);
        prop_assert_eq!(&e.multiply(&x).unwrap(), &x);
        let xi = x.inverse().unwrap();
        for product in [x.multiply(&xi).unwrap(), xi.multiply(&x).unwrap()] {
            prop_assert!(rel_residual(&dense(&product), &dense(&e)) < 1e-9);
        }
        let xy = x.multiply(&y).unwrap();
        prop_assert!(spec.membership_residual(xy.base().matrix()) < MEMBERSHIP_TOL);
        prop_assert!(spec.membership_residual(xi.base().matrix()) < MEMBERSHIP_TOL);
        prop_assert!(spec.algebra_residual(xy.algebra().matrix()) < MEMBERSHIP_TOL);
    }

    #[test]
    fn embedding_is_a_homomorphism(spec_index in 0usize..7, seed in any::<u64>()) {
        let spec = &specs()[spec_index];
        let [x, y, _] = tangent_triple(spec, seed);
        let lhs = dense(&x.multiply(&y).unwrap());
        prop_assert!(rel_residual(&lhs, &(dense(&x) * dense(&y))) < 1e-9);
    }

    #[test]
    fn vector_space_axioms_hold_exactly((u, v, w, a, b) in tv_triple()) {
        let n = u.dim();
        let zero = TangentVector::zero(n);
        let add = |p: &TangentVector, q: &TangentVector| tv_add(p, q).unwrap();
        prop_assert_eq!(add(&add(&u, &v), &w), add(&u, &add(&v, &w)));
        prop_assert_eq!(add(&u, &v), add(&v, &u));
        prop_assert_eq!(add(&u, &zero), u.clone());
        prop_assert_eq!(add(&u, &tv_scale(-1.0, &u)), zero);
        prop_assert_eq!(tv_scale(a, &add(&u, &v)), add(&tv_scale(a, &u), &tv_scale(a, &v)));
        prop_assert_eq!(tv_scale(a + b, &u), add(&tv_scale(a, &u), &tv_scale(b, &u)));
        prop_assert_eq!(tv_scale(a, &tv_scale(b, &u)), tv_scale(a * b, &u));
        prop_assert_eq!(tv_scale(1.0, &u), u.clone());

        let basis = canonical_basis(n).unwrap();
        prop_assert_eq!(basis.combine(&basis.coefficients(&u).unwrap()).unwrap(), u);
        prop_assert_eq!(rank(&basis.coordinate_matrix(), 1e-8), 2 * n);
    }

    #[test]
    fn catalog_prolongations_are_homomorphisms(entry_index in 0usize..64, seed in any::<u64>()) {
        let entries = catalog_list();
        let rep = &entries[entry_index % entries.len()].rep;
        let [x, y, _] = tangent_triple(rep.group(), seed);
        let lhs = prolong(rep, &x.multiply(&y).unwrap()).unwrap().dense();
        let rhs = prolong(rep, &x).unwrap().dense() * prolong(rep, &y).unwrap().dense();
        prop_assert!(rel_residual(&lhs, &rhs) < 1e-8);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn prolonged_blocks_and_vertical_invariance(entry_index in 0usize..64, seed in any::<u64>()) {
        let entries = catalog_list();
        let rep = &entries[entry_index % entries.len()].rep;
        let n = rep.target_dim();
        let s = Sampler::new(seed);
        let m = prolong(rep, &s.tangent(rep.group(), 0)).unwrap();
        let d = m.dense();
        prop_assert!(d.view((0, n), (n, n)).iter().all(|&x| x == 0.0));
        prop_assert_eq!(d.view((0, 0), (n, n)), d.view((n, n), (n, n)));
        let v = s.vector(n, 1);
        let image = apply_prolonged(&m, &TangentVector::new(DVector::zeros(n), v).unwrap()).unwrap();
        prop_assert!(image.base().iter().all(|&x| x == 0.0));
    }

    #[test]
    fn invariance_transfers_both_ways(entry_index in 0usize..64, seed in 0u64..1000) {
        let entries = catalog_list();
        let entry = &entries[entry_index % entries.len()];
        let rep = &entry.rep;
        for u in &entry.known_invariant_subspaces {
            prop_assert!(is_invariant_subspace(Action::Base(rep), u, 20, seed, 1e-9).unwrap().passed());
            let tu = prolong_subspace(u);
            prop_assert!(is_invariant_subspace(Action::Prolonged(rep), &tu, 20, seed, 1e-9).unwrap().passed());
            prop_assert!(base_invariance_from_prolonged(rep, u, 20, seed, 1e-9).unwrap().passed());
        }
    }
}

#[test]
fn reducible_probes_lift_to_prolonged_subspaces() {
    let mut reducible = 0;
    for entry in catalog_list() {
        let probe = reducibility_probe(&entry.rep, 30, 0).unwrap();
        if probe.outcome == Reducibility::Reducible {
            reducible += 1;
            let u = probe.witness.expect("reducible probes carry a witness");
            let tu = prolong_subspace(&u);
            let report = is_invariant_subspace(Action::Prolonged(&entry.rep), &tu, 100, 1, 1e-9).unwrap();
            assert!(report.passed(), "{}: {report:?}", entry.name);
        }
        if probe.outcome == Reducibility::Irreducible {
            assert!(entry.known_invariant_subspaces.is_empty(), "{}", entry.name);
        }
    }
    assert!(reducible >= 5);
}
