use std::path::Path;
use std::sync::Arc;

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use super::catalog_entry;
use crate::error::{Error, Result};
use crate::lie_core::{exp_matrix, log_matrix, GroupElement, GroupKind, GroupSpec, Sampler};
use crate::matrix::{max_abs, rel_residual};
use crate::prolongation::{numeric_differential, Representation};
use crate::rep_algebra::{Sample, Witness, ORACLE_TOL};

/// Sample pairs and tolerance of the homomorphism check run on load.
pub const LOAD_SAMPLES: usize = 200;
pub const LOAD_TOL: f64 = 1e-9;

/// A square matrix written either as nested rows or as a flat row-major list.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum MatrixValue {
    Rows(Vec<Vec<f64>>),
    RowMajor(Vec<f64>),
}

impl MatrixValue {
    pub fn to_matrix(&self, n: usize) -> Result<DMatrix<f64>> {
        let entries: Vec<f64> = match self {
            MatrixValue::Rows(rows) => {
                if rows.len() != n || rows.iter().any(|r| r.len() != n) {
                    return Err(Error::Descriptor(format!("expected a {n}x{n} matrix")));
                }
                rows.iter().flatten().copied().collect()
            }
            MatrixValue::RowMajor(flat) => {
                if flat.len() != n * n {
                    return Err(Error::Descriptor(format!(
                        "expected {} row-major entries, found {}",
                        n * n,
                        flat.len()
                    )));
                }
                flat.clone()
            }
        };
        if entries.iter().any(|x| !x.is_finite()) {
            return Err(Error::Descriptor("matrix entries must be finite".into()));
        }
        Ok(DMatrix::from_row_slice(n, n, &entries))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum MapDescriptor {
    /// A catalog entry by name.
    Named { name: String },
    /// Images `dPhi(B_k)` of the algebra basis; `Phi(exp(sum t_k B_k)) = exp(sum t_k dPhi(B_k))`.
    Generators { generator_images: Vec<MatrixValue> },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RepresentationDescriptor {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub group: GroupSpec,
    pub target_dim: usize,
    pub map: MapDescriptor,
    /// Images of the algebra basis under `dPhi`, in basis order.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub differential: Option<Vec<MatrixValue>>,
}

fn basis_images(group: &GroupSpec, n: usize, images: &[MatrixValue], what: &str) -> Result<Vec<DMatrix<f64>>> {
    let k = group.algebra_dim();
    if images.len() != k {
        return Err(Error::Descriptor(format!(
            "{what}: {group} has a {k}-dimensional algebra but {} images were given",
            images.len()
        )));
    }
    images.iter().map(|m| m.to_matrix(n)).collect()
}

fn combine(images: &[DMatrix<f64>], coords: &[f64], n: usize) -> DMatrix<f64> {
    images
        .iter()
        .zip(coords)
        .fold(DMatrix::zeros(n, n), |acc, (g, &t)| acc + g * t)
}

/// Exponential coordinates of `a`: the angle on the circle, otherwise the
/// algebra coordinates of the principal logarithm.
fn exp_coords(a: &GroupElement) -> Result<Vec<f64>> {
    if let Some(theta) = a.circle_angle() {
        return Ok(vec![theta]);
    }
    a.spec().algebra_coords(&log_matrix(a.matrix())?)
}

fn generator_representation(name: String, group: GroupSpec, n: usize, images: Vec<DMatrix<f64>>) -> Result<Representation> {
    let images = Arc::new(images);
    let for_apply = Arc::clone(&images);
    let rep = Representation::new(name, group, n, move |a| {
        exp_matrix(&combine(&for_apply, &exp_coords(a)?, n))
    })?;
    Ok(rep.with_differential(move |b| Ok(combine(&images, &b.coords(), n))))
}

fn linear_differential(rep: Representation, images: Vec<DMatrix<f64>>) -> Result<Representation> {
    let n = rep.target_dim();
    for (k, basis) in rep.group().algebra_basis().into_iter().enumerate() {
        let b = crate::lie_core::AlgebraElement::from_matrix(rep.group().clone(), basis)?;
        let numeric = numeric_differential(&rep, &b)?;
        let residual = rel_residual(&images[k], numeric.as_matrix());
        if residual > ORACLE_TOL {
            return Err(Error::RepresentationRejected {
                reason: format!("differential image {k} disagrees with the finite-difference derivative"),
                residual,
                witness: None,
            });
        }
    }
    Ok(rep.with_differential(move |b| Ok(combine(&images, &b.coords(), n))))
}

/// Homomorphism check on load; pairs whose product leaves the exponential
/// chart (no real principal logarithm) are skipped.
fn verify_on_load(rep: &Representation) -> Result<()> {
    let group = rep.group();
    if group.kind() == &GroupKind::Circle {
        let full_turn = crate::lie_core::AlgebraElement::circle(2.0 * std::f64::consts::PI);
        if let Some(d) = rep.analytic_differential(&full_turn) {
            let n = rep.target_dim();
            let residual = max_abs(&(exp_matrix(d?.as_matrix())? - DMatrix::identity(n, n)));
            if residual > LOAD_TOL {
                return Err(Error::RepresentationRejected {
                    reason: "generator image does not close up over a full turn of the circle".into(),
                    residual,
                    witness: None,
                });
            }
        }
    }
    let sampler = Sampler::new(0);
    let mut worst: Option<(f64, Witness)> = None;
    let mut tested = 0usize;
    for i in 0..LOAD_SAMPLES as u64 {
        let a = sampler.group(group, 2 * i);
        let b = sampler.group(group, 2 * i + 1);
        let pair = (|| -> Result<f64> {
            let lhs = rep.apply(&a.mul(&b)?)?;
            let rhs = rep.apply(&a)?.into_inner() * rep.apply(&b)?.into_inner();
            Ok(rel_residual(lhs.as_matrix(), &rhs))
        })();
        let residual = match pair {
            Ok(r) => r,
            Err(Error::Logarithm(_)) => continue,
            Err(e) => return Err(e),
        };
        tested += 1;
        if worst.as_ref().is_none_or(|(w, _)| residual > *w || residual.is_nan()) {
            worst = Some((
                residual,
                Witness::SamplePair {
                    seed: 0,
                    index: i,
                    first: Sample::Group(a),
                    second: Sample::Group(b),
                },
            ));
        }
    }
    match worst {
        None => Err(Error::RepresentationRejected {
            reason: "no sampled pair lies inside the exponential chart".into(),
            residual: f64::INFINITY,
            witness: None,
        }),
        Some((residual, witness)) if residual.is_nan() || residual >= LOAD_TOL => Err(Error::RepresentationRejected {
            reason: format!("homomorphism check failed on {tested} sampled pairs"),
            residual,
            witness: Some(Box::new(witness)),
        }),
        Some(_) => Ok(()),
    }
}

/// Builds a representation from a descriptor and runs the homomorphism check.
///
/// Generator-defined maps read group elements in exponential coordinates
/// through the principal logarithm (the angle on the circle), so they are
/// only defined on the image of that single chart.
pub fn load_representation(desc: &RepresentationDescriptor) -> Result<Representation> {
    let n = desc.target_dim;
    if n == 0 {
        return Err(Error::Descriptor("target_dim must be positive".into()));
    }
    let rep = match &desc.map {
        MapDescriptor::Named { name } => {
            let entry = catalog_entry(name)?;
            if entry.rep.group() != &desc.group {
                return Err(Error::GroupMismatch {
                    left: desc.group.clone(),
                    right: entry.rep.group().clone(),
                });
            }
            if entry.rep.target_dim() != n {
                return Err(Error::DimensionMismatch {
                    expected: entry.rep.target_dim(),
                    found: n,
                });
            }
            let rep = entry.rep.clone();
            match &desc.differential {
                Some(images) => linear_differential(rep, basis_images(&desc.group, n, images, "differential")?)?,
                None => rep,
            }
        }
        MapDescriptor::Generators { generator_images } => {
            let images = basis_images(&desc.group, n, generator_images, "generator_images")?;
            if let Some(d) = &desc.differential {
                let declared = basis_images(&desc.group, n, d, "differential")?;
                for (k, (g, dk)) in images.iter().zip(&declared).enumerate() {
                    let residual = rel_residual(dk, g);
                    if residual > LOAD_TOL {
                        return Err(Error::RepresentationRejected {
                            reason: format!("differential image {k} differs from generator image {k}"),
                            residual,
                            witness: None,
                        });
                    }
                }
            }
            generator_representation("generators".into(), desc.group.clone(), n, images)?
        }
    };
    let rep = match &desc.name {
        Some(name) => rep.renamed(name.as_str()),
        None => rep,
    };
    verify_on_load(&rep)?;
    Ok(rep)
}

pub fn load_representation_json(text: &str) -> Result<Representation> {
    let desc: RepresentationDescriptor =
        serde_json::from_str(text).map_err(|e| Error::Descriptor(e.to_string()))?;
    load_representation(&desc)
}

pub fn load_representation_file(path: impl AsRef<Path>) -> Result<Representation> {
    load_representation_json(&std::fs::read_to_string(path)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::catalog_entry;

    const SO3_GENERATORS: &str = r#"[
        [[0, 1, 0], [-1, 0, 0], [0, 0, 0]],
        [[0, 0, 1], [0, 0, 0], [-1, 0, 0]],
        [[0, 0, 0], [0, 0, 1], [0, -1, 0]]
    ]"#;

    fn agree_on_samples(a: &Representation, b: &Representation) -> f64 {
        let sampler = Sampler::new(7);
        (0..50)
            .map(|i| {
                let g = sampler.group(a.group(), i);
                max_abs(&(a.apply(&g).unwrap().into_inner() - b.apply(&g).unwrap().into_inner()))
            })
            .fold(0.0, f64::max)
    }

    #[test]
    fn named_descriptor_matches_catalog() {
        let rep = load_representation_json(
            r#"{"group": {"kind": "special_orthogonal", "dim": 3}, "target_dim": 3,
                "map": {"kind": "named", "name": "so3_standard"}}"#,
        )
        .unwrap();
        assert_eq!(rep.name(), "so3_standard");
        assert_eq!(agree_on_samples(&rep, &catalog_entry("so3_standard").unwrap().rep), 0.0);
    }

    #[test]
    fn circle_generator_reproduces_winding_two() {
        let rep = load_representation_json(
            r#"{"name": "w2", "group": {"kind": "circle", "dim": 2}, "target_dim": 2,
                "map": {"kind": "generators", "generator_images": [[0, 2, -2, 0]]}}"#,
        )
        .unwrap();
        let reference = &catalog_entry("circle_winding_2").unwrap().rep;
        assert!(agree_on_samples(&rep, reference) < 1e-13);
        for theta in [3.1, -3.1, 2.0] {
            let a = GroupElement::circle(theta);
            let d = rep.apply(&a).unwrap().into_inner() - reference.apply(&a).unwrap().into_inner();
            assert!(max_abs(&d) < 1e-13);
        }
    }

    #[test]
    fn so3_generators_load_and_perturbation_is_rejected() {
        let good = format!(
            r#"{{"group": {{"kind": "special_orthogonal", "dim": 3}}, "target_dim": 3,
                "map": {{"kind": "generators", "generator_images": {SO3_GENERATORS}}}}}"#
        );
        let rep = load_representation_json(&good).unwrap();
        assert!(agree_on_samples(&rep, &catalog_entry("so3_standard").unwrap().rep) < 1e-12);

        let bad = good.replacen("[[0, 1, 0]", "[[0.01, 1, 0]", 1);
        match load_representation_json(&bad) {
            Err(Error::RepresentationRejected { residual, witness, .. }) => {
                assert!(residual > 1e-4);
                assert!(matches!(witness.as_deref(), Some(Witness::SamplePair { .. })));
            }
            other => panic!("expected rejection, got {other:?}"),
        }
    }

    #[test]
    fn non_integer_winding_is_rejected() {
        let err = load_representation_json(
            r#"{"group": {"kind": "circle", "dim": 2}, "target_dim": 2,
                "map": {"kind": "generators", "generator_images": [[[0, 1.5], [-1.5, 0]]]}}"#,
        )
        .unwrap_err();
        assert!(matches!(err, Error::RepresentationRejected { .. }));
    }

    #[test]
    fn malformed_documents_are_descriptor_errors() {
        let cases = [
            "not json",
            r#"{"group": {"kind": "circle", "dim": 2}, "target_dim": 2, "map": {"kind": "named"}}"#,
            r#"{"group": {"kind": "circle", "dim": 2}, "target_dim": 2, "map": {"kind": "named", "name": "circle_rotation"}, "extra": 1}"#,
            r#"{"group": {"kind": "circle", "dim": 3}, "target_dim": 2, "map": {"kind": "named", "name": "circle_rotation"}}"#,
            r#"{"group": {"kind": "circle", "dim": 2}, "target_dim": 2, "map": {"kind": "generators", "generator_images": [[0, 1, -1]]}}"#,
            r#"{"group": {"kind": "circle", "dim": 2}, "target_dim": 2, "map": {"kind": "generators", "generator_images": []}}"#,
            r#"{"group": {"kind": "circle", "dim": 2}, "target_dim": 0, "map": {"kind": "named", "name": "circle_rotation"}}"#,
        ];
        for text in cases {
            let err = load_representation_json(text).unwrap_err();
            assert!(matches!(err, Error::Descriptor(_)), "{text}: {err:?}");
        }
    }

    #[test]
    fn named_with_wrong_group_or_name() {
        let wrong_group = r#"{"group": {"kind": "general_linear", "dim": 2}, "target_dim": 2,
            "map": {"kind": "named", "name": "circle_rotation"}}"#;
        assert!(matches!(load_representation_json(wrong_group), Err(Error::GroupMismatch { .. })));
        let unknown = r#"{"group": {"kind": "circle", "dim": 2}, "target_dim": 2,
            "map": {"kind": "named", "name": "circle_rotation_9"}}"#;
        assert!(matches!(load_representation_json(unknown), Err(Error::UnknownRepresentation(_))));
    }

    #[test]
    fn declared_differential_is_cross_checked() {
        let ok = r#"{"group": {"kind": "circle", "dim": 2}, "target_dim": 2,
            "map": {"kind": "named", "name": "circle_winding_2"}, "differential": [[0, 2, -2, 0]]}"#;
        assert!(load_representation_json(ok).unwrap().has_analytic_differential());
        let wrong = ok.replace("[[0, 2, -2, 0]]", "[[0, 3, -3, 0]]");
        assert!(matches!(load_representation_json(&wrong), Err(Error::RepresentationRejected { .. })));
    }
}
