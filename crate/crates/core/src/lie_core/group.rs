use std::fmt;

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::{max_abs, rel_residual, SquareMatrix};

/// Absolute tolerance on the defining residual of a group or algebra element.
pub const MEMBERSHIP_TOL: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq)]
pub enum GroupKind {
    GeneralLinear,
    SpecialLinear,
    SpecialOrthogonal,
    /// The circle group, realized as 2x2 rotation matrices.
    Circle,
    /// Block-diagonal product of the component groups.
    Product(Vec<GroupSpec>),
}

/// A matrix Lie group together with the size of its defining matrices.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawGroupSpec", into = "RawGroupSpec")]
pub struct GroupSpec {
    kind: GroupKind,
    dim: usize,
}

/// Group family without parameters, as written in descriptors.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum KindTag {
    GeneralLinear,
    SpecialLinear,
    SpecialOrthogonal,
    Circle,
    Product,
}

impl KindTag {
    pub const ALL: [KindTag; 5] = [
        KindTag::GeneralLinear,
        KindTag::SpecialLinear,
        KindTag::SpecialOrthogonal,
        KindTag::Circle,
        KindTag::Product,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            KindTag::GeneralLinear => "general_linear",
            KindTag::SpecialLinear => "special_linear",
            KindTag::SpecialOrthogonal => "special_orthogonal",
            KindTag::Circle => "circle",
            KindTag::Product => "product",
        }
    }
}

impl fmt::Display for KindTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for KindTag {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        KindTag::ALL
            .into_iter()
            .find(|k| k.as_str() == s)
            .ok_or_else(|| Error::InvalidGroup(format!("unknown group kind `{s}`")))
    }
}

#[derive(Serialize, Deserialize)]
struct RawGroupSpec {
    kind: KindTag,
    dim: usize,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    components: Vec<GroupSpec>,
}

impl TryFrom<RawGroupSpec> for GroupSpec {
    type Error = Error;

    fn try_from(raw: RawGroupSpec) -> Result<Self> {
        if raw.kind != KindTag::Product && !raw.components.is_empty() {
            return Err(Error::InvalidGroup(
                "only Product groups take components".into(),
            ));
        }
        let spec = match raw.kind {
            KindTag::GeneralLinear => GroupSpec::general_linear(raw.dim)?,
            KindTag::SpecialLinear => GroupSpec::special_linear(raw.dim)?,
            KindTag::SpecialOrthogonal => GroupSpec::special_orthogonal(raw.dim)?,
            KindTag::Circle => GroupSpec::circle(),
            KindTag::Product => GroupSpec::product(raw.components)?,
        };
        if spec.dim != raw.dim {
            return Err(Error::InvalidGroup(format!(
                "declared dim {} but {} has matrix size {}",
                raw.dim, spec, spec.dim
            )));
        }
        Ok(spec)
    }
}

impl From<GroupSpec> for RawGroupSpec {
    fn from(spec: GroupSpec) -> Self {
        let dim = spec.dim;
        let (kind, components) = match spec.kind {
            GroupKind::GeneralLinear => (KindTag::GeneralLinear, vec![]),
            GroupKind::SpecialLinear => (KindTag::SpecialLinear, vec![]),
            GroupKind::SpecialOrthogonal => (KindTag::SpecialOrthogonal, vec![]),
            GroupKind::Circle => (KindTag::Circle, vec![]),
            GroupKind::Product(c) => (KindTag::Product, c),
        };
        RawGroupSpec {
            kind,
            dim,
            components,
        }
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            GroupKind::GeneralLinear => write!(f, "GL({})", self.dim),
            GroupKind::SpecialLinear => write!(f, "SL({})", self.dim),
            GroupKind::SpecialOrthogonal => write!(f, "SO({})", self.dim),
            GroupKind::Circle => write!(f, "S1"),
            GroupKind::Product(parts) => {
                for (i, p) in parts.iter().enumerate() {
                    if i > 0 {
                        write!(f, "x")?;
                    }
                    write!(f, "{p}")?;
                }
                Ok(())
            }
        }
    }
}

fn positive(dim: usize) -> Result<usize> {
    if dim == 0 {
        Err(Error::InvalidGroup("dimension must be positive".into()))
    } else {
        Ok(dim)
    }
}

impl GroupSpec {
    pub fn general_linear(n: usize) -> Result<Self> {
        Ok(Self {
            kind: GroupKind::GeneralLinear,
            dim: positive(n)?,
        })
    }

    pub fn special_linear(n: usize) -> Result<Self> {
        Ok(Self {
            kind: GroupKind::SpecialLinear,
            dim: positive(n)?,
        })
    }

    pub fn special_orthogonal(n: usize) -> Result<Self> {
        Ok(Self {
            kind: GroupKind::SpecialOrthogonal,
            dim: positive(n)?,
        })
    }

    pub fn circle() -> Self {
        Self {
            kind: GroupKind::Circle,
            dim: 2,
        }
    }

    pub fn product(components: Vec<GroupSpec>) -> Result<Self> {
        if components.is_empty() {
            return Err(Error::InvalidGroup("empty product".into()));
        }
        let dim = components.iter().map(|c| c.dim).sum();
        Ok(Self {
            kind: GroupKind::Product(components),
            dim,
        })
    }

    pub fn kind(&self) -> &GroupKind {
        &self.kind
    }

    pub fn kind_tag(&self) -> KindTag {
        match self.kind {
            GroupKind::GeneralLinear => KindTag::GeneralLinear,
            GroupKind::SpecialLinear => KindTag::SpecialLinear,
            GroupKind::SpecialOrthogonal => KindTag::SpecialOrthogonal,
            GroupKind::Circle => KindTag::Circle,
            GroupKind::Product(_) => KindTag::Product,
        }
    }

    /// Size of the defining matrices.
    pub fn dim(&self) -> usize {
        self.dim
    }

    fn blocks(&self) -> Vec<(usize, &GroupSpec)> {
        let GroupKind::Product(parts) = &self.kind else {
            return vec![];
        };
        let mut offset = 0;
        parts
            .iter()
            .map(|p| {
                let at = offset;
                offset += p.dim;
                (at, p)
            })
            .collect()
    }

    fn off_block_residual(&self, m: &DMatrix<f64>) -> f64 {
        let blocks = self.blocks();
        let mut worst = 0.0_f64;
        for (i, (oi, pi)) in blocks.iter().enumerate() {
            for (j, (oj, pj)) in blocks.iter().enumerate() {
                if i != j {
                    let view = m.view((*oi, *oj), (pi.dim, pj.dim)).into_owned();
                    worst = worst.max(max_abs(&view));
                }
            }
        }
        worst
    }

    /// Defining residual of `m` as an element of this group; infinite when
    /// `m` has the wrong shape or is numerically singular.
    pub fn membership_residual(&self, m: &DMatrix<f64>) -> f64 {
        if m.nrows() != self.dim || m.ncols() != self.dim {
            return f64::INFINITY;
        }
        match &self.kind {
            GroupKind::GeneralLinear => {
                let sv = m.clone().svd(false, false).singular_values;
                if sv.min() > 1e-12 * sv.max() {
                    0.0
                } else {
                    f64::INFINITY
                }
            }
            GroupKind::SpecialLinear => (m.determinant() - 1.0).abs(),
            GroupKind::SpecialOrthogonal | GroupKind::Circle => {
                let gram = m.transpose() * m;
                let ortho = rel_residual(&gram, &DMatrix::identity(self.dim, self.dim));
                ortho.max((m.determinant() - 1.0).abs())
            }
            GroupKind::Product(_) => {
                let mut worst = self.off_block_residual(m);
                for (at, part) in self.blocks() {
                    let block = m.view((at, at), (part.dim, part.dim)).into_owned();
                    worst = worst.max(part.membership_residual(&block));
                }
                worst
            }
        }
    }

    /// Defining residual of `m` as an element of the Lie algebra.
    pub fn algebra_residual(&self, m: &DMatrix<f64>) -> f64 {
        if m.nrows() != self.dim || m.ncols() != self.dim {
            return f64::INFINITY;
        }
        match &self.kind {
            GroupKind::GeneralLinear => 0.0,
            GroupKind::SpecialLinear => m.trace().abs(),
            GroupKind::SpecialOrthogonal | GroupKind::Circle => max_abs(&(m + m.transpose())),
            GroupKind::Product(_) => {
                let mut worst = self.off_block_residual(m);
                for (at, part) in self.blocks() {
                    let block = m.view((at, at), (part.dim, part.dim)).into_owned();
                    worst = worst.max(part.algebra_residual(&block));
                }
                worst
            }
        }
    }

    /// Nearest algebra element to `m` in the Frobenius norm.
    pub fn project_to_algebra(&self, m: &DMatrix<f64>) -> DMatrix<f64> {
        match &self.kind {
            GroupKind::GeneralLinear => m.clone(),
            GroupKind::SpecialLinear => {
                let shift = m.trace() / self.dim as f64;
                m - DMatrix::identity(self.dim, self.dim) * shift
            }
            GroupKind::SpecialOrthogonal | GroupKind::Circle => (m - m.transpose()) * 0.5,
            GroupKind::Product(_) => {
                let mut out = DMatrix::zeros(self.dim, self.dim);
                for (at, part) in self.blocks() {
                    let block = m.view((at, at), (part.dim, part.dim)).into_owned();
                    out.view_mut((at, at), (part.dim, part.dim))
                        .copy_from(&part.project_to_algebra(&block));
                }
                out
            }
        }
    }

    /// The canonical basis of the Lie algebra.
    ///
    /// GL: elementary matrices in row-major order. SL: off-diagonal elementary
    /// matrices in row-major order, then `E_ii - E_nn`. SO: `E_ij - E_ji` for
    /// `i < j` in row-major order; for the circle this is the single generator
    /// `[[0, 1], [-1, 0]]`. Products concatenate the component bases.
    pub fn algebra_basis(&self) -> Vec<DMatrix<f64>> {
        let n = self.dim;
        let unit = |i: usize, j: usize| {
            let mut e = DMatrix::zeros(n, n);
            e[(i, j)] = 1.0;
            e
        };
        match &self.kind {
            GroupKind::GeneralLinear => (0..n)
                .flat_map(|i| (0..n).map(move |j| (i, j)))
                .map(|(i, j)| unit(i, j))
                .collect(),
            GroupKind::SpecialLinear => {
                let mut basis: Vec<_> = (0..n)
                    .flat_map(|i| (0..n).map(move |j| (i, j)))
                    .filter(|(i, j)| i != j)
                    .map(|(i, j)| unit(i, j))
                    .collect();
                for i in 0..n.saturating_sub(1) {
                    basis.push(unit(i, i) - unit(n - 1, n - 1));
                }
                basis
            }
            GroupKind::SpecialOrthogonal | GroupKind::Circle => (0..n)
                .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
                .map(|(i, j)| unit(i, j) - unit(j, i))
                .collect(),
            GroupKind::Product(parts) => {
                let mut basis = Vec::new();
                let mut at = 0;
                for part in parts {
                    for b in part.algebra_basis() {
                        let mut e = DMatrix::zeros(n, n);
                        e.view_mut((at, at), (part.dim, part.dim)).copy_from(&b);
                        basis.push(e);
                    }
                    at += part.dim;
                }
                basis
            }
        }
    }

    pub fn algebra_dim(&self) -> usize {
        self.algebra_basis().len()
    }

    /// Coordinates of `m` in [`algebra_basis`](Self::algebra_basis), by least squares.
    pub fn algebra_coords(&self, m: &DMatrix<f64>) -> Result<Vec<f64>> {
        if m.nrows() != self.dim || m.ncols() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: m.nrows(),
            });
        }
        let basis = self.algebra_basis();
        if basis.is_empty() {
            return Ok(vec![]);
        }
        let columns: Vec<DVector<f64>> = basis
            .iter()
            .map(|b| DVector::from_iterator(b.len(), b.iter().copied()))
            .collect();
        let design = DMatrix::from_columns(&columns);
        let target = DVector::from_iterator(m.len(), m.iter().copied());
        let coords = design
            .svd(true, true)
            .solve(&target, 1e-14)
            .map_err(|e| Error::Logarithm(e.to_string()))?;
        Ok(coords.iter().copied().collect())
    }

    pub fn from_algebra_coords(&self, coords: &[f64]) -> Result<DMatrix<f64>> {
        let basis = self.algebra_basis();
        if coords.len() != basis.len() {
            return Err(Error::DimensionMismatch {
                expected: basis.len(),
                found: coords.len(),
            });
        }
        let mut out = DMatrix::zeros(self.dim, self.dim);
        for (c, b) in coords.iter().zip(&basis) {
            out += b * *c;
        }
        Ok(out)
    }

    /// Component groups of a product, or the group itself.
    pub fn components(&self) -> Vec<GroupSpec> {
        match &self.kind {
            GroupKind::Product(parts) => parts.clone(),
            _ => vec![self.clone()],
        }
    }
}

/// Rotation matrix `[[cos t, sin t], [-sin t, cos t]]`.
pub fn rotation(theta: f64) -> DMatrix<f64> {
    let (s, c) = theta.sin_cos();
    DMatrix::from_row_slice(2, 2, &[c, s, -s, c])
}

/// Generator of the circle group, `[[0, 1], [-1, 0]]`.
pub fn circle_generator() -> DMatrix<f64> {
    DMatrix::from_row_slice(2, 2, &[0.0, 1.0, -1.0, 0.0])
}

/// An element of a matrix Lie group.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GroupElement {
    matrix: SquareMatrix,
    spec: GroupSpec,
}

impl GroupElement {
    pub fn new(spec: GroupSpec, matrix: SquareMatrix) -> Result<Self> {
        if matrix.dim() != spec.dim() {
            return Err(Error::DimensionMismatch {
                expected: spec.dim(),
                found: matrix.dim(),
            });
        }
        let residual = spec.membership_residual(&matrix);
        if residual.is_nan() || residual >= MEMBERSHIP_TOL {
            return Err(Error::NotInGroup { spec, residual });
        }
        Ok(Self { matrix, spec })
    }

    pub fn from_matrix(spec: GroupSpec, matrix: DMatrix<f64>) -> Result<Self> {
        Self::new(spec, SquareMatrix::new(matrix)?)
    }

    pub fn identity(spec: GroupSpec) -> Self {
        Self {
            matrix: SquareMatrix::identity(spec.dim()),
            spec,
        }
    }

    /// The circle element at angle `theta`.
    pub fn circle(theta: f64) -> Self {
        Self {
            matrix: SquareMatrix::new(rotation(theta)).expect("finite rotation"),
            spec: GroupSpec::circle(),
        }
    }

    pub fn matrix(&self) -> &SquareMatrix {
        &self.matrix
    }

    pub fn spec(&self) -> &GroupSpec {
        &self.spec
    }

    /// Angle of a circle element in `(-pi, pi]`.
    pub fn circle_angle(&self) -> Option<f64> {
        (self.spec.kind == GroupKind::Circle).then(|| self.matrix[(0, 1)].atan2(self.matrix[(0, 0)]))
    }

    pub fn mul(&self, other: &GroupElement) -> Result<GroupElement> {
        same_group(&self.spec, &other.spec)?;
        Self::from_matrix(
            self.spec.clone(),
            self.matrix.as_matrix() * other.matrix.as_matrix(),
        )
    }

    pub fn inverse(&self) -> Result<GroupElement> {
        Self::new(self.spec.clone(), self.matrix.inverse()?)
    }
}

/// An element of the Lie algebra of a matrix group.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AlgebraElement {
    matrix: SquareMatrix,
    spec: GroupSpec,
}

impl AlgebraElement {
    pub fn new(spec: GroupSpec, matrix: SquareMatrix) -> Result<Self> {
        if matrix.dim() != spec.dim() {
            return Err(Error::DimensionMismatch {
                expected: spec.dim(),
                found: matrix.dim(),
            });
        }
        let residual = spec.algebra_residual(&matrix);
        if residual.is_nan() || residual >= MEMBERSHIP_TOL {
            return Err(Error::NotInAlgebra { spec, residual });
        }
        Ok(Self { matrix, spec })
    }

    pub fn from_matrix(spec: GroupSpec, matrix: DMatrix<f64>) -> Result<Self> {
        Self::new(spec, SquareMatrix::new(matrix)?)
    }

    pub fn zero(spec: GroupSpec) -> Self {
        Self {
            matrix: SquareMatrix::zeros(spec.dim()),
            spec,
        }
    }

    /// `omega * [[0, 1], [-1, 0]]` in the circle algebra.
    pub fn circle(omega: f64) -> Self {
        Self {
            matrix: SquareMatrix::new(circle_generator() * omega).expect("finite generator"),
            spec: GroupSpec::circle(),
        }
    }

    pub fn from_coords(spec: GroupSpec, coords: &[f64]) -> Result<Self> {
        let m = spec.from_algebra_coords(coords)?;
        Self::from_matrix(spec, m)
    }

    pub fn coords(&self) -> Vec<f64> {
        self.spec
            .algebra_coords(&self.matrix)
            .expect("shape checked at construction")
    }

    pub fn matrix(&self) -> &SquareMatrix {
        &self.matrix
    }

    pub fn spec(&self) -> &GroupSpec {
        &self.spec
    }

    pub fn scale(&self, t: f64) -> Result<AlgebraElement> {
        Self::from_matrix(self.spec.clone(), self.matrix.as_matrix() * t)
    }
}

pub(crate) fn same_group(left: &GroupSpec, right: &GroupSpec) -> Result<()> {
    if left == right {
        Ok(())
    } else {
        Err(Error::GroupMismatch {
            left: left.clone(),
            right: right.clone(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn display_and_json_shape() {
        let g = GroupSpec::product(vec![GroupSpec::circle(), GroupSpec::general_linear(2).unwrap()])
            .unwrap();
        assert_eq!(g.to_string(), "S1xGL(2)");
        assert_eq!(g.dim(), 4);
        let text = serde_json::to_string(&GroupSpec::special_orthogonal(3).unwrap()).unwrap();
        assert_eq!(text, r#"{"kind":"special_orthogonal","dim":3}"#);
        let back: GroupSpec = serde_json::from_str(&serde_json::to_string(&g).unwrap()).unwrap();
        assert_eq!(back, g);
        assert_eq!("circle".parse::<KindTag>().unwrap(), KindTag::Circle);
        assert!("Circle".parse::<KindTag>().is_err());
    }

    #[test]
    fn inconsistent_circle_dim_is_rejected() {
        let err = serde_json::from_str::<GroupSpec>(r#"{"kind":"circle","dim":3}"#);
        assert!(err.is_err());
        assert!(GroupSpec::general_linear(0).is_err());
    }

    #[test]
    fn algebra_bases_have_expected_sizes() {
        assert_eq!(GroupSpec::general_linear(3).unwrap().algebra_dim(), 9);
        assert_eq!(GroupSpec::special_linear(3).unwrap().algebra_dim(), 8);
        assert_eq!(GroupSpec::special_orthogonal(3).unwrap().algebra_dim(), 3);
        assert_eq!(GroupSpec::circle().algebra_dim(), 1);
        assert_eq!(GroupSpec::circle().algebra_basis()[0], circle_generator());
        for spec in [
            GroupSpec::special_linear(3).unwrap(),
            GroupSpec::special_orthogonal(4).unwrap(),
        ] {
            for b in spec.algebra_basis() {
                assert_eq!(spec.algebra_residual(&b), 0.0);
            }
        }
    }

    #[test]
    fn coords_round_trip() {
        let spec = GroupSpec::special_linear(2).unwrap();
        let m = spec.from_algebra_coords(&[0.5, -2.0, 3.0]).unwrap();
        let c = spec.algebra_coords(&m).unwrap();
        for (a, b) in c.iter().zip([0.5, -2.0, 3.0]) {
            assert!((a - b).abs() < 1e-12);
        }
    }

    #[test]
    fn membership_rejects_outsiders() {
        let so3 = GroupSpec::special_orthogonal(3).unwrap();
        let reflection = DMatrix::from_diagonal(&DVector::from_vec(vec![1.0, 1.0, -1.0]));
        assert!(matches!(
            GroupElement::from_matrix(so3, reflection),
            Err(Error::NotInGroup { .. })
        ));
        let sl2 = GroupSpec::special_linear(2).unwrap();
        assert!(GroupElement::from_matrix(sl2.clone(), DMatrix::identity(2, 2) * 2.0).is_err());
        assert!(AlgebraElement::from_matrix(sl2, DMatrix::identity(2, 2)).is_err());
        let gl = GroupSpec::general_linear(2).unwrap();
        assert!(GroupElement::from_matrix(gl, DMatrix::zeros(2, 2)).is_err());
    }

    #[test]
    fn circle_angle_round_trip() {
        let a = GroupElement::circle(0.75);
        assert!((a.circle_angle().unwrap() - 0.75).abs() < 1e-15);
        let b = GroupElement::circle(std::f64::consts::PI);
        assert!((b.circle_angle().unwrap() - std::f64::consts::PI).abs() < 1e-15);
    }
}
