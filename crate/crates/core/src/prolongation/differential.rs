use serde::Serialize;

use super::representation::Representation;
use crate::error::{Error, Result};
use crate::lie_core::{mat_exp, AlgebraElement};
use crate::matrix::{max_abs, SquareMatrix};

/// Central-difference step for `dPhi` and the tangent-action oracle.
pub const FD_STEP: f64 = 1e-6;

/// Analytic and finite-difference `dPhi(B)` side by side.
#[derive(Clone, Debug, Serialize)]
pub struct DifferentialReport {
    pub analytic: Option<SquareMatrix>,
    pub numeric: SquareMatrix,
    /// Max-abs difference between the two, or zero when only the numeric one exists.
    pub discrepancy: f64,
}

fn central_difference(rep: &Representation, b: &AlgebraElement, h: f64) -> Result<nalgebra::DMatrix<f64>> {
    let plus = rep.apply(&mat_exp(b, h)?)?;
    let minus = rep.apply(&mat_exp(b, -h)?)?;
    let d = (plus.as_matrix() - minus.as_matrix()) / (2.0 * h);
    if d.iter().all(|x| x.is_finite()) {
        Ok(d)
    } else {
        Err(Error::StepSize { step: h })
    }
}

/// `dPhi(B)` by Richardson-extrapolated central differences of
/// `t -> Phi(exp(t B))` at `t = 0`.
pub fn numeric_differential(rep: &Representation, b: &AlgebraElement) -> Result<SquareMatrix> {
    if b.spec() != rep.group() {
        return Err(Error::GroupMismatch {
            left: rep.group().clone(),
            right: b.spec().clone(),
        });
    }
    let coarse = central_difference(rep, b, FD_STEP)?;
    let fine = central_difference(rep, b, FD_STEP / 2.0)?;
    SquareMatrix::new((fine * 4.0 - coarse) / 3.0).map_err(|_| Error::StepSize { step: FD_STEP })
}

/// `dPhi(B)`: the analytic differential when the representation carries one,
/// otherwise the finite-difference estimate.
pub fn differential_rep(rep: &Representation, b: &AlgebraElement) -> Result<SquareMatrix> {
    match rep.analytic_differential(b) {
        Some(k) => k,
        None => numeric_differential(rep, b),
    }
}

pub fn differential_report(rep: &Representation, b: &AlgebraElement) -> Result<DifferentialReport> {
    let numeric = numeric_differential(rep, b)?;
    let analytic = rep.analytic_differential(b).transpose()?;
    let discrepancy = analytic
        .as_ref()
        .map_or(0.0, |a| max_abs(&(a.as_matrix() - numeric.as_matrix())));
    Ok(DifferentialReport {
        analytic,
        numeric,
        discrepancy,
    })
}
