//! Matrix exponential and principal logarithm.

use nalgebra::DMatrix;

use super::group::{AlgebraElement, GroupElement};
use crate::error::{Error, Result};
use crate::matrix::{invert, max_abs};

/// Largest 1-norm accepted by [`exp_matrix`]; beyond this `exp` overflows f64
/// for some inputs.
pub const EXP_NORM_LIMIT: f64 = 700.0;

fn one_norm(m: &DMatrix<f64>) -> f64 {
    m.column_iter()
        .map(|c| c.iter().map(|x| x.abs()).sum::<f64>())
        .fold(0.0, f64::max)
}

/// `exp(m)` for an arbitrary square matrix.
pub fn exp_matrix(m: &DMatrix<f64>) -> Result<DMatrix<f64>> {
    if !m.iter().all(|x| x.is_finite()) {
        return Err(Error::NonFinite {
            context: "exponential argument",
        });
    }
    let norm = one_norm(m);
    if norm > EXP_NORM_LIMIT {
        return Err(Error::ExpOverflow {
            norm,
            limit: EXP_NORM_LIMIT,
        });
    }
    let out = m.clone().exp();
    if out.iter().all(|x| x.is_finite()) {
        Ok(out)
    } else {
        Err(Error::ExpOverflow {
            norm,
            limit: EXP_NORM_LIMIT,
        })
    }
}

/// `exp(t B)` as a group element.
pub fn mat_exp(b: &AlgebraElement, t: f64) -> Result<GroupElement> {
    let arg = b.matrix().as_matrix() * t;
    GroupElement::from_matrix(b.spec().clone(), exp_matrix(&arg)?)
}

fn sqrt_denman_beavers(a: &DMatrix<f64>) -> Result<DMatrix<f64>> {
    let n = a.nrows();
    let mut y = a.clone();
    let mut z = DMatrix::identity(n, n);
    for _ in 0..100 {
        let y_inv = invert(&y).map_err(|_| Error::Logarithm("square root iteration hit a singular matrix".into()))?;
        let z_inv = invert(&z).map_err(|_| Error::Logarithm("square root iteration hit a singular matrix".into()))?;
        let y_next = (&y + z_inv) * 0.5;
        let z_next = (&z + y_inv) * 0.5;
        let step = max_abs(&(&y_next - &y));
        y = y_next;
        z = z_next;
        if step <= 1e-15 * max_abs(&y).max(1.0) {
            return Ok(y);
        }
    }
    Err(Error::Logarithm(
        "square root did not converge (eigenvalue on the negative real axis?)".into(),
    ))
}

/// Principal matrix logarithm by inverse scaling and squaring.
///
/// Fails when the matrix has eigenvalues on or near the closed negative real
/// axis, where no real principal logarithm exists.
pub fn log_matrix(a: &DMatrix<f64>) -> Result<DMatrix<f64>> {
    if a.nrows() != a.ncols() || a.nrows() == 0 {
        return Err(Error::NotSquare {
            rows: a.nrows(),
            cols: a.ncols(),
        });
    }
    let n = a.nrows();
    let eye = DMatrix::<f64>::identity(n, n);
    let mut m = a.clone();
    let mut squarings = 0;
    while one_norm(&(&m - &eye)) > 0.2 {
        if squarings >= 60 {
            return Err(Error::Logarithm("too many square roots".into()));
        }
        m = sqrt_denman_beavers(&m)?;
        squarings += 1;
    }
    // log(M) = 2 atanh(Z), Z = (M - I)(M + I)^-1, odd-power series.
    let z = (&m - &eye) * invert(&(&m + &eye))?;
    let z2 = &z * &z;
    let mut power = z.clone();
    let mut sum = z.clone();
    for k in 1..60 {
        power = &power * &z2;
        let term = &power / (2 * k + 1) as f64;
        sum += &term;
        if max_abs(&term) <= 1e-18 * max_abs(&sum).max(1e-300) {
            break;
        }
    }
    let out = sum * (2.0 * (1u64 << squarings) as f64);
    if out.iter().all(|x| x.is_finite()) {
        Ok(out)
    } else {
        Err(Error::NonFinite {
            context: "matrix logarithm",
        })
    }
}
