use super::report::{CheckReport, Sample, Witness};
use crate::error::Result;
use crate::lie_core::{AlgebraElement, GroupElement, Sampler, TangentGroupElement};
use crate::matrix::max_abs;
use crate::prolongation::{prolong, Representation};

/// Two prolonged images closer than `COLLISION_TOL * max(1, scale)` in
/// max-abs are treated as equal.
pub const COLLISION_TOL: f64 = 1e-12;

fn separation(rep: &Representation, x: &TangentGroupElement, y: &TangentGroupElement) -> Result<f64> {
    let px = prolong(rep, x)?.dense();
    let py = prolong(rep, y)?.dense();
    let scale = max_abs(&px).max(max_abs(&py)).max(1.0);
    Ok(max_abs(&(px - py)) / scale)
}

/// Probes injectivity of the prolongation rather than assuming it.
///
/// Draws `samples` pairs of distinct tangent group elements and compares their
/// prolonged images; when `kernel_witness` is given, also compares the images
/// of `[k, 0]` and `[e, 0]`. Any collision fails the check. The reported
/// residual is the smallest relative separation observed.
pub fn faithfulness_probe(
    rep: &Representation,
    samples: usize,
    seed: u64,
    kernel_witness: Option<&GroupElement>,
) -> Result<CheckReport> {
    const NAME: &str = "faithfulness";
    let spec = rep.group();
    if let Some(k) = kernel_witness {
        let zero = AlgebraElement::zero(spec.clone());
        let at_kernel = TangentGroupElement::new(k.clone(), zero)?;
        let sep = separation(rep, &at_kernel, &TangentGroupElement::identity(spec.clone()))?;
        if sep <= COLLISION_TOL {
            return Ok(CheckReport::fail(
                NAME,
                sep,
                Witness::KernelCollision {
                    element: k.clone(),
                    separation: sep,
                },
            )
            .with_note("prolongation is not injective: a nonidentity kernel element maps to the identity"));
        }
    }
    let sampler = Sampler::new(seed);
    let mut smallest = f64::INFINITY;
    for i in 0..samples as u64 {
        let x = sampler.tangent(spec, 2 * i);
        let y = sampler.tangent(spec, 2 * i + 1);
        if x == y {
            continue;
        }
        let sep = separation(rep, &x, &y)?;
        if sep <= COLLISION_TOL {
            return Ok(CheckReport::fail(
                NAME,
                sep,
                Witness::SamplePair {
                    seed,
                    index: i,
                    first: Sample::Tangent(x),
                    second: Sample::Tangent(y),
                },
            )
            .with_note("prolongation is not injective: distinct tangent elements share an image"));
        }
        smallest = smallest.min(sep);
    }
    Ok(CheckReport::pass(NAME, smallest).with_note("max_residual holds the smallest relative separation between distinct draws"))
}
