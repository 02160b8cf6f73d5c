use super::operator::{HermitianOperator, SPECTRAL_CUTOFF};
use crate::error::{Error, Result};

/// Spectral cutoff below which an eigenvalue of `a` counts as zero.
fn cutoff_for(max_eig: f64) -> f64 {
    SPECTRAL_CUTOFF * max_eig.max(0.0).max(f64::MIN_POSITIVE)
}

/// Fractional power `a^t` of a PSD operator via its eigendecomposition.
///
/// Negative powers follow the pseudo-inverse convention: eigenvalues at or
/// below the spectral cutoff map to zero.
pub fn frac_power(a: &HermitianOperator, t: f64) -> Result<HermitianOperator> {
    let e = a.eigen();
    let min = e.values[0];
    if min < -1e-8 {
        return Err(Error::NotPsd(min));
    }
    let cut = cutoff_for(e.values[e.values.len() - 1]);
    Ok(HermitianOperator::from_eigen_map(&e, |l| {
        if l > cut {
            l.powf(t)
        } else {
            0.0
        }
    }))
}

/// `|a|^t` for a Hermitian `a` (absolute value of the spectrum, then the power).
pub fn abs_power(a: &HermitianOperator, t: f64) -> HermitianOperator {
    let e = a.eigen();
    let cut = cutoff_for(e.values[0].abs().max(e.values[e.values.len() - 1].abs()));
    HermitianOperator::from_eigen_map(&e, |l| {
        if l.abs() > cut {
            l.abs().powf(t)
        } else {
            0.0
        }
    })
}

/// Projector onto the support (eigenvalues above the spectral cutoff) of a PSD operator.
pub fn support_projector(a: &HermitianOperator) -> Result<HermitianOperator> {
    let e = a.eigen();
    let min = e.values[0];
    if min < -1e-8 {
        return Err(Error::NotPsd(min));
    }
    let cut = cutoff_for(e.values[e.values.len() - 1]);
    Ok(HermitianOperator::from_eigen_map(&e, |l| {
        if l > cut {
            1.0
        } else {
            0.0
        }
    }))
}

/// Result of the noncommutative quotient `y^{-1/2} x y^{-1/2}`.
#[derive(Debug, Clone)]
pub struct QuotientResult {
    pub op: HermitianOperator,
    /// True when `supp(x) ⊆ supp(y)`, i.e. the quotient represents `x` faithfully.
    pub support_ok: bool,
}

/// Noncommutative quotient `x / y := y^{-1/2} x y^{-1/2}` (pseudo-inverse convention).
///
/// Flags a support violation when `x` has weight outside the support of `y`.
pub fn nc_quotient(x: &HermitianOperator, y: &HermitianOperator) -> Result<QuotientResult> {
    if x.dim() != y.dim() {
        return Err(Error::DimensionMismatch {
            left: x.dim(),
            right: y.dim(),
        });
    }
    let inv_sqrt = frac_power(y, -0.5)?;
    let op = x.conjugate_with(&inv_sqrt);
    let supp = support_projector(y)?;
    let comp = HermitianOperator::identity(y.dim()).sub(&supp);
    let outside = x.conjugate_with(&comp);
    let support_ok = outside.op_norm() <= 1e-10;
    Ok(QuotientResult { op, support_ok })
}

/// Weighted p-norm `(Tr |σ^{1/(2p)} x σ^{1/(2p)}|^p)^{1/p}`; `p = +∞` gives the
/// operator norm of `x`. Not a norm for p < 1, but the same expression is used.
pub fn weighted_norm(x: &HermitianOperator, sigma: &HermitianOperator, p: f64) -> Result<f64> {
    if x.dim() != sigma.dim() {
        return Err(Error::DimensionMismatch {
            left: x.dim(),
            right: sigma.dim(),
        });
    }
    if p == 0.0 {
        return Err(Error::InvalidOrder(0.0));
    }
    if p.is_infinite() {
        return Ok(x.op_norm());
    }
    let w = frac_power(sigma, 1.0 / (2.0 * p))?;
    let m = x.conjugate_with(&w);
    if p < 0.0 {
        // Negative index: a kernel of m inside the support of sigma makes the
        // trace diverge; the limiting value of the expression is 0.
        let rank_sigma = count_above_cutoff(sigma);
        let rank_m = count_above_cutoff_abs(&m);
        if rank_m < rank_sigma {
            return Ok(0.0);
        }
    }
    let t = abs_power(&m, p).trace();
    if t <= 0.0 {
        return Ok(0.0);
    }
    Ok(t.powf(1.0 / p))
}

fn count_above_cutoff(a: &HermitianOperator) -> usize {
    let e = a.eigen();
    let cut = cutoff_for(e.values[e.values.len() - 1]);
    e.values.iter().filter(|&&l| l > cut).count()
}

fn count_above_cutoff_abs(a: &HermitianOperator) -> usize {
    let e = a.eigen();
    let cut = cutoff_for(a.op_norm());
    e.values.iter().filter(|&&l| l.abs() > cut).count()
}

/// KMS weighted inner product `⟨x, y⟩_σ = Tr[x† σ^{1/2} y σ^{1/2}]` (real for
/// Hermitian arguments and PSD σ).
pub fn kms_inner(
    x: &HermitianOperator,
    y: &HermitianOperator,
    sigma: &HermitianOperator,
) -> Result<f64> {
    if x.dim() != y.dim() || x.dim() != sigma.dim() {
        return Err(Error::DimensionMismatch {
            left: x.dim(),
            right: y.dim().max(sigma.dim()),
        });
    }
    let s = frac_power(sigma, 0.5)?;
    let weighted = y.conjugate_with(&s);
    Ok(x.trace_product(&weighted))
}
