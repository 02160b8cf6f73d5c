//! Classical, Petz, sandwiched, and measured Rényi divergences, the variational
//! expressions behind them, and the weighted-norm Hölder inequality with its
//! equality condition.
//!
//! All values are in nats. `+∞` is represented by `f64::INFINITY`; comparisons
//! against it are exact.

mod measured;
mod order;

pub use measured::{
    measured_alpha1_objective, measured_renyi, MeasuredResult, OptimizerConfig,
};
pub use order::{ProbDist, RenyiOrder};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::opalg::{
    abs_power, frac_power, kms_inner, nc_quotient, support_projector, weighted_norm,
    DensityOperator, Effect, HermitianOperator, MatrixJson,
};

/// True when `supp(a) ⊆ supp(b)` up to the 1e-10 support tolerance.
pub fn support_contained(a: &HermitianOperator, b: &HermitianOperator) -> bool {
    let supp = support_projector(b).expect("PSD argument");
    let comp = HermitianOperator::identity(b.dim()).sub(&supp);
    comp.trace_product(a).abs() <= 1e-10
}

/// Classical order-α Rényi divergence between two distributions of equal length.
pub fn classical_renyi(p: &ProbDist, q: &ProbDist, order: RenyiOrder) -> Result<f64> {
    if p.len() != q.len() {
        return Err(Error::DimensionMismatch {
            left: p.len(),
            right: q.len(),
        });
    }
    let p = p.weights();
    let q = q.weights();
    match order {
        RenyiOrder::One => {
            let mut kl = 0.0;
            for (&pi, &qi) in p.iter().zip(q) {
                if pi > 0.0 {
                    if qi <= 0.0 {
                        return Ok(f64::INFINITY);
                    }
                    kl += pi * (pi / qi).ln();
                }
            }
            Ok(kl.max(0.0))
        }
        RenyiOrder::Infinity => {
            let mut max_ratio = 0.0_f64;
            for (&pi, &qi) in p.iter().zip(q) {
                if pi > 0.0 {
                    if qi <= 0.0 {
                        return Ok(f64::INFINITY);
                    }
                    max_ratio = max_ratio.max(pi / qi);
                }
            }
            Ok(max_ratio.ln().max(0.0))
        }
        RenyiOrder::Finite(a) => {
            if a > 1.0 {
                let violated = p.iter().zip(q).any(|(&pi, &qi)| pi > 0.0 && qi <= 0.0);
                if violated {
                    return Ok(f64::INFINITY);
                }
            }
            let mut s = 0.0;
            for (&pi, &qi) in p.iter().zip(q) {
                if pi > 0.0 && qi > 0.0 {
                    s += pi.powf(a) * qi.powf(1.0 - a);
                }
            }
            if s <= 0.0 {
                // Orthogonal supports: divergent for every order.
                return Ok(f64::INFINITY);
            }
            Ok(s.ln() / (a - 1.0))
        }
    }
}

/// Umegaki relative entropy `Tr[ρ(log ρ − log σ)]`, `+∞` on support violation.
pub fn relative_entropy(rho: &DensityOperator, sigma: &DensityOperator) -> f64 {
    if !support_contained(rho.op(), sigma.op()) {
        return f64::INFINITY;
    }
    let er = rho.op().eigen();
    let mut value: f64 = er
        .values
        .iter()
        .filter(|&&l| l > 1e-15)
        .map(|&l| l * l.ln())
        .sum();
    // Tr[ρ log σ] in the eigenbasis of σ, restricted to its support.
    let es = sigma.op().eigen();
    let rmat = rho.op().matrix();
    for j in 0..es.values.len() {
        let s = es.values[j];
        if s > 1e-15 {
            let v = es.vectors.column(j);
            let w = (v.adjoint() * rmat * v)[(0, 0)].re;
            value -= w.max(0.0) * s.ln();
        }
    }
    value.max(0.0)
}

/// Sandwiched Rényi divergence
/// `(1/(α−1)) log Tr[(σ^{(1−α)/(2α)} ρ σ^{(1−α)/(2α)})^α]`.
///
/// α = 1 returns the Umegaki relative entropy; α = ∞ the max-relative entropy
/// `log inf{λ : ρ ≤ λσ}`.
pub fn sandwiched_renyi(rho: &DensityOperator, sigma: &DensityOperator, order: RenyiOrder) -> f64 {
    match order {
        RenyiOrder::One => relative_entropy(rho, sigma),
        RenyiOrder::Infinity => {
            if !support_contained(rho.op(), sigma.op()) {
                return f64::INFINITY;
            }
            let q = nc_quotient(rho.op(), sigma.op()).expect("matching dimensions");
            q.op.max_eigenvalue().max(f64::MIN_POSITIVE).ln().max(0.0)
        }
        RenyiOrder::Finite(a) => {
            if a > 1.0 && !support_contained(rho.op(), sigma.op()) {
                return f64::INFINITY;
            }
            let w = frac_power(sigma.op(), (1.0 - a) / (2.0 * a)).expect("density is PSD");
            let m = rho.op().conjugate_with(&w);
            // Tr[m^α] in log-sum-exp form: λ^α overflows already at moderate α,
            // so factor out the largest eigenvalue before exponentiating.
            let e = m.eigen();
            let lmax = e.values[e.values.len() - 1];
            if lmax <= 0.0 {
                return f64::INFINITY;
            }
            let sum: f64 = e
                .values
                .iter()
                .filter(|&&l| l > 0.0)
                .map(|&l| (l / lmax).powf(a))
                .sum();
            (a * lmax.ln() + sum.ln()) / (a - 1.0)
        }
    }
}

/// Petz Rényi divergence `(1/(α−1)) log Tr[ρ^α σ^{1−α}]`.
///
/// α = 1 returns the Umegaki relative entropy; α = ∞ the max-relative entropy
/// (the common limit used here; not exercised by any caller).
pub fn petz_renyi(rho: &DensityOperator, sigma: &DensityOperator, order: RenyiOrder) -> f64 {
    match order {
        RenyiOrder::One => relative_entropy(rho, sigma),
        RenyiOrder::Infinity => sandwiched_renyi(rho, sigma, RenyiOrder::Infinity),
        RenyiOrder::Finite(a) => {
            if a > 1.0 && !support_contained(rho.op(), sigma.op()) {
                return f64::INFINITY;
            }
            let ra = frac_power(rho.op(), a).expect("density is PSD");
            let sb = frac_power(sigma.op(), 1.0 - a).expect("density is PSD");
            let t = ra.trace_product(&sb);
            if t <= 0.0 {
                return f64::INFINITY;
            }
            t.ln() / (a - 1.0)
        }
    }
}

fn finite_order(order: RenyiOrder) -> Result<f64> {
    match order {
        RenyiOrder::Finite(a) => Ok(a),
        RenyiOrder::One => Err(Error::InvalidOrder(1.0)),
        RenyiOrder::Infinity => Err(Error::InvalidOrder(f64::INFINITY)),
    }
}

/// Objective of the measured variational expression:
/// `(α/(α−1)) log Tr[ρT] − log Tr[σ T^{α/(α−1)}]`.
///
/// For α ∈ (0,1) the test must be strictly positive definite.
pub fn variational_objective_measured(
    rho: &DensityOperator,
    sigma: &DensityOperator,
    order: RenyiOrder,
    t: &Effect,
) -> Result<f64> {
    let a = finite_order(order)?;
    let ap = a / (a - 1.0);
    let tr_rho = t.probability_on(rho);
    if a < 1.0 && t.op().min_eigenvalue() <= 0.0 {
        return Err(Error::SingularTest);
    }
    if tr_rho <= 0.0 {
        return if a > 1.0 {
            Ok(f64::NEG_INFINITY)
        } else {
            Err(Error::OrthogonalTest())
        };
    }
    let t_pow = frac_power(t.op(), ap)?;
    let tr_sigma = t_pow.trace_product(sigma.op()).max(0.0);
    if tr_sigma <= 0.0 {
        return Ok(f64::INFINITY);
    }
    Ok(ap * tr_rho.ln() - tr_sigma.ln())
}

/// Objective of the sandwiched variational expression:
/// `(α/(α−1)) log Tr[ρT] − log Tr[(T^{1/2} σ^{(α−1)/α} T^{1/2})^{α/(α−1)}]`.
pub fn variational_objective_sandwiched(
    rho: &DensityOperator,
    sigma: &DensityOperator,
    order: RenyiOrder,
    t: &Effect,
) -> Result<f64> {
    let a = finite_order(order)?;
    let ap = a / (a - 1.0);
    let tr_rho = t.probability_on(rho);
    if a < 1.0 && t.op().min_eigenvalue() <= 0.0 {
        return Err(Error::SingularTest);
    }
    if tr_rho <= 0.0 {
        return if a > 1.0 {
            Ok(f64::NEG_INFINITY)
        } else {
            Err(Error::OrthogonalTest())
        };
    }
    let t_sqrt = frac_power(t.op(), 0.5)?;
    let s_pow = frac_power(sigma.op(), (a - 1.0) / a)?;
    let inner = s_pow.conjugate_with(&t_sqrt);
    let tr_sigma = frac_power(&inner, ap)?.trace().max(0.0);
    if tr_sigma <= 0.0 {
        return Ok(f64::INFINITY);
    }
    Ok(ap * tr_rho.ln() - tr_sigma.ln())
}

/// Test saturating the sandwiched variational expression for α > 1:
/// `T = σ^{−1/(2α′)} |σ^{−1/(2α′)} ρ σ^{−1/(2α′)}|^{α−1} σ^{−1/(2α′)}`,
/// normalized by its largest eigenvalue (the objective is homogeneous in T).
pub fn optimal_sandwiched_test(
    rho: &DensityOperator,
    sigma: &DensityOperator,
    order: RenyiOrder,
) -> Result<Effect> {
    let a = finite_order(order)?;
    if a <= 1.0 {
        return Err(Error::InvalidOrder(a));
    }
    if !support_contained(rho.op(), sigma.op()) {
        return Err(Error::SupportViolation);
    }
    let ap = a / (a - 1.0);
    let w = frac_power(sigma.op(), -1.0 / (2.0 * ap))?;
    let core = rho.op().conjugate_with(&w);
    let powered = abs_power(&core, a - 1.0);
    let raw = powered.conjugate_with(&w);
    let top = raw.max_eigenvalue();
    if top <= 0.0 {
        return Err(Error::OrthogonalTest());
    }
    Effect::new(raw.scale(1.0 / top))
}

/// Objective of the Petz variational expression for α > 1:
/// `(α/(α−1)) log Tr[(T^{α/2} ρ^α T^{α/2})^{1/α}] − log Tr[(T^{α/2} σ^{α−1} T^{α/2})^{1/(α−1)}]`.
pub fn petz_variational_objective(
    rho: &DensityOperator,
    sigma: &DensityOperator,
    order: RenyiOrder,
    t: &Effect,
) -> Result<f64> {
    let a = finite_order(order)?;
    if a <= 1.0 {
        return Err(Error::InvalidOrder(a));
    }
    if t.probability_on(rho) <= 0.0 {
        return Err(Error::OrthogonalTest());
    }
    let t_half = frac_power(t.op(), a / 2.0)?;
    let ra = frac_power(rho.op(), a)?;
    let sb = frac_power(sigma.op(), a - 1.0)?;
    let first_inner = ra.conjugate_with(&t_half);
    let first = frac_power(&first_inner, 1.0 / a)?.trace().max(0.0);
    let second_inner = sb.conjugate_with(&t_half);
    let second = frac_power(&second_inner, 1.0 / (a - 1.0))?.trace().max(0.0);
    if first <= 0.0 {
        return Ok(f64::NEG_INFINITY);
    }
    if second <= 0.0 {
        return Ok(f64::INFINITY);
    }
    Ok((a / (a - 1.0)) * first.ln() - second.ln())
}

/// Outcome of a Hölder inequality check.
#[derive(Debug, Clone, Serialize)]
pub struct HolderCheck {
    pub lhs: f64,
    pub rhs: f64,
    pub holds: bool,
    pub gap: f64,
}

/// Checks `⟨x, y⟩_σ ≤ ‖x‖_{α,σ} ‖y‖_{α′,σ}` for α ≥ 1, and the reversed
/// inequality for α ∈ (0,1) (which requires `supp(σ) ⊆ supp(y)`).
pub fn holder_check(
    x: &HermitianOperator,
    y: &HermitianOperator,
    sigma: &HermitianOperator,
    order: RenyiOrder,
) -> Result<HolderCheck> {
    let (a, ap) = match order {
        RenyiOrder::One => (1.0, f64::INFINITY),
        RenyiOrder::Infinity => (f64::INFINITY, 1.0),
        RenyiOrder::Finite(a) => (a, a / (a - 1.0)),
    };
    if a < 1.0 && !support_contained(sigma, y) {
        return Err(Error::SupportViolation);
    }
    let lhs = kms_inner(x, y, sigma)?;
    let rhs = weighted_norm(x, sigma, a)? * weighted_norm(y, sigma, ap)?;
    let tol = 1e-12 * lhs.abs().max(rhs.abs()).max(1.0);
    let holds = if a >= 1.0 {
        lhs <= rhs + tol
    } else {
        lhs + tol >= rhs
    };
    Ok(HolderCheck {
        lhs,
        rhs,
        holds,
        gap: (lhs - rhs).abs(),
    })
}

/// For α > 1 and full-rank σ, builds the partner
/// `y = σ^{−1/(2α′)} |σ^{1/(2α)} x σ^{1/(2α)}|^{α/α′} σ^{−1/(2α′)}`
/// attaining equality in the weighted Hölder inequality.
pub fn holder_equality_witness(
    x: &HermitianOperator,
    sigma: &HermitianOperator,
    order: RenyiOrder,
) -> Result<HermitianOperator> {
    let a = finite_order(order)?;
    if a <= 1.0 {
        return Err(Error::InvalidOrder(a));
    }
    let rank: usize = {
        let e = sigma.eigen();
        let cut = 1e-12 * e.values[e.values.len() - 1].max(f64::MIN_POSITIVE);
        e.values.iter().filter(|&&l| l > cut).count()
    };
    if rank < sigma.dim() {
        return Err(Error::NotPsd(sigma.min_eigenvalue()));
    }
    let ap = a / (a - 1.0);
    let w_in = frac_power(sigma, 1.0 / (2.0 * a))?;
    let w_out = frac_power(sigma, -1.0 / (2.0 * ap))?;
    let core = x.conjugate_with(&w_in);
    let powered = abs_power(&core, a / ap);
    Ok(powered.conjugate_with(&w_out))
}

/// Which divergence family a `DivergenceResult` reports.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum DivergenceKind {
    Classical,
    Petz,
    Sandwiched,
    Measured,
}

/// A computed divergence value with optional witness, in the JSON schema used
/// by the CLI.
#[derive(Debug, Clone, Serialize)]
pub struct DivergenceResult {
    pub value: serde_json::Value,
    pub alpha: serde_json::Value,
    pub kind: DivergenceKind,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Vec<MatrixJson>>,
    pub status: &'static str,
}

impl DivergenceResult {
    pub fn new(value: f64, order: RenyiOrder, kind: DivergenceKind) -> Self {
        Self {
            value: json_extended(value),
            alpha: json_extended(order.value()),
            kind,
            witness: None,
            status: "exact",
        }
    }

    pub fn with_witness(mut self, witness: Vec<MatrixJson>) -> Self {
        self.witness = Some(witness);
        self
    }

    pub fn lower_bound(mut self) -> Self {
        self.status = "lower_bound";
        self
    }
}

fn json_extended(v: f64) -> serde_json::Value {
    if v.is_finite() {
        serde_json::json!(v)
    } else {
        serde_json::json!("inf")
    }
}
