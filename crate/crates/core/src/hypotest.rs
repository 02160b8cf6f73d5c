//! One-shot strong-converse bounds and exponent curves for binary quantum
//! hypothesis testing, including n-fold product studies.

use serde::Serialize;

use crate::divergences::{
    classical_renyi, measured_renyi, sandwiched_renyi, support_contained,
    OptimizerConfig, ProbDist, RenyiOrder,
};
use crate::error::{Error, Result};
use crate::opalg::{kron_power, DensityOperator, Effect, HermitianOperator};

/// Dense-matrix budget for n-fold product constructions.
pub const DIM_BUDGET: usize = 64;

/// Type-I success and type-II error of a test between ρ (null) and σ (alternative).
#[derive(Debug, Clone, Copy, Serialize)]
pub struct TestOutcome {
    /// Tr[ρT]
    pub type1_success: f64,
    /// Tr[σT]
    pub type2_error: f64,
}

/// A sampled exponent curve: (rate, exponent, maximizing α) per point.
#[derive(Debug, Clone, Serialize)]
pub struct ExponentCurve {
    pub points: Vec<CurvePoint>,
    /// Set when supp(ρ) ⊄ supp(σ); every exponent is +∞ in that case.
    pub support_violation: bool,
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct CurvePoint {
    pub rate: f64,
    pub exponent: f64,
    pub alpha_star: f64,
}

impl ExponentCurve {
    /// First sampled rate with a strictly positive exponent, if any.
    pub fn positivity_threshold(&self) -> Option<f64> {
        self.points
            .iter()
            .find(|p| p.exponent > 0.0)
            .map(|p| p.rate)
    }
}

/// Default α-grid: {1} ∪ {1 + 10^k : k = −3, −2.5, …, 2} ∪ {∞} (13 points).
pub fn default_alpha_grid() -> Vec<RenyiOrder> {
    let mut grid = vec![RenyiOrder::One];
    let mut k = -3.0_f64;
    while k <= 2.0 + 1e-9 {
        grid.push(RenyiOrder::Finite(1.0 + 10.0_f64.powf(k)));
        k += 0.5;
    }
    grid.push(RenyiOrder::Infinity);
    grid
}

/// Result of the one-shot strong-converse bound evaluation.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct ScBound {
    /// min over the α-grid of exp(−((α−1)/α)(−log Tr[σT] − D_α)).
    pub bound: f64,
    pub argmax_alpha: f64,
}

/// Divergence used on the right-hand side of the strong-converse bound:
/// sandwiched in general (a valid relaxation of the measured quantity), exact
/// classical value for commuting pairs.
fn converse_divergence(rho: &DensityOperator, sigma: &DensityOperator, order: RenyiOrder) -> f64 {
    if let Some((p, q)) = commuting_diagonals(rho, sigma) {
        classical_renyi(&p, &q, order).unwrap_or(f64::INFINITY)
    } else {
        sandwiched_renyi(rho, sigma, order)
    }
}

/// Joint eigenvalue distributions of a commuting pair, or `None` if the pair
/// does not commute (operator-norm commutator above 1e-10).
pub fn commuting_diagonals(
    rho: &DensityOperator,
    sigma: &DensityOperator,
) -> Option<(ProbDist, ProbDist)> {
    if rho.op().commutator_norm(sigma.op()) > 1e-10 {
        return None;
    }
    // A generic combination is nondegenerate whp, so its eigenbasis
    // diagonalizes both operators simultaneously.
    let combo = rho.op().add(&sigma.op().scale(0.618_033_988_749));
    let basis = combo.eigen().vectors;
    let diag = |m: &HermitianOperator| {
        (0..basis.ncols())
            .map(|j| {
                let v = basis.column(j);
                ((v.adjoint() * m.matrix() * v)[(0, 0)].re).max(0.0)
            })
            .collect::<Vec<_>>()
    };
    let p = ProbDist::normalized(diag(rho.op())).ok()?;
    let q = ProbDist::normalized(diag(sigma.op())).ok()?;
    Some((p, q))
}

/// One-shot strong-converse bound on Tr[ρT]:
/// for every α ≥ 1, `Tr[ρT] ≤ exp(−((α−1)/α)(−log Tr[σT] − D_α(ρ‖σ)))`;
/// the minimum over the grid is returned.
pub fn sc_bound(
    rho: &DensityOperator,
    sigma: &DensityOperator,
    t: &Effect,
    alphas: &[RenyiOrder],
) -> Result<ScBound> {
    let type1 = t.probability_on(rho);
    if type1 <= 0.0 {
        return Err(Error::OrthogonalTest());
    }
    let type2 = t.probability_on(sigma).max(0.0);
    let neg_log_t2 = if type2 > 0.0 {
        -type2.ln()
    } else {
        f64::INFINITY
    };
    let mut best = f64::INFINITY;
    let mut best_alpha = 1.0;
    for &order in alphas {
        let u = order.sc_prefactor();
        let bound = if u == 0.0 {
            1.0
        } else {
            let d = converse_divergence(rho, sigma, order);
            if d.is_infinite() {
                continue;
            }
            (-u * (neg_log_t2 - d)).exp()
        };
        if bound < best {
            best = bound;
            best_alpha = order.value();
        }
    }
    Ok(ScBound {
        bound: best.min(1.0),
        argmax_alpha: best_alpha,
    })
}

/// Exponent value `((α−1)/α)(r − D_α)` at a point of the supremum.
fn exponent_term(rho: &DensityOperator, sigma: &DensityOperator, rate: f64, u: f64) -> f64 {
    if u <= 0.0 {
        return 0.0;
    }
    // u = (α−1)/α  ⇔  α = 1/(1−u); u = 1 is α = ∞.
    let order = if u >= 1.0 {
        RenyiOrder::Infinity
    } else {
        RenyiOrder::Finite(1.0 / (1.0 - u))
    };
    let d = converse_divergence(rho, sigma, order);
    if d.is_infinite() {
        return f64::NEG_INFINITY;
    }
    u * (rate - d)
}

/// Strong-converse exponent `sup_{α≥1} ((α−1)/α)(r − D*_α)` per rate, with
/// golden-section refinement around the best grid point.
pub fn sc_exponent_curve(
    rho: &DensityOperator,
    sigma: &DensityOperator,
    rates: &[f64],
    alphas: &[RenyiOrder],
) -> ExponentCurve {
    if !support_contained(rho.op(), sigma.op()) {
        return ExponentCurve {
            points: rates
                .iter()
                .map(|&rate| CurvePoint {
                    rate,
                    exponent: f64::INFINITY,
                    alpha_star: f64::INFINITY,
                })
                .collect(),
            support_violation: true,
        };
    }
    let mut us: Vec<f64> = alphas.iter().map(|a| a.sc_prefactor()).collect();
    us.sort_by(f64::total_cmp);
    us.dedup();
    let points = rates
        .iter()
        .map(|&rate| {
            let mut best_u = 0.0;
            let mut best = 0.0_f64;
            for &u in &us {
                let e = exponent_term(rho, sigma, rate, u);
                if e > best {
                    best = e;
                    best_u = u;
                }
            }
            // Golden-section pass between the grid neighbours of the argmax;
            // the grid maximum is always kept.
            let idx = us.iter().position(|&u| u == best_u).unwrap_or(0);
            let lo = if idx > 0 { us[idx - 1] } else { us[0] };
            let hi = if idx + 1 < us.len() {
                us[idx + 1]
            } else {
                us[us.len() - 1]
            };
            if hi > lo {
                let phi = 0.618_033_988_749_895_f64;
                let (mut a, mut b) = (lo, hi);
                let mut x1 = b - phi * (b - a);
                let mut x2 = a + phi * (b - a);
                let mut f1 = exponent_term(rho, sigma, rate, x1);
                let mut f2 = exponent_term(rho, sigma, rate, x2);
                for _ in 0..20 {
                    if f1 < f2 {
                        a = x1;
                        x1 = x2;
                        f1 = f2;
                        x2 = a + phi * (b - a);
                        f2 = exponent_term(rho, sigma, rate, x2);
                    } else {
                        b = x2;
                        x2 = x1;
                        f2 = f1;
                        x1 = b - phi * (b - a);
                        f1 = exponent_term(rho, sigma, rate, x1);
                    }
                }
                for (x, f) in [(x1, f1), (x2, f2)] {
                    if f > best {
                        best = f;
                        best_u = x;
                    }
                }
            }
            let alpha_star = if best_u >= 1.0 {
                f64::INFINITY
            } else {
                1.0 / (1.0 - best_u)
            };
            CurvePoint {
                rate,
                exponent: best.max(0.0),
                alpha_star,
            }
        })
        .collect();
    ExponentCurve {
        points,
        support_violation: false,
    }
}

/// Quantum Neyman–Pearson test: projector onto the nonnegative eigenspace of ρ − μσ.
pub fn neyman_pearson_test(rho: &DensityOperator, sigma: &DensityOperator, mu: f64) -> Effect {
    let diff = rho.op().sub(&sigma.op().scale(mu));
    let proj = diff.map_eigenvalues(|l| if l >= -1e-12 { 1.0 } else { 0.0 });
    Effect::new(proj).expect("projector is a valid effect")
}

/// Neyman–Pearson trade-off points for n-fold product states.
pub fn nfold_tradeoff(
    rho: &DensityOperator,
    sigma: &DensityOperator,
    n: usize,
    mus: &[f64],
) -> Result<Vec<TestOutcome>> {
    let dim = rho
        .dim()
        .checked_pow(n as u32)
        .ok_or(Error::BudgetExceeded {
            requested: usize::MAX,
            limit: DIM_BUDGET,
        })?;
    if n == 0 || dim > DIM_BUDGET {
        return Err(Error::BudgetExceeded {
            requested: dim,
            limit: DIM_BUDGET,
        });
    }
    let rho_n = DensityOperator::new(kron_power(rho.op(), n))?;
    let sigma_n = DensityOperator::new(kron_power(sigma.op(), n))?;
    Ok(mus
        .iter()
        .map(|&mu| {
            let t = neyman_pearson_test(&rho_n, &sigma_n, mu);
            TestOutcome {
                type1_success: t.probability_on(&rho_n).clamp(0.0, 1.0),
                type2_error: t.probability_on(&sigma_n).clamp(0.0, 1.0),
            }
        })
        .collect())
}

/// Per-copy measured lower bounds `(1/n) D^M_α(ρ^{⊗n} ‖ σ^{⊗n})` for n = 1..n_max.
///
/// Reported as a convergence trend toward the sandwiched divergence; values are
/// certified lower bounds, not asserted monotone (the optimizer may
/// under-converge at larger n).
pub fn regularized_measured_sequence(
    rho: &DensityOperator,
    sigma: &DensityOperator,
    order: RenyiOrder,
    n_max: usize,
    cfg: &OptimizerConfig,
) -> Result<Vec<f64>> {
    if n_max == 0 || n_max > 3 {
        return Err(Error::BudgetExceeded {
            requested: n_max,
            limit: 3,
        });
    }
    let mut out = Vec::with_capacity(n_max);
    for n in 1..=n_max {
        let dim = rho.dim().pow(n as u32);
        if dim > DIM_BUDGET {
            return Err(Error::BudgetExceeded {
                requested: dim,
                limit: DIM_BUDGET,
            });
        }
        let rho_n = DensityOperator::new(kron_power(rho.op(), n))?;
        let sigma_n = DensityOperator::new(kron_power(sigma.op(), n))?;
        let m = measured_renyi(&rho_n, &sigma_n, order, cfg)?;
        out.push(m.value / n as f64);
    }
    Ok(out)
}
