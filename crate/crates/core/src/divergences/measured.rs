//! Lower-bound evaluation of the measured Rényi divergence by maximizing the
//! classical divergence of measurement outcomes over rank-1 PVMs.
//!
//! Bases are parametrized as `U₀·exp(G)` with `G` skew-Hermitian; the ascent
//! runs on the real entries of `G` with central-difference gradients. Rank-1
//! refinement never decreases a classical Rényi divergence, so orthonormal
//! bases are a sufficient search space for the lower bound.

use nalgebra::DVector;
use rayon::prelude::*;

use super::order::{ProbDist, RenyiOrder};
use super::{classical_renyi, sandwiched_renyi};
use crate::error::{Error, Result};
use crate::opalg::{CMatrix, DensityOperator, Effect, HermitianOperator, Pvm, C64};
use crate::sampling;

/// Knobs for the PVM search (and the other iterative optimizers downstream).
#[derive(Debug, Clone)]
pub struct OptimizerConfig {
    pub restarts: usize,
    pub grad_step: f64,
    /// Stop when the best value improves by less than this...
    pub stall_tol: f64,
    /// ...over this many consecutive iterations.
    pub stall_iters: usize,
    pub max_iters: usize,
    pub seed: u64,
}

impl Default for OptimizerConfig {
    fn default() -> Self {
        Self {
            restarts: 16,
            grad_step: 1e-5,
            stall_tol: 1e-9,
            stall_iters: 50,
            max_iters: 400,
            seed: 0,
        }
    }
}

impl OptimizerConfig {
    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn with_restarts(mut self, restarts: usize) -> Self {
        self.restarts = restarts;
        self
    }
}

/// A certified lower bound on the measured Rényi divergence, bracketed by the
/// sandwiched divergence from above.
#[derive(Debug, Clone)]
pub struct MeasuredResult {
    /// Best classical divergence found over the PVM search (a lower bound on D^M).
    pub value: f64,
    /// Sandwiched divergence: an upper bound on D^M for α ≥ 1/2.
    pub upper_bound: f64,
    /// The maximizing PVM.
    pub witness: Pvm,
    /// False when the best restart hit the iteration cap while still improving.
    pub converged: bool,
}

/// Unitary `exp(G)` for the skew-Hermitian `G` encoded by `params`
/// (re/im of the strictly upper triangle).
fn exp_skew(dim: usize, params: &[f64]) -> CMatrix {
    debug_assert_eq!(params.len(), dim * (dim - 1));
    let mut h = CMatrix::zeros(dim, dim);
    let mut k = 0;
    for i in 0..dim {
        for j in (i + 1)..dim {
            let g = C64::new(params[k], params[k + 1]);
            k += 2;
            // H = -iG is Hermitian when G is skew-Hermitian.
            h[(i, j)] = g * C64::new(0.0, -1.0);
            h[(j, i)] = h[(i, j)].conj();
        }
    }
    let herm = HermitianOperator::from_hermitian_product(h);
    let e = herm.eigen();
    let phases = DVector::from_fn(dim, |i, _| C64::new(0.0, e.values[i]).exp());
    &e.vectors * CMatrix::from_diagonal(&phases) * e.vectors.adjoint()
}

fn basis_objective(
    rho: &HermitianOperator,
    sigma: &HermitianOperator,
    order: RenyiOrder,
    basis: &CMatrix,
) -> f64 {
    let d = basis.nrows();
    let mut p = Vec::with_capacity(d);
    let mut q = Vec::with_capacity(d);
    for j in 0..d {
        let v = basis.column(j);
        p.push(((v.adjoint() * rho.matrix() * v)[(0, 0)].re).max(0.0));
        q.push(((v.adjoint() * sigma.matrix() * v)[(0, 0)].re).max(0.0));
    }
    let p = match ProbDist::normalized(p) {
        Ok(p) => p,
        Err(_) => return 0.0,
    };
    let q = match ProbDist::normalized(q) {
        Ok(q) => q,
        Err(_) => return f64::INFINITY,
    };
    classical_renyi(&p, &q, order).unwrap_or(0.0)
}

struct Ascent {
    value: f64,
    basis: CMatrix,
    converged: bool,
}

fn ascend(
    rho: &HermitianOperator,
    sigma: &HermitianOperator,
    order: RenyiOrder,
    start: &CMatrix,
    cfg: &OptimizerConfig,
) -> Ascent {
    let dim = start.nrows();
    let nparams = dim * (dim - 1);
    let mut params = vec![0.0_f64; nparams];
    let eval = |params: &[f64]| -> (f64, CMatrix) {
        let basis = start * exp_skew(dim, params);
        (basis_objective(rho, sigma, order, &basis), basis)
    };
    let (mut best, mut best_basis) = eval(&params);
    if best.is_infinite() {
        return Ascent {
            value: best,
            basis: best_basis,
            converged: true,
        };
    }
    let mut stall = 0_usize;
    let mut step = 1.0_f64;
    let mut converged = false;
    for _ in 0..cfg.max_iters {
        let h = cfg.grad_step;
        let mut grad = vec![0.0_f64; nparams];
        for k in 0..nparams {
            let mut plus = params.clone();
            plus[k] += h;
            let mut minus = params.clone();
            minus[k] -= h;
            let (fp, _) = eval(&plus);
            let (fm, _) = eval(&minus);
            if fp.is_infinite() || fm.is_infinite() {
                return Ascent {
                    value: f64::INFINITY,
                    basis: best_basis,
                    converged: true,
                };
            }
            grad[k] = (fp - fm) / (2.0 * h);
        }
        let gnorm: f64 = grad.iter().map(|g| g * g).sum::<f64>().sqrt();
        let mut improved = false;
        if gnorm > 0.0 {
            let mut eta = step;
            while eta > 1e-12 {
                let cand: Vec<f64> = params
                    .iter()
                    .zip(&grad)
                    .map(|(p, g)| p + eta * g / gnorm)
                    .collect();
                let (fc, basis) = eval(&cand);
                if fc.is_infinite() {
                    return Ascent {
                        value: f64::INFINITY,
                        basis,
                        converged: true,
                    };
                }
                if fc > best {
                    improved = fc - best > cfg.stall_tol;
                    best = fc;
                    best_basis = basis;
                    params = cand;
                    step = (eta * 1.5).min(1.0);
                    break;
                }
                eta *= 0.5;
            }
            if eta <= 1e-12 {
                step = cfg.grad_step.max(step * 0.5);
            }
        }
        if improved {
            stall = 0;
        } else {
            stall += 1;
            if stall >= cfg.stall_iters {
                converged = true;
                break;
            }
        }
    }
    Ascent {
        value: best,
        basis: best_basis,
        converged,
    }
}

fn start_bases(
    rho: &HermitianOperator,
    sigma: &HermitianOperator,
    cfg: &OptimizerConfig,
) -> Vec<CMatrix> {
    let dim = rho.dim();
    let mut starts = Vec::with_capacity(cfg.restarts.max(3));
    starts.push(rho.eigen().vectors);
    starts.push(sigma.eigen().vectors);
    // A generic combination diagonalizes both at once whenever they commute.
    starts.push(rho.add(&sigma.scale(0.618_033_988_749)).eigen().vectors);
    let mut k = 0_u64;
    while starts.len() < cfg.restarts.max(3) {
        let mut rng = sampling::rng(cfg.seed.wrapping_add(0x9e37_79b9).wrapping_add(k));
        starts.push(sampling::random_unitary(&mut rng, dim));
        k += 1;
    }
    starts
}

/// Maximizes the classical Rényi divergence of outcome distributions over
/// rank-1 PVMs, returning a certified lower bound on the measured divergence
/// together with the sandwiched upper bracket.
pub fn measured_renyi(
    rho: &DensityOperator,
    sigma: &DensityOperator,
    order: RenyiOrder,
    cfg: &OptimizerConfig,
) -> Result<MeasuredResult> {
    if rho.dim() != sigma.dim() {
        return Err(Error::DimensionMismatch {
            left: rho.dim(),
            right: sigma.dim(),
        });
    }
    let upper = sandwiched_renyi(rho, sigma, order);
    let starts = start_bases(rho.op(), sigma.op(), cfg);
    let results: Vec<Ascent> = starts
        .par_iter()
        .map(|s| ascend(rho.op(), sigma.op(), order, s, cfg))
        .collect();
    let best = results
        .into_iter()
        .enumerate()
        .max_by(|(i, a), (j, b)| a.value.total_cmp(&b.value).then(j.cmp(i)))
        .map(|(_, a)| a)
        .expect("at least one restart");
    let witness = Pvm::from_basis(&best.basis)?;
    Ok(MeasuredResult {
        value: best.value.max(0.0),
        upper_bound: upper,
        witness,
        converged: best.converged,
    })
}

/// The α = 1 measured variational objective `Tr[ρ log T] − log Tr[σT]`
/// for strictly positive definite T; always ≤ D(ρ‖σ).
pub fn measured_alpha1_objective(
    rho: &DensityOperator,
    sigma: &DensityOperator,
    t: &Effect,
) -> Result<f64> {
    if t.op().min_eigenvalue() <= 0.0 {
        return Err(Error::SingularTest);
    }
    let log_t = t.op().map_eigenvalues(|l| l.ln());
    Ok(log_t.trace_product(rho.op()) - t.probability_on(sigma).ln())
}
