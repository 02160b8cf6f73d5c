//! Classical-quantum channel coding: Rényi mutual information and capacities,
//! the randomness-assisted strong-converse bound, coding exponent curves, and
//! achievable-decoder baselines.

use std::cell::RefCell;
use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::divergences::{
    measured_renyi, relative_entropy, sandwiched_renyi, OptimizerConfig, ProbDist, RenyiOrder,
};
use crate::error::{Error, Result};
use crate::hypotest::{CurvePoint, ExponentCurve};
use crate::opalg::{
    frac_power, kron, matrix_from_json, matrix_to_json, partial_trace, CMatrix, DensityOperator,
    HermitianOperator, MatrixJson, Povm, C64,
};
use crate::sampling;

/// Joint-dimension budget for measured-kind computations.
pub const MEASURED_DIM_BUDGET: usize = 8;

/// A classical-quantum channel: a finite map from input letters to output states.
#[derive(Debug, Clone)]
pub struct CqChannel {
    outputs: Vec<DensityOperator>,
}

impl CqChannel {
    pub fn new(outputs: Vec<DensityOperator>) -> Result<Self> {
        if outputs.is_empty() {
            return Err(Error::InvalidCodebook("channel with no letters".into()));
        }
        let d = outputs[0].dim();
        if let Some(o) = outputs.iter().find(|o| o.dim() != d) {
            return Err(Error::DimensionMismatch {
                left: d,
                right: o.dim(),
            });
        }
        Ok(Self { outputs })
    }

    /// Classical channel from rows of a stochastic matrix (diagonal outputs).
    pub fn classical(rows: &[Vec<f64>]) -> Result<Self> {
        let outputs = rows
            .iter()
            .map(|r| DensityOperator::from_probabilities(r))
            .collect::<Result<Vec<_>>>()?;
        Self::new(outputs)
    }

    pub fn input_alphabet_size(&self) -> usize {
        self.outputs.len()
    }

    pub fn output_dim(&self) -> usize {
        self.outputs[0].dim()
    }

    pub fn output(&self, x: usize) -> &DensityOperator {
        &self.outputs[x]
    }

    pub fn outputs(&self) -> &[DensityOperator] {
        &self.outputs
    }

    /// Product channel: Cartesian alphabet, Kronecker outputs.
    pub fn product(&self, other: &CqChannel) -> Result<CqChannel> {
        let mut outputs = Vec::with_capacity(self.outputs.len() * other.outputs.len());
        for a in &self.outputs {
            for b in &other.outputs {
                outputs.push(DensityOperator::new(kron(a.op(), b.op()))?);
            }
        }
        CqChannel::new(outputs)
    }

    /// Average output Σ_x p(x) ρ^x.
    pub fn average_output(&self, p: &ProbDist) -> Result<DensityOperator> {
        self.check_input(p)?;
        let mut acc = HermitianOperator::zeros(self.output_dim());
        for (x, out) in self.outputs.iter().enumerate() {
            acc = acc.add(&out.op().scale(p.weights()[x]));
        }
        DensityOperator::new(acc)
    }

    fn check_input(&self, p: &ProbDist) -> Result<()> {
        if p.len() != self.outputs.len() {
            return Err(Error::DimensionMismatch {
                left: p.len(),
                right: self.outputs.len(),
            });
        }
        Ok(())
    }
}

/// Channel file format: `{"d_B": n, "outputs": [matrix, ...]}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ChannelJson {
    #[serde(rename = "d_B")]
    pub d_b: usize,
    pub outputs: Vec<MatrixJson>,
}

pub fn channel_to_json(ch: &CqChannel) -> ChannelJson {
    ChannelJson {
        d_b: ch.output_dim(),
        outputs: ch.outputs().iter().map(|o| matrix_to_json(o.op())).collect(),
    }
}

pub fn channel_from_json(json: &ChannelJson) -> Result<CqChannel> {
    let outputs = json
        .outputs
        .iter()
        .map(|m| {
            if m.dim != json.d_b {
                return Err(Error::Malformed(format!(
                    "output dim {} does not match d_B {}",
                    m.dim, json.d_b
                )));
            }
            DensityOperator::new(matrix_from_json(m)?)
        })
        .collect::<Result<Vec<_>>>()?;
    CqChannel::new(outputs)
}

/// An assignment of input letters to messages.
#[derive(Debug, Clone)]
pub struct Codebook {
    codewords: Vec<usize>,
}

impl Codebook {
    pub fn new(codewords: Vec<usize>, alphabet_size: usize) -> Result<Self> {
        if codewords.is_empty() {
            return Err(Error::InvalidCodebook("no codewords".into()));
        }
        if let Some(&x) = codewords.iter().find(|&&x| x >= alphabet_size) {
            return Err(Error::InvalidCodebook(format!(
                "codeword letter {x} outside alphabet of size {alphabet_size}"
            )));
        }
        Ok(Self { codewords })
    }

    pub fn message_count(&self) -> usize {
        self.codewords.len()
    }

    pub fn codeword(&self, m: usize) -> usize {
        self.codewords[m]
    }

    pub fn codewords(&self) -> &[usize] {
        &self.codewords
    }
}

/// The classical-quantum joint state ρ_XB = Σ_x p(x) |x⟩⟨x| ⊗ ρ_B^x.
#[derive(Debug, Clone)]
pub struct JointState {
    pub state: DensityOperator,
    pub marginal_x: ProbDist,
    pub d_b: usize,
}

/// Builds the block-diagonal joint state of a channel and input distribution.
pub fn joint_state(ch: &CqChannel, p: &ProbDist) -> Result<JointState> {
    ch.check_input(p)?;
    let dx = ch.input_alphabet_size();
    let db = ch.output_dim();
    let mut mat = CMatrix::zeros(dx * db, dx * db);
    for x in 0..dx {
        let w = p.weights()[x];
        let block = ch.output(x).op().matrix();
        for i in 0..db {
            for j in 0..db {
                mat[(x * db + i, x * db + j)] = block[(i, j)] * C64::new(w, 0.0);
            }
        }
    }
    Ok(JointState {
        state: DensityOperator::from_matrix(mat)?,
        marginal_x: p.clone(),
        d_b: db,
    })
}

/// Which divergence family backs a mutual-information value.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MutualKind {
    /// Sandwiched divergence: exact up to optimizer tolerance.
    Sandwiched,
    /// Measured divergence: the inner value is itself a certified lower bound.
    Measured,
}

/// Sandwiched divergence D*_α(ρ_XB ‖ ρ_X ⊗ σ_B) evaluated in block form
/// (the X register is classical, so the divergence decomposes per letter).
pub fn sandwiched_mutual_objective(
    ch: &CqChannel,
    p: &ProbDist,
    order: RenyiOrder,
    sigma: &DensityOperator,
) -> f64 {
    match order {
        RenyiOrder::One => ch
            .outputs()
            .iter()
            .zip(p.weights())
            .filter(|(_, &w)| w > 0.0)
            .map(|(out, &w)| w * relative_entropy(out, sigma))
            .sum(),
        RenyiOrder::Infinity => ch
            .outputs()
            .iter()
            .zip(p.weights())
            .filter(|(_, &w)| w > 0.0)
            .map(|(out, _)| sandwiched_renyi(out, sigma, RenyiOrder::Infinity))
            .fold(0.0_f64, f64::max),
        RenyiOrder::Finite(a) => {
            let c = (1.0 - a) / (2.0 * a);
            let w_pow = match frac_power(sigma.op(), c) {
                Ok(w) => w,
                Err(_) => return f64::INFINITY,
            };
            let mut q = 0.0_f64;
            for (out, &w) in ch.outputs().iter().zip(p.weights()) {
                if w <= 0.0 {
                    continue;
                }
                if a > 1.0 && !crate::divergences::support_contained(out.op(), sigma.op()) {
                    return f64::INFINITY;
                }
                let m = out.op().conjugate_with(&w_pow);
                match frac_power(&m, a) {
                    Ok(t) => q += w * t.trace(),
                    Err(_) => return f64::INFINITY,
                }
            }
            if q <= 0.0 {
                return f64::INFINITY;
            }
            q.ln() / (a - 1.0)
        }
    }
}

fn measured_mutual_objective(
    ch: &CqChannel,
    p: &ProbDist,
    order: RenyiOrder,
    sigma: &DensityOperator,
    cfg: &OptimizerConfig,
) -> Result<f64> {
    let joint = joint_state(ch, p)?;
    if joint.state.dim() > MEASURED_DIM_BUDGET {
        return Err(Error::BudgetExceeded {
            requested: joint.state.dim(),
            limit: MEASURED_DIM_BUDGET,
        });
    }
    let px_op = HermitianOperator::from_diagonal(p.weights());
    let product = DensityOperator::new(kron(&px_op, sigma.op()))?;
    Ok(measured_renyi(&joint.state, &product, order, cfg)?.value)
}

/// Hermitian basis directions for finite-difference gradients on d×d states.
fn hermitian_basis(d: usize) -> Vec<HermitianOperator> {
    let mut basis = Vec::with_capacity(d * d);
    for i in 0..d {
        let mut m = CMatrix::zeros(d, d);
        m[(i, i)] = C64::new(1.0, 0.0);
        basis.push(HermitianOperator::from_hermitian_product(m));
    }
    let inv_sqrt2 = std::f64::consts::FRAC_1_SQRT_2;
    for i in 0..d {
        for j in (i + 1)..d {
            let mut m = CMatrix::zeros(d, d);
            m[(i, j)] = C64::new(inv_sqrt2, 0.0);
            m[(j, i)] = C64::new(inv_sqrt2, 0.0);
            basis.push(HermitianOperator::from_hermitian_product(m));
            let mut m = CMatrix::zeros(d, d);
            m[(i, j)] = C64::new(0.0, inv_sqrt2);
            m[(j, i)] = C64::new(0.0, -inv_sqrt2);
            basis.push(HermitianOperator::from_hermitian_product(m));
        }
    }
    basis
}

/// Entropic mirror-descent step σ ← exp(log σ − η G)/Tr.
fn mirror_step(sigma: &DensityOperator, grad: &HermitianOperator, eta: f64) -> DensityOperator {
    let log_sigma = sigma.op().map_eigenvalues(|l| l.max(1e-14).ln());
    let arg = log_sigma.sub(&grad.scale(eta));
    // Subtract the top eigenvalue before exponentiating for numerical range.
    let e = arg.eigen();
    let shift = e.values[e.values.len() - 1];
    let expd = HermitianOperator::from_eigen_map(&e, |l| (l - shift).exp());
    let tr = expd.trace();
    DensityOperator::new_unchecked(expd.scale(1.0 / tr))
}

/// Minimizes `objective` over the density-operator set by entropic mirror
/// descent with central-difference gradients and backtracking step halving.
fn minimize_over_states(
    objective: &dyn Fn(&DensityOperator) -> f64,
    start: DensityOperator,
    cfg: &OptimizerConfig,
) -> (f64, DensityOperator, bool) {
    let d = start.dim();
    let basis = hermitian_basis(d);
    let h = 1e-5;
    let mut sigma = start;
    let mut value = objective(&sigma);
    let mut converged = false;
    for _ in 0..cfg.max_iters {
        // Tangent-parametrized central differences along each basis direction,
        // projected back to the simplex of states by the mirror map itself.
        let mut grad = HermitianOperator::zeros(d);
        for b in basis.iter() {
            let fp = objective(&mirror_step(&sigma, b, -h));
            let fm = objective(&mirror_step(&sigma, b, h));
            if !fp.is_finite() || !fm.is_finite() {
                continue;
            }
            grad = grad.add(&b.scale((fp - fm) / (2.0 * h)));
        }
        let gnorm = grad.op_norm();
        if gnorm <= 0.0 {
            converged = true;
            break;
        }
        let mut eta = 1.0 / gnorm.max(1.0);
        let mut accepted = false;
        while eta > 1e-12 {
            let cand = mirror_step(&sigma, &grad, eta);
            let fc = objective(&cand);
            if fc < value {
                let improvement = value - fc;
                sigma = cand;
                value = fc;
                accepted = true;
                if improvement < cfg.stall_tol * value.abs().max(1.0) {
                    converged = true;
                }
                break;
            }
            eta *= 0.5;
        }
        if !accepted || converged {
            converged = true;
            break;
        }
    }
    (value, sigma, converged)
}

/// Rényi mutual information I_α = inf over σ_B of D_α(ρ_XB ‖ ρ_X ⊗ σ_B).
#[derive(Debug, Clone)]
pub struct MutualInfoResult {
    pub value: f64,
    pub sigma_star: DensityOperator,
    pub converged: bool,
}

pub fn renyi_mutual_info(
    ch: &CqChannel,
    p: &ProbDist,
    order: RenyiOrder,
    kind: MutualKind,
    cfg: &OptimizerConfig,
) -> Result<MutualInfoResult> {
    renyi_mutual_info_from(ch, p, order, kind, cfg, None)
}

/// As `renyi_mutual_info`, with an optional warm start for the minimizer.
pub fn renyi_mutual_info_from(
    ch: &CqChannel,
    p: &ProbDist,
    order: RenyiOrder,
    kind: MutualKind,
    cfg: &OptimizerConfig,
    warm_start: Option<&DensityOperator>,
) -> Result<MutualInfoResult> {
    ch.check_input(p)?;
    let db = ch.output_dim();
    // The average output is full rank for mixed outputs and is the exact
    // minimizer at α = 1; mix in a little of the identity to stay invertible.
    let avg = ch.average_output(p)?;
    let start = match warm_start {
        Some(s) => s.clone(),
        None => DensityOperator::new(
            avg.op()
                .scale(0.99)
                .add(&HermitianOperator::identity(db).scale(0.01 / db as f64)),
        )?,
    };
    let objective: Box<dyn Fn(&DensityOperator) -> f64> = match kind {
        MutualKind::Sandwiched => {
            let ch = ch.clone();
            let p = p.clone();
            Box::new(move |s: &DensityOperator| sandwiched_mutual_objective(&ch, &p, order, s))
        }
        MutualKind::Measured => {
            let ch = ch.clone();
            let p = p.clone();
            let inner = cfg.clone();
            Box::new(move |s: &DensityOperator| {
                measured_mutual_objective(&ch, &p, order, s, &inner).unwrap_or(f64::INFINITY)
            })
        }
    };
    if kind == MutualKind::Measured && ch.input_alphabet_size() * db > MEASURED_DIM_BUDGET {
        return Err(Error::BudgetExceeded {
            requested: ch.input_alphabet_size() * db,
            limit: MEASURED_DIM_BUDGET,
        });
    }
    let (value, sigma_star, converged) = minimize_over_states(objective.as_ref(), start, cfg);
    // The exact average output is the minimizer in degenerate cases (identical
    // outputs, α = 1); keep it when it beats the descent iterate.
    let avg_value = objective(&avg);
    let (value, sigma_star) = if avg_value < value {
        (avg_value, avg)
    } else {
        (value, sigma_star)
    };
    Ok(MutualInfoResult {
        value: value.max(0.0),
        sigma_star,
        converged,
    })
}

/// Rényi capacity C_α = sup over input distributions of I_α.
#[derive(Debug, Clone)]
pub struct CapacityResult {
    pub value: f64,
    pub p_star: ProbDist,
    pub converged: bool,
}

pub fn renyi_capacity(
    ch: &CqChannel,
    order: RenyiOrder,
    kind: MutualKind,
    cfg: &OptimizerConfig,
) -> Result<CapacityResult> {
    let nx = ch.input_alphabet_size();
    let mut starts: Vec<ProbDist> = vec![ProbDist::uniform(nx)];
    for x in 0..nx {
        let mut w = vec![0.1 / (nx as f64 - 1.0).max(1.0); nx];
        w[x] = 0.9;
        if nx == 1 {
            w[x] = 1.0;
        }
        starts.push(ProbDist::normalized(w)?);
    }
    let mut rng = sampling::rng(cfg.seed ^ 0xc0de);
    while starts.len() < cfg.restarts.max(1) {
        let w: Vec<f64> = (0..nx)
            .map(|_| -f64::ln(rand::Rng::gen_range(&mut rng, 1e-12_f64..1.0)))
            .collect();
        starts.push(ProbDist::normalized(w)?);
    }
    starts.truncate(cfg.restarts.max(1).max(nx + 1));
    let mut best_value = f64::NEG_INFINITY;
    let mut best_p = ProbDist::uniform(nx);
    let mut all_converged = true;
    for start in starts {
        let (v, p, conv) = maximize_over_simplex(ch, order, kind, cfg, start)?;
        all_converged &= conv;
        if v > best_value {
            best_value = v;
            best_p = p;
        }
    }
    // C_α never exceeds log |X|; an under-converged inner minimization can
    // overshoot, so clamp to the analytic ceiling.
    Ok(CapacityResult {
        value: best_value.max(0.0).min((nx as f64).ln()),
        p_star: best_p,
        converged: all_converged,
    })
}

fn maximize_over_simplex(
    ch: &CqChannel,
    order: RenyiOrder,
    kind: MutualKind,
    cfg: &OptimizerConfig,
    start: ProbDist,
) -> Result<(f64, ProbDist, bool)> {
    let nx = ch.input_alphabet_size();
    let h = 1e-4;
    let mut warm: Option<DensityOperator> = None;
    let eval = |p: &ProbDist, warm: &mut Option<DensityOperator>| -> Result<f64> {
        let r = renyi_mutual_info_from(ch, p, order, kind, cfg, warm.as_ref())?;
        *warm = Some(r.sigma_star);
        Ok(r.value)
    };
    let mut p = start;
    let mut value = eval(&p, &mut warm)?;
    let mut converged = false;
    let outer_iters = cfg.max_iters.min(60);
    for _ in 0..outer_iters {
        // Directional derivatives toward each vertex of the simplex.
        let mut dirs = vec![0.0_f64; nx];
        for x in 0..nx {
            let mut w: Vec<f64> = p.weights().iter().map(|v| v * (1.0 - h)).collect();
            w[x] += h;
            let shifted = ProbDist::normalized(w)?;
            let mut local_warm = warm.clone();
            dirs[x] = (eval(&shifted, &mut local_warm)? - value) / h;
        }
        let span = dirs.iter().cloned().fold(f64::NEG_INFINITY, f64::max)
            - dirs.iter().cloned().fold(f64::INFINITY, f64::min);
        if span <= 0.0 {
            converged = true;
            break;
        }
        // Mirror ascent: multiplicative update with backtracking.
        let mut eta = 1.0 / span.max(1.0);
        let mut accepted = false;
        while eta > 1e-10 {
            let w: Vec<f64> = p
                .weights()
                .iter()
                .zip(&dirs)
                .map(|(&pi, &g)| (pi.max(1e-12) * (eta * g).exp()).max(0.0))
                .collect();
            let cand = ProbDist::normalized(w)?;
            let mut cand_warm = warm.clone();
            let fc = eval(&cand, &mut cand_warm)?;
            if fc > value {
                let improvement = fc - value;
                p = cand;
                value = fc;
                warm = cand_warm;
                accepted = true;
                if improvement < 1e-7 {
                    converged = true;
                }
                break;
            }
            eta *= 0.5;
        }
        if !accepted || converged {
            converged = true;
            break;
        }
    }
    Ok((value, p, converged))
}

/// One-shot strong-converse bound on the success probability of
/// randomness-assisted coding: min over the α-grid of
/// `exp(−((α−1)/α)(log|M| − I_α))`, clamped to [0, 1].
pub fn coding_upper_bound(
    ch: &CqChannel,
    p: &ProbDist,
    message_count: usize,
    alphas: &[RenyiOrder],
    kind: MutualKind,
    cfg: &OptimizerConfig,
) -> Result<f64> {
    if message_count == 0 {
        return Err(Error::MessageCount {
            expected: 1,
            got: 0,
        });
    }
    let log_m = (message_count as f64).ln();
    let mut best = 1.0_f64;
    let mut warm: Option<DensityOperator> = None;
    for &order in alphas {
        let u = order.sc_prefactor();
        if u <= 0.0 {
            continue;
        }
        let r = renyi_mutual_info_from(ch, p, order, kind, cfg, warm.as_ref())?;
        warm = Some(r.sigma_star.clone());
        let bound = (-u * (log_m - r.value)).exp();
        best = best.min(bound);
    }
    Ok(best.clamp(0.0, 1.0))
}

/// Exact optimal success probability for discriminating two codeword states
/// (Holevo–Helstrom): `(1 + ‖w₁ρ₁ − w₂ρ₂‖₁)/2`.
pub fn helstrom_success(ch: &CqChannel, codebook: &Codebook, p: &ProbDist) -> Result<f64> {
    if codebook.message_count() != 2 {
        return Err(Error::MessageCount {
            expected: 2,
            got: codebook.message_count(),
        });
    }
    if p.len() != 2 {
        return Err(Error::DimensionMismatch {
            left: p.len(),
            right: 2,
        });
    }
    let r1 = ch.output(codebook.codeword(0)).op().scale(p.weights()[0]);
    let r2 = ch.output(codebook.codeword(1)).op().scale(p.weights()[1]);
    Ok(0.5 * (1.0 + r1.sub(&r2).trace_norm()))
}

/// Success probability of the pretty-good (square-root) measurement decoder.
pub fn pgm_success(ch: &CqChannel, codebook: &Codebook, p: &ProbDist) -> Result<f64> {
    let m_count = codebook.message_count();
    if p.len() != m_count {
        return Err(Error::DimensionMismatch {
            left: p.len(),
            right: m_count,
        });
    }
    let db = ch.output_dim();
    let mut avg = HermitianOperator::zeros(db);
    for m in 0..m_count {
        avg = avg.add(&ch.output(codebook.codeword(m)).op().scale(p.weights()[m]));
    }
    let root = frac_power(&avg, -0.5)?;
    let mut success = 0.0;
    for m in 0..m_count {
        let w = p.weights()[m];
        if w <= 0.0 {
            continue;
        }
        let state = ch.output(codebook.codeword(m)).op();
        let effect = state.scale(w).conjugate_with(&root);
        success += w * effect.trace_product(state);
    }
    Ok(success.clamp(0.0, 1.0))
}

/// Strong-converse exponent for randomness-assisted coding:
/// `sup_{α≥1} ((α−1)/α)(R − C*_α)` per rate, with golden-section refinement and
/// memoized capacity evaluations.
pub fn coding_exponent_curve(
    ch: &CqChannel,
    rates: &[f64],
    alphas: &[RenyiOrder],
    cfg: &OptimizerConfig,
) -> Result<ExponentCurve> {
    let cache: RefCell<HashMap<u64, f64>> = RefCell::new(HashMap::new());
    let capacity_at = |u: f64| -> f64 {
        let order = if u >= 1.0 {
            RenyiOrder::Infinity
        } else if u <= 0.0 {
            RenyiOrder::One
        } else {
            RenyiOrder::Finite(1.0 / (1.0 - u))
        };
        let key = u.to_bits();
        if let Some(&c) = cache.borrow().get(&key) {
            return c;
        }
        let c = renyi_capacity(ch, order, MutualKind::Sandwiched, cfg)
            .map(|r| r.value)
            .unwrap_or(f64::INFINITY);
        cache.borrow_mut().insert(key, c);
        c
    };
    let term = |rate: f64, u: f64| -> f64 {
        if u <= 0.0 {
            0.0
        } else {
            u * (rate - capacity_at(u))
        }
    };
    let mut us: Vec<f64> = alphas.iter().map(|a| a.sc_prefactor()).collect();
    us.sort_by(f64::total_cmp);
    us.dedup();
    let mut points = Vec::with_capacity(rates.len());
    for &rate in rates {
        let mut best = 0.0_f64;
        let mut best_u = 0.0;
        for &u in &us {
            let e = term(rate, u);
            if e > best {
                best = e;
                best_u = u;
            }
        }
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
            let mut f1 = term(rate, x1);
            let mut f2 = term(rate, x2);
            for _ in 0..10 {
                if f1 < f2 {
                    a = x1;
                    x1 = x2;
                    f1 = f2;
                    x2 = a + phi * (b - a);
                    f2 = term(rate, x2);
                } else {
                    b = x2;
                    x2 = x1;
                    f2 = f1;
                    x1 = b - phi * (b - a);
                    f1 = term(rate, x1);
                }
            }
            for (x, f) in [(x1, f1), (x2, f2)] {
                if f > best {
                    best = f;
                    best_u = x;
                }
            }
        }
        points.push(CurvePoint {
            rate,
            exponent: best.max(0.0),
            alpha_star: if best_u >= 1.0 {
                f64::INFINITY
            } else {
                1.0 / (1.0 - best_u)
            },
        });
    }
    Ok(ExponentCurve {
        points,
        support_violation: false,
    })
}

/// Numerical verification of the direct-sum reduction used in the coding
/// converse: the two trace identities and the divergence identity between the
/// extended state ω_MXB and the joint state ρ_XB.
#[derive(Debug, Clone, Serialize)]
pub struct DirectSumCheck {
    /// Tr[ω_MXB T_MXB] computed on the extended system.
    pub success_trace: f64,
    /// The same success probability computed directly from the code.
    pub success_direct: f64,
    /// Tr[ω_MX ⊗ σ_B T_MXB].
    pub uniform_trace: f64,
    /// 1/|M|.
    pub expected_uniform: f64,
    /// D*_α(ω_MXB ‖ ω_MX ⊗ σ_B).
    pub divergence_extended: f64,
    /// D*_α(ρ_XB ‖ ρ_X ⊗ σ_B).
    pub divergence_reduced: f64,
    pub identities_ok: bool,
    pub divergence_ok: bool,
}

/// Verifies the direct-sum construction for a codebook with distinct codewords,
/// a shared-randomness distribution `p` uniform over the codeword letters, and
/// a decoder POVM indexed by messages (element m acts when the realized
/// codeword of m is observed).
pub fn direct_sum_reduction_check(
    ch: &CqChannel,
    p: &ProbDist,
    codebook: &Codebook,
    decoder: &Povm,
    sigma_b: &DensityOperator,
    order: RenyiOrder,
) -> Result<DirectSumCheck> {
    ch.check_input(p)?;
    let m_count = codebook.message_count();
    if decoder.len() != m_count {
        return Err(Error::InvalidPovm(format!(
            "decoder has {} elements for {} messages",
            decoder.len(),
            m_count
        )));
    }
    if decoder.dim() != ch.output_dim() {
        return Err(Error::DimensionMismatch {
            left: decoder.dim(),
            right: ch.output_dim(),
        });
    }
    let mut seen = vec![false; ch.input_alphabet_size()];
    for &x in codebook.codewords() {
        if seen[x] {
            return Err(Error::InvalidCodebook(format!("repeated codeword {x}")));
        }
        seen[x] = true;
    }
    let dx = ch.input_alphabet_size();
    let db = ch.output_dim();
    // Decoder element attached to each letter (zero off the codebook).
    let mut per_letter: Vec<HermitianOperator> = vec![HermitianOperator::zeros(db); dx];
    for m in 0..m_count {
        per_letter[codebook.codeword(m)] = decoder.effects()[m].clone();
    }
    // omega_MXB = uniform_M ⊗ rho_XB ; T_MXB = Σ_m |m⟩⟨m| ⊗ Σ_x |x⟩⟨x| ⊗ T^x.
    let joint = joint_state(ch, p)?;
    let uniform_m =
        HermitianOperator::identity(m_count).scale(1.0 / m_count as f64);
    let omega = DensityOperator::new(kron(&uniform_m, joint.state.op()))?;
    let mut t_xb = CMatrix::zeros(dx * db, dx * db);
    for x in 0..dx {
        let block = per_letter[x].matrix();
        for i in 0..db {
            for j in 0..db {
                t_xb[(x * db + i, x * db + j)] = block[(i, j)];
            }
        }
    }
    let t_xb = HermitianOperator::new(t_xb)?;
    let t_full = kron(&HermitianOperator::identity(m_count), &t_xb);
    let success_trace = omega.op().trace_product(&t_full);
    let success_direct: f64 = (0..dx)
        .map(|x| p.weights()[x] * per_letter[x].trace_product(ch.output(x).op()))
        .sum();
    // omega_MX ⊗ sigma_B with omega_MX = uniform_M ⊗ diag(p).
    let px_op = HermitianOperator::from_diagonal(p.weights());
    let ref_xb = kron(&px_op, sigma_b.op());
    let ref_full = DensityOperator::new(kron(&uniform_m, &ref_xb))?;
    let uniform_trace = ref_full.op().trace_product(&t_full);
    let expected_uniform = 1.0 / m_count as f64;
    let divergence_extended = sandwiched_renyi(&omega, &ref_full, order);
    let divergence_reduced =
        sandwiched_renyi(&joint.state, &DensityOperator::new(ref_xb)?, order);
    let identities_ok = (success_trace - success_direct).abs() <= 1e-10
        && (uniform_trace - expected_uniform).abs() <= 1e-10;
    let divergence_ok = if divergence_extended.is_infinite() || divergence_reduced.is_infinite() {
        divergence_extended == divergence_reduced
    } else {
        (divergence_extended - divergence_reduced).abs() <= 1e-8
    };
    Ok(DirectSumCheck {
        success_trace,
        success_direct,
        uniform_trace,
        expected_uniform,
        divergence_extended,
        divergence_reduced,
        identities_ok,
        divergence_ok,
    })
}

/// Partial trace of a joint state over the X register: the average output.
pub fn joint_marginal_b(joint: &JointState) -> Result<DensityOperator> {
    let dx = joint.marginal_x.len();
    DensityOperator::new(partial_trace(
        joint.state.op(),
        &[dx, joint.d_b],
        1,
    )?)
}
