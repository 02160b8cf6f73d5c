//! Seeded randomized verification suites behind `renyi-sc verify`.
//!
//! Each suite draws deterministic inputs from the seed stream and re-checks a
//! family of inequalities at fixed tolerances; any violation is reported with
//! the seed needed to reproduce it.

use rayon::prelude::*;
use serde::Serialize;

use renyi_sc::cqcoding::{
    coding_upper_bound, helstrom_success, pgm_success, Codebook, CqChannel, MutualKind,
};
use renyi_sc::divergences::{
    holder_check, holder_equality_witness, optimal_sandwiched_test, sandwiched_renyi,
    variational_objective_sandwiched, OptimizerConfig, ProbDist, RenyiOrder,
};
use renyi_sc::hypotest::{default_alpha_grid, sc_bound};
use renyi_sc::opalg::{kms_inner, DensityOperator, HermitianOperator};
use renyi_sc::sampling;
use renyi_sc::{Error, Result};

use crate::SuiteArg;

#[derive(Serialize)]
pub struct Failure {
    pub suite: &'static str,
    pub seed: u64,
    pub check: String,
    pub lhs: f64,
    pub rhs: f64,
}

#[derive(Serialize)]
pub struct VerifyReport {
    pub suite: String,
    pub seeds: u64,
    pub base_seed: u64,
    pub checks: u64,
    pub failures: Vec<Failure>,
}

fn fail(suite: &'static str, seed: u64, check: impl Into<String>, lhs: f64, rhs: f64) -> Failure {
    Failure {
        suite,
        seed,
        check: check.into(),
        lhs,
        rhs,
    }
}

/// One seed of the Hölder suite: forward inequality at α ∈ {1.5, 2, 4},
/// reverse at α ∈ {0.3, 0.7} with a full-rank partner, and the equality
/// witness gap at α = 2.
fn holder_seed(seed: u64, failures: &mut Vec<Failure>) -> Result<u64> {
    let mut rng = sampling::rng(seed);
    let d = 3;
    let x = sampling::random_psd(&mut rng, d);
    let y = sampling::random_psd(&mut rng, d);
    let sigma = sampling::random_density(&mut rng, d);
    let mut checks = 0;
    for a in [1.5, 2.0, 4.0] {
        let c = holder_check(&x, &y, sigma.op(), RenyiOrder::new(a)?)?;
        checks += 1;
        if !c.holds {
            failures.push(fail("holder", seed, format!("forward alpha={a}"), c.lhs, c.rhs));
        }
    }
    let y_full = y.add(&HermitianOperator::identity(d).scale(0.1));
    for a in [0.3, 0.7] {
        let c = holder_check(&x, &y_full, sigma.op(), RenyiOrder::new(a)?)?;
        checks += 1;
        if !c.holds {
            failures.push(fail("holder", seed, format!("reverse alpha={a}"), c.lhs, c.rhs));
        }
    }
    // Equality witness needs a full-rank weight.
    let sigma_full = DensityOperator::new(
        sigma
            .op()
            .scale(0.95)
            .add(&HermitianOperator::identity(d).scale(0.05 / d as f64)),
    )?;
    let order = RenyiOrder::new(2.0)?;
    let w = holder_equality_witness(&x, sigma_full.op(), order)?;
    let lhs = kms_inner(&x, &w, sigma_full.op())?;
    let c = holder_check(&x, &w, sigma_full.op(), order)?;
    checks += 1;
    if c.gap > 1e-10 * c.rhs.abs().max(1.0) {
        failures.push(fail("holder", seed, "witness gap alpha=2", lhs, c.rhs));
    }
    Ok(checks)
}

/// One seed of the variational suite: the closed-form optimal test saturates
/// the sandwiched variational expression within 1e-8, and a random test never
/// exceeds the divergence.
fn variational_seed(seed: u64, failures: &mut Vec<Failure>) -> Result<u64> {
    let mut rng = sampling::rng(seed);
    let d = 2 + (seed % 2) as usize;
    let rho = sampling::random_density(&mut rng, d);
    let sigma = sampling::random_density(&mut rng, d);
    let mut checks = 0;
    for a in [1.5, 2.0, 3.0] {
        let order = RenyiOrder::new(a)?;
        let dstar = sandwiched_renyi(&rho, &sigma, order);
        let t = optimal_sandwiched_test(&rho, &sigma, order)?;
        let obj = variational_objective_sandwiched(&rho, &sigma, order, &t)?;
        checks += 1;
        if (obj - dstar).abs() > 1e-8 {
            failures.push(fail("variational", seed, format!("saturation alpha={a}"), obj, dstar));
        }
        let random_t = sampling::random_effect(&mut rng, d);
        let obj_r = variational_objective_sandwiched(&rho, &sigma, order, &random_t)?;
        checks += 1;
        if obj_r > dstar + 1e-9 {
            failures.push(fail("variational", seed, format!("upper bound alpha={a}"), obj_r, dstar));
        }
    }
    Ok(checks)
}

/// One seed of the converse suite: the one-shot strong-converse bound
/// dominates the success probability of a random test.
fn converse_seed(seed: u64, failures: &mut Vec<Failure>) -> Result<u64> {
    let mut rng = sampling::rng(seed);
    let d = 2 + (seed % 3) as usize;
    let rho = sampling::random_density(&mut rng, d);
    let sigma = sampling::random_density(&mut rng, d);
    let t = sampling::random_effect(&mut rng, d);
    let success = t.probability_on(&rho);
    if success <= 0.0 {
        return Ok(0);
    }
    let b = sc_bound(&rho, &sigma, &t, &default_alpha_grid())?;
    if success > b.bound + 1e-12 {
        failures.push(fail("converse", seed, "sc_bound", success, b.bound));
    }
    Ok(1)
}

/// One seed of the coding suite: for a random 2-letter qubit channel, the
/// meta-converse upper bound dominates the exact (Helstrom) and pretty-good
/// measurement success probabilities.
fn coding_seed(seed: u64, failures: &mut Vec<Failure>) -> Result<u64> {
    let mut rng = sampling::rng(seed);
    let ch = CqChannel::new(vec![
        sampling::random_density(&mut rng, 2),
        sampling::random_density(&mut rng, 2),
    ])?;
    let p = ProbDist::uniform(2);
    let codebook = Codebook::new(vec![0, 1], 2)?;
    let cfg = OptimizerConfig::default().with_seed(seed).with_restarts(2);
    let bound = coding_upper_bound(&ch, &p, 2, &default_alpha_grid(), MutualKind::Sandwiched, &cfg)?;
    let hel = helstrom_success(&ch, &codebook, &p)?;
    let pgm = pgm_success(&ch, &codebook, &p)?;
    let mut checks = 0;
    checks += 1;
    if hel > bound + 1e-9 {
        failures.push(fail("coding", seed, "helstrom <= upper bound", hel, bound));
    }
    checks += 1;
    if pgm > hel + 1e-9 {
        failures.push(fail("coding", seed, "pgm <= helstrom", pgm, hel));
    }
    Ok(checks)
}

fn run_one(
    name: &'static str,
    seeds: u64,
    base: u64,
    f: fn(u64, &mut Vec<Failure>) -> Result<u64>,
) -> Result<(u64, Vec<Failure>)> {
    let per_seed: Vec<Result<(u64, Vec<Failure>)>> = (0..seeds)
        .into_par_iter()
        .map(|i| {
            let mut failures = Vec::new();
            let checks = f(base.wrapping_add(i).wrapping_mul(0x9e37_79b9_7f4a_7c15) | 1, &mut failures)?;
            Ok((checks, failures))
        })
        .collect();
    let mut checks = 0;
    let mut failures = Vec::new();
    for r in per_seed {
        let (c, mut fs) = r.map_err(|e| match e {
            Error::BudgetExceeded { requested, limit } => Error::BudgetExceeded { requested, limit },
            other => Error::Malformed(format!("suite {name}: {other}")),
        })?;
        checks += c;
        failures.append(&mut fs);
    }
    Ok((checks, failures))
}

pub fn run(suite: SuiteArg, seeds: u64, base_seed: u64) -> Result<VerifyReport> {
    let selected: Vec<(&'static str, fn(u64, &mut Vec<Failure>) -> Result<u64>)> = match suite {
        SuiteArg::Holder => vec![("holder", holder_seed)],
        SuiteArg::Variational => vec![("variational", variational_seed)],
        SuiteArg::Converse => vec![("converse", converse_seed)],
        SuiteArg::Coding => vec![("coding", coding_seed)],
        SuiteArg::All => vec![
            ("holder", holder_seed),
            ("variational", variational_seed),
            ("converse", converse_seed),
            ("coding", coding_seed),
        ],
    };
    let name = match suite {
        SuiteArg::Holder => "holder",
        SuiteArg::Variational => "variational",
        SuiteArg::Converse => "converse",
        SuiteArg::Coding => "coding",
        SuiteArg::All => "all",
    };
    let mut checks = 0;
    let mut failures = Vec::new();
    for (suite_name, f) in selected {
        let (c, mut fs) = run_one(suite_name, seeds, base_seed, f)?;
        checks += c;
        failures.append(&mut fs);
    }
    failures.sort_by(|a, b| (a.suite, a.seed).cmp(&(b.suite, b.seed)));
    Ok(VerifyReport {
        suite: name.to_string(),
        seeds,
        base_seed,
        checks,
        failures,
    })
}
