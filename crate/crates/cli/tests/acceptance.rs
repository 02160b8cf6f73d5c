//! Acceptance gate: each test is one numbered criterion and ends with a single
//! PASS line (a failed assertion is the FAIL line). Criteria with a runtime
//! budget assert on wall-clock time as well.

use std::time::Instant;

use renyi_sc::cqcoding::{
    coding_exponent_curve, coding_upper_bound, helstrom_success, pgm_success,
    renyi_capacity, renyi_mutual_info, sandwiched_mutual_objective, Codebook, CqChannel,
    MutualKind,
};
use renyi_sc::divergences::{
    classical_renyi, holder_check, holder_equality_witness, measured_renyi,
    optimal_sandwiched_test, relative_entropy, sandwiched_renyi,
    variational_objective_sandwiched, OptimizerConfig, ProbDist, RenyiOrder,
};
use renyi_sc::hypotest::{default_alpha_grid, sc_bound, sc_exponent_curve};
use renyi_sc::opalg::{kron, DensityOperator, Effect, HermitianOperator, C64};
use renyi_sc::sampling;

fn order(a: f64) -> RenyiOrder {
    RenyiOrder::new(a).unwrap()
}

fn diag_state(p: &[f64]) -> DensityOperator {
    DensityOperator::from_probabilities(p).unwrap()
}

fn pass(n: usize, what: &str, t: Instant) {
    println!("criterion {n} ({what}): PASS in {:.2}s", t.elapsed().as_secs_f64());
}

/// Criterion 1 — variational saturation: the closed-form optimal test attains
/// the sandwiched divergence, and local perturbations never improve it.
#[test]
fn criterion_01_variational_saturation() {
    let t0 = Instant::now();
    let mut rng = sampling::rng(101);
    for d in [2usize, 3] {
        for _ in 0..50 {
            let rho = sampling::random_density(&mut rng, d);
            let sigma = sampling::random_density(&mut rng, d);
            for a in [1.5, 2.0, 3.0] {
                let ord = order(a);
                let dstar = sandwiched_renyi(&rho, &sigma, ord);
                let t = optimal_sandwiched_test(&rho, &sigma, ord).unwrap();
                let obj = variational_objective_sandwiched(&rho, &sigma, ord, &t).unwrap();
                assert!(
                    (obj - dstar).abs() <= 1e-8,
                    "saturation d={d} alpha={a}: {obj} vs {dstar}"
                );
                for _ in 0..20 {
                    let dir = sampling::random_psd(&mut rng, d)
                        .sub(&sampling::random_psd(&mut rng, d));
                    let scale = 1e-4 / dir.op_norm().max(1e-30);
                    let perturbed = t.op().add(&dir.scale(scale));
                    let clamped = perturbed.map_eigenvalues(|l| l.clamp(0.0, 1.0));
                    let t2 = Effect::new(clamped).unwrap();
                    let obj2 = variational_objective_sandwiched(&rho, &sigma, ord, &t2)
                        .unwrap_or(f64::NEG_INFINITY);
                    assert!(
                        obj2 <= obj + 1e-7,
                        "perturbation improved objective: {obj2} > {obj}"
                    );
                }
            }
        }
    }
    assert!(t0.elapsed().as_secs_f64() < 30.0, "criterion 1 over budget");
    pass(1, "variational saturation", t0);
}

/// Criterion 2 — weighted Hölder inequality, its reverse, and the equality
/// witness gap.
#[test]
fn criterion_02_holder_suite() {
    let t0 = Instant::now();
    let mut rng = sampling::rng(202);
    for a in [1.5, 2.0, 4.0] {
        for _ in 0..1000 {
            let x = sampling::random_psd(&mut rng, 3);
            let y = sampling::random_psd(&mut rng, 3);
            let sigma = sampling::random_density(&mut rng, 3);
            let c = holder_check(&x, &y, sigma.op(), order(a)).unwrap();
            assert!(c.holds, "forward alpha={a}: {} > {}", c.lhs, c.rhs);
        }
    }
    let bump = HermitianOperator::identity(3).scale(0.1);
    for a in [0.3, 0.7] {
        for _ in 0..1000 {
            let x = sampling::random_psd(&mut rng, 3);
            let y = sampling::random_psd(&mut rng, 3).add(&bump);
            let sigma = sampling::random_density(&mut rng, 3);
            let c = holder_check(&x, &y, sigma.op(), order(a)).unwrap();
            assert!(c.holds, "reverse alpha={a}: {} < {}", c.lhs, c.rhs);
        }
    }
    for _ in 0..200 {
        let x = sampling::random_psd(&mut rng, 3);
        let sigma = DensityOperator::new(
            sampling::random_density(&mut rng, 3)
                .op()
                .scale(0.95)
                .add(&HermitianOperator::identity(3).scale(0.05 / 3.0)),
        )
        .unwrap();
        let w = holder_equality_witness(&x, sigma.op(), order(2.0)).unwrap();
        let c = holder_check(&x, &w, sigma.op(), order(2.0)).unwrap();
        assert!(
            c.gap <= 1e-10 * c.rhs.abs().max(1.0),
            "witness gap {} (rhs {})",
            c.gap,
            c.rhs
        );
    }
    assert!(t0.elapsed().as_secs_f64() < 20.0, "criterion 2 over budget");
    pass(2, "Hölder suite", t0);
}

/// Criterion 3 — one-shot strong-converse bound dominates Tr[ρT].
#[test]
fn criterion_03_one_shot_strong_converse() {
    let t0 = Instant::now();
    let grid = default_alpha_grid();
    let mut rng = sampling::rng(303);
    for d in [2usize, 3, 4] {
        for _ in 0..1000 {
            let rho = sampling::random_density(&mut rng, d);
            let sigma = sampling::random_density(&mut rng, d);
            let t = sampling::random_effect(&mut rng, d);
            let success = t.probability_on(&rho);
            if success <= 0.0 {
                continue;
            }
            let b = sc_bound(&rho, &sigma, &t, &grid).unwrap();
            assert!(
                success <= b.bound + 1e-12,
                "d={d}: success {success} > bound {}",
                b.bound
            );
        }
    }
    assert!(t0.elapsed().as_secs_f64() < 30.0, "criterion 3 over budget");
    pass(3, "one-shot strong converse", t0);
}

/// Criterion 4 — measured ≤ sandwiched with a strict gap on noncommuting
/// fixtures and equality on commuting ones.
#[test]
fn criterion_04_ordering_and_strictness() {
    let t0 = Instant::now();
    let a = order(2.0);
    let cfg = OptimizerConfig::default();
    for k in 0..20 {
        // Bloch vectors tilted away from the z-axis so [ρ, σ] ≠ 0.
        let theta = std::f64::consts::PI * (1.0 + 4.0 * k as f64 / 19.0) / 6.0;
        let rho = sampling::bloch_state(0.9 * theta.sin(), 0.0, 0.9 * theta.cos());
        let sigma = diag_state(&[0.7, 0.3]);
        let m = measured_renyi(&rho, &sigma, a, &cfg).unwrap();
        let dstar = sandwiched_renyi(&rho, &sigma, a);
        assert!(m.value <= dstar + 1e-9, "measured {} > sandwiched {dstar}", m.value);
        assert!(
            dstar - m.value >= 1e-5,
            "fixture {k}: gap {} too small",
            dstar - m.value
        );
    }
    for (p0, q0) in [(0.6, 0.3), (0.8, 0.5), (0.35, 0.9), (0.5, 0.1)] {
        let rho = diag_state(&[p0, 1.0 - p0]);
        let sigma = diag_state(&[q0, 1.0 - q0]);
        let m = measured_renyi(&rho, &sigma, a, &cfg).unwrap();
        let dstar = sandwiched_renyi(&rho, &sigma, a);
        assert!(
            (m.value - dstar).abs() <= 1e-8,
            "commuting: measured {} vs sandwiched {dstar}",
            m.value
        );
    }
    pass(4, "ordering and strictness", t0);
}

/// Criterion 5 — the hypothesis-testing exponent vanishes just below
/// D(ρ‖σ) and is strictly positive just above it.
#[test]
fn criterion_05_exponent_threshold() {
    let t0 = Instant::now();
    let grid = default_alpha_grid();
    let mut rng = sampling::rng(505);
    for _ in 0..20 {
        let rho = sampling::random_qubit(&mut rng, 0.9);
        let sigma = sampling::random_qubit(&mut rng, 0.9);
        let d1 = relative_entropy(&rho, &sigma);
        let curve = sc_exponent_curve(&rho, &sigma, &[d1 - 1e-3, d1 + 1e-2], &grid);
        assert!(
            curve.points[0].exponent <= 1e-12,
            "below threshold: exponent {}",
            curve.points[0].exponent
        );
        assert!(
            curve.points[1].exponent >= 1e-6,
            "above threshold: exponent {}",
            curve.points[1].exponent
        );
    }
    pass(5, "exponent threshold", t0);
}

/// Criterion 6 — tensor additivity of the sandwiched divergence, the n = 2
/// measured gain on the designated fixture, and 2-fold capacity additivity.
#[test]
fn criterion_06_additivity_and_regularization() {
    let t0 = Instant::now();
    let mut rng = sampling::rng(606);
    let orders = [0.6, 1.5, 2.0, 4.0];
    for k in 0..100 {
        let a = order(orders[k % orders.len()]);
        let r1 = sampling::random_density(&mut rng, 2);
        let s1 = sampling::random_density(&mut rng, 2);
        let r2 = sampling::random_density(&mut rng, 2);
        let s2 = sampling::random_density(&mut rng, 2);
        let joint = sandwiched_renyi(
            &DensityOperator::new(kron(r1.op(), r2.op())).unwrap(),
            &DensityOperator::new(kron(s1.op(), s2.op())).unwrap(),
            a,
        );
        let sum = sandwiched_renyi(&r1, &s1, a) + sandwiched_renyi(&r2, &s2, a);
        assert!((joint - sum).abs() <= 1e-8, "additivity: {joint} vs {sum}");
    }

    // Designated noncommuting fixture: two copies beat one per copy.
    let rho = sampling::bloch_state(0.9, 0.0, 0.0);
    let sigma = diag_state(&[0.7, 0.3]);
    let a = order(2.0);
    let cfg = OptimizerConfig::default().with_restarts(24);
    let m1 = measured_renyi(&rho, &sigma, a, &cfg).unwrap().value;
    let rho2 = DensityOperator::new(kron(rho.op(), rho.op())).unwrap();
    let sigma2 = DensityOperator::new(kron(sigma.op(), sigma.op())).unwrap();
    let m2 = measured_renyi(&rho2, &sigma2, a, &cfg).unwrap().value / 2.0;
    let dstar = sandwiched_renyi(&rho, &sigma, a);
    assert!(m2 - m1 >= 1e-4, "per-copy gain {} too small", m2 - m1);
    assert!(m1 <= dstar + 1e-6 && m2 <= dstar + 1e-6);

    // Capacity additivity for a product of a channel with itself.
    let mut rng = sampling::rng(6);
    let ch = CqChannel::new(vec![
        sampling::random_density(&mut rng, 2),
        sampling::random_density(&mut rng, 2),
    ])
    .unwrap();
    let ch2 = ch.product(&ch).unwrap();
    let tight = OptimizerConfig {
        restarts: 2,
        max_iters: 200,
        ..OptimizerConfig::default()
    };
    let c1 = renyi_capacity(&ch, a, MutualKind::Sandwiched, &tight).unwrap();
    let c2 = renyi_capacity(&ch2, a, MutualKind::Sandwiched, &tight).unwrap();
    assert!(
        (c2.value - 2.0 * c1.value).abs() <= 1e-4,
        "2-fold capacity {} vs 2×{}",
        c2.value,
        c1.value
    );
    pass(6, "additivity and regularization", t0);
}

/// Classical Rényi capacity of a 2×2 diagonal channel by nested grid +
/// ternary refinement over (p, σ), both diagonal.
fn classical_capacity_oracle(ch: &CqChannel, a: RenyiOrder) -> f64 {
    let inner = |t: f64| -> f64 {
        let p = ProbDist::new(vec![t, 1.0 - t]).unwrap();
        let mut best = f64::INFINITY;
        let mut best_s = 0.5;
        for is in 1..1000 {
            let s = is as f64 * 1e-3;
            let v = sandwiched_mutual_objective(ch, &p, a, &diag_state(&[s, 1.0 - s]));
            if v < best {
                best = v;
                best_s = s;
            }
        }
        let (mut lo, mut hi) = ((best_s - 1e-3).max(1e-9), (best_s + 1e-3).min(1.0 - 1e-9));
        for _ in 0..60 {
            let m1 = lo + (hi - lo) / 3.0;
            let m2 = hi - (hi - lo) / 3.0;
            let f1 = sandwiched_mutual_objective(ch, &p, a, &diag_state(&[m1, 1.0 - m1]));
            let f2 = sandwiched_mutual_objective(ch, &p, a, &diag_state(&[m2, 1.0 - m2]));
            if f1 < f2 {
                hi = m2;
            } else {
                lo = m1;
            }
        }
        let s = (lo + hi) / 2.0;
        sandwiched_mutual_objective(ch, &p, a, &diag_state(&[s, 1.0 - s])).min(best)
    };
    let mut best = f64::NEG_INFINITY;
    let mut best_t = 0.5;
    for it in 0..=200 {
        let t = it as f64 / 200.0;
        let v = inner(t);
        if v > best {
            best = v;
            best_t = t;
        }
    }
    let (mut lo, mut hi) = ((best_t - 5e-3).max(0.0), (best_t + 5e-3).min(1.0));
    for _ in 0..40 {
        let m1 = lo + (hi - lo) / 3.0;
        let m2 = hi - (hi - lo) / 3.0;
        if inner(m1) > inner(m2) {
            hi = m2;
        } else {
            lo = m1;
        }
    }
    best.max(inner((lo + hi) / 2.0))
}

/// Criterion 7 — coding bracket, classical capacity oracle, and the coding
/// exponent threshold at the α = 1 capacity.
#[test]
fn criterion_07_coding_bracket() {
    let t0 = Instant::now();
    let grid = default_alpha_grid();
    let quick = OptimizerConfig {
        restarts: 1,
        max_iters: 150,
        ..OptimizerConfig::default()
    };
    let mut rng = sampling::rng(707);
    let p = ProbDist::uniform(2);
    let book2 = Codebook::new(vec![0, 1], 2).unwrap();
    let book4 = Codebook::new(vec![0, 1, 0, 1], 2).unwrap();
    let p4 = ProbDist::uniform(4);
    for _ in 0..500 {
        let ch = CqChannel::new(vec![
            sampling::random_density(&mut rng, 2),
            sampling::random_density(&mut rng, 2),
        ])
        .unwrap();
        let bound2 =
            coding_upper_bound(&ch, &p, 2, &grid, MutualKind::Sandwiched, &quick).unwrap();
        let hel = helstrom_success(&ch, &book2, &p).unwrap();
        let pgm2 = pgm_success(&ch, &book2, &p).unwrap();
        assert!(hel <= bound2 + 1e-9, "helstrom {hel} > bound {bound2}");
        assert!(pgm2 <= bound2 + 1e-9, "pgm {pgm2} > bound {bound2}");
        let bound4 =
            coding_upper_bound(&ch, &p, 4, &grid, MutualKind::Sandwiched, &quick).unwrap();
        let pgm4 = pgm_success(&ch, &book4, &p4).unwrap();
        assert!(pgm4 <= bound4 + 1e-9, "pgm(4) {pgm4} > bound {bound4}");
    }

    // Classical channel: capacity against the diagonal grid oracle.
    let eps = 0.1;
    let ch = CqChannel::classical(&[vec![1.0 - eps, eps], vec![eps, 1.0 - eps]]).unwrap();
    let a = order(2.0);
    let oracle = classical_capacity_oracle(&ch, a);
    let cap = renyi_capacity(&ch, a, MutualKind::Sandwiched, &OptimizerConfig::default())
        .unwrap()
        .value;
    assert!((cap - oracle).abs() <= 1e-4, "capacity {cap} vs oracle {oracle}");

    // Exponent curve turns positive at the α = 1 capacity.
    let c1 = renyi_capacity(&ch, order(1.0), MutualKind::Sandwiched, &OptimizerConfig::default())
        .unwrap()
        .value;
    let rates: Vec<f64> = (0..=80).map(|i| c1 - 0.01 + 2.5e-4 * i as f64).collect();
    let cfg = OptimizerConfig::default().with_restarts(2);
    let curve = coding_exponent_curve(&ch, &rates, &grid, &cfg).unwrap();
    let threshold = curve.positivity_threshold().expect("curve never positive");
    assert!(
        (threshold - c1).abs() <= 1e-3,
        "threshold {threshold} vs C1 {c1}"
    );
    pass(7, "coding bracket", t0);
}

/// Criterion 8 — continuity at α = 1 and consistency of the α = ∞ closed form.
#[test]
fn criterion_08_continuity() {
    let t0 = Instant::now();
    let mut rng = sampling::rng(808);
    for _ in 0..100 {
        let rho = sampling::random_qubit(&mut rng, 0.9);
        let sigma = sampling::random_qubit(&mut rng, 0.9);
        let d1 = relative_entropy(&rho, &sigma);
        for a in [1.0 - 1e-4, 1.0 + 1e-4] {
            let v = sandwiched_renyi(&rho, &sigma, order(a));
            assert!((v - d1).abs() <= 1e-3, "alpha={a}: {v} vs {d1}");
        }
        let dinf = sandwiched_renyi(&rho, &sigma, RenyiOrder::Infinity);
        let dbig = sandwiched_renyi(&rho, &sigma, order(1e4));
        assert!((dinf - dbig).abs() <= 1e-3, "{dinf} vs {dbig}");
    }
    pass(8, "continuity", t0);
}

/// Brute-force measured Rényi divergence for qubits: maximize the classical
/// divergence over rank-1 PVMs parameterized by Bloch angles (10⁴-point grid
/// followed by coordinate-wise ternary refinement).
fn bloch_pvm_oracle(rho: &DensityOperator, sigma: &DensityOperator, a: RenyiOrder) -> f64 {
    let expect = |m: &HermitianOperator, va: C64, vb: C64| -> f64 {
        let mat = m.matrix();
        (va.conj() * va * mat[(0, 0)]
            + vb.conj() * vb * mat[(1, 1)]
            + va.conj() * vb * mat[(0, 1)]
            + vb.conj() * va * mat[(1, 0)])
            .re
    };
    let eval = |theta: f64, phi: f64| -> f64 {
        let va = C64::new((theta / 2.0).cos(), 0.0);
        let vb = C64::from_polar((theta / 2.0).sin(), phi);
        let p1 = expect(rho.op(), va, vb).clamp(0.0, 1.0);
        let q1 = expect(sigma.op(), va, vb).clamp(0.0, 1.0);
        let p = match ProbDist::new(vec![p1, 1.0 - p1]) {
            Ok(p) => p,
            Err(_) => return f64::NEG_INFINITY,
        };
        let q = match ProbDist::new(vec![q1, 1.0 - q1]) {
            Ok(q) => q,
            Err(_) => return f64::NEG_INFINITY,
        };
        classical_renyi(&p, &q, a).unwrap_or(f64::NEG_INFINITY)
    };
    let pi = std::f64::consts::PI;
    let (mut bt, mut bp, mut bv) = (0.0, 0.0, f64::NEG_INFINITY);
    for it in 0..100 {
        let theta = pi * it as f64 / 99.0;
        for ip in 0..100 {
            let phi = 2.0 * pi * ip as f64 / 100.0;
            let v = eval(theta, phi);
            if v.is_finite() && v > bv {
                bv = v;
                bt = theta;
                bp = phi;
            }
        }
    }
    // Coordinate-wise ternary refinement around the best grid point.
    let (mut ht, mut hp) = (pi / 99.0, 2.0 * pi / 100.0);
    for _ in 0..3 {
        let (mut lo, mut hi) = ((bt - ht).max(0.0), (bt + ht).min(pi));
        for _ in 0..60 {
            let m1 = lo + (hi - lo) / 3.0;
            let m2 = hi - (hi - lo) / 3.0;
            if eval(m1, bp) < eval(m2, bp) {
                lo = m1;
            } else {
                hi = m2;
            }
        }
        bt = (lo + hi) / 2.0;
        let (mut lo, mut hi) = (bp - hp, bp + hp);
        for _ in 0..60 {
            let m1 = lo + (hi - lo) / 3.0;
            let m2 = hi - (hi - lo) / 3.0;
            if eval(bt, m1) < eval(bt, m2) {
                lo = m1;
            } else {
                hi = m2;
            }
        }
        bp = (lo + hi) / 2.0;
        ht /= 4.0;
        hp /= 4.0;
    }
    bv.max(eval(bt, bp))
}

/// Brute-force Rényi mutual information for qubit outputs: minimize the
/// closed-form objective over a Bloch-ball grid with coordinate refinement.
fn bloch_ball_oracle(ch: &CqChannel, p: &ProbDist, a: RenyiOrder) -> f64 {
    let pi = std::f64::consts::PI;
    let eval = |r: f64, theta: f64, phi: f64| -> f64 {
        let sigma = sampling::bloch_state(
            r * theta.sin() * phi.cos(),
            r * theta.sin() * phi.sin(),
            r * theta.cos(),
        );
        sandwiched_mutual_objective(ch, p, a, &sigma)
    };
    let (mut br, mut bt, mut bp, mut bv) = (0.0, 0.0, 0.0, f64::INFINITY);
    for ir in 0..30 {
        let r = 0.995 * ir as f64 / 29.0;
        for it in 0..25 {
            let theta = pi * it as f64 / 24.0;
            for ip in 0..25 {
                let phi = 2.0 * pi * ip as f64 / 25.0;
                let v = eval(r, theta, phi);
                if v < bv {
                    bv = v;
                    br = r;
                    bt = theta;
                    bp = phi;
                }
            }
        }
    }
    let mut steps = [0.995 / 29.0, pi / 24.0, 2.0 * pi / 25.0];
    for _ in 0..4 {
        for c in 0..3 {
            let center = [br, bt, bp][c];
            let (mut lo, mut hi) = (center - steps[c], center + steps[c]);
            if c == 0 {
                lo = lo.max(0.0);
                hi = hi.min(0.999_999);
            }
            for _ in 0..50 {
                let m1 = lo + (hi - lo) / 3.0;
                let m2 = hi - (hi - lo) / 3.0;
                let mut x1 = [br, bt, bp];
                let mut x2 = x1;
                x1[c] = m1;
                x2[c] = m2;
                if eval(x1[0], x1[1], x1[2]) < eval(x2[0], x2[1], x2[2]) {
                    hi = m2;
                } else {
                    lo = m1;
                }
            }
            match c {
                0 => br = (lo + hi) / 2.0,
                1 => bt = (lo + hi) / 2.0,
                _ => bp = (lo + hi) / 2.0,
            }
            steps[c] /= 4.0;
        }
    }
    bv.min(eval(br, bt, bp))
}

/// Criterion 9 — optimizer results match brute-force grid oracles.
#[test]
fn criterion_09_oracle_equivalence() {
    let t0 = Instant::now();
    let mut rng = sampling::rng(909);
    for k in 0..20 {
        let rho = sampling::random_qubit(&mut rng, 0.9);
        let sigma = sampling::random_qubit(&mut rng, 0.9);
        let a = if k % 2 == 0 { order(2.0) } else { order(1.5) };
        let oracle = bloch_pvm_oracle(&rho, &sigma, a);
        let m = measured_renyi(&rho, &sigma, a, &OptimizerConfig::default()).unwrap();
        assert!(
            (m.value - oracle).abs() <= 1e-4,
            "fixture {k}: measured {} vs oracle {oracle}",
            m.value
        );
    }
    let mut rng = sampling::rng(919);
    for k in 0..10 {
        let ch = CqChannel::new(vec![
            sampling::random_density(&mut rng, 2),
            sampling::random_density(&mut rng, 2),
        ])
        .unwrap();
        let w: f64 = rand::Rng::gen_range(&mut rng, 0.2..0.8);
        let p = ProbDist::new(vec![w, 1.0 - w]).unwrap();
        let a = order(2.0);
        let oracle = bloch_ball_oracle(&ch, &p, a);
        let r = renyi_mutual_info(&ch, &p, a, MutualKind::Sandwiched, &OptimizerConfig::default())
            .unwrap();
        assert!(
            (r.value - oracle).abs() <= 1e-4,
            "fixture {k}: mutual info {} vs oracle {oracle}",
            r.value
        );
    }
    pass(9, "oracle equivalence", t0);
}

/// Criterion 10 — the full verification run exits cleanly within budget.
#[test]
fn criterion_10_end_to_end_verify() {
    let t0 = Instant::now();
    let status = std::process::Command::new(env!("CARGO_BIN_EXE_renyi-sc"))
        .args(["verify", "--suite", "all", "--seeds", "200"])
        .stdout(std::process::Stdio::null())
        .status()
        .expect("failed to launch CLI");
    assert!(status.success(), "verify exited with {status}");
    assert!(t0.elapsed().as_secs_f64() < 300.0, "criterion 10 over budget");
    pass(10, "end-to-end verify", t0);
}
