//! Seeded random instances: states, effects, unitaries. Shared by the test
//! suites and the `verify` command so failure reports are reproducible.

use nalgebra::DVector;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::opalg::{CMatrix, DensityOperator, Effect, HermitianOperator, C64};

/// The single documented PRNG stream for all randomized suites.
pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn standard_normal(rng: &mut impl Rng) -> f64 {
    // Box-Muller; avoids pulling in rand_distr for one distribution.
    let u1: f64 = rng.gen_range(f64::EPSILON..1.0);
    let u2: f64 = rng.gen_range(0.0..1.0);
    (-2.0 * u1.ln()).sqrt() * (std::f64::consts::TAU * u2).cos()
}

fn ginibre(rng: &mut impl Rng, dim: usize) -> CMatrix {
    CMatrix::from_fn(dim, dim, |_, _| {
        C64::new(standard_normal(rng), standard_normal(rng))
    })
}

/// Random full-rank density operator (Ginibre ensemble, `G G† / Tr`).
pub fn random_density(rng: &mut impl Rng, dim: usize) -> DensityOperator {
    let g = ginibre(rng, dim);
    let m = &g * g.adjoint();
    let h = HermitianOperator::from_hermitian_product(m);
    let tr = h.trace();
    DensityOperator::new(h.scale(1.0 / tr)).expect("Ginibre state is PSD and normalized")
}

/// Random pure state.
pub fn random_pure(rng: &mut impl Rng, dim: usize) -> DensityOperator {
    let v = DVector::from_fn(dim, |_, _| C64::new(standard_normal(rng), standard_normal(rng)));
    DensityOperator::pure(&v)
}

/// Random PSD operator with unit operator norm.
pub fn random_psd(rng: &mut impl Rng, dim: usize) -> HermitianOperator {
    let g = ginibre(rng, dim);
    let h = HermitianOperator::from_hermitian_product(&g * g.adjoint());
    let top = h.max_eigenvalue();
    h.scale(1.0 / top)
}

/// Random effect with spectrum strictly inside (0, 1).
pub fn random_effect(rng: &mut impl Rng, dim: usize) -> Effect {
    let h = random_psd(rng, dim);
    let lo = rng.gen_range(0.01..0.2);
    let hi = rng.gen_range(0.8..0.99);
    Effect::new(h.map_eigenvalues(|l| lo + (hi - lo) * l.clamp(0.0, 1.0)))
        .expect("spectrum constructed inside [0,1]")
}

/// Haar-ish random unitary from the QR decomposition of a Ginibre matrix.
pub fn random_unitary(rng: &mut impl Rng, dim: usize) -> CMatrix {
    let g = ginibre(rng, dim);
    let qr = g.qr();
    let mut q = qr.q();
    let r = qr.r();
    // Fix the phase convention so columns are well defined.
    for j in 0..dim {
        let d = r[(j, j)];
        if d.norm() > 0.0 {
            let phase = d / C64::new(d.norm(), 0.0);
            for i in 0..dim {
                q[(i, j)] *= phase.conj();
            }
        }
    }
    q
}

/// Random qubit density operator with Bloch radius in [0, r_max].
pub fn random_qubit(rng: &mut impl Rng, r_max: f64) -> DensityOperator {
    let r = r_max * rng.gen_range(0.0_f64..1.0).cbrt();
    let cos_t = rng.gen_range(-1.0_f64..1.0);
    let sin_t = (1.0 - cos_t * cos_t).sqrt();
    let phi = rng.gen_range(0.0..std::f64::consts::TAU);
    bloch_state(r * sin_t * phi.cos(), r * sin_t * phi.sin(), r * cos_t)
}

/// Qubit state (1/2)(I + x·σx + y·σy + z·σz); requires x²+y²+z² ≤ 1.
pub fn bloch_state(x: f64, y: f64, z: f64) -> DensityOperator {
    let m = CMatrix::from_row_slice(
        2,
        2,
        &[
            C64::new(0.5 * (1.0 + z), 0.0),
            C64::new(0.5 * x, -0.5 * y),
            C64::new(0.5 * x, 0.5 * y),
            C64::new(0.5 * (1.0 - z), 0.0),
        ],
    );
    DensityOperator::from_matrix(m).expect("point inside the Bloch ball")
}
