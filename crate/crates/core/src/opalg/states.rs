use nalgebra::DVector;

use super::operator::{CMatrix, HermitianOperator, C64};
use crate::error::{Error, Result};

/// A density operator: PSD, unit-trace Hermitian matrix.
///
/// Construction clamps eigenvalues in [-1e-12, 0) to zero and renormalizes the
/// trace; violations beyond 1e-8 are rejected.
#[derive(Debug, Clone)]
pub struct DensityOperator {
    op: HermitianOperator,
}

impl DensityOperator {
    pub fn new(op: HermitianOperator) -> Result<Self> {
        let e = op.eigen();
        let min = e.values[0];
        if min < -1e-8 {
            return Err(Error::NotPsd(min));
        }
        let tr = op.trace();
        if (tr - 1.0).abs() > 1e-8 {
            return Err(Error::InvalidTrace(tr));
        }
        let clamped = HermitianOperator::from_eigen_map(&e, |l| l.max(0.0));
        let tr = clamped.trace();
        Ok(Self {
            op: clamped.scale(1.0 / tr),
        })
    }

    /// Wraps an operator already known to be PSD with unit trace; used by
    /// optimizer inner loops where the invariant holds by construction.
    pub(crate) fn new_unchecked(op: HermitianOperator) -> Self {
        Self { op }
    }

    pub fn from_matrix(mat: CMatrix) -> Result<Self> {
        Self::new(HermitianOperator::new(mat)?)
    }

    /// Diagonal density operator from a probability vector.
    pub fn from_probabilities(p: &[f64]) -> Result<Self> {
        Self::new(HermitianOperator::from_diagonal(p))
    }

    /// Pure state |v⟩⟨v| (normalized internally).
    pub fn pure(v: &DVector<C64>) -> Self {
        Self {
            op: HermitianOperator::projector_onto(v),
        }
    }

    pub fn maximally_mixed(dim: usize) -> Self {
        Self {
            op: HermitianOperator::identity(dim).scale(1.0 / dim as f64),
        }
    }

    pub fn dim(&self) -> usize {
        self.op.dim()
    }

    pub fn op(&self) -> &HermitianOperator {
        &self.op
    }
}

impl AsRef<HermitianOperator> for DensityOperator {
    fn as_ref(&self) -> &HermitianOperator {
        &self.op
    }
}

/// An effect (binary test): Hermitian with spectrum in [0, 1].
#[derive(Debug, Clone)]
pub struct Effect {
    op: HermitianOperator,
}

impl Effect {
    pub fn new(op: HermitianOperator) -> Result<Self> {
        let e = op.eigen();
        let min = e.values[0];
        let max = e.values[e.values.len() - 1];
        if min < -1e-8 {
            return Err(Error::NotEffect(min));
        }
        if max > 1.0 + 1e-8 {
            return Err(Error::NotEffect(max));
        }
        let clamped = HermitianOperator::from_eigen_map(&e, |l| l.clamp(0.0, 1.0));
        Ok(Self { op: clamped })
    }

    pub fn identity(dim: usize) -> Self {
        Self {
            op: HermitianOperator::identity(dim),
        }
    }

    pub fn complement(&self) -> Self {
        Self {
            op: HermitianOperator::identity(self.dim()).sub(&self.op),
        }
    }

    pub fn dim(&self) -> usize {
        self.op.dim()
    }

    pub fn op(&self) -> &HermitianOperator {
        &self.op
    }

    /// Tr[a · T], the probability of this effect on a state.
    pub fn probability_on(&self, state: &DensityOperator) -> f64 {
        self.op.trace_product(state.op())
    }
}

impl AsRef<HermitianOperator> for Effect {
    fn as_ref(&self) -> &HermitianOperator {
        &self.op
    }
}

/// Projection-valued measure: mutually orthogonal projectors summing to identity.
#[derive(Debug, Clone)]
pub struct Pvm {
    projectors: Vec<HermitianOperator>,
}

impl Pvm {
    pub fn new(projectors: Vec<HermitianOperator>) -> Result<Self> {
        if projectors.is_empty() {
            return Err(Error::InvalidPvm("no projectors".into()));
        }
        let dim = projectors[0].dim();
        let mut sum = HermitianOperator::zeros(dim);
        for (i, p) in projectors.iter().enumerate() {
            if p.dim() != dim {
                return Err(Error::DimensionMismatch {
                    left: dim,
                    right: p.dim(),
                });
            }
            let sq = HermitianOperator::from_hermitian_product(p.matrix() * p.matrix());
            if sq.max_abs_diff(p) > 1e-10 {
                return Err(Error::InvalidPvm(format!("element {i} is not idempotent")));
            }
            for (j, q) in projectors.iter().enumerate().skip(i + 1) {
                let prod = p.matrix() * q.matrix();
                let norm = prod.iter().map(|z| z.norm()).fold(0.0_f64, f64::max);
                if norm > 1e-10 {
                    return Err(Error::InvalidPvm(format!(
                        "elements {i} and {j} are not orthogonal"
                    )));
                }
            }
            sum = sum.add(p);
        }
        if sum.max_abs_diff(&HermitianOperator::identity(dim)) > 1e-10 {
            return Err(Error::InvalidPvm("elements do not sum to identity".into()));
        }
        Ok(Self { projectors })
    }

    /// Rank-1 PVM from the columns of a unitary matrix (no unitarity check
    /// beyond the PVM invariants).
    pub fn from_basis(u: &CMatrix) -> Result<Self> {
        let d = u.nrows();
        let projectors = (0..d)
            .map(|j| HermitianOperator::projector_onto(&u.column(j).into_owned()))
            .collect();
        Self::new(projectors)
    }

    pub fn dim(&self) -> usize {
        self.projectors[0].dim()
    }

    pub fn len(&self) -> usize {
        self.projectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.projectors.is_empty()
    }

    pub fn projectors(&self) -> &[HermitianOperator] {
        &self.projectors
    }

    /// Outcome probabilities of a state under this measurement.
    pub fn outcome_probabilities(&self, state: &HermitianOperator) -> Vec<f64> {
        self.projectors
            .iter()
            .map(|p| p.trace_product(state).max(0.0))
            .collect()
    }
}

/// Positive operator-valued measure: PSD effects summing to identity.
#[derive(Debug, Clone)]
pub struct Povm {
    effects: Vec<HermitianOperator>,
}

impl Povm {
    pub fn new(effects: Vec<HermitianOperator>) -> Result<Self> {
        if effects.is_empty() {
            return Err(Error::InvalidPovm("no effects".into()));
        }
        let dim = effects[0].dim();
        let mut sum = HermitianOperator::zeros(dim);
        for (i, e) in effects.iter().enumerate() {
            if e.dim() != dim {
                return Err(Error::DimensionMismatch {
                    left: dim,
                    right: e.dim(),
                });
            }
            let min = e.min_eigenvalue();
            if min < -1e-8 {
                return Err(Error::InvalidPovm(format!(
                    "element {i} has negative eigenvalue {min:.3e}"
                )));
            }
            sum = sum.add(e);
        }
        if sum.max_abs_diff(&HermitianOperator::identity(dim)) > 1e-10 {
            return Err(Error::InvalidPovm("elements do not sum to identity".into()));
        }
        Ok(Self { effects })
    }

    pub fn dim(&self) -> usize {
        self.effects[0].dim()
    }

    pub fn len(&self) -> usize {
        self.effects.len()
    }

    pub fn is_empty(&self) -> bool {
        self.effects.is_empty()
    }

    pub fn effects(&self) -> &[HermitianOperator] {
        &self.effects
    }
}
