use crate::error::{Error, Result};

/// The Rényi order α ∈ (0,1) ∪ [1, ∞], with exact tags for α = 1 and α = ∞.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum RenyiOrder {
    One,
    Infinity,
    Finite(f64),
}

impl RenyiOrder {
    /// Classifies a real value; 1.0 and +∞ map to their exact tags.
    pub fn new(alpha: f64) -> Result<Self> {
        if alpha.is_nan() || alpha <= 0.0 {
            return Err(Error::InvalidOrder(alpha));
        }
        if alpha == 1.0 {
            Ok(Self::One)
        } else if alpha.is_infinite() {
            Ok(Self::Infinity)
        } else {
            Ok(Self::Finite(alpha))
        }
    }

    pub fn value(&self) -> f64 {
        match self {
            Self::One => 1.0,
            Self::Infinity => f64::INFINITY,
            Self::Finite(a) => *a,
        }
    }

    /// The conjugate index α′ = α/(α−1).
    pub fn conjugate(&self) -> f64 {
        match self {
            Self::One => f64::INFINITY,
            Self::Infinity => 1.0,
            Self::Finite(a) => a / (a - 1.0),
        }
    }

    /// The Hölder/strong-converse prefactor (α−1)/α ∈ [0, 1] for α ≥ 1.
    pub fn sc_prefactor(&self) -> f64 {
        match self {
            Self::One => 0.0,
            Self::Infinity => 1.0,
            Self::Finite(a) => (a - 1.0) / a,
        }
    }
}

/// A finite probability distribution (entries ≥ 0, summing to 1).
#[derive(Debug, Clone, PartialEq)]
pub struct ProbDist {
    weights: Vec<f64>,
}

impl ProbDist {
    pub fn new(weights: Vec<f64>) -> Result<Self> {
        if weights.is_empty() {
            return Err(Error::InvalidDistribution("empty".into()));
        }
        if let Some(w) = weights.iter().find(|w| **w < -1e-10 || !w.is_finite()) {
            return Err(Error::InvalidDistribution(format!("weight {w}")));
        }
        let sum: f64 = weights.iter().sum();
        if (sum - 1.0).abs() > 1e-8 {
            return Err(Error::InvalidDistribution(format!("sum {sum}")));
        }
        let weights = weights.iter().map(|w| w.max(0.0) / sum).collect();
        Ok(Self { weights })
    }

    pub fn uniform(n: usize) -> Self {
        Self {
            weights: vec![1.0 / n as f64; n],
        }
    }

    /// Normalizes arbitrary nonnegative weights.
    pub fn normalized(weights: Vec<f64>) -> Result<Self> {
        let sum: f64 = weights.iter().sum();
        if sum <= 0.0 {
            return Err(Error::InvalidDistribution("nonpositive mass".into()));
        }
        Self::new(weights.iter().map(|w| w / sum).collect())
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }
}
