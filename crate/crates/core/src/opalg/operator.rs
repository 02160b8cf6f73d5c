use nalgebra::{Complex, DMatrix, DVector};

use crate::error::{Error, Result};

pub type C64 = Complex<f64>;
pub type CMatrix = DMatrix<C64>;

/// Relative tolerance for the hermiticity check on construction.
pub const HERMITICITY_TOL: f64 = 1e-12;

/// Eigenvalues below `SPECTRAL_CUTOFF * lambda_max` are treated as zero by the
/// function calculus (pseudo-inverse convention).
pub const SPECTRAL_CUTOFF: f64 = 1e-12;

/// A finite-dimensional Hermitian operator stored as a dense complex matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct HermitianOperator {
    mat: CMatrix,
}

/// Eigendecomposition `A = U diag(vals) U†` with real eigenvalues sorted ascending.
#[derive(Debug, Clone)]
pub struct Eigen {
    pub values: DVector<f64>,
    pub vectors: CMatrix,
}

impl HermitianOperator {
    /// Wraps a matrix after checking hermiticity (relative tolerance 1e-12).
    pub fn new(mat: CMatrix) -> Result<Self> {
        if mat.nrows() != mat.ncols() {
            return Err(Error::NotSquare {
                rows: mat.nrows(),
                cols: mat.ncols(),
            });
        }
        let scale = mat
            .iter()
            .map(|z| z.norm())
            .fold(0.0_f64, f64::max)
            .max(1.0);
        let mut asym = 0.0_f64;
        for i in 0..mat.nrows() {
            for j in i..mat.ncols() {
                asym = asym.max((mat[(i, j)] - mat[(j, i)].conj()).norm());
            }
        }
        if asym > HERMITICITY_TOL * scale {
            return Err(Error::NotHermitian(asym / scale));
        }
        // Symmetrize so that downstream eigensolves see an exactly Hermitian matrix.
        let herm = (&mat + mat.adjoint()).scale(0.5);
        Ok(Self { mat: herm })
    }

    /// Hermitian operator from real diagonal entries.
    pub fn from_diagonal(diag: &[f64]) -> Self {
        let d = diag.len();
        let mat = CMatrix::from_fn(d, d, |i, j| {
            if i == j {
                C64::new(diag[i], 0.0)
            } else {
                C64::default()
            }
        });
        Self { mat }
    }

    pub fn identity(dim: usize) -> Self {
        Self {
            mat: CMatrix::identity(dim, dim),
        }
    }

    pub fn zeros(dim: usize) -> Self {
        Self {
            mat: CMatrix::zeros(dim, dim),
        }
    }

    /// Rank-1 projector |v⟩⟨v| / ⟨v|v⟩.
    pub fn projector_onto(v: &DVector<C64>) -> Self {
        let n2 = v.iter().map(|z| z.norm_sqr()).sum::<f64>();
        let mat = (v * v.adjoint()).scale(1.0 / n2);
        Self { mat }
    }

    pub fn dim(&self) -> usize {
        self.mat.nrows()
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.mat
    }

    pub fn into_matrix(self) -> CMatrix {
        self.mat
    }

    /// Builds an operator from a Hermitian product that is known to be Hermitian
    /// (symmetrizes to wash out roundoff, no hermiticity check).
    pub(crate) fn from_hermitian_product(mat: CMatrix) -> Self {
        let herm = (&mat + mat.adjoint()).scale(0.5);
        Self { mat: herm }
    }

    pub fn trace(&self) -> f64 {
        (0..self.dim()).map(|i| self.mat[(i, i)].re).sum()
    }

    /// Real trace of the product `Tr[AB]` (real for Hermitian A, B).
    pub fn trace_product(&self, other: &Self) -> f64 {
        debug_assert_eq!(self.dim(), other.dim());
        let mut t = C64::default();
        for i in 0..self.dim() {
            for j in 0..self.dim() {
                t += self.mat[(i, j)] * other.mat[(j, i)];
            }
        }
        t.re
    }

    /// Eigendecomposition with eigenvalues sorted ascending.
    pub fn eigen(&self) -> Eigen {
        let se = self.mat.clone().symmetric_eigen();
        let n = se.eigenvalues.len();
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&a, &b| se.eigenvalues[a].total_cmp(&se.eigenvalues[b]));
        let values = DVector::from_fn(n, |i, _| se.eigenvalues[order[i]]);
        let vectors = CMatrix::from_fn(n, n, |i, j| se.eigenvectors[(i, order[j])]);
        Eigen { values, vectors }
    }

    /// Applies a real function to the eigenvalues: `U f(Λ) U†`.
    pub fn map_eigenvalues(&self, f: impl Fn(f64) -> f64) -> Self {
        Self::from_eigen_map(&self.eigen(), f)
    }

    /// Rebuilds `U f(Λ) U†` from a precomputed eigendecomposition, so callers
    /// that need both the spectrum and a function of it decompose only once.
    pub(crate) fn from_eigen_map(e: &Eigen, f: impl Fn(f64) -> f64) -> Self {
        let fv = DVector::from_fn(e.values.len(), |i, _| C64::new(f(e.values[i]), 0.0));
        let scaled = &e.vectors * CMatrix::from_diagonal(&fv);
        Self::from_hermitian_product(scaled * e.vectors.adjoint())
    }

    pub fn min_eigenvalue(&self) -> f64 {
        self.eigen().values[0]
    }

    pub fn max_eigenvalue(&self) -> f64 {
        let e = self.eigen();
        e.values[e.values.len() - 1]
    }

    /// Operator norm (largest singular value; largest |eigenvalue| for Hermitian).
    pub fn op_norm(&self) -> f64 {
        let e = self.eigen();
        e.values[0].abs().max(e.values[e.values.len() - 1].abs())
    }

    /// Conjugation `S A S` with Hermitian `s`; the result is Hermitian.
    pub fn conjugate_with(&self, s: &Self) -> Self {
        Self::from_hermitian_product(&s.mat * &self.mat * &s.mat)
    }

    pub fn scale(&self, factor: f64) -> Self {
        Self {
            mat: self.mat.scale(factor),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        Self {
            mat: &self.mat + &other.mat,
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        Self {
            mat: &self.mat - &other.mat,
        }
    }

    /// Commutator norm ‖AB − BA‖ in operator norm; zero iff the pair commutes.
    pub fn commutator_norm(&self, other: &Self) -> f64 {
        let c = &self.mat * &other.mat - &other.mat * &self.mat;
        // i[A,B] is Hermitian; its operator norm equals that of [A,B].
        let herm = c.map(|z| z * C64::new(0.0, 1.0));
        match Self::new((herm.clone() + herm.adjoint()).scale(0.5)) {
            Ok(h) => h.op_norm(),
            Err(_) => f64::INFINITY,
        }
    }

    /// Trace norm ‖A‖₁ = Σ |λ_i|.
    pub fn trace_norm(&self) -> f64 {
        self.eigen().values.iter().map(|l| l.abs()).sum()
    }

    /// Largest entrywise deviation from another operator.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        (&self.mat - &other.mat)
            .iter()
            .map(|z| z.norm())
            .fold(0.0, f64::max)
    }
}
