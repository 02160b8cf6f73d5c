use serde::{Deserialize, Serialize};

use super::operator::{CMatrix, HermitianOperator, C64};
use crate::error::{Error, Result};

/// Matrix exchange format: `{"dim": n, "re": [[...]], "im": [[...]]}` with
/// row-major arrays. Used by CLI input files and golden-test fixtures.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MatrixJson {
    pub dim: usize,
    pub re: Vec<Vec<f64>>,
    pub im: Vec<Vec<f64>>,
}

pub fn matrix_to_json(op: &HermitianOperator) -> MatrixJson {
    let d = op.dim();
    let m = op.matrix();
    MatrixJson {
        dim: d,
        re: (0..d).map(|i| (0..d).map(|j| m[(i, j)].re).collect()).collect(),
        im: (0..d).map(|i| (0..d).map(|j| m[(i, j)].im).collect()).collect(),
    }
}

pub fn matrix_from_json(json: &MatrixJson) -> Result<HermitianOperator> {
    let d = json.dim;
    if json.re.len() != d || json.im.len() != d {
        return Err(Error::Malformed(format!(
            "expected {d} rows, got re={} im={}",
            json.re.len(),
            json.im.len()
        )));
    }
    for (i, (r, im)) in json.re.iter().zip(&json.im).enumerate() {
        if r.len() != d || im.len() != d {
            return Err(Error::Malformed(format!("row {i} has wrong length")));
        }
    }
    let mat = CMatrix::from_fn(d, d, |i, j| C64::new(json.re[i][j], json.im[i][j]));
    HermitianOperator::new(mat)
}
