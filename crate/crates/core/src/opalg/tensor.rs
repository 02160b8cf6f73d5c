use super::operator::{CMatrix, HermitianOperator};
use crate::error::{Error, Result};

/// Kronecker product `a ⊗ b`.
pub fn kron(a: &HermitianOperator, b: &HermitianOperator) -> HermitianOperator {
    let m = a.matrix().kronecker(b.matrix());
    HermitianOperator::from_hermitian_product(m)
}

/// n-fold Kronecker power `a^{⊗n}` (n ≥ 1).
pub fn kron_power(a: &HermitianOperator, n: usize) -> HermitianOperator {
    assert!(n >= 1, "kron_power requires n >= 1");
    let mut out = a.clone();
    for _ in 1..n {
        out = kron(&out, a);
    }
    out
}

/// Partial trace keeping subsystem `keep` of a multipartite operator with
/// subsystem dimensions `dims` (row-major tensor ordering, as produced by `kron`).
pub fn partial_trace(
    a: &HermitianOperator,
    dims: &[usize],
    keep: usize,
) -> Result<HermitianOperator> {
    let total: usize = dims.iter().product();
    if total != a.dim() {
        return Err(Error::DimensionMismatch {
            left: total,
            right: a.dim(),
        });
    }
    if keep >= dims.len() {
        return Err(Error::DimensionMismatch {
            left: keep,
            right: dims.len(),
        });
    }
    let dk = dims[keep];
    // Strides: index = Σ_s i_s * stride_s with stride decreasing left to right.
    let mut strides = vec![1usize; dims.len()];
    for s in (0..dims.len().saturating_sub(1)).rev() {
        strides[s] = strides[s + 1] * dims[s + 1];
    }
    let env: usize = total / dk;
    // Enumerate environment multi-indices as offsets into the full index space.
    let mut env_offsets = Vec::with_capacity(env);
    let mut counters = vec![0usize; dims.len()];
    loop {
        let off: usize = (0..dims.len())
            .filter(|&s| s != keep)
            .map(|s| counters[s] * strides[s])
            .sum();
        env_offsets.push(off);
        // Increment the mixed-radix counter over all subsystems except `keep`.
        let mut done = true;
        for s in (0..dims.len()).rev() {
            if s == keep {
                continue;
            }
            counters[s] += 1;
            if counters[s] < dims[s] {
                done = false;
                break;
            }
            counters[s] = 0;
        }
        if done {
            break;
        }
    }
    let mat = a.matrix();
    let out = CMatrix::from_fn(dk, dk, |i, j| {
        env_offsets
            .iter()
            .map(|&off| mat[(off + i * strides[keep], off + j * strides[keep])])
            .sum()
    });
    Ok(HermitianOperator::from_hermitian_product(out))
}
