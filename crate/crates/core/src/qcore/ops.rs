//! Subsystem operations: embedding, partial trace, projective measurement.

use super::matrix::CMatrix;
use super::states::{qubit_count, DensityOp, Projector};
use crate::error::{Error, Result};

/// Outcomes with probability at or below this carry no post-state.
pub const ZERO_PROBABILITY: f64 = 1e-14;

#[derive(Clone, Debug)]
pub struct MeasureOutcome {
    pub probability: f64,
    /// `None` when the outcome has (numerically) zero probability.
    pub state: Option<DensityOp>,
}

fn check_subset(subset: &[usize], n: usize) -> Result<()> {
    let bad = || Error::InvalidSubset {
        subset: subset.to_vec(),
        n,
    };
    if subset.is_empty() || subset.len() > n {
        return Err(bad());
    }
    let mut seen = vec![false; n];
    for &q in subset {
        if q >= n || seen[q] {
            return Err(bad());
        }
        seen[q] = true;
    }
    Ok(())
}

/// Table `t[s * rest_dim + r]` giving the full register index whose qubits in
/// `subset` (listed most-significant first) spell `s` and whose remaining
/// qubits (ascending) spell `r`.
fn split_index_table(n: usize, subset: &[usize]) -> (Vec<usize>, usize) {
    let rest: Vec<usize> = (0..n).filter(|q| !subset.contains(q)).collect();
    let sub_dim = 1usize << subset.len();
    let rest_dim = 1usize << rest.len();
    let mut table = vec![0usize; sub_dim * rest_dim];
    for s in 0..sub_dim {
        for r in 0..rest_dim {
            let mut full = 0usize;
            for (pos, &q) in subset.iter().enumerate() {
                let bit = (s >> (subset.len() - 1 - pos)) & 1;
                full |= bit << (n - 1 - q);
            }
            for (pos, &q) in rest.iter().enumerate() {
                let bit = (r >> (rest.len() - 1 - pos)) & 1;
                full |= bit << (n - 1 - q);
            }
            table[s * rest_dim + r] = full;
        }
    }
    (table, rest_dim)
}

/// Lifts `op` (acting on `subset`, in the listed order) to the full n-qubit
/// register as `op ⊗ I`.
pub fn embed_operator(op: &CMatrix, n: usize, subset: &[usize]) -> Result<CMatrix> {
    check_subset(subset, n)?;
    let sub_dim = 1usize << subset.len();
    if op.dim() != sub_dim {
        return Err(Error::DimensionMismatch {
            expected: sub_dim,
            got: op.dim(),
        });
    }
    let (table, rest_dim) = split_index_table(n, subset);
    let mut out = CMatrix::zeros(1 << n);
    for i in 0..sub_dim {
        for j in 0..sub_dim {
            let v = op[(i, j)];
            if v.norm_sqr() == 0.0 {
                continue;
            }
            for r in 0..rest_dim {
                out[(table[i * rest_dim + r], table[j * rest_dim + r])] = v;
            }
        }
    }
    Ok(out)
}

/// Partial trace of an arbitrary operator, keeping `keep` in the given order.
pub fn partial_trace_matrix(m: &CMatrix, keep: &[usize]) -> Result<CMatrix> {
    let n = qubit_count(m.dim())?;
    check_subset(keep, n)?;
    let (table, rest_dim) = split_index_table(n, keep);
    let keep_dim = 1usize << keep.len();
    Ok(CMatrix::from_fn(keep_dim, |a, b| {
        (0..rest_dim)
            .map(|t| m[(table[a * rest_dim + t], table[b * rest_dim + t])])
            .sum()
    }))
}

pub fn partial_trace(rho: &DensityOp, keep: &[usize]) -> Result<DensityOp> {
    partial_trace_matrix(rho.matrix(), keep).map(DensityOp::from_matrix_unchecked)
}

/// (P⊗I) M (P⊗I) for an arbitrary operator `m`.
pub fn project_unnormalized(m: &CMatrix, proj: &Projector, subset: &[usize]) -> Result<CMatrix> {
    let n = qubit_count(m.dim())?;
    let e = embed_operator(proj.matrix(), n, subset)?;
    Ok(e.matmul(m).matmul_hermitian_right(&e))
}

/// Projective measurement of `proj` on the qubits in `subset`.
///
/// The probability is tr[(P⊗I)ρ]; the post-state is the renormalized
/// (P⊗I)ρ(P⊗I), left on the full register.
pub fn measure(rho: &DensityOp, proj: &Projector, subset: &[usize]) -> Result<MeasureOutcome> {
    let n = qubit_count(rho.dim())?;
    let e = embed_operator(proj.matrix(), n, subset)?;
    let left = e.matmul(rho.matrix());
    let probability = left.trace().re;
    if probability <= ZERO_PROBABILITY {
        return Ok(MeasureOutcome {
            probability: probability.max(0.0),
            state: None,
        });
    }
    let post = left.matmul_hermitian_right(&e).scale_real(1.0 / probability);
    Ok(MeasureOutcome {
        probability,
        state: Some(DensityOp::from_matrix_unchecked(post)),
    })
}

/// Relabels qubits so that output qubit `q` is input qubit `perm[q]`.
pub fn permute_qubits(rho: &DensityOp, perm: &[usize]) -> Result<DensityOp> {
    let dim = rho.dim();
    let n = qubit_count(dim)?;
    if perm.len() != n {
        return Err(Error::InvalidSubset {
            subset: perm.to_vec(),
            n,
        });
    }
    check_subset(perm, n)?;
    let map = |old: usize| -> usize {
        let mut new = 0;
        for (q, &src) in perm.iter().enumerate() {
            let bit = (old >> (n - 1 - src)) & 1;
            new |= bit << (n - 1 - q);
        }
        new
    };
    let targets: Vec<usize> = (0..dim).map(map).collect();
    let m = rho.matrix();
    let mut out = CMatrix::zeros(dim);
    for a in 0..dim {
        for b in 0..dim {
            out[(targets[a], targets[b])] = m[(a, b)];
        }
    }
    Ok(DensityOp::from_matrix_unchecked(out))
}
