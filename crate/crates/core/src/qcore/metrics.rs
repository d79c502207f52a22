//! Model-independent entanglement measures for two-qubit states. These are
//! the oracles every closed form in `xychain` is checked against.

use super::eigen::hermitian_eigen;
use super::matrix::CMatrix;
use super::states::{bell_ket, pauli, DensityOp, EIGEN_FLOOR};
use crate::error::{Error, Result};

fn require_two_qubits(rho: &DensityOp) -> Result<()> {
    if rho.dim() != 4 {
        return Err(Error::DimensionMismatch {
            expected: 4,
            got: rho.dim(),
        });
    }
    Ok(())
}

/// Eigenvalues of ρ below this are treated as exact zeros when factoring ρ.
/// Their square roots would otherwise inject ~√ε noise into the λ's.
const RANK_CUTOFF: f64 = 1e-14;

/// Square roots of the eigenvalues of R = ρ(σ²⊗σ²)ρ*(σ²⊗σ²), descending.
///
/// With ρ = WW† (W = V√D from the eigendecomposition), R is similar to
/// τ†τ where τ = Wᵀ(σ²⊗σ²)W, so the λ's are the singular values of τ. Those
/// are read off the Hermitian dilation [[0, τ], [τ†, 0]], whose spectrum is
/// ±σᵢ; this keeps small λ's at absolute precision instead of √ε.
pub fn wootters_lambdas(rho: &DensityOp) -> Result<[f64; 4]> {
    require_two_qubits(rho)?;
    let eig = hermitian_eigen(rho.matrix())?;
    if eig.values[0] < EIGEN_FLOOR {
        return Err(Error::InvalidState(format!(
            "negative eigenvalue {:e}",
            eig.values[0]
        )));
    }
    let root: Vec<f64> = eig
        .values
        .iter()
        .map(|&d| if d > RANK_CUTOFF { d.sqrt() } else { 0.0 })
        .collect();
    let w = CMatrix::from_fn(4, |r, c| eig.vectors[(r, c)] * root[c]);

    let yy = pauli(2)?.kron(&pauli(2)?);
    let w_t = CMatrix::from_fn(4, |r, c| w[(c, r)]);
    let tau = w_t.matmul(&yy).matmul(&w);

    let mut dilation = CMatrix::zeros(8);
    for r in 0..4 {
        for c in 0..4 {
            dilation[(r, c + 4)] = tau[(r, c)];
            dilation[(c + 4, r)] = tau[(r, c)].conj();
        }
    }
    let values = hermitian_eigen(&dilation)?.values;

    let mut lambdas = [0.0; 4];
    for (slot, &v) in lambdas.iter_mut().zip(values.iter().rev()) {
        *slot = v.max(0.0);
    }
    Ok(lambdas)
}

pub fn concurrence_from_lambdas(l: &[f64; 4]) -> f64 {
    (l[0] - l[1] - l[2] - l[3]).max(0.0)
}

/// Wootters concurrence, clamped to [0, 1].
pub fn wootters_concurrence(rho: &DensityOp) -> Result<f64> {
    wootters_lambdas(rho).map(|l| concurrence_from_lambdas(&l).min(1.0))
}

/// Largest overlap with the four canonical Bell kets. Not optimized over
/// local bases.
pub fn bell_fraction(rho: &DensityOp) -> Result<f64> {
    require_two_qubits(rho)?;
    let mut best = f64::NEG_INFINITY;
    for i in 0..4 {
        best = best.max(rho.overlap(&bell_ket(i)?));
    }
    Ok(best.clamp(0.0, 1.0))
}
