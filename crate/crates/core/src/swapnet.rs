//! Entanglement swapping of three two-qubit states through a GHZ-basis
//! measurement.
//!
//! Register layout is (A₁, B₁, A₂, B₂, A₃, B₃): the three input pairs are
//! tensored in order, the GHZ projector acts on qubits {0, 2, 4} and the
//! surviving three-qubit state is read from {1, 3, 5}.

use crate::error::{Error, Result};
use crate::qcore::{ghz_ket, measure, partial_trace, CMatrix, DensityOp, MeasureOutcome, Tensor};
use crate::xychain::{chain_state, ChainParams};

pub const MEASURED_QUBITS: [usize; 3] = [0, 2, 4];
pub const KEPT_QUBITS: [usize; 3] = [1, 3, 5];

/// One GHZ outcome: its probability and the normalized B₁B₂B₃ state, or
/// `None` when the probability is numerically zero.
pub type SwapOutcome = MeasureOutcome;

#[derive(Debug, Clone)]
pub struct SwapResult {
    /// Indexed by GHZ outcome 0..8.
    pub outcomes: Vec<SwapOutcome>,
    /// Σᵢ pᵢ χ⁽ⁱ⁾ over the non-null outcomes.
    pub mixture: DensityOp,
}

impl SwapResult {
    pub fn probabilities(&self) -> Vec<f64> {
        self.outcomes.iter().map(|o| o.probability).collect()
    }
}

fn check_pair(chi: &DensityOp) -> Result<()> {
    if chi.dim() != 4 {
        return Err(Error::DimensionMismatch {
            expected: 4,
            got: chi.dim(),
        });
    }
    Ok(())
}

fn product_register(pairs: [&DensityOp; 3]) -> Result<DensityOp> {
    for chi in pairs {
        check_pair(chi)?;
    }
    Ok(pairs[0].tensor(pairs[1]).tensor(pairs[2]))
}

fn outcome_on(register: &DensityOp, i: usize) -> Result<SwapOutcome> {
    let proj = ghz_ket(i)?.projector();
    let out = measure(register, &proj, &MEASURED_QUBITS)?;
    let state = match out.state {
        Some(post) => Some(partial_trace(&post, &KEPT_QUBITS)?),
        None => None,
    };
    Ok(SwapOutcome {
        probability: out.probability,
        state,
    })
}

/// GHZ outcome `i` for input pairs (A₁B₁, A₂B₂, A₃B₃).
pub fn swap_once(
    chi1: &DensityOp,
    chi2: &DensityOp,
    chi3: &DensityOp,
    i: usize,
) -> Result<SwapOutcome> {
    if i >= 8 {
        return Err(Error::IndexOutOfRange {
            what: "GHZ outcome",
            index: i,
            bound: 8,
        });
    }
    outcome_on(&product_register([chi1, chi2, chi3])?, i)
}

/// All eight outcomes for arbitrary (possibly distinct) input pairs.
pub fn swap_pairs(chi1: &DensityOp, chi2: &DensityOp, chi3: &DensityOp) -> Result<SwapResult> {
    let register = product_register([chi1, chi2, chi3])?;
    let outcomes = (0..8)
        .map(|i| outcome_on(&register, i))
        .collect::<Result<Vec<_>>>()?;
    let mut mixture = CMatrix::zeros(8);
    for o in &outcomes {
        if let Some(state) = &o.state {
            mixture = &mixture + &state.matrix().scale_real(o.probability);
        }
    }
    Ok(SwapResult {
        outcomes,
        mixture: DensityOp::from_matrix_unchecked(mixture),
    })
}

/// Swaps three identical chains at `p` (ground state when T = 0).
pub fn swap_all(p: &ChainParams) -> Result<SwapResult> {
    let chi = chain_state(p)?;
    swap_pairs(&chi, &chi, &chi)
}
