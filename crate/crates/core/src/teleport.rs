//! Conditional teleportation through a three-qubit resource.
//!
//! An unknown qubit on A₁ is sent using a resource on (A₂, B, C): A₁A₂ are
//! measured in the Bell basis, B in the rotated basis
//! {cos μ|0⟩ + sin μ|1⟩, −sin μ|0⟩ + cos μ|1⟩}, and C applies a Pauli
//! correction chosen from the outcomes. The register is laid out as
//! (A₁, A₂, B, C). With [`Receiver::B`] the roles of B and C swap.
//!
//! Two independent routes to the Bloch-averaged fidelity live here: the
//! dense simulation over every swap outcome, and the closed form
//! Φ = C₁ + C₂ cos μ sin μ for thermal XY resources.

use std::f64::consts::FRAC_PI_4;
use std::sync::OnceLock;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::qcore::{
    bell_ket, bloch_average, measure, partial_trace, partial_trace_matrix, pauli,
    project_unnormalized, CMatrix, DensityOp, Ket, MeasureOutcome, Projector, Tensor,
    ZERO_PROBABILITY,
};
use crate::swapnet::{swap_all, swap_pairs, SwapResult};
use crate::xychain::{scaled_hyperbolic, ChainParams, FieldRegime};

/// Which resource qubit reconstructs the input.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Receiver {
    /// Measure B, correct on C.
    C,
    /// Measure C, correct on B.
    B,
}

impl Receiver {
    /// (measured qubit, receiving qubit) in the (A₁, A₂, B, C) register.
    fn qubits(self) -> (usize, usize) {
        match self {
            Receiver::C => (2, 3),
            Receiver::B => (3, 2),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TeleportConfig {
    /// Single-qubit measurement angle, 0 ≤ μ ≤ π/4.
    pub mu: f64,
    pub receiver: Receiver,
}

impl Default for TeleportConfig {
    fn default() -> Self {
        Self {
            mu: FRAC_PI_4,
            receiver: Receiver::C,
        }
    }
}

impl TeleportConfig {
    pub fn new(mu: f64) -> Result<Self> {
        if !(0.0..=FRAC_PI_4 + 1e-15).contains(&mu) {
            return Err(Error::InvalidParam {
                name: "mu",
                value: mu,
                reason: "must lie in [0, pi/4]",
            });
        }
        Ok(Self {
            mu: mu.min(FRAC_PI_4),
            receiver: Receiver::C,
        })
    }

    pub fn with_receiver(self, receiver: Receiver) -> Self {
        Self { receiver, ..self }
    }

    /// |ψ¹⟩ = cos μ|0⟩ + sin μ|1⟩, |ψ²⟩ = −sin μ|0⟩ + cos μ|1⟩.
    pub fn basis_ket(&self, k: usize) -> Result<Ket> {
        let (c, s) = (self.mu.cos(), self.mu.sin());
        match k {
            1 => Ket::normalized(vec![Complex64::new(c, 0.0), Complex64::new(s, 0.0)]),
            2 => Ket::normalized(vec![Complex64::new(-s, 0.0), Complex64::new(c, 0.0)]),
            _ => Err(k_error(k)),
        }
    }
}

fn k_error(k: usize) -> Error {
    Error::IndexOutOfRange {
        what: "single-qubit outcome (1-based)",
        index: k,
        bound: 3,
    }
}

fn check_jk(j: usize, k: usize) -> Result<()> {
    if j >= 4 {
        return Err(Error::IndexOutOfRange {
            what: "Bell outcome",
            index: j,
            bound: 4,
        });
    }
    if !(1..=2).contains(&k) {
        return Err(k_error(k));
    }
    Ok(())
}

#[derive(Debug, Clone)]
pub struct MeasurementFamily {
    /// Π^j on A₁A₂, j = 0..4.
    pub bell: Vec<Projector>,
    /// Π^k on the measured resource qubit; index 0 is k = 1.
    pub single: Vec<Projector>,
}

pub fn measurement_family(cfg: &TeleportConfig) -> Result<MeasurementFamily> {
    let bell = (0..4)
        .map(|j| bell_ket(j).map(|k| k.projector()))
        .collect::<Result<Vec<_>>>()?;
    let single = (1..=2)
        .map(|k| cfg.basis_ket(k).map(|k| k.projector()))
        .collect::<Result<Vec<_>>>()?;
    Ok(MeasurementFamily { bell, single })
}

fn joint_projector(cfg: &TeleportConfig, j: usize, k: usize) -> Result<(Projector, [usize; 3], usize)> {
    check_jk(j, k)?;
    let pj = bell_ket(j)?.projector();
    let pk = cfg.basis_ket(k)?.projector();
    let (measured, receiver) = cfg.receiver.qubits();
    Ok((pj.tensor(&pk), [0, 1, measured], receiver))
}

fn check_resource(resource: &DensityOp) -> Result<()> {
    if resource.dim() != 8 {
        return Err(Error::DimensionMismatch {
            expected: 8,
            got: resource.dim(),
        });
    }
    Ok(())
}

/// Receiver state after outcomes (j, k), with k ∈ {1, 2}. Literal route:
/// project the 16-dimensional register, trace down to the receiver,
/// renormalize by q.
pub fn conditioned_state(
    resource: &DensityOp,
    input: &Ket,
    j: usize,
    k: usize,
    cfg: &TeleportConfig,
) -> Result<MeasureOutcome> {
    check_resource(resource)?;
    if input.dim() != 2 {
        return Err(Error::DimensionMismatch {
            expected: 2,
            got: input.dim(),
        });
    }
    let (proj, subset, receiver) = joint_projector(cfg, j, k)?;
    let register = input.density().tensor(resource);
    let out = measure(&register, &proj, &subset)?;
    let state = match out.state {
        Some(post) => Some(partial_trace(&post, &[receiver])?),
        None => None,
    };
    Ok(MeasureOutcome {
        probability: out.probability,
        state,
    })
}

/// The unnormalized receiver operator q·ρ_C is linear in the input |φ⟩⟨φ|.
/// Writing |φ⟩⟨φ| = ½(I + n·σ), this stores the images of σᵃ/2 so every
/// quadrature node costs a 2×2 combination instead of a 16-dimensional
/// projection.
#[derive(Debug, Clone)]
struct ReceiverMap {
    parts: [CMatrix; 4],
}

impl ReceiverMap {
    fn new(resource: &DensityOp, j: usize, k: usize, cfg: &TeleportConfig) -> Result<Self> {
        let (proj, subset, receiver) = joint_projector(cfg, j, k)?;
        let mut parts: [CMatrix; 4] = std::array::from_fn(|_| CMatrix::zeros(2));
        for (a, part) in parts.iter_mut().enumerate() {
            let register = pauli(a)?.scale_real(0.5).kron(resource.matrix());
            let projected = project_unnormalized(&register, &proj, &subset)?;
            *part = partial_trace_matrix(&projected, &[receiver])?;
        }
        Ok(Self { parts })
    }

    fn unnormalized(&self, n: [f64; 3]) -> CMatrix {
        let mut m = self.parts[0].clone();
        for (part, na) in self.parts[1..].iter().zip(n) {
            m = &m + &part.scale_real(na);
        }
        m
    }
}

pub fn bloch_vector(ket: &Ket) -> [f64; 3] {
    let a = ket.amplitudes()[0];
    let b = ket.amplitudes()[1];
    let ab = a.conj() * b;
    [2.0 * ab.re, 2.0 * ab.im, a.norm_sqr() - b.norm_sqr()]
}

/// ⟨φ|σᶜ ρ σᶜ|φ⟩
fn corrected_overlap(rho: &CMatrix, correction: &CMatrix, phi: &Ket) -> f64 {
    let v = correction.apply(phi.amplitudes());
    rho.expectation(&v).re
}

/// Bloch average of q·⟨φ|σᶜ ρ_C σᶜ|φ⟩ for each Pauli c on path (j, k).
pub fn correction_scores(
    resource: &DensityOp,
    j: usize,
    k: usize,
    cfg: &TeleportConfig,
) -> Result<[f64; 4]> {
    check_resource(resource)?;
    scores_for(&ReceiverMap::new(resource, j, k, cfg)?)
}

fn scores_for(map: &ReceiverMap) -> Result<[f64; 4]> {
    let mut scores = [0.0; 4];
    for (c, score) in scores.iter_mut().enumerate() {
        let sc = pauli(c)?;
        *score = bloch_average(|phi| {
            let rho = map.unnormalized(bloch_vector(phi));
            corrected_overlap(&rho, &sc, phi)
        });
    }
    Ok(scores)
}

/// Exhaustive search for the Pauli that maximizes the averaged fidelity of
/// path (j, k) on `resource`. Ties go to the lowest index.
pub fn best_correction(
    resource: &DensityOp,
    j: usize,
    k: usize,
    cfg: &TeleportConfig,
) -> Result<usize> {
    Ok(argmax(&correction_scores(resource, j, k, cfg)?))
}

fn argmax(scores: &[f64; 4]) -> usize {
    let mut best = 0;
    for c in 1..4 {
        if scores[c] > scores[best] + 1e-12 {
            best = c;
        }
    }
    best
}

/// Pauli index per (swap outcome i, Bell outcome j, single-qubit outcome k).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CorrectionTable([[[u8; 2]; 4]; 8]);

impl CorrectionTable {
    /// `k` is 1-based.
    pub fn get(&self, i: usize, j: usize, k: usize) -> Result<usize> {
        if i >= 8 {
            return Err(Error::IndexOutOfRange {
                what: "GHZ outcome",
                index: i,
                bound: 8,
            });
        }
        check_jk(j, k)?;
        Ok(self.0[i][j][k - 1] as usize)
    }

    pub fn entries(&self) -> impl Iterator<Item = ((usize, usize, usize), usize)> + '_ {
        (0..8).flat_map(move |i| {
            (0..4).flat_map(move |j| (1..=2).map(move |k| ((i, j, k), self.0[i][j][k - 1] as usize)))
        })
    }
}

/// The resource each swap outcome yields from three singlet pairs (the
/// low-temperature limit below the critical field).
pub fn ideal_resources() -> Result<SwapResult> {
    let singlet = bell_ket(2)?.density();
    swap_pairs(&singlet, &singlet, &singlet)
}

fn build_table(receiver: Receiver) -> Result<CorrectionTable> {
    let cfg = TeleportConfig::default().with_receiver(receiver);
    let ideal = ideal_resources()?;
    let mut table = [[[0u8; 2]; 4]; 8];
    for (i, outcome) in ideal.outcomes.iter().enumerate() {
        let resource = outcome
            .state
            .as_ref()
            .expect("every singlet swap outcome has probability 1/8");
        for j in 0..4 {
            for k in 1..=2 {
                table[i][j][k - 1] = best_correction(resource, j, k, &cfg)? as u8;
            }
        }
    }
    Ok(CorrectionTable(table))
}

/// Static correction table, searched once on the ideal GHZ resources at
/// μ = π/4 and reused for every parameter point and angle.
pub fn correction_table(receiver: Receiver) -> &'static CorrectionTable {
    static FOR_C: OnceLock<CorrectionTable> = OnceLock::new();
    static FOR_B: OnceLock<CorrectionTable> = OnceLock::new();
    let cell = match receiver {
        Receiver::C => &FOR_C,
        Receiver::B => &FOR_B,
    };
    cell.get_or_init(|| build_table(receiver).expect("ideal resources are valid"))
}

/// Correction for receiver C; `k` is 1-based.
pub fn correction_for(i: usize, j: usize, k: usize) -> Result<usize> {
    correction_table(Receiver::C).get(i, j, k)
}

#[derive(Debug, Clone)]
pub struct SimulatedFidelity {
    pub phi: f64,
    /// p_i · ⟨q^{(i)}_{jk}⟩ averaged over inputs; sums to one.
    pub weights: [[[f64; 2]; 4]; 8],
}

/// Dense-simulation fidelity over an already computed swap.
pub fn fidelity_from_swap(swap: &SwapResult, cfg: &TeleportConfig) -> Result<SimulatedFidelity> {
    let table = correction_table(cfg.receiver);
    let mut phi = 0.0;
    let mut weights = [[[0.0; 2]; 4]; 8];
    for (i, outcome) in swap.outcomes.iter().enumerate() {
        let Some(resource) = &outcome.state else {
            continue;
        };
        let p = outcome.probability;
        for j in 0..4 {
            for k in 1..=2 {
                let map = ReceiverMap::new(resource, j, k, cfg)?;
                let sc = pauli(table.get(i, j, k)?)?;
                phi += bloch_average(|input| {
                    let unnormalized = map.unnormalized(bloch_vector(input));
                    let q = unnormalized.trace().re;
                    if q <= ZERO_PROBABILITY {
                        return 0.0;
                    }
                    let rho_c = unnormalized.scale_real(1.0 / q);
                    p * q * corrected_overlap(&rho_c, &sc, input)
                });
                weights[i][j][k - 1] = bloch_average(|input| {
                    p * map.unnormalized(bloch_vector(input)).trace().re
                });
            }
        }
    }
    Ok(SimulatedFidelity { phi, weights })
}

/// Bloch-averaged fidelity through the full swap + teleport simulation.
pub fn fidelity_simulated(p: &ChainParams, cfg: &TeleportConfig) -> Result<f64> {
    Ok(fidelity_from_swap(&swap_all(p)?, cfg)?.phi)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClosedFidelity {
    pub c1: f64,
    pub c2: f64,
    pub phi: f64,
}

/// C₁, C₂ and Φ = C₁ + C₂ cos μ sin μ for three identical thermal chains.
/// At T = 0 the regime-wise limits are used.
pub fn fidelity_closed_form(p: &ChainParams, cfg: &TeleportConfig) -> Result<ClosedFidelity> {
    p.validate()?;
    let (c1, c2) = if p.t == 0.0 {
        let g = p.gamma;
        match p.regime() {
            FieldRegime::Below => (2.0 / 3.0, 2.0 / 3.0),
            FieldRegime::Critical => (0.5, (1.0 + g + g * g + g * g * g) / 12.0),
            FieldRegime::Above => {
                let r = g / p.field_ratio();
                (2.0 / 3.0, 2.0 / 3.0 * r * r * r)
            }
        }
    } else {
        let beta = p.beta();
        let b = p.script_b();
        let m = b.max(p.j.abs());
        let x = p.anisotropy_ratio();
        let (ch_b, sh_b) = scaled_hyperbolic(beta, b, m);
        let (ch_j, sh_j) = scaled_hyperbolic(beta, p.j, m);
        let sum = ch_b + ch_j;
        let c1 = 2.0 * (ch_b * ch_b + ch_b * ch_j + ch_j * ch_j) / (3.0 * sum * sum);
        let c2 = 2.0
            * (sh_j.powi(3)
                + x * sh_j * sh_j * sh_b
                + x * x * sh_j * sh_b * sh_b
                + x.powi(3) * sh_b.powi(3))
            / (3.0 * sum.powi(3));
        (c1, c2)
    };
    Ok(ClosedFidelity {
        c1,
        c2,
        phi: c1 + c2 * cfg.mu.cos() * cfg.mu.sin(),
    })
}

/// LHS − RHS of the nonclassicality condition at μ = π/4, written in the
/// hyperbolic form (scaled by e^{−3βM}). Positive exactly when the resource
/// beats 2/3. Requires T > 0.
pub fn classical_margin(p: &ChainParams) -> f64 {
    let beta = p.beta();
    let b = p.script_b();
    let m = b.max(p.j.abs());
    let g = p.anisotropy_ratio();
    let (ch_b, sh_b) = scaled_hyperbolic(beta, b, m);
    let (ch_j, sh_j) = scaled_hyperbolic(beta, p.j, m);
    let lhs = sh_j.powi(3)
        + g * sh_j * sh_j * sh_b
        + g * g * sh_j * sh_b * sh_b
        + g.powi(3) * sh_b.powi(3);
    let rhs = 2.0 * (ch_j * ch_j * ch_b + ch_j * ch_b * ch_b);
    lhs - rhs
}

#[derive(Debug, Clone)]
pub struct TeleportResult {
    pub c1: f64,
    pub c2: f64,
    pub phi_closed: f64,
    pub phi_simulated: f64,
    pub correction_table: CorrectionTable,
    pub per_outcome_weight: [[[f64; 2]; 4]; 8],
}

/// Both fidelity routes at one parameter point.
pub fn teleport(p: &ChainParams, cfg: &TeleportConfig) -> Result<TeleportResult> {
    let closed = fidelity_closed_form(p, cfg)?;
    let sim = fidelity_from_swap(&swap_all(p)?, cfg)?;
    Ok(TeleportResult {
        c1: closed.c1,
        c2: closed.c2,
        phi_closed: closed.phi,
        phi_simulated: sim.phi,
        correction_table: *correction_table(cfg.receiver),
        per_outcome_weight: sim.weights,
    })
}
