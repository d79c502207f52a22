//! Kets, density operators, projectors and the fixed bases used by the
//! swap and teleport stages.
//!
//! Basis order: |0…0⟩ first, binary ascending, leftmost qubit most
//! significant. So `|A₁A₂A₃⟩` labels read directly as basis indices.

use std::f64::consts::{FRAC_1_SQRT_2, PI};

use num_complex::Complex64;

use super::eigen::hermitian_eigen;
use super::matrix::{CMatrix, ONE, ZERO};
use crate::error::{Error, Result};

const KET_NORM_TOL: f64 = 1e-12;
pub const HERMITIAN_TOL: f64 = 1e-10;
pub const TRACE_TOL: f64 = 1e-10;
pub const EIGEN_FLOOR: f64 = -1e-9;

/// Number of qubits for a register of dimension `dim`.
pub fn qubit_count(dim: usize) -> Result<usize> {
    if dim < 2 || !dim.is_power_of_two() {
        return Err(Error::BadDimension(dim));
    }
    Ok(dim.trailing_zeros() as usize)
}

/// Kronecker product with the left operand as the most significant block.
pub trait Tensor: Sized {
    fn tensor(&self, rhs: &Self) -> Self;
}

pub fn tensor<T: Tensor>(a: &T, b: &T) -> T {
    a.tensor(b)
}

#[derive(Clone, Debug, PartialEq)]
pub struct Ket {
    amps: Vec<Complex64>,
}

impl Ket {
    pub fn new(amps: Vec<Complex64>) -> Result<Self> {
        qubit_count(amps.len())?;
        let norm: f64 = amps.iter().map(|a| a.norm_sqr()).sum();
        if (norm - 1.0).abs() > KET_NORM_TOL {
            return Err(Error::NotNormalized(norm));
        }
        Ok(Self { amps })
    }

    /// Normalizes before validating; rejects the zero vector.
    pub fn normalized(amps: Vec<Complex64>) -> Result<Self> {
        let norm: f64 = amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        if norm == 0.0 {
            return Err(Error::NotNormalized(0.0));
        }
        Self::new(amps.into_iter().map(|a| a / norm).collect())
    }

    pub fn from_real(amps: &[f64]) -> Result<Self> {
        Self::new(amps.iter().map(|&x| Complex64::new(x, 0.0)).collect())
    }

    pub fn basis(dim: usize, index: usize) -> Result<Self> {
        qubit_count(dim)?;
        if index >= dim {
            return Err(Error::IndexOutOfRange {
                what: "basis",
                index,
                bound: dim,
            });
        }
        let mut amps = vec![ZERO; dim];
        amps[index] = ONE;
        Ok(Self { amps })
    }

    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    pub fn qubits(&self) -> usize {
        self.amps.len().trailing_zeros() as usize
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    /// ⟨self|other⟩
    pub fn inner(&self, other: &Ket) -> Complex64 {
        self.amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    pub fn density(&self) -> DensityOp {
        DensityOp::from_matrix_unchecked(CMatrix::outer(&self.amps, &self.amps))
    }

    pub fn projector(&self) -> Projector {
        Projector {
            m: CMatrix::outer(&self.amps, &self.amps),
        }
    }
}

impl Tensor for Ket {
    fn tensor(&self, rhs: &Self) -> Self {
        let mut amps = Vec::with_capacity(self.dim() * rhs.dim());
        for a in &self.amps {
            for b in &rhs.amps {
                amps.push(a * b);
            }
        }
        Self { amps }
    }
}

/// Hermitian, unit-trace, positive-semidefinite operator on n qubits.
#[derive(Clone, Debug, PartialEq)]
pub struct DensityOp {
    m: CMatrix,
}

impl DensityOp {
    /// Validates every invariant, including the spectrum.
    pub fn new(m: CMatrix) -> Result<Self> {
        let rho = Self { m };
        rho.validate()?;
        Ok(rho)
    }

    /// For matrices produced by operations that preserve validity by
    /// construction (products, mixtures, renormalized projections).
    pub(crate) fn from_matrix_unchecked(m: CMatrix) -> Self {
        Self { m }
    }

    pub fn maximally_mixed(qubits: usize) -> Self {
        let dim = 1usize << qubits;
        Self {
            m: CMatrix::identity(dim).scale_real(1.0 / dim as f64),
        }
    }

    /// Σ wᵢ |kᵢ⟩⟨kᵢ|; weights must be non-negative and sum to one.
    pub fn from_ensemble(weights: &[f64], kets: &[Ket]) -> Result<Self> {
        assert_eq!(weights.len(), kets.len());
        let dim = kets.first().map(Ket::dim).ok_or(Error::BadDimension(0))?;
        let mut m = CMatrix::zeros(dim);
        for (w, k) in weights.iter().zip(kets) {
            if k.dim() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    got: k.dim(),
                });
            }
            m = &m + &CMatrix::outer(k.amplitudes(), k.amplitudes()).scale_real(*w);
        }
        Self::new(m)
    }

    pub fn validate(&self) -> Result<()> {
        qubit_count(self.m.dim())?;
        let herm = self.m.hermiticity_defect();
        if herm > HERMITIAN_TOL {
            return Err(Error::InvalidState(format!(
                "hermiticity defect {herm:e}"
            )));
        }
        let tr = self.m.trace();
        if (tr.re - 1.0).abs() > TRACE_TOL || tr.im.abs() > TRACE_TOL {
            return Err(Error::InvalidState(format!("trace {tr}")));
        }
        let min = self.eigenvalues()?[0];
        if min < EIGEN_FLOOR {
            return Err(Error::InvalidState(format!(
                "negative eigenvalue {min:e}"
            )));
        }
        Ok(())
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.m
    }

    pub fn into_matrix(self) -> CMatrix {
        self.m
    }

    pub fn dim(&self) -> usize {
        self.m.dim()
    }

    pub fn qubits(&self) -> usize {
        self.m.dim().trailing_zeros() as usize
    }

    /// Ascending.
    pub fn eigenvalues(&self) -> Result<Vec<f64>> {
        Ok(hermitian_eigen(&self.m)?.values)
    }

    pub fn purity(&self) -> f64 {
        self.m
            .as_slice()
            .iter()
            .map(|z| z.norm_sqr())
            .sum()
    }

    /// ⟨ψ|ρ|ψ⟩
    pub fn overlap(&self, ket: &Ket) -> f64 {
        self.m.expectation(ket.amplitudes()).re
    }

    /// U ρ U†
    pub fn conjugate_by(&self, u: &CMatrix) -> Self {
        Self {
            m: u.matmul(&self.m).matmul(&u.adjoint()),
        }
    }
}

impl Tensor for DensityOp {
    fn tensor(&self, rhs: &Self) -> Self {
        Self {
            m: self.m.kron(&rhs.m),
        }
    }
}

/// Orthogonal projector (Hermitian and idempotent).
#[derive(Clone, Debug, PartialEq)]
pub struct Projector {
    m: CMatrix,
}

impl Projector {
    pub fn new(m: CMatrix) -> Result<Self> {
        qubit_count(m.dim())?;
        if m.hermiticity_defect() > HERMITIAN_TOL {
            return Err(Error::InvalidProjector("not Hermitian".into()));
        }
        let defect = m.matmul(&m).max_abs_diff(&m);
        if defect > 1e-10 {
            return Err(Error::InvalidProjector(format!(
                "P² ≠ P (defect {defect:e})"
            )));
        }
        let tr = m.trace().re;
        if (tr - tr.round()).abs() > 1e-9 {
            return Err(Error::InvalidProjector(format!("non-integer trace {tr}")));
        }
        Ok(Self { m })
    }

    pub fn identity(qubits: usize) -> Self {
        Self {
            m: CMatrix::identity(1 << qubits),
        }
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.m
    }

    pub fn dim(&self) -> usize {
        self.m.dim()
    }

    pub fn qubits(&self) -> usize {
        self.m.dim().trailing_zeros() as usize
    }

    pub fn rank(&self) -> usize {
        self.m.trace().re.round() as usize
    }
}

impl Tensor for Projector {
    fn tensor(&self, rhs: &Self) -> Self {
        Self {
            m: self.m.kron(&rhs.m),
        }
    }
}

/// σ⁰ = I, σ¹ = X, σ² = Y, σ³ = Z.
pub fn pauli(i: usize) -> Result<CMatrix> {
    let c = |re: f64, im: f64| Complex64::new(re, im);
    let m = match i {
        0 => [c(1., 0.), c(0., 0.), c(0., 0.), c(1., 0.)],
        1 => [c(0., 0.), c(1., 0.), c(1., 0.), c(0., 0.)],
        2 => [c(0., 0.), c(0., -1.), c(0., 1.), c(0., 0.)],
        3 => [c(1., 0.), c(0., 0.), c(0., 0.), c(-1., 0.)],
        _ => {
            return Err(Error::IndexOutOfRange {
                what: "Pauli",
                index: i,
                bound: 4,
            })
        }
    };
    Ok(CMatrix::from_rows(&[m[..2].to_vec(), m[2..].to_vec()]))
}

/// Bell basis: Ψ⁰ = (|00⟩+|11⟩)/√2, Ψ¹ = (|01⟩+|10⟩)/√2,
/// Ψ² = (|01⟩−|10⟩)/√2, Ψ³ = (|00⟩−|11⟩)/√2.
pub fn bell_ket(i: usize) -> Result<Ket> {
    let h = FRAC_1_SQRT_2;
    let amps = match i {
        0 => [h, 0.0, 0.0, h],
        1 => [0.0, h, h, 0.0],
        2 => [0.0, h, -h, 0.0],
        3 => [h, 0.0, 0.0, -h],
        _ => {
            return Err(Error::IndexOutOfRange {
                what: "Bell",
                index: i,
                bound: 4,
            })
        }
    };
    Ket::from_real(&amps)
}

/// GHZ basis: for i < 4 the ket is (|i⟩ + |7−i⟩)/√2; for i ≥ 4 it is
/// (|7−i⟩ − |i⟩)/√2, which reproduces the listing
/// (|000⟩±|111⟩, |001⟩±|110⟩, |010⟩±|101⟩, |011⟩±|100⟩) with the
/// "+" members first and the "−" members in reverse order.
pub fn ghz_ket(i: usize) -> Result<Ket> {
    if i >= 8 {
        return Err(Error::IndexOutOfRange {
            what: "GHZ",
            index: i,
            bound: 8,
        });
    }
    let h = FRAC_1_SQRT_2;
    let mut amps = [0.0; 8];
    if i < 4 {
        amps[i] = h;
        amps[7 - i] = h;
    } else {
        amps[7 - i] = h;
        amps[i] = -h;
    }
    Ket::from_real(&amps)
}

/// cos(θ/2)|0⟩ + e^{iφ} sin(θ/2)|1⟩, with θ folded into [0, π] and φ into
/// [0, 2π).
pub fn bloch_ket(theta: f64, phi: f64) -> Ket {
    let (theta, phi) = reduce_angles(theta, phi);
    let a = Complex64::new((theta / 2.0).cos(), 0.0);
    let b = Complex64::from_polar((theta / 2.0).sin(), phi);
    Ket { amps: vec![a, b] }
}

fn reduce_angles(theta: f64, phi: f64) -> (f64, f64) {
    let two_pi = 2.0 * PI;
    let mut theta = theta.rem_euclid(two_pi);
    let mut phi = phi;
    if theta > PI {
        theta = two_pi - theta;
        phi += PI;
    }
    (theta, phi.rem_euclid(two_pi))
}
