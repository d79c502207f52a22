//! The two-qubit Heisenberg XY chain in a transverse field:
//!
//! H = ½(1+γ)J σ¹σ¹ + ½(1−γ)J σ²σ² + ½B_m (σ³⊗I + I⊗σ³),  B_m = ηJ.
//!
//! Spectrum {ℬ, J, −J, −ℬ} with ℬ = √(η²+γ²)|J|; thermal states are built
//! from the analytic eigenpairs with log-domain Boltzmann weights so that
//! β up to ~10⁴ stays finite.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::qcore::{
    bell_fraction, pauli, wootters_lambdas, CMatrix, DensityOp, Ket,
};

/// Tolerance on η² + γ² − 1 when classifying the zero-temperature phase.
pub const PHASE_TIE_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChainParams {
    /// Exchange coupling J (energy units).
    pub j: f64,
    /// Anisotropy γ ∈ [−1, 1].
    pub gamma: f64,
    /// Field ratio η, B_m = ηJ.
    pub eta: f64,
    /// Temperature (k = 1). Zero selects the ground state; +∞ means β = 0.
    pub t: f64,
}

/// Where η² + γ² sits relative to the quantum critical line.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FieldRegime {
    Below,
    Critical,
    Above,
}

impl ChainParams {
    pub fn new(j: f64, gamma: f64, eta: f64, t: f64) -> Result<Self> {
        let p = Self { j, gamma, eta, t };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        if !self.j.is_finite() {
            return Err(Error::InvalidParam {
                name: "J",
                value: self.j,
                reason: "must be finite",
            });
        }
        if !(-1.0..=1.0).contains(&self.gamma) {
            return Err(Error::InvalidParam {
                name: "gamma",
                value: self.gamma,
                reason: "must lie in [-1, 1]",
            });
        }
        if !self.eta.is_finite() {
            return Err(Error::InvalidParam {
                name: "eta",
                value: self.eta,
                reason: "must be finite",
            });
        }
        if self.t.is_nan() || self.t < 0.0 {
            return Err(Error::InvalidParam {
                name: "T",
                value: self.t,
                reason: "must be >= 0",
            });
        }
        Ok(())
    }

    pub fn with_temperature(self, t: f64) -> Self {
        Self { t, ..self }
    }

    /// B_m = ηJ
    pub fn field(&self) -> f64 {
        self.eta * self.j
    }

    /// √(η² + γ²)
    pub fn field_ratio(&self) -> f64 {
        self.eta.hypot(self.gamma)
    }

    /// ℬ = √(η² + γ²)|J|, the positive branch energy for either sign of J.
    pub fn script_b(&self) -> f64 {
        self.field_ratio() * self.j.abs()
    }

    /// γJ/ℬ, with the removable 0/0 at ℬ = 0 taken as 0.
    pub fn anisotropy_ratio(&self) -> f64 {
        let b = self.script_b();
        if b == 0.0 {
            0.0
        } else {
            self.gamma * self.j / b
        }
    }

    /// 1/T; infinite at T = 0, which callers route to the ground state.
    pub fn beta(&self) -> f64 {
        1.0 / self.t
    }

    pub fn regime(&self) -> FieldRegime {
        let d = self.eta * self.eta + self.gamma * self.gamma - 1.0;
        if d.abs() <= PHASE_TIE_TOL {
            FieldRegime::Critical
        } else if d < 0.0 {
            FieldRegime::Below
        } else {
            FieldRegime::Above
        }
    }
}

pub fn hamiltonian(p: &ChainParams) -> CMatrix {
    let s1 = pauli(1).expect("valid index");
    let s2 = pauli(2).expect("valid index");
    let s3 = pauli(3).expect("valid index");
    let id = CMatrix::identity(2);
    let xx = s1.kron(&s1).scale_real(0.5 * (1.0 + p.gamma) * p.j);
    let yy = s2.kron(&s2).scale_real(0.5 * (1.0 - p.gamma) * p.j);
    let z = (&s3.kron(&id) + &id.kron(&s3)).scale_real(0.5 * p.field());
    &(&xx + &yy) + &z
}

#[derive(Debug, Clone)]
pub struct SpectrumXY {
    /// (ℬ, J, −J, −ℬ)
    pub energies: [f64; 4],
    /// Φ⁰..Φ³ matching `energies`.
    pub eigenkets: [Ket; 4],
    /// ln Z at the parameter temperature; `None` at T = 0.
    pub log_partition: Option<f64>,
}

impl SpectrumXY {
    /// Normalized Boltzmann weights, computed relative to the largest
    /// exponent. Requires T > 0.
    pub fn boltzmann_weights(&self, beta: f64) -> [f64; 4] {
        let exps = self.energies.map(|e| if beta == 0.0 { 0.0 } else { -beta * e });
        let max = exps.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        let raw = exps.map(|x| (x - max).exp());
        let total: f64 = raw.iter().sum();
        raw.map(|w| w / total)
    }
}

fn ket2(a: f64, b: f64) -> Ket {
    // a|00⟩ + b|11⟩, normalized
    Ket::normalized(vec![
        Complex64::new(a, 0.0),
        Complex64::new(0.0, 0.0),
        Complex64::new(0.0, 0.0),
        Complex64::new(b, 0.0),
    ])
    .expect("nonzero by construction")
}

pub fn spectrum(p: &ChainParams) -> SpectrumXY {
    let b = p.script_b();
    let bm = p.field();
    let gj = p.gamma * p.j;
    let h = std::f64::consts::FRAC_1_SQRT_2;

    let (phi0, phi3) = if gj == 0.0 {
        // |00⟩ has energy B_m, |11⟩ has −B_m.
        if bm >= 0.0 {
            (ket2(1.0, 0.0), ket2(0.0, 1.0))
        } else {
            (ket2(0.0, 1.0), ket2(1.0, 0.0))
        }
    } else {
        // Φ⁰ ∝ (ℬ+B_m)|00⟩ + γJ|11⟩,  Φ³ ∝ (ℬ−B_m)|00⟩ − γJ|11⟩.
        // One of ℬ±B_m cancels; use (ℬ+B_m)(ℬ−B_m) = γ²J² for it.
        let (plus, minus) = if bm >= 0.0 {
            (b + bm, gj * gj / (b + bm))
        } else {
            (gj * gj / (b - bm), b - bm)
        };
        (ket2(plus, gj), ket2(minus, -gj))
    };
    let phi1 = Ket::from_real(&[0.0, h, h, 0.0]).expect("unit norm");
    let phi2 = Ket::from_real(&[0.0, h, -h, 0.0]).expect("unit norm");

    let energies = [b, p.j, -p.j, -b];
    let log_partition = if p.t > 0.0 {
        let beta = p.beta();
        let exps = energies.map(|e| -beta * e);
        let max = exps.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        Some(max + exps.iter().map(|x| (x - max).exp()).sum::<f64>().ln())
    } else {
        None
    };

    SpectrumXY {
        energies,
        eigenkets: [phi0, phi1, phi2, phi3],
        log_partition,
    }
}

/// Gibbs state e^{−βH}/Z for T > 0.
pub fn thermal_state(p: &ChainParams) -> Result<DensityOp> {
    p.validate()?;
    if p.t <= 0.0 {
        return Err(Error::InvalidParam {
            name: "T",
            value: p.t,
            reason: "thermal state needs T > 0; use the ground state at T = 0",
        });
    }
    let spec = spectrum(p);
    let w = spec.boltzmann_weights(p.beta());
    DensityOp::from_ensemble(&w, &spec.eigenkets)
}

/// Zero-temperature limit of the Gibbs state: the equal mixture over the
/// lowest-energy eigenspace.
pub fn ground_state(p: &ChainParams) -> Result<DensityOp> {
    p.validate()?;
    if p.j == 0.0 {
        return Ok(DensityOp::maximally_mixed(2));
    }
    let spec = spectrum(p);
    // Φ² (−J) for antiferromagnetic chains, Φ¹ (J) for ferromagnetic ones.
    let exchange = if p.j > 0.0 { 2 } else { 1 };
    let members: Vec<usize> = match p.regime() {
        FieldRegime::Below => vec![exchange],
        FieldRegime::Critical => vec![exchange, 3],
        FieldRegime::Above => vec![3],
    };
    let w = 1.0 / members.len() as f64;
    let kets: Vec<Ket> = members.iter().map(|&i| spec.eigenkets[i].clone()).collect();
    DensityOp::from_ensemble(&vec![w; kets.len()], &kets)
}

/// Thermal state for T > 0, ground state at T = 0.
pub fn chain_state(p: &ChainParams) -> Result<DensityOp> {
    if p.t == 0.0 {
        ground_state(p)
    } else {
        thermal_state(p)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PairMetrics {
    /// Descending.
    pub lambdas: [f64; 4],
    pub concurrence: f64,
    /// Fully entangled fraction (max overlap with the four Bell kets).
    pub fef: f64,
}

impl PairMetrics {
    /// λ₁ − λ₂ − λ₃ − λ₄ without the clamp at zero.
    pub fn concurrence_margin(&self) -> f64 {
        let l = &self.lambdas;
        l[0] - l[1] - l[2] - l[3]
    }

    fn from_lambdas(mut lambdas: [f64; 4], fef: f64) -> Self {
        lambdas.sort_by(|a, b| b.total_cmp(a));
        let margin = lambdas[0] - lambdas[1] - lambdas[2] - lambdas[3];
        Self {
            lambdas,
            concurrence: margin.clamp(0.0, 1.0),
            fef,
        }
    }
}

/// cosh(βx)·e^{−βm} and sinh(βx)·e^{−βm} for |x| ≤ m, free of overflow.
pub(crate) fn scaled_hyperbolic(beta: f64, x: f64, m: f64) -> (f64, f64) {
    if beta == 0.0 {
        return (1.0, 0.0);
    }
    let up = (beta * (x - m)).exp();
    let down = (-beta * (x + m)).exp();
    (0.5 * (up + down), 0.5 * (up - down))
}

/// Closed-form λ's, concurrence and fully entangled fraction. T = 0 falls
/// back to the generic oracles on the ground state.
pub fn pair_metrics(p: &ChainParams) -> Result<PairMetrics> {
    p.validate()?;
    if p.t == 0.0 {
        let rho = ground_state(p)?;
        let lambdas = wootters_lambdas(&rho)?;
        return Ok(PairMetrics::from_lambdas(lambdas, bell_fraction(&rho)?));
    }
    let beta = p.beta();
    let b = p.script_b();
    let m = b.max(p.j.abs());
    let x = p.anisotropy_ratio();

    let (ch_b, sh_b) = scaled_hyperbolic(beta, b, m);
    let (ch_j, _) = scaled_hyperbolic(beta, p.j, m);
    let z = 2.0 * ch_b + 2.0 * ch_j;
    let up = if beta == 0.0 { 1.0 } else { (beta * (p.j - m)).exp() };
    let down = if beta == 0.0 { 1.0 } else { (beta * (-p.j - m)).exp() };

    let lambda1 = up / z;
    let lambda2 = down / z;
    // λ₃,₄ = (1/Z)√(1 + 2x²sh² ± 2x sh √(1 + x²sh²)); their product is 1/Z²,
    // which gives the smaller root without cancellation.
    let unit = if beta == 0.0 { 1.0 } else { (-2.0 * beta * m).exp() };
    let xs = x * sh_b;
    let inner = (unit + xs * xs).sqrt();
    let big = (unit + 2.0 * xs * xs + 2.0 * xs.abs() * inner).sqrt() / z;
    let small = if big > 0.0 { unit / (z * z * big) } else { 0.0 };
    let (lambda3, lambda4) = if xs >= 0.0 { (big, small) } else { (small, big) };

    // Bell overlaps: Ψ² → e^{βJ}/Z, Ψ¹ → e^{−βJ}/Z, Ψ³/Ψ⁰ → (cosh βℬ ± x sinh βℬ)/Z.
    let fef = [up, down, ch_b + x * sh_b, ch_b - x * sh_b]
        .into_iter()
        .fold(f64::NEG_INFINITY, f64::max)
        / z;

    Ok(PairMetrics::from_lambdas(
        [lambda1, lambda2, lambda3, lambda4],
        fef.clamp(0.0, 1.0),
    ))
}

/// T → 0 limit of the concurrence on the antiferromagnetic domain
/// (J > 0, γ ≥ 0).
pub fn limit_concurrence(p: &ChainParams) -> f64 {
    match p.regime() {
        FieldRegime::Below => 1.0,
        FieldRegime::Critical => 0.5 * (1.0 - p.gamma),
        FieldRegime::Above => p.gamma / p.field_ratio(),
    }
}

/// T → 0 limit of the fully entangled fraction (J > 0, γ ≥ 0).
pub fn limit_fef(p: &ChainParams) -> f64 {
    match p.regime() {
        FieldRegime::Below => 1.0,
        FieldRegime::Critical => 0.5,
        FieldRegime::Above => 0.5 * (1.0 + p.gamma / p.field_ratio()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qcore::{bell_ket, wootters_concurrence};

    fn params(gamma: f64, eta: f64, t: f64) -> ChainParams {
        ChainParams::new(1.0, gamma, eta, t).unwrap()
    }

    #[test]
    fn hamiltonian_xx_model_is_pure_exchange() {
        // Expanding by hand: ½(XX + YY) = |01⟩⟨10| + |10⟩⟨01|.
        let h = hamiltonian(&params(0.0, 0.0, 1.0));
        let mut expect = CMatrix::zeros(4);
        expect[(1, 2)] = Complex64::new(1.0, 0.0);
        expect[(2, 1)] = Complex64::new(1.0, 0.0);
        assert!(h.max_abs_diff(&expect) < 1e-15);
    }

    #[test]
    fn hamiltonian_ising_limit() {
        // γ = 1 leaves J σ¹σ¹, whose ⟨00|·|11⟩ element is J.
        let h = hamiltonian(&params(1.0, 0.0, 1.0));
        assert!((h[(0, 3)].re - 1.0).abs() < 1e-15);
        assert!((h[(1, 2)].re - 1.0).abs() < 1e-15);
    }

    #[test]
    fn spectrum_residuals_cover_special_branches() {
        for &(j, g, e) in &[
            (1.0, 0.3, 0.7),
            (1.0, 0.0, 0.5),
            (1.0, 0.0, 0.0),
            (1.0, 0.5, 0.0),
            (-1.3, 0.4, 2.0),
            (0.7, -0.8, -1.5),
            (1.0, 0.0, -0.4),
            (2.0, 1e-9, 3.0),
        ] {
            let p = ChainParams::new(j, g, e, 1.0).unwrap();
            let h = hamiltonian(&p);
            let s = spectrum(&p);
            for (k, e) in s.eigenkets.iter().zip(s.energies) {
                let hk = h.apply(k.amplitudes());
                for (a, b) in hk.iter().zip(k.amplitudes()) {
                    assert!((a - b * e).norm() < 1e-10, "params {p:?}");
                }
            }
            for a in 0..4 {
                for b in 0..4 {
                    let ov = s.eigenkets[a].inner(&s.eigenkets[b]).norm();
                    assert!((ov - if a == b { 1.0 } else { 0.0 }).abs() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn degenerate_and_zero_field_eigenkets() {
        let s = spectrum(&params(0.0, 0.5, 1.0));
        assert_eq!(s.eigenkets[0], Ket::basis(4, 0).unwrap());
        assert!((s.energies[0] - 0.5).abs() < 1e-15);
        let s = spectrum(&params(0.7, 0.0, 1.0));
        assert!((s.eigenkets[0].inner(&bell_ket(0).unwrap()).norm() - 1.0).abs() < 1e-15);
        assert!((s.eigenkets[3].inner(&bell_ket(3).unwrap()).norm() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn infinite_temperature_is_maximally_mixed() {
        let rho = thermal_state(&params(0.4, 0.9, f64::INFINITY)).unwrap();
        assert!(rho.matrix().max_abs_diff(DensityOp::maximally_mixed(2).matrix()) < 1e-15);
        let m = pair_metrics(&params(0.4, 0.9, f64::INFINITY)).unwrap();
        for l in m.lambdas {
            assert!((l - 0.25).abs() < 1e-15);
        }
        assert_eq!(m.concurrence, 0.0);
        assert!((m.fef - 0.25).abs() < 1e-15);
    }

    #[test]
    fn low_temperature_xx_chain_is_singlet() {
        let rho = thermal_state(&params(0.0, 0.0, 0.01)).unwrap();
        let w = rho.overlap(&bell_ket(2).unwrap());
        assert!(w > 1.0 - 1e-20);
    }

    #[test]
    fn huge_beta_stays_finite() {
        let m = pair_metrics(&params(0.6, 1.0, 1e-4)).unwrap();
        assert!(m.lambdas.iter().all(|l| l.is_finite()));
        assert!((m.concurrence - 0.6 / 1.36f64.sqrt()).abs() < 1e-12);
        let rho = thermal_state(&params(0.6, 1.0, 1e-4)).unwrap();
        assert!((rho.matrix().trace().re - 1.0).abs() < 1e-12);
    }

    #[test]
    fn thermal_state_rejects_zero_temperature() {
        assert!(thermal_state(&params(0.0, 0.0, 0.0)).is_err());
    }

    #[test]
    fn ground_state_regimes() {
        let a = ground_state(&params(0.3, 0.4, 0.0)).unwrap();
        assert!(a.matrix().max_abs_diff(bell_ket(2).unwrap().density().matrix()) < 1e-15);

        let b = ground_state(&params(0.6, 0.8, 0.0)).unwrap();
        assert!((wootters_concurrence(&b).unwrap() - 0.2).abs() < 1e-12);
        assert!((bell_fraction(&b).unwrap() - 0.5).abs() < 1e-12);

        let c = ground_state(&params(0.6, 1.0, 0.0)).unwrap();
        assert!((wootters_concurrence(&c).unwrap() - 0.6 / 1.36f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn invalid_params_name_the_flag() {
        let err = ChainParams::new(1.0, 1.5, 0.0, 1.0).unwrap_err();
        assert!(matches!(err, Error::InvalidParam { name: "gamma", .. }));
        let err = ChainParams::new(1.0, 0.0, 0.0, -1.0).unwrap_err();
        assert!(matches!(err, Error::InvalidParam { name: "T", .. }));
    }

    #[test]
    fn limits_match_regimes() {
        assert_eq!(limit_concurrence(&params(0.3, 0.4, 0.0)), 1.0);
        assert!((limit_concurrence(&params(0.6, 0.8, 0.0)) - 0.2).abs() < 1e-15);
        assert!((limit_fef(&params(0.6, 1.0, 0.0)) - 0.5 * (1.0 + 0.6 / 1.36f64.sqrt())).abs() < 1e-15);
    }

    /// Two-branch form keyed on √(η²+γ²) vs 1.
    fn keyed_fef(p: &ChainParams) -> f64 {
        let (beta, b) = (p.beta(), p.script_b());
        let z = 2.0 * (beta * b).cosh() + 2.0 * (beta * p.j).cosh();
        if p.field_ratio() <= 1.0 {
            (beta * p.j).exp() / z
        } else {
            ((beta * b).cosh() + p.anisotropy_ratio() * (beta * b).sinh()) / z
        }
    }

    #[test]
    fn keyed_fef_agrees_wherever_it_matters() {
        for gamma in [0.0, 0.4, 1.0] {
            for eta in [0.0, 0.5, 0.9, 1.2, 2.0, 3.0] {
                for t in [0.1, 0.3, 0.7, 1.5, 4.0] {
                    let p = params(gamma, eta, t);
                    let closed = pair_metrics(&p).unwrap().fef;
                    let keyed = keyed_fef(&p);
                    if closed >= 0.5 || p.field_ratio() <= 1.0 {
                        assert!((closed - keyed).abs() < 1e-13, "{p:?}");
                    } else {
                        assert!(keyed <= closed + 1e-15);
                    }
                }
            }
        }
        // Above the critical field at high T the singlet overlap wins.
        let p = params(0.4, 2.0, 4.0);
        assert!(keyed_fef(&p) < pair_metrics(&p).unwrap().fef - 1e-3);
    }
}
