//! Critical temperatures: where the concurrence vanishes (kind 1), where the
//! fully entangled fraction falls to 1/2 (kind 2) and where the teleportation
//! fidelity at μ = π/4 falls to 2/3 (kind 3).
//!
//! Each threshold is found by a descending scan followed by bisection. The
//! scan ends at T = 0, evaluated through the ground-state limits, so a root
//! squeezed below the smallest scanned temperature is still bracketed.

use std::fmt;

use crate::error::{Error, Result};
use crate::teleport::{fidelity_closed_form, TeleportConfig};
use crate::xychain::{limit_concurrence, limit_fef, pair_metrics, ChainParams};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CriticalKind {
    Concurrence = 1,
    FullyEntangledFraction = 2,
    Fidelity = 3,
}

impl CriticalKind {
    pub fn from_index(k: u8) -> Result<Self> {
        match k {
            1 => Ok(Self::Concurrence),
            2 => Ok(Self::FullyEntangledFraction),
            3 => Ok(Self::Fidelity),
            _ => Err(Error::InvalidParam {
                name: "kind",
                value: k as f64,
                reason: "must be 1, 2 or 3",
            }),
        }
    }

    pub fn index(self) -> u8 {
        self as u8
    }

    /// Signed distance from the threshold; positive means "still useful".
    /// At T = 0 the ground-state limits are used.
    pub fn margin(self, p: &ChainParams) -> Result<f64> {
        let zero = p.t == 0.0;
        Ok(match self {
            Self::Concurrence if zero => limit_concurrence(p),
            Self::Concurrence => pair_metrics(p)?.concurrence_margin(),
            Self::FullyEntangledFraction if zero => limit_fef(p) - 0.5,
            Self::FullyEntangledFraction => pair_metrics(p)?.fef - 0.5,
            Self::Fidelity => fidelity_closed_form(p, &TeleportConfig::default())?.phi - 2.0 / 3.0,
        })
    }
}

impl fmt::Display for CriticalKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.index())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolverConfig {
    /// Upper end of the scan, in units of J.
    pub t_hi: f64,
    /// Scan step, in units of J.
    pub step: f64,
    /// Smallest positive scanned temperature, in units of J.
    pub t_min: f64,
    /// Bisection stops at this bracket width, in units of J.
    pub tol: f64,
    /// How many times T_hi may double when the margin is still positive there.
    pub max_doublings: u32,
}

impl Default for SolverConfig {
    fn default() -> Self {
        Self {
            t_hi: 5.0,
            step: 0.05,
            t_min: 1e-6,
            tol: 1e-8,
            max_doublings: 20,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CriticalResult {
    pub kind: CriticalKind,
    pub gamma: f64,
    pub eta: f64,
    pub t_over_j: f64,
    /// Final root interval, in units of J.
    pub bracket: (f64, f64),
    pub converged: bool,
    /// Sign changes seen by the scan; more than one means reentrance.
    pub crossings: usize,
}

fn check_domain(gamma: f64, eta: f64, j: f64) -> Result<()> {
    if !(j.is_finite() && j > 0.0) {
        return Err(Error::InvalidParam {
            name: "J",
            value: j,
            reason: "must be positive and finite",
        });
    }
    if !(0.0..=1.0).contains(&gamma) {
        return Err(Error::InvalidParam {
            name: "gamma",
            value: gamma,
            reason: "must lie in [0, 1]",
        });
    }
    if !(eta.is_finite() && eta >= 0.0) {
        return Err(Error::InvalidParam {
            name: "eta",
            value: eta,
            reason: "must be non-negative and finite",
        });
    }
    Ok(())
}

fn asymptote_denominator(gamma: f64, eta: f64, j: f64, log_weight: f64) -> Result<f64> {
    check_domain(gamma, eta, j)?;
    if gamma == 0.0 {
        return Err(Error::InvalidParam {
            name: "gamma",
            value: gamma,
            reason: "the large-field asymptote needs gamma > 0",
        });
    }
    let d = log_weight * (eta.ln() - gamma.ln()) + std::f64::consts::LN_2;
    if d <= 0.0 {
        return Err(Error::InvalidParam {
            name: "eta",
            value: eta,
            reason: "too small for the large-field asymptote",
        });
    }
    Ok(eta * j / d)
}

/// ηJ / (ln η − ln γ + ln 2)
pub fn t2_asymptote(gamma: f64, eta: f64, j: f64) -> Result<f64> {
    asymptote_denominator(gamma, eta, j, 1.0)
}

/// ηJ / (3 ln η − 3 ln γ + ln 2)
pub fn t3_asymptote(gamma: f64, eta: f64, j: f64) -> Result<f64> {
    asymptote_denominator(gamma, eta, j, 3.0)
}

/// Largest temperature at which `kind`'s margin changes sign.
pub fn solve(
    kind: CriticalKind,
    gamma: f64,
    eta: f64,
    j: f64,
    cfg: &SolverConfig,
) -> Result<CriticalResult> {
    check_domain(gamma, eta, j)?;
    let base = ChainParams::new(j, gamma, eta, 0.0)?;
    let f = |t: f64| kind.margin(&base.with_temperature(t));
    let result = |t: f64, bracket: (f64, f64), converged: bool, crossings: usize| CriticalResult {
        kind,
        gamma,
        eta,
        t_over_j: t / j,
        bracket: (bracket.0 / j, bracket.1 / j),
        converged,
        crossings,
    };

    let mut t_hi = cfg.t_hi * j;
    if gamma > 0.0 && eta > 2.0 {
        let guess = match kind {
            CriticalKind::Fidelity => t3_asymptote(gamma, eta, j)?,
            _ => t2_asymptote(gamma, eta, j)?,
        };
        t_hi = t_hi.max(2.0 * guess);
    }
    let mut doublings = 0;
    while f(t_hi)? > 0.0 {
        if doublings == cfg.max_doublings {
            log::warn!("kind {kind} at gamma={gamma}, eta={eta}: margin still positive at T={t_hi}");
            return Ok(result(t_hi, (t_hi, t_hi), false, 0));
        }
        t_hi *= 2.0;
        doublings += 1;
    }

    // Descending grid, ending with the T = 0 limit.
    let step = cfg.step * j;
    let t_min = cfg.t_min * j;
    let steps = ((t_hi - t_min) / step).ceil() as usize;
    let mut grid: Vec<f64> = (0..steps).map(|n| t_hi - n as f64 * step).collect();
    grid.push(t_min);
    grid.push(0.0);

    let mut bracket = None;
    let mut crossings = 0;
    let mut prev_t = grid[0];
    let mut prev_positive = false;
    for &t in &grid[1..] {
        let positive = f(t)? > 0.0;
        if positive != prev_positive {
            crossings += 1;
            if bracket.is_none() {
                bracket = Some((t, prev_t));
            }
        }
        prev_t = t;
        prev_positive = positive;
    }
    if crossings > 1 {
        log::warn!("kind {kind} at gamma={gamma}, eta={eta}: {crossings} crossings, keeping the largest root");
    }

    let Some((mut lo, mut hi)) = bracket else {
        return Ok(result(0.0, (0.0, 0.0), true, 0));
    };
    let tol = cfg.tol * j;
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        if f(mid)? > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(result(0.5 * (lo + hi), (lo, hi), true, crossings))
}

pub fn t1_critical(gamma: f64, eta: f64, j: f64) -> Result<CriticalResult> {
    solve(CriticalKind::Concurrence, gamma, eta, j, &SolverConfig::default())
}

pub fn t2_critical(gamma: f64, eta: f64, j: f64) -> Result<CriticalResult> {
    solve(CriticalKind::FullyEntangledFraction, gamma, eta, j, &SolverConfig::default())
}

pub fn t3_critical(gamma: f64, eta: f64, j: f64) -> Result<CriticalResult> {
    solve(CriticalKind::Fidelity, gamma, eta, j, &SolverConfig::default())
}

/// One result per η, in grid order. Rows are solved on scoped threads.
pub fn sweep(kind: CriticalKind, gamma: f64, eta_grid: &[f64], j: f64) -> Result<Vec<CriticalResult>> {
    if eta_grid.windows(2).any(|w| w[0].partial_cmp(&w[1]) != Some(std::cmp::Ordering::Less)) {
        return Err(Error::InvalidParam {
            name: "eta",
            value: f64::NAN,
            reason: "grid must be strictly ascending",
        });
    }
    let cfg = SolverConfig::default();
    let workers = std::thread::available_parallelism().map_or(1, |n| n.get()).min(eta_grid.len().max(1));
    let chunk = eta_grid.len().div_ceil(workers).max(1);
    std::thread::scope(|s| {
        let handles: Vec<_> = eta_grid
            .chunks(chunk)
            .map(|etas| {
                s.spawn(move || {
                    etas.iter()
                        .map(|&eta| solve(kind, gamma, eta, j, &cfg))
                        .collect::<Result<Vec<_>>>()
                })
            })
            .collect();
        let mut rows = Vec::with_capacity(eta_grid.len());
        for h in handles {
            rows.extend(h.join().expect("sweep worker panicked")?);
        }
        Ok(rows)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    const T2_TABLE: [f64; 10] = [
        1.13459, 1.13105, 1.12029, 1.10193, 1.07525, 1.03904, 0.99126, 0.92828, 0.84267, 0.71411,
    ];
    const T3_TABLE: [f64; 10] = [
        0.55508, 0.55093, 0.53825, 0.51631, 0.48371, 0.43810, 0.37605, 0.29473, 0.19890, 0.09950,
    ];

    fn table_grid() -> Vec<f64> {
        (0..10).map(|n| n as f64 / 10.0).collect()
    }

    #[test]
    fn table_values() {
        let t2 = sweep(CriticalKind::FullyEntangledFraction, 0.0, &table_grid(), 1.0).unwrap();
        let t3 = sweep(CriticalKind::Fidelity, 0.0, &table_grid(), 1.0).unwrap();
        for n in 0..10 {
            assert!((t2[n].t_over_j - T2_TABLE[n]).abs() < 1e-4, "t2 row {n}: {}", t2[n].t_over_j);
            assert!((t3[n].t_over_j - T3_TABLE[n]).abs() < 1e-4, "t3 row {n}: {}", t3[n].t_over_j);
            assert!(t3[n].t_over_j < t2[n].t_over_j);
        }
    }

    #[test]
    fn concurrence_plateau_at_zero_anisotropy() {
        let base = t1_critical(0.0, 0.0, 1.0).unwrap().t_over_j;
        assert!((base - 1.13459).abs() < 1e-4);
        for eta in [0.3, 0.7, 0.8, 2.0] {
            assert!((t1_critical(0.0, eta, 1.0).unwrap().t_over_j - base).abs() < 1e-6);
        }
    }

    #[test]
    fn unattainable_regimes_return_zero() {
        let r = t2_critical(0.0, 1.2, 1.0).unwrap();
        assert_eq!(r.t_over_j, 0.0);
        assert!(r.converged);
        assert_eq!(t3_critical(0.6, 0.8, 1.0).unwrap().t_over_j, 0.0);
        assert_eq!(t3_critical(0.0, 1.0, 1.0).unwrap().t_over_j, 0.0);
    }

    #[test]
    fn root_changes_sign_across_bracket() {
        for kind in [1, 2, 3] {
            let kind = CriticalKind::from_index(kind).unwrap();
            for (gamma, eta) in [(0.0, 0.4), (0.3, 2.0), (1.0, 1.5)] {
                let r = solve(kind, gamma, eta, 1.0, &SolverConfig::default()).unwrap();
                assert!(r.converged && r.t_over_j > 0.0);
                assert!(r.bracket.1 - r.bracket.0 <= 1e-7);
                let p = ChainParams::new(1.0, gamma, eta, 0.0).unwrap();
                let at = |t: f64| kind.margin(&p.with_temperature(t)).unwrap();
                assert!(at(r.bracket.0) > 0.0 && at(r.bracket.1) <= 0.0);
                assert!(at(r.t_over_j).abs() < 1e-6);
            }
        }
    }

    #[test]
    fn scales_with_coupling() {
        let one = t3_critical(0.3, 0.5, 1.0).unwrap().t_over_j;
        let two = t3_critical(0.3, 0.5, 2.0).unwrap().t_over_j;
        assert!((one - two).abs() < 1e-7);
    }

    #[test]
    fn asymptotes() {
        let g: f64 = 0.5;
        let eta = 40.0;
        let t2 = t2_asymptote(g, eta, 1.0).unwrap();
        assert!((t2 - eta / (eta.ln() - g.ln() + 2f64.ln())).abs() < 1e-12);
        assert!(t3_asymptote(g, eta, 1.0).unwrap() < t2);
        assert!(t2_asymptote(0.0, eta, 1.0).is_err());
        let r = t2_critical(1.0, 50.0, 1.0).unwrap();
        let ratio = r.t_over_j / t2_asymptote(1.0, 50.0, 1.0).unwrap();
        assert!((0.9..=1.1).contains(&ratio), "{ratio}");
    }

    #[test]
    fn reports_non_convergence() {
        let cfg = SolverConfig {
            t_hi: 0.1,
            max_doublings: 0,
            ..SolverConfig::default()
        };
        let r = solve(CriticalKind::FullyEntangledFraction, 0.0, 0.0, 1.0, &cfg).unwrap();
        assert!(!r.converged);
        let cfg = SolverConfig { max_doublings: 8, ..cfg };
        assert!(solve(CriticalKind::FullyEntangledFraction, 0.0, 0.0, 1.0, &cfg).unwrap().converged);
    }

    #[test]
    fn rejects_bad_domain_and_grid() {
        assert!(t1_critical(-0.1, 0.5, 1.0).is_err());
        assert!(t1_critical(0.1, 0.5, -1.0).is_err());
        assert!(CriticalKind::from_index(4).is_err());
        assert!(sweep(CriticalKind::Fidelity, 0.0, &[0.2, 0.1], 1.0).is_err());
        assert!(sweep(CriticalKind::Fidelity, 0.0, &[], 1.0).unwrap().is_empty());
    }
}
