//! Deterministic averages over the Bloch sphere.
//!
//! Product rule: Gauss–Legendre in cos ϑ times a uniform trapezoid in φ. Both
//! factors are exact for the low-degree polynomials in the Bloch vector that
//! show up in fidelity integrands.

use std::f64::consts::PI;
use std::sync::OnceLock;

use super::states::{bloch_ket, Ket};

pub const POLAR_NODES: usize = 16;
pub const AZIMUTH_NODES: usize = 32;

/// Nodes and weights of the n-point Gauss–Legendre rule on [-1, 1].
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    for i in 0..n.div_ceil(2) {
        // Tricomi initial guess, then Newton on P_n.
        let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (p, d) = legendre_with_derivative(n, x);
            dp = d;
            let dx = p / d;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let (_, d) = legendre_with_derivative(n, x);
        if d != 0.0 {
            dp = d;
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    (nodes, weights)
}

fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let (mut p0, mut p1) = (1.0, x);
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

/// One quadrature point on the sphere.
#[derive(Debug, Clone)]
pub struct BlochNode {
    pub theta: f64,
    pub phi: f64,
    /// Unit Bloch vector (sinϑ cosφ, sinϑ sinφ, cosϑ).
    pub bloch: [f64; 3],
    pub ket: Ket,
    /// Weights sum to one.
    pub weight: f64,
}

pub fn bloch_nodes() -> &'static [BlochNode] {
    static NODES: OnceLock<Vec<BlochNode>> = OnceLock::new();
    NODES.get_or_init(|| {
        let (xs, ws) = gauss_legendre(POLAR_NODES);
        let mut nodes = Vec::with_capacity(POLAR_NODES * AZIMUTH_NODES);
        for (x, w) in xs.iter().zip(&ws) {
            let theta = x.acos();
            let s = (1.0 - x * x).sqrt();
            for k in 0..AZIMUTH_NODES {
                let phi = 2.0 * PI * k as f64 / AZIMUTH_NODES as f64;
                nodes.push(BlochNode {
                    theta,
                    phi,
                    bloch: [s * phi.cos(), s * phi.sin(), *x],
                    ket: bloch_ket(theta, phi),
                    weight: w / 2.0 / AZIMUTH_NODES as f64,
                });
            }
        }
        nodes
    })
}

/// (1/4π)∫ f sinϑ dϑ dφ over pure qubit states.
pub fn bloch_average(f: impl Fn(&Ket) -> f64) -> f64 {
    bloch_nodes().iter().map(|n| n.weight * f(&n.ket)).sum()
}
