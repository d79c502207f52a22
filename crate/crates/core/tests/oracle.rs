//! Independent cross-checks built on nalgebra and Monte Carlo sampling.

use nalgebra::{DMatrix, Matrix4, SymmetricEigen};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use xyswap_core::qcore::{bloch_average, Ket};
use xyswap_core::xychain::{pair_metrics, thermal_state, ChainParams};

/// H from the Pauli sum, real in the computational basis.
fn hamiltonian(j: f64, gamma: f64, eta: f64) -> Matrix4<f64> {
    let b = eta * j;
    Matrix4::new(
        b, 0.0, 0.0, gamma * j, //
        0.0, 0.0, j, 0.0, //
        0.0, j, 0.0, 0.0, //
        gamma * j, 0.0, 0.0, -b,
    )
}

fn gibbs(j: f64, gamma: f64, eta: f64, t: f64) -> Matrix4<f64> {
    let eig = SymmetricEigen::new(hamiltonian(j, gamma, eta));
    let e_min = eig.eigenvalues.min();
    let w = eig.eigenvalues.map(|e| (-(e - e_min) / t).exp());
    let rho = eig.eigenvectors * Matrix4::from_diagonal(&w) * eig.eigenvectors.transpose();
    rho / w.sum()
}

/// λ's as singular values of Wᵀ(σʸ⊗σʸ)W with ρ = WWᵀ.
fn oracle_concurrence(rho: &Matrix4<f64>) -> f64 {
    let eig = SymmetricEigen::new(*rho);
    let w = DMatrix::from_fn(4, 4, |r, c| eig.eigenvectors[(r, c)] * eig.eigenvalues[c].max(0.0).sqrt());
    let yy = DMatrix::from_row_slice(4, 4, &[
        0.0, 0.0, 0.0, -1.0, //
        0.0, 0.0, 1.0, 0.0, //
        0.0, 1.0, 0.0, 0.0, //
        -1.0, 0.0, 0.0, 0.0,
    ]);
    let tau = w.transpose() * yy * &w;
    let mut s: Vec<f64> = tau.singular_values().iter().copied().collect();
    s.sort_by(|a, b| b.total_cmp(a));
    (s[0] - s[1] - s[2] - s[3]).max(0.0)
}

fn oracle_fef(rho: &Matrix4<f64>) -> f64 {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let bells = [
        [h, 0.0, 0.0, h],
        [0.0, h, h, 0.0],
        [0.0, h, -h, 0.0],
        [h, 0.0, 0.0, -h],
    ];
    bells
        .iter()
        .map(|b| {
            let v = nalgebra::Vector4::from_column_slice(b);
            (v.transpose() * rho * v)[(0, 0)]
        })
        .fold(0.0, f64::max)
}

fn grid() -> impl Iterator<Item = (f64, f64, f64, f64)> {
    let js: [f64; 3] = [1.0, -1.0, 2.5];
    let gammas = [0.0, 0.35, 0.8, 1.0];
    let etas = [0.0, 0.6, 1.0, 1.7];
    let ts = [0.25, 0.6, 1.5, 4.0];
    js.into_iter().flat_map(move |j| {
        gammas.into_iter().flat_map(move |g| {
            etas.into_iter()
                .flat_map(move |e| ts.into_iter().map(move |t| (j, g, e, t * j.abs())))
        })
    })
}

#[test]
fn thermal_state_matches_matrix_exponential() {
    for (j, g, e, t) in grid() {
        let rho = thermal_state(&ChainParams::new(j, g, e, t).unwrap()).unwrap();
        let oracle = gibbs(j, g, e, t);
        for r in 0..4 {
            for c in 0..4 {
                let z = rho.matrix()[(r, c)];
                assert!((z.re - oracle[(r, c)]).abs() < 1e-13, "{j},{g},{e},{t} at ({r},{c})");
                assert!(z.im.abs() < 1e-15);
            }
        }
    }
}

#[test]
fn closed_form_metrics_match_svd_oracle() {
    for (j, g, e, t) in grid() {
        let m = pair_metrics(&ChainParams::new(j, g, e, t).unwrap()).unwrap();
        let oracle = gibbs(j, g, e, t);
        assert!(
            (m.concurrence - oracle_concurrence(&oracle)).abs() < 1e-9,
            "{j},{g},{e},{t}: {} vs {}",
            m.concurrence,
            oracle_concurrence(&oracle)
        );
        assert!((m.fef - oracle_fef(&oracle)).abs() < 1e-12);
    }
}

#[test]
fn bloch_quadrature_matches_monte_carlo() {
    // Uniform sphere sampling: cos θ uniform on [−1, 1].
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let n = 400_000;
    let mc: f64 = (0..n)
        .map(|_| {
            let c: f64 = rng.gen_range(-1.0..1.0);
            let pop = 0.5 * (1.0 + c);
            pop * pop
        })
        .sum::<f64>()
        / n as f64;
    let zero = Ket::basis(2, 0).unwrap();
    let quad = bloch_average(|phi| phi.inner(&zero).norm_sqr().powi(2));
    assert!((quad - 1.0 / 3.0).abs() < 1e-14);
    assert!((mc - quad).abs() < 3e-3, "{mc} vs {quad}");
}
