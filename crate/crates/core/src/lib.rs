//! Thermal entanglement of two-qubit Heisenberg XY chains, GHZ-basis
//! entanglement swapping of three such chains, and the conditional
//! teleportation fidelity of the resulting three-qubit resource.
//!
//! Module map:
//! - [`qcore`]: dense complex algebra, states, partial trace, measurement,
//!   generic concurrence / Bell-fraction oracles, Bloch-sphere quadrature.
//! - [`xychain`]: the XY Hamiltonian, its thermal and ground states, closed
//!   form concurrence and fully entangled fraction.
//! - [`swapnet`]: three chains measured in the GHZ basis.
//! - [`teleport`]: conditional teleportation over each swapped resource.
//! - [`critical`]: critical temperatures and parameter sweeps.
//! - [`cli`]: the `xyswap` command line.

pub mod cli;
pub mod critical;
pub mod error;
pub mod qcore;
pub mod swapnet;
pub mod teleport;
pub mod xychain;

pub use error::{Error, Result};
