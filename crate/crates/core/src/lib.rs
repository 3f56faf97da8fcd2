//! Simulation core for dangling-bond (DB) charge qubits on a hydrogen-terminated
//! Si(100) surface.
//!
//! A DB pair sharing one excess electron is a charge qubit: the electron on the
//! left site is `|0>`, on the right site `|1>`. This crate models such devices
//! at several levels that can be cross-checked against each other:
//!
//! - [`well1d`]: a 1D effective double-well potential for one pair, with a
//!   finite-difference bound-state solver and a WKB tunnel-splitting estimate.
//! - [`hubbard`]: exact diagonalization of the extended Hubbard Hamiltonian on
//!   small site layouts, plus projection onto the charge-qubit subspace.
//! - [`qubit`]: direct construction of the N-qubit Hamiltonian
//!   `kappa*I + sum_i [T X_i + (dV_i/2) Z_i] + sum_{j<i} c_zz Z_i Z_j`.
//! - [`dynamics`]: unitary and Lindblad time evolution under piecewise-constant
//!   pulse schedules, plus projective Z measurement.
//! - [`decoherence`]: LA-phonon deformation-potential relaxation rate and the
//!   deterministic lattice-relaxation bias drift.
//! - [`gates`]: pulse synthesis for X/Rz/CPHASE-type gates, gate fidelities,
//!   and scalar pulse-duration optimization.
//!
//! Unit conventions are fixed crate-wide (see [`units`]): energies in eV,
//! lengths in angstrom, times in fs. Rates in Hz appear only at API
//! boundaries, via explicit conversions.

pub mod config;
pub mod decoherence;
pub mod dynamics;
pub mod gates;
pub mod hubbard;
pub mod layout;
pub mod linalg;
pub mod material;
pub mod qubit;
pub mod units;
pub mod well1d;

pub use config::SimulationConfig;
pub use layout::DeviceLayout;
pub use material::MaterialParams;
