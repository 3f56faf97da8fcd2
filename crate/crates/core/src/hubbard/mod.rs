//! Exact many-body treatment of the extended Hubbard Hamiltonian on small DB
//! layouts, in second quantization, plus projection onto the charge-qubit
//! subspace.
//!
//! Fermion bookkeeping convention: orbitals are ordered site-major with
//! spin-up before spin-down (orbital = 2*site + spin, spin 0 = up). Every
//! creation/annihilation sign derives from this single global order.

mod basis;
mod hamiltonian;
mod projection;

pub use basis::{build_basis, FockBasis, Spin};
pub use hamiltonian::{build_hamiltonian, ground_and_spectrum, HubbardParams, Spectrum};
pub use projection::{project_to_qubits, EffectiveQubitCoefficients};

use thiserror::Error;

/// Hard cap on dense diagonalization size; this is a desk-scale oracle, not a
/// production many-body code.
pub const DENSE_DIMENSION_CAP: usize = 4096;

#[derive(Debug, Error, PartialEq)]
pub enum HubbardError {
    #[error("incompatible sector: {n_electrons} electrons cannot have 2*Sz = {twice_sz}")]
    IncompatibleSector { n_electrons: usize, twice_sz: i32 },
    #[error("electron count {n_electrons} exceeds 2 * {n_sites} sites")]
    TooManyElectrons { n_electrons: usize, n_sites: usize },
    #[error("at most 16 sites supported, got {0}")]
    TooManySites(usize),
    #[error("parameter dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("matrix dimension {dim} exceeds the dense cap {cap}; restrict to a smaller sector")]
    CapacityExceeded { dim: usize, cap: usize },
    #[error("eigen residual {residual:e} exceeds 1e-10 * |H| = {limit:e}")]
    EigenResidual { residual: f64, limit: f64 },
    #[error("projection invalid: {0}")]
    ProjectionInvalid(String),
}

/// Uniform-parameter description of N DB pairs, the configuration the reduced
/// qubit Hamiltonian is written for: shared on-site energy, level correction,
/// intra-pair hopping/repulsion, and per-pair-of-qubits same/cross-site
/// inter-pair Coulomb terms.
#[derive(Debug, Clone, PartialEq)]
pub struct QubitModelSpec {
    pub n_pairs: usize,
    pub e_os_ev: f64,
    pub eta_ev: f64,
    pub t_tunnel_ev: f64,
    pub u0_ev: f64,
    pub w0_ev: f64,
    /// (qubit_a, qubit_b, W_same, W_cross) for a < b.
    pub inter_pair_w_ev: Vec<(usize, usize, f64, f64)>,
    /// Per-qubit bias dV applied across the pair (left minus right).
    pub deltav_ev: Vec<f64>,
}

impl QubitModelSpec {
    /// Lay the pairs out as Hubbard parameters: pair `i` occupies sites
    /// (2i, 2i+1) = (left, right). Inter-pair hopping is zero by construction.
    pub fn to_hubbard(&self) -> HubbardParams {
        let n_sites = 2 * self.n_pairs;
        let mut params = HubbardParams::new(
            n_sites,
            self.e_os_ev,
            vec![self.eta_ev; n_sites],
            vec![self.u0_ev; n_sites],
        );
        for p in 0..self.n_pairs {
            let (l, r) = (2 * p, 2 * p + 1);
            params.set_hopping(l, r, self.t_tunnel_ev);
            params.set_w_site(l, r, self.w0_ev);
            params.set_bias(l, r, self.deltav_ev[p]);
        }
        for &(a, b, w_same, w_cross) in &self.inter_pair_w_ev {
            let (la, ra) = (2 * a, 2 * a + 1);
            let (lb, rb) = (2 * b, 2 * b + 1);
            params.set_w_site(la, lb, w_same);
            params.set_w_site(ra, rb, w_same);
            params.set_w_site(la, rb, w_cross);
            params.set_w_site(ra, lb, w_cross);
        }
        params
    }

    pub fn pairs(&self) -> Vec<(usize, usize)> {
        (0..self.n_pairs).map(|p| (2 * p, 2 * p + 1)).collect()
    }
}
