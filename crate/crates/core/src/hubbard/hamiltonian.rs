//! Dense Hamiltonian assembly and diagonalization.
//!
//! Terms, with the hopping sign convention explicit:
//!   H = sum_{i,s} (E_os + eta_i) n_{i,s}
//!     - sum_{i<j,s} T_ij (c+_{i,s} c_{j,s} + c+_{j,s} c_{i,s})
//!     + sum_i U_i n_{i,up} n_{i,down}
//!     + sum_{i<j,s,s'} W_{is,js'} n_{i,s} n_{j,s'}
//!     + V,   2V = sum_{i<j,s} V_ij (n_{i,s} - n_{j,s})

use super::basis::{annihilate, create, occupation, orbital, FockBasis, Spin};
use super::{HubbardError, DENSE_DIMENSION_CAP};
use crate::linalg::{sym_eigen_sorted, RMatrix};

/// Parameters of the extended Hubbard Hamiltonian. Energies in eV.
///
/// `w_orbital` exposes the inter-site repulsion as a full spin-resolved
/// tensor W_{i sigma, j sigma'} indexed by orbital; the site-level setter
/// fills it spin-uniformly, which is the default physical choice.
#[derive(Debug, Clone, PartialEq)]
pub struct HubbardParams {
    pub n_sites: usize,
    pub e_os_ev: f64,
    pub eta_ev: Vec<f64>,
    pub u_onsite_ev: Vec<f64>,
    /// Symmetric hopping matrix T_ij (zero diagonal), eV.
    pub t_hop_ev: RMatrix,
    /// Spin-resolved inter-site repulsion by orbital index (2*site + spin).
    /// Only inter-site blocks (site i != site j) are read.
    pub w_orbital_ev: RMatrix,
    /// Bias matrix V_ij; only i < j entries are read, with the operator
    /// convention 2V = sum_{i<j, s} V_ij (n_is - n_js).
    pub v_bias_ev: RMatrix,
}

impl HubbardParams {
    pub fn new(n_sites: usize, e_os_ev: f64, eta_ev: Vec<f64>, u_onsite_ev: Vec<f64>) -> Self {
        Self {
            n_sites,
            e_os_ev,
            eta_ev,
            u_onsite_ev,
            t_hop_ev: RMatrix::zeros(n_sites, n_sites),
            w_orbital_ev: RMatrix::zeros(2 * n_sites, 2 * n_sites),
            v_bias_ev: RMatrix::zeros(n_sites, n_sites),
        }
    }

    /// Symmetric hopping amplitude between two sites.
    pub fn set_hopping(&mut self, i: usize, j: usize, t_ev: f64) {
        self.t_hop_ev[(i, j)] = t_ev;
        self.t_hop_ev[(j, i)] = t_ev;
    }

    /// Spin-uniform inter-site repulsion between two sites.
    pub fn set_w_site(&mut self, i: usize, j: usize, w_ev: f64) {
        for si in 0..2 {
            for sj in 0..2 {
                self.w_orbital_ev[(2 * i + si, 2 * j + sj)] = w_ev;
                self.w_orbital_ev[(2 * j + sj, 2 * i + si)] = w_ev;
            }
        }
    }

    /// Bias V_ij between two sites, stored antisymmetrically so either index
    /// order denotes the same physical tilt (site `i` raised against `j`).
    pub fn set_bias(&mut self, i: usize, j: usize, v_ev: f64) {
        self.v_bias_ev[(i, j)] = v_ev;
        self.v_bias_ev[(j, i)] = -v_ev;
    }

    fn check(&self, basis: &FockBasis) -> Result<(), HubbardError> {
        if basis.n_sites != self.n_sites {
            return Err(HubbardError::DimensionMismatch(format!(
                "basis has {} sites, params have {}",
                basis.n_sites, self.n_sites
            )));
        }
        if self.eta_ev.len() != self.n_sites || self.u_onsite_ev.len() != self.n_sites {
            return Err(HubbardError::DimensionMismatch(
                "eta/u_onsite length != n_sites".into(),
            ));
        }
        if self.t_hop_ev.nrows() != self.n_sites
            || self.w_orbital_ev.nrows() != 2 * self.n_sites
            || self.v_bias_ev.nrows() != self.n_sites
        {
            return Err(HubbardError::DimensionMismatch("matrix sizes".into()));
        }
        Ok(())
    }

    /// Diagonal (occupation-only) energy of one basis mask.
    pub(crate) fn diagonal_energy(&self, mask: u32) -> f64 {
        let mut e = 0.0;
        for site in 0..self.n_sites {
            let n_up = occupation(mask, site, Spin::Up);
            let n_down = occupation(mask, site, Spin::Down);
            e += (self.e_os_ev + self.eta_ev[site]) * (n_up + n_down);
            e += self.u_onsite_ev[site] * n_up * n_down;
        }
        for i in 0..self.n_sites {
            for j in (i + 1)..self.n_sites {
                for (si, spin_i) in [Spin::Up, Spin::Down].into_iter().enumerate() {
                    for (sj, spin_j) in [Spin::Up, Spin::Down].into_iter().enumerate() {
                        let w = self.w_orbital_ev[(2 * i + si, 2 * j + sj)];
                        if w != 0.0 {
                            e += w * occupation(mask, i, spin_i) * occupation(mask, j, spin_j);
                        }
                    }
                }
                let v = self.v_bias_ev[(i, j)];
                if v != 0.0 {
                    for spin in [Spin::Up, Spin::Down] {
                        e += 0.5 * v * (occupation(mask, i, spin) - occupation(mask, j, spin));
                    }
                }
            }
        }
        e
    }

    /// Hopping images of a mask: (target mask, amplitude) pairs from applying
    /// the kinetic term once.
    pub(crate) fn hop_images(&self, mask: u32) -> Vec<(u32, f64)> {
        let mut out = Vec::new();
        for i in 0..self.n_sites {
            for j in (i + 1)..self.n_sites {
                let t = self.t_hop_ev[(i, j)];
                if t == 0.0 {
                    continue;
                }
                for spin in [Spin::Up, Spin::Down] {
                    // -T (c+_i c_j + c+_j c_i)
                    for (from, to) in [(j, i), (i, j)] {
                        if let Some((m1, s1)) = annihilate(mask, orbital(from, spin)) {
                            if let Some((m2, s2)) = create(m1, orbital(to, spin)) {
                                out.push((m2, -t * s1 * s2));
                            }
                        }
                    }
                }
            }
        }
        out
    }
}

/// Dense Hermitian (real symmetric) Hamiltonian on the given sector basis.
pub fn build_hamiltonian(
    params: &HubbardParams,
    basis: &FockBasis,
) -> Result<RMatrix, HubbardError> {
    params.check(basis)?;
    let dim = basis.dimension();
    let mut h = RMatrix::zeros(dim, dim);
    for (col, &mask) in basis.masks.iter().enumerate() {
        h[(col, col)] = params.diagonal_energy(mask);
        for (target, amp) in params.hop_images(mask) {
            // Hopping conserves the sector, so the image must be in-basis.
            let row = basis
                .index_of(target)
                .expect("hopping left the symmetry sector");
            h[(row, col)] += amp;
        }
    }
    Ok(h)
}

/// Full dense spectrum, eigenvalues ascending with matching eigenvector
/// columns. Dimensions above the cap are refused.
#[derive(Debug, Clone)]
pub struct Spectrum {
    pub eigenvalues: Vec<f64>,
    pub eigenvectors: RMatrix,
    pub max_residual: f64,
}

pub fn ground_and_spectrum(h: &RMatrix) -> Result<Spectrum, HubbardError> {
    let dim = h.nrows();
    if dim > DENSE_DIMENSION_CAP {
        return Err(HubbardError::CapacityExceeded { dim, cap: DENSE_DIMENSION_CAP });
    }
    let (eigenvalues, eigenvectors) = sym_eigen_sorted(h);
    let norm = eigenvalues
        .iter()
        .fold(0.0f64, |m, &e| m.max(e.abs()))
        .max(f64::MIN_POSITIVE);
    let mut max_residual = 0.0f64;
    for k in 0..dim {
        let v = eigenvectors.column(k);
        let r = (h * v - v * eigenvalues[k]).norm();
        max_residual = max_residual.max(r);
    }
    let limit = 1e-10 * norm;
    if max_residual > limit {
        return Err(HubbardError::EigenResidual { residual: max_residual, limit });
    }
    Ok(Spectrum { eigenvalues, eigenvectors, max_residual })
}
