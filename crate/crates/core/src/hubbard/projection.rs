//! Projection of the many-body Hamiltonian onto the charge-qubit subspace.
//!
//! Each pair holds exactly three electrons (a doubly occupied DB- plus a
//! neutral DB), with the unpaired spin fixed up. The two configurations per
//! pair are excess-left (occupations 2,1) = |0> and excess-right (1,2) = |1>.
//! With zero inter-pair hopping, per-pair electron number and spin are
//! conserved, so this 2^N block is an exact invariant subspace.
//!
//! Qubit basis indexing is little-endian: bit `i` of the configuration index
//! is the state of qubit `i` (0 = excess left).

use super::basis::{build_basis, orbital, Spin};
use super::hamiltonian::HubbardParams;
use super::HubbardError;
use crate::linalg::RMatrix;
use std::collections::HashMap;

/// Coefficients of the reduced qubit Hamiltonian extracted by projection.
#[derive(Debug, Clone, PartialEq)]
pub struct EffectiveQubitCoefficients {
    /// Identity coefficient (the kappa of the closed form), eV.
    pub identity: f64,
    /// Per-qubit X coefficients, eV.
    pub x: Vec<f64>,
    /// Per-qubit Z coefficients, eV.
    pub z: Vec<f64>,
    /// ZZ coefficients for qubit pairs (a, b) with a < b, eV.
    pub zz: Vec<(usize, usize, f64)>,
    /// Largest matrix element unexplained by the {I, X_i, Z_i, Z_i Z_j} span,
    /// including any coupling out of the configuration subspace.
    pub residual: f64,
    /// The projected 2^N x 2^N block itself, for oracle comparisons.
    pub subspace_hamiltonian: RMatrix,
}

impl EffectiveQubitCoefficients {
    pub fn zz_between(&self, a: usize, b: usize) -> Option<f64> {
        let (a, b) = if a < b { (a, b) } else { (b, a) };
        self.zz
            .iter()
            .find(|(i, j, _)| *i == a && *j == b)
            .map(|(_, _, c)| *c)
    }

    /// Rebuild the qubit operator from the extracted coefficients.
    pub fn reconstruct(&self) -> RMatrix {
        let n = self.x.len();
        let dim = 1usize << n;
        let mut h = RMatrix::zeros(dim, dim);
        for b in 0..dim {
            let mut diag = self.identity;
            for q in 0..n {
                diag += self.z[q] * z_sign(b, q);
            }
            for &(a, c, w) in &self.zz {
                diag += w * z_sign(b, a) * z_sign(b, c);
            }
            h[(b, b)] = diag;
            for q in 0..n {
                h[(b ^ (1 << q), b)] += self.x[q];
            }
        }
        h
    }
}

#[inline]
fn z_sign(index: usize, qubit: usize) -> f64 {
    if index & (1 << qubit) == 0 {
        1.0
    } else {
        -1.0
    }
}

/// Fock mask of one qubit configuration: bit q of `config` selects
/// excess-left (0) or excess-right (1) for pair q.
fn config_mask(config: usize, pairs: &[(usize, usize)]) -> u32 {
    let mut mask = 0u32;
    for (q, &(left, right)) in pairs.iter().enumerate() {
        mask |= 1 << orbital(left, Spin::Up);
        mask |= 1 << orbital(right, Spin::Up);
        if config & (1 << q) == 0 {
            mask |= 1 << orbital(left, Spin::Down);
        } else {
            mask |= 1 << orbital(right, Spin::Down);
        }
    }
    mask
}

/// Project `params` onto the charge-qubit configuration subspace of `pairs`
/// and extract the Pauli coefficients.
///
/// Preconditions: every site belongs to a pair, and inter-pair hopping is
/// exactly zero (otherwise the block is not invariant and the reduction is
/// not defined).
pub fn project_to_qubits(
    params: &HubbardParams,
    pairs: &[(usize, usize)],
) -> Result<EffectiveQubitCoefficients, HubbardError> {
    let n_pairs = pairs.len();
    let mut site_pair = vec![None; params.n_sites];
    for (q, &(l, r)) in pairs.iter().enumerate() {
        for site in [l, r] {
            if site >= params.n_sites {
                return Err(HubbardError::ProjectionInvalid(format!(
                    "pair {q} references site {site} beyond {} sites",
                    params.n_sites
                )));
            }
            if site_pair[site].replace(q).is_some() {
                return Err(HubbardError::ProjectionInvalid(format!(
                    "site {site} appears in more than one pair"
                )));
            }
        }
    }
    if site_pair.iter().any(|p| p.is_none()) {
        return Err(HubbardError::ProjectionInvalid(
            "every site must belong to a pair".into(),
        ));
    }
    for i in 0..params.n_sites {
        for j in (i + 1)..params.n_sites {
            if site_pair[i] != site_pair[j] && params.t_hop_ev[(i, j)] != 0.0 {
                return Err(HubbardError::ProjectionInvalid(format!(
                    "nonzero inter-pair hopping T[{i},{j}] = {}",
                    params.t_hop_ev[(i, j)]
                )));
            }
        }
    }

    let dim = 1usize << n_pairs;
    let masks: Vec<u32> = (0..dim).map(|c| config_mask(c, pairs)).collect();
    let index: HashMap<u32, usize> = masks.iter().enumerate().map(|(i, &m)| (m, i)).collect();

    // Assemble the subspace block directly; any hopping image outside the
    // subspace is leakage and counts toward the residual.
    let mut h = RMatrix::zeros(dim, dim);
    let mut leak = 0.0f64;
    for (col, &mask) in masks.iter().enumerate() {
        h[(col, col)] = params.diagonal_energy(mask);
        for (target, amp) in params.hop_images(mask) {
            match index.get(&target) {
                Some(&row) => h[(row, col)] += amp,
                None => leak = leak.max(amp.abs()),
            }
        }
    }

    // Pauli-basis inner products over the diagonal and single-flip entries.
    let norm = 1.0 / dim as f64;
    let identity = (0..dim).map(|b| h[(b, b)]).sum::<f64>() * norm;
    let z: Vec<f64> = (0..n_pairs)
        .map(|q| (0..dim).map(|b| z_sign(b, q) * h[(b, b)]).sum::<f64>() * norm)
        .collect();
    let x: Vec<f64> = (0..n_pairs)
        .map(|q| (0..dim).map(|b| h[(b ^ (1 << q), b)]).sum::<f64>() * norm)
        .collect();
    let mut zz = Vec::new();
    for a in 0..n_pairs {
        for b in (a + 1)..n_pairs {
            let c = (0..dim)
                .map(|k| z_sign(k, a) * z_sign(k, b) * h[(k, k)])
                .sum::<f64>()
                * norm;
            zz.push((a, b, c));
        }
    }

    let coeffs = EffectiveQubitCoefficients {
        identity,
        x,
        z,
        zz,
        residual: 0.0,
        subspace_hamiltonian: h.clone(),
    };
    let delta = &h - coeffs.reconstruct();
    let residual = delta.iter().fold(leak, |m, v| m.max(v.abs()));
    Ok(EffectiveQubitCoefficients { residual, ..coeffs })
}

/// Exact sector spectrum containing the qubit subspace, for completeness
/// checks: N pairs, 3 electrons per pair, one unpaired up spin per pair.
pub fn qubit_sector_spectrum(
    params: &HubbardParams,
    pairs: &[(usize, usize)],
) -> Result<Vec<f64>, HubbardError> {
    let n_pairs = pairs.len();
    let basis = build_basis(params.n_sites, 3 * n_pairs, n_pairs as i32)?;
    let h = super::hamiltonian::build_hamiltonian(params, &basis)?;
    Ok(super::hamiltonian::ground_and_spectrum(&h)?.eigenvalues)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hubbard::QubitModelSpec;
    use approx::assert_relative_eq;

    fn single_pair_spec(t: f64, dv: f64) -> QubitModelSpec {
        QubitModelSpec {
            n_pairs: 1,
            e_os_ev: 0.7,
            eta_ev: 0.05,
            t_tunnel_ev: t,
            u0_ev: 0.26,
            w0_ev: 0.295,
            inter_pair_w_ev: vec![],
            deltav_ev: vec![dv],
        }
    }

    #[test]
    fn symmetric_pair_projects_to_pure_x() {
        let spec = single_pair_spec(0.1, 0.0);
        let c = project_to_qubits(&spec.to_hubbard(), &spec.pairs()).unwrap();
        assert_relative_eq!(c.x[0], 0.1, max_relative = 1e-14);
        assert!(c.z[0].abs() < 1e-14);
        assert!(c.residual < 1e-14);
    }

    #[test]
    fn bias_projects_to_half_deltav_z() {
        let dv = 0.37;
        let spec = single_pair_spec(0.08, dv);
        let c = project_to_qubits(&spec.to_hubbard(), &spec.pairs()).unwrap();
        assert_relative_eq!(c.z[0], dv / 2.0, max_relative = 1e-14);
        assert_relative_eq!(c.x[0], 0.08, max_relative = 1e-14);
    }

    #[test]
    fn two_pairs_project_to_half_w_minus_zz() {
        let spec = QubitModelSpec {
            n_pairs: 2,
            e_os_ev: 0.7,
            eta_ev: 0.0,
            t_tunnel_ev: 0.05,
            u0_ev: 0.26,
            w0_ev: 0.295,
            inter_pair_w_ev: vec![(0, 1, 0.3, 0.2)],
            deltav_ev: vec![0.0, 0.0],
        };
        let c = project_to_qubits(&spec.to_hubbard(), &spec.pairs()).unwrap();
        assert_relative_eq!(c.zz_between(0, 1).unwrap(), 0.05, max_relative = 1e-12);
        // Identity picks up (9/2)(W_s + W_c) on top of the per-pair terms.
        let per_pair = 3.0 * 0.7 + 0.26 + 2.0 * 0.295;
        let expected_identity = 2.0 * per_pair + 4.5 * (0.3 + 0.2);
        assert_relative_eq!(c.identity, expected_identity, max_relative = 1e-12);
        assert!(c.residual < 1e-12);
    }

    #[test]
    fn inter_pair_hopping_invalidates_projection() {
        let spec = QubitModelSpec {
            n_pairs: 2,
            e_os_ev: 0.0,
            eta_ev: 0.0,
            t_tunnel_ev: 0.05,
            u0_ev: 0.2,
            w0_ev: 0.1,
            inter_pair_w_ev: vec![(0, 1, 0.05, 0.03)],
            deltav_ev: vec![0.0, 0.0],
        };
        let mut params = spec.to_hubbard();
        params.set_hopping(1, 2, 0.01); // right of pair 0 to left of pair 1
        assert!(matches!(
            project_to_qubits(&params, &spec.pairs()),
            Err(HubbardError::ProjectionInvalid(_))
        ));
    }

    #[test]
    fn unpaired_sites_rejected() {
        let params = HubbardParams::new(3, 0.0, vec![0.0; 3], vec![0.0; 3]);
        assert!(matches!(
            project_to_qubits(&params, &[(0, 1)]),
            Err(HubbardError::ProjectionInvalid(_))
        ));
    }

    /// The projected block is an exact invariant subspace: its reconstructed
    /// eigenvalues appear in the exact sector spectrum.
    #[test]
    fn projection_completeness_against_exact_sector() {
        let spec = QubitModelSpec {
            n_pairs: 2,
            e_os_ev: 0.42,
            eta_ev: 0.013,
            t_tunnel_ev: 0.06,
            u0_ev: 0.3,
            w0_ev: 0.22,
            inter_pair_w_ev: vec![(0, 1, 0.09, 0.04)],
            deltav_ev: vec![0.12, -0.07],
        };
        let params = spec.to_hubbard();
        let pairs = spec.pairs();
        let c = project_to_qubits(&params, &pairs).unwrap();
        let reduced = crate::linalg::sym_eigen_sorted(&c.reconstruct()).0;
        let exact = qubit_sector_spectrum(&params, &pairs).unwrap();
        for e in &reduced {
            let nearest = exact
                .iter()
                .map(|x| (x - e).abs())
                .fold(f64::INFINITY, f64::min);
            assert!(
                nearest < 1e-10,
                "reduced eigenvalue {e} missing from the exact sector"
            );
        }
    }
}
