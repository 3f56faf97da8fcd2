//! Finite-difference bound-state solver on a uniform grid.
//!
//! Three-point discretization of -(hbar^2/2m*) d2/dx2 + V(x) with Dirichlet
//! boundaries. This is the numerically exact oracle the WKB estimate is
//! checked against.

use super::tridiag::SymTridiag;
use super::{DoubleWellPotential, WellError};
use crate::units::hbar2_over_2m;

/// Discrete bound states of a 1D potential.
#[derive(Debug, Clone)]
pub struct BoundStateResult {
    /// Bound-state energies below the plateau, strictly increasing, eV.
    pub energies: Vec<f64>,
    /// Wavefunctions sampled on the interior grid, L2-normalized so that
    /// sum(psi^2) * dx = 1. Sign fixed positive at the right well center.
    pub wavefunctions: Vec<Vec<f64>>,
    /// Grid spacing, A.
    pub grid_spacing: f64,
    /// First interior grid coordinate, A.
    pub x_first: f64,
    /// Ground-state amplitude at the domain edge relative to its peak;
    /// should be <= ~1e-8 for a well-sized domain.
    pub boundary_amplitude_ratio: f64,
}

/// Lowest eigenpairs of the discretized Hamiltonian for an arbitrary sampled
/// potential. `v` holds the potential at interior points `x0 + i*dx`.
/// Returns up to `count` pairs (energy, 2-normalized grid vector), ascending.
pub fn solve_grid(v: &[f64], dx: f64, m_star: f64, count: usize) -> Vec<(f64, Vec<f64>)> {
    let n = v.len();
    let k = hbar2_over_2m(m_star) / (dx * dx);
    let diag: Vec<f64> = v.iter().map(|vi| 2.0 * k + vi).collect();
    let off = vec![-k; n - 1];
    SymTridiag::new(diag, off).lowest(count)
}

/// Bound states (E < 0) of a double-well potential.
///
/// `n_grid` is the number of interior grid points (>= 500). States are
/// reported lowest-first; an empty result (no bound state) is not an error.
pub fn solve_bound_states(
    pot: &DoubleWellPotential,
    n_grid: usize,
) -> Result<BoundStateResult, WellError> {
    if n_grid < 500 {
        return Err(WellError::GridTooSmall(n_grid));
    }
    let (lo, hi) = pot.domain;
    let dx = (hi - lo) / (n_grid as f64 + 1.0);
    let xs: Vec<f64> = (1..=n_grid).map(|i| lo + i as f64 * dx).collect();
    let v: Vec<f64> = xs.iter().map(|&x| pot.value_unchecked(x)).collect();

    let k = hbar2_over_2m(pot.m_star) / (dx * dx);
    let diag: Vec<f64> = v.iter().map(|vi| 2.0 * k + vi).collect();
    let off = vec![-k; n_grid - 1];
    let t = SymTridiag::new(diag, off);

    // Bound states sit below the plateau at 0.
    let n_bound = t.count_below(0.0).min(16);
    let mut energies = Vec::with_capacity(n_bound);
    let mut wavefunctions = Vec::with_capacity(n_bound);
    let pairs = t.lowest(n_bound);
    // Sign convention: positive at the right well center (x = +s/2).
    let sign_index = ((pot.separation_a / 2.0 - lo) / dx - 1.0).round().max(0.0) as usize;
    let sign_index = sign_index.min(n_grid - 1);
    for (e, mut psi) in pairs {
        if e >= 0.0 {
            break;
        }
        // Grid normalization: sum psi^2 dx = 1 (tridiag returns 2-norm 1).
        let inv = 1.0 / dx.sqrt();
        for p in psi.iter_mut() {
            *p *= inv;
        }
        let peak = psi.iter().fold(0.0f64, |m, &p| m.max(p.abs()));
        let anchor = psi[sign_index];
        let flip = if anchor.abs() > 1e-12 * peak {
            anchor < 0.0
        } else {
            // Anchor node: fall back to the largest-amplitude point.
            let (imax, _) = psi
                .iter()
                .enumerate()
                .max_by(|a, b| a.1.abs().partial_cmp(&b.1.abs()).unwrap())
                .unwrap();
            psi[imax] < 0.0
        };
        if flip {
            for p in psi.iter_mut() {
                *p = -*p;
            }
        }
        energies.push(e);
        wavefunctions.push(psi);
    }

    let boundary_amplitude_ratio = if let Some(psi0) = wavefunctions.first() {
        let peak = psi0.iter().fold(0.0f64, |m, &p| m.max(p.abs()));
        psi0[0].abs().max(psi0[n_grid - 1].abs()) / peak
    } else {
        0.0
    };

    Ok(BoundStateResult {
        energies,
        wavefunctions,
        grid_spacing: dx,
        x_first: lo + dx,
        boundary_amplitude_ratio,
    })
}

impl BoundStateResult {
    /// Tunnel splitting E1 - E0, eV.
    pub fn splitting(&self) -> Result<f64, WellError> {
        if self.energies.len() < 2 {
            return Err(WellError::NoSplitting);
        }
        Ok(self.energies[1] - self.energies[0])
    }

    /// Overlap of state `i` with its mirror image about x = 0 (assumes the
    /// grid is symmetric about 0). +1 for even states, -1 for odd.
    pub fn parity_overlap(&self, i: usize) -> f64 {
        let psi = &self.wavefunctions[i];
        let n = psi.len();
        let dx = self.grid_spacing;
        (0..n).map(|j| psi[j] * psi[n - 1 - j]).sum::<f64>() * dx
    }
}
