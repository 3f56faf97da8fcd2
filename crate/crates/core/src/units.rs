//! Unit conventions and physical constants.
//!
//! Internal unit system: energies in eV, lengths in angstrom (A), times in fs.
//! In these units hbar is order one and the exponentials appearing in WKB
//! actions and phase factors stay well scaled. Rates in Hz exist only at API
//! boundaries; 1 fs^-1 = 1e15 Hz.

use thiserror::Error;

/// Reduced Planck constant, eV·fs.
pub const HBAR_EV_FS: f64 = 0.6582119569;

/// Reduced Planck constant, eV·s.
pub const HBAR_EV_S: f64 = HBAR_EV_FS * 1e-15;

/// Coulomb constant e^2/(4 pi eps0), eV·A.
pub const COULOMB_K_EV_A: f64 = 14.39964;

/// hbar^2/(2 m_e), eV·A^2.
pub const HBAR2_OVER_2ME_EV_A2: f64 = 3.80998;

/// Free electron mass in the internal unit system, eV·fs^2/A^2.
pub const ELECTRON_MASS_EV_FS2_A2: f64 =
    HBAR_EV_FS * HBAR_EV_FS / (2.0 * HBAR2_OVER_2ME_EV_A2);

/// Femtoseconds per second.
pub const FS_PER_S: f64 = 1e15;

#[derive(Debug, Error, PartialEq)]
pub enum DomainError {
    #[error("{quantity} must be positive, got {value}")]
    NonPositive { quantity: &'static str, value: f64 },
    #[error("{quantity} out of range: {value} (expected {expected})")]
    OutOfRange {
        quantity: &'static str,
        value: f64,
        expected: &'static str,
    },
    #[error("{quantity} is not finite")]
    NonFinite { quantity: &'static str },
}

/// Screened Coulomb interaction energy between two point charges.
///
/// `r` in angstrom, `eps` a dimensionless relative permittivity >= 1.
/// Returns `COULOMB_K_EV_A / (eps * r)` in eV.
pub fn screened_coulomb(r: f64, eps: f64) -> Result<f64, DomainError> {
    if !(r.is_finite() && eps.is_finite()) {
        return Err(DomainError::NonFinite { quantity: "r or eps" });
    }
    if r <= 0.0 {
        return Err(DomainError::NonPositive { quantity: "r", value: r });
    }
    if eps < 1.0 {
        return Err(DomainError::OutOfRange {
            quantity: "eps",
            value: eps,
            expected: ">= 1",
        });
    }
    Ok(COULOMB_K_EV_A / (eps * r))
}

/// hbar^2/(2 m* m_e) in eV·A^2 for a dimensionless effective-mass ratio.
pub fn hbar2_over_2m(m_star: f64) -> f64 {
    HBAR2_OVER_2ME_EV_A2 / m_star
}

/// Convert an inverse-fs rate to Hz.
pub fn per_fs_to_hz(rate_per_fs: f64) -> f64 {
    rate_per_fs * FS_PER_S
}

/// Convert a rate in Hz to inverse fs.
pub fn hz_to_per_fs(rate_hz: f64) -> f64 {
    rate_hz / FS_PER_S
}
