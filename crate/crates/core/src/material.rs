//! Material parameters for silicon and the dangling-bond levels.

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Silicon / dangling-bond material constants.
///
/// Energies in eV, lengths in angstrom unless noted. Defaults describe the
/// H-Si(100) surface: a neutral DB level 0.35 eV above the valence band edge,
/// shifted up by 0.5 eV on charging (to 0.85 eV), with the host Si atom raised
/// 0.3 A out of the surface plane.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct MaterialParams {
    /// Bulk band gap, eV.
    pub band_gap_ev: f64,
    /// Neutral DB level above the valence band edge, eV.
    pub neutral_db_level_ev: f64,
    /// Charged DB- level above the valence band edge, eV.
    pub charged_db_level_ev: f64,
    /// Upward shift of the DB level on charging, eV.
    pub onsite_shift_ev: f64,
    /// Outward displacement of the host Si atom at a DB-, A.
    /// Recorded for reference; not used in any computation.
    pub lattice_displacement_angstrom: f64,
    /// Effective mass ratio m*/m_e.
    pub effective_mass_ratio: f64,
    /// Relative permittivity for the screened surface Coulomb interaction.
    /// Default (1 + 11.7)/2: vacuum/bulk-silicon average for a surface charge.
    pub eps_surface: f64,
    /// Mass density, kg/m^3.
    pub density_kg_m3: f64,
    /// Longitudinal sound speed, m/s.
    pub sound_speed_l_m_s: f64,
    /// Deformation potential, eV.
    pub deformation_potential_ev: f64,
}

impl Default for MaterialParams {
    fn default() -> Self {
        Self {
            band_gap_ev: 1.1,
            neutral_db_level_ev: 0.35,
            charged_db_level_ev: 0.85,
            onsite_shift_ev: 0.5,
            lattice_displacement_angstrom: 0.3,
            effective_mass_ratio: 0.26,
            eps_surface: 6.35,
            density_kg_m3: 2329.0,
            sound_speed_l_m_s: 8433.0,
            deformation_potential_ev: 8.8,
        }
    }
}

#[derive(Debug, Error, PartialEq)]
pub enum MaterialError {
    #[error("material field {field} must be strictly positive, got {value}")]
    NonPositive { field: &'static str, value: f64 },
    #[error(
        "charged_db_level ({charged}) - neutral_db_level ({neutral}) must equal \
         onsite_shift ({shift})"
    )]
    ShiftMismatch {
        charged: f64,
        neutral: f64,
        shift: f64,
    },
    #[error("band_gap ({band_gap}) must exceed charged_db_level ({charged})")]
    LevelAboveGap { band_gap: f64, charged: f64 },
}

impl MaterialParams {
    /// Check the documented invariants. The level-offset identity is only
    /// enforced to 1e-12 when all three values are at their defaults;
    /// otherwise the fields may be varied independently.
    pub fn validate(&self) -> Result<(), MaterialError> {
        let fields = [
            ("band_gap_ev", self.band_gap_ev),
            ("neutral_db_level_ev", self.neutral_db_level_ev),
            ("charged_db_level_ev", self.charged_db_level_ev),
            ("onsite_shift_ev", self.onsite_shift_ev),
            ("lattice_displacement_angstrom", self.lattice_displacement_angstrom),
            ("effective_mass_ratio", self.effective_mass_ratio),
            ("eps_surface", self.eps_surface),
            ("density_kg_m3", self.density_kg_m3),
            ("sound_speed_l_m_s", self.sound_speed_l_m_s),
            ("deformation_potential_ev", self.deformation_potential_ev),
        ];
        for (field, value) in fields {
            if !(value > 0.0) {
                return Err(MaterialError::NonPositive { field, value });
            }
        }
        let defaults = Self::default();
        let at_default_levels = self.charged_db_level_ev == defaults.charged_db_level_ev
            && self.neutral_db_level_ev == defaults.neutral_db_level_ev
            && self.onsite_shift_ev == defaults.onsite_shift_ev;
        if at_default_levels {
            let diff = self.charged_db_level_ev - self.neutral_db_level_ev;
            if (diff - self.onsite_shift_ev).abs() > 1e-12 {
                return Err(MaterialError::ShiftMismatch {
                    charged: self.charged_db_level_ev,
                    neutral: self.neutral_db_level_ev,
                    shift: self.onsite_shift_ev,
                });
            }
        }
        if self.band_gap_ev <= self.charged_db_level_ev {
            return Err(MaterialError::LevelAboveGap {
                band_gap: self.band_gap_ev,
                charged: self.charged_db_level_ev,
            });
        }
        Ok(())
    }

    /// Binding of the charged DB level below the conduction band edge, eV.
    pub fn db_binding_below_cb(&self) -> f64 {
        self.band_gap_ev - self.charged_db_level_ev
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_satisfy_invariants() {
        let m = MaterialParams::default();
        m.validate().unwrap();
        assert!((m.charged_db_level_ev - m.neutral_db_level_ev - m.onsite_shift_ev).abs() < 1e-12);
        assert!((m.db_binding_below_cb() - 0.25).abs() < 1e-12);
    }

    #[test]
    fn rejects_nonpositive() {
        let mut m = MaterialParams::default();
        m.effective_mass_ratio = 0.0;
        assert!(matches!(m.validate(), Err(MaterialError::NonPositive { .. })));
    }

    #[test]
    fn rejects_level_above_gap() {
        let mut m = MaterialParams::default();
        m.charged_db_level_ev = 1.2;
        m.neutral_db_level_ev = 0.7;
        assert!(matches!(m.validate(), Err(MaterialError::LevelAboveGap { .. })));
    }
}
