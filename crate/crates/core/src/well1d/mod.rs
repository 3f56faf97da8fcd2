//! One-dimensional effective double-well model of a DB pair.
//!
//! The pair axis is the only coordinate; the barrier plateau between and
//! around the wells is the energy reference (V = 0), so bound levels are
//! negative. The excess electron tunnels between two wells separated by `s`
//! (center to center). Lattice distortion raises the just-initialized left
//! well floor by `asymmetry` (up to the 0.5 eV on-site shift); the relaxed
//! symmetric case has `asymmetry = 0`.

mod solver;
mod sweep;
mod tridiag;
mod wkb;

pub use solver::{solve_bound_states, solve_grid, BoundStateResult};
pub use sweep::{fit_log_linear, sweep_separation, LogLinearFit, SweepRow};
pub use tridiag::SymTridiag;
pub use wkb::{
    calibrate_well, fit_width_to_anchors, splitting_to_rate, wkb_splitting, AnchorFit,
    CalibratedWell, DFT_SPLITTING_ANCHORS,
};

use crate::units::hbar2_over_2m;
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Well profile. Square admits analytic cross-checks; gaussian is provided
/// for smoothness-sensitivity studies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum WellShape {
    Square,
    Gaussian,
}

/// 1D effective double-well potential for one DB pair. Energies eV, lengths A.
#[derive(Debug, Clone, PartialEq)]
pub struct DoubleWellPotential {
    pub shape: WellShape,
    /// Inter-well separation s, center to center, A.
    pub separation_a: f64,
    /// Each well's depth below the plateau, eV (> 0).
    pub well_depth_ev: f64,
    /// Well width, A. For square wells the full width; for gaussian wells the
    /// full width at half maximum.
    pub well_width_a: f64,
    /// Raise of the left well floor, eV (0 = relaxed symmetric case).
    pub asymmetry_ev: f64,
    /// Effective mass ratio m*/m_e in the well/barrier region.
    pub m_star: f64,
    /// Domain [x_min, x_max], A. The potential is only defined inside.
    pub domain: (f64, f64),
}

#[derive(Debug, Error, PartialEq)]
pub enum WellError {
    #[error("x = {x} outside domain [{lo}, {hi}]")]
    OutsideDomain { x: f64, lo: f64, hi: f64 },
    #[error("invalid well parameter {name}: {value}")]
    InvalidParameter { name: &'static str, value: f64 },
    #[error("n_grid = {0} too small (need >= 500)")]
    GridTooSmall(usize),
    #[error("WKB requires a symmetric well (asymmetry = {0} eV)")]
    AsymmetricWell(f64),
    #[error("no tunneling regime: single-well level {e0} eV not below barrier top {barrier} eV")]
    NoTunnelingRegime { e0: f64, barrier: f64 },
    #[error("single well has no bound state")]
    NoBoundState,
    #[error("calibration failed: {0}")]
    CalibrationFailure(String),
    #[error("separation {0} A outside sweep range [3.84, 20]")]
    SeparationOutOfRange(f64),
    #[error("fewer than two bound states: cannot form a splitting")]
    NoSplitting,
}

impl DoubleWellPotential {
    /// Construct with an explicit domain.
    pub fn new(
        shape: WellShape,
        separation_a: f64,
        well_depth_ev: f64,
        well_width_a: f64,
        asymmetry_ev: f64,
        m_star: f64,
        domain: (f64, f64),
    ) -> Result<Self, WellError> {
        let pot = Self {
            shape,
            separation_a,
            well_depth_ev,
            well_width_a,
            asymmetry_ev,
            m_star,
            domain,
        };
        pot.check()?;
        Ok(pot)
    }

    /// Construct with a domain sized so that a state bound by roughly
    /// `binding_hint_ev` has boundary amplitude below 1e-8 of its peak
    /// (20 decay lengths of margin beyond the outer well edges).
    pub fn with_auto_domain(
        shape: WellShape,
        separation_a: f64,
        well_depth_ev: f64,
        well_width_a: f64,
        asymmetry_ev: f64,
        m_star: f64,
        binding_hint_ev: f64,
    ) -> Result<Self, WellError> {
        let margin = domain_margin(binding_hint_ev, m_star);
        let half = separation_a / 2.0 + well_width_a + margin;
        Self::new(
            shape,
            separation_a,
            well_depth_ev,
            well_width_a,
            asymmetry_ev,
            m_star,
            (-half, half),
        )
    }

    fn check(&self) -> Result<(), WellError> {
        let checks = [
            ("separation_a", self.separation_a),
            ("well_depth_ev", self.well_depth_ev),
            ("well_width_a", self.well_width_a),
            ("m_star", self.m_star),
        ];
        for (name, value) in checks {
            if !(value > 0.0 && value.is_finite()) {
                return Err(WellError::InvalidParameter { name, value });
            }
        }
        if !(self.asymmetry_ev >= 0.0 && self.asymmetry_ev <= self.well_depth_ev) {
            return Err(WellError::InvalidParameter {
                name: "asymmetry_ev",
                value: self.asymmetry_ev,
            });
        }
        let (lo, hi) = self.domain;
        let outer = self.separation_a / 2.0 + self.well_width_a / 2.0;
        if !(lo < -outer && hi > outer) {
            return Err(WellError::InvalidParameter {
                name: "domain",
                value: hi - lo,
            });
        }
        Ok(())
    }

    /// Potential value at `x`, eV. Plateau is the zero reference.
    pub fn evaluate(&self, x: f64) -> Result<f64, WellError> {
        let (lo, hi) = self.domain;
        if !(x >= lo && x <= hi) {
            return Err(WellError::OutsideDomain { x, lo, hi });
        }
        Ok(self.value_unchecked(x))
    }

    /// Potential without the domain check; used by the grid samplers.
    pub(crate) fn value_unchecked(&self, x: f64) -> f64 {
        let s2 = self.separation_a / 2.0;
        match self.shape {
            WellShape::Square => {
                let w2 = self.well_width_a / 2.0;
                // Right well takes precedence where overlapping: it is the
                // deeper of the two (asymmetry only raises the left floor).
                if (x - s2).abs() <= w2 {
                    -self.well_depth_ev
                } else if (x + s2).abs() <= w2 {
                    -self.well_depth_ev + self.asymmetry_ev
                } else {
                    0.0
                }
            }
            WellShape::Gaussian => {
                let sigma = gaussian_sigma(self.well_width_a);
                let g = |u: f64| (-u * u / (2.0 * sigma * sigma)).exp();
                -(self.well_depth_ev - self.asymmetry_ev) * g(x + s2)
                    - self.well_depth_ev * g(x - s2)
            }
        }
    }

    /// The isolated single well of this potential (centered at 0), used for
    /// WKB reference energies. Carries the right-well floor (no asymmetry).
    pub fn single_well(&self) -> SingleWell {
        SingleWell {
            shape: self.shape,
            well_depth_ev: self.well_depth_ev,
            well_width_a: self.well_width_a,
            m_star: self.m_star,
        }
    }

    /// hbar^2/(2 m* m_e), eV A^2.
    pub fn kinetic_coefficient(&self) -> f64 {
        hbar2_over_2m(self.m_star)
    }
}

/// An isolated single well centered at x = 0.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SingleWell {
    pub shape: WellShape,
    pub well_depth_ev: f64,
    pub well_width_a: f64,
    pub m_star: f64,
}

impl SingleWell {
    pub fn value(&self, x: f64) -> f64 {
        match self.shape {
            WellShape::Square => {
                if x.abs() <= self.well_width_a / 2.0 {
                    -self.well_depth_ev
                } else {
                    0.0
                }
            }
            WellShape::Gaussian => {
                let sigma = gaussian_sigma(self.well_width_a);
                -self.well_depth_ev * (-x * x / (2.0 * sigma * sigma)).exp()
            }
        }
    }

    /// Domain half-extent giving <= 1e-8 boundary amplitude for a state with
    /// the given binding.
    pub fn half_extent(&self, binding_hint_ev: f64) -> f64 {
        self.well_width_a / 2.0 + domain_margin(binding_hint_ev, self.m_star)
    }
}

/// Gaussian width parameter such that the FWHM equals `width`.
pub(crate) fn gaussian_sigma(width: f64) -> f64 {
    width / (2.0 * (2.0 * (2.0f64).ln()).sqrt())
}

/// Margin of ~20 decay lengths for a state bound by `binding_ev`:
/// exp(-20) ~ 2e-9 < 1e-8 boundary amplitude.
fn domain_margin(binding_ev: f64, m_star: f64) -> f64 {
    let binding = binding_ev.max(1e-3);
    let kappa = (binding / hbar2_over_2m(m_star)).sqrt();
    (20.0 / kappa).max(10.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn square_pot(depth: f64, asym: f64) -> DoubleWellPotential {
        DoubleWellPotential::new(
            WellShape::Square,
            7.68,
            depth,
            3.0,
            asym,
            0.26,
            (-60.0, 60.0),
        )
        .unwrap()
    }

    #[test]
    fn square_values_are_exact() {
        let pot = square_pot(0.9, 0.0);
        // Midpoint between wells sits on the plateau.
        assert_eq!(pot.evaluate(0.0).unwrap(), 0.0);
        // Center of the right well.
        assert_eq!(pot.evaluate(3.84).unwrap(), -0.9);
        let tilted = square_pot(0.9, 0.5);
        // Center of the left well with the lattice-distortion raise.
        assert_relative_eq!(tilted.evaluate(-3.84).unwrap(), -0.4, max_relative = 1e-15);
        assert_eq!(tilted.evaluate(3.84).unwrap(), -0.9);
    }

    #[test]
    fn outside_domain_is_an_error() {
        let pot = square_pot(0.9, 0.0);
        assert!(matches!(
            pot.evaluate(61.0),
            Err(WellError::OutsideDomain { .. })
        ));
    }

    #[test]
    fn gaussian_floor_reflects_asymmetry() {
        let pot = DoubleWellPotential::new(
            WellShape::Gaussian,
            12.0,
            0.9,
            3.0,
            0.5,
            0.26,
            (-60.0, 60.0),
        )
        .unwrap();
        let left = pot.evaluate(-6.0).unwrap();
        let right = pot.evaluate(6.0).unwrap();
        // Remote-well tails are ~e^{-44}: floors match the square case.
        assert_relative_eq!(left, -0.4, max_relative = 1e-9);
        assert_relative_eq!(right, -0.9, max_relative = 1e-9);
    }

    #[test]
    fn invalid_parameters_rejected() {
        assert!(DoubleWellPotential::new(
            WellShape::Square,
            7.68,
            -1.0,
            3.0,
            0.0,
            0.26,
            (-60.0, 60.0)
        )
        .is_err());
        // Asymmetry above depth.
        assert!(DoubleWellPotential::new(
            WellShape::Square,
            7.68,
            0.4,
            3.0,
            0.5,
            0.26,
            (-60.0, 60.0)
        )
        .is_err());
        // Wells not contained in the domain.
        assert!(DoubleWellPotential::new(
            WellShape::Square,
            7.68,
            0.9,
            3.0,
            0.0,
            0.26,
            (-4.0, 4.0)
        )
        .is_err());
    }

    #[test]
    fn fwhm_definition_of_gaussian_width() {
        let sw = SingleWell {
            shape: WellShape::Gaussian,
            well_depth_ev: 1.0,
            well_width_a: 3.0,
            m_star: 1.0,
        };
        // At half the FWHM off center, the well is at half depth.
        assert_relative_eq!(sw.value(1.5), -0.5, max_relative = 1e-12);
    }
}
