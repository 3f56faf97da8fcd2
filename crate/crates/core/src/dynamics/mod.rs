//! Time evolution of qubit registers under piecewise-constant pulse
//! schedules: exact per-segment unitary evolution for pure states, fixed-step
//! RK4 Lindblad integration for open-system runs, and projective Z
//! measurement.

mod lindblad;
mod measure;
mod unitary;

pub use lindblad::{evolve_lindblad, lindblad_rhs, LindbladChannel, LindbladTrajectory};
pub use measure::{concurrence_2q, measure_z, MeasureCounts};
pub use unitary::{evolve_unitary, schedule_unitary, segment_unitary};

use crate::linalg::{herm_eigenvalues, C64, CMatrix, CVector};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum DynamicsError {
    #[error("expected a pure state")]
    ExpectedPure,
    #[error("expected a density matrix")]
    ExpectedDensity,
    #[error("qubit count {0} exceeds the cap {}", crate::qubit::MAX_QUBITS)]
    TooManyQubits(usize),
    #[error("qubit index {index} out of range for {n_qubits} qubits")]
    QubitIndex { index: usize, n_qubits: usize },
    #[error("schedule is for {schedule} qubits but the state has {state}")]
    ScheduleWidth { schedule: usize, state: usize },
    #[error(
        "dt = {dt} fs violates the step-size contract dt*(|H|/hbar + sum rates) <= 0.05; \
         use dt <= {suggested:.6} fs"
    )]
    StepTooLarge { dt: f64, suggested: f64 },
    #[error("sample times must be sorted, nonnegative, within the schedule")]
    BadSampleTimes,
    #[error("non-finite value in Hamiltonian or state")]
    NonFinite,
    #[error("shots must be >= 1")]
    NoShots,
    #[error("qubit model: {0}")]
    Qubit(#[from] crate::qubit::QubitError),
    #[error("state dimension {0} is not a power of two")]
    BadDimension(usize),
}

/// Pure state vector or density matrix over the 2^N computational basis,
/// stamped with the simulation time.
#[derive(Debug, Clone)]
pub struct QuantumState {
    pub repr: StateRepr,
    pub n_qubits: usize,
    pub time_fs: f64,
}

#[derive(Debug, Clone)]
pub enum StateRepr {
    Pure(CVector),
    Density(CMatrix),
}

impl QuantumState {
    /// Computational basis state |index> (little-endian bit = qubit).
    pub fn basis_state(n_qubits: usize, index: usize) -> Self {
        let dim = 1usize << n_qubits;
        assert!(index < dim, "basis index out of range");
        let mut v = CVector::zeros(dim);
        v[index] = C64::new(1.0, 0.0);
        Self { repr: StateRepr::Pure(v), n_qubits, time_fs: 0.0 }
    }

    /// |+>^{tensor N}.
    pub fn plus_state(n_qubits: usize) -> Self {
        let dim = 1usize << n_qubits;
        let amp = C64::new((dim as f64).sqrt().recip(), 0.0);
        let v = CVector::from_element(dim, amp);
        Self { repr: StateRepr::Pure(v), n_qubits, time_fs: 0.0 }
    }

    pub fn from_amplitudes(amplitudes: CVector) -> Result<Self, DynamicsError> {
        let dim = amplitudes.len();
        if !dim.is_power_of_two() {
            return Err(DynamicsError::BadDimension(dim));
        }
        let n_qubits = dim.trailing_zeros() as usize;
        Ok(Self { repr: StateRepr::Pure(amplitudes), n_qubits, time_fs: 0.0 })
    }

    /// Maximally mixed density matrix.
    pub fn maximally_mixed(n_qubits: usize) -> Self {
        let dim = 1usize << n_qubits;
        let m = CMatrix::identity(dim, dim) * C64::new(1.0 / dim as f64, 0.0);
        Self { repr: StateRepr::Density(m), n_qubits, time_fs: 0.0 }
    }

    pub fn dim(&self) -> usize {
        1usize << self.n_qubits
    }

    pub fn is_pure_repr(&self) -> bool {
        matches!(self.repr, StateRepr::Pure(_))
    }

    /// Promote to a density matrix (no-op if already one).
    pub fn to_density(&self) -> Self {
        match &self.repr {
            StateRepr::Density(_) => self.clone(),
            StateRepr::Pure(v) => {
                let dim = v.len();
                let m = CMatrix::from_fn(dim, dim, |i, j| v[i] * v[j].conj());
                Self {
                    repr: StateRepr::Density(m),
                    n_qubits: self.n_qubits,
                    time_fs: self.time_fs,
                }
            }
        }
    }

    /// Probability of reading 1 on the given qubit.
    pub fn p1(&self, qubit: usize) -> Result<f64, DynamicsError> {
        if qubit >= self.n_qubits {
            return Err(DynamicsError::QubitIndex { index: qubit, n_qubits: self.n_qubits });
        }
        let bit = 1usize << qubit;
        Ok(match &self.repr {
            StateRepr::Pure(v) => (0..v.len())
                .filter(|i| i & bit != 0)
                .map(|i| v[i].norm_sqr())
                .sum(),
            StateRepr::Density(m) => (0..m.nrows())
                .filter(|i| i & bit != 0)
                .map(|i| m[(i, i)].re)
                .sum(),
        })
    }

    /// Tr(rho^2); exactly the squared norm^2 = 1 for normalized pure states.
    pub fn purity(&self) -> f64 {
        match &self.repr {
            StateRepr::Pure(v) => {
                let n2 = v.norm_squared();
                n2 * n2
            }
            StateRepr::Density(m) => (m * m).trace().re,
        }
    }

    pub fn trace(&self) -> f64 {
        match &self.repr {
            StateRepr::Pure(v) => v.norm_squared(),
            StateRepr::Density(m) => m.trace().re,
        }
    }

    /// Minimum eigenvalue of the density matrix (pure states: 0 for N >= 1).
    pub fn min_eigenvalue(&self) -> f64 {
        match &self.repr {
            StateRepr::Pure(_) => 0.0,
            StateRepr::Density(m) => herm_eigenvalues(m)[0],
        }
    }

    /// |<a|b>|^2 for pure states; <psi|rho|psi> for pure target vs density.
    pub fn fidelity_with_pure(&self, target: &CVector) -> f64 {
        match &self.repr {
            StateRepr::Pure(v) => target.dotc(v).norm_sqr(),
            StateRepr::Density(m) => {
                let mv = m * target;
                target.dotc(&mv).re
            }
        }
    }
}

/// A sampled state trajectory.
#[derive(Debug, Clone)]
pub struct Trajectory {
    pub times_fs: Vec<f64>,
    pub states: Vec<QuantumState>,
}

impl Trajectory {
    pub fn p1_series(&self, qubit: usize) -> Result<Vec<f64>, DynamicsError> {
        self.states.iter().map(|s| s.p1(qubit)).collect()
    }

    pub fn last(&self) -> &QuantumState {
        self.states.last().expect("trajectory has at least one sample")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn basis_and_plus_states() {
        let s = QuantumState::basis_state(2, 2);
        assert_eq!(s.p1(0).unwrap(), 0.0);
        assert_eq!(s.p1(1).unwrap(), 1.0);
        let p = QuantumState::plus_state(2);
        assert_relative_eq!(p.p1(0).unwrap(), 0.5, max_relative = 1e-14);
        assert_relative_eq!(p.purity(), 1.0, max_relative = 1e-14);
    }

    #[test]
    fn density_promotion_preserves_observables() {
        let s = QuantumState::plus_state(1);
        let d = s.to_density();
        assert_relative_eq!(d.p1(0).unwrap(), 0.5, max_relative = 1e-14);
        assert_relative_eq!(d.purity(), 1.0, max_relative = 1e-12);
        assert_relative_eq!(d.trace(), 1.0, max_relative = 1e-14);
    }

    #[test]
    fn mixed_state_properties() {
        let m = QuantumState::maximally_mixed(1);
        assert_relative_eq!(m.purity(), 0.5, max_relative = 1e-14);
        assert_relative_eq!(m.p1(0).unwrap(), 0.5, max_relative = 1e-14);
        assert!(m.min_eigenvalue() > 0.49);
    }

    #[test]
    fn qubit_index_checked() {
        let s = QuantumState::basis_state(1, 0);
        assert!(s.p1(1).is_err());
    }
}
