//! Direct construction of the N-qubit Hamiltonian
//! `H_q(t) = kappa*I + sum_i [T X_i + (dV_i(t)/2) Z_i] + sum_{j<i} c_zz Z_i Z_j`
//! from device geometry and derived parameters.
//!
//! Computational-basis indexing is little-endian: bit `i` of a basis index is
//! the state of qubit `i`, with Z|0> = +|0>. All coefficients are real, so
//! H_q is real symmetric.

use crate::layout::DeviceLayout;
use crate::linalg::{C64, CVector, RMatrix};
use crate::material::MaterialParams;
use crate::units::{screened_coulomb, DomainError};
use crate::well1d::{CalibratedWell, WellError};
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// State-vector cap: dense 2^N matrices stay desk-sized.
pub const MAX_QUBITS: usize = 12;

/// Which coefficient multiplies Z_i Z_j.
///
/// The three-electron projection of the site Hamiltonian yields
/// (W_s - W_c)/2; the operator-sum form quotes W_s - W_c. `Projected` is the
/// default because it is the convention this crate can verify against exact
/// diagonalization; `Paper` keeps the quoted form available.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum ZzConvention {
    #[default]
    Projected,
    Paper,
}

#[derive(Debug, Error, PartialEq)]
pub enum QubitError {
    #[error("qubit count {0} exceeds the cap {MAX_QUBITS}")]
    TooManyQubits(usize),
    #[error("deltav length {got} != {expected} qubits")]
    DeltavLength { got: usize, expected: usize },
    #[error("invalid parameter {name}: {value}")]
    InvalidParameter { name: &'static str, value: f64 },
    #[error("pair separations differ ({0} vs {1} A) but the model assumes uniform T")]
    NonUniformSeparation(f64, f64),
    #[error("well model: {0}")]
    Well(#[from] WellError),
    #[error("{0}")]
    Domain(#[from] DomainError),
    #[error("matrix dimension mismatch: {0}")]
    Dimension(String),
}

/// Reduced qubit-model parameters. Energies in eV.
#[derive(Debug, Clone, PartialEq)]
pub struct QubitParams {
    pub n_qubits: usize,
    /// Intra-pair tunneling T (half the tunnel splitting), uniform.
    pub t_tunnel_ev: f64,
    pub e_os_ev: f64,
    pub eta_ev: f64,
    pub u0_ev: f64,
    pub w0_ev: f64,
    /// Same-site inter-qubit Coulomb W_s, symmetric, zero diagonal.
    pub w_same_ev: RMatrix,
    /// Cross-site inter-qubit Coulomb W_c, symmetric, zero diagonal.
    pub w_cross_ev: RMatrix,
    pub zz_convention: ZzConvention,
}

impl QubitParams {
    /// Non-interacting qubits with given tunneling; inter-qubit W zero.
    pub fn uniform(n_qubits: usize, t_tunnel_ev: f64) -> Result<Self, QubitError> {
        if n_qubits > MAX_QUBITS {
            return Err(QubitError::TooManyQubits(n_qubits));
        }
        if !(t_tunnel_ev > 0.0) {
            return Err(QubitError::InvalidParameter {
                name: "t_tunnel_ev",
                value: t_tunnel_ev,
            });
        }
        Ok(Self {
            n_qubits,
            t_tunnel_ev,
            e_os_ev: 0.0,
            eta_ev: 0.0,
            u0_ev: 0.0,
            w0_ev: 0.0,
            w_same_ev: RMatrix::zeros(n_qubits, n_qubits),
            w_cross_ev: RMatrix::zeros(n_qubits, n_qubits),
            zz_convention: ZzConvention::Projected,
        })
    }

    pub fn set_inter_pair_w(&mut self, a: usize, b: usize, w_same: f64, w_cross: f64) {
        self.w_same_ev[(a, b)] = w_same;
        self.w_same_ev[(b, a)] = w_same;
        self.w_cross_ev[(a, b)] = w_cross;
        self.w_cross_ev[(b, a)] = w_cross;
    }

    pub fn w_minus(&self, a: usize, b: usize) -> f64 {
        self.w_same_ev[(a, b)] - self.w_cross_ev[(a, b)]
    }

    pub fn w_plus(&self, a: usize, b: usize) -> f64 {
        self.w_same_ev[(a, b)] + self.w_cross_ev[(a, b)]
    }

    /// ZZ coefficient between two qubits under the active convention.
    pub fn zz_coefficient(&self, a: usize, b: usize) -> f64 {
        match self.zz_convention {
            ZzConvention::Projected => self.w_minus(a, b) / 2.0,
            ZzConvention::Paper => self.w_minus(a, b),
        }
    }

    /// Identity coefficient: N(3 E_os + 3 eta + U_0 + 2 W_0) + (9/2) sum W+.
    pub fn kappa_ev(&self) -> f64 {
        let n = self.n_qubits as f64;
        let per_pair = 3.0 * self.e_os_ev + 3.0 * self.eta_ev + self.u0_ev + 2.0 * self.w0_ev;
        let mut w_plus_sum = 0.0;
        for a in 0..self.n_qubits {
            for b in (a + 1)..self.n_qubits {
                w_plus_sum += self.w_plus(a, b);
            }
        }
        n * per_pair + 4.5 * w_plus_sum
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

/// Dense H_q for the given per-qubit biases, real symmetric, 2^N x 2^N.
pub fn build_hq(params: &QubitParams, deltav_ev: &[f64]) -> Result<RMatrix, QubitError> {
    let n = params.n_qubits;
    if n > MAX_QUBITS {
        return Err(QubitError::TooManyQubits(n));
    }
    if deltav_ev.len() != n {
        return Err(QubitError::DeltavLength { got: deltav_ev.len(), expected: n });
    }
    if deltav_ev.iter().any(|v| !v.is_finite()) {
        return Err(QubitError::InvalidParameter {
            name: "deltav_ev",
            value: f64::NAN,
        });
    }
    let kappa = params.kappa_ev();
    let dim = 1usize << n;
    let mut h = RMatrix::zeros(dim, dim);
    for b in 0..dim {
        let mut diag = kappa;
        for q in 0..n {
            diag += 0.5 * deltav_ev[q] * z_sign(b, q);
        }
        for a in 0..n {
            for c in (a + 1)..n {
                let w = params.zz_coefficient(a, c);
                if w != 0.0 {
                    diag += w * z_sign(b, a) * z_sign(b, c);
                }
            }
        }
        h[(b, b)] = diag;
        for q in 0..n {
            h[(b ^ (1 << q), b)] += params.t_tunnel_ev;
        }
    }
    Ok(h)
}

/// The conjugate basis |+-> = (|0> +- |1>)/sqrt(2): eigenstates of the T X
/// term.
pub fn conjugate_basis_states() -> (CVector, CVector) {
    let inv = C64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
    let plus = CVector::from_vec(vec![inv, inv]);
    let minus = CVector::from_vec(vec![inv, -inv]);
    (plus, minus)
}

/// Where the tunnel splitting (2T) comes from.
#[derive(Debug, Clone)]
pub enum SplittingSource {
    /// Use the given splitting directly, eV.
    Explicit { splitting_ev: f64 },
    /// WKB splitting of a calibrated well evaluated at the layout's pair
    /// separation (which must be uniform across pairs).
    CalibratedWell(CalibratedWell),
}

/// Assemble qubit parameters from device geometry.
///
/// T is half the splitting from the chosen source. Inter-qubit W_s/W_c are
/// screened-Coulomb averages over the two same-site and two cross-site
/// distances. W_0 is the screened Coulomb at the intra-pair separation.
/// E_os, eta, and U_0 only shift the identity coefficient and are passed in.
pub fn geometry_to_params(
    layout: &DeviceLayout,
    material: &MaterialParams,
    source: &SplittingSource,
    e_os_ev: f64,
    eta_ev: f64,
    u0_ev: f64,
    zz_convention: ZzConvention,
) -> Result<QubitParams, QubitError> {
    let n = layout.n_pairs();
    if n > MAX_QUBITS {
        return Err(QubitError::TooManyQubits(n));
    }
    let separations = layout.pair_separations();
    let s0 = separations[0];
    for &s in &separations[1..] {
        if (s - s0).abs() > 1e-9 {
            return Err(QubitError::NonUniformSeparation(s0, s));
        }
    }
    let splitting = match source {
        SplittingSource::Explicit { splitting_ev } => {
            if !(*splitting_ev > 0.0) {
                return Err(QubitError::InvalidParameter {
                    name: "splitting_ev",
                    value: *splitting_ev,
                });
            }
            *splitting_ev
        }
        SplittingSource::CalibratedWell(well) => well.wkb_splitting_at(s0)?,
    };
    let eps = material.eps_surface;
    let mut params = QubitParams {
        n_qubits: n,
        t_tunnel_ev: splitting / 2.0,
        e_os_ev,
        eta_ev,
        u0_ev,
        w0_ev: screened_coulomb(s0, eps)?,
        w_same_ev: RMatrix::zeros(n, n),
        w_cross_ev: RMatrix::zeros(n, n),
        zz_convention,
    };
    for a in 0..n {
        for b in (a + 1)..n {
            let (la, ra) = layout.pairs[a];
            let (lb, rb) = layout.pairs[b];
            let w_same = 0.5
                * (screened_coulomb(layout.distance(la, lb), eps)?
                    + screened_coulomb(layout.distance(ra, rb), eps)?);
            let w_cross = 0.5
                * (screened_coulomb(layout.distance(la, rb), eps)?
                    + screened_coulomb(layout.distance(ra, lb), eps)?);
            params.set_inter_pair_w(a, b, w_same, w_cross);
        }
    }
    Ok(params)
}

/// Piecewise-constant control schedule: per-segment duration and per-qubit
/// bias vector. Evaluation at time t is right-continuous.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PulseSegment {
    pub duration_fs: f64,
    pub deltav_ev: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PulseSchedule {
    pub segments: Vec<PulseSegment>,
}

#[derive(Debug, Error, PartialEq)]
pub enum ScheduleError {
    #[error("segment {0} has non-positive duration {1}")]
    NonPositiveDuration(usize, f64),
    #[error("segment {0} has {got} biases, expected {expected}")]
    WidthMismatch { index: usize, got: usize, expected: usize },
    #[error("schedule has no segments")]
    Empty,
    #[error("segment {0} contains a non-finite value")]
    NonFinite(usize),
}

impl PulseSchedule {
    pub fn new(segments: Vec<PulseSegment>) -> Result<Self, ScheduleError> {
        if segments.is_empty() {
            return Err(ScheduleError::Empty);
        }
        let width = segments[0].deltav_ev.len();
        for (i, seg) in segments.iter().enumerate() {
            if !(seg.duration_fs > 0.0) {
                return Err(ScheduleError::NonPositiveDuration(i, seg.duration_fs));
            }
            if seg.deltav_ev.len() != width {
                return Err(ScheduleError::WidthMismatch {
                    index: i,
                    got: seg.deltav_ev.len(),
                    expected: width,
                });
            }
            if !seg.duration_fs.is_finite() || seg.deltav_ev.iter().any(|v| !v.is_finite()) {
                return Err(ScheduleError::NonFinite(i));
            }
        }
        Ok(Self { segments })
    }

    pub fn constant(duration_fs: f64, deltav_ev: Vec<f64>) -> Result<Self, ScheduleError> {
        Self::new(vec![PulseSegment { duration_fs, deltav_ev }])
    }

    pub fn n_qubits(&self) -> usize {
        self.segments[0].deltav_ev.len()
    }

    pub fn total_duration_fs(&self) -> f64 {
        self.segments.iter().map(|s| s.duration_fs).sum()
    }

    /// Bias vector at time t (right-continuous; t past the end returns the
    /// last segment).
    pub fn deltav_at(&self, t_fs: f64) -> &[f64] {
        let mut acc = 0.0;
        for seg in &self.segments {
            acc += seg.duration_fs;
            if t_fs < acc {
                return &seg.deltav_ev;
            }
        }
        &self.segments.last().unwrap().deltav_ev
    }

    pub fn concat(mut self, other: PulseSchedule) -> PulseSchedule {
        self.segments.extend(other.segments);
        self
    }
}
