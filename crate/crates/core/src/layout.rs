//! Device geometry: DB site positions on the Si(100) surface and their
//! grouping into qubit pairs.

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Minimum intra-pair separation, A. Set by the Si(100) surface lattice
/// spacing: two DBs cannot sit closer than one lattice site.
pub const MIN_PAIR_SEPARATION_A: f64 = 3.84;

/// Maximum tunnel-coupling range, A. Pairs must sit within it; sites of
/// distinct pairs must sit beyond it so pairs are not tunnel coupled.
pub const TUNNEL_RANGE_A: f64 = 16.0;

/// DB site positions (A) and their pairing into charge qubits.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DeviceLayout {
    /// Site coordinates (x, y) in A.
    pub sites: Vec<(f64, f64)>,
    /// Qubit pairs as (left_site_index, right_site_index).
    pub pairs: Vec<(usize, usize)>,
}

/// Structural problems: the layout cannot be interpreted at all.
/// Distinct from physics violations, which are reported by [`validate_layout`].
#[derive(Debug, Error, PartialEq)]
pub enum LayoutError {
    #[error("pair {pair} references site index {index} but there are only {n_sites} sites")]
    SiteIndexOutOfRange {
        pair: usize,
        index: usize,
        n_sites: usize,
    },
    #[error("pair {pair} pairs site {index} with itself")]
    SelfPair { pair: usize, index: usize },
    #[error("site {index} belongs to more than one pair")]
    SiteInMultiplePairs { index: usize },
    #[error("layout has no pairs")]
    NoPairs,
    #[error("site {index} has non-finite coordinates")]
    NonFiniteCoordinate { index: usize },
}

/// One violated physics constraint.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub enum Violation {
    /// Pair separation below the lattice bound (s < 3.84 A).
    MinSeparation { pair: usize, separation: f64 },
    /// Pair separation beyond tunneling range (s > 16 A).
    TunnelRange { pair: usize, separation: f64 },
    /// Sites of two distinct pairs within tunneling range (d <= 16 A).
    CrossPairIsolation {
        pair_a: usize,
        pair_b: usize,
        site_a: usize,
        site_b: usize,
        distance: f64,
    },
}

/// Outcome of physics validation: pass/fail plus every violated constraint.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ValidationReport {
    pub passed: bool,
    pub violations: Vec<Violation>,
}

impl DeviceLayout {
    /// Build a layout, checking structure only (indices valid, no site in two
    /// pairs, at least one pair). Physics constraints are checked separately
    /// by [`validate_layout`] so that out-of-spec geometries can still be
    /// constructed and inspected.
    pub fn new(sites: Vec<(f64, f64)>, pairs: Vec<(usize, usize)>) -> Result<Self, LayoutError> {
        let layout = Self { sites, pairs };
        layout.check_structure()?;
        Ok(layout)
    }

    pub fn check_structure(&self) -> Result<(), LayoutError> {
        if self.pairs.is_empty() {
            return Err(LayoutError::NoPairs);
        }
        for (index, &(x, y)) in self.sites.iter().enumerate() {
            if !(x.is_finite() && y.is_finite()) {
                return Err(LayoutError::NonFiniteCoordinate { index });
            }
        }
        let mut seen = vec![false; self.sites.len()];
        for (p, &(a, b)) in self.pairs.iter().enumerate() {
            for index in [a, b] {
                if index >= self.sites.len() {
                    return Err(LayoutError::SiteIndexOutOfRange {
                        pair: p,
                        index,
                        n_sites: self.sites.len(),
                    });
                }
            }
            if a == b {
                return Err(LayoutError::SelfPair { pair: p, index: a });
            }
            for index in [a, b] {
                if seen[index] {
                    return Err(LayoutError::SiteInMultiplePairs { index });
                }
                seen[index] = true;
            }
        }
        Ok(())
    }

    pub fn n_pairs(&self) -> usize {
        self.pairs.len()
    }

    /// Euclidean distance between two sites, A.
    pub fn distance(&self, i: usize, j: usize) -> f64 {
        let (xi, yi) = self.sites[i];
        let (xj, yj) = self.sites[j];
        ((xi - xj).powi(2) + (yi - yj).powi(2)).sqrt()
    }

    /// Intra-pair separation s for pair `p`, A.
    pub fn pair_separation(&self, p: usize) -> f64 {
        let (a, b) = self.pairs[p];
        self.distance(a, b)
    }

    /// All intra-pair separations, in pair order.
    pub fn pair_separations(&self) -> Vec<f64> {
        (0..self.pairs.len()).map(|p| self.pair_separation(p)).collect()
    }
}

/// Check the physics constraints: every pair within [3.84, 16] A (inclusive)
/// and every site of one pair strictly farther than 16 A from every site of
/// any other pair. Returns all violations, not just the first.
pub fn validate_layout(layout: &DeviceLayout) -> Result<ValidationReport, LayoutError> {
    layout.check_structure()?;
    let mut violations = Vec::new();
    for p in 0..layout.pairs.len() {
        let s = layout.pair_separation(p);
        if s < MIN_PAIR_SEPARATION_A {
            violations.push(Violation::MinSeparation { pair: p, separation: s });
        }
        if s > TUNNEL_RANGE_A {
            violations.push(Violation::TunnelRange { pair: p, separation: s });
        }
    }
    for pa in 0..layout.pairs.len() {
        for pb in (pa + 1)..layout.pairs.len() {
            let (a0, a1) = layout.pairs[pa];
            let (b0, b1) = layout.pairs[pb];
            for &sa in &[a0, a1] {
                for &sb in &[b0, b1] {
                    let d = layout.distance(sa, sb);
                    if d <= TUNNEL_RANGE_A {
                        violations.push(Violation::CrossPairIsolation {
                            pair_a: pa,
                            pair_b: pb,
                            site_a: sa,
                            site_b: sb,
                            distance: d,
                        });
                    }
                }
            }
        }
    }
    Ok(ValidationReport { passed: violations.is_empty(), violations })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn single_pair(s: f64) -> DeviceLayout {
        DeviceLayout::new(vec![(0.0, 0.0), (s, 0.0)], vec![(0, 1)]).unwrap()
    }

    #[test]
    fn single_pair_within_range_passes() {
        let report = validate_layout(&single_pair(7.68)).unwrap();
        assert!(report.passed);
        assert!(report.violations.is_empty());
    }

    #[test]
    fn lattice_bound_is_inclusive() {
        let report = validate_layout(&single_pair(3.84)).unwrap();
        assert!(report.passed);
        let report = validate_layout(&single_pair(16.0)).unwrap();
        assert!(report.passed);
    }

    #[test]
    fn close_pairs_violate_cross_isolation() {
        // Two pairs whose nearest cross-pair sites are 12 A apart.
        let layout = DeviceLayout::new(
            vec![(0.0, 0.0), (7.68, 0.0), (19.68, 0.0), (27.36, 0.0)],
            vec![(0, 1), (2, 3)],
        )
        .unwrap();
        assert!((layout.distance(1, 2) - 12.0).abs() < 1e-12);
        let report = validate_layout(&layout).unwrap();
        assert!(!report.passed);
        assert!(report
            .violations
            .iter()
            .any(|v| matches!(v, Violation::CrossPairIsolation { distance, .. } if (distance - 12.0).abs() < 1e-12)));
    }

    #[test]
    fn too_close_and_too_far_pairs_flagged() {
        let report = validate_layout(&single_pair(2.0)).unwrap();
        assert!(matches!(report.violations[0], Violation::MinSeparation { .. }));
        let report = validate_layout(&single_pair(17.0)).unwrap();
        assert!(matches!(report.violations[0], Violation::TunnelRange { .. }));
    }

    #[test]
    fn structural_errors_are_distinct() {
        assert_eq!(
            DeviceLayout::new(vec![(0.0, 0.0)], vec![]).unwrap_err(),
            LayoutError::NoPairs
        );
        assert!(matches!(
            DeviceLayout::new(vec![(0.0, 0.0), (4.0, 0.0)], vec![(0, 2)]),
            Err(LayoutError::SiteIndexOutOfRange { .. })
        ));
        assert!(matches!(
            DeviceLayout::new(vec![(0.0, 0.0), (4.0, 0.0)], vec![(1, 1)]),
            Err(LayoutError::SelfPair { .. })
        ));
        assert!(matches!(
            DeviceLayout::new(
                vec![(0.0, 0.0), (4.0, 0.0), (40.0, 0.0)],
                vec![(0, 1), (1, 2)]
            ),
            Err(LayoutError::SiteInMultiplePairs { .. })
        ));
    }

    #[test]
    fn validation_is_relabeling_invariant() {
        // Relabel sites with a permutation that preserves pairing; pass/fail
        // and the violation count must not change.
        let layout = DeviceLayout::new(
            vec![(0.0, 0.0), (7.68, 0.0), (19.68, 0.0), (27.36, 0.0)],
            vec![(0, 1), (2, 3)],
        )
        .unwrap();
        let relabeled = DeviceLayout::new(
            vec![(27.36, 0.0), (19.68, 0.0), (7.68, 0.0), (0.0, 0.0)],
            vec![(3, 2), (1, 0)],
        )
        .unwrap();
        let a = validate_layout(&layout).unwrap();
        let b = validate_layout(&relabeled).unwrap();
        assert_eq!(a.passed, b.passed);
        assert_eq!(a.violations.len(), b.violations.len());
    }
}
