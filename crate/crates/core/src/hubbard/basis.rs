//! Occupation-number basis for a fixed (N_e, S_z) sector.

use super::HubbardError;
use std::collections::HashMap;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Spin {
    Up,
    Down,
}

impl Spin {
    pub fn index(self) -> usize {
        match self {
            Spin::Up => 0,
            Spin::Down => 1,
        }
    }
}

/// Orbital index in the fixed global order: site-major, spin-up before
/// spin-down.
#[inline]
pub fn orbital(site: usize, spin: Spin) -> u32 {
    (2 * site + spin.index()) as u32
}

/// Fock basis of one (n_electrons, 2*Sz) sector. Basis states are occupation
/// bitmasks over orbitals, listed in ascending mask order.
#[derive(Debug, Clone)]
pub struct FockBasis {
    pub n_sites: usize,
    pub n_electrons: usize,
    pub twice_sz: i32,
    pub masks: Vec<u32>,
    index: HashMap<u32, usize>,
}

impl FockBasis {
    pub fn dimension(&self) -> usize {
        self.masks.len()
    }

    pub fn index_of(&self, mask: u32) -> Option<usize> {
        self.index.get(&mask).copied()
    }
}

/// All k-subsets of n items as bitmasks, ascending (Gosper's hack).
fn subsets(n: usize, k: usize) -> Vec<u32> {
    if k > n {
        return Vec::new();
    }
    if k == 0 {
        return vec![0];
    }
    let mut out = Vec::new();
    let limit = 1u32 << n;
    let mut v: u32 = (1 << k) - 1;
    while v < limit {
        out.push(v);
        let t = v | (v.wrapping_sub(1));
        let next = t.wrapping_add(1)
            | (((!t & (!t).wrapping_neg()).wrapping_sub(1)) >> (v.trailing_zeros() + 1));
        if next <= v {
            break;
        }
        v = next;
    }
    out
}

/// Build the complete, duplicate-free basis of the (n_electrons, 2*Sz) sector.
pub fn build_basis(
    n_sites: usize,
    n_electrons: usize,
    twice_sz: i32,
) -> Result<FockBasis, HubbardError> {
    if n_sites > 16 {
        return Err(HubbardError::TooManySites(n_sites));
    }
    if n_electrons > 2 * n_sites {
        return Err(HubbardError::TooManyElectrons { n_electrons, n_sites });
    }
    // n_up - n_down = twice_sz, n_up + n_down = n_electrons.
    let doubled_up = n_electrons as i64 + twice_sz as i64;
    if doubled_up % 2 != 0 || doubled_up < 0 || doubled_up / 2 > n_electrons as i64 {
        return Err(HubbardError::IncompatibleSector { n_electrons, twice_sz });
    }
    let n_up = (doubled_up / 2) as usize;
    let n_down = n_electrons - n_up;
    if n_up > n_sites || n_down > n_sites {
        return Err(HubbardError::IncompatibleSector { n_electrons, twice_sz });
    }
    let mut masks = Vec::new();
    for up in subsets(n_sites, n_up) {
        // Spread site-mask bits onto orbital positions.
        let mut up_orbitals = 0u32;
        for site in 0..n_sites {
            if up & (1 << site) != 0 {
                up_orbitals |= 1 << orbital(site, Spin::Up);
            }
        }
        for down in subsets(n_sites, n_down) {
            let mut mask = up_orbitals;
            for site in 0..n_sites {
                if down & (1 << site) != 0 {
                    mask |= 1 << orbital(site, Spin::Down);
                }
            }
            masks.push(mask);
        }
    }
    masks.sort_unstable();
    let index = masks.iter().enumerate().map(|(i, &m)| (m, i)).collect();
    Ok(FockBasis { n_sites, n_electrons, twice_sz, masks, index })
}

/// Apply the annihilation operator for `orb` to a basis mask.
/// Returns (new mask, fermionic sign) or None if the orbital is empty.
#[inline]
pub fn annihilate(mask: u32, orb: u32) -> Option<(u32, f64)> {
    if mask & (1 << orb) == 0 {
        return None;
    }
    let below = mask & ((1u32 << orb) - 1);
    let sign = if below.count_ones() % 2 == 0 { 1.0 } else { -1.0 };
    Some((mask & !(1 << orb), sign))
}

/// Apply the creation operator for `orb`. None if the orbital is occupied.
#[inline]
pub fn create(mask: u32, orb: u32) -> Option<(u32, f64)> {
    if mask & (1 << orb) != 0 {
        return None;
    }
    let below = mask & ((1u32 << orb) - 1);
    let sign = if below.count_ones() % 2 == 0 { 1.0 } else { -1.0 };
    Some((mask | (1 << orb), sign))
}

/// Occupation of (site, spin) in a mask.
#[inline]
pub fn occupation(mask: u32, site: usize, spin: Spin) -> f64 {
    if mask & (1 << orbital(site, spin)) != 0 {
        1.0
    } else {
        0.0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn one_up_electron_on_two_sites() {
        let b = build_basis(2, 1, 1).unwrap();
        assert_eq!(b.dimension(), 2);
    }

    #[test]
    fn three_electrons_on_a_pair() {
        // |L(ud), R(u)> and |L(u), R(ud)>: dimension 2.
        let b = build_basis(2, 3, 1).unwrap();
        assert_eq!(b.dimension(), 2);
        // Explicit masks: orbitals Lup=0, Ldown=1, Rup=2, Rdown=3.
        assert_eq!(b.masks, vec![0b0111, 0b1101]);
    }

    #[test]
    fn sector_dimension_matches_brute_force() {
        // 4 sites, 6 electrons, Sz = +1 (n_up = 4, n_down = 2).
        let b = build_basis(4, 6, 2).unwrap();
        let mut count = 0usize;
        for mask in 0u32..(1 << 8) {
            if mask.count_ones() != 6 {
                continue;
            }
            let mut up = 0i32;
            let mut down = 0i32;
            for site in 0..4 {
                if mask & (1 << (2 * site)) != 0 {
                    up += 1;
                }
                if mask & (1 << (2 * site + 1)) != 0 {
                    down += 1;
                }
            }
            if up - down == 2 {
                count += 1;
            }
        }
        assert_eq!(b.dimension(), count);
        assert_eq!(count, 6);
    }

    #[test]
    fn incompatible_sector_rejected() {
        assert!(matches!(
            build_basis(2, 3, 0),
            Err(HubbardError::IncompatibleSector { .. })
        ));
        assert!(matches!(
            build_basis(2, 2, 6),
            Err(HubbardError::IncompatibleSector { .. })
        ));
        assert!(matches!(
            build_basis(2, 5, 1),
            Err(HubbardError::TooManyElectrons { .. })
        ));
    }

    #[test]
    fn masks_are_unique_and_sorted() {
        let b = build_basis(3, 3, 1).unwrap();
        for w in b.masks.windows(2) {
            assert!(w[0] < w[1]);
        }
        for (i, &m) in b.masks.iter().enumerate() {
            assert_eq!(b.index_of(m), Some(i));
        }
    }

    #[test]
    fn fermion_signs_from_global_order() {
        // c_1 on {0,1,2}: one occupied orbital below 1 -> sign -1.
        let mask = 0b0111u32;
        let (m, s) = annihilate(mask, 1).unwrap();
        assert_eq!(m, 0b0101);
        assert_eq!(s, -1.0);
        // c-dagger_3 on {0,2}: two occupied below 3 -> sign +1.
        let (m2, s2) = create(m, 3).unwrap();
        assert_eq!(m2, 0b1101);
        assert_eq!(s2, 1.0);
        // Occupied/empty guards.
        assert!(create(mask, 0).is_none());
        assert!(annihilate(mask, 3).is_none());
    }
}
