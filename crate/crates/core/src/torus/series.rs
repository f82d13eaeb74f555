//! Geometric conjugacy classes of pairs `(w, χ)`.
//!
//! A character χ of `T^{wF}` transports through the Smith basis to an
//! element φ of `Hom(X_*, Q/Z)` killed by `qτw − 1`; two pairs are
//! geometrically conjugate exactly when their φ's lie in the same W-orbit
//! (under precomposition with the reflection action). The orbit of the
//! trivial character is the unipotent class.
//!
//! An independent union-find oracle over pairs is provided for testing: it
//! joins `(w, φ)` with `(x w τ(x)^{-1}, φ ∘ τ(x)^{-1})` for the generator
//! moves and merges pairs carrying equal φ, never canonicalizing orbits.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_integer::Integer;
use num_traits::ToPrimitive;

use crate::coxeter::weyl::{ElemId, WeylGroup};
use crate::error::Result;
use crate::torus::{characters, fixed_torus, FixedTorus, FrobeniusDatum, TorusCharacter};

/// Element of `Hom(X_*, Q/Z)` with finite order prime to p: the functional
/// `x ↦ Σ_i nums[i]·x_i / den (mod 1)` in canonical reduced form (minimal
/// common denominator, numerators reduced mod den).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CharVector {
    pub den: u64,
    pub nums: Vec<u64>,
}

impl CharVector {
    pub fn trivial(rank: usize) -> Self {
        CharVector {
            den: 1,
            nums: vec![0; rank],
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.den == 1
    }

    fn canonicalize(den: u64, nums: Vec<u64>) -> Self {
        // minimal common denominator = lcm of the reduced per-coordinate ones
        let mut new_den = 1u64;
        for &n in &nums {
            let g = (n % den).gcd(&den);
            new_den = new_den.lcm(&(den / g));
        }
        let nums = nums
            .iter()
            .map(|&n| ((n as u128 % den as u128) * (new_den as u128) / den as u128) as u64)
            .collect();
        CharVector { den: new_den, nums }
    }

    /// Precompose with an integer matrix acting on `X_*`: `(φ∘M)(x) = φ(Mx)`.
    pub fn precompose(&self, m: &[i64], rank: usize) -> CharVector {
        let mut nums = vec![0u64; rank];
        for (j, out) in nums.iter_mut().enumerate() {
            let mut acc: i128 = 0;
            for (i, &n) in self.nums.iter().enumerate() {
                acc += n as i128 * m[i * rank + j] as i128;
            }
            *out = acc.rem_euclid(self.den as i128) as u64;
        }
        CharVector::canonicalize(self.den, nums)
    }

    /// Transport a character of `T^{wF}` into `Hom(X_*, Q/Z)` through the
    /// Smith basis: `φ(x) = Σ_i a_i (U x)_i / d_i`.
    pub fn from_torus_character(t: &FixedTorus, chi: &TorusCharacter, rank: usize) -> CharVector {
        let den: u64 = t.invariants.iter().product::<u64>().max(1);
        let mut nums = vec![0u64; rank];
        for (j, out) in nums.iter_mut().enumerate() {
            let mut acc: u128 = 0;
            for i in 0..t.invariants.len() {
                let d = t.invariants[i];
                if d == 1 {
                    continue;
                }
                let a = chi.tuple[i];
                let uij = t.u[(i, j)].to_i128().unwrap();
                let term = (a as i128 * (den / d) as i128 * uij).rem_euclid(den as i128);
                acc = (acc + term as u128) % den as u128;
            }
            *out = acc as u64;
        }
        CharVector::canonicalize(den, nums)
    }

    /// Recover the invariant-factor tuple of φ as a character of `T^{wF}`;
    /// the inverse of `from_torus_character` when φ is `(wF)`-stable.
    pub fn to_torus_character(&self, t: &FixedTorus, rank: usize) -> TorusCharacter {
        // generator g_i of the Z/d_i summand is U^{-1} e_i; a_i = d_i · φ(g_i)
        let tuple = (0..t.invariants.len())
            .map(|i| {
                let d = t.invariants[i];
                if d == 1 {
                    return 0;
                }
                let mut acc: i128 = 0;
                for j in 0..rank {
                    acc += self.nums[j] as i128 * t.u_inv[(j, i)].to_i128().unwrap();
                }
                let val = acc.rem_euclid(self.den as i128) as u64; // φ(g_i)·den
                debug_assert_eq!(
                    (val as u128 * d as u128) % self.den as u128,
                    0,
                    "φ value has order dividing d_i"
                );
                ((val as u128 * d as u128 / self.den as u128) % d as u128) as u64
            })
            .collect();
        TorusCharacter {
            moduli: t.invariants.clone(),
            tuple,
        }
    }
}

/// One geometric conjugacy class: the full W-orbit of character data plus
/// the member pairs it collects.
#[derive(Clone, Debug)]
pub struct GeomClass {
    /// Canonical representative: the minimal φ in the orbit.
    pub rep: CharVector,
    /// The whole orbit, sorted.
    pub orbit: Vec<CharVector>,
    /// Member pairs `(w, χ)`, sorted by `(w, tuple)`.
    pub members: Vec<(ElemId, TorusCharacter)>,
}

#[derive(Clone, Debug)]
pub struct SeriesTable {
    pub classes: Vec<GeomClass>,
}

impl SeriesTable {
    pub fn num_pairs(&self) -> usize {
        self.classes.iter().map(|c| c.members.len()).sum()
    }

    /// Index of the class containing the given φ, if any.
    pub fn class_of(&self, phi: &CharVector) -> Option<usize> {
        self.classes
            .iter()
            .position(|c| c.orbit.binary_search(phi).is_ok())
    }
}

/// W-orbit of a character vector under precomposition with all elements.
pub fn orbit_of(group: &WeylGroup, phi: &CharVector) -> Vec<CharVector> {
    let rank = group.rank();
    let mut orbit = std::collections::BTreeSet::new();
    let mut stack = vec![phi.clone()];
    orbit.insert(phi.clone());
    while let Some(cur) = stack.pop() {
        for s in 0..group.num_simple() {
            let m = group.matrix(group.simple(s));
            let next = cur.precompose(m, rank);
            if orbit.insert(next.clone()) {
                stack.push(next);
            }
        }
    }
    orbit.into_iter().collect()
}

/// Geometric conjugacy classes of all pairs `(w, χ)` over all `w ∈ W`:
/// group pairs by the canonical representative of the W-orbit of their
/// transported character datum.
pub fn geometric_classes(group: &Arc<WeylGroup>, fd: &FrobeniusDatum) -> Result<SeriesTable> {
    let rank = group.rank();
    let mut by_rep: BTreeMap<CharVector, GeomClass> = BTreeMap::new();
    for w in group.elements() {
        let t = fixed_torus(group, w, fd)?;
        for chi in characters(&t) {
            let phi = CharVector::from_torus_character(&t, &chi, rank);
            let orbit = orbit_of(group, &phi);
            let rep = orbit[0].clone();
            let entry = by_rep.entry(rep.clone()).or_insert_with(|| GeomClass {
                rep,
                orbit,
                members: Vec::new(),
            });
            entry.members.push((w, chi));
        }
    }
    let mut classes: Vec<GeomClass> = by_rep.into_values().collect();
    for c in classes.iter_mut() {
        c.members.sort();
    }
    Ok(SeriesTable { classes })
}

/// Independent oracle: partition the same pairs by union-find, joining
/// generator moves `(w, φ) ↦ (x w τ(x)^{-1}, φ ∘ τ(x)^{-1})` and pairs with
/// equal φ. Returns the number of classes.
pub fn pair_orbit_class_count(group: &Arc<WeylGroup>, fd: &FrobeniusDatum) -> Result<usize> {
    let rank = group.rank();
    let mut pairs: Vec<(ElemId, CharVector)> = Vec::new();
    for w in group.elements() {
        let t = fixed_torus(group, w, fd)?;
        for chi in characters(&t) {
            pairs.push((w, CharVector::from_torus_character(&t, &chi, rank)));
        }
    }
    let index: BTreeMap<(ElemId, CharVector), usize> = pairs
        .iter()
        .cloned()
        .enumerate()
        .map(|(i, p)| (p, i))
        .collect();

    let mut parent: Vec<usize> = (0..pairs.len()).collect();
    fn find(parent: &mut [usize], mut i: usize) -> usize {
        while parent[i] != i {
            parent[i] = parent[parent[i]];
            i = parent[i];
        }
        i
    }
    let union = |parent: &mut [usize], a: usize, b: usize| {
        let (ra, rb) = (find(parent, a), find(parent, b));
        if ra != rb {
            parent[ra] = rb;
        }
    };

    // equal-φ merges
    let mut by_phi: BTreeMap<CharVector, Vec<usize>> = BTreeMap::new();
    for (i, (_, phi)) in pairs.iter().enumerate() {
        by_phi.entry(phi.clone()).or_default().push(i);
    }
    for group_ids in by_phi.values() {
        for w in group_ids.windows(2) {
            union(&mut parent, w[0], w[1]);
        }
    }

    // generator moves
    for (i, (w, phi)) in pairs.iter().enumerate() {
        for s in 0..group.num_simple() {
            let x = group.simple(s);
            let tx = group.tau(x);
            // x w τ(x)^{-1}; generators are involutions
            let new_w = group.multiply(group.multiply(x, *w), tx);
            let m_tx_inv = group.matrix(group.invert(tx));
            let new_phi = phi.precompose(m_tx_inv, rank);
            let j = *index
                .get(&(new_w, new_phi.clone()))
                .unwrap_or_else(|| panic!("pair move left the pair set: {new_w:?}"));
            union(&mut parent, i, j);
        }
    }

    let mut roots = std::collections::BTreeSet::new();
    for i in 0..pairs.len() {
        roots.insert(find(&mut parent, i));
    }
    Ok(roots.len())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coxeter::weyl::WeylGroup;

    #[test]
    fn gl2_series_counts() {
        let g = WeylGroup::build_preset("GL2").unwrap();
        for (q, expect) in [(3u64, 6usize), (2, 2)] {
            let fd = FrobeniusDatum::new(&g, q, None).unwrap();
            let table = geometric_classes(&g, &fd).unwrap();
            assert_eq!(table.classes.len(), expect, "GL2 q={q}: q(q-1) classes");
            assert_eq!(
                pair_orbit_class_count(&g, &fd).unwrap(),
                expect,
                "oracle agrees"
            );
            // partition check: members count = total pairs
            let total: usize = g
                .elements()
                .map(|w| fixed_torus(&g, w, &fd).unwrap().order() as usize)
                .sum();
            assert_eq!(table.num_pairs(), total);
        }
    }

    #[test]
    fn trivial_pairs_form_one_class() {
        for name in ["A1", "A2", "GL2", "B2"] {
            let g = WeylGroup::build_preset(name).unwrap();
            let fd = FrobeniusDatum::new(&g, 3, None).unwrap();
            let table = geometric_classes(&g, &fd).unwrap();
            let unipotent: Vec<usize> = table
                .classes
                .iter()
                .enumerate()
                .filter(|(_, c)| c.rep.is_trivial())
                .map(|(i, _)| i)
                .collect();
            assert_eq!(unipotent.len(), 1, "{name}");
            let c = &table.classes[unipotent[0]];
            // exactly the |W| trivial pairs
            assert_eq!(c.members.len(), g.order(), "{name}");
            assert!(c.members.iter().all(|(_, chi)| chi.is_trivial()));
        }
    }

    #[test]
    fn pure_torus_series() {
        let g = WeylGroup::build_preset("T1").unwrap();
        let fd = FrobeniusDatum::new(&g, 3, None).unwrap();
        let table = geometric_classes(&g, &fd).unwrap();
        assert_eq!(table.classes.len(), 2); // |T^F| = q−1 singleton classes
    }

    #[test]
    fn oracle_agreement_beyond_gl2() {
        for (name, q) in [("A1", 3u64), ("A1", 2), ("A2", 2), ("B2", 2)] {
            let g = WeylGroup::build_preset(name).unwrap();
            let fd = FrobeniusDatum::new(&g, q, None).unwrap();
            let table = geometric_classes(&g, &fd).unwrap();
            assert_eq!(
                table.classes.len(),
                pair_orbit_class_count(&g, &fd).unwrap(),
                "{name} q={q}"
            );
        }
    }

    #[test]
    fn character_transport_round_trip() {
        let g = WeylGroup::build_preset("GL2").unwrap();
        let fd = FrobeniusDatum::new(&g, 3, None).unwrap();
        for w in g.elements() {
            let t = fixed_torus(&g, w, &fd).unwrap();
            for chi in characters(&t) {
                let phi = CharVector::from_torus_character(&t, &chi, g.rank());
                let back = phi.to_torus_character(&t, g.rank());
                assert_eq!(back, chi);
            }
        }
    }

    #[test]
    fn w_equivariance_lands_in_same_class() {
        let g = WeylGroup::build_preset("GL2").unwrap();
        let fd = FrobeniusDatum::new(&g, 3, None).unwrap();
        let table = geometric_classes(&g, &fd).unwrap();
        for w in g.elements() {
            let t = fixed_torus(&g, w, &fd).unwrap();
            for chi in characters(&t) {
                let phi = CharVector::from_torus_character(&t, &chi, g.rank());
                let c = table.class_of(&phi).unwrap();
                for x in g.elements() {
                    let tx = g.tau(x);
                    let new_w = g.multiply(g.multiply(x, w), g.invert(tx));
                    let new_phi = phi.precompose(g.matrix(g.invert(tx)), g.rank());
                    let t2 = fixed_torus(&g, new_w, &fd).unwrap();
                    let chi2 = new_phi.to_torus_character(&t2, g.rank());
                    let phi2 = CharVector::from_torus_character(&t2, &chi2, g.rank());
                    assert_eq!(phi2, new_phi, "transported φ is (w'F)-stable data");
                    assert_eq!(table.class_of(&new_phi), Some(c));
                }
            }
        }
    }
}
