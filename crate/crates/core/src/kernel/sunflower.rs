//! Sunflowers and the recursive construction that finds them.

use crate::elemset::ElemSet;

/// A family of sets whose pairwise intersections all equal `core`.
///
/// `members` index into whatever slice the sunflower was found in.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Sunflower {
    pub core: ElemSet,
    pub members: Vec<usize>,
}

impl Sunflower {
    /// Checks the sunflower invariants against `sets`: at least two distinct
    /// members, non-empty petals, every pairwise intersection equal to the core.
    pub fn is_valid_in(&self, sets: &[ElemSet]) -> bool {
        if self.members.len() < 2 {
            return false;
        }
        let mut sorted = self.members.clone();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != self.members.len() || sorted.iter().any(|&m| m >= sets.len()) {
            return false;
        }
        for (a, &i) in self.members.iter().enumerate() {
            if (sets[i] - self.core).is_empty() {
                return false;
            }
            for &j in &self.members[a + 1..] {
                if sets[i] & sets[j] != self.core {
                    return false;
                }
            }
        }
        true
    }

    pub fn petal(&self, sets: &[ElemSet], member: usize) -> ElemSet {
        sets[member] - self.core
    }
}

/// Looks for a sunflower with at least `z` petals among `sets`.
///
/// Greedily takes a maximal pairwise-disjoint subfamily; if it has `z` sets it
/// is a sunflower with empty core. Otherwise every set meets the union of that
/// subfamily, so the most frequent element of the union is put into the core
/// and the search recurses on the sets containing it. When
/// `sets.len() > d · d! · (z − 1)^d` (with `d` the largest set size) this
/// always succeeds; below that it may return `None`. Deterministic in input
/// order.
pub fn find_sunflower(sets: &[ElemSet], z: usize) -> Option<Sunflower> {
    assert!(z >= 2, "a sunflower needs at least two petals");
    let family: Vec<(usize, ElemSet)> = sets
        .iter()
        .copied()
        .enumerate()
        .filter(|(_, s)| !s.is_empty())
        .collect();
    let (core, members) = search(&family, z)?;
    Some(Sunflower { core, members })
}

/// `family` holds (original index, residual set) pairs with non-empty residuals.
fn search(family: &[(usize, ElemSet)], z: usize) -> Option<(ElemSet, Vec<usize>)> {
    if family.len() < z {
        return None;
    }
    let mut union = ElemSet::EMPTY;
    let mut disjoint = Vec::new();
    for &(idx, s) in family {
        if s.is_disjoint(union) {
            union |= s;
            disjoint.push(idx);
        }
    }
    if disjoint.len() >= z {
        return Some((ElemSet::EMPTY, disjoint));
    }

    // Most frequent element of the union, lowest id on ties.
    let mut best: Option<(usize, usize)> = None;
    for e in union {
        let count = family.iter().filter(|(_, s)| s.contains(e)).count();
        if best.is_none_or(|(_, c)| count > c) {
            best = Some((e, count));
        }
    }
    let (e, _) = best?;
    let single = ElemSet::singleton(e);
    let reduced: Vec<(usize, ElemSet)> = family
        .iter()
        .filter(|(_, s)| s.contains(e))
        .map(|&(i, s)| (i, s - single))
        // A set equal to the core so far has no petal left.
        .filter(|(_, s)| !s.is_empty())
        .collect();
    let (core, members) = search(&reduced, z)?;
    Some((core | single, members))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sets(v: &[&[usize]]) -> Vec<ElemSet> {
        v.iter().map(|s| s.iter().collect()).collect()
    }

    #[test]
    fn textbook_sunflower() {
        let s = sets(&[&[0, 1], &[0, 2], &[0, 3]]);
        let f = find_sunflower(&s, 3).unwrap();
        assert_eq!(f.core.to_vec(), vec![0]);
        assert_eq!(f.members, vec![0, 1, 2]);
        assert!(f.is_valid_in(&s));
    }

    #[test]
    fn disjoint_family_has_empty_core() {
        let s = sets(&[&[0], &[1], &[2]]);
        let f = find_sunflower(&s, 3).unwrap();
        assert!(f.core.is_empty());
        assert_eq!(f.members.len(), 3);
        assert!(f.is_valid_in(&s));
    }

    #[test]
    fn twenty_five_two_sets_guarantee_three_petals() {
        // 25 > 2 * 2! * 2^2 = 16
        let mut all = Vec::new();
        for a in 0..10 {
            for b in a + 1..10 {
                all.push(ElemSet::from_iter([a, b]));
            }
        }
        for offset in 0..10 {
            let s: Vec<ElemSet> = all.iter().cycle().skip(offset * 3).take(25).copied().collect();
            let f = find_sunflower(&s, 3).unwrap();
            assert!(f.members.len() >= 3);
            assert!(f.is_valid_in(&s));
        }
    }

    #[test]
    fn too_small_family() {
        let s = sets(&[&[0, 1], &[1, 2]]);
        assert!(find_sunflower(&s, 3).is_none());
    }

    #[test]
    fn core_equal_set_is_not_a_member() {
        // {0} would have an empty petal over core {0}.
        let s = sets(&[&[0], &[0, 1], &[0, 2], &[0, 3]]);
        let f = find_sunflower(&s, 3).unwrap();
        assert!(f.is_valid_in(&s));
        assert!(!f.members.contains(&0));
    }

    #[test]
    fn invalid_sunflowers_are_detected() {
        let s = sets(&[&[0, 1], &[0, 2], &[1, 2]]);
        let bad = Sunflower {
            core: ElemSet::singleton(0),
            members: vec![0, 1, 2],
        };
        assert!(!bad.is_valid_in(&s));
        let single = Sunflower {
            core: ElemSet::EMPTY,
            members: vec![0],
        };
        assert!(!single.is_valid_in(&s));
    }
}
