//! Exact set cover over bitmask universes.
//!
//! [`exact_cover_dp`] is the table recurrence
//! `T[U', i] = T[U', i-1] ∨ (S_i ⊆ U' ∧ T[U' \ S_i, i-1])`, kept as a single
//! bit per subset of the universe and updated in place set by set.
//! [`exact_cover_search`] answers the same question top-down, branching on the
//! lowest uncovered element and memoising dead ends; it only visits reachable
//! subsets and is what the 1-rejection solver runs on.

use std::collections::HashSet;

use crate::elemset::ElemSet;
use crate::error::{Error, Result};

/// Largest universe the table recurrence accepts (2^30 bits = 128 MiB).
pub const MAX_TABLE_ELEMENTS: usize = 30;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactCover {
    /// Indices into the input family, ascending, when a cover exists.
    pub witness: Option<Vec<usize>>,
    /// Table cells evaluated by the decision pass, or subsets visited by the
    /// search.
    pub cells: u64,
}

impl ExactCover {
    pub fn found(&self) -> bool {
        self.witness.is_some()
    }
}

fn check_family(universe: ElemSet, sets: &[ElemSet]) -> Result<()> {
    if let Some(i) = sets.iter().position(|s| !s.is_subset(universe)) {
        return Err(Error::param(format!("set {i} is not contained in the universe")));
    }
    Ok(())
}

/// Renumbers `universe` onto bits `0..|universe|`.
struct Local {
    elems: Vec<usize>,
}

impl Local {
    fn new(universe: ElemSet) -> Self {
        Local {
            elems: universe.to_vec(),
        }
    }

    fn compress(&self, s: ElemSet) -> usize {
        self.elems
            .iter()
            .enumerate()
            .filter(|&(_, &e)| s.contains(e))
            .fold(0usize, |acc, (b, _)| acc | 1 << b)
    }
}

struct BitTable(Vec<u64>);

impl BitTable {
    fn new(bits: usize) -> Self {
        BitTable(vec![0; bits.div_ceil(64)])
    }

    fn get(&self, i: usize) -> bool {
        self.0[i >> 6] >> (i & 63) & 1 == 1
    }

    fn set(&mut self, i: usize) {
        self.0[i >> 6] |= 1 << (i & 63);
    }
}

/// Runs the recurrence over `sets[..limit]` and returns the first `i` with
/// `T[target, i]` true, if any.
fn first_index(u: usize, sets: &[usize], target: usize, cells: &mut u64) -> Option<usize> {
    let size = 1usize << u;
    let mut t = BitTable::new(size);
    t.set(0);
    *cells += size as u64;
    if target == 0 {
        return Some(0);
    }
    for (i, &s) in sets.iter().enumerate() {
        // Descending order leaves T[mask \ s] at its previous layer's value.
        for mask in (0..size).rev() {
            if mask & s == s && !t.get(mask) && t.get(mask ^ s) {
                t.set(mask);
            }
        }
        *cells += size as u64;
        if t.get(target) {
            return Some(i + 1);
        }
    }
    None
}

/// Decides whether pairwise disjoint members of `sets` cover `universe`
/// exactly, with the table recurrence.
///
/// `cells` counts `2^|universe| · (m + 1)` for the decision pass. A witness is
/// rebuilt with further passes: the first set index at which the remaining
/// target becomes coverable must be in the cover.
pub fn exact_cover_dp(universe: ElemSet, sets: &[ElemSet]) -> Result<ExactCover> {
    check_family(universe, sets)?;
    let u = universe.len();
    if u > MAX_TABLE_ELEMENTS {
        return Err(Error::SizeLimit(format!(
            "exact cover table needs 2^{u} bits; at most {MAX_TABLE_ELEMENTS} elements supported"
        )));
    }
    let local = Local::new(universe);
    let masks: Vec<usize> = sets.iter().map(|&s| local.compress(s)).collect();
    let full = (1usize << u) - 1;

    let mut cells = 0;
    let mut found = first_index(u, &masks, full, &mut cells);
    // Pad the decision pass to every set so the counter is layout-independent.
    if let Some(i) = found {
        cells += (masks.len() - i) as u64 * (1u64 << u);
    }
    let mut witness = Vec::new();
    let mut target = full;
    while let Some(i) = found {
        if i == 0 {
            break;
        }
        witness.push(i - 1);
        target ^= masks[i - 1];
        let mut scratch = 0;
        found = first_index(u, &masks[..i - 1], target, &mut scratch);
        debug_assert!(found.is_some());
    }
    witness.sort_unstable();
    Ok(ExactCover {
        witness: (found.is_some() || target == 0).then_some(witness),
        cells,
    })
}

/// Same decision as [`exact_cover_dp`], found depth-first: the lowest element
/// still uncovered must be covered by some set that fits. Subsets already
/// shown uncoverable are remembered.
pub fn exact_cover_search(universe: ElemSet, sets: &[ElemSet]) -> Result<ExactCover> {
    check_family(universe, sets)?;
    let mut by_elem: Vec<Vec<usize>> = vec![Vec::new(); 64];
    for (i, &s) in sets.iter().enumerate() {
        if let Some(e) = s.min() {
            by_elem[e].push(i);
        }
    }
    let mut search = Search {
        sets,
        by_elem,
        dead: HashSet::new(),
        visited: 0,
        chosen: Vec::new(),
    };
    let ok = search.cover(universe);
    let mut witness = search.chosen;
    witness.sort_unstable();
    Ok(ExactCover {
        witness: ok.then_some(witness),
        cells: search.visited,
    })
}

struct Search<'a> {
    sets: &'a [ElemSet],
    /// Sets grouped by their smallest element.
    by_elem: Vec<Vec<usize>>,
    dead: HashSet<u64>,
    visited: u64,
    chosen: Vec<usize>,
}

impl Search<'_> {
    fn cover(&mut self, rest: ElemSet) -> bool {
        let Some(e) = rest.min() else {
            return true;
        };
        if self.dead.contains(&rest.bits()) {
            return false;
        }
        self.visited += 1;
        // The set covering `e` has `e` as its minimum: everything below `e`
        // is already covered.
        for idx in 0..self.by_elem[e].len() {
            let i = self.by_elem[e][idx];
            let s = self.sets[i];
            if s.is_subset(rest) {
                self.chosen.push(i);
                if self.cover(rest - s) {
                    return true;
                }
                self.chosen.pop();
            }
        }
        self.dead.insert(rest.bits());
        false
    }
}

/// Exhaustive reference: tries every subfamily.
pub fn exact_cover_enumerate(universe: ElemSet, sets: &[ElemSet]) -> Option<Vec<usize>> {
    assert!(sets.len() < 32, "enumeration supports fewer than 32 sets");
    (0u32..1 << sets.len()).find_map(|mask| {
        let chosen: Vec<usize> = (0..sets.len()).filter(|b| mask >> b & 1 == 1).collect();
        let mut acc = ElemSet::EMPTY;
        for &i in &chosen {
            if sets[i].intersects(acc) {
                return None;
            }
            acc |= sets[i];
        }
        (acc == universe).then_some(chosen)
    })
}

/// Whether `witness` is a family of pairwise disjoint members of `sets` with
/// union `universe`.
pub fn is_exact_cover(universe: ElemSet, sets: &[ElemSet], witness: &[usize]) -> bool {
    let mut acc = ElemSet::EMPTY;
    for &i in witness {
        match sets.get(i) {
            Some(&s) if s.is_disjoint(acc) => acc |= s,
            _ => return false,
        }
    }
    acc == universe
}

#[cfg(test)]
mod tests {
    use super::*;

    fn es(v: &[usize]) -> ElemSet {
        v.iter().collect()
    }

    #[test]
    fn small_examples() {
        let u = es(&[0, 1, 2]);
        let yes = exact_cover_dp(u, &[es(&[0, 1]), es(&[2])]).unwrap();
        assert_eq!(yes.witness, Some(vec![0, 1]));
        assert_eq!(yes.cells, 8 * 3);
        let no = exact_cover_dp(u, &[es(&[0, 1]), es(&[1, 2])]).unwrap();
        assert_eq!(no.witness, None);
        assert_eq!(no.cells, 8 * 3);
        let empty = exact_cover_dp(ElemSet::EMPTY, &[]).unwrap();
        assert_eq!(empty.witness, Some(vec![]));
        assert_eq!(empty.cells, 1);
    }

    #[test]
    fn witness_prefers_earliest_completion() {
        let u = es(&[0, 1]);
        let sets = [es(&[0]), es(&[0, 1]), es(&[1])];
        let r = exact_cover_dp(u, &sets).unwrap();
        assert_eq!(r.witness, Some(vec![1]));
        let s = exact_cover_search(u, &sets).unwrap();
        assert!(is_exact_cover(u, &sets, s.witness.as_ref().unwrap()));
    }

    #[test]
    fn set_outside_universe_is_rejected() {
        assert!(exact_cover_dp(es(&[0]), &[es(&[1])]).is_err());
        assert!(exact_cover_search(es(&[0]), &[es(&[1])]).is_err());
    }

    #[test]
    fn sparse_universe() {
        let u = es(&[3, 9, 40]);
        let sets = [es(&[3, 40]), es(&[9]), es(&[9, 40])];
        let r = exact_cover_dp(u, &sets).unwrap();
        assert_eq!(r.witness, Some(vec![0, 1]));
        assert_eq!(exact_cover_search(u, &sets).unwrap().witness, Some(vec![0, 1]));
    }

    #[test]
    fn search_agrees_on_no() {
        let u = es(&[0, 1, 2, 3]);
        let sets = [es(&[0, 1]), es(&[1, 2]), es(&[2, 3, 0])];
        assert!(!exact_cover_search(u, &sets).unwrap().found());
        assert!(exact_cover_enumerate(u, &sets).is_none());
    }
}
