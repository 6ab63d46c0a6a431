//! Maximum coverage by pairwise disjoint sets, agents ignored.

use std::collections::HashMap;

use crate::elemset::ElemSet;
use crate::error::{Error, Result};
use crate::model::{Instance, Packing};

/// Practical ceiling for the subset recurrence.
pub const MAX_KE_ELEMENTS: usize = 40;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KeResult {
    pub coverage: usize,
    pub packing: Packing,
    /// Distinct subsets evaluated.
    pub states: u64,
}

/// `best(A) = max(best(A \ {e}), max over S ∋ e, S ⊆ A of |S| + best(A \ S))`
/// with `e` the smallest element of `A`.
struct MaxCover<'a> {
    sets: &'a [ElemSet],
    by_elem: Vec<Vec<usize>>,
    memo: HashMap<u64, u8>,
}

impl MaxCover<'_> {
    fn best(&mut self, avail: ElemSet) -> u8 {
        let Some(e) = avail.min() else {
            return 0;
        };
        if let Some(&v) = self.memo.get(&avail.bits()) {
            return v;
        }
        let mut rest = avail;
        rest.remove(e);
        let mut v = self.best(rest);
        for idx in 0..self.by_elem[e].len() {
            let s = self.sets[self.by_elem[e][idx]];
            if s.is_subset(avail) {
                v = v.max(s.len() as u8 + self.best(avail - s));
            }
        }
        self.memo.insert(avail.bits(), v);
        v
    }

    fn reconstruct(&mut self, mut avail: ElemSet) -> Vec<usize> {
        let mut out = Vec::new();
        while let Some(e) = avail.min() {
            let target = self.best(avail);
            let mut rest = avail;
            rest.remove(e);
            if self.best(rest) == target {
                avail = rest;
                continue;
            }
            let cands = self.by_elem[e].clone();
            let pick = cands
                .into_iter()
                .find(|&i| {
                    let s = self.sets[i];
                    s.is_subset(avail) && s.len() as u8 + self.best(avail - s) == target
                })
                .expect("optimum is attained");
            out.push(pick);
            avail -= self.sets[pick];
        }
        out
    }
}

/// Maximum number of elements of `sets` coverable by disjoint members, and
/// one family achieving it (indices ascending).
pub fn max_coverage(sets: &[ElemSet]) -> (usize, Vec<usize>, u64) {
    let mut by_elem: Vec<Vec<usize>> = vec![Vec::new(); 64];
    for (i, s) in sets.iter().enumerate() {
        for e in s.iter() {
            by_elem[e].push(i);
        }
    }
    let touched = sets.iter().fold(ElemSet::EMPTY, |acc, &s| acc | s);
    let mut mc = MaxCover {
        sets,
        by_elem,
        memo: HashMap::new(),
    };
    let best = mc.best(touched) as usize;
    let mut picked = mc.reconstruct(touched);
    picked.sort_unstable();
    (best, picked, mc.memo.len() as u64)
}

/// Maximum coverage of `inst`. Such a packing is never 0-rejected: an
/// internal set disjoint from it would extend it.
pub fn solve_ke(inst: &Instance) -> Result<KeResult> {
    let touched = inst.touched().len();
    if touched > MAX_KE_ELEMENTS {
        return Err(Error::SizeLimit(format!(
            "{touched} covered elements exceed the coverage solver limit of {MAX_KE_ELEMENTS}"
        )));
    }
    let (coverage, picked, states) = max_coverage(inst.sets());
    Ok(KeResult {
        coverage,
        packing: Packing::new(picked),
        states,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn path_of_pairs() {
        let i = Instance::new(4, 1, vec![0; 4], 2, 0, vec![vec![0, 1], vec![1, 2], vec![2, 3]]).unwrap();
        let r = solve_ke(&i).unwrap();
        assert_eq!(r.coverage, 4);
        assert_eq!(r.packing.indices(), &[0, 2]);
    }

    #[test]
    fn no_sets() {
        let i = Instance::new(3, 1, vec![0; 3], 2, 0, vec![]).unwrap();
        let r = solve_ke(&i).unwrap();
        assert_eq!(r.coverage, 0);
        assert!(r.packing.is_empty());
    }

    #[test]
    fn larger_set_beats_two_small() {
        let sets: Vec<ElemSet> = [vec![0, 1, 2], vec![0, 3], vec![1, 4]]
            .iter()
            .map(|v| v.iter().collect())
            .collect();
        let (c, picked, _) = max_coverage(&sets);
        assert_eq!(c, 4);
        assert_eq!(picked, vec![1, 2]);
    }
}
