//! Exact solver for budget 1, enumerating the set `U'` a solution covers.
//!
//! A packing covering exactly `U'` is 1-rejection-proof iff no internal set
//! avoids `U'` entirely and no agent can swap a single member `A` for internal
//! sets inside `A ∪ (U_i \ U')` that cover more of its elements than `A` did.
//! The second condition depends only on `U'` and `A`, so unusable members are
//! filtered out up front and what remains is an exact cover question.

use std::sync::atomic::{AtomicU64, Ordering};

use rayon::prelude::*;

use crate::elemset::ElemSet;
use crate::error::{Error, Result};
use crate::model::{Instance, Packing};

use super::exact_cover::exact_cover_search;
use super::{Answer, SolveResult, Stats};

struct Prepared<'a> {
    inst: &'a Instance,
    /// Internal sets per agent.
    internal: Vec<Vec<ElemSet>>,
    all_internal: Vec<ElemSet>,
}

impl Prepared<'_> {
    /// Whether some internal family of `agent` that fits next to
    /// `U' \ A` beats the `|A ∩ U_i|` elements `A` supplies.
    fn swap_improves(&self, agent: usize, a: ElemSet, u_prime: ElemSet) -> bool {
        let own = self.inst.agent_elements(crate::model::AgentId(agent));
        let allowed = own - (u_prime - a);
        let target = (a & own).len();
        // Each useful set meets A, so at most |A| of them fit together.
        let cands: Vec<ElemSet> = self.internal[agent]
            .iter()
            .copied()
            .filter(|s| s.is_subset(allowed) && s.intersects(a))
            .collect();
        beats(&cands, 0, ElemSet::EMPTY, target)
    }

    fn usable(&self, a: ElemSet, u_prime: ElemSet) -> bool {
        (0..self.inst.p()).all(|agent| {
            let own = self.inst.agent_elements(crate::model::AgentId(agent));
            !a.intersects(own) || !self.swap_improves(agent, a, u_prime)
        })
    }

    fn try_subset(&self, u_prime: ElemSet, cells: &AtomicU64) -> Option<Vec<usize>> {
        if self.all_internal.iter().any(|s| s.is_disjoint(u_prime)) {
            return None;
        }
        let mut ids = Vec::new();
        let mut family = Vec::new();
        let mut union = ElemSet::EMPTY;
        for (i, &a) in self.inst.sets().iter().enumerate() {
            if a.is_subset(u_prime) && self.usable(a, u_prime) {
                ids.push(i);
                family.push(a);
                union |= a;
            }
        }
        if union != u_prime {
            return None;
        }
        let r = exact_cover_search(u_prime, &family).expect("family lies inside U'");
        cells.fetch_add(r.cells, Ordering::Relaxed);
        r.witness.map(|w| w.into_iter().map(|j| ids[j]).collect())
    }
}

fn beats(cands: &[ElemSet], from: usize, union: ElemSet, target: usize) -> bool {
    if union.len() > target {
        return true;
    }
    (from..cands.len()).any(|i| cands[i].is_disjoint(union) && beats(cands, i + 1, union | cands[i], target))
}

/// Subsets of `elems` of exactly `size` elements, ascending by bitmask.
fn subsets_of_size(elems: &[usize], size: usize) -> Vec<ElemSet> {
    let t = elems.len();
    let deposit =
        |local: u64| -> ElemSet { (0..t).filter(|b| local >> b & 1 == 1).map(|b| elems[b]).collect() };
    if size == 0 {
        return vec![ElemSet::EMPTY];
    }
    let mut out = Vec::new();
    let mut v: u64 = (1u64 << size) - 1;
    let end = 1u64 << t;
    while v < end {
        out.push(deposit(v));
        // Next integer with the same popcount.
        let c = v & v.wrapping_neg();
        let r = v + c;
        v = (((r ^ v) >> 2) / c) | r;
    }
    out
}

pub fn solve_one_rejection(inst: &Instance) -> Result<SolveResult> {
    if inst.n() > crate::elemset::MAX_ELEMENTS {
        return Err(Error::SizeLimit(format!(
            "{} elements exceed the maximum",
            inst.n()
        )));
    }
    let mut stats = Stats::start();
    let internal: Vec<Vec<ElemSet>> = inst
        .agents()
        .map(|a| {
            inst.internal_sets(a)
                .expect("agent in range")
                .into_iter()
                .map(|i| inst.set(i))
                .collect()
        })
        .collect();
    let prep = Prepared {
        inst,
        all_internal: internal.iter().flatten().copied().collect(),
        internal,
    };
    let elems = inst.touched().to_vec();
    let examined = AtomicU64::new(0);
    let cells = AtomicU64::new(0);
    let mut witness = None;
    // Largest U' first, then ascending bitmask: the first hit is the same for
    // any number of worker threads.
    for size in (inst.k()..=elems.len()).rev() {
        let level = subsets_of_size(&elems, size);
        witness = level.par_iter().find_map_first(|&u| {
            examined.fetch_add(1, Ordering::Relaxed);
            prep.try_subset(u, &cells)
        });
        if witness.is_some() {
            break;
        }
    }
    stats.subsets_examined = examined.into_inner();
    stats.dp_cells = cells.into_inner();
    stats.finish();
    Ok(SolveResult {
        answer: if witness.is_some() {
            Answer::Yes
        } else {
            Answer::No
        },
        witness: witness.map(Packing::new),
        stats,
    })
}
