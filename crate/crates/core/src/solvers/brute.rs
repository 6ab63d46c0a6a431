//! Exhaustive reference solver: every disjoint subfamily, checked with the
//! oracle rejection enumeration.

use crate::elemset::ElemSet;
use crate::error::{Error, Result};
use crate::model::{Instance, Packing};
use crate::rejection::{oracle, RejectionBudget};

use super::{Answer, SolveResult, Stats};

/// Size guard for the brute-force oracle.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BruteLimits {
    pub max_elements: usize,
    pub max_sets: usize,
}

impl Default for BruteLimits {
    fn default() -> Self {
        BruteLimits {
            max_elements: 12,
            max_sets: 16,
        }
    }
}

impl BruteLimits {
    pub const UNGUARDED: BruteLimits = BruteLimits {
        max_elements: usize::MAX,
        max_sets: usize::MAX,
    };

    pub fn check(&self, inst: &Instance) -> Result<()> {
        if inst.n() > self.max_elements || inst.num_sets() > self.max_sets {
            return Err(Error::SizeLimit(format!(
                "brute force is limited to {} elements and {} sets, instance has {} and {}",
                self.max_elements,
                self.max_sets,
                inst.n(),
                inst.num_sets()
            )));
        }
        Ok(())
    }
}

pub fn solve_brute_force(inst: &Instance, budget: RejectionBudget) -> Result<SolveResult> {
    solve_brute_force_with(inst, budget, BruteLimits::default())
}

pub fn solve_brute_force_with(
    inst: &Instance,
    budget: RejectionBudget,
    limits: BruteLimits,
) -> Result<SolveResult> {
    limits.check(inst)?;
    let mut stats = Stats::start();
    let mut chosen = Vec::new();
    let found = dfs(inst, budget, 0, ElemSet::EMPTY, &mut chosen, &mut stats)?;
    stats.finish();
    Ok(SolveResult {
        answer: if found { Answer::Yes } else { Answer::No },
        witness: found.then(|| Packing::new(chosen)),
        stats,
    })
}

// Preorder over packings: the current family is tested before any extension.
fn dfs(
    inst: &Instance,
    budget: RejectionBudget,
    from: usize,
    union: ElemSet,
    chosen: &mut Vec<usize>,
    stats: &mut Stats,
) -> Result<bool> {
    stats.subsets_examined += 1;
    if union.len() >= inst.k() {
        stats.rejections_checked += 1;
        if oracle::is_rejection_proof(inst, &Packing::new(chosen.clone()), budget)? {
            return Ok(true);
        }
    }
    for i in from..inst.num_sets() {
        let s = inst.set(i);
        if s.intersects(union) {
            continue;
        }
        chosen.push(i);
        if dfs(inst, budget, i + 1, union | s, chosen, stats)? {
            return Ok(true);
        }
        chosen.pop();
    }
    Ok(false)
}
