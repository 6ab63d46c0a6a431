//! Kernel-then-enumerate solver for unbounded rejection budgets.

use crate::elemset::ElemSet;
use crate::error::Result;
use crate::kernel::{kernelize, Verdict};
use crate::model::{Instance, Packing};
use crate::rejection::{agent_rejects, RejectionBudget};

use super::ke::max_coverage;
use super::{Answer, SolveResult, Stats};

/// A rejection-proof packing that is inclusion-maximal: each agent's
/// maximum internal packing, then every further set that fits, in index
/// order.
///
/// No agent can beat its own maximum with internal sets, and sets added on
/// top only raise coverage, so the result is rejection-proof at any budget.
pub fn maximal_rejection_proof_packing(inst: &Instance) -> Packing {
    let mut picked = Vec::new();
    let mut union = ElemSet::EMPTY;
    for a in inst.agents() {
        let own = inst.internal_sets(a).expect("agent in range");
        let sets: Vec<ElemSet> = own.iter().map(|&i| inst.set(i)).collect();
        let (_, best, _) = max_coverage(&sets);
        for b in best {
            picked.push(own[b]);
            union |= sets[b];
        }
    }
    for (i, &s) in inst.sets().iter().enumerate() {
        if s.is_disjoint(union) {
            picked.push(i);
            union |= s;
        }
    }
    Packing::new(picked)
}

pub fn solve_fpt(inst: &Instance) -> Result<SolveResult> {
    let mut stats = Stats::start();
    let outcome = kernelize(inst)?;
    stats.kernel_removed = outcome.trace.len() as u64;
    if outcome.verdict == Verdict::DecidedYes {
        let witness = maximal_rejection_proof_packing(inst);
        stats.finish();
        return Ok(SolveResult {
            answer: Answer::Yes,
            witness: Some(witness),
            stats,
        });
    }
    let reduced = outcome.instance.expect("reduced instance");
    // Original index of every surviving set.
    let mut origin: Vec<usize> = (0..inst.num_sets()).collect();
    for rec in &outcome.trace {
        origin.remove(rec.removed);
    }
    let (compact, _) = reduced.compact();
    // Any disjoint family meets the hitting set in distinct elements.
    let cap = compact.k() * compact.d();
    let mut search = Enumerate {
        inst: &compact,
        cap,
        suffix_cover: suffix_unions(&compact),
        chosen: Vec::new(),
        stats: &mut stats,
    };
    let found = search.dfs(0, ElemSet::EMPTY);
    let witness = found.then(|| Packing::new(search.chosen.iter().map(|&i| origin[i]).collect()));
    stats.finish();
    Ok(SolveResult {
        answer: if found { Answer::Yes } else { Answer::No },
        witness,
        stats,
    })
}

fn suffix_unions(inst: &Instance) -> Vec<ElemSet> {
    let mut out = vec![ElemSet::EMPTY; inst.num_sets() + 1];
    for i in (0..inst.num_sets()).rev() {
        out[i] = out[i + 1] | inst.set(i);
    }
    out
}

struct Enumerate<'a> {
    inst: &'a Instance,
    cap: usize,
    suffix_cover: Vec<ElemSet>,
    chosen: Vec<usize>,
    stats: &'a mut Stats,
}

impl Enumerate<'_> {
    fn dfs(&mut self, from: usize, union: ElemSet) -> bool {
        self.stats.subsets_examined += 1;
        if union.len() >= self.inst.k() && self.proof(union) {
            return true;
        }
        if self.chosen.len() == self.cap {
            return false;
        }
        // Coverage still reachable from here on.
        if (union | self.suffix_cover[from]).len() < self.inst.k() {
            return false;
        }
        for i in from..self.inst.num_sets() {
            let s = self.inst.set(i);
            if s.intersects(union) {
                continue;
            }
            self.chosen.push(i);
            if self.dfs(i + 1, union | s) {
                return true;
            }
            self.chosen.pop();
        }
        false
    }

    fn proof(&mut self, union: ElemSet) -> bool {
        self.stats.rejections_checked += 1;
        let x = Packing::new(self.chosen.clone());
        self.inst
            .agents()
            .all(|a| !agent_rejects(self.inst, &x, union, a, RejectionBudget::Unbounded, self.cap))
    }
}
