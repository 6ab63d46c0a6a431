//! Rejections: whether an agent can drop some sets of a packing and add its
//! own internal sets so that strictly more of its elements end up covered.
//!
//! The main search enumerates pairwise-disjoint families of internal sets
//! (`added`) and derives the rejected sets from them: exactly the sets of the
//! packing that meet the added family. Rejecting anything beyond those never
//! helps the agent, and rejecting less breaks disjointness, so the budget check
//! against this forced set is exact. [`oracle`] holds an independent
//! enumeration over all (rejected, added) pairs.

use std::fmt;
use std::str::FromStr;

use crate::elemset::ElemSet;
use crate::error::{Error, Result};
use crate::model::{AgentId, Instance, Packing};

/// Maximum number of sets an agent may reject.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RejectionBudget {
    Bounded(usize),
    Unbounded,
}

impl RejectionBudget {
    #[inline]
    pub fn allows(self, rejected: usize) -> bool {
        match self {
            RejectionBudget::Bounded(c) => rejected <= c,
            RejectionBudget::Unbounded => true,
        }
    }

    /// `true` when `self` permits at least as many rejections as `other`.
    pub fn covers(self, other: RejectionBudget) -> bool {
        match (self, other) {
            (RejectionBudget::Unbounded, _) => true,
            (RejectionBudget::Bounded(_), RejectionBudget::Unbounded) => false,
            (RejectionBudget::Bounded(a), RejectionBudget::Bounded(b)) => a >= b,
        }
    }
}

impl fmt::Display for RejectionBudget {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RejectionBudget::Bounded(c) => write!(f, "{c}"),
            RejectionBudget::Unbounded => f.write_str("inf"),
        }
    }
}

impl FromStr for RejectionBudget {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "inf" => Ok(RejectionBudget::Unbounded),
            _ => s.parse().map(RejectionBudget::Bounded).map_err(|_| {
                Error::param(format!(
                    "budget must be a non-negative integer or `inf`, got `{s}`"
                ))
            }),
        }
    }
}

/// How `agent` rejects a packing: drop `rejected`, add `added`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RejectionWitness {
    pub agent: AgentId,
    pub rejected: Vec<usize>,
    pub added: Vec<usize>,
}

impl RejectionWitness {
    /// The alternative packing `(x \ rejected) ∪ added`.
    pub fn alternative(&self, x: &Packing) -> Packing {
        x.indices()
            .iter()
            .copied()
            .filter(|i| !self.rejected.contains(i))
            .chain(self.added.iter().copied())
            .collect()
    }

    /// Re-checks the witness from scratch against `x`.
    pub fn check(&self, inst: &Instance, x: &Packing, budget: RejectionBudget) -> Result<(), String> {
        if self.agent.0 >= inst.p() {
            return Err(format!("agent {} out of range", self.agent));
        }
        let covered = inst.covered(x).map_err(|e| e.to_string())?;
        if let Some(&r) = self.rejected.iter().find(|&&r| !x.contains(r)) {
            return Err(format!("rejected set {r} is not in the packing"));
        }
        if !budget.allows(self.rejected.len()) {
            return Err(format!(
                "{} rejections exceed budget {budget}",
                self.rejected.len()
            ));
        }
        for &a in &self.added {
            if a >= inst.num_sets() || inst.internal_owner(a) != Some(self.agent) {
                return Err(format!("added set {a} is not internal to agent {}", self.agent));
            }
        }
        let mut acc = ElemSet::EMPTY;
        let kept = x.indices().iter().filter(|i| !self.rejected.contains(i));
        let mut seen = Vec::new();
        for &i in kept.chain(self.added.iter()) {
            if seen.contains(&i) {
                continue;
            }
            seen.push(i);
            let s = inst.set(i);
            if s.intersects(acc) {
                return Err(format!("alternative packing overlaps at set {i}"));
            }
            acc |= s;
        }
        let own = inst.agent_elements(self.agent);
        if (acc & own).len() <= (covered & own).len() {
            return Err(format!(
                "alternative covers {} elements of agent {}, packing covers {}",
                (acc & own).len(),
                self.agent,
                (covered & own).len()
            ));
        }
        Ok(())
    }
}

impl fmt::Display for RejectionWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "reject agent={} rej={} int={}",
            self.agent,
            join(&self.rejected),
            join(&self.added)
        )
    }
}

fn join(v: &[usize]) -> String {
    v.iter().map(|i| i.to_string()).collect::<Vec<_>>().join(",")
}

impl FromStr for RejectionWitness {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::parse(1, format!("malformed rejection record `{s}`"));
        let mut it = s.split_whitespace();
        if it.next() != Some("reject") {
            return Err(bad());
        }
        let mut field = |name: &str| -> Result<&str> {
            it.next()
                .and_then(|t| t.strip_prefix(name))
                .and_then(|t| t.strip_prefix('='))
                .ok_or_else(bad)
        };
        let agent = field("agent")?.parse().map_err(|_| bad())?;
        let list = |t: &str| -> Result<Vec<usize>> {
            if t.is_empty() {
                return Ok(Vec::new());
            }
            t.split(',').map(|x| x.parse().map_err(|_| bad())).collect()
        };
        let rejected = list(field("rej")?)?;
        let added = list(field("int")?)?;
        Ok(RejectionWitness {
            agent: AgentId(agent),
            rejected,
            added,
        })
    }
}

/// Shared state for searching one agent's rejections of one packing.
struct AgentSearch {
    own: ElemSet,
    covered: ElemSet,
    baseline: usize,
    /// Internal sets of the agent that are not already in the packing.
    candidates: Vec<(usize, ElemSet)>,
    packing: Vec<(usize, ElemSet)>,
    budget: RejectionBudget,
    max_family: usize,
}

impl AgentSearch {
    fn new(inst: &Instance, x: &Packing, covered: ElemSet, agent: AgentId, budget: RejectionBudget) -> Self {
        let own = inst.agent_elements(agent);
        let candidates = inst
            .restrict_sets(own)
            .into_iter()
            .filter(|&i| !x.contains(i))
            .map(|i| (i, inst.set(i)))
            .collect();
        AgentSearch {
            own,
            covered,
            baseline: (covered & own).len(),
            candidates,
            packing: x.indices().iter().map(|&i| (i, inst.set(i))).collect(),
            budget,
            max_family: usize::MAX,
        }
    }

    /// Sets of the packing hit by `union`, and their combined elements.
    fn forced(&self, union: ElemSet) -> (usize, ElemSet) {
        self.packing
            .iter()
            .filter(|(_, s)| s.intersects(union))
            .fold((0, ElemSet::EMPTY), |(c, acc), (_, s)| (c + 1, acc | *s))
    }

    fn improves(&self, union: ElemSet, dropped: ElemSet) -> bool {
        (((self.covered - dropped) | union) & self.own).len() > self.baseline
    }

    /// Whether some family starting with the ones chosen so far rejects.
    fn any(&self, from: usize, depth: usize, union: ElemSet) -> bool {
        if depth >= self.max_family {
            return false;
        }
        for pos in from..self.candidates.len() {
            let s = self.candidates[pos].1;
            if s.intersects(union) {
                continue;
            }
            let next = union | s;
            let (n_rej, dropped) = self.forced(next);
            if !self.budget.allows(n_rej) {
                continue;
            }
            if self.improves(next, dropped) || self.any(pos + 1, depth + 1, next) {
                return true;
            }
        }
        false
    }

    /// First family of exactly `size` sets, in lexicographic index order.
    fn first_of_size(&self, size: usize, from: usize, chosen: &mut Vec<usize>, union: ElemSet) -> bool {
        if chosen.len() == size {
            let (n_rej, dropped) = self.forced(union);
            return self.budget.allows(n_rej) && self.improves(union, dropped);
        }
        for pos in from..self.candidates.len() {
            if self.candidates.len() - pos < size - chosen.len() {
                break;
            }
            let s = self.candidates[pos].1;
            if s.intersects(union) {
                continue;
            }
            let next = union | s;
            if !self.budget.allows(self.forced(next).0) {
                continue;
            }
            chosen.push(pos);
            if self.first_of_size(size, pos + 1, chosen, next) {
                return true;
            }
            chosen.pop();
        }
        false
    }

    fn witness(&self, agent: AgentId, chosen: &[usize]) -> RejectionWitness {
        let union = chosen
            .iter()
            .fold(ElemSet::EMPTY, |acc, &p| acc | self.candidates[p].1);
        RejectionWitness {
            agent,
            rejected: self
                .packing
                .iter()
                .filter(|(_, s)| s.intersects(union))
                .map(|(i, _)| *i)
                .collect(),
            added: chosen.iter().map(|&p| self.candidates[p].0).collect(),
        }
    }
}

fn check_agent(inst: &Instance, agent: AgentId) -> Result<()> {
    if agent.0 >= inst.p() {
        return Err(Error::param(format!(
            "agent {} out of range (p = {})",
            agent.0,
            inst.p()
        )));
    }
    Ok(())
}

/// The canonical rejection of `x` by `agent` within `budget`, if any.
///
/// Witnesses are ordered by the number of added sets, then lexicographically by
/// added set indices; the first one is returned.
pub fn find_rejection(
    inst: &Instance,
    x: &Packing,
    agent: AgentId,
    budget: RejectionBudget,
) -> Result<Option<RejectionWitness>> {
    check_agent(inst, agent)?;
    let covered = inst.covered(x)?;
    let search = AgentSearch::new(inst, x, covered, agent, budget);
    // A family of disjoint non-empty internal sets has at most |U_a| members.
    let max_size = search.candidates.len().min(search.own.len());
    let mut chosen = Vec::new();
    for size in 1..=max_size {
        if search.first_of_size(size, 0, &mut chosen, ElemSet::EMPTY) {
            return Ok(Some(search.witness(agent, &chosen)));
        }
    }
    Ok(None)
}

/// Whether `agent` rejects `x`, considering only added families of at most
/// `max_family` sets. Assumes `covered` is the (validated) union of `x`.
pub(crate) fn agent_rejects(
    inst: &Instance,
    x: &Packing,
    covered: ElemSet,
    agent: AgentId,
    budget: RejectionBudget,
    max_family: usize,
) -> bool {
    let mut search = AgentSearch::new(inst, x, covered, agent, budget);
    search.max_family = max_family;
    search.any(0, 0, ElemSet::EMPTY)
}

/// The canonical rejection by the lowest-numbered rejecting agent.
pub fn first_rejection(
    inst: &Instance,
    x: &Packing,
    budget: RejectionBudget,
) -> Result<Option<RejectionWitness>> {
    for a in inst.agents() {
        if let Some(w) = find_rejection(inst, x, a, budget)? {
            return Ok(Some(w));
        }
    }
    Ok(None)
}

/// No agent rejects `x` within `budget`.
pub fn is_rejection_proof(inst: &Instance, x: &Packing, budget: RejectionBudget) -> Result<bool> {
    let covered = inst.covered(x)?;
    Ok(inst
        .agents()
        .all(|a| !agent_rejects(inst, x, covered, a, budget, usize::MAX)))
}

/// `x` is a valid packing covering at least `k` elements.
pub fn is_candidate_solution(inst: &Instance, x: &Packing) -> bool {
    inst.covered(x).is_ok_and(|c| c.len() >= inst.k())
}

/// Reference implementation enumerating every pair (rejected ⊆ x, added ⊆
/// internal sets). Exponential in both; meant for small instances and for
/// cross-checking the main search.
pub mod oracle {
    use super::*;

    pub fn find_rejection(
        inst: &Instance,
        x: &Packing,
        agent: AgentId,
        budget: RejectionBudget,
    ) -> Result<Option<RejectionWitness>> {
        check_agent(inst, agent)?;
        let covered = inst.covered(x)?;
        let own = inst.agent_elements(agent);
        let internal = inst.restrict_sets(own);
        let packing = x.indices();
        assert!(
            packing.len() < 64,
            "oracle supports packings of fewer than 64 sets"
        );

        let mut added = Vec::new();
        let mut found = None;
        families(inst, &internal, 0, &mut added, ElemSet::EMPTY, &mut |added| {
            for mask in 0u64..(1u64 << packing.len()) {
                if !budget.allows(mask.count_ones() as usize) {
                    continue;
                }
                let rejected: Vec<usize> = (0..packing.len())
                    .filter(|b| mask >> b & 1 == 1)
                    .map(|b| packing[b])
                    .collect();
                if let Some(alt) = alternative_cover(inst, packing, &rejected, added) {
                    if (alt & own).len() > (covered & own).len() {
                        found = Some(RejectionWitness {
                            agent,
                            rejected,
                            added: added.to_vec(),
                        });
                        return true;
                    }
                }
            }
            false
        });
        Ok(found)
    }

    pub fn is_rejection_proof(inst: &Instance, x: &Packing, budget: RejectionBudget) -> Result<bool> {
        for a in inst.agents() {
            if find_rejection(inst, x, a, budget)?.is_some() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Union of `(packing \ rejected) ∪ added`, or `None` if those sets are
    /// not pairwise disjoint.
    fn alternative_cover(
        inst: &Instance,
        packing: &[usize],
        rejected: &[usize],
        added: &[usize],
    ) -> Option<ElemSet> {
        let mut members: Vec<usize> = packing
            .iter()
            .copied()
            .filter(|i| !rejected.contains(i))
            .chain(added.iter().copied())
            .collect();
        members.sort_unstable();
        members.dedup();
        let mut acc = ElemSet::EMPTY;
        for i in members {
            if inst.set(i).intersects(acc) {
                return None;
            }
            acc |= inst.set(i);
        }
        Some(acc)
    }

    /// Calls `visit` on every pairwise-disjoint subfamily of `pool` (including
    /// the empty one); stops early when `visit` returns true.
    fn families(
        inst: &Instance,
        pool: &[usize],
        from: usize,
        chosen: &mut Vec<usize>,
        union: ElemSet,
        visit: &mut dyn FnMut(&[usize]) -> bool,
    ) -> bool {
        if visit(chosen) {
            return true;
        }
        for pos in from..pool.len() {
            let s = inst.set(pool[pos]);
            if s.intersects(union) {
                continue;
            }
            chosen.push(pool[pos]);
            if families(inst, pool, pos + 1, chosen, union | s, visit) {
                return true;
            }
            chosen.pop();
        }
        false
    }
}
