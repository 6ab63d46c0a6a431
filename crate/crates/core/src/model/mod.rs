//! Instance data model: a universe partitioned over agents plus a family of
//! small sets, and the packings that solvers produce.

mod graph;

pub use graph::{enumerate_d_cycles, kep_to_set_packing, Cycle, Digraph, KepInstance};

use std::collections::HashMap;
use std::fmt;

use crate::elemset::{ElemSet, MAX_ELEMENTS};
use crate::error::{Error, Result};

/// Index of an element of the universe.
pub type ElementId = usize;

/// Index of an agent, in `0..p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AgentId(pub usize);

impl fmt::Display for AgentId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Where an instance came from. Informational only; not serialized.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Origin {
    #[default]
    Raw,
    FromKep,
    Kernelized,
}

/// Unvalidated instance data, as read from a file or assembled by hand.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RawInstance {
    pub n: usize,
    pub p: usize,
    pub agent_of: Vec<usize>,
    pub d: usize,
    pub k: usize,
    pub sets: Vec<Vec<usize>>,
}

/// A single broken invariant of a [`RawInstance`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    TooManyElements { n: usize },
    NoAgents,
    ZeroD,
    AgentMapLength { expected: usize, got: usize },
    AgentOutOfRange { element: usize, agent: usize },
    EmptySet { set: usize },
    SetExceedsD { set: usize },
    ElementOutOfRange { set: usize, element: usize },
    DuplicateElement { set: usize, element: usize },
    IdenticalSets { first: usize, second: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::TooManyElements { n } => {
                write!(f, "{n} elements exceed the supported maximum of {MAX_ELEMENTS}")
            }
            Violation::NoAgents => f.write_str("p must be at least 1"),
            Violation::ZeroD => f.write_str("d must be at least 1"),
            Violation::AgentMapLength { expected, got } => {
                write!(f, "agent map has {got} entries, expected {expected}")
            }
            Violation::AgentOutOfRange { element, agent } => {
                write!(f, "element {element} assigned to agent {agent} out of range")
            }
            Violation::EmptySet { set } => write!(f, "set {set} is empty"),
            Violation::SetExceedsD { set } => write!(f, "set {set} exceeds d"),
            Violation::ElementOutOfRange { set, element } => {
                write!(f, "set {set} contains element {element} out of range")
            }
            Violation::DuplicateElement { set, element } => {
                write!(f, "set {set} repeats element {element}")
            }
            Violation::IdenticalSets { first, second } => {
                write!(f, "sets {first} and {second} identical")
            }
        }
    }
}

/// Checks every instance invariant and reports all violations found.
pub fn validate_instance(raw: &RawInstance) -> Result<(), Vec<Violation>> {
    let mut out = Vec::new();
    if raw.n > MAX_ELEMENTS {
        out.push(Violation::TooManyElements { n: raw.n });
    }
    if raw.p == 0 {
        out.push(Violation::NoAgents);
    }
    if raw.d == 0 {
        out.push(Violation::ZeroD);
    }
    if raw.agent_of.len() != raw.n {
        out.push(Violation::AgentMapLength {
            expected: raw.n,
            got: raw.agent_of.len(),
        });
    }
    for (e, &a) in raw.agent_of.iter().enumerate() {
        if a >= raw.p {
            out.push(Violation::AgentOutOfRange { element: e, agent: a });
        }
    }
    let mut seen: HashMap<Vec<usize>, usize> = HashMap::new();
    for (idx, set) in raw.sets.iter().enumerate() {
        if set.is_empty() {
            out.push(Violation::EmptySet { set: idx });
        }
        if set.len() > raw.d {
            out.push(Violation::SetExceedsD { set: idx });
        }
        let mut sorted = set.clone();
        sorted.sort_unstable();
        for w in sorted.windows(2) {
            if w[0] == w[1] {
                out.push(Violation::DuplicateElement {
                    set: idx,
                    element: w[0],
                });
            }
        }
        for &e in set {
            if e >= raw.n || e >= MAX_ELEMENTS {
                out.push(Violation::ElementOutOfRange { set: idx, element: e });
            }
        }
        sorted.dedup();
        if let Some(&first) = seen.get(&sorted) {
            out.push(Violation::IdenticalSets { first, second: idx });
        } else {
            seen.insert(sorted, idx);
        }
    }
    if out.is_empty() {
        Ok(())
    } else {
        Err(out)
    }
}

/// A validated rejection-proof set packing instance.
///
/// The universe is `0..n`, partitioned over `p` agents; `sets` is an ordered
/// family of distinct non-empty sets of size at most `d`, and `k` is the
/// coverage target.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    n: usize,
    p: usize,
    agent_of: Vec<AgentId>,
    agent_masks: Vec<ElemSet>,
    sets: Vec<ElemSet>,
    d: usize,
    k: usize,
    origin: Origin,
}

impl Instance {
    pub fn new(
        n: usize,
        p: usize,
        agent_of: Vec<usize>,
        d: usize,
        k: usize,
        sets: Vec<Vec<usize>>,
    ) -> Result<Self> {
        Self::from_raw(RawInstance {
            n,
            p,
            agent_of,
            d,
            k,
            sets,
        })
    }

    pub fn from_raw(raw: RawInstance) -> Result<Self> {
        if raw.n > MAX_ELEMENTS {
            return Err(Error::SizeLimit(format!(
                "{} elements exceed the supported maximum of {MAX_ELEMENTS}",
                raw.n
            )));
        }
        validate_instance(&raw).map_err(Error::InvalidInstance)?;
        let sets = raw.sets.iter().map(|s| s.iter().collect()).collect();
        Ok(Self::assemble(raw.n, raw.p, raw.agent_of, raw.d, raw.k, sets))
    }

    fn assemble(n: usize, p: usize, agent_of: Vec<usize>, d: usize, k: usize, sets: Vec<ElemSet>) -> Self {
        let mut agent_masks = vec![ElemSet::EMPTY; p];
        for (e, &a) in agent_of.iter().enumerate() {
            agent_masks[a].insert(e);
        }
        Instance {
            n,
            p,
            agent_of: agent_of.into_iter().map(AgentId).collect(),
            agent_masks,
            sets,
            d,
            k,
            origin: Origin::Raw,
        }
    }

    pub fn to_raw(&self) -> RawInstance {
        RawInstance {
            n: self.n,
            p: self.p,
            agent_of: self.agent_of.iter().map(|a| a.0).collect(),
            d: self.d,
            k: self.k,
            sets: self.sets.iter().map(|s| s.to_vec()).collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn origin(&self) -> Origin {
        self.origin
    }

    pub fn with_origin(mut self, origin: Origin) -> Self {
        self.origin = origin;
        self
    }

    /// Same instance with a different coverage target.
    pub fn with_k(&self, k: usize) -> Self {
        let mut out = self.clone();
        out.k = k;
        out
    }

    pub fn sets(&self) -> &[ElemSet] {
        &self.sets
    }

    pub fn set(&self, idx: usize) -> ElemSet {
        self.sets[idx]
    }

    pub fn num_sets(&self) -> usize {
        self.sets.len()
    }

    pub fn universe(&self) -> ElemSet {
        ElemSet::full(self.n)
    }

    pub fn agent_of(&self, e: ElementId) -> AgentId {
        self.agent_of[e]
    }

    /// The elements `U_a` owned by agent `a`.
    pub fn agent_elements(&self, a: AgentId) -> ElemSet {
        self.agent_masks[a.0]
    }

    pub fn agents(&self) -> impl Iterator<Item = AgentId> {
        (0..self.p).map(AgentId)
    }

    /// The agent owning every element of set `idx`, if there is one.
    pub fn internal_owner(&self, idx: usize) -> Option<AgentId> {
        let s = self.sets[idx];
        let a = self.agent_of[s.min()?];
        s.is_subset(self.agent_masks[a.0]).then_some(a)
    }

    pub fn is_internal(&self, idx: usize) -> bool {
        self.internal_owner(idx).is_some()
    }

    /// Indices of the sets lying entirely inside agent `a`'s elements.
    pub fn internal_sets(&self, a: AgentId) -> Result<Vec<usize>> {
        if a.0 >= self.p {
            return Err(Error::param(format!(
                "agent {} out of range (p = {})",
                a.0, self.p
            )));
        }
        Ok(self.restrict_sets(self.agent_masks[a.0]))
    }

    /// Indices of the sets contained in `within`.
    pub fn restrict_sets(&self, within: ElemSet) -> Vec<usize> {
        (0..self.sets.len())
            .filter(|&i| self.sets[i].is_subset(within))
            .collect()
    }

    /// Number of agents owning at least one internal set.
    pub fn agents_with_internal_sets(&self) -> usize {
        let mut has = vec![false; self.p];
        for i in 0..self.sets.len() {
            if let Some(a) = self.internal_owner(i) {
                has[a.0] = true;
            }
        }
        has.into_iter().filter(|&h| h).count()
    }

    /// Union of all sets.
    pub fn touched(&self) -> ElemSet {
        self.sets.iter().fold(ElemSet::EMPTY, |acc, &s| acc | s)
    }

    /// Copy without set `idx`; later indices shift down by one.
    pub fn without_set(&self, idx: usize) -> Self {
        let mut out = self.clone();
        out.sets.remove(idx);
        out
    }

    /// Drops elements that appear in no set and renumbers the rest densely.
    ///
    /// Set order and agent ownership are kept, so set indices in the compacted
    /// instance equal those in `self`. Returns the instance and, per new
    /// element, its old id.
    pub fn compact(&self) -> (Instance, Vec<ElementId>) {
        let kept = self.touched().to_vec();
        let mut new_id = vec![usize::MAX; self.n];
        for (new, &old) in kept.iter().enumerate() {
            new_id[old] = new;
        }
        let agent_of = kept.iter().map(|&e| self.agent_of[e].0).collect();
        let sets = self
            .sets
            .iter()
            .map(|s| s.iter().map(|e| new_id[e]).collect())
            .collect();
        let mut out = Self::assemble(kept.len(), self.p, agent_of, self.d, self.k, sets);
        out.origin = self.origin;
        (out, kept)
    }

    /// Union of the sets in `x`; errors if `x` references a missing set or two
    /// of its sets overlap.
    pub fn covered(&self, x: &Packing) -> Result<ElemSet> {
        let mut acc = ElemSet::EMPTY;
        for &i in x.indices() {
            let s = *self.sets.get(i).ok_or_else(|| {
                Error::InvalidPacking(format!("set index {i} out of range ({} sets)", self.sets.len()))
            })?;
            if s.intersects(acc) {
                return Err(Error::InvalidPacking(format!(
                    "set {i} overlaps earlier sets at {}",
                    s & acc
                )));
            }
            acc |= s;
        }
        Ok(acc)
    }
}

/// Free-function form of [`Instance::covered`].
pub fn covered(inst: &Instance, x: &Packing) -> Result<ElemSet> {
    inst.covered(x)
}

/// Free-function form of [`Instance::internal_sets`].
pub fn internal_sets(inst: &Instance, a: AgentId) -> Result<Vec<usize>> {
    inst.internal_sets(a)
}

/// Free-function form of [`Instance::restrict_sets`].
pub fn restrict_sets(inst: &Instance, within: ElemSet) -> Vec<usize> {
    inst.restrict_sets(within)
}

/// A collection of set indices, kept sorted and free of repeats.
///
/// Disjointness is not enforced here; it is checked against an instance by
/// [`Instance::covered`].
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct Packing(Vec<usize>);

impl Packing {
    pub fn new(mut indices: Vec<usize>) -> Self {
        indices.sort_unstable();
        indices.dedup();
        Packing(indices)
    }

    pub fn empty() -> Self {
        Packing(Vec::new())
    }

    pub fn indices(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, idx: usize) -> bool {
        self.0.binary_search(&idx).is_ok()
    }
}

impl From<Vec<usize>> for Packing {
    fn from(v: Vec<usize>) -> Self {
        Packing::new(v)
    }
}

impl FromIterator<usize> for Packing {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        Packing::new(iter.into_iter().collect())
    }
}
