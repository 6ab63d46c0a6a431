//! Subgraph isomorphism to rejection-proof kidney exchange with cycle length
//! three and two agents, plus the small-graph tooling used to test it.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use rand::Rng;

use crate::elemset::ElemSet;
use crate::error::{Error, Result};
use crate::model::{Cycle, Digraph, Instance, KepInstance, Packing};

/// A simple undirected graph on `0..n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct UndirectedGraph {
    n: usize,
    edges: BTreeSet<(usize, usize)>,
}

impl UndirectedGraph {
    /// Builds a graph; endpoints may be given in either order.
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut set = BTreeSet::new();
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::param(format!(
                    "edge {{{u}, {v}}} out of range for {n} vertices"
                )));
            }
            if u == v {
                return Err(Error::param(format!("self-loop at vertex {u}")));
            }
            if !set.insert((u.min(v), u.max(v))) {
                return Err(Error::param(format!("duplicate edge {{{u}, {v}}}")));
            }
        }
        Ok(UndirectedGraph { n, edges: set })
    }

    pub fn n_vertices(&self) -> usize {
        self.n
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    /// Edges as `(u, v)` with `u < v`, ascending.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().copied()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.edges.contains(&(u.min(v), u.max(v)))
    }

    pub fn path(n: usize) -> Self {
        UndirectedGraph::new(n, (1..n).map(|i| (i - 1, i))).expect("path is simple")
    }

    pub fn complete(n: usize) -> Self {
        UndirectedGraph::new(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)))).expect("simple")
    }

    /// Each pair joined independently with probability `prob`.
    pub fn random(n: usize, prob: f64, rng: &mut impl Rng) -> Self {
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                if rng.random_bool(prob) {
                    edges.push((u, v));
                }
            }
        }
        UndirectedGraph::new(n, edges).expect("simple")
    }
}

/// One representative of every isomorphism class of graphs on `n` vertices
/// (`n ≤ 6`), ordered by canonical edge mask.
pub fn nonisomorphic_graphs(n: usize) -> Vec<UndirectedGraph> {
    assert!(n <= 6, "graph enumeration supports at most 6 vertices");
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    let index: HashMap<(usize, usize), usize> = pairs.iter().enumerate().map(|(i, &e)| (e, i)).collect();
    let perms = permutations(n);
    let mut seen = BTreeSet::new();
    for mask in 0u32..1 << pairs.len() {
        let canon = perms
            .iter()
            .map(|pi| {
                pairs
                    .iter()
                    .enumerate()
                    .filter(|&(b, _)| mask >> b & 1 == 1)
                    .fold(0u32, |acc, (_, &(u, v))| {
                        let (a, b) = (pi[u].min(pi[v]), pi[u].max(pi[v]));
                        acc | 1 << index[&(a, b)]
                    })
            })
            .min()
            .unwrap_or(0);
        seen.insert(canon);
    }
    seen.into_iter()
        .map(|mask| {
            let edges = pairs
                .iter()
                .enumerate()
                .filter(|&(b, _)| mask >> b & 1 == 1)
                .map(|(_, &e)| e);
            UndirectedGraph::new(n, edges).expect("simple")
        })
        .collect()
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn go(cur: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if cur.len() == used.len() {
            out.push(cur.clone());
            return;
        }
        for v in 0..used.len() {
            if !used[v] {
                used[v] = true;
                cur.push(v);
                go(cur, used, out);
                cur.pop();
                used[v] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

/// The lexicographically first injective map `V(H) → V(G)` sending edges to
/// edges, if one exists.
pub fn brute_subgraph_iso(g: &UndirectedGraph, h: &UndirectedGraph) -> Option<Vec<usize>> {
    fn extend(g: &UndirectedGraph, h: &UndirectedGraph, phi: &mut Vec<usize>, used: &mut [bool]) -> bool {
        let u = phi.len();
        if u == h.n {
            return true;
        }
        for x in 0..g.n {
            if used[x] || !(0..u).all(|w| !h.has_edge(u, w) || g.has_edge(x, phi[w])) {
                continue;
            }
            used[x] = true;
            phi.push(x);
            if extend(g, h, phi, used) {
                return true;
            }
            phi.pop();
            used[x] = false;
        }
        false
    }
    if h.n > g.n {
        return None;
    }
    let mut phi = Vec::with_capacity(h.n);
    extend(g, h, &mut phi, &mut vec![false; g.n]).then_some(phi)
}

/// Whether `phi` is an injective, edge-preserving map from `h` into `g`.
pub fn is_subgraph_iso(g: &UndirectedGraph, h: &UndirectedGraph, phi: &[usize]) -> bool {
    phi.len() == h.n
        && phi.iter().all(|&x| x < g.n)
        && phi.iter().collect::<BTreeSet<_>>().len() == phi.len()
        && h.edges().all(|(u, v)| g.has_edge(phi[u], phi[v]))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Zone {
    W1,
    W2,
    W3,
    W4,
    W5,
    Z,
}

/// The graph built by [`reduce_subgraph_iso`].
///
/// Vertices are numbered `W1` (one per vertex of `H`), `W2`, `W3` (one per
/// vertex of `G`), `W4`, `W5` (`n_G − n_H` each), then `z`. Agent 0 owns
/// `W1 ∪ W3 ∪ W5 ∪ {z}`, agent 1 owns `W2 ∪ W4`.
#[derive(Debug, Clone)]
pub struct ReductionArtifact {
    pub kep: KepInstance,
    pub zone_of: Vec<Zone>,
    pub n_g: usize,
    pub n_h: usize,
    /// The order on `V(G)` used to orient non-edges: ascending index.
    pub order: Vec<usize>,
}

impl ReductionArtifact {
    pub fn w1(&self, u: usize) -> usize {
        u
    }

    pub fn w2(&self, u: usize) -> usize {
        self.n_h + u
    }

    pub fn w3(&self, x: usize) -> usize {
        2 * self.n_h + x
    }

    pub fn w4(&self, i: usize) -> usize {
        2 * self.n_h + self.n_g + i
    }

    pub fn w5(&self, i: usize) -> usize {
        self.n_h + 2 * self.n_g + i
    }

    pub fn z(&self) -> usize {
        3 * self.n_g
    }

    pub fn n_vertices(&self) -> usize {
        3 * self.n_g + 1
    }

    pub fn zone_vertices(&self, zone: Zone) -> Vec<usize> {
        (0..self.zone_of.len())
            .filter(|&v| self.zone_of[v] == zone)
            .collect()
    }

    /// The set packing instance over the cycles of length at most three.
    pub fn instance(&self) -> Result<Instance> {
        self.kep.to_instance()
    }
}

/// Number of arcs [`reduce_subgraph_iso`] produces.
pub fn expected_arc_count(n_g: usize, n_h: usize, e_h: usize, e_g: usize) -> usize {
    let f = n_g - n_h;
    2 * e_h + n_h + 2 * n_h * n_g + f + 2 * n_g * f + 2 * n_g + (n_g * n_g.saturating_sub(1) / 2 - e_g)
}

pub fn reduce_subgraph_iso(g: &UndirectedGraph, h: &UndirectedGraph) -> Result<ReductionArtifact> {
    let (n_g, n_h) = (g.n, h.n);
    if n_h > n_g {
        return Err(Error::param(format!(
            "pattern has {n_h} vertices, host only {n_g}"
        )));
    }
    if 3 * n_g + 1 > crate::elemset::MAX_ELEMENTS {
        return Err(Error::SizeLimit(format!(
            "host graph with {n_g} vertices is too large"
        )));
    }
    let f = n_g - n_h;
    let mut zone_of = Vec::with_capacity(3 * n_g + 1);
    zone_of.extend(std::iter::repeat_n(Zone::W1, n_h));
    zone_of.extend(std::iter::repeat_n(Zone::W2, n_h));
    zone_of.extend(std::iter::repeat_n(Zone::W3, n_g));
    zone_of.extend(std::iter::repeat_n(Zone::W4, f));
    zone_of.extend(std::iter::repeat_n(Zone::W5, f));
    zone_of.push(Zone::Z);
    let mut art = ReductionArtifact {
        kep: KepInstance {
            graph: Digraph::new(0, [])?,
            agent_of: Vec::new(),
            p: 2,
            d: 3,
            k: 3 * n_g,
        },
        zone_of,
        n_g,
        n_h,
        order: (0..n_g).collect(),
    };

    let mut arcs = Vec::new();
    for (u, v) in h.edges() {
        arcs.push((art.w1(u), art.w1(v)));
        arcs.push((art.w1(v), art.w1(u)));
    }
    for u in 0..n_h {
        arcs.push((art.w1(u), art.w2(u)));
    }
    for u in 0..n_h {
        for x in 0..n_g {
            arcs.push((art.w2(u), art.w3(x)));
            arcs.push((art.w3(x), art.w1(u)));
        }
    }
    for i in 0..f {
        arcs.push((art.w4(i), art.w5(i)));
    }
    for x in 0..n_g {
        for i in 0..f {
            arcs.push((art.w3(x), art.w4(i)));
            arcs.push((art.w5(i), art.w3(x)));
        }
    }
    for x in 0..n_g {
        arcs.push((art.w3(x), art.z()));
        arcs.push((art.z(), art.w3(x)));
    }
    for x in 0..n_g {
        for y in x + 1..n_g {
            if !g.has_edge(x, y) {
                arcs.push((art.w3(x), art.w3(y)));
            }
        }
    }
    let graph = Digraph::new(art.n_vertices(), arcs)?;
    debug_assert_eq!(
        graph.num_edges(),
        expected_arc_count(n_g, n_h, h.num_edges(), g.num_edges())
    );
    art.kep.agent_of = art
        .zone_of
        .iter()
        .map(|z| match z {
            Zone::W2 | Zone::W4 => 1,
            _ => 0,
        })
        .collect();
    art.kep.graph = graph;
    Ok(art)
}

/// The six kinds of short cycle in a reduction graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CycleClass {
    /// 2-cycle on an edge of `H`.
    A,
    /// 3-cycle on a triangle of `H`.
    T,
    /// Maps a vertex of `H` to a vertex of `G`.
    I,
    /// Filler covering a `W3` vertex left over by the `I`-cycles.
    F,
    /// 3-cycle through `z` on a non-edge of `G`.
    N,
    /// 2-cycle between a `W3` vertex and `z`.
    R,
}

impl fmt::Display for CycleClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

pub fn classify_cycle(art: &ReductionArtifact, c: &Cycle) -> Result<CycleClass> {
    if !c.is_cycle_of(&art.kep.graph) {
        return Err(Error::param(format!(
            "{:?} is not a cycle of the reduction graph",
            c.vertices()
        )));
    }
    let mut zones: Vec<Zone> = c.vertices().iter().map(|&v| art.zone_of[v]).collect();
    zones.sort_unstable();
    use Zone::*;
    Ok(match zones.as_slice() {
        [W1, W1] => CycleClass::A,
        [W1, W1, W1] => CycleClass::T,
        [W1, W2, W3] => CycleClass::I,
        [W3, W4, W5] => CycleClass::F,
        [W3, W3, Z] => CycleClass::N,
        [W3, Z] => CycleClass::R,
        _ => {
            return Err(Error::Internal(format!(
                "cycle {:?} with zones {zones:?} matches no class",
                c.vertices()
            )))
        }
    })
}

/// The packing a subgraph isomorphism `phi` induces: the `I`-set
/// `{u1, u2, φ(u)3}` for each vertex `u` of `H`, and the `F`-set
/// `{x3, i4, i5}` pairing the remaining `W3` vertices with `i` in ascending
/// order. Indices refer to [`ReductionArtifact::instance`].
pub fn witness_from_iso(
    art: &ReductionArtifact,
    g: &UndirectedGraph,
    h: &UndirectedGraph,
    phi: &[usize],
) -> Result<Packing> {
    if !is_subgraph_iso(g, h, phi) {
        return Err(Error::param("mapping is not a subgraph isomorphism"));
    }
    let inst = art.instance()?;
    let index: HashMap<ElemSet, usize> = inst.sets().iter().enumerate().map(|(i, &s)| (s, i)).collect();
    let lookup = |s: ElemSet| {
        index
            .get(&s)
            .copied()
            .ok_or_else(|| Error::Internal(format!("set {s:?} missing from reduction instance")))
    };
    let mut picked = Vec::new();
    for (u, &x) in phi.iter().enumerate() {
        picked.push(lookup([art.w1(u), art.w2(u), art.w3(x)].iter().collect())?);
    }
    let image: BTreeSet<usize> = phi.iter().copied().collect();
    let free = (0..art.n_g).filter(|x| !image.contains(x));
    for (i, x) in free.enumerate() {
        picked.push(lookup([art.w3(x), art.w4(i), art.w5(i)].iter().collect())?);
    }
    Ok(Packing::new(picked))
}
