use std::collections::{BTreeSet, HashSet};

use crate::elemset::{ElemSet, MAX_ELEMENTS};
use crate::error::{Error, Result};

use super::{Instance, Origin};

/// A simple directed graph on vertices `0..n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Digraph {
    n: usize,
    edges: BTreeSet<(usize, usize)>,
    out: Vec<Vec<usize>>,
}

impl Digraph {
    /// Builds a digraph; self-loops, repeated arcs and out-of-range endpoints
    /// are rejected.
    pub fn new(n: usize, arcs: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut edges = BTreeSet::new();
        for (u, v) in arcs {
            if u >= n || v >= n {
                return Err(Error::param(format!(
                    "arc ({u}, {v}) out of range for {n} vertices"
                )));
            }
            if u == v {
                return Err(Error::param(format!("self-loop at vertex {u}")));
            }
            if !edges.insert((u, v)) {
                return Err(Error::param(format!("duplicate arc ({u}, {v})")));
            }
        }
        let mut out = vec![Vec::new(); n];
        for &(u, v) in &edges {
            out[u].push(v);
        }
        Ok(Digraph { n, edges, out })
    }

    /// Every ordered pair of distinct vertices.
    pub fn complete(n: usize) -> Self {
        let arcs = (0..n).flat_map(|u| (0..n).filter(move |&v| v != u).map(move |v| (u, v)));
        Digraph::new(n, arcs).expect("complete digraph is simple")
    }

    pub fn n_vertices(&self) -> usize {
        self.n
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().copied()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.edges.contains(&(u, v))
    }

    /// Out-neighbours of `u`, ascending.
    pub fn successors(&self, u: usize) -> &[usize] {
        &self.out[u]
    }
}

/// A simple directed cycle, stored with its smallest vertex first.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cycle {
    vertices: Vec<usize>,
}

impl Cycle {
    /// Rotates `vertices` into canonical form. Does not check the arcs exist.
    pub fn new(mut vertices: Vec<usize>) -> Self {
        if let Some(pos) = vertices
            .iter()
            .enumerate()
            .min_by_key(|&(_, v)| *v)
            .map(|(i, _)| i)
        {
            vertices.rotate_left(pos);
        }
        Cycle { vertices }
    }

    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn vertex_set(&self) -> ElemSet {
        self.vertices.iter().collect()
    }

    /// The same vertices traversed the other way round.
    pub fn reversed(&self) -> Cycle {
        let mut v = self.vertices.clone();
        v.reverse();
        Cycle::new(v)
    }

    /// Whether every arc of the cycle exists in `g` and the vertices are
    /// distinct.
    pub fn is_cycle_of(&self, g: &Digraph) -> bool {
        let l = self.vertices.len();
        let distinct: HashSet<_> = self.vertices.iter().collect();
        l >= 2
            && distinct.len() == l
            && (0..l).all(|i| g.has_edge(self.vertices[i], self.vertices[(i + 1) % l]))
    }
}

/// All simple directed cycles of length `2..=d`, each once in canonical
/// rotation, sorted lexicographically.
pub fn enumerate_d_cycles(g: &Digraph, d: usize) -> Result<Vec<Cycle>> {
    if d < 2 {
        return Err(Error::param(format!(
            "cycle length bound must be at least 2, got {d}"
        )));
    }
    let mut out = Vec::new();
    let mut path = Vec::with_capacity(d);
    let mut on_path = vec![false; g.n];
    for start in 0..g.n {
        path.push(start);
        on_path[start] = true;
        extend(g, d, start, &mut path, &mut on_path, &mut out);
        on_path[start] = false;
        path.pop();
    }
    out.sort();
    Ok(out)
}

// Only vertices larger than `start` may follow it, so each cycle is found
// exactly once, from its minimum vertex.
fn extend(
    g: &Digraph,
    d: usize,
    start: usize,
    path: &mut Vec<usize>,
    on_path: &mut [bool],
    out: &mut Vec<Cycle>,
) {
    let last = *path.last().unwrap();
    for &next in g.successors(last) {
        if next == start && path.len() >= 2 {
            out.push(Cycle {
                vertices: path.clone(),
            });
        } else if next > start && !on_path[next] && path.len() < d {
            path.push(next);
            on_path[next] = true;
            extend(g, d, start, path, on_path, out);
            on_path[next] = false;
            path.pop();
        }
    }
}

/// A rejection-proof kidney exchange instance: a compatibility digraph with
/// its vertices partitioned over agents.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KepInstance {
    pub graph: Digraph,
    pub agent_of: Vec<usize>,
    pub p: usize,
    pub d: usize,
    pub k: usize,
}

impl KepInstance {
    pub fn to_instance(&self) -> Result<Instance> {
        kep_to_set_packing(&self.graph, &self.agent_of, self.p, self.d, self.k)
    }

    /// The lexicographically first `d`-cycle whose vertex set is exactly `set`.
    pub fn realize(&self, set: ElemSet) -> Option<Cycle> {
        realize_cycle(&self.graph, set)
    }
}

/// Translates a KEP graph into a set system: one element per vertex and one
/// set per distinct vertex set of a `d`-cycle, ordered lexicographically by
/// sorted contents.
pub fn kep_to_set_packing(g: &Digraph, agent_of: &[usize], p: usize, d: usize, k: usize) -> Result<Instance> {
    if g.n_vertices() > MAX_ELEMENTS {
        return Err(Error::SizeLimit(format!(
            "{} vertices exceed the supported maximum of {MAX_ELEMENTS}",
            g.n_vertices()
        )));
    }
    if agent_of.len() != g.n_vertices() {
        return Err(Error::param(format!(
            "partition covers {} vertices, graph has {}",
            agent_of.len(),
            g.n_vertices()
        )));
    }
    let sets: BTreeSet<Vec<usize>> = enumerate_d_cycles(g, d)?
        .into_iter()
        .map(|c| {
            let mut v = c.vertices;
            v.sort_unstable();
            v
        })
        .collect();
    let inst = Instance::new(
        g.n_vertices(),
        p,
        agent_of.to_vec(),
        d,
        k,
        sets.into_iter().collect(),
    )?;
    Ok(inst.with_origin(Origin::FromKep))
}

/// Finds a cycle of `g` through exactly the vertices of `set`.
pub fn realize_cycle(g: &Digraph, set: ElemSet) -> Option<Cycle> {
    let verts = set.to_vec();
    let start = *verts.first()?;
    if verts.len() < 2 {
        return None;
    }
    let mut path = vec![start];
    search_orientation(g, set, start, &mut path).then(|| Cycle::new(path))
}

fn search_orientation(g: &Digraph, set: ElemSet, start: usize, path: &mut Vec<usize>) -> bool {
    let last = *path.last().unwrap();
    if path.len() == set.len() {
        return g.has_edge(last, start);
    }
    for &next in g.successors(last) {
        if set.contains(next) && !path.contains(&next) {
            path.push(next);
            if search_orientation(g, set, start, path) {
                return true;
            }
            path.pop();
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cyc(v: &[usize]) -> Cycle {
        Cycle::new(v.to_vec())
    }

    #[test]
    fn single_two_cycle() {
        let g = Digraph::new(2, [(0, 1), (1, 0)]).unwrap();
        assert_eq!(enumerate_d_cycles(&g, 3).unwrap(), vec![cyc(&[0, 1])]);
    }

    #[test]
    fn complete_digraph_on_three_vertices() {
        let g = Digraph::complete(3);
        let cycles = enumerate_d_cycles(&g, 3).unwrap();
        assert_eq!(
            cycles,
            vec![
                cyc(&[0, 1]),
                cyc(&[0, 1, 2]),
                cyc(&[0, 2]),
                cyc(&[0, 2, 1]),
                cyc(&[1, 2]),
            ]
        );
        let inst = kep_to_set_packing(&g, &[0, 0, 0], 1, 3, 0).unwrap();
        let sets: Vec<_> = inst.sets().iter().map(|s| s.to_vec()).collect();
        assert_eq!(sets, vec![vec![0, 1], vec![0, 1, 2], vec![0, 2], vec![1, 2]]);
    }

    #[test]
    fn three_cycle_exceeds_bound_two() {
        let g = Digraph::new(3, [(0, 1), (1, 2), (2, 0)]).unwrap();
        assert!(enumerate_d_cycles(&g, 2).unwrap().is_empty());
    }

    #[test]
    fn bound_below_two_is_rejected() {
        let g = Digraph::complete(2);
        assert!(matches!(
            enumerate_d_cycles(&g, 1),
            Err(Error::InvalidParameter(_))
        ));
    }

    #[test]
    fn edgeless_graph_has_no_sets() {
        let g = Digraph::new(4, []).unwrap();
        let inst = kep_to_set_packing(&g, &[0, 1, 0, 1], 2, 3, 0).unwrap();
        assert_eq!(inst.num_sets(), 0);
        assert_eq!(inst.n(), 4);
    }

    #[test]
    fn graph_rejects_bad_arcs() {
        assert!(Digraph::new(2, [(0, 0)]).is_err());
        assert!(Digraph::new(2, [(0, 1), (0, 1)]).is_err());
        assert!(Digraph::new(2, [(0, 2)]).is_err());
    }

    #[test]
    fn canonical_rotation() {
        assert_eq!(cyc(&[3, 1, 2]).vertices(), &[1, 2, 3]);
        assert_eq!(cyc(&[1, 2, 3]).reversed().vertices(), &[1, 3, 2]);
    }

    #[test]
    fn realize_finds_an_orientation() {
        let g = Digraph::new(3, [(0, 2), (2, 1), (1, 0)]).unwrap();
        let c = realize_cycle(&g, [0, 1, 2].iter().collect()).unwrap();
        assert_eq!(c.vertices(), &[0, 2, 1]);
        assert!(c.is_cycle_of(&g));
        assert!(realize_cycle(&g, [0, 1].iter().collect()).is_none());
    }
}
