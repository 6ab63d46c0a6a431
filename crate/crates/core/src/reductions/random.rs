//! Seeded instance generators. Every function is a pure function of its seed.

use rand::seq::{IndexedRandom, SliceRandom};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::elemset::ElemSet;
use crate::error::{Error, Result};
use crate::model::{Digraph, Instance, KepInstance};

/// The generator every seeded routine draws from.
pub fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn binomial(n: usize, r: usize) -> u128 {
    if r > n {
        return 0;
    }
    (0..r).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

/// Number of distinct non-empty subsets of `0..n` with at most `d` elements.
pub fn distinct_set_count(n: usize, d: usize) -> u128 {
    (1..=d.min(n)).map(|r| binomial(n, r)).sum()
}

fn check_params(n: usize, p: usize, d: usize) -> Result<()> {
    if p == 0 || p > n.max(1) {
        return Err(Error::param(format!("need 1 <= p <= n, got p = {p}, n = {n}")));
    }
    if d == 0 {
        return Err(Error::param("d must be positive"));
    }
    if n > crate::elemset::MAX_ELEMENTS {
        return Err(Error::SizeLimit(format!("{n} elements exceed the maximum")));
    }
    Ok(())
}

fn random_partition(rng: &mut ChaCha8Rng, n: usize, p: usize) -> Vec<usize> {
    (0..n).map(|_| rng.random_range(0..p)).collect()
}

fn random_subset(rng: &mut ChaCha8Rng, n: usize, size: usize) -> ElemSet {
    rand::seq::index::sample(rng, n, size).into_iter().collect()
}

/// `m` distinct random sets of size `1..=d` over `0..n`, agents uniform.
pub fn random_instance(n: usize, m: usize, p: usize, d: usize, k: usize, seed: u64) -> Result<Instance> {
    check_params(n, p, d)?;
    let total = distinct_set_count(n, d);
    if m as u128 > total {
        return Err(Error::param(format!(
            "{m} sets requested but only {total} distinct sets of size <= {d} exist over {n} elements"
        )));
    }
    let mut rng = rng_from_seed(seed);
    let agent_of = random_partition(&mut rng, n, p);
    let mut sets: Vec<ElemSet> = Vec::with_capacity(m);
    if (m as u128) * 2 > total {
        let mut all: Vec<ElemSet> = (1u64..1 << n)
            .map(ElemSet::from_bits)
            .filter(|s| s.len() <= d)
            .collect();
        all.shuffle(&mut rng);
        all.truncate(m);
        sets = all;
    } else {
        let max = d.min(n);
        while sets.len() < m {
            let size = rng.random_range(1..=max);
            let s = random_subset(&mut rng, n, size);
            if !sets.contains(&s) {
                sets.push(s);
            }
        }
    }
    Instance::new(n, p, agent_of, d, k, sets.iter().map(|s| s.to_vec()).collect())
}

/// A random digraph with each ordered pair present with probability
/// `edge_prob`, its vertices spread uniformly over `p` agents.
pub fn random_kep(n: usize, edge_prob: f64, p: usize, d: usize, k: usize, seed: u64) -> Result<KepInstance> {
    check_params(n, p, d)?;
    if !(0.0..=1.0).contains(&edge_prob) {
        return Err(Error::param(format!(
            "edge probability {edge_prob} outside [0, 1]"
        )));
    }
    if d < 2 {
        return Err(Error::param("cycle length bound must be at least 2"));
    }
    let mut rng = rng_from_seed(seed);
    let agent_of = random_partition(&mut rng, n, p);
    let mut arcs = Vec::new();
    for u in 0..n {
        for v in 0..n {
            if u != v && rng.random_bool(edge_prob) {
                arcs.push((u, v));
            }
        }
    }
    Ok(KepInstance {
        graph: Digraph::new(n, arcs)?,
        agent_of,
        p,
        d,
        k,
    })
}

/// An instance built around a planted sunflower: `petals` sets sharing a
/// random core, plus `noise` further random sets each meeting the core or one
/// extra anchor element, so the family keeps a small hitting set. With
/// `internal`, the sunflower lies inside agent 0; otherwise every petal
/// belongs to an agent other than the core's.
#[allow(clippy::too_many_arguments)]
pub fn planted_sunflower_instance(
    n: usize,
    p: usize,
    d: usize,
    k: usize,
    petals: usize,
    noise: usize,
    internal: bool,
    seed: u64,
) -> Result<Instance> {
    check_params(n, p, d)?;
    if d < 2 || p < 2 {
        return Err(Error::param("planted sunflowers need d >= 2 and p >= 2"));
    }
    let mut rng = rng_from_seed(seed);
    let core_size = rng.random_range(1..d);
    let petal_size = d - core_size;
    if core_size + petals * petal_size > n {
        return Err(Error::param(format!(
            "{petals} petals do not fit in {n} elements"
        )));
    }
    let mut elems: Vec<usize> = (0..n).collect();
    elems.shuffle(&mut rng);
    let core: ElemSet = elems[..core_size].iter().collect();
    let mut agent_of = vec![0; n];
    let other: Vec<usize> = (1..p).collect();
    let mut sets = Vec::new();
    for j in 0..petals {
        let start = core_size + j * petal_size;
        let petal: ElemSet = elems[start..start + petal_size].iter().collect();
        for e in petal.iter() {
            agent_of[e] = if internal {
                0
            } else {
                *other.choose(&mut rng).unwrap()
            };
        }
        sets.push(core | petal);
    }
    for &e in &elems[core_size + petals * petal_size..] {
        agent_of[e] = rng.random_range(0..p);
    }
    let mut anchors = core.to_vec();
    if let Some(&extra) = elems.get(core_size + petals * petal_size) {
        anchors.push(extra);
    }
    let mut tries = 0;
    let mut added = 0;
    while added < noise && tries < 1000 {
        tries += 1;
        let size = rng.random_range(1..=d);
        let mut s = ElemSet::singleton(*anchors.choose(&mut rng).unwrap());
        while s.len() < size {
            s.insert(rng.random_range(0..n));
        }
        if !sets.contains(&s) {
            sets.push(s);
            added += 1;
        }
    }
    sets.shuffle(&mut rng);
    Instance::new(n, p, agent_of, d, k, sets.iter().map(|s| s.to_vec()).collect())
}
