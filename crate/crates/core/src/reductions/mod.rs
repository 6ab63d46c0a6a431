//! Instance generators: random families and the subgraph isomorphism
//! reduction.

pub mod random;
pub mod sgi;

pub use random::{planted_sunflower_instance, random_instance, random_kep, rng_from_seed};
pub use sgi::{
    brute_subgraph_iso, classify_cycle, nonisomorphic_graphs, reduce_subgraph_iso, witness_from_iso,
    CycleClass, ReductionArtifact, UndirectedGraph, Zone,
};
