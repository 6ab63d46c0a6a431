//! Timing harness over seeded instance streams.

use std::fmt;
use std::time::Instant;

use rand::Rng;

use crate::error::{Error, Result};
use crate::model::Instance;
use crate::reductions::{random_instance, reduce_subgraph_iso, rng_from_seed, UndirectedGraph};
use crate::rejection::RejectionBudget;
use crate::solvers::{solve_with, Algo, SolveOptions};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    /// `random_instance(n, 2n, 3, 3, n / 2)`.
    Random,
    /// Reduction graphs for a random host on `n` vertices and a random
    /// pattern on `n / 2`.
    Sgi,
}

impl std::str::FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "random" => Ok(Suite::Random),
            "sgi" => Ok(Suite::Sgi),
            _ => Err(Error::param(format!("unknown suite `{s}`"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchRow {
    pub algo: Algo,
    pub n: usize,
    pub m: usize,
    pub k: usize,
    pub budget: RejectionBudget,
    /// `YES`, `NO`, `guarded` (size guard refused) or `error`.
    pub answer: String,
    pub millis: f64,
}

impl BenchRow {
    pub const HEADER: &'static str = "algo,n,m,k,c,answer,time";
}

impl fmt::Display for BenchRow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{},{},{},{},{},{},{:.3}",
            self.algo, self.n, self.m, self.k, self.budget, self.answer, self.millis
        )
    }
}

/// The instance a suite uses at `size`, fixed by `seed`.
pub fn suite_instance(suite: Suite, size: usize, seed: u64) -> Result<Instance> {
    let stream_seed = seed.wrapping_mul(1_000_003).wrapping_add(size as u64);
    match suite {
        Suite::Random => {
            let m = (2 * size).min(crate::reductions::random::distinct_set_count(size, 3) as usize);
            random_instance(size, m, 3.min(size.max(1)), 3, size / 2, stream_seed)
        }
        Suite::Sgi => {
            let mut rng = rng_from_seed(stream_seed);
            let g = UndirectedGraph::random(size, 0.5, &mut rng);
            let h_n = size / 2;
            let h = UndirectedGraph::random(h_n, rng.random_range(0.2..0.8), &mut rng);
            reduce_subgraph_iso(&g, &h)?.instance()
        }
    }
}

const ALGOS: [(Algo, RejectionBudget); 4] = [
    (Algo::Ke, RejectionBudget::Bounded(0)),
    (Algo::OneRejection, RejectionBudget::Bounded(1)),
    (Algo::Fpt, RejectionBudget::Unbounded),
    (Algo::Brute, RejectionBudget::Unbounded),
];

/// One row per algorithm, size and repeat; repeats re-run the same instance.
pub fn run_bench(
    suite: Suite,
    sizes: &[usize],
    seed: u64,
    repeat: usize,
    opts: SolveOptions,
) -> Result<Vec<BenchRow>> {
    run_bench_algos(suite, sizes, seed, repeat, opts, &ALGOS.map(|(a, _)| a))
}

pub fn run_bench_algos(
    suite: Suite,
    sizes: &[usize],
    seed: u64,
    repeat: usize,
    opts: SolveOptions,
    algos: &[Algo],
) -> Result<Vec<BenchRow>> {
    let mut rows = Vec::new();
    for _ in 0..repeat {
        for &size in sizes {
            let inst = suite_instance(suite, size, seed)?;
            for &(algo, budget) in ALGOS.iter().filter(|(a, _)| algos.contains(a)) {
                let t = Instant::now();
                let answer = match solve_with(&inst, budget, algo, opts) {
                    Ok(r) => r.answer.to_string(),
                    Err(Error::SizeLimit(_)) => "guarded".to_string(),
                    Err(_) => "error".to_string(),
                };
                rows.push(BenchRow {
                    algo,
                    n: inst.n(),
                    m: inst.num_sets(),
                    k: inst.k(),
                    budget,
                    answer,
                    millis: t.elapsed().as_secs_f64() * 1e3,
                });
            }
        }
    }
    Ok(rows)
}
