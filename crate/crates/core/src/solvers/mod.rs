//! Decision procedures for the rejection-proof set packing problem and a
//! dispatcher choosing among them by rejection budget.

pub mod brute;
pub mod exact_cover;
pub mod fpt;
pub mod ke;
pub mod one_rejection;

use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use crate::error::{Error, Result};
use crate::model::{Instance, Packing};
use crate::rejection::RejectionBudget;

pub use brute::{solve_brute_force, solve_brute_force_with, BruteLimits};
pub use exact_cover::{exact_cover_dp, exact_cover_search, ExactCover};
pub use fpt::{maximal_rejection_proof_packing, solve_fpt};
pub use ke::{max_coverage, solve_ke, KeResult};
pub use one_rejection::solve_one_rejection;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Answer {
    Yes,
    No,
}

impl Answer {
    pub fn is_yes(self) -> bool {
        self == Answer::Yes
    }
}

impl fmt::Display for Answer {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Answer::Yes => "YES",
            Answer::No => "NO",
        })
    }
}

/// Work counters. Under parallel execution the counters reflect work actually
/// done, which may include candidates past the reported witness.
#[derive(Debug, Clone, Default)]
pub struct Stats {
    pub subsets_examined: u64,
    pub dp_cells: u64,
    pub rejections_checked: u64,
    pub kernel_removed: u64,
    pub wall_time: Duration,
    started: Option<Instant>,
}

impl Stats {
    pub(crate) fn start() -> Self {
        Stats {
            started: Some(Instant::now()),
            ..Stats::default()
        }
    }

    pub(crate) fn finish(&mut self) {
        if let Some(t) = self.started.take() {
            self.wall_time = t.elapsed();
        }
    }
}

impl fmt::Display for Stats {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "subsets_examined={}", self.subsets_examined)?;
        writeln!(f, "dp_cells={}", self.dp_cells)?;
        writeln!(f, "rejections_checked={}", self.rejections_checked)?;
        writeln!(f, "kernel_removed={}", self.kernel_removed)?;
        write!(f, "wall_time_us={}", self.wall_time.as_micros())
    }
}

#[derive(Debug, Clone)]
pub struct SolveResult {
    pub answer: Answer,
    /// A candidate solution that no agent rejects within the queried budget;
    /// present exactly when the answer is yes.
    pub witness: Option<Packing>,
    pub stats: Stats,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Algo {
    Auto,
    Fpt,
    OneRejection,
    Brute,
    Ke,
}

impl fmt::Display for Algo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Algo::Auto => "auto",
            Algo::Fpt => "fpt",
            Algo::OneRejection => "one-rej",
            Algo::Brute => "brute",
            Algo::Ke => "ke",
        })
    }
}

impl FromStr for Algo {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "auto" => Algo::Auto,
            "fpt" => Algo::Fpt,
            "one-rej" | "one-rejection" => Algo::OneRejection,
            "brute" => Algo::Brute,
            "ke" => Algo::Ke,
            _ => return Err(Error::param(format!("unknown algorithm `{s}`"))),
        })
    }
}

impl Algo {
    /// The algorithm `Auto` resolves to for `budget`.
    pub fn resolve(self, budget: RejectionBudget) -> Algo {
        match (self, budget) {
            (Algo::Auto, RejectionBudget::Bounded(0)) => Algo::Ke,
            (Algo::Auto, RejectionBudget::Bounded(1)) => Algo::OneRejection,
            (Algo::Auto, RejectionBudget::Unbounded) => Algo::Fpt,
            (Algo::Auto, _) => Algo::Brute,
            (a, _) => a,
        }
    }

    /// Errors unless `self` decides the problem at `budget`.
    pub fn check_budget(self, budget: RejectionBudget) -> Result<()> {
        let ok = match self.resolve(budget) {
            Algo::Fpt => budget == RejectionBudget::Unbounded,
            Algo::OneRejection => budget == RejectionBudget::Bounded(1),
            Algo::Ke => budget == RejectionBudget::Bounded(0),
            _ => true,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::param(format!(
                "algorithm {self} does not support budget {budget}"
            )))
        }
    }
}

#[derive(Debug, Clone, Copy, Default)]
pub struct SolveOptions {
    /// Worker threads for the parallel solvers; `None` uses the global pool.
    pub threads: Option<usize>,
    /// Overrides the brute-force size guard.
    pub brute_limits: Option<BruteLimits>,
}

pub fn solve(inst: &Instance, budget: RejectionBudget, algo: Algo) -> Result<SolveResult> {
    solve_with(inst, budget, algo, SolveOptions::default())
}

pub fn solve_with(
    inst: &Instance,
    budget: RejectionBudget,
    algo: Algo,
    opts: SolveOptions,
) -> Result<SolveResult> {
    algo.check_budget(budget)?;
    let run = || match algo.resolve(budget) {
        Algo::Fpt => solve_fpt(inst),
        Algo::OneRejection => solve_one_rejection(inst),
        Algo::Ke => {
            let mut stats = Stats::start();
            let r = solve_ke(inst)?;
            stats.dp_cells = r.states;
            stats.finish();
            let yes = r.coverage >= inst.k();
            Ok(SolveResult {
                answer: if yes { Answer::Yes } else { Answer::No },
                witness: yes.then_some(r.packing),
                stats,
            })
        }
        Algo::Brute | Algo::Auto => {
            solve_brute_force_with(inst, budget, opts.brute_limits.unwrap_or_default())
        }
    };
    match opts.threads {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| Error::Internal(format!("thread pool: {e}")))?
            .install(run),
        None => run(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dispatch_rules() {
        assert_eq!(Algo::Auto.resolve(RejectionBudget::Unbounded), Algo::Fpt);
        assert_eq!(Algo::Auto.resolve(RejectionBudget::Bounded(2)), Algo::Brute);
        assert_eq!(
            Algo::Auto.resolve(RejectionBudget::Bounded(1)),
            Algo::OneRejection
        );
        assert_eq!(Algo::Auto.resolve(RejectionBudget::Bounded(0)), Algo::Ke);
        assert!(matches!(
            Algo::Fpt.check_budget(RejectionBudget::Bounded(1)),
            Err(Error::InvalidParameter(_))
        ));
        assert!(Algo::Ke.check_budget(RejectionBudget::Unbounded).is_err());
        assert!(Algo::OneRejection
            .check_budget(RejectionBudget::Bounded(2))
            .is_err());
        assert!(Algo::Brute.check_budget(RejectionBudget::Bounded(7)).is_ok());
    }

    #[test]
    fn stats_block() {
        let s = Stats {
            subsets_examined: 3,
            ..Stats::default()
        };
        let text = s.to_string();
        assert!(text.lines().all(|l| l.contains('=')));
        assert!(text.starts_with("subsets_examined=3\n"));
    }

    #[test]
    fn threads_do_not_change_answers() {
        let i = Instance::new(
            6,
            2,
            vec![0, 1, 0, 1, 0, 1],
            2,
            4,
            vec![
                vec![0, 1],
                vec![1, 2],
                vec![2, 3],
                vec![3, 4],
                vec![4, 5],
                vec![0, 2],
            ],
        )
        .unwrap();
        let a = solve_with(
            &i,
            RejectionBudget::Bounded(1),
            Algo::Auto,
            SolveOptions {
                threads: Some(1),
                ..Default::default()
            },
        )
        .unwrap();
        let b = solve_with(
            &i,
            RejectionBudget::Bounded(1),
            Algo::Auto,
            SolveOptions {
                threads: Some(4),
                ..Default::default()
            },
        )
        .unwrap();
        assert_eq!(a.answer, b.answer);
        assert_eq!(a.witness, b.witness);
    }
}
