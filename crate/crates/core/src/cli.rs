//! The `rpsp` command-line front end.
//!
//! Exit codes: 0 for a yes answer or success, 1 for a no answer or a failed
//! verification, 2 for any error.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};

use crate::bench::{run_bench, BenchRow, Suite};
use crate::error::{Error, Result};
use crate::format::{self, Input};
use crate::kernel::{kernelize_with, KernelOptions, Verdict};
use crate::model::Instance;
use crate::reductions::{random_instance, random_kep, reduce_subgraph_iso};
use crate::rejection::{first_rejection, RejectionBudget};
use crate::solvers::{solve_with, Algo, BruteLimits, SolveOptions};

pub const EXIT_YES: i32 = 0;
pub const EXIT_NO: i32 = 1;
pub const EXIT_ERROR: i32 = 2;

/// Rejection-proof set packing and kidney exchange solvers
#[derive(Parser, Debug)]
#[command(name = "rpsp", version)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Decide whether a rejection-proof packing covering k elements exists
    Solve {
        /// Instance file (rpsp or kep format)
        file: PathBuf,
        /// Rejection budget: a non-negative integer or `inf`
        #[arg(long = "c", default_value = "inf")]
        budget: RejectionBudget,
        #[arg(long, value_enum, default_value_t = AlgoArg::Auto)]
        algo: AlgoArg,
        /// Print the solution packing
        #[arg(long)]
        witness: bool,
        /// Print work counters as key=value lines
        #[arg(long)]
        stats: bool,
        /// Print the set packing translation of a kep input to stderr
        #[arg(long)]
        emit_rpsp: bool,
        /// Worker threads for the parallel solvers
        #[arg(long)]
        threads: Option<usize>,
        /// Lift the brute-force size guard
        #[arg(long)]
        brute_unguarded: bool,
    },
    /// Shrink an instance with the sunflower reduction rules
    Kernelize {
        file: PathBuf,
        /// Write the reduced instance here instead of stdout
        #[arg(long)]
        out: Option<PathBuf>,
        /// Write one line per rule application here
        #[arg(long)]
        trace: Option<PathBuf>,
        /// Keep applying rules below the kernel size bound
        #[arg(long)]
        eager: bool,
    },
    /// Check a packing: valid, covers k elements, and rejection-proof
    Verify {
        instance: PathBuf,
        packing: PathBuf,
        #[arg(long = "c", default_value = "inf")]
        budget: RejectionBudget,
    },
    /// Write a generated instance
    Generate {
        #[arg(long, value_enum)]
        kind: Kind,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 8)]
        n: usize,
        #[arg(long, default_value_t = 10)]
        m: usize,
        #[arg(long, default_value_t = 2)]
        p: usize,
        #[arg(long, default_value_t = 3)]
        d: usize,
        #[arg(long, default_value_t = 4)]
        k: usize,
        /// Arc probability for random-kep
        #[arg(long, default_value_t = 0.3)]
        edge_prob: f64,
        /// Host graph file for sgi-reduction
        #[arg(long)]
        host: Option<PathBuf>,
        /// Pattern graph file for sgi-reduction
        #[arg(long)]
        pattern: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Time the solvers on a seeded instance stream (CSV)
    Bench {
        #[arg(long, value_enum, default_value_t = SuiteArg::Random)]
        suite: SuiteArg,
        /// Inclusive range `a..b` or comma-separated list
        #[arg(long, default_value = "6..10")]
        sizes: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1)]
        repeat: usize,
        #[arg(long)]
        threads: Option<usize>,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum AlgoArg {
    Auto,
    Fpt,
    OneRej,
    Brute,
    Ke,
}

impl From<AlgoArg> for Algo {
    fn from(a: AlgoArg) -> Algo {
        match a {
            AlgoArg::Auto => Algo::Auto,
            AlgoArg::Fpt => Algo::Fpt,
            AlgoArg::OneRej => Algo::OneRejection,
            AlgoArg::Brute => Algo::Brute,
            AlgoArg::Ke => Algo::Ke,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum Kind {
    RandomRpsp,
    RandomKep,
    SgiReduction,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum SuiteArg {
    Random,
    Sgi,
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::param(format!("cannot read {}: {e}", path.display())))
}

fn write_file(path: &Path, text: &str) -> Result<()> {
    std::fs::write(path, text).map_err(|e| Error::param(format!("cannot write {}: {e}", path.display())))
}

fn io(e: std::io::Error) -> Error {
    Error::Internal(format!("output failed: {e}"))
}

/// Parses `a..b` (inclusive) or `a,b,c`.
pub fn parse_sizes(s: &str) -> Result<Vec<usize>> {
    let bad = || Error::param(format!("bad size list `{s}`"));
    if let Some((a, b)) = s.split_once("..") {
        let a: usize = a.trim().parse().map_err(|_| bad())?;
        let b: usize = b.trim().trim_start_matches('=').parse().map_err(|_| bad())?;
        if a > b {
            return Err(bad());
        }
        return Ok((a..=b).collect());
    }
    s.split(',')
        .map(|x| x.trim().parse().map_err(|_| bad()))
        .collect()
}

/// Runs the CLI on `args` (including the program name), writing to `out` and
/// `err`, and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_ERROR } else { EXIT_YES };
            let text = e.render().to_string();
            if e.use_stderr() {
                let _ = write!(err, "{text}");
            } else {
                let _ = write!(out, "{text}");
            }
            return code;
        }
    };
    match dispatch(cli.command, out, err) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_ERROR
        }
    }
}

fn dispatch(cmd: Command, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32> {
    match cmd {
        Command::Solve {
            file,
            budget,
            algo,
            witness,
            stats,
            emit_rpsp,
            threads,
            brute_unguarded,
        } => {
            let algo = Algo::from(algo);
            algo.check_budget(budget)?;
            let input = format::parse_input(&read(&file)?)?;
            let inst = input.instance()?;
            if emit_rpsp {
                write!(err, "{}", format::write_rpsp(&inst)).map_err(io)?;
            }
            let opts = SolveOptions {
                threads,
                brute_limits: brute_unguarded.then_some(BruteLimits::UNGUARDED),
            };
            let r = solve_with(&inst, budget, algo, opts)?;
            writeln!(out, "{}", r.answer).map_err(io)?;
            if witness {
                if let Some(x) = &r.witness {
                    write!(out, "{}", format::write_packing(x)).map_err(io)?;
                    if let Input::Kep(kep) = &input {
                        for &i in x.indices() {
                            let c = kep
                                .realize(inst.set(i))
                                .ok_or_else(|| Error::Internal(format!("set {i} has no cycle")))?;
                            let verts: Vec<String> = c.vertices().iter().map(|v| v.to_string()).collect();
                            writeln!(out, "cycle {i} {}", verts.join(" ")).map_err(io)?;
                        }
                    }
                }
            }
            if stats {
                writeln!(out, "{}", r.stats).map_err(io)?;
            }
            Ok(if r.answer.is_yes() { EXIT_YES } else { EXIT_NO })
        }
        Command::Kernelize {
            file,
            out: out_path,
            trace,
            eager,
        } => {
            let inst = format::parse_input(&read(&file)?)?.instance()?;
            let k = kernelize_with(&inst, KernelOptions { eager })?;
            if let Some(path) = &trace {
                write_file(path, &format::write_trace(&k.trace))?;
            }
            match k.verdict {
                Verdict::DecidedYes => writeln!(out, "DECIDED YES").map_err(io)?,
                Verdict::Reduced => {
                    let text = format::write_rpsp(k.instance.as_ref().expect("reduced instance"));
                    match &out_path {
                        Some(p) => write_file(p, &text)?,
                        None => write!(out, "{text}").map_err(io)?,
                    }
                }
            }
            Ok(EXIT_YES)
        }
        Command::Verify {
            instance,
            packing,
            budget,
        } => {
            let inst = format::parse_input(&read(&instance)?)?.instance()?;
            let x = format::parse_packing(&read(&packing)?)?;
            verify(&inst, &x, budget, out)
        }
        Command::Generate {
            kind,
            seed,
            n,
            m,
            p,
            d,
            k,
            edge_prob,
            host,
            pattern,
            out: out_path,
        } => {
            let text = match kind {
                Kind::RandomRpsp => format::write_rpsp(&random_instance(n, m, p, d, k, seed)?),
                Kind::RandomKep => format::write_kep(&random_kep(n, edge_prob, p, d, k, seed)?),
                Kind::SgiReduction => {
                    let (Some(g), Some(h)) = (host, pattern) else {
                        return Err(Error::param(
                            "sgi-reduction needs --host and --pattern graph files",
                        ));
                    };
                    let g = format::parse_graph(&read(&g)?)?;
                    let h = format::parse_graph(&read(&h)?)?;
                    format::write_kep(&reduce_subgraph_iso(&g, &h)?.kep)
                }
            };
            match out_path {
                Some(p) => write_file(&p, &text)?,
                None => write!(out, "{text}").map_err(io)?,
            }
            Ok(EXIT_YES)
        }
        Command::Bench {
            suite,
            sizes,
            seed,
            repeat,
            threads,
        } => {
            let suite = match suite {
                SuiteArg::Random => Suite::Random,
                SuiteArg::Sgi => Suite::Sgi,
            };
            let sizes = parse_sizes(&sizes)?;
            let opts = SolveOptions {
                threads,
                brute_limits: None,
            };
            writeln!(out, "{}", BenchRow::HEADER).map_err(io)?;
            for row in run_bench(suite, &sizes, seed, repeat, opts)? {
                writeln!(out, "{row}").map_err(io)?;
            }
            Ok(EXIT_YES)
        }
    }
}

fn verify(
    inst: &Instance,
    x: &crate::model::Packing,
    budget: RejectionBudget,
    out: &mut dyn Write,
) -> Result<i32> {
    let covered = match inst.covered(x) {
        Ok(c) => c,
        Err(Error::InvalidPacking(msg)) => {
            writeln!(out, "INVALID {msg}").map_err(io)?;
            return Ok(EXIT_NO);
        }
        Err(e) => return Err(e),
    };
    if covered.len() < inst.k() {
        writeln!(out, "INSUFFICIENT covers {} < k = {}", covered.len(), inst.k()).map_err(io)?;
        return Ok(EXIT_NO);
    }
    match first_rejection(inst, x, budget)? {
        Some(w) => {
            writeln!(out, "REJECTED").map_err(io)?;
            writeln!(out, "{w}").map_err(io)?;
            Ok(EXIT_NO)
        }
        None => {
            writeln!(out, "OK covers {}", covered.len()).map_err(io)?;
            Ok(EXIT_YES)
        }
    }
}
