//! Line-oriented text formats.
//!
//! ```text
//! rpsp <n> <m> <p> <d> <k>        kep <n> <arcs> <p> <d> <k>      graph <n>
//! agents <a_0> ... <a_{n-1}>      agents <a_0> ... <a_{n-1}>      edge <u> <v>
//! set <e_1> ... <e_j>             arc <u> <v>
//! ```
//!
//! Blank lines and lines starting with `#` are ignored. Writers emit the
//! canonical form, which parses back to the same bytes.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::kernel::TraceRecord;
use crate::model::{Digraph, Instance, KepInstance, Packing, RawInstance};
use crate::reductions::UndirectedGraph;

/// A parsed instance file.
#[derive(Debug, Clone)]
pub enum Input {
    Rpsp(Instance),
    Kep(KepInstance),
}

impl Input {
    /// The set packing view; KEP graphs are translated.
    pub fn instance(&self) -> Result<Instance> {
        match self {
            Input::Rpsp(i) => Ok(i.clone()),
            Input::Kep(k) => k.to_instance(),
        }
    }
}

type Tokens<'a> = Box<dyn Iterator<Item = (usize, Vec<&'a str>)> + 'a>;

struct Lines<'a> {
    inner: std::iter::Peekable<Tokens<'a>>,
}

impl<'a> Lines<'a> {
    fn new(text: &'a str) -> Self {
        let it: Tokens<'a> = Box::new(
            text.lines()
                .enumerate()
                .map(|(i, l)| (i + 1, l.trim()))
                .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
                .map(|(i, l)| (i, l.split_whitespace().collect())),
        );
        Lines { inner: it.peekable() }
    }

    fn next(&mut self) -> Option<(usize, Vec<&'a str>)> {
        self.inner.next()
    }

    /// The next line, which must start with `keyword`; returns its line number
    /// and remaining tokens.
    fn expect(&mut self, keyword: &str, last_line: usize) -> Result<(usize, Vec<&'a str>)> {
        match self.next() {
            Some((ln, toks)) if toks[0] == keyword => Ok((ln, toks[1..].to_vec())),
            Some((ln, toks)) => Err(Error::parse(
                ln,
                format!("expected `{keyword}`, found `{}`", toks[0]),
            )),
            None => Err(Error::parse(
                last_line + 1,
                format!("expected `{keyword}`, found end of file"),
            )),
        }
    }

    fn finish(&mut self) -> Result<()> {
        match self.next() {
            Some((ln, toks)) => Err(Error::parse(
                ln,
                format!("unexpected trailing line `{}`", toks.join(" ")),
            )),
            None => Ok(()),
        }
    }
}

fn numbers(ln: usize, toks: &[&str]) -> Result<Vec<usize>> {
    toks.iter()
        .map(|t| {
            t.parse::<usize>()
                .map_err(|_| Error::parse(ln, format!("`{t}` is not a non-negative integer")))
        })
        .collect()
}

fn exactly<const N: usize>(ln: usize, toks: &[&str], what: &str) -> Result<[usize; N]> {
    let v = numbers(ln, toks)?;
    v.try_into()
        .map_err(|_| Error::parse(ln, format!("{what} takes {N} integers")))
}

fn header(lines: &mut Lines<'_>, keyword: &str) -> Result<(usize, [usize; 5])> {
    let (ln, toks) = lines.expect(keyword, 0)?;
    Ok((ln, exactly::<5>(ln, &toks, &format!("`{keyword}` header"))?))
}

fn agents(lines: &mut Lines<'_>, ln: usize, n: usize) -> Result<(usize, Vec<usize>)> {
    let (ln, toks) = lines.expect("agents", ln)?;
    let a = numbers(ln, &toks)?;
    if a.len() != n {
        return Err(Error::parse(
            ln,
            format!("expected {n} agent entries, found {}", a.len()),
        ));
    }
    Ok((ln, a))
}

pub fn parse_rpsp(text: &str) -> Result<Instance> {
    let mut lines = Lines::new(text);
    let (ln, [n, m, p, d, k]) = header(&mut lines, "rpsp")?;
    let (mut ln, agent_of) = agents(&mut lines, ln, n)?;
    let mut sets = Vec::with_capacity(m);
    for _ in 0..m {
        let (l, toks) = lines.expect("set", ln)?;
        ln = l;
        sets.push(numbers(ln, &toks)?);
    }
    lines.finish()?;
    Instance::from_raw(RawInstance {
        n,
        p,
        agent_of,
        d,
        k,
        sets,
    })
}

fn join(v: impl IntoIterator<Item = usize>) -> String {
    v.into_iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}

fn keyword_line(out: &mut String, keyword: &str, rest: &str) {
    if rest.is_empty() {
        writeln!(out, "{keyword}").unwrap();
    } else {
        writeln!(out, "{keyword} {rest}").unwrap();
    }
}

pub fn write_rpsp(inst: &Instance) -> String {
    let mut out = String::new();
    writeln!(
        out,
        "rpsp {} {} {} {} {}",
        inst.n(),
        inst.num_sets(),
        inst.p(),
        inst.d(),
        inst.k()
    )
    .unwrap();
    keyword_line(
        &mut out,
        "agents",
        &join((0..inst.n()).map(|e| inst.agent_of(e).0)),
    );
    for s in inst.sets() {
        keyword_line(&mut out, "set", &join(s.iter()));
    }
    out
}

pub fn parse_kep(text: &str) -> Result<KepInstance> {
    let mut lines = Lines::new(text);
    let (ln, [n, m, p, d, k]) = header(&mut lines, "kep")?;
    let (mut ln, agent_of) = agents(&mut lines, ln, n)?;
    if let Some(&a) = agent_of.iter().find(|&&a| a >= p) {
        return Err(Error::parse(ln, format!("agent {a} out of range (p = {p})")));
    }
    let mut arcs = Vec::with_capacity(m);
    for _ in 0..m {
        let (l, toks) = lines.expect("arc", ln)?;
        ln = l;
        arcs.push(exactly::<2>(ln, &toks, "`arc`")?);
    }
    lines.finish()?;
    let graph = Digraph::new(n, arcs.into_iter().map(|[u, v]: [usize; 2]| (u, v))).map_err(|e| match e {
        Error::InvalidParameter(msg) => Error::parse(ln, msg),
        other => other,
    })?;
    if d < 2 {
        return Err(Error::param(format!(
            "cycle length bound must be at least 2, got {d}"
        )));
    }
    Ok(KepInstance {
        graph,
        agent_of,
        p,
        d,
        k,
    })
}

pub fn write_kep(kep: &KepInstance) -> String {
    let mut out = String::new();
    let g = &kep.graph;
    writeln!(
        out,
        "kep {} {} {} {} {}",
        g.n_vertices(),
        g.num_edges(),
        kep.p,
        kep.d,
        kep.k
    )
    .unwrap();
    keyword_line(&mut out, "agents", &join(kep.agent_of.iter().copied()));
    for (u, v) in g.edges() {
        writeln!(out, "arc {u} {v}").unwrap();
    }
    out
}

/// Parses either format, chosen by the first keyword.
pub fn parse_input(text: &str) -> Result<Input> {
    match Lines::new(text).next() {
        Some((_, toks)) if toks[0] == "rpsp" => parse_rpsp(text).map(Input::Rpsp),
        Some((_, toks)) if toks[0] == "kep" => parse_kep(text).map(Input::Kep),
        Some((ln, toks)) => Err(Error::parse(ln, format!("unknown file kind `{}`", toks[0]))),
        None => Err(Error::parse(1, "empty input")),
    }
}

pub fn parse_graph(text: &str) -> Result<UndirectedGraph> {
    let mut lines = Lines::new(text);
    let (ln, toks) = lines.expect("graph", 0)?;
    let [n] = exactly::<1>(ln, &toks, "`graph` header")?;
    let mut edges = Vec::new();
    let mut last = ln;
    while let Some((l, toks)) = lines.next() {
        last = l;
        if toks[0] != "edge" {
            return Err(Error::parse(l, format!("expected `edge`, found `{}`", toks[0])));
        }
        let [u, v] = exactly::<2>(l, &toks[1..], "`edge`")?;
        edges.push((u, v));
    }
    UndirectedGraph::new(n, edges).map_err(|e| match e {
        Error::InvalidParameter(msg) => Error::parse(last, msg),
        other => other,
    })
}

pub fn write_graph(g: &UndirectedGraph) -> String {
    let mut out = format!("graph {}\n", g.n_vertices());
    for (u, v) in g.edges() {
        writeln!(out, "edge {u} {v}").unwrap();
    }
    out
}

/// Reads the single `packing <i> <j> ...` line of a file. Other solver output
/// (`YES`/`NO`, `cycle` lines, `key=value` stats) is skipped.
pub fn parse_packing(text: &str) -> Result<Packing> {
    let mut found = None;
    for (ln, toks) in Lines::new(text).inner {
        match toks[0] {
            "packing" => {
                if found.is_some() {
                    return Err(Error::parse(ln, "more than one `packing` line"));
                }
                found = Some(Packing::new(numbers(ln, &toks[1..])?));
            }
            "YES" | "NO" | "cycle" | "reject" => {}
            t if t.contains('=') => {}
            t => return Err(Error::parse(ln, format!("unexpected `{t}` in packing file"))),
        }
    }
    found.ok_or_else(|| Error::parse(1, "no `packing` line"))
}

pub fn write_packing(x: &Packing) -> String {
    let mut out = String::new();
    keyword_line(&mut out, "packing", &join(x.indices().iter().copied()));
    out
}

pub fn parse_trace(text: &str) -> Result<Vec<TraceRecord>> {
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty() && !l.trim_start().starts_with('#'))
        .map(|(i, l)| {
            l.parse::<TraceRecord>()
                .map_err(|_| Error::parse(i + 1, format!("malformed trace record `{l}`")))
        })
        .collect()
}

pub fn write_trace(trace: &[TraceRecord]) -> String {
    trace.iter().map(|r| format!("{r}\n")).collect()
}
