use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn data(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/data")
        .join(name)
}

fn rpsp(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rpsp"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

fn two_agents_with_k(dir: &Path, k: usize) -> String {
    let text = std::fs::read_to_string(data("two_agents.kep")).unwrap();
    write(
        dir,
        "two_agents_k.kep",
        &text.replacen("kep 7 8 2 3 6", &format!("kep 7 8 2 3 {k}"), 1),
    )
}

#[test]
fn two_agent_kep_is_no_at_six() {
    let o = rpsp(&[
        "solve",
        data("two_agents.kep").to_str().unwrap(),
        "--c",
        "inf",
        "--witness",
    ]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(stdout(&o), "NO\n");
}

#[test]
fn two_agent_kep_yes_at_five_and_witness_verifies() {
    let dir = tempfile::tempdir().unwrap();
    let inst = two_agents_with_k(dir.path(), 5);
    let o = rpsp(&["solve", &inst, "--witness"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.starts_with("YES\npacking 0 2\n"), "{out}");
    assert!(out.contains("cycle 0 0 1\n"));
    assert!(out.contains("cycle 2 4 5 6\n"));
    let packing = write(dir.path(), "x.txt", &out);
    let v = rpsp(&["verify", &inst, &packing]);
    assert_eq!(v.status.code(), Some(0), "{}", stdout(&v));
    assert!(stdout(&v).starts_with("OK"));
}

#[test]
fn every_algorithm_witness_verifies_at_its_budget() {
    let dir = tempfile::tempdir().unwrap();
    let inst = data("random9.rpsp");
    let inst = inst.to_str().unwrap();
    for (algo, c) in [
        ("fpt", "inf"),
        ("one-rej", "1"),
        ("ke", "0"),
        ("brute", "2"),
        ("auto", "inf"),
    ] {
        let o = rpsp(&["solve", inst, "--algo", algo, "--c", c, "--witness"]);
        assert_eq!(o.status.code(), Some(0), "{algo}: {}", stderr(&o));
        let packing = write(dir.path(), "w.txt", &stdout(&o));
        let v = rpsp(&["verify", inst, &packing, "--c", c]);
        assert_eq!(v.status.code(), Some(0), "{algo}: {}", stdout(&v));
    }
}

#[test]
fn optimal_packing_is_one_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let packing = write(dir.path(), "p.txt", "packing 1 2\n");
    let o = rpsp(&[
        "verify",
        data("two_agents.kep").to_str().unwrap(),
        &packing,
        "--c",
        "1",
    ]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(stdout(&o), "REJECTED\nreject agent=0 rej=1 int=0\n");
}

#[test]
fn overlapping_packing_is_invalid() {
    let dir = tempfile::tempdir().unwrap();
    let packing = write(dir.path(), "p.txt", "packing 0 1\n");
    let o = rpsp(&["verify", data("two_agents.kep").to_str().unwrap(), &packing]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).starts_with("INVALID"));
}

#[test]
fn short_packing_is_insufficient() {
    let dir = tempfile::tempdir().unwrap();
    let packing = write(dir.path(), "p.txt", "packing 0\n");
    let o = rpsp(&["verify", data("two_agents.kep").to_str().unwrap(), &packing]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).starts_with("INSUFFICIENT"));
}

#[test]
fn malformed_packing_file_is_an_error() {
    let dir = tempfile::tempdir().unwrap();
    let packing = write(dir.path(), "p.txt", "packing one\n");
    let o = rpsp(&["verify", data("two_agents.kep").to_str().unwrap(), &packing]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("line 1"));
}

#[test]
fn kep_without_cycles() {
    let o = rpsp(&["solve", data("no_cycles.kep").to_str().unwrap(), "--witness"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "YES\npacking\n");
}

#[test]
fn exit_codes_for_errors() {
    let dir = tempfile::tempdir().unwrap();
    let garbage = write(dir.path(), "g.rpsp", "rpsp 3 1 1 2\n");
    assert_eq!(rpsp(&["solve", &garbage]).status.code(), Some(2));
    assert_eq!(rpsp(&["solve", "/nonexistent/file"]).status.code(), Some(2));
    let inst = data("two_agents.kep");
    let inst = inst.to_str().unwrap();
    let o = rpsp(&["solve", inst, "--algo", "fpt", "--c", "1"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("does not support"));
    assert_eq!(rpsp(&["solve", inst, "--c", "-3"]).status.code(), Some(2));
    assert_eq!(rpsp(&["solve", inst, "--algo", "magic"]).status.code(), Some(2));
    assert_eq!(rpsp(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(rpsp(&["--help"]).status.code(), Some(0));
}

#[test]
fn brute_force_guard() {
    let dir = tempfile::tempdir().unwrap();
    let mut text = String::from("rpsp 14 1 1 1 1\nagents");
    text.push_str(&" 0".repeat(14));
    text.push_str("\nset 3\n");
    let inst = write(dir.path(), "big.rpsp", &text);
    let o = rpsp(&["solve", &inst, "--algo", "brute"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("limited"));
    let o = rpsp(&["solve", &inst, "--algo", "brute", "--brute-unguarded"]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn emit_rpsp_prints_translation() {
    let o = rpsp(&["solve", data("two_agents.kep").to_str().unwrap(), "--emit-rpsp"]);
    assert_eq!(
        stderr(&o),
        std::fs::read_to_string(data("two_agents.rpsp")).unwrap()
    );
}

#[test]
fn stats_block_is_key_value() {
    let o = rpsp(&[
        "solve",
        data("random9.rpsp").to_str().unwrap(),
        "--c",
        "1",
        "--stats",
    ]);
    let out = stdout(&o);
    let mut lines = out.lines();
    assert_eq!(lines.next(), Some("YES"));
    let keys: Vec<&str> = lines.map(|l| l.split_once('=').unwrap().0).collect();
    assert_eq!(
        keys,
        [
            "subsets_examined",
            "dp_cells",
            "rejections_checked",
            "kernel_removed",
            "wall_time_us"
        ]
    );
}

#[test]
fn thread_count_does_not_change_output() {
    let f = data("random9.rpsp");
    let f = f.to_str().unwrap();
    let one = rpsp(&["solve", f, "--c", "1", "--witness", "--threads", "1"]);
    let four = rpsp(&["solve", f, "--c", "1", "--witness", "--threads", "4"]);
    assert_eq!(stdout(&one), stdout(&four));
}

#[test]
fn kernelize_small_instance_is_identity() {
    let f = data("random9.rpsp");
    let o = rpsp(&["kernelize", f.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), std::fs::read_to_string(&f).unwrap());
    let dir = tempfile::tempdir().unwrap();
    let tiny = write(
        dir.path(),
        "t.rpsp",
        "rpsp 4 2 2 2 3\nagents 0 1 0 1\nset 0 1\nset 1 2\n",
    );
    let o = rpsp(&["kernelize", &tiny]);
    assert_eq!(stdout(&o), std::fs::read_to_string(&tiny).unwrap());
}

#[test]
fn kernelize_decides_yes_on_disjoint_sets() {
    let dir = tempfile::tempdir().unwrap();
    let inst = write(
        dir.path(),
        "d.rpsp",
        "rpsp 6 3 2 2 2\nagents 0 1 0 1 0 1\nset 0 1\nset 2 3\nset 4 5\n",
    );
    let o = rpsp(&["kernelize", &inst]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "DECIDED YES\n");
}

#[test]
fn eager_kernelize_writes_rule_trace() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("out.rpsp");
    let trace = dir.path().join("trace.txt");
    let o = rpsp(&[
        "kernelize",
        data("star.rpsp").to_str().unwrap(),
        "--eager",
        "--out",
        out.to_str().unwrap(),
        "--trace",
        trace.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let t = std::fs::read_to_string(&trace).unwrap();
    assert!(t.lines().any(|l| l.starts_with("rule=1 ")), "{t}");
    let reduced = std::fs::read_to_string(&out).unwrap();
    assert!(reduced.starts_with("rpsp 10 8 "));
    // The reduced instance keeps the answer.
    let a = rpsp(&["solve", data("star.rpsp").to_str().unwrap()]);
    let b = rpsp(&["solve", out.to_str().unwrap()]);
    assert_eq!(a.status.code(), b.status.code());
}

#[test]
fn generate_is_deterministic() {
    let args = [
        "generate",
        "--kind",
        "random-rpsp",
        "--seed",
        "5",
        "--n",
        "9",
        "--m",
        "12",
        "--p",
        "3",
    ];
    let a = rpsp(&args);
    let b = rpsp(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(stdout(&a), stdout(&b));
    let kep = rpsp(&[
        "generate",
        "--kind",
        "random-kep",
        "--seed",
        "5",
        "--edge-prob",
        "1",
        "--n",
        "4",
    ]);
    assert!(stdout(&kep).starts_with("kep 4 12 "));
    let bad = rpsp(&[
        "generate",
        "--kind",
        "random-rpsp",
        "--n",
        "3",
        "--m",
        "50",
        "--d",
        "2",
    ]);
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn generate_reduction_from_graph_files() {
    let o = rpsp(&[
        "generate",
        "--kind",
        "sgi-reduction",
        "--host",
        data("embed_host.graph").to_str().unwrap(),
        "--pattern",
        data("embed_pattern.graph").to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), std::fs::read_to_string(data("embed.kep")).unwrap());
    let missing = rpsp(&["generate", "--kind", "sgi-reduction"]);
    assert_eq!(missing.status.code(), Some(2));
}

#[test]
fn bench_rows_and_repeats() {
    let o = rpsp(&[
        "bench", "--suite", "random", "--sizes", "6..10", "--seed", "3", "--repeat", "2",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    let mut lines = out.lines();
    assert_eq!(lines.next(), Some("algo,n,m,k,c,answer,time"));
    let rows: Vec<Vec<String>> = lines.map(|l| l.split(',').map(String::from).collect()).collect();
    assert_eq!(rows.len(), 5 * 4 * 2);
    for algo in ["ke", "one-rej", "fpt", "brute"] {
        assert_eq!(rows.iter().filter(|r| r[0] == algo).count(), 10);
    }
    let (first, second) = rows.split_at(20);
    for (a, b) in first.iter().zip(second) {
        assert_eq!(a[..6], b[..6]);
    }
    // One-rejection never says yes when the coverage optimum is below k.
    for chunk in first.chunks(4) {
        if chunk[0][5] == "NO" {
            assert_eq!(chunk[1][5], "NO");
        }
    }
    let sgi = rpsp(&["bench", "--suite", "sgi", "--sizes", "2,3"]);
    assert_eq!(sgi.status.code(), Some(0));
    assert_eq!(stdout(&sgi).lines().count(), 1 + 2 * 4);
}
