use std::process::{Command, Output};

use tempfile::TempDir;

fn omnitigs(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_omnitigs")).args(args).output().expect("run binary")
}

fn write(dir: &TempDir, name: &str, text: &str) -> String {
    let path = dir.path().join(name);
    std::fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_owned()
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn enumerate_bouquet_three() {
    let dir = TempDir::new().unwrap();
    let input = write(&dir, "bouquet3.el", "1 3\n0 0\n0 0\n0 0\n");
    let out = omnitigs(&["enumerate", "--input", &input, "--format", "edgelist"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "0\t1\t0\t0,0\n1\t1\t1\t0,0\n2\t1\t2\t0,0\n");
}

#[test]
fn stats_bouquet_two() {
    let dir = TempDir::new().unwrap();
    let input = write(&dir, "bouquet2.el", "1 2\n0 0\n0 0\n");
    let out = omnitigs(&["stats", "--input", &input]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "count=2\nmin=2\nmax=2\nmean=2\ntotal=4\n");
}

#[test]
fn closed_path_is_flagged() {
    let dir = TempDir::new().unwrap();
    let input = write(&dir, "cycle.el", "2 2\n0 1\n1 0\n");
    let out = omnitigs(&["enumerate", "--input", &input]);
    assert!(out.status.success());
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert!(lines[0].starts_with("# closed path"));
    assert_eq!(lines[1..], ["0\t2\t0,1\t0,1,0"]);
}

#[test]
fn output_file_and_backends_agree() {
    let dir = TempDir::new().unwrap();
    let input = write(&dir, "g.el", "4 7\n0 1\n1 2\n2 0\n2 3\n3 1\n3 3\n1 1\n");
    let mut results = Vec::new();
    for backend in ["bfs", "scc-cache", "fast"] {
        for fan in [true, false] {
            let output = dir.path().join(format!("{backend}-{fan}.tsv"));
            let mut args = vec!["enumerate", "--input", &input, "--backend", backend, "--output", output.to_str().unwrap()];
            if !fan {
                args.push("--no-fan");
            }
            let out = omnitigs(&args);
            assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
            let mut rows: Vec<String> = std::fs::read_to_string(&output)
                .unwrap()
                .lines()
                .map(|l| l.split('\t').skip(1).collect::<Vec<_>>().join("\t"))
                .collect();
            rows.sort();
            results.push(rows);
        }
    }
    assert!(!results[0].is_empty());
    assert!(results.iter().all(|r| r == &results[0]));
}

#[test]
fn handles_only_and_macrotigs() {
    let dir = TempDir::new().unwrap();
    let input = write(&dir, "bouquet2.el", "1 2\n0 0\n0 0\n");
    let out = omnitigs(&["enumerate", "--input", &input, "--handles-only", "--no-fan"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert_eq!(text.lines().filter(|l| l.starts_with("M\t")).count(), 2);
    assert_eq!(text.lines().filter(|l| l.starts_with("I\t")).count(), 2);
    let out = omnitigs(&["macrotigs", "--input", &input, "--no-fan"]);
    assert_eq!(stdout(&out), "0@js\t1@js\n1@js\t0@js\n");
}

#[test]
fn input_errors_exit_two() {
    let dir = TempDir::new().unwrap();
    let bad = write(&dir, "bad.el", "2 2\n0 1\n1 x\n");
    let out = omnitigs(&["enumerate", "--input", &bad]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 3"));

    let split = write(&dir, "split.el", "3 2\n0 1\n1 0\n");
    assert_eq!(omnitigs(&["stats", "--input", &split]).status.code(), Some(2));
    assert_eq!(omnitigs(&["stats", "--input", "/nonexistent/graph.el"]).status.code(), Some(2));
    assert_eq!(omnitigs(&["stats", "--unknown-flag"]).status.code(), Some(2));
    assert_eq!(omnitigs(&["stats"]).status.code(), Some(2));

    let gfa = write(&dir, "rc.gfa", "S\ta\t*\nS\tb\t*\nL\ta\t+\tb\t-\t0M\n");
    let out = omnitigs(&["stats", "--input", &gfa, "--format", "gfa"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 3"));
}

#[test]
fn per_scc_labels_components() {
    let dir = TempDir::new().unwrap();
    // two bouquets joined by a one-way arc
    let input = write(&dir, "two.el", "2 5\n0 0\n0 0\n0 1\n1 1\n1 1\n");
    let out = omnitigs(&["stats", "--input", &input, "--per-scc"]);
    assert!(out.status.success());
    assert_eq!(
        stdout(&out),
        "scc=0\ncount=2\nmin=2\nmax=2\nmean=2\ntotal=4\nscc=1\ncount=2\nmin=2\nmax=2\nmean=2\ntotal=4\n"
    );
    let out = omnitigs(&["enumerate", "--input", &input, "--per-scc"]);
    let rows: Vec<String> = stdout(&out).lines().map(str::to_owned).collect();
    assert_eq!(rows.len(), 4);
    assert!(rows[2].starts_with("1\t2\t2\t"));
    assert!(rows[2].ends_with("\t1,1,1"));
}

#[test]
fn fasta_de_bruijn_mode() {
    let dir = TempDir::new().unwrap();
    let fasta = write(&dir, "reads.fa", ">r1\nACGT\n>r2\nCGTA\n>r3\nGT\nAC\n");
    let out = omnitigs(&["enumerate", "--input", &fasta, "--format", "fasta", "--k", "3"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = stdout(&out);
    assert!(text.starts_with("# closed path"));
    assert_eq!(text.lines().nth(1).unwrap().split('\t').next_back(), Some("ACGT"));

    let short = write(&dir, "short.fa", ">r1\nACGTAC\n>r2\nAC\n");
    assert_eq!(omnitigs(&["stats", "--input", &short, "--format", "fasta", "--k", "3"]).status.code(), Some(2));
    let out = omnitigs(&["stats", "--input", &short, "--format", "fasta", "--k", "3", "--skip-short"]);
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("skipped 1 reads"));
    assert!(stdout(&out).starts_with("closed_path=1\ncount=1\n"));
    assert_eq!(omnitigs(&["stats", "--input", &short, "--format", "fasta"]).status.code(), Some(2));
}

#[test]
fn verify_small_corpus_passes() {
    let out = omnitigs(&["verify", "--seeds", "40"]);
    assert!(out.status.success(), "{}{}", stdout(&out), String::from_utf8_lossy(&out.stderr));
    let text = stdout(&out);
    for name in ["oracle_equivalence", "backend_equivalence", "safety_sampling", "stats_consistency"] {
        let line = text.lines().find(|l| l.starts_with(name)).unwrap();
        assert!(line.ends_with("PASS"), "{line}");
    }
}

#[test]
fn verify_single_input() {
    let dir = TempDir::new().unwrap();
    let input = write(&dir, "g.el", "3 5\n0 1\n1 2\n2 0\n1 0\n2 2\n");
    let out = omnitigs(&["verify", "--input", &input]);
    assert!(out.status.success(), "{}", stdout(&out));
}

#[test]
fn bench_reports_growth() {
    let out = omnitigs(&["bench", "--sizes", "500,1000", "--repeat", "1"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert_eq!(text.lines().count(), 4);
    assert!(text.lines().last().unwrap().starts_with("# growth 500 -> 1000"));
}
