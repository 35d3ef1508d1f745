//! One PASS/FAIL line per acceptance criterion. Runs without the test harness
//! so the lines always reach the output; exits non-zero if a criterion fails
//! other than those listed as unattainable.

use std::collections::BTreeSet;
use std::process::{Command, ExitCode};
use std::time::Instant;

use omnitigs::enumerate::{compare_with_brute_force, verify_safety_by_sampling, Representation};
use omnitigs::structure::{check_omnitig_walks, check_tigs};
use omnitigs::verify::{backend_disagreements, random_corpus, random_scc_graph};
use omnitigs::{
    all_maximal_omnitig_handles, ArcId, Classification, Enumeration, EnumerationOptions, Graph, LengthStats,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const CORPUS_SIZE: usize = 500;
const CORPUS_SEED: u64 = 2024;

/// Criteria that cannot hold as stated. They still print FAIL; they do not
/// fail the run.
const KNOWN_UNATTAINABLE: [(&str, &str); 1] = [(
    "representation size bounds",
    "3n' is exceeded by bouquet(2) (n' = 1, microtigs ab and ba, total 4); \
     counting two end arcs for each of up to 2n' microtigs gives 5n'",
)];

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

fn representation(g: &Graph, constant_degree: bool) -> Representation {
    let options = EnumerationOptions {
        constant_degree,
        ..EnumerationOptions::default()
    };
    match all_maximal_omnitig_handles(g, options).expect("corpus graphs are strongly connected") {
        Enumeration::Omnitigs(rep) => rep,
        Enumeration::ClosedPath(_) => panic!("corpus excludes closed paths"),
    }
}

fn walk_set(rep: &Representation, g: &Graph) -> BTreeSet<Vec<ArcId>> {
    rep.materialize_all(g).into_iter().map(|w| w.into_arcs()).collect()
}

fn oracle_equivalence(corpus: &[(u64, Graph)]) -> Outcome {
    let start = Instant::now();
    let mut mismatches = Vec::new();
    for (seed, g) in corpus {
        match compare_with_brute_force(g, EnumerationOptions::default()) {
            Ok(None) => {}
            Ok(Some(m)) => mismatches.push(format!("seed {seed}: {m:?}")),
            Err(e) => mismatches.push(format!("seed {seed}: {e}")),
        }
    }
    let secs = start.elapsed().as_secs_f64();
    outcome(
        mismatches.is_empty() && secs < 120.0,
        format!("{} graphs, {} mismatches, {secs:.1}s {}", corpus.len(), mismatches.len(), mismatches.first().map_or("", |s| s)),
    )
}

fn golden_cases() -> Outcome {
    let options = EnumerationOptions::default();
    let set = |g: &Graph| match all_maximal_omnitig_handles(g, options).unwrap() {
        Enumeration::Omnitigs(rep) => Some(walk_set(&rep, g)),
        Enumeration::ClosedPath(_) => None,
    };
    let b3 = set(&Graph::bouquet(3)) == Some(BTreeSet::from([vec![0], vec![1], vec![2]]));
    let b2 = set(&Graph::bouquet(2)) == Some(BTreeSet::from([vec![0, 1], vec![1, 0]]));
    let c2 = set(&Graph::cycle(2)).is_none();
    outcome(b3 && b2 && c2, format!("bouquet(3) {b3}, bouquet(2) {b2}, 2-cycle closed path {c2}"))
}

fn size_bounds(corpus: &[(u64, Graph)]) -> Outcome {
    let (mut micro_over, mut macro_over, mut handles_over, mut over_5n) = (0, 0, 0, 0);
    let mut worst_handles = 0.0f64;
    let mut worst_tigs = 0.0f64;
    for (_, g) in corpus {
        for constant_degree in [false, true] {
            let rep = representation(g, constant_degree);
            let n = rep.transformed.graph.node_count();
            let micro: usize = rep.tigs.microtigs.iter().map(|m| m.arcs.len()).sum();
            let macro_: usize = rep.tigs.macrotigs.iter().map(|m| m.arcs.len()).sum();
            let per_arc = rep.handles.len() as f64 / g.arc_count() as f64;
            worst_handles = worst_handles.max(per_arc);
            worst_tigs = worst_tigs.max(micro.max(macro_) as f64 / n as f64);
            micro_over += usize::from(micro > 3 * n);
            macro_over += usize::from(macro_ > 3 * n);
            handles_over += usize::from(per_arc > 4.0);
            over_5n += usize::from(micro.max(macro_) > 5 * n);
        }
    }
    outcome(
        micro_over + macro_over + handles_over == 0,
        format!(
            "runs over 3n': microtigs {micro_over}, macrotigs {macro_over}; over 5n': {over_5n}; \
             handles over 4m: {handles_over}; max tig length / n' = {worst_tigs:.2}, max handles / m = {worst_handles:.2}"
        ),
    )
}

fn backend_equivalence() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut queries = 0;
    let mut disagreements = 0;
    while queries < 100_000 {
        let n = rng.gen_range(1..=50);
        let m = rng.gen_range(n..=3 * n);
        let g = random_scc_graph(n, m, rng.gen()).unwrap();
        disagreements += backend_disagreements(&g, 500, rng.gen()).unwrap().len();
        queries += 500;
    }
    outcome(disagreements == 0, format!("{queries} queries on n <= 50, {disagreements} disagreements (bfs, scc-cache, fast)"))
}

fn safety_sampling(corpus: &[(u64, Graph)]) -> Outcome {
    let mut checks = 0;
    let mut violations = 0;
    for (seed, g) in corpus.iter().take(100) {
        let rep = representation(g, true);
        let report = verify_safety_by_sampling(g, &rep.materialize_all(g), 20, *seed).unwrap();
        checks += report.checks;
        violations += report.violations.len();
    }
    outcome(violations == 0, format!("100 graphs x 20 walks, {checks} containment checks, {violations} violations"))
}

fn structural_suite(corpus: &[(u64, Graph)]) -> Outcome {
    let mut checks = 0;
    let mut violations = Vec::new();
    for (seed, g) in corpus {
        for constant_degree in [false, true] {
            let rep = representation(g, constant_degree);
            let compressed = &rep.transformed.graph;
            let tigs = check_tigs(compressed, &Classification::new(compressed), &rep.tigs);
            let walks: Vec<Vec<ArcId>> = walk_set(&rep, g).into_iter().collect();
            let omnitigs = check_omnitig_walks(g, &walks);
            checks += tigs.checks + omnitigs.checks;
            for v in tigs.violations.into_iter().chain(omnitigs.violations) {
                violations.push(format!("seed {seed} fan={constant_degree}: {v}"));
            }
            if rep.anomalies > 0 {
                violations.push(format!("seed {seed} fan={constant_degree}: {} anomalies", rep.anomalies));
            }
        }
    }
    outcome(
        violations.is_empty(),
        format!("{checks} checks, {} violations {}", violations.len(), violations.first().map_or("", |s| s)),
    )
}

fn scaling() -> Outcome {
    let out = Command::new(env!("CARGO_BIN_EXE_omnitigs"))
        .args(["bench", "--sizes", "10000,20000,40000,80000", "--repeat", "3"])
        .output()
        .expect("run bench");
    if !out.status.success() {
        return outcome(false, format!("bench failed: {}", String::from_utf8_lossy(&out.stderr)));
    }
    let text = String::from_utf8_lossy(&out.stdout);
    let mut pass = true;
    let mut detail = Vec::new();
    for line in text.lines().filter(|l| l.starts_with("# growth")) {
        let fields: Vec<&str> = line.split_whitespace().collect();
        let steps: f64 = fields[fields.len() - 3].parse().unwrap();
        let time: f64 = fields[fields.len() - 1].parse().unwrap();
        pass &= steps <= 1.30 && time <= 1.5;
        detail.push(format!("{}->{} steps {steps:.2} time {time:.2}", fields[2], fields[4].trim_end_matches(':')));
    }
    outcome(pass && detail.len() == 3, detail.join("; "))
}

fn stats_consistency(corpus: &[(u64, Graph)]) -> Outcome {
    let mut mismatches = 0;
    for (_, g) in corpus {
        let rep = representation(g, true);
        let materialized = LengthStats::from_lengths(rep.materialize_all(g).iter().map(|w| w.len()));
        if rep.length_stats() != materialized {
            mismatches += 1;
        }
    }
    outcome(mismatches == 0, format!("{} graphs, {mismatches} mismatches", corpus.len()))
}

fn transformation_round_trip(corpus: &[(u64, Graph)]) -> Outcome {
    let mut mismatches = 0;
    for (_, g) in corpus {
        if walk_set(&representation(g, true), g) != walk_set(&representation(g, false), g) {
            mismatches += 1;
        }
    }
    outcome(mismatches == 0, format!("{} graphs, {mismatches} mismatches with and without fan expansion", corpus.len()))
}

fn main() -> ExitCode {
    let corpus = random_corpus(CORPUS_SIZE, CORPUS_SEED);
    let criteria: [(&str, &dyn Fn() -> Outcome); 9] = [
        ("oracle equivalence", &|| oracle_equivalence(&corpus)),
        ("golden cases", &golden_cases),
        ("representation size bounds", &|| size_bounds(&corpus)),
        ("backend equivalence", &backend_equivalence),
        ("safety sampling", &|| safety_sampling(&corpus)),
        ("structural invariant suite", &|| structural_suite(&corpus)),
        ("output-sensitive scaling", &scaling),
        ("statistics consistency", &|| stats_consistency(&corpus)),
        ("transformation round-trip", &|| transformation_round_trip(&corpus)),
    ];
    let mut unexpected = 0;
    for (name, check) in criteria {
        let o = check();
        println!("{} {name}: {}", if o.pass { "PASS" } else { "FAIL" }, o.detail.trim_end());
        if !o.pass {
            match KNOWN_UNATTAINABLE.iter().find(|(n, _)| *n == name) {
                Some((_, why)) => println!("     known: {why}"),
                None => unexpected += 1,
            }
        }
    }
    if unexpected == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{unexpected} acceptance criteria failed unexpectedly");
        ExitCode::FAILURE
    }
}
