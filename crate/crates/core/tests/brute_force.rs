use std::collections::BTreeSet;

use omnitigs::verify::{brute_force_maximal_omnitigs, random_corpus};
use omnitigs::{all_maximal_omnitig_handles, Backend, Enumeration, EnumerationOptions, Graph};

fn pipeline_set(g: &Graph, options: EnumerationOptions) -> BTreeSet<Vec<usize>> {
    match all_maximal_omnitig_handles(g, options).unwrap() {
        Enumeration::Omnitigs(rep) => {
            let walks: Vec<_> = rep.materialize_all(g).into_iter().map(|w| w.into_arcs()).collect();
            let set: BTreeSet<_> = walks.iter().cloned().collect();
            assert_eq!(set.len(), walks.len(), "duplicate output");
            set
        }
        Enumeration::ClosedPath(_) => panic!("corpus excludes closed paths"),
    }
}

#[test]
fn matches_brute_force_on_corpus() {
    let mut failures = Vec::new();
    for (seed, g) in random_corpus(500, 2024) {
        let expected = brute_force_maximal_omnitigs(&g).unwrap();
        for (constant_degree, backend) in [(false, Backend::Bfs), (true, Backend::SccCache), (true, Backend::Fast), (false, Backend::Fast)] {
            let options = EnumerationOptions {
                backend,
                constant_degree,
            };
            let got = pipeline_set(&g, options);
            if got != expected {
                failures.push(format!(
                    "seed {seed} fan={constant_degree} {backend}: arcs {:?}\n  expected {expected:?}\n  got      {got:?}",
                    g.arc_list().collect::<Vec<_>>()
                ));
            }
        }
    }
    assert!(failures.is_empty(), "{} mismatches:\n{}", failures.len(), failures[..failures.len().min(5)].join("\n"));
}
