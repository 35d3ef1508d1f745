use std::collections::BTreeSet;

use omnitigs::io::{build_de_bruijn, parse_edge_list, serialize_edge_list, spell_arcs};
use omnitigs::verify::{
    brute_force_maximal_omnitigs, is_maximal_omnitig, is_omnitig, random_scc_graph, sample_closed_arc_covering_walk,
};
use omnitigs::{
    all_maximal_omnitig_handles, is_closed_path, omnitig_length_stats, Backend, Enumeration, EnumerationOptions,
    Graph, LengthStats, Walk,
};
use proptest::prelude::*;

/// Small strongly connected graphs, `1 <= n <= 8`, `n <= m <= 16`.
fn small_scc() -> impl Strategy<Value = Graph> {
    (1usize..=8, 0usize..=8, any::<u64>()).prop_map(|(n, extra, seed)| random_scc_graph(n, n + extra, seed).unwrap())
}

fn arbitrary_graph() -> impl Strategy<Value = Graph> {
    (1usize..10).prop_flat_map(|n| {
        prop::collection::vec((0..n, 0..n, prop::option::of("[a-z]{1,4}")), 0..20)
            .prop_map(move |arcs| Graph::with_labels(n, arcs).unwrap())
    })
}

fn omnitigs_of(g: &Graph, options: EnumerationOptions) -> Option<Vec<Walk>> {
    match all_maximal_omnitig_handles(g, options).unwrap() {
        Enumeration::Omnitigs(rep) => Some(rep.materialize_all(g)),
        Enumeration::ClosedPath(_) => None,
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn edge_list_round_trip(g in arbitrary_graph()) {
        let text = serialize_edge_list(&g);
        let parsed = parse_edge_list(&text).unwrap();
        prop_assert_eq!(&parsed, &g);
        prop_assert_eq!(serialize_edge_list(&parsed), text);
    }

    #[test]
    fn random_graphs_are_strongly_connected(n in 1usize..30, extra in 0usize..30, seed in any::<u64>()) {
        let g = random_scc_graph(n, n + extra, seed).unwrap();
        prop_assert_eq!(g.arc_count(), n + extra);
        prop_assert!(omnitigs::scc::is_strongly_connected(&g));
        prop_assert_eq!(g, random_scc_graph(n, n + extra, seed).unwrap());
    }

    #[test]
    fn subwalks_of_omnitigs_are_omnitigs(g in small_scc()) {
        prop_assume!(!is_closed_path(&g));
        for w in omnitigs_of(&g, EnumerationOptions::default()).unwrap() {
            let arcs = w.arcs();
            for i in 0..arcs.len() {
                for j in i + 1..=arcs.len() {
                    prop_assert!(is_omnitig(&g, &arcs[i..j]), "{:?} of {:?}", &arcs[i..j], arcs);
                }
            }
        }
    }

    #[test]
    fn outputs_are_maximal_and_distinct(g in small_scc(), fan in any::<bool>(), backend in prop::sample::select(Backend::ALL.to_vec())) {
        prop_assume!(!is_closed_path(&g));
        let walks = omnitigs_of(&g, EnumerationOptions { backend, constant_degree: fan }).unwrap();
        let set: BTreeSet<Vec<usize>> = walks.iter().map(|w| w.arcs().to_vec()).collect();
        prop_assert_eq!(set.len(), walks.len());
        for w in &walks {
            prop_assert!(is_maximal_omnitig(&g, w.arcs()), "{:?}", w);
        }
    }

    #[test]
    fn reversal_symmetry(g in small_scc()) {
        prop_assume!(!is_closed_path(&g));
        let forward = brute_force_maximal_omnitigs(&g).unwrap();
        let reversed: BTreeSet<Vec<usize>> = brute_force_maximal_omnitigs(&g.reversed())
            .unwrap()
            .into_iter()
            .map(|mut w| { w.reverse(); w })
            .collect();
        prop_assert_eq!(forward, reversed);
    }

    #[test]
    fn every_arc_is_covered(g in small_scc()) {
        prop_assume!(!is_closed_path(&g));
        let walks = omnitigs_of(&g, EnumerationOptions::default()).unwrap();
        for a in g.arcs() {
            prop_assert!(walks.iter().any(|w| w.arcs().contains(&a)), "arc {a}");
        }
    }

    #[test]
    fn stats_need_no_materialization(g in small_scc()) {
        let stats = omnitig_length_stats(&g, EnumerationOptions::default()).unwrap();
        let expected = match omnitigs_of(&g, EnumerationOptions::default()) {
            Some(walks) => LengthStats::from_lengths(walks.iter().map(|w| w.len())),
            None => LengthStats::from_lengths([g.arc_count()]),
        };
        prop_assert_eq!(stats, expected);
    }

    #[test]
    fn covering_walks_cover_and_close(g in small_scc(), seed in any::<u64>()) {
        let w = sample_closed_arc_covering_walk(&g, seed).unwrap();
        prop_assert!(w.is_closed());
        w.validate(&g).unwrap();
        for a in g.arcs() {
            prop_assert!(w.arcs().contains(&a));
        }
    }

    #[test]
    fn de_bruijn_ignores_read_order_and_duplicates(reads in prop::collection::vec("[ACGT]{4,12}", 1..6), k in 2usize..5) {
        let dbg = build_de_bruijn(&reads, k, false).unwrap();
        let mut shuffled: Vec<String> = reads.iter().rev().cloned().collect();
        shuffled.extend(reads.iter().cloned());
        let again = build_de_bruijn(&shuffled, k, false).unwrap();
        prop_assert_eq!(&dbg.graph, &again.graph);
        prop_assert_eq!(&dbg.arc_labels, &again.arc_labels);
        prop_assert!(dbg.graph.arcs().all(|a| dbg.arc_labels[a].len() == k));
    }

    #[test]
    fn spelled_omnitigs_cover_every_kmer(genome in "[ACGT]{6,30}", k in 3usize..6) {
        prop_assume!(genome.len() > k);
        // reads of a circular genome, as one read wrapped around
        let circular = format!("{genome}{}", &genome[..k - 1]);
        let dbg = build_de_bruijn(&[circular], k, false).unwrap();
        prop_assume!(omnitigs::scc::is_strongly_connected(&dbg.graph));
        let spelled: Vec<String> = match all_maximal_omnitig_handles(&dbg.graph, EnumerationOptions::default()).unwrap() {
            Enumeration::Omnitigs(rep) => rep.materialize_all(&dbg.graph).iter().map(|w| spell_arcs(&dbg, w.arcs(), false)).collect(),
            Enumeration::ClosedPath(w) => {
                let s = spell_arcs(&dbg, w.arcs(), true);
                prop_assert_eq!(s.len(), w.len());
                vec![format!("{s}{}", &s[..k - 1])]
            }
        };
        for s in &spelled {
            prop_assert!(s.len() >= k);
        }
        for kmer in &dbg.arc_labels {
            prop_assert!(spelled.iter().any(|s| s.contains(kmer.as_str())), "{kmer}");
        }
    }

    #[test]
    fn spelled_length(genome in "[ACGT]{8,20}", len in 1usize..6) {
        let dbg = build_de_bruijn(&[&genome], 3, false).unwrap();
        // any walk: follow first out-arcs from arc 0
        let mut arcs = vec![0];
        while arcs.len() < len {
            let v = dbg.graph.head(*arcs.last().unwrap());
            match dbg.graph.out_arcs(v).first() {
                Some(&a) => arcs.push(a),
                None => break,
            }
        }
        prop_assert_eq!(spell_arcs(&dbg, &arcs, false).len(), 3 + arcs.len() - 1);
    }
}
