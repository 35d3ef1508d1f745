use std::fmt::Display;
use std::io::Write;

use omnitigs::enumerate::{compare_with_brute_force, verify_safety_by_sampling, Component};
use omnitigs::io::{serialize_edge_list, spell_arcs};
use omnitigs::verify::{backend_disagreements, random_corpus, random_scc_graph, MAX_BRUTE_ARCS, MAX_BRUTE_NODES};
use omnitigs::{all_maximal_omnitig_handles, is_closed_path, ArcId, Enumeration, EnumerationOptions, Graph, HandleKind, LengthStats, NodeId};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::{components, Failure, Loaded, Outcome, RunArgs};

fn join<T: Display>(items: impl IntoIterator<Item = T>, sep: &str) -> String {
    items.into_iter().map(|x| x.to_string()).collect::<Vec<_>>().join(sep)
}

/// Leading `scc` column in per-component mode.
fn prefix(run: &RunArgs, component: usize) -> String {
    if run.per_scc {
        format!("{component}\t")
    } else {
        String::new()
    }
}

fn handles(comp: &Component, run: &RunArgs) -> Result<Enumeration, Failure> {
    Ok(all_maximal_omnitig_handles(&comp.graph, run.options())?)
}

/// Input arc IDs and node IDs of a walk given in component coordinates.
fn lift(comp: &Component, arcs: &[ArcId], nodes: &[NodeId]) -> (Vec<ArcId>, Vec<NodeId>) {
    (
        arcs.iter().map(|&a| comp.arcs[a]).collect(),
        nodes.iter().map(|&v| comp.nodes[v]).collect(),
    )
}

pub fn enumerate(loaded: &Loaded, run: &RunArgs, handles_only: bool, out: &mut dyn Write) -> Outcome {
    let mut id = 0usize;
    for (c, comp) in components(&loaded.graph, run.per_scc).iter().enumerate() {
        let pre = prefix(run, c);
        let row = |out: &mut dyn Write, id: usize, arcs: &[ArcId], nodes: &[NodeId], closed: bool| {
            let (arcs, nodes) = lift(comp, arcs, nodes);
            write!(out, "{pre}{id}\t{}\t{}\t{}", arcs.len(), join(&arcs, ","), join(&nodes, ","))?;
            if let Some(dbg) = &loaded.dbg {
                write!(out, "\t{}", spell_arcs(dbg, &arcs, closed))?;
            }
            writeln!(out)
        };
        match handles(comp, run)? {
            Enumeration::ClosedPath(w) => {
                writeln!(out, "# {pre}closed path: every walk is an omnitig")?;
                row(out, id, w.arcs(), &w.nodes(&comp.graph), true)?;
                id += 1;
            }
            Enumeration::Omnitigs(rep) if handles_only => {
                for (m, arcs) in rep.expanded.iter().enumerate() {
                    let (arcs, _) = lift(comp, arcs, &[]);
                    writeln!(out, "{pre}M\t{m}\t{}", join(arcs, ","))?;
                }
                for h in &rep.handles {
                    let core = h.core_range();
                    match h.kind {
                        HandleKind::Interval { macrotig, .. } => {
                            writeln!(out, "{pre}I\t{id}\t{macrotig}\t{}\t{}\t{}", core.start, core.end, h.len)?
                        }
                        HandleKind::LeftoverArc(_) => {
                            let (arcs, _) = lift(comp, rep.core(h), &[]);
                            writeln!(out, "{pre}L\t{id}\t{}\t{}", join(arcs, ","), h.len)?
                        }
                    }
                    id += 1;
                }
            }
            Enumeration::Omnitigs(rep) => {
                for h in &rep.handles {
                    let w = rep.materialize(&comp.graph, h);
                    row(out, id, w.arcs(), &w.nodes(&comp.graph), false)?;
                    id += 1;
                }
            }
        }
    }
    Ok(())
}

fn write_stats(out: &mut dyn Write, s: &LengthStats) -> std::io::Result<()> {
    writeln!(out, "count={}", s.count)?;
    writeln!(out, "min={}", s.min)?;
    writeln!(out, "max={}", s.max)?;
    writeln!(out, "mean={}", s.mean)?;
    writeln!(out, "total={}", s.total)
}

pub fn stats(loaded: &Loaded, run: &RunArgs, out: &mut dyn Write) -> Outcome {
    for (c, comp) in components(&loaded.graph, run.per_scc).iter().enumerate() {
        if run.per_scc {
            writeln!(out, "scc={c}")?;
        }
        let s = match handles(comp, run)? {
            Enumeration::ClosedPath(w) => {
                writeln!(out, "closed_path=1")?;
                LengthStats::from_lengths([w.len()])
            }
            Enumeration::Omnitigs(rep) => rep.length_stats(),
        };
        write_stats(out, &s)?;
    }
    Ok(())
}

/// One line per macrotig of the compressed graph. Each token lists the input
/// arcs a compressed arc stands for (`.` for none), followed by `@` and the
/// position flags `j` (join arc), `s` (split arc), `b` (merge arc) if any.
pub fn macrotigs(loaded: &Loaded, run: &RunArgs, out: &mut dyn Write) -> Outcome {
    for (c, comp) in components(&loaded.graph, run.per_scc).iter().enumerate() {
        let pre = prefix(run, c);
        let rep = match handles(comp, run)? {
            Enumeration::ClosedPath(_) => {
                writeln!(out, "# {pre}closed path: no macrotigs")?;
                continue;
            }
            Enumeration::Omnitigs(rep) => rep,
        };
        for m in &rep.tigs.macrotigs {
            let tokens = m.arcs.iter().enumerate().map(|(p, &a)| {
                let (arcs, _) = lift(comp, rep.transformed.expansion(a), &[]);
                let mut token = if arcs.is_empty() { ".".to_owned() } else { join(arcs, ",") };
                let flags: String = [
                    (m.join_positions.binary_search(&p).is_ok(), 'j'),
                    (m.split_positions.binary_search(&p).is_ok(), 's'),
                    (m.internal_bivalent_positions.contains(&p), 'b'),
                ]
                .iter()
                .filter(|(on, _)| *on)
                .map(|(_, f)| *f)
                .collect();
                if !flags.is_empty() {
                    token.push('@');
                    token.push_str(&flags);
                }
                token
            });
            writeln!(out, "{pre}{}", join(tokens, "\t"))?;
        }
    }
    Ok(())
}

/// Outcome of one verification check over many graphs.
#[derive(Default)]
struct Tally {
    checked: usize,
    failures: Vec<(String, Graph)>,
}

impl Tally {
    fn fail(&mut self, what: String, graph: &Graph) {
        self.failures.push((what, graph.clone()));
    }

    fn report(&self, name: &str, out: &mut dyn Write) -> std::io::Result<()> {
        let verdict = if self.failures.is_empty() { "PASS" } else { "FAIL" };
        writeln!(out, "{name}\tchecked={}\tfailures={}\t{verdict}", self.checked, self.failures.len())?;
        for (what, graph) in self.failures.iter().take(3) {
            writeln!(out, "# {name}: {what}")?;
            for line in serialize_edge_list(graph).lines() {
                writeln!(out, "#   {line}")?;
            }
        }
        Ok(())
    }
}

fn check_graph(
    label: &str,
    graph: &Graph,
    backend_queries: usize,
    safety_samples: usize,
    run: &RunArgs,
    tallies: &mut [Tally; 4],
) -> Result<(), Failure> {
    let backend = run.options().backend;
    if graph.node_count() <= MAX_BRUTE_NODES && graph.arc_count() <= MAX_BRUTE_ARCS && !is_closed_path(graph) {
        for constant_degree in [false, true] {
            let options = EnumerationOptions {
                backend,
                constant_degree,
            };
            tallies[0].checked += 1;
            if let Some(m) = compare_with_brute_force(graph, options)? {
                tallies[0].fail(
                    format!(
                        "{label} fan={constant_degree}: missing {:?} unexpected {:?} repeated {:?}",
                        m.missing, m.unexpected, m.repeated
                    ),
                    graph,
                );
            }
        }
    }
    if backend_queries > 0 {
        tallies[1].checked += backend_queries;
        for d in backend_disagreements(graph, backend_queries, 0)? {
            tallies[1].fail(format!("{label} w={} f={} answers {:?}", d.w, d.f, d.answers), graph);
        }
    }
    let Enumeration::Omnitigs(rep) = all_maximal_omnitig_handles(graph, run.options())? else {
        return Ok(());
    };
    let walks = rep.materialize_all(graph);
    if safety_samples > 0 {
        let report = verify_safety_by_sampling(graph, &walks, safety_samples, 0)?;
        tallies[2].checked += report.checks;
        for v in report.violations.iter().take(1) {
            tallies[2].fail(format!("{label} omnitig {:?} not in sample {}", v.omnitig, v.sample_seed), graph);
        }
    }
    tallies[3].checked += 1;
    let materialized = LengthStats::from_lengths(walks.iter().map(|w| w.len()));
    if rep.length_stats() != materialized {
        tallies[3].fail(format!("{label} handles {:?} vs walks {materialized:?}", rep.length_stats()), graph);
    }
    Ok(())
}

pub fn verify(loaded: Option<&Loaded>, run: &RunArgs, seeds: usize, seed: u64, out: &mut dyn Write) -> Outcome {
    let mut tallies: [Tally; 4] = Default::default();
    match loaded {
        Some(loaded) => check_graph("input", &loaded.graph, 10_000, 20, run, &mut tallies)?,
        None => {
            for (i, (graph_seed, g)) in random_corpus(seeds, seed).into_iter().enumerate() {
                let samples = if i < 100 { 20 } else { 0 };
                check_graph(&format!("seed {graph_seed}"), &g, 0, samples, run, &mut tallies)?;
            }
            // larger graphs for the oracle backends alone
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            for _ in 0..seeds {
                let n = rng.gen_range(1..=50);
                let m = rng.gen_range(n..=3 * n);
                let graph_seed: u64 = rng.gen();
                let g = random_scc_graph(n, m, graph_seed)?;
                tallies[1].checked += 200;
                for d in backend_disagreements(&g, 200, graph_seed)? {
                    tallies[1].fail(format!("seed {graph_seed} w={} f={} answers {:?}", d.w, d.f, d.answers), &g);
                }
            }
        }
    }
    let names = ["oracle_equivalence", "backend_equivalence", "safety_sampling", "stats_consistency"];
    for (name, tally) in names.iter().zip(&tallies) {
        tally.report(name, out)?;
    }
    let failed: Vec<&str> = names
        .iter()
        .zip(&tallies)
        .filter(|(_, t)| !t.failures.is_empty())
        .map(|(n, _)| *n)
        .collect();
    if failed.is_empty() {
        Ok(())
    } else {
        Err(Failure::Verification(failed.join(", ")))
    }
}
