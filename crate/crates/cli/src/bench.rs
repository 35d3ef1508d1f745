use std::io::Write;
use std::time::{Duration, Instant};

use omnitigs::verify::random_scc_graph;
use omnitigs::{all_maximal_omnitig_handles, Backend, Enumeration, EnumerationOptions};

use crate::{Failure, Outcome};

pub struct Row {
    pub n: usize,
    pub m: usize,
    pub handles: usize,
    pub output_len: usize,
    pub steps: omnitigs::enumerate::PhaseSteps,
    pub handles_time: Duration,
    pub enumerate_time: Duration,
}

fn measure(n: usize, seed: u64, repeat: usize, backend: Backend) -> Result<Row, Failure> {
    let graph = random_scc_graph(n, 2 * n, seed)?;
    let options = EnumerationOptions {
        backend,
        constant_degree: true,
    };
    let mut best: Option<Row> = None;
    for _ in 0..repeat {
        let start = Instant::now();
        let rep = match all_maximal_omnitig_handles(&graph, options)? {
            Enumeration::Omnitigs(rep) => rep,
            Enumeration::ClosedPath(_) => unreachable!("random graph with m = 2n is not a cycle"),
        };
        let handles_time = start.elapsed();
        let output_len: usize = rep.materialize_all(&graph).iter().map(|w| w.len()).sum();
        let enumerate_time = start.elapsed();
        if best.as_ref().is_none_or(|b| enumerate_time < b.enumerate_time) {
            best = Some(Row {
                n,
                m: graph.arc_count(),
                handles: rep.handles.len(),
                output_len,
                steps: rep.steps,
                handles_time,
                enumerate_time,
            });
        }
    }
    Ok(best.expect("repeat >= 1"))
}

/// Growth relative to linear between consecutive sizes: step counts against
/// `m`, full enumeration time against `m` plus output length.
pub fn growth(a: &Row, b: &Row) -> (f64, f64) {
    let steps = (b.steps.total() as f64 / a.steps.total() as f64) / (b.m as f64 / a.m as f64);
    let work = |r: &Row| (r.m + r.output_len) as f64;
    let time = (b.enumerate_time.as_secs_f64() / a.enumerate_time.as_secs_f64()) / (work(b) / work(a));
    (steps, time)
}

pub fn run(sizes: &[usize], seed: u64, repeat: usize, backend: Backend, out: &mut dyn Write) -> Outcome {
    writeln!(
        out,
        "n\tm\thandles\toutput_len\ttransform\toracle_pre\toracle_queries\toracle_traversal\ttigs\tscan\texpansion\thandle_steps\ttotal_steps\thandles_ms\tenumerate_ms"
    )?;
    let mut rows: Vec<Row> = Vec::new();
    for (i, &n) in sizes.iter().enumerate() {
        let r = measure(n, seed.wrapping_add(i as u64), repeat, backend)?;
        let s = &r.steps;
        writeln!(
            out,
            "{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{:.3}\t{:.3}",
            r.n,
            r.m,
            r.handles,
            r.output_len,
            s.transform,
            s.oracle_preprocessing,
            s.oracle_queries,
            s.oracle_traversals,
            s.tigs,
            s.scan,
            s.expansion,
            s.handles,
            s.total(),
            r.handles_time.as_secs_f64() * 1e3,
            r.enumerate_time.as_secs_f64() * 1e3,
        )?;
        rows.push(r);
    }
    for w in rows.windows(2) {
        let (steps, time) = growth(&w[0], &w[1]);
        writeln!(out, "# growth {} -> {}: steps {steps:.3} time {time:.3}", w[0].n, w[1].n)?;
    }
    Ok(())
}
