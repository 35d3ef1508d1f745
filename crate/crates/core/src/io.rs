//! Input formats and de Bruijn graphs.
//!
//! * Edge lists: a header line `n m`, then one `tail head [label]` line per arc.
//!   Lines starting with `#` and blank lines are skipped.
//! * A GFA subset: `S` segments become nodes, `L` links with `+`/`+`
//!   orientations become arcs.
//! * FASTA reads, turned into a node-centric de Bruijn graph of order `k`.

use std::collections::{BTreeSet, HashMap};
use std::fmt::Write as _;
use std::io::BufRead;

use crate::error::{Error, Result};
use crate::graph::{ArcId, Graph, NodeId};
use crate::walk::Walk;

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

/// Parses an edge list. Arcs keep their line order, so arc `i` is the `i`-th
/// arc line.
pub fn parse_edge_list(text: &str) -> Result<Graph> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let (header_line, header) = lines
        .next()
        .ok_or_else(|| Error::Input("empty edge list: missing `n m` header".into()))?;
    let fields: Vec<&str> = header.split_whitespace().collect();
    let [n, m] = fields[..] else {
        return Err(parse_err(header_line, "expected header `n m`"));
    };
    let n: usize = n
        .parse()
        .map_err(|_| parse_err(header_line, format!("invalid node count `{n}`")))?;
    let m: usize = m
        .parse()
        .map_err(|_| parse_err(header_line, format!("invalid arc count `{m}`")))?;

    let mut arcs = Vec::with_capacity(m);
    for (line, l) in lines {
        let mut fields = l.split_whitespace();
        let mut endpoint = |what: &str| -> Result<NodeId> {
            let field = fields
                .next()
                .ok_or_else(|| parse_err(line, format!("missing {what}")))?;
            let v: NodeId = field
                .parse()
                .map_err(|_| parse_err(line, format!("invalid {what} `{field}`")))?;
            if v >= n {
                return Err(parse_err(line, format!("{what} {v} out of range for n = {n}")));
            }
            Ok(v)
        };
        let tail = endpoint("tail")?;
        let head = endpoint("head")?;
        let label = fields.next().map(str::to_owned);
        if let Some(extra) = fields.next() {
            return Err(parse_err(line, format!("unexpected field `{extra}`")));
        }
        arcs.push((tail, head, label));
    }
    if arcs.len() != m {
        return Err(Error::Input(format!(
            "header declares {m} arcs but {} arc lines follow",
            arcs.len()
        )));
    }
    Graph::with_labels(n, arcs)
}

/// Writes `graph` in the format read by [`parse_edge_list`].
pub fn serialize_edge_list(graph: &Graph) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{} {}", graph.node_count(), graph.arc_count());
    for a in graph.arcs() {
        let _ = write!(out, "{} {}", graph.tail(a), graph.head(a));
        if let Some(label) = graph.label(a) {
            let _ = write!(out, " {label}");
        }
        out.push('\n');
    }
    out
}

/// A graph read from GFA. Node `v` is segment `segments[v]`; arc labels hold
/// the link overlap.
#[derive(Debug, Clone)]
pub struct GfaGraph {
    pub graph: Graph,
    pub segments: Vec<String>,
    pub sequences: Vec<Option<String>>,
}

/// Parses `S` and `L` records. Reverse orientations are rejected, since the
/// graph model has no reverse complements; other record types are skipped
/// with a warning.
pub fn parse_gfa_subset(text: &str) -> Result<GfaGraph> {
    let mut index: HashMap<String, NodeId> = HashMap::new();
    let mut segments = Vec::new();
    let mut sequences = Vec::new();
    let mut links = Vec::new();

    for (i, l) in text.lines().enumerate() {
        let line = i + 1;
        let l = l.trim_end_matches('\r');
        if l.is_empty() || l.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = l.split('\t').collect();
        match fields[0] {
            "S" => {
                let name = *fields
                    .get(1)
                    .ok_or_else(|| parse_err(line, "S record without a name"))?;
                if index.insert(name.to_owned(), segments.len()).is_some() {
                    return Err(parse_err(line, format!("duplicate segment `{name}`")));
                }
                segments.push(name.to_owned());
                sequences.push(fields.get(2).filter(|s| **s != "*").map(|s| s.to_string()));
            }
            "L" => {
                if fields.len() < 5 {
                    return Err(parse_err(line, "L record needs from, orientation, to, orientation"));
                }
                if fields[2] != "+" || fields[4] != "+" {
                    return Err(parse_err(
                        line,
                        format!(
                            "link {}{} -> {}{}: only '+' orientations are supported",
                            fields[1], fields[2], fields[3], fields[4]
                        ),
                    ));
                }
                let overlap = fields.get(5).map(|s| s.to_string());
                links.push((line, fields[1].to_owned(), fields[3].to_owned(), overlap));
            }
            other => log::warn!("line {line}: ignoring GFA record type `{other}`"),
        }
    }

    let mut arcs = Vec::with_capacity(links.len());
    for (line, from, to, overlap) in links {
        let endpoint = |name: &str| {
            index
                .get(name)
                .copied()
                .ok_or_else(|| parse_err(line, format!("link refers to unknown segment `{name}`")))
        };
        arcs.push((endpoint(&from)?, endpoint(&to)?, overlap));
    }
    Ok(GfaGraph {
        graph: Graph::with_labels(segments.len(), arcs)?,
        segments,
        sequences,
    })
}

/// One FASTA record: header text after `>` and the concatenated sequence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FastaRecord {
    pub name: String,
    pub sequence: String,
}

pub fn read_fasta<R: BufRead>(reader: R) -> Result<Vec<FastaRecord>> {
    let mut records: Vec<FastaRecord> = Vec::new();
    for (i, l) in reader.lines().enumerate() {
        let l = l?;
        let l = l.trim();
        if l.is_empty() || l.starts_with(';') {
            continue;
        }
        if let Some(name) = l.strip_prefix('>') {
            records.push(FastaRecord {
                name: name.trim().to_owned(),
                sequence: String::new(),
            });
        } else {
            let record = records
                .last_mut()
                .ok_or_else(|| parse_err(i + 1, "sequence data before the first '>' header"))?;
            record.sequence.push_str(l);
        }
    }
    Ok(records)
}

/// Node-centric de Bruijn graph: nodes are the distinct (k−1)-mers, arcs the
/// distinct k-mers, each from its prefix to its suffix. Nodes and arcs are
/// numbered in lexicographic order of their labels.
#[derive(Debug, Clone)]
pub struct DeBruijnGraph {
    pub k: usize,
    pub node_labels: Vec<String>,
    pub arc_labels: Vec<String>,
    pub graph: Graph,
    /// Reads dropped for being shorter than `k` (only with `skip_short`).
    pub skipped_reads: usize,
}

pub fn build_de_bruijn<S: AsRef<str>>(reads: &[S], k: usize, skip_short: bool) -> Result<DeBruijnGraph> {
    if k < 2 {
        return Err(Error::Input(format!("k must be at least 2 (got {k})")));
    }
    let mut kmers: BTreeSet<&str> = BTreeSet::new();
    let mut skipped_reads = 0;
    for (i, read) in reads.iter().enumerate() {
        let read = read.as_ref();
        if let Some(c) = read.chars().find(|c| !matches!(c, 'A' | 'C' | 'G' | 'T')) {
            return Err(Error::Input(format!("read {i}: invalid character {c:?}")));
        }
        if read.len() < k {
            if skip_short {
                skipped_reads += 1;
                continue;
            }
            return Err(Error::Input(format!(
                "read {i} has length {} < k = {k}",
                read.len()
            )));
        }
        for start in 0..=read.len() - k {
            kmers.insert(&read[start..start + k]);
        }
    }

    let nodes: BTreeSet<&str> = kmers
        .iter()
        .flat_map(|kmer| [&kmer[..k - 1], &kmer[1..]])
        .collect();
    let node_labels: Vec<String> = nodes.iter().map(|s| s.to_string()).collect();
    let id: HashMap<&str, NodeId> = nodes.iter().enumerate().map(|(i, s)| (*s, i)).collect();
    let graph = Graph::new(
        node_labels.len(),
        kmers.iter().map(|kmer| (id[&kmer[..k - 1]], id[&kmer[1..]])),
    )?;
    Ok(DeBruijnGraph {
        k,
        node_labels,
        arc_labels: kmers.into_iter().map(str::to_owned).collect(),
        graph,
        skipped_reads,
    })
}

/// The string spelled by a walk: consecutive k-mers merged on their (k−1)-overlap.
/// A closed walk spells a circular string with one character per arc.
pub fn spell(dbg: &DeBruijnGraph, walk: &Walk) -> String {
    spell_arcs(dbg, walk.arcs(), walk.is_closed())
}

pub fn spell_arcs(dbg: &DeBruijnGraph, arcs: &[ArcId], closed: bool) -> String {
    let Some((&first, rest)) = arcs.split_first() else {
        return String::new();
    };
    if closed {
        return arcs.iter().map(|&a| &dbg.arc_labels[a][..1]).collect();
    }
    let mut s = dbg.arc_labels[first].clone();
    for &a in rest {
        s.push_str(&dbg.arc_labels[a][dbg.k - 1..]);
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn edge_list_examples() {
        assert_eq!(parse_edge_list("1 3\n0 0\n0 0\n0 0").unwrap(), Graph::bouquet(3));
        assert_eq!(parse_edge_list("2 2\n0 1\n1 0").unwrap(), Graph::cycle(2));
        let g = parse_edge_list("# parallel\n2 2\n0 1\n\n0 1\n").unwrap();
        assert_eq!(g.arc_count(), 2);
        assert_eq!(g.out_arcs(0), &[0, 1]);
    }

    #[test]
    fn edge_list_errors_name_the_line() {
        let err = parse_edge_list("2 2\n0 1\n1 x\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 3, .. }), "{err}");
        let err = parse_edge_list("2 2\n0 1\n1 5\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 3, .. }), "{err}");
        assert!(matches!(parse_edge_list("2 3\n0 1\n1 0\n"), Err(Error::Input(_))));
        assert!(matches!(parse_edge_list("2\n"), Err(Error::Parse { line: 1, .. })));
    }

    #[test]
    fn edge_list_round_trip_with_labels() {
        let text = "3 4\n0 1 a\n1 2\n2 0 c\n2 2\n";
        assert_eq!(serialize_edge_list(&parse_edge_list(text).unwrap()), text);
    }

    #[test]
    fn gfa_two_cycle() {
        let g = parse_gfa_subset("H\tVN:Z:1.0\nS\ta\tACG\nS\tb\t*\nL\ta\t+\tb\t+\t2M\nL\tb\t+\ta\t+\t0M\n").unwrap();
        assert_eq!(g.graph, Graph::with_labels(2, [(0, 1, Some("2M".into())), (1, 0, Some("0M".into()))]).unwrap());
        assert_eq!(g.segments, ["a", "b"]);
        assert_eq!(g.sequences, [Some("ACG".into()), None]);
    }

    #[test]
    fn gfa_segments_only_and_errors() {
        assert_eq!(parse_gfa_subset("S\ta\t*\nS\tb\t*\n").unwrap().graph.arc_count(), 0);
        let err = parse_gfa_subset("S\ta\t*\nS\tb\t*\nL\ta\t+\tb\t-\t0M\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 3, .. }), "{err}");
        let err = parse_gfa_subset("S\ta\t*\nL\ta\t+\tz\t+\t0M\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }), "{err}");
    }

    #[test]
    fn fasta_records() {
        let text = ">r1 first\nACG\nT\n\n>r2\nGG\n";
        let records = read_fasta(text.as_bytes()).unwrap();
        assert_eq!(records.len(), 2);
        assert_eq!(records[0].name, "r1 first");
        assert_eq!(records[0].sequence, "ACGT");
        assert_eq!(records[1].sequence, "GG");
        assert!(read_fasta("ACGT\n".as_bytes()).is_err());
    }

    #[test]
    fn de_bruijn_cycle() {
        let dbg = build_de_bruijn(&["ACG", "CGT", "GTA", "TAC"], 3, false).unwrap();
        assert_eq!(dbg.node_labels, ["AC", "CG", "GT", "TA"]);
        assert_eq!(dbg.arc_labels, ["ACG", "CGT", "GTA", "TAC"]);
        assert!(crate::is_closed_path(&dbg.graph));
        assert_eq!(spell(&dbg, &Walk::closed(vec![0, 1, 2, 3])), "ACGT");
        assert_eq!(spell(&dbg, &Walk::open(vec![0, 1])), "ACGT");
        assert_eq!(spell(&dbg, &Walk::open(vec![0])), "ACG");
    }

    #[test]
    fn de_bruijn_homopolymer_and_errors() {
        let dbg = build_de_bruijn(&["AAAA"], 3, false).unwrap();
        assert_eq!(dbg.node_labels, ["AA"]);
        assert_eq!(dbg.graph, Graph::bouquet(1));
        assert!(build_de_bruijn(&["AC"], 3, false).is_err());
        assert_eq!(build_de_bruijn(&["AC", "AAA"], 3, true).unwrap().skipped_reads, 1);
        assert!(build_de_bruijn(&["ACNT"], 3, false).is_err());
        assert!(build_de_bruijn(&["ACGT"], 1, false).is_err());
    }

    #[test]
    fn de_bruijn_repeat_gives_bivalent_node() {
        // CG occurs twice, as ACGT and TCGA
        let genome = "ACGTTCGA";
        let circular = format!("{genome}{}", &genome[..2]);
        let dbg = build_de_bruijn(&[circular], 3, false).unwrap();
        let class = crate::Classification::new(&dbg.graph);
        assert!(dbg.graph.nodes().any(|v| class.is_bivalent(v)));
    }
}
