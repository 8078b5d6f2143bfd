//! File readers and writers. All readers remap sparse vertex ids onto a
//! dense range in first-occurrence order and return canonical graphs.

use super::InstanceError;
use crate::graph::{build_graph, Weight, WeightedGraph};
use std::collections::{BTreeMap, HashMap};
use std::fs;
use std::io::Write as _;
use std::path::Path;

fn parse_err(line: usize, message: impl Into<String>) -> InstanceError {
    InstanceError::Parse { line, message: message.into() }
}

/// Builds an order-preserving dense remap (raw ids sorted ascending), so
/// re-serializing a parsed graph reproduces the text byte for byte.
fn dense_remap(raw_ids: impl IntoIterator<Item = u64>) -> HashMap<u64, u32> {
    let mut ids: Vec<u64> = raw_ids.into_iter().collect();
    ids.sort_unstable();
    ids.dedup();
    ids.into_iter()
        .enumerate()
        .map(|(dense, raw)| (raw, dense as u32))
        .collect()
}

/// Parses "u v w" lines. `#` starts a comment line; blank lines are skipped.
/// Duplicate undirected pairs are merged by summing their weights (trace
/// semantics); self-loops are rejected.
pub fn parse_edge_list(text: &str) -> Result<WeightedGraph, InstanceError> {
    let mut raw: Vec<(u64, u64, Weight)> = Vec::new();
    for (idx, line) in text.lines().enumerate() {
        let lineno = idx + 1;
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut it = line.split_whitespace();
        let mut field = |name: &str| {
            it.next()
                .ok_or_else(|| parse_err(lineno, format!("missing {name}")))
        };
        let u: u64 = field("source")?
            .parse()
            .map_err(|_| parse_err(lineno, "bad source vertex"))?;
        let v: u64 = field("target")?
            .parse()
            .map_err(|_| parse_err(lineno, "bad target vertex"))?;
        let w: Weight = field("weight")?
            .parse()
            .map_err(|_| parse_err(lineno, "bad weight"))?;
        if it.next().is_some() {
            return Err(parse_err(lineno, "expected exactly three fields"));
        }
        if u == v {
            return Err(parse_err(lineno, format!("self-loop at vertex {u}")));
        }
        if w == 0 {
            return Err(parse_err(lineno, "zero weight"));
        }
        raw.push((u, v, w));
    }
    let remap = dense_remap(raw.iter().flat_map(|&(u, v, _)| [u, v]));
    let mut merged: BTreeMap<(u32, u32), Weight> = BTreeMap::new();
    for (u, v, w) in raw {
        let (a, b) = (remap[&u], remap[&v]);
        let key = if a < b { (a, b) } else { (b, a) };
        *merged.entry(key).or_insert(0) += w;
    }
    let n = remap.len();
    Ok(build_graph(n, merged.into_iter().map(|((u, v), w)| (u, v, w)))?)
}

pub fn read_edge_list(path: impl AsRef<Path>) -> Result<WeightedGraph, InstanceError> {
    parse_edge_list(&fs::read_to_string(path)?)
}

/// Canonical edge-list serialization: one "u v w" line per edge, ascending
/// `(u, v)`. `parse_edge_list` of the output reproduces the graph exactly.
pub fn write_edge_list_string(g: &WeightedGraph) -> String {
    let mut out = String::new();
    for e in g.edges() {
        out.push_str(&format!("{} {} {}\n", e.u, e.v, e.w));
    }
    out
}

pub fn write_edge_list(g: &WeightedGraph, path: impl AsRef<Path>) -> Result<(), InstanceError> {
    let mut f = fs::File::create(path)?;
    f.write_all(write_edge_list_string(g).as_bytes())?;
    Ok(())
}

/// Matrix Market coordinate reader. Supported: `real`, `integer`, `pattern`
/// fields with `general`, `symmetric` or `skew-symmetric` symmetry. Weights
/// are `round(|value| * scale)`; zero entries and the diagonal are dropped;
/// asymmetric pairs merge by maximum.
pub fn parse_matrix_market(text: &str, scale: f64) -> Result<WeightedGraph, InstanceError> {
    let mut lines = text.lines().enumerate();
    let (_, header) = lines
        .next()
        .ok_or_else(|| parse_err(1, "empty file"))?;
    let header_fields: Vec<&str> = header.split_whitespace().collect();
    if header_fields.len() < 5 || header_fields[0] != "%%MatrixMarket" {
        return Err(parse_err(1, "missing %%MatrixMarket header"));
    }
    if header_fields[1] != "matrix" || header_fields[2] != "coordinate" {
        return Err(InstanceError::UnsupportedFormat(format!(
            "{} {} (only matrix coordinate)",
            header_fields[1], header_fields[2]
        )));
    }
    let field = header_fields[3];
    let pattern = match field {
        "real" | "integer" => false,
        "pattern" => true,
        other => {
            return Err(InstanceError::UnsupportedFormat(format!(
                "field {other} (only real, integer, pattern)"
            )))
        }
    };
    match header_fields[4] {
        "general" | "symmetric" | "skew-symmetric" => {}
        other => {
            return Err(InstanceError::UnsupportedFormat(format!(
                "symmetry {other} (only general, symmetric, skew-symmetric)"
            )))
        }
    }

    let mut dims = None;
    let mut merged: BTreeMap<(u32, u32), f64> = BTreeMap::new();
    for (idx, line) in lines {
        let lineno = idx + 1;
        let line = line.trim();
        if line.is_empty() || line.starts_with('%') {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        if dims.is_none() {
            if fields.len() != 3 {
                return Err(parse_err(lineno, "expected 'rows cols nnz'"));
            }
            let rows: usize = fields[0].parse().map_err(|_| parse_err(lineno, "bad rows"))?;
            let cols: usize = fields[1].parse().map_err(|_| parse_err(lineno, "bad cols"))?;
            dims = Some(rows.max(cols));
            continue;
        }
        let expected = if pattern { 2 } else { 3 };
        if fields.len() != expected {
            return Err(parse_err(lineno, format!("expected {expected} fields")));
        }
        let i: u64 = fields[0].parse().map_err(|_| parse_err(lineno, "bad row index"))?;
        let j: u64 = fields[1].parse().map_err(|_| parse_err(lineno, "bad col index"))?;
        if i == 0 || j == 0 {
            return Err(parse_err(lineno, "indices are 1-based"));
        }
        let value = if pattern {
            1.0
        } else {
            fields[2]
                .parse::<f64>()
                .map_err(|_| parse_err(lineno, "bad value"))?
        };
        if i == j {
            continue; // diagonal dropped
        }
        let (u, v) = ((i - 1) as u32, (j - 1) as u32);
        let key = if u < v { (u, v) } else { (v, u) };
        let mag = value.abs();
        if mag == 0.0 {
            continue;
        }
        let slot = merged.entry(key).or_insert(0.0);
        *slot = slot.max(mag);
    }
    let n = dims.ok_or_else(|| parse_err(1, "missing dimensions line"))?;
    let triples = merged.into_iter().filter_map(|((u, v), mag)| {
        let w = (mag * scale).round() as u64;
        (w > 0).then_some((u, v, w))
    });
    Ok(build_graph(n, triples)?)
}

pub fn read_matrix_market(path: impl AsRef<Path>) -> Result<WeightedGraph, InstanceError> {
    read_matrix_market_scaled(path, 1.0)
}

pub fn read_matrix_market_scaled(
    path: impl AsRef<Path>,
    scale: f64,
) -> Result<WeightedGraph, InstanceError> {
    parse_matrix_market(&fs::read_to_string(path)?, scale)
}

/// Aggregates directed flow records into symmetric demands: volumes of both
/// directions add up, self-flows and zero-volume pairs are dropped.
pub fn aggregate_trace(
    records: impl IntoIterator<Item = (u64, u64, u64)>,
) -> Result<WeightedGraph, InstanceError> {
    let records: Vec<(u64, u64, u64)> = records
        .into_iter()
        .filter(|&(src, dst, _)| src != dst)
        .collect();
    let remap = dense_remap(records.iter().flat_map(|&(s, d, _)| [s, d]));
    let mut merged: BTreeMap<(u32, u32), Weight> = BTreeMap::new();
    for (src, dst, volume) in records {
        let (a, b) = (remap[&src], remap[&dst]);
        let key = if a < b { (a, b) } else { (b, a) };
        *merged.entry(key).or_insert(0) += volume;
    }
    let n = remap.len();
    let triples = merged.into_iter().filter_map(|((u, v), w)| (w > 0).then_some((u, v, w)));
    Ok(build_graph(n, triples)?)
}

/// Reads "src dst volume" lines (same comment rules as the edge list) and
/// aggregates them as a trace.
pub fn read_trace(path: impl AsRef<Path>) -> Result<WeightedGraph, InstanceError> {
    let text = fs::read_to_string(path)?;
    let mut records = Vec::new();
    for (idx, line) in text.lines().enumerate() {
        let lineno = idx + 1;
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields.len() != 3 {
            return Err(parse_err(lineno, "expected 'src dst volume'"));
        }
        let src: u64 = fields[0].parse().map_err(|_| parse_err(lineno, "bad src"))?;
        let dst: u64 = fields[1].parse().map_err(|_| parse_err(lineno, "bad dst"))?;
        let volume: u64 = fields[2].parse().map_err(|_| parse_err(lineno, "bad volume"))?;
        records.push((src, dst, volume));
    }
    aggregate_trace(records)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_simple_triangle() {
        let g = parse_edge_list("0 1 3\n1 2 2\n0 2 1\n").unwrap();
        assert_eq!(g.n(), 3);
        assert_eq!(g.m(), 3);
        assert_eq!(g.max_demand(), 3);
    }

    #[test]
    fn merges_opposite_directions() {
        let g = parse_edge_list("5 9 4\n9 5 6\n").unwrap();
        assert_eq!(g.n(), 2);
        assert_eq!(g.m(), 1);
        assert_eq!(g.edges()[0].w, 10);
    }

    #[test]
    fn rejects_self_loop_line() {
        let err = parse_edge_list("0 0 1\n").unwrap_err();
        assert!(matches!(err, InstanceError::Parse { line: 1, .. }));
    }

    #[test]
    fn skips_comments_and_blanks() {
        let g = parse_edge_list("# demo\n\n0 1 5\n  # indented comment\n").unwrap();
        assert_eq!(g.m(), 1);
    }

    #[test]
    fn edge_list_round_trips() {
        let g = parse_edge_list("3 7 2\n7 12 9\n3 12 4\n").unwrap();
        let text = write_edge_list_string(&g);
        let h = parse_edge_list(&text).unwrap();
        assert_eq!(g.edges(), h.edges());
        assert_eq!(text, write_edge_list_string(&h));
    }

    #[test]
    fn remap_preserves_id_order() {
        // vertex 2 shows up as a target before vertex 1 appears at all;
        // sorted remapping keeps the dense ids aligned with the raw order
        let g = parse_edge_list("0 2 7\n1 3 5\n").unwrap();
        let pairs: Vec<_> = g.edges().iter().map(|e| e.endpoints()).collect();
        assert_eq!(pairs, vec![(0, 2), (1, 3)]);
        let text = write_edge_list_string(&g);
        assert_eq!(text, "0 2 7\n1 3 5\n");
    }

    #[test]
    fn matrix_market_symmetric() {
        let text = "%%MatrixMarket matrix coordinate real symmetric\n3 3 2\n1 2 3.0\n2 3 2.0\n";
        let g = parse_matrix_market(text, 1.0).unwrap();
        assert_eq!(g.n(), 3);
        assert_eq!(g.m(), 2);
        assert_eq!(g.edge(0).w, 3);
    }

    #[test]
    fn matrix_market_general_merges_by_max() {
        let text = "%%MatrixMarket matrix coordinate real general\n2 2 2\n1 2 2.0\n2 1 4.0\n";
        let g = parse_matrix_market(text, 1.0).unwrap();
        assert_eq!(g.m(), 1);
        assert_eq!(g.edge(0).w, 4);
    }

    #[test]
    fn matrix_market_pattern_gets_unit_weights() {
        let text = "%%MatrixMarket matrix coordinate pattern symmetric\n3 3 2\n2 1\n3 1\n";
        let g = parse_matrix_market(text, 1.0).unwrap();
        assert_eq!(g.m(), 2);
        assert!(g.edges().iter().all(|e| e.w == 1));
    }

    #[test]
    fn matrix_market_drops_diagonal_and_zero() {
        let text =
            "%%MatrixMarket matrix coordinate real symmetric\n3 3 3\n1 1 5.0\n1 2 0.0\n2 3 1.0\n";
        let g = parse_matrix_market(text, 1.0).unwrap();
        assert_eq!(g.m(), 1);
    }

    #[test]
    fn matrix_market_rejects_unsupported() {
        let complex = "%%MatrixMarket matrix coordinate complex general\n1 1 0\n";
        assert!(matches!(
            parse_matrix_market(complex, 1.0),
            Err(InstanceError::UnsupportedFormat(_))
        ));
        let array = "%%MatrixMarket matrix array real general\n2 2\n1.0\n";
        assert!(matches!(
            parse_matrix_market(array, 1.0),
            Err(InstanceError::UnsupportedFormat(_))
        ));
    }

    #[test]
    fn trace_sums_both_directions() {
        let g = aggregate_trace([(10, 20, 5), (20, 10, 7)]).unwrap();
        assert_eq!(g.m(), 1);
        assert_eq!(g.edges()[0].w, 12);
    }

    #[test]
    fn trace_drops_self_flows() {
        let g = aggregate_trace([(4, 4, 9)]).unwrap();
        assert_eq!(g.n(), 0);
        assert_eq!(g.m(), 0);
    }

    #[test]
    fn trace_empty_stream() {
        let g = aggregate_trace([]).unwrap();
        assert_eq!((g.n(), g.m()), (0, 0));
    }
}
