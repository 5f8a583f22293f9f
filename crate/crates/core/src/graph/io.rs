//! Readers and writers for edge lists, graph6 and MatrixMarket.

use std::collections::HashMap;
use std::io::{BufRead, Write};

use super::{Graph, NodeLabelMap};
use crate::error::{Error, Location, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    EdgeList,
    Graph6,
    MatrixMarket,
}

impl std::str::FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "edge-list" | "edgelist" | "edges" => Ok(Format::EdgeList),
            "graph6" | "g6" => Ok(Format::Graph6),
            "matrix-market" | "mtx" => Ok(Format::MatrixMarket),
            other => Err(Error::invalid(format!("unknown graph format {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct EdgeListOptions {
    /// Integer ids start at 1 in the file.
    pub one_indexed: bool,
    /// Ids are arbitrary tokens, numbered in order of first appearance.
    pub named: bool,
}

/// A graph plus the external node names it was read with, if any.
#[derive(Debug, Clone, PartialEq)]
pub struct LoadedGraph {
    pub graph: Graph,
    pub labels: Option<NodeLabelMap>,
}

pub fn load_graph<R: BufRead>(
    mut source: R,
    format: Format,
    options: EdgeListOptions,
) -> Result<LoadedGraph> {
    match format {
        Format::EdgeList => read_edge_list(source, options),
        Format::MatrixMarket => Ok(LoadedGraph {
            graph: read_matrix_market(source)?,
            labels: None,
        }),
        Format::Graph6 => {
            let mut text = String::new();
            source.read_to_string(&mut text).map_err(io_err)?;
            let body = text.strip_prefix(graph6::HEADER).unwrap_or(&text);
            let mut lines = body.lines().filter(|l| !l.trim().is_empty());
            let first = lines
                .next()
                .ok_or_else(|| Error::parse_line(1, "empty graph6 input"))?;
            if lines.next().is_some() {
                return Err(Error::invalid(
                    "graph6 input holds more than one graph; use the catalog reader",
                ));
            }
            Ok(LoadedGraph {
                graph: graph6::decode(first.trim())?,
                labels: None,
            })
        }
    }
}

pub fn save_graph<W: Write>(g: &Graph, sink: W, format: Format) -> Result<()> {
    match format {
        Format::EdgeList => write_edge_list(g, sink, false),
        Format::MatrixMarket => write_matrix_market(g, sink),
        Format::Graph6 => {
            let mut sink = sink;
            writeln!(sink, "{}", graph6::encode(g)).map_err(io_err)
        }
    }
}

fn io_err(e: std::io::Error) -> Error {
    Error::Parse {
        location: Location::Byte(0),
        message: format!("I/O error: {e}"),
    }
}

/// Parses a `# n=<count>` comment, which fixes the node count so isolated
/// trailing nodes survive a round trip.
fn node_count_hint(comment: &str) -> Option<usize> {
    comment
        .trim_start_matches('#')
        .trim()
        .strip_prefix("n=")
        .and_then(|s| s.trim().parse().ok())
}

/// Reads a whitespace-separated edge list. `#` starts a comment line and
/// blank lines are skipped.
pub fn read_edge_list<R: BufRead>(source: R, options: EdgeListOptions) -> Result<LoadedGraph> {
    let mut edges = Vec::new();
    let mut hint = 0usize;
    let mut names: Vec<String> = Vec::new();
    let mut ids: HashMap<String, usize> = HashMap::new();
    let mut max_index: Option<usize> = None;

    for (i, line) in source.lines().enumerate() {
        let lineno = i + 1;
        let line = line.map_err(|e| Error::parse_line(lineno, e.to_string()))?;
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        if line.starts_with('#') {
            if let Some(h) = node_count_hint(line) {
                hint = hint.max(h);
            }
            continue;
        }
        let tokens: Vec<&str> = line.split_whitespace().collect();
        if tokens.len() != 2 {
            return Err(Error::parse_line(
                lineno,
                format!("expected two node ids, found {} fields", tokens.len()),
            ));
        }
        let mut ends = [0usize; 2];
        for (slot, tok) in ends.iter_mut().zip(&tokens) {
            *slot = if options.named {
                let next = names.len();
                *ids.entry((*tok).to_owned()).or_insert_with(|| {
                    names.push((*tok).to_owned());
                    next
                })
            } else {
                let raw: usize = tok
                    .parse()
                    .map_err(|_| Error::parse_line(lineno, format!("invalid node id {tok:?}")))?;
                if options.one_indexed {
                    raw.checked_sub(1).ok_or_else(|| {
                        Error::parse_line(lineno, "node id 0 in a one-indexed edge list")
                    })?
                } else {
                    raw
                }
            };
        }
        let [u, v] = ends;
        if u == v {
            return Err(Error::SelfLoop {
                node: u,
                location: Some(Location::Line(lineno)),
            });
        }
        max_index = Some(max_index.map_or(u.max(v), |m| m.max(u).max(v)));
        edges.push((u.min(v), u.max(v)));
    }

    let (n, labels) = if options.named {
        if hint > names.len() {
            return Err(Error::invalid(
                "node count hint exceeds the named nodes present",
            ));
        }
        let n = names.len();
        (n, NodeLabelMap::new(names)?)
    } else {
        let n = hint.max(max_index.map_or(0, |m| m + 1));
        let offset = usize::from(options.one_indexed);
        let labels = (0..n).map(|i| (i + offset).to_string()).collect();
        (n, NodeLabelMap::new(labels)?)
    };
    Ok(LoadedGraph {
        graph: Graph::from_canonical(n, edges),
        labels: Some(labels),
    })
}

pub fn write_edge_list<W: Write>(g: &Graph, mut sink: W, one_indexed: bool) -> Result<()> {
    let off = usize::from(one_indexed);
    writeln!(sink, "# n={}", g.n()).map_err(io_err)?;
    for &(u, v) in g.edges() {
        writeln!(sink, "{} {}", u + off, v + off).map_err(io_err)?;
    }
    Ok(())
}

const MM_BANNER: &str = "%%MatrixMarket matrix coordinate pattern symmetric";

/// Reads a `coordinate pattern symmetric` MatrixMarket file (1-based).
pub fn read_matrix_market<R: BufRead>(source: R) -> Result<Graph> {
    let mut lines = source.lines().enumerate();
    let banner = match lines.next() {
        Some((_, l)) => l.map_err(|e| Error::parse_line(1, e.to_string()))?,
        None => return Err(Error::parse_line(1, "empty MatrixMarket input")),
    };
    let fields: Vec<String> = banner.split_whitespace().map(str::to_lowercase).collect();
    if fields
        != MM_BANNER
            .split_whitespace()
            .map(str::to_lowercase)
            .collect::<Vec<_>>()
    {
        return Err(Error::parse_line(
            1,
            format!("expected banner {MM_BANNER:?}, found {banner:?}"),
        ));
    }

    let mut size: Option<(usize, usize)> = None;
    let mut edges = Vec::new();
    for (i, line) in lines {
        let lineno = i + 1;
        let line = line.map_err(|e| Error::parse_line(lineno, e.to_string()))?;
        let line = line.trim();
        if line.is_empty() || line.starts_with('%') {
            continue;
        }
        let nums: Vec<usize> = line
            .split_whitespace()
            .map(|t| {
                t.parse()
                    .map_err(|_| Error::parse_line(lineno, format!("invalid integer {t:?}")))
            })
            .collect::<Result<_>>()?;
        match size {
            None => {
                let [rows, cols, nnz] = nums[..] else {
                    return Err(Error::parse_line(lineno, "size line needs rows cols nnz"));
                };
                if rows != cols {
                    return Err(Error::parse_line(lineno, "adjacency matrix must be square"));
                }
                size = Some((rows, nnz));
                edges.reserve(nnz);
            }
            Some((n, _)) => {
                let [r, c] = nums[..] else {
                    return Err(Error::parse_line(lineno, "entry line needs row and column"));
                };
                if r == 0 || c == 0 {
                    return Err(Error::parse_line(
                        lineno,
                        "MatrixMarket indices are 1-based",
                    ));
                }
                if r > n || c > n {
                    return Err(Error::IndexOutOfRange {
                        index: r.max(c) - 1,
                        n,
                    });
                }
                if r == c {
                    return Err(Error::SelfLoop {
                        node: r - 1,
                        location: Some(Location::Line(lineno)),
                    });
                }
                edges.push(((r - 1).min(c - 1), (r - 1).max(c - 1)));
            }
        }
    }
    let (n, nnz) = size.ok_or_else(|| Error::parse_line(1, "missing size line"))?;
    if edges.len() != nnz {
        return Err(Error::Parse {
            location: Location::Line(0),
            message: format!("size line declares {nnz} entries, found {}", edges.len()),
        });
    }
    Ok(Graph::from_canonical(n, edges))
}

pub fn write_matrix_market<W: Write>(g: &Graph, mut sink: W) -> Result<()> {
    writeln!(sink, "{MM_BANNER}").map_err(io_err)?;
    writeln!(sink, "{} {} {}", g.n(), g.n(), g.m()).map_err(io_err)?;
    for &(u, v) in g.edges() {
        // lower triangle, row > column
        writeln!(sink, "{} {}", v + 1, u + 1).map_err(io_err)?;
    }
    Ok(())
}

/// The graph6 dense text encoding.
///
/// A graph on `n` nodes is written as `N(n)` followed by the upper triangle of
/// the adjacency matrix in column order `x(0,1), x(0,2), x(1,2), x(0,3), ...`,
/// packed into 6-bit groups, each offset by 63.
pub mod graph6 {
    use super::Graph;
    use crate::error::{Error, Location, Result};

    pub const HEADER: &str = ">>graph6<<";

    /// Largest order representable by graph6.
    pub const MAX_N: usize = 68_719_476_735;

    fn err(byte: usize, message: impl Into<String>) -> Error {
        Error::Parse {
            location: Location::Byte(byte),
            message: message.into(),
        }
    }

    fn push_n(out: &mut Vec<u8>, n: usize) {
        if n <= 62 {
            out.push(63 + n as u8);
        } else if n <= 258_047 {
            out.push(126);
            for shift in [12, 6, 0] {
                out.push(63 + ((n >> shift) & 0x3f) as u8);
            }
        } else {
            out.extend([126, 126]);
            for shift in [30, 24, 18, 12, 6, 0] {
                out.push(63 + ((n >> shift) & 0x3f) as u8);
            }
        }
    }

    pub fn encode(g: &Graph) -> String {
        let n = g.n();
        assert!(n <= MAX_N, "graph too large for graph6");
        let mut out = Vec::new();
        push_n(&mut out, n);
        let mut acc = 0u8;
        let mut filled = 0;
        for j in 1..n {
            for i in 0..j {
                acc = (acc << 1) | u8::from(g.has_edge(i, j));
                filled += 1;
                if filled == 6 {
                    out.push(63 + acc);
                    acc = 0;
                    filled = 0;
                }
            }
        }
        if filled > 0 {
            out.push(63 + (acc << (6 - filled)));
        }
        String::from_utf8(out).expect("graph6 bytes are ASCII")
    }

    fn sextet(bytes: &[u8], pos: usize) -> Result<usize> {
        let b = *bytes
            .get(pos)
            .ok_or_else(|| err(pos, "unexpected end of graph6 string"))?;
        if !(63..=126).contains(&b) {
            return Err(err(pos, format!("byte {b:#04x} outside the graph6 range")));
        }
        Ok(usize::from(b - 63))
    }

    pub fn decode(text: &str) -> Result<Graph> {
        let bytes = text.as_bytes();
        let (n, mut pos) = match bytes.first() {
            None => return Err(err(0, "empty graph6 string")),
            Some(126) if bytes.get(1) == Some(&126) => {
                let mut n = 0;
                for k in 0..6 {
                    n = (n << 6) | sextet(bytes, 2 + k)?;
                }
                (n, 8)
            }
            Some(126) => {
                let mut n = 0;
                for k in 0..3 {
                    n = (n << 6) | sextet(bytes, 1 + k)?;
                }
                (n, 4)
            }
            Some(_) => (sextet(bytes, 0)?, 1),
        };
        let bits = n * n.saturating_sub(1) / 2;
        let expected = pos + bits.div_ceil(6);
        if bytes.len() != expected {
            return Err(err(
                bytes.len().min(expected),
                format!(
                    "graph6 string for n = {n} needs {expected} bytes, found {}",
                    bytes.len()
                ),
            ));
        }
        let mut edges = Vec::new();
        let mut bit = 0;
        let mut group = 0;
        for j in 1..n {
            for i in 0..j {
                if bit % 6 == 0 {
                    group = sextet(bytes, pos)?;
                    pos += 1;
                }
                if group & (1 << (5 - bit % 6)) != 0 {
                    edges.push((i, j));
                }
                bit += 1;
            }
        }
        if bit % 6 != 0 && group & ((1 << (6 - bit % 6)) - 1) != 0 {
            return Err(err(pos - 1, "nonzero padding bits"));
        }
        Ok(Graph::from_canonical(n, edges))
    }
}
