//! Isomorphism classes of small graphs: brute-force canonical labels,
//! exhaustive generation of connected graphs for `n <= 7`, and a streaming
//! reader for externally generated graph6 catalogs (larger `n`).

use std::io::BufRead;

use crate::error::{Error, Location, Result};
use crate::exec::Execution;
use crate::graph::{graph6, Graph};

/// Largest order accepted by [`canonical_form`].
pub const MAX_CANONICAL_N: usize = 10;
/// Largest order generated by [`enumerate_connected`].
pub const MAX_ENUMERATE_N: usize = 7;

/// Canonical label of an isomorphism class: the lexicographically smallest
/// upper-triangle bit string (graph6 column order) over all relabelings.
///
/// Labels order first by `n`, then by the bit string.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalLabel {
    n: u8,
    /// Bit string read as a number, first pair most significant.
    bits: u64,
}

impl CanonicalLabel {
    pub fn n(&self) -> usize {
        usize::from(self.n)
    }

    /// `[n, bits as 8 big-endian bytes]`.
    pub fn to_bytes(&self) -> Vec<u8> {
        let mut out = vec![self.n];
        out.extend(self.bits.to_be_bytes());
        out
    }

    /// The canonical representative.
    pub fn to_graph(&self) -> Graph {
        Rows::from_bits(self.n(), self.bits).to_graph()
    }
}

/// Adjacency rows as bitsets; `rows[u] >> v & 1` is the edge `{u, v}`.
#[derive(Debug, Clone, Copy)]
struct Rows {
    n: usize,
    rows: [u16; MAX_CANONICAL_N],
}

fn pair_count(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

impl Rows {
    fn from_graph(g: &Graph) -> Self {
        let mut rows = [0u16; MAX_CANONICAL_N];
        for &(u, v) in g.edges() {
            rows[u] |= 1 << v;
            rows[v] |= 1 << u;
        }
        Rows { n: g.n(), rows }
    }

    /// Pair `(i, j)`, `i < j`, sits at position `j(j-1)/2 + i` of the bit
    /// string, stored at bit `B - 1 - position`.
    fn from_bits(n: usize, bits: u64) -> Self {
        let total = pair_count(n);
        let mut rows = [0u16; MAX_CANONICAL_N];
        let mut pos = 0;
        for j in 1..n {
            for i in 0..j {
                if bits >> (total - 1 - pos) & 1 == 1 {
                    rows[i] |= 1 << j;
                    rows[j] |= 1 << i;
                }
                pos += 1;
            }
        }
        Rows { n, rows }
    }

    #[cfg(test)]
    fn to_bits(self) -> u64 {
        let mut bits = 0u64;
        for j in 1..self.n {
            bits = (bits << j) | self.column(j, |i| i);
        }
        bits
    }

    fn has(&self, u: usize, v: usize) -> bool {
        self.rows[u] >> v & 1 == 1
    }

    /// Column `j` of the relabelled graph (new `i` -> old `map(i)`), as a
    /// `j`-bit number with pair `(0, j)` most significant.
    fn column(&self, j: usize, map: impl Fn(usize) -> usize) -> u64 {
        let vj = map(j);
        (0..j).fold(0u64, |acc, i| (acc << 1) | u64::from(self.has(map(i), vj)))
    }

    fn is_connected(&self) -> bool {
        if self.n == 0 {
            return true;
        }
        let all: u16 = ((1u32 << self.n) - 1) as u16;
        let mut seen: u16 = 1;
        let mut frontier: u16 = 1;
        while frontier != 0 {
            let mut next = 0u16;
            let mut f = frontier;
            while f != 0 {
                let u = f.trailing_zeros() as usize;
                f &= f - 1;
                next |= self.rows[u];
            }
            frontier = next & !seen;
            seen |= next;
        }
        seen == all
    }

    fn to_graph(self) -> Graph {
        let mut edges = Vec::new();
        for j in 1..self.n {
            for i in 0..j {
                if self.has(i, j) {
                    edges.push((i, j));
                }
            }
        }
        Graph::from_canonical(self.n, edges)
    }
}

/// Branch-and-bound search over relabelings, filling the image of one new
/// vertex per level and comparing the finished column against `best`.
struct Search<'a> {
    g: &'a Rows,
    map: [usize; MAX_CANONICAL_N],
    used: u16,
    /// Best column values found so far; `u64::MAX` where undetermined.
    best: [u64; MAX_CANONICAL_N],
    /// Stop at the first relabeling that beats `best` (minimality test).
    stop_on_better: bool,
    found_better: bool,
}

impl Search<'_> {
    fn run(&mut self, depth: usize) {
        if depth == self.g.n || self.found_better {
            return;
        }
        for v in 0..self.g.n {
            if self.used >> v & 1 == 1 {
                continue;
            }
            self.map[depth] = v;
            let col = {
                let map = &self.map;
                self.g.column(depth, |i| map[i])
            };
            if col > self.best[depth] {
                continue;
            }
            if col < self.best[depth] {
                if self.stop_on_better {
                    self.found_better = true;
                    return;
                }
                self.best[depth] = col;
                for b in &mut self.best[depth + 1..] {
                    *b = u64::MAX;
                }
            }
            self.used |= 1 << v;
            self.run(depth + 1);
            self.used &= !(1 << v);
            if self.found_better {
                return;
            }
        }
    }
}

fn columns_of(g: &Rows) -> [u64; MAX_CANONICAL_N] {
    let mut cols = [0u64; MAX_CANONICAL_N];
    for (j, c) in cols.iter_mut().enumerate().take(g.n) {
        *c = g.column(j, |i| i);
    }
    cols
}

fn pack_columns(n: usize, cols: &[u64; MAX_CANONICAL_N]) -> u64 {
    (1..n).fold(0u64, |bits, j| (bits << j) | cols[j])
}

/// Canonical label by exhaustive (pruned) search over all `n!` relabelings.
pub fn canonical_form(g: &Graph) -> Result<CanonicalLabel> {
    if g.n() > MAX_CANONICAL_N {
        return Err(Error::invalid(format!(
            "canonical labelling is brute force and limited to n <= {MAX_CANONICAL_N}, got {}",
            g.n()
        )));
    }
    let rows = Rows::from_graph(g);
    let mut search = Search {
        g: &rows,
        map: [0; MAX_CANONICAL_N],
        used: 0,
        best: [u64::MAX; MAX_CANONICAL_N],
        stop_on_better: false,
        found_better: false,
    };
    search.run(0);
    Ok(CanonicalLabel {
        n: g.n() as u8,
        bits: pack_columns(g.n(), &search.best),
    })
}

/// True when no relabeling of `rows` yields a smaller bit string.
fn is_canonical(rows: &Rows) -> bool {
    let mut search = Search {
        g: rows,
        map: [0; MAX_CANONICAL_N],
        used: 0,
        best: columns_of(rows),
        stop_on_better: true,
        found_better: false,
    };
    search.run(0);
    !search.found_better
}

/// One representative per isomorphism class of connected graphs on `n`
/// nodes, each in canonical labelling, sorted by canonical label.
///
/// Walks every labelled bit string, keeps the connected ones that are
/// already minimal over all relabelings. No dedup table is needed.
pub fn enumerate_connected(n: usize, exec: Execution) -> Result<Vec<Graph>> {
    Ok(enumerate_connected_labels(n, exec)?
        .iter()
        .map(CanonicalLabel::to_graph)
        .collect())
}

pub fn enumerate_connected_labels(n: usize, exec: Execution) -> Result<Vec<CanonicalLabel>> {
    if !(1..=MAX_ENUMERATE_N).contains(&n) {
        return Err(Error::invalid(format!(
            "built-in enumeration covers 1 <= n <= {MAX_ENUMERATE_N}, got {n}; \
             ingest a graph6 catalog for larger n"
        )));
    }
    let total = pair_count(n);
    Ok(exec.filter_map_u64(1u64 << total, |bits| {
        let rows = Rows::from_bits(n, bits);
        (rows.is_connected() && is_canonical(&rows)).then_some(CanonicalLabel { n: n as u8, bits })
    }))
}

/// Lazily decodes one graph6 string per line. Blank lines are skipped and a
/// leading `>>graph6<<` header is accepted.
pub struct Graph6Stream<R> {
    lines: std::io::Lines<R>,
    line: usize,
    count: usize,
}

impl<R: BufRead> Graph6Stream<R> {
    /// Graphs yielded so far.
    pub fn yielded(&self) -> usize {
        self.count
    }
}

pub fn ingest_graph6_stream<R: BufRead>(source: R) -> Graph6Stream<R> {
    Graph6Stream {
        lines: source.lines(),
        line: 0,
        count: 0,
    }
}

impl<R: BufRead> Iterator for Graph6Stream<R> {
    type Item = Result<Graph>;

    fn next(&mut self) -> Option<Self::Item> {
        loop {
            let raw = self.lines.next()?;
            self.line += 1;
            let line = match raw {
                Ok(l) => l,
                Err(e) => return Some(Err(Error::parse_line(self.line, e.to_string()))),
            };
            let mut text = line.trim();
            if self.line == 1 {
                text = text.strip_prefix(graph6::HEADER).unwrap_or(text);
            }
            if text.is_empty() {
                continue;
            }
            let line_no = self.line;
            let result = graph6::decode(text).map_err(|e| match e {
                Error::Parse {
                    location: Location::Byte(b),
                    message,
                } => Error::parse_line(line_no, format!("byte {b}: {message}")),
                other => other,
            });
            if result.is_ok() {
                self.count += 1;
            }
            return Some(result);
        }
    }
}
