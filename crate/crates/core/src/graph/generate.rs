//! Deterministic generators for the graph families used in experiments.

use rand_core::RngCore;
use rand_core::SeedableRng;
use rand_xoshiro::SplitMix64;

use super::Graph;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum GraphKind {
    Path(usize),
    Complete(usize),
    /// Needs `n >= 3`.
    Cycle(usize),
    /// `n` nodes in total; node 0 is the hub.
    Star(usize),
    /// `rows x cols` grid with node `(i, j)` at index `i * cols + j`, joined
    /// to `(i, j+1)`, `(i+1, j)` and the diagonal `(i+1, j+1)`.
    TriLattice {
        rows: usize,
        cols: usize,
    },
    /// G(n, p). Each pair `u < v`, in row-major order, draws one uniform from
    /// a SplitMix64 stream seeded with `seed`; the uniform is
    /// `(next_u64() >> 11) * 2^-53` and the edge is kept when it is `< p`.
    ErdosRenyi {
        n: usize,
        p: f64,
        seed: u64,
    },
}

pub fn generate(kind: GraphKind) -> Result<Graph> {
    use GraphKind::*;
    let need = |ok: bool, what: &str| {
        if ok {
            Ok(())
        } else {
            Err(Error::invalid(format!("{what} (got {kind:?})")))
        }
    };
    let graph = match kind {
        Path(n) => {
            need(n >= 1, "path needs n >= 1")?;
            Graph::from_canonical(n, (1..n).map(|v| (v - 1, v)).collect())
        }
        Complete(n) => {
            need(n >= 1, "complete graph needs n >= 1")?;
            let edges = (0..n)
                .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
                .collect();
            Graph::from_canonical(n, edges)
        }
        Cycle(n) => {
            need(n >= 3, "cycle needs n >= 3")?;
            let mut edges: Vec<_> = (1..n).map(|v| (v - 1, v)).collect();
            edges.push((0, n - 1));
            Graph::from_canonical(n, edges)
        }
        Star(n) => {
            need(n >= 1, "star needs n >= 1")?;
            Graph::from_canonical(n, (1..n).map(|v| (0, v)).collect())
        }
        TriLattice { rows, cols } => {
            need(rows >= 1 && cols >= 1, "lattice needs rows, cols >= 1")?;
            let at = |i: usize, j: usize| i * cols + j;
            let mut edges = Vec::new();
            for i in 0..rows {
                for j in 0..cols {
                    if j + 1 < cols {
                        edges.push((at(i, j), at(i, j + 1)));
                    }
                    if i + 1 < rows {
                        edges.push((at(i, j), at(i + 1, j)));
                        if j + 1 < cols {
                            edges.push((at(i, j), at(i + 1, j + 1)));
                        }
                    }
                }
            }
            Graph::from_canonical(rows * cols, edges)
        }
        ErdosRenyi { n, p, seed } => {
            need(n >= 1, "er needs n >= 1")?;
            need((0.0..=1.0).contains(&p), "er needs 0 <= p <= 1")?;
            let mut rng = SplitMix64::seed_from_u64(seed);
            let mut edges = Vec::new();
            for u in 0..n {
                for v in u + 1..n {
                    if unit_f64(&mut rng) < p {
                        edges.push((u, v));
                    }
                }
            }
            Graph::from_canonical(n, edges)
        }
    };
    Ok(graph)
}

fn unit_f64(rng: &mut SplitMix64) -> f64 {
    (rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}

impl std::str::FromStr for GraphKind {
    type Err = Error;

    /// `path:5`, `complete:4`, `cycle:6`, `star:5`, `trilattice:3x9`,
    /// `er:10:0.5:42`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::invalid(format!("cannot parse graph kind {s:?}"));
        let mut parts = s.split(':');
        let name = parts.next().ok_or_else(bad)?;
        let rest: Vec<&str> = parts.collect();
        let int = |t: &str| t.parse::<usize>().map_err(|_| bad());
        let kind = match (name, rest.as_slice()) {
            ("path", [n]) => GraphKind::Path(int(n)?),
            ("complete", [n]) => GraphKind::Complete(int(n)?),
            ("cycle", [n]) => GraphKind::Cycle(int(n)?),
            ("star", [n]) => GraphKind::Star(int(n)?),
            ("trilattice", [dims]) => {
                let (r, c) = dims.split_once('x').ok_or_else(bad)?;
                GraphKind::TriLattice {
                    rows: int(r)?,
                    cols: int(c)?,
                }
            }
            ("er", [n, p, seed]) => GraphKind::ErdosRenyi {
                n: int(n)?,
                p: p.parse().map_err(|_| bad())?,
                seed: seed.parse().map_err(|_| bad())?,
            },
            _ => return Err(bad()),
        };
        Ok(kind)
    }
}
