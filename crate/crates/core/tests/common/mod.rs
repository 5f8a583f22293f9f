#![allow(dead_code)]

use std::fs::File;
use std::io::BufReader;
use std::path::PathBuf;

use dfwalk::graph::{load_graph, EdgeListOptions, Format};
use dfwalk::spectral::spectral_radius;
use dfwalk::{generate, Graph, GraphKind};

pub const LATTICE_A: usize = 4;
pub const LATTICE_B: usize = 10;

/// Twenty connected G(n, 0.3) graphs with n in 7..=12 and lambda_1 < 5.
///
/// The spectral-radius cap keeps the K = 80 truncation of the difference
/// series below 1e-9 relative error.
pub fn er_corpus() -> Vec<Graph> {
    let mut out = Vec::new();
    let mut seed = 0u64;
    while out.len() < 20 {
        let n = 7 + (seed % 6) as usize;
        let g = generate(GraphKind::ErdosRenyi { n, p: 0.3, seed }).unwrap();
        if g.is_connected() && spectral_radius(&g).unwrap() < 5.0 {
            out.push(g);
        }
        seed += 1;
    }
    out
}

pub fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name)
}

pub fn lattice() -> Graph {
    let f = File::open(fixture("trilattice27.edges")).unwrap();
    load_graph(
        BufReader::new(f),
        Format::EdgeList,
        EdgeListOptions::default(),
    )
    .unwrap()
    .graph
}
