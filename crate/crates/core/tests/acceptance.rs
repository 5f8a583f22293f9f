//! Acceptance checks, one line per criterion on stdout.
//!
//! Criterion 10 depends on external data and prints its outcome without
//! affecting the exit status. Optional inputs:
//!
//! - `DFWALK_CATALOG8`: graph6 catalog of the connected graphs on 8 nodes.
//! - `DFWALK_YEAST_EDGES`, `DFWALK_YEAST_LABELS`: protein interaction edge
//!   list (named nodes) and essentiality labels.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

mod common;

use std::f64::consts::{E, PI};
use std::fs::File;
use std::io::BufReader;
use std::panic::{self, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::Instant;

use dfwalk::analysis::{
    beta_scan, pearson, read_labels, roc_auc, spearman, top_fraction_hits, ScanMetric,
};
use dfwalk::enumeration::{enumerate_connected, ingest_graph6_stream};
use dfwalk::graph::{load_graph, EdgeListOptions, Format};
use dfwalk::indices::{
    delta_coefficient_exact, delta_series, estrada_from_spectrum, estrada_index,
    gamma_lower_bound_asymptotic, gamma_upper_bound, subgraph_centrality,
};
use dfwalk::spectral::eigenvalues;
use dfwalk::walkfn::special::ln_double_factorial;
use dfwalk::walkfn::{
    df_matrix, df_matrix_exact, erf_scalar, relative_frobenius, series_oracle, TANH_SCALE,
};
use dfwalk::{eigendecompose, generate, DfForm, Error, Execution, Graph, GraphKind, WeightScheme};

type Check = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

fn ok<T, E: std::fmt::Display>(r: Result<T, E>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn small_connected() -> Vec<Graph> {
    (4..=6)
        .flat_map(|n| enumerate_connected(n, Execution::Parallel).unwrap())
        .collect()
}

fn gamma(g: &Graph, form: DfForm) -> f64 {
    let vals = eigenvalues(g).unwrap();
    estrada_from_spectrum(&vals, WeightScheme::DoubleFactorial, 1.0, form)
        .unwrap()
        .to_f64()
}

fn c1_series_equivalence() -> Check {
    let mut graphs = small_connected();
    ensure!(
        graphs.len() == 139,
        "expected 139 connected graphs on 4..6 nodes, got {}",
        graphs.len()
    );
    graphs.extend(common::er_corpus());
    let worst = Execution::Parallel
        .map(&graphs, |g| -> Result<f64, String> {
            let s = ok(series_oracle(g, WeightScheme::DoubleFactorial, 1.0, 200))?;
            let eig = ok(eigendecompose(g))?;
            let closed = ok(df_matrix_exact(&eig, 1.0))?;
            Ok(relative_frobenius(&s.matrix, &closed))
        })
        .into_iter()
        .collect::<Result<Vec<_>, _>>()?
        .into_iter()
        .fold(0.0, f64::max);
    ensure!(
        worst <= 1e-10,
        "max relative Frobenius error {worst:e} > 1e-10"
    );
    Ok(format!(
        "{} graphs, max relative error {worst:.2e}",
        graphs.len()
    ))
}

fn simpson(f: impl Fn(f64) -> f64, a: f64, b: f64, intervals: usize) -> f64 {
    let h = (b - a) / intervals as f64;
    let mut s = f(a) + f(b);
    for i in 1..intervals {
        let w = if i % 2 == 1 { 4.0 } else { 2.0 };
        s += w * f(a + i as f64 * h);
    }
    s * h / 3.0
}

fn c2_tanh_quality() -> Check {
    let gap = |x: f64| erf_scalar(x) - (TANH_SCALE * x).tanh();
    let max_gap = (0..=120_000)
        .map(|i| gap(-6.0 + i as f64 * 1e-4).abs())
        .fold(0.0, f64::max);
    ensure!(max_gap <= 0.03, "max |erf - tanh| = {max_gap} > 0.03");
    let integral = simpson(gap, 0.0, 40.0, 400_000);
    ensure!(
        integral.abs() <= 1e-6,
        "integral of erf - tanh = {integral:e}"
    );

    let mut graphs = small_connected();
    graphs.extend(common::er_corpus());
    let worst = graphs
        .iter()
        .map(|g| {
            let eig = eigendecompose(g).unwrap();
            let d = df_matrix(&eig, 1.0, DfForm::Tanh).unwrap();
            let exact = df_matrix(&eig, 1.0, DfForm::Exact).unwrap();
            relative_frobenius(&d, &exact)
        })
        .fold(0.0, f64::max);
    ensure!(worst <= 0.05, "matrix gap {worst} > 0.05");
    Ok(format!(
        "max pointwise gap {max_gap:.4}, integral {integral:.1e}, max matrix gap {worst:.4}"
    ))
}

fn c3_spot_values() -> Check {
    let k2 = generate(GraphKind::Complete(2)).unwrap();
    let p3 = generate(GraphKind::Path(3)).unwrap();
    let cases = [
        (
            "Gamma(K2)",
            &k2,
            WeightScheme::DoubleFactorial,
            2.0 * E.sqrt(),
        ),
        (
            "Gamma(P3)",
            &p3,
            WeightScheme::DoubleFactorial,
            2.0 * E + 1.0,
        ),
        ("EE(K2)", &k2, WeightScheme::Factorial, 2.0 * 1f64.cosh()),
    ];
    for (name, g, scheme, want) in cases {
        let eig = ok(eigendecompose(g))?;
        for form in [DfForm::Exact, DfForm::Tanh] {
            let got = ok(estrada_index(&eig, scheme, 1.0, form))?.to_f64();
            ensure!(
                (got - want).abs() <= 1e-10,
                "{name} ({form:?}) = {got}, want {want}"
            );
        }
        let series = ok(series_oracle(g, scheme, 1.0, 60))?.matrix.trace();
        ensure!(
            (series - want).abs() <= 1e-10,
            "{name} series = {series}, want {want}"
        );
    }
    Ok("closed forms match spectral and series evaluations to 1e-10".into())
}

fn c4_delta() -> Check {
    let want = [(3, (1, 6)), (4, (1, 12)), (5, (7, 120)), (6, (7, 360))];
    for (k, frac) in want {
        let got = delta_coefficient_exact(k);
        ensure!(
            got == Some(frac),
            "coefficient k={k}: {got:?}, want {frac:?}"
        );
    }
    let mut graphs = small_connected();
    graphs.extend(common::er_corpus());
    let errs = Execution::Parallel
        .map(&graphs, |g| -> Result<f64, String> {
            let mut worst = 0.0f64;
            for p in 0..g.n() {
                let d = ok(delta_series(g, p, 80))?;
                let (a, b) = (d.delta.to_f64(), d.closed_form.to_f64());
                worst = worst.max((a - b).abs() / b.abs().max(1.0));
            }
            Ok(worst)
        })
        .into_iter()
        .collect::<Result<Vec<_>, _>>()?;
    let worst = errs.into_iter().fold(0.0, f64::max);
    ensure!(worst <= 1e-8, "partial sum relative error {worst:e} > 1e-8");
    Ok(format!(
        "coefficients exact for k=3..6; {} graphs, max relative error at K=80 {worst:.2e}",
        graphs.len()
    ))
}

fn extremality(graphs: &[Graph], n: usize) -> Result<(), String> {
    let path = generate(GraphKind::Path(n)).unwrap();
    let complete = generate(GraphKind::Complete(n)).unwrap();
    let canon_path = ok(dfwalk::enumeration::canonical_form(&path))?;
    let canon_complete = ok(dfwalk::enumeration::canonical_form(&complete))?;
    for form in [DfForm::Tanh, DfForm::Exact] {
        let (gp, gk) = (gamma(&path, form), gamma(&complete, form));
        let failures: Vec<String> = Execution::Parallel
            .map(graphs, |g| {
                let c = dfwalk::enumeration::canonical_form(g).unwrap();
                let v = gamma(g, form);
                if c != canon_path && v <= gp {
                    return Some(format!("n={n} {form:?}: {v} <= Gamma(P_n) = {gp}"));
                }
                if c != canon_complete && v >= gk {
                    return Some(format!("n={n} {form:?}: {v} >= Gamma(K_n) = {gk}"));
                }
                for &(u, w) in g.edges() {
                    let smaller = gamma(&g.without_edge(u, w), form);
                    if smaller >= v {
                        return Some(format!(
                            "n={n} {form:?}: removing {u}-{w} does not decrease"
                        ));
                    }
                }
                let tree = gamma(&g.spanning_tree(), form);
                if tree > v {
                    return Some(format!("n={n} {form:?}: spanning tree exceeds graph"));
                }
                None
            })
            .into_iter()
            .flatten()
            .collect();
        ensure!(failures.is_empty(), "{}", failures[0]);
    }
    Ok(())
}

fn c5_extremality() -> Check {
    let mut counts = Vec::new();
    for (n, want) in [(4, 6), (5, 21), (6, 112), (7, 853)] {
        let graphs = ok(enumerate_connected(n, Execution::Parallel))?;
        ensure!(
            graphs.len() == want,
            "n={n}: {} graphs, want {want}",
            graphs.len()
        );
        extremality(&graphs, n)?;
        counts.push(graphs.len().to_string());
    }
    let mut detail = format!(
        "counts {}; extremes, edge deletion and spanning trees hold",
        counts.join("/")
    );
    match std::env::var_os("DFWALK_CATALOG8") {
        Some(path) => {
            let f = ok(File::open(&path))?;
            let graphs: Vec<Graph> = ok(ingest_graph6_stream(BufReader::new(f)).collect())?;
            ensure!(
                graphs.len() == 11_117,
                "catalog holds {} graphs, want 11117",
                graphs.len()
            );
            extremality(&graphs, 8)?;
            detail.push_str("; n=8 catalog 11117 graphs checked");
        }
        None => detail.push_str("; n=8 catalog not supplied"),
    }
    Ok(detail)
}

fn c6_path_asymptotics() -> Check {
    let mut residuals = Vec::new();
    for n in [100, 500, 1000, 2000] {
        let g = generate(GraphKind::Path(n)).unwrap();
        let gam = gamma(&g, DfForm::Exact);
        residuals.push((gam - gamma_lower_bound_asymptotic(n)).abs() / n as f64);
    }
    ensure!(
        residuals.windows(2).all(|w| w[1] < w[0]),
        "residuals not decreasing: {residuals:?}"
    );
    ensure!(
        residuals[3] < 0.01,
        "residual at n=2000 is {}",
        residuals[3]
    );
    for n in 1..=20 {
        let k = generate(GraphKind::Complete(n)).unwrap();
        for form in [DfForm::Tanh, DfForm::Exact] {
            let bound = gamma_upper_bound(n, form).to_f64();
            let actual = gamma(&k, form);
            ensure!(
                (bound - actual).abs() <= 1e-8 * actual,
                "n={n} {form:?}: bound {bound} vs Gamma(K_n) {actual}"
            );
        }
    }
    Ok(format!(
        "residual/n = {:.2e}, {:.2e}, {:.2e}, {:.2e}; upper bound tight for n<=20",
        residuals[0], residuals[1], residuals[2], residuals[3]
    ))
}

fn c7_crossover() -> Check {
    let ln10 = 10f64.ln();
    for k in 1..=250i64 {
        let lhs = -ok(ln_double_factorial(k))?;
        ensure!(lhs > -(k as f64) * ln10, "1/{k}!! <= 0.1^{k}");
    }
    let lhs = -ok(ln_double_factorial(300))?;
    ensure!(lhs < -300.0 * ln10, "1/300!! >= 0.1^300");
    let first = (1..=400i64)
        .find(|&k| -ln_double_factorial(k).unwrap() < -(k as f64) * ln10)
        .unwrap();
    Ok(format!("1/k!! first drops below 0.1^k at k={first}"))
}

fn c8_overflow() -> Check {
    let g = generate(GraphKind::Complete(60)).unwrap();
    let eig = ok(eigendecompose(&g))?;
    let want = 59.0f64.powi(2) / 2.0 + (1.0 + (PI / 2.0).sqrt()).ln();
    for form in [DfForm::Tanh, DfForm::Exact] {
        let v = ok(estrada_index(
            &eig,
            WeightScheme::DoubleFactorial,
            1.0,
            form,
        ))?;
        ensure!(
            v.sign() == 1 && v.log_mag().is_finite(),
            "log value not finite: {v}"
        );
        ensure!(
            (v.log_mag() - want).abs() < 1e-9,
            "ln Gamma = {}, want {want}",
            v.log_mag()
        );
        ensure!(
            matches!(df_matrix(&eig, 1.0, form), Err(Error::Overflow { .. })),
            "linear matrix path did not report overflow"
        );
        ensure!(
            matches!(
                subgraph_centrality(&eig, WeightScheme::DoubleFactorial, 1.0, form, false),
                Err(Error::Overflow { .. })
            ),
            "linear centrality path did not report overflow"
        );
    }
    Ok(format!(
        "ln Gamma(K60) = {want:.6}; linear paths report overflow"
    ))
}

fn c9_ranking() -> Check {
    ensure!(
        ok(spearman(&[1.0, 2.0, 3.0], &[1.0, 2.0, 3.0]))? == 1.0,
        "spearman identical"
    );
    ensure!(
        ok(spearman(&[1.0, 2.0, 3.0], &[3.0, 2.0, 1.0]))? == -1.0,
        "spearman reversed"
    );
    let s = ok(spearman(&[1.0, 2.0, 3.0], &[1.0, 3.0, 2.0]))?;
    ensure!((s - 0.5).abs() < 1e-15, "spearman (1,2,3)/(1,3,2) = {s}");
    ensure!(
        matches!(
            spearman(&[2.0, 2.0, 2.0], &[1.0, 2.0, 3.0]),
            Err(Error::Degenerate(_))
        ),
        "constant input not degenerate"
    );
    let xs = [0.0, 1.0, 2.0];
    ensure!(ok(pearson(&xs, &xs))? == 1.0, "pearson identical");
    ensure!(
        ok(pearson(&xs, &[0.0, -2.0, -4.0]))? == -1.0,
        "pearson negated"
    );
    let r = ok(pearson(&xs, &[0.0, 1.0, 4.0]))?;
    ensure!(
        (r - 4.0 / (52.0f64 / 3.0).sqrt()).abs() < 1e-15,
        "pearson = {r}"
    );
    ensure!((r - 0.9608).abs() < 5e-5, "pearson = {r}");
    let a = ok(roc_auc(&[4.0, 3.0, 2.0, 1.0], &[true, true, false, false]))?.auc;
    ensure!(a == 1.0, "separating auc = {a}");
    let a = ok(roc_auc(&[1.0; 4], &[true, true, false, false]))?.auc;
    ensure!(a == 0.5, "tied auc = {a}");
    let a = ok(roc_auc(&[0.9, 0.8, 0.7, 0.6], &[true, false, true, false]))?.auc;
    ensure!(a == 0.75, "auc = {a}");
    let scores: Vec<f64> = (0..100).map(|i| -(i as f64)).collect();
    let labels: Vec<bool> = (0..100).map(|i| i < 10).collect();
    ensure!(
        ok(top_fraction_hits(&scores, &labels, 0.1))? == 10,
        "top fraction"
    );
    ensure!(
        ok(top_fraction_hits(&scores, &[false; 100], 0.1))? == 0,
        "top fraction zero"
    );

    for (i, g) in common::er_corpus().iter().enumerate() {
        let eig = ok(eigendecompose(g))?;
        let c = ok(subgraph_centrality(
            &eig,
            WeightScheme::DoubleFactorial,
            100.0,
            DfForm::Tanh,
            true,
        ))?;
        let psi2: Vec<f64> = (0..g.n()).map(|p| eig.component(0, p).powi(2)).collect();
        for p in 0..g.n() {
            for q in 0..g.n() {
                if psi2[p] > psi2[q] * (1.0 + 1e-9) {
                    ensure!(
                        c.values[p] > c.values[q],
                        "corpus graph {i}: nodes {p}, {q} out of order"
                    );
                }
            }
        }
    }
    Ok("example tables exact; beta=100 ranking equals psi_1^2 ranking on 20 graphs".into())
}

fn within(got: f64, want: f64, rel: f64) -> bool {
    (got - want).abs() <= rel * want.abs()
}

/// Returns (passed, detail).
fn c10_replication() -> (bool, String) {
    let g = common::lattice();
    let eig = eigendecompose(&g).unwrap();
    let (a, b) = (common::LATTICE_A, common::LATTICE_B);
    let sc = |scheme, form| {
        subgraph_centrality(&eig, scheme, 1.0, form, true)
            .unwrap()
            .linear()
    };
    let gf = sc(WeightScheme::Factorial, DfForm::Exact);
    let gt = sc(WeightScheme::DoubleFactorial, DfForm::Tanh);
    let gx = sc(WeightScheme::DoubleFactorial, DfForm::Exact);
    let fixture_matches = within(gf[a], 9.1134, 0.01) && within(gf[b], 14.6272, 0.01);
    let gamma_matches = within(gt[a], 3038.6, 0.01) && within(gt[b], 2806.8, 0.01);
    let reversal = gf[a] < gf[b] && gt[a] > gt[b] && gx[a] > gx[b];
    let mut detail = format!(
        "lattice G_AA={:.4} G_BB={:.4} Gamma_AA={:.1} Gamma_BB={:.1} (exact {:.1}/{:.1}), rank reversal {}",
        gf[a], gf[b], gt[a], gt[b], gx[a], gx[b],
        if reversal { "holds" } else { "FAILS" }
    );
    let mut passed = if fixture_matches {
        if !gamma_matches {
            // The reference Gamma values agree with the even part alone.
            let even = eig.reconstruct_with(|l| (0.5 * l * l).exp());
            detail.push_str(&format!(
                "; fixture reproduces the reference G values but Gamma differs from the reference 3038.6/2806.8 by more than 1%; diag exp(A^2/2) gives {:.1}/{:.1}",
                even[(a, a)],
                even[(b, b)]
            ));
        }
        gamma_matches && reversal
    } else {
        detail.push_str(
            "; fixture does not reproduce the reference G values, falling back to rank reversal",
        );
        reversal
    };

    match (
        std::env::var_os("DFWALK_YEAST_EDGES"),
        std::env::var_os("DFWALK_YEAST_LABELS"),
    ) {
        (Some(edges), Some(labels)) => match yeast(&edges, &labels) {
            Ok((ok_, d)) => {
                passed &= ok_;
                detail.push_str(&format!("; yeast: {d}"));
            }
            Err(e) => {
                passed = false;
                detail.push_str(&format!("; yeast: {e}"));
            }
        },
        _ => detail.push_str("; yeast data not supplied"),
    }
    (passed, detail)
}

fn yeast(edges: &std::ffi::OsStr, labels: &std::ffi::OsStr) -> Result<(bool, String), String> {
    let opts = EdgeListOptions {
        one_indexed: false,
        named: true,
    };
    let loaded = ok(load_graph(
        BufReader::new(ok(File::open(edges))?),
        Format::EdgeList,
        opts,
    ))?;
    let names = loaded.labels.unwrap();
    let labels = ok(read_labels(BufReader::new(ok(File::open(labels))?), &names))?;
    let grid: Vec<f64> = (1..=100).map(|i| i as f64 * 0.01).collect();
    let metric = ScanMetric::TopFraction {
        labels: labels.clone(),
        fraction: 0.1,
    };
    let scan = |scheme| {
        beta_scan(
            &loaded.graph,
            scheme,
            &grid,
            &metric,
            DfForm::Tanh,
            Execution::Parallel,
        )
    };
    let f = ok(scan(WeightScheme::Factorial))?;
    let d = ok(scan(WeightScheme::DoubleFactorial))?;
    let eig = ok(eigendecompose(&loaded.graph))?;
    let auc = |scheme, beta| -> Result<f64, String> {
        let c = ok(subgraph_centrality(&eig, scheme, beta, DfForm::Tanh, true))?;
        Ok(ok(roc_auc(&c.values, &labels))?.auc)
    };
    let auc_f = auc(WeightScheme::Factorial, *f.argmax.first().unwrap_or(&0.5))?;
    let auc_d = auc(
        WeightScheme::DoubleFactorial,
        *d.argmax.first().unwrap_or(&0.18),
    )?;
    let pass = f.peak() == Some(115.0)
        && d.peak() == Some(115.0)
        && d.argmax.iter().any(|b| (b - 0.18).abs() < 1e-9)
        && f.argmax
            .iter()
            .all(|b| (0.47 - 1e-9..=0.57 + 1e-9).contains(b))
        && (auc_f - 0.69).abs() <= 0.01
        && (auc_d - 0.69).abs() <= 0.01;
    Ok((
        pass,
        format!(
            "factorial peak {:?} at {:?}, double-factorial peak {:?} at {:?}, AUC {auc_f:.3}/{auc_d:.3}",
            f.peak(), f.argmax, d.peak(), d.argmax
        ),
    ))
}

fn run(check: fn() -> Check) -> Check {
    panic::catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|e| {
        let msg = e
            .downcast_ref::<String>()
            .cloned()
            .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
            .unwrap_or_default();
        Err(format!("panicked: {msg}"))
    })
}

type Criterion = (u32, &'static str, fn() -> Check);

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        (1, "series oracle equivalence", c1_series_equivalence),
        (2, "tanh approximation quality", c2_tanh_quality),
        (3, "closed-form spot values", c3_spot_values),
        (4, "difference coefficients and partial sums", c4_delta),
        (5, "extremality by exhaustion", c5_extremality),
        (6, "path asymptotics and upper bound", c6_path_asymptotics),
        (7, "decay-profile crossover", c7_crossover),
        (8, "overflow safety", c8_overflow),
        (9, "ranking statistics", c9_ranking),
    ];
    let mut failed = 0;
    for (id, name, check) in criteria {
        let start = Instant::now();
        let result = run(check);
        let secs = start.elapsed().as_secs_f64();
        match result {
            Ok(detail) => println!("criterion {id} {name}: PASS ({secs:.1}s) {detail}"),
            Err(detail) => {
                failed += 1;
                println!("criterion {id} {name}: FAIL ({secs:.1}s) {detail}");
            }
        }
    }
    let start = Instant::now();
    let (passed, detail) = c10_replication();
    println!(
        "criterion 10 reference-value replication: {} ({:.1}s, conditional, not gated) {detail}",
        if passed { "PASS" } else { "FAIL" },
        start.elapsed().as_secs_f64()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} gated criteria failed");
        ExitCode::FAILURE
    }
}
