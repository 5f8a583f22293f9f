use std::fs::File;
use std::io::{self, BufRead, BufReader, Write};
use std::path::Path;

use serde::Serialize;

use dfwalk::analysis::{
    average_ranks, beta_scan_spectrum, pearson, read_labels, roc_auc, spearman, ScanMetric,
};
use dfwalk::enumeration::{enumerate_connected, ingest_graph6_stream, MAX_ENUMERATE_N};
use dfwalk::graph::{graph6, load_graph, EdgeListOptions, NodeLabelMap};
use dfwalk::indices::{
    estrada_index, gamma_lower_bound_asymptotic, gamma_upper_bound, subgraph_centrality,
    CentralityVector,
};
use dfwalk::walkfn::walk_decay_profile;
use dfwalk::{
    eigendecompose, generate, DfForm, Error, Execution, Graph, SignedLogValue, WeightScheme,
};

use crate::output::{finite, Emitter};
use crate::{Cli, CliError, Command, Domain, Emit, InputArgs, WeightArgs};

type Result<T> = std::result::Result<T, CliError>;

struct Input {
    graph: Graph,
    labels: NodeLabelMap,
}

fn open(path: &Path) -> Result<Box<dyn BufRead>> {
    if path.as_os_str() == "-" {
        return Ok(Box::new(io::stdin().lock()));
    }
    let f = File::open(path)
        .map_err(|e| CliError::Input(format!("cannot open {}: {e}", path.display())))?;
    Ok(Box::new(BufReader::new(f)))
}

fn load(args: &InputArgs) -> Result<Input> {
    let offset = usize::from(args.parse.one_indexed);
    let (graph, labels) = match (&args.input, &args.generate) {
        (_, Some(kind)) => (generate(*kind)?, None),
        (Some(path), None) => {
            let options = EdgeListOptions {
                one_indexed: args.parse.one_indexed,
                named: args.parse.named,
            };
            let loaded = load_graph(open(path)?, args.parse.format, options)?;
            (loaded.graph, loaded.labels)
        }
        (None, None) => return Err(CliError::Config("no input graph".into())),
    };
    let labels = match labels {
        Some(l) => l,
        None => NodeLabelMap::new((0..graph.n()).map(|i| (i + offset).to_string()).collect())?,
    };
    Ok(Input { graph, labels })
}

fn form(exact_erf: bool) -> DfForm {
    if exact_erf {
        DfForm::Exact
    } else {
        DfForm::Tanh
    }
}

/// Linear value when finite, and `ln|x|` unless `x` is zero.
fn columns(v: SignedLogValue) -> (Option<f64>, Option<f64>) {
    let log = (!v.is_zero()).then(|| v.log_mag());
    (finite(v.to_f64()), log)
}

fn in_domain(v: SignedLogValue, domain: Domain, what: &str) -> Result<SignedLogValue> {
    if domain == Domain::Linear && v.to_finite().is_none() {
        return Err(Error::Overflow { what: what.into() }.into());
    }
    Ok(v)
}

pub fn run(cli: Cli) -> Result<()> {
    let exec = if cli.sequential {
        Execution::Sequential
    } else {
        Execution::Parallel
    };
    let stdout = io::stdout().lock();
    let mut out = Emitter::new(cli.output, stdout);
    match cli.command {
        Command::Centrality { input, weights } => centrality(&mut out, &input, &weights)?,
        Command::Index {
            input,
            beta,
            exact_erf,
            domain,
        } => index(&mut out, &input, beta, form(exact_erf), domain)?,
        Command::Compare {
            input,
            scheme_a,
            scheme_b,
            beta,
            exact_erf,
            table,
            pair,
        } => compare(
            &mut out,
            &input,
            [scheme_a, scheme_b],
            beta,
            form(exact_erf),
            table,
            pair.as_deref(),
        )?,
        Command::Profile {
            input,
            k_max,
            schemes,
        } => profile(&mut out, &input, k_max, &schemes)?,
        Command::Enumerate {
            n,
            from,
            emit,
            beta,
            exact_erf,
        } => {
            let graphs = match (n, from) {
                (_, Some(path)) => ingest_graph6_stream(open(&path)?)
                    .collect::<std::result::Result<Vec<_>, _>>()?,
                (Some(n), None) => {
                    if n > MAX_ENUMERATE_N {
                        return Err(CliError::Config(format!(
                            "enumeration is limited to n <= {MAX_ENUMERATE_N}; supply a catalog with --from"
                        )));
                    }
                    enumerate_connected(n, exec)?
                }
                (None, None) => return Err(CliError::Config("give --n or --from".into())),
            };
            if emit == Emit::Graph6 {
                let mut w = io::stdout().lock();
                for g in &graphs {
                    writeln!(w, "{}", graph6::encode(g))?;
                }
                w.flush()?;
            } else {
                enumerate_stats(&mut out, &graphs, beta, form(exact_erf), exec)?;
            }
        }
        Command::ScanBeta {
            input,
            scheme,
            exact_erf,
            labels,
            fraction,
            grid,
            summary,
        } => {
            let grid = parse_grid(&grid)?;
            let input = load(&input)?;
            let labels = read_labels(open(&labels)?, &input.labels)?;
            scan(
                &mut out,
                &input,
                scheme,
                form(exact_erf),
                labels,
                fraction,
                &grid,
                summary,
                exec,
            )?
        }
        Command::Roc {
            input,
            weights,
            labels,
            scores,
            summary,
        } => roc(
            &mut out,
            &input,
            &weights,
            &labels,
            scores.as_deref(),
            summary,
        )?,
    }
    out.finish()?;
    Ok(())
}

fn centralities(input: &Input, w: &WeightArgs) -> Result<CentralityVector> {
    let eig = eigendecompose(&input.graph)?;
    Ok(subgraph_centrality(
        &eig,
        w.scheme,
        w.beta,
        form(w.exact_erf),
        w.domain == Domain::Log,
    )?)
}

#[derive(Serialize)]
struct CentralityRow<'a> {
    node: &'a str,
    scheme: String,
    beta: f64,
    value: Option<f64>,
    log_value: Option<f64>,
}

fn centrality<W: Write>(out: &mut Emitter<W>, args: &InputArgs, w: &WeightArgs) -> Result<()> {
    let input = load(args)?;
    let c = centralities(&input, w)?;
    for (p, &v) in c.values.iter().enumerate() {
        let (value, log_value) = columns(v);
        out.row(&CentralityRow {
            node: input.labels.label(p),
            scheme: w.scheme.tag(),
            beta: w.beta,
            value,
            log_value,
        })?;
    }
    Ok(())
}

#[derive(Serialize)]
struct IndexRow {
    n: usize,
    m: usize,
    beta: f64,
    erf: &'static str,
    ee: Option<f64>,
    log_ee: Option<f64>,
    gamma: Option<f64>,
    log_gamma: Option<f64>,
    gamma_lower_asymptotic: Option<f64>,
    gamma_upper: Option<f64>,
    log_gamma_upper: Option<f64>,
    density: Option<f64>,
    avg_clustering: f64,
    transitivity: f64,
    triangles: u64,
}

fn index<W: Write>(
    out: &mut Emitter<W>,
    args: &InputArgs,
    beta: f64,
    form: DfForm,
    domain: Domain,
) -> Result<()> {
    let input = load(args)?;
    let g = &input.graph;
    let eig = eigendecompose(g)?;
    let ee = in_domain(
        estrada_index(&eig, WeightScheme::Factorial, beta, form)?,
        domain,
        "Estrada index",
    )?;
    let gamma = in_domain(
        estrada_index(&eig, WeightScheme::DoubleFactorial, beta, form)?,
        domain,
        "double-factorial Estrada index",
    )?;
    let (ee, log_ee) = columns(ee);
    let (gamma, log_gamma) = columns(gamma);
    let bounded = beta == 1.0 && g.n() > 0;
    let upper = bounded.then(|| gamma_upper_bound(g.n(), form));
    let c = g.clustering();
    out.row(&IndexRow {
        n: g.n(),
        m: g.m(),
        beta,
        erf: if form == DfForm::Exact {
            "exact"
        } else {
            "tanh"
        },
        ee,
        log_ee,
        gamma,
        log_gamma,
        gamma_lower_asymptotic: bounded.then(|| gamma_lower_bound_asymptotic(g.n())),
        gamma_upper: upper.and_then(|u| finite(u.to_f64())),
        log_gamma_upper: upper.map(|u| u.log_mag()),
        density: g.density().ok(),
        avg_clustering: c.watts_strogatz_avg,
        transitivity: c.transitivity,
        triangles: c.triangle_count,
    })?;
    Ok(())
}

#[derive(Serialize)]
struct CompareRow {
    scheme_a: String,
    scheme_b: String,
    beta: f64,
    n: usize,
    spearman: Option<f64>,
    pearson: Option<f64>,
    degenerate: bool,
    pair: Option<String>,
    pair_reversed: Option<bool>,
}

#[derive(Serialize)]
struct CompareTableRow<'a> {
    node: &'a str,
    value_a: Option<f64>,
    log_value_a: Option<f64>,
    rank_a: f64,
    value_b: Option<f64>,
    log_value_b: Option<f64>,
    rank_b: f64,
}

/// 1 for the most central node, ties averaged.
fn descending_ranks(values: &[SignedLogValue]) -> Vec<f64> {
    let n = values.len() as f64;
    average_ranks(values)
        .into_iter()
        .map(|r| n + 1.0 - r)
        .collect()
}

fn compare<W: Write>(
    out: &mut Emitter<W>,
    args: &InputArgs,
    schemes: [WeightScheme; 2],
    beta: f64,
    form: DfForm,
    table: bool,
    pair: Option<&[String]>,
) -> Result<()> {
    let input = load(args)?;
    let eig = eigendecompose(&input.graph)?;
    let [a, b] = schemes.map(|s| subgraph_centrality(&eig, s, beta, form, true));
    let (a, b) = (a?, b?);

    if table {
        let (ra, rb) = (descending_ranks(&a.values), descending_ranks(&b.values));
        for p in 0..a.len() {
            let (value_a, log_value_a) = columns(a.values[p]);
            let (value_b, log_value_b) = columns(b.values[p]);
            out.row(&CompareTableRow {
                node: input.labels.label(p),
                value_a,
                log_value_a,
                rank_a: ra[p],
                value_b,
                log_value_b,
                rank_b: rb[p],
            })?;
        }
        return Ok(());
    }

    let (rho, degenerate) = match spearman(&a.values, &b.values) {
        Ok(r) => (Some(r), false),
        Err(Error::Degenerate(_)) => {
            eprintln!("dfwalk: spearman undefined, every node ties under at least one scheme");
            (None, true)
        }
        Err(e) => return Err(e.into()),
    };
    let (la, lb) = (a.linear(), b.linear());
    let r = if la.iter().chain(&lb).all(|x| x.is_finite()) {
        pearson(&la, &lb).ok()
    } else {
        eprintln!("dfwalk: pearson omitted, some values exceed the floating-point range");
        None
    };
    let (pair_name, reversed) = match pair {
        Some([p, q]) => {
            let idx = |name: &str| {
                input
                    .labels
                    .index_of(name)
                    .ok_or_else(|| CliError::Config(format!("unknown node {name:?} in --pair")))
            };
            let (i, j) = (idx(p)?, idx(q)?);
            let order = |v: &[SignedLogValue]| v[i].partial_cmp(&v[j]);
            let (oa, ob) = (order(&a.values), order(&b.values));
            let reversed = matches!(
                (oa, ob),
                (Some(x), Some(y)) if x.is_ne() && y == x.reverse()
            );
            (Some(format!("{p};{q}")), Some(reversed))
        }
        _ => (None, None),
    };
    out.row(&CompareRow {
        scheme_a: schemes[0].tag(),
        scheme_b: schemes[1].tag(),
        beta,
        n: a.len(),
        spearman: rho,
        pearson: r,
        degenerate,
        pair: pair_name,
        pair_reversed: reversed,
    })?;
    Ok(())
}

#[derive(Serialize)]
struct ProfileRow {
    k: u32,
    scheme: String,
    sign: i8,
    log10_value: Option<f64>,
}

fn profile<W: Write>(
    out: &mut Emitter<W>,
    args: &InputArgs,
    k_max: u32,
    schemes: &[WeightScheme],
) -> Result<()> {
    let input = load(args)?;
    let eig = eigendecompose(&input.graph)?;
    for &scheme in schemes {
        let values = walk_decay_profile(&eig, scheme, k_max)?;
        for (k, v) in (1..).zip(values) {
            out.row(&ProfileRow {
                k,
                scheme: scheme.tag(),
                sign: v.sign(),
                log10_value: (!v.is_zero()).then(|| v.log10_mag()),
            })?;
        }
    }
    Ok(())
}

#[derive(Serialize)]
struct GraphRow {
    graph6: String,
    n: usize,
    m: usize,
    ee: Option<f64>,
    log_ee: Option<f64>,
    gamma: Option<f64>,
    log_gamma: Option<f64>,
    avg_clustering: f64,
    transitivity: f64,
    triangles: u64,
}

fn enumerate_stats<W: Write>(
    out: &mut Emitter<W>,
    graphs: &[Graph],
    beta: f64,
    form: DfForm,
    exec: Execution,
) -> Result<()> {
    let rows = exec.map(graphs, |g| -> std::result::Result<GraphRow, Error> {
        let vals = dfwalk::spectral::eigenvalues(g)?;
        let ee =
            dfwalk::indices::estrada_from_spectrum(&vals, WeightScheme::Factorial, beta, form)?;
        let gamma = dfwalk::indices::estrada_from_spectrum(
            &vals,
            WeightScheme::DoubleFactorial,
            beta,
            form,
        )?;
        let (ee, log_ee) = columns(ee);
        let (gamma, log_gamma) = columns(gamma);
        let c = g.clustering();
        Ok(GraphRow {
            graph6: graph6::encode(g),
            n: g.n(),
            m: g.m(),
            ee,
            log_ee,
            gamma,
            log_gamma,
            avg_clustering: c.watts_strogatz_avg,
            transitivity: c.transitivity,
            triangles: c.triangle_count,
        })
    });
    for row in rows {
        out.row(&row?)?;
    }
    Ok(())
}

fn parse_grid(spec: &str) -> Result<Vec<f64>> {
    let bad = || CliError::Config(format!("invalid --grid {spec:?}"));
    let num = |s: &str| s.trim().parse::<f64>().map_err(|_| bad());
    let parts: Vec<&str> = spec.split(':').collect();
    match parts.as_slice() {
        [start, stop, step] => {
            let (start, stop, step) = (num(start)?, num(stop)?, num(step)?);
            if !(step > 0.0 && stop >= start && start.is_finite() && stop.is_finite()) {
                return Err(bad());
            }
            let count = ((stop - start) / step + 1e-9).floor() as usize + 1;
            // Round away the accumulated representation error: 0.18, not 0.18000000000000002.
            Ok((0..count)
                .map(|i| ((start + i as f64 * step) * 1e12).round() / 1e12)
                .collect())
        }
        [_] => spec.split(',').map(num).collect(),
        _ => Err(bad()),
    }
}

#[derive(Serialize)]
struct ScanRow {
    beta: f64,
    hits: Option<f64>,
}

#[derive(Serialize)]
struct ScanSummary {
    scheme: String,
    fraction: f64,
    peak: Option<f64>,
    argmax_min: Option<f64>,
    argmax_max: Option<f64>,
    argmax: String,
}

#[allow(clippy::too_many_arguments)]
fn scan<W: Write>(
    out: &mut Emitter<W>,
    input: &Input,
    scheme: WeightScheme,
    form: DfForm,
    labels: Vec<bool>,
    fraction: f64,
    grid: &[f64],
    summary: bool,
    exec: Execution,
) -> Result<()> {
    let eig = eigendecompose(&input.graph)?;
    let metric = ScanMetric::TopFraction { labels, fraction };
    let result = beta_scan_spectrum(&eig, scheme, grid, &metric, form, exec)?;
    let argmax: Vec<String> = result.argmax.iter().map(|b| b.to_string()).collect();
    match result.peak() {
        Some(p) => eprintln!("dfwalk: peak {p} hits at beta in {{{}}}", argmax.join(", ")),
        None => eprintln!("dfwalk: every grid point is degenerate (all nodes tie)"),
    }
    if summary {
        out.row(&ScanSummary {
            scheme: scheme.tag(),
            fraction,
            peak: result.peak(),
            argmax_min: result.argmax.first().copied(),
            argmax_max: result.argmax.last().copied(),
            argmax: argmax.join(";"),
        })?;
    } else {
        for (&beta, &hits) in result.grid.iter().zip(&result.metrics) {
            out.row(&ScanRow { beta, hits })?;
        }
    }
    Ok(())
}

fn read_scores(source: impl BufRead, nodes: &NodeLabelMap) -> Result<Vec<f64>> {
    let mut scores = vec![None; nodes.len()];
    for (i, line) in source.lines().enumerate() {
        let lineno = i + 1;
        let bad = |m: String| CliError::Input(format!("scores line {lineno}: {m}"));
        let line = line.map_err(|e| bad(e.to_string()))?;
        if line.trim().is_empty() || line.starts_with('#') {
            continue;
        }
        let (id, value) = line
            .split_once('\t')
            .ok_or_else(|| bad("expected node_id<TAB>score".into()))?;
        let p = nodes
            .index_of(id.trim())
            .ok_or_else(|| bad(format!("unknown node {id:?}")))?;
        let v: f64 = value
            .trim()
            .parse()
            .map_err(|_| bad(format!("invalid score {value:?}")))?;
        scores[p] = Some(v);
    }
    scores
        .into_iter()
        .enumerate()
        .map(|(p, s)| {
            s.ok_or_else(|| CliError::Input(format!("no score for node {}", nodes.label(p))))
        })
        .collect()
}

#[derive(Serialize)]
struct RocRow {
    fpr: f64,
    tpr: f64,
}

#[derive(Serialize)]
struct RocSummary {
    auc: f64,
    positives: usize,
    negatives: usize,
}

fn roc<W: Write>(
    out: &mut Emitter<W>,
    args: &InputArgs,
    weights: &WeightArgs,
    labels: &Path,
    scores: Option<&Path>,
    summary: bool,
) -> Result<()> {
    let input = load(args)?;
    let labels = read_labels(open(labels)?, &input.labels)?;
    let result = match scores {
        Some(path) => roc_auc(&read_scores(open(path)?, &input.labels)?, &labels)?,
        None => roc_auc(&centralities(&input, weights)?.values, &labels)?,
    };
    eprintln!("dfwalk: AUC = {}", result.auc);
    if summary {
        let positives = labels.iter().filter(|&&l| l).count();
        out.row(&RocSummary {
            auc: result.auc,
            positives,
            negatives: labels.len() - positives,
        })?;
    } else {
        for p in &result.curve {
            out.row(&RocRow {
                fpr: p.fpr,
                tpr: p.tpr,
            })?;
        }
    }
    Ok(())
}
