//! Rank and classification statistics for comparing centrality variants,
//! plus the β-grid scan.
//!
//! Conventions: Spearman ties take average ranks, ROC ties contribute half
//! weight, and top-fraction ties are broken by ascending node index. Scores
//! within a relative [`TIE_TOLERANCE`] of each other are ties.

use std::cmp::Ordering;
use std::io::BufRead;

use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::graph::{Graph, NodeLabelMap};
use crate::indices::subgraph_centrality;
use crate::spectral::{eigendecompose, EigenDecomposition};
use crate::walkfn::{DfForm, SignedLogValue, WeightScheme};

/// Scores with optional binary labels of the same length.
#[derive(Debug, Clone)]
pub struct RankedScores<T> {
    scores: Vec<T>,
    labels: Option<Vec<bool>>,
}

impl<T: RankKey> RankedScores<T> {
    pub fn new(scores: Vec<T>, labels: Option<Vec<bool>>) -> Result<Self> {
        if let Some(l) = &labels {
            check_lengths(scores.len(), l.len())?;
        }
        Ok(Self { scores, labels })
    }

    pub fn scores(&self) -> &[T] {
        &self.scores
    }

    pub fn labels(&self) -> Option<&[bool]> {
        self.labels.as_deref()
    }

    /// Item indices ordered by descending score, ties by ascending index.
    pub fn order(&self) -> Vec<usize> {
        descending_order(&self.scores)
    }
}

fn check_lengths(left: usize, right: usize) -> Result<()> {
    if left != right {
        return Err(Error::LengthMismatch { left, right });
    }
    Ok(())
}

/// Relative gap below which two scores count as tied. Spectrally computed
/// centralities of symmetric nodes agree only to rounding.
pub const TIE_TOLERANCE: f64 = 1e-10;

/// Orderable scores with a notion of numerical ties.
pub trait RankKey: PartialOrd + Copy {
    fn ties(&self, other: &Self) -> bool;
}

impl RankKey for f64 {
    fn ties(&self, other: &Self) -> bool {
        self == other || (self - other).abs() <= TIE_TOLERANCE * self.abs().max(other.abs())
    }
}

impl RankKey for SignedLogValue {
    fn ties(&self, other: &Self) -> bool {
        self == other
            || (self.sign() == other.sign()
                && (self.log_mag() - other.log_mag()).abs() <= TIE_TOLERANCE)
    }
}

macro_rules! exact_rank_key {
    ($($t:ty),*) => {$(
        impl RankKey for $t {
            fn ties(&self, other: &Self) -> bool {
                self == other
            }
        }
    )*};
}
exact_rank_key!(i32, i64, u32, u64, usize);

fn cmp<T: PartialOrd>(a: &T, b: &T) -> Ordering {
    a.partial_cmp(b).unwrap_or(Ordering::Equal)
}

// NaN is the only value not comparable with itself.
#[allow(clippy::eq_op)]
fn check_comparable<T: PartialOrd>(xs: &[T]) -> Result<()> {
    if xs.iter().any(|x| x.partial_cmp(x).is_none()) {
        return Err(Error::invalid("scores contain NaN"));
    }
    Ok(())
}

/// Indices grouped into ties, groups by ascending value, each group by
/// ascending index. A group holds the values tying with its smallest member.
fn tie_groups<T: RankKey>(xs: &[T]) -> Vec<Vec<usize>> {
    let mut idx: Vec<usize> = (0..xs.len()).collect();
    idx.sort_by(|&a, &b| cmp(&xs[a], &xs[b]));
    let mut groups: Vec<Vec<usize>> = Vec::new();
    for i in idx {
        match groups.last_mut() {
            Some(g) if xs[g[0]].ties(&xs[i]) => g.push(i),
            _ => groups.push(vec![i]),
        }
    }
    for g in &mut groups {
        g.sort_unstable();
    }
    groups
}

fn descending_order<T: RankKey>(xs: &[T]) -> Vec<usize> {
    tie_groups(xs).into_iter().rev().flatten().collect()
}

/// 1-based ranks, ties sharing the mean of the positions they span.
pub fn average_ranks<T: RankKey>(xs: &[T]) -> Vec<f64> {
    let mut ranks = vec![0.0; xs.len()];
    let mut start = 0;
    for g in tie_groups(xs) {
        let end = start + g.len();
        let rank = (start + end + 1) as f64 / 2.0;
        for i in g {
            ranks[i] = rank;
        }
        start = end;
    }
    ranks
}

fn correlation(xs: &[f64], ys: &[f64]) -> Result<f64> {
    check_lengths(xs.len(), ys.len())?;
    if xs.len() < 2 {
        return Err(Error::invalid("correlation needs at least two items"));
    }
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let (mut sxy, mut sxx, mut syy) = (0.0, 0.0, 0.0);
    for (&x, &y) in xs.iter().zip(ys) {
        let (dx, dy) = (x - mx, y - my);
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if sxx == 0.0 || syy == 0.0 {
        return Err(Error::Degenerate(
            "correlation undefined for a constant sequence".into(),
        ));
    }
    Ok((sxy / (sxx * syy).sqrt()).clamp(-1.0, 1.0))
}

/// Spearman rank correlation with average ranks for ties.
pub fn spearman<T: RankKey>(xs: &[T], ys: &[T]) -> Result<f64> {
    check_lengths(xs.len(), ys.len())?;
    check_comparable(xs)?;
    check_comparable(ys)?;
    correlation(&average_ranks(xs), &average_ranks(ys))
}

/// Pearson product-moment correlation.
pub fn pearson(xs: &[f64], ys: &[f64]) -> Result<f64> {
    if xs.iter().chain(ys).any(|v| !v.is_finite()) {
        return Err(Error::invalid("pearson needs finite values"));
    }
    correlation(xs, ys)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RocPoint {
    pub fpr: f64,
    pub tpr: f64,
}

#[derive(Debug, Clone)]
pub struct Roc {
    pub curve: Vec<RocPoint>,
    pub auc: f64,
}

/// ROC curve from a descending threshold sweep. Each group of tied scores
/// moves the curve diagonally, so ties count half in the trapezoid area.
pub fn roc_auc<T: RankKey>(scores: &[T], labels: &[bool]) -> Result<Roc> {
    check_lengths(scores.len(), labels.len())?;
    check_comparable(scores)?;
    let pos = labels.iter().filter(|&&l| l).count();
    let neg = labels.len() - pos;
    if pos == 0 || neg == 0 {
        return Err(Error::Degenerate(
            "ROC needs both positive and negative labels".into(),
        ));
    }
    let mut curve = vec![RocPoint { fpr: 0.0, tpr: 0.0 }];
    let (mut tp, mut fp) = (0usize, 0usize);
    let mut auc2 = 0u128; // twice the area, in units of 1/(pos*neg)
    for group in tie_groups(scores).into_iter().rev() {
        let (prev_tp, prev_fp) = (tp, fp);
        let hits = group.iter().filter(|&&i| labels[i]).count();
        tp += hits;
        fp += group.len() - hits;
        auc2 += ((fp - prev_fp) * (tp + prev_tp)) as u128;
        curve.push(RocPoint {
            fpr: fp as f64 / neg as f64,
            tpr: tp as f64 / pos as f64,
        });
    }
    let auc = auc2 as f64 / (2.0 * pos as f64 * neg as f64);
    Ok(Roc { curve, auc })
}

/// Items the top `ceil(fraction * n)` places would hold.
pub fn top_count(n: usize, fraction: f64) -> Result<usize> {
    if !(fraction > 0.0 && fraction <= 1.0) {
        return Err(Error::invalid(format!(
            "fraction must lie in (0, 1], got {fraction}"
        )));
    }
    // Absorb representation error so that 0.07 * 100 gives 7, not 8.
    let k = (fraction * n as f64 * (1.0 - 1e-12)).ceil() as usize;
    Ok(k.min(n))
}

/// Positives among the top `ceil(fraction * n)` items by descending score.
pub fn top_fraction_hits<T: RankKey>(
    scores: &[T],
    labels: &[bool],
    fraction: f64,
) -> Result<usize> {
    check_lengths(scores.len(), labels.len())?;
    check_comparable(scores)?;
    let k = top_count(scores.len(), fraction)?;
    Ok(descending_order(scores)
        .into_iter()
        .take(k)
        .filter(|&i| labels[i])
        .count())
}

/// What to evaluate at each grid point.
#[derive(Debug, Clone)]
pub enum ScanMetric {
    TopFraction { labels: Vec<bool>, fraction: f64 },
    SpearmanVs { scores: Vec<f64> },
}

#[derive(Debug, Clone)]
pub struct BetaScanResult {
    pub grid: Vec<f64>,
    /// `None` where the metric is undefined because every node ties.
    pub metrics: Vec<Option<f64>>,
    /// Grid points attaining the maximum metric.
    pub argmax: Vec<f64>,
}

impl BetaScanResult {
    pub fn peak(&self) -> Option<f64> {
        self.metrics.iter().flatten().copied().reduce(f64::max)
    }
}

fn validate_grid(grid: &[f64]) -> Result<()> {
    if grid.is_empty() {
        return Err(Error::invalid("beta grid is empty"));
    }
    if grid.iter().any(|b| !b.is_finite()) {
        return Err(Error::invalid("beta grid contains non-finite values"));
    }
    if grid.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::invalid("beta grid must be strictly increasing"));
    }
    Ok(())
}

/// Evaluates `metric` on the subgraph centralities at every β of `grid`.
pub fn beta_scan(
    g: &Graph,
    scheme: WeightScheme,
    grid: &[f64],
    metric: &ScanMetric,
    form: DfForm,
    exec: Execution,
) -> Result<BetaScanResult> {
    validate_grid(grid)?;
    let eig = eigendecompose(g)?;
    beta_scan_spectrum(&eig, scheme, grid, metric, form, exec)
}

/// As [`beta_scan`], reusing an existing decomposition.
pub fn beta_scan_spectrum(
    eig: &EigenDecomposition,
    scheme: WeightScheme,
    grid: &[f64],
    metric: &ScanMetric,
    form: DfForm,
    exec: Execution,
) -> Result<BetaScanResult> {
    validate_grid(grid)?;
    let n = eig.n();
    match metric {
        ScanMetric::TopFraction { labels, fraction } => {
            check_lengths(n, labels.len())?;
            top_count(n, *fraction)?;
        }
        ScanMetric::SpearmanVs { scores } => check_lengths(n, scores.len())?,
    }

    let metrics = exec
        .map(grid, |&beta| -> Result<Option<f64>> {
            let c = subgraph_centrality(eig, scheme, beta, form, true)?;
            if all_tied(&c.values) {
                return Ok(None);
            }
            Ok(Some(match metric {
                ScanMetric::TopFraction { labels, fraction } => {
                    top_fraction_hits(&c.values, labels, *fraction)? as f64
                }
                ScanMetric::SpearmanVs { scores } => {
                    let ranks = average_ranks(&c.values);
                    match spearman(&ranks, &average_ranks(scores)) {
                        Err(Error::Degenerate(_)) => return Ok(None),
                        other => other?,
                    }
                }
            }))
        })
        .into_iter()
        .collect::<Result<Vec<_>>>()?;

    let peak = metrics.iter().flatten().copied().reduce(f64::max);
    let argmax = grid
        .iter()
        .zip(&metrics)
        .filter(|(_, m)| peak.is_some() && **m == peak)
        .map(|(&b, _)| b)
        .collect();
    Ok(BetaScanResult {
        grid: grid.to_vec(),
        metrics,
        argmax,
    })
}

fn all_tied(values: &[SignedLogValue]) -> bool {
    tie_groups(values).len() <= 1
}

/// Degree and unit-norm Perron vector.
#[derive(Debug, Clone)]
pub struct StructuralCentrality {
    pub degree: Vec<f64>,
    pub eigenvector: Vec<f64>,
}

pub fn degree_and_eigenvector_centrality(g: &Graph) -> Result<StructuralCentrality> {
    if !g.is_connected() {
        return Err(Error::Disconnected(
            "eigenvector centrality needs a connected graph".into(),
        ));
    }
    let degree = g.degrees().into_iter().map(|d| d as f64).collect();
    let eigenvector = if g.n() == 0 {
        Vec::new()
    } else {
        let eig = eigendecompose(g)?;
        (0..g.n()).map(|p| eig.component(0, p).abs()).collect()
    };
    Ok(StructuralCentrality {
        degree,
        eigenvector,
    })
}

/// Reads `node_id<TAB>0|1` lines. Nodes not listed are negative.
pub fn read_labels<R: BufRead>(source: R, nodes: &NodeLabelMap) -> Result<Vec<bool>> {
    let mut labels = vec![false; nodes.len()];
    let mut seen = vec![false; nodes.len()];
    for (i, line) in source.lines().enumerate() {
        let lineno = i + 1;
        let line = line.map_err(|e| Error::parse_line(lineno, e.to_string()))?;
        let line = line.trim_end_matches(['\r', '\n']);
        if line.trim().is_empty() || line.starts_with('#') {
            continue;
        }
        let (id, flag) = line
            .split_once('\t')
            .ok_or_else(|| Error::parse_line(lineno, "expected node_id<TAB>0|1"))?;
        let p = nodes
            .index_of(id.trim())
            .ok_or_else(|| Error::parse_line(lineno, format!("unknown node {id:?}")))?;
        if seen[p] {
            return Err(Error::parse_line(
                lineno,
                format!("node {id:?} labelled twice"),
            ));
        }
        seen[p] = true;
        labels[p] = match flag.trim() {
            "1" => true,
            "0" => false,
            other => {
                return Err(Error::parse_line(
                    lineno,
                    format!("label must be 0 or 1, got {other:?}"),
                ))
            }
        };
    }
    Ok(labels)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{generate, GraphKind};
    use proptest::prelude::*;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    #[test]
    fn spearman_examples() {
        assert_eq!(spearman(&[1.0, 2.0, 3.0], &[1.0, 2.0, 3.0]).unwrap(), 1.0);
        assert_eq!(spearman(&[1.0, 2.0, 3.0], &[3.0, 2.0, 1.0]).unwrap(), -1.0);
        // 1 - 6 * sum(d^2) / (n (n^2 - 1)) = 1 - 6 * 2 / 24
        assert!(close(
            spearman(&[1.0, 2.0, 3.0], &[1.0, 3.0, 2.0]).unwrap(),
            0.5,
            1e-15
        ));
        assert!(matches!(
            spearman(&[1.0, 1.0, 1.0], &[1.0, 2.0, 3.0]),
            Err(Error::Degenerate(_))
        ));
        assert!(matches!(
            spearman(&[1.0, 2.0], &[1.0, 2.0, 3.0]),
            Err(Error::LengthMismatch { left: 2, right: 3 })
        ));
        assert!(spearman(&[1.0], &[1.0]).is_err());
        assert!(spearman(&[1.0, f64::NAN], &[1.0, 2.0]).is_err());
    }

    #[test]
    fn average_ranks_share_ties() {
        assert_eq!(average_ranks(&[10, 20, 20, 5]), vec![2.0, 3.5, 3.5, 1.0]);
        let near = [1.0, 1.0 + 1e-13, 2.0, 1.0 - 1e-13];
        assert_eq!(average_ranks(&near), vec![2.0, 2.0, 4.0, 2.0]);
        assert_eq!(average_ranks(&[1.0, 1.0 + 1e-6]), vec![1.0, 2.0]);
    }

    #[test]
    fn symmetric_nodes_tie_despite_rounding() {
        let g = generate(GraphKind::Complete(9)).unwrap();
        let eig = eigendecompose(&g).unwrap();
        let c = |s| {
            subgraph_centrality(&eig, s, 1.0, DfForm::Tanh, true)
                .unwrap()
                .values
        };
        assert!(matches!(
            spearman(
                &c(WeightScheme::Factorial),
                &c(WeightScheme::DoubleFactorial)
            ),
            Err(Error::Degenerate(_))
        ));
        let cycle = generate(GraphKind::Cycle(7)).unwrap();
        let eig = eigendecompose(&cycle).unwrap();
        let v = subgraph_centrality(&eig, WeightScheme::Factorial, 1.0, DfForm::Tanh, true)
            .unwrap()
            .values;
        assert!(all_tied(&v));
    }

    #[test]
    fn pearson_examples() {
        let xs = [0.0, 1.0, 2.0];
        assert_eq!(pearson(&xs, &xs).unwrap(), 1.0);
        let neg: Vec<f64> = xs.iter().map(|x| -2.0 * x).collect();
        assert_eq!(pearson(&xs, &neg).unwrap(), -1.0);
        // sxy = 4, sxx = 2, syy = 26/3
        let want = 4.0 / (2.0f64 * 26.0 / 3.0).sqrt();
        let got = pearson(&xs, &[0.0, 1.0, 4.0]).unwrap();
        assert!(close(got, want, 1e-15), "{got} vs {want}");
        assert!(close(got, 0.9608, 5e-5));
    }

    #[test]
    fn roc_examples() {
        let r = roc_auc(&[0.9, 0.8, 0.7, 0.6], &[true, false, true, false]).unwrap();
        assert_eq!(r.auc, 0.75);
        assert_eq!(r.curve.first(), Some(&RocPoint { fpr: 0.0, tpr: 0.0 }));
        assert_eq!(r.curve.last(), Some(&RocPoint { fpr: 1.0, tpr: 1.0 }));

        let r = roc_auc(&[4.0, 3.0, 2.0, 1.0], &[true, true, false, false]).unwrap();
        assert_eq!(r.auc, 1.0);
        let r = roc_auc(&[1.0, 2.0, 3.0, 4.0], &[true, true, false, false]).unwrap();
        assert_eq!(r.auc, 0.0);
        let r = roc_auc(&[1.0; 5], &[true, false, true, false, false]).unwrap();
        assert_eq!(r.auc, 0.5);
        assert_eq!(r.curve.len(), 2);

        assert!(roc_auc(&[1.0, 2.0], &[true, true]).is_err());
    }

    fn auc_by_pairs(scores: &[f64], labels: &[bool]) -> f64 {
        let mut s = 0.0;
        let mut pairs = 0.0;
        for (i, &li) in labels.iter().enumerate() {
            for (j, &lj) in labels.iter().enumerate() {
                if li && !lj {
                    pairs += 1.0;
                    s += match scores[i].partial_cmp(&scores[j]).unwrap() {
                        Ordering::Greater => 1.0,
                        Ordering::Equal => 0.5,
                        Ordering::Less => 0.0,
                    };
                }
            }
        }
        s / pairs
    }

    #[test]
    fn top_fraction_examples() {
        let scores: Vec<f64> = (0..100).map(|i| 100.0 - i as f64).collect();
        let labels: Vec<bool> = (0..100).map(|i| i < 10).collect();
        assert_eq!(top_fraction_hits(&scores, &labels, 0.1).unwrap(), 10);
        assert_eq!(top_fraction_hits(&scores, &[false; 100], 0.1).unwrap(), 0);
        assert_eq!(top_count(100, 0.07).unwrap(), 7);
        assert_eq!(top_count(7, 0.1).unwrap(), 1);
        assert_eq!(top_count(3, 1.0).unwrap(), 3);
        assert!(top_count(3, 0.0).is_err());
        // ties resolved by ascending index
        assert_eq!(
            top_fraction_hits(&[1.0, 1.0, 1.0], &[false, true, true], 0.34).unwrap(),
            1
        );
        assert_eq!(
            top_fraction_hits(&[1.0, 1.0, 1.0], &[true, false, false], 0.34).unwrap(),
            1
        );
    }

    #[test]
    fn structural_centralities() {
        let s = degree_and_eigenvector_centrality(&generate(GraphKind::Path(3)).unwrap()).unwrap();
        assert_eq!(s.degree, vec![1.0, 2.0, 1.0]);
        let want = [0.5, std::f64::consts::FRAC_1_SQRT_2, 0.5];
        for (a, b) in s.eigenvector.iter().zip(want) {
            assert!(close(*a, b, 1e-14));
        }

        let s =
            degree_and_eigenvector_centrality(&generate(GraphKind::Complete(6)).unwrap()).unwrap();
        assert!(s.degree.iter().all(|&d| d == 5.0));
        assert!(s
            .eigenvector
            .iter()
            .all(|&x| close(x, 1.0 / 6f64.sqrt(), 1e-14)));

        let s = degree_and_eigenvector_centrality(&generate(GraphKind::Star(5)).unwrap()).unwrap();
        assert_eq!(s.degree[0], 4.0);

        let g = Graph::from_edges(4, [(0, 1), (2, 3)]).unwrap();
        assert!(matches!(
            degree_and_eigenvector_centrality(&g),
            Err(Error::Disconnected(_))
        ));
    }

    #[test]
    fn scan_constant_metric_spans_grid() {
        let g = generate(GraphKind::Star(6)).unwrap();
        let labels = vec![true, false, false, false, false, false];
        let metric = ScanMetric::TopFraction {
            labels,
            fraction: 0.1,
        };
        let grid: Vec<f64> = (1..=20).map(|i| i as f64 * 0.05).collect();
        for scheme in [WeightScheme::Factorial, WeightScheme::DoubleFactorial] {
            let r = beta_scan(
                &g,
                scheme,
                &grid,
                &metric,
                DfForm::Tanh,
                Execution::Sequential,
            )
            .unwrap();
            assert!(r.metrics.iter().all(|m| *m == Some(1.0)));
            assert_eq!(r.argmax, grid);
        }
    }

    #[test]
    fn scan_at_zero_is_degenerate() {
        let g = generate(GraphKind::Path(5)).unwrap();
        let metric = ScanMetric::SpearmanVs {
            scores: vec![1.0, 2.0, 3.0, 2.0, 1.0],
        };
        let r = beta_scan(
            &g,
            WeightScheme::DoubleFactorial,
            &[0.0],
            &metric,
            DfForm::Tanh,
            Execution::Sequential,
        )
        .unwrap();
        assert_eq!(r.metrics, vec![None]);
        assert!(r.argmax.is_empty());
        assert_eq!(r.peak(), None);
    }

    #[test]
    fn scan_rejects_bad_grids() {
        let g = generate(GraphKind::Path(4)).unwrap();
        let metric = ScanMetric::SpearmanVs {
            scores: vec![0.0; 4],
        };
        for grid in [&[][..], &[0.2, 0.1], &[0.1, 0.1], &[f64::NAN]] {
            assert!(beta_scan(
                &g,
                WeightScheme::Factorial,
                grid,
                &metric,
                DfForm::Tanh,
                Execution::Sequential
            )
            .is_err());
        }
    }

    #[test]
    fn scan_modes_agree() {
        let g = generate(GraphKind::ErdosRenyi {
            n: 30,
            p: 0.15,
            seed: 3,
        })
        .unwrap();
        let labels: Vec<bool> = (0..30).map(|i| i % 4 == 0).collect();
        let metric = ScanMetric::TopFraction {
            labels,
            fraction: 0.2,
        };
        let grid: Vec<f64> = (0..=100).map(|i| i as f64 * 0.01).collect();
        let a = beta_scan(
            &g,
            WeightScheme::DoubleFactorial,
            &grid,
            &metric,
            DfForm::Tanh,
            Execution::Sequential,
        )
        .unwrap();
        let b = beta_scan(
            &g,
            WeightScheme::DoubleFactorial,
            &grid,
            &metric,
            DfForm::Tanh,
            Execution::Parallel,
        )
        .unwrap();
        assert_eq!(a.metrics, b.metrics);
        assert_eq!(a.argmax, b.argmax);
    }

    #[test]
    fn large_beta_ranking_follows_perron_vector() {
        let g = generate(GraphKind::ErdosRenyi {
            n: 25,
            p: 0.2,
            seed: 11,
        })
        .unwrap();
        assert!(g.is_connected());
        let eig = eigendecompose(&g).unwrap();
        let psi2: Vec<f64> = (0..25).map(|p| eig.component(0, p).powi(2)).collect();
        let c = subgraph_centrality(
            &eig,
            WeightScheme::DoubleFactorial,
            60.0,
            DfForm::Tanh,
            true,
        )
        .unwrap();
        // Automorphic nodes share psi^2 up to rounding; only separated pairs count.
        for p in 0..25 {
            for q in 0..25 {
                if psi2[p] > psi2[q] * (1.0 + 1e-9) {
                    assert!(c.values[p] > c.values[q], "{p} {q}");
                }
            }
        }
    }

    #[test]
    fn labels_file() {
        let nodes = NodeLabelMap::new(vec!["a".into(), "b".into(), "c".into()]).unwrap();
        let got = read_labels("a\t1\n\n# x\nc\t0\nb\t1\n".as_bytes(), &nodes).unwrap();
        assert_eq!(got, vec![true, true, false]);
        assert!(read_labels("a\t1\na\t0\n".as_bytes(), &nodes).is_err());
        assert!(read_labels("z\t1\n".as_bytes(), &nodes).is_err());
        assert!(read_labels("a\t2\n".as_bytes(), &nodes).is_err());
        assert!(matches!(
            read_labels("a 1\n".as_bytes(), &nodes),
            Err(Error::Parse { .. })
        ));
    }

    #[test]
    fn log_scores_rank_like_linear() {
        let xs = [3.0, -1.0, 0.0, 2.5, 1e-300];
        let logs: Vec<SignedLogValue> = xs.iter().map(|&x| SignedLogValue::from_f64(x)).collect();
        assert_eq!(average_ranks(&logs), average_ranks(&xs));
    }

    proptest! {
        #[test]
        fn spearman_monotone_invariance(xs in prop::collection::vec(-1e3f64..1e3, 3..30),
                                        ys in prop::collection::vec(-1e3f64..1e3, 30)) {
            let ys = &ys[..xs.len()];
            if let Ok(r) = spearman(&xs, ys) {
                let tx: Vec<f64> = xs.iter().map(|x| x.powi(3) + 5.0 * x).collect();
                let ty: Vec<f64> = ys.iter().map(|y| (y / 100.0).exp()).collect();
                prop_assert!((spearman(&tx, &ty).unwrap() - r).abs() < 1e-12);
                prop_assert!((-1.0..=1.0).contains(&r));
            }
        }

        #[test]
        fn auc_matches_pair_count(scores in prop::collection::vec(0u8..8, 2..40),
                                  labels in prop::collection::vec(any::<bool>(), 40)) {
            let labels = &labels[..scores.len()];
            let scores: Vec<f64> = scores.iter().map(|&s| s as f64).collect();
            if let Ok(r) = roc_auc(&scores, labels) {
                prop_assert!((r.auc - auc_by_pairs(&scores, labels)).abs() < 1e-12);
                let shifted: Vec<f64> = scores.iter().map(|s| (s * 0.5).exp()).collect();
                prop_assert!((roc_auc(&shifted, labels).unwrap().auc - r.auc).abs() < 1e-12);
            }
        }

        #[test]
        fn auc_complement(scores in prop::collection::hash_set(-10_000i32..10_000, 2..30),
                          labels in prop::collection::vec(any::<bool>(), 30)) {
            let scores: Vec<f64> = scores.into_iter().map(f64::from).collect();
            let labels = &labels[..scores.len()];
            if let Ok(r) = roc_auc(&scores, labels) {
                let neg: Vec<f64> = scores.iter().map(|s| -s).collect();
                prop_assert!((r.auc + roc_auc(&neg, labels).unwrap().auc - 1.0).abs() < 1e-12);
            }
        }
    }
}
