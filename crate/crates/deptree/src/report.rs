//! Per-sentence analysis and per-length aggregation.

use std::collections::BTreeMap;

use deptree_core::bounds::Violation;
use deptree_core::{
    crossing_count, degree_stats, length_stats, BoundsError, BoundsReport, CrossingStats,
    DegreeStats, LengthStats, LinearArrangement, Rational, Tree,
};

use crate::conllu::SentenceRecord;

/// Every statistic and bound for one sentence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SentenceReport {
    pub sent_id: String,
    pub n: usize,
    pub degrees: DegreeStats,
    pub lengths: LengthStats,
    pub crossings: CrossingStats,
    pub bounds: BoundsReport,
}

impl SentenceReport {
    pub fn mean_d(&self) -> Rational {
        self.lengths.mean_d.expect("reports have n >= 2")
    }

    pub fn mean_d2(&self) -> Rational {
        self.lengths.mean_d2.expect("reports have n >= 2")
    }

    /// Bound relations that fail on this sentence; empty for real data.
    pub fn violations(&self) -> Vec<Violation> {
        self.bounds.violations(&self.lengths, &self.crossings)
    }
}

/// Analyzes `tree` under `arr`. Needs `n >= 2`.
pub fn analyze_tree(
    sent_id: &str,
    tree: &Tree,
    arr: &LinearArrangement,
) -> Result<SentenceReport, BoundsError> {
    let degrees = degree_stats(tree);
    let lengths = length_stats(tree, arr)?;
    let crossings = crossing_count(tree, arr)?;
    let bounds = BoundsReport::from_stats(&degrees, &lengths, &crossings)?;
    Ok(SentenceReport {
        sent_id: sent_id.to_string(),
        n: tree.n(),
        degrees,
        lengths,
        crossings,
        bounds,
    })
}

/// Analyzes a sentence in its own word order.
pub fn analyze_sentence(record: &SentenceRecord) -> Result<SentenceReport, BoundsError> {
    analyze_tree(
        &record.id,
        record.tree(),
        &LinearArrangement::identity(record.n()),
    )
}

/// One report per record with at least `min_n` tokens, in input order.
pub fn analyze_corpus<I>(records: I, min_n: usize) -> impl Iterator<Item = SentenceReport>
where
    I: IntoIterator<Item = SentenceRecord>,
{
    let min_n = min_n.max(2);
    records
        .into_iter()
        .filter(move |r| r.n() >= min_n)
        .map(|r| analyze_sentence(&r).expect("n >= 2 and identity arrangement"))
}

#[derive(Debug, Clone, Default)]
struct LengthSums {
    sentences: u64,
    mean_d: Rational,
    mean_d2: Rational,
    var_k: Rational,
    mean_k2: Rational,
    crossings: u64,
    normalized_d: Rational,
}

/// Means over all sentences of one length.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LengthSummary {
    pub n: usize,
    pub sentences: u64,
    pub mean_d: Rational,
    pub mean_d2: Rational,
    pub var_k: Rational,
    pub mean_k2: Rational,
    pub crossings: Rational,
    /// Mean of `<d> / E[d]`.
    pub normalized_d: Rational,
}

/// Single-pass accumulator grouped by sentence length.
///
/// Within one length every statistic has a bounded denominator, so the sums
/// are kept exact.
#[derive(Debug, Clone, Default)]
pub struct LengthAggregator {
    by_n: BTreeMap<usize, LengthSums>,
}

impl LengthAggregator {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, report: &SentenceReport) {
        let s = self.by_n.entry(report.n).or_default();
        s.sentences += 1;
        s.mean_d += report.mean_d();
        s.mean_d2 += report.mean_d2();
        s.var_k += report.degrees.var_k;
        s.mean_k2 += report.degrees.mean_k2;
        s.crossings += report.crossings.crossings;
        s.normalized_d += report.mean_d() / report.bounds.expected_d;
    }

    /// Rows ordered by `n`.
    pub fn rows(&self) -> Vec<LengthSummary> {
        self.by_n
            .iter()
            .map(|(&n, s)| {
                let count = Rational::from_integer(s.sentences as i64);
                LengthSummary {
                    n,
                    sentences: s.sentences,
                    mean_d: s.mean_d / count,
                    mean_d2: s.mean_d2 / count,
                    var_k: s.var_k / count,
                    mean_k2: s.mean_k2 / count,
                    crossings: Rational::from_integer(s.crossings as i64) / count,
                    normalized_d: s.normalized_d / count,
                }
            })
            .collect()
    }
}

/// Aggregates a finished stream of reports.
pub fn aggregate_by_length<'a>(
    reports: impl IntoIterator<Item = &'a SentenceReport>,
) -> Vec<LengthSummary> {
    let mut agg = LengthAggregator::new();
    for r in reports {
        agg.add(r);
    }
    agg.rows()
}
