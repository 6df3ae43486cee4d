//! Aggregation of result records into per-group medians.

use super::run::ResultRecord;
use crate::stats::{mad, median};

/// Median success probability of one `(method, params, n)` group.
#[derive(Debug, Clone, PartialEq)]
pub struct AggregateRow {
    pub method: String,
    pub params: String,
    pub n: usize,
    pub median: f64,
    pub mad: f64,
    pub count: usize,
}

/// Group records by `(method, params, n)` and compute the median success
/// probability and its median absolute deviation. Rows come out sorted by
/// the group key.
pub fn aggregate(records: &[ResultRecord]) -> Vec<AggregateRow> {
    let mut groups: std::collections::BTreeMap<(String, String, usize), Vec<f64>> =
        std::collections::BTreeMap::new();
    for record in records {
        groups
            .entry((record.method.clone(), record.params.clone(), record.n))
            .or_default()
            .push(record.success_prob);
    }
    groups
        .into_iter()
        .map(|((method, params, n), values)| AggregateRow {
            method,
            params,
            n,
            median: median(&values),
            mad: mad(&values),
            count: values.len(),
        })
        .collect()
}
