use std::fmt::Write;

use super::experiment::ReplicateRecord;
use super::histogram::BoundTable;

/// One row per replicate:
/// `replicate,stream,m,p_conservative,p_approximate,reject_conservative,reject_approximate`.
pub fn records_csv(records: &[ReplicateRecord]) -> String {
    let mut out = String::from(
        "replicate,stream,m,p_conservative,p_approximate,reject_conservative,reject_approximate\n",
    );
    for r in records {
        let o = &r.outcome;
        writeln!(
            out,
            "{},{},{},{},{},{},{}",
            r.replicate,
            r.stream,
            o.m,
            o.p_conservative,
            o.p_approximate,
            o.reject_conservative,
            o.reject_approximate
        )
        .expect("write to string");
    }
    out
}

pub fn bound_table_csv(table: &BoundTable) -> String {
    let mut out = String::from(
        "m,count,empirical,conservative_bound,conservative_slack,conservative_violated,approximate_bound,approximate_slack,approximate_violated\n",
    );
    for r in &table.rows {
        writeln!(
            out,
            "{},{},{},{},{},{},{},{},{}",
            r.m,
            r.count,
            r.empirical,
            r.conservative_bound,
            r.conservative_slack,
            r.conservative_violated,
            r.approximate_bound,
            r.approximate_slack,
            r.approximate_violated
        )
        .expect("write to string");
    }
    out
}
