//! JSON and aligned-text renderings of verification and benchmark reports.

use dispersal::format_scaled;
use dispersal::harness::{heap_ops_bound, BenchReport, GenSpec, VerifyReport};
use serde_json::{json, Value};

fn spec_json(spec: &GenSpec) -> Value {
    json!({
        "seed": spec.seed.to_string(),
        "n": spec.n,
        "range": format_scaled(spec.coord_range, spec.digits),
        "delta": format_scaled(spec.delta, spec.digits),
        "family": spec.family.as_str(),
    })
}

pub fn verify_json(report: &VerifyReport) -> Value {
    let mismatches: Vec<Value> = report
        .mismatches
        .iter()
        .map(|m| {
            let cost = |c: Option<i128>| c.map(|c| format_scaled(c, m.spec.digits));
            json!({
                "index": m.index,
                "spec": spec_json(&m.spec),
                "solver_cost": cost(m.solver_cost),
                "oracle_cost": cost(m.oracle_cost),
                "problems": m.problems,
            })
        })
        .collect();
    json!({
        "oracle": report.oracle.as_str(),
        "checked": report.checked,
        "mismatches": mismatches,
    })
}

/// Left-aligns every column to its widest cell.
fn table(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = header.iter().map(|h| h.len()).collect();
    for row in rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.len());
        }
    }
    let line = |cells: Vec<&str>| {
        let padded: Vec<String> = cells.iter().zip(&widths).map(|(c, w)| format!("{c:<w$}")).collect();
        format!("{}\n", padded.join("  ").trim_end())
    };
    let mut s = line(header.to_vec());
    for row in rows {
        s.push_str(&line(row.iter().map(String::as_str).collect()));
    }
    s
}

pub fn verify_table(report: &VerifyReport) -> String {
    let mut s = format!(
        "oracle {}  checked {}  mismatches {}\n",
        report.oracle.as_str(),
        report.checked,
        report.mismatches.len()
    );
    if !report.mismatches.is_empty() {
        let rows: Vec<Vec<String>> = report
            .mismatches
            .iter()
            .map(|m| {
                let cost = |c: Option<i128>| c.map_or("-".into(), |c| format_scaled(c, m.spec.digits));
                vec![
                    m.index.to_string(),
                    m.spec.seed.to_string(),
                    m.spec.n.to_string(),
                    m.spec.family.to_string(),
                    format_scaled(m.spec.delta, m.spec.digits),
                    format_scaled(m.spec.coord_range, m.spec.digits),
                    cost(m.solver_cost),
                    cost(m.oracle_cost),
                    m.problems.join("; "),
                ]
            })
            .collect();
        s.push_str(&table(
            &["index", "seed", "n", "family", "delta", "range", "solver", "oracle", "problems"],
            &rows,
        ));
    }
    s
}

fn seconds(d: std::time::Duration) -> String {
    format!("{:.6}", d.as_secs_f64())
}

pub fn bench_json(report: &BenchReport) -> Value {
    let rows: Vec<Value> = report
        .rows
        .iter()
        .map(|r| {
            json!({
                "spec": spec_json(&r.spec),
                "n": r.spec.n,
                "family": r.spec.family.as_str(),
                "wall_time_fast": seconds(r.wall_fast),
                "wall_time_naive": r.wall_naive.map(seconds),
                "heap_ops": r.counters.heap_ops,
                "heap_ops_bound": format!("{:.1}", heap_ops_bound(r.spec.n)),
                "heap_comparisons": r.counters.heap_comparisons,
                "shifts": r.counters.shifts,
                "merges": r.counters.merges,
            })
        })
        .collect();
    json!({ "rows": rows })
}

pub fn bench_table(report: &BenchReport) -> String {
    let rows: Vec<Vec<String>> = report
        .rows
        .iter()
        .map(|r| {
            vec![
                r.spec.family.to_string(),
                r.spec.n.to_string(),
                seconds(r.wall_fast),
                r.wall_naive.map_or("-".into(), seconds),
                r.counters.heap_ops.to_string(),
                format!("{:.0}", heap_ops_bound(r.spec.n)),
                r.counters.heap_comparisons.to_string(),
                r.counters.shifts.to_string(),
                r.counters.merges.to_string(),
            ]
        })
        .collect();
    table(
        &["family", "n", "fast_s", "naive_s", "heap_ops", "bound", "heap_cmps", "shifts", "merges"],
        &rows,
    )
}
