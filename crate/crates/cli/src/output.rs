//! Per-checkpoint result rows as CSV or JSON, plus a plain-text summary.

use std::io::Write;

use robust_bandits::ExperimentReport;
use serde_json::{json, Map, Value};

use crate::error::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

pub const FIXED_COLUMNS: [&str; 9] = [
    "experiment_id",
    "seed",
    "checkpoint_t",
    "cum_regret",
    "cum_uncorrupted_regret",
    "cum_pseudo_regret_gap",
    "corruption_spent",
    "learner",
    "adversary",
];

#[derive(Debug, Clone, PartialEq)]
pub struct Row {
    pub experiment_id: String,
    pub seed: u64,
    pub checkpoint_t: u64,
    pub cum_regret: f64,
    pub cum_uncorrupted_regret: f64,
    pub cum_pseudo_regret_gap: f64,
    pub corruption_spent: f64,
    pub learner: String,
    pub adversary: String,
    pub arm_pulls: Vec<u64>,
}

/// Rounds to 12 significant digits. Rounding an already rounded value is a no-op.
pub fn round_sig(x: f64) -> f64 {
    if !x.is_finite() {
        return x;
    }
    let r: f64 = format!("{x:.11e}").parse().expect("formatted float parses");
    if r == 0.0 {
        0.0
    } else {
        r
    }
}

pub fn format_number(x: f64) -> String {
    format!("{}", round_sig(x))
}

/// One row per completed episode and checkpoint, in episode order.
pub fn rows(report: &ExperimentReport) -> Vec<Row> {
    let mut out = Vec::new();
    for outcome in &report.outcomes {
        let Some(result) = outcome.ok() else { continue };
        for cp in &result.series.checkpoints {
            out.push(Row {
                experiment_id: report.name.clone(),
                seed: outcome.episode,
                checkpoint_t: cp.t,
                cum_regret: cp.cum_regret,
                cum_uncorrupted_regret: cp.cum_uncorrupted_regret,
                cum_pseudo_regret_gap: cp.cum_pseudo_regret_gap,
                corruption_spent: cp.corruption_spent,
                learner: report.learner.clone(),
                adversary: report.adversary.clone(),
                arm_pulls: cp.arm_pulls.clone(),
            });
        }
    }
    out
}

pub fn header(num_arms: usize) -> Vec<String> {
    FIXED_COLUMNS
        .iter()
        .map(|c| c.to_string())
        .chain((0..num_arms).map(|i| format!("arm_pulls_{i}")))
        .collect()
}

pub fn write_csv<W: Write>(report: &ExperimentReport, num_arms: usize, out: W) -> csv::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(header(num_arms))?;
    for row in rows(report) {
        let mut record = vec![
            row.experiment_id,
            row.seed.to_string(),
            row.checkpoint_t.to_string(),
            format_number(row.cum_regret),
            format_number(row.cum_uncorrupted_regret),
            format_number(row.cum_pseudo_regret_gap),
            format_number(row.corruption_spent),
            row.learner,
            row.adversary,
        ];
        record.extend(row.arm_pulls.iter().map(u64::to_string));
        w.write_record(&record)?;
    }
    w.flush()?;
    Ok(())
}

fn round_floats(value: &mut Value) {
    match value {
        Value::Number(n) if !(n.is_u64() || n.is_i64()) => {
            if let Some(r) = n.as_f64().and_then(|f| serde_json::Number::from_f64(round_sig(f))) {
                *n = r;
            }
        }
        Value::Array(items) => items.iter_mut().for_each(round_floats),
        Value::Object(map) => map.values_mut().for_each(round_floats),
        _ => {}
    }
}

pub fn to_json(report: &ExperimentReport) -> Value {
    let rows: Vec<Value> = rows(report)
        .into_iter()
        .map(|row| {
            let mut m = Map::new();
            m.insert("experiment_id".into(), json!(row.experiment_id));
            m.insert("seed".into(), json!(row.seed));
            m.insert("checkpoint_t".into(), json!(row.checkpoint_t));
            m.insert("cum_regret".into(), json!(row.cum_regret));
            m.insert("cum_uncorrupted_regret".into(), json!(row.cum_uncorrupted_regret));
            m.insert("cum_pseudo_regret_gap".into(), json!(row.cum_pseudo_regret_gap));
            m.insert("corruption_spent".into(), json!(row.corruption_spent));
            m.insert("learner".into(), json!(row.learner));
            m.insert("adversary".into(), json!(row.adversary));
            for (i, n) in row.arm_pulls.iter().enumerate() {
                m.insert(format!("arm_pulls_{i}"), json!(n));
            }
            Value::Object(m)
        })
        .collect();
    let failures: Vec<Value> = report
        .outcomes
        .iter()
        .filter_map(|o| o.result.as_ref().err().map(|f| (o.episode, f)))
        .map(|(seed, f)| json!({ "seed": seed, "round": f.round, "reason": f.reason }))
        .collect();
    let mut value = json!({
        "experiment_id": report.name,
        "learner": report.learner,
        "adversary": report.adversary,
        "horizon": report.horizon,
        "rows": rows,
        "aggregates": report.aggregates,
        "events": report.events,
        "failures": failures,
    });
    round_floats(&mut value);
    value
}

pub fn write_json<W: Write>(report: &ExperimentReport, mut out: W) -> std::io::Result<()> {
    serde_json::to_writer_pretty(&mut out, &to_json(report))?;
    writeln!(out)
}

/// Writes results to `path`, or to stdout when `path` is `None`.
pub fn emit_results(
    report: &ExperimentReport,
    num_arms: usize,
    format: Format,
    path: Option<&std::path::Path>,
) -> Result<(), CliError> {
    let io_err = |source: std::io::Error| CliError::Io {
        path: path.map(|p| p.to_path_buf()).unwrap_or_else(|| "<stdout>".into()),
        source,
    };
    let mut sink: Box<dyn Write> = match path {
        Some(p) => Box::new(std::io::BufWriter::new(std::fs::File::create(p).map_err(io_err)?)),
        None => Box::new(std::io::stdout().lock()),
    };
    match format {
        Format::Csv => write_csv(report, num_arms, &mut sink).map_err(|e| io_err(e.into()))?,
        Format::Json => write_json(report, &mut sink).map_err(io_err)?,
    }
    sink.flush().map_err(io_err)
}

pub fn summary(report: &ExperimentReport) -> String {
    use std::fmt::Write as _;
    let mut s = String::new();
    let total = report.outcomes.len();
    let _ = writeln!(
        s,
        "{}: {} vs {}, T = {}, {}/{} episodes completed",
        report.name,
        report.learner,
        report.adversary,
        report.horizon,
        report.completed().count(),
        total
    );
    let _ = writeln!(
        s,
        "{:>10} {:>12} {:>12} {:>12} {:>12} {:>12}",
        "t", "regret", "median", "p95", "uncorrupted", "corruption"
    );
    for agg in &report.aggregates {
        let _ = writeln!(
            s,
            "{:>10} {:>12.2} {:>12.2} {:>12.2} {:>12.2} {:>12.2}",
            agg.t,
            agg.cum_regret.mean,
            agg.cum_regret.median,
            agg.cum_regret.p95,
            agg.cum_uncorrupted_regret.median,
            agg.corruption_spent.mean
        );
    }
    let e = &report.events;
    if let Some(r) = e.optimal_arm_eliminated {
        let _ = writeln!(s, "optimal arm eliminated: {}/{} ({:.4} +- {:.4})", r.events, r.trials, r.rate, r.half_width);
    }
    if let (Some(th), Some(r)) = (e.slow_corruption_threshold, e.slow_corruption_exceeded) {
        let _ = writeln!(s, "slow-observed corruption > {th:.4}: {}/{} ({:.4} +- {:.4})", r.events, r.trials, r.rate, r.half_width);
    }
    for o in &report.outcomes {
        if let Err(f) = &o.result {
            let _ = writeln!(s, "episode {} failed at round {}: {}", o.episode, f.round, f.reason);
        }
    }
    s
}
