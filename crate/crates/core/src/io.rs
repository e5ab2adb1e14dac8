//! Config files and report serialization.
//!
//! Config files are UTF-8 `key=value` lines with `#` comments; keys are the
//! [`ScenarioConfig`] field names. Reports are written as CSV (comma
//! separated, header row, LF endings) or pretty-printed JSON. Every float is
//! printed as its shortest round-trip decimal, so equal inputs always give
//! byte-identical files.

use std::fmt::Write as _;
use std::fs;
use std::io::{self, Write};
use std::path::Path;
use std::str::FromStr;

use serde::Serialize;

use crate::analytic::AnalyticReport;
use crate::config::{ScenarioConfig, FIELD_NAMES};
use crate::delay::DelayReport;
use crate::error::ConfigError;
use crate::montecarlo::McRunReport;

/// Parses config text, applies `overrides` on top (later entries win) and validates.
pub fn parse_config_str(text: &str, overrides: &[(String, String)]) -> Result<ScenarioConfig, ConfigError> {
    let mut cfg = ScenarioConfig::default();
    for (n, raw) in text.lines().enumerate() {
        let line_no = n + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line.split_once('=').ok_or_else(|| ConfigError::Syntax {
            line: line_no,
            message: format!("expected key=value, got \"{line}\""),
        })?;
        cfg.set_field(key.trim(), value.trim())
            .map_err(|e| ConfigError::AtLine { line: line_no, source: Box::new(e) })?;
    }
    for (key, value) in overrides {
        cfg.set_field(key, value)?;
    }
    cfg.validate()
}

/// Reads an optional config file; no file means defaults plus overrides.
pub fn parse_config(path: Option<&Path>, overrides: &[(String, String)]) -> Result<ScenarioConfig, ConfigError> {
    let text = match path {
        Some(p) => fs::read_to_string(p).map_err(|e| ConfigError::Syntax {
            line: 0,
            message: format!("cannot read {}: {e}", p.display()),
        })?,
        None => String::new(),
    };
    parse_config_str(&text, overrides)
}

/// Config as a `key=value` file that [`parse_config_str`] reads back unchanged.
pub fn emit_config(cfg: &ScenarioConfig) -> String {
    let mut out = String::new();
    for key in FIELD_NAMES {
        let _ = writeln!(out, "{key}={}", cfg.field(key).expect("listed field"));
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            other => Err(format!("unknown format \"{other}\" (expected csv or json)")),
        }
    }
}

/// One row of a per-zone series.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DzRow {
    pub dz_index: usize,
    pub dz_start_s: f64,
    pub arrivals: f64,
    pub contenders: f64,
    pub success_raw: f64,
    pub success_eq15: f64,
    pub failed: f64,
    pub dropped: f64,
    pub cumulative_success: f64,
    pub discovery_probability: f64,
    pub avg_delay_s: Option<f64>,
}

pub const DZ_COLUMNS: [&str; 11] = [
    "dz_index",
    "dz_start_s",
    "arrivals",
    "contenders",
    "success_raw",
    "success_eq15",
    "failed",
    "dropped",
    "cumulative_success",
    "discovery_probability",
    "avg_delay_s",
];

impl DzRow {
    fn cells(&self) -> [String; 11] {
        [
            self.dz_index.to_string(),
            num(self.dz_start_s),
            num(self.arrivals),
            num(self.contenders),
            num(self.success_raw),
            num(self.success_eq15),
            num(self.failed),
            num(self.dropped),
            num(self.cumulative_success),
            num(self.discovery_probability),
            opt(self.avg_delay_s),
        ]
    }
}

pub(crate) fn num(x: f64) -> String {
    x.to_string()
}

pub(crate) fn opt(x: Option<f64>) -> String {
    x.map(num).unwrap_or_default()
}

/// Fills the running columns from the per-zone ones.
fn accumulate(rows: &mut [DzRow], eq15: bool, population: f64) {
    let mut running = 0.0;
    for row in rows {
        running += if eq15 { row.success_eq15 } else { row.success_raw };
        row.cumulative_success = running;
        row.discovery_probability = if population > 0.0 { running / population } else { 0.0 };
    }
}

/// Per-zone series of a fluid run; delays come from `delay` when available.
pub fn analytic_rows(report: &AnalyticReport, delay: Option<&DelayReport>) -> Vec<DzRow> {
    let cfg = &report.config;
    let tl = &report.profile.timeline;
    let mut rows: Vec<DzRow> = (1..=cfg.dz_count)
        .map(|i| DzRow {
            dz_index: i,
            dz_start_s: tl.dz_start(i),
            arrivals: report.ledger.m(i, 1),
            contenders: report.per_dz_total[i - 1],
            success_raw: report.per_dz_success_raw[i - 1],
            success_eq15: report.per_dz_success_eq15[i - 1],
            failed: report.ledger.zone_failed(i),
            dropped: report.ledger.dropped(i),
            cumulative_success: 0.0,
            discovery_probability: 0.0,
            avg_delay_s: delay.and_then(|d| d.per_dz_delay[i - 1]),
        })
        .collect();
    accumulate(&mut rows, cfg.eq15_weighting, cfg.total_ues as f64);
    rows
}

/// Per-zone series of one agent-level run.
pub fn mc_rows(report: &McRunReport) -> Vec<DzRow> {
    let cfg = &report.config;
    let tl = crate::timeline::DzTimeline::new(cfg);
    let mut rows: Vec<DzRow> = (1..=cfg.dz_count)
        .map(|i| DzRow {
            dz_index: i,
            dz_start_s: tl.dz_start(i),
            arrivals: report.per_dz_arrivals[i - 1] as f64,
            contenders: report.per_dz_contenders[i - 1] as f64,
            success_raw: report.per_dz_success[i - 1] as f64,
            success_eq15: report.per_dz_success_eq15[i - 1],
            failed: report.per_dz_failed[i - 1] as f64,
            dropped: report.per_dz_dropped[i - 1] as f64,
            cumulative_success: 0.0,
            discovery_probability: 0.0,
            avg_delay_s: report.per_dz_delay[i - 1],
        })
        .collect();
    accumulate(&mut rows, cfg.eq15_weighting, cfg.total_ues as f64);
    rows
}

/// Column-wise mean of equally shaped series; delays average over the runs that have one.
pub fn mean_rows(runs: &[Vec<DzRow>]) -> Vec<DzRow> {
    let Some(first) = runs.first() else { return Vec::new() };
    let n = runs.len() as f64;
    (0..first.len())
        .map(|k| {
            let mean = |f: fn(&DzRow) -> f64| runs.iter().map(|r| f(&r[k])).sum::<f64>() / n;
            let delays: Vec<f64> = runs.iter().filter_map(|r| r[k].avg_delay_s).collect();
            DzRow {
                dz_index: first[k].dz_index,
                dz_start_s: first[k].dz_start_s,
                arrivals: mean(|r| r.arrivals),
                contenders: mean(|r| r.contenders),
                success_raw: mean(|r| r.success_raw),
                success_eq15: mean(|r| r.success_eq15),
                failed: mean(|r| r.failed),
                dropped: mean(|r| r.dropped),
                cumulative_success: mean(|r| r.cumulative_success),
                discovery_probability: mean(|r| r.discovery_probability),
                avg_delay_s: (!delays.is_empty()).then(|| delays.iter().sum::<f64>() / delays.len() as f64),
            }
        })
        .collect()
}

/// Whole-run metrics of one engine, or of one engine aggregated over seeds.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunSummary {
    pub engine: String,
    pub config: ScenarioConfig,
    pub seeds: Vec<u64>,
    pub arrivals: f64,
    /// Raw or weighted count, following `config.eq15_weighting`.
    pub cumulative_success: f64,
    pub cumulative_success_raw: f64,
    pub cumulative_success_eq15: f64,
    pub discovery_probability: f64,
    pub dropped: f64,
    pub pending: f64,
    pub average_delay_s: Option<f64>,
    /// Average delay divided by `cumulative_success`.
    pub tradeoff: Option<f64>,
    /// Standard error of `cumulative_success` across seeds.
    pub cumulative_success_stderr: Option<f64>,
    pub average_delay_stderr: Option<f64>,
}

pub const SUMMARY_COLUMNS: [&str; 12] = [
    "engine",
    "seeds",
    "arrivals",
    "cumulative_success",
    "cumulative_success_raw",
    "cumulative_success_eq15",
    "discovery_probability",
    "dropped",
    "pending",
    "average_delay_s",
    "tradeoff",
    "cumulative_success_stderr",
];

impl RunSummary {
    pub(crate) fn cells(&self) -> [String; 12] {
        [
            self.engine.clone(),
            self.seeds.len().to_string(),
            num(self.arrivals),
            num(self.cumulative_success),
            num(self.cumulative_success_raw),
            num(self.cumulative_success_eq15),
            num(self.discovery_probability),
            num(self.dropped),
            num(self.pending),
            opt(self.average_delay_s),
            opt(self.tradeoff),
            opt(self.cumulative_success_stderr),
        ]
    }

    pub fn from_analytic(engine: &str, report: &AnalyticReport, delay: Option<&DelayReport>) -> Self {
        let led = &report.ledger;
        RunSummary {
            engine: engine.into(),
            config: report.config.clone(),
            seeds: Vec::new(),
            arrivals: led.total_arrivals(),
            cumulative_success: report.cumulative_success(),
            cumulative_success_raw: report.cumulative_success_raw,
            cumulative_success_eq15: report.cumulative_success_eq15,
            discovery_probability: report.discovery_probability(),
            dropped: led.total_dropped(),
            pending: led.total_pending() + led.total_suppressed(),
            average_delay_s: delay.map(|d| d.average_delay),
            tradeoff: delay.map(|d| d.tradeoff),
            cumulative_success_stderr: None,
            average_delay_stderr: None,
        }
    }

    /// Mean over seeds, with standard errors for the discovered count and delay.
    pub fn from_mc(engine: &str, runs: &[McRunReport]) -> Self {
        let cfg = runs.first().map(|r| r.config.clone()).unwrap_or_default();
        let eq15 = cfg.eq15_weighting;
        let raw: Vec<f64> = runs.iter().map(|r| r.cumulative_success as f64).collect();
        let weighted: Vec<f64> = runs.iter().map(|r| r.cumulative_success_eq15).collect();
        let reported = if eq15 { &weighted } else { &raw };
        let delays: Vec<f64> = runs.iter().filter_map(|r| r.empirical_avg_delay).collect();
        let (success_mean, success_se) = mean_se(reported);
        let arrivals = mean_se(&runs.iter().map(|r| r.arrivals as f64).collect::<Vec<_>>()).0;
        let average_delay = (!delays.is_empty()).then(|| mean_se(&delays));
        RunSummary {
            engine: engine.into(),
            seeds: runs.iter().map(|r| r.seed).collect(),
            arrivals,
            cumulative_success: success_mean,
            cumulative_success_raw: mean_se(&raw).0,
            cumulative_success_eq15: mean_se(&weighted).0,
            discovery_probability: if cfg.total_ues > 0 { success_mean / cfg.total_ues as f64 } else { 0.0 },
            dropped: mean_se(&runs.iter().map(|r| r.dropped as f64).collect::<Vec<_>>()).0,
            pending: mean_se(&runs.iter().map(|r| r.pending as f64).collect::<Vec<_>>()).0,
            average_delay_s: average_delay.map(|d| d.0),
            tradeoff: average_delay.filter(|_| success_mean > 0.0).map(|d| d.0 / success_mean),
            cumulative_success_stderr: Some(success_se),
            average_delay_stderr: average_delay.map(|d| d.1),
            config: cfg,
        }
    }
}

/// Sample mean and standard error of the mean (zero for fewer than two samples).
pub fn mean_se(xs: &[f64]) -> (f64, f64) {
    if xs.is_empty() {
        return (0.0, 0.0);
    }
    let n = xs.len() as f64;
    let mean = xs.iter().sum::<f64>() / n;
    if xs.len() < 2 {
        return (mean, 0.0);
    }
    let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0);
    (mean, (var / n).sqrt())
}

/// Summary document plus per-zone series of a single run.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OutputBundle {
    pub summary: RunSummary,
    pub series: Vec<DzRow>,
}

/// Writes a header line and rows as CSV.
pub fn write_csv_table<W: Write>(out: &mut W, header: &[&str], rows: &[Vec<String>]) -> io::Result<()> {
    writeln!(out, "{}", header.join(","))?;
    for row in rows {
        debug_assert_eq!(row.len(), header.len());
        let escaped: Vec<String> = row.iter().map(|c| escape(c)).collect();
        writeln!(out, "{}", escaped.join(","))?;
    }
    Ok(())
}

fn escape(cell: &str) -> String {
    if cell.contains([',', '"', '\n']) {
        format!("\"{}\"", cell.replace('"', "\"\""))
    } else {
        cell.to_string()
    }
}

pub fn dz_csv(rows: &[DzRow]) -> String {
    let body: Vec<Vec<String>> = rows.iter().map(|r| r.cells().to_vec()).collect();
    let mut buf = Vec::new();
    write_csv_table(&mut buf, &DZ_COLUMNS, &body).expect("writing to memory");
    String::from_utf8(buf).expect("CSV is UTF-8")
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("reports serialize");
    s.push('\n');
    s
}

/// Renders a bundle: the per-zone series as CSV, or the whole bundle as JSON.
pub fn render(bundle: &OutputBundle, format: Format) -> String {
    match format {
        Format::Csv => dz_csv(&bundle.series),
        Format::Json => to_json(bundle),
    }
}

/// Writes `text` to `destination`, or to stdout when there is none.
pub fn write_output(text: &str, destination: Option<&Path>) -> io::Result<()> {
    match destination {
        Some(path) => fs::write(path, text),
        None => {
            let stdout = io::stdout();
            let mut lock = stdout.lock();
            lock.write_all(text.as_bytes())?;
            lock.flush()
        }
    }
}

pub fn emit(bundle: &OutputBundle, format: Format, destination: Option<&Path>) -> io::Result<()> {
    write_output(&render(bundle, format), destination)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analytic::run_analytic;
    use crate::config::SuccessMode;

    #[test]
    fn empty_text_gives_defaults() {
        assert_eq!(parse_config_str("", &[]).unwrap(), ScenarioConfig::default());
        assert_eq!(parse_config_str("# only a comment\n\n", &[]).unwrap(), ScenarioConfig::default());
    }

    #[test]
    fn flags_override_file() {
        let cfg = parse_config_str("backoff_window=3\n", &[("backoff_window".into(), "5".into())]).unwrap();
        assert_eq!(cfg.backoff_window, 5);
    }

    #[test]
    fn file_values_and_comments() {
        let text = "# scenario\nresources = 10 # fewer bins\nsuccess_mode=literal\neq15_weighting=false\n";
        let cfg = parse_config_str(text, &[]).unwrap();
        assert_eq!(cfg.resources, 10);
        assert_eq!(cfg.success_mode, SuccessMode::Literal);
        assert!(!cfg.eq15_weighting);
    }

    #[test]
    fn unknown_key_named_with_line() {
        let err = parse_config_str("alpha=3\nbogus=1\n", &[]).unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("bogus") && msg.contains("line 2"), "{msg}");
        let err = parse_config_str("", &[("bogus".into(), "1".into())]).unwrap_err();
        assert!(err.to_string().contains("bogus"));
    }

    #[test]
    fn syntax_and_value_errors() {
        let err = parse_config_str("resources 22\n", &[]).unwrap_err();
        assert!(matches!(err, ConfigError::Syntax { line: 1, .. }));
        let err = parse_config_str("\nresources=abc\n", &[]).unwrap_err();
        assert!(err.to_string().starts_with("line 2:"), "{err}");
        let err = parse_config_str("resources=0\n", &[]).unwrap_err();
        assert_eq!(err.to_string(), "resources must be ≥ 1");
    }

    #[test]
    fn config_round_trip() {
        let cfg = ScenarioConfig { dz_length: 1.0 / 3.0, alpha: 2.5, ..Default::default() };
        assert_eq!(parse_config_str(&emit_config(&cfg), &[]).unwrap(), cfg);
    }

    #[test]
    fn zero_zone_series_is_header_only() {
        assert_eq!(dz_csv(&[]), format!("{}\n", DZ_COLUMNS.join(",")));
    }

    #[test]
    fn analytic_series_shape() {
        let report = run_analytic(&ScenarioConfig::default()).unwrap();
        let rows = analytic_rows(&report, None);
        assert_eq!(rows.len(), 20);
        let last = rows.last().unwrap();
        assert!((last.cumulative_success - report.cumulative_success()).abs() < 1e-9);
        let csv = dz_csv(&rows);
        assert_eq!(csv.lines().count(), 21);
        assert!(csv.lines().all(|l| l.split(',').count() == DZ_COLUMNS.len()));
        assert!(!csv.contains('\r'));
    }

    #[test]
    fn mean_and_standard_error() {
        let (m, se) = mean_se(&[1.0, 2.0, 3.0, 4.0]);
        assert_eq!(m, 2.5);
        assert!((se - (5.0f64 / 12.0).sqrt()).abs() < 1e-15);
        assert_eq!(mean_se(&[7.0]), (7.0, 0.0));
    }
}
