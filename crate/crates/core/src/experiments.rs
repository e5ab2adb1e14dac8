//! Parameter sweeps and the standard figure presets.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;

use crate::analytic::run_analytic_with;
use crate::config::{ScenarioConfig, SuccessMode};
use crate::delay::average_delay;
use crate::error::{Error, Result};
use crate::io::{self, analytic_rows, mc_rows, mean_rows, DzRow, RunSummary, DZ_COLUMNS, SUMMARY_COLUMNS};
use crate::montecarlo::run_mc_with;
use crate::traffic::{ArrivalProfile, ArrivalTimeModel};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Axis {
    #[serde(rename = "W")]
    BackoffWindow,
    #[serde(rename = "L_max")]
    MaxTransmissions,
    #[serde(rename = "M")]
    TotalUes,
    #[serde(rename = "K")]
    DzCount,
}

impl Axis {
    /// Config field the axis sets.
    pub fn field(self) -> &'static str {
        match self {
            Axis::BackoffWindow => "backoff_window",
            Axis::MaxTransmissions => "max_transmissions",
            Axis::TotalUes => "total_ues",
            Axis::DzCount => "dz_count",
        }
    }

    pub fn apply(self, cfg: &mut ScenarioConfig, value: u64) {
        match self {
            Axis::BackoffWindow => cfg.backoff_window = value as usize,
            Axis::MaxTransmissions => cfg.max_transmissions = value as usize,
            Axis::TotalUes => cfg.total_ues = value,
            Axis::DzCount => cfg.dz_count = value as usize,
        }
    }
}

impl FromStr for Axis {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "W" | "backoff_window" => Ok(Axis::BackoffWindow),
            "L_max" | "max_transmissions" => Ok(Axis::MaxTransmissions),
            "M" | "total_ues" => Ok(Axis::TotalUes),
            "K" | "dz_count" => Ok(Axis::DzCount),
            other => Err(Error::Sweep(format!("unknown axis \"{other}\" (expected W, L_max, M or K)"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Engine {
    AnalyticLiteral,
    AnalyticCoupled,
    Mc,
}

impl Engine {
    pub const ALL: [Engine; 3] = [Engine::AnalyticLiteral, Engine::AnalyticCoupled, Engine::Mc];

    pub fn as_str(self) -> &'static str {
        match self {
            Engine::AnalyticLiteral => "analytic-literal",
            Engine::AnalyticCoupled => "analytic-coupled",
            Engine::Mc => "mc",
        }
    }
}

impl fmt::Display for Engine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Engine {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Engine::ALL
            .into_iter()
            .find(|e| e.as_str() == s)
            .ok_or_else(|| Error::Sweep(format!("unknown engine \"{s}\"")))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AxisValues {
    pub axis: Axis,
    pub values: Vec<u64>,
}

/// Cartesian product of axis values, each point run under every engine.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepSpec {
    pub name: String,
    pub base: ScenarioConfig,
    pub axes: Vec<AxisValues>,
    pub engines: Vec<Engine>,
    pub mc_seeds: u64,
    /// Replicate `r` of every Monte Carlo cell uses seed `base_seed + r`.
    pub base_seed: u64,
}

impl SweepSpec {
    pub fn single(name: &str, base: ScenarioConfig, axis: Axis, values: Vec<u64>) -> Self {
        SweepSpec {
            name: name.into(),
            base,
            axes: vec![AxisValues { axis, values }],
            engines: Engine::ALL.to_vec(),
            mc_seeds: 20,
            base_seed: 0,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.axes.is_empty() {
            return Err(Error::Sweep("no axis".into()));
        }
        if let Some(a) = self.axes.iter().find(|a| a.values.is_empty()) {
            return Err(Error::Sweep(format!("axis {} has no values", a.axis.field())));
        }
        if self.engines.is_empty() {
            return Err(Error::Sweep("no engine selected".into()));
        }
        if self.engines.contains(&Engine::Mc) && self.mc_seeds == 0 {
            return Err(Error::Sweep("mc engine needs at least one seed".into()));
        }
        Ok(())
    }

    /// Sweep points in ascending order of each axis, first axis outermost.
    pub fn points(&self) -> Vec<Vec<(Axis, u64)>> {
        let mut points: Vec<Vec<(Axis, u64)>> = vec![Vec::new()];
        for a in &self.axes {
            let mut values = a.values.clone();
            values.sort_unstable();
            values.dedup();
            points = points
                .into_iter()
                .flat_map(|p| {
                    values.iter().map(move |&v| {
                        let mut q = p.clone();
                        q.push((a.axis, v));
                        q
                    })
                })
                .collect();
        }
        points
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Preset {
    Fig2,
    Fig3,
    Fig4,
    Fig5,
    Fig6,
}

impl Preset {
    pub const ALL: [Preset; 5] = [Preset::Fig2, Preset::Fig3, Preset::Fig4, Preset::Fig5, Preset::Fig6];

    pub fn name(self) -> &'static str {
        match self {
            Preset::Fig2 => "fig2",
            Preset::Fig3 => "fig3",
            Preset::Fig4 => "fig4",
            Preset::Fig5 => "fig5",
            Preset::Fig6 => "fig6",
        }
    }
}

impl FromStr for Preset {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Preset::ALL.into_iter().find(|p| p.name() == s).ok_or_else(|| Error::UnknownPreset(s.into()))
    }
}

/// Sweep reproducing one of the standard figures.
///
/// * `fig2`: `W ∈ {1, 3}` × `L_max ∈ {3, 20}` over 20 zones
/// * `fig3`: `L_max ∈ 2..=7` with `W = 3`
/// * `fig4`: `W ∈ 1..=6` with `L_max = 3`
/// * `fig5`: same grid as `fig3`, read for the delay/discovery ratio
/// * `fig6`: 200 zones, `M = 450·N` for `N ∈ 1..=6`, `W = 3`, `L_max = 7`
pub fn preset(p: Preset) -> SweepSpec {
    let base = ScenarioConfig::default();
    let mut spec = match p {
        Preset::Fig2 => SweepSpec {
            axes: vec![
                AxisValues { axis: Axis::BackoffWindow, values: vec![1, 3] },
                AxisValues { axis: Axis::MaxTransmissions, values: vec![3, 20] },
            ],
            ..SweepSpec::single("fig2", base, Axis::BackoffWindow, vec![])
        },
        Preset::Fig3 | Preset::Fig5 => {
            SweepSpec::single(p.name(), ScenarioConfig { backoff_window: 3, ..base }, Axis::MaxTransmissions, (2..=7).collect())
        }
        Preset::Fig4 => SweepSpec::single(
            "fig4",
            ScenarioConfig { max_transmissions: 3, ..base },
            Axis::BackoffWindow,
            (1..=6).collect(),
        ),
        Preset::Fig6 => SweepSpec::single(
            "fig6",
            ScenarioConfig { dz_count: 200, backoff_window: 3, max_transmissions: 7, ..base },
            Axis::TotalUes,
            (1..=6).map(|n| 450 * n).collect(),
        ),
    };
    spec.mc_seeds = if p == Preset::Fig6 { 20 } else { 100 };
    spec
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CellResult {
    pub summary: RunSummary,
    pub series: Vec<DzRow>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepCell {
    pub point: Vec<(Axis, u64)>,
    pub engine: Engine,
    pub result: std::result::Result<CellResult, String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepTable {
    pub name: String,
    pub axes: Vec<Axis>,
    pub cells: Vec<SweepCell>,
}

impl SweepTable {
    pub fn cell(&self, point: &[(Axis, u64)], engine: Engine) -> Option<&SweepCell> {
        self.cells.iter().find(|c| c.engine == engine && c.point == point)
    }

    fn prefix(&self, cell: &SweepCell) -> Vec<String> {
        let mut v: Vec<String> = cell.point.iter().map(|(_, x)| x.to_string()).collect();
        v.push(cell.engine.to_string());
        v
    }

    fn header(&self, rest: &[&'static str]) -> Vec<&'static str> {
        let mut h: Vec<&'static str> = self.axes.iter().map(|a| a.field()).collect();
        h.push("engine");
        h.extend(rest.iter().filter(|&&c| c != "engine"));
        h
    }

    /// Per-zone series of every successful cell.
    pub fn series_csv(&self) -> String {
        let header = self.header(&DZ_COLUMNS);
        let mut rows = Vec::new();
        for cell in &self.cells {
            if let Ok(res) = &cell.result {
                let csv = io::dz_csv(&res.series);
                for line in csv.lines().skip(1) {
                    let mut row = self.prefix(cell);
                    row.extend(line.split(',').map(str::to_string));
                    rows.push(row);
                }
            }
        }
        table(&header, &rows)
    }

    /// One line per cell; failed cells carry their error and empty metrics.
    pub fn summary_csv(&self) -> String {
        let mut header = self.header(&SUMMARY_COLUMNS);
        header.push("error");
        let rows: Vec<Vec<String>> = self
            .cells
            .iter()
            .map(|cell| {
                let mut row = self.prefix(cell);
                match &cell.result {
                    Ok(res) => {
                        row.extend(res.summary.cells().into_iter().skip(1));
                        row.push(String::new());
                    }
                    Err(e) => {
                        row.extend(std::iter::repeat_n(String::new(), SUMMARY_COLUMNS.len() - 1));
                        row.push(e.clone());
                    }
                }
                row
            })
            .collect();
        table(&header, &rows)
    }
}

fn table(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut buf = Vec::new();
    io::write_csv_table(&mut buf, header, rows).expect("writing to memory");
    String::from_utf8(buf).expect("CSV is UTF-8")
}

/// Runs one engine on one config.
pub fn run_cell(config: &ScenarioConfig, engine: Engine, mc_seeds: u64, base_seed: u64) -> Result<CellResult> {
    let mut config = config.clone();
    match engine {
        Engine::AnalyticLiteral => config.success_mode = SuccessMode::Literal,
        Engine::AnalyticCoupled => config.success_mode = SuccessMode::Coupled,
        Engine::Mc => {}
    }
    let config = config.validate()?;
    let profile = ArrivalProfile::new(&config)?;
    match engine {
        Engine::AnalyticLiteral | Engine::AnalyticCoupled => {
            let report = run_analytic_with(&config, profile)?;
            let delay = match average_delay(&report, ArrivalTimeModel::Literal) {
                Ok(d) => Some(d),
                Err(Error::NoDiscoveries) => None,
                Err(e) => return Err(e),
            };
            Ok(CellResult {
                summary: RunSummary::from_analytic(engine.as_str(), &report, delay.as_ref()),
                series: analytic_rows(&report, delay.as_ref()),
            })
        }
        Engine::Mc => {
            if mc_seeds == 0 {
                return Err(Error::Sweep("mc engine needs at least one seed".into()));
            }
            let runs: Vec<_> = (0..mc_seeds)
                .into_par_iter()
                .map(|r| run_mc_with(&config, &profile, base_seed + r).report)
                .collect();
            let series: Vec<Vec<DzRow>> = runs.iter().map(mc_rows).collect();
            Ok(CellResult { summary: RunSummary::from_mc(engine.as_str(), &runs), series: mean_rows(&series) })
        }
    }
}

/// Runs every point × engine cell. A failing cell records its error and the sweep continues.
pub fn run_sweep(spec: &SweepSpec) -> Result<SweepTable> {
    spec.validate()?;
    let mut engines = spec.engines.clone();
    engines.sort_unstable();
    engines.dedup();
    let jobs: Vec<(Vec<(Axis, u64)>, Engine)> = spec
        .points()
        .into_iter()
        .flat_map(|p| engines.iter().map(move |&e| (p.clone(), e)))
        .collect();
    let cells = jobs
        .into_par_iter()
        .map(|(point, engine)| {
            let mut cfg = spec.base.clone();
            for &(axis, v) in &point {
                axis.apply(&mut cfg, v);
            }
            let result = run_cell(&cfg, engine, spec.mc_seeds, spec.base_seed).map_err(|e| e.to_string());
            SweepCell { point, engine, result }
        })
        .collect();
    Ok(SweepTable { name: spec.name.clone(), axes: spec.axes.iter().map(|a| a.axis).collect(), cells })
}
