//! Writes a scenario file, reads it back with an override, and emits the
//! per-zone table as CSV and the run summary as JSON.
//!
//! ```text
//! cargo run --example reports -- /tmp/d2d-out
//! ```

use std::path::PathBuf;

use d2d_discovery::experiments::{run_cell, Engine};
use d2d_discovery::io::{self, Format, OutputBundle};
use d2d_discovery::ScenarioConfig;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let dir = PathBuf::from(std::env::args().nth(1).unwrap_or_else(|| "d2d-out".into()));
    std::fs::create_dir_all(&dir)?;

    let scenario = dir.join("scenario.cfg");
    std::fs::write(&scenario, io::emit_config(&ScenarioConfig::default()))?;
    let cfg = io::parse_config(Some(&scenario), &[("backoff_window".into(), "5".into())])?;

    for engine in [Engine::AnalyticCoupled, Engine::Mc] {
        let cell = run_cell(&cfg, engine, 20, 0)?;
        let bundle = OutputBundle { summary: cell.summary, series: cell.series };
        let csv = dir.join(format!("{engine}.csv"));
        let json = dir.join(format!("{engine}.json"));
        io::emit(&bundle, Format::Csv, Some(&csv))?;
        io::write_output(&io::to_json(&bundle.summary), Some(&json))?;
        println!("{engine}: {:.2} discovered -> {}, {}", bundle.summary.cumulative_success, csv.display(), json.display());
    }
    println!("scenario file: {}", scenario.display());
    Ok(())
}
