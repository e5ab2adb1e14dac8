//! Scaling the device population over 200 discovery zones.
//!
//! ```text
//! cargo run --release --example massive_access
//! ```

use d2d_discovery::experiments::{preset, run_sweep, Engine, Preset};

fn main() -> d2d_discovery::Result<()> {
    let mut spec = preset(Preset::Fig6);
    spec.engines = vec![Engine::AnalyticCoupled, Engine::Mc];
    spec.mc_seeds = 10;
    let table = run_sweep(&spec)?;

    println!("{:>5} {:>17} {:>11} {:>8} {:>10}", "M", "engine", "discovered", "P (%)", "delay (s)");
    for cell in &table.cells {
        let s = &cell.result.as_ref().map_err(|e| d2d_discovery::Error::Sweep(e.clone()))?.summary;
        println!(
            "{:>5} {:>17} {:>11.1} {:>8.2} {:>10}",
            cell.point[0].1,
            cell.engine,
            s.cumulative_success,
            100.0 * s.discovery_probability,
            s.average_delay_s.map_or("-".into(), |d| format!("{d:.3}"))
        );
    }
    Ok(())
}
