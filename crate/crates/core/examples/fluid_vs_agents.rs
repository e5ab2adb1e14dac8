//! Compares the fluid recursion with the agent-level simulator, zone by zone.
//!
//! ```text
//! cargo run --release --example fluid_vs_agents -- 200
//! ```

use d2d_discovery::io::mean_se;
use d2d_discovery::{run_analytic, run_mc, ScenarioConfig, SuccessMode};

fn main() -> d2d_discovery::Result<()> {
    let seeds: u64 = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(100);
    let cfg = ScenarioConfig { eq15_weighting: false, ..Default::default() };
    let coupled = run_analytic(&cfg)?;
    let literal = run_analytic(&ScenarioConfig { success_mode: SuccessMode::Literal, ..cfg.clone() })?;
    let runs = (0..seeds).map(|s| run_mc(&cfg, s)).collect::<Result<Vec<_>, _>>()?;

    println!("{:>3} {:>9} {:>9} {:>15}", "dz", "literal", "coupled", "simulated ± se");
    for i in 0..cfg.dz_count {
        let sim: Vec<f64> = runs.iter().map(|r| r.per_dz_success[i] as f64).collect();
        let (mean, se) = mean_se(&sim);
        println!(
            "{:>3} {:>9.3} {:>9.3} {:>8.3} ± {:.3}",
            i + 1,
            literal.per_dz_success_raw[i],
            coupled.per_dz_success_raw[i],
            mean,
            se
        );
    }
    let totals: Vec<f64> = runs.iter().map(|r| r.cumulative_success as f64).collect();
    let (mean, se) = mean_se(&totals);
    println!(
        "\ntotal: literal {:.2}, coupled {:.2}, simulated {mean:.2} ± {se:.2} over {seeds} seeds",
        literal.cumulative_success_raw, coupled.cumulative_success_raw
    );
    Ok(())
}
