//! Delay / discovery trade-off as the retransmission limit grows.
//!
//! ```text
//! cargo run --example tradeoff
//! ```

use d2d_discovery::{average_delay, run_analytic, ArrivalTimeModel, ScenarioConfig};

fn main() -> d2d_discovery::Result<()> {
    println!("{:>5} {:>12} {:>11} {:>9}", "L_max", "discovered", "delay (s)", "eta");
    let mut best = (0, f64::INFINITY);
    for l in 2..=7 {
        let cfg = ScenarioConfig { max_transmissions: l, backoff_window: 3, ..Default::default() };
        let report = run_analytic(&cfg)?;
        let delay = average_delay(&report, ArrivalTimeModel::Literal)?;
        println!(
            "{:>5} {:>12.2} {:>11.3} {:>9.4}",
            l,
            report.cumulative_success(),
            delay.average_delay,
            delay.tradeoff
        );
        if delay.tradeoff < best.1 {
            best = (l, delay.tradeoff);
        }
    }
    println!("\nlowest delay per discovery at L_max = {}", best.0);
    Ok(())
}
