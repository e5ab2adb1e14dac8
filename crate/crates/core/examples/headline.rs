//! Default scenario through the fluid model: per-zone discoveries and the
//! delay / discovery trade-off.
//!
//! ```text
//! cargo run --example headline
//! ```

use d2d_discovery::{average_delay, run_analytic, ArrivalTimeModel, ScenarioConfig, SuccessMode};

fn main() -> d2d_discovery::Result<()> {
    let cfg = ScenarioConfig::default();
    println!(
        "M={} R={} K={} L_max={} W={} Beta({}, {})",
        cfg.total_ues, cfg.resources, cfg.dz_count, cfg.max_transmissions, cfg.backoff_window, cfg.alpha, cfg.beta
    );

    for mode in [SuccessMode::Coupled, SuccessMode::Literal] {
        let report = run_analytic(&ScenarioConfig { success_mode: mode, ..cfg.clone() })?;
        let delay = average_delay(&report, ArrivalTimeModel::Literal)?;
        println!("\n[{mode}]");
        println!("{:>3} {:>10} {:>10} {:>10}", "dz", "arrivals", "success", "cumul");
        let mut cumul = 0.0;
        for i in 0..cfg.dz_count {
            cumul += report.per_dz_success()[i];
            println!(
                "{:>3} {:>10.3} {:>10.3} {:>10.3}",
                i + 1,
                report.ledger.m(i + 1, 1),
                report.per_dz_success()[i],
                cumul
            );
        }
        println!(
            "discovered {:.2} UEs (raw {:.2}, P = {:.2}%), avg delay {:.3} s, eta {:.4}",
            report.cumulative_success(),
            report.cumulative_success_raw,
            100.0 * report.discovery_probability(),
            delay.average_delay,
            delay.tradeoff
        );
    }
    Ok(())
}
