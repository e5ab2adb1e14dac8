//! Beta-distributed activation over the discovery horizon: density, per-zone
//! arrival share and mean activation time inside each window.
//!
//! ```text
//! cargo run --example arrival_profile -- 3 4
//! ```

use d2d_discovery::traffic::{beta_pdf, new_arrivals};
use d2d_discovery::{ArrivalProfile, ScenarioConfig};

fn main() -> d2d_discovery::Result<()> {
    let mut args = std::env::args().skip(1).map(|a| a.parse::<f64>());
    let alpha = args.next().transpose().ok().flatten().unwrap_or(3.0);
    let beta = args.next().transpose().ok().flatten().unwrap_or(4.0);
    let cfg = ScenarioConfig { alpha, beta, ..Default::default() }.validate()?;
    let profile = ArrivalProfile::new(&cfg)?;

    println!("Beta({alpha}, {beta}) over T = {:.2} s", profile.horizon);
    println!("{:>3} {:>18} {:>10} {:>12} {:>10}", "dz", "window (s)", "share", "new UEs", "mean t (s)");
    for i in 1..=cfg.dz_count {
        let (lo, hi) = profile.timeline.arrival_window(i)?;
        let mass = profile.window_mass(i)?;
        let mean_t = if mass > 0.0 { profile.window_time(i)? / mass } else { f64::NAN };
        println!(
            "{:>3} {:>8.2}..{:<8.2} {:>10.5} {:>12.3} {:>10.3}",
            i,
            lo,
            hi,
            mass,
            new_arrivals(i, &cfg, &profile)?,
            mean_t
        );
    }

    println!("\ndensity samples:");
    for k in 0..=10 {
        let t = profile.horizon * k as f64 / 10.0;
        let p = beta_pdf(t, alpha, beta, profile.horizon)?;
        println!("{t:>8.2} s  {p:.5}  {}", "#".repeat((p * profile.horizon * 20.0) as usize));
    }
    Ok(())
}
