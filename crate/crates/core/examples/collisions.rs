//! Expected collision-free transmissions when devices pick resources
//! uniformly: closed form next to an empirical estimate.
//!
//! ```text
//! cargo run --release --example collisions
//! ```

use d2d_discovery::analytic::expected_success;
use d2d_discovery::montecarlo::{run_dz, substream, UeRecord};
use d2d_discovery::{DzTimeline, ScenarioConfig};

fn main() -> d2d_discovery::Result<()> {
    let r = 22;
    let cfg = ScenarioConfig { resources: r, ..Default::default() };
    let timeline = DzTimeline::new(&cfg);
    let mut rng = substream(1, 1);
    let trials = 20_000;

    println!("R = {r}");
    println!("{:>4} {:>10} {:>10}", "m", "formula", "simulated");
    for m in [1usize, 5, 10, 15, 22, 30, 44, 66, 88] {
        let contenders: Vec<usize> = (0..m).collect();
        let mut total = 0usize;
        for _ in 0..trials {
            let mut ues: Vec<UeRecord> = (0..m).map(|id| UeRecord::new(id, 0.0, 1)).collect();
            total += run_dz(1, &mut ues, &contenders, &cfg, &timeline, &mut rng).successes.len();
        }
        println!("{:>4} {:>10.4} {:>10.4}", m, expected_success(m as f64, r)?, total as f64 / trials as f64);
    }
    Ok(())
}
