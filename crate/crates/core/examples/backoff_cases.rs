//! Cumulative discoveries for the four backoff / retransmission-limit cases
//! (W ∈ {1, 3}, L_max ∈ {3, 20}) from both fluid readings and the simulator.
//!
//! ```text
//! cargo run --release --example backoff_cases
//! ```

use d2d_discovery::experiments::{preset, run_sweep, Axis, Engine, Preset};

fn main() -> d2d_discovery::Result<()> {
    let mut spec = preset(Preset::Fig2);
    spec.mc_seeds = 50;
    let table = run_sweep(&spec)?;

    for engine in Engine::ALL {
        println!("\n{engine}: cumulative discoveries after each zone");
        print!("{:>3}", "dz");
        let cases = [(1, 3), (1, 20), (3, 3), (3, 20)];
        for (w, l) in cases {
            print!(" {:>11}", format!("W={w},L={l}"));
        }
        println!();
        let series: Vec<_> = cases
            .iter()
            .map(|&(w, l)| {
                let cell = table.cell(&[(Axis::BackoffWindow, w), (Axis::MaxTransmissions, l)], engine).unwrap();
                &cell.result.as_ref().unwrap().series
            })
            .collect();
        for i in 0..spec.base.dz_count {
            print!("{:>3}", i + 1);
            for s in &series {
                print!(" {:>11.2}", s[i].cumulative_success);
            }
            println!();
        }
    }
    Ok(())
}
