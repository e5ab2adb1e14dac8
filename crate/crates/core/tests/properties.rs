use proptest::prelude::*;

use d2d_discovery::analytic::{expected_success, run_analytic};
use d2d_discovery::config::SuccessMode;
use d2d_discovery::io::{emit_config, parse_config_str};
use d2d_discovery::montecarlo::run_mc;
use d2d_discovery::traffic::beta_pdf;
use d2d_discovery::ScenarioConfig;

fn config_strategy() -> impl Strategy<Value = ScenarioConfig> {
    (1usize..=40)
        .prop_flat_map(|k| {
            (
                0u64..2000,
                1u64..64,
                0.001f64..0.5,
                0.1f64..30.0,
                Just(k),
                1usize..=12,
                1usize..=k,
                0.0001f64..0.1,
                (0.5f64..12.0, 0.5f64..12.0),
                any::<bool>(),
                any::<bool>(),
            )
        })
        .prop_map(|(m, r, dz_length, dz_interval, k, l, w, th, (a, b), coupled, eq15)| ScenarioConfig {
            total_ues: m,
            resources: r,
            dz_length,
            dz_interval,
            dz_count: k,
            max_transmissions: l,
            backoff_window: w,
            processing_delay: th,
            alpha: a,
            beta: b,
            success_mode: if coupled { SuccessMode::Coupled } else { SuccessMode::Literal },
            eq15_weighting: eq15,
        })
}

proptest! {
    #[test]
    fn pdf_scales_with_horizon(x in 0.0f64..=1.0, a in 0.5f64..10.0, b in 0.5f64..10.0, t in 0.1f64..500.0, c in 0.01f64..100.0) {
        let base = beta_pdf(x * t, a, b, t).unwrap();
        let scaled = beta_pdf(x * c * t, a, b, c * t).unwrap();
        if base.is_finite() {
            prop_assert!((scaled - base / c).abs() <= 1e-9 * (base / c).abs().max(1e-300));
        }
    }

    #[test]
    fn success_bounded_and_increasing_in_bins(m in 2.0f64..500.0, r in 1u64..1000) {
        let s = expected_success(m, r).unwrap();
        prop_assert!(s >= 0.0 && s <= m);
        prop_assert!(expected_success(m, r + 1).unwrap() > s);
    }

    #[test]
    fn config_text_round_trips(cfg in config_strategy()) {
        prop_assert_eq!(parse_config_str(&emit_config(&cfg), &[]).unwrap(), cfg);
    }

    #[test]
    fn analytic_conserves_mass(cfg in config_strategy()) {
        let report = run_analytic(&cfg).unwrap();
        let led = &report.ledger;
        let arrivals = led.total_arrivals();
        let out = led.total_success() + led.total_dropped() + led.total_pending() + led.total_suppressed();
        prop_assert!((out - arrivals).abs() <= 1e-9 * arrivals.max(1.0));
        // Window masses come from quadrature with an absolute tolerance of 1e-10 each.
        let tol = 1e-9 * (cfg.total_ues as f64).max(1.0);
        prop_assert!((arrivals - cfg.total_ues as f64).abs() <= tol);
        prop_assert!(report.cumulative_success() <= cfg.total_ues as f64 + tol);
        prop_assert!((0.0..=1.0 + 1e-9).contains(&report.discovery_probability()));
        for i in 1..=cfg.dz_count {
            for l in 1..=cfg.max_transmissions {
                let (m, s, f) = (led.m(i, l), led.m_s(i, l), led.m_f(i, l));
                prop_assert!(s >= 0.0 && s <= m);
                prop_assert_eq!(f, m - s);
                if i <= cfg.backoff_window && l >= 2 {
                    prop_assert_eq!(m, 0.0);
                }
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn agent_runs_balance_and_repeat(cfg in config_strategy(), seed in any::<u64>()) {
        let a = run_mc(&cfg, seed).unwrap();
        prop_assert_eq!(a.arrivals, a.cumulative_success + a.dropped + a.pending);
        prop_assert_eq!(a.arrivals, cfg.total_ues);
        prop_assert_eq!(&a, &run_mc(&cfg, seed).unwrap());
    }
}

#[test]
fn success_peaks_below_bin_count() {
    for r in [2u64, 5, 22, 100] {
        let (best_m, best) = (1..=5 * r)
            .map(|m| (m, expected_success(m as f64, r).unwrap()))
            .max_by(|a, b| a.1.total_cmp(&b.1))
            .unwrap();
        assert!(best < r as f64);
        assert!(best_m.abs_diff(r) <= 1, "r={r} peak at {best_m}");
    }
}
