//! Mean discovery delay of the fluid model and the delay/throughput ratio.

use serde::Serialize;

use crate::analytic::AnalyticReport;
use crate::config::ScenarioConfig;
use crate::error::{Error, Result};
use crate::traffic::ArrivalTimeModel;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DelayReport {
    pub arrival_model: ArrivalTimeModel,
    /// Mean backoff wait per retransmission, seconds.
    pub mean_backoff: f64,
    /// Arrival-time term, seconds.
    pub mean_arrival: f64,
    /// Delay of a UE discovered on its `l`-th transmission, index `l - 1`. Identical for every zone.
    pub per_attempt_delay: Vec<f64>,
    /// Success-weighted delay of UEs discovered in each zone; `None` where nobody was.
    pub per_dz_delay: Vec<Option<f64>>,
    pub average_delay: f64,
    /// Average delay divided by the cumulative discovered count.
    pub tradeoff: f64,
}

/// `(1/W) Σ_{w=1..W} w·(T_d + T_DZ)`.
pub fn mean_backoff_time(window: usize, dz_interval: f64, dz_length: f64) -> f64 {
    let period = dz_interval + dz_length;
    (1..=window).map(|w| w as f64 * period).sum::<f64>() / window as f64
}

/// Delay of a UE discovered on attempt `l`: arrival term, `l - 1` backoffs, processing time.
pub fn attempt_delay(l: usize, config: &ScenarioConfig, mean_arrival: f64) -> f64 {
    let backoff = mean_backoff_time(config.backoff_window, config.dz_interval, config.dz_length);
    mean_arrival + (l as f64 - 1.0) * backoff + config.processing_delay
}

/// Success-weighted mean delay over the whole ledger.
pub fn average_delay(report: &AnalyticReport, model: ArrivalTimeModel) -> Result<DelayReport> {
    let cfg = &report.config;
    let ledger = &report.ledger;
    let mean_arrival = report.profile.mean_arrival_time(model);
    let mean_backoff = mean_backoff_time(cfg.backoff_window, cfg.dz_interval, cfg.dz_length);
    let per_attempt_delay: Vec<f64> =
        (1..=cfg.max_transmissions).map(|l| attempt_delay(l, cfg, mean_arrival)).collect();

    let mut weighted = 0.0;
    let mut successes = 0.0;
    let mut per_dz_delay = Vec::with_capacity(cfg.dz_count);
    for i in 1..=cfg.dz_count {
        let (mut zone_weighted, mut zone_successes) = (0.0, 0.0);
        for (l, delay) in (1..).zip(&per_attempt_delay) {
            let m_s = ledger.m_s(i, l);
            zone_weighted += m_s * delay;
            zone_successes += m_s;
        }
        per_dz_delay.push((zone_successes > 0.0).then(|| zone_weighted / zone_successes));
        weighted += zone_weighted;
        successes += zone_successes;
    }
    if successes <= 0.0 {
        return Err(Error::NoDiscoveries);
    }
    let average_delay = weighted / successes;
    Ok(DelayReport {
        arrival_model: model,
        mean_backoff,
        mean_arrival,
        per_attempt_delay,
        per_dz_delay,
        average_delay,
        tradeoff: average_delay / report.cumulative_success(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analytic::run_analytic;

    #[test]
    fn backoff_means() {
        assert!((mean_backoff_time(1, 10.0, 0.03) - 10.03).abs() < 1e-12);
        assert!((mean_backoff_time(3, 10.0, 0.03) - 20.06).abs() < 1e-12);
        assert!((mean_backoff_time(6, 10.0, 0.03) - 35.105).abs() < 1e-12);
    }

    #[test]
    fn attempt_delays() {
        let cfg = ScenarioConfig::default();
        assert!((attempt_delay(1, &cfg, 4.0) - 4.005).abs() < 1e-12);
        assert!((attempt_delay(3, &cfg, 4.0) - (4.0 + 2.0 * 20.06 + 0.005)).abs() < 1e-12);
        assert!((attempt_delay(1, &cfg, 0.0) - 0.005).abs() < 1e-15);
    }

    #[test]
    fn delay_is_convex_combination() {
        for (w, l) in [(1, 3), (3, 3), (3, 7), (6, 20)] {
            let cfg = ScenarioConfig { backoff_window: w, max_transmissions: l, ..Default::default() };
            let report = run_analytic(&cfg).unwrap();
            let d = average_delay(&report, ArrivalTimeModel::Literal).unwrap();
            let lo = d.per_attempt_delay.first().unwrap();
            let hi = d.per_attempt_delay.last().unwrap();
            assert!(*lo <= d.average_delay && d.average_delay <= *hi);
            assert!(d.average_delay >= cfg.processing_delay);
            assert!(d.tradeoff > 0.0);
            for pair in d.per_attempt_delay.windows(2) {
                assert!((pair[1] - pair[0] - d.mean_backoff).abs() < 1e-9);
            }
        }
    }

    #[test]
    fn first_attempt_only() {
        let cfg = ScenarioConfig { max_transmissions: 1, ..Default::default() };
        let report = run_analytic(&cfg).unwrap();
        let d = average_delay(&report, ArrivalTimeModel::Literal).unwrap();
        assert!((d.average_delay - (d.mean_arrival + cfg.processing_delay)).abs() < 1e-12);
    }

    #[test]
    fn larger_window_delays_retries() {
        let mut prev: Option<Vec<f64>> = None;
        for w in 1..=6 {
            let cfg = ScenarioConfig { backoff_window: w, max_transmissions: 4, ..Default::default() };
            let d = average_delay(&run_analytic(&cfg).unwrap(), ArrivalTimeModel::Literal).unwrap();
            if let Some(p) = prev {
                assert!(d.per_attempt_delay[1..].iter().zip(&p[1..]).all(|(now, before)| now > before));
            }
            prev = Some(d.per_attempt_delay);
        }
    }

    #[test]
    fn no_discoveries_is_an_error() {
        let cfg = ScenarioConfig { total_ues: 0, ..Default::default() };
        let report = run_analytic(&cfg).unwrap();
        assert_eq!(average_delay(&report, ArrivalTimeModel::Literal).unwrap_err(), Error::NoDiscoveries);
    }
}
