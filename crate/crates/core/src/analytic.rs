//! Fluid recursion over discovery zones.
//!
//! New arrivals enter zone `i` as their first attempt. Of the `m` UEs making
//! a given attempt, the balls-and-bins expectation `m (1 - 1/R)^(m-1)` (or the
//! zone-coupled variant) succeed. Failures either drop out after `L_max`
//! attempts or back off uniformly over the next `W` zones. No retransmission
//! is modelled in zones `1..=W`.

use serde::Serialize;

use crate::config::{ScenarioConfig, SuccessMode};
use crate::error::{Error, Result};
use crate::ledger::TransmissionLedger;
use crate::traffic::{new_arrivals, ArrivalProfile};

/// Expected number of singly occupied bins when `m` balls fall into `r` bins.
///
/// For the fluid model `m` is real. Below one ball the count is the ball
/// mass itself, so the result never exceeds `m` and is continuous at 0 and 1.
pub fn expected_success(m: f64, r: u64) -> Result<f64> {
    if m.is_nan() || m < 0.0 {
        return Err(Error::NegativeCount(m));
    }
    Ok(m * survival(m, r))
}

/// `(1 - 1/r)^(n - 1)` with the exponent floored at zero.
fn survival(n: f64, r: u64) -> f64 {
    if n <= 1.0 {
        return 1.0;
    }
    ((n - 1.0) * (-1.0 / r as f64).ln_1p()).exp()
}

/// Success probability of an `l`-th transmission used by the weighted discovery count, `1 - e^{-l}`.
pub fn attempt_weight(l: usize) -> f64 {
    1.0 - (-(l as f64)).exp()
}

/// Incremental driver of the recursion; zones must be stepped in order.
#[derive(Debug, Clone)]
pub struct Recursion<'a> {
    config: &'a ScenarioConfig,
    profile: &'a ArrivalProfile,
    ledger: TransmissionLedger,
    next: usize,
}

impl<'a> Recursion<'a> {
    pub fn new(config: &'a ScenarioConfig, profile: &'a ArrivalProfile) -> Self {
        Recursion {
            config,
            profile,
            ledger: TransmissionLedger::new(config.dz_count, config.max_transmissions),
            next: 1,
        }
    }

    pub fn ledger(&self) -> &TransmissionLedger {
        &self.ledger
    }

    pub fn into_ledger(self) -> TransmissionLedger {
        self.ledger
    }

    /// Fills row `i` of the ledger from the completed rows before it.
    pub fn step_dz(&mut self, i: usize) -> Result<()> {
        if i != self.next || i > self.config.dz_count {
            return Err(Error::OutOfOrder { expected: self.next, got: i });
        }
        let cfg = self.config;
        let (window, l_max, r) = (cfg.backoff_window, cfg.max_transmissions, cfg.resources);
        let share = 1.0 / window as f64;

        let mut row = vec![0.0; l_max];
        row[0] = new_arrivals(i, cfg, self.profile)?;
        if i > window {
            for l in 2..=l_max {
                row[l - 1] = share * (1..=window).map(|w| self.ledger.m_f(i - w, l - 1)).sum::<f64>();
            }
        }

        let zone_survival = survival(row.iter().sum(), r);
        for (l, &m) in (1..).zip(&row) {
            let m_s = match cfg.success_mode {
                SuccessMode::Literal => expected_success(m, r)?,
                SuccessMode::Coupled => m * zone_survival,
            };
            self.ledger.set(i, l, m, m_s);
        }

        let (mut pending, mut suppressed) = (0.0, 0.0);
        for l in 1..l_max {
            let part = share * self.ledger.m_f(i, l);
            for w in 1..=window {
                let target = i + w;
                if target > cfg.dz_count {
                    pending += part;
                } else if target <= window {
                    suppressed += part;
                }
            }
        }
        let dropped = self.ledger.m_f(i, l_max);
        self.ledger.record_outflow(i, dropped, pending, suppressed);
        self.next += 1;
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AnalyticReport {
    pub config: ScenarioConfig,
    pub profile: ArrivalProfile,
    pub ledger: TransmissionLedger,
    /// `M_i`, all contenders in zone `i`.
    pub per_dz_total: Vec<f64>,
    pub per_dz_success_raw: Vec<f64>,
    /// Successes weighted by `1 - e^{-l}`.
    pub per_dz_success_eq15: Vec<f64>,
    pub cumulative_success_raw: f64,
    pub cumulative_success_eq15: f64,
}

impl AnalyticReport {
    /// Per-zone discovered count selected by `eq15_weighting`.
    pub fn per_dz_success(&self) -> &[f64] {
        if self.config.eq15_weighting {
            &self.per_dz_success_eq15
        } else {
            &self.per_dz_success_raw
        }
    }

    /// Discovered UEs after `K` zones, weighted when `eq15_weighting` is on.
    pub fn cumulative_success(&self) -> f64 {
        if self.config.eq15_weighting {
            self.cumulative_success_eq15
        } else {
            self.cumulative_success_raw
        }
    }

    pub fn discovery_probability(&self) -> f64 {
        ratio(self.cumulative_success(), self.config.total_ues as f64)
    }

    pub fn discovery_probability_raw(&self) -> f64 {
        ratio(self.cumulative_success_raw, self.config.total_ues as f64)
    }

    pub fn discovery_probability_eq15(&self) -> f64 {
        ratio(self.cumulative_success_eq15, self.config.total_ues as f64)
    }
}

fn ratio(num: f64, den: f64) -> f64 {
    if den > 0.0 {
        num / den
    } else {
        0.0
    }
}

/// Runs the recursion over all `K` zones.
pub fn run_analytic(config: &ScenarioConfig) -> Result<AnalyticReport> {
    let config = config.clone().validate()?;
    let profile = ArrivalProfile::new(&config)?;
    run_analytic_with(&config, profile)
}

/// As [`run_analytic`] with a precomputed arrival profile.
pub fn run_analytic_with(config: &ScenarioConfig, profile: ArrivalProfile) -> Result<AnalyticReport> {
    let mut rec = Recursion::new(config, &profile);
    for i in 1..=config.dz_count {
        rec.step_dz(i)?;
    }
    let ledger = rec.into_ledger();
    let (k, l_max) = (config.dz_count, config.max_transmissions);

    let per_dz_total: Vec<f64> = (1..=k).map(|i| ledger.zone_total(i)).collect();
    let per_dz_success_raw: Vec<f64> = (1..=k).map(|i| ledger.zone_success(i)).collect();
    let per_dz_success_eq15: Vec<f64> = (1..=k)
        .map(|i| (1..=l_max).map(|l| ledger.m_s(i, l) * attempt_weight(l)).sum())
        .collect();

    // Within the first W zones only first attempts exist.
    let (cumulative_success_raw, cumulative_success_eq15) = if k <= config.backoff_window {
        let first: f64 = (1..=k).map(|i| ledger.m_s(i, 1)).sum();
        (first, first * attempt_weight(1))
    } else {
        (per_dz_success_raw.iter().sum(), per_dz_success_eq15.iter().sum())
    };

    Ok(AnalyticReport {
        config: config.clone(),
        profile,
        ledger,
        per_dz_total,
        per_dz_success_raw,
        per_dz_success_eq15,
        cumulative_success_raw,
        cumulative_success_eq15,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Average number of singletons over all r^m placements.
    fn enumerate_singletons(m: u32, r: u32) -> f64 {
        let total = r.pow(m);
        let mut singles = 0u64;
        for code in 0..total {
            let mut counts = vec![0u32; r as usize];
            let mut c = code;
            for _ in 0..m {
                counts[(c % r) as usize] += 1;
                c /= r;
            }
            singles += counts.iter().filter(|&&n| n == 1).count() as u64;
        }
        singles as f64 / total as f64
    }

    #[test]
    fn balls_and_bins_values() {
        assert_eq!(expected_success(1.0, 22).unwrap(), 1.0);
        assert_eq!(expected_success(0.0, 22).unwrap(), 0.0);
        assert_eq!(enumerate_singletons(3, 2), 0.75);
        assert!((expected_success(3.0, 2).unwrap() - 0.75).abs() < 1e-15);
        assert!((expected_success(22.0, 22).unwrap() - 8.282_311_739_536_826).abs() < 1e-12);
        assert!(expected_success(-1.0, 22).is_err());
        assert!(expected_success(f64::NAN, 22).is_err());
    }

    #[test]
    fn formula_matches_enumeration() {
        for (m, r) in [(2, 2), (3, 3), (4, 3), (5, 4), (6, 5), (7, 3)] {
            let exact = enumerate_singletons(m, r);
            let formula = expected_success(m as f64, r as u64).unwrap();
            assert!((exact - formula).abs() < 1e-12, "m={m} r={r}");
        }
    }

    #[test]
    fn fractional_mass_never_exceeds_itself() {
        for k in 0..=100 {
            let m = k as f64 / 50.0;
            let s = expected_success(m, 22).unwrap();
            assert!(s <= m + 1e-15);
        }
    }

    #[test]
    fn attempt_group_of_ten() {
        let s = expected_success(10.0, 22).unwrap();
        assert!((s - 6.579_146_017_105_244).abs() < 1e-12);
        assert!((10.0 - s - 3.420_853_982_894_756).abs() < 1e-12);
    }

    #[test]
    fn first_zone_holds_only_arrivals() {
        let cfg = ScenarioConfig::default();
        let report = run_analytic(&cfg).unwrap();
        let arrivals = cfg.total_ues as f64 * report.profile.window_mass(1).unwrap();
        assert_eq!(report.ledger.m(1, 1), arrivals);
        for l in 2..=cfg.max_transmissions {
            assert_eq!(report.ledger.m(1, l), 0.0);
        }
    }

    #[test]
    fn no_retransmission_within_first_window() {
        let cfg = ScenarioConfig { backoff_window: 5, max_transmissions: 4, ..Default::default() };
        let report = run_analytic(&cfg).unwrap();
        for i in 1..=5 {
            for l in 2..=4 {
                assert_eq!(report.ledger.m(i, l), 0.0);
            }
        }
        assert!(report.ledger.m(6, 2) > 0.0);
    }

    #[test]
    fn unit_window_retries_next_zone() {
        let cfg = ScenarioConfig { backoff_window: 1, ..Default::default() };
        let report = run_analytic(&cfg).unwrap();
        for i in 2..=cfg.dz_count {
            for l in 2..=cfg.max_transmissions {
                assert_eq!(report.ledger.m(i, l), report.ledger.m_f(i - 1, l - 1));
            }
        }
    }

    #[test]
    fn out_of_order_steps_rejected() {
        let cfg = ScenarioConfig::default();
        let profile = ArrivalProfile::new(&cfg).unwrap();
        let mut rec = Recursion::new(&cfg, &profile);
        assert!(matches!(rec.step_dz(2), Err(Error::OutOfOrder { expected: 1, got: 2 })));
        rec.step_dz(1).unwrap();
        assert!(rec.step_dz(1).is_err());
        rec.step_dz(2).unwrap();
    }

    #[test]
    fn empty_population() {
        let cfg = ScenarioConfig { total_ues: 0, ..Default::default() };
        let report = run_analytic(&cfg).unwrap();
        assert_eq!(report.cumulative_success_raw, 0.0);
        assert_eq!(report.cumulative_success_eq15, 0.0);
        assert_eq!(report.discovery_probability(), 0.0);
        assert!(report.per_dz_total.iter().all(|&x| x == 0.0));
    }

    #[test]
    fn unlimited_resources_discover_everyone() {
        for mode in [SuccessMode::Literal, SuccessMode::Coupled] {
            let cfg = ScenarioConfig { resources: 1_000_000_000, success_mode: mode, ..Default::default() };
            let report = run_analytic(&cfg).unwrap();
            assert!((report.cumulative_success_raw - 450.0).abs() < 1e-3);
        }
    }

    #[test]
    fn global_mass_balance() {
        for mode in [SuccessMode::Literal, SuccessMode::Coupled] {
            for (w, l) in [(1, 1), (1, 3), (3, 3), (3, 20), (6, 7), (20, 2)] {
                let cfg = ScenarioConfig {
                    backoff_window: w,
                    max_transmissions: l,
                    success_mode: mode,
                    ..Default::default()
                };
                let led = run_analytic(&cfg).unwrap().ledger;
                let out = led.total_success() + led.total_dropped() + led.total_pending() + led.total_suppressed();
                let arrivals = led.total_arrivals();
                assert!((out - arrivals).abs() <= 1e-9 * arrivals, "{mode} W={w} L={l}");
            }
        }
    }

    #[test]
    fn coupled_success_never_exceeds_bins() {
        for n in 1..=6 {
            let cfg = ScenarioConfig { total_ues: 450 * n, dz_count: 50, max_transmissions: 7, ..Default::default() };
            let report = run_analytic(&cfg).unwrap();
            for i in 0..50 {
                let s = report.per_dz_success_raw[i];
                assert!(s <= report.per_dz_total[i].min(22.0) + 1e-12);
            }
        }
    }

    #[test]
    fn modes_agree_with_single_attempt_group() {
        // With one transmission allowed every zone holds a single group.
        let base = ScenarioConfig { max_transmissions: 1, ..Default::default() };
        let lit = run_analytic(&ScenarioConfig { success_mode: SuccessMode::Literal, ..base.clone() }).unwrap();
        let cpl = run_analytic(&ScenarioConfig { success_mode: SuccessMode::Coupled, ..base }).unwrap();
        assert_eq!(lit.ledger, cpl.ledger);
    }

    #[test]
    fn weighted_count_is_below_raw() {
        let report = run_analytic(&ScenarioConfig::default()).unwrap();
        assert!(report.cumulative_success_eq15 < report.cumulative_success_raw);
        assert!(report.cumulative_success_eq15 > attempt_weight(1) * report.cumulative_success_raw);
    }
}
