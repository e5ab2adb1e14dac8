//! Beta-distributed activation traffic.
//!
//! UEs activate at times drawn from a Beta(α, β) density stretched over the
//! arrival horizon `[0, T]`. The profile precomputes, for every zone, the
//! probability mass of its arrival window and the first moment `∫ t·p(t) dt`
//! over that window.

use serde::Serialize;

use crate::config::ScenarioConfig;
use crate::error::{Error, Result};
use crate::special::{beta_inc_reg, integrate, ln_beta};
use crate::timeline::DzTimeline;

/// Absolute tolerance of every window integral.
pub const QUADRATURE_TOL: f64 = 1e-10;

/// How the arrival-time term of the delay model is computed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ArrivalTimeModel {
    /// Unnormalized absolute-time window moments averaged over zones, as in
    /// the published delay model.
    #[default]
    Literal,
    /// Expected wait from activation to the end of the first zone the UE
    /// contends in, averaged over all UEs. Comparable with the Monte Carlo
    /// empirical delay.
    Conditional,
}

/// Beta density on `[0, horizon]`.
pub fn beta_pdf(t: f64, alpha: f64, beta: f64, horizon: f64) -> Result<f64> {
    if !(0.0..=horizon).contains(&t) {
        return Err(Error::OutOfDomain { t, horizon });
    }
    Ok(scaled_pdf(t / horizon, alpha, beta, -ln_beta(alpha, beta)) / horizon)
}

fn scaled_pdf(x: f64, alpha: f64, beta: f64, neg_ln_b: f64) -> f64 {
    x.powf(alpha - 1.0) * (1.0 - x).powf(beta - 1.0) * neg_ln_b.exp()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ArrivalProfile {
    pub alpha: f64,
    pub beta: f64,
    pub horizon: f64,
    pub timeline: DzTimeline,
    window_mass: Vec<f64>,
    window_time: Vec<f64>,
    /// Largest |quadrature − incomplete beta| over all window masses.
    pub mass_discrepancy: f64,
}

impl ArrivalProfile {
    pub fn new(config: &ScenarioConfig) -> Result<Self> {
        let timeline = DzTimeline::new(config);
        Self::with_timeline(config.alpha, config.beta, timeline)
    }

    pub fn with_timeline(alpha: f64, beta: f64, timeline: DzTimeline) -> Result<Self> {
        let horizon = timeline.horizon();
        let neg_ln_b = -ln_beta(alpha, beta);
        let density = |t: f64| scaled_pdf(t / horizon, alpha, beta, neg_ln_b) / horizon;

        let mut window_mass = Vec::with_capacity(timeline.dz_count);
        let mut window_time = Vec::with_capacity(timeline.dz_count);
        let mut mass_discrepancy: f64 = 0.0;
        for i in 1..=timeline.dz_count {
            let (lo, hi) = timeline.arrival_window(i)?;
            let closed = closed_form_mass(alpha, beta, horizon, lo, hi);
            // A shape below 1 makes the density singular at that end of the
            // horizon. The Kronrod error estimate is unreliable there, so windows
            // touching such an end use the incomplete beta, which is exact.
            let singular = (i == 1 && alpha < 1.0) || (i == timeline.dz_count && beta < 1.0);
            let (mass, time) = if singular {
                (closed, closed_form_time(alpha, beta, horizon, lo, hi))
            } else {
                let mass = integrate(density, lo, hi, QUADRATURE_TOL).unwrap_or(closed);
                mass_discrepancy = mass_discrepancy.max((mass - closed).abs());
                let time = integrate(|t| t * density(t), lo, hi, QUADRATURE_TOL)
                    .unwrap_or_else(|_| closed_form_time(alpha, beta, horizon, lo, hi));
                (mass, time)
            };
            window_mass.push(mass);
            window_time.push(time);
        }
        Ok(ArrivalProfile { alpha, beta, horizon, timeline, window_mass, window_time, mass_discrepancy })
    }

    pub fn dz_count(&self) -> usize {
        self.timeline.dz_count
    }

    pub fn pdf(&self, t: f64) -> Result<f64> {
        beta_pdf(t, self.alpha, self.beta, self.horizon)
    }

    /// Probability that a UE activates in the arrival window of zone `i`.
    pub fn window_mass(&self, i: usize) -> Result<f64> {
        self.timeline.check(i)?;
        Ok(self.window_mass[i - 1])
    }

    /// `∫ t·p(t) dt` over the arrival window of zone `i` (absolute time, unnormalized).
    pub fn window_time(&self, i: usize) -> Result<f64> {
        self.timeline.check(i)?;
        Ok(self.window_time[i - 1])
    }

    /// Mean activation time of UEs arriving in window `i`, or the window midpoint if it holds no mass.
    pub fn conditional_arrival(&self, i: usize) -> Result<f64> {
        let mass = self.window_mass(i)?;
        if mass > 0.0 {
            Ok(self.window_time[i - 1] / mass)
        } else {
            let (lo, hi) = self.timeline.arrival_window(i)?;
            Ok(0.5 * (lo + hi))
        }
    }

    /// Averaged arrival-time term of the delay model.
    pub fn mean_arrival_time(&self, model: ArrivalTimeModel) -> f64 {
        match model {
            ArrivalTimeModel::Literal => self.window_time.iter().sum::<f64>() / self.dz_count() as f64,
            ArrivalTimeModel::Conditional => (1..=self.dz_count())
                .map(|i| self.window_mass[i - 1] * self.timeline.dz_end(i) - self.window_time[i - 1])
                .sum(),
        }
    }

    /// Expected activation time `T·α/(α+β)`.
    pub fn mean(&self) -> f64 {
        self.horizon * self.alpha / (self.alpha + self.beta)
    }
}

/// Expected new arrivals in zone `i`, `M · window_mass(i)`.
pub fn new_arrivals(i: usize, config: &ScenarioConfig, profile: &ArrivalProfile) -> Result<f64> {
    Ok(config.total_ues as f64 * profile.window_mass(i)?)
}

/// Window mass through the regularized incomplete beta function.
pub fn closed_form_mass(alpha: f64, beta: f64, horizon: f64, lo: f64, hi: f64) -> f64 {
    beta_inc_reg(alpha, beta, hi / horizon) - beta_inc_reg(alpha, beta, lo / horizon)
}

/// Window first moment through `t·p(t) = T·α/(α+β) · p_{α+1,β}(t)`.
pub fn closed_form_time(alpha: f64, beta: f64, horizon: f64, lo: f64, hi: f64) -> f64 {
    horizon * alpha / (alpha + beta) * closed_form_mass(alpha + 1.0, beta, horizon, lo, hi)
}
