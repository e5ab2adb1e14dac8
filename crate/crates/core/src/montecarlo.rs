//! Agent-level simulation of the random-backoff discovery procedure.
//!
//! Every UE draws its own activation time, joins the first zone after it,
//! and picks one of `R` resources uniformly. A beacon gets through only if
//! no other UE picked the same resource. A failed UE that has used all
//! `L_max` transmissions drops out. Otherwise it skips `W_BO ~ U{1..W}`
//! zones and tries again.
//!
//! Randomness comes from ChaCha8 streams keyed by the run seed: stream 0
//! draws activation times in UE order, and stream `i` drives zone `i`,
//! whose contenders are visited in ascending UE id.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Beta, Distribution};
use serde::Serialize;

use crate::analytic::attempt_weight;
use crate::config::ScenarioConfig;
use crate::error::Result;
use crate::timeline::DzTimeline;
use crate::traffic::ArrivalProfile;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase", tag = "status")]
pub enum Outcome {
    Discovered { dz: usize, attempt: usize },
    Dropped,
    Pending,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct UeRecord {
    pub id: usize,
    pub arrival_time: f64,
    /// Zone of the first transmission.
    pub arrival_dz: usize,
    pub attempts: usize,
    pub backoff_draws: Vec<usize>,
    pub outcome: Outcome,
    /// Zone of the next scheduled transmission while pending.
    pub next_dz: Option<usize>,
    /// `dz_end(success zone) - arrival_time + T_h`, set once discovered.
    pub delay: Option<f64>,
}

impl UeRecord {
    pub fn new(id: usize, arrival_time: f64, arrival_dz: usize) -> Self {
        UeRecord {
            id,
            arrival_time,
            arrival_dz,
            attempts: 0,
            backoff_draws: Vec::new(),
            outcome: Outcome::Pending,
            next_dz: Some(arrival_dz),
            delay: None,
        }
    }
}

/// Deterministic substream `stream` of the generator seeded by `seed`.
pub fn substream(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Draws `M` independent activation times and assigns each UE its first zone.
pub fn sample_arrivals<R: Rng + ?Sized>(
    config: &ScenarioConfig,
    profile: &ArrivalProfile,
    rng: &mut R,
) -> Vec<UeRecord> {
    let beta = Beta::new(profile.alpha, profile.beta).expect("shape parameters validated as positive");
    (0..config.total_ues as usize)
        .map(|id| {
            let t = beta.sample(rng) * profile.horizon;
            UeRecord::new(id, t, profile.timeline.arrival_dz(t))
        })
        .collect()
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ZoneOutcome {
    pub successes: Vec<usize>,
    pub failures: Vec<usize>,
}

/// One contention round in zone `i` among `contenders` (indices into `ues`).
///
/// Each contender picks a resource uniformly from `0..R`; sole occupants
/// are discovered, everyone else has spent one more transmission.
pub fn run_dz<R: Rng + ?Sized>(
    i: usize,
    ues: &mut [UeRecord],
    contenders: &[usize],
    config: &ScenarioConfig,
    timeline: &DzTimeline,
    rng: &mut R,
) -> ZoneOutcome {
    let mut picks: Vec<(u64, usize)> =
        contenders.iter().map(|&ue| (rng.random_range(0..config.resources), ue)).collect();
    picks.sort_unstable();

    let mut out = ZoneOutcome::default();
    let mut start = 0;
    while start < picks.len() {
        let bin = picks[start].0;
        let end = start + picks[start..].iter().take_while(|p| p.0 == bin).count();
        let target = if end - start == 1 { &mut out.successes } else { &mut out.failures };
        target.extend(picks[start..end].iter().map(|p| p.1));
        start = end;
    }
    out.successes.sort_unstable();
    out.failures.sort_unstable();

    let end = timeline.dz_end(i);
    for &ue in contenders {
        let rec = &mut ues[ue];
        debug_assert!(rec.attempts < config.max_transmissions);
        rec.attempts += 1;
        rec.next_dz = None;
    }
    for &ue in &out.successes {
        let rec = &mut ues[ue];
        rec.outcome = Outcome::Discovered { dz: i, attempt: rec.attempts };
        rec.delay = Some(end - rec.arrival_time + config.processing_delay);
    }
    out
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct BackoffUpdate {
    /// `(ue, zone)` pairs for UEs that will transmit again, possibly beyond zone `K`.
    pub scheduled: Vec<(usize, usize)>,
    pub dropped: Vec<usize>,
}

/// Drops UEs out of transmissions and schedules the rest `W_BO ~ U{1..W}` zones ahead.
pub fn apply_backoff<R: Rng + ?Sized>(
    failures: &[usize],
    i: usize,
    ues: &mut [UeRecord],
    config: &ScenarioConfig,
    rng: &mut R,
) -> BackoffUpdate {
    let mut update = BackoffUpdate::default();
    for &ue in failures {
        let rec = &mut ues[ue];
        if rec.attempts >= config.max_transmissions {
            rec.outcome = Outcome::Dropped;
            rec.next_dz = None;
            update.dropped.push(ue);
        } else {
            let skip = rng.random_range(1..=config.backoff_window);
            rec.backoff_draws.push(skip);
            rec.next_dz = Some(i + skip);
            update.scheduled.push((ue, i + skip));
        }
    }
    update
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct McRunReport {
    pub seed: u64,
    pub config: ScenarioConfig,
    pub per_dz_arrivals: Vec<u64>,
    pub per_dz_contenders: Vec<u64>,
    pub per_dz_success: Vec<u64>,
    /// Successes weighted by `1 - e^{-l}` of their attempt index.
    pub per_dz_success_eq15: Vec<f64>,
    pub per_dz_failed: Vec<u64>,
    pub per_dz_dropped: Vec<u64>,
    pub per_dz_delay: Vec<Option<f64>>,
    pub arrivals: u64,
    pub cumulative_success: u64,
    pub cumulative_success_eq15: f64,
    pub dropped: u64,
    pub pending: u64,
    /// Mean delay over discovered UEs; `None` if nobody was discovered.
    pub empirical_avg_delay: Option<f64>,
}

impl McRunReport {
    pub fn discovery_probability(&self) -> f64 {
        if self.arrivals == 0 {
            0.0
        } else {
            self.cumulative_success as f64 / self.arrivals as f64
        }
    }
}

/// A finished run together with every UE's lifecycle.
#[derive(Debug, Clone)]
pub struct McRun {
    pub report: McRunReport,
    pub ues: Vec<UeRecord>,
}

pub fn run_mc(config: &ScenarioConfig, seed: u64) -> Result<McRunReport> {
    Ok(run_mc_detailed(config, seed)?.report)
}

pub fn run_mc_detailed(config: &ScenarioConfig, seed: u64) -> Result<McRun> {
    let config = config.clone().validate()?;
    let profile = ArrivalProfile::new(&config)?;
    Ok(run_mc_with(&config, &profile, seed))
}

/// Simulates one `K`-zone episode with a prebuilt profile. `config` must be valid.
pub fn run_mc_with(config: &ScenarioConfig, profile: &ArrivalProfile, seed: u64) -> McRun {
    let k = config.dz_count;
    let timeline = profile.timeline;
    let mut ues = sample_arrivals(config, profile, &mut substream(seed, 0));

    let mut queue: Vec<Vec<usize>> = vec![Vec::new(); k + 1];
    let mut per_dz_arrivals = vec![0u64; k];
    for ue in &ues {
        queue[ue.arrival_dz].push(ue.id);
        per_dz_arrivals[ue.arrival_dz - 1] += 1;
    }

    let mut per_dz_contenders = vec![0u64; k];
    let mut per_dz_success = vec![0u64; k];
    let mut per_dz_success_eq15 = vec![0.0; k];
    let mut per_dz_failed = vec![0u64; k];
    let mut per_dz_dropped = vec![0u64; k];
    let mut per_dz_delay = vec![None; k];
    for i in 1..=k {
        let mut contenders = std::mem::take(&mut queue[i]);
        contenders.sort_unstable();
        let mut rng = substream(seed, i as u64);
        let zone = run_dz(i, &mut ues, &contenders, config, &timeline, &mut rng);
        let update = apply_backoff(&zone.failures, i, &mut ues, config, &mut rng);
        for &(ue, target) in &update.scheduled {
            if target <= k {
                queue[target].push(ue);
            }
        }

        per_dz_contenders[i - 1] = contenders.len() as u64;
        per_dz_success[i - 1] = zone.successes.len() as u64;
        per_dz_failed[i - 1] = zone.failures.len() as u64;
        per_dz_dropped[i - 1] = update.dropped.len() as u64;
        per_dz_success_eq15[i - 1] = zone.successes.iter().map(|&ue| attempt_weight(ues[ue].attempts)).sum();
        if !zone.successes.is_empty() {
            let total: f64 = zone.successes.iter().filter_map(|&ue| ues[ue].delay).sum();
            per_dz_delay[i - 1] = Some(total / zone.successes.len() as f64);
        }
    }

    let cumulative_success: u64 = per_dz_success.iter().sum();
    let dropped: u64 = per_dz_dropped.iter().sum();
    let pending = ues.iter().filter(|u| u.outcome == Outcome::Pending).count() as u64;
    let delays: Vec<f64> = ues.iter().filter_map(|u| u.delay).collect();
    let empirical_avg_delay = (!delays.is_empty()).then(|| delays.iter().sum::<f64>() / delays.len() as f64);

    let report = McRunReport {
        seed,
        config: config.clone(),
        per_dz_arrivals,
        per_dz_contenders,
        per_dz_success,
        cumulative_success_eq15: per_dz_success_eq15.iter().sum(),
        per_dz_success_eq15,
        per_dz_failed,
        per_dz_dropped,
        per_dz_delay,
        arrivals: ues.len() as u64,
        cumulative_success,
        dropped,
        pending,
        empirical_avg_delay,
    };
    McRun { report, ues }
}
