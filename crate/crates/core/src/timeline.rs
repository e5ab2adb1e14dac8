//! Time geometry of the periodic discovery zones.
//!
//! Each zone is preceded by its interval: zone `i` (1-based) starts at
//! `i·T_d + (i-1)·T_DZ` and lasts `T_DZ`. New UEs activating between the
//! start of zone `i-1` and the start of zone `i` contend first in zone `i`,
//! so the arrival windows tile `[0, T]` with `T = K·T_d + (K-1)·T_DZ`.

use serde::Serialize;

use crate::config::ScenarioConfig;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DzTimeline {
    pub dz_interval: f64,
    pub dz_length: f64,
    pub dz_count: usize,
}

impl DzTimeline {
    pub fn new(config: &ScenarioConfig) -> Self {
        DzTimeline {
            dz_interval: config.dz_interval,
            dz_length: config.dz_length,
            dz_count: config.dz_count,
        }
    }

    /// Period of the zone pattern, `T_d + T_DZ`.
    pub fn period(&self) -> f64 {
        self.dz_interval + self.dz_length
    }

    pub fn dz_start(&self, i: usize) -> f64 {
        debug_assert!(i >= 1);
        i as f64 * self.dz_interval + (i - 1) as f64 * self.dz_length
    }

    pub fn dz_end(&self, i: usize) -> f64 {
        i as f64 * self.period()
    }

    /// Arrival horizon `T`; equals the start of the last zone.
    pub fn horizon(&self) -> f64 {
        self.dz_start(self.dz_count)
    }

    /// Activation window `[lo, hi]` of UEs whose first transmission is in zone `i`.
    pub fn arrival_window(&self, i: usize) -> Result<(f64, f64)> {
        self.check(i)?;
        let lo = if i == 1 { 0.0 } else { self.dz_start(i - 1) };
        Ok((lo, self.dz_start(i)))
    }

    /// First zone whose arrival window contains `t`. Times past the horizon map to the last zone.
    pub fn arrival_dz(&self, t: f64) -> usize {
        // dz_start is affine in i, so solve then correct for rounding.
        let mut i = ((t + self.dz_length) / self.period()).ceil().max(1.0) as usize;
        i = i.min(self.dz_count);
        while i > 1 && t <= self.dz_start(i - 1) {
            i -= 1;
        }
        while i < self.dz_count && t > self.dz_start(i) {
            i += 1;
        }
        i
    }

    pub(crate) fn check(&self, i: usize) -> Result<()> {
        if (1..=self.dz_count).contains(&i) {
            Ok(())
        } else {
            Err(Error::DzIndex { index: i, count: self.dz_count })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn table_one() -> DzTimeline {
        DzTimeline::new(&ScenarioConfig::default())
    }

    #[test]
    fn zone_starts() {
        let tl = table_one();
        assert!((tl.dz_start(1) - 10.0).abs() < 1e-12);
        assert!((tl.dz_start(2) - 20.03).abs() < 1e-12);
        assert!((tl.horizon() - 200.57).abs() < 1e-12);
        assert!((tl.dz_end(1) - 10.03).abs() < 1e-12);
    }

    #[test]
    fn zones_never_overlap() {
        let tl = table_one();
        for i in 1..tl.dz_count {
            assert!(tl.dz_end(i) < tl.dz_start(i + 1));
            assert!((tl.dz_end(i) - tl.dz_start(i) - tl.dz_length).abs() < 1e-12);
        }
    }

    #[test]
    fn windows_tile_horizon() {
        let tl = table_one();
        let tol = 1e-12 * tl.horizon();
        let (lo, _) = tl.arrival_window(1).unwrap();
        assert_eq!(lo, 0.0);
        for i in 1..tl.dz_count {
            let (_, hi) = tl.arrival_window(i).unwrap();
            let (next_lo, _) = tl.arrival_window(i + 1).unwrap();
            assert!((hi - next_lo).abs() <= tol);
        }
        let (_, last) = tl.arrival_window(tl.dz_count).unwrap();
        assert!((last - tl.horizon()).abs() <= tol);
    }

    #[test]
    fn arrival_dz_matches_windows() {
        let tl = table_one();
        assert_eq!(tl.arrival_dz(0.0), 1);
        assert_eq!(tl.arrival_dz(10.0), 1);
        assert_eq!(tl.arrival_dz(10.01), 2);
        assert_eq!(tl.arrival_dz(20.03), 2);
        assert_eq!(tl.arrival_dz(20.0301), 3);
        assert_eq!(tl.arrival_dz(tl.horizon()), 20);
        for k in 0..=2000 {
            let t = tl.horizon() * k as f64 / 2000.0;
            let i = tl.arrival_dz(t);
            let (lo, hi) = tl.arrival_window(i).unwrap();
            assert!(t <= hi && (t > lo || i == 1), "t={t} i={i}");
        }
    }

    #[test]
    fn index_out_of_range() {
        let tl = table_one();
        assert!(tl.arrival_window(0).is_err());
        assert!(tl.arrival_window(21).is_err());
    }
}
