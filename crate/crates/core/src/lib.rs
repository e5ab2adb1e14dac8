//! Random-backoff device-to-device discovery in periodic LTE-A discovery zones.
//!
//! Two engines model the same scheme. [`analytic`] runs the deterministic
//! fluid recursion over zones, built on the balls-and-bins success
//! expectation, and [`delay`] derives the mean discovery delay from its
//! ledger. [`montecarlo`] simulates every UE individually and serves as
//! ground truth for the fluid model. [`experiments`] packages the standard
//! parameter sweeps, and [`io`] reads configs and writes CSV/JSON reports.

pub mod analytic;
pub mod config;
pub mod delay;
pub mod error;
pub mod experiments;
pub mod io;
pub mod ledger;
pub mod montecarlo;
pub mod special;
pub mod timeline;
pub mod traffic;

pub use analytic::{expected_success, run_analytic, AnalyticReport};
pub use config::{ScenarioConfig, SuccessMode};
pub use delay::{average_delay, DelayReport};
pub use error::{ConfigError, Error, Result};
pub use ledger::TransmissionLedger;
pub use montecarlo::{run_mc, McRunReport, UeRecord};
pub use timeline::DzTimeline;
pub use traffic::{ArrivalProfile, ArrivalTimeModel};
