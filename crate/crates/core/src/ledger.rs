//! Real-valued transmission counts produced by the fluid recursion.

use serde::Serialize;

/// Per-zone, per-attempt UE mass.
///
/// Indices are 1-based: zone `i ∈ 1..=K`, attempt `l ∈ 1..=L_max`.
/// Besides the three attempt matrices the ledger tracks where failed mass
/// goes, so that arrivals always equal successes plus dropped, pending and
/// suppressed mass.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TransmissionLedger {
    dz_count: usize,
    max_transmissions: usize,
    m: Vec<f64>,
    m_s: Vec<f64>,
    m_f: Vec<f64>,
    /// Mass failing its last allowed transmission in zone `i`.
    dropped: Vec<f64>,
    /// Mass failing in zone `i` whose backoff lands beyond zone `K`.
    pending: Vec<f64>,
    /// Mass failing in zone `i` whose backoff lands in a zone `≤ W`, where
    /// retransmissions are not modelled.
    suppressed: Vec<f64>,
}

impl TransmissionLedger {
    pub fn new(dz_count: usize, max_transmissions: usize) -> Self {
        let cells = dz_count * max_transmissions;
        TransmissionLedger {
            dz_count,
            max_transmissions,
            m: vec![0.0; cells],
            m_s: vec![0.0; cells],
            m_f: vec![0.0; cells],
            dropped: vec![0.0; dz_count],
            pending: vec![0.0; dz_count],
            suppressed: vec![0.0; dz_count],
        }
    }

    pub fn dz_count(&self) -> usize {
        self.dz_count
    }

    pub fn max_transmissions(&self) -> usize {
        self.max_transmissions
    }

    fn idx(&self, i: usize, l: usize) -> usize {
        assert!(
            (1..=self.dz_count).contains(&i) && (1..=self.max_transmissions).contains(&l),
            "ledger index ({i}, {l}) out of range"
        );
        (i - 1) * self.max_transmissions + (l - 1)
    }

    /// UEs making their `l`-th transmission in zone `i`.
    pub fn m(&self, i: usize, l: usize) -> f64 {
        self.m[self.idx(i, l)]
    }

    /// UEs succeeding on their `l`-th transmission in zone `i`.
    pub fn m_s(&self, i: usize, l: usize) -> f64 {
        self.m_s[self.idx(i, l)]
    }

    /// UEs failing their `l`-th transmission in zone `i`.
    pub fn m_f(&self, i: usize, l: usize) -> f64 {
        self.m_f[self.idx(i, l)]
    }

    /// Writes one attempt cell; failures are always `m - m_s`.
    pub(crate) fn set(&mut self, i: usize, l: usize, m: f64, m_s: f64) {
        let k = self.idx(i, l);
        self.m[k] = m;
        self.m_s[k] = m_s;
        self.m_f[k] = m - m_s;
    }

    pub(crate) fn record_outflow(&mut self, i: usize, dropped: f64, pending: f64, suppressed: f64) {
        self.dropped[i - 1] = dropped;
        self.pending[i - 1] = pending;
        self.suppressed[i - 1] = suppressed;
    }

    /// Total contenders `M_i` in zone `i`.
    pub fn zone_total(&self, i: usize) -> f64 {
        (1..=self.max_transmissions).map(|l| self.m(i, l)).sum()
    }

    pub fn zone_success(&self, i: usize) -> f64 {
        (1..=self.max_transmissions).map(|l| self.m_s(i, l)).sum()
    }

    pub fn zone_failed(&self, i: usize) -> f64 {
        (1..=self.max_transmissions).map(|l| self.m_f(i, l)).sum()
    }

    pub fn dropped(&self, i: usize) -> f64 {
        self.dropped[i - 1]
    }

    pub fn pending(&self, i: usize) -> f64 {
        self.pending[i - 1]
    }

    pub fn suppressed(&self, i: usize) -> f64 {
        self.suppressed[i - 1]
    }

    pub fn total_dropped(&self) -> f64 {
        self.dropped.iter().sum()
    }

    pub fn total_pending(&self) -> f64 {
        self.pending.iter().sum()
    }

    pub fn total_suppressed(&self) -> f64 {
        self.suppressed.iter().sum()
    }

    pub fn total_success(&self) -> f64 {
        self.m_s.iter().sum()
    }

    pub fn total_arrivals(&self) -> f64 {
        (1..=self.dz_count).map(|i| self.m(i, 1)).sum()
    }
}
