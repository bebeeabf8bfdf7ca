//! Real-valued sequences on an integer grid with an origin `a` and optional
//! pre-origin history points. The main domain is `a+1 ..= a+K`; history, when
//! present, covers `d ..= a` for some `d ≤ a`. Grid spacing is exactly 1.

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct SampledSignal {
    origin: i64,
    start: i64,
    values: Vec<f64>,
}

impl SampledSignal {
    /// A signal living on `a+1 ..= a+K` with no history.
    pub fn from_samples(origin: i64, samples: Vec<f64>) -> Result<Self> {
        Self::with_history(origin, Vec::new(), samples)
    }

    /// A signal with `history` on `a−h+1 ..= a` followed by `samples` on
    /// `a+1 ..= a+K`. The horizon K must be at least 1.
    pub fn with_history(origin: i64, history: Vec<f64>, samples: Vec<f64>) -> Result<Self> {
        if samples.is_empty() {
            return Err(Error::InvalidArgument(
                "signal needs at least one sample past the origin".into(),
            ));
        }
        let start = origin + 1 - history.len() as i64;
        let mut values = history;
        values.extend_from_slice(&samples);
        Ok(Self { origin, start, values })
    }

    /// Builds a signal by evaluating `f` on `a−h+1 ..= a+K`.
    pub fn from_fn(
        origin: i64,
        history_len: usize,
        horizon: usize,
        f: impl Fn(i64) -> f64,
    ) -> Result<Self> {
        let start = origin + 1 - history_len as i64;
        let history = (start..=origin).map(&f).collect();
        let samples = (origin + 1..=origin + horizon as i64).map(&f).collect();
        Self::with_history(origin, history, samples)
    }

    pub fn origin(&self) -> i64 {
        self.origin
    }

    /// First grid point carrying a value (`d`).
    pub fn start(&self) -> i64 {
        self.start
    }

    /// Last grid point (`a + K`).
    pub fn end(&self) -> i64 {
        self.start + self.values.len() as i64 - 1
    }

    /// Number of samples past the origin (`K`).
    pub fn horizon(&self) -> usize {
        (self.end() - self.origin) as usize
    }

    /// Number of history points at or before the origin.
    pub fn history_len(&self) -> usize {
        (self.origin + 1 - self.start) as usize
    }

    pub fn value(&self, k: i64) -> Option<f64> {
        if k < self.start || k > self.end() {
            return None;
        }
        Some(self.values[(k - self.start) as usize])
    }

    /// The samples on `a+1 ..= a+K`.
    pub fn samples(&self) -> &[f64] {
        &self.values[self.history_len()..]
    }

    /// The history on `d ..= a` (empty when the signal has none).
    pub fn history(&self) -> &[f64] {
        &self.values[..self.history_len()]
    }

    /// The same signal restricted to its main domain `a+1 ..= a+K`.
    pub fn main_only(&self) -> Self {
        Self {
            origin: self.origin,
            start: self.origin + 1,
            values: self.samples().to_vec(),
        }
    }
}
