//! Generating small elections and hunting them for axiom violations.

mod enumerate;
mod hunt;
mod random;
mod shrink;

pub use enumerate::{canonical_form, enumerate_elections, enumerate_layer, is_canonical, Layer};
pub use hunt::{hunt, Finding, HuntConfig, HuntMode, HuntResult, Target};
pub use random::{instance_rng, random_election};
pub use shrink::shrink;

use std::ops::RangeInclusive;

/// Size ranges and the random ballot model for generated elections.
///
/// Exhaustive enumeration visits every `(n, m)` with `n` in `voters` and
/// `m` in `candidates`, and every `k` in `committee_sizes` that does not
/// exceed `m`. Random generation draws from the same ranges and approves
/// each candidate with probability `approval_num / approval_den`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GenerationBounds {
    pub voters: RangeInclusive<usize>,
    pub candidates: RangeInclusive<usize>,
    pub committee_sizes: RangeInclusive<usize>,
    pub approval_num: u64,
    pub approval_den: u64,
    pub seed: u64,
    /// Keep one election per isomorphism class under candidate relabeling.
    pub dedup: bool,
}

impl GenerationBounds {
    /// `1 ≤ n ≤ n_max`, `1 ≤ m ≤ m_max`, every `k`, approval probability 1/2.
    pub fn up_to(n_max: usize, m_max: usize) -> Self {
        GenerationBounds {
            voters: 1..=n_max,
            candidates: 1..=m_max,
            committee_sizes: 1..=m_max,
            approval_num: 1,
            approval_den: 2,
            seed: 0,
            dedup: true,
        }
    }

    /// Exactly `n` voters, `m` candidates and committee size `k`.
    pub fn exact(n: usize, m: usize, k: usize) -> Self {
        GenerationBounds {
            voters: n..=n,
            candidates: m..=m,
            committee_sizes: k..=k,
            ..GenerationBounds::up_to(n, m)
        }
    }

    pub fn with_committee_sizes(mut self, k: RangeInclusive<usize>) -> Self {
        self.committee_sizes = k;
        self
    }

    pub fn with_voters(mut self, n: RangeInclusive<usize>) -> Self {
        self.voters = n;
        self
    }

    pub fn with_candidates(mut self, m: RangeInclusive<usize>) -> Self {
        self.candidates = m;
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn with_approval(mut self, num: u64, den: u64) -> Self {
        self.approval_num = num;
        self.approval_den = den;
        self
    }

    pub fn with_dedup(mut self, dedup: bool) -> Self {
        self.dedup = dedup;
        self
    }

    pub fn validate(&self) -> Result<(), String> {
        let nonempty = |r: &RangeInclusive<usize>| r.start() <= r.end() && *r.start() >= 1;
        if !nonempty(&self.voters) {
            return Err(format!("bad voter range {:?}", self.voters));
        }
        if !nonempty(&self.candidates) || *self.candidates.end() > 16 {
            return Err(format!("candidate range must lie in 1..=16, got {:?}", self.candidates));
        }
        if !nonempty(&self.committee_sizes) || self.committee_sizes.start() > self.candidates.end() {
            return Err(format!("bad committee-size range {:?}", self.committee_sizes));
        }
        if self.approval_num == 0 || self.approval_num >= self.approval_den {
            return Err("approval probability must lie strictly between 0 and 1".into());
        }
        Ok(())
    }

    /// Committee sizes allowed for `m` candidates.
    pub(crate) fn sizes_for(&self, m: usize) -> RangeInclusive<usize> {
        *self.committee_sizes.start()..=(*self.committee_sizes.end()).min(m)
    }
}
