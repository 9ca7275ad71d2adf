//! Seeded random elections.
//!
//! Instance `index` of seed `s` draws from a SplitMix64 stream (increment
//! `0x9E3779B97F4A7C15`, output mixers `0xBF58476D1CE4E5B9` and
//! `0x94D049BB133111EB`, shifts 30/27/31) whose initial state is
//! `s XOR first_output(SplitMix64(index))`. From that stream, in order:
//!
//! 1. `n = n_lo + u % (n_hi − n_lo + 1)`;
//! 2. `m = m_lo' + u % (m_hi − m_lo' + 1)` with `m_lo' = max(m_lo, k_lo)`,
//!    so that some committee size fits;
//! 3. `k = k_lo + u % (min(k_hi, m) − k_lo + 1)`;
//! 4. for each voter, for each candidate `c = 0..m`, approve `c` iff
//!    `u % den < num`; an empty ballot is discarded and redrawn.
//!
//! Each `u` is the next 64-bit output. The modulo bias is below `2^-50` for
//! all supported ranges.

use super::GenerationBounds;
use crate::election::{CandidateSet, Election};
use rand_core::{RngCore, SeedableRng};
use rand_xoshiro::SplitMix64;

/// The generator for instance `index` of `seed`.
pub fn instance_rng(seed: u64, index: u64) -> SplitMix64 {
    let mix = SplitMix64::from_seed(index.to_le_bytes()).next_u64();
    SplitMix64::from_seed((seed ^ mix).to_le_bytes())
}

fn uniform(rng: &mut SplitMix64, lo: usize, hi: usize) -> usize {
    lo + (rng.next_u64() % (hi - lo + 1) as u64) as usize
}

/// Deterministic function of `(bounds.seed, index)`; see the module docs
/// for the exact algorithm.
pub fn random_election(bounds: &GenerationBounds, index: u64) -> Election {
    let mut rng = instance_rng(bounds.seed, index);
    let n = uniform(&mut rng, *bounds.voters.start(), *bounds.voters.end());
    let m_lo = (*bounds.candidates.start()).max(*bounds.committee_sizes.start());
    let m = uniform(&mut rng, m_lo, *bounds.candidates.end());
    let sizes = bounds.sizes_for(m);
    let k = uniform(&mut rng, *sizes.start(), *sizes.end());
    let ballots = (0..n)
        .map(|_| loop {
            let ballot: CandidateSet = (0..m)
                .filter(|_| rng.next_u64() % bounds.approval_den < bounds.approval_num)
                .collect();
            if !ballot.is_empty() {
                break ballot;
            }
        })
        .collect();
    Election::with_default_names(m, ballots, k).expect("generated election is valid")
}
