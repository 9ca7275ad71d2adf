//! Brute-force counterparts of the flow-based solvers.
//!
//! These enumerate the defining objects directly (mappings, voter subsets,
//! partitions) and share no code with the flow formulations. They back the
//! `--oracle-mode` switch and the cross-validation suites; all of them are
//! exponential in the number of voters.

use crate::election::{CandidateSet, Committee, Election};
use crate::rational::Rational;

/// Minimum Monroe misrepresentation by enumerating all `k^n` mappings.
pub fn monroe_min_misrep_brute(e: &Election, w: Committee) -> usize {
    let members: Vec<usize> = w.iter().collect();
    let (n, k) = (e.n(), members.len());
    let (lo, hi) = (n / k, n.div_ceil(k));
    let mut best = usize::MAX;
    let mut choice = vec![0usize; n];
    loop {
        let mut counts = vec![0usize; k];
        for &j in &choice {
            counts[j] += 1;
        }
        if counts.iter().all(|&c| lo <= c && c <= hi) {
            let misrep = (0..n)
                .filter(|&i| !e.ballot(i).contains(members[choice[i]]))
                .count();
            best = best.min(misrep);
        }
        // odometer increment
        let mut pos = 0;
        loop {
            if pos == n {
                return best;
            }
            choice[pos] += 1;
            if choice[pos] < k {
                break;
            }
            choice[pos] = 0;
            pos += 1;
        }
    }
}

/// Optimal maximum load via all `2^n - 1` voter subsets `S`:
/// `max |{c ∈ W : ∅ ≠ approvers(c) ⊆ S}| / |S|`. `None` if some member of
/// `w` has no approver.
pub fn min_max_load_brute(e: &Election, w: Committee) -> Option<Rational> {
    let n = e.n();
    assert!(n < 31, "brute force over voter subsets is limited to n < 31");
    let approvers: Vec<u32> = w
        .iter()
        .map(|c| {
            (0..n)
                .filter(|&i| e.ballot(i).contains(c))
                .fold(0u32, |acc, i| acc | (1 << i))
        })
        .collect();
    if approvers.contains(&0) {
        return None;
    }
    let mut best = Rational::zero();
    for s in 1u32..(1 << n) {
        let tight = approvers.iter().filter(|&&a| a & !s == 0).count();
        let ratio = Rational::new(tight as i64, s.count_ones() as i64);
        if ratio > best {
            best = ratio;
        }
    }
    Some(best)
}

/// Whether a perfect-representation partition exists, by backtracking over
/// voter-to-member assignments with exact quotas.
pub fn pr_exists_brute(e: &Election, w: Committee) -> bool {
    let members: Vec<usize> = w.iter().collect();
    let k = members.len();
    if !e.n().is_multiple_of(k) {
        return false;
    }
    let quota = e.n() / k;
    let mut remaining = vec![quota; k];

    fn go(e: &Election, members: &[usize], remaining: &mut [usize], voter: usize) -> bool {
        if voter == e.n() {
            return true;
        }
        for j in 0..members.len() {
            if remaining[j] > 0 && e.ballot(voter).contains(members[j]) {
                remaining[j] -= 1;
                if go(e, members, remaining, voter + 1) {
                    return true;
                }
                remaining[j] += 1;
            }
        }
        false
    }
    go(e, &members, &mut remaining, 0)
}

/// All committees of `e` for which [`pr_exists_brute`] holds.
pub fn pr_committees_brute(e: &Election) -> Vec<CandidateSet> {
    e.committees().filter(|&w| pr_exists_brute(e, w)).collect()
}
