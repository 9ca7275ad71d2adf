//! Elections, candidate sets and the two support-increasing mutations.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{BitAnd, BitOr, Sub};

/// Upper bound on the roster size; candidate sets are 64-bit masks.
pub const MAX_CANDIDATES: usize = 64;

/// Position of a candidate in the election roster.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CandidateId(pub usize);

/// A set of candidates, stored as a bitmask over roster positions.
///
/// Ordering is lexicographic on the sorted member indices, which is the
/// canonical committee order used by every [`RuleOutcome`].
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct CandidateSet(u64);

/// A committee is a candidate set whose size equals the election's `k`.
pub type Committee = CandidateSet;

impl CandidateSet {
    pub const fn empty() -> Self {
        CandidateSet(0)
    }

    pub const fn from_bits(bits: u64) -> Self {
        CandidateSet(bits)
    }

    pub const fn bits(self) -> u64 {
        self.0
    }

    /// The set `{0, 1, ..., m - 1}`.
    pub fn full(m: usize) -> Self {
        assert!(m <= MAX_CANDIDATES);
        if m == MAX_CANDIDATES {
            CandidateSet(u64::MAX)
        } else {
            CandidateSet((1u64 << m) - 1)
        }
    }

    pub fn singleton(c: usize) -> Self {
        assert!(c < MAX_CANDIDATES);
        CandidateSet(1 << c)
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(indices: I) -> Self {
        indices
            .into_iter()
            .fold(CandidateSet::empty(), |s, c| s.with(c))
    }

    pub fn with(self, c: usize) -> Self {
        self | CandidateSet::singleton(c)
    }

    pub fn without(self, c: usize) -> Self {
        CandidateSet(self.0 & !(1u64 << c))
    }

    pub fn contains(self, c: usize) -> bool {
        c < MAX_CANDIDATES && self.0 & (1 << c) != 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn is_subset(self, other: CandidateSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn intersects(self, other: CandidateSet) -> bool {
        self.0 & other.0 != 0
    }

    /// Member indices in ascending order.
    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let c = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(c)
            }
        })
    }

    /// All non-empty subsets, each exactly once.
    pub fn nonempty_subsets(self) -> impl Iterator<Item = CandidateSet> {
        let full = self.0;
        let mut sub = full;
        let mut done = full == 0;
        std::iter::from_fn(move || {
            if done {
                return None;
            }
            let current = sub;
            sub = (sub.wrapping_sub(1)) & full;
            if sub == 0 {
                done = true;
            }
            Some(CandidateSet(current))
        })
    }
}

impl BitAnd for CandidateSet {
    type Output = CandidateSet;
    fn bitand(self, rhs: Self) -> Self {
        CandidateSet(self.0 & rhs.0)
    }
}

impl BitOr for CandidateSet {
    type Output = CandidateSet;
    fn bitor(self, rhs: Self) -> Self {
        CandidateSet(self.0 | rhs.0)
    }
}

impl Sub for CandidateSet {
    type Output = CandidateSet;
    fn sub(self, rhs: Self) -> Self {
        CandidateSet(self.0 & !rhs.0)
    }
}

impl Ord for CandidateSet {
    fn cmp(&self, other: &Self) -> Ordering {
        self.iter().cmp(other.iter())
    }
}

impl PartialOrd for CandidateSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for CandidateSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl FromIterator<usize> for CandidateSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        CandidateSet::from_indices(iter)
    }
}

/// Symmetric-difference cardinality `|a \ b| + |b \ a|`.
pub fn hamming(a: CandidateSet, b: CandidateSet) -> usize {
    (a.0 ^ b.0).count_ones() as usize
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ElectionError {
    #[error("election needs at least one candidate")]
    NoCandidates,
    #[error("at most {MAX_CANDIDATES} candidates are supported, got {0}")]
    TooManyCandidates(usize),
    #[error("invalid candidate name `{0}`")]
    InvalidName(String),
    #[error("duplicate candidate name `{0}`")]
    DuplicateName(String),
    #[error("election needs at least one voter")]
    NoVoters,
    #[error("committee size k = {k} out of range 1..={m}")]
    KOutOfRange { k: usize, m: usize },
    #[error("ballot of voter {0} is empty")]
    EmptyBallot(usize),
    #[error("ballot of voter {0} names a candidate outside the roster")]
    BallotOutsideRoster(usize),
    #[error("candidate set must be non-empty")]
    EmptyGroup,
    #[error("candidate set is not a subset of the roster")]
    GroupOutsideRoster,
    #[error("voter {voter} out of range (n = {n})")]
    VoterOutOfRange { voter: usize, n: usize },
    #[error("voter {0} already approves a candidate of the added group")]
    Overlap(usize),
    #[error("unknown candidate `{0}`")]
    UnknownCandidate(String),
}

pub(crate) fn valid_name(name: &str) -> bool {
    !name.is_empty() && name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// An approval-based multiwinner election: roster, ballots and committee size.
///
/// Voters are positions in the ballot list. Elections are immutable values;
/// mutations return new elections.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Election {
    candidates: Vec<String>,
    ballots: Vec<CandidateSet>,
    k: usize,
}

impl Election {
    pub fn new(
        candidates: Vec<String>,
        ballots: Vec<CandidateSet>,
        k: usize,
    ) -> Result<Self, ElectionError> {
        let m = candidates.len();
        if m == 0 {
            return Err(ElectionError::NoCandidates);
        }
        if m > MAX_CANDIDATES {
            return Err(ElectionError::TooManyCandidates(m));
        }
        for (i, name) in candidates.iter().enumerate() {
            if !valid_name(name) {
                return Err(ElectionError::InvalidName(name.clone()));
            }
            if candidates[..i].contains(name) {
                return Err(ElectionError::DuplicateName(name.clone()));
            }
        }
        if ballots.is_empty() {
            return Err(ElectionError::NoVoters);
        }
        if k == 0 || k > m {
            return Err(ElectionError::KOutOfRange { k, m });
        }
        let roster = CandidateSet::full(m);
        for (i, b) in ballots.iter().enumerate() {
            if b.is_empty() {
                return Err(ElectionError::EmptyBallot(i));
            }
            if !b.is_subset(roster) {
                return Err(ElectionError::BallotOutsideRoster(i));
            }
        }
        Ok(Election {
            candidates,
            ballots,
            k,
        })
    }

    /// Candidates named `c0`, `c1`, ..., for generated elections.
    pub fn with_default_names(
        m: usize,
        ballots: Vec<CandidateSet>,
        k: usize,
    ) -> Result<Self, ElectionError> {
        Election::new(default_names(m), ballots, k)
    }

    pub fn candidates(&self) -> &[String] {
        &self.candidates
    }

    pub fn ballots(&self) -> &[CandidateSet] {
        &self.ballots
    }

    pub fn ballot(&self, voter: usize) -> CandidateSet {
        self.ballots[voter]
    }

    pub fn n(&self) -> usize {
        self.ballots.len()
    }

    pub fn m(&self) -> usize {
        self.candidates.len()
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn roster(&self) -> CandidateSet {
        CandidateSet::full(self.m())
    }

    pub fn name(&self, c: usize) -> &str {
        &self.candidates[c]
    }

    pub fn candidate(&self, name: &str) -> Option<CandidateId> {
        self.candidates
            .iter()
            .position(|c| c == name)
            .map(CandidateId)
    }

    /// Resolves a list of candidate names into a set.
    pub fn set_of<S: AsRef<str>>(&self, names: &[S]) -> Result<CandidateSet, ElectionError> {
        names.iter().try_fold(CandidateSet::empty(), |s, name| {
            let name = name.as_ref();
            self.candidate(name)
                .map(|c| s.with(c.0))
                .ok_or_else(|| ElectionError::UnknownCandidate(name.to_string()))
        })
    }

    /// Parses `a,b,c` (or `{a,b,c}`, whitespace tolerant) into a set.
    pub fn parse_set(&self, text: &str) -> Result<CandidateSet, ElectionError> {
        let inner = text.trim().trim_start_matches('{').trim_end_matches('}');
        let names: Vec<&str> = inner
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|s| !s.is_empty())
            .collect();
        self.set_of(&names)
    }

    /// Renders a set as `{a,b,c}` in roster order.
    pub fn format_set(&self, set: CandidateSet) -> String {
        let names: Vec<&str> = set.iter().map(|c| self.name(c)).collect();
        format!("{{{}}}", names.join(","))
    }

    pub fn set_names(&self, set: CandidateSet) -> Vec<String> {
        set.iter().map(|c| self.name(c).to_string()).collect()
    }

    /// Number of voters approving `c`.
    pub fn approval_score(&self, c: usize) -> usize {
        self.ballots.iter().filter(|b| b.contains(c)).count()
    }

    /// Same roster and ballots with a different committee size.
    pub fn with_k(&self, k: usize) -> Result<Election, ElectionError> {
        if k == 0 || k > self.m() {
            return Err(ElectionError::KOutOfRange { k, m: self.m() });
        }
        Ok(Election { k, ..self.clone() })
    }

    fn check_group(&self, g: CandidateSet) -> Result<(), ElectionError> {
        if g.is_empty() {
            return Err(ElectionError::EmptyGroup);
        }
        if !g.is_subset(self.roster()) {
            return Err(ElectionError::GroupOutsideRoster);
        }
        Ok(())
    }

    /// `E_ΔG`: one new voter approving exactly `g` joins the election.
    pub fn add_new_voter(&self, g: CandidateSet) -> Result<Election, ElectionError> {
        self.check_group(g)?;
        let mut next = self.clone();
        next.ballots.push(g);
        Ok(next)
    }

    /// `E_{i+G}`: voter `voter` additionally approves every candidate in `g`.
    pub fn extend_ballot(&self, voter: usize, g: CandidateSet) -> Result<Election, ElectionError> {
        self.check_group(g)?;
        if voter >= self.n() {
            return Err(ElectionError::VoterOutOfRange {
                voter,
                n: self.n(),
            });
        }
        if self.ballots[voter].intersects(g) {
            return Err(ElectionError::Overlap(voter));
        }
        let mut next = self.clone();
        next.ballots[voter] = next.ballots[voter] | g;
        Ok(next)
    }

    /// Drops one voter. Fails if it is the last one.
    pub fn remove_voter(&self, voter: usize) -> Result<Election, ElectionError> {
        if voter >= self.n() {
            return Err(ElectionError::VoterOutOfRange {
                voter,
                n: self.n(),
            });
        }
        let mut ballots = self.ballots.clone();
        ballots.remove(voter);
        Election::new(self.candidates.clone(), ballots, self.k)
    }

    /// Drops candidate `c` from the roster and from every ballot, shifting
    /// later indices down by one. Fails if a ballot becomes empty or `k`
    /// exceeds the smaller roster.
    pub fn remove_candidate(&self, c: usize) -> Result<Election, ElectionError> {
        let mut candidates = self.candidates.clone();
        candidates.remove(c);
        let ballots = self
            .ballots
            .iter()
            .map(|&b| remove_index(b, c))
            .collect();
        Election::new(candidates, ballots, self.k)
    }

    /// Committees of size `k`, in canonical (lexicographic) order.
    pub fn committees(&self) -> Combinations {
        Combinations::new(self.m(), self.k)
    }
}

/// Removes position `c` from a set and shifts higher members down.
pub fn remove_index(set: CandidateSet, c: usize) -> CandidateSet {
    let bits = set.bits();
    let low = bits & ((1u64 << c) - 1);
    let high = if c + 1 >= 64 { 0 } else { bits >> (c + 1) };
    CandidateSet::from_bits(low | (high << c))
}

pub fn default_names(m: usize) -> Vec<String> {
    (0..m).map(|i| format!("c{i}")).collect()
}

/// Enumerates committees of one election; see [`Election::committees`].
pub fn enumerate_committees(e: &Election) -> Combinations {
    e.committees()
}

/// All `k`-subsets of `{0..m}` in lexicographic order.
#[derive(Debug, Clone)]
pub struct Combinations {
    m: usize,
    indices: Vec<usize>,
    done: bool,
}

impl Combinations {
    pub fn new(m: usize, k: usize) -> Self {
        Combinations {
            m,
            indices: (0..k).collect(),
            done: k > m,
        }
    }
}

impl Iterator for Combinations {
    type Item = CandidateSet;

    fn next(&mut self) -> Option<CandidateSet> {
        if self.done {
            return None;
        }
        let current = CandidateSet::from_indices(self.indices.iter().copied());
        let k = self.indices.len();
        // advance to the next combination
        let mut i = k;
        loop {
            if i == 0 {
                self.done = true;
                break;
            }
            i -= 1;
            if self.indices[i] < self.m - k + i {
                self.indices[i] += 1;
                for j in i + 1..k {
                    self.indices[j] = self.indices[j - 1] + 1;
                }
                break;
            }
        }
        Some(current)
    }
}

/// The set of all tied winning committees, canonically ordered.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RuleOutcome {
    winners: Vec<Committee>,
}

impl RuleOutcome {
    /// Sorts and deduplicates. Panics on an empty set or mixed sizes, both of
    /// which indicate a bug in the producing rule.
    pub fn new(mut winners: Vec<Committee>) -> Self {
        assert!(!winners.is_empty(), "rule outcome must be non-empty");
        let size = winners[0].len();
        assert!(winners.iter().all(|w| w.len() == size));
        winners.sort();
        winners.dedup();
        RuleOutcome { winners }
    }

    pub fn winners(&self) -> &[Committee] {
        &self.winners
    }

    pub fn len(&self) -> usize {
        self.winners.len()
    }

    pub fn is_empty(&self) -> bool {
        self.winners.is_empty()
    }

    pub fn is_unique(&self) -> bool {
        self.winners.len() == 1
    }

    pub fn contains(&self, w: Committee) -> bool {
        self.winners.binary_search(&w).is_ok()
    }

    /// `G ⊆ W` for some winner.
    pub fn some_contains(&self, g: CandidateSet) -> bool {
        self.winners.iter().any(|w| g.is_subset(*w))
    }

    /// `G ⊆ W` for every winner.
    pub fn all_contain(&self, g: CandidateSet) -> bool {
        self.winners.iter().all(|w| g.is_subset(*w))
    }

    /// `G ∩ W ≠ ∅` for some winner.
    pub fn some_intersects(&self, g: CandidateSet) -> bool {
        self.winners.iter().any(|w| g.intersects(*w))
    }

    /// `G ∩ W ≠ ∅` for every winner.
    pub fn all_intersect(&self, g: CandidateSet) -> bool {
        self.winners.iter().all(|w| g.intersects(*w))
    }

    pub fn format(&self, e: &Election) -> String {
        let parts: Vec<String> = self.winners.iter().map(|w| e.format_set(*w)).collect();
        format!("{{{}}}", parts.join(", "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(ix: &[usize]) -> CandidateSet {
        CandidateSet::from_indices(ix.iter().copied())
    }

    fn binomial(n: u64, k: u64) -> u64 {
        // Pascal's rule, independent of the enumeration code.
        let mut row = vec![1u64];
        for _ in 0..n {
            let mut next = vec![1u64; row.len() + 1];
            for j in 1..row.len() {
                next[j] = row[j - 1] + row[j];
            }
            row = next;
        }
        row.get(k as usize).copied().unwrap_or(0)
    }

    #[test]
    fn committees_in_lexicographic_order() {
        let all: Vec<_> = Combinations::new(3, 2).collect();
        assert_eq!(all, vec![set(&[0, 1]), set(&[0, 2]), set(&[1, 2])]);
        assert_eq!(Combinations::new(5, 3).count(), 10);
        assert_eq!(Combinations::new(7, 4).count() as u64, binomial(7, 4));
        assert_eq!(binomial(7, 4), 35);
    }

    #[test]
    fn committee_counts_match_binomials() {
        for m in 1..=12 {
            for k in 1..=m {
                let all: Vec<_> = Combinations::new(m, k).collect();
                assert_eq!(all.len() as u64, binomial(m as u64, k as u64));
                assert!(all.windows(2).all(|w| w[0] < w[1]), "strictly increasing");
                assert!(all.iter().all(|c| c.len() == k));
            }
        }
    }

    #[test]
    fn canonical_order_is_lexicographic_on_indices() {
        assert!(set(&[0]) < set(&[0, 1]));
        assert!(set(&[0, 5]) < set(&[1, 2]));
        assert!(set(&[0, 2, 3]) < set(&[0, 2, 4]));
        assert!(set(&[1, 2]) > set(&[0, 9]));
    }

    #[test]
    fn hamming_examples() {
        // {c1..c5} vs {c1,c6}; {c1,c2,c3,c6,c7} vs {c5} (1-based names)
        assert_eq!(hamming(set(&[0, 1, 2, 3, 4]), set(&[0, 5])), 5);
        assert_eq!(hamming(set(&[0, 1, 2, 5, 6]), set(&[4])), 6);
        assert_eq!(hamming(set(&[1, 3]), set(&[1, 3])), 0);
    }

    #[test]
    fn hamming_is_a_metric_on_small_rosters() {
        let m = 5;
        let all: Vec<_> = (0u64..1 << m).map(CandidateSet::from_bits).collect();
        for &a in &all {
            for &b in &all {
                let d = hamming(a, b);
                assert_eq!(d, hamming(b, a));
                assert_eq!(d == 0, a == b);
                for &c in &all {
                    assert!(hamming(a, c) <= d + hamming(b, c));
                }
            }
        }
    }

    #[test]
    fn subsets_enumeration() {
        let s = set(&[1, 3, 4]);
        let subs: Vec<_> = s.nonempty_subsets().collect();
        assert_eq!(subs.len(), 7);
        assert!(subs.iter().all(|x| !x.is_empty() && x.is_subset(s)));
        assert_eq!(CandidateSet::empty().nonempty_subsets().count(), 0);
    }

    fn two_voters() -> Election {
        Election::new(
            vec!["a".into(), "b".into(), "c".into()],
            vec![set(&[0]), set(&[1, 2])],
            2,
        )
        .unwrap()
    }

    #[test]
    fn add_new_voter_appends_one_ballot() {
        let e = two_voters();
        let next = e.add_new_voter(e.roster()).unwrap();
        assert_eq!(next.n(), 3);
        assert_eq!(next.ballot(2), e.roster());
        assert_eq!(&next.ballots()[..2], e.ballots());
        assert_eq!(next.k(), e.k());
        assert_eq!(e.n(), 2, "input untouched");
        assert_eq!(e.add_new_voter(CandidateSet::empty()), Err(ElectionError::EmptyGroup));
        assert_eq!(e.add_new_voter(set(&[7])), Err(ElectionError::GroupOutsideRoster));
    }

    #[test]
    fn extend_ballot_changes_one_ballot() {
        let e = two_voters();
        let next = e.extend_ballot(0, set(&[1, 2])).unwrap();
        assert_eq!(next.ballot(0), set(&[0, 1, 2]));
        assert_eq!(next.ballot(1), e.ballot(1));
        assert_eq!(e.extend_ballot(0, set(&[0, 1])), Err(ElectionError::Overlap(0)));
        assert_eq!(
            e.extend_ballot(5, set(&[1])),
            Err(ElectionError::VoterOutOfRange { voter: 5, n: 2 })
        );
    }

    #[test]
    fn remove_candidate_shifts_indices() {
        assert_eq!(remove_index(set(&[0, 2, 3]), 1), set(&[0, 1, 2]));
        assert_eq!(remove_index(set(&[0, 2, 3]), 2), set(&[0, 2]));
        let e = two_voters();
        assert!(e.remove_candidate(0).is_err(), "voter 0 would be left empty");
        let smaller = e.remove_candidate(2).unwrap();
        assert_eq!(smaller.candidates(), &["a".to_string(), "b".to_string()]);
        assert_eq!(smaller.ballot(1), set(&[1]));
    }

    #[test]
    fn outcome_queries() {
        let o = RuleOutcome::new(vec![set(&[1, 2]), set(&[0, 1]), set(&[0, 1])]);
        assert_eq!(o.winners(), &[set(&[0, 1]), set(&[1, 2])]);
        assert!(o.some_contains(set(&[0])));
        assert!(!o.all_contain(set(&[0])));
        assert!(o.all_contain(set(&[1])));
        assert!(o.all_intersect(set(&[0, 2])));
        assert!(!o.some_intersects(set(&[3])));
    }

    #[test]
    fn validation_errors() {
        let names = || vec!["a".to_string(), "b".to_string()];
        assert_eq!(
            Election::new(names(), vec![set(&[0])], 3),
            Err(ElectionError::KOutOfRange { k: 3, m: 2 })
        );
        assert_eq!(
            Election::new(names(), vec![CandidateSet::empty()], 1),
            Err(ElectionError::EmptyBallot(0))
        );
        assert_eq!(Election::new(names(), vec![], 1), Err(ElectionError::NoVoters));
        assert_eq!(
            Election::new(vec!["a-b".into()], vec![set(&[0])], 1),
            Err(ElectionError::InvalidName("a-b".into()))
        );
    }
}
