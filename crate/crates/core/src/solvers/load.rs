//! Minimum possible maximum voter load for a fixed committee.
//!
//! Each member of the committee carries one unit of load that is split among
//! the voters approving it. The smallest achievable maximum voter load is
//!
//! ```text
//! t* = max over non-empty T ⊆ W of |{c ∈ W : approvers(c) ⊆ N(T)}| / |N(T)|
//! ```
//!
//! where `N(T)` is the set of voters approving some member of `T` (a Hall
//! type bound for the fractional allocation). The maximizing voter set is
//! returned as a [`DualCertificate`]; a [`LoadDistribution`] attaining `t*` is
//! built from an integral max-flow after scaling capacities by the
//! denominator of `t*`.

use super::flow::FlowNetwork;
use crate::election::{CandidateSet, Committee, Election};
use crate::rational::Rational;
use num_traits::ToPrimitive;
use std::collections::BTreeMap;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LoadError {
    #[error("committee member {candidate} has no approver; no load distribution exists")]
    Infeasible { candidate: usize },
}

/// `loads[i][j]` is the share of member `members[j]` carried by voter `i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LoadDistribution {
    pub members: Vec<usize>,
    pub loads: Vec<Vec<Rational>>,
}

impl LoadDistribution {
    pub fn voter_load(&self, voter: usize) -> Rational {
        self.loads[voter].iter().sum()
    }

    pub fn max_load(&self) -> Rational {
        (0..self.loads.len())
            .map(|i| self.voter_load(i))
            .max()
            .unwrap_or_else(Rational::zero)
    }

    /// Checks the three defining conditions exactly: every share lies in
    /// `[0, 1]`, voters carry nothing for unapproved members, and every
    /// member's shares sum to one.
    pub fn verify(&self, e: &Election) -> Result<(), String> {
        if self.loads.len() != e.n() {
            return Err(format!("{} rows for {} voters", self.loads.len(), e.n()));
        }
        let (zero, one) = (Rational::zero(), Rational::one());
        for (i, row) in self.loads.iter().enumerate() {
            if row.len() != self.members.len() {
                return Err(format!("voter {i}: wrong row length"));
            }
            for (j, x) in row.iter().enumerate() {
                let c = self.members[j];
                if *x < zero || *x > one {
                    return Err(format!("x[{i}][{c}] = {x} outside [0, 1]"));
                }
                if !e.ballot(i).contains(c) && !x.is_zero() {
                    return Err(format!("voter {i} carries load {x} of unapproved {c}"));
                }
            }
        }
        for (j, &c) in self.members.iter().enumerate() {
            let total: Rational = self.loads.iter().map(|row| &row[j]).sum();
            if total != one {
                return Err(format!("load of candidate {c} sums to {total}"));
            }
        }
        Ok(())
    }
}

/// A voter subset `S` that no distribution can load below
/// `|tight_candidates| / |S|` on average.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DualCertificate {
    pub voter_subset: Vec<usize>,
    pub tight_candidates: CandidateSet,
}

impl DualCertificate {
    pub fn value(&self) -> Rational {
        Rational::new(
            self.tight_candidates.len() as i64,
            self.voter_subset.len() as i64,
        )
    }

    /// Re-derives the certificate's claim from the election: every tight
    /// candidate is approved only inside the subset.
    pub fn verify(&self, e: &Election, w: Committee) -> bool {
        let inside: Vec<bool> = (0..e.n())
            .map(|i| self.voter_subset.contains(&i))
            .collect();
        !self.voter_subset.is_empty()
            && self.tight_candidates.is_subset(w)
            && self.tight_candidates.iter().all(|c| {
                (0..e.n()).all(|i| !e.ballot(i).contains(c) || inside[i])
            })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MinMaxLoad {
    pub value: Rational,
    pub distribution: LoadDistribution,
    pub certificate: DualCertificate,
}

fn check_feasible(e: &Election, w: Committee) -> Result<(), LoadError> {
    let approved = e
        .ballots()
        .iter()
        .fold(CandidateSet::empty(), |acc, &b| acc | b);
    match (w - approved).iter().next() {
        Some(candidate) => Err(LoadError::Infeasible { candidate }),
        None => Ok(()),
    }
}

/// The optimal value with its dual certificate, without a primal witness.
pub fn min_max_load_value(e: &Election, w: Committee) -> Result<DualCertificate, LoadError> {
    check_feasible(e, w)?;
    // Voters grouped by which committee members they approve.
    let mut groups: BTreeMap<u64, usize> = BTreeMap::new();
    for b in e.ballots() {
        let a = (*b & w).bits();
        if a != 0 {
            *groups.entry(a).or_default() += 1;
        }
    }
    let groups: Vec<(CandidateSet, usize)> = groups
        .into_iter()
        .map(|(bits, count)| (CandidateSet::from_bits(bits), count))
        .collect();

    let mut best: Option<(usize, usize, CandidateSet)> = None; // (tight, |S|, T)
    for t in w.nonempty_subsets() {
        let mut size = 0;
        let mut outside = CandidateSet::empty();
        for &(a, count) in &groups {
            if a.intersects(t) {
                size += count;
            } else {
                outside = outside | a;
            }
        }
        let tight = (w - outside).len();
        let better = match best {
            None => true,
            Some((bt, bs, _)) => tight * bs > bt * size,
        };
        if better {
            best = Some((tight, size, t));
        }
    }
    let (_, _, t) = best.expect("committee is non-empty");
    let voter_subset: Vec<usize> = (0..e.n())
        .filter(|&i| e.ballot(i).intersects(t))
        .collect();
    let outside = (0..e.n())
        .filter(|&i| !e.ballot(i).intersects(t))
        .fold(CandidateSet::empty(), |acc, i| acc | e.ballot(i));
    Ok(DualCertificate {
        voter_subset,
        tight_candidates: w - outside,
    })
}

/// Optimal maximum voter load for `w`, a distribution attaining it and a
/// certificate proving optimality. Both sides are checked against each
/// other on every call.
pub fn min_max_load(e: &Election, w: Committee) -> Result<MinMaxLoad, LoadError> {
    let certificate = min_max_load_value(e, w)?;
    let value = certificate.value();
    let distribution = primal_distribution(e, w, &value);

    let achieved = distribution.max_load();
    assert_eq!(achieved, value, "primal max load differs from dual value");
    if let Err(msg) = distribution.verify(e) {
        panic!("invalid load distribution: {msg}");
    }
    debug_assert!(certificate.verify(e, w));

    Ok(MinMaxLoad {
        value,
        distribution,
        certificate,
    })
}

/// Feasibility flow with every voter capped at `cap`, scaled to integers by
/// the denominator of `cap`.
fn primal_distribution(e: &Election, w: Committee, cap: &Rational) -> LoadDistribution {
    let n = e.n();
    let members: Vec<usize> = w.iter().collect();
    let k = members.len();
    let scale = cap.denom().to_i64().expect("denominator fits i64");
    let voter_cap = cap.numer().to_i64().expect("numerator fits i64");

    let source = 0;
    let member_node = |j: usize| 1 + j;
    let voter_node = |i: usize| 1 + k + i;
    let sink = 1 + k + n;
    let mut g = FlowNetwork::new(sink + 1);
    for j in 0..k {
        g.add_edge(source, member_node(j), scale);
    }
    let mut share_edges = Vec::new();
    for (j, &c) in members.iter().enumerate() {
        for i in 0..n {
            if e.ballot(i).contains(c) {
                share_edges.push((i, j, g.add_edge(member_node(j), voter_node(i), scale)));
            }
        }
    }
    for i in 0..n {
        g.add_edge(voter_node(i), sink, voter_cap);
    }
    let flow = g.max_flow(source, sink);
    assert_eq!(flow, scale * k as i64, "capacity t* must admit a full distribution");

    let mut loads = vec![vec![Rational::zero(); k]; n];
    for (i, j, id) in share_edges {
        let f = g.flow(id);
        if f > 0 {
            loads[i][j] = Rational::new(f, scale);
        }
    }
    LoadDistribution { members, loads }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::abme::parse_election;

    #[test]
    fn single_voter_single_member() {
        let e = parse_election("candidates: a b\nk: 1\n1: a").unwrap();
        let r = min_max_load(&e, e.set_of(&["a"]).unwrap()).unwrap();
        assert_eq!(r.value, Rational::one());
        assert_eq!(
            min_max_load(&e, e.set_of(&["b"]).unwrap()),
            Err(LoadError::Infeasible { candidate: 1 })
        );
    }

    #[test]
    fn shared_candidate_splits_evenly() {
        let e = parse_election("candidates: a b\nk: 2\n3: a b\n1: b").unwrap();
        let r = min_max_load(&e, e.roster()).unwrap();
        assert_eq!(r.value, Rational::new(1, 2));
        assert!(r.certificate.verify(&e, e.roster()));
        assert_eq!(r.certificate.value(), r.value);
    }
}
