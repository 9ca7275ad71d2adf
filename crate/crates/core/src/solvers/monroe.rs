//! Balanced assignment for the Monroe rule.

use super::flow::FlowNetwork;
use crate::election::{Committee, Election};

/// Voter `i` is represented by candidate `assign[i]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BalancedAssignment {
    pub assign: Vec<usize>,
}

impl BalancedAssignment {
    /// Every member of `w` represents between `⌊n/k⌋` and `⌈n/k⌉` voters and
    /// no voter is mapped outside `w`.
    pub fn is_balanced(&self, w: Committee) -> bool {
        let n = self.assign.len();
        let k = w.len();
        let (lo, hi) = (n / k, n.div_ceil(k));
        self.assign.iter().all(|&c| w.contains(c))
            && w.iter().all(|c| {
                let load = self.assign.iter().filter(|&&a| a == c).count();
                lo <= load && load <= hi
            })
    }

    pub fn misrepresentation(&self, e: &Election) -> usize {
        self.assign
            .iter()
            .enumerate()
            .filter(|&(i, &c)| !e.ballot(i).contains(c))
            .count()
    }
}

/// Minimum number of voters represented by a candidate they do not approve,
/// over all balanced assignments of voters to `w`, with an optimal witness.
///
/// The per-candidate bounds `⌊n/k⌋ ≤ load ≤ ⌈n/k⌉` become plain
/// capacities: each member has a direct sink edge of capacity `⌊n/k⌋` and a
/// unit edge into an overflow node whose sink capacity is `n mod k`. The
/// total sink capacity is exactly `n`, so a flow of value `n` saturates
/// every direct edge and meets the lower bounds.
pub fn monroe_min_misrep(e: &Election, w: Committee) -> (usize, BalancedAssignment) {
    let n = e.n();
    let members: Vec<usize> = w.iter().collect();
    let k = members.len();
    assert!(k > 0, "committee must be non-empty");
    let (floor, rem) = (n / k, n % k);

    let source = 0;
    let voter_node = |i: usize| 1 + i;
    let member_node = |j: usize| 1 + n + j;
    let overflow = 1 + n + k;
    let sink = overflow + 1;

    let mut g = FlowNetwork::new(sink + 1);
    for i in 0..n {
        g.add_edge(source, voter_node(i), 1);
    }
    let mut assignment_edges = Vec::with_capacity(n * k);
    for i in 0..n {
        let ballot = e.ballot(i);
        for (j, &c) in members.iter().enumerate() {
            let cost = if ballot.contains(c) { 0 } else { 1 };
            let id = g.add_edge_with_cost(voter_node(i), member_node(j), 1, cost);
            assignment_edges.push((i, c, id));
        }
    }
    for j in 0..k {
        g.add_edge(member_node(j), sink, floor as i64);
        if rem > 0 {
            g.add_edge(member_node(j), overflow, 1);
        }
    }
    if rem > 0 {
        g.add_edge(overflow, sink, rem as i64);
    }

    let (flow, cost) = g.min_cost_flow(source, sink, n as i64);
    assert_eq!(flow, n as i64, "a balanced assignment always exists");

    let mut assign = vec![usize::MAX; n];
    for (i, c, id) in assignment_edges {
        if g.flow(id) > 0 {
            assign[i] = c;
        }
    }
    let witness = BalancedAssignment { assign };
    debug_assert!(witness.is_balanced(w));
    debug_assert_eq!(witness.misrepresentation(e), cost as usize);
    (cost as usize, witness)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::abme::parse_election;

    #[test]
    fn uneven_quota_is_respected() {
        // 5 voters, k = 2: loads must be 2 and 3.
        let e = parse_election("candidates: a b c\nk: 2\n5: a").unwrap();
        let w = e.set_of(&["a", "b"]).unwrap();
        let (misrep, witness) = monroe_min_misrep(&e, w);
        assert_eq!(misrep, 2);
        assert!(witness.is_balanced(w));
    }

    #[test]
    fn perfect_split_has_zero_misrepresentation() {
        let e = parse_election("candidates: a b\nk: 2\n2: a\n2: b").unwrap();
        let (misrep, _) = monroe_min_misrep(&e, e.roster());
        assert_eq!(misrep, 0);
    }
}
