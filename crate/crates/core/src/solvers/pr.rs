//! Perfect-representation partitions.

use super::flow::FlowNetwork;
use crate::election::{Committee, Election};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PrError {
    #[error("perfect representation needs k | n (k = {k}, n = {n})")]
    KDoesNotDivideN { k: usize, n: usize },
}

/// Each committee member with the `n / k` voters it represents; all of them
/// approve it, and the groups partition the electorate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrPartition {
    pub groups: Vec<(usize, Vec<usize>)>,
}

impl PrPartition {
    pub fn is_valid(&self, e: &Election, w: Committee) -> bool {
        let quota = e.n() / w.len();
        let mut seen = vec![false; e.n()];
        let members_ok = self.groups.len() == w.len()
            && self.groups.iter().map(|(c, _)| *c).eq(w.iter());
        members_ok
            && self.groups.iter().all(|(c, voters)| {
                voters.len() == quota
                    && voters.iter().all(|&i| {
                        let fresh = i < e.n() && !seen[i] && e.ballot(i).contains(*c);
                        if fresh {
                            seen[i] = true;
                        }
                        fresh
                    })
            })
            && seen.iter().all(|&s| s)
    }
}

pub(crate) fn require_divisible(e: &Election, k: usize) -> Result<usize, PrError> {
    if k == 0 || !e.n().is_multiple_of(k) {
        Err(PrError::KDoesNotDivideN { k, n: e.n() })
    } else {
        Ok(e.n() / k)
    }
}

/// A perfect-representation partition for `w`, if one exists.
pub fn pr_assignment(e: &Election, w: Committee) -> Result<Option<PrPartition>, PrError> {
    let quota = require_divisible(e, w.len())?;
    let n = e.n();
    let members: Vec<usize> = w.iter().collect();
    let k = members.len();

    let source = 0;
    let member_node = |j: usize| 1 + j;
    let voter_node = |i: usize| 1 + k + i;
    let sink = 1 + k + n;
    let mut g = FlowNetwork::new(sink + 1);
    for j in 0..k {
        g.add_edge(source, member_node(j), quota as i64);
    }
    let mut edges = Vec::new();
    for (j, &c) in members.iter().enumerate() {
        for i in 0..n {
            if e.ballot(i).contains(c) {
                edges.push((j, i, g.add_edge(member_node(j), voter_node(i), 1)));
            }
        }
    }
    for i in 0..n {
        g.add_edge(voter_node(i), sink, 1);
    }
    if g.max_flow(source, sink) != n as i64 {
        return Ok(None);
    }
    let mut groups: Vec<(usize, Vec<usize>)> = members.iter().map(|&c| (c, Vec::new())).collect();
    for (j, i, id) in edges {
        if g.flow(id) > 0 {
            groups[j].1.push(i);
        }
    }
    let partition = PrPartition { groups };
    debug_assert!(partition.is_valid(e, w));
    Ok(Some(partition))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::abme::parse_election;

    #[test]
    fn requires_divisibility() {
        let e = parse_election("candidates: a b\nk: 2\n3: a b").unwrap();
        assert_eq!(
            pr_assignment(&e, e.roster()),
            Err(PrError::KDoesNotDivideN { k: 2, n: 3 })
        );
    }

    #[test]
    fn finds_partition() {
        let e = parse_election("candidates: a b c\nk: 2\n2: a b\n1: a\n1: b c").unwrap();
        let w = e.set_of(&["a", "b"]).unwrap();
        let p = pr_assignment(&e, w).unwrap().unwrap();
        assert!(p.is_valid(&e, w));
        let w2 = e.set_of(&["a", "c"]).unwrap();
        assert_eq!(pr_assignment(&e, w2).unwrap(), None);
    }
}
