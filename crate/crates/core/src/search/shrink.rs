use crate::election::remove_index;
use crate::election::{CandidateSet, Election};
use crate::monotonicity::{
    check_committee_monotonicity, check_smwopi_at, check_smwpi_at, MonotonicityWitness, Property,
    Strength,
};
use crate::rules::Rule;

/// Re-runs the single mutation described by `(property, g, voter)` on `e`.
fn recheck(
    rule: &Rule,
    property: Property,
    e: &Election,
    g: CandidateSet,
    voter: Option<usize>,
) -> Option<MonotonicityWitness> {
    let verdict = match property {
        Property::Smwpi(s) => check_smwpi_at(rule, e, g, s),
        Property::Smwopi(s) => check_smwopi_at(rule, e, g, voter?, s),
        Property::Candidate => check_smwopi_at(rule, e, g, voter?, Strength::Strong),
        Property::Committee => {
            if e.k() >= e.m() {
                return None;
            }
            check_committee_monotonicity(rule, e, e.k(), e.k() + 1)
        }
    };
    let mut witness = verdict.ok()?.witness?;
    witness.property = property;
    Some(witness)
}

/// Greedily minimizes a violation: drops voters, then candidates, then
/// members of `G`, keeping each step only if the mutation still violates the
/// property. Repeats until no single removal survives.
pub fn shrink(rule: &Rule, witness: &MonotonicityWitness) -> MonotonicityWitness {
    let property = witness.property;
    let mut best = witness.clone();
    loop {
        if let Some(w) = drop_voter(rule, &best).or_else(|| drop_candidate(rule, &best)).or_else(|| drop_from_g(rule, &best)) {
            best = w;
        } else {
            best.property = property;
            return best;
        }
    }
}

fn drop_voter(rule: &Rule, w: &MonotonicityWitness) -> Option<MonotonicityWitness> {
    let e = &w.base;
    if e.n() < 2 {
        return None;
    }
    (0..e.n())
        .filter(|&j| Some(j) != w.voter)
        .find_map(|j| {
            let smaller = e.remove_voter(j).ok()?;
            let voter = w.voter.map(|i| if j < i { i - 1 } else { i });
            recheck(rule, w.property, &smaller, w.g, voter)
        })
}

fn drop_candidate(rule: &Rule, w: &MonotonicityWitness) -> Option<MonotonicityWitness> {
    let e = &w.base;
    if e.m() < 2 {
        return None;
    }
    (0..e.m())
        .filter(|&c| w.property == Property::Committee || !w.g.contains(c))
        .find_map(|c| {
            let smaller = e.remove_candidate(c).ok()?;
            let g = match w.property {
                Property::Committee => w.g,
                _ => remove_index(w.g, c),
            };
            recheck(rule, w.property, &smaller, g, w.voter)
        })
}

fn drop_from_g(rule: &Rule, w: &MonotonicityWitness) -> Option<MonotonicityWitness> {
    if w.property == Property::Committee || w.g.len() < 2 {
        return None;
    }
    w.g.iter()
        .find_map(|c| recheck(rule, w.property, &w.base, w.g.without(c), w.voter))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::abme::parse_election;
    use crate::monotonicity::check_committee_monotonicity;

    #[test]
    fn padding_voters_are_removed() {
        // Voters approving everything sit at distance 2 from any singleton and
        // distance 1 from any pair, so they never change MAV's choice here.
        let e = parse_election(
            "candidates: a b c\nk: 1\n1: a b\n1: a c\n1: b\n1: c\n3: a b c",
        )
        .unwrap();
        let mav = Rule::parse("mav").unwrap();
        let witness = check_committee_monotonicity(&mav, &e, 1, 2)
            .unwrap()
            .witness
            .unwrap();
        let small = shrink(&mav, &witness);
        assert!(small.base.n() <= 4);
        assert!(small.base.ballots().iter().all(|b| b.len() < 3));
        assert!(small.revalidate(&mav));
        // Fixpoint: shrinking again changes nothing.
        assert_eq!(shrink(&mav, &small), small);
    }
}
