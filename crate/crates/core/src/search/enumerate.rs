use super::GenerationBounds;
use crate::election::{CandidateSet, Election};
use itertools::Itertools;
use rayon::prelude::*;
use std::collections::VecDeque;

/// One `(n, m)` slice of an enumeration.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Layer {
    pub n: usize,
    pub m: usize,
}

/// Layers in the order they are visited: by `n + m`, then `m`, then `n`, so
/// that small elections come first.
pub(crate) fn layers(bounds: &GenerationBounds) -> Vec<Layer> {
    let mut out: Vec<Layer> = bounds
        .voters
        .clone()
        .cartesian_product(bounds.candidates.clone())
        .map(|(n, m)| Layer { n, m })
        .collect();
    out.sort_by_key(|l| (l.n + l.m, l.m, l.n));
    out
}

/// For each relabeling of `m` candidates, the image of every ballot mask.
fn relabel_tables(m: usize) -> Vec<Vec<u64>> {
    (0..m)
        .permutations(m)
        .filter(|p| p.iter().enumerate().any(|(i, &j)| i != j))
        .map(|p| {
            (0..1u64 << m)
                .map(|mask| {
                    (0..m)
                        .filter(|&c| mask >> c & 1 == 1)
                        .fold(0u64, |acc, c| acc | 1 << p[c])
                })
                .collect()
        })
        .collect()
}

fn relabeled(ballots: &[u64], table: &[u64]) -> Vec<u64> {
    let mut out: Vec<u64> = ballots.iter().map(|&b| table[b as usize]).collect();
    out.sort_unstable();
    out
}

fn is_canonical_with(ballots: &[u64], tables: &[Vec<u64>]) -> bool {
    tables
        .iter()
        .all(|t| relabeled(ballots, t).as_slice() >= ballots)
}

/// Whether the election's sorted ballot multiset is the smallest among all
/// its candidate relabelings.
pub fn is_canonical(e: &Election) -> bool {
    let mut ballots: Vec<u64> = e.ballots().iter().map(|b| b.bits()).collect();
    ballots.sort_unstable();
    is_canonical_with(&ballots, &relabel_tables(e.m()))
}

/// The lexicographically smallest sorted ballot multiset over all candidate
/// relabelings. Two elections with equal `m` are isomorphic iff their
/// canonical forms agree.
pub fn canonical_form(e: &Election) -> Vec<CandidateSet> {
    let mut ballots: Vec<u64> = e.ballots().iter().map(|b| b.bits()).collect();
    ballots.sort_unstable();
    relabel_tables(e.m())
        .iter()
        .map(|t| relabeled(&ballots, t))
        .fold(ballots.clone(), |best, cand| best.min(cand))
        .into_iter()
        .map(CandidateSet::from_bits)
        .collect()
}

const BATCH: usize = 4096;

/// Sorted ballot multisets of one layer, in lexicographic order of the
/// (ascending) mask sequence, optionally restricted to canonical ones.
pub struct LayerMultisets {
    n: usize,
    masks: u64,
    tables: Option<Vec<Vec<u64>>>,
    /// Next raw sequence of mask values, non-decreasing.
    cursor: Option<Vec<u64>>,
    buffer: VecDeque<Vec<u64>>,
}

impl LayerMultisets {
    fn new(layer: Layer, dedup: bool) -> Self {
        let masks = (1u64 << layer.m) - 1;
        LayerMultisets {
            n: layer.n,
            masks,
            tables: dedup.then(|| relabel_tables(layer.m)),
            cursor: Some(vec![1; layer.n]),
            buffer: VecDeque::new(),
        }
    }

    fn advance(&mut self) -> Option<Vec<u64>> {
        let current = self.cursor.take()?;
        let mut next = current.clone();
        let mut i = self.n;
        while i > 0 {
            i -= 1;
            if next[i] < self.masks {
                let v = next[i] + 1;
                next[i..].iter_mut().for_each(|x| *x = v);
                self.cursor = Some(next);
                break;
            }
        }
        Some(current)
    }

    fn refill(&mut self) {
        let raw: Vec<Vec<u64>> = std::iter::from_fn(|| self.advance()).take(BATCH).collect();
        match &self.tables {
            Some(tables) => {
                let keep: Vec<bool> = raw
                    .par_iter()
                    .map(|b| is_canonical_with(b, tables))
                    .collect();
                self.buffer
                    .extend(raw.into_iter().zip(keep).filter_map(|(b, k)| k.then_some(b)));
            }
            None => self.buffer.extend(raw),
        }
    }
}

impl Iterator for LayerMultisets {
    type Item = Vec<CandidateSet>;

    fn next(&mut self) -> Option<Self::Item> {
        while self.buffer.is_empty() {
            self.cursor.as_ref()?;
            self.refill();
        }
        self.buffer
            .pop_front()
            .map(|b| b.into_iter().map(CandidateSet::from_bits).collect())
    }
}

/// Ballot multisets with exactly `n` voters over `m` candidates; one per
/// isomorphism class when `dedup` is set.
pub fn enumerate_layer(n: usize, m: usize, dedup: bool) -> LayerMultisets {
    LayerMultisets::new(Layer { n, m }, dedup)
}

/// Every election within the bounds, small layers first; within a layer,
/// ballot multisets in lexicographic order and each with every allowed `k`.
pub fn enumerate_elections(bounds: &GenerationBounds) -> impl Iterator<Item = Election> + '_ {
    layers(bounds).into_iter().flat_map(move |layer| {
        enumerate_layer(layer.n, layer.m, bounds.dedup).flat_map(move |ballots| {
            bounds.sizes_for(layer.m).map(move |k| {
                Election::with_default_names(layer.m, ballots.clone(), k)
                    .expect("generated election is valid")
            })
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Number of multisets of size `n` over `2^m − 1` ballots, up to
    /// candidate relabeling, by Burnside's lemma: average over relabelings of
    /// the number of multisets each one fixes. A relabeling permutes the
    /// ballots in cycles, and a multiset is fixed iff it has constant
    /// multiplicity on each cycle.
    fn burnside_count(n: usize, m: usize) -> usize {
        let mut total = 0usize;
        let mut group = 0usize;
        for p in (0..m).permutations(m) {
            group += 1;
            let image = |mask: u64| -> u64 {
                (0..m).filter(|&c| mask >> c & 1 == 1).fold(0, |acc, c| acc | 1 << p[c])
            };
            let mut seen = vec![false; 1 << m];
            let mut cycle_lengths = Vec::new();
            for start in 1..(1u64 << m) {
                if seen[start as usize] {
                    continue;
                }
                let mut len = 0;
                let mut x = start;
                while !seen[x as usize] {
                    seen[x as usize] = true;
                    x = image(x);
                    len += 1;
                }
                cycle_lengths.push(len);
            }
            let mut ways = vec![0usize; n + 1];
            ways[0] = 1;
            for &len in &cycle_lengths {
                for s in len..=n {
                    ways[s] += ways[s - len];
                }
            }
            total += ways[n];
        }
        total / group
    }

    #[test]
    fn small_layers_by_hand() {
        assert_eq!(enumerate_layer(1, 2, true).count(), 2);
        assert_eq!(enumerate_layer(2, 2, true).count(), 4);
        assert_eq!(enumerate_elections(&GenerationBounds::exact(1, 2, 1)).count(), 2);
        assert_eq!(enumerate_elections(&GenerationBounds::exact(2, 2, 1)).count(), 4);
    }

    #[test]
    fn class_counts_match_burnside() {
        for m in 1..=4 {
            for n in 1..=4 {
                assert_eq!(enumerate_layer(n, m, true).count(), burnside_count(n, m), "n={n} m={m}");
            }
        }
        assert_eq!(enumerate_layer(3, 3, false).count(), 84); // C(9, 3) multisets
    }

    #[test]
    fn canonical_form_is_relabeling_invariant() {
        let a = Election::with_default_names(
            3,
            vec![CandidateSet::from_bits(0b001), CandidateSet::from_bits(0b110)],
            1,
        )
        .unwrap();
        let b = Election::with_default_names(
            3,
            vec![CandidateSet::from_bits(0b011), CandidateSet::from_bits(0b100)],
            1,
        )
        .unwrap();
        assert_eq!(canonical_form(&a), canonical_form(&b));
        assert!(is_canonical(&Election::with_default_names(3, canonical_form(&b), 1).unwrap()));
    }

    #[test]
    fn layers_are_size_ordered() {
        let l = layers(&GenerationBounds::up_to(2, 2));
        assert_eq!(
            l,
            vec![
                Layer { n: 1, m: 1 },
                Layer { n: 2, m: 1 },
                Layer { n: 1, m: 2 },
                Layer { n: 2, m: 2 }
            ]
        );
    }
}
