//! Backtracking exact cover over bitset-encoded candidate sets.
//!
//! Items are small integers; each candidate set is a [`BitSet`]. The search
//! always branches on the uncovered item with the fewest live candidates.

use std::ops::ControlFlow;

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct BitSet {
    words: Vec<u64>,
}

impl BitSet {
    pub fn new(capacity: usize) -> BitSet {
        BitSet { words: vec![0; capacity.div_ceil(64)] }
    }

    pub fn from_items(capacity: usize, items: impl IntoIterator<Item = usize>) -> BitSet {
        let mut s = BitSet::new(capacity);
        for i in items {
            s.insert(i);
        }
        s
    }

    pub fn insert(&mut self, i: usize) {
        self.words[i / 64] |= 1 << (i % 64);
    }

    pub fn contains(&self, i: usize) -> bool {
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn is_disjoint(&self, other: &BitSet) -> bool {
        self.words.iter().zip(&other.words).all(|(a, b)| a & b == 0)
    }

    pub fn union_with(&mut self, other: &BitSet) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }

    pub fn difference_with(&mut self, other: &BitSet) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= !b;
        }
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(k, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let t = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(k * 64 + t)
            })
        })
    }
}

/// An exact cover instance: cover every item of `universe` exactly once.
#[derive(Clone, Debug)]
pub struct ExactCover {
    universe: BitSet,
    sets: Vec<BitSet>,
    sets_by_item: Vec<Vec<usize>>,
}

/// Search statistics.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SearchStats {
    pub nodes: u64,
    pub solutions: u64,
    /// True when the node budget stopped the search early.
    pub truncated: bool,
}

impl ExactCover {
    pub fn new(universe: BitSet, sets: Vec<BitSet>) -> ExactCover {
        let cap = universe.words.len() * 64;
        let mut sets_by_item = vec![Vec::new(); cap];
        for (s, set) in sets.iter().enumerate() {
            for item in set.iter() {
                sets_by_item[item].push(s);
            }
        }
        ExactCover { universe, sets, sets_by_item }
    }

    pub fn sets(&self) -> &[BitSet] {
        &self.sets
    }

    /// Runs the search from a partial cover. `allowed` filters the sets that
    /// may be added; `visit` receives each complete cover (as set indices,
    /// including `start`) and may stop the search.
    pub fn search<F>(
        &self,
        start: &[usize],
        allowed: &dyn Fn(usize) -> bool,
        node_budget: Option<u64>,
        mut visit: F,
    ) -> SearchStats
    where
        F: FnMut(&[usize]) -> ControlFlow<()>,
    {
        let mut covered = BitSet::new(self.universe.words.len() * 64);
        for &s in start {
            debug_assert!(covered.is_disjoint(&self.sets[s]));
            covered.union_with(&self.sets[s]);
        }
        let mut chosen = start.to_vec();
        let mut stats = SearchStats::default();
        let _ = self.recurse(&mut covered, &mut chosen, allowed, node_budget, &mut visit, &mut stats);
        stats
    }

    fn recurse<F>(
        &self,
        covered: &mut BitSet,
        chosen: &mut Vec<usize>,
        allowed: &dyn Fn(usize) -> bool,
        budget: Option<u64>,
        visit: &mut F,
        stats: &mut SearchStats,
    ) -> ControlFlow<()>
    where
        F: FnMut(&[usize]) -> ControlFlow<()>,
    {
        stats.nodes += 1;
        if budget.is_some_and(|b| stats.nodes > b) {
            stats.truncated = true;
            return ControlFlow::Break(());
        }
        let mut remaining = self.universe.clone();
        remaining.difference_with(covered);
        if remaining.is_empty() {
            stats.solutions += 1;
            return visit(chosen);
        }

        // Most constrained item: fewest sets that are allowed and still fit.
        let mut best: Option<(usize, Vec<usize>)> = None;
        for item in remaining.iter() {
            let live: Vec<usize> = self.sets_by_item[item]
                .iter()
                .copied()
                .filter(|&s| allowed(s) && self.sets[s].is_disjoint(covered))
                .collect();
            if live.is_empty() {
                return ControlFlow::Continue(());
            }
            if best.as_ref().map_or(true, |(_, b)| live.len() < b.len()) {
                let done = live.len() == 1;
                best = Some((item, live));
                if done {
                    break;
                }
            }
        }
        let (_, candidates) = best.expect("remaining is nonempty");
        for s in candidates {
            covered.union_with(&self.sets[s]);
            chosen.push(s);
            let flow = self.recurse(covered, chosen, allowed, budget, visit, stats);
            chosen.pop();
            covered.difference_with(&self.sets[s]);
            flow?;
        }
        ControlFlow::Continue(())
    }
}
