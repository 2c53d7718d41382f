//! Partitions of the nonidentity operators into `3^N + 1` disjoint MCS's.
//!
//! Complete enumeration is offered for one and two qutrits. For three
//! qutrits the search looks for a single witness partition with a
//! prescribed number of separable MCS's.

use std::collections::{BTreeMap, HashSet};
use std::fmt;
use std::ops::ControlFlow;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cover::{BitSet, ExactCover, SearchStats};
use crate::error::{Error, Result};
use crate::mcs::{class_profiles, EntanglementClass, Mcs, McsCatalog};
use crate::pauli::PauliOp;
use crate::trit::Trit;

/// A set of `3^N + 1` pairwise-disjoint MCS's covering every nonidentity
/// canonical operator exactly once.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Partition {
    n: usize,
    mcs: Vec<Mcs>,
}

impl Partition {
    /// Validates disjointness and coverage from the raw member sets.
    pub fn new(mut mcs: Vec<Mcs>) -> Result<Partition> {
        let n = mcs.first().map(Mcs::n_qutrits).ok_or_else(|| Error::TheoremViolation("empty partition".into()))?;
        let d = 3usize.pow(n as u32);
        if mcs.len() != d + 1 {
            return Err(Error::TheoremViolation(format!("a partition needs {} MCS's, got {}", d + 1, mcs.len())));
        }
        let mut seen = vec![false; d * d];
        for m in &mcs {
            if m.n_qutrits() != n {
                return Err(Error::QutritCountMismatch { left: n, right: m.n_qutrits() });
            }
            for &op in m.members() {
                if std::mem::replace(&mut seen[op as usize], true) {
                    return Err(Error::TheoremViolation(format!(
                        "operator {} appears in more than one MCS",
                        PauliOp::from_index(n, op as u64)
                    )));
                }
            }
        }
        if let Some(missing) = (1..d * d).find(|&i| !seen[i]) {
            return Err(Error::TheoremViolation(format!(
                "operator {} is not covered",
                PauliOp::from_index(n, missing as u64)
            )));
        }
        mcs.sort();
        Ok(Partition { n, mcs })
    }

    /// Builds a partition from generator lists such as `["IZ,ZI", "IX,XI", ...]`.
    pub fn from_generator_strs(rows: &[&str]) -> Result<Partition> {
        let mcs = rows.iter().map(|r| Mcs::from_generator_str(r)).collect::<Result<Vec<_>>>()?;
        Partition::new(mcs)
    }

    pub fn n_qutrits(&self) -> usize {
        self.n
    }

    /// Member MCS's, sorted by subspace key.
    pub fn mcs(&self) -> &[Mcs] {
        &self.mcs
    }

    /// Replaces an MCS by the same subspace with caller-chosen generators.
    pub fn relabel(&mut self, generators: &[PauliOp]) -> Result<()> {
        let target = Mcs::span(generators)?;
        let slot = self
            .mcs
            .iter_mut()
            .find(|m| **m == target)
            .ok_or_else(|| Error::TheoremViolation(format!("{target} is not part of the partition")))?;
        *slot = target;
        Ok(())
    }

    /// Index of the MCS containing a nonidentity operator.
    pub fn mcs_of(&self, op: &PauliOp) -> Option<usize> {
        self.mcs.iter().position(|m| m.contains(op))
    }

    pub fn structure(&self) -> Result<StructureCounts> {
        let mut counts = StructureCounts::default();
        for m in &self.mcs {
            match m.classify()? {
                EntanglementClass::S => counts.s += 1,
                EntanglementClass::B => counts.b += 1,
                EntanglementClass::SB => counts.sb += 1,
                EntanglementClass::G => counts.g += 1,
            }
        }
        Ok(counts)
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.mcs.iter().map(ToString::to_string).collect();
        write!(f, "{}", parts.join(" "))
    }
}

/// The two-qutrit partition whose MCS's are generated by the first and
/// third entries of each row of the standard clock/shift table.
pub fn standard_two_qutrit_partition() -> Partition {
    Partition::from_generator_strs(&STANDARD_TWO_QUTRIT_ROWS).expect("valid partition")
}

/// Generator pairs of [`standard_two_qutrit_partition`], in row order.
pub const STANDARD_TWO_QUTRIT_ROWS: [&str; 10] = [
    "IZ,ZI", "IX,XI", "IY,YI", "IV,VI", "ZX,VZ", "ZY,XZ", "ZV,YZ", "Z2X,YZ2", "Z2Y,VZ2", "Z2V,XZ2",
];

/// Class census of a partition.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct StructureCounts {
    #[serde(rename = "S")]
    pub s: usize,
    #[serde(rename = "B")]
    pub b: usize,
    #[serde(rename = "SB")]
    pub sb: usize,
    #[serde(rename = "G")]
    pub g: usize,
}

impl StructureCounts {
    pub fn total(&self) -> usize {
        self.s + self.b + self.sb + self.g
    }

    pub fn get(&self, class: EntanglementClass) -> usize {
        match class {
            EntanglementClass::S => self.s,
            EntanglementClass::B => self.b,
            EntanglementClass::SB => self.sb,
            EntanglementClass::G => self.g,
        }
    }
}

impl fmt::Display for StructureCounts {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = [("S", self.s), ("B", self.b), ("SB", self.sb), ("G", self.g)]
            .iter()
            .filter(|(_, c)| *c > 0)
            .map(|(name, c)| format!("{c}{name}"))
            .collect();
        write!(f, "{}", parts.join("+"))
    }
}

fn cover_problem(catalog: &McsCatalog) -> ExactCover {
    let cap = 9usize.pow(catalog.n_qutrits() as u32);
    let universe = BitSet::from_items(cap, 1..cap);
    let sets = catalog
        .all()
        .iter()
        .map(|m| BitSet::from_items(cap, m.members().iter().map(|&i| i as usize)))
        .collect();
    ExactCover::new(universe, sets)
}

/// Every partition for `N ≤ 2`, sorted and duplicate-free.
pub fn enumerate_partitions(n: usize) -> Result<Vec<Partition>> {
    if n == 0 || n > 2 {
        return Err(Error::UnsupportedQutritCount { n, max: 2 });
    }
    let catalog = McsCatalog::new(n)?;
    let problem = cover_problem(&catalog);
    let mut keys: Vec<Vec<usize>> = Vec::new();
    problem.search(&[], &|_| true, None, |chosen| {
        let mut k = chosen.to_vec();
        k.sort_unstable();
        keys.push(k);
        ControlFlow::Continue(())
    });
    keys.sort();
    keys.dedup();
    keys.into_iter()
        .map(|k| Partition::new(k.into_iter().map(|i| catalog.get(i).clone()).collect()))
        .collect()
}

/// Groups partitions by their separable MCS's.
pub fn group_by_separable(partitions: &[Partition]) -> Result<BTreeMap<Vec<Vec<u32>>, Vec<&Partition>>> {
    let mut groups: BTreeMap<Vec<Vec<u32>>, Vec<&Partition>> = BTreeMap::new();
    for p in partitions {
        let mut key = Vec::new();
        for m in p.mcs() {
            if m.classify()? == EntanglementClass::S {
                key.push(m.members().to_vec());
            }
        }
        groups.entry(key).or_default().push(p);
    }
    Ok(groups)
}

/// Line index of a one-qutrit exponent pair: Z, X, Y, V lines map to 0..4.
fn line_of(x: u8, z: u8) -> usize {
    match (x, z) {
        (0, _) => 0,
        (_, 0) => 1,
        (a, b) if a == b => 2,
        _ => 3,
    }
}

/// For a two-qutrit partition, the pairing `P -> Q` of its separable
/// MCS's S(PQ), as a permutation of the letter lines Z, X, Y, V.
pub fn separable_pairing(p: &Partition) -> Result<[usize; 4]> {
    if p.n_qutrits() != 2 {
        return Err(Error::UnsupportedQutritCount { n: p.n_qutrits(), max: 2 });
    }
    let mut perm = [usize::MAX; 4];
    for m in p.mcs() {
        if m.classify()? != EntanglementClass::S {
            continue;
        }
        let ops = m.member_ops();
        let idle = |o: &PauliOp, i: usize| o.slot(i) == (Trit::ZERO, Trit::ZERO);
        let first = ops.iter().find(|o| idle(o, 1));
        let second = ops.iter().find(|o| idle(o, 0));
        let (Some(a), Some(b)) = (first, second) else {
            return Err(Error::TheoremViolation(format!("{m} has no one-body operators on both qutrits")));
        };
        let (ax, az) = a.slot(0);
        let (bx, bz) = b.slot(1);
        perm[line_of(ax.value(), az.value())] = line_of(bx.value(), bz.value());
    }
    if perm.contains(&usize::MAX) {
        return Err(Error::TheoremViolation("separable MCS's do not pair all four letters".into()));
    }
    Ok(perm)
}

/// Parity of a permutation: `false` for even, `true` for odd.
pub fn is_odd_permutation(perm: &[usize]) -> bool {
    let mut inversions = 0;
    for i in 0..perm.len() {
        for j in i + 1..perm.len() {
            inversions += usize::from(perm[i] > perm[j]);
        }
    }
    inversions % 2 == 1
}

/// Outcome of a structure-constrained witness search.
#[derive(Clone, Debug)]
pub enum WitnessSearch {
    Found { partition: Partition, stats: SearchStats },
    /// Every seed was searched to completion without a witness.
    Exhausted { seeds: usize, stats: SearchStats },
    /// The node budget ran out before a witness was found.
    BudgetExceeded { seeds_tried: usize, stats: SearchStats },
}

impl WitnessSearch {
    pub fn partition(&self) -> Option<&Partition> {
        match self {
            WitnessSearch::Found { partition, .. } => Some(partition),
            _ => None,
        }
    }
}

/// Options for [`find_partition_with_structure`].
#[derive(Clone, Copy, Debug)]
pub struct WitnessOptions {
    /// Node budget per seed; `None` searches each seed to completion.
    pub node_budget: Option<u64>,
    /// Largest number of separable seed choices to try.
    pub max_seeds: Option<usize>,
}

impl Default for WitnessOptions {
    fn default() -> Self {
        WitnessOptions { node_budget: Some(2_000_000), max_seeds: Some(64) }
    }
}

/// Searches for a three-qutrit partition with exactly `separable` S-class
/// MCS's.
///
/// Seeds are sets of `separable` pairwise-disjoint S-class MCS's in catalog
/// order; each seed is completed using SB- and G-class MCS's only. Seeds are
/// tried in parallel and the earliest successful seed wins, so the result
/// does not depend on the thread count.
pub fn find_partition_with_structure(
    catalog: &McsCatalog,
    separable: usize,
    options: WitnessOptions,
) -> Result<WitnessSearch> {
    if catalog.n_qutrits() != 3 {
        return Err(Error::UnsupportedQutritCount { n: catalog.n_qutrits(), max: 3 });
    }
    let classes: Vec<EntanglementClass> = catalog.all().iter().map(Mcs::classify).collect::<Result<_>>()?;
    let s_sets: Vec<usize> = (0..catalog.len()).filter(|&i| classes[i] == EntanglementClass::S).collect();
    let mut seeds = Vec::new();
    disjoint_combinations(catalog, &s_sets, separable, 0, &mut Vec::new(), &mut seeds, options.max_seeds);

    let problem = cover_problem(catalog);
    let allowed = |s: usize| classes[s] != EntanglementClass::S;
    let results: Vec<(Option<Vec<usize>>, SearchStats)> = seeds
        .par_iter()
        .map(|seed| {
            let mut found = None;
            let stats = problem.search(seed, &allowed, options.node_budget, |chosen| {
                found = Some(chosen.to_vec());
                ControlFlow::Break(())
            });
            (found, stats)
        })
        .collect();

    let mut total = SearchStats::default();
    for (found, stats) in &results {
        total.nodes += stats.nodes;
        total.truncated |= stats.truncated;
        if let Some(chosen) = found {
            total.solutions = 1;
            let partition = Partition::new(chosen.iter().map(|&k| catalog.get(k).clone()).collect())?;
            let counts = partition.structure()?;
            if counts.s != separable {
                return Err(Error::TheoremViolation(format!("search returned {counts} for target {separable}S")));
            }
            return Ok(WitnessSearch::Found { partition, stats: total });
        }
    }
    let complete_seed_list = options.max_seeds.map_or(true, |m| seeds.len() < m);
    if total.truncated || !complete_seed_list {
        Ok(WitnessSearch::BudgetExceeded { seeds_tried: seeds.len(), stats: total })
    } else {
        Ok(WitnessSearch::Exhausted { seeds: seeds.len(), stats: total })
    }
}

fn disjoint_combinations(
    catalog: &McsCatalog,
    pool: &[usize],
    k: usize,
    from: usize,
    current: &mut Vec<usize>,
    out: &mut Vec<Vec<usize>>,
    limit: Option<usize>,
) {
    if limit.is_some_and(|l| out.len() >= l) {
        return;
    }
    if current.len() == k {
        out.push(current.clone());
        return;
    }
    for idx in from..pool.len() {
        let cand = catalog.get(pool[idx]);
        if current.iter().all(|&c| catalog.get(c).is_disjoint(cand)) {
            current.push(pool[idx]);
            disjoint_combinations(catalog, pool, k, idx + 1, current, out, limit);
            current.pop();
        }
    }
}

/// One line of the operator budget check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BudgetLine {
    pub body: usize,
    pub available: usize,
    pub consumed: usize,
}

/// Result of checking class counts against the operator budgets.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CoexistenceReport {
    pub counts: StructureCounts,
    pub lines: Vec<BudgetLine>,
    pub violations: Vec<String>,
}

impl CoexistenceReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Number of nonidentity three-qutrit operators with 1, 2 and 3 nontrivial
/// factors, counted directly.
pub fn body_totals(n: usize) -> Vec<usize> {
    let mut totals = vec![0usize; n];
    for op in PauliOp::all_canonical(n).skip(1) {
        totals[op.body_count() - 1] += 1;
    }
    totals
}

/// Checks three-qutrit class counts against the one-, two- and three-body
/// operator budgets: every operator is used exactly once, and each class
/// consumes a fixed number of operators of each body count.
pub fn verify_coexistence(counts: &StructureCounts) -> CoexistenceReport {
    let totals = body_totals(3);
    let profiles = class_profiles(3);
    let mut violations = Vec::new();
    if counts.b != 0 {
        violations.push(format!("{} two-qutrit Bell-class MCS's cannot occur for three qutrits", counts.b));
    }
    if counts.total() != 28 {
        violations.push(format!("{} MCS's, expected 28", counts.total()));
    }
    let mut lines = Vec::new();
    for body in 0..3 {
        let consumed: usize = profiles.iter().map(|(class, p)| counts.get(*class) * p[body]).sum();
        if consumed != totals[body] {
            violations.push(format!(
                "{}-body operators: {consumed} consumed but {} exist",
                body + 1,
                totals[body]
            ));
        }
        lines.push(BudgetLine { body: body + 1, available: totals[body], consumed });
    }
    CoexistenceReport { counts: *counts, lines, violations }
}

/// All class counts `(S, SB, G)` that satisfy the three-qutrit budgets,
/// found by enumeration.
pub fn coexistence_solutions() -> Vec<StructureCounts> {
    let mut out = Vec::new();
    for s in 0..=28 {
        for sb in 0..=28 - s {
            let counts = StructureCounts { s, b: 0, sb, g: 28 - s - sb };
            if verify_coexistence(&counts).passed() {
                out.push(counts);
            }
        }
    }
    out
}

/// Checks that a list of partitions is duplicate-free as sets of subspaces.
pub fn all_distinct(partitions: &[Partition]) -> bool {
    let keys: HashSet<Vec<&[u32]>> = partitions.iter().map(|p| p.mcs().iter().map(Mcs::members).collect()).collect();
    keys.len() == partitions.len()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn one_qutrit_partition_is_unique() {
        let parts = enumerate_partitions(1).unwrap();
        assert_eq!(parts.len(), 1);
        assert_eq!(parts[0].structure().unwrap(), StructureCounts { s: 4, ..Default::default() });
    }

    #[test]
    fn two_qutrit_partitions() {
        let parts = enumerate_partitions(2).unwrap();
        // Exhaustive count; cross-checked by an independent brute force.
        assert_eq!(parts.len(), 36);
        assert!(all_distinct(&parts));
        for p in &parts {
            assert_eq!(p.structure().unwrap(), StructureCounts { s: 4, b: 6, ..Default::default() });
        }
        assert!(parts.contains(&standard_two_qutrit_partition()));
        let groups = group_by_separable(&parts).unwrap();
        assert_eq!(groups.len(), 24);
        let sizes: Vec<usize> = groups.values().map(Vec::len).collect();
        assert_eq!(sizes.iter().filter(|&&k| k == 2).count(), 12);
        assert_eq!(sizes.iter().filter(|&&k| k == 1).count(), 12);
    }

    #[test]
    fn completions_follow_pairing_parity() {
        let parts = enumerate_partitions(2).unwrap();
        for group in group_by_separable(&parts).unwrap().values() {
            let perm = separable_pairing(group[0]).unwrap();
            let expected = if is_odd_permutation(&perm) { 1 } else { 2 };
            assert_eq!(group.len(), expected, "pairing {perm:?}");
        }
        assert_eq!(separable_pairing(&standard_two_qutrit_partition()).unwrap(), [0, 1, 2, 3]);
        assert!(is_odd_permutation(&[1, 0, 2, 3]));
        assert!(!is_odd_permutation(&[1, 2, 0, 3]));
    }

    #[test]
    fn validation_rejects_overlaps_and_gaps() {
        let mut rows = STANDARD_TWO_QUTRIT_ROWS.to_vec();
        rows[9] = "Z2V,XZ2";
        rows[8] = "Z2V,XZ2";
        assert!(matches!(Partition::from_generator_strs(&rows), Err(Error::TheoremViolation(_))));
        assert!(Partition::from_generator_strs(&rows[..9]).is_err());
    }

    #[test]
    fn coexistence_examples() {
        let c = |s, sb, g| StructureCounts { s, b: 0, sb, g };
        let r = verify_coexistence(&c(4, 0, 24));
        assert!(r.passed());
        assert_eq!(r.lines.iter().map(|l| l.consumed).collect::<Vec<_>>(), vec![24, 192, 512]);
        assert!(verify_coexistence(&c(0, 12, 16)).passed());
        assert!(!verify_coexistence(&c(5, 0, 23)).passed());
        assert!(!verify_coexistence(&c(5, 0, 0)).passed());
        assert!(!verify_coexistence(&StructureCounts { s: 4, b: 6, sb: 0, g: 18 }).passed());
    }

    #[test]
    fn budget_solutions_follow_linear_relations() {
        let sols = coexistence_solutions();
        assert_eq!(sols.len(), 5);
        for (k, sol) in sols.iter().enumerate() {
            assert_eq!(sol.s, k);
            assert_eq!(sol.g, 16 + 2 * sol.s);
            assert_eq!(sol.sb, 12 - 3 * sol.s);
        }
    }

    #[test]
    fn structure_display() {
        assert_eq!(StructureCounts { s: 4, b: 6, sb: 0, g: 0 }.to_string(), "4S+6B");
    }
}
