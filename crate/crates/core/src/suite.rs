//! The full verification run behind `verify all`: every check is exact and
//! reported as one ledger line.

use std::fmt;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::check::CheckReport;
use crate::error::{Error, Result};
use crate::factor_group::verify_all_choices;
use crate::mcs::{class_profiles, EntanglementClass, McsCatalog};
use crate::mub::{self, bases_for, hermitian_pair, BasisSet, HermPair};
use crate::partition::{
    enumerate_partitions, find_partition_with_structure, standard_two_qutrit_partition, verify_coexistence,
    Partition, StructureCounts, WitnessOptions, WitnessSearch,
};
use crate::pauli::{verify_ladder_table, PauliOp};

/// One line of the ledger.
#[derive(Clone, Debug, Serialize)]
pub struct LedgerLine {
    pub label: String,
    pub passed: bool,
    pub summary: String,
    /// First few offending objects, empty on success.
    pub failures: Vec<String>,
}

impl LedgerLine {
    fn from_report(label: impl Into<String>, r: &CheckReport) -> LedgerLine {
        LedgerLine {
            label: label.into(),
            passed: r.passed(),
            summary: if r.passed() {
                format!("pass ({} checks)", r.checks)
            } else {
                format!("FAIL ({} of {} checks)", r.failures, r.checks)
            },
            failures: r.violations.clone(),
        }
    }

    /// `k/total pass` over a list of independent items.
    fn tally(label: impl Into<String>, results: &[(String, bool)]) -> LedgerLine {
        let ok = results.iter().filter(|(_, p)| *p).count();
        let failures: Vec<String> = results.iter().filter(|(_, p)| !p).map(|(s, _)| s.clone()).take(16).collect();
        LedgerLine {
            label: label.into(),
            passed: ok == results.len(),
            summary: if ok == results.len() {
                format!("{ok}/{} pass", results.len())
            } else {
                format!("{ok}/{} pass, FAIL", results.len())
            },
            failures,
        }
    }

    fn single(label: impl Into<String>, passed: bool, summary: impl Into<String>) -> LedgerLine {
        let summary = summary.into();
        LedgerLine {
            label: label.into(),
            passed,
            failures: if passed { Vec::new() } else { vec![summary.clone()] },
            summary,
        }
    }
}

impl fmt::Display for LedgerLine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.label, self.summary)?;
        for v in self.failures.iter().take(3) {
            write!(f, "\n    {v}")?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Ledger {
    pub n: usize,
    pub lines: Vec<LedgerLine>,
}

impl Ledger {
    pub fn passed(&self) -> bool {
        self.lines.iter().all(|l| l.passed)
    }
}

fn qutrit_word(n: usize) -> &'static str {
    ["zero", "one", "two", "three"].get(n).copied().unwrap_or("many")
}

/// `Π_{k=1..N} (3^k + 1)`.
pub fn expected_mcs_count(n: usize) -> usize {
    (1..=n as u32).map(|k| 3usize.pow(k) + 1).product()
}

fn census_lines(catalog: &McsCatalog) -> Result<Vec<LedgerLine>> {
    let n = catalog.n_qutrits();
    let want = expected_mcs_count(n);
    let mut lines = vec![LedgerLine::single(
        "MCS census",
        catalog.len() == want,
        format!("{} MCS's, expected {want}", catalog.len()),
    )];
    let table = class_profiles(n);
    let mut exceptions = Vec::new();
    let mut counts = std::collections::BTreeMap::<EntanglementClass, usize>::new();
    for m in catalog.all() {
        let class = m.classify()?;
        *counts.entry(class).or_default() += 1;
        if !table.iter().any(|(c, p)| *c == class && *p == m.profile()) {
            exceptions.push(format!("{m} ({class}) has profile {:?}", m.profile()));
        }
    }
    let census: Vec<String> = counts.iter().map(|(c, k)| format!("{k} {c}")).collect();
    lines.push(LedgerLine {
        label: "MCS profiles match the class table".into(),
        passed: exceptions.is_empty(),
        summary: format!("{} exceptions ({})", exceptions.len(), census.join(", ")),
        failures: exceptions.into_iter().take(16).collect(),
    });
    Ok(lines)
}

/// Deterministic sample of Hermitean pairs; exhaustive when `sample` is `None`.
pub fn hermitian_pairs(n: usize, sample: Option<(usize, u64)>) -> Result<Vec<HermPair>> {
    let mut ops: Vec<PauliOp> =
        PauliOp::all_canonical(n).skip(1).filter(|u| u.index() < u.dagger().index()).collect();
    if let Some((k, seed)) = sample {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        ops.shuffle(&mut rng);
        ops.truncate(k);
        ops.sort_by_key(PauliOp::index);
    }
    ops.iter().map(hermitian_pair).collect()
}

fn observable_lines(n: usize) -> Result<Vec<LedgerLine>> {
    let sample = if n >= 3 { Some((24, 3)) } else { None };
    let pairs = hermitian_pairs(n, sample)?;
    let mut identities = CheckReport::new("observable identities");
    for p in &pairs {
        identities.absorb(p.verify()?);
    }
    let scope = if sample.is_some() { "sampled" } else { "all" };
    let mut lines = vec![LedgerLine::from_report(
        format!("Hermitean pairs H, H-bar ({scope} {} operators): identities and spectra", pairs.len()),
        &identities,
    )];
    let orth = mub::verify_hermitian_orthonormality(&pairs)?;
    lines.push(LedgerLine::from_report(
        format!("Hermitean observables orthogonal ({} matrices)", 2 * pairs.len()),
        &orth,
    ));
    Ok(lines)
}

fn basis_lines(what: &str, partitions: &[Partition], dense: bool) -> Result<Vec<LedgerLine>> {
    let mut proj = CheckReport::new("projectors");
    let mut orth = CheckReport::new("orthonormality");
    let mut unbiased = CheckReport::new("unbiasedness");
    let mut spectral = CheckReport::new("spectral");
    let mut operators = CheckReport::new("operators");
    let mut classes = Vec::new();
    let mut cache: std::collections::HashMap<Vec<u32>, BasisSet> = std::collections::HashMap::new();
    for p in partitions {
        let missing: Vec<_> = p.mcs().iter().filter(|m| !cache.contains_key(m.members())).cloned().collect();
        for b in bases_for(&missing)? {
            proj.absorb(mub::verify_projectors(&b, dense));
            orth.absorb(mub::verify_orthonormal(&b, dense));
            spectral.absorb(mub::verify_spectral_round_trip(&b, dense));
            let class = mub::classify_basis(&b);
            classes.push((
                format!("{}: state class {:?}, subset class {:?}", b.source(), class, b.source().classify()),
                matches!((&class, b.source().classify()), (Ok(a), Ok(c)) if *a == c),
            ));
            cache.insert(b.source().members().to_vec(), b);
        }
        let bases: Vec<BasisSet> = p.mcs().iter().map(|m| cache[m.members()].clone()).collect();
        unbiased.absorb(mub::verify_mutually_unbiased(&bases, dense));
        operators.absorb(mub::verify_operator_orthonormality(p.mcs(), dense && p.n_qutrits() <= 1));
    }
    let d = 3usize.pow(partitions.first().map_or(1, Partition::n_qutrits) as u32);
    Ok(vec![
        LedgerLine::from_report(format!("{what}: projectors Hermitean, idempotent, complete"), &proj),
        LedgerLine::from_report(format!("{what}: bases orthonormal"), &orth),
        LedgerLine::from_report(format!("{what}: bases pairwise unbiased (overlap 1/{d})"), &unbiased),
        LedgerLine::from_report(format!("{what}: spectral decomposition of every subgroup element"), &spectral),
        LedgerLine::from_report(format!("{what}: operator basis orthonormal"), &operators),
        LedgerLine::tally(format!("{what}: entanglement of basis states matches MCS class"), &classes),
    ])
}

fn factor_line(label: &str, partitions: &[Partition]) -> Result<LedgerLine> {
    let mut results = Vec::new();
    for p in partitions {
        for r in verify_all_choices(p)? {
            let name = format!("identity {} : {}", r.identity, r.violations.first().cloned().unwrap_or_default());
            results.push((name, r.passed()));
        }
    }
    Ok(LedgerLine::tally(label, &results))
}

/// Witness partitions for every separable count the operator budgets allow.
pub fn three_qutrit_witnesses(catalog: &McsCatalog) -> Result<Vec<(usize, WitnessSearch)>> {
    let mut targets: Vec<usize> = crate::partition::coexistence_solutions().iter().map(|c| c.s).collect();
    targets.dedup();
    targets
        .into_iter()
        .map(|s| Ok((s, find_partition_with_structure(catalog, s, WitnessOptions::default())?)))
        .collect()
}

/// Runs every check that applies to `n` qutrits.
pub fn run(n: usize) -> Result<Ledger> {
    if !(1..=3).contains(&n) {
        return Err(Error::UnsupportedQutritCount { n, max: 3 });
    }
    let word = qutrit_word(n);
    let mut lines = Vec::new();
    lines.push(LedgerLine::from_report("one-qutrit multiplication table of E, R, L ladders", &verify_ladder_table()?));

    let catalog = McsCatalog::new(n)?;
    lines.extend(census_lines(&catalog)?);

    let partitions: Vec<Partition> = match n {
        1 | 2 => {
            let parts = enumerate_partitions(n)?;
            let structures: Vec<StructureCounts> = parts.iter().map(Partition::structure).collect::<Result<_>>()?;
            let first = structures[0];
            let uniform = structures.iter().all(|s| *s == first);
            lines.push(LedgerLine::single(
                format!("{word}-qutrit partitions share one structure"),
                uniform,
                format!("{} partitions, all {first}", parts.len()),
            ));
            if n == 2 {
                let std = standard_two_qutrit_partition();
                lines.push(LedgerLine::single(
                    "reference two-qutrit partition is found by enumeration",
                    parts.iter().any(|p| p.mcs() == std.mcs()),
                    "reference partition present",
                ));
            }
            parts
        }
        _ => {
            let mut found = Vec::new();
            let mut results = Vec::new();
            for (s, search) in three_qutrit_witnesses(&catalog)? {
                match search {
                    WitnessSearch::Found { partition, .. } => {
                        let counts = partition.structure()?;
                        let coexist = verify_coexistence(&counts);
                        results.push((format!("{counts}: {:?}", coexist.violations), coexist.passed()));
                        found.push(partition);
                    }
                    other => results.push((format!("{s}S: no witness ({other:?})"), false)),
                }
            }
            lines.push(LedgerLine::tally(
                "three-qutrit witness partitions found and within operator budgets",
                &results,
            ));
            found
        }
    };

    lines.push(factor_line(&format!("{word}-qutrit factor groups"), &partitions)?);
    lines.extend(observable_lines(n)?);
    let what = format!("{word}-qutrit bases");
    lines.extend(basis_lines(&what, &partitions, n == 1)?);
    if n == 2 {
        let bases = bases_for(standard_two_qutrit_partition().mcs())?;
        let mut dense = CheckReport::new("dense");
        for b in &bases {
            dense.absorb(mub::verify_projectors(b, true));
            dense.absorb(mub::verify_orthonormal(b, true));
            dense.absorb(mub::verify_spectral_round_trip(b, true));
        }
        dense.absorb(mub::verify_mutually_unbiased(&bases, true));
        lines.push(LedgerLine::from_report("reference two-qutrit partition: dense matrix cross-check", &dense));
    }
    Ok(Ledger { n, lines })
}
