use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::fs::File;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use qutrit_mub::export::{self, BasisJson, ExactEntry, McsJson, PartitionJson};
use qutrit_mub::mcs::McsCatalog;
use qutrit_mub::mub::{label_string, reduced_one_qutrit};
use qutrit_mub::partition::{
    enumerate_partitions, find_partition_with_structure, group_by_separable, standard_two_qutrit_partition,
    verify_coexistence, WitnessOptions, WitnessSearch,
};
use qutrit_mub::states::{expand, named_state, product_basis};
use qutrit_mub::tomography::{self, format_rational, Mubs};
use qutrit_mub::{suite, BasisSet, CycMatrix, EntanglementClass, Error, Partition, Rational};

use crate::args::{BasisCommand, Command, McsCommand, PartitionCommand, StateArgs, TomographyCommand, VerifyCommand};

pub enum Failure {
    Usage(String),
    /// A check failed; `report` is still printed on stdout.
    Verification { report: String, message: String },
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        match e {
            Error::TheoremViolation(_) => Failure::Verification { report: String::new(), message: e.to_string() },
            other => Failure::Usage(other.to_string()),
        }
    }
}

type Outcome = Result<String, Failure>;

fn json<T: Serialize>(kind: &str, data: &T) -> Outcome {
    let doc = export::document(kind, data)?;
    let mut text = serde_json::to_string_pretty(&doc).map_err(|e| Failure::Usage(e.to_string()))?;
    text.push('\n');
    Ok(text)
}

pub fn run(command: Command) -> Outcome {
    match command {
        Command::Mcs(McsCommand::List { n, class, json }) => mcs_list(n as usize, class, json),
        Command::Partition(PartitionCommand::Enumerate { n, json }) => partition_enumerate(n as usize, json),
        Command::Partition(PartitionCommand::Find { n, separable, budget, json }) => {
            partition_find(n as usize, separable, budget, json)
        }
        Command::Verify(VerifyCommand::All { n, json }) => verify_all(n as usize, json),
        Command::Basis(BasisCommand::Build { generators, json }) => basis_build(&generators, json),
        Command::State(args) => state(args),
        Command::Tomography(TomographyCommand::Roundtrip { n, seed, mixtures, terms, csv, json }) => {
            let k = mixtures.unwrap_or(if n == 2 { 100 } else { 10 });
            tomography_roundtrip(n as usize, seed, k, terms, csv, json)
        }
    }
}

#[derive(Serialize)]
struct McsList {
    n: usize,
    total: usize,
    counts: BTreeMap<EntanglementClass, usize>,
    mcs: Vec<McsJson>,
}

fn mcs_list(n: usize, class: Option<EntanglementClass>, as_json: bool) -> Outcome {
    let catalog = McsCatalog::new(n)?;
    let mut counts = BTreeMap::new();
    let mut listed = Vec::new();
    for m in catalog.all() {
        let c = m.classify()?;
        *counts.entry(c).or_insert(0) += 1;
        if class.map_or(true, |want| want == c) {
            listed.push(McsJson::from_mcs(m)?);
        }
    }
    if as_json {
        return json("mcs-list", &McsList { n, total: catalog.len(), counts, mcs: listed });
    }
    let census: Vec<String> = counts.iter().map(|(c, k)| format!("{k} {c}")).collect();
    let mut out = format!("{} MCS's for {n} qutrit(s): {}\n", catalog.len(), census.join(", "));
    if let Some(c) = class {
        writeln!(out, "{} of class {c}:", listed.len()).unwrap();
    }
    for m in &listed {
        writeln!(out, "{:<20} {:<2} {:?}", m.generators.join(","), m.class.as_str(), m.profile).unwrap();
    }
    Ok(out)
}

#[derive(Serialize)]
struct PartitionList {
    n: usize,
    count: usize,
    partitions: Vec<PartitionJson>,
}

fn partition_row(p: &Partition) -> String {
    p.mcs().iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")
}

fn partition_enumerate(n: usize, as_json: bool) -> Outcome {
    let parts = enumerate_partitions(n)?;
    if as_json {
        let partitions = parts.iter().map(PartitionJson::from_partition).collect::<Result<_, _>>()?;
        return json("partition-list", &PartitionList { n, count: parts.len(), partitions });
    }
    let mut structures = BTreeMap::new();
    for p in &parts {
        *structures.entry(p.structure()?).or_insert(0usize) += 1;
    }
    let mut out = String::new();
    if structures.len() == 1 {
        let s = structures.keys().next().unwrap();
        writeln!(out, "{} partitions, all with structure {s}", parts.len()).unwrap();
    } else {
        let list: Vec<String> = structures.iter().map(|(s, k)| format!("{k} × {s}")).collect();
        writeln!(out, "{} partitions: {}", parts.len(), list.join(", ")).unwrap();
    }
    if n == 2 {
        let groups = group_by_separable(&parts)?;
        let mut sizes = BTreeMap::new();
        for g in groups.values() {
            *sizes.entry(g.len()).or_insert(0usize) += 1;
        }
        let list: Vec<String> = sizes.iter().map(|(size, k)| format!("{k} with {size} completion(s)")).collect();
        writeln!(out, "{} distinct separable quartets: {}", groups.len(), list.join(", ")).unwrap();
    }
    for (i, p) in parts.iter().enumerate() {
        writeln!(out, "{:>3}  {}", i + 1, partition_row(p)).unwrap();
    }
    Ok(out)
}

#[derive(Serialize)]
struct WitnessJson {
    n: usize,
    separable: usize,
    status: &'static str,
    nodes: u64,
    partition: Option<PartitionJson>,
    coexistence: Option<qutrit_mub::partition::CoexistenceReport>,
}

fn partition_find(n: usize, separable: usize, budget: u64, as_json: bool) -> Outcome {
    let catalog = McsCatalog::new(n)?;
    let options = WitnessOptions { node_budget: (budget > 0).then_some(budget), ..WitnessOptions::default() };
    let search = find_partition_with_structure(&catalog, separable, options)?;
    let (status, nodes) = match &search {
        WitnessSearch::Found { stats, .. } => ("found", stats.nodes),
        WitnessSearch::Exhausted { stats, .. } => ("exhausted", stats.nodes),
        WitnessSearch::BudgetExceeded { stats, .. } => ("budget-exceeded", stats.nodes),
    };
    let coexistence = search.partition().map(|p| p.structure().map(|s| verify_coexistence(&s))).transpose()?;
    let report = if as_json {
        let partition = search.partition().map(PartitionJson::from_partition).transpose()?;
        json(
            "partition-witness",
            &WitnessJson { n, separable, status, nodes, partition, coexistence: coexistence.clone() },
        )?
    } else {
        let mut out = String::new();
        match &search {
            WitnessSearch::Found { partition, .. } => {
                writeln!(out, "found {} after {nodes} search nodes", partition.structure()?).unwrap();
                for m in partition.mcs() {
                    writeln!(out, "  {:<2} {m}", m.classify()?.as_str()).unwrap();
                }
                for line in &coexistence.as_ref().unwrap().lines {
                    writeln!(out, "  {}-body operators: {} used of {}", line.body, line.consumed, line.available).unwrap();
                }
            }
            WitnessSearch::Exhausted { seeds: 0, .. } => {
                writeln!(out, "no partition with {separable} separable MCS's: no {separable} pairwise disjoint separable MCS's exist").unwrap();
            }
            WitnessSearch::Exhausted { seeds, .. } => {
                writeln!(out, "no partition with {separable} separable MCS's: {seeds} seeds searched to completion ({nodes} nodes)").unwrap();
            }
            WitnessSearch::BudgetExceeded { seeds_tried, .. } => {
                writeln!(out, "undecided: node budget exhausted over {seeds_tried} seeds ({nodes} nodes)").unwrap();
            }
        }
        out
    };
    match &search {
        WitnessSearch::BudgetExceeded { .. } => {
            Err(Failure::Verification { report, message: "search budget exhausted without a decision".into() })
        }
        _ if coexistence.as_ref().is_some_and(|c| !c.passed()) => Err(Failure::Verification {
            report,
            message: format!("witness violates the operator budgets: {:?}", coexistence.unwrap().violations),
        }),
        _ => Ok(report),
    }
}

fn verify_all(n: usize, as_json: bool) -> Outcome {
    let ledger = suite::run(n)?;
    let report = if as_json {
        json("ledger", &ledger)?
    } else {
        let mut out = String::new();
        for line in &ledger.lines {
            writeln!(out, "{line}").unwrap();
        }
        let failed = ledger.lines.iter().filter(|l| !l.passed).count();
        writeln!(out, "{} of {} checks passed", ledger.lines.len() - failed, ledger.lines.len()).unwrap();
        out
    };
    if ledger.passed() {
        Ok(report)
    } else {
        let first = ledger.lines.iter().find(|l| !l.passed).unwrap();
        Err(Failure::Verification { report, message: format!("{}: {}", first.label, first.failures.join("; ")) })
    }
}

fn format_vector(v: &[qutrit_mub::CycNum]) -> String {
    v.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ")
}

fn basis_build(generators: &str, as_json: bool) -> Outcome {
    let b = BasisSet::from_generator_str(generators)?;
    if as_json {
        return json("basis", &BasisJson::from_basis(&b)?);
    }
    let class = b.source().classify()?;
    let mut out = format!("eigenbasis of {} (class {class}), {} states\n", b.source(), b.dim());
    for ((l, psi), norm) in b.labels().iter().zip(b.states()).zip(b.norms()) {
        writeln!(out, "|{}>  norm² {}  [{}]", label_string(l), format_rational(norm), format_vector(psi)).unwrap();
    }
    Ok(out)
}

#[derive(Serialize)]
struct TermJson {
    label: String,
    coefficient: ExactEntry,
}

#[derive(Serialize)]
struct StateJson {
    name: String,
    args: Vec<u8>,
    n: usize,
    basis: Option<McsJson>,
    label: String,
    norm_sqr: String,
    amplitudes: Vec<ExactEntry>,
    reference: McsJson,
    lead: ExactEntry,
    terms: Vec<TermJson>,
    reduced_states: Vec<&'static str>,
}

fn describe_reduced(rho: &CycMatrix) -> &'static str {
    let mixed = CycMatrix::identity(3).scale_rational(&Rational::new(1.into(), 3.into()));
    if *rho == mixed {
        "I/3"
    } else if rho.trace_of_product(rho).map(|t| t.is_one()).unwrap_or(false) {
        "pure"
    } else {
        "mixed"
    }
}

fn state(args: StateArgs) -> Outcome {
    let named = named_state(&args.name, &args.args)?;
    let d = named.state.len();
    let n = (0..).find(|&k| 3usize.pow(k) == d).unwrap() as usize;
    let letters = args.basis.clone().unwrap_or_else(|| "Z".repeat(n));
    if letters.len() != n {
        return Err(Failure::Usage(format!("product basis {letters:?} needs {n} letters")));
    }
    let reference = product_basis(&letters)?;
    let e = expand(&named.state, &reference)?;
    let reduced: Vec<&'static str> =
        (0..n).map(|q| describe_reduced(&reduced_one_qutrit(&named.state, &named.norm, n, q))).collect();
    let label = named.label.iter().map(|d| char::from(b'0' + d)).collect::<String>();
    if args.json {
        let data = StateJson {
            name: named.name.clone(),
            args: args.args.clone(),
            n,
            basis: named.basis.as_ref().map(|b| McsJson::from_mcs(b.source())).transpose()?,
            label,
            norm_sqr: format_rational(&named.norm),
            amplitudes: named.state.iter().map(ExactEntry::from_cyc).collect::<Result<_, _>>()?,
            reference: McsJson::from_mcs(&e.reference)?,
            lead: ExactEntry::from_cyc(&e.lead)?,
            terms: e
                .terms
                .iter()
                .map(|(l, c)| {
                    Ok(TermJson {
                        label: l.iter().map(|d| char::from(b'0' + d)).collect(),
                        coefficient: ExactEntry::from_cyc(c)?,
                    })
                })
                .collect::<Result<_, Error>>()?,
            reduced_states: reduced,
        };
        return json("state", &data);
    }
    let mut out = String::new();
    match &named.basis {
        Some(b) => writeln!(out, "{} |{label}> of the eigenbasis of {}", named.name, b.source()).unwrap(),
        None => writeln!(out, "{}", named.name).unwrap(),
    }
    writeln!(out, "norm² {}", format_rational(&named.norm)).unwrap();
    writeln!(out, "amplitudes [{}]", format_vector(&named.state)).unwrap();
    writeln!(out, "{} terms: {e}", e.len()).unwrap();
    writeln!(out, "single-qutrit reduced states: {}", reduced.join(", ")).unwrap();
    Ok(out)
}

#[derive(Serialize)]
struct RoundTripJson {
    n: usize,
    seed: u64,
    partition: String,
    mixtures: usize,
    exact: usize,
}

fn tomography_roundtrip(
    n: usize,
    seed: u64,
    mixtures: usize,
    terms: usize,
    csv: Option<std::path::PathBuf>,
    as_json: bool,
) -> Outcome {
    if terms == 0 {
        return Err(Failure::Usage("a mixture needs at least one projector".into()));
    }
    let partition = if n == 2 {
        standard_two_qutrit_partition()
    } else {
        let catalog = McsCatalog::new(n)?;
        match find_partition_with_structure(&catalog, 4, WitnessOptions::default())? {
            WitnessSearch::Found { partition, .. } => partition,
            other => return Err(Failure::Usage(format!("no three-qutrit partition available: {other:?}"))),
        }
    };
    let mubs = Mubs::from_partition(&partition)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut exact = 0;
    let mut failures = Vec::new();
    for i in 0..mixtures {
        let rho = tomography::random_mixture(&mubs, terms, &mut rng)?;
        let rt = tomography::round_trip(&rho, &mubs)?;
        if i == 0 {
            if let Some(path) = &csv {
                let file = File::create(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
                rt.table.write_csv(file)?;
            }
        }
        if rt.exact {
            exact += 1;
        } else {
            failures.push(i);
        }
    }
    let structure = partition.structure()?;
    let report = if as_json {
        json(
            "tomography-roundtrip",
            &RoundTripJson { n, seed, partition: structure.to_string(), mixtures, exact },
        )?
    } else {
        format!(
            "{exact}/{mixtures} random mixtures of {terms} projectors reconstructed exactly \
             ({n} qutrits, partition {structure}, seed {seed})\n"
        )
    };
    if failures.is_empty() {
        Ok(report)
    } else {
        Err(Failure::Verification { report, message: format!("mixtures {failures:?} did not round-trip") })
    }
}
