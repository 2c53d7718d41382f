//! Cosets of an MCS subgroup and the factor-group theorem.
//!
//! Phases are quotiented out, so a coset is an affine class `u + A` of
//! exponent vectors. The class of `u` is labelled by the trits
//! `⟨gᵢ, u⟩` for the generators `gᵢ` of `A`; because `A` is Lagrangian this
//! labelling is an isomorphism from the factor group onto `Z₃ᴺ`.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::mcs::Mcs;
use crate::partition::Partition;
use crate::pauli::PauliOp;
use crate::trit::Trit;

/// One element of the factor group defined by `base`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Coset {
    label: Vec<Trit>,
    representative: PauliOp,
    members: Vec<u32>,
}

impl Coset {
    /// Symplectic pairings with the base generators.
    pub fn label(&self) -> &[Trit] {
        &self.label
    }

    /// `E`, `R`, `L` per label trit, e.g. `"ER"`.
    pub fn name(&self) -> String {
        self.label.iter().map(|t| ['E', 'R', 'L'][t.value() as usize]).collect()
    }

    /// Smallest-index member.
    pub fn representative(&self) -> &PauliOp {
        &self.representative
    }

    /// Sorted canonical indices, `3^N` of them.
    pub fn members(&self) -> &[u32] {
        &self.members
    }

    pub fn contains_index(&self, index: u32) -> bool {
        self.members.binary_search(&index).is_ok()
    }

    pub fn is_identity(&self) -> bool {
        self.label.iter().all(|t| t.is_zero())
    }
}

/// Label of an operator in the factor group of `base`.
pub fn coset_label(base: &Mcs, op: &PauliOp) -> Result<Vec<Trit>> {
    base.generators().iter().map(|g| g.symplectic_form(op)).collect()
}

fn label_index(label: &[Trit]) -> usize {
    label.iter().fold(0, |acc, t| acc * 3 + t.value() as usize)
}

/// The `3^N` cosets of `base`, ordered by label (identity coset first).
pub fn cosets(base: &Mcs) -> Result<Vec<Coset>> {
    let n = base.n_qutrits();
    let d = 3usize.pow(n as u32);
    let mut buckets: Vec<Vec<u32>> = vec![Vec::new(); d];
    let mut labels: Vec<Vec<Trit>> = vec![Vec::new(); d];
    for op in PauliOp::all_canonical(n) {
        let label = coset_label(base, &op)?;
        let k = label_index(&label);
        buckets[k].push(op.index() as u32);
        labels[k] = label;
    }
    buckets
        .into_iter()
        .zip(labels)
        .map(|(members, label)| {
            if members.len() != d {
                return Err(Error::TheoremViolation(format!("coset {label:?} of {base} has {} members", members.len())));
            }
            let representative = PauliOp::from_index(n, members[0] as u64);
            Ok(Coset { label, representative, members })
        })
        .collect()
}

/// Result of checking the factor-group theorem for one choice of identity
/// element.
#[derive(Clone, Debug, Serialize)]
pub struct FactorReport {
    pub n: usize,
    /// Index of the MCS chosen as identity element.
    pub identity_index: usize,
    pub identity: String,
    /// Coset names with their members listed in partition order.
    pub columns: Vec<(String, Vec<String>)>,
    pub checks: usize,
    pub violations: Vec<String>,
}

impl FactorReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks, for the MCS at `identity_index` of `p`:
/// every coset is `u·E` for its representative `u`; the coset map is a
/// homomorphism onto `Z₃ᴺ`; and every non-identity coset contains exactly
/// one member of every other MCS.
pub fn verify_factor_theorem(p: &Partition, identity_index: usize) -> Result<FactorReport> {
    let base = p
        .mcs()
        .get(identity_index)
        .ok_or(Error::IndexOutOfRange { index: identity_index, limit: p.mcs().len() })?;
    let n = p.n_qutrits();
    let all = cosets(base)?;
    let mut violations = Vec::new();
    let mut checks = 0usize;

    let mut subgroup = base.member_ops();
    subgroup.push(PauliOp::identity(n));
    for c in &all {
        let mut generated: Vec<u32> = subgroup
            .iter()
            .map(|e| c.representative.multiply(e).map(|u| u.index() as u32))
            .collect::<Result<_>>()?;
        generated.sort_unstable();
        generated.dedup();
        checks += 1;
        if generated != c.members {
            violations.push(format!("coset {} is not {}·E", c.name(), c.representative));
        }
    }

    for a in &all {
        for b in &all {
            let product = a.representative.multiply(&b.representative)?;
            let expected: Vec<Trit> = a.label.iter().zip(&b.label).map(|(&x, &y)| x + y).collect();
            let k = label_index(&expected);
            checks += 1;
            if !all[k].contains_index(product.index() as u32) {
                violations.push(format!(
                    "{}·{} = {} lies outside coset {}",
                    a.representative,
                    b.representative,
                    product.canonical(),
                    all[k].name()
                ));
            }
        }
    }

    let mut columns: Vec<(String, Vec<String>)> = all.iter().map(|c| (c.name(), Vec::new())).collect();
    for (j, other) in p.mcs().iter().enumerate() {
        if j == identity_index {
            for op in base.member_ops() {
                columns[0].1.push(op.to_string());
            }
            continue;
        }
        let mut hits = vec![0usize; all.len()];
        for op in other.member_ops() {
            let k = label_index(&coset_label(base, &op)?);
            hits[k] += 1;
            columns[k].1.push(op.to_string());
        }
        for (k, &h) in hits.iter().enumerate() {
            checks += 1;
            let want = usize::from(k != 0);
            if h != want {
                violations.push(format!("coset {} meets {} in {} operators", all[k].name(), other, h));
            }
        }
    }

    Ok(FactorReport {
        n,
        identity_index,
        identity: base.to_string(),
        columns,
        checks,
        violations,
    })
}

/// Runs [`verify_factor_theorem`] for every choice of identity element.
pub fn verify_all_choices(p: &Partition) -> Result<Vec<FactorReport>> {
    (0..p.mcs().len()).map(|i| verify_factor_theorem(p, i)).collect()
}

impl fmt::Display for FactorReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "identity element {} (MCS #{})", self.identity, self.identity_index)?;
        let width = self.columns.iter().flat_map(|(_, ops)| ops.iter().map(String::len)).max().unwrap_or(1);
        for (name, ops) in &self.columns {
            let cells: Vec<String> = ops.iter().map(|s| format!("{s:>width$}")).collect();
            writeln!(f, "  {name:<w$} | {}", cells.join(" "), w = self.n)?;
        }
        if self.passed() {
            write!(f, "  pass ({} checks)", self.checks)
        } else {
            write!(f, "  FAIL: {}", self.violations.join("; "))
        }
    }
}
