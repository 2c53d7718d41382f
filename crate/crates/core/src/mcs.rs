//! Maximally commuting subsets (MCS's) of the N-qutrit Pauli operators.
//!
//! An MCS together with the identity is a maximal isotropic (Lagrangian)
//! subspace of the symplectic space `Z₃^{2N}`: N independent, pairwise
//! commuting generators span `3^N` exponent vectors. Phases play no role in
//! membership, so members are stored as canonical operator indices.

use std::collections::HashMap;
use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::pauli::PauliOp;
use crate::trit::Trit;

/// Largest qutrit count for exhaustive MCS enumeration.
pub const MAX_ENUMERATION_QUTRITS: usize = 3;

/// Entanglement type of an MCS (equivalently, of its eigenbasis).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum EntanglementClass {
    /// Separable: product of one-qutrit eigenbases.
    S,
    /// Two-qutrit Bell-like, totally entangled.
    B,
    /// One qutrit unentangled, the other two Bell-like.
    SB,
    /// Three-qutrit GHZ-like, totally entangled.
    G,
}

impl EntanglementClass {
    pub fn as_str(self) -> &'static str {
        match self {
            EntanglementClass::S => "S",
            EntanglementClass::B => "B",
            EntanglementClass::SB => "SB",
            EntanglementClass::G => "G",
        }
    }
}

impl fmt::Display for EntanglementClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for EntanglementClass {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "S" => Ok(EntanglementClass::S),
            "B" => Ok(EntanglementClass::B),
            "SB" => Ok(EntanglementClass::SB),
            "G" => Ok(EntanglementClass::G),
            other => Err(format!("unknown class {other:?} (expected S, B, SB or G)")),
        }
    }
}

/// Reference body-count profiles `(1-body, 2-body, ...)` per class.
pub fn class_profiles(n: usize) -> Vec<(EntanglementClass, Vec<usize>)> {
    use EntanglementClass::*;
    match n {
        1 => vec![(S, vec![2])],
        2 => vec![(S, vec![4, 4]), (B, vec![0, 8])],
        3 => vec![(S, vec![6, 12, 8]), (SB, vec![2, 8, 16]), (G, vec![0, 6, 20])],
        _ => vec![],
    }
}

/// A maximally commuting subset: the `3^N - 1` nonidentity elements of a
/// Lagrangian subspace, with the generators used to label its eigenbasis.
#[derive(Clone)]
pub struct Mcs {
    n: usize,
    generators: Vec<PauliOp>,
    members: Vec<u32>,
}

impl PartialEq for Mcs {
    /// Subspace equality; generator choice is irrelevant.
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.members == other.members
    }
}

impl Eq for Mcs {}

impl std::hash::Hash for Mcs {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.n.hash(state);
        self.members.hash(state);
    }
}

impl PartialOrd for Mcs {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Mcs {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.n, &self.members).cmp(&(other.n, &other.members))
    }
}

impl Mcs {
    /// The MCS spanned by `N` independent, pairwise commuting operators.
    /// Phases of the generators are stripped.
    pub fn span(generators: &[PauliOp]) -> Result<Mcs> {
        let n = generators.first().map(PauliOp::n_qutrits).ok_or(Error::GeneratorCount { expected: 1, got: 0 })?;
        if generators.len() != n {
            return Err(Error::GeneratorCount { expected: n, got: generators.len() });
        }
        for g in generators {
            if g.n_qutrits() != n {
                return Err(Error::QutritCountMismatch { left: n, right: g.n_qutrits() });
            }
        }
        for (i, a) in generators.iter().enumerate() {
            for b in &generators[i + 1..] {
                let form = a.symplectic_form(b)?;
                if !form.is_zero() {
                    return Err(Error::NonCommuting { a: a.to_string(), b: b.to_string(), form: form.value() });
                }
            }
        }
        let generators: Vec<PauliOp> = generators.iter().map(PauliOp::canonical).collect();
        let mut members: Vec<u32> = coordinate_vectors(n)
            .skip(1)
            .map(|coords| combine(&generators, &coords).index() as u32)
            .collect();
        members.sort_unstable();
        members.dedup();
        if members.len() != 3usize.pow(n as u32) - 1 || members.first() == Some(&0) {
            return Err(Error::DependentGenerators);
        }
        Ok(Mcs { n, generators, members })
    }

    /// Parses a comma-separated generator list such as `"ZX,VZ"`.
    pub fn from_generator_str(text: &str) -> Result<Mcs> {
        let gens = text
            .split(',')
            .map(|t| t.trim().parse::<PauliOp>())
            .collect::<Result<Vec<_>>>()?;
        Mcs::span(&gens)
    }

    /// The same subspace labelled by different generators.
    pub fn with_generators(&self, generators: &[PauliOp]) -> Result<Mcs> {
        let other = Mcs::span(generators)?;
        if other != *self {
            return Err(Error::TheoremViolation(format!(
                "generators {} do not span the subspace of {}",
                format_ops(generators),
                self
            )));
        }
        Ok(other)
    }

    pub fn n_qutrits(&self) -> usize {
        self.n
    }

    pub fn generators(&self) -> &[PauliOp] {
        &self.generators
    }

    /// Sorted canonical indices of the nonidentity members; also the
    /// subspace identity key.
    pub fn members(&self) -> &[u32] {
        &self.members
    }

    pub fn member_ops(&self) -> Vec<PauliOp> {
        self.members.iter().map(|&i| PauliOp::from_index(self.n, i as u64)).collect()
    }

    pub fn contains_index(&self, index: u32) -> bool {
        self.members.binary_search(&index).is_ok()
    }

    /// Membership up to phase.
    pub fn contains(&self, op: &PauliOp) -> bool {
        op.n_qutrits() == self.n && !op.is_identity() && self.contains_index(op.index() as u32)
    }

    pub fn is_disjoint(&self, other: &Mcs) -> bool {
        let (mut i, mut j) = (0, 0);
        while i < self.members.len() && j < other.members.len() {
            match self.members[i].cmp(&other.members[j]) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => return false,
            }
        }
        true
    }

    /// The product `∏ gᵢ^{aᵢ}` of generator powers, with its phase.
    pub fn element(&self, coords: &[Trit]) -> PauliOp {
        combine(&self.generators, coords)
    }

    /// Coordinates of a member in the generator basis, if it is a member.
    pub fn coordinates(&self, op: &PauliOp) -> Option<Vec<Trit>> {
        if op.is_identity() {
            return (op.n_qutrits() == self.n).then(|| vec![Trit::ZERO; self.n]);
        }
        if !self.contains(op) {
            return None;
        }
        coordinate_vectors(self.n).find(|c| self.element(c).same_up_to_phase(op))
    }

    /// Histogram of member body counts: entry `k - 1` counts k-body members.
    pub fn profile(&self) -> Vec<usize> {
        let mut counts = vec![0usize; self.n];
        for op in self.member_ops() {
            counts[op.body_count() - 1] += 1;
        }
        counts
    }

    /// Class from the body-count profile.
    pub fn classify(&self) -> Result<EntanglementClass> {
        if self.n > MAX_ENUMERATION_QUTRITS {
            return Err(Error::UnsupportedQutritCount { n: self.n, max: MAX_ENUMERATION_QUTRITS });
        }
        let profile = self.profile();
        class_profiles(self.n)
            .into_iter()
            .find(|(_, p)| *p == profile)
            .map(|(c, _)| c)
            .ok_or_else(|| {
                Error::TheoremViolation(format!("MCS {self} has body profile {profile:?}, matching no known class"))
            })
    }
}

impl fmt::Display for Mcs {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<{}>", format_ops(&self.generators))
    }
}

impl fmt::Debug for Mcs {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let members: Vec<String> = self.member_ops().iter().map(ToString::to_string).collect();
        write!(f, "Mcs{} {{{}}}", self, members.join(" "))
    }
}

pub fn format_ops(ops: &[PauliOp]) -> String {
    ops.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")
}

/// All vectors of `Z₃^n` in lexicographic order (qutrit 0 most significant).
pub fn coordinate_vectors(n: usize) -> impl Iterator<Item = Vec<Trit>> {
    (0..3usize.pow(n as u32)).map(move |mut k| {
        let mut v = vec![Trit::ZERO; n];
        for slot in (0..n).rev() {
            v[slot] = Trit::new((k % 3) as i64);
            k /= 3;
        }
        v
    })
}

fn combine(generators: &[PauliOp], coords: &[Trit]) -> PauliOp {
    let n = generators[0].n_qutrits();
    generators
        .iter()
        .zip(coords)
        .fold(PauliOp::identity(n), |acc, (g, c)| acc.multiply(&g.pow(c.value() as u32)).expect("same qutrit count"))
}

/// Every MCS of the N-qutrit operators, each exactly once, sorted by key.
///
/// Depth-first search over increasing generator sequences. A sequence is
/// accepted only if it is the greedy basis of its span (each generator is
/// the smallest member outside the span of the previous ones), so each
/// subspace is produced once without a deduplication set.
pub fn enumerate_all_mcs(n: usize) -> Result<Vec<Mcs>> {
    if n == 0 || n > MAX_ENUMERATION_QUTRITS {
        return Err(Error::UnsupportedQutritCount { n, max: MAX_ENUMERATION_QUTRITS });
    }
    let space = IndexSpace::new(n);
    let mut found: Vec<Mcs> = (1..space.size)
        .into_par_iter()
        .flat_map_iter(|first| {
            let mut out = Vec::new();
            let mut chosen = vec![first];
            let span = space.extend_span(&[0], first);
            space.extend(&mut chosen, &span, &mut out);
            out
        })
        .collect();
    found.sort();
    Ok(found)
}

/// Canonical operator indices viewed as vectors of `Z₃^{2N}`: each base-9
/// digit `3x + z` is one qutrit's exponent pair.
struct IndexSpace {
    n: usize,
    size: u32,
    digit_add: [[u8; 9]; 9],
    digit_form: [[u8; 9]; 9],
}

impl IndexSpace {
    fn new(n: usize) -> IndexSpace {
        let mut digit_add = [[0u8; 9]; 9];
        let mut digit_form = [[0u8; 9]; 9];
        for a in 0..9u8 {
            for b in 0..9u8 {
                let (xa, za, xb, zb) = (a / 3, a % 3, b / 3, b % 3);
                digit_add[a as usize][b as usize] = 3 * ((xa + xb) % 3) + (za + zb) % 3;
                digit_form[a as usize][b as usize] = (za * xb + 9 - xa * zb) % 3;
            }
        }
        IndexSpace { n, size: 9u32.pow(n as u32), digit_add, digit_form }
    }

    fn add(&self, mut a: u32, mut b: u32) -> u32 {
        let mut out = 0;
        let mut place = 1;
        for _ in 0..self.n {
            out += place * self.digit_add[(a % 9) as usize][(b % 9) as usize] as u32;
            a /= 9;
            b /= 9;
            place *= 9;
        }
        out
    }

    fn commute(&self, mut a: u32, mut b: u32) -> bool {
        let mut t = 0u32;
        for _ in 0..self.n {
            t += self.digit_form[(a % 9) as usize][(b % 9) as usize] as u32;
            a /= 9;
            b /= 9;
        }
        t % 3 == 0
    }

    /// Sorted span of `span ∪ {v}` given a sorted subspace `span`.
    fn extend_span(&self, span: &[u32], v: u32) -> Vec<u32> {
        let v2 = self.add(v, v);
        let mut out = Vec::with_capacity(span.len() * 3);
        for &s in span {
            out.push(s);
            out.push(self.add(s, v));
            out.push(self.add(s, v2));
        }
        out.sort_unstable();
        out
    }

    fn op(&self, i: u32) -> PauliOp {
        PauliOp::from_index(self.n, i as u64)
    }

    fn extend(&self, chosen: &mut Vec<u32>, span: &[u32], out: &mut Vec<Mcs>) {
        if chosen.len() == self.n {
            let members = span[1..].to_vec();
            if self.greedy_basis(&members) == *chosen {
                let generators = chosen.iter().map(|&i| self.op(i)).collect();
                out.push(Mcs { n: self.n, generators, members });
            }
            return;
        }
        let last = *chosen.last().unwrap();
        for cand in last + 1..self.size {
            if span.binary_search(&cand).is_ok() || !chosen.iter().all(|&g| self.commute(cand, g)) {
                continue;
            }
            let next = self.extend_span(span, cand);
            // The new generator must be the smallest element it adds.
            if next.iter().any(|v| *v < cand && span.binary_search(v).is_err()) {
                continue;
            }
            chosen.push(cand);
            self.extend(chosen, &next, out);
            chosen.pop();
        }
    }

    /// Lexicographically smallest independent member set.
    fn greedy_basis(&self, members: &[u32]) -> Vec<u32> {
        let mut basis = Vec::with_capacity(self.n);
        let mut span = vec![0u32];
        for &m in members {
            if basis.len() == self.n {
                break;
            }
            if span.binary_search(&m).is_err() {
                basis.push(m);
                span = self.extend_span(&span, m);
            }
        }
        basis
    }
}

/// The full MCS list for one qutrit count, with an operator → MCS index.
#[derive(Clone, Debug)]
pub struct McsCatalog {
    n: usize,
    mcs: Vec<Mcs>,
    by_op: Vec<Vec<usize>>,
    index_of: HashMap<Vec<u32>, usize>,
}

impl McsCatalog {
    pub fn new(n: usize) -> Result<McsCatalog> {
        let mcs = enumerate_all_mcs(n)?;
        let mut by_op = vec![Vec::new(); 9usize.pow(n as u32)];
        let mut index_of = HashMap::with_capacity(mcs.len());
        for (i, m) in mcs.iter().enumerate() {
            for &op in m.members() {
                by_op[op as usize].push(i);
            }
            index_of.insert(m.members().to_vec(), i);
        }
        Ok(McsCatalog { n, mcs, by_op, index_of })
    }

    pub fn n_qutrits(&self) -> usize {
        self.n
    }

    pub fn all(&self) -> &[Mcs] {
        &self.mcs
    }

    pub fn len(&self) -> usize {
        self.mcs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.mcs.is_empty()
    }

    pub fn get(&self, i: usize) -> &Mcs {
        &self.mcs[i]
    }

    /// Catalog position of an MCS (by subspace).
    pub fn position(&self, m: &Mcs) -> Option<usize> {
        self.index_of.get(m.members()).copied()
    }

    /// Catalog positions of the MCS's containing a canonical operator index.
    pub fn containing_index(&self, op: u32) -> &[usize] {
        &self.by_op[op as usize]
    }

    /// All MCS's that contain `a` (up to phase).
    pub fn containing(&self, a: &PauliOp) -> Result<Vec<&Mcs>> {
        if a.n_qutrits() != self.n {
            return Err(Error::QutritCountMismatch { left: self.n, right: a.n_qutrits() });
        }
        if a.is_identity() {
            return Err(Error::IdentityOperator);
        }
        Ok(self.containing_index(a.index() as u32).iter().map(|&i| &self.mcs[i]).collect())
    }
}

/// All MCS's containing a nonidentity operator.
pub fn mcs_containing(a: &PauliOp) -> Result<Vec<Mcs>> {
    if a.is_identity() {
        return Err(Error::IdentityOperator);
    }
    Ok(enumerate_all_mcs(a.n_qutrits())?.into_iter().filter(|m| m.contains(a)).collect())
}
