//! Named bases and states, and their expansions in product bases.
//!
//! Bell-like two-qutrit bases, three-qutrit GHZ bases with their four
//! sign variants, SB bases (one unentangled qutrit times a Bell pair) and
//! the totally antisymmetric three-qutrit state.

use std::fmt;

use crate::cyclotomic::{CycNum, Rational};
use crate::error::{Error, Result};
use crate::mcs::{EntanglementClass, Mcs};
use crate::mub::{inner, label_string, norm_sqr, BasisSet};
use crate::pauli::PauliOp;
use crate::trit::{Trit, TritVec};

/// Generators of the default Bell-like basis.
pub const BELL_GENERATORS: &str = "ZX,VZ";
/// Generators of the reference GHZ basis.
pub const GHZ_GENERATORS: &str = "Z2ZI,Z2IZ,XXX";

/// A state written in a product basis: `ψ = lead · Σ t_β φ_β`, where the
/// `φ_β` are the unnormalized reference states and the first coefficient
/// `t` equals 1.
#[derive(Clone, Debug)]
pub struct Expansion {
    pub reference: Mcs,
    pub lead: CycNum,
    pub terms: Vec<(Vec<u8>, CycNum)>,
}

impl Expansion {
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Term labels in order.
    pub fn labels(&self) -> Vec<Vec<u8>> {
        self.terms.iter().map(|(l, _)| l.clone()).collect()
    }

    /// True when every relative coefficient is a cube root of unity.
    pub fn has_unit_root_coefficients(&self) -> bool {
        self.terms.iter().all(|(_, c)| c.root_exponent().is_some())
    }

    /// `lead · Σ t_β φ_β` against the reference basis.
    pub fn reconstruct(&self, basis: &BasisSet) -> Result<Vec<CycNum>> {
        let d = basis.dim();
        let mut out = vec![CycNum::zero(); d];
        for (label, t) in &self.terms {
            let (phi, _) = basis
                .state(label)
                .ok_or_else(|| Error::TheoremViolation(format!("label {label:?} not in reference basis")))?;
            let c = &self.lead * t;
            for (o, x) in out.iter_mut().zip(phi) {
                if !x.is_zero() {
                    *o += &(&c * x);
                }
            }
        }
        Ok(out)
    }
}

impl fmt::Display for Expansion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .terms
            .iter()
            .map(|(l, c)| {
                let digits: String = l.iter().map(|d| char::from(b'0' + d)).collect();
                if c.is_one() {
                    format!("|{digits}>")
                } else {
                    format!("({c})|{digits}>")
                }
            })
            .collect();
        write!(f, "({}) [{}] in basis {}", self.lead, terms.join(" + "), self.reference)
    }
}

/// Expands `state` in the eigenbasis of `reference`.
pub fn expand(state: &[CycNum], reference: &BasisSet) -> Result<Expansion> {
    if state.len() != reference.dim() {
        return Err(Error::ShapeMismatch { left: (state.len(), 1), right: (reference.dim(), 1) });
    }
    let mut raw = Vec::new();
    for (i, phi) in reference.states().iter().enumerate() {
        let c = inner(phi, state).div_rational(&reference.norms()[i])?;
        if !c.is_zero() {
            raw.push((reference.labels()[i].iter().map(|t| t.value()).collect::<Vec<u8>>(), c));
        }
    }
    let lead = raw.first().map(|(_, c)| c.clone()).ok_or_else(|| Error::TheoremViolation("zero state".into()))?;
    let inv = lead.inv()?;
    let terms = raw.into_iter().map(|(l, c)| (l, &c * &inv)).collect();
    let e = Expansion { reference: reference.source().clone(), lead, terms };
    if e.reconstruct(reference)? != state {
        return Err(Error::TheoremViolation("expansion does not reconstruct its target".into()));
    }
    Ok(e)
}

/// The product basis `S(P₁, P₂, ...)` from letters such as `"ZX"`.
pub fn product_mcs(letters: &str) -> Result<Mcs> {
    let tokens: Vec<PauliOp> = letters
        .chars()
        .map(|c| c.to_string().parse::<PauliOp>())
        .collect::<Result<_>>()?;
    let n = tokens.len();
    let gens: Vec<PauliOp> = tokens
        .iter()
        .enumerate()
        .map(|(i, t)| {
            let (x, z) = t.slot(0);
            PauliOp::single(n, i, x, z)
        })
        .collect();
    Mcs::span(&gens)
}

pub fn product_basis(letters: &str) -> Result<BasisSet> {
    BasisSet::from_mcs(&product_mcs(letters)?)
}

/// Replaces every operator factor on the listed qutrits by its square.
pub fn square_slots(op: &PauliOp, slots: &[usize]) -> PauliOp {
    let n = op.n_qutrits();
    let mut x = *op.x();
    let mut z = *op.z();
    for &q in slots {
        x.set(q, x.get(q) * Trit::TWO);
        z.set(q, z.get(q) * Trit::TWO);
    }
    debug_assert_eq!(x.len(), n);
    PauliOp::new(Trit::ZERO, x, z).expect("same length")
}

/// The Bell-like basis of two commuting two-qutrit generators.
pub fn bell_basis(generators: &str) -> Result<BasisSet> {
    let m = Mcs::from_generator_str(generators)?;
    if m.n_qutrits() != 2 || m.classify()? != EntanglementClass::B {
        return Err(Error::TheoremViolation(format!("{m} is not a Bell-like two-qutrit MCS")));
    }
    BasisSet::from_mcs(&m)
}

/// GHZ basis of `Z²ZI, Z²IZ, XXX`, labelled `(n, l, m)` by their
/// eigenvalue exponents.
pub fn ghz_basis() -> Result<BasisSet> {
    BasisSet::from_generator_str(GHZ_GENERATORS)
}

/// A sign variant of the GHZ basis: operators on qutrit 2 (`flip_second`)
/// and/or qutrit 3 (`flip_third`) are replaced by their squares, which
/// turns the index `n + k` (resp. `l + k`) of the expansion into
/// `-n - k` (resp. `-l - k`).
pub fn ghz_variant(flip_second: bool, flip_third: bool) -> Result<BasisSet> {
    let mut slots = Vec::new();
    if flip_second {
        slots.push(1);
    }
    if flip_third {
        slots.push(2);
    }
    let base = Mcs::from_generator_str(GHZ_GENERATORS)?;
    let gens: Vec<PauliOp> = base.generators().iter().map(|g| square_slots(g, &slots)).collect();
    BasisSet::from_mcs(&Mcs::span(&gens)?)
}

/// The primed GHZ basis `Z²ZI, Z²IZ², XXX²`.
pub fn ghz_prime_basis() -> Result<BasisSet> {
    ghz_variant(false, true)
}

/// The SB basis with qutrit `pure_slot` in an eigenstate of `pure_letter`
/// and the other two qutrits (in increasing order) in the Bell basis of
/// `bell_generators`.
pub fn sb_basis(pure_slot: usize, pure_letter: char, bell_generators: &str) -> Result<BasisSet> {
    if pure_slot > 2 {
        return Err(Error::InvalidQutritSet { indices: vec![pure_slot], n: 3 });
    }
    let letter: PauliOp = pure_letter.to_string().parse()?;
    if letter.n_qutrits() != 1 || letter.is_identity() {
        return Err(Error::Parse { text: pure_letter.to_string(), reason: "expected one of Z, X, Y, V".into() });
    }
    let bell = Mcs::from_generator_str(bell_generators)?;
    if bell.n_qutrits() != 2 || bell.classify()? != EntanglementClass::B {
        return Err(Error::TheoremViolation(format!("{bell} is not a Bell-like pair of generators")));
    }
    let others: Vec<usize> = (0..3).filter(|&q| q != pure_slot).collect();
    let (px, pz) = letter.slot(0);
    let mut gens = vec![PauliOp::single(3, pure_slot, px, pz)];
    for g in bell.generators() {
        let mut x = TritVec::zeros(3);
        let mut z = TritVec::zeros(3);
        for (j, &q) in others.iter().enumerate() {
            x.set(q, g.x().get(j));
            z.set(q, g.z().get(j));
        }
        gens.push(PauliOp::new(Trit::ZERO, x, z)?);
    }
    BasisSet::from_mcs(&Mcs::span(&gens)?)
}

/// The totally antisymmetric state `Σ_σ sgn(σ) |σ(0) σ(1) σ(2)⟩`,
/// unnormalized (squared norm 6).
pub fn aharonov() -> Vec<CycNum> {
    let mut psi = vec![CycNum::zero(); 27];
    let perms: [([usize; 3], i64); 6] =
        [([0, 1, 2], 1), ([1, 2, 0], 1), ([2, 0, 1], 1), ([0, 2, 1], -1), ([2, 1, 0], -1), ([1, 0, 2], -1)];
    for (p, sign) in perms {
        psi[p[0] * 9 + p[1] * 3 + p[2]] = CycNum::from_int(sign);
    }
    psi
}

/// GHZ labels `(n, l, m)` of the two terms of the antisymmetric state.
/// The generator `XXX` leaves the state invariant, so `m = 0`.
pub const AHARONOV_LABELS: [[u8; 3]; 2] = [[1, 2, 0], [2, 1, 0]];

/// Swaps two qutrits of a three-qutrit state vector.
pub fn swap_qutrits(psi: &[CycNum], a: usize, b: usize) -> Vec<CycNum> {
    let mut out = vec![CycNum::zero(); psi.len()];
    for (i, x) in psi.iter().enumerate() {
        let mut d = [i / 9, (i / 3) % 3, i % 3];
        d.swap(a, b);
        out[d[0] * 9 + d[1] * 3 + d[2]] = x.clone();
    }
    out
}

/// A named state from the catalog: `bell n m`, `ghz n l m`,
/// `ghz-prime n l m`, `sb slot n l m` (slot 1..3, Z on the slot and the
/// Bell pair `ZX, YZ` on the rest) or `aharonov`.
#[derive(Clone, Debug)]
pub struct NamedState {
    pub name: String,
    pub basis: Option<BasisSet>,
    pub label: Vec<u8>,
    pub state: Vec<CycNum>,
    pub norm: Rational,
}

pub fn named_state(name: &str, args: &[u8]) -> Result<NamedState> {
    let want = |k: usize| -> Result<()> {
        if args.len() != k || args.iter().any(|&a| a > 2 && k > 0) {
            return Err(Error::Parse { text: format!("{name} {args:?}"), reason: format!("expected {k} trits") });
        }
        Ok(())
    };
    let (basis, label) = match name {
        "bell" => {
            want(2)?;
            (bell_basis(BELL_GENERATORS)?, args.to_vec())
        }
        "ghz" => {
            want(3)?;
            (ghz_basis()?, args.to_vec())
        }
        "ghz-prime" => {
            want(3)?;
            (ghz_prime_basis()?, args.to_vec())
        }
        "sb" => {
            if args.len() != 4 || !(1..=3).contains(&args[0]) || args[1..].iter().any(|&a| a > 2) {
                return Err(Error::Parse {
                    text: format!("sb {args:?}"),
                    reason: "expected slot 1..3 followed by three trits".into(),
                });
            }
            (sb_basis(args[0] as usize - 1, 'Z', "ZX,YZ")?, args[1..].to_vec())
        }
        "aharonov" => {
            want(0)?;
            let state = aharonov();
            let norm = norm_sqr(&state);
            return Ok(NamedState { name: name.into(), basis: None, label: vec![], state, norm });
        }
        _ => {
            return Err(Error::Parse {
                text: name.into(),
                reason: "unknown state; expected bell, ghz, ghz-prime, sb or aharonov".into(),
            })
        }
    };
    let (state, norm) = basis.state(&label).map(|(s, n)| (s.to_vec(), n.clone())).expect("label in range");
    Ok(NamedState { name: name.into(), basis: Some(basis), label, state, norm })
}

/// For a two-qutrit MCS without identity factors: how many of its
/// operator pairs `{U, U²}` relate the two one-qutrit indices by a sum
/// (`P^a Q^a`) and how many by a difference (`P^a Q^{2a}`), where `P` and
/// `Q` are the letters `Z, X, Y, V`.
pub fn sum_difference_profile(m: &Mcs) -> Result<(usize, usize)> {
    if m.n_qutrits() != 2 || m.classify()? != EntanglementClass::B {
        return Err(Error::TheoremViolation(format!("{m} is not a Bell-like two-qutrit MCS")));
    }
    // Power of the canonical letter: the first nonzero exponent.
    let power = |x: Trit, z: Trit| if x.is_zero() { z } else { x };
    let mut sums = 0;
    let mut diffs = 0;
    for op in m.member_ops() {
        let (x0, z0) = op.slot(0);
        if power(x0, z0) != Trit::ONE {
            continue;
        }
        let (x1, z1) = op.slot(1);
        if power(x1, z1) == Trit::ONE {
            sums += 1;
        } else {
            diffs += 1;
        }
    }
    Ok((sums, diffs))
}

/// Label digits of every state of a basis.
pub fn label_strings(b: &BasisSet) -> Vec<String> {
    b.labels().iter().map(|l| label_string(l)).collect()
}
