//! N-qutrit Pauli operators in symplectic form.
//!
//! An operator is `ω^c · ⊗ᵢ Xˣⁱ Zᶻⁱ` with `X|n⟩ = |n+1⟩`, `Z|n⟩ = ωⁿ|n⟩`.
//! The phase-0 operator with exponent vectors `(x, z)` is the canonical
//! representative; X is always written to the left of Z, so `Y = XZ` and
//! `V = XZ²` carry no extra phase.
//!
//! Letters name exponent pairs per qutrit:
//!
//! | token | (x, z) | token | (x, z) |
//! |-------|--------|-------|--------|
//! | `I`   | (0, 0) |       |        |
//! | `Z`   | (0, 1) | `Z2`  | (0, 2) |
//! | `X`   | (1, 0) | `X2`  | (2, 0) |
//! | `Y`   | (1, 1) | `Y2`  | (2, 2) |
//! | `V`   | (1, 2) | `V2`  | (2, 1) |
//!
//! A squared token names the canonical operator with doubled exponents, so
//! `Y2` is `X²Z²`, which is `ω²·Y·Y` as a matrix.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use crate::check::CheckReport;
use crate::cyclotomic::{CycMatrix, CycNum};
use crate::error::{Error, Result};
use crate::trit::{Trit, TritVec, MAX_TRITS};

/// Largest qutrit count accepted by [`PauliOp::to_matrix`].
pub const MAX_DENSE_QUTRITS: usize = 6;

/// Largest qutrit count for which [`PauliOp::index`] fits in a `u64`.
pub const MAX_INDEX_QUTRITS: usize = 20;

/// An element of the N-qutrit Pauli group.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct PauliOp {
    phase: Trit,
    x: TritVec,
    z: TritVec,
}

const TOKENS: [[&str; 3]; 3] = [
    // x = 0
    ["I", "Z", "Z2"],
    // x = 1
    ["X", "Y", "V"],
    // x = 2
    ["X2", "V2", "Y2"],
];

/// Token for the exponent pair `(x, z)` of a single qutrit.
pub fn slot_token(x: Trit, z: Trit) -> &'static str {
    TOKENS[x.value() as usize][z.value() as usize]
}

fn letter_exponents(letter: char) -> Option<(i64, i64)> {
    match letter {
        'I' => Some((0, 0)),
        'Z' => Some((0, 1)),
        'X' => Some((1, 0)),
        'Y' => Some((1, 1)),
        'V' => Some((1, 2)),
        _ => None,
    }
}

impl PauliOp {
    pub fn new(phase: Trit, x: TritVec, z: TritVec) -> Result<PauliOp> {
        if x.len() != z.len() {
            return Err(Error::QutritCountMismatch { left: x.len(), right: z.len() });
        }
        Ok(PauliOp { phase, x, z })
    }

    /// Canonical operator from per-qutrit exponent slices.
    pub fn from_exponents(x: &[i64], z: &[i64]) -> Result<PauliOp> {
        PauliOp::new(Trit::ZERO, TritVec::from_values(x), TritVec::from_values(z))
    }

    pub fn identity(n: usize) -> PauliOp {
        PauliOp { phase: Trit::ZERO, x: TritVec::zeros(n), z: TritVec::zeros(n) }
    }

    /// Scalar `ω^c · I`.
    pub fn scalar(n: usize, phase: Trit) -> PauliOp {
        PauliOp { phase, ..PauliOp::identity(n) }
    }

    /// Single-qutrit operator `token` placed on qutrit `slot`, identity elsewhere.
    pub fn single(n: usize, slot: usize, x: Trit, z: Trit) -> PauliOp {
        let mut op = PauliOp::identity(n);
        op.x.set(slot, x);
        op.z.set(slot, z);
        op
    }

    /// Parses an operator string with exactly `n` tokens.
    ///
    /// Grammar: an optional `w0`, `w1` or `w2` phase prefix followed by `n`
    /// tokens from `I Z X Y V`, each optionally suffixed with `2`.
    pub fn parse(text: &str, n: usize) -> Result<PauliOp> {
        let op = text.parse::<PauliOp>()?;
        if op.n_qutrits() != n {
            return Err(Error::Parse {
                text: text.to_string(),
                reason: format!("expected {n} tokens, found {}", op.n_qutrits()),
            });
        }
        Ok(op)
    }

    /// Canonical operator with the given index; see [`PauliOp::index`].
    pub fn from_index(n: usize, mut index: u64) -> PauliOp {
        assert!(n <= MAX_INDEX_QUTRITS);
        let mut op = PauliOp::identity(n);
        for slot in (0..n).rev() {
            let digit = index % 9;
            index /= 9;
            op.x.set(slot, Trit::new((digit / 3) as i64));
            op.z.set(slot, Trit::new((digit % 3) as i64));
        }
        op
    }

    /// Position of the canonical operator in `0..9^N`: base-9 digits
    /// `3·xᵢ + zᵢ` with qutrit 0 most significant. The phase is ignored.
    pub fn index(&self) -> u64 {
        assert!(self.n_qutrits() <= MAX_INDEX_QUTRITS);
        (0..self.n_qutrits()).fold(0u64, |acc, i| {
            acc * 9 + 3 * self.x.get(i).value() as u64 + self.z.get(i).value() as u64
        })
    }

    /// Iterates over the `9^N` canonical operators in index order.
    pub fn all_canonical(n: usize) -> impl Iterator<Item = PauliOp> {
        (0..9u64.pow(n as u32)).map(move |i| PauliOp::from_index(n, i))
    }

    pub fn n_qutrits(&self) -> usize {
        self.x.len()
    }

    pub fn phase(&self) -> Trit {
        self.phase
    }

    pub fn x(&self) -> &TritVec {
        &self.x
    }

    pub fn z(&self) -> &TritVec {
        &self.z
    }

    /// The exponent pair of one qutrit.
    pub fn slot(&self, i: usize) -> (Trit, Trit) {
        (self.x.get(i), self.z.get(i))
    }

    /// The same operator with its phase stripped.
    pub fn canonical(&self) -> PauliOp {
        PauliOp { phase: Trit::ZERO, ..*self }
    }

    pub fn with_phase(&self, phase: Trit) -> PauliOp {
        PauliOp { phase, ..*self }
    }

    pub fn is_identity(&self) -> bool {
        self.x.is_zero() && self.z.is_zero()
    }

    /// Same basis operator, i.e. equal after phase stripping.
    pub fn same_up_to_phase(&self, other: &PauliOp) -> bool {
        self.x == other.x && self.z == other.z
    }

    fn check_compatible(&self, other: &PauliOp) -> Result<()> {
        if self.n_qutrits() != other.n_qutrits() {
            return Err(Error::QutritCountMismatch { left: self.n_qutrits(), right: other.n_qutrits() });
        }
        Ok(())
    }

    /// Group product with exact phase: per qutrit
    /// `(XˣZᶻ)(Xˣ'Zᶻ') = ω^(z·x') Xˣ⁺ˣ' Zᶻ⁺ᶻ'`.
    pub fn multiply(&self, other: &PauliOp) -> Result<PauliOp> {
        self.check_compatible(other)?;
        Ok(PauliOp {
            phase: self.phase + other.phase + self.z.dot(&other.x),
            x: self.x + other.x,
            z: self.z + other.z,
        })
    }

    /// `self^k` for `k ≥ 0`.
    pub fn pow(&self, k: u32) -> PauliOp {
        (0..k % 3).fold(PauliOp::identity(self.n_qutrits()), |acc, _| {
            acc.multiply(self).expect("same qutrit count")
        })
    }

    /// Group inverse, equal to the conjugate transpose:
    /// `(ω^c XˣZᶻ)† = ω^(x·z - c) X⁻ˣ Z⁻ᶻ`.
    pub fn dagger(&self) -> PauliOp {
        PauliOp { phase: self.x.dot(&self.z) - self.phase, x: -self.x, z: -self.z }
    }

    /// The trit `t` with `a·b = ωᵗ b·a`, namely `Σ zᵢx'ᵢ - xᵢz'ᵢ`.
    pub fn symplectic_form(&self, other: &PauliOp) -> Result<Trit> {
        self.check_compatible(other)?;
        Ok(self.z.dot(&other.x) - self.x.dot(&other.z))
    }

    pub fn commutes_with(&self, other: &PauliOp) -> Result<bool> {
        Ok(self.symplectic_form(other)?.is_zero())
    }

    /// Number of qutrits on which the operator acts nontrivially.
    pub fn body_count(&self) -> usize {
        (self.x.support() | self.z.support()).count_ones() as usize
    }

    /// Exponent vector in `Z₃^{2N}` as `x` followed by `z`.
    pub fn symplectic_vector(&self) -> Vec<u8> {
        let mut v = self.x.to_values();
        v.extend(self.z.to_values());
        v
    }

    /// Nonzero entries of the matrix as `(row, col, k)` meaning `ω^k`.
    ///
    /// The matrix is monomial: column `j` with digits `dᵢ` maps to row with
    /// digits `dᵢ + xᵢ`, carrying phase `c + Σ zᵢdᵢ`.
    pub fn monomial_entries(&self) -> impl Iterator<Item = (usize, usize, Trit)> + '_ {
        let n = self.n_qutrits();
        let dim = 3usize.pow(n as u32);
        (0..dim).map(move |col| {
            let mut rem = col;
            let mut row_digits = vec![0u8; n];
            let mut phase = self.phase;
            for slot in (0..n).rev() {
                let d = Trit::new((rem % 3) as i64);
                rem /= 3;
                phase = phase + self.z.get(slot) * d;
                row_digits[slot] = (d + self.x.get(slot)).value();
            }
            let row = row_digits.iter().fold(0usize, |acc, &d| acc * 3 + d as usize);
            (row, col, phase)
        })
    }

    /// Adds `ω^shift · self` into a dense matrix of matching dimension.
    pub fn accumulate_into(&self, m: &mut CycMatrix, shift: Trit) {
        for (row, col, k) in self.monomial_entries() {
            let e = &mut m[(row, col)];
            *e = e.clone() + CycNum::omega_pow((k + shift).value() as i64);
        }
    }

    /// Exact `3^N × 3^N` matrix, built as the tensor product of the
    /// per-qutrit factors `XˣZᶻ` with `X = |n+1⟩⟨n|` and `Z = |n⟩ωⁿ⟨n|`.
    pub fn to_matrix(&self) -> Result<CycMatrix> {
        let n = self.n_qutrits();
        if n > MAX_DENSE_QUTRITS {
            return Err(Error::DimensionTooLarge { n, max: MAX_DENSE_QUTRITS });
        }
        let shift = shift_matrix();
        let clock = clock_matrix();
        let mut acc = CycMatrix::identity(1).scale(&CycNum::omega_pow(self.phase.value() as i64));
        for i in 0..n {
            let (x, z) = self.slot(i);
            let mut factor = CycMatrix::identity(3);
            for _ in 0..x.value() {
                factor = factor.mul(&shift)?;
            }
            for _ in 0..z.value() {
                factor = factor.mul(&clock)?;
            }
            acc = acc.tensor(&factor);
        }
        Ok(acc)
    }
}

/// `X = |n+1⟩⟨n|`.
pub fn shift_matrix() -> CycMatrix {
    CycMatrix::from_fn(3, 3, |i, j| if i == (j + 1) % 3 { CycNum::one() } else { CycNum::zero() })
}

/// `Z = |n⟩ωⁿ⟨n|`.
pub fn clock_matrix() -> CycMatrix {
    CycMatrix::diagonal((0..3).map(CycNum::omega_pow).collect())
}

impl FromStr for PauliOp {
    type Err = Error;

    /// Parses an operator string, taking the qutrit count from the number of
    /// tokens.
    fn from_str(text: &str) -> Result<PauliOp> {
        let err = |reason: &str| Error::Parse { text: text.to_string(), reason: reason.to_string() };
        let mut rest = text.trim();
        let mut phase = Trit::ZERO;
        if let Some(after) = rest.strip_prefix('w') {
            let mut chars = after.chars();
            phase = match chars.next() {
                Some('0') => Trit::ZERO,
                Some('1') => Trit::ONE,
                Some('2') => Trit::TWO,
                _ => return Err(err("phase prefix must be w0, w1 or w2")),
            };
            rest = chars.as_str();
        }
        let mut x = Vec::new();
        let mut z = Vec::new();
        let mut chars = rest.chars().peekable();
        while let Some(c) = chars.next() {
            let (mut xe, mut ze) = letter_exponents(c).ok_or_else(|| err(&format!("unexpected character {c:?}")))?;
            if chars.peek() == Some(&'2') {
                chars.next();
                xe *= 2;
                ze *= 2;
            }
            x.push(xe);
            z.push(ze);
        }
        if x.is_empty() {
            return Err(err("no operator tokens"));
        }
        if x.len() > MAX_TRITS {
            return Err(err("too many qutrits"));
        }
        let op = PauliOp::from_exponents(&x, &z)?;
        Ok(op.with_phase(phase))
    }
}

impl fmt::Display for PauliOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if !self.phase.is_zero() {
            write!(f, "w{}", self.phase)?;
        }
        for i in 0..self.n_qutrits() {
            let (x, z) = self.slot(i);
            f.write_str(slot_token(x, z))?;
        }
        Ok(())
    }
}

impl fmt::Debug for PauliOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PauliOp({self})")
    }
}

impl PartialOrd for PauliOp {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for PauliOp {
    /// Orders by qutrit count, canonical index, then phase.
    fn cmp(&self, other: &Self) -> Ordering {
        self.n_qutrits()
            .cmp(&other.n_qutrits())
            .then_with(|| self.index().cmp(&other.index()))
            .then_with(|| self.phase.cmp(&other.phase))
    }
}

/// One-qutrit operator families: diagonal `E_l = Zˡ`, right cyclic
/// `R_l = XZˡ` and left cyclic `L_l = R_l†`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Ladder {
    E,
    R,
    L,
}

impl Ladder {
    pub fn op(self, l: i64) -> PauliOp {
        let l = Trit::new(l);
        match self {
            Ladder::E => PauliOp::single(1, 0, Trit::ZERO, l),
            Ladder::R => PauliOp::single(1, 0, Trit::ONE, l),
            Ladder::L => PauliOp::single(1, 0, Trit::ONE, l).dagger(),
        }
    }
}

/// Checks the ladder multiplication table for all `l, m`, both with the
/// symbolic product and with explicit matrices:
///
/// ```text
/// E_l E_m = E_{l+m}            [R_l, E_m] = (1 - ω^m) R_{l+m}
/// R_l R_m = ω^{m-l} L_{-l-m}   [L_l, E_m] = (ω^m - 1) L_{l-m}
/// L_l L_m = ω^{m-l} R_{-l-m}   [R_l, L_m] = (ω^{m-l} - 1) E_{l-m}
/// ```
pub fn verify_ladder_table() -> Result<CheckReport> {
    use Ladder::*;
    let mut r = CheckReport::new("one-qutrit multiplication table");
    let w = |k: i64| CycNum::omega_pow(k);
    let mat = |kind: Ladder, l: i64| kind.op(l).to_matrix();
    for l in 0..3i64 {
        for m in 0..3i64 {
            let products = [
                (E, E, E, l + m, CycNum::one()),
                (R, R, L, -l - m, w(m - l)),
                (L, L, R, -l - m, w(m - l)),
            ];
            for (a, b, c, k, coef) in products {
                let lhs = a.op(l).multiply(&b.op(m))?;
                let rhs = c.op(k).with_phase(c.op(k).phase() + Trit::new(coef_exponent(&coef)));
                r.check(lhs == rhs, || format!("{a:?}{l} {b:?}{m} = {lhs}, expected {coef} {c:?}{k}"));
                let dense = mat(a, l)?.mul(&mat(b, m)?)?;
                r.check(dense == mat(c, k)?.scale(&coef), || format!("matrix {a:?}{l} {b:?}{m}"));
            }
            let commutators = [
                (R, E, R, l + m, CycNum::one() - w(m)),
                (L, E, L, l - m, w(m) - CycNum::one()),
                (R, L, E, l - m, w(m - l) - CycNum::one()),
            ];
            for (a, b, c, k, coef) in commutators {
                let (ma, mb) = (mat(a, l)?, mat(b, m)?);
                let comm = ma.mul(&mb)?.sub(&mb.mul(&ma)?)?;
                r.check(comm == mat(c, k)?.scale(&coef), || {
                    format!("[{a:?}{l}, {b:?}{m}] != ({coef}) {c:?}{k}")
                });
            }
        }
    }
    Ok(r)
}

fn coef_exponent(c: &CycNum) -> i64 {
    c.root_exponent().expect("unit root") as i64
}
