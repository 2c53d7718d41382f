//! Eigenbases of MCS's, Hermitean observables, and unbiasedness checks.
//!
//! A basis is built from the projectors
//! `P_α = 3⁻ᴺ Σ_a ω^{-a·α} U_a`, where `U_a = ∏ gᵢ^{aᵢ}` runs over the
//! subgroup spanned by the MCS generators. State vectors are kept
//! unnormalized: the first nonzero amplitude is 1 and the squared norm is
//! stored as an exact rational.

use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::check::CheckReport;
use crate::cyclotomic::{rational_int, CycMatrix, CycNum, Rational};
use crate::error::{Error, Result};
use crate::mcs::{coordinate_vectors, EntanglementClass, Mcs};
use crate::pauli::PauliOp;
use crate::trit::Trit;

/// Largest qutrit count for which dense bases are built.
pub const MAX_BASIS_QUTRITS: usize = 3;

/// The `3^N` eigenprojectors of an MCS, labelled by generator eigenvalue
/// exponents: `U_{gᵢ} P_α = ω^{αᵢ} P_α`.
#[derive(Clone, Debug)]
pub struct BasisSet {
    source: Mcs,
    labels: Vec<Vec<Trit>>,
    projectors: Vec<CycMatrix>,
    states: Vec<Vec<CycNum>>,
    norms: Vec<Rational>,
}

fn dot(a: &[Trit], b: &[Trit]) -> Trit {
    a.iter().zip(b).fold(Trit::ZERO, |acc, (&x, &y)| acc + x * y)
}

/// Digits of a label, e.g. `"012"`.
pub fn label_string(label: &[Trit]) -> String {
    label.iter().map(|t| char::from(b'0' + t.value())).collect()
}

/// `U ψ` for a Pauli operator acting on a state vector.
pub fn apply_to_state(op: &PauliOp, psi: &[CycNum]) -> Vec<CycNum> {
    let mut out = vec![CycNum::zero(); psi.len()];
    for (row, col, k) in op.monomial_entries() {
        out[row] = psi[col].mul_omega_pow(k.value() as i64);
    }
    out
}

/// `U M` for a Pauli operator and a dense matrix.
pub fn apply_to_matrix(op: &PauliOp, m: &CycMatrix) -> CycMatrix {
    let mut out = CycMatrix::zeros(m.rows(), m.cols());
    for (row, col, k) in op.monomial_entries() {
        for j in 0..m.cols() {
            out[(row, j)] = m[(col, j)].mul_omega_pow(k.value() as i64);
        }
    }
    out
}

/// `⟨u|v⟩ = Σ conj(uᵢ) vᵢ`, with a fast path for root-of-unity entries.
pub fn inner(u: &[CycNum], v: &[CycNum]) -> CycNum {
    let mut counts = [0i64; 3];
    let mut rest = CycNum::zero();
    for (x, y) in u.iter().zip(v) {
        if x.is_zero() || y.is_zero() {
            continue;
        }
        match (x.root_exponent(), y.root_exponent()) {
            (Some(i), Some(j)) => counts[((3 + j - i) % 3) as usize] += 1,
            _ => rest += &(&x.conj() * y),
        }
    }
    CycNum::from_root_counts(counts) + rest
}

/// `|⟨u|v⟩|² / (‖u‖² ‖v‖²)`, i.e. `Tr(P_u P_v)`.
pub fn overlap(u: &[CycNum], nu: &Rational, v: &[CycNum], nv: &Rational) -> Rational {
    inner(u, v).norm_sqr() / (nu * nv)
}

pub fn norm_sqr(u: &[CycNum]) -> Rational {
    u.iter().fold(Rational::zero(), |acc, x| acc + x.norm_sqr())
}

impl BasisSet {
    /// Builds the eigenbasis of `m`, labelled by its stored generators.
    pub fn from_mcs(m: &Mcs) -> Result<BasisSet> {
        let n = m.n_qutrits();
        if n > MAX_BASIS_QUTRITS {
            return Err(Error::DimensionTooLarge { n, max: MAX_BASIS_QUTRITS });
        }
        let d = 3usize.pow(n as u32);
        let labels: Vec<Vec<Trit>> = coordinate_vectors(n).collect();
        let elements: Vec<(Vec<Trit>, PauliOp)> = labels.iter().map(|a| (a.clone(), m.element(a))).collect();
        for (_, u) in &elements {
            if !u.pow(3).is_identity() || !u.pow(3).phase().is_zero() {
                return Err(Error::TheoremViolation(format!("{u} does not cube to the identity")));
            }
        }
        let inv_d = Rational::new(1.into(), (d as i64).into());

        let built: Vec<(CycMatrix, Vec<CycNum>, Rational)> = labels
            .par_iter()
            .map(|alpha| {
                let mut counts = vec![[0i64; 3]; d * d];
                for (a, u) in &elements {
                    let shift = -dot(a, alpha);
                    for (row, col, k) in u.monomial_entries() {
                        counts[row * d + col][(k + shift).value() as usize] += 1;
                    }
                }
                let p = CycMatrix::from_fn(d, d, |i, j| CycNum::from_root_counts(counts[i * d + j]).scale(&inv_d));
                let j = (0..d).find(|&j| !p[(j, j)].is_zero()).expect("trace one");
                let pjj = p[(j, j)].a.clone();
                let state: Vec<CycNum> = (0..d).map(|i| p[(i, j)].scale(&pjj.recip())).collect();
                (p, state, pjj.recip())
            })
            .collect();

        let mut projectors = Vec::with_capacity(d);
        let mut states = Vec::with_capacity(d);
        let mut norms = Vec::with_capacity(d);
        for (p, s, nrm) in built {
            projectors.push(p);
            states.push(s);
            norms.push(nrm);
        }
        Ok(BasisSet { source: m.clone(), labels, projectors, states, norms })
    }

    /// Parses generators such as `"ZX,VZ"` and builds their eigenbasis.
    pub fn from_generator_str(text: &str) -> Result<BasisSet> {
        BasisSet::from_mcs(&Mcs::from_generator_str(text)?)
    }

    pub fn n_qutrits(&self) -> usize {
        self.source.n_qutrits()
    }

    pub fn dim(&self) -> usize {
        self.states.len()
    }

    pub fn source(&self) -> &Mcs {
        &self.source
    }

    pub fn labels(&self) -> &[Vec<Trit>] {
        &self.labels
    }

    pub fn projectors(&self) -> &[CycMatrix] {
        &self.projectors
    }

    /// Unnormalized states, first nonzero amplitude equal to 1.
    pub fn states(&self) -> &[Vec<CycNum>] {
        &self.states
    }

    /// Squared norms of [`BasisSet::states`].
    pub fn norms(&self) -> &[Rational] {
        &self.norms
    }

    /// Position of a label given as digits, e.g. `[0, 2]`.
    pub fn position(&self, label: &[u8]) -> Option<usize> {
        self.labels.iter().position(|l| l.iter().map(|t| t.value()).eq(label.iter().copied()))
    }

    pub fn state(&self, label: &[u8]) -> Option<(&[CycNum], &Rational)> {
        self.position(label).map(|i| (self.states[i].as_slice(), &self.norms[i]))
    }

    /// Single-qutrit reduced density matrix of state `i`.
    pub fn reduced_state(&self, i: usize, qutrit: usize) -> CycMatrix {
        reduced_one_qutrit(&self.states[i], &self.norms[i], self.n_qutrits(), qutrit)
    }
}

/// `Tr_{others} |ψ⟩⟨ψ| / ‖ψ‖²` for one qutrit, computed from the vector.
pub fn reduced_one_qutrit(psi: &[CycNum], norm: &Rational, n: usize, qutrit: usize) -> CycMatrix {
    let stride = 3usize.pow((n - 1 - qutrit) as u32);
    let mut rho = CycMatrix::zeros(3, 3);
    for (i, x) in psi.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        let a = (i / stride) % 3;
        for b in 0..3 {
            let j = i - a * stride + b * stride;
            let y = &psi[j];
            if !y.is_zero() {
                rho[(a, b)] += &(x * &y.conj());
            }
        }
    }
    let inv = norm.recip();
    rho.scale_rational(&inv)
}

/// Exact projector properties: Hermiticity, unit trace, rank-one form
/// `P = ψψ†/‖ψ‖²`, generator eigenvalue equations, and completeness.
/// With `dense`, idempotence is also checked by explicit multiplication.
pub fn verify_projectors(b: &BasisSet, dense: bool) -> CheckReport {
    let mut r = CheckReport::new(format!("projectors of {}", b.source));
    let d = b.dim();
    let mut sum = CycMatrix::zeros(d, d);
    for (i, p) in b.projectors.iter().enumerate() {
        let label = label_string(&b.labels[i]);
        r.check(p.is_hermitian(), || format!("P_{label} is not Hermitean"));
        r.check(p.trace().map(|t| t.is_one()).unwrap_or(false), || format!("Tr P_{label} != 1"));
        let rank_one = CycMatrix::outer(&b.states[i], &b.states[i]).scale_rational(&b.norms[i].recip());
        r.check(rank_one == *p, || format!("P_{label} is not psi psi^dagger / norm"));
        r.check(norm_sqr(&b.states[i]) == b.norms[i], || format!("stored norm of state {label} is wrong"));
        for (g, &e) in b.source.generators().iter().zip(&b.labels[i]) {
            let lhs = apply_to_matrix(g, p);
            r.check(lhs == p.scale(&CycNum::omega_pow(e.value() as i64)), || {
                format!("{g} P_{label} != w^{e} P_{label}")
            });
            let v = apply_to_state(g, &b.states[i]);
            let want: Vec<CycNum> = b.states[i].iter().map(|x| x.mul_omega_pow(e.value() as i64)).collect();
            r.check(v == want, || format!("state {label} is not an eigenvector of {g}"));
        }
        if dense {
            r.check(p.mul(p).map(|sq| sq == *p).unwrap_or(false), || format!("P_{label} is not idempotent"));
        }
        sum.add_assign(p).expect("same shape");
    }
    r.check(sum == CycMatrix::identity(d), || "projectors do not sum to the identity".into());
    r
}

/// `Tr(P_α P_β) = δ_αβ` for all pairs, via state overlaps; `dense` adds
/// the explicit trace of each product.
pub fn verify_orthonormal(b: &BasisSet, dense: bool) -> CheckReport {
    let mut r = CheckReport::new(format!("orthonormality of {}", b.source));
    for i in 0..b.dim() {
        for j in i..b.dim() {
            let want = if i == j { Rational::one() } else { Rational::zero() };
            let got = overlap(&b.states[i], &b.norms[i], &b.states[j], &b.norms[j]);
            r.check(got == want, || {
                format!("Tr(P_{} P_{}) = {got}", label_string(&b.labels[i]), label_string(&b.labels[j]))
            });
            if dense {
                let t = b.projectors[i].trace_of_product(&b.projectors[j]).expect("same shape");
                r.check(t == CycNum::from_rational(want.clone()), || {
                    format!("dense Tr(P_{} P_{}) = {t}", label_string(&b.labels[i]), label_string(&b.labels[j]))
                });
            }
        }
    }
    r
}

/// `Tr(P^A_α P^B_β) = 3⁻ᴺ` for all pairs of states of two bases.
pub fn verify_unbiased(a: &BasisSet, b: &BasisSet, dense: bool) -> CheckReport {
    let mut r = CheckReport::new(format!("unbiasedness of {} and {}", a.source, b.source));
    if a.n_qutrits() != b.n_qutrits() {
        r.check(false, || "qutrit counts differ".into());
        return r;
    }
    let target = Rational::new(1.into(), (a.dim() as i64).into());
    for i in 0..a.dim() {
        for j in 0..b.dim() {
            let got = overlap(&a.states[i], &a.norms[i], &b.states[j], &b.norms[j]);
            r.check(got == target, || {
                format!("overlap of {} and {} is {got}", label_string(&a.labels[i]), label_string(&b.labels[j]))
            });
            if dense {
                let t = a.projectors[i].trace_of_product(&b.projectors[j]).expect("same shape");
                r.check(t == CycNum::from_rational(target.clone()), || {
                    format!("dense overlap of {} and {} is {t}", label_string(&a.labels[i]), label_string(&b.labels[j]))
                });
            }
        }
    }
    r
}

/// Pairwise unbiasedness of a list of bases.
pub fn verify_mutually_unbiased(bases: &[BasisSet], dense: bool) -> CheckReport {
    let pairs: Vec<(usize, usize)> =
        (0..bases.len()).flat_map(|i| (i + 1..bases.len()).map(move |j| (i, j))).collect();
    let reports: Vec<CheckReport> =
        pairs.par_iter().map(|&(i, j)| verify_unbiased(&bases[i], &bases[j], dense)).collect();
    let mut r = CheckReport::new("mutual unbiasedness");
    for sub in reports {
        r.absorb(sub);
    }
    r
}

/// The spectral representation `U_a = Σ_α ω^{a·α} P_α` of every subgroup
/// element, checked as `U_a ψ_α = ω^{a·α} ψ_α` (equivalent given
/// completeness), plus orthogonality of the character rows `ω^{a·α}`.
/// `dense` also sums the projectors explicitly.
pub fn verify_spectral_round_trip(b: &BasisSet, dense: bool) -> CheckReport {
    let mut r = CheckReport::new(format!("spectral round trip of {}", b.source));
    let d = b.dim();
    for a in &b.labels {
        let u = b.source.element(a);
        for (alpha, psi) in b.labels.iter().zip(&b.states) {
            let k = dot(a, alpha).value() as i64;
            let want: Vec<CycNum> = psi.iter().map(|x| x.mul_omega_pow(k)).collect();
            r.check(apply_to_state(&u, psi) == want, || {
                format!("state {} is not an eigenvector of {u} with eigenvalue w^{k}", label_string(alpha))
            });
        }
        if dense {
            let mut acc = CycMatrix::zeros(d, d);
            for (alpha, p) in b.labels.iter().zip(&b.projectors) {
                acc.add_assign(&p.scale(&CycNum::omega_pow(dot(a, alpha).value() as i64))).expect("same shape");
            }
            let mut want = CycMatrix::zeros(d, d);
            u.accumulate_into(&mut want, Trit::ZERO);
            r.check(acc == want, || format!("sum over the basis does not give {u}"));
        }
        for c in &b.labels {
            let mut counts = [0i64; 3];
            for alpha in &b.labels {
                counts[(dot(a, alpha) - dot(c, alpha)).value() as usize] += 1;
            }
            let got = CycNum::from_root_counts(counts);
            let want = if a == c { CycNum::from_int(d as i64) } else { CycNum::zero() };
            r.check(got == want, || format!("character rows {} and {} are not orthogonal", label_string(a), label_string(c)));
        }
    }
    r
}

/// Monomial form of an operator: for each column, its row and phase.
fn monomial(op: &PauliOp) -> (Vec<u32>, Vec<u8>) {
    let d = 3usize.pow(op.n_qutrits() as u32);
    let mut rows = vec![0u32; d];
    let mut phases = vec![0u8; d];
    for (row, col, k) in op.monomial_entries() {
        rows[col] = row as u32;
        phases[col] = k.value();
    }
    (rows, phases)
}

/// `Tr(U_a† U_b) = 3ᴺ δ_ab` over the identity and every subgroup element of
/// every MCS in `mcs`, computed on the monomial forms; `dense` repeats the
/// check on explicit matrices (small `N` only).
pub fn verify_operator_orthonormality(mcs: &[Mcs], dense: bool) -> CheckReport {
    let mut r = CheckReport::new("operator orthonormality");
    let Some(n) = mcs.first().map(Mcs::n_qutrits) else {
        return r;
    };
    let d = 3usize.pow(n as u32);
    let mut ops = vec![PauliOp::identity(n)];
    for m in mcs {
        ops.extend(coordinate_vectors(n).skip(1).map(|a| m.element(&a)));
    }
    let forms: Vec<(Vec<u32>, Vec<u8>)> = ops.iter().map(monomial).collect();
    let rows: Vec<Vec<(bool, String)>> = (0..ops.len())
        .into_par_iter()
        .map(|i| {
            let (ri, pi) = &forms[i];
            let mut out = Vec::new();
            for j in i..ops.len() {
                let (rj, pj) = &forms[j];
                let mut counts = [0i64; 3];
                for col in 0..d {
                    if ri[col] == rj[col] {
                        counts[((3 + pj[col] - pi[col]) % 3) as usize] += 1;
                    }
                }
                let got = CycNum::from_root_counts(counts);
                let want = if i == j { CycNum::from_int(d as i64) } else { CycNum::zero() };
                out.push((got == want, format!("Tr({}^dagger {}) = {got}", ops[i], ops[j])));
            }
            out
        })
        .collect();
    for (ok, msg) in rows.into_iter().flatten() {
        r.check(ok, || msg);
    }
    if dense {
        let mats: Vec<CycMatrix> = ops.iter().map(|u| u.to_matrix().expect("small")).collect();
        for i in 0..mats.len() {
            for j in i..mats.len() {
                let got = mats[i].hs_inner(&mats[j]).expect("same shape");
                let want = if i == j { CycNum::from_int(d as i64) } else { CycNum::zero() };
                r.check(got == want, || format!("dense Tr({}^dagger {}) = {got}", ops[i], ops[j]));
            }
        }
    }
    r
}

/// `H = (U - U†)/i√3` and `√3·H̄ = U + U†` for one operator `U`.
#[derive(Clone, Debug)]
pub struct HermPair {
    pub source: PauliOp,
    pub h: CycMatrix,
    /// `√3·H̄`, which stays inside Q(ω).
    pub hbar_scaled: CycMatrix,
}

/// `1/(i√3) = -(1 + 2ω)/3`.
fn inv_i_sqrt3() -> CycNum {
    CycNum::i_sqrt3().scale(&Rational::new((-1).into(), 3.into()))
}

pub fn hermitian_pair(u: &PauliOp) -> Result<HermPair> {
    if u.is_identity() {
        return Err(Error::IdentityOperator);
    }
    let u = u.canonical();
    let um = u.to_matrix()?;
    let ud = um.adjoint();
    let h = um.sub(&ud)?.scale(&inv_i_sqrt3());
    let hbar_scaled = um.add(&ud)?;
    Ok(HermPair { source: u, h, hbar_scaled })
}

/// Multiplicities of the eigenvalues `(-1, 0, 1)` of a matrix with
/// `H³ = H`, from its first two trace moments.
pub fn trinary_multiplicities(h: &CycMatrix) -> Result<Option<[Rational; 3]>> {
    let h2 = h.mul(h)?;
    if h2.mul(h)? != *h {
        return Ok(None);
    }
    let (Some(t1), Some(t2)) = (h.trace()?.as_rational().cloned(), h2.trace()?.as_rational().cloned()) else {
        return Ok(None);
    };
    let d = rational_int(h.rows() as i64);
    let two = rational_int(2);
    let plus = (&t2 + &t1) / &two;
    let minus = (&t2 - &t1) / &two;
    let zero = d - &t2;
    Ok(Some([minus, zero, plus]))
}

/// Multiplicities of the eigenvalues `(2, -1)` of a matrix with
/// `S² = S + 2I`, from its trace.
pub fn bar_multiplicities(s: &CycMatrix) -> Result<Option<[Rational; 2]>> {
    let s2 = s.mul(s)?;
    let d = s.rows();
    if s2 != s.add(&CycMatrix::identity(d).scale_rational(&rational_int(2)))? {
        return Ok(None);
    }
    let Some(t) = s.trace()?.as_rational().cloned() else {
        return Ok(None);
    };
    let dd = rational_int(d as i64);
    // 2·m₂ - m₋₁ = t, m₂ + m₋₁ = d
    let m2 = (&t + &dd) / rational_int(3);
    Ok(Some([m2.clone(), dd - m2]))
}

impl HermPair {
    pub fn n_qutrits(&self) -> usize {
        self.source.n_qutrits()
    }

    /// Exact identities between `U`, `H` and `√3·H̄`, plus the spectra.
    pub fn verify(&self) -> Result<CheckReport> {
        let mut r = CheckReport::new(format!("observables of {}", self.source));
        let d = self.h.rows();
        let third = 3usize.pow(self.n_qutrits() as u32 - 1) as i64;
        let id = CycMatrix::identity(d);
        let h2 = self.h.mul(&self.h)?;
        let u = self.source.to_matrix()?;
        r.check(self.h.is_hermitian(), || "H is not Hermitean".into());
        r.check(self.hbar_scaled.is_hermitian(), || "H-bar is not Hermitean".into());
        let s_from_h = id.scale_rational(&rational_int(2)).sub(&h2.scale_rational(&rational_int(3)))?;
        r.check(s_from_h == self.hbar_scaled, || "sqrt3 H-bar != 2I - 3H^2".into());
        let half = Rational::new(1.into(), 2.into());
        let u_poly = id
            .add(&self.h.scale(&CycNum::i_sqrt3().scale(&half)))?
            .sub(&h2.scale_rational(&Rational::new(3.into(), 2.into())))?;
        r.check(u_poly == u, || "U != I + (i sqrt3/2) H - (3/2) H^2".into());
        let hbar_u = u.add(&u.adjoint())?;
        r.check(hbar_u == self.hbar_scaled, || "sqrt3 H-bar != U + U^dagger".into());
        let mult = trinary_multiplicities(&self.h)?;
        let m = rational_int(third);
        r.check(mult == Some([m.clone(), m.clone(), m.clone()]), || format!("spectrum of H is {mult:?}"));
        let bar = bar_multiplicities(&self.hbar_scaled)?;
        r.check(bar == Some([m.clone(), rational_int(2 * third)]), || format!("spectrum of H-bar is {bar:?}"));
        r.check(self.h.trace()?.is_zero(), || "Tr H != 0".into());
        r.check(h2.trace()? == CycNum::from_int(2 * third), || "Tr H^2 != 2*3^(N-1)".into());
        Ok(r)
    }
}

/// One pair per `{U, U†}`, taking `U` with the smaller index.
pub fn hermitian_basis(n: usize) -> Result<Vec<HermPair>> {
    PauliOp::all_canonical(n)
        .skip(1)
        .filter(|u| u.index() < u.dagger().index())
        .map(|u| hermitian_pair(&u))
        .collect()
}

/// `Tr(AᵢAⱼ) = 2·3^{N-1} δᵢⱼ` over all `H` and `H̄` of a list of pairs
/// (the scaled `√3·H̄` contributes a factor 3 on its diagonal).
pub fn verify_hermitian_orthonormality(pairs: &[HermPair]) -> Result<CheckReport> {
    let mut r = CheckReport::new("Hermitean orthonormality");
    let Some(first) = pairs.first() else {
        return Ok(r);
    };
    let third = 3i64.pow(first.n_qutrits() as u32 - 1);
    let mats: Vec<(String, &CycMatrix, i64)> = pairs
        .iter()
        .flat_map(|p| [(format!("H({})", p.source), &p.h, 1), (format!("Hbar({})", p.source), &p.hbar_scaled, 3)])
        .collect();
    for i in 0..mats.len() {
        for j in i..mats.len() {
            let got = mats[i].1.trace_of_product(mats[j].1)?;
            let want = if i == j { CycNum::from_int(2 * third * mats[i].2) } else { CycNum::zero() };
            r.check(got == want, || format!("Tr({} {}) = {got}", mats[i].0, mats[j].0));
        }
    }
    Ok(r)
}

/// How many observables of each spectral type a list of pairs yields:
/// `(trinary, two-level)`.
pub fn spectrum_split(pairs: &[HermPair]) -> Result<(usize, usize)> {
    let mut split = (0, 0);
    for p in pairs {
        for m in [&p.h, &p.hbar_scaled] {
            if trinary_multiplicities(m)?.is_some() {
                split.0 += 1;
            } else if bar_multiplicities(m)?.is_some() {
                split.1 += 1;
            }
        }
    }
    Ok(split)
}

/// Entanglement class from the single-qutrit reduced states of every basis
/// state.
pub fn classify_basis(b: &BasisSet) -> Result<EntanglementClass> {
    let n = b.n_qutrits();
    if n == 1 {
        return Ok(EntanglementClass::S);
    }
    let mixed = CycMatrix::identity(3).scale_rational(&Rational::new(1.into(), 3.into()));
    let mut pure_slots: Option<Vec<usize>> = None;
    for i in 0..b.dim() {
        let mut pure = Vec::new();
        for q in 0..n {
            let rho = b.reduced_state(i, q);
            let purity = rho.trace_of_product(&rho)?;
            if purity.is_one() {
                pure.push(q);
            } else if rho != mixed {
                return Err(Error::TheoremViolation(format!(
                    "state {} of {} has a reduced state on qutrit {q} that is neither pure nor I/3",
                    label_string(&b.labels[i]),
                    b.source
                )));
            }
        }
        match &pure_slots {
            None => pure_slots = Some(pure),
            Some(prev) if *prev != pure => {
                return Err(Error::TheoremViolation(format!("pure qutrits vary across the basis of {}", b.source)))
            }
            _ => {}
        }
    }
    let pure = pure_slots.unwrap_or_default();
    match (n, pure.len()) {
        (_, k) if k == n => Ok(EntanglementClass::S),
        (2, 0) => Ok(EntanglementClass::B),
        (3, 0) => Ok(EntanglementClass::G),
        (3, 1) => Ok(EntanglementClass::SB),
        _ => Err(Error::TheoremViolation(format!("{} pure qutrits in the basis of {}", pure.len(), b.source))),
    }
}

/// Bases for every MCS of a list, in order.
pub fn bases_for(mcs: &[Mcs]) -> Result<Vec<BasisSet>> {
    mcs.par_iter().map(BasisSet::from_mcs).collect()
}
