//! Exact state reconstruction from the outcome probabilities of a full set
//! of mutually unbiased bases: `ρ = Σ_{A,α} p^A_α P^A_α - I`.

use std::io::{Read, Write};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rand::Rng;
use rayon::prelude::*;

use crate::cyclotomic::{CycMatrix, CycNum, Rational};
use crate::error::{Error, Result};
use crate::mcs::format_ops;
use crate::mub::{bases_for, inner, label_string, BasisSet};
use crate::partition::Partition;
use crate::trit::Trit;

/// A Hermitean, unit-trace matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DensityMatrix(CycMatrix);

impl DensityMatrix {
    pub fn new(m: CycMatrix) -> Result<DensityMatrix> {
        if !m.is_hermitian() {
            return Err(Error::TheoremViolation("density matrix is not Hermitean".into()));
        }
        if !m.trace()?.is_one() {
            return Err(Error::TheoremViolation(format!("density matrix has trace {}", m.trace()?)));
        }
        Ok(DensityMatrix(m))
    }

    /// `I / d`.
    pub fn maximally_mixed(n: usize) -> DensityMatrix {
        let d = 3usize.pow(n as u32);
        DensityMatrix(CycMatrix::identity(d).scale_rational(&Rational::new(1.into(), (d as i64).into())))
    }

    /// `|ψ⟩⟨ψ| / ‖ψ‖²`.
    pub fn pure(psi: &[CycNum]) -> Result<DensityMatrix> {
        let norm = crate::mub::norm_sqr(psi);
        if norm.is_zero() {
            return Err(Error::DivisionByZero);
        }
        DensityMatrix::new(CycMatrix::outer(psi, psi).scale_rational(&norm.recip()))
    }

    pub fn matrix(&self) -> &CycMatrix {
        &self.0
    }

    pub fn into_matrix(self) -> CycMatrix {
        self.0
    }

    pub fn dim(&self) -> usize {
        self.0.rows()
    }
}

/// The `3^N + 1` eigenbases of a partition.
#[derive(Clone, Debug)]
pub struct Mubs {
    bases: Vec<BasisSet>,
}

impl Mubs {
    pub fn from_partition(p: &Partition) -> Result<Mubs> {
        Ok(Mubs { bases: bases_for(p.mcs())? })
    }

    pub fn bases(&self) -> &[BasisSet] {
        &self.bases
    }

    pub fn dim(&self) -> usize {
        self.bases[0].dim()
    }

    pub fn n_qutrits(&self) -> usize {
        self.bases[0].n_qutrits()
    }
}

/// Outcome probabilities `p^A_α`, one row per basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProbTable {
    /// Generator list of each basis, e.g. `"ZX,VZ"`.
    pub bases: Vec<String>,
    pub rows: Vec<Vec<Rational>>,
}

impl ProbTable {
    /// Rows sum to 1 and entries lie in `[0, 1]`.
    pub fn validate(&self) -> Result<()> {
        if self.rows.len() != self.bases.len() {
            return Err(Error::InvalidTable(format!("{} rows for {} bases", self.rows.len(), self.bases.len())));
        }
        for (name, row) in self.bases.iter().zip(&self.rows) {
            let sum = row.iter().fold(Rational::zero(), |acc, p| acc + p);
            if !sum.is_one() {
                return Err(Error::InvalidTable(format!("row {name} sums to {sum}")));
            }
            if let Some(p) = row.iter().find(|p| p.is_negative() || **p > Rational::one()) {
                return Err(Error::InvalidTable(format!("row {name} has entry {p} outside [0, 1]")));
            }
        }
        Ok(())
    }

    /// CSV with a `basis` column followed by one column per label; values
    /// are exact `num/den` strings.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let d = self.rows.first().map_or(0, Vec::len);
        let n = (0..).find(|&k| 3usize.pow(k) >= d).unwrap_or(0) as usize;
        let mut w = csv::Writer::from_writer(out);
        let mut header = vec!["basis".to_string()];
        header.extend(crate::mcs::coordinate_vectors(n).map(|l| label_string(&l)));
        w.write_record(&header).map_err(csv_error)?;
        for (name, row) in self.bases.iter().zip(&self.rows) {
            let mut rec = vec![name.clone()];
            rec.extend(row.iter().map(format_rational));
            w.write_record(&rec).map_err(csv_error)?;
        }
        w.flush().map_err(|e| Error::InvalidTable(e.to_string()))?;
        Ok(())
    }

    pub fn read_csv<R: Read>(input: R) -> Result<ProbTable> {
        let mut r = csv::Reader::from_reader(input);
        let mut bases = Vec::new();
        let mut rows = Vec::new();
        for rec in r.records() {
            let rec = rec.map_err(csv_error)?;
            let mut fields = rec.iter();
            bases.push(fields.next().ok_or_else(|| Error::InvalidTable("empty record".into()))?.to_string());
            rows.push(fields.map(parse_rational).collect::<Result<Vec<_>>>()?);
        }
        let table = ProbTable { bases, rows };
        table.validate()?;
        Ok(table)
    }
}

fn csv_error(e: csv::Error) -> Error {
    Error::InvalidTable(e.to_string())
}

pub fn format_rational(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Parses `num/den` or a plain integer.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let bad = || Error::InvalidTable(format!("cannot parse rational {text:?}"));
    let (num, den) = match text.trim().split_once('/') {
        Some((a, b)) => (a.trim(), b.trim()),
        None => (text.trim(), "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(Error::DivisionByZero);
    }
    Ok(Rational::new(num, den))
}

/// Outcome probabilities of `ρ` in a single basis.
pub fn basis_row(rho: &DensityMatrix, b: &BasisSet) -> Result<Vec<Rational>> {
    if rho.dim() != b.dim() {
        return Err(Error::ShapeMismatch { left: rho.0.shape(), right: (b.dim(), b.dim()) });
    }
    b.states()
        .iter()
        .zip(b.norms())
        .map(|(psi, norm)| {
            let v = rho.0.mul_vec(psi)?;
            let e = inner(psi, &v);
            e.as_rational()
                .map(|r| r / norm)
                .ok_or_else(|| Error::TheoremViolation(format!("complex expectation value {e}")))
        })
        .collect()
}

/// `p^A_α = ⟨ψ_α|ρ|ψ_α⟩ / ‖ψ_α‖²` for every basis state.
pub fn probabilities(rho: &DensityMatrix, mubs: &Mubs) -> Result<ProbTable> {
    let rows: Vec<Vec<Rational>> = mubs.bases.par_iter().map(|b| basis_row(rho, b)).collect::<Result<_>>()?;
    let bases = mubs.bases.iter().map(|b| format_ops(b.source().generators())).collect();
    Ok(ProbTable { bases, rows })
}

fn check_table_matches(table: &ProbTable, mubs: &Mubs) -> Result<()> {
    table.validate()?;
    if table.rows.len() != mubs.bases.len() {
        return Err(Error::InvalidTable(format!("{} rows for {} bases", table.rows.len(), mubs.bases.len())));
    }
    for (row, b) in table.rows.iter().zip(&mubs.bases) {
        if row.len() != b.dim() {
            return Err(Error::InvalidTable(format!("row of length {} for dimension {}", row.len(), b.dim())));
        }
    }
    Ok(())
}

/// Reconstructs `ρ` by expanding each `Σ_α p_α P_α` over the subgroup
/// operators: `Σ_α p_α P_α = d⁻¹ Σ_a (Σ_α p_α ω^{-a·α}) U_a`.
pub fn reconstruct(table: &ProbTable, mubs: &Mubs) -> Result<DensityMatrix> {
    check_table_matches(table, mubs)?;
    let d = mubs.dim();
    let partials: Vec<CycMatrix> = table
        .rows
        .par_iter()
        .zip(&mubs.bases)
        .map(|(row, b)| {
            let mut acc = CycMatrix::zeros(d, d);
            for a in b.labels() {
                let mut coef = CycNum::zero();
                for (alpha, p) in b.labels().iter().zip(row) {
                    if p.is_zero() {
                        continue;
                    }
                    let k = a.iter().zip(alpha).fold(Trit::ZERO, |s, (&x, &y)| s + x * y);
                    coef += &CycNum::omega_pow(-(k.value() as i64)).scale(p);
                }
                if coef.is_zero() {
                    continue;
                }
                for (r, c, k) in b.source().element(a).monomial_entries() {
                    acc[(r, c)] += &coef.mul_omega_pow(k.value() as i64);
                }
            }
            acc
        })
        .collect();
    let mut sum = CycMatrix::zeros(d, d);
    for m in &partials {
        sum.add_assign(m)?;
    }
    let rho = sum
        .scale_rational(&Rational::new(1.into(), (d as i64).into()))
        .sub(&CycMatrix::identity(d))?;
    DensityMatrix::new(rho)
}

/// The literal sum `Σ p^A_α P^A_α - I` over dense projectors.
pub fn reconstruct_direct(table: &ProbTable, mubs: &Mubs) -> Result<CycMatrix> {
    check_table_matches(table, mubs)?;
    let d = mubs.dim();
    let mut sum = CycMatrix::identity(d).scale_rational(&Rational::from_integer((-1).into()));
    for (row, b) in table.rows.iter().zip(&mubs.bases) {
        for (p, proj) in row.iter().zip(b.projectors()) {
            if !p.is_zero() {
                sum.add_assign(&proj.scale_rational(p))?;
            }
        }
    }
    Ok(sum)
}

/// The linear identity behind the reconstruction, `X = Σ Tr(X P) P - Tr(X) I`,
/// checked on every Pauli operator with dense projectors.
pub fn verify_reconstruction_identity(mubs: &Mubs) -> Result<crate::check::CheckReport> {
    let mut r = crate::check::CheckReport::new("reconstruction identity on the operator basis");
    let d = mubs.dim();
    for u in crate::pauli::PauliOp::all_canonical(mubs.n_qutrits()) {
        let um = u.to_matrix()?;
        let mut acc = CycMatrix::identity(d).scale(&-um.trace()?);
        for b in &mubs.bases {
            for p in b.projectors() {
                let t = um.trace_of_product(p)?;
                if !t.is_zero() {
                    acc.add_assign(&p.scale(&t))?;
                }
            }
        }
        r.check(acc == um, || format!("identity fails for {u}"));
    }
    Ok(r)
}

/// A random convex mixture of `terms` basis projectors with positive
/// integer weights.
pub fn random_mixture<R: Rng>(mubs: &Mubs, terms: usize, rng: &mut R) -> Result<DensityMatrix> {
    let d = mubs.dim();
    let mut acc = CycMatrix::zeros(d, d);
    let mut total = 0i64;
    for _ in 0..terms {
        let b = &mubs.bases[rng.gen_range(0..mubs.bases.len())];
        let i = rng.gen_range(0..d);
        let w: i64 = rng.gen_range(1..=9);
        total += w;
        acc.add_assign(&b.projectors()[i].scale_rational(&Rational::from_integer(w.into())))?;
    }
    DensityMatrix::new(acc.scale_rational(&Rational::new(1.into(), total.into())))
}

/// Result of one probabilities → reconstruction round trip.
#[derive(Clone, Debug)]
pub struct RoundTrip {
    pub exact: bool,
    pub table: ProbTable,
}

pub fn round_trip(rho: &DensityMatrix, mubs: &Mubs) -> Result<RoundTrip> {
    let table = probabilities(rho, mubs)?;
    let back = reconstruct(&table, mubs)?;
    Ok(RoundTrip { exact: back == *rho, table })
}
