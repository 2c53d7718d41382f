//! Versioned JSON documents for MCS's, partitions and bases.
//!
//! Amplitudes are exact: an entry `{num, den, a, b}` stands for
//! `(num/den)·(a + bω)` with `gcd(a, b) = 1`, `den > 0` and, for nonzero
//! values, the first nonzero of `a`, `b` positive.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::cyclotomic::{CycNum, Rational};
use crate::error::{Error, Result};
use crate::mcs::{EntanglementClass, Mcs};
use crate::mub::{label_string, norm_sqr, BasisSet};
use crate::partition::{Partition, StructureCounts};

pub const SCHEMA: &str = "qutrit-mub/1";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct McsJson {
    pub n: usize,
    pub generators: Vec<String>,
    pub members: Vec<String>,
    pub class: EntanglementClass,
    pub profile: Vec<usize>,
}

impl McsJson {
    pub fn from_mcs(m: &Mcs) -> Result<McsJson> {
        Ok(McsJson {
            n: m.n_qutrits(),
            generators: m.generators().iter().map(ToString::to_string).collect(),
            members: m.member_ops().iter().map(ToString::to_string).collect(),
            class: m.classify()?,
            profile: m.profile(),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartitionJson {
    pub n: usize,
    pub mcs: Vec<McsJson>,
    pub structure: StructureCounts,
}

impl PartitionJson {
    pub fn from_partition(p: &Partition) -> Result<PartitionJson> {
        Ok(PartitionJson {
            n: p.n_qutrits(),
            mcs: p.mcs().iter().map(McsJson::from_mcs).collect::<Result<_>>()?,
            structure: p.structure()?,
        })
    }
}

/// One exact amplitude.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExactEntry {
    pub num: i64,
    pub den: i64,
    pub a: i64,
    pub b: i64,
}

fn small(v: &BigInt) -> Result<i64> {
    v.to_i64().ok_or_else(|| Error::InvalidTable(format!("integer {v} does not fit in 64 bits")))
}

impl ExactEntry {
    pub fn from_cyc(z: &CycNum) -> Result<ExactEntry> {
        if z.is_zero() {
            return Ok(ExactEntry { num: 0, den: 1, a: 0, b: 0 });
        }
        let (ra, rb) = (&z.a, &z.b);
        let den = ra.denom().lcm(rb.denom());
        let ia = ra.numer() * (&den / ra.denom());
        let ib = rb.numer() * (&den / rb.denom());
        let mut g = ia.gcd(&ib);
        let lead = if ia.is_zero() { &ib } else { &ia };
        if lead.is_negative() {
            g = -g;
        }
        let scale = Rational::new(g.clone(), den);
        Ok(ExactEntry {
            num: small(scale.numer())?,
            den: small(scale.denom())?,
            a: small(&(ia / &g))?,
            b: small(&(ib / &g))?,
        })
    }

    pub fn to_cyc(&self) -> Result<CycNum> {
        if self.den == 0 {
            return Err(Error::DivisionByZero);
        }
        let s = Rational::new(self.num.into(), self.den.into());
        Ok(CycNum::from_ints(self.a, self.b).scale(&s))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BasisStateJson {
    pub label: String,
    /// Squared norm of the unnormalized vector, as `num/den`.
    pub norm_sqr: String,
    pub amplitudes: Vec<ExactEntry>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BasisJson {
    pub n: usize,
    pub source: McsJson,
    pub states: Vec<BasisStateJson>,
}

impl BasisJson {
    pub fn from_basis(b: &BasisSet) -> Result<BasisJson> {
        let states = b
            .labels()
            .iter()
            .zip(b.states())
            .zip(b.norms())
            .map(|((l, psi), norm)| {
                Ok(BasisStateJson {
                    label: label_string(l),
                    norm_sqr: crate::tomography::format_rational(norm),
                    amplitudes: psi.iter().map(ExactEntry::from_cyc).collect::<Result<_>>()?,
                })
            })
            .collect::<Result<_>>()?;
        Ok(BasisJson { n: b.n_qutrits(), source: McsJson::from_mcs(b.source())?, states })
    }

    /// Decoded state vectors, each checked against its recorded norm.
    pub fn vectors(&self) -> Result<Vec<Vec<CycNum>>> {
        self.states
            .iter()
            .map(|s| {
                let v: Vec<CycNum> = s.amplitudes.iter().map(ExactEntry::to_cyc).collect::<Result<_>>()?;
                let recorded = crate::tomography::parse_rational(&s.norm_sqr)?;
                if norm_sqr(&v) != recorded {
                    return Err(Error::InvalidTable(format!("state {} has norm² {}, recorded {}", s.label, norm_sqr(&v), recorded)));
                }
                Ok(v)
            })
            .collect()
    }
}

/// The payload's fields with `"schema"` and `"kind"` keys added at top level.
pub fn document<T: Serialize>(kind: &str, data: &T) -> Result<serde_json::Value> {
    let mut doc = serde_json::to_value(data).map_err(|e| Error::InvalidTable(e.to_string()))?;
    let obj = doc
        .as_object_mut()
        .ok_or_else(|| Error::InvalidTable(format!("{kind} payload is not a JSON object")))?;
    obj.insert("schema".into(), SCHEMA.into());
    obj.insert("kind".into(), kind.into());
    Ok(doc)
}

/// Extracts the payload of a document, checking schema and kind.
pub fn read_document<T: for<'de> Deserialize<'de>>(kind: &str, doc: &serde_json::Value) -> Result<T> {
    if doc.get("schema").and_then(|s| s.as_str()) != Some(SCHEMA) {
        return Err(Error::InvalidTable(format!("expected schema {SCHEMA}")));
    }
    if doc.get("kind").and_then(|s| s.as_str()) != Some(kind) {
        return Err(Error::InvalidTable(format!("expected kind {kind}")));
    }
    serde_json::from_value(doc.clone()).map_err(|e| Error::InvalidTable(e.to_string()))
}
