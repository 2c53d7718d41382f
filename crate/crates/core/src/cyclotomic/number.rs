use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Shorthand for the arbitrary-precision rationals used throughout.
pub type Rational = BigRational;

pub fn rational(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn rational_int(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

/// An element `a + b·ω` of Q(ω), where ω = exp(2πi/3).
///
/// The pair `(a, b)` is unique for every field element since `1, ω` is a
/// basis; products reduce `ω²` to `-1 - ω`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct CycNum {
    pub a: Rational,
    pub b: Rational,
}

impl CycNum {
    pub fn new(a: Rational, b: Rational) -> CycNum {
        CycNum { a, b }
    }

    pub fn zero() -> CycNum {
        CycNum { a: Rational::zero(), b: Rational::zero() }
    }

    pub fn one() -> CycNum {
        CycNum::from_rational(Rational::one())
    }

    pub fn from_int(v: i64) -> CycNum {
        CycNum::from_rational(rational_int(v))
    }

    pub fn from_rational(r: Rational) -> CycNum {
        CycNum { a: r, b: Rational::zero() }
    }

    /// `a + b·ω` with integer coordinates.
    pub fn from_ints(a: i64, b: i64) -> CycNum {
        CycNum { a: rational_int(a), b: rational_int(b) }
    }

    /// `ω^k` for any integer `k`.
    pub fn omega_pow(k: i64) -> CycNum {
        match k.rem_euclid(3) {
            0 => CycNum::from_ints(1, 0),
            1 => CycNum::from_ints(0, 1),
            _ => CycNum::from_ints(-1, -1),
        }
    }

    /// `c₀ + c₁ω + c₂ω²` for integer multiplicities.
    pub fn from_root_counts(c: [i64; 3]) -> CycNum {
        CycNum::from_ints(c[0] - c[2], c[1] - c[2])
    }

    /// `i·√3 = ω - ω² = 1 + 2ω`.
    pub fn i_sqrt3() -> CycNum {
        CycNum::from_ints(1, 2)
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.a.is_one() && self.b.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.b.is_zero()
    }

    /// The rational value when the number is real.
    pub fn as_rational(&self) -> Option<&Rational> {
        self.is_real().then_some(&self.a)
    }

    /// Returns `k` when the number equals `ω^k`.
    pub fn root_exponent(&self) -> Option<u8> {
        let is = |r: &Rational, v: i64| r.is_integer() && *r.numer() == BigInt::from(v);
        if is(&self.a, 1) && is(&self.b, 0) {
            Some(0)
        } else if is(&self.a, 0) && is(&self.b, 1) {
            Some(1)
        } else if is(&self.a, -1) && is(&self.b, -1) {
            Some(2)
        } else {
            None
        }
    }

    /// Complex conjugate: `conj(a + bω) = (a - b) - bω`.
    pub fn conj(&self) -> CycNum {
        CycNum { a: &self.a - &self.b, b: -&self.b }
    }

    /// Multiplies by `ω^k` without general multiplication.
    pub fn mul_omega_pow(&self, k: i64) -> CycNum {
        match k.rem_euclid(3) {
            0 => self.clone(),
            // ω(a + bω) = -b + (a - b)ω
            1 => CycNum { a: -&self.b, b: &self.a - &self.b },
            // ω²(a + bω) = (b - a) - aω
            _ => CycNum { a: &self.b - &self.a, b: -&self.a },
        }
    }

    pub fn scale(&self, r: &Rational) -> CycNum {
        CycNum { a: &self.a * r, b: &self.b * r }
    }

    /// Squared modulus `|a + bω|² = a² - ab + b²`.
    pub fn norm_sqr(&self) -> Rational {
        &self.a * &self.a - &self.a * &self.b + &self.b * &self.b
    }

    pub fn pow(&self, mut e: u32) -> CycNum {
        let mut base = self.clone();
        let mut acc = CycNum::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Multiplicative inverse, via `z⁻¹ = conj(z) / |z|²`.
    pub fn inv(&self) -> Result<CycNum> {
        let n = self.norm_sqr();
        if n.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self.conj().scale(&n.recip()))
    }

    pub fn div_rational(&self, r: &Rational) -> Result<CycNum> {
        if r.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self.scale(&r.recip()))
    }

    pub fn checked_div(&self, other: &CycNum) -> Result<CycNum> {
        Ok(self * &other.inv()?)
    }

    /// Floating-point value, for display only.
    pub fn to_f64_pair(&self) -> (f64, f64) {
        use num_traits::ToPrimitive;
        let a = self.a.to_f64().unwrap_or(f64::NAN);
        let b = self.b.to_f64().unwrap_or(f64::NAN);
        (a - b / 2.0, b * 3f64.sqrt() / 2.0)
    }
}

impl From<i64> for CycNum {
    fn from(v: i64) -> Self {
        CycNum::from_int(v)
    }
}

impl From<Rational> for CycNum {
    fn from(r: Rational) -> Self {
        CycNum::from_rational(r)
    }
}

impl Add for &CycNum {
    type Output = CycNum;
    fn add(self, rhs: &CycNum) -> CycNum {
        CycNum { a: &self.a + &rhs.a, b: &self.b + &rhs.b }
    }
}

impl Add for CycNum {
    type Output = CycNum;
    fn add(self, rhs: CycNum) -> CycNum {
        CycNum { a: self.a + rhs.a, b: self.b + rhs.b }
    }
}

impl AddAssign<&CycNum> for CycNum {
    fn add_assign(&mut self, rhs: &CycNum) {
        self.a += &rhs.a;
        self.b += &rhs.b;
    }
}

impl SubAssign<&CycNum> for CycNum {
    fn sub_assign(&mut self, rhs: &CycNum) {
        self.a -= &rhs.a;
        self.b -= &rhs.b;
    }
}

impl Sub for &CycNum {
    type Output = CycNum;
    fn sub(self, rhs: &CycNum) -> CycNum {
        CycNum { a: &self.a - &rhs.a, b: &self.b - &rhs.b }
    }
}

impl Sub for CycNum {
    type Output = CycNum;
    fn sub(self, rhs: CycNum) -> CycNum {
        CycNum { a: self.a - rhs.a, b: self.b - rhs.b }
    }
}

impl Neg for &CycNum {
    type Output = CycNum;
    fn neg(self) -> CycNum {
        CycNum { a: -&self.a, b: -&self.b }
    }
}

impl Neg for CycNum {
    type Output = CycNum;
    fn neg(self) -> CycNum {
        CycNum { a: -self.a, b: -self.b }
    }
}

impl Mul for &CycNum {
    type Output = CycNum;
    fn mul(self, rhs: &CycNum) -> CycNum {
        if self.is_zero() || rhs.is_zero() {
            return CycNum::zero();
        }
        if let Some(k) = self.root_exponent() {
            return rhs.mul_omega_pow(k as i64);
        }
        if let Some(k) = rhs.root_exponent() {
            return self.mul_omega_pow(k as i64);
        }
        // (a + bω)(c + dω) = ac + (ad + bc)ω + bdω², with ω² = -1 - ω.
        let ac = &self.a * &rhs.a;
        let bd = &self.b * &rhs.b;
        let cross = &self.a * &rhs.b + &self.b * &rhs.a;
        CycNum { a: &ac - &bd, b: cross - bd }
    }
}

impl Mul for CycNum {
    type Output = CycNum;
    fn mul(self, rhs: CycNum) -> CycNum {
        &self * &rhs
    }
}

fn fmt_rational(r: &Rational, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if r.is_integer() {
        write!(f, "{}", r.numer())
    } else {
        write!(f, "{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for CycNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.a.is_zero(), self.b.is_zero()) {
            (true, true) => write!(f, "0"),
            (false, true) => fmt_rational(&self.a, f),
            (true, false) => {
                fmt_rational(&self.b, f)?;
                write!(f, "w")
            }
            (false, false) => {
                fmt_rational(&self.a, f)?;
                if self.b.is_negative() {
                    write!(f, " - ")?;
                    fmt_rational(&-&self.b, f)?;
                } else {
                    write!(f, " + ")?;
                    fmt_rational(&self.b, f)?;
                }
                write!(f, "w")
            }
        }
    }
}

impl fmt::Debug for CycNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CycNum({self})")
    }
}
