//! Elements of GF(3) and packed vectors over it.
//!
//! A [`TritVec`] stores up to 64 trits as two one-hot bit planes: bit `i` of
//! `ones` is set when trit `i` equals 1, bit `i` of `twos` when it equals 2.
//! Addition, negation and dot products are then a handful of word operations.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// Maximum number of trits a [`TritVec`] can hold.
pub const MAX_TRITS: usize = 64;

/// An element of the integers modulo 3.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Trit(u8);

impl Trit {
    pub const ZERO: Trit = Trit(0);
    pub const ONE: Trit = Trit(1);
    pub const TWO: Trit = Trit(2);

    /// Reduces any integer modulo 3.
    pub fn new(value: i64) -> Trit {
        Trit(value.rem_euclid(3) as u8)
    }

    pub fn value(self) -> u8 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }

    pub fn all() -> [Trit; 3] {
        [Trit(0), Trit(1), Trit(2)]
    }
}

impl From<u8> for Trit {
    fn from(v: u8) -> Self {
        Trit(v % 3)
    }
}

impl Add for Trit {
    type Output = Trit;
    fn add(self, rhs: Trit) -> Trit {
        Trit((self.0 + rhs.0) % 3)
    }
}

impl Sub for Trit {
    type Output = Trit;
    fn sub(self, rhs: Trit) -> Trit {
        Trit((self.0 + 3 - rhs.0) % 3)
    }
}

impl Neg for Trit {
    type Output = Trit;
    fn neg(self) -> Trit {
        Trit((3 - self.0) % 3)
    }
}

impl Mul for Trit {
    type Output = Trit;
    fn mul(self, rhs: Trit) -> Trit {
        Trit((self.0 * rhs.0) % 3)
    }
}

impl fmt::Display for Trit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A fixed-length vector over GF(3), packed into two bit planes.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct TritVec {
    len: u8,
    ones: u64,
    twos: u64,
}

impl TritVec {
    /// The zero vector of the given length.
    ///
    /// Panics if `len > MAX_TRITS`.
    pub fn zeros(len: usize) -> TritVec {
        assert!(len <= MAX_TRITS, "trit vector length {len} exceeds {MAX_TRITS}");
        TritVec { len: len as u8, ones: 0, twos: 0 }
    }

    pub fn from_trits<I: IntoIterator<Item = Trit>>(trits: I) -> TritVec {
        let trits: Vec<Trit> = trits.into_iter().collect();
        let mut v = TritVec::zeros(trits.len());
        for (i, t) in trits.into_iter().enumerate() {
            v.set(i, t);
        }
        v
    }

    /// Builds a vector from small integers, each reduced mod 3.
    pub fn from_values(values: &[i64]) -> TritVec {
        TritVec::from_trits(values.iter().map(|&v| Trit::new(v)))
    }

    pub fn len(&self) -> usize {
        self.len as usize
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    fn mask(&self) -> u64 {
        if self.len as usize == MAX_TRITS {
            u64::MAX
        } else {
            (1u64 << self.len) - 1
        }
    }

    pub fn get(&self, i: usize) -> Trit {
        debug_assert!(i < self.len());
        if self.ones >> i & 1 == 1 {
            Trit::ONE
        } else if self.twos >> i & 1 == 1 {
            Trit::TWO
        } else {
            Trit::ZERO
        }
    }

    pub fn set(&mut self, i: usize, t: Trit) {
        assert!(i < self.len(), "index {i} out of range for length {}", self.len);
        let bit = 1u64 << i;
        self.ones &= !bit;
        self.twos &= !bit;
        match t.value() {
            1 => self.ones |= bit,
            2 => self.twos |= bit,
            _ => {}
        }
    }

    pub fn is_zero(&self) -> bool {
        self.ones == 0 && self.twos == 0
    }

    /// Bit mask of the nonzero positions.
    pub fn support(&self) -> u64 {
        self.ones | self.twos
    }

    pub fn iter(&self) -> impl Iterator<Item = Trit> + '_ {
        (0..self.len()).map(move |i| self.get(i))
    }

    pub fn to_values(&self) -> Vec<u8> {
        self.iter().map(Trit::value).collect()
    }

    /// Multiplies every component by a scalar.
    pub fn scale(&self, s: Trit) -> TritVec {
        match s.value() {
            0 => TritVec::zeros(self.len()),
            1 => *self,
            _ => -*self,
        }
    }

    /// Dot product over GF(3), computed with two popcounts.
    pub fn dot(&self, other: &TritVec) -> Trit {
        debug_assert_eq!(self.len, other.len);
        // 1*1 = 2*2 = 1 and 1*2 = 2*1 = 2 (mod 3).
        let prod_one = (self.ones & other.ones) | (self.twos & other.twos);
        let prod_two = (self.ones & other.twos) | (self.twos & other.ones);
        Trit::new(prod_one.count_ones() as i64 + 2 * prod_two.count_ones() as i64)
    }
}

impl Add for TritVec {
    type Output = TritVec;
    fn add(self, rhs: TritVec) -> TritVec {
        assert_eq!(self.len, rhs.len, "trit vector length mismatch");
        let mask = self.mask();
        let a0 = !(self.ones | self.twos) & mask;
        let b0 = !(rhs.ones | rhs.twos) & mask;
        let ones = (a0 & rhs.ones) | (self.ones & b0) | (self.twos & rhs.twos);
        let twos = (a0 & rhs.twos) | (self.twos & b0) | (self.ones & rhs.ones);
        TritVec { len: self.len, ones, twos }
    }
}

impl Neg for TritVec {
    type Output = TritVec;
    fn neg(self) -> TritVec {
        TritVec { len: self.len, ones: self.twos, twos: self.ones }
    }
}

impl Sub for TritVec {
    type Output = TritVec;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn sub(self, rhs: TritVec) -> TritVec {
        self + (-rhs)
    }
}

impl fmt::Debug for TritVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TritVec(")?;
        for t in self.iter() {
            write!(f, "{t}")?;
        }
        write!(f, ")")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn trit_tables_match_integers_mod_3() {
        for a in 0..3i64 {
            for b in 0..3i64 {
                let (ta, tb) = (Trit::new(a), Trit::new(b));
                assert_eq!((ta + tb).value() as i64, (a + b) % 3);
                assert_eq!((ta * tb).value() as i64, (a * b) % 3);
                assert_eq!((ta - tb).value() as i64, (a - b).rem_euclid(3));
            }
        }
        assert_eq!(Trit::new(-1), Trit::TWO);
    }

    #[test]
    fn full_width_vector() {
        let v = TritVec::from_values(&[2; 64]);
        assert_eq!((v + v).to_values(), vec![1; 64]);
        assert!((v + (-v)).is_zero());
    }

    fn vec_pair() -> impl Strategy<Value = (Vec<i64>, Vec<i64>)> {
        (1usize..=64).prop_flat_map(|n| {
            (prop::collection::vec(0i64..3, n), prop::collection::vec(0i64..3, n))
        })
    }

    proptest! {
        #[test]
        fn packed_ops_agree_with_componentwise((a, b) in vec_pair()) {
            let (va, vb) = (TritVec::from_values(&a), TritVec::from_values(&b));
            let sum: Vec<u8> = a.iter().zip(&b).map(|(x, y)| ((x + y) % 3) as u8).collect();
            let diff: Vec<u8> = a.iter().zip(&b).map(|(x, y)| (x - y).rem_euclid(3) as u8).collect();
            let dot = a.iter().zip(&b).map(|(x, y)| x * y).sum::<i64>() % 3;
            prop_assert_eq!((va + vb).to_values(), sum);
            prop_assert_eq!((va - vb).to_values(), diff);
            prop_assert_eq!(va.dot(&vb).value() as i64, dot);
            prop_assert_eq!(va.scale(Trit::TWO), -va);
        }
    }
}
