//! Arbitrary-precision integers with a machine-word fast path.
//!
//! Chain and matrix code must never overflow (Smith normal form pivots grow
//! quickly), but almost every coefficient that actually occurs is tiny.
//! `Int` keeps an `i64` inline and spills to a heap `BigInt` only when an
//! operation leaves the `i64` range, demoting back whenever a result fits so
//! that equality and hashing stay canonical.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive};
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

#[derive(Clone, PartialEq, Eq, Hash)]
pub enum Int {
    Small(i64),
    Big(Box<BigInt>),
}

use Int::{Big, Small};

impl Int {
    pub const ZERO: Int = Small(0);
    pub const ONE: Int = Small(1);

    pub fn from_big(b: BigInt) -> Int {
        match b.to_i64() {
            Some(v) => Small(v),
            None => Big(Box::new(b)),
        }
    }

    pub fn to_big(&self) -> BigInt {
        match self {
            Small(v) => BigInt::from(*v),
            Big(b) => (**b).clone(),
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Small(0))
    }

    pub fn is_one(&self) -> bool {
        matches!(self, Small(1))
    }

    /// `true` for +1 or -1.
    pub fn is_unit(&self) -> bool {
        matches!(self, Small(1) | Small(-1))
    }

    pub fn signum(&self) -> i64 {
        match self {
            Small(v) => v.signum(),
            Big(b) => {
                if b.is_negative() {
                    -1
                } else {
                    1
                }
            }
        }
    }

    pub fn abs(&self) -> Int {
        match self {
            Small(v) => match v.checked_abs() {
                Some(a) => Small(a),
                None => Int::from_big(BigInt::from(*v).abs()),
            },
            Big(b) => Int::from_big(b.abs()),
        }
    }

    pub fn checked_neg_i64(v: i64) -> Int {
        match v.checked_neg() {
            Some(n) => Small(n),
            None => Int::from_big(-BigInt::from(v)),
        }
    }

    pub fn gcd(&self, other: &Int) -> Int {
        match (self, other) {
            (Small(a), Small(b)) => {
                // i64 gcd never overflows except gcd(i64::MIN, 0) family.
                let (mut a, mut b) = (a.unsigned_abs(), b.unsigned_abs());
                while b != 0 {
                    let t = a % b;
                    a = b;
                    b = t;
                }
                if a <= i64::MAX as u64 {
                    Small(a as i64)
                } else {
                    Int::from_big(BigInt::from(a))
                }
            }
            _ => Int::from_big(self.to_big().gcd(&other.to_big())),
        }
    }

    /// Euclidean division with remainder: `self = q * d + r`, `0 <= |r| < |d|`
    /// (remainder takes the sign of `self`, matching Rust's `%`).
    pub fn div_rem(&self, d: &Int) -> (Int, Int) {
        debug_assert!(!d.is_zero());
        match (self, d) {
            (Small(a), Small(b)) => match (a.checked_div(*b), a.checked_rem(*b)) {
                (Some(q), Some(r)) => (Small(q), Small(r)),
                _ => {
                    let (q, r) = BigInt::from(*a).div_rem(&BigInt::from(*b));
                    (Int::from_big(q), Int::from_big(r))
                }
            },
            _ => {
                let (q, r) = self.to_big().div_rem(&d.to_big());
                (Int::from_big(q), Int::from_big(r))
            }
        }
    }

    /// Exact division; panics if `d` does not divide `self`.
    pub fn div_exact(&self, d: &Int) -> Int {
        let (q, r) = self.div_rem(d);
        assert!(r.is_zero(), "non-exact division");
        q
    }

    pub fn divides(&self, other: &Int) -> bool {
        if self.is_zero() {
            return other.is_zero();
        }
        other.div_rem(self).1.is_zero()
    }

    pub fn to_i64(&self) -> Option<i64> {
        match self {
            Small(v) => Some(*v),
            Big(_) => None,
        }
    }
}

impl Default for Int {
    fn default() -> Self {
        Int::ZERO
    }
}

impl From<i64> for Int {
    fn from(v: i64) -> Int {
        Small(v)
    }
}

impl From<BigInt> for Int {
    fn from(b: BigInt) -> Int {
        Int::from_big(b)
    }
}

impl fmt::Display for Int {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Small(v) => write!(f, "{v}"),
            Big(b) => write!(f, "{b}"),
        }
    }
}

impl fmt::Debug for Int {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl PartialOrd for Int {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Int {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        match (self, other) {
            (Small(a), Small(b)) => a.cmp(b),
            _ => self.to_big().cmp(&other.to_big()),
        }
    }
}

impl Neg for &Int {
    type Output = Int;
    fn neg(self) -> Int {
        match self {
            Small(v) => Int::checked_neg_i64(*v),
            Big(b) => Int::from_big(-(**b).clone()),
        }
    }
}

impl Neg for Int {
    type Output = Int;
    fn neg(self) -> Int {
        -&self
    }
}

impl Add for &Int {
    type Output = Int;
    fn add(self, rhs: &Int) -> Int {
        match (self, rhs) {
            (Small(a), Small(b)) => match a.checked_add(*b) {
                Some(s) => Small(s),
                None => Int::from_big(BigInt::from(*a) + BigInt::from(*b)),
            },
            _ => Int::from_big(self.to_big() + rhs.to_big()),
        }
    }
}

impl Sub for &Int {
    type Output = Int;
    fn sub(self, rhs: &Int) -> Int {
        match (self, rhs) {
            (Small(a), Small(b)) => match a.checked_sub(*b) {
                Some(s) => Small(s),
                None => Int::from_big(BigInt::from(*a) - BigInt::from(*b)),
            },
            _ => Int::from_big(self.to_big() - rhs.to_big()),
        }
    }
}

impl Mul for &Int {
    type Output = Int;
    fn mul(self, rhs: &Int) -> Int {
        match (self, rhs) {
            (Small(a), Small(b)) => match a.checked_mul(*b) {
                Some(p) => Small(p),
                None => Int::from_big(BigInt::from(*a) * BigInt::from(*b)),
            },
            _ => Int::from_big(self.to_big() * rhs.to_big()),
        }
    }
}

impl Add for Int {
    type Output = Int;
    fn add(self, rhs: Int) -> Int {
        &self + &rhs
    }
}

impl Sub for Int {
    type Output = Int;
    fn sub(self, rhs: Int) -> Int {
        &self - &rhs
    }
}

impl Mul for Int {
    type Output = Int;
    fn mul(self, rhs: Int) -> Int {
        &self * &rhs
    }
}

impl AddAssign<&Int> for Int {
    fn add_assign(&mut self, rhs: &Int) {
        *self = &*self + rhs;
    }
}

impl SubAssign<&Int> for Int {
    fn sub_assign(&mut self, rhs: &Int) {
        *self = &*self - rhs;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn overflow_promotes_and_demotes() {
        let a = Int::from(i64::MAX);
        let b = &a + &Int::ONE;
        assert!(matches!(b, Big(_)));
        let c = &b - &Int::ONE;
        assert_eq!(c, a);
        assert!(matches!(c, Small(_)));
    }

    #[test]
    fn neg_min() {
        let m = Int::from(i64::MIN);
        let n = -&m;
        assert_eq!(n.to_big(), -BigInt::from(i64::MIN));
        assert_eq!(-&n, m);
    }

    #[test]
    fn mul_overflow() {
        let a = Int::from(1 << 40);
        let p = &a * &a;
        assert_eq!(p.to_big(), BigInt::from(1u128 << 80));
        assert!(p.gcd(&a).to_big() == BigInt::from(1i64 << 40));
    }

    #[test]
    fn div_rem_signs() {
        let (q, r) = Int::from(-7).div_rem(&Int::from(2));
        assert_eq!((q, r), (Int::from(-3), Int::from(-1)));
        assert!(Int::from(3).divides(&Int::from(-9)));
        assert!(!Int::from(3).divides(&Int::from(-8)));
    }
}
