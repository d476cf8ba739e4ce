//! Scalar types shared by the polynomial and matrix code.

use std::fmt::{self, Debug, Display};
use std::ops::{Add, Div, Mul, Neg, Rem, Sub};

use num::{BigInt, BigRational, Integer, One, Signed, ToPrimitive, Zero};
use num_traits::Num;

/// Field elements usable as polynomial coefficients and matrix entries.
///
/// Everything in the crate that decides an identity runs over an exact field;
/// the trait is satisfied by [`BigRational`] and by the prime field [`Fp`].
pub trait Scalar: Num + Clone + Neg<Output = Self> + Debug + Display + Send + Sync {}

impl<T> Scalar for T where T: Num + Clone + Neg<Output = T> + Debug + Display + Send + Sync {}

pub fn rational(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// `Some(i64)` when `r` is an integer that fits.
pub fn as_i64(r: &BigRational) -> Option<i64> {
    if r.is_integer() {
        r.to_integer().to_i64()
    } else {
        None
    }
}

const P: u64 = (1 << 61) - 1;

/// Integers modulo the Mersenne prime 2^61 - 1.
///
/// Used for cheap randomized rejection before exact certification.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Fp(u64);

impl Fp {
    pub fn new(v: u64) -> Fp {
        Fp(v % P)
    }

    pub fn value(self) -> u64 {
        self.0
    }

    pub fn from_i64(v: i64) -> Fp {
        let r = v.rem_euclid(P as i64) as u64;
        Fp(r)
    }

    pub fn from_bigint(v: &BigInt) -> Fp {
        let p = BigInt::from(P);
        let r = v.mod_floor(&p);
        Fp(r.to_u64().unwrap())
    }

    /// Reduction of a rational; `None` if the denominator vanishes mod p.
    pub fn from_rational(r: &BigRational) -> Option<Fp> {
        let d = Fp::from_bigint(r.denom());
        if d.0 == 0 {
            return None;
        }
        Some(Fp::from_bigint(r.numer()) * d.inv())
    }

    pub fn pow(self, mut e: u64) -> Fp {
        let mut base = self;
        let mut acc = Fp(1);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            e >>= 1;
        }
        acc
    }

    pub fn inv(self) -> Fp {
        assert!(self.0 != 0, "inverse of zero in Fp");
        self.pow(P - 2)
    }
}

impl Debug for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl Display for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl Add for Fp {
    type Output = Fp;
    fn add(self, o: Fp) -> Fp {
        let s = self.0 + o.0;
        Fp(if s >= P { s - P } else { s })
    }
}

impl Sub for Fp {
    type Output = Fp;
    fn sub(self, o: Fp) -> Fp {
        if self.0 >= o.0 {
            Fp(self.0 - o.0)
        } else {
            Fp(self.0 + P - o.0)
        }
    }
}

impl Mul for Fp {
    type Output = Fp;
    fn mul(self, o: Fp) -> Fp {
        let prod = self.0 as u128 * o.0 as u128;
        let lo = (prod & P as u128) as u64;
        let hi = (prod >> 61) as u64;
        let s = lo + hi;
        Fp(if s >= P { s - P } else { s })
    }
}

impl Div for Fp {
    type Output = Fp;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, o: Fp) -> Fp {
        self * o.inv()
    }
}

impl Rem for Fp {
    type Output = Fp;
    fn rem(self, _o: Fp) -> Fp {
        Fp(0)
    }
}

impl Neg for Fp {
    type Output = Fp;
    fn neg(self) -> Fp {
        if self.0 == 0 {
            self
        } else {
            Fp(P - self.0)
        }
    }
}

impl Zero for Fp {
    fn zero() -> Fp {
        Fp(0)
    }
    fn is_zero(&self) -> bool {
        self.0 == 0
    }
}

impl One for Fp {
    fn one() -> Fp {
        Fp(1)
    }
}

impl Num for Fp {
    type FromStrRadixErr = std::num::ParseIntError;
    fn from_str_radix(s: &str, radix: u32) -> Result<Fp, Self::FromStrRadixErr> {
        let v = i64::from_str_radix(s, radix)?;
        Ok(Fp::from_i64(v))
    }
}

/// Sign of a nonzero rational as +1/-1, 0 for zero.
pub fn signum(r: &BigRational) -> i32 {
    if r.is_zero() {
        0
    } else if r.is_positive() {
        1
    } else {
        -1
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fp_field_ops() {
        let a = Fp::from_i64(-5);
        let b = Fp::new(7);
        assert_eq!(a + Fp::new(5), Fp::zero());
        assert_eq!((a * b) / b, a);
        assert_eq!(b * b.inv(), Fp::one());
        assert_eq!(Fp::new(P - 1) * Fp::new(P - 1), Fp::one());
    }

    #[test]
    fn fp_from_rational() {
        let r = rational(3, 4);
        let f = Fp::from_rational(&r).unwrap();
        assert_eq!(f * Fp::new(4), Fp::new(3));
        assert_eq!(as_i64(&int(12)), Some(12));
        assert_eq!(as_i64(&rational(1, 2)), None);
    }
}
