//! A rational with an allocation-free `i64/i64` fast path, used inside the
//! simplex tableau. Values that overflow fall back to `BigRational`; every
//! value that fits is stored small, so the representation is canonical.

use std::cmp::Ordering;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};

use crate::rational::Rational;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub(crate) enum Q {
    /// Reduced, denominator positive.
    Small(i64, i64),
    Big(Rational),
}

fn gcd_u128(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

impl Q {
    pub(crate) fn zero() -> Q {
        Q::Small(0, 1)
    }

    pub(crate) fn one() -> Q {
        Q::Small(1, 1)
    }

    /// `n/d` from 128-bit parts, `d != 0`.
    fn from_i128(n: i128, d: i128) -> Q {
        debug_assert!(d != 0);
        if n == 0 {
            return Q::zero();
        }
        let g = gcd_u128(n.unsigned_abs(), d.unsigned_abs()) as i128;
        let (mut n, mut d) = (n / g, d / g);
        if d < 0 {
            n = -n;
            d = -d;
        }
        match (i64::try_from(n), i64::try_from(d)) {
            (Ok(n), Ok(d)) => Q::Small(n, d),
            _ => Q::Big(Rational::new(BigInt::from(n), BigInt::from(d))),
        }
    }

    fn from_big(r: Rational) -> Q {
        match (r.numer().to_i64(), r.denom().to_i64()) {
            (Some(n), Some(d)) => Q::Small(n, d),
            _ => Q::Big(r),
        }
    }

    pub(crate) fn to_rational(&self) -> Rational {
        match self {
            Q::Small(n, d) => Rational::new_raw(BigInt::from(*n), BigInt::from(*d)),
            Q::Big(r) => r.clone(),
        }
    }

    pub(crate) fn is_zero(&self) -> bool {
        matches!(self, Q::Small(0, _))
    }

    pub(crate) fn is_one(&self) -> bool {
        matches!(self, Q::Small(1, 1))
    }

    pub(crate) fn is_positive(&self) -> bool {
        match self {
            Q::Small(n, _) => *n > 0,
            Q::Big(r) => r.is_positive(),
        }
    }

    pub(crate) fn is_negative(&self) -> bool {
        match self {
            Q::Small(n, _) => *n < 0,
            Q::Big(r) => r.is_negative(),
        }
    }
}

impl From<&Rational> for Q {
    fn from(r: &Rational) -> Q {
        Q::from_big(r.clone())
    }
}

impl From<&Q> for Rational {
    fn from(q: &Q) -> Rational {
        q.to_rational()
    }
}

impl Add for &Q {
    type Output = Q;
    fn add(self, o: &Q) -> Q {
        match (self, o) {
            (Q::Small(a, b), Q::Small(c, d)) => {
                let (a, b, c, d) = (*a as i128, *b as i128, *c as i128, *d as i128);
                if b == d {
                    Q::from_i128(a + c, b)
                } else {
                    Q::from_i128(a * d + c * b, b * d)
                }
            }
            _ => Q::from_big(self.to_rational() + o.to_rational()),
        }
    }
}

impl Sub for &Q {
    type Output = Q;
    fn sub(self, o: &Q) -> Q {
        self + &(-o)
    }
}

impl Mul for &Q {
    type Output = Q;
    fn mul(self, o: &Q) -> Q {
        match (self, o) {
            (Q::Small(a, b), Q::Small(c, d)) => Q::from_i128(*a as i128 * *c as i128, *b as i128 * *d as i128),
            _ => Q::from_big(self.to_rational() * o.to_rational()),
        }
    }
}

impl Div for &Q {
    type Output = Q;
    fn div(self, o: &Q) -> Q {
        assert!(!o.is_zero(), "division by zero");
        match (self, o) {
            (Q::Small(a, b), Q::Small(c, d)) => Q::from_i128(*a as i128 * *d as i128, *b as i128 * *c as i128),
            _ => Q::from_big(self.to_rational() / o.to_rational()),
        }
    }
}

impl Neg for &Q {
    type Output = Q;
    fn neg(self) -> Q {
        match self {
            Q::Small(n, d) => match n.checked_neg() {
                Some(m) => Q::Small(m, *d),
                None => Q::Big(-self.to_rational()),
            },
            Q::Big(r) => Q::from_big(-r.clone()),
        }
    }
}

impl Ord for Q {
    fn cmp(&self, o: &Q) -> Ordering {
        match (self, o) {
            (Q::Small(a, b), Q::Small(c, d)) => (*a as i128 * *d as i128).cmp(&(*c as i128 * *b as i128)),
            _ => self.to_rational().cmp(&o.to_rational()),
        }
    }
}

impl PartialOrd for Q {
    fn partial_cmp(&self, o: &Q) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}
