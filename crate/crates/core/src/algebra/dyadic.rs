use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::ExactInt;

/// A rational number `numerator / 2^exponent`.
///
/// Always stored in lowest terms: the numerator is odd whenever the exponent
/// is positive, and zero is `0 / 2^0`. Structural equality is therefore
/// numeric equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Dyadic {
    num: ExactInt,
    exp: u64,
}

impl Dyadic {
    pub fn new(num: ExactInt, exp: u64) -> Self {
        match num.trailing_zeros() {
            None => Dyadic { num, exp: 0 },
            Some(tz) => {
                let shift = tz.min(exp);
                Dyadic { num: num >> shift, exp: exp - shift }
            }
        }
    }

    pub fn zero() -> Self {
        Dyadic { num: BigInt::zero(), exp: 0 }
    }

    pub fn one() -> Self {
        Dyadic { num: BigInt::one(), exp: 0 }
    }

    pub fn half() -> Self {
        Dyadic { num: BigInt::one(), exp: 1 }
    }

    pub fn numerator(&self) -> &ExactInt {
        &self.num
    }

    pub fn exponent(&self) -> u64 {
        self.exp
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_integer(&self) -> bool {
        self.exp == 0
    }

    pub fn to_integer(&self) -> Option<ExactInt> {
        self.is_integer().then(|| self.num.clone())
    }

    /// Multiply by `2^k` for a signed `k`.
    pub fn shl(&self, k: i64) -> Dyadic {
        if k >= 0 {
            Dyadic::new(&self.num << k as u64, self.exp)
        } else {
            Dyadic::new(self.num.clone(), self.exp + k.unsigned_abs())
        }
    }

    /// Exact quotient, or `None` when `other` is zero or the quotient is not
    /// dyadic (the odd part of `other` must divide the numerator).
    pub fn checked_div(&self, other: &Dyadic) -> Option<Dyadic> {
        let tz = other.num.trailing_zeros()?;
        let odd = &other.num >> tz;
        let (q, r) = self.num.div_rem(&odd);
        if !r.is_zero() {
            return None;
        }
        // self / other = q * 2^(other.exp) / 2^(self.exp + tz)
        let q = q << other.exp;
        Some(Dyadic::new(q, self.exp + tz))
    }
}

impl From<ExactInt> for Dyadic {
    fn from(num: ExactInt) -> Self {
        Dyadic { num, exp: 0 }
    }
}

impl From<i64> for Dyadic {
    fn from(v: i64) -> Self {
        Dyadic { num: BigInt::from(v), exp: 0 }
    }
}

impl fmt::Display for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.exp {
            0 => write!(f, "{}", self.num),
            1 => write!(f, "{}/2", self.num),
            e => write!(f, "{}/2^{}", self.num, e),
        }
    }
}

impl Add<&Dyadic> for &Dyadic {
    type Output = Dyadic;

    fn add(self, rhs: &Dyadic) -> Dyadic {
        let exp = self.exp.max(rhs.exp);
        let a = &self.num << (exp - self.exp);
        let b = &rhs.num << (exp - rhs.exp);
        Dyadic::new(a + b, exp)
    }
}

impl Sub<&Dyadic> for &Dyadic {
    type Output = Dyadic;

    fn sub(self, rhs: &Dyadic) -> Dyadic {
        self + &(-rhs)
    }
}

impl Mul<&Dyadic> for &Dyadic {
    type Output = Dyadic;

    fn mul(self, rhs: &Dyadic) -> Dyadic {
        Dyadic::new(&self.num * &rhs.num, self.exp + rhs.exp)
    }
}

impl Neg for &Dyadic {
    type Output = Dyadic;

    fn neg(self) -> Dyadic {
        Dyadic { num: -&self.num, exp: self.exp }
    }
}

impl Neg for Dyadic {
    type Output = Dyadic;

    fn neg(self) -> Dyadic {
        Dyadic { num: -self.num, exp: self.exp }
    }
}

macro_rules! forward_owned {
    ($($tr:ident :: $m:ident),*) => {$(
        impl $tr<Dyadic> for Dyadic {
            type Output = Dyadic;
            fn $m(self, rhs: Dyadic) -> Dyadic { (&self).$m(&rhs) }
        }
        impl $tr<&Dyadic> for Dyadic {
            type Output = Dyadic;
            fn $m(self, rhs: &Dyadic) -> Dyadic { (&self).$m(rhs) }
        }
        impl $tr<Dyadic> for &Dyadic {
            type Output = Dyadic;
            fn $m(self, rhs: Dyadic) -> Dyadic { self.$m(&rhs) }
        }
    )*};
}

forward_owned!(Add::add, Sub::sub, Mul::mul);
