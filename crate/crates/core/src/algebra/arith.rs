use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{ExactInt, Valuation};
use crate::{Error, Result};

/// Trial-division primality test.
pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    if p < 4 {
        return true;
    }
    if p % 2 == 0 {
        return false;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= p {
        if p % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// 2-adic valuation, via the trailing zero count.
pub fn val2(x: &ExactInt) -> Valuation {
    match x.trailing_zeros() {
        Some(v) => Valuation::Finite(v),
        None => Valuation::Infinite,
    }
}

/// The exponent of the largest power of the prime `p` dividing `x`.
pub fn val_p(x: &ExactInt, p: u64) -> Result<Valuation> {
    if !is_prime(p) {
        return Err(Error::arg(format!("{p} is not prime")));
    }
    if x.is_zero() {
        return Ok(Valuation::Infinite);
    }
    if p == 2 {
        return Ok(val2(x));
    }
    let p = BigInt::from(p);
    let mut rest = x.abs();
    let mut v = 0u64;
    loop {
        let (q, r) = rest.div_rem(&p);
        if !r.is_zero() {
            return Ok(Valuation::Finite(v));
        }
        rest = q;
        v += 1;
    }
}

/// `x / 2^val2(x)`, keeping the sign.
pub fn odd_part(x: &ExactInt) -> Result<ExactInt> {
    match x.trailing_zeros() {
        Some(v) => Ok(x >> v),
        None => Err(Error::arg("odd part of zero")),
    }
}

/// `(a;b)_n = a (a+b) (a+2b) ... (a+(n-1)b)`; the empty product is 1.
pub fn general_product(a: i64, b: i64, n: u64) -> ExactInt {
    let (a, b) = (BigInt::from(a), BigInt::from(b));
    (0..n).fold(BigInt::one(), |acc, i| acc * (&a + &b * i))
}

/// `(1;2)_n`, the product of the first `n` odd integers.
pub fn odd_product(n: u64) -> ExactInt {
    odd_product_ratio(0, n)
}

/// `(1;2)_hi / (1;2)_lo` for `lo <= hi`, formed as the product of the odd
/// numbers `2j+1` for `lo <= j < hi` rather than by division.
pub fn odd_product_ratio(lo: u64, hi: u64) -> ExactInt {
    assert!(lo <= hi, "odd_product_ratio: {lo} > {hi}");
    (lo..hi).fold(BigInt::one(), |acc, j| acc * (2 * j + 1))
}

pub fn factorial(n: u64) -> ExactInt {
    (2..=n).fold(BigInt::one(), |acc, i| acc * i)
}

/// `C(n, k)`, zero when `k > n`.
pub fn binomial(n: u64, k: u64) -> ExactInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        // acc = C(n, i) here, so the division is exact
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn big(v: i64) -> ExactInt {
        BigInt::from(v)
    }

    /// Number of carries when adding `a` and `b` in base 2.
    fn kummer_carries(mut a: u64, mut b: u64) -> u64 {
        let (mut carry, mut count) = (0, 0);
        while a > 0 || b > 0 || carry > 0 {
            let s = (a & 1) + (b & 1) + carry;
            carry = s >> 1;
            count += carry;
            a >>= 1;
            b >>= 1;
        }
        count
    }

    #[test]
    fn primality() {
        let small: Vec<u64> = (0..30).filter(|&p| is_prime(p)).collect();
        assert_eq!(small, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29]);
        assert!(!is_prime(561));
    }

    #[test]
    fn valuations() {
        assert_eq!(val_p(&big(232), 2).unwrap(), Valuation::Finite(3));
        assert_eq!(val_p(&big(0), 2).unwrap(), Valuation::Infinite);
        assert_eq!(val_p(&big(5769), 3).unwrap(), Valuation::Finite(2));
        assert_eq!(val_p(&big(-81), 3).unwrap(), Valuation::Finite(4));
        assert!(matches!(val_p(&big(12), 4), Err(Error::Argument(_))));
        assert!(val_p(&big(12), 1).is_err());
    }

    #[test]
    fn odd_parts() {
        assert_eq!(odd_part(&big(232)).unwrap(), big(29));
        assert_eq!(odd_part(&big(1)).unwrap(), big(1));
        assert_eq!(odd_part(&big(-12440)).unwrap(), big(-1555));
        assert!(odd_part(&big(0)).is_err());
    }

    #[test]
    fn products() {
        assert_eq!(odd_product(0), big(1));
        assert_eq!(odd_product(4), big(105));
        assert_eq!(odd_product(8) % 16, big(1));
        assert_eq!(general_product(1, 2, 3), big(15));
        assert_eq!(general_product(2, 3, 3), big(80));
        assert_eq!(general_product(1, 2, 0), big(1));
        assert_eq!(odd_product_ratio(2, 5), big(5 * 7 * 9));
        assert_eq!(odd_product_ratio(3, 3), big(1));
    }

    #[test]
    fn odd_products_stay_odd() {
        let mut acc = BigInt::one();
        for n in 0..=10_000u64 {
            assert!(acc.is_odd(), "(1;2)_{n} is even");
            acc *= 2 * n + 1;
        }
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(4, 2), big(6));
        assert_eq!(binomial(3, 5), big(0));
        assert_eq!(binomial(0, 0), big(1));
        let c = binomial(50, 25);
        assert_eq!(val2(&c), Valuation::Finite(kummer_carries(25, 25)));
        assert_eq!(val2(&c), Valuation::Finite(3));
    }

    #[test]
    fn factorials() {
        assert_eq!(factorial(0), big(1));
        assert_eq!(factorial(10), big(3_628_800));
    }

    proptest! {
        #[test]
        fn valuation_reconstructs(x in any::<i64>().prop_filter("nonzero", |v| *v != 0),
                                  p in prop::sample::select(vec![2u64, 3, 5, 7, 11, 13])) {
            let x = big(x);
            let v = val_p(&x, p).unwrap().finite().unwrap();
            let pv = BigInt::from(p).pow(v as u32);
            let (m, r) = x.div_rem(&pv);
            prop_assert!(r.is_zero());
            prop_assert!(!(m % p).is_zero());
        }

        #[test]
        fn pascal_rule(n in 1u64..=500, k in 1u64..=500) {
            prop_assert_eq!(binomial(n, k), binomial(n - 1, k - 1) + binomial(n - 1, k));
        }

        #[test]
        fn binomial_matches_kummer(n in 0u64..300, k in 0u64..300) {
            prop_assume!(k <= n);
            prop_assert_eq!(val2(&binomial(n, k)), Valuation::Finite(kummer_carries(k, n - k)));
        }
    }
}
