use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{Dyadic, ExactInt};

/// Sparse polynomial in `x` and `y` with dyadic coefficients.
///
/// Keys are `(deg_x, deg_y)`. Zero coefficients are never stored, so two
/// polynomials are equal exactly when their term maps are equal.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BivariatePoly {
    terms: BTreeMap<(u32, u32), Dyadic>,
}

impl BivariatePoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(0, 0, Dyadic::one())
    }

    pub fn x() -> Self {
        Self::monomial(1, 0, Dyadic::one())
    }

    pub fn y() -> Self {
        Self::monomial(0, 1, Dyadic::one())
    }

    pub fn monomial(deg_x: u32, deg_y: u32, coeff: Dyadic) -> Self {
        let mut p = Self::zero();
        p.add_term(deg_x, deg_y, coeff);
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, deg_x: u32, deg_y: u32) -> Dyadic {
        self.terms.get(&(deg_x, deg_y)).cloned().unwrap_or_else(Dyadic::zero)
    }

    /// Terms in lexicographic order of `(deg_x, deg_y)`.
    pub fn terms(&self) -> impl Iterator<Item = (u32, u32, &Dyadic)> {
        self.terms.iter().map(|(&(a, b), c)| (a, b, c))
    }

    pub fn is_integral(&self) -> bool {
        self.terms.values().all(Dyadic::is_integer)
    }

    pub fn add_term(&mut self, deg_x: u32, deg_y: u32, coeff: Dyadic) {
        if coeff.is_zero() {
            return;
        }
        let key = (deg_x, deg_y);
        match self.terms.get_mut(&key) {
            Some(c) => {
                let sum = &*c + &coeff;
                if sum.is_zero() {
                    self.terms.remove(&key);
                } else {
                    *c = sum;
                }
            }
            None => {
                self.terms.insert(key, coeff);
            }
        }
    }

    pub fn scale(&self, c: &Dyadic) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let terms = self.terms.iter().map(|(&k, v)| (k, v * c)).collect();
        BivariatePoly { terms }
    }

    pub fn scale_int(&self, c: &ExactInt) -> Self {
        self.scale(&Dyadic::from(c.clone()))
    }

    /// Multiply by `x^dx y^dy`.
    pub fn shift(&self, dx: u32, dy: u32) -> Self {
        let terms = self.terms.iter().map(|(&(a, b), v)| ((a + dx, b + dy), v.clone())).collect();
        BivariatePoly { terms }
    }

    pub fn eval(&self, x: &Dyadic, y: &Dyadic) -> Dyadic {
        let mut xp: Vec<Dyadic> = vec![Dyadic::one()];
        let mut yp: Vec<Dyadic> = vec![Dyadic::one()];
        let mut acc = Dyadic::zero();
        for (&(a, b), c) in &self.terms {
            while xp.len() <= a as usize {
                let next = xp.last().unwrap() * x;
                xp.push(next);
            }
            while yp.len() <= b as usize {
                let next = yp.last().unwrap() * y;
                yp.push(next);
            }
            acc = acc + c * &(&xp[a as usize] * &yp[b as usize]);
        }
        acc
    }

    /// Evaluate at integer points, requiring an integer result.
    pub fn eval_int(&self, x: i64, y: i64) -> Option<ExactInt> {
        self.eval(&Dyadic::from(x), &Dyadic::from(y)).to_integer()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("polynomial serialization cannot fail")
    }

    pub fn from_json(s: &str) -> serde_json::Result<Self> {
        serde_json::from_str(s)
    }
}

impl Add<&BivariatePoly> for &BivariatePoly {
    type Output = BivariatePoly;

    fn add(self, rhs: &BivariatePoly) -> BivariatePoly {
        let mut out = self.clone();
        for (&(a, b), c) in &rhs.terms {
            out.add_term(a, b, c.clone());
        }
        out
    }
}

impl Sub<&BivariatePoly> for &BivariatePoly {
    type Output = BivariatePoly;

    fn sub(self, rhs: &BivariatePoly) -> BivariatePoly {
        self + &(-rhs)
    }
}

impl Neg for &BivariatePoly {
    type Output = BivariatePoly;

    fn neg(self) -> BivariatePoly {
        let terms = self.terms.iter().map(|(&k, v)| (k, -v)).collect();
        BivariatePoly { terms }
    }
}

impl Mul<&BivariatePoly> for &BivariatePoly {
    type Output = BivariatePoly;

    fn mul(self, rhs: &BivariatePoly) -> BivariatePoly {
        let mut out = BivariatePoly::zero();
        for (&(a, b), c) in &self.terms {
            for (&(e, f), d) in &rhs.terms {
                out.add_term(a + e, b + f, c * d);
            }
        }
        out
    }
}

impl Add for BivariatePoly {
    type Output = BivariatePoly;

    fn add(self, rhs: BivariatePoly) -> BivariatePoly {
        &self + &rhs
    }
}

impl Mul for BivariatePoly {
    type Output = BivariatePoly;

    fn mul(self, rhs: BivariatePoly) -> BivariatePoly {
        &self * &rhs
    }
}

impl fmt::Display for BivariatePoly {
    /// Human-readable form, highest x-degree first: `x^2 + y`, `1/2 x^2 + 1/2 y`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (&(a, b), c)) in self.terms.iter().rev().enumerate() {
            let negative = c.numerator().is_negative();
            match (i, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let mag = if negative { -c } else { c.clone() };
            let unit = mag.numerator() == &BigInt::one() && mag.exponent() == 0;
            let mut parts = Vec::new();
            if !unit || (a == 0 && b == 0) {
                parts.push(mag.to_string());
            }
            for (var, deg) in [("x", a), ("y", b)] {
                match deg {
                    0 => {}
                    1 => parts.push(var.to_string()),
                    d => parts.push(format!("{var}^{d}")),
                }
            }
            f.write_str(&parts.join(" "))?;
        }
        Ok(())
    }
}

// JSON form: [[deg_x, deg_y, "numerator", exponent], ...] sorted by degrees.
impl Serialize for BivariatePoly {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let rows: Vec<(u32, u32, String, u64)> = self
            .terms
            .iter()
            .map(|(&(a, b), c)| (a, b, c.numerator().to_string(), c.exponent()))
            .collect();
        rows.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for BivariatePoly {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let rows = Vec::<(u32, u32, String, u64)>::deserialize(deserializer)?;
        let mut p = BivariatePoly::zero();
        for (a, b, num, exp) in rows {
            let num: ExactInt = num.parse().map_err(serde::de::Error::custom)?;
            p.add_term(a, b, Dyadic::new(num, exp));
        }
        Ok(p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn t2() -> BivariatePoly {
        &BivariatePoly::x().shift(1, 0) + &BivariatePoly::y()
    }

    #[test]
    fn evaluation() {
        let one = Dyadic::one();
        assert_eq!(t2().eval(&one, &one), Dyadic::from(2));
        assert_eq!(t2().eval(&one, &-&one), Dyadic::zero());
        assert_eq!(BivariatePoly::zero().eval(&Dyadic::from(7), &Dyadic::half()), Dyadic::zero());
        assert_eq!(t2().eval_int(3, 2), Some(BigInt::from(11)));
    }

    #[test]
    fn no_zero_terms() {
        let p = &t2() - &BivariatePoly::y();
        assert_eq!(p, BivariatePoly::monomial(2, 0, Dyadic::one()));
        assert_eq!(p.len(), 1);
        assert!((&p - &p).is_zero());
        assert!(t2().scale(&Dyadic::zero()).is_zero());
    }

    #[test]
    fn display() {
        assert_eq!(t2().to_string(), "x^2 + y");
        let half = t2().scale(&Dyadic::half());
        assert_eq!(half.to_string(), "1/2 x^2 + 1/2 y");
        let p = &BivariatePoly::one() - &BivariatePoly::x().shift(0, 3).scale(&Dyadic::from(4));
        assert_eq!(p.to_string(), "-4 x y^3 + 1");
    }

    #[test]
    fn json_form() {
        let p = t2().scale(&Dyadic::half());
        assert_eq!(p.to_json(), r#"[[0,1,"1",1],[2,0,"1",1]]"#);
        assert_eq!(BivariatePoly::from_json(&p.to_json()).unwrap(), p);
        assert_eq!(BivariatePoly::zero().to_json(), "[]");
    }

    fn arb_poly() -> impl Strategy<Value = BivariatePoly> {
        prop::collection::vec((0u32..5, 0u32..5, -50i64..50, 0u64..4), 0..8).prop_map(|rows| {
            let mut p = BivariatePoly::zero();
            for (a, b, n, e) in rows {
                p.add_term(a, b, Dyadic::new(BigInt::from(n), e));
            }
            p
        })
    }

    proptest! {
        #[test]
        fn json_roundtrip(p in arb_poly()) {
            prop_assert_eq!(BivariatePoly::from_json(&p.to_json()).unwrap(), p);
        }

        #[test]
        fn eval_is_ring_hom(p in arb_poly(), q in arb_poly(), x in -3i64..4, y in -3i64..4) {
            let (x, y) = (Dyadic::from(x), Dyadic::from(y));
            prop_assert_eq!((&p * &q).eval(&x, &y), &p.eval(&x, &y) * &q.eval(&x, &y));
            prop_assert_eq!((&p + &q).eval(&x, &y), &p.eval(&x, &y) + &q.eval(&x, &y));
        }
    }
}
