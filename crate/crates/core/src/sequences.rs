//! Exact sequence engines.
//!
//! Recurrences for the involution numbers `t_n`, the counts `τ_p(n)` of
//! p-th roots of the identity, the weighted polynomials `t_n(x,y)` and
//! `g_n(x,y)`, and the odd factors `β_n`, together with the closed forms that
//! express `t_n`, `t_n(x,y)` and `β_n` as sums over graphs without doubled
//! edges. The closed forms are independent routes to the same numbers and
//! are cross-checked against the recurrences in tests.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::algebra::{binomial, factorial, is_prime, odd_part, odd_product_ratio, BivariatePoly, Dyadic, ExactInt};
use crate::valuations::ord2_t_closed;
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SequenceKind {
    T,
    Tau(u64),
    TPoly,
    TSigned,
    GPoly,
    GInt,
    GAlt,
    Beta,
}

impl fmt::Display for SequenceKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SequenceKind::T => f.write_str("t"),
            SequenceKind::Tau(p) => write!(f, "tau_{p}"),
            SequenceKind::TPoly => f.write_str("t_poly"),
            SequenceKind::TSigned => f.write_str("t_signed"),
            SequenceKind::GPoly => f.write_str("g_poly"),
            SequenceKind::GInt => f.write_str("g"),
            SequenceKind::GAlt => f.write_str("g_alt"),
            SequenceKind::Beta => f.write_str("beta"),
        }
    }
}

/// Append-only memo of a sequence indexed from zero. Entries never change
/// once written.
#[derive(Clone, Debug)]
pub struct SequenceCache<T> {
    kind: SequenceKind,
    values: Vec<T>,
}

impl<T: Clone> SequenceCache<T> {
    pub fn new(kind: SequenceKind) -> Self {
        SequenceCache { kind, values: Vec::new() }
    }

    pub fn kind(&self) -> SequenceKind {
        self.kind
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn prefix(&self) -> &[T] {
        &self.values
    }

    /// Grow until index `n` is present; `step` computes entry `i` from the
    /// entries before it.
    fn ensure(&mut self, n: usize, mut step: impl FnMut(&[T], usize) -> T) -> &[T] {
        while self.values.len() <= n {
            let i = self.values.len();
            let v = step(&self.values, i);
            self.values.push(v);
        }
        &self.values[..=n]
    }
}

/// Operations shared by scalar and polynomial coefficients so one recurrence
/// serves both.
trait Ring: Clone {
    fn zero() -> Self;
    fn add(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn times(&self, k: &BigInt) -> Self;
}

impl Ring for Dyadic {
    fn zero() -> Self {
        Dyadic::zero()
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn times(&self, k: &BigInt) -> Self {
        self * &Dyadic::from(k.clone())
    }
}

impl Ring for BivariatePoly {
    fn zero() -> Self {
        BivariatePoly::zero()
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn times(&self, k: &BigInt) -> Self {
        self.scale_int(k)
    }
}

/// Weights feeding the `g` recurrence: `x`, `y`, `(x^2+y)/2`, `xy`, `y^2`, `y^4`.
struct GWeights<R> {
    x: R,
    y: R,
    isolated: R,
    xy: R,
    y2: R,
    y4: R,
}

impl<R: Ring> GWeights<R> {
    fn new(x: R, y: R, half: R) -> Self {
        let isolated = x.mul(&x).add(&y).mul(&half);
        let xy = x.mul(&y);
        let y2 = y.mul(&y);
        let y4 = y2.mul(&y2);
        GWeights { x, y, isolated, xy, y2, y4 }
    }

    /// `g_m` from `g_0..g_{m-1}`; `g_0 = 1` must already be present.
    fn step(&self, prev: &[R], m: usize) -> R {
        let at = |j: isize| if j < 0 { R::zero() } else { prev[j as usize].clone() };
        let m = m as isize;
        if m % 2 == 1 {
            let n = (m - 1) / 2;
            self.x.mul(&at(2 * n)).add(&self.y.mul(&at(2 * n - 1)).times(&BigInt::from(n)))
        } else {
            let n = m / 2;
            let nm1 = (n - 1) as u64;
            let t0 = self.isolated.mul(&at(2 * n - 2));
            let t1 = self.xy.mul(&at(2 * n - 3)).times(&BigInt::from(nm1));
            let t2 = self.y2.mul(&at(2 * n - 4)).times(&(binomial(nm1, 2) * 2));
            let t3 = self.y4.mul(&at(2 * n - 8)).times(&(binomial(nm1, 3) * 3));
            t0.add(&t1).add(&t2).add(&t3)
        }
    }
}

/// Memoizing engine for every sequence in this module. Not shared across
/// threads; results are cloned out.
#[derive(Clone, Debug)]
pub struct Sequences {
    t: SequenceCache<ExactInt>,
    t_signed: SequenceCache<ExactInt>,
    t_poly: SequenceCache<BivariatePoly>,
    g_poly: SequenceCache<BivariatePoly>,
    g_one: SequenceCache<Dyadic>,
    g_alt: SequenceCache<Dyadic>,
    beta: SequenceCache<ExactInt>,
    tau: BTreeMap<u64, SequenceCache<ExactInt>>,
}

impl Default for Sequences {
    fn default() -> Self {
        Self::new()
    }
}

fn involution_step(prev: &[ExactInt], n: usize, y: i64) -> ExactInt {
    if n < 2 {
        return BigInt::one();
    }
    &prev[n - 1] + &prev[n - 2] * BigInt::from(y) * (n - 1)
}

fn integral(d: Dyadic, what: &str) -> ExactInt {
    d.to_integer().unwrap_or_else(|| panic!("{what} evaluated to the non-integer {d}"))
}

impl Sequences {
    pub fn new() -> Self {
        Sequences {
            t: SequenceCache::new(SequenceKind::T),
            t_signed: SequenceCache::new(SequenceKind::TSigned),
            t_poly: SequenceCache::new(SequenceKind::TPoly),
            g_poly: SequenceCache::new(SequenceKind::GPoly),
            g_one: SequenceCache::new(SequenceKind::GInt),
            g_alt: SequenceCache::new(SequenceKind::GAlt),
            beta: SequenceCache::new(SequenceKind::Beta),
            tau: BTreeMap::new(),
        }
    }

    /// `t_0..=t_n` by `t_n = t_{n-1} + (n-1) t_{n-2}`.
    pub fn t_prefix(&mut self, n: usize) -> &[ExactInt] {
        self.t.ensure(n, |prev, i| involution_step(prev, i, 1))
    }

    pub fn t(&mut self, n: usize) -> ExactInt {
        self.t_prefix(n)[n].clone()
    }

    /// `t_n(1,-1)` for `0..=n`, the signed count of involutions.
    pub fn t_signed_prefix(&mut self, n: usize) -> &[ExactInt] {
        self.t_signed.ensure(n, |prev, i| involution_step(prev, i, -1))
    }

    pub fn t_signed(&mut self, n: usize) -> ExactInt {
        self.t_signed_prefix(n)[n].clone()
    }

    pub fn tau_prefix(&mut self, n: usize, p: u64) -> Result<&[ExactInt]> {
        if !is_prime(p) {
            return Err(Error::arg(format!("{p} is not prime")));
        }
        let cache = self.tau.entry(p).or_insert_with(|| SequenceCache::new(SequenceKind::Tau(p)));
        let p = p as usize;
        Ok(cache.ensure(n, |prev, i| {
            if i < p {
                return BigInt::one();
            }
            // choose the p-cycle through i: (i-1)(i-2)...(i-p+1) ordered picks
            let picks = ((i - p + 1)..i).fold(BigInt::one(), |acc, j| acc * j);
            &prev[i - 1] + picks * &prev[i - p]
        }))
    }

    pub fn tau(&mut self, n: usize, p: u64) -> Result<ExactInt> {
        Ok(self.tau_prefix(n, p)?[n].clone())
    }

    pub fn t_poly_prefix(&mut self, n: usize) -> &[BivariatePoly] {
        self.t_poly.ensure(n, |prev, i| match i {
            0 => BivariatePoly::one(),
            1 => BivariatePoly::x(),
            _ => {
                let a = prev[i - 1].shift(1, 0);
                let b = prev[i - 2].shift(0, 1).scale_int(&BigInt::from(i - 1));
                &a + &b
            }
        })
    }

    pub fn t_poly(&mut self, n: usize) -> BivariatePoly {
        self.t_poly_prefix(n)[n].clone()
    }

    pub fn g_poly_prefix(&mut self, n: usize) -> &[BivariatePoly] {
        let w = GWeights::new(BivariatePoly::x(), BivariatePoly::y(), BivariatePoly::monomial(0, 0, Dyadic::half()));
        self.g_poly.ensure(n, |prev, i| if i == 0 { BivariatePoly::one() } else { w.step(prev, i) })
    }

    /// `g_n(x,y)`; zero for negative `n`.
    pub fn g_poly(&mut self, n: i64) -> BivariatePoly {
        if n < 0 {
            return BivariatePoly::zero();
        }
        self.g_poly_prefix(n as usize)[n as usize].clone()
    }

    /// `g_n(1,1)` for `0..=n`, by the same recurrence run on numbers.
    pub fn g_int_prefix(&mut self, n: usize) -> Vec<ExactInt> {
        let w = GWeights::new(Dyadic::one(), Dyadic::one(), Dyadic::half());
        let vals = self.g_one.ensure(n, |prev, i| if i == 0 { Dyadic::one() } else { w.step(prev, i) });
        vals.iter().map(|d| integral(d.clone(), "g_n(1,1)")).collect()
    }

    pub fn g_int(&mut self, n: usize) -> ExactInt {
        self.g_int_prefix(n).swap_remove(n)
    }

    /// `g_n(1,-1)` for `0..=n`.
    pub fn g_alt_prefix(&mut self, n: usize) -> Vec<ExactInt> {
        let w = GWeights::new(Dyadic::one(), Dyadic::from(-1), Dyadic::half());
        let vals = self.g_alt.ensure(n, |prev, i| if i == 0 { Dyadic::one() } else { w.step(prev, i) });
        vals.iter().map(|d| integral(d.clone(), "g_n(1,-1)")).collect()
    }

    pub fn g_alt(&mut self, n: usize) -> ExactInt {
        self.g_alt_prefix(n).swap_remove(n)
    }

    /// Odd parts of `t_0..=t_n`.
    pub fn beta_prefix(&mut self, n: usize) -> &[ExactInt] {
        let t = self.t.ensure(n, |prev, i| involution_step(prev, i, 1));
        self.beta.ensure(n, |_, i| odd_part(&t[i]).expect("t_n is positive"))
    }

    pub fn beta(&mut self, n: usize) -> ExactInt {
        self.beta_prefix(n)[n].clone()
    }

    /// `t_n` as a sum over graphs without doubled edges: with `n = 4k + r`,
    /// `2^(k+⌊r/2⌋) Σ_i 2^i C(k,i) (1;2)_{k+⌊r/2⌋}/(1;2)_{i+⌊r/2⌋} g_{4i+r}`.
    pub fn t_from_graph_sum(&mut self, n: usize) -> ExactInt {
        let (k, r) = (n / 4, n % 4);
        let g = self.g_int_prefix(n);
        let half_r = (r / 2) as u64;
        let sum = (0..=k).fold(BigInt::zero(), |acc, i| {
            let term = binomial(k as u64, i as u64)
                * odd_product_ratio(i as u64 + half_r, k as u64 + half_r)
                * &g[4 * i + r];
            acc + (term << i)
        });
        sum << (k as u64 + half_r)
    }

    /// The polynomial version of [`Sequences::t_from_graph_sum`]; the term
    /// for `i` carries the extra factor `y^(2k-2i)` from the doubled edges.
    pub fn t_poly_from_graph_sum(&mut self, n: usize) -> BivariatePoly {
        let (k, r) = (n / 4, n % 4);
        let half_r = (r / 2) as u64;
        let g = self.g_poly_prefix(n).to_vec();
        let mut acc = BivariatePoly::zero();
        for i in 0..=k {
            let c = (binomial(k as u64, i as u64) * odd_product_ratio(i as u64 + half_r, k as u64 + half_r)) << i;
            acc = &acc + &g[4 * i + r].shift(0, 2 * (k - i) as u32).scale_int(&c);
        }
        acc.scale_int(&(BigInt::one() << (k as u64 + half_r)))
    }

    /// `β_n` from the graph sum, with the factor `2^(i - δ_{r,3})` taken
    /// literally over the dyadics and the total required to be an integer.
    pub fn beta_from_graph_sum(&mut self, n: usize) -> ExactInt {
        let (k, r) = (n / 4, n % 4);
        let half_r = (r / 2) as u64;
        let delta = i64::from(r == 3);
        let g = self.g_int_prefix(n);
        let mut acc = Dyadic::zero();
        for i in 0..=k {
            let c = binomial(k as u64, i as u64) * odd_product_ratio(i as u64 + half_r, k as u64 + half_r) * &g[4 * i + r];
            acc = acc + Dyadic::from(c).shl(i as i64 - delta);
        }
        integral(acc, "beta closed form")
    }

    /// Recompute every cached prefix from scratch and compare.
    pub fn self_test(&self) -> bool {
        let mut fresh = Sequences::new();
        fn same<T: PartialEq>(a: &[T], b: &[T]) -> bool {
            a == b
        }
        let n = |c: usize| c.saturating_sub(1);
        (self.t.is_empty() || same(self.t.prefix(), fresh.t_prefix(n(self.t.len()))))
            && (self.t_signed.is_empty() || same(self.t_signed.prefix(), fresh.t_signed_prefix(n(self.t_signed.len()))))
            && (self.t_poly.is_empty() || same(self.t_poly.prefix(), fresh.t_poly_prefix(n(self.t_poly.len()))))
            && (self.g_poly.is_empty() || same(self.g_poly.prefix(), fresh.g_poly_prefix(n(self.g_poly.len()))))
            && (self.beta.is_empty() || same(self.beta.prefix(), fresh.beta_prefix(n(self.beta.len()))))
            && (self.g_one.is_empty() || {
                let _ = fresh.g_int_prefix(n(self.g_one.len()));
                same(self.g_one.prefix(), fresh.g_one.prefix())
            })
            && (self.g_alt.is_empty() || {
                let _ = fresh.g_alt_prefix(n(self.g_alt.len()));
                same(self.g_alt.prefix(), fresh.g_alt.prefix())
            })
            && self.tau.iter().all(|(&p, c)| {
                c.is_empty() || fresh.tau_prefix(n(c.len()), p).map(|f| same(c.prefix(), f)).unwrap_or(false)
            })
    }
}

/// Number of involutions of `n` points.
pub fn t_rec(n: u64) -> ExactInt {
    Sequences::new().t(n as usize)
}

/// `Σ_{2i+j=n} n! / (2^i i! j!)`, counting involutions by their number of
/// transpositions.
pub fn t_direct(n: u64) -> ExactInt {
    let nf = factorial(n);
    (0..=n / 2).fold(BigInt::zero(), |acc, i| {
        let den = (factorial(i) << i) * factorial(n - 2 * i);
        let (q, r) = nf.div_rem(&den);
        debug_assert!(r.is_zero());
        acc + q
    })
}

/// Number of `π` in `S_n` with `π^p = 1`, by removing the cycle through `n`:
/// `τ_p(n) = τ_p(n-1) + (n-1)(n-2)...(n-p+1) τ_p(n-p)`.
pub fn tau_p(n: u64, p: u64) -> Result<ExactInt> {
    Sequences::new().tau(n as usize, p)
}

/// `t_n(x,y)`: involutions weighted by `x^(fixed points) y^(transpositions)`.
pub fn t_poly(n: u64) -> BivariatePoly {
    Sequences::new().t_poly(n as usize)
}

pub fn t_signed(n: u64) -> ExactInt {
    Sequences::new().t_signed(n as usize)
}

pub fn g_poly(n: i64) -> BivariatePoly {
    Sequences::new().g_poly(n)
}

pub fn g_int(n: u64) -> ExactInt {
    Sequences::new().g_int(n as usize)
}

pub fn g_alt(n: u64) -> ExactInt {
    Sequences::new().g_alt(n as usize)
}

pub fn t_from_graph_sum(n: u64) -> ExactInt {
    Sequences::new().t_from_graph_sum(n as usize)
}

pub fn t_poly_from_graph_sum(n: u64) -> BivariatePoly {
    Sequences::new().t_poly_from_graph_sum(n as usize)
}

/// Odd part of `t_n`.
pub fn beta(n: u64) -> ExactInt {
    Sequences::new().beta(n as usize)
}

pub fn beta_from_graph_sum(n: u64) -> ExactInt {
    Sequences::new().beta_from_graph_sum(n as usize)
}

/// `β_{n+1}` from `β_{n-1}` and `β_n`, writing `h(m)` for the 2-adic
/// valuation of `t_m`:
/// `β_{n+1} = 2^(h(n)-h(n+1)) β_n + 2^(h(n-1)-h(n+1)) n β_{n-1}`.
pub fn beta_step(n: u64, prev: &ExactInt, curr: &ExactInt) -> Result<ExactInt> {
    if n == 0 {
        return Err(Error::arg("beta_step needs n >= 1"));
    }
    let h = |m: u64| ord2_t_closed(m) as i64;
    let a = Dyadic::from(curr.clone()).shl(h(n) - h(n + 1));
    let b = Dyadic::from(prev * n).shl(h(n - 1) - h(n + 1));
    (a + b)
        .to_integer()
        .ok_or_else(|| Error::arg(format!("inputs at n = {n} are not consecutive odd factors")))
}

/// One emitted row: index and decimal value.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SequenceRow {
    pub n: u64,
    pub value: String,
}
