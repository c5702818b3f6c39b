//! Closed forms for 2-adic (and p-adic) valuations of the involution
//! sequences, and the table that compares them with exact computation.

use std::fmt;

use num_bigint::BigInt;
use serde::Serialize;

use crate::algebra::{binomial, val2, ExactInt, Valuation};
use crate::sequences::Sequences;

/// Lower bound `⌊n/p⌋ - ⌊n/p²⌋` for the p-adic valuation of `τ_p(n)`.
pub fn tau_valuation_lower_bound(n: u64, p: u64) -> u64 {
    n / p - n / (p * p)
}

/// Exact 2-adic valuation of `t_n`: `⌊n/2⌋ - 2⌊n/4⌋ + ⌊(n+1)/4⌋`.
pub fn ord2_t_closed(n: u64) -> u64 {
    n / 2 - 2 * (n / 4) + (n + 1) / 4
}

/// 1 for odd `k`, else 0.
pub fn chi_odd(k: u64) -> u64 {
    k % 2
}

/// 1 for even `k` (including 0), else 0.
pub fn chi_even(k: u64) -> u64 {
    1 - k % 2
}

fn ord2_u64(k: u64) -> Valuation {
    if k == 0 {
        Valuation::Infinite
    } else {
        Valuation::Finite(k.trailing_zeros() as u64)
    }
}

/// Checks `ord_2(2^i C(k,i)) >= ord_2(k) + i - ord_2(i)` together with its two
/// consequences `>= ord_2(k) + 1` and, for `i >= 5`, `>= ord_2(k) + 3`.
///
/// Returns false for `k = 0` or `i = 0`, where the statement does not apply.
pub fn binomial_valuation_bound_holds(k: u64, i: u64) -> bool {
    if k == 0 || i == 0 {
        return false;
    }
    let lhs = val2(&(binomial(k, i) << i));
    let ok = ord2_u64(k).finite().unwrap();
    let oi = ord2_u64(i).finite().unwrap();
    let general = lhs >= Valuation::Finite(ok + i - oi);
    let weak = lhs >= Valuation::Finite(ok + 1);
    let strong = i < 5 || lhs >= Valuation::Finite(ok + 3);
    general && weak && strong
}

/// Predicted `ord_2(t_n(1,-1))`: `k + ⌊r/2⌋` unless `r = 2`, where it is
/// `k + 3 + ord_2(k)` (infinite at `n = 2`, since `t_2(1,-1) = 0`).
pub fn ord2_signed_closed(n: u64) -> Valuation {
    let (k, r) = (n / 4, n % 4);
    if r == 2 {
        ord2_u64(k) + (k + 3)
    } else {
        Valuation::Finite(k + r / 2)
    }
}

/// Predicted `ord_2(t_n^e)`; `None` for `n ≡ 1 (mod 4)`, which is open.
pub fn ord2_even_closed(n: u64) -> Option<Valuation> {
    let (k, r) = (n / 4, n % 4);
    match r {
        0 => Some(Valuation::Finite(k + chi_odd(k))),
        1 => None,
        _ => Some(Valuation::Finite(k)),
    }
}

/// Predicted `ord_2(t_n^o)`; `None` for `n ≡ 0 (mod 4)`, which is open.
pub fn ord2_odd_closed(n: u64) -> Option<Valuation> {
    let (k, r) = (n / 4, n % 4);
    match r {
        0 => None,
        1 => Some(ord2_u64(k) + (k + chi_even(k))),
        _ => Some(Valuation::Finite(k)),
    }
}

/// Number of even involutions, `(t_n(1,1) + t_n(1,-1)) / 2`.
pub fn t_even(n: u64) -> ExactInt {
    let mut s = Sequences::new();
    (s.t(n as usize) + s.t_signed(n as usize)) >> 1
}

/// Number of odd involutions, `(t_n(1,1) - t_n(1,-1)) / 2`.
pub fn t_odd(n: u64) -> ExactInt {
    let mut s = Sequences::new();
    (s.t(n as usize) - s.t_signed(n as usize)) >> 1
}

/// Even and odd involution counts for `0..=n`.
pub fn parity_counts(seq: &mut Sequences, n: usize) -> Vec<(ExactInt, ExactInt)> {
    let t = seq.t_prefix(n).to_vec();
    let s = seq.t_signed_prefix(n);
    t.iter()
        .zip(s)
        .map(|(a, b)| {
            let (e, o): (BigInt, BigInt) = (a + b, a - b);
            (e >> 1, o >> 1)
        })
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ValuationKind {
    T,
    TSigned,
    TEven,
    TOdd,
    Tau(u64),
}

impl fmt::Display for ValuationKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ValuationKind::T => f.write_str("t"),
            ValuationKind::TSigned => f.write_str("t_signed"),
            ValuationKind::TEven => f.write_str("t_even"),
            ValuationKind::TOdd => f.write_str("t_odd"),
            ValuationKind::Tau(p) => write!(f, "tau_{p}"),
        }
    }
}

/// A computed valuation next to its closed-form prediction, if any.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ValuationReport {
    pub n: u64,
    pub kind: ValuationKind,
    pub computed: Valuation,
    pub predicted: Option<Valuation>,
    pub matches: bool,
}

impl ValuationReport {
    pub fn new(n: u64, kind: ValuationKind, computed: Valuation, predicted: Option<Valuation>) -> Self {
        let matches = predicted == Some(computed);
        ValuationReport { n, kind, computed, predicted, matches }
    }

    /// True when a prediction exists and disagrees.
    pub fn is_violation(&self) -> bool {
        self.predicted.is_some() && !self.matches
    }
}

/// One row of the 2-adic table: valuations of `t_n`, `t_n(1,-1)`, `t_n^e`
/// and `t_n^o` for `n = 4k + r`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ValuationRow {
    pub n: u64,
    pub k: u64,
    pub r: u64,
    pub t: ValuationReport,
    pub signed: ValuationReport,
    pub even: ValuationReport,
    pub odd: ValuationReport,
}

impl ValuationRow {
    pub fn reports(&self) -> [&ValuationReport; 4] {
        [&self.t, &self.signed, &self.even, &self.odd]
    }

    pub fn violations(&self) -> impl Iterator<Item = &ValuationReport> {
        self.reports().into_iter().filter(|r| r.is_violation())
    }
}

/// Rows for every `n = 4k + r` with `k <= k_max`.
pub fn valuation_table(k_max: u64) -> Vec<ValuationRow> {
    valuation_table_with(&mut Sequences::new(), k_max)
}

pub fn valuation_table_with(seq: &mut Sequences, k_max: u64) -> Vec<ValuationRow> {
    let n_max = 4 * k_max as usize + 3;
    let t = seq.t_prefix(n_max).to_vec();
    let s = seq.t_signed_prefix(n_max).to_vec();
    let parity = parity_counts(seq, n_max);
    (0..=n_max as u64)
        .map(|n| {
            let i = n as usize;
            ValuationRow {
                n,
                k: n / 4,
                r: n % 4,
                t: ValuationReport::new(n, ValuationKind::T, val2(&t[i]), Some(Valuation::Finite(ord2_t_closed(n)))),
                signed: ValuationReport::new(n, ValuationKind::TSigned, val2(&s[i]), Some(ord2_signed_closed(n))),
                even: ValuationReport::new(n, ValuationKind::TEven, val2(&parity[i].0), ord2_even_closed(n)),
                odd: ValuationReport::new(n, ValuationKind::TOdd, val2(&parity[i].1), ord2_odd_closed(n)),
            }
        })
        .collect()
}
