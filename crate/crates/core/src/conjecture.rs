//! Scanner for the conjectured 2-adic constant `ρ` governing
//! `ord_2(t_{4k+1}^e) = k + χ_o(k) (ord_2(k + ρ) + 1)`.
//!
//! For odd `k` the exact valuation `v_k = ord_2(t_{4k+1}^e) - k - 1` must
//! equal `ord_2(k + ρ)`, which pins `ρ ≡ 2^(v_k) - k (mod 2^(v_k + 1))`.
//! For even `k` the valuation must be exactly `k`. The scan never claims
//! the conjecture holds; it reports the digits the data force and any
//! contradictions.

use serde::Serialize;

use crate::algebra::{val2, Valuation};
use crate::sequences::Sequences;

/// `ord_2(t_{4k+1}^e)`, computed exactly.
pub fn ord2_te_4k1(k: u64) -> Valuation {
    ord2_te_4k1_prefix(&mut Sequences::new(), k).pop().expect("non-empty")
}

/// `ord_2(t_{4j+1}^e)` for `j = 0..=k_max`.
pub fn ord2_te_4k1_prefix(seq: &mut Sequences, k_max: u64) -> Vec<Valuation> {
    let n_max = 4 * k_max as usize + 1;
    let t = seq.t_prefix(n_max).to_vec();
    let s = seq.t_signed_prefix(n_max);
    (0..=k_max as usize)
        .map(|k| {
            let n = 4 * k + 1;
            val2(&((&t[n] + &s[n]) >> 1))
        })
        .collect()
}

/// A data point: for odd `k`, `ord_2(k + ρ)` must equal `v`; for even `k`
/// the observed valuation must equal `k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Observation {
    pub k: u64,
    pub ord2_even_count: Valuation,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    /// Even `k` whose valuation is not `k`.
    EvenRow { k: u64, observed: Valuation },
    /// Odd `k` whose valuation is below `k + 1` (or infinite).
    OddRowTooSmall { k: u64, observed: Valuation },
    /// Odd `k` whose constraint disagrees with digits fixed by smaller `k`.
    DigitConflict { k: u64, digit: u32, expected: u8, found: u8 },
}

impl Violation {
    pub fn k(&self) -> u64 {
        match *self {
            Violation::EvenRow { k, .. } | Violation::OddRowTooSmall { k, .. } | Violation::DigitConflict { k, .. } => k,
        }
    }
}

/// Binary digits of `ρ` forced by the data, lowest first.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TwoAdicPrefix {
    pub k_max: u64,
    pub digits: Vec<u8>,
    /// First digit index no observation determines.
    pub undetermined_from: u32,
    /// Largest `k` such that every row up to it is consistent.
    pub confirmed_up_to_k: u64,
    pub violations: Vec<Violation>,
}

impl TwoAdicPrefix {
    pub fn is_consistent(&self) -> bool {
        self.violations.is_empty()
    }

    /// `Σ digits[i] 2^i`.
    pub fn value(&self) -> u128 {
        self.digits.iter().enumerate().map(|(i, &d)| (d as u128) << i).sum()
    }
}

/// Fit digits of `ρ` to the rows `k <= k_max`, reporting at most
/// `bit_budget` digits (all determined digits when `None`).
pub fn fit_rho(k_max: u64, bit_budget: Option<u32>) -> TwoAdicPrefix {
    fit_rho_with(&mut Sequences::new(), k_max, bit_budget)
}

pub fn fit_rho_with(seq: &mut Sequences, k_max: u64, bit_budget: Option<u32>) -> TwoAdicPrefix {
    let observations: Vec<Observation> = ord2_te_4k1_prefix(seq, k_max)
        .into_iter()
        .enumerate()
        .map(|(k, v)| Observation { k: k as u64, ord2_even_count: v })
        .collect();
    fit_observations(&observations, k_max, bit_budget)
}

/// Merge observations into a digit prefix. Observations are processed in
/// increasing `k`, whatever order they are given in.
pub fn fit_observations(observations: &[Observation], k_max: u64, bit_budget: Option<u32>) -> TwoAdicPrefix {
    let mut sorted = observations.to_vec();
    sorted.sort_by_key(|o| o.k);

    let mut digits: Vec<u8> = Vec::new();
    let mut violations = Vec::new();
    for obs in &sorted {
        let k = obs.k;
        if k % 2 == 0 {
            if obs.ord2_even_count != Valuation::Finite(k) {
                violations.push(Violation::EvenRow { k, observed: obs.ord2_even_count });
            }
            continue;
        }
        let v = match obs.ord2_even_count {
            Valuation::Finite(o) if o > k => (o - k - 1) as u32,
            observed => {
                violations.push(Violation::OddRowTooSmall { k, observed });
                continue;
            }
        };
        // ρ ≡ 2^v - k (mod 2^(v+1)), digits 0..=v
        let width = v + 1;
        let residue = residue_mod_pow2((1u128 << v) as i128 - k as i128, width);
        for i in 0..width {
            let bit = ((residue >> i) & 1) as u8;
            match digits.get(i as usize) {
                Some(&have) if have != bit => {
                    violations.push(Violation::DigitConflict { k, digit: i, expected: have, found: bit });
                    break;
                }
                Some(_) => {}
                None => digits.push(bit),
            }
        }
    }

    let undetermined_from = digits.len() as u32;
    if let Some(b) = bit_budget {
        digits.truncate(b as usize);
    }
    let confirmed_up_to_k = match violations.iter().map(Violation::k).min() {
        Some(0) => 0,
        Some(k) => k - 1,
        None => k_max,
    };
    TwoAdicPrefix { k_max, digits, undetermined_from, confirmed_up_to_k, violations }
}

fn residue_mod_pow2(x: i128, bits: u32) -> u128 {
    assert!(bits < 127, "constraint width {bits} too large");
    x.rem_euclid(1i128 << bits) as u128
}

/// Check the prefix against the odd rows: with `b` digits, a row whose
/// `v_k < b - 1` must see `ord_2(k + ρ) = v_k` exactly, otherwise at least
/// `v_k` (as far as `b` digits can tell).
pub fn prefix_explains(prefix: &TwoAdicPrefix, observations: &[Observation]) -> bool {
    let b = prefix.digits.len() as u32;
    if b == 0 || b > 120 {
        return b == 0;
    }
    let rho = prefix.value();
    observations.iter().filter(|o| o.k % 2 == 1).all(|o| {
        let Valuation::Finite(ord) = o.ord2_even_count else { return false };
        if ord <= o.k {
            return false;
        }
        let v = (ord - o.k - 1) as u32;
        if v >= b {
            return true;
        }
        let sum = (o.k as u128 + rho) % (1u128 << b);
        let seen = if sum == 0 { b } else { sum.trailing_zeros() };
        if v < b - 1 {
            seen == v
        } else {
            seen >= v
        }
    })
}
