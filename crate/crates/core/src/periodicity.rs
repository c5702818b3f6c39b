//! Eventual periodicity of `t_n mod m` and `β_n mod 2^s`.
//!
//! `t_n mod m` is driven by the finite-state recurrence on
//! `(n mod m, t_n mod m, t_{n+1} mod m)`, so a repeated state certifies the
//! period. Minimal period and preperiod are then found by shrinking, and
//! every rejected candidate is backed by a stored counterexample.

use std::collections::HashMap;
use std::hash::Hash;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive};
use serde::Serialize;

use crate::algebra::odd_product;
use crate::sequences::Sequences;
use crate::{Error, Result};

/// Largest window any detection run will scan.
pub const MAX_WINDOW: u64 = 10_000_000;

/// Evidence that a shorter period or an earlier start does not work:
/// `seq[index] != seq[index + shift]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    NotAPeriod { divisor: u64, index: u64, value: u64, shifted: u64 },
    PreperiodBoundary { index: u64, value: u64, shifted: u64 },
}

impl Witness {
    fn index_and_shifted(&self) -> (u64, u64, u64) {
        match *self {
            Witness::NotAPeriod { index, value, shifted, .. } | Witness::PreperiodBoundary { index, value, shifted } => {
                (index, value, shifted)
            }
        }
    }

    /// Whether the mismatch is really present in `seq`, where `period` is
    /// the shift used by a preperiod witness.
    fn holds(&self, seq: &[u64], period: u64) -> bool {
        let shift = match *self {
            Witness::NotAPeriod { divisor, .. } => divisor,
            Witness::PreperiodBoundary { .. } => period,
        };
        let (index, value, shifted) = self.index_and_shifted();
        value != shifted
            && seq.get(index as usize) == Some(&value)
            && seq.get((index + shift) as usize) == Some(&shifted)
    }
}

/// Minimal preperiod and period of an eventually periodic sequence.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PeriodReport {
    pub modulus: u64,
    pub preperiod: u64,
    pub period: u64,
    pub window_checked: u64,
    pub witnesses: Vec<Witness>,
}

impl PeriodReport {
    /// Re-check the report against a (fresh) copy of the sequence: the tail
    /// repeats with `period` and every witness is a real mismatch.
    pub fn verify(&self, seq: &[u64]) -> bool {
        let (pre, per) = (self.preperiod as usize, self.period as usize);
        if seq.len() < pre + per {
            return false;
        }
        let periodic = (pre..seq.len() - per).all(|n| seq[n] == seq[n + per]);
        let witnesses_ok = self.witnesses.iter().all(|w| w.holds(seq, self.period));
        periodic && witnesses_ok
    }
}

fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n % d == 0 {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// Shrink a known `(preperiod, period)` pair to the minimal one.
///
/// `seq` must repeat with `period` from `preperiod` on and contain at least
/// `preperiod + 2 * period` terms.
fn minimize(seq: &[u64], modulus: u64, preperiod: usize, period: usize, window: u64) -> PeriodReport {
    debug_assert!(seq.len() >= preperiod + 2 * period);
    let cycle = preperiod..preperiod + period;
    let mismatch = |d: usize| cycle.clone().find(|&n| seq[n] != seq[n + d]);
    let best = divisors(period as u64)
        .into_iter()
        .map(|d| d as usize)
        .find(|&d| mismatch(d).is_none())
        .expect("the period itself always works");

    let mut witnesses = Vec::new();
    for q in divisors(best as u64).into_iter().filter(|&q| q < best as u64) {
        let n = mismatch(q as usize).expect("a smaller period would have been chosen");
        witnesses.push(Witness::NotAPeriod {
            divisor: q,
            index: n as u64,
            value: seq[n],
            shifted: seq[n + q as usize],
        });
    }

    let mut start = preperiod;
    while start > 0 && seq[start - 1] == seq[start - 1 + best] {
        start -= 1;
    }
    if start > 0 {
        witnesses.push(Witness::PreperiodBoundary {
            index: start as u64 - 1,
            value: seq[start - 1],
            shifted: seq[start - 1 + best],
        });
    }
    PeriodReport { modulus, preperiod: start as u64, period: best as u64, window_checked: window, witnesses }
}

/// Detect the eventual period of a sequence produced by a finite-state
/// process. `terms` yields `(state, value)` where the state determines all
/// later values. At most `window` terms are examined before giving up.
pub fn detect_period<S, I>(terms: I, modulus: u64, window: u64) -> Result<PeriodReport>
where
    S: Hash + Eq,
    I: IntoIterator<Item = (S, u64)>,
{
    let mut seen: HashMap<S, usize> = HashMap::new();
    let mut values = Vec::new();
    let mut iter = terms.into_iter();
    let mut hit = None;
    for j in 0..window as usize {
        let Some((state, value)) = iter.next() else { break };
        values.push(value);
        if let Some(&i) = seen.get(&state) {
            hit = Some((i, j));
            break;
        }
        seen.insert(state, j);
    }
    let Some((i, j)) = hit else {
        return Err(Error::Inconclusive(format!(
            "no repeated state within {} terms (modulus {modulus})",
            values.len()
        )));
    };
    let period = j - i;
    // the repeat certifies periodicity; extend by one more cycle for witnesses
    while values.len() < i + 2 * period {
        match iter.next() {
            Some((_, v)) => values.push(v),
            None => {
                let n = values.len();
                values.push(values[n - period]);
            }
        }
    }
    Ok(minimize(&values, modulus, i, period, values.len() as u64))
}

/// Minimal period report for a finite window of values when a candidate
/// period is known to be some period of the tail. The candidate must be
/// confirmed across at least two full cycles of the window.
pub fn period_with_candidate(seq: &[u64], modulus: u64, candidate: u64) -> Result<PeriodReport> {
    let c = candidate as usize;
    if c == 0 || seq.len() < 2 * c {
        return Err(Error::Inconclusive(format!("window of {} terms too short for period {candidate}", seq.len())));
    }
    let start = (0..seq.len() - c).rev().find(|&n| seq[n] != seq[n + c]).map_or(0, |n| n + 1);
    if seq.len() < start + 2 * c {
        return Err(Error::Inconclusive(format!(
            "candidate period {candidate} confirmed only from index {start} in a window of {}",
            seq.len()
        )));
    }
    Ok(minimize(seq, modulus, start, c, seq.len() as u64))
}

/// Default scan window for `t_n mod m`: `min(m^3 + 4m, 10^7)`.
pub fn default_window(m: u64) -> u64 {
    m.saturating_pow(3).saturating_add(4 * m).min(MAX_WINDOW)
}

/// States `(n mod m, t_n mod m, t_{n+1} mod m)` paired with `t_n mod m`.
pub fn t_mod_terms(m: u64) -> impl Iterator<Item = ((u64, u64, u64), u64)> {
    assert!(m > 0, "modulus must be positive");
    let mut state = (0u64, 1 % m, 1 % m);
    std::iter::from_fn(move || {
        let (n, a, b) = state;
        let next = (b as u128 + ((n + 1) % m) as u128 * a as u128) % m as u128;
        state = ((n + 1) % m, b, next as u64);
        Some(((n, a, b), a))
    })
}

/// `t_0..t_{len-1}` reduced mod `m`.
pub fn t_mod_sequence(m: u64, len: usize) -> Vec<u64> {
    t_mod_terms(m).take(len).map(|(_, v)| v).collect()
}

pub fn detect_t_period(m: u64, window: u64) -> Result<PeriodReport> {
    if m == 0 {
        return Err(Error::arg("modulus must be positive"));
    }
    detect_period(t_mod_terms(m), m, window)
}

/// For odd `m`, `t_n mod m` must be purely periodic with smallest period `m`.
pub fn verify_odd_modulus(m: u64, window: u64) -> Result<bool> {
    if m == 0 || m % 2 == 0 {
        return Err(Error::arg(format!("modulus {m} is not odd and positive")));
    }
    let report = detect_t_period(m, window)?;
    Ok(report.preperiod == 0 && report.period == m)
}

/// Detected period next to the expected one.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PeriodCheck {
    pub report: PeriodReport,
    pub expected_preperiod: u64,
    pub expected_period: u64,
    pub matches: bool,
}

impl PeriodCheck {
    fn new(report: PeriodReport, expected_preperiod: u64, expected_period: u64) -> Self {
        let matches = report.preperiod == expected_preperiod && report.period == expected_period;
        PeriodCheck { report, expected_preperiod, expected_period, matches }
    }
}

/// Expected `(preperiod, period)` of `t_n mod m`: `(0, m)` for odd `m`,
/// `(4k - 2, l)` for `m = 2^k l` with `l` odd and `k >= 1`.
pub fn expected_t_period(m: u64) -> (u64, u64) {
    let k = m.trailing_zeros() as u64;
    if k == 0 {
        (0, m)
    } else {
        (4 * k - 2, m >> k)
    }
}

/// For even `m = 2^k l`, compare the detected behaviour with `(4k-2, l)`.
pub fn verify_even_modulus(m: u64, window: u64) -> Result<PeriodCheck> {
    if m == 0 || m % 2 == 1 {
        return Err(Error::arg(format!("modulus {m} is not even and positive")));
    }
    let report = detect_t_period(m, window)?;
    let (pre, per) = expected_t_period(m);
    Ok(PeriodCheck::new(report, pre, per))
}

/// `(1;2)_{2^(s-1)} ≡ 1 (mod 2^s)`.
pub fn oddfac_congruence(s: u32) -> Result<bool> {
    if s < 3 {
        return Err(Error::arg(format!("s = {s} is below 3")));
    }
    let modulus = BigInt::one() << s;
    Ok(odd_product(1u64 << (s - 1)).mod_floor(&modulus).is_one())
}

/// `β_0..β_{len-1}` reduced mod `2^s`, from exact `t_n`.
pub fn beta_mod_sequence(seq: &mut Sequences, s: u32, len: usize) -> Vec<u64> {
    if len == 0 {
        return Vec::new();
    }
    let modulus = BigInt::one() << s;
    seq.beta_prefix(len - 1)
        .iter()
        .map(|b| b.mod_floor(&modulus).to_u64().expect("residue below 2^s"))
        .collect()
}

/// `β_{n + 2^(s+1)} ≡ β_n (mod 2^s)` for all `n <= n_max`.
pub fn beta_shift_congruence(s: u32, n_max: usize) -> Result<bool> {
    if s < 3 {
        return Err(Error::arg(format!("s = {s} is below 3")));
    }
    let shift = 1usize << (s + 1);
    let b = beta_mod_sequence(&mut Sequences::new(), s, n_max + shift + 1);
    Ok((0..=n_max).all(|n| b[n] == b[n + shift]))
}

/// Smallest period of `β_n mod 2^s`. Candidates are the divisors of
/// `2^(max(s,3)+1)`, confirmed over three full cycles of exact values.
pub fn beta_period(s: u32) -> Result<PeriodReport> {
    beta_period_with(&mut Sequences::new(), s)
}

pub fn beta_period_with(seq: &mut Sequences, s: u32) -> Result<PeriodReport> {
    if s == 0 || s > 40 {
        return Err(Error::arg(format!("s = {s} out of range 1..=40")));
    }
    let candidate = 1u64 << (s.max(3) + 1);
    let values = beta_mod_sequence(seq, s, 3 * candidate as usize);
    period_with_candidate(&values, 1 << s, candidate)
}

/// `β_{2^s+2} ≢ β_2 (mod 2^s)`, the mismatch showing that `2^s` is not a
/// period.
///
/// The difference is `2^(s-1)` for `s >= 4` but only `2` at `s = 3`, so only
/// the non-congruence is asserted.
pub fn beta_non_period_witness(seq: &mut Sequences, s: u32) -> bool {
    beta_non_period_residue(seq, s) != 0
}

/// `(β_{2^s+2} - β_2) mod 2^s`.
pub fn beta_non_period_residue(seq: &mut Sequences, s: u32) -> u64 {
    let idx = (1usize << s) + 2;
    let b = seq.beta_prefix(idx).to_vec();
    let modulus = BigInt::one() << s;
    (&b[idx] - &b[2]).mod_floor(&modulus).to_u64().expect("residue below 2^s")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn divisor_lists() {
        assert_eq!(divisors(12), vec![1, 2, 3, 4, 6, 12]);
        assert_eq!(divisors(1), vec![1]);
        assert_eq!(divisors(16), vec![1, 2, 4, 8, 16]);
    }

    #[test]
    fn t_mod_examples() {
        assert_eq!(t_mod_sequence(3, 9), vec![1, 1, 2, 1, 1, 2, 1, 1, 2]);
        let r = detect_t_period(3, default_window(3)).unwrap();
        assert_eq!((r.preperiod, r.period), (0, 3));
        let r = detect_t_period(4, default_window(4)).unwrap();
        // 4 = 2^2 with odd part 1: t_5 = 26 is the last term not divisible by 4
        assert_eq!((r.preperiod, r.period), (6, 1));
        assert!(r.witnesses.contains(&Witness::PreperiodBoundary { index: 5, value: 2, shifted: 0 }));
    }

    #[test]
    fn constant_sequence() {
        let r = detect_period(std::iter::repeat(((), 3u64)), 5, 100).unwrap();
        assert_eq!((r.preperiod, r.period), (0, 1));
        assert!(r.witnesses.is_empty());
    }

    #[test]
    fn inconclusive_when_window_short() {
        let counting = (0u64..).map(|n| (n, n % 7));
        assert!(matches!(detect_period(counting, 7, 50), Err(Error::Inconclusive(_))));
        assert!(matches!(detect_t_period(9, 5), Err(Error::Inconclusive(_))));
    }

    #[test]
    fn odd_moduli() {
        assert!(verify_odd_modulus(3, default_window(3)).unwrap());
        assert!(verify_odd_modulus(1, default_window(1)).unwrap());
        assert!(verify_odd_modulus(15, default_window(15)).unwrap());
        assert!(verify_odd_modulus(4, 100).is_err());
    }

    #[test]
    fn even_moduli() {
        for (m, pre, per) in [(2, 2, 1), (12, 6, 3), (8, 10, 1)] {
            let c = verify_even_modulus(m, default_window(m)).unwrap();
            assert!(c.matches, "m={m}: {c:?}");
            assert_eq!((c.report.preperiod, c.report.period), (pre, per));
        }
        assert!(verify_even_modulus(5, 100).is_err());
    }

    #[test]
    fn reports_reverify() {
        for m in [6, 9, 20, 45] {
            let r = detect_t_period(m, default_window(m)).unwrap();
            let fresh = t_mod_sequence(m, 4 * (r.preperiod + r.period) as usize + 10);
            assert!(r.verify(&fresh), "m={m}");
        }
    }

    #[test]
    fn modular_matches_exact() {
        let mut s = Sequences::new();
        let exact = s.t_prefix(2000).to_vec();
        for m in [2u64, 3, 7, 64, 100, 511, 512] {
            let modular = t_mod_sequence(m, 2001);
            for (n, t) in exact.iter().enumerate() {
                assert_eq!(BigInt::from(modular[n]), t % m, "m={m} n={n}");
            }
        }
    }

    #[test]
    fn odd_products_mod_powers_of_two() {
        assert!(oddfac_congruence(3).unwrap());
        assert_eq!(odd_product(4), BigInt::from(105));
        assert!(oddfac_congruence(4).unwrap());
        assert_eq!(odd_product(8), BigInt::from(2_027_025));
        assert!(oddfac_congruence(6).unwrap());
        assert!(oddfac_congruence(2).is_err());
    }

    #[test]
    fn beta_congruences() {
        assert!(beta_shift_congruence(3, 64).unwrap());
        assert!(beta_shift_congruence(4, 128).unwrap());
        let mut s = Sequences::new();
        assert_eq!(s.beta(16) % 8, BigInt::from(1));
        assert!(beta_shift_congruence(2, 10).is_err());
    }

    #[test]
    fn beta_periods() {
        for s in 3..=5u32 {
            let r = beta_period(s).unwrap();
            assert_eq!((r.preperiod, r.period), (0, 1 << (s + 1)), "s={s}");
            let fresh = beta_mod_sequence(&mut Sequences::new(), s, 3 << (s + 1));
            assert!(r.verify(&fresh));
        }
        // nothing is claimed for s < 3; the scan still reports something
        assert!(beta_period(1).is_ok());
        assert!(beta_period(2).is_ok());
    }

    #[test]
    fn beta_half_shift_residues() {
        let mut seq = Sequences::new();
        assert_eq!(beta_non_period_residue(&mut seq, 3), 2);
        for s in 4..=7 {
            assert_eq!(beta_non_period_residue(&mut seq, s), 1 << (s - 1), "s = {s}");
        }
        assert!((3..=7).all(|s| beta_non_period_witness(&mut seq, s)));
    }
}
