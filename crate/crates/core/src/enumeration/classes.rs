use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::Permutation;
use crate::algebra::{factorial, is_prime, ExactInt};
use crate::{Error, Result};

/// A cycle whose entries are block labels and may repeat.
///
/// Stored as its lexicographically least rotation. Reflections are distinct:
/// `(4,5,6)` and `(4,6,5)` are different cycles.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct LabeledCycle {
    entries: Vec<u32>,
}

impl LabeledCycle {
    pub fn new(entries: Vec<u32>) -> Self {
        let best = (0..entries.len())
            .map(|s| entries[s..].iter().chain(&entries[..s]).copied().collect::<Vec<_>>())
            .min()
            .unwrap_or_default();
        LabeledCycle { entries: best }
    }

    pub fn entries(&self) -> &[u32] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// All entries equal (a type A cycle when the length is p).
    pub fn is_constant(&self) -> bool {
        self.entries.windows(2).all(|w| w[0] == w[1])
    }
}

impl fmt::Display for LabeledCycle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.entries.iter().map(u32::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Multiset of labeled cycles: cycle -> multiplicity.
pub type CycleMultiset = BTreeMap<LabeledCycle, u32>;

/// Block label of the one-indexed point `i` for blocks of size `p`.
pub fn block_label(i: u32, p: u32) -> u32 {
    (i - 1) / p + 1
}

fn check_prime(p: u32) -> Result<()> {
    if is_prime(p as u64) {
        Ok(())
    } else {
        Err(Error::arg(format!("{p} is not prime")))
    }
}

/// Apply the block label map entrywise to the cycles of `pi`.
pub fn label_map(pi: &Permutation, p: u32) -> Result<CycleMultiset> {
    check_prime(p)?;
    if !pi.is_pth_root(p) {
        return Err(Error::arg(format!("{pi} does not satisfy π^{p} = 1")));
    }
    let mut out = CycleMultiset::new();
    for cycle in pi.cycles() {
        let labels = cycle.iter().map(|&i| block_label(i, p)).collect();
        *out.entry(LabeledCycle::new(labels)).or_insert(0) += 1;
    }
    Ok(out)
}

/// Key of the coarse partition of `S_{n,p}`: the labels whose whole block is
/// either one constant p-cycle or p fixed points, plus the remaining labeled
/// cycles with multiplicities.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RefinedClass {
    pub bag: BTreeSet<u32>,
    pub cycles: CycleMultiset,
}

#[derive(Serialize, Deserialize)]
struct RefinedClassRepr {
    bag: Vec<u32>,
    cycles: Vec<(Vec<u32>, u32)>,
}

impl Serialize for RefinedClass {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        RefinedClassRepr {
            bag: self.bag.iter().copied().collect(),
            cycles: self.cycles.iter().map(|(c, &m)| (c.entries.clone(), m)).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for RefinedClass {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let repr = RefinedClassRepr::deserialize(d)?;
        let mut cycles = CycleMultiset::new();
        for (entries, m) in repr.cycles {
            *cycles.entry(LabeledCycle::new(entries)).or_insert(0) += m;
        }
        Ok(RefinedClass { bag: repr.bag.into_iter().collect(), cycles })
    }
}

impl fmt::Display for RefinedClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let bag: Vec<String> = self.bag.iter().map(u32::to_string).collect();
        let cycles: Vec<String> = self
            .cycles
            .iter()
            .map(|(c, &m)| if m == 1 { c.to_string() } else { format!("{c}^{m}") })
            .collect();
        write!(f, "{{{}; {}}}", bag.join(","), cycles.join(","))
    }
}

pub fn refined_class(pi: &Permutation, p: u32) -> Result<RefinedClass> {
    let labels = label_map(pi, p)?;
    let mut class = RefinedClass::default();
    for (cycle, m) in labels {
        let whole_block = cycle.is_constant()
            && ((cycle.len() == p as usize && m == 1) || (cycle.len() == 1 && m == p));
        if whole_block {
            class.bag.insert(cycle.entries[0]);
        } else {
            class.cycles.insert(cycle, m);
        }
    }
    Ok(class)
}

impl RefinedClass {
    /// Check the structural conditions a class of `S_{n,p}` satisfies.
    pub fn validate(&self, p: u32, n: u32) -> Result<()> {
        check_prime(p)?;
        let (t, r) = (n / p, n % p);
        let bad = |msg: String| Err(Error::arg(format!("class {self} inconsistent with n = {n}, p = {p}: {msg}")));
        if let Some(&s) = self.bag.iter().find(|&&s| s == 0 || s > t) {
            return bad(format!("bag label {s} outside 1..{t}"));
        }
        let mut counts: BTreeMap<u32, u32> = BTreeMap::new();
        for (cycle, &m) in &self.cycles {
            let len = cycle.len() as u32;
            if m == 0 {
                return bad(format!("zero multiplicity for {cycle}"));
            }
            if len == 1 && m >= p {
                return bad(format!("1-cycle {cycle} has multiplicity {m} >= p"));
            }
            if len == p && (m > p || cycle.is_constant()) {
                return bad(format!("p-cycle {cycle}^{m} not allowed"));
            }
            if len != 1 && len != p {
                return bad(format!("cycle {cycle} has length {len}"));
            }
            for &e in cycle.entries() {
                *counts.entry(e).or_insert(0) += m;
            }
        }
        for (&label, &c) in &counts {
            let want = match label {
                l if l >= 1 && l <= t && !self.bag.contains(&l) => p,
                l if l == t + 1 && r > 0 => r,
                _ => return bad(format!("label {label} may not appear in a cycle")),
            };
            if c != want {
                return bad(format!("label {label} occurs {c} times, expected {want}"));
            }
        }
        for label in (1..=t).filter(|l| !self.bag.contains(l)) {
            if !counts.contains_key(&label) {
                return bad(format!("label {label} is missing"));
            }
        }
        if r > 0 && !counts.contains_key(&(t + 1)) {
            return bad(format!("label {} is missing", t + 1));
        }
        Ok(())
    }
}

/// Number of permutations in the class `h`:
/// `(1 + (p-1)!)^h (p!)^(t-h) r! / (m_1! ... m_l!)` with `n = pt + r`.
pub fn class_size_formula(class: &RefinedClass, p: u32, n: u32) -> Result<ExactInt> {
    class.validate(p, n)?;
    let (t, r) = (n / p, n % p);
    let h = class.bag.len() as u32;
    let p64 = p as u64;
    let numerator = (BigInt::one() + factorial(p64 - 1)).pow(h)
        * factorial(p64).pow(t - h)
        * factorial(r as u64);
    let denominator = class
        .cycles
        .values()
        .fold(BigInt::one(), |acc, &m| acc * factorial(m as u64));
    let (q, rem) = numerator.div_rem(&denominator);
    assert!(rem.is_zero(), "class size for {class} is not an integer");
    Ok(q)
}
