use std::fmt;

use crate::{Error, Result};

/// A permutation of `{1, ..., n}` given by its image list.
///
/// Ordering is lexicographic on the image list.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<u32>,
}

impl Permutation {
    pub fn new(images: Vec<u32>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &v in &images {
            let i = v as usize;
            if i == 0 || i > n || seen[i - 1] {
                return Err(Error::arg(format!("{images:?} is not a permutation of 1..{n}")));
            }
            seen[i - 1] = true;
        }
        Ok(Permutation { images })
    }

    pub fn identity(n: u32) -> Self {
        Permutation { images: (1..=n).collect() }
    }

    /// Build from disjoint cycles; unmentioned points are fixed.
    pub fn from_cycles(n: u32, cycles: &[&[u32]]) -> Result<Self> {
        let mut images: Vec<u32> = (1..=n).collect();
        let mut touched = vec![false; n as usize];
        for cycle in cycles {
            for (i, &a) in cycle.iter().enumerate() {
                if a == 0 || a > n || touched[a as usize - 1] {
                    return Err(Error::arg(format!("bad cycle {cycle:?} for n = {n}")));
                }
                touched[a as usize - 1] = true;
                images[a as usize - 1] = cycle[(i + 1) % cycle.len()];
            }
        }
        Permutation::new(images)
    }

    pub(crate) fn from_images_unchecked(images: Vec<u32>) -> Self {
        Permutation { images }
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    pub fn images(&self) -> &[u32] {
        &self.images
    }

    /// Image of the one-indexed point `i`.
    pub fn apply(&self, i: u32) -> u32 {
        self.images[i as usize - 1]
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        let images = other.images.iter().map(|&i| self.apply(i)).collect();
        Permutation { images }
    }

    pub fn pow(&self, k: u32) -> Permutation {
        (0..k).fold(Permutation::identity(self.len() as u32), |acc, _| acc.compose(self))
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &v)| v as usize == i + 1)
    }

    pub fn is_pth_root(&self, p: u32) -> bool {
        self.pow(p).is_identity()
    }

    pub fn is_involution(&self) -> bool {
        self.images.iter().all(|&v| self.apply(self.apply(v)) == v)
    }

    /// Disjoint cycle decomposition, fixed points included. Each cycle starts
    /// at its smallest element; cycles are ordered by that element.
    pub fn cycles(&self) -> Vec<Vec<u32>> {
        let n = self.images.len();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 1..=n as u32 {
            if seen[start as usize - 1] {
                continue;
            }
            let mut cycle = vec![start];
            seen[start as usize - 1] = true;
            let mut cur = self.apply(start);
            while cur != start {
                seen[cur as usize - 1] = true;
                cycle.push(cur);
                cur = self.apply(cur);
            }
            out.push(cycle);
        }
        out
    }

    /// Number of cycles of length `len`.
    pub fn cycle_count(&self, len: usize) -> usize {
        self.cycles().iter().filter(|c| c.len() == len).count()
    }
}

impl fmt::Display for Permutation {
    /// Cycle notation without fixed points, `()` for the identity.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles: Vec<_> = self.cycles().into_iter().filter(|c| c.len() > 1).collect();
        if cycles.is_empty() {
            return f.write_str("()");
        }
        for c in cycles {
            let parts: Vec<String> = c.iter().map(u32::to_string).collect();
            write!(f, "({})", parts.join(","))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn construction() {
        assert!(Permutation::new(vec![2, 1, 3]).is_ok());
        assert!(Permutation::new(vec![2, 2, 3]).is_err());
        assert!(Permutation::new(vec![0, 1]).is_err());
        let p = Permutation::from_cycles(4, &[&[1, 2], &[3, 4]]).unwrap();
        assert_eq!(p.images(), &[2, 1, 4, 3]);
        assert_eq!(p.to_string(), "(1,2)(3,4)");
        assert!(Permutation::from_cycles(3, &[&[1, 2], &[2, 3]]).is_err());
    }

    #[test]
    fn cycles_and_powers() {
        // 38725614 from the text: (1,3,7)(2,8,4)(5)(6)
        let p = Permutation::new(vec![3, 8, 7, 2, 5, 6, 1, 4]).unwrap();
        assert_eq!(p.cycles(), vec![vec![1, 3, 7], vec![2, 8, 4], vec![5], vec![6]]);
        assert!(p.is_pth_root(3));
        assert!(!p.is_involution());
        assert_eq!(p.cycle_count(3), 2);
        assert!(Permutation::identity(0).is_involution());
        assert_eq!(Permutation::identity(0).to_string(), "()");
    }
}
