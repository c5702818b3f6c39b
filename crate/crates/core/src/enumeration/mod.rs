//! Brute-force ground truth: exhaustive generation of `S_{n,p}`, the block
//! label map and its classes, the constrained multigraph class, and the
//! weight system on involutions and graphs.
//!
//! Everything here is deliberately direct so it can serve as an oracle for
//! the closed forms in [`crate::sequences`] and [`crate::valuations`].

mod classes;
mod graphs;
mod permutation;

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::ToPrimitive;

pub use classes::{
    block_label, class_size_formula, label_map, refined_class, CycleMultiset, LabeledCycle, RefinedClass,
};
pub use graphs::{
    class_of_graph, fiber_size_2, graph_of_class, isolated_vertices, vertex_count_for, weight_of_graph,
    ConstrainedGraph,
};
pub use permutation::Permutation;

use crate::algebra::{is_prime, BivariatePoly, Dyadic, ExactInt};
use crate::sequences;
use crate::{Error, Result};

pub const DEFAULT_MAX_PERMUTATIONS: u64 = 10_000_000;
pub const DEFAULT_MAX_VERTICES: u32 = 8;

/// Size limits for the exhaustive generators.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Caps {
    pub max_permutations: u64,
    pub max_vertices: u32,
}

impl Default for Caps {
    fn default() -> Self {
        Caps { max_permutations: DEFAULT_MAX_PERMUTATIONS, max_vertices: DEFAULT_MAX_VERTICES }
    }
}

/// Exhaustive generators guarded by [`Caps`].
#[derive(Clone, Copy, Debug, Default)]
pub struct Enumerator {
    caps: Caps,
}

impl Enumerator {
    pub fn new(caps: Caps) -> Self {
        Enumerator { caps }
    }

    pub fn caps(&self) -> Caps {
        self.caps
    }

    /// Every `π` in `S_n` with `π^p = 1`, in lexicographic order of image
    /// lists. Built from cycle structures, never by filtering `S_n`.
    pub fn pth_roots(&self, n: u32, p: u32) -> Result<Vec<Permutation>> {
        if !is_prime(p as u64) {
            return Err(Error::arg(format!("{p} is not prime")));
        }
        let predicted = sequences::tau_p(n as u64, p as u64)?;
        if predicted > BigInt::from(self.caps.max_permutations) {
            return Err(Error::Resource {
                what: "p-th root enumeration",
                predicted: predicted.to_string(),
                cap: self.caps.max_permutations,
            });
        }
        let mut out = Vec::with_capacity(predicted.to_usize().unwrap_or(0));
        let mut images = vec![0u32; n as usize];
        let unplaced: Vec<u32> = (1..=n).collect();
        build_roots(&unplaced, p as usize, &mut images, &mut out);
        out.sort();
        Ok(out)
    }

    /// Every member of the constrained graph class for size `n`.
    pub fn graphs(&self, n: u32) -> Result<Vec<ConstrainedGraph>> {
        let m = vertex_count_for(n);
        if m > self.caps.max_vertices {
            return Err(Error::Resource {
                what: "graph enumeration",
                predicted: format!("{m} vertices"),
                cap: self.caps.max_vertices as u64,
            });
        }
        Ok(graphs::generate_graphs(n))
    }

    /// Number of graphs for size `n` without doubled edges.
    pub fn g_count(&self, n: u32) -> Result<ExactInt> {
        let count = self.graphs(n)?.iter().filter(|g| g.two_cycle_count() == 0).count();
        Ok(BigInt::from(count))
    }

    /// Weight sum over the graphs for size `n` without doubled edges.
    pub fn g_poly(&self, n: u32) -> Result<BivariatePoly> {
        let mut acc = BivariatePoly::zero();
        for g in self.graphs(n)?.iter().filter(|g| g.two_cycle_count() == 0) {
            acc = &acc + &weight_of_graph(g, n)?;
        }
        Ok(acc)
    }
}

fn build_roots(unplaced: &[u32], p: usize, images: &mut Vec<u32>, out: &mut Vec<Permutation>) {
    let Some((&first, rest)) = unplaced.split_first() else {
        out.push(Permutation::from_images_unchecked(images.clone()));
        return;
    };
    images[first as usize - 1] = first;
    build_roots(rest, p, images, out);
    if rest.len() + 1 >= p {
        let mut cycle = vec![first];
        choose_cycle(rest, p, &mut cycle, images, out);
    }
}

// Extend `cycle` (which starts at the smallest unplaced point) with ordered
// picks from `pool` until it has length p, then recurse on what is left.
fn choose_cycle(pool: &[u32], p: usize, cycle: &mut Vec<u32>, images: &mut Vec<u32>, out: &mut Vec<Permutation>) {
    if cycle.len() == p {
        for (i, &a) in cycle.iter().enumerate() {
            images[a as usize - 1] = cycle[(i + 1) % p];
        }
        let remaining: Vec<u32> = pool.to_vec();
        build_roots(&remaining, p, images, out);
        return;
    }
    for i in 0..pool.len() {
        let mut rest = pool.to_vec();
        let pick = rest.remove(i);
        cycle.push(pick);
        choose_cycle(&rest, p, cycle, images, out);
        cycle.pop();
    }
}

/// `x^(fixed points) y^(transpositions)` for an involution.
pub fn weight_of_permutation(pi: &Permutation) -> Result<BivariatePoly> {
    if !pi.is_involution() {
        return Err(Error::arg(format!("{pi} is not an involution")));
    }
    let cycles = pi.cycles();
    let fixed = cycles.iter().filter(|c| c.len() == 1).count() as u32;
    let swaps = cycles.len() as u32 - fixed;
    Ok(BivariatePoly::monomial(fixed, swaps, Dyadic::one()))
}

/// Group permutations by their refined class.
pub fn group_by_class(perms: &[Permutation], p: u32) -> Result<BTreeMap<RefinedClass, Vec<Permutation>>> {
    let mut groups: BTreeMap<RefinedClass, Vec<Permutation>> = BTreeMap::new();
    for pi in perms {
        groups.entry(refined_class(pi, p)?).or_default().push(pi.clone());
    }
    Ok(groups)
}
