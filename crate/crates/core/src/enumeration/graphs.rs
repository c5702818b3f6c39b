use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigInt;
use num_traits::One;
use serde::{Deserialize, Serialize};

use super::classes::{LabeledCycle, RefinedClass};
use crate::algebra::{BivariatePoly, Dyadic, ExactInt};
use crate::{Error, Result};

/// Loopless multigraph on `v_1..v_m` with edge multiplicities 1 or 2.
///
/// Members of the class for size `n` have `m = ceil(n/2)` vertices, every
/// degree at most two and, for odd `n`, the last vertex of degree at most one.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ConstrainedGraph {
    vertex_count: u32,
    edges: BTreeMap<(u32, u32), u8>,
}

#[derive(Serialize, Deserialize)]
struct GraphRepr {
    vertex_count: u32,
    edges: Vec<(u32, u32, u8)>,
}

impl Serialize for ConstrainedGraph {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        GraphRepr {
            vertex_count: self.vertex_count,
            edges: self.edges.iter().map(|(&(a, b), &m)| (a, b, m)).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for ConstrainedGraph {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let repr = GraphRepr::deserialize(d)?;
        ConstrainedGraph::new(repr.vertex_count, repr.edges).map_err(serde::de::Error::custom)
    }
}

/// Number of vertices of graphs for size `n`.
pub fn vertex_count_for(n: u32) -> u32 {
    n / 2 + n % 2
}

impl ConstrainedGraph {
    pub fn empty(vertex_count: u32) -> Self {
        ConstrainedGraph { vertex_count, edges: BTreeMap::new() }
    }

    /// Build from `(a, b, multiplicity)` triples. Rejects loops, vertices out
    /// of range, multiplicities outside `{1, 2}` and degrees above two.
    pub fn new(vertex_count: u32, edges: impl IntoIterator<Item = (u32, u32, u8)>) -> Result<Self> {
        let mut g = ConstrainedGraph::empty(vertex_count);
        for (a, b, m) in edges {
            let (a, b) = (a.min(b), a.max(b));
            if a == b {
                return Err(Error::arg(format!("loop at v{a}")));
            }
            if a == 0 || b > vertex_count {
                return Err(Error::arg(format!("edge {{v{a},v{b}}} out of range")));
            }
            let slot = g.edges.entry((a, b)).or_insert(0);
            *slot += m;
            if *slot == 0 || *slot > 2 {
                return Err(Error::arg(format!("edge {{v{a},v{b}}} has multiplicity {slot}")));
            }
        }
        if let Some(v) = (1..=vertex_count).find(|&v| g.degree(v) > 2) {
            return Err(Error::arg(format!("v{v} has degree {}", g.degree(v))));
        }
        Ok(g)
    }

    pub fn vertex_count(&self) -> u32 {
        self.vertex_count
    }

    pub fn edges(&self) -> impl Iterator<Item = (u32, u32, u8)> + '_ {
        self.edges.iter().map(|(&(a, b), &m)| (a, b, m))
    }

    pub fn degree(&self, v: u32) -> u32 {
        self.edges
            .iter()
            .filter(|(&(a, b), _)| a == v || b == v)
            .map(|(_, &m)| m as u32)
            .sum()
    }

    /// Doubled edges, i.e. 2-cycles.
    pub fn two_cycle_count(&self) -> u32 {
        self.edges.values().filter(|&&m| m == 2).count() as u32
    }

    pub fn is_member(&self, n: u32) -> bool {
        self.validate(n).is_ok()
    }

    pub fn validate(&self, n: u32) -> Result<()> {
        if self.vertex_count != vertex_count_for(n) {
            return Err(Error::arg(format!(
                "graph has {} vertices, size {n} needs {}",
                self.vertex_count,
                vertex_count_for(n)
            )));
        }
        if n % 2 == 1 && self.degree(self.vertex_count) > 1 {
            return Err(Error::arg(format!("last vertex v{} has degree above one", self.vertex_count)));
        }
        Ok(())
    }
}

impl fmt::Display for ConstrainedGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let edges: Vec<String> = self
            .edges()
            .map(|(a, b, m)| if m == 1 { format!("{a}-{b}") } else { format!("{a}={b}") })
            .collect();
        write!(f, "G{}[{}]", self.vertex_count, edges.join(" "))
    }
}

/// Graph of an involution class: one edge `{a,b}` of multiplicity `m` per
/// labeled 2-cycle `(a,b)^m` with `a != b`.
pub fn graph_of_class(class: &RefinedClass, p: u32, n: u32) -> Result<ConstrainedGraph> {
    if p != 2 {
        return Err(Error::arg(format!("graphs describe involution classes only, got p = {p}")));
    }
    class.validate(2, n)?;
    let edges = class
        .cycles
        .iter()
        .filter(|(c, _)| c.len() == 2)
        .map(|(c, &m)| (c.entries()[0], c.entries()[1], m as u8));
    let g = ConstrainedGraph::new(vertex_count_for(n), edges)?;
    g.validate(n)?;
    Ok(g)
}

/// Inverse of [`graph_of_class`].
pub fn class_of_graph(g: &ConstrainedGraph, n: u32) -> Result<RefinedClass> {
    g.validate(n)?;
    let t = n / 2;
    let mut class = RefinedClass::default();
    for (a, b, m) in g.edges() {
        class.cycles.insert(LabeledCycle::new(vec![a, b]), m as u32);
    }
    for v in 1..=g.vertex_count() {
        let deg = g.degree(v);
        if v <= t {
            match deg {
                0 => {
                    class.bag.insert(v);
                }
                1 => {
                    class.cycles.insert(LabeledCycle::new(vec![v]), 1);
                }
                _ => {}
            }
        } else if deg == 0 {
            class.cycles.insert(LabeledCycle::new(vec![v]), 1);
        }
    }
    Ok(class)
}

/// Number of involutions mapping to `g`: `2^(floor(n/2) - s)` with `s` the
/// number of doubled edges.
pub fn fiber_size_2(g: &ConstrainedGraph, n: u32) -> Result<ExactInt> {
    g.validate(n)?;
    Ok(BigInt::one() << (n / 2 - g.two_cycle_count()))
}

/// Product of the vertex and edge weights of `g`.
///
/// Every edge (counted with multiplicity) weighs `y`. An inner vertex weighs
/// `1`, `x` or `(x^2+y)/2` for degree 2, 1, 0; the extra vertex of an odd
/// size weighs `1` or `x` for degree 1 or 0.
pub fn weight_of_graph(g: &ConstrainedGraph, n: u32) -> Result<BivariatePoly> {
    g.validate(n)?;
    let t = n / 2;
    let edge_count: u32 = g.edges().map(|(_, _, m)| m as u32).sum();
    let isolated_inner = BivariatePoly::monomial(2, 0, Dyadic::half()) + BivariatePoly::monomial(0, 1, Dyadic::half());
    let mut x_deg = 0;
    let mut wt = BivariatePoly::monomial(0, edge_count, Dyadic::one());
    for v in 1..=g.vertex_count() {
        match (v <= t, g.degree(v)) {
            (true, 0) => wt = &wt * &isolated_inner,
            (true, 1) | (false, 0) => x_deg += 1,
            _ => {}
        }
    }
    Ok(wt.shift(x_deg, 0))
}

/// All members of the graph class for size `n`, in sorted order, with no cap.
pub(crate) fn generate_graphs(n: u32) -> Vec<ConstrainedGraph> {
    let m = vertex_count_for(n);
    let mut cap = vec![2u32; m as usize];
    if n % 2 == 1 {
        cap[m as usize - 1] = 1;
    }
    let pairs: Vec<(u32, u32)> = (1..=m).flat_map(|a| (a + 1..=m).map(move |b| (a, b))).collect();
    let mut out = Vec::new();
    let mut chosen = Vec::new();
    extend(&pairs, 0, &mut cap, &mut chosen, m, &mut out);
    out.sort();
    out
}

fn extend(
    pairs: &[(u32, u32)],
    idx: usize,
    cap: &mut [u32],
    chosen: &mut Vec<(u32, u32, u8)>,
    m: u32,
    out: &mut Vec<ConstrainedGraph>,
) {
    if idx == pairs.len() {
        let edges = chosen.iter().map(|&(a, b, k)| ((a, b), k)).collect();
        out.push(ConstrainedGraph { vertex_count: m, edges });
        return;
    }
    let (a, b) = pairs[idx];
    let (ia, ib) = (a as usize - 1, b as usize - 1);
    extend(pairs, idx + 1, cap, chosen, m, out);
    for mult in 1..=2u8 {
        let need = mult as u32;
        if cap[ia] < need || cap[ib] < need {
            break;
        }
        cap[ia] -= need;
        cap[ib] -= need;
        chosen.push((a, b, mult));
        extend(pairs, idx + 1, cap, chosen, m, out);
        chosen.pop();
        cap[ia] += need;
        cap[ib] += need;
    }
}

/// Vertices of `g` not touched by any edge.
pub fn isolated_vertices(g: &ConstrainedGraph) -> BTreeSet<u32> {
    (1..=g.vertex_count()).filter(|&v| g.degree(v) == 0).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumeration::classes::CycleMultiset;

    fn poly(rows: &[(u32, u32, i64, u64)]) -> BivariatePoly {
        let mut p = BivariatePoly::zero();
        for &(a, b, c, e) in rows {
            p.add_term(a, b, Dyadic::new(BigInt::from(c), e));
        }
        p
    }

    #[test]
    fn validation() {
        assert!(ConstrainedGraph::new(2, [(1, 1, 1)]).is_err());
        assert!(ConstrainedGraph::new(2, [(1, 2, 3)]).is_err());
        assert!(ConstrainedGraph::new(3, [(1, 2, 2), (1, 3, 1)]).is_err());
        let g = ConstrainedGraph::new(3, [(1, 3, 1), (2, 3, 1)]).unwrap();
        assert!(g.is_member(6));
        assert!(!g.is_member(5));
        assert!(!g.is_member(4));
    }

    #[test]
    fn graph_of_class_examples() {
        let double = RefinedClass {
            bag: BTreeSet::new(),
            cycles: [(LabeledCycle::new(vec![1, 2]), 2)].into_iter().collect(),
        };
        let g = graph_of_class(&double, 2, 4).unwrap();
        assert_eq!(g, ConstrainedGraph::new(2, [(1, 2, 2)]).unwrap());
        assert_eq!(class_of_graph(&g, 4).unwrap(), double);

        let fixed = RefinedClass { bag: [1, 2].into_iter().collect(), cycles: CycleMultiset::new() };
        assert_eq!(graph_of_class(&fixed, 2, 4).unwrap(), ConstrainedGraph::empty(2));

        let single: RefinedClass = RefinedClass {
            bag: BTreeSet::new(),
            cycles: [
                (LabeledCycle::new(vec![1, 2]), 1),
                (LabeledCycle::new(vec![1]), 1),
                (LabeledCycle::new(vec![2]), 1),
                (LabeledCycle::new(vec![3]), 1),
            ]
            .into_iter()
            .collect(),
        };
        let g = graph_of_class(&single, 2, 5).unwrap();
        assert_eq!(g, ConstrainedGraph::new(3, [(1, 2, 1)]).unwrap());
        assert_eq!(isolated_vertices(&g), [3].into_iter().collect());
        assert_eq!(class_of_graph(&g, 5).unwrap(), single);

        assert!(graph_of_class(&fixed, 3, 4).is_err());
    }

    #[test]
    fn small_graph_classes() {
        let four = generate_graphs(4);
        assert_eq!(four.len(), 3);
        assert_eq!(generate_graphs(1), vec![ConstrainedGraph::empty(1)]);
        assert_eq!(generate_graphs(0), vec![ConstrainedGraph::empty(0)]);
        let simple7 = generate_graphs(7).into_iter().filter(|g| g.two_cycle_count() == 0).count();
        assert_eq!(simple7, 26);
    }

    #[test]
    fn two_cycles_and_fibers() {
        let double = ConstrainedGraph::new(2, [(1, 2, 2)]).unwrap();
        assert_eq!(double.two_cycle_count(), 1);
        assert_eq!(ConstrainedGraph::empty(2).two_cycle_count(), 0);
        let two = ConstrainedGraph::new(4, [(1, 2, 2), (3, 4, 2)]).unwrap();
        assert_eq!(two.two_cycle_count(), 2);

        assert_eq!(fiber_size_2(&double, 4).unwrap(), BigInt::from(2));
        assert_eq!(fiber_size_2(&ConstrainedGraph::empty(2), 4).unwrap(), BigInt::from(4));
        let single = ConstrainedGraph::new(3, [(1, 2, 1)]).unwrap();
        assert_eq!(fiber_size_2(&single, 5).unwrap(), BigInt::from(4));
        assert!(fiber_size_2(&single, 4).is_err());
    }

    #[test]
    fn graph_weights() {
        let half_sum = poly(&[(2, 0, 1, 1), (0, 1, 1, 1)]);
        assert_eq!(weight_of_graph(&ConstrainedGraph::empty(1), 2).unwrap(), half_sum);
        let edge = ConstrainedGraph::new(2, [(1, 2, 1)]).unwrap();
        assert_eq!(weight_of_graph(&edge, 4).unwrap(), poly(&[(2, 1, 1, 0)]));
        assert_eq!(
            weight_of_graph(&ConstrainedGraph::empty(2), 3).unwrap(),
            poly(&[(3, 0, 1, 1), (1, 1, 1, 1)])
        );
        let double = ConstrainedGraph::new(2, [(1, 2, 2)]).unwrap();
        assert_eq!(weight_of_graph(&double, 4).unwrap(), poly(&[(0, 2, 1, 0)]));
    }

    #[test]
    fn json_form() {
        let g = ConstrainedGraph::new(3, [(2, 3, 1), (1, 2, 1)]).unwrap();
        let js = serde_json::to_string(&g).unwrap();
        assert_eq!(js, r#"{"vertex_count":3,"edges":[[1,2,1],[2,3,1]]}"#);
        assert_eq!(serde_json::from_str::<ConstrainedGraph>(&js).unwrap(), g);
        assert!(serde_json::from_str::<ConstrainedGraph>(r#"{"vertex_count":2,"edges":[[1,1,1]]}"#).is_err());
    }
}
