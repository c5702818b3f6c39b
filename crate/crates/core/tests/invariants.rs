use std::collections::BTreeSet;

use num_bigint::BigInt;
use proptest::prelude::*;

use involution_lab::algebra::{val2, BivariatePoly, Valuation};
use involution_lab::enumeration::{
    class_of_graph, fiber_size_2, graph_of_class, group_by_class, refined_class, weight_of_graph,
    weight_of_permutation, Enumerator, Permutation,
};
use involution_lab::golden;
use involution_lab::sequences::{beta_step, g_int, Sequences};

#[test]
fn classes_partition_the_roots() {
    let e = Enumerator::default();
    for (p, top) in [(2, 9), (3, 8), (5, 7), (7, 8)] {
        for n in 0..=top {
            let roots = e.pth_roots(n, p).unwrap();
            let groups = group_by_class(&roots, p).unwrap();
            let regrouped: usize = groups.values().map(Vec::len).sum();
            assert_eq!(regrouped, roots.len());
            for (class, members) in &groups {
                class.validate(p, n).unwrap();
                assert!(members.iter().all(|pi| &refined_class(pi, p).unwrap() == class));
            }
        }
    }
}

#[test]
fn graphs_and_involution_classes_biject() {
    let e = Enumerator::default();
    for n in 0..=10 {
        let graphs: BTreeSet<_> = e.graphs(n).unwrap().into_iter().collect();
        let groups = group_by_class(&e.pth_roots(n, 2).unwrap(), 2).unwrap();
        let images: BTreeSet<_> = groups.keys().map(|c| graph_of_class(c, 2, n).unwrap()).collect();
        assert_eq!(images, graphs, "n = {n}");
        for g in &graphs {
            assert!(groups.contains_key(&class_of_graph(g, n).unwrap()));
        }
    }
}

#[test]
fn fiber_weights_average_to_graph_weight() {
    let e = Enumerator::default();
    for n in 0..=10 {
        for (class, members) in group_by_class(&e.pth_roots(n, 2).unwrap(), 2).unwrap() {
            let g = graph_of_class(&class, 2, n).unwrap();
            let size = fiber_size_2(&g, n).unwrap();
            assert_eq!(BigInt::from(members.len()), size);
            let total = members
                .iter()
                .fold(BivariatePoly::zero(), |acc, pi| &acc + &weight_of_permutation(pi).unwrap());
            assert_eq!(total, weight_of_graph(&g, n).unwrap().scale_int(&size), "n = {n}, {g}");
        }
    }
}

#[test]
fn fibers_sum_to_involution_count() {
    let e = Enumerator::default();
    let mut seq = Sequences::new();
    for n in 0..=12 {
        let total: BigInt = e.graphs(n).unwrap().iter().map(|g| fiber_size_2(g, n).unwrap()).sum();
        assert_eq!(total, seq.t(n as usize), "n = {n}");
    }
}

#[test]
fn graph_polynomial_matches_brute_force() {
    let e = Enumerator::default();
    let mut seq = Sequences::new();
    for n in 0..=13 {
        assert_eq!(e.g_poly(n).unwrap(), seq.g_poly(n as i64), "n = {n}");
        assert_eq!(e.g_count(n).unwrap(), seq.g_int(n as usize), "n = {n}");
    }
}

#[test]
fn printed_g_table_is_shifted_at_the_end() {
    let printed = golden::printed_g_values();
    for cell in &printed[..20] {
        assert_eq!(g_int(cell.n), BigInt::from(cell.value), "{cell}");
    }
    assert_eq!(g_int(20), BigInt::from(19467494));
    assert_eq!(g_int(21), BigInt::from(printed[20].value));
    assert_eq!(g_int(22), BigInt::from(printed[21].value));
    assert_eq!(g_int(21), g_int(20) + g_int(19) * 10);
}

#[test]
fn signed_g_table_matches() {
    let mut seq = Sequences::new();
    let alt = seq.g_alt_prefix(21);
    for cell in golden::printed_g_signed_values() {
        assert_eq!(alt[cell.n as usize], BigInt::from(cell.value), "{cell}");
    }
}

fn involution() -> impl Strategy<Value = Permutation> {
    (0u32..14).prop_flat_map(|n| {
        Just((1..=n).collect::<Vec<u32>>()).prop_shuffle().prop_flat_map(move |order| {
            proptest::collection::vec(any::<bool>(), n as usize / 2).prop_map(move |swap| {
                let mut images: Vec<u32> = (1..=n).collect();
                for (i, &s) in swap.iter().enumerate() {
                    if s {
                        let (a, b) = (order[2 * i], order[2 * i + 1]);
                        images[a as usize - 1] = b;
                        images[b as usize - 1] = a;
                    }
                }
                Permutation::new(images).unwrap()
            })
        })
    })
}

proptest! {
    #[test]
    fn class_graph_round_trip(pi in involution()) {
        let n = pi.len() as u32;
        let class = refined_class(&pi, 2).unwrap();
        let g = graph_of_class(&class, 2, n).unwrap();
        prop_assert!(g.is_member(n));
        prop_assert_eq!(class_of_graph(&g, n).unwrap(), class);
    }

    #[test]
    fn odd_parts_follow_the_step(n in 1u64..300) {
        let mut seq = Sequences::new();
        let b = seq.beta_prefix(n as usize + 1).to_vec();
        prop_assert_eq!(beta_step(n, &b[n as usize - 1], &b[n as usize]).unwrap(), b[n as usize + 1].clone());
    }

    #[test]
    fn odd_part_is_odd(n in 0usize..500) {
        let b = Sequences::new().beta(n);
        prop_assert_eq!(val2(&b), Valuation::Finite(0));
    }
}
