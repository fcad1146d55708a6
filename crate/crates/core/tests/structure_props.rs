use proptest::prelude::*;
use revcore::structure::{
    check_morphism, complement, components, decompose_condensation, disjoint_union, find_morphisms, is_morphism,
    is_reversible_bruteforce, BinaryStructure, MorphismKind,
};

fn digraph(max: usize) -> impl Strategy<Value = BinaryStructure> {
    (1..=max).prop_flat_map(|n| {
        proptest::collection::vec(any::<bool>(), n * n).prop_map(move |bits| {
            let edges = (0..n * n).filter(|&i| bits[i]).map(|i| (i / n, i % n));
            BinaryStructure::from_indexed((0..n).map(|i| format!("v{i}")).collect(), edges)
        })
    })
}

proptest! {
    #[test]
    fn text_round_trip(x in digraph(6)) {
        prop_assert_eq!(BinaryStructure::parse(&x.to_text()).unwrap(), x);
    }

    #[test]
    fn found_morphisms_check(x in digraph(4), y in digraph(5)) {
        for kind in MorphismKind::ALL {
            for map in find_morphisms(&x, &y, kind, Some(50)) {
                prop_assert!(check_morphism(&x, &y, kind, &map).is_ok(), "{} {:?}", kind, map);
            }
        }
    }

    #[test]
    fn homomorphisms_compose(x in digraph(3), y in digraph(3), z in digraph(3)) {
        for f in find_morphisms(&x, &y, MorphismKind::Homomorphism, Some(10)) {
            for g in find_morphisms(&y, &z, MorphismKind::Homomorphism, Some(10)) {
                let h: Vec<usize> = f.iter().map(|&v| g[v]).collect();
                prop_assert!(is_morphism(&x, &z, MorphismKind::Homomorphism, &h));
            }
        }
    }

    #[test]
    fn kinds_are_nested(x in digraph(4), y in digraph(4)) {
        let count = |k| find_morphisms(&x, &y, k, None).len();
        prop_assert!(count(MorphismKind::Isomorphism) <= count(MorphismKind::Embedding));
        prop_assert!(count(MorphismKind::Embedding) <= count(MorphismKind::Monomorphism));
        prop_assert!(count(MorphismKind::Monomorphism) <= count(MorphismKind::Homomorphism));
        prop_assert!(count(MorphismKind::Isomorphism) <= count(MorphismKind::Condensation));
    }

    #[test]
    fn finite_structures_are_reversible(x in digraph(6)) {
        let r = is_reversible_bruteforce(&x, 9).unwrap();
        prop_assert!(r.reversible);
        prop_assert_eq!(r.condensations, r.automorphisms);
    }

    #[test]
    fn components_partition_and_separate(x in digraph(7)) {
        let parts = components(&x);
        let mut seen: Vec<usize> = parts.blocks().iter().flatten().copied().collect();
        seen.sort_unstable();
        prop_assert_eq!(seen, (0..x.len()).collect::<Vec<_>>());
        for (a, b) in x.edges() {
            prop_assert_eq!(parts.block_of(a), parts.block_of(b));
        }
        for block in parts.blocks() {
            prop_assert!(x.induced(block).is_connected());
        }
    }

    #[test]
    fn condensations_decompose_over_components(parts in proptest::collection::vec(digraph(3), 1..=3)) {
        let u = disjoint_union(&parts).structure;
        for map in find_morphisms(&u, &u, MorphismKind::Condensation, Some(20)) {
            let d = decompose_condensation(&map, &u, &u).unwrap();
            prop_assert_eq!(d.recompose(), map);
        }
    }

    #[test]
    fn complement_is_an_involution(x in digraph(6)) {
        let c = complement(&x);
        prop_assert_eq!(c.edge_count() + x.edge_count(), x.len() * x.len());
        prop_assert_eq!(complement(&c), x);
    }
}

#[test]
fn directed_cycle_has_rotations_only() {
    let c = BinaryStructure::directed_cycle(5);
    assert_eq!(find_morphisms(&c, &c, MorphismKind::Isomorphism, None).len(), 5);
    assert!(!c.is_chain());
    assert!(BinaryStructure::chain(4).is_chain());
}

#[test]
fn parse_errors_name_the_line() {
    let err = BinaryStructure::parse("nodes a b\nedge a c\n").unwrap_err();
    assert_eq!(err.line, 2);
    let err = BinaryStructure::parse("nodes a a\n").unwrap_err();
    assert_eq!(err.line, 1);
}
