use hereditary::{OrderedStructure, Permutation, RelationKind, Signature, Symmetry};
use proptest::prelude::*;

fn binary_structure(max_n: usize) -> impl Strategy<Value = OrderedStructure> {
    (1..=max_n).prop_flat_map(|n| {
        proptest::collection::vec(any::<bool>(), n * n).prop_map(move |bits| {
            OrderedStructure::from_fn(n, Signature::binary(), |_, i, j| i == j || bits[i * n + j]).unwrap()
        })
    })
}

fn permutation(max_n: usize) -> impl Strategy<Value = Permutation> {
    (1..=max_n).prop_flat_map(|n| {
        Just((0..n).collect::<Vec<usize>>())
            .prop_shuffle()
            .prop_map(|v| Permutation::from_zero_based(v).unwrap())
    })
}

fn mixed_structure(max_n: usize) -> impl Strategy<Value = OrderedStructure> {
    (permutation(max_n), any::<u64>()).prop_map(|(p, seed)| {
        let n = p.len();
        let sig = Signature::new(vec![RelationKind::LinearOrder, RelationKind::ReflexiveBinary]);
        let v = p.values().to_vec();
        OrderedStructure::from_fn(n, sig, |r, i, j| match r {
            0 => v[i] <= v[j],
            _ => i == j || (seed >> ((i * n + j) % 64)) & 1 == 1,
        })
        .unwrap()
    })
}

/// Brute-force containment: some increasing index subset has the same
/// relative order.
fn contains_by_subsets(host: &Permutation, pattern: &Permutation) -> bool {
    use itertools::Itertools;
    let h = host.values();
    let p = pattern.values();
    (0..h.len()).combinations(p.len()).any(|idx| {
        (0..p.len()).all(|a| (0..p.len()).all(|b| (p[a] < p[b]) == (h[idx[a]] < h[idx[b]])))
    })
}

#[test]
fn embedding_is_reflexive_and_transitive_exhaustively() {
    let all: Vec<OrderedStructure> = (1..=3)
        .flat_map(|n| Permutation::all(n).map(|p| p.to_bichain()).collect::<Vec<_>>())
        .collect();
    for a in &all {
        assert!(a.embeds_into(a).unwrap());
        for b in &all {
            if !a.embeds_into(b).unwrap() {
                continue;
            }
            for c in &all {
                if b.embeds_into(c).unwrap() {
                    assert!(a.embeds_into(c).unwrap());
                }
            }
        }
    }
}

#[test]
fn containment_matches_brute_force_exhaustively() {
    for n in 1..=5 {
        let hosts: Vec<Permutation> = Permutation::all(n).collect();
        for k in 1..=n.min(3) {
            for pattern in Permutation::all(k) {
                for host in &hosts {
                    let expected = contains_by_subsets(host, &pattern);
                    assert_eq!(host.contains(&pattern), expected, "{host} vs {pattern}");
                    assert_eq!(pattern.to_bichain().embeds_into(&host.to_bichain()).unwrap(), expected);
                }
            }
        }
    }
}

#[test]
fn second_order_example() {
    let host: Permutation = "3 9 1 8 6 7 4 5 2".parse().unwrap();
    assert!(host.contains(&"51342".parse().unwrap()));
    assert!(!host.contains(&"123456".parse().unwrap()));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn embedding_is_reflexive_for_binary(r in binary_structure(4)) {
        prop_assert!(r.embeds_into(&r).unwrap());
    }

    #[test]
    fn embedding_is_transitive_through_restrictions(r in binary_structure(5), mask_a in any::<u8>(), mask_b in any::<u8>()) {
        let n = r.n();
        let outer: Vec<usize> = (0..n).filter(|i| mask_a >> i & 1 == 1).collect();
        prop_assume!(!outer.is_empty());
        let mid = r.restriction(&outer).unwrap();
        let inner: Vec<usize> = (0..mid.n()).filter(|i| mask_b >> i & 1 == 1).collect();
        prop_assume!(!inner.is_empty());
        let small = mid.restriction(&inner).unwrap();
        prop_assert!(small.embeds_into(&mid).unwrap());
        prop_assert!(mid.embeds_into(&r).unwrap());
        prop_assert!(small.embeds_into(&r).unwrap());
        // Composing the two index lists gives the same restriction directly.
        let composed: Vec<usize> = inner.iter().map(|&i| outer[i]).collect();
        prop_assert_eq!(r.restriction(&composed).unwrap(), small);
    }

    #[test]
    fn ostruct_text_round_trip(r in mixed_structure(6)) {
        let text = r.to_text();
        prop_assert_eq!(OrderedStructure::parse_text(&text).unwrap(), r);
    }

    #[test]
    fn binary_text_round_trip(r in binary_structure(6)) {
        prop_assert_eq!(r.to_text().parse::<OrderedStructure>().unwrap(), r);
    }

    #[test]
    fn permutation_round_trips(p in permutation(6)) {
        prop_assert_eq!(Permutation::from_bichain(&p.to_bichain()).unwrap(), p.clone());
        prop_assert_eq!(p.to_string().parse::<Permutation>().unwrap(), p.clone());
        prop_assert_eq!(p.compact().unwrap().parse::<Permutation>().unwrap(), p);
    }

    #[test]
    fn symmetries_are_involutions(p in permutation(7)) {
        for op in [Symmetry::Inverse, Symmetry::Reverse, Symmetry::Complement] {
            prop_assert_eq!(p.apply(op).apply(op), p.clone());
        }
    }

    #[test]
    fn containment_is_preserved_by_symmetries(host in permutation(6), pattern in permutation(3)) {
        let c = host.contains(&pattern);
        for op in [Symmetry::Inverse, Symmetry::Reverse, Symmetry::Complement] {
            prop_assert_eq!(host.apply(op).contains(&pattern.apply(op)), c);
        }
    }
}

#[test]
fn parse_errors_carry_positions() {
    let text = "ostruct 1\nn 3\nd 1\nkinds B\nrel 0\n100\n000\n001\n";
    let err = OrderedStructure::parse_text(text).unwrap_err();
    assert_eq!(err.to_string(), "reflexivity violated at relation 0, row 1");
    let text = "ostruct 1\nn 3\nd 1\nkinds B\nrel 0\n100\n010\n000\n";
    let err = OrderedStructure::parse_text(text).unwrap_err();
    assert_eq!(err.to_string(), "reflexivity violated at relation 0, row 2");
}
