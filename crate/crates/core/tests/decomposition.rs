use hereditary::decomposition::{
    decompose, intervals, is_chainable, is_indecomposable, maximal_strong_intervals, s_splits, DecompositionTree,
    QuotientKind,
};
use hereditary::{OrderedStructure, Permutation, Signature};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Interval test straight from the definition: every outside point sees all
/// members of `[a, b]` identically, in both directions, for every relation.
fn interval_by_definition(r: &OrderedStructure, a: usize, b: usize) -> bool {
    (0..r.n()).filter(|z| *z < a || *z > b).all(|z| {
        (0..r.d()).all(|k| {
            (a..=b).all(|x| r.rel(k, z, x) == r.rel(k, z, a) && r.rel(k, x, z) == r.rel(k, a, z))
        })
    })
}

fn indecomposable_by_definition(r: &OrderedStructure) -> bool {
    let n = r.n();
    (0..n).all(|a| (a..n).all(|b| (b == a) || (a == 0 && b == n - 1) || !interval_by_definition(r, a, b)))
}

fn random_binary(rng: &mut ChaCha8Rng, n: usize) -> OrderedStructure {
    let bits: Vec<bool> = (0..n * n).map(|_| rng.random_bool(0.5)).collect();
    OrderedStructure::from_fn(n, Signature::binary(), |_, i, j| i == j || bits[i * n + j]).unwrap()
}

/// Structural checks on every node: children cover the span left to right,
/// each child span is an interval, and the quotient has the declared kind.
fn check_tree(r: &OrderedStructure, tree: &DecompositionTree) {
    if let DecompositionTree::Node { quotient, kind, children } = tree {
        assert!(children.len() >= 2);
        assert_eq!(quotient.n(), children.len());
        let mut next = tree.span().0;
        for c in children {
            let (a, b) = c.span();
            assert_eq!(a, next);
            assert!(interval_by_definition(r, a, b));
            next = b + 1;
            check_tree(r, c);
        }
        assert_eq!(next, tree.span().1 + 1);
        match kind {
            QuotientKind::Chainable => assert!(is_chainable(quotient)),
            QuotientKind::Indecomposable => {
                assert!(quotient.n() >= 3);
                assert!(indecomposable_by_definition(quotient));
            }
        }
    }
}

fn all_bichains(max_n: usize) -> Vec<OrderedStructure> {
    (1..=max_n)
        .flat_map(|n| Permutation::all(n).map(|p| p.to_bichain()).collect::<Vec<_>>())
        .collect()
}

#[test]
fn intervals_agree_with_definition() {
    for r in all_bichains(5) {
        let n = r.n();
        let mut expected = Vec::new();
        for a in 0..n {
            for b in a..n {
                if interval_by_definition(&r, a, b) {
                    expected.push((a, b));
                }
            }
        }
        let mut got = intervals(&r);
        got.sort();
        assert_eq!(got, expected);
        assert_eq!(is_indecomposable(&r), indecomposable_by_definition(&r));
    }
}

#[test]
fn rebuild_round_trip_for_all_small_bichains() {
    let all = all_bichains(6);
    assert_eq!(all.len(), 1 + 2 + 6 + 24 + 120 + 720);
    for r in &all {
        let tree = decompose(r).unwrap();
        assert_eq!(&tree.rebuild(r.sig()).unwrap(), r);
        assert_eq!(tree.leaves(), (0..r.n()).collect::<Vec<_>>());
        check_tree(r, &tree);
    }
}

#[test]
fn rebuild_round_trip_for_random_binary_structures() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for _ in 0..500 {
        let n = rng.random_range(1..=8);
        let r = random_binary(&mut rng, n);
        let tree = decompose(&r).unwrap();
        assert_eq!(tree.rebuild(r.sig()).unwrap(), r);
        check_tree(&r, &tree);
    }
}

#[test]
fn maximal_strong_intervals_are_unique_partition() {
    // Strong intervals overlap no other interval; the maximal proper ones
    // partition the domain, so the top-level split is determined.
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut samples = all_bichains(5);
    samples.extend((0..200).map(|_| {
        let n = rng.random_range(2..=7);
        random_binary(&mut rng, n)
    }));
    for r in samples.iter().filter(|r| r.n() >= 2) {
        let blocks = maximal_strong_intervals(r);
        let mut covered = 0;
        for &(a, b) in &blocks {
            assert_eq!(a, covered);
            covered = b + 1;
        }
        assert_eq!(covered, r.n());
        let all = intervals(r);
        for &(a, b) in &blocks {
            for &(c, d) in &all {
                let overlap = a <= d && c <= b;
                let nested = (a <= c && d <= b) || (c <= a && b <= d);
                assert!(!overlap || nested);
            }
        }
    }
}

#[test]
fn simple_iff_indecomposable() {
    for n in 1..=6 {
        for p in Permutation::all(n) {
            assert_eq!(p.is_simple(), is_indecomposable(&p.to_bichain()), "{p}");
        }
    }
}

#[test]
fn at_most_one_split_with_indecomposable_prefix() {
    let twos = [
        "12".parse::<Permutation>().unwrap().to_bichain(),
        "21".parse::<Permutation>().unwrap().to_bichain(),
    ];
    for r in all_bichains(7) {
        for s in &twos {
            let good = s_splits(&r, s)
                .unwrap()
                .into_iter()
                .filter(|&k| {
                    let prefix = r.restriction(&(0..k).collect::<Vec<_>>()).unwrap();
                    s_splits(&prefix, s).unwrap().is_empty()
                })
                .count();
            assert!(good <= 1);
            // Any split at all forces exactly one with an indecomposable prefix.
            if !s_splits(&r, s).unwrap().is_empty() {
                assert_eq!(good, 1);
            }
        }
    }
}

#[test]
fn decomposition_example() {
    let r = "3412".parse::<Permutation>().unwrap().to_bichain();
    assert_eq!(decompose(&r).unwrap().render().sexpr, "(chain21 (chain12 0 1) (chain12 2 3))");
    let r = "2413".parse::<Permutation>().unwrap().to_bichain();
    assert_eq!(decompose(&r).unwrap().render().sexpr, "(ind2413 0 1 2 3)");
}
