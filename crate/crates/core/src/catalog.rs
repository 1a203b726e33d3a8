//! Built-in families: simple permutations, exceptional permutations, critical
//! posets and bichains, decreasing oscillations, and reference sequences.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::classes::{LevelSets, Provenance};
use crate::decomposition::is_indecomposable;
use crate::error::{Error, Result};
use crate::labeled::{FinitePoset, LabeledStructure};
use crate::permutation::Permutation;
use crate::structure::{OrderedStructure, Signature};

/// Upper bound on the `m` parameter of the size-`2m` families.
pub const MAX_FAMILY_PARAMETER: usize = 64;

/// Every named family and sequence, for lookup by name.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FamilyId {
    Simple,
    Exceptional(ExceptionalFamily),
    CriticalPoset(PosetVariant),
    CriticalBichain(u8),
    Oscillation,
    OscillationStar,
    FibK,
    Partitions,
}

impl FromStr for FamilyId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let up = s.trim().to_ascii_uppercase().replace('-', "_");
        Ok(match up.as_str() {
            "SIMPLE" => FamilyId::Simple,
            "EXCEPTIONAL_I" => FamilyId::Exceptional(ExceptionalFamily::I),
            "EXCEPTIONAL_II" => FamilyId::Exceptional(ExceptionalFamily::II),
            "EXCEPTIONAL_III" => FamilyId::Exceptional(ExceptionalFamily::III),
            "EXCEPTIONAL_IV" => FamilyId::Exceptional(ExceptionalFamily::IV),
            "CRITICAL_POSET_P" => FamilyId::CriticalPoset(PosetVariant::P),
            "CRITICAL_POSET_PPRIME" => FamilyId::CriticalPoset(PosetVariant::PPrime),
            "CRITICAL_BICHAIN_1" => FamilyId::CriticalBichain(1),
            "CRITICAL_BICHAIN_2" => FamilyId::CriticalBichain(2),
            "CRITICAL_BICHAIN_3" => FamilyId::CriticalBichain(3),
            "CRITICAL_BICHAIN_4" => FamilyId::CriticalBichain(4),
            "OSCILLATION" => FamilyId::Oscillation,
            "OSCILLATION_STAR" => FamilyId::OscillationStar,
            "SEQ_FIB_K" => FamilyId::FibK,
            "SEQ_PARTITIONS" => FamilyId::Partitions,
            _ => return Err(Error::InvalidParameter(format!("unknown family '{s}'"))),
        })
    }
}

/// The four size-`2m` exceptional permutation families.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ExceptionalFamily {
    I,
    II,
    III,
    IV,
}

impl ExceptionalFamily {
    pub const ALL: [ExceptionalFamily; 4] = [
        ExceptionalFamily::I,
        ExceptionalFamily::II,
        ExceptionalFamily::III,
        ExceptionalFamily::IV,
    ];
}

impl fmt::Display for ExceptionalFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            ExceptionalFamily::I => "I",
            ExceptionalFamily::II => "II",
            ExceptionalFamily::III => "III",
            ExceptionalFamily::IV => "IV",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PosetVariant {
    P,
    PPrime,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum OscillationVariant {
    Plain,
    Star,
}

fn check_m(m: usize, min: usize) -> Result<()> {
    if m < min {
        return Err(Error::InvalidParameter(format!("parameter must be >= {min}, got {m}")));
    }
    if m > MAX_FAMILY_PARAMETER {
        return Err(Error::InvalidParameter(format!(
            "parameter must be <= {MAX_FAMILY_PARAMETER}, got {m}"
        )));
    }
    Ok(())
}

/// All simple permutations of size `n` (`1 ≤ n ≤ 9`), in lexicographic order.
pub fn simple_permutations(n: usize) -> Result<Vec<Permutation>> {
    if !(1..=9).contains(&n) {
        return Err(Error::InvalidParameter(format!("n must be in 1..=9, got {n}")));
    }
    Ok(Permutation::all(n).filter(|p| is_indecomposable(&p.to_bichain())).collect())
}

/// Exceptional permutation of size `2m` (`m ≥ 2`).
pub fn exceptional(m: usize, family: ExceptionalFamily) -> Result<Permutation> {
    check_m(m, 2)?;
    let values: Vec<usize> = match family {
        // 2 4 … 2m 1 3 … 2m−1
        ExceptionalFamily::I => (1..=m).map(|i| 2 * i).chain((1..=m).map(|i| 2 * i - 1)).collect(),
        // 2m−1 2m−3 … 1 2m 2m−2 … 2
        ExceptionalFamily::II => (1..=m).rev().map(|i| 2 * i - 1).chain((1..=m).rev().map(|i| 2 * i)).collect(),
        // m+1 1 m+2 2 … 2m m
        ExceptionalFamily::III => (1..=m).flat_map(|i| [m + i, i]).collect(),
        // m 2m m−1 2m−1 … 1 m+1
        ExceptionalFamily::IV => (1..=m).rev().flat_map(|i| [i, m + i]).collect(),
    };
    Permutation::new(values)
}

/// The critical poset `P_n` or `P'_n` on `2n` points; `(x, i)` is index `2x + i`.
pub fn critical_poset(n: usize, variant: PosetVariant) -> Result<OrderedStructure> {
    check_m(n, 1)?;
    let below = |a: usize, b: usize| {
        let (x, i) = (a / 2, a % 2);
        let (y, j) = (b / 2, b % 2);
        match variant {
            PosetVariant::P => i < j && x <= y,
            PosetVariant::PPrime => j <= i && x < y,
        }
    };
    OrderedStructure::from_fn(2 * n, Signature::binary(), |_, a, b| a == b || below(a, b))
}

/// Rank of `(i, j)` in `L_{m,1}`: `(0,0) < (0,1) < (1,0) < …`.
fn rank_l1(i: usize, j: usize) -> usize {
    2 * i + j
}

/// Rank of `(i, j)` in `L_{m,2}`: `(m−1,0) < … < (0,0) < (m−1,1) < … < (0,1)`.
fn rank_l2(m: usize, i: usize, j: usize) -> usize {
    j * m + (m - 1 - i)
}

/// Bichain on a finite set given two rank functions: the first order becomes
/// the position order, the second the stored relation.
fn bichain_from_ranks(size: usize, first: impl Fn(usize) -> usize, second: impl Fn(usize) -> usize) -> OrderedStructure {
    let mut elems: Vec<usize> = (0..size).collect();
    elems.sort_by_key(|&e| first(e));
    let values: Vec<usize> = elems.iter().map(|&e| second(e)).collect();
    Permutation::from_zero_based(values)
        .expect("ranks form a bijection")
        .to_bichain()
}

fn critical_bichain_any(m: usize, variant: u8) -> OrderedStructure {
    let size = 2 * m;
    let l1 = |e: usize| rank_l1(e / 2, e % 2);
    let l2 = |e: usize| rank_l2(m, e / 2, e % 2);
    let l2_rev = |e: usize| size - 1 - rank_l2(m, e / 2, e % 2);
    match variant {
        1 => bichain_from_ranks(size, l1, l2),
        2 => bichain_from_ranks(size, l2, l1),
        3 => bichain_from_ranks(size, l1, l2_rev),
        _ => bichain_from_ranks(size, l2_rev, l1),
    }
}

/// One of the four critical bichains on `V_m`:
/// 1 = `(L1, L2)`, 2 = `(L2, L1)`, 3 = `(L1, L2*)`, 4 = `(L2*, L1)`.
pub fn critical_bichain(m: usize, variant: u8) -> Result<OrderedStructure> {
    check_m(m, 2)?;
    if !(1..=4).contains(&variant) {
        return Err(Error::InvalidParameter(format!("variant must be 1..=4, got {variant}")));
    }
    Ok(critical_bichain_any(m, variant))
}

/// Image of a word over `A²` under the order-preserving map onto labeled
/// variant-1 critical bichains: letter `i` labels `(i, 0)` and `(i, 1)`
/// with its two coordinates. Letters index `A²` as `a * |A| + b`.
pub fn critical_bichain_labeled(word: &[usize], alphabet: usize) -> Result<LabeledStructure> {
    if word.is_empty() {
        return Err(Error::InvalidParameter("word must be non-empty".into()));
    }
    check_m(word.len(), 1)?;
    let base = critical_bichain_any(word.len(), 1);
    let mut labels = Vec::with_capacity(2 * word.len());
    for &letter in word {
        if letter >= alphabet * alphabet {
            return Err(Error::LabelOutOfRange {
                label: letter,
                size: alphabet * alphabet,
            });
        }
        labels.push(letter / alphabet);
        labels.push(letter % alphabet);
    }
    LabeledStructure::new(base, labels)
}

/// Comparator of `L1: … < 2n < 2n−1 < 2(n+1) < 2n+1 < …` on the integers.
pub fn oscillation_l1(a: i64, b: i64) -> Ordering {
    let key = |x: i64| ((x + 1).div_euclid(2), x.rem_euclid(2));
    key(a).cmp(&key(b))
}

/// Comparator of `L2: … < 2(n+1) < 2n+3 < 2n < 2n+1 < …` on the integers:
/// pair-blocks `{2k, 2k+1}` in descending order, ascending inside a block.
pub fn oscillation_l2(a: i64, b: i64) -> Ordering {
    b.div_euclid(2).cmp(&a.div_euclid(2)).then(a.cmp(&b))
}

/// Restriction of the oscillation bichain (or its reversal) to a finite set
/// of integers.
pub fn oscillation_on(points: &[i64], variant: OscillationVariant) -> OrderedStructure {
    let mut by_first: Vec<i64> = points.to_vec();
    by_first.sort_by(|&a, &b| oscillation_l1(a, b));
    let mut by_second = by_first.clone();
    by_second.sort_by(|&a, &b| oscillation_l2(a, b));
    let n = points.len();
    let mut values: Vec<usize> = by_first
        .iter()
        .map(|x| by_second.iter().position(|y| y == x).unwrap())
        .collect();
    if variant == OscillationVariant::Star {
        // Reversing both orders turns σ into its reverse-complement.
        values = values.iter().rev().map(|v| n - 1 - v).collect();
    }
    Permutation::from_zero_based(values)
        .expect("ranks form a bijection")
        .to_bichain()
}

/// The oscillation bichain restricted to `{0, …, N−1}`.
pub fn oscillation_window(n: usize, variant: OscillationVariant) -> Result<OrderedStructure> {
    if n < 1 {
        return Err(Error::InvalidParameter("window size must be >= 1".into()));
    }
    let points: Vec<i64> = (0..n as i64).collect();
    Ok(oscillation_on(&points, variant))
}

/// The integer listed at each position of a window's position order.
pub fn oscillation_positions(points: &[i64], variant: OscillationVariant) -> Vec<i64> {
    let mut by_first = points.to_vec();
    by_first.sort_by(|&a, &b| oscillation_l1(a, b));
    if variant == OscillationVariant::Star {
        by_first.reverse();
    }
    by_first
}

/// Finite part of the age of the oscillation bichain: for each size
/// `k ≤ max_n`, the distinct size-`k` restrictions of a window of size
/// `4·max_n`, which is long enough to realize every pattern of that size.
pub fn oscillation_age(max_n: usize, variant: OscillationVariant) -> Result<LevelSets> {
    if max_n < 1 {
        return Err(Error::InvalidParameter("max_n must be >= 1".into()));
    }
    let window = oscillation_window(4 * max_n, variant)?;
    let levels = (1..=max_n).map(|k| window.restrictions_of_size(k)).collect();
    LevelSets::new(
        Signature::bichain(),
        max_n,
        levels,
        Provenance::Derived(format!("oscillation window {}", 4 * max_n)),
    )
}

/// The distinct indecomposable size-`n` restrictions of the oscillation
/// bichain: the singleton, both two-element patterns, nothing at size 3,
/// and the windows at even and odd offsets from size 4 on.
pub fn oscillation_members(n: usize, variant: OscillationVariant) -> Vec<OrderedStructure> {
    let mut out = match n {
        0 | 3 => Vec::new(),
        1 => vec![OrderedStructure::singleton(Signature::bichain())],
        2 => vec![
            Permutation::identity(2).to_bichain(),
            Permutation::identity(2).reverse().to_bichain(),
        ],
        _ => {
            let even: Vec<i64> = (0..n as i64).collect();
            let odd: Vec<i64> = (1..=n as i64).collect();
            vec![oscillation_on(&even, variant), oscillation_on(&odd, variant)]
        }
    };
    out.sort();
    out.dedup();
    out
}

/// Oscillation window of size `n` with its two path endpoints (the integers
/// `0` and `n−1`) labeled 1 and every other element labeled 0.
pub fn endpoint_marked_oscillation(n: usize) -> Result<LabeledStructure> {
    let base = oscillation_window(n, OscillationVariant::Plain)?;
    let points: Vec<i64> = (0..n as i64).collect();
    let labels = oscillation_positions(&points, OscillationVariant::Plain)
        .iter()
        .map(|&x| usize::from(x == 0 || x == n as i64 - 1))
        .collect();
    LabeledStructure::new(base, labels)
}

/// The two-element antichain used to label endpoints.
pub fn endpoint_labels() -> FinitePoset {
    FinitePoset::antichain(2)
}

/// Reference integer sequences.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReferenceSequence {
    /// `F_{n,k} = F_{n−1,k} + … + F_{n−k,k}`, `F_{0,k} = 1`.
    FibK(usize),
    /// The integer partition function.
    Partitions,
}

pub fn reference_sequence(seq: ReferenceSequence, n: usize) -> Result<BigInt> {
    match seq {
        ReferenceSequence::FibK(k) => {
            if k < 1 {
                return Err(Error::InvalidParameter("k must be >= 1".into()));
            }
            let mut f: Vec<BigInt> = Vec::with_capacity(n + 1);
            f.push(BigInt::one());
            for i in 1..=n {
                let lo = i.saturating_sub(k);
                let v = f[lo..i].iter().fold(BigInt::zero(), |acc, x| acc + x);
                f.push(v);
            }
            Ok(f.swap_remove(n))
        }
        ReferenceSequence::Partitions => {
            // Euler's pentagonal number recurrence.
            let mut p: Vec<BigInt> = vec![BigInt::one()];
            for i in 1..=n as i64 {
                let mut acc = BigInt::zero();
                for k in 1.. {
                    let g1 = k * (3 * k - 1) / 2;
                    if g1 > i {
                        break;
                    }
                    let sign_pos = k % 2 == 1;
                    let mut term = p[(i - g1) as usize].clone();
                    let g2 = k * (3 * k + 1) / 2;
                    if g2 <= i {
                        term += &p[(i - g2) as usize];
                    }
                    if sign_pos {
                        acc += term;
                    } else {
                        acc -= term;
                    }
                }
                p.push(acc);
            }
            Ok(p.swap_remove(n))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decomposition::ind_restrictions;

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    #[test]
    fn simple_small_sizes() {
        assert!(simple_permutations(3).unwrap().is_empty());
        assert_eq!(simple_permutations(4).unwrap(), vec![p("2413"), p("3142")]);
        assert!(simple_permutations(0).is_err());
        assert!(simple_permutations(10).is_err());
    }

    #[test]
    fn exceptional_examples() {
        assert_eq!(exceptional(2, ExceptionalFamily::I).unwrap(), p("2413"));
        assert_eq!(exceptional(2, ExceptionalFamily::II).unwrap(), p("3142"));
        assert_eq!(exceptional(3, ExceptionalFamily::III).unwrap(), p("415263"));
        assert_eq!(exceptional(3, ExceptionalFamily::I).unwrap(), p("246135"));
        assert_eq!(exceptional(3, ExceptionalFamily::II).unwrap(), p("531642"));
        assert_eq!(exceptional(3, ExceptionalFamily::IV).unwrap(), p("362514"));
        assert!(exceptional(1, ExceptionalFamily::I).is_err());
        assert!(exceptional(65, ExceptionalFamily::I).is_err());
    }

    #[test]
    fn critical_poset_small() {
        let p2 = critical_poset(2, PosetVariant::P).unwrap();
        let strict: Vec<(usize, usize)> = (0..4)
            .flat_map(|a| (0..4).map(move |b| (a, b)))
            .filter(|&(a, b)| a != b && p2.rel(0, a, b))
            .collect();
        // (0,0)<(0,1), (0,0)<(1,1), (1,0)<(1,1)
        assert_eq!(strict, vec![(0, 1), (0, 3), (2, 3)]);

        let p1 = critical_poset(1, PosetVariant::P).unwrap();
        assert!(p1.rel(0, 0, 1) && !p1.rel(0, 1, 0));
        let q1 = critical_poset(1, PosetVariant::PPrime).unwrap();
        assert!(!q1.rel(0, 0, 1) && !q1.rel(0, 1, 0));
        assert!(critical_poset(0, PosetVariant::P).is_err());
    }

    #[test]
    fn critical_bichain_types() {
        let b = critical_bichain(2, 1).unwrap();
        assert_eq!(Permutation::from_bichain(&b).unwrap(), p("2413"));
        assert!(critical_bichain(1, 1).is_err());
        assert!(critical_bichain(3, 5).is_err());
    }

    #[test]
    fn comparators_match_displayed_chains() {
        let mut v: Vec<i64> = (-2..=7).collect();
        v.sort_by(|&a, &b| oscillation_l1(a, b));
        assert_eq!(v, vec![-2, 0, -1, 2, 1, 4, 3, 6, 5, 7]);
        v.sort_by(|&a, &b| oscillation_l2(a, b));
        assert_eq!(v, vec![6, 7, 4, 5, 2, 3, 0, 1, -2, -1]);
    }

    #[test]
    fn oscillation_window_examples() {
        let w4 = oscillation_window(4, OscillationVariant::Plain).unwrap();
        assert_eq!(Permutation::from_bichain(&w4).unwrap(), p("3142"));
        let w1 = oscillation_window(1, OscillationVariant::Star).unwrap();
        assert_eq!(w1, OrderedStructure::singleton(Signature::bichain()));
        assert!(oscillation_window(0, OscillationVariant::Plain).is_err());
    }

    #[test]
    fn oscillation_intersection_is_path_orientation() {
        // a < b in both orders exactly when |a − b| = 1 and a is even.
        let n = 6usize;
        let w = oscillation_window(n, OscillationVariant::Plain).unwrap();
        let points: Vec<i64> = (0..n as i64).collect();
        let at = oscillation_positions(&points, OscillationVariant::Plain);
        for i in 0..n {
            for j in 0..n {
                if i == j {
                    continue;
                }
                let both = i < j && w.rel(0, i, j);
                let (a, b) = (at[i], at[j]);
                assert_eq!(both, (a - b).abs() == 1 && a % 2 == 0, "{a} vs {b}");
            }
        }
    }

    #[test]
    fn ind_restriction_histogram_of_window_six() {
        let w = oscillation_window(6, OscillationVariant::Plain).unwrap();
        let ind = ind_restrictions(&w, 1).unwrap();
        let hist: Vec<usize> = (1..=5).map(|k| ind.iter().filter(|s| s.n() == k).count()).collect();
        assert_eq!(hist, vec![1, 2, 0, 2, 2]);
    }

    #[test]
    fn oscillation_age_counts() {
        let age = oscillation_age(5, OscillationVariant::Plain).unwrap();
        assert_eq!(age.counts(), vec![1, 2, 5, 11, 24]);
        assert!(age.is_hereditary());
    }

    #[test]
    fn endpoint_labels_mark_two_elements() {
        for n in 2..9 {
            let l = endpoint_marked_oscillation(n).unwrap();
            assert_eq!(l.labels().iter().filter(|&&x| x == 1).count(), 2);
        }
    }

    #[test]
    fn reference_sequences() {
        for k in 1..5 {
            assert_eq!(reference_sequence(ReferenceSequence::FibK(k), 0).unwrap(), BigInt::one());
        }
        let fib: Vec<BigInt> = (0..6)
            .map(|n| reference_sequence(ReferenceSequence::FibK(2), n).unwrap())
            .collect();
        assert_eq!(fib, [1, 1, 2, 3, 5, 8].map(BigInt::from).to_vec());
        assert_eq!(reference_sequence(ReferenceSequence::Partitions, 5).unwrap(), BigInt::from(7));
        assert!(reference_sequence(ReferenceSequence::FibK(0), 3).is_err());
    }

    #[test]
    fn family_names_parse() {
        assert_eq!("exceptional_iii".parse::<FamilyId>().unwrap(), FamilyId::Exceptional(ExceptionalFamily::III));
        assert_eq!("CRITICAL_BICHAIN_4".parse::<FamilyId>().unwrap(), FamilyId::CriticalBichain(4));
        assert!("NOPE".parse::<FamilyId>().is_err());
    }
}
