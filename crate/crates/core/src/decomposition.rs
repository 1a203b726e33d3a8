//! Intervals, lexicographic sums and the substitution decomposition.
//!
//! The position order takes part in the interval condition, so every interval
//! of an ordered structure is a contiguous range `[a, b]` and only `O(n²)`
//! candidates need checking.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::permutation::Permutation;
use crate::structure::{OrderedStructure, Signature};

/// Largest domain for which `ind_restrictions` enumerates all subsets.
pub const MAX_SUBSET_ENUMERATION: usize = 20;

/// An inclusive range of positions.
pub type Span = (usize, usize);

/// Whether `[a, b]` is an interval: no outside element tells two inside
/// elements apart under any relation.
pub fn is_interval(r: &OrderedStructure, a: usize, b: usize) -> bool {
    debug_assert!(a <= b && b < r.n());
    (0..r.n()).filter(|&x| x < a || x > b).all(|x| {
        let first = r.pair_pattern(x, a);
        ((a + 1)..=b).all(|y| r.pair_pattern(x, y) == first)
    })
}

/// Every interval `[a, b]` of `r`, trivial ones included, sorted by start
/// then end.
pub fn intervals(r: &OrderedStructure) -> Vec<Span> {
    let n = r.n();
    let mut out = Vec::new();
    for a in 0..n {
        for b in a..n {
            if is_interval(r, a, b) {
                out.push((a, b));
            }
        }
    }
    out
}

/// No interval of size `2..n-1`.
pub fn is_indecomposable(r: &OrderedStructure) -> bool {
    let n = r.n();
    if n <= 2 {
        return true;
    }
    for len in 2..n {
        for a in 0..=(n - len) {
            if is_interval(r, a, a + len - 1) {
                return false;
            }
        }
    }
    true
}

/// The common pair pattern of all position pairs `x < y`, if there is one.
pub fn chain_pattern(r: &OrderedStructure) -> Option<u64> {
    let n = r.n();
    if n < 2 {
        return None;
    }
    let p = r.pair_pattern(0, 1);
    for x in 0..n {
        for y in (x + 1)..n {
            if r.pair_pattern(x, y) != p {
                return None;
            }
        }
    }
    Some(p)
}

/// Every relation shows the same pair pattern on all position pairs.
pub fn is_chainable(r: &OrderedStructure) -> bool {
    r.n() < 2 || chain_pattern(r).is_some()
}

/// Lexicographic sum: child `k` replaces element `k` of `quotient`.
pub fn lex_sum(quotient: &OrderedStructure, children: &[OrderedStructure]) -> Result<OrderedStructure> {
    if children.len() != quotient.n() {
        return Err(Error::SizeMismatch(format!(
            "{} children for a quotient of size {}",
            children.len(),
            quotient.n()
        )));
    }
    for c in children {
        quotient.sig().ensure_same(c.sig())?;
        if c.is_empty() {
            return Err(Error::EmptyStructure);
        }
    }
    let mut block = Vec::new();
    let mut local = Vec::new();
    for (k, c) in children.iter().enumerate() {
        for i in 0..c.n() {
            block.push(k);
            local.push(i);
        }
    }
    let total = block.len();
    let d = quotient.d();
    let mut bits = Vec::with_capacity(d * total * total);
    for r in 0..d {
        for x in 0..total {
            for y in 0..total {
                let (bx, by) = (block[x], block[y]);
                bits.push(if bx == by {
                    children[bx].rel(r, local[x], local[y])
                } else {
                    quotient.rel(r, bx, by)
                });
            }
        }
    }
    Ok(OrderedStructure::from_bits_unchecked(total, quotient.sig().clone(), bits))
}

/// Type of a decomposition node's quotient.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum QuotientKind {
    Indecomposable,
    Chainable,
}

/// The substitution decomposition of an ordered structure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DecompositionTree {
    Leaf(usize),
    Node {
        quotient: OrderedStructure,
        kind: QuotientKind,
        children: Vec<DecompositionTree>,
    },
}

/// S-expression rendering of a tree; `quotients` lists the structures that
/// `@k` heads refer to.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreeRendering {
    pub sexpr: String,
    pub quotients: Vec<OrderedStructure>,
}

impl DecompositionTree {
    /// Inclusive position range covered by this subtree.
    pub fn span(&self) -> Span {
        match self {
            DecompositionTree::Leaf(p) => (*p, *p),
            DecompositionTree::Node { children, .. } => (children[0].span().0, children.last().unwrap().span().1),
        }
    }

    /// Leaves from left to right.
    pub fn leaves(&self) -> Vec<usize> {
        let mut out = Vec::new();
        self.collect_leaves(&mut out);
        out
    }

    fn collect_leaves(&self, out: &mut Vec<usize>) {
        match self {
            DecompositionTree::Leaf(p) => out.push(*p),
            DecompositionTree::Node { children, .. } => children.iter().for_each(|c| c.collect_leaves(out)),
        }
    }

    pub fn kind(&self) -> Option<QuotientKind> {
        match self {
            DecompositionTree::Leaf(_) => None,
            DecompositionTree::Node { kind, .. } => Some(*kind),
        }
    }

    pub fn quotient(&self) -> Option<&OrderedStructure> {
        match self {
            DecompositionTree::Leaf(_) => None,
            DecompositionTree::Node { quotient, .. } => Some(quotient),
        }
    }

    pub fn children(&self) -> &[DecompositionTree] {
        match self {
            DecompositionTree::Leaf(_) => &[],
            DecompositionTree::Node { children, .. } => children,
        }
    }

    /// Reassembles the structure bottom-up through `lex_sum`.
    pub fn rebuild(&self, sig: &Signature) -> Result<OrderedStructure> {
        match self {
            DecompositionTree::Leaf(_) => Ok(OrderedStructure::singleton(sig.clone())),
            DecompositionTree::Node { quotient, children, .. } => {
                let parts = children.iter().map(|c| c.rebuild(sig)).collect::<Result<Vec<_>>>()?;
                lex_sum(quotient, &parts)
            }
        }
    }

    /// Heads are `ind<perm>`/`chain<perm>` for small bichain quotients and
    /// `ind@k`/`chain@k` otherwise.
    pub fn render(&self) -> TreeRendering {
        let mut out = TreeRendering {
            sexpr: String::new(),
            quotients: Vec::new(),
        };
        let mut buf = String::new();
        self.render_into(&mut buf, &mut out.quotients);
        out.sexpr = buf;
        out
    }

    fn render_into(&self, buf: &mut String, quotients: &mut Vec<OrderedStructure>) {
        match self {
            DecompositionTree::Leaf(p) => {
                let _ = write!(buf, "{p}");
            }
            DecompositionTree::Node { quotient, kind, children } => {
                let head = match kind {
                    QuotientKind::Indecomposable => "ind",
                    QuotientKind::Chainable => "chain",
                };
                let compact = if quotient.sig().is_bichain() {
                    Permutation::from_bichain(quotient).ok().and_then(|p| p.compact())
                } else {
                    None
                };
                match compact {
                    Some(c) => {
                        let _ = write!(buf, "({head}{c}");
                    }
                    None => {
                        let _ = write!(buf, "({head}@{}", quotients.len());
                        quotients.push(quotient.clone());
                    }
                }
                for c in children {
                    buf.push(' ');
                    c.render_into(buf, quotients);
                }
                buf.push(')');
            }
        }
    }
}

/// Maximal proper strong intervals of `r` (`n ≥ 2`), left to right. They
/// partition the domain.
pub fn maximal_strong_intervals(r: &OrderedStructure) -> Vec<Span> {
    let n = r.n();
    let all = intervals(r);
    let overlaps = |(a, b): Span, (c, d): Span| {
        let intersect = a <= d && c <= b;
        let nested = (a <= c && d <= b) || (c <= a && b <= d);
        intersect && !nested
    };
    let strong: Vec<Span> = all
        .iter()
        .copied()
        .filter(|&s| all.iter().all(|&t| !overlaps(s, t)))
        .filter(|&(a, b)| b - a + 1 < n)
        .collect();
    let mut maximal: Vec<Span> = strong
        .iter()
        .copied()
        .filter(|&(a, b)| !strong.iter().any(|&(c, d)| (c, d) != (a, b) && c <= a && b <= d))
        .collect();
    maximal.sort_unstable();
    maximal
}

/// Builds the decomposition tree of a non-empty structure.
pub fn decompose(r: &OrderedStructure) -> Result<DecompositionTree> {
    if r.is_empty() {
        return Err(Error::EmptyStructure);
    }
    Ok(decompose_span(r, 0))
}

fn decompose_span(r: &OrderedStructure, offset: usize) -> DecompositionTree {
    let n = r.n();
    if n == 1 {
        return DecompositionTree::Leaf(offset);
    }
    let blocks = maximal_strong_intervals(r);
    let reps: Vec<usize> = blocks.iter().map(|&(a, _)| a).collect();
    let quotient = r.restrict_unchecked(&reps);
    let kind = if is_chainable(&quotient) {
        QuotientKind::Chainable
    } else {
        debug_assert!(quotient.n() >= 3 && is_indecomposable(&quotient));
        QuotientKind::Indecomposable
    };
    let children = blocks
        .iter()
        .map(|&(a, b)| {
            let idx: Vec<usize> = (a..=b).collect();
            decompose_span(&r.restrict_unchecked(&idx), offset + a)
        })
        .collect();
    DecompositionTree::Node {
        quotient,
        kind,
        children,
    }
}

/// Whether `r` has no split `[0, k) | [k, n)` whose cross pattern is the
/// pattern of the two-element structure `s`.
pub fn is_s_indecomposable(r: &OrderedStructure, s: &OrderedStructure) -> Result<bool> {
    Ok(s_splits(r, s)?.is_empty())
}

/// Split points `k` in `1..n` for which `r = r[0,k) ⊕_s r[k,n)`.
pub fn s_splits(r: &OrderedStructure, s: &OrderedStructure) -> Result<Vec<usize>> {
    if s.n() != 2 {
        return Err(Error::SizeMismatch(format!(
            "two-element quotient required, found size {}",
            s.n()
        )));
    }
    r.sig().ensure_same(s.sig())?;
    let target = s.pair_pattern(0, 1);
    let n = r.n();
    Ok((1..n)
        .filter(|&k| (0..k).all(|x| (k..n).all(|y| r.pair_pattern(x, y) == target)))
        .collect())
}

/// Distinct indecomposable restrictions of `r` with at least `min_size`
/// elements, found by enumerating all subsets.
pub fn ind_restrictions(r: &OrderedStructure, min_size: usize) -> Result<BTreeSet<OrderedStructure>> {
    let n = r.n();
    if n > MAX_SUBSET_ENUMERATION {
        return Err(Error::ResourceCap(format!(
            "subset enumeration limited to n <= {MAX_SUBSET_ENUMERATION}, got {n}"
        )));
    }
    let mut out = BTreeSet::new();
    let mut idx = Vec::with_capacity(n);
    for mask in 1u32..(1u32 << n) {
        if (mask.count_ones() as usize) < min_size.max(1) {
            continue;
        }
        idx.clear();
        idx.extend((0..n).filter(|&i| mask >> i & 1 == 1));
        let sub = r.restrict_unchecked(&idx);
        if is_indecomposable(&sub) {
            out.insert(sub);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bichain(s: &str) -> OrderedStructure {
        s.parse::<Permutation>().unwrap().to_bichain()
    }

    fn one() -> OrderedStructure {
        OrderedStructure::singleton(Signature::bichain())
    }

    #[test]
    fn intervals_examples() {
        assert_eq!(intervals(&bichain("2413")), vec![(0, 0), (0, 3), (1, 1), (2, 2), (3, 3)]);
        assert_eq!(intervals(&one()), vec![(0, 0)]);
        assert_eq!(
            intervals(&bichain("123")),
            vec![(0, 0), (0, 1), (0, 2), (1, 1), (1, 2), (2, 2)]
        );
    }

    #[test]
    fn indecomposable_examples() {
        assert!(is_indecomposable(&bichain("2413")));
        assert!(is_indecomposable(&bichain("21")));
        assert!(is_indecomposable(&one()));
        assert!(!is_indecomposable(&bichain("123")));
    }

    #[test]
    fn chainable_examples() {
        assert!(is_chainable(&bichain("12345")));
        assert!(is_chainable(&bichain("4321")));
        assert!(!is_chainable(&bichain("2413")));
    }

    #[test]
    fn lex_sum_examples() {
        let s = lex_sum(&bichain("21"), &[bichain("12"), bichain("12")]).unwrap();
        assert_eq!(s, bichain("3412"));
        let q = bichain("2413");
        assert_eq!(lex_sum(&q, &vec![one(); 4]).unwrap(), q);
        let r = bichain("132");
        assert_eq!(lex_sum(&one(), std::slice::from_ref(&r)).unwrap(), r);
    }

    #[test]
    fn lex_sum_errors() {
        assert!(matches!(lex_sum(&bichain("21"), &[one()]), Err(Error::SizeMismatch(_))));
        let empty = OrderedStructure::empty(Signature::bichain());
        assert_eq!(lex_sum(&bichain("21"), &[one(), empty]), Err(Error::EmptyStructure));
        let other = OrderedStructure::singleton(Signature::binary());
        assert!(matches!(
            lex_sum(&bichain("21"), &[one(), other]),
            Err(Error::SignatureMismatch(_))
        ));
    }

    #[test]
    fn lex_sum_spans_are_intervals() {
        let children = [bichain("21"), bichain("132"), one()];
        let s = lex_sum(&bichain("231"), &children).unwrap();
        let iv = intervals(&s);
        assert!(iv.contains(&(0, 1)));
        assert!(iv.contains(&(2, 4)));
        assert!(iv.contains(&(5, 5)));
    }

    #[test]
    fn decompose_examples() {
        let t = decompose(&bichain("2413")).unwrap();
        assert_eq!(t.kind(), Some(QuotientKind::Indecomposable));
        assert_eq!(t.quotient(), Some(&bichain("2413")));
        assert!(t.children().iter().all(|c| matches!(c, DecompositionTree::Leaf(_))));

        let t = decompose(&bichain("123")).unwrap();
        assert_eq!(t.kind(), Some(QuotientKind::Chainable));
        assert_eq!(t.quotient(), Some(&bichain("123")));
        assert_eq!(t.children().len(), 3);

        let t = decompose(&bichain("3412")).unwrap();
        assert_eq!(t.render().sexpr, "(chain21 (chain12 0 1) (chain12 2 3))");
        assert_eq!(t.kind(), Some(QuotientKind::Chainable));
        for c in t.children() {
            assert_eq!(c.kind(), Some(QuotientKind::Chainable));
            assert_eq!(c.quotient(), Some(&bichain("12")));
        }

        assert_eq!(decompose(&one()).unwrap(), DecompositionTree::Leaf(0));
        let empty = OrderedStructure::empty(Signature::bichain());
        assert_eq!(decompose(&empty), Err(Error::EmptyStructure));
    }

    #[test]
    fn render_general_signature_uses_references() {
        let r = OrderedStructure::from_fn(3, Signature::binary(), |_, i, j| i == j || (i == 0 && j == 2)).unwrap();
        let t = decompose(&r).unwrap();
        let out = t.render();
        assert!(out.sexpr.starts_with("(chain@0") || out.sexpr.starts_with("(ind@0"));
        assert!(!out.quotients.is_empty());
        assert_eq!(t.rebuild(r.sig()).unwrap(), r);
    }

    #[test]
    fn s_indecomposable_examples() {
        let s12 = bichain("12");
        let s21 = bichain("21");
        assert!(!is_s_indecomposable(&bichain("12"), &s12).unwrap());
        assert!(is_s_indecomposable(&bichain("21"), &s12).unwrap());
        for s in [&s12, &s21] {
            assert!(is_s_indecomposable(&bichain("2413"), s).unwrap());
        }
        assert!(matches!(
            is_s_indecomposable(&bichain("12"), &bichain("123")),
            Err(Error::SizeMismatch(_))
        ));
    }

    #[test]
    fn ind_restrictions_examples() {
        let got = ind_restrictions(&bichain("123"), 2).unwrap();
        assert_eq!(got.into_iter().collect::<Vec<_>>(), vec![bichain("12")]);
        let got = ind_restrictions(&one(), 1).unwrap();
        assert_eq!(got.into_iter().collect::<Vec<_>>(), vec![one()]);
        let got = ind_restrictions(&bichain("3412"), 1).unwrap();
        let expect: BTreeSet<_> = [one(), bichain("12"), bichain("21")].into_iter().collect();
        assert_eq!(got, expect);
    }
}
