//! Membership in sum-closures and the sum-type partition of their members.

use super::{GeneratorSpec, LevelSets, Provenance};
use crate::decomposition::{decompose, ind_restrictions, lex_sum, s_splits, QuotientKind, MAX_SUBSET_ENUMERATION};
use crate::error::{Error, Result};
use crate::labeled::{FinitePoset, LabeledStructure};
use crate::structure::OrderedStructure;

/// Whether every indecomposable restriction of `r` is a generator of `d`.
pub fn sigma_membership(r: &OrderedStructure, d: &GeneratorSpec) -> Result<bool> {
    d.sig().ensure_same(r.sig())?;
    if r.n() > MAX_SUBSET_ENUMERATION {
        return Err(Error::ResourceCap(format!(
            "membership test limited to size {MAX_SUBSET_ENUMERATION}, found {}",
            r.n()
        )));
    }
    Ok(ind_restrictions(r, 1)?.iter().all(|s| d.contains(s)))
}

/// The part of a sum-closure a member belongs to.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SumType {
    /// The one-element structure.
    Unit,
    /// Lexicographic sums over the quotient `S`, with an `S`-indecomposable
    /// first part when `S` has two elements.
    Sum(OrderedStructure),
}

/// The sum type of a member of `ΣD`.
pub fn classify_sum_type(r: &OrderedStructure, d: &GeneratorSpec) -> Result<SumType> {
    if !sigma_membership(r, d)? {
        return Err(Error::NotInClosure);
    }
    let n = r.n();
    if n == 1 {
        return Ok(SumType::Unit);
    }
    // A two-part split forces the pattern of the first and last element.
    let ends = r.restrict_unchecked(&[0, n - 1]);
    if !s_splits(r, &ends)?.is_empty() {
        return Ok(SumType::Sum(ends));
    }
    let tree = decompose(r)?;
    match (tree.kind(), tree.quotient()) {
        (Some(QuotientKind::Indecomposable), Some(q)) if q.n() >= 3 => Ok(SumType::Sum(q.clone())),
        (None, None) => Ok(SumType::Sum(r.clone())),
        _ => Err(Error::NotInClosure),
    }
}

/// Members of `levels` that admit no two-part split with cross pattern `s`.
pub fn s_indecomposable_members(levels: &LevelSets, s: &OrderedStructure) -> Result<LevelSets> {
    if s.n() != 2 {
        return Err(Error::SizeMismatch(format!(
            "two-element quotient required, found size {}",
            s.n()
        )));
    }
    levels.sig().ensure_same(s.sig())?;
    Ok(levels.filter("s-indecomposable", |r| {
        s_splits(r, s).map(|v| v.is_empty()).unwrap_or(false)
    }))
}

/// All lexicographic sums over `s` whose `i`-th part is a member of
/// `classes[i]`, up to total size `max_n`.
pub fn sum_class(s: &OrderedStructure, classes: &[LevelSets], max_n: usize) -> Result<LevelSets> {
    if classes.len() != s.n() {
        return Err(Error::SizeMismatch(format!(
            "{} classes for a quotient of size {}",
            classes.len(),
            s.n()
        )));
    }
    if s.is_empty() {
        return Err(Error::EmptyStructure);
    }
    for c in classes {
        s.sig().ensure_same(c.sig())?;
    }
    let mut levels: Vec<Vec<OrderedStructure>> = vec![Vec::new(); max_n];
    let mut parts: Vec<OrderedStructure> = Vec::with_capacity(s.n());
    fill(s, classes, max_n, 0, &mut parts, &mut levels)?;
    LevelSets::new(s.sig().clone(), max_n, levels, Provenance::Derived("sum".into()))
}

fn fill(
    s: &OrderedStructure,
    classes: &[LevelSets],
    budget: usize,
    used: usize,
    parts: &mut Vec<OrderedStructure>,
    out: &mut [Vec<OrderedStructure>],
) -> Result<()> {
    let i = parts.len();
    if i == classes.len() {
        let sum = lex_sum(s, parts)?;
        out[sum.n() - 1].push(sum);
        return Ok(());
    }
    // Each remaining part takes at least one element.
    let remaining = classes.len() - i - 1;
    for member in classes[i].iter() {
        if used + member.n() + remaining > budget {
            continue;
        }
        parts.push(member.clone());
        fill(s, classes, budget, used + member.n(), parts, out)?;
        parts.pop();
    }
    Ok(())
}

/// `prefix ⊕_s suffix` sums for a two-element `s`, up to total size `max_n`.
pub fn two_element_sum_class(
    s: &OrderedStructure,
    prefix: &LevelSets,
    suffix: &LevelSets,
    max_n: usize,
) -> Result<LevelSets> {
    if s.n() != 2 {
        return Err(Error::SizeMismatch(format!(
            "two-element quotient required, found size {}",
            s.n()
        )));
    }
    sum_class(s, &[prefix.clone(), suffix.clone()], max_n)
}

/// Ordered pairs `(i, j)`, `i != j`, with `items[i]` embedding into
/// `items[j]` respecting the label order. Empty output means an antichain.
pub fn antichain_pairs(items: &[LabeledStructure], poset: &FinitePoset) -> Result<Vec<(usize, usize)>> {
    if let Some(first) = items.first() {
        for it in &items[1..] {
            first.base().sig().ensure_same(it.base().sig())?;
        }
    }
    let mut out = Vec::new();
    for (i, a) in items.iter().enumerate() {
        for (j, b) in items.iter().enumerate() {
            if i != j && a.embeds_into(b, poset)? {
                out.push((i, j));
            }
        }
    }
    Ok(out)
}
