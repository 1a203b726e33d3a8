//! Hereditary classes materialized level by level.
//!
//! A [`LevelSets`] holds, for each size `1..=max_n`, the sorted distinct
//! members of a class. Classes come either from a forbidden basis
//! ([`enumerate_avoiders`]) or as the sum-closure of a set of indecomposable
//! generators ([`enumerate_closure`]).

mod archive;
mod enumerate;
mod generators;
mod sums;

use std::collections::HashSet;

pub use archive::{profile_csv, read_archive, write_archive};
pub use enumerate::{bounds, enumerate_avoiders, enumerate_closure, EnumConfig, DEFAULT_MAX_CANDIDATES};
pub use generators::{GeneratorFamily, GeneratorSpec};
pub use sums::{
    antichain_pairs, classify_sum_type, s_indecomposable_members, sigma_membership, sum_class, two_element_sum_class,
    SumType,
};

use crate::error::{Error, Result};
use crate::series::TruncatedSeries;
use crate::structure::{OrderedStructure, Signature};

/// Where a level set came from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Provenance {
    /// `Forb(basis)`.
    Forbidden(Vec<OrderedStructure>),
    /// Sum-closure of a generator set.
    Closure(GeneratorSpec),
    /// Built from other level sets (union, intersection, filtering).
    Derived(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LevelSets {
    sig: Signature,
    max_n: usize,
    levels: Vec<Vec<OrderedStructure>>,
    provenance: Provenance,
}

impl LevelSets {
    /// Sorts and deduplicates every level. `levels[k]` holds size `k + 1`.
    pub fn new(
        sig: Signature,
        max_n: usize,
        mut levels: Vec<Vec<OrderedStructure>>,
        provenance: Provenance,
    ) -> Result<Self> {
        if levels.len() != max_n {
            return Err(Error::SizeMismatch(format!("{} levels for max_n = {max_n}", levels.len())));
        }
        for (k, level) in levels.iter_mut().enumerate() {
            for s in level.iter() {
                sig.ensure_same(s.sig())?;
                if s.n() != k + 1 {
                    return Err(Error::SizeMismatch(format!(
                        "structure of size {} in level {}",
                        s.n(),
                        k + 1
                    )));
                }
            }
            level.sort();
            level.dedup();
        }
        Ok(LevelSets {
            sig,
            max_n,
            levels,
            provenance,
        })
    }

    pub fn sig(&self) -> &Signature {
        &self.sig
    }

    pub fn max_n(&self) -> usize {
        self.max_n
    }

    pub fn provenance(&self) -> &Provenance {
        &self.provenance
    }

    /// Members of size `n` (`1 ≤ n ≤ max_n`); empty outside that range.
    pub fn level(&self, n: usize) -> &[OrderedStructure] {
        if n == 0 || n > self.max_n {
            return &[];
        }
        &self.levels[n - 1]
    }

    /// `|level n|` for `n = 1..=max_n`.
    pub fn counts(&self) -> Vec<usize> {
        self.levels.iter().map(Vec::len).collect()
    }

    pub fn contains(&self, s: &OrderedStructure) -> bool {
        s.sig() == &self.sig && self.level(s.n()).binary_search(s).is_ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = &OrderedStructure> {
        self.levels.iter().flatten()
    }

    /// Members satisfying a predicate.
    pub fn filter(&self, label: &str, keep: impl Fn(&OrderedStructure) -> bool) -> LevelSets {
        let levels = self
            .levels
            .iter()
            .map(|l| l.iter().filter(|s| keep(s)).cloned().collect())
            .collect();
        LevelSets {
            sig: self.sig.clone(),
            max_n: self.max_n,
            levels,
            provenance: Provenance::Derived(label.to_string()),
        }
    }

    fn combine(&self, other: &LevelSets, label: &str, union: bool) -> Result<LevelSets> {
        self.sig.ensure_same(&other.sig)?;
        if self.max_n != other.max_n {
            return Err(Error::SizeMismatch(format!(
                "level sets of depth {} and {}",
                self.max_n, other.max_n
            )));
        }
        let levels = self
            .levels
            .iter()
            .zip(&other.levels)
            .map(|(a, b)| {
                if union {
                    let mut all: Vec<OrderedStructure> = a.iter().chain(b).cloned().collect();
                    all.sort();
                    all.dedup();
                    all
                } else {
                    a.iter().filter(|s| b.binary_search(s).is_ok()).cloned().collect()
                }
            })
            .collect();
        Ok(LevelSets {
            sig: self.sig.clone(),
            max_n: self.max_n,
            levels,
            provenance: Provenance::Derived(label.to_string()),
        })
    }

    pub fn union(&self, other: &LevelSets) -> Result<LevelSets> {
        self.combine(other, "union", true)
    }

    pub fn intersection(&self, other: &LevelSets) -> Result<LevelSets> {
        self.combine(other, "intersection", false)
    }

    /// Every one-point deletion of a level-`(n+1)` member is a level-`n`
    /// member.
    pub fn is_hereditary(&self) -> bool {
        for n in 1..self.max_n {
            let below: HashSet<&OrderedStructure> = self.level(n).iter().collect();
            for s in self.level(n + 1) {
                if (0..s.n()).any(|x| !below.contains(&s.delete_point(x))) {
                    return false;
                }
            }
        }
        true
    }
}

/// Generating series of a level set truncated at `max_n`. The constant term
/// counts the empty structure only when `include_empty` is set.
pub fn profile(levels: &LevelSets, include_empty: bool) -> TruncatedSeries {
    let mut c: Vec<i64> = vec![i64::from(include_empty)];
    c.extend(levels.counts().iter().map(|&k| k as i64));
    TruncatedSeries::from_integers(&c).expect("non-empty coefficient list")
}
