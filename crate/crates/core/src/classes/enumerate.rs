//! Level-by-level growth of hereditary classes.
//!
//! Every member of size `n+1` deletes its last position to a member of size
//! `n`, so extending each level-`n` member by one new last element reaches
//! the whole next level. A candidate survives only when all its one-point
//! deletions are level-`n` members; the class-specific predicate then only
//! has to judge the candidate itself.

use std::collections::HashSet;

use rayon::prelude::*;

use super::{GeneratorSpec, LevelSets, Provenance};
use crate::decomposition::is_indecomposable;
use crate::error::{Error, Result};
use crate::structure::{OrderedStructure, RelationKind, Signature};

pub const DEFAULT_MAX_CANDIDATES: usize = 1_000_000;

/// Resource and parallelism settings for enumeration.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EnumConfig {
    /// Worker threads; `None` uses the global pool.
    pub workers: Option<usize>,
    /// Ceiling on candidates generated for a single level.
    pub max_candidates: usize,
}

impl Default for EnumConfig {
    fn default() -> Self {
        EnumConfig {
            workers: None,
            max_candidates: DEFAULT_MAX_CANDIDATES,
        }
    }
}

impl EnumConfig {
    pub fn with_workers(workers: usize) -> Self {
        EnumConfig {
            workers: Some(workers),
            ..Default::default()
        }
    }

    fn run<T: Send>(&self, job: impl FnOnce() -> T + Send) -> Result<T> {
        match self.workers {
            None => Ok(job()),
            Some(k) => {
                let pool = rayon::ThreadPoolBuilder::new()
                    .num_threads(k.max(1))
                    .build()
                    .map_err(|e| Error::InvalidParameter(format!("cannot build worker pool: {e}")))?;
                Ok(pool.install(job))
            }
        }
    }
}

/// Number of one-point extensions of a size-`n` structure.
fn extension_count(sig: &Signature, n: usize) -> usize {
    sig.kinds().iter().fold(1usize, |acc, kind| {
        let per = match kind {
            RelationKind::LinearOrder => n + 1,
            RelationKind::ReflexiveBinary => 1usize.checked_shl(2 * n as u32).unwrap_or(usize::MAX),
        };
        acc.saturating_mul(per)
    })
}

/// All structures of size `n+1` whose restriction to `0..n` is `parent`.
#[allow(clippy::needless_range_loop)]
fn extensions(parent: &OrderedStructure) -> Vec<OrderedStructure> {
    let n = parent.n();
    let m = n + 1;
    let sig = parent.sig();
    // Per relation: the list of (new row, new column) assignments, where
    // row[x] = rel(new, x) and col[x] = rel(x, new) for old x.
    let per_relation: Vec<Vec<(Vec<bool>, Vec<bool>)>> = sig
        .kinds()
        .iter()
        .enumerate()
        .map(|(r, kind)| match kind {
            RelationKind::LinearOrder => {
                let rank: Vec<usize> = (0..n)
                    .map(|x| (0..n).filter(|&y| y != x && parent.rel(r, y, x)).count())
                    .collect();
                (0..=n)
                    .map(|slot| {
                        let row: Vec<bool> = rank.iter().map(|&k| k >= slot).collect();
                        let col: Vec<bool> = row.iter().map(|b| !b).collect();
                        (row, col)
                    })
                    .collect()
            }
            RelationKind::ReflexiveBinary => (0..(1u64 << (2 * n)))
                .map(|code| {
                    let row = (0..n).map(|x| code >> (2 * x) & 1 == 1).collect();
                    let col = (0..n).map(|x| code >> (2 * x + 1) & 1 == 1).collect();
                    (row, col)
                })
                .collect(),
        })
        .collect();

    let mut out = Vec::new();
    let mut choice = vec![0usize; sig.d()];
    loop {
        let mut bits = Vec::with_capacity(sig.d() * m * m);
        for (r, options) in per_relation.iter().enumerate() {
            let (row, col) = &options[choice[r]];
            for i in 0..m {
                for j in 0..m {
                    bits.push(match (i == n, j == n) {
                        (false, false) => parent.rel(r, i, j),
                        (false, true) => col[i],
                        (true, false) => row[j],
                        (true, true) => true,
                    });
                }
            }
        }
        out.push(OrderedStructure::from_bits_unchecked(m, sig.clone(), bits));
        // Odometer over the per-relation choices.
        let mut r = 0;
        loop {
            if r == choice.len() {
                return out;
            }
            choice[r] += 1;
            if choice[r] < per_relation[r].len() {
                break;
            }
            choice[r] = 0;
            r += 1;
        }
    }
}

/// Members level by level plus the rejected candidates whose one-point
/// deletions were all members (the bounds of the class).
struct Growth {
    levels: Vec<Vec<OrderedStructure>>,
    rejected: Vec<OrderedStructure>,
}

fn grow<F>(sig: &Signature, max_n: usize, config: &EnumConfig, accept: F) -> Result<Growth>
where
    F: Fn(&OrderedStructure) -> bool + Sync,
{
    if max_n < 1 {
        return Err(Error::InvalidParameter("max_n must be >= 1".into()));
    }
    let mut levels: Vec<Vec<OrderedStructure>> = Vec::with_capacity(max_n);
    let mut rejected = Vec::new();
    let one = OrderedStructure::singleton(sig.clone());
    if accept(&one) {
        levels.push(vec![one]);
    } else {
        rejected.push(one);
        levels.push(Vec::new());
    }
    for n in 1..max_n {
        let parents = &levels[n - 1];
        let total = parents.len().saturating_mul(extension_count(sig, n));
        if total > config.max_candidates {
            return Err(Error::ResourceCap(format!(
                "{total} candidates at size {} exceed the ceiling of {}",
                n + 1,
                config.max_candidates
            )));
        }
        let known: HashSet<&OrderedStructure> = parents.iter().collect();
        let (mut members, mut rejects): (Vec<OrderedStructure>, Vec<OrderedStructure>) = config.run(|| {
            let per_parent: Vec<(Vec<OrderedStructure>, Vec<OrderedStructure>)> = parents
                .par_iter()
                .map(|parent| {
                    let mut keep = Vec::new();
                    let mut drop = Vec::new();
                    for cand in extensions(parent) {
                        // Deleting the last point gives back the parent.
                        if (0..n).any(|x| !known.contains(&cand.delete_point(x))) {
                            continue;
                        }
                        if accept(&cand) {
                            keep.push(cand);
                        } else {
                            drop.push(cand);
                        }
                    }
                    (keep, drop)
                })
                .collect();
            let mut keep = Vec::new();
            let mut drop = Vec::new();
            for (k, d) in per_parent {
                keep.extend(k);
                drop.extend(d);
            }
            (keep, drop)
        })?;
        members.sort();
        members.dedup();
        rejects.sort();
        rejects.dedup();
        rejected.extend(rejects);
        levels.push(members);
    }
    Ok(Growth { levels, rejected })
}

/// `Forb(basis)` up to size `max_n`.
pub fn enumerate_avoiders(
    sig: &Signature,
    basis: &[OrderedStructure],
    max_n: usize,
    config: &EnumConfig,
) -> Result<LevelSets> {
    for b in basis {
        sig.ensure_same(b.sig())?;
    }
    let basis_set: HashSet<&OrderedStructure> = basis.iter().collect();
    let grown = grow(sig, max_n, config, |c| !basis_set.contains(c))?;
    let mut sorted_basis = basis.to_vec();
    sorted_basis.sort();
    sorted_basis.dedup();
    LevelSets::new(sig.clone(), max_n, grown.levels, Provenance::Forbidden(sorted_basis))
}

/// The sum-closure `ΣD` up to size `max_n`.
///
/// Once all one-point deletions of a candidate lie in `ΣD`, every proper
/// restriction does too, so the candidate is in `ΣD` exactly when it is
/// decomposable or itself a generator.
pub fn enumerate_closure(spec: &GeneratorSpec, max_n: usize, config: &EnumConfig) -> Result<LevelSets> {
    spec.check_hereditary(max_n)?;
    let grown = grow(spec.sig(), max_n, config, |c| !is_indecomposable(c) || spec.contains(c))?;
    LevelSets::new(spec.sig().clone(), max_n, grown.levels, Provenance::Closure(spec.clone()))
}

/// Bounds of a hereditary class up to size `max_n`: non-members all of whose
/// one-point deletions are members. Sorted by size, then canonically.
pub fn bounds<F>(membership: F, sig: &Signature, max_n: usize, config: &EnumConfig) -> Result<Vec<OrderedStructure>>
where
    F: Fn(&OrderedStructure) -> bool + Sync,
{
    let mut found = grow(sig, max_n, config, membership)?.rejected;
    found.sort();
    Ok(found)
}
