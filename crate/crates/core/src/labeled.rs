//! Structures labeled by a finite poset, and the Higman order on words.

use crate::error::{Error, Result};
use crate::structure::{find_embedding, OrderedStructure};

/// A finite poset on `0..m`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FinitePoset {
    m: usize,
    leq: Vec<bool>,
}

impl FinitePoset {
    /// Validates reflexivity, antisymmetry and transitivity of a row-major
    /// `m*m` matrix.
    pub fn new(m: usize, leq: Vec<bool>) -> Result<Self> {
        if leq.len() != m * m {
            return Err(Error::InvalidPoset(format!("{} entries for a poset of size {m}", leq.len())));
        }
        let at = |i: usize, j: usize| leq[i * m + j];
        for i in 0..m {
            if !at(i, i) {
                return Err(Error::InvalidPoset(format!("not reflexive at {i}")));
            }
            for j in 0..m {
                if i != j && at(i, j) && at(j, i) {
                    return Err(Error::InvalidPoset(format!("not antisymmetric on ({i}, {j})")));
                }
                for k in 0..m {
                    if at(i, j) && at(j, k) && !at(i, k) {
                        return Err(Error::InvalidPoset(format!("not transitive on ({i}, {j}, {k})")));
                    }
                }
            }
        }
        Ok(FinitePoset { m, leq })
    }

    /// The chain `0 < 1 < … < k-1`.
    pub fn chain(k: usize) -> Self {
        let leq = (0..k * k).map(|e| e / k <= e % k).collect();
        FinitePoset { m: k, leq }
    }

    /// The `k`-element antichain.
    pub fn antichain(k: usize) -> Self {
        let leq = (0..k * k).map(|e| e / k == e % k).collect();
        FinitePoset { m: k, leq }
    }

    /// The componentwise product `self × other`; element `(a, b)` has index
    /// `a * other.size() + b`.
    pub fn product(&self, other: &FinitePoset) -> Self {
        let m = self.m * other.m;
        let mut leq = Vec::with_capacity(m * m);
        for x in 0..m {
            for y in 0..m {
                let (xa, xb) = (x / other.m, x % other.m);
                let (ya, yb) = (y / other.m, y % other.m);
                leq.push(self.leq(xa, ya) && other.leq(xb, yb));
            }
        }
        FinitePoset { m, leq }
    }

    pub fn size(&self) -> usize {
        self.m
    }

    #[inline]
    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.leq[a * self.m + b]
    }

    fn check_label(&self, label: usize) -> Result<()> {
        if label < self.m {
            Ok(())
        } else {
            Err(Error::LabelOutOfRange { label, size: self.m })
        }
    }
}

/// A structure together with one poset label per domain element.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LabeledStructure {
    base: OrderedStructure,
    labels: Vec<usize>,
}

impl LabeledStructure {
    pub fn new(base: OrderedStructure, labels: Vec<usize>) -> Result<Self> {
        if labels.len() != base.n() {
            return Err(Error::SizeMismatch(format!(
                "{} labels for a structure of size {}",
                labels.len(),
                base.n()
            )));
        }
        Ok(LabeledStructure { base, labels })
    }

    /// Every element carries the same label.
    pub fn uniform(base: OrderedStructure, label: usize) -> Self {
        let labels = vec![label; base.n()];
        LabeledStructure { base, labels }
    }

    pub fn base(&self) -> &OrderedStructure {
        &self.base
    }

    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    /// Whether some embedding `h` of the bases has
    /// `labels[x] ≤ other.labels[h(x)]` for every `x`.
    pub fn embeds_into(&self, other: &LabeledStructure, poset: &FinitePoset) -> Result<bool> {
        self.base.sig().ensure_same(other.base.sig())?;
        for &l in self.labels.iter().chain(&other.labels) {
            poset.check_label(l)?;
        }
        Ok(find_embedding(&self.base, &other.base, |x, y| {
            poset.leq(self.labels[x], other.labels[y])
        })
        .is_some())
    }
}

/// Higman's subword order over a poset alphabet.
///
/// Greedy leftmost matching is exact here: matching a letter as early as
/// possible never removes options for the letters after it.
pub fn higman_leq(w: &[usize], w2: &[usize], poset: &FinitePoset) -> Result<bool> {
    for &l in w.iter().chain(w2) {
        poset.check_label(l)?;
    }
    let mut j = 0;
    for &a in w {
        while j < w2.len() && !poset.leq(a, w2[j]) {
            j += 1;
        }
        if j == w2.len() {
            return Ok(false);
        }
        j += 1;
    }
    Ok(true)
}
