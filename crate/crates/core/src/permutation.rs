//! Permutations and their bichain encoding.
//!
//! A permutation `σ` of `1..=n` is encoded as the bichain whose second order
//! puts `i` below `j` exactly when `σ(i) ≤ σ(j)`. Containment of permutations
//! is then embeddability of bichains.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::structure::{OrderedStructure, Signature};

/// A permutation stored 0-based and rendered 1-based.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Permutation {
    values: Vec<usize>,
}

/// The three symmetries of the permutation square.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Symmetry {
    Inverse,
    Reverse,
    Complement,
}

impl Permutation {
    /// From 1-based values.
    pub fn new(values: Vec<usize>) -> Result<Self> {
        if values.contains(&0) {
            return Err(Error::InvalidPermutation("values are 1-based; found 0".into()));
        }
        Self::from_zero_based(values.into_iter().map(|v| v - 1).collect())
    }

    /// From 0-based values.
    pub fn from_zero_based(values: Vec<usize>) -> Result<Self> {
        let n = values.len();
        let mut seen = vec![false; n];
        for &v in &values {
            if v >= n || seen[v] {
                return Err(Error::InvalidPermutation(format!(
                    "{:?} is not a bijection of 1..{n}",
                    values.iter().map(|v| v + 1).collect::<Vec<_>>()
                )));
            }
            seen[v] = true;
        }
        Ok(Permutation { values })
    }

    pub fn identity(n: usize) -> Self {
        Permutation {
            values: (0..n).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// 0-based values.
    pub fn values(&self) -> &[usize] {
        &self.values
    }

    /// 1-based values.
    pub fn one_based(&self) -> Vec<usize> {
        self.values.iter().map(|v| v + 1).collect()
    }

    /// Compact digit string, available when `n ≤ 9`.
    pub fn compact(&self) -> Option<String> {
        (self.len() <= 9).then(|| self.values.iter().map(|v| char::from(b'1' + *v as u8)).collect())
    }

    /// Whether some subsequence of `self` is order-isomorphic to `pattern`.
    pub fn contains(&self, pattern: &Permutation) -> bool {
        let k = pattern.len();
        let n = self.len();
        if k > n {
            return false;
        }
        if k == 0 {
            return true;
        }
        let mut chosen = vec![0usize; k];
        let mut depth = 0usize;
        let mut cursor = 0usize;
        loop {
            let mut placed = false;
            while cursor + (k - depth) <= n {
                let y = cursor;
                cursor += 1;
                let ok = (0..depth).all(|x| {
                    (pattern.values[x] < pattern.values[depth]) == (self.values[chosen[x]] < self.values[y])
                });
                if ok {
                    chosen[depth] = y;
                    placed = true;
                    break;
                }
            }
            if placed {
                depth += 1;
                if depth == k {
                    return true;
                }
                cursor = chosen[depth - 1] + 1;
            } else {
                if depth == 0 {
                    return false;
                }
                depth -= 1;
                cursor = chosen[depth] + 1;
            }
        }
    }

    /// The bichain `C_σ`: position order plus `i ≤_σ j ⇔ σ(i) ≤ σ(j)`.
    pub fn to_bichain(&self) -> OrderedStructure {
        let n = self.len();
        let mut bits = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                bits.push(self.values[i] <= self.values[j]);
            }
        }
        OrderedStructure::from_bits_unchecked(n, Signature::bichain(), bits)
    }

    /// The unique permutation whose bichain is `b`.
    pub fn from_bichain(b: &OrderedStructure) -> Result<Self> {
        if !b.sig().is_bichain() {
            return Err(Error::SignatureMismatch(format!(
                "expected a bichain signature 'L', found '{}'",
                b.sig().codes()
            )));
        }
        let n = b.n();
        // The value of i is the number of elements strictly below it.
        let values = (0..n)
            .map(|i| (0..n).filter(|&j| j != i && b.rel(0, j, i)).count())
            .collect();
        Permutation::from_zero_based(values)
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.len()];
        for (i, &v) in self.values.iter().enumerate() {
            inv[v] = i;
        }
        Permutation { values: inv }
    }

    pub fn reverse(&self) -> Self {
        Permutation {
            values: self.values.iter().rev().copied().collect(),
        }
    }

    pub fn complement(&self) -> Self {
        let n = self.len();
        Permutation {
            values: self.values.iter().map(|v| n - 1 - v).collect(),
        }
    }

    pub fn apply(&self, op: Symmetry) -> Self {
        match op {
            Symmetry::Inverse => self.inverse(),
            Symmetry::Reverse => self.reverse(),
            Symmetry::Complement => self.complement(),
        }
    }

    /// Simplicity checked directly on values: no window of `2..n-1`
    /// consecutive positions holds a contiguous range of values.
    pub fn is_simple(&self) -> bool {
        let n = self.len();
        for a in 0..n {
            let (mut lo, mut hi) = (self.values[a], self.values[a]);
            for b in (a + 1)..n {
                lo = lo.min(self.values[b]);
                hi = hi.max(self.values[b]);
                let len = b - a + 1;
                if len < n && hi - lo + 1 == len {
                    return false;
                }
            }
        }
        true
    }

    /// All permutations of `0..n` in lexicographic order.
    pub fn all(n: usize) -> impl Iterator<Item = Permutation> {
        use itertools::Itertools;
        (0..n)
            .permutations(n)
            .map(|values| Permutation { values })
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for v in &self.values {
            if !first {
                f.write_str(" ")?;
            }
            write!(f, "{}", v + 1)?;
            first = false;
        }
        Ok(())
    }
}

impl FromStr for Permutation {
    type Err = Error;

    /// Accepts whitespace- or comma-separated 1-based integers, or a compact
    /// digit string when `n ≤ 9`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let tokens: Vec<&str> = s
            .split(|c: char| c.is_whitespace() || c == ',')
            .filter(|t| !t.is_empty())
            .collect();
        let values: Vec<usize> = if tokens.len() == 1 && tokens[0].len() > 1 {
            let t = tokens[0];
            if t.len() > 9 {
                return Err(Error::InvalidPermutation(format!(
                    "compact form '{t}' is only accepted for n <= 9"
                )));
            }
            t.chars()
                .map(|c| {
                    c.to_digit(10)
                        .map(|d| d as usize)
                        .ok_or_else(|| Error::InvalidPermutation(format!("unexpected character '{c}'")))
                })
                .collect::<Result<_>>()?
        } else {
            tokens
                .iter()
                .map(|t| {
                    t.parse::<usize>()
                        .map_err(|_| Error::InvalidPermutation(format!("invalid integer '{t}'")))
                })
                .collect::<Result<_>>()?
        };
        Permutation::new(values)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    #[test]
    fn contains_examples() {
        assert!(p("391867452").contains(&p("51342")));
        assert!(p("2413").contains(&p("2413")));
        assert!(!p("2413").contains(&p("3142")));
        assert!(p("21").contains(&Permutation::identity(0)));
        assert!(!p("12").contains(&p("123")));
    }

    #[test]
    fn second_order_listing() {
        // Elements listed by the second order of 2 4 6 8 10 1 3 5 7 9.
        let sigma = p("2 4 6 8 10 1 3 5 7 9");
        let b = sigma.to_bichain();
        let mut elems: Vec<usize> = (0..10).collect();
        elems.sort_by(|&i, &j| {
            if i == j {
                std::cmp::Ordering::Equal
            } else if b.rel(0, i, j) {
                std::cmp::Ordering::Less
            } else {
                std::cmp::Ordering::Greater
            }
        });
        let listed: Vec<usize> = elems.iter().map(|e| e + 1).collect();
        assert_eq!(listed, vec![6, 1, 7, 2, 8, 3, 9, 4, 10, 5]);
    }

    #[test]
    fn bichain_of_identity_and_reversal() {
        let id = Permutation::identity(4).to_bichain();
        for i in 0..4 {
            for j in 0..4 {
                assert_eq!(id.rel(0, i, j), i <= j);
            }
        }
        let rev = p("21").to_bichain();
        assert!(rev.rel(0, 1, 0) && !rev.rel(0, 0, 1));
    }

    #[test]
    fn from_bichain_rejects_other_signatures() {
        let s = OrderedStructure::singleton(Signature::binary());
        assert!(Permutation::from_bichain(&s).is_err());
    }

    #[test]
    fn symmetries() {
        assert_eq!(p("2413").inverse(), p("3142"));
        assert_eq!(Permutation::identity(5).inverse(), Permutation::identity(5));
        assert_eq!(p("2413").reverse(), p("3142"));
        assert_eq!(p("132").complement(), p("312"));
    }

    #[test]
    fn parsing_and_rendering() {
        assert_eq!(p("3 9 1 8 6 7 4 5 2"), p("391867452"));
        assert_eq!(p("391867452").to_string(), "3 9 1 8 6 7 4 5 2");
        assert_eq!(p("1,3,2"), p("132"));
        assert_eq!(p("1"), Permutation::identity(1));
        assert!("1234567891".parse::<Permutation>().is_err());
        assert!("1 1".parse::<Permutation>().is_err());
        assert!("0 1".parse::<Permutation>().is_err());
    }

    #[test]
    fn simple_check_direct() {
        assert!(p("2413").is_simple());
        assert!(p("3142").is_simple());
        assert!(!p("123").is_simple());
        assert!(p("12").is_simple());
        assert!(!p("3412").is_simple());
    }
}
