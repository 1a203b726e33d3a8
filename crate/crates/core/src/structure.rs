//! Finite ordered binary structures.
//!
//! A structure lives on the domain `0..n`. The natural order of the domain is
//! implicit: it is never stored, yet it takes part in every embedding and
//! interval computation as an extra linear order. On top of it a structure
//! carries `d` reflexive binary relations, each tagged either as a linear
//! order or as an arbitrary reflexive relation.
//!
//! Because the position order is part of the structure, two structures are
//! isomorphic exactly when they are equal, so plain equality doubles as the
//! isomorphism test everywhere in this crate.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Tag of a stored relation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum RelationKind {
    /// A linear order on the domain (reflexive, total, transitive, antisymmetric).
    LinearOrder,
    /// Any reflexive binary relation.
    ReflexiveBinary,
}

impl RelationKind {
    pub fn code(self) -> char {
        match self {
            RelationKind::LinearOrder => 'L',
            RelationKind::ReflexiveBinary => 'B',
        }
    }

    pub fn from_code(c: char) -> Option<Self> {
        match c {
            'L' => Some(RelationKind::LinearOrder),
            'B' => Some(RelationKind::ReflexiveBinary),
            _ => None,
        }
    }
}

/// The relation tags of a structure; `d` is `kinds.len()`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Signature {
    kinds: Vec<RelationKind>,
}

impl Signature {
    pub fn new(kinds: Vec<RelationKind>) -> Self {
        Signature { kinds }
    }

    /// One linear order: the encoding of permutations.
    pub fn bichain() -> Self {
        Signature::new(vec![RelationKind::LinearOrder])
    }

    /// One arbitrary reflexive binary relation.
    pub fn binary() -> Self {
        Signature::new(vec![RelationKind::ReflexiveBinary])
    }

    pub fn d(&self) -> usize {
        self.kinds.len()
    }

    pub fn kinds(&self) -> &[RelationKind] {
        &self.kinds
    }

    pub fn is_bichain(&self) -> bool {
        self.kinds == [RelationKind::LinearOrder]
    }

    pub fn codes(&self) -> String {
        self.kinds.iter().map(|k| k.code()).collect()
    }

    pub(crate) fn ensure_same(&self, other: &Signature) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::SignatureMismatch(format!(
                "'{}' vs '{}'",
                self.codes(),
                other.codes()
            )))
        }
    }
}

/// A finite ordered structure with reflexive binary relations.
///
/// The derived ordering compares size, then signature, then the relation
/// bits in serialization order (relation by relation, row by row). For
/// structures of equal size and signature this is the same as comparing
/// their text serializations byte by byte.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct OrderedStructure {
    n: usize,
    sig: Signature,
    bits: Vec<bool>,
}

impl OrderedStructure {
    /// Builds a structure from `d` row-major `n*n` matrices and validates
    /// reflexivity and the linear-order tags.
    pub fn new(n: usize, sig: Signature, matrices: Vec<Vec<bool>>) -> Result<Self> {
        if matrices.len() != sig.d() {
            return Err(Error::SizeMismatch(format!(
                "{} relation matrices for a signature with d = {}",
                matrices.len(),
                sig.d()
            )));
        }
        let mut bits = Vec::with_capacity(sig.d() * n * n);
        for (r, m) in matrices.iter().enumerate() {
            if m.len() != n * n {
                return Err(Error::SizeMismatch(format!(
                    "relation {r} has {} entries, expected {}",
                    m.len(),
                    n * n
                )));
            }
            bits.extend_from_slice(m);
        }
        let s = OrderedStructure { n, sig, bits };
        s.validate()?;
        Ok(s)
    }

    /// Builds a structure from an entry function `f(relation, i, j)`.
    pub fn from_fn(n: usize, sig: Signature, f: impl Fn(usize, usize, usize) -> bool) -> Result<Self> {
        let d = sig.d();
        let mut bits = Vec::with_capacity(d * n * n);
        for r in 0..d {
            for i in 0..n {
                for j in 0..n {
                    bits.push(f(r, i, j));
                }
            }
        }
        let s = OrderedStructure { n, sig, bits };
        s.validate()?;
        Ok(s)
    }

    /// Internal constructor for entry data already known to be valid.
    pub(crate) fn from_bits_unchecked(n: usize, sig: Signature, bits: Vec<bool>) -> Self {
        debug_assert_eq!(bits.len(), sig.d() * n * n);
        OrderedStructure { n, sig, bits }
    }

    /// The one-element structure of a signature.
    pub fn singleton(sig: Signature) -> Self {
        let d = sig.d();
        OrderedStructure {
            n: 1,
            sig,
            bits: vec![true; d],
        }
    }

    /// The empty structure of a signature.
    pub fn empty(sig: Signature) -> Self {
        OrderedStructure {
            n: 0,
            sig,
            bits: Vec::new(),
        }
    }

    fn validate(&self) -> Result<()> {
        let n = self.n;
        for (r, kind) in self.sig.kinds().iter().enumerate() {
            for i in 0..n {
                if !self.rel(r, i, i) {
                    return Err(Error::NotReflexive { relation: r, row: i });
                }
            }
            if *kind == RelationKind::LinearOrder {
                for i in 0..n {
                    for j in (i + 1)..n {
                        if self.rel(r, i, j) == self.rel(r, j, i) {
                            return Err(Error::NotLinearOrder {
                                relation: r,
                                reason: format!("pair ({i}, {j}) is not comparable in exactly one direction"),
                            });
                        }
                    }
                }
                for i in 0..n {
                    for j in 0..n {
                        if !self.rel(r, i, j) {
                            continue;
                        }
                        for k in 0..n {
                            if self.rel(r, j, k) && !self.rel(r, i, k) {
                                return Err(Error::NotLinearOrder {
                                    relation: r,
                                    reason: format!("not transitive on ({i}, {j}, {k})"),
                                });
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn sig(&self) -> &Signature {
        &self.sig
    }

    pub fn d(&self) -> usize {
        self.sig.d()
    }

    /// Entry `(i, j)` of stored relation `r`.
    #[inline]
    pub fn rel(&self, r: usize, i: usize, j: usize) -> bool {
        self.bits[(r * self.n + i) * self.n + j]
    }

    /// The pair pattern `(rel(i, j), rel(j, i))` of every stored relation,
    /// packed two bits per relation.
    #[inline]
    pub(crate) fn pair_pattern(&self, i: usize, j: usize) -> u64 {
        let mut code = 0u64;
        for r in 0..self.d() {
            code = (code << 2) | ((self.rel(r, i, j) as u64) << 1) | self.rel(r, j, i) as u64;
        }
        code
    }

    /// The relation bits, relation-major then row-major.
    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    /// Restriction to a strictly increasing index set.
    pub fn restriction(&self, indices: &[usize]) -> Result<Self> {
        for (k, &i) in indices.iter().enumerate() {
            if i >= self.n {
                return Err(Error::IndexOutOfRange { index: i, size: self.n });
            }
            if k > 0 && indices[k - 1] >= i {
                return Err(Error::InvalidParameter(
                    "restriction indices must be strictly increasing".into(),
                ));
            }
        }
        Ok(self.restrict_unchecked(indices))
    }

    pub(crate) fn restrict_unchecked(&self, indices: &[usize]) -> Self {
        let m = indices.len();
        let d = self.d();
        let mut bits = Vec::with_capacity(d * m * m);
        for r in 0..d {
            for &i in indices {
                for &j in indices {
                    bits.push(self.rel(r, i, j));
                }
            }
        }
        OrderedStructure {
            n: m,
            sig: self.sig.clone(),
            bits,
        }
    }

    /// Restriction to the domain minus one point.
    pub fn delete_point(&self, x: usize) -> Self {
        let keep: Vec<usize> = (0..self.n).filter(|&i| i != x).collect();
        self.restrict_unchecked(&keep)
    }

    /// Distinct restrictions of size `k`, sorted.
    pub fn restrictions_of_size(&self, k: usize) -> Vec<Self> {
        use itertools::Itertools;
        let mut out: Vec<Self> = (0..self.n)
            .combinations(k)
            .map(|idx| self.restrict_unchecked(&idx))
            .collect();
        out.sort();
        out.dedup();
        out
    }

    /// Whether `self` embeds into `host`: some strictly increasing injection
    /// of the domain matches every relation entry in both directions.
    pub fn embeds_into(&self, host: &OrderedStructure) -> Result<bool> {
        self.sig.ensure_same(&host.sig)?;
        Ok(find_embedding(self, host, |_, _| true).is_some())
    }

    /// Serializes to the `ostruct 1` text format (trailing newline included).
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        out.push_str("ostruct 1\n");
        out.push_str(&format!("n {}\n", self.n));
        out.push_str(&format!("d {}\n", self.d()));
        out.push_str(&format!("kinds {}\n", self.sig.codes()));
        for r in 0..self.d() {
            out.push_str(&format!("rel {r}\n"));
            for i in 0..self.n {
                for j in 0..self.n {
                    out.push(if self.rel(r, i, j) { '1' } else { '0' });
                }
                out.push('\n');
            }
        }
        out
    }

    /// Parses a single structure in `ostruct 1` format.
    pub fn parse_text(text: &str) -> Result<Self> {
        let lines: Vec<(usize, &str)> = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim_end()))
            .filter(|(_, l)| !l.trim().is_empty())
            .collect();
        let mut parsed = parse_blocks(&lines)?;
        match parsed.len() {
            1 => Ok(parsed.pop().unwrap()),
            0 => Err(Error::parse(1, 1, "no structure found")),
            k => Err(Error::parse(1, 1, format!("expected one structure, found {k}"))),
        }
    }

    /// Parses any number of `ostruct 1` blocks (blank lines between blocks
    /// are optional).
    pub fn parse_many(text: &str) -> Result<Vec<Self>> {
        let lines: Vec<(usize, &str)> = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim_end()))
            .filter(|(_, l)| !l.trim().is_empty())
            .collect();
        parse_blocks(&lines)
    }
}

impl fmt::Display for OrderedStructure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl FromStr for OrderedStructure {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        OrderedStructure::parse_text(s)
    }
}

fn header_value<'a>(line: (usize, &'a str), key: &str) -> Result<&'a str> {
    let (no, text) = line;
    let mut parts = text.splitn(2, ' ');
    let head = parts.next().unwrap_or("");
    if head != key {
        return Err(Error::parse(no, 1, format!("expected '{key}', found '{head}'")));
    }
    parts
        .next()
        .map(str::trim)
        .ok_or_else(|| Error::parse(no, key.len() + 1, format!("missing value after '{key}'")))
}

fn parse_usize(line: (usize, &str), key: &str) -> Result<usize> {
    let v = header_value(line, key)?;
    v.parse()
        .map_err(|_| Error::parse(line.0, key.len() + 2, format!("invalid integer '{v}'")))
}

fn parse_blocks(lines: &[(usize, &str)]) -> Result<Vec<OrderedStructure>> {
    let mut out = Vec::new();
    let mut pos = 0;
    let next = |pos: &mut usize| -> Result<(usize, &str)> {
        let line = lines
            .get(*pos)
            .copied()
            .ok_or_else(|| Error::parse(lines.last().map_or(1, |l| l.0 + 1), 1, "unexpected end of input"))?;
        *pos += 1;
        Ok(line)
    };
    while pos < lines.len() {
        let magic = next(&mut pos)?;
        if magic.1.trim() != "ostruct 1" {
            return Err(Error::parse(magic.0, 1, format!("expected 'ostruct 1', found '{}'", magic.1)));
        }
        let n = parse_usize(next(&mut pos)?, "n")?;
        let d = parse_usize(next(&mut pos)?, "d")?;
        let kinds_line = next(&mut pos)?;
        if kinds_line.1.split(' ').next() != Some("kinds") {
            return Err(Error::parse(kinds_line.0, 1, "expected 'kinds'"));
        }
        // `d 0` leaves nothing after the keyword.
        let codes = kinds_line.1["kinds".len()..].trim();
        let mut kinds = Vec::with_capacity(d);
        for (c_idx, c) in codes.chars().enumerate() {
            kinds.push(RelationKind::from_code(c).ok_or_else(|| {
                Error::parse(kinds_line.0, 7 + c_idx, format!("unknown relation kind '{c}'"))
            })?);
        }
        if kinds.len() != d {
            return Err(Error::parse(
                kinds_line.0,
                7,
                format!("{} kinds listed, expected {d}", kinds.len()),
            ));
        }
        let sig = Signature::new(kinds);
        let mut bits = Vec::with_capacity(d * n * n);
        for r in 0..d {
            let rel_line = next(&mut pos)?;
            let idx = parse_usize(rel_line, "rel")?;
            if idx != r {
                return Err(Error::parse(rel_line.0, 5, format!("expected 'rel {r}', found 'rel {idx}'")));
            }
            for _ in 0..n {
                let (no, row) = next(&mut pos)?;
                let row = row.trim();
                if row.chars().count() != n {
                    return Err(Error::parse(no, 1, format!("row has {} characters, expected {n}", row.chars().count())));
                }
                for (col, c) in row.chars().enumerate() {
                    match c {
                        '0' => bits.push(false),
                        '1' => bits.push(true),
                        _ => return Err(Error::parse(no, col + 1, format!("unexpected character '{c}'"))),
                    }
                }
            }
        }
        let s = OrderedStructure { n, sig, bits };
        s.validate()?;
        out.push(s);
    }
    Ok(out)
}

/// Backtracking search for a strictly increasing embedding of `pattern` into
/// `host`, accepting only images for which `accept(x, h(x))` holds.
/// Pruning happens on the first violated pair.
pub(crate) fn find_embedding(
    pattern: &OrderedStructure,
    host: &OrderedStructure,
    accept: impl Fn(usize, usize) -> bool,
) -> Option<Vec<usize>> {
    let k = pattern.n();
    let n = host.n();
    if k > n {
        return None;
    }
    if k == 0 {
        return Some(Vec::new());
    }
    let d = pattern.d();
    let mut image = vec![0usize; k];
    // Depth-first over the next element to place; `cursor[i]` is the next
    // host candidate for pattern element `i`.
    let mut depth = 0usize;
    let mut cursor = 0usize;
    loop {
        let mut placed = false;
        // Leave room for the remaining k - depth - 1 elements.
        while cursor + (k - depth) <= n {
            let y = cursor;
            cursor += 1;
            if !accept(depth, y) {
                continue;
            }
            let ok = (0..depth).all(|x| {
                let hx = image[x];
                (0..d).all(|r| {
                    pattern.rel(r, x, depth) == host.rel(r, hx, y)
                        && pattern.rel(r, depth, x) == host.rel(r, y, hx)
                })
            });
            if ok {
                image[depth] = y;
                placed = true;
                break;
            }
        }
        if placed {
            depth += 1;
            if depth == k {
                return Some(image);
            }
            cursor = image[depth - 1] + 1;
        } else {
            if depth == 0 {
                return None;
            }
            depth -= 1;
            cursor = image[depth] + 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::permutation::Permutation;

    fn bichain(s: &str) -> OrderedStructure {
        s.parse::<Permutation>().unwrap().to_bichain()
    }

    #[test]
    fn restriction_extracts_matrices() {
        let big = bichain("391867452");
        let sub = big.restriction(&[1, 2, 4, 5, 8]).unwrap();
        assert_eq!(sub, bichain("51342"));
        assert_eq!(big.restriction(&(0..9).collect::<Vec<_>>()).unwrap(), big);
        assert_eq!(bichain("3412").restriction(&[0, 1]).unwrap(), bichain("12"));
    }

    #[test]
    fn restriction_rejects_bad_indices() {
        let s = bichain("123");
        assert_eq!(
            s.restriction(&[0, 3]),
            Err(Error::IndexOutOfRange { index: 3, size: 3 })
        );
        assert!(s.restriction(&[1, 0]).is_err());
    }

    #[test]
    fn embeds_examples() {
        assert!(bichain("51342").embeds_into(&bichain("391867452")).unwrap());
        let r = bichain("2413");
        assert!(r.embeds_into(&r).unwrap());
        assert!(!bichain("12").embeds_into(&bichain("21")).unwrap());
        let other = OrderedStructure::singleton(Signature::binary());
        assert!(matches!(
            other.embeds_into(&r),
            Err(Error::SignatureMismatch(_))
        ));
    }

    #[test]
    fn constructor_rejects_non_reflexive() {
        let m = vec![true, false, false, false];
        assert_eq!(
            OrderedStructure::new(2, Signature::binary(), vec![m]),
            Err(Error::NotReflexive { relation: 0, row: 1 })
        );
    }

    #[test]
    fn constructor_rejects_non_total_order() {
        let m = vec![true, false, false, true];
        assert!(matches!(
            OrderedStructure::new(2, Signature::bichain(), vec![m]),
            Err(Error::NotLinearOrder { .. })
        ));
    }

    #[test]
    fn text_round_trip_and_errors() {
        let s = bichain("3142");
        assert_eq!(s.to_text().parse::<OrderedStructure>().unwrap(), s);

        let bad = "ostruct 1\nn 3\nd 1\nkinds B\nrel 0\n100\n010\n000\n";
        assert_eq!(
            OrderedStructure::parse_text(bad),
            Err(Error::NotReflexive { relation: 0, row: 2 })
        );
        let garbled = "ostruct 1\nn 2\nd 1\nkinds B\nrel 0\n1x\n01\n";
        assert!(matches!(
            OrderedStructure::parse_text(garbled),
            Err(Error::Parse { line: 6, column: 2, .. })
        ));
    }

    #[test]
    fn parse_many_reads_blank_separated_blocks() {
        let text = format!("{}\n{}", bichain("12").to_text(), bichain("21").to_text());
        let all = OrderedStructure::parse_many(&text).unwrap();
        assert_eq!(all, vec![bichain("12"), bichain("21")]);
    }

    #[test]
    fn derived_order_matches_text_order_within_a_level() {
        let mut structs: Vec<OrderedStructure> = ["1234", "4321", "2413", "3142", "1324"]
            .iter()
            .map(|p| bichain(p))
            .collect();
        let mut by_text = structs.clone();
        structs.sort();
        by_text.sort_by_key(|s| s.to_text());
        assert_eq!(structs, by_text);
    }
}
