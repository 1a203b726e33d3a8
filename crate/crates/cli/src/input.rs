use std::fs;
use std::path::Path;

use hereditary::{
    BivariatePolynomial, Error, FinitePoset, GeneratorFamily, GeneratorSpec, LabeledStructure, OrderedStructure,
    Permutation, Result, Signature, TruncatedSeries,
};

pub fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

pub fn permutation(text: &str) -> Result<Permutation> {
    text.parse()
}

/// A comma- or whitespace-separated permutation list, one permutation per
/// `;` or line: accepts `2413,3142` (compact) as well.
pub fn permutation_list(items: &[String]) -> Result<Vec<Permutation>> {
    let mut out = Vec::new();
    for item in items {
        for part in item.split([',', ';']).map(str::trim).filter(|s| !s.is_empty()) {
            out.push(part.parse()?);
        }
    }
    Ok(out)
}

pub fn structures(path: &Path) -> Result<Vec<OrderedStructure>> {
    OrderedStructure::parse_many(&read(path)?)
}

pub fn structure(path: &Path) -> Result<OrderedStructure> {
    OrderedStructure::parse_text(&read(path)?)
}

pub fn series(path: &Path) -> Result<TruncatedSeries> {
    TruncatedSeries::parse_text(&read(path)?)
}

pub fn polynomial(path: &Path) -> Result<BivariatePolynomial> {
    BivariatePolynomial::parse_text(&read(path)?)
}

/// Integer coefficients `c0,c1,…` of a polynomial in `x`.
pub fn x_polynomial(coeffs: &str) -> Result<BivariatePolynomial> {
    let mut monos = Vec::new();
    for (i, tok) in coeffs.split(',').map(str::trim).enumerate() {
        let c: i64 = tok
            .parse()
            .map_err(|_| Error::InvalidParameter(format!("invalid coefficient '{tok}'")))?;
        monos.push((c, i, 0));
    }
    Ok(BivariatePolynomial::from_integers(&monos))
}

/// `c0,c1,…` as a series truncated at `order` (missing entries are zero).
pub fn integer_series(coeffs: &str, order: usize) -> Result<TruncatedSeries> {
    let mut c = vec![0i64; order + 1];
    for (i, tok) in coeffs.split(',').map(str::trim).filter(|t| !t.is_empty()).enumerate() {
        let v: i64 = tok
            .parse()
            .map_err(|_| Error::InvalidParameter(format!("invalid coefficient '{tok}'")))?;
        if i <= order {
            c[i] = v;
        } else if v != 0 {
            return Err(Error::InvalidParameter(format!("coefficient of x^{i} beyond order {order}")));
        }
    }
    TruncatedSeries::from_integers(&c)
}

/// `NAME` or `NAME:CAP`.
pub fn family(spec: &str) -> Result<(GeneratorFamily, Option<usize>)> {
    match spec.split_once(':') {
        Some((name, cap)) => {
            let cap = cap
                .trim()
                .parse()
                .map_err(|_| Error::InvalidParameter(format!("invalid family cap '{cap}'")))?;
            Ok((name.parse()?, Some(cap)))
        }
        None => Ok((spec.parse()?, None)),
    }
}

/// Generators from permutation strings, an ostruct file, and families.
pub fn generators(perms: &[String], file: Option<&Path>, families: &[String]) -> Result<GeneratorSpec> {
    let mut members: Vec<OrderedStructure> = permutation_list(perms)?.iter().map(Permutation::to_bichain).collect();
    let sig = match file {
        Some(path) => {
            let from_file = structures(path)?;
            let sig = from_file.first().map_or_else(Signature::bichain, |s| s.sig().clone());
            members.extend(from_file);
            sig
        }
        None => Signature::bichain(),
    };
    // The singleton is implicit; accepting it explicitly keeps files simple.
    members.retain(|s| s.n() != 1);
    let mut spec = GeneratorSpec::new(sig).with_explicit(members)?;
    for f in families {
        let (family, cap) = family(f)?;
        spec = spec.with_family(family, cap)?;
    }
    Ok(spec)
}

/// `antichain:K` or `chain:K`.
pub fn poset(spec: &str) -> Result<FinitePoset> {
    let (kind, size) = spec
        .split_once(':')
        .ok_or_else(|| Error::InvalidParameter(format!("expected 'antichain:K' or 'chain:K', found '{spec}'")))?;
    let k: usize = size
        .trim()
        .parse()
        .map_err(|_| Error::InvalidParameter(format!("invalid poset size '{size}'")))?;
    match kind.trim() {
        "antichain" => Ok(FinitePoset::antichain(k)),
        "chain" => Ok(FinitePoset::chain(k)),
        other => Err(Error::InvalidParameter(format!("unknown poset kind '{other}'"))),
    }
}

/// Labeled structures: ostruct blocks, each optionally followed by a
/// `labels l0 l1 …` line (missing labels mean all zero).
pub fn labeled(text: &str) -> Result<Vec<LabeledStructure>> {
    let mut out = Vec::new();
    let mut block: Vec<&str> = Vec::new();
    let mut start = 1;
    let flush = |block: &mut Vec<&str>, labels: Option<Vec<usize>>, start: usize, out: &mut Vec<LabeledStructure>| {
        if block.is_empty() {
            return Ok(());
        }
        let base = OrderedStructure::parse_text(&block.join("\n")).map_err(|e| match e {
            Error::Parse { line, column, message } => Error::Parse {
                line: line + start - 1,
                column,
                message,
            },
            other => other,
        })?;
        block.clear();
        let labels = labels.unwrap_or_else(|| vec![0; base.n()]);
        out.push(LabeledStructure::new(base, labels)?);
        Ok::<(), Error>(())
    };
    for (i, line) in text.lines().enumerate() {
        let no = i + 1;
        let trimmed = line.trim();
        if let Some(rest) = trimmed.strip_prefix("labels") {
            let labels = rest
                .split_whitespace()
                .enumerate()
                .map(|(k, t)| {
                    t.parse::<usize>()
                        .map_err(|_| Error::Parse {
                            line: no,
                            column: 1,
                            message: format!("invalid label #{k} '{t}'"),
                        })
                })
                .collect::<Result<Vec<_>>>()?;
            flush(&mut block, Some(labels), start, &mut out)?;
            continue;
        }
        if trimmed.starts_with("ostruct") && !block.is_empty() {
            flush(&mut block, None, start, &mut out)?;
        }
        if block.is_empty() {
            if trimmed.is_empty() {
                continue;
            }
            start = no;
        }
        block.push(line);
    }
    flush(&mut block, None, start, &mut out)?;
    Ok(out)
}
