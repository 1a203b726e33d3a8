//! On-disk level-set archives and profile CSV output.
//!
//! Layout of an archive directory:
//!
//! ```text
//! meta          key/value lines: signature, max_n, provenance, family
//! basis         ostruct blocks (forbidden-basis classes)
//! generators    ostruct blocks (explicit generators of a closure)
//! level-<n>     ostruct blocks of the size-n members
//! ```

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use super::{GeneratorFamily, GeneratorSpec, LevelSets, Provenance};
use crate::error::{Error, Result};
use crate::series::TruncatedSeries;
use crate::structure::{OrderedStructure, RelationKind, Signature};

fn blocks(items: &[OrderedStructure]) -> String {
    items.iter().map(|s| s.to_text()).collect::<Vec<_>>().join("\n")
}

/// Writes `levels` into `dir`, creating it if needed.
pub fn write_archive(dir: &Path, levels: &LevelSets) -> Result<()> {
    fs::create_dir_all(dir)?;
    let mut meta = String::new();
    writeln!(meta, "signature {}", levels.sig().codes()).unwrap();
    writeln!(meta, "max_n {}", levels.max_n()).unwrap();
    match levels.provenance() {
        Provenance::Forbidden(basis) => {
            meta.push_str("provenance forbidden\n");
            fs::write(dir.join("basis"), blocks(basis))?;
        }
        Provenance::Closure(spec) => {
            meta.push_str("provenance closure\n");
            for (family, cap) in spec.families() {
                match cap {
                    Some(c) => writeln!(meta, "family {family} {c}").unwrap(),
                    None => writeln!(meta, "family {family}").unwrap(),
                }
            }
            fs::write(dir.join("generators"), blocks(spec.explicit()))?;
        }
        Provenance::Derived(label) => {
            writeln!(meta, "provenance derived {label}").unwrap();
        }
    }
    fs::write(dir.join("meta"), meta)?;
    for n in 1..=levels.max_n() {
        fs::write(dir.join(format!("level-{n}")), blocks(levels.level(n)))?;
    }
    Ok(())
}

fn meta_error(line: usize, msg: impl Into<String>) -> Error {
    Error::parse(line, 1, msg)
}

/// Reads an archive written by [`write_archive`].
pub fn read_archive(dir: &Path) -> Result<LevelSets> {
    let meta = fs::read_to_string(dir.join("meta"))?;
    let mut sig = None;
    let mut max_n = None;
    let mut kind = None;
    let mut label = String::new();
    let mut families = Vec::new();
    for (i, line) in meta.lines().enumerate() {
        let line_no = i + 1;
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let (key, rest) = line.split_once(' ').unwrap_or((line, ""));
        let rest = rest.trim();
        match key {
            "signature" => {
                let kinds = rest
                    .chars()
                    .map(|c| RelationKind::from_code(c).ok_or_else(|| meta_error(line_no, format!("unknown kind '{c}'"))))
                    .collect::<Result<Vec<_>>>()?;
                sig = Some(Signature::new(kinds));
            }
            "max_n" => {
                max_n = Some(
                    rest.parse::<usize>()
                        .map_err(|_| meta_error(line_no, format!("invalid max_n '{rest}'")))?,
                );
            }
            "provenance" => {
                let (k, l) = rest.split_once(' ').unwrap_or((rest, ""));
                kind = Some(k.to_string());
                label = l.to_string();
            }
            "family" => {
                let mut it = rest.split_whitespace();
                let name = it.next().ok_or_else(|| meta_error(line_no, "missing family name"))?;
                let family: GeneratorFamily = name.parse()?;
                let cap = match it.next() {
                    Some(c) => Some(
                        c.parse::<usize>()
                            .map_err(|_| meta_error(line_no, format!("invalid family cap '{c}'")))?,
                    ),
                    None => None,
                };
                families.push((family, cap));
            }
            other => return Err(meta_error(line_no, format!("unknown key '{other}'"))),
        }
    }
    let sig = sig.ok_or_else(|| meta_error(1, "missing signature"))?;
    let max_n = max_n.ok_or_else(|| meta_error(1, "missing max_n"))?;
    let read_blocks = |name: &str| -> Result<Vec<OrderedStructure>> {
        let path = dir.join(name);
        if !path.exists() {
            return Ok(Vec::new());
        }
        OrderedStructure::parse_many(&fs::read_to_string(path)?)
    };
    let provenance = match kind.as_deref() {
        Some("forbidden") => Provenance::Forbidden(read_blocks("basis")?),
        Some("closure") => {
            let mut spec = GeneratorSpec::new(sig.clone()).with_explicit(read_blocks("generators")?)?;
            for (family, cap) in families {
                spec = spec.with_family(family, cap)?;
            }
            Provenance::Closure(spec)
        }
        Some("derived") => Provenance::Derived(label),
        Some(other) => return Err(meta_error(1, format!("unknown provenance '{other}'"))),
        None => return Err(meta_error(1, "missing provenance")),
    };
    let levels = (1..=max_n)
        .map(|n| read_blocks(&format!("level-{n}")))
        .collect::<Result<Vec<_>>>()?;
    LevelSets::new(sig, max_n, levels, provenance)
}

/// `n,count` CSV of a series with integral coefficients. Row 0 is written
/// only when `include_empty` is set.
pub fn profile_csv(series: &TruncatedSeries, include_empty: bool) -> Result<String> {
    let coeffs = series
        .integer_coeffs()
        .ok_or_else(|| Error::InvalidParameter("profile coefficients must be integers".into()))?;
    let mut out = String::from("n,count\n");
    for (n, c) in coeffs.iter().enumerate() {
        if n == 0 && !include_empty {
            continue;
        }
        writeln!(out, "{n},{c}").unwrap();
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classes::{enumerate_avoiders, enumerate_closure, profile, EnumConfig};
    use crate::permutation::Permutation;

    fn bichain(s: &str) -> OrderedStructure {
        s.parse::<Permutation>().unwrap().to_bichain()
    }

    #[test]
    fn forbidden_archive_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let basis = vec![bichain("2413"), bichain("3142")];
        let l = enumerate_avoiders(&Signature::bichain(), &basis, 5, &EnumConfig::default()).unwrap();
        write_archive(dir.path(), &l).unwrap();
        assert_eq!(read_archive(dir.path()).unwrap(), l);
    }

    #[test]
    fn closure_archive_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let spec = GeneratorSpec::from_permutations(&["12", "21"])
            .unwrap()
            .with_family(GeneratorFamily::Oscillation, Some(6))
            .unwrap();
        let l = enumerate_closure(&spec, 4, &EnumConfig::default()).unwrap();
        write_archive(dir.path(), &l).unwrap();
        assert_eq!(read_archive(dir.path()).unwrap(), l);
    }

    #[test]
    fn csv_output() {
        let l = enumerate_avoiders(&Signature::bichain(), &[], 3, &EnumConfig::default()).unwrap();
        assert_eq!(profile_csv(&profile(&l, false), false).unwrap(), "n,count\n1,1\n2,2\n3,6\n");
        assert_eq!(profile_csv(&profile(&l, true), true).unwrap(), "n,count\n0,1\n1,1\n2,2\n3,6\n");
    }

    #[test]
    fn missing_meta_is_an_error() {
        let dir = tempfile::tempdir().unwrap();
        assert!(matches!(read_archive(dir.path()), Err(Error::Io(_))));
    }
}
