use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::catalog::{exceptional, oscillation_members, ExceptionalFamily, OscillationVariant, MAX_FAMILY_PARAMETER};
use crate::decomposition::{ind_restrictions, is_indecomposable};
use crate::error::{Error, Result};
use crate::permutation::Permutation;
use crate::series::TruncatedSeries;
use crate::structure::{OrderedStructure, Signature};

/// A size-indexed family of indecomposable bichains.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GeneratorFamily {
    /// Indecomposable restrictions of the oscillation bichain.
    Oscillation,
    /// Indecomposable restrictions of the reversed oscillation bichain.
    OscillationStar,
    /// Exceptional permutations of one family, at every even size `≥ 4`.
    Exceptional(ExceptionalFamily),
}

impl GeneratorFamily {
    /// Members of exactly size `n`.
    pub fn members(self, n: usize) -> Vec<OrderedStructure> {
        match self {
            GeneratorFamily::Oscillation => oscillation_members(n, OscillationVariant::Plain),
            GeneratorFamily::OscillationStar => oscillation_members(n, OscillationVariant::Star),
            GeneratorFamily::Exceptional(f) => {
                if n >= 4 && n.is_multiple_of(2) && n / 2 <= MAX_FAMILY_PARAMETER {
                    vec![exceptional(n / 2, f).expect("m in range").to_bichain()]
                } else {
                    Vec::new()
                }
            }
        }
    }
}

impl fmt::Display for GeneratorFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GeneratorFamily::Oscillation => f.write_str("OSCILLATION"),
            GeneratorFamily::OscillationStar => f.write_str("OSCILLATION_STAR"),
            GeneratorFamily::Exceptional(e) => write!(f, "EXCEPTIONAL_{e}"),
        }
    }
}

impl FromStr for GeneratorFamily {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let up = s.trim().to_ascii_uppercase().replace('-', "_");
        Ok(match up.as_str() {
            "OSCILLATION" => GeneratorFamily::Oscillation,
            "OSCILLATION_STAR" => GeneratorFamily::OscillationStar,
            "EXCEPTIONAL_I" => GeneratorFamily::Exceptional(ExceptionalFamily::I),
            "EXCEPTIONAL_II" => GeneratorFamily::Exceptional(ExceptionalFamily::II),
            "EXCEPTIONAL_III" => GeneratorFamily::Exceptional(ExceptionalFamily::III),
            "EXCEPTIONAL_IV" => GeneratorFamily::Exceptional(ExceptionalFamily::IV),
            _ => return Err(Error::InvalidParameter(format!("unknown generator family '{s}'"))),
        })
    }
}

/// A set `D` of indecomposable generators: an explicit list plus
/// size-indexed families. The one-element structure is always a member.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratorSpec {
    sig: Signature,
    explicit: Vec<OrderedStructure>,
    families: Vec<(GeneratorFamily, Option<usize>)>,
}

impl GeneratorSpec {
    pub fn new(sig: Signature) -> Self {
        GeneratorSpec {
            sig,
            explicit: Vec::new(),
            families: Vec::new(),
        }
    }

    /// Adds explicit generators; each must be indecomposable.
    pub fn with_explicit(mut self, members: impl IntoIterator<Item = OrderedStructure>) -> Result<Self> {
        for s in members {
            self.sig.ensure_same(s.sig())?;
            if s.is_empty() || !is_indecomposable(&s) {
                return Err(Error::InvalidParameter(format!(
                    "generator of size {} is not a non-empty indecomposable structure",
                    s.n()
                )));
            }
            if !self.explicit.contains(&s) {
                self.explicit.push(s);
            }
        }
        self.explicit.sort();
        Ok(self)
    }

    /// Adds a family, optionally capped at a maximum member size. Families
    /// generate bichains.
    pub fn with_family(mut self, family: GeneratorFamily, cap: Option<usize>) -> Result<Self> {
        if !self.sig.is_bichain() {
            return Err(Error::SignatureMismatch("generator families produce bichains".into()));
        }
        self.families.push((family, cap));
        Ok(self)
    }

    /// Bichain generators from permutation strings.
    pub fn from_permutations(perms: &[&str]) -> Result<Self> {
        let members = perms
            .iter()
            .map(|p| p.parse::<Permutation>().map(|p| p.to_bichain()))
            .collect::<Result<Vec<_>>>()?;
        GeneratorSpec::new(Signature::bichain()).with_explicit(members)
    }

    /// `{1, 12, 21}`, whose sum-closure is the separable class.
    pub fn separable() -> Self {
        Self::from_permutations(&["12", "21"]).expect("valid generators")
    }

    /// All indecomposable restrictions of the oscillation bichain.
    pub fn oscillation() -> Self {
        GeneratorSpec::new(Signature::bichain())
            .with_family(GeneratorFamily::Oscillation, None)
            .expect("bichain signature")
    }

    /// Every indecomposable bichain of size at most `k`.
    pub fn indecomposable_up_to(k: usize) -> Result<Self> {
        let mut members = Vec::new();
        for n in 1..=k.min(9) {
            members.extend(crate::catalog::simple_permutations(n)?.into_iter().map(|p| p.to_bichain()));
        }
        GeneratorSpec::new(Signature::bichain()).with_explicit(members)
    }

    pub fn sig(&self) -> &Signature {
        &self.sig
    }

    pub fn explicit(&self) -> &[OrderedStructure] {
        &self.explicit
    }

    pub fn families(&self) -> &[(GeneratorFamily, Option<usize>)] {
        &self.families
    }

    /// Sorted distinct generators of size `n`.
    pub fn members_of_size(&self, n: usize) -> Vec<OrderedStructure> {
        if n == 0 {
            return Vec::new();
        }
        let mut out: Vec<OrderedStructure> = self.explicit.iter().filter(|s| s.n() == n).cloned().collect();
        if n == 1 {
            out.push(OrderedStructure::singleton(self.sig.clone()));
        }
        for &(family, cap) in &self.families {
            if cap.is_none_or(|c| n <= c) {
                out.extend(family.members(n));
            }
        }
        out.sort();
        out.dedup();
        out
    }

    pub fn contains(&self, s: &OrderedStructure) -> bool {
        if s.sig() != &self.sig || s.is_empty() {
            return false;
        }
        if s.n() == 1 || self.explicit.binary_search(s).is_ok() {
            return true;
        }
        self.families
            .iter()
            .any(|&(family, cap)| cap.is_none_or(|c| s.n() <= c) && family.members(s.n()).contains(s))
    }

    /// `|D_(n)|` for `n = 0..=max_n` (entry 0 is zero).
    pub fn size_counts(&self, max_n: usize) -> Vec<usize> {
        (0..=max_n).map(|n| self.members_of_size(n).len()).collect()
    }

    /// Number of two-element generators.
    pub fn p(&self) -> u64 {
        self.members_of_size(2).len() as u64
    }

    /// `K(x) = Σ_{n ≥ 3} |D_(n)| xⁿ` truncated at `order`.
    pub fn k_series(&self, order: usize) -> TruncatedSeries {
        let coeffs = self
            .size_counts(order)
            .iter()
            .enumerate()
            .map(|(n, &c)| BigRational::from_integer(BigInt::from(if n >= 3 { c } else { 0 })))
            .collect();
        TruncatedSeries::new(coeffs).expect("non-empty")
    }

    /// Checks that every indecomposable restriction of a generator of size
    /// at most `max_n` is itself a generator.
    pub fn check_hereditary(&self, max_n: usize) -> Result<()> {
        for n in 2..=max_n {
            for s in self.members_of_size(n) {
                for t in ind_restrictions(&s, 1)? {
                    if !self.contains(&t) {
                        return Err(Error::NotHereditary(format!(
                            "a size-{} generator has an indecomposable restriction of size {} outside the set",
                            n,
                            t.n()
                        )));
                    }
                }
            }
        }
        Ok(())
    }
}
