//! Exact truncated power series over the rationals.
//!
//! A series of order `N` keeps the coefficients of `x^0..=x^N`. Arithmetic
//! requires equal orders and never extends them. Coefficients are
//! `BigRational`, so integrality of a computed series is something to check,
//! not something assumed.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Arithmetic operation selector for [`series_arith`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SeriesOp {
    Add,
    Sub,
    Mul,
    Div,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TruncatedSeries {
    coeffs: Vec<BigRational>,
}

fn rat(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

impl TruncatedSeries {
    /// From explicit coefficients `c_0..=c_N`; an empty vector is rejected.
    pub fn new(coeffs: Vec<BigRational>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::InvalidParameter("a series needs at least one coefficient".into()));
        }
        Ok(TruncatedSeries { coeffs })
    }

    pub fn from_integers(coeffs: &[i64]) -> Result<Self> {
        Self::new(coeffs.iter().map(|&c| rat(c)).collect())
    }

    pub fn zero(order: usize) -> Self {
        TruncatedSeries {
            coeffs: vec![BigRational::zero(); order + 1],
        }
    }

    pub fn one(order: usize) -> Self {
        Self::monomial(BigRational::one(), 0, order)
    }

    /// The indeterminate `x` truncated at `order`.
    pub fn x(order: usize) -> Self {
        Self::monomial(BigRational::one(), 1, order)
    }

    /// `c·x^e`, or zero if `e > order`.
    pub fn monomial(c: BigRational, e: usize, order: usize) -> Self {
        let mut s = Self::zero(order);
        if e <= order {
            s.coeffs[e] = c;
        }
        s
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn coeff(&self, e: usize) -> &BigRational {
        &self.coeffs[e]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// Index of the first non-zero coefficient.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    /// Coefficients as integers, if they all are.
    pub fn integer_coeffs(&self) -> Option<Vec<BigInt>> {
        self.coeffs
            .iter()
            .map(|c| c.is_integer().then(|| c.to_integer()))
            .collect()
    }

    /// Coefficients as `i64`, if they are integers in range.
    pub fn i64_coeffs(&self) -> Option<Vec<i64>> {
        use num_traits::ToPrimitive;
        self.integer_coeffs()?.iter().map(|c| c.to_i64()).collect()
    }

    /// Drops coefficients above `order`.
    pub fn truncate(&self, order: usize) -> Result<Self> {
        if order > self.order() {
            return Err(Error::OrderMismatch {
                left: self.order(),
                right: order,
            });
        }
        Ok(TruncatedSeries {
            coeffs: self.coeffs[..=order].to_vec(),
        })
    }

    fn same_order(&self, other: &Self) -> Result<()> {
        if self.order() == other.order() {
            Ok(())
        } else {
            Err(Error::OrderMismatch {
                left: self.order(),
                right: other.order(),
            })
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_order(other)?;
        Ok(TruncatedSeries {
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.same_order(other)?;
        Ok(TruncatedSeries {
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect(),
        })
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        TruncatedSeries {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.same_order(other)?;
        let n = self.order();
        let mut out = vec![BigRational::zero(); n + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs[..=(n - i)].iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] += a * b;
                }
            }
        }
        Ok(TruncatedSeries { coeffs: out })
    }

    /// `self / other`; `other` must have a non-zero constant term.
    pub fn div(&self, other: &Self) -> Result<Self> {
        self.same_order(other)?;
        let b0 = &other.coeffs[0];
        if b0.is_zero() {
            return Err(Error::ZeroConstantTerm);
        }
        let n = self.order();
        let mut q: Vec<BigRational> = Vec::with_capacity(n + 1);
        for k in 0..=n {
            let mut acc = self.coeffs[k].clone();
            for j in 1..=k {
                if !other.coeffs[j].is_zero() {
                    acc -= &other.coeffs[j] * &q[k - j];
                }
            }
            q.push(acc / b0);
        }
        Ok(TruncatedSeries { coeffs: q })
    }

    /// `self^e` in the truncated ring.
    pub fn pow(&self, e: usize) -> Self {
        let mut out = Self::one(self.order());
        for _ in 0..e {
            out = out.mul(self).expect("same order");
        }
        out
    }

    /// Serializes to the `series <order>` text format.
    pub fn to_text(&self) -> String {
        let body: Vec<String> = self.coeffs.iter().map(format_rational).collect();
        format!("series {}\n{}\n", self.order(), body.join(" "))
    }

    pub fn parse_text(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty());
        let (no, header) = lines.next().ok_or_else(|| Error::parse(1, 1, "empty series file"))?;
        let order: usize = header
            .strip_prefix("series ")
            .and_then(|v| v.trim().parse().ok())
            .ok_or_else(|| Error::parse(no, 1, format!("expected 'series <order>', found '{header}'")))?;
        let mut coeffs = Vec::new();
        for (no, line) in lines {
            let mut col = 1;
            for tok in line.split_whitespace() {
                let start = line[col - 1..].find(tok).map_or(col, |p| col + p);
                coeffs.push(parse_rational(tok).map_err(|m| Error::parse(no, start, m))?);
                col = start + tok.len();
            }
        }
        if coeffs.len() != order + 1 {
            return Err(Error::parse(
                no,
                1,
                format!("{} coefficients for order {order}, expected {}", coeffs.len(), order + 1),
            ));
        }
        TruncatedSeries::new(coeffs)
    }
}

impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl FromStr for TruncatedSeries {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        TruncatedSeries::parse_text(s)
    }
}

pub fn format_rational(c: &BigRational) -> String {
    if c.is_integer() {
        c.to_integer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

pub fn parse_rational(tok: &str) -> std::result::Result<BigRational, String> {
    let parse_int = |s: &str| s.parse::<BigInt>().map_err(|_| format!("invalid coefficient '{tok}'"));
    match tok.split_once('/') {
        Some((a, b)) => {
            let den = parse_int(b)?;
            if den.is_zero() {
                return Err(format!("zero denominator in '{tok}'"));
            }
            Ok(BigRational::new(parse_int(a)?, den))
        }
        None => Ok(BigRational::from_integer(parse_int(tok)?)),
    }
}

/// Ring operation dispatcher.
pub fn series_arith(op: SeriesOp, a: &TruncatedSeries, b: &TruncatedSeries) -> Result<TruncatedSeries> {
    match op {
        SeriesOp::Add => a.add(b),
        SeriesOp::Sub => a.sub(b),
        SeriesOp::Mul => a.mul(b),
        SeriesOp::Div => a.div(b),
    }
}

/// `outer(inner)` by Horner evaluation; `inner` must have zero constant term.
pub fn compose(outer: &TruncatedSeries, inner: &TruncatedSeries) -> Result<TruncatedSeries> {
    outer.same_order(inner)?;
    if !inner.coeffs[0].is_zero() {
        return Err(Error::NonZeroConstantTerm);
    }
    let n = outer.order();
    let mut acc = TruncatedSeries::monomial(outer.coeffs[n].clone(), 0, n);
    for k in (0..n).rev() {
        acc = acc.mul(inner)?;
        acc.coeffs[0] += &outer.coeffs[k];
    }
    Ok(acc)
}

/// A polynomial in `x` and `y` with rational coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct BivariatePolynomial {
    terms: BTreeMap<(usize, usize), BigRational>,
}

impl BivariatePolynomial {
    /// From `(coefficient, x-exponent, y-exponent)` triples; duplicate
    /// exponent pairs are summed and zero terms dropped.
    pub fn new(monomials: impl IntoIterator<Item = (BigRational, usize, usize)>) -> Self {
        let mut terms: BTreeMap<(usize, usize), BigRational> = BTreeMap::new();
        for (c, i, j) in monomials {
            *terms.entry((i, j)).or_insert_with(BigRational::zero) += c;
        }
        terms.retain(|_, c| !c.is_zero());
        BivariatePolynomial { terms }
    }

    pub fn from_integers(monomials: &[(i64, usize, usize)]) -> Self {
        Self::new(monomials.iter().map(|&(c, i, j)| (rat(c), i, j)))
    }

    /// `(coefficient, i, j)` triples sorted by `(i, j)`.
    pub fn monomials(&self) -> impl Iterator<Item = (&BigRational, usize, usize)> {
        self.terms.iter().map(|(&(i, j), c)| (c, i, j))
    }

    pub fn max_y_degree(&self) -> usize {
        self.terms.keys().map(|&(_, j)| j).max().unwrap_or(0)
    }

    pub fn is_univariate_x(&self) -> bool {
        self.terms.keys().all(|&(_, j)| j == 0)
    }

    /// Univariate polynomial in `x` as a series of the given order.
    pub fn x_series(&self, order: usize) -> Result<TruncatedSeries> {
        if !self.is_univariate_x() {
            return Err(Error::InvalidParameter("polynomial must not involve y".into()));
        }
        let mut s = TruncatedSeries::zero(order);
        for (c, i, _) in self.monomials() {
            if i <= order {
                s.coeffs[i] += c;
            }
        }
        Ok(s)
    }

    /// `Q(x, H)` truncated at `H.order()`.
    pub fn residual(&self, h: &TruncatedSeries) -> TruncatedSeries {
        let n = h.order();
        let mut powers = vec![TruncatedSeries::one(n)];
        for _ in 0..self.max_y_degree() {
            let next = powers.last().unwrap().mul(h).expect("same order");
            powers.push(next);
        }
        let mut out = TruncatedSeries::zero(n);
        for (c, i, j) in self.monomials() {
            for (k, a) in powers[j].coeffs.iter().enumerate() {
                if i + k > n {
                    break;
                }
                out.coeffs[i + k] += c * a;
            }
        }
        out
    }

    /// One monomial per line: `<coeff> <x-exp> <y-exp>`.
    pub fn to_text(&self) -> String {
        self.monomials()
            .map(|(c, i, j)| format!("{} {i} {j}\n", format_rational(c)))
            .collect()
    }

    pub fn parse_text(text: &str) -> Result<Self> {
        let mut monos = Vec::new();
        for (idx, line) in text.lines().enumerate() {
            let no = idx + 1;
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let toks: Vec<&str> = line.split_whitespace().collect();
            if toks.len() != 3 {
                return Err(Error::parse(no, 1, format!("expected '<coeff> <x-exp> <y-exp>', found '{line}'")));
            }
            let c = parse_rational(toks[0]).map_err(|m| Error::parse(no, 1, m))?;
            let i = toks[1]
                .parse()
                .map_err(|_| Error::parse(no, toks[0].len() + 2, format!("invalid exponent '{}'", toks[1])))?;
            let j = toks[2].parse().map_err(|_| {
                Error::parse(no, toks[0].len() + toks[1].len() + 3, format!("invalid exponent '{}'", toks[2]))
            })?;
            monos.push((c, i, j));
        }
        Ok(BivariatePolynomial::new(monos))
    }
}

impl FromStr for BivariatePolynomial {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        BivariatePolynomial::parse_text(s)
    }
}

/// `Q(x, H)` truncated at `H.order()`.
pub fn poly_residual(q: &BivariatePolynomial, h: &TruncatedSeries) -> TruncatedSeries {
    q.residual(h)
}

/// Solves `H = x + p·H²/(1+H) + K(H)` for the series `H` with `H(0) = 0`.
///
/// `k` enumerates the indecomposable generators of size at least three, so
/// its coefficients below `x³` must vanish. It is truncated to `order`.
/// Each pass of the iteration fixes at least one more coefficient, so
/// `order` passes starting from `H = x` reach the fixed point.
pub fn solve_sum_closure(p: u64, k: &TruncatedSeries, order: usize) -> Result<TruncatedSeries> {
    if k.coeffs.iter().take(3).any(|c| !c.is_zero()) {
        return Err(Error::LowValuation { min_valuation: 3 });
    }
    let k = k.truncate(order)?;
    let x = TruncatedSeries::x(order);
    let one = TruncatedSeries::one(order);
    let p = BigRational::from_integer(BigInt::from(p));
    let mut h = x.clone();
    for _ in 0..order {
        let quad = h.mul(&h)?.div(&one.add(&h)?)?.scale(&p);
        h = x.add(&quad)?.add(&compose(&k, &h)?)?;
    }
    Ok(h)
}

/// `numer / denom` expanded to `order`; both must be polynomials in `x`.
pub fn rational_expand(
    numer: &BivariatePolynomial,
    denom: &BivariatePolynomial,
    order: usize,
) -> Result<TruncatedSeries> {
    let num = numer.x_series(order)?;
    let den = denom.x_series(order)?;
    num.div(&den)
}

/// The quadratic form `(p−1)y² + (x−1+K)y + x + K` of the sum-closure
/// equation, evaluated at `h` with `K` replaced by `K(h)`.
pub fn sum_closure_quadratic_residual(p: u64, k: &TruncatedSeries, h: &TruncatedSeries) -> Result<TruncatedSeries> {
    let n = h.order();
    let k = k.truncate(n)?;
    let kh = compose(&k, h)?;
    let x = TruncatedSeries::x(n);
    let one = TruncatedSeries::one(n);
    let pm1 = BigRational::from_integer(BigInt::from(p as i64 - 1));
    let term2 = h.mul(h)?.scale(&pm1);
    let term1 = x.sub(&one)?.add(&kh)?.mul(h)?;
    term2.add(&term1)?.add(&x)?.add(&kh)
}

/// Whether every coefficient is a non-negative integer.
pub fn is_nonnegative_integral(s: &TruncatedSeries) -> bool {
    s.coeffs.iter().all(|c| c.is_integer() && !c.is_negative())
}
