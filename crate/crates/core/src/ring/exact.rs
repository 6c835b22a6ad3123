//! Sparse multivariate polynomials over ℚ in the Stieltjes symbols.
//!
//! The canonical text form is used by the golden fixtures and by the CLI:
//! terms in ascending total degree (ties broken so that lower-indexed
//! symbols come first), each written as `num/den*g0^a*g1^b` with `/den`
//! omitted for integers, `^1` omitted, and the leading `1*` kept only for
//! the constant term. Terms are joined by ` + ` / ` - `; the zero polynomial
//! prints as `0`.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};
use core::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::{Rational, Real};
use crate::{Error, Result};

/// Exponent vector over `g0, g1, …` with trailing zeros trimmed.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn from_exponents(mut exps: Vec<u32>) -> Self {
        while exps.last() == Some(&0) {
            exps.pop();
        }
        Monomial(exps)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        let (long, short) = if self.0.len() >= other.0.len() {
            (self, other)
        } else {
            (other, self)
        };
        let mut e = long.0.clone();
        for (a, b) in e.iter_mut().zip(&short.0) {
            *a += b;
        }
        Monomial(e)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| {
            let n = self.0.len().max(other.0.len());
            for i in 0..n {
                let a = self.0.get(i).copied().unwrap_or(0);
                let b = other.0.get(i).copied().unwrap_or(0);
                if a != b {
                    // More weight on g0 sorts first.
                    return b.cmp(&a);
                }
            }
            Ordering::Equal
        })
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return f.write_str("1");
        }
        let mut first = true;
        for (i, &e) in self.0.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                f.write_str("*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "g{i}")?;
            } else {
                write!(f, "g{i}^{e}")?;
            }
        }
        Ok(())
    }
}

#[derive(Clone, PartialEq, Eq, Default)]
pub struct ExactPoly {
    terms: BTreeMap<Monomial, Rational>,
}

impl ExactPoly {
    pub fn zero() -> Self {
        ExactPoly::default()
    }

    pub fn constant(q: Rational) -> Self {
        ExactPoly::term(q, Monomial::one())
    }

    pub fn from_int(n: i64) -> Self {
        ExactPoly::constant(Rational::from_integer(BigInt::from(n)))
    }

    /// The symbol `g_n`.
    pub fn symbol(n: usize) -> Self {
        let mut e = vec![0; n + 1];
        e[n] = 1;
        ExactPoly::term(Rational::one(), Monomial(e))
    }

    pub fn term(q: Rational, m: Monomial) -> Self {
        let mut terms = BTreeMap::new();
        if !q.is_zero() {
            terms.insert(m, q);
        }
        ExactPoly { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    /// `Some(q)` when the polynomial is the constant `q` (including zero).
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => self.terms.get(&Monomial::one()).cloned(),
            _ => None,
        }
    }

    /// Highest symbol index that appears, if any.
    pub fn max_symbol(&self) -> Option<usize> {
        self.terms.keys().filter_map(|m| m.0.len().checked_sub(1)).max()
    }

    pub fn scale(&self, q: &Rational) -> Self {
        if q.is_zero() {
            return ExactPoly::zero();
        }
        ExactPoly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c * q)).collect(),
        }
    }

    fn add_term(&mut self, m: Monomial, q: Rational) {
        if q.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            alloc::collections::btree_map::Entry::Vacant(v) => {
                v.insert(q);
            }
            alloc::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = o.get() + q;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    /// Substitutes numeric values for the symbols (`values[i]` for `g_i`).
    pub fn evaluate(&self, values: &[Real], prec: usize) -> Result<Real> {
        let mut acc = Real::zero(prec);
        for (m, q) in &self.terms {
            let mut t = Real::from_rational(q, prec);
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let v = values.get(i).ok_or(Error::OutOfRange {
                    index: i,
                    limit: values.len().saturating_sub(1),
                })?;
                t = &t * &v.with_prec(prec).powi(e as usize);
            }
            acc = &acc + &t;
        }
        Ok(acc)
    }
}

impl Add for &ExactPoly {
    type Output = ExactPoly;
    fn add(self, rhs: &ExactPoly) -> ExactPoly {
        let mut out = self.clone();
        for (m, q) in &rhs.terms {
            out.add_term(m.clone(), q.clone());
        }
        out
    }
}

impl Sub for &ExactPoly {
    type Output = ExactPoly;
    fn sub(self, rhs: &ExactPoly) -> ExactPoly {
        let mut out = self.clone();
        for (m, q) in &rhs.terms {
            out.add_term(m.clone(), -q);
        }
        out
    }
}

impl Mul for &ExactPoly {
    type Output = ExactPoly;
    fn mul(self, rhs: &ExactPoly) -> ExactPoly {
        let mut out = ExactPoly::zero();
        for (ma, qa) in &self.terms {
            for (mb, qb) in &rhs.terms {
                out.add_term(ma.mul(mb), qa * qb);
            }
        }
        out
    }
}

impl Neg for &ExactPoly {
    type Output = ExactPoly;
    fn neg(self) -> ExactPoly {
        ExactPoly {
            terms: self.terms.iter().map(|(m, q)| (m.clone(), -q)).collect(),
        }
    }
}

impl Add for ExactPoly {
    type Output = ExactPoly;
    fn add(self, rhs: ExactPoly) -> ExactPoly {
        &self + &rhs
    }
}

impl Sub for ExactPoly {
    type Output = ExactPoly;
    fn sub(self, rhs: ExactPoly) -> ExactPoly {
        &self - &rhs
    }
}

impl Mul for ExactPoly {
    type Output = ExactPoly;
    fn mul(self, rhs: ExactPoly) -> ExactPoly {
        &self * &rhs
    }
}

impl Neg for ExactPoly {
    type Output = ExactPoly;
    fn neg(self) -> ExactPoly {
        -&self
    }
}

fn write_rational(f: &mut fmt::Formatter<'_>, q: &Rational) -> fmt::Result {
    if q.denom().is_one() {
        write!(f, "{}", q.numer())
    } else {
        write!(f, "{}/{}", q.numer(), q.denom())
    }
}

impl fmt::Display for ExactPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (m, q)) in self.terms.iter().enumerate() {
            let mag = q.abs();
            match (i, q.is_negative()) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if m.is_one() {
                write_rational(f, &mag)?;
            } else {
                if !mag.is_one() {
                    write_rational(f, &mag)?;
                    f.write_str("*")?;
                }
                write!(f, "{m}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for ExactPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

fn parse_error(msg: impl Into<String>) -> Error {
    Error::Data {
        line: 0,
        reason: msg.into(),
    }
}

/// Parses the canonical form, and also the looser hand-written variant with
/// arbitrary term order, repeated terms and coefficients such as `-8/3*g1`.
impl FromStr for ExactPoly {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(parse_error("empty polynomial"));
        }
        // Split into signed terms.
        let mut pieces: Vec<(bool, &str)> = Vec::new();
        let mut start = 0;
        let mut negative = false;
        let bytes = compact.as_bytes();
        for (i, &b) in bytes.iter().enumerate() {
            if (b == b'+' || b == b'-') && !(i > 0 && bytes[i - 1] == b'^') {
                if i > start {
                    pieces.push((negative, &compact[start..i]));
                } else if i > 0 {
                    return Err(parse_error(alloc::format!("dangling sign in {s:?}")));
                }
                negative = b == b'-';
                start = i + 1;
            }
        }
        if start >= compact.len() {
            return Err(parse_error(alloc::format!("trailing sign in {s:?}")));
        }
        pieces.push((negative, &compact[start..]));

        let mut out = ExactPoly::zero();
        for (negative, body) in pieces {
            let mut coeff = Rational::one();
            let mut exps: Vec<u32> = Vec::new();
            for factor in body.split('*') {
                if let Some(rest) = factor.strip_prefix('g') {
                    let (idx, pow) = match rest.split_once('^') {
                        Some((i, p)) => (
                            i,
                            p.parse::<u32>()
                                .map_err(|_| parse_error(alloc::format!("bad exponent in {factor:?}")))?,
                        ),
                        None => (rest, 1),
                    };
                    let idx: usize = idx.parse().map_err(|_| parse_error(alloc::format!("bad symbol {factor:?}")))?;
                    if exps.len() <= idx {
                        exps.resize(idx + 1, 0);
                    }
                    exps[idx] += pow;
                } else {
                    let q = match factor.split_once('/') {
                        Some((n, d)) => {
                            let n: BigInt = n.parse().map_err(|_| parse_error(alloc::format!("bad number {factor:?}")))?;
                            let d: BigInt = d.parse().map_err(|_| parse_error(alloc::format!("bad number {factor:?}")))?;
                            if d.is_zero() {
                                return Err(parse_error("zero denominator"));
                            }
                            Rational::new(n, d)
                        }
                        None => Rational::from_integer(factor.parse().map_err(|_| parse_error(alloc::format!("bad factor {factor:?}")))?),
                    };
                    coeff *= q;
                }
            }
            if negative {
                coeff = -coeff;
            }
            out.add_term(Monomial::from_exponents(exps), coeff);
        }
        Ok(out)
    }
}
