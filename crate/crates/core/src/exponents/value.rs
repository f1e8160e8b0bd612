//! Exact exponents: rational part plus rational multiples of declared constants.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Index, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::constants::{format_rational, parse_rational, Constant, ConstantBasis};
use crate::error::{Error, Result};

/// Digit schedule for enclosure refinement during comparisons.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Precision {
    pub initial_digits: usize,
    /// Comparisons that cannot separate within this many digits fail.
    pub max_digits: usize,
}

impl Default for Precision {
    fn default() -> Self {
        Precision {
            initial_digits: 16,
            max_digits: 256,
        }
    }
}

/// An element of the rational span of `1` and the declared constants.
///
/// Normal form: no zero coefficients are stored, so structural equality is
/// equality of real numbers under the declared independence.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct ExponentValue {
    rational: BigRational,
    terms: BTreeMap<Constant, BigRational>,
}

impl ExponentValue {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn from_integer(k: i64) -> Self {
        Self::from_rational(BigRational::from_integer(k.into()))
    }

    pub fn from_ratio(p: i64, q: i64) -> Self {
        Self::from_rational(BigRational::new(p.into(), q.into()))
    }

    pub fn from_rational(r: BigRational) -> Self {
        ExponentValue {
            rational: r,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(c: &Constant) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(c.clone(), BigRational::one());
        ExponentValue {
            rational: BigRational::zero(),
            terms,
        }
    }

    pub fn rational_part(&self) -> &BigRational {
        &self.rational
    }

    pub fn terms(&self) -> &BTreeMap<Constant, BigRational> {
        &self.terms
    }

    /// `Some(r)` iff the value is the rational number `r`.
    pub fn as_rational(&self) -> Option<&BigRational> {
        self.terms.is_empty().then_some(&self.rational)
    }

    pub fn is_zero(&self) -> bool {
        self.rational.is_zero() && self.terms.is_empty()
    }

    /// Coefficient on the constant, or on `1` for `None`.
    pub fn coefficient(&self, key: Option<&Constant>) -> BigRational {
        match key {
            None => self.rational.clone(),
            Some(c) => self.terms.get(c).cloned().unwrap_or_else(BigRational::zero),
        }
    }

    pub fn scale(&self, by: &BigRational) -> Self {
        if by.is_zero() {
            return Self::zero();
        }
        ExponentValue {
            rational: &self.rational * by,
            terms: self
                .terms
                .iter()
                .map(|(c, q)| (c.clone(), q * by))
                .collect(),
        }
    }

    pub fn scale_int(&self, by: &BigInt) -> Self {
        self.scale(&BigRational::from_integer(by.clone()))
    }

    /// `Some(q)` with `self = q * other`, if such a rational exists.
    pub fn ratio_to(&self, other: &ExponentValue) -> Option<BigRational> {
        if other.is_zero() {
            return self.is_zero().then(BigRational::zero);
        }
        let q = if !other.rational.is_zero() {
            &self.rational / &other.rational
        } else {
            let (c, coeff) = other.terms.iter().next()?;
            self.coefficient(Some(c)) / coeff
        };
        (other.scale(&q) == *self).then_some(q)
    }

    /// Certified enclosure at the given digit count.
    pub fn enclosure(&self, digits: usize) -> (BigRational, BigRational) {
        let mut lo = self.rational.clone();
        let mut hi = self.rational.clone();
        for (c, q) in &self.terms {
            let (clo, chi) = c.enclosure(digits);
            if q.is_positive() {
                lo += q * clo;
                hi += q * chi;
            } else {
                lo += q * chi;
                hi += q * clo;
            }
        }
        (lo, hi)
    }

    pub fn signum_with(&self, precision: &Precision) -> Result<Ordering> {
        if self.terms.is_empty() {
            return Ok(self.rational.cmp(&BigRational::zero()));
        }
        let mut digits = precision.initial_digits.max(1);
        let refinable = self.terms.keys().any(Constant::is_refinable);
        loop {
            let (lo, hi) = self.enclosure(digits.min(precision.max_digits));
            if lo.is_positive() {
                return Ok(Ordering::Greater);
            }
            if hi.is_negative() {
                return Ok(Ordering::Less);
            }
            if !refinable || digits >= precision.max_digits {
                return Err(Error::PrecisionExhausted {
                    digits: digits.min(precision.max_digits),
                    lhs: self.to_string(),
                    rhs: "0".to_string(),
                });
            }
            digits *= 2;
        }
    }

    pub fn compare_with(&self, other: &ExponentValue, precision: &Precision) -> Result<Ordering> {
        if self == other {
            return Ok(Ordering::Equal);
        }
        (self - other).signum_with(precision).map_err(|e| match e {
            Error::PrecisionExhausted { digits, .. } => Error::PrecisionExhausted {
                digits,
                lhs: self.to_string(),
                rhs: other.to_string(),
            },
            other => other,
        })
    }

    /// Order of the real numbers, refining enclosures under the default [`Precision`].
    pub fn compare(&self, other: &ExponentValue) -> Result<Ordering> {
        self.compare_with(other, &Precision::default())
    }

    pub fn lt(&self, other: &ExponentValue) -> Result<bool> {
        Ok(self.compare(other)? == Ordering::Less)
    }

    pub fn le(&self, other: &ExponentValue) -> Result<bool> {
        Ok(self.compare(other)? != Ordering::Greater)
    }

    pub fn min(&self, other: &ExponentValue) -> Result<ExponentValue> {
        Ok(if self.le(other)? {
            self.clone()
        } else {
            other.clone()
        })
    }

    pub fn max(&self, other: &ExponentValue) -> Result<ExponentValue> {
        Ok(if self.le(other)? {
            other.clone()
        } else {
            self.clone()
        })
    }

    /// Parse `"2"`, `"1/3"`, `"0.25"`, `"e"`, `"2*pi - 6"`, `"1/2*e + 1"`.
    ///
    /// Names resolve against `basis`; undeclared `pi`, `e` and `sqrtN` are
    /// adjoined on demand.
    pub fn parse(s: &str, basis: &mut ConstantBasis) -> Result<Self> {
        let mut value = ExponentValue::zero();
        let mut any = false;
        for (negative, term) in split_terms(s)? {
            any = true;
            let term_value = parse_term(term.trim(), basis)?;
            value = if negative {
                value - term_value
            } else {
                value + term_value
            };
        }
        if !any {
            return Err(Error::Parse(format!("empty exponent `{s}`")));
        }
        Ok(value)
    }

    /// Build from a `{"symbol": coefficient}` map where `"1"` is the rational unit.
    pub fn from_coefficients<'a>(
        coeffs: impl IntoIterator<Item = (&'a str, BigRational)>,
        basis: &mut ConstantBasis,
    ) -> Result<Self> {
        let mut value = ExponentValue::zero();
        for (name, q) in coeffs {
            let unit = resolve_symbol(name, basis)?;
            value = value + unit.scale(&q);
        }
        Ok(value)
    }

    fn normalize(mut self) -> Self {
        self.terms.retain(|_, q| !q.is_zero());
        self
    }
}

fn resolve_symbol(name: &str, basis: &mut ConstantBasis) -> Result<ExponentValue> {
    if name == "1" {
        return Ok(ExponentValue::from_integer(1));
    }
    if let Some(q) = basis.rational_alias(name) {
        return Ok(ExponentValue::from_rational(q.clone()));
    }
    if let Some(c) = basis.get(name) {
        return Ok(ExponentValue::constant(c));
    }
    let c = basis.ensure_builtin(name)?;
    Ok(ExponentValue::constant(&c))
}

fn split_terms(s: &str) -> Result<Vec<(bool, &str)>> {
    let mut out = Vec::new();
    let mut negative = false;
    let mut start = 0;
    let bytes = s.as_bytes();
    let mut i = 0;
    let mut seen_content = false;
    while i < bytes.len() {
        let ch = bytes[i] as char;
        if (ch == '+' || ch == '-') && seen_content {
            let piece = &s[start..i];
            if piece.trim().is_empty() {
                return Err(Error::Parse(format!("dangling sign in `{s}`")));
            }
            out.push((negative, piece));
            negative = ch == '-';
            start = i + 1;
            seen_content = false;
        } else if (ch == '+' || ch == '-') && !seen_content {
            if ch == '-' {
                negative = !negative;
            }
            start = i + 1;
        } else if !ch.is_whitespace() {
            seen_content = true;
        }
        i += 1;
    }
    let piece = &s[start..];
    if !piece.trim().is_empty() {
        out.push((negative, piece));
    } else if !out.is_empty() || seen_content {
        return Err(Error::Parse(format!("dangling sign in `{s}`")));
    }
    Ok(out)
}

fn parse_term(term: &str, basis: &mut ConstantBasis) -> Result<ExponentValue> {
    let starts_numeric = term
        .chars()
        .next()
        .map(|c| c.is_ascii_digit() || c == '.')
        .unwrap_or(false);
    if !starts_numeric {
        return resolve_symbol(term, basis);
    }
    match term.split_once('*') {
        Some((coef, name)) => {
            let q = parse_rational(coef)?;
            Ok(resolve_symbol(name.trim(), basis)?.scale(&q))
        }
        None => Ok(ExponentValue::from_rational(parse_rational(term)?)),
    }
}

impl Add for ExponentValue {
    type Output = ExponentValue;
    fn add(self, rhs: ExponentValue) -> ExponentValue {
        &self + &rhs
    }
}

impl<'a> Add<&'a ExponentValue> for &'a ExponentValue {
    type Output = ExponentValue;
    fn add(self, rhs: &ExponentValue) -> ExponentValue {
        let mut terms = self.terms.clone();
        for (c, q) in &rhs.terms {
            *terms.entry(c.clone()).or_insert_with(BigRational::zero) += q;
        }
        ExponentValue {
            rational: &self.rational + &rhs.rational,
            terms,
        }
        .normalize()
    }
}

impl Sub for ExponentValue {
    type Output = ExponentValue;
    fn sub(self, rhs: ExponentValue) -> ExponentValue {
        &self - &rhs
    }
}

impl<'a> Sub<&'a ExponentValue> for &'a ExponentValue {
    type Output = ExponentValue;
    fn sub(self, rhs: &ExponentValue) -> ExponentValue {
        self + &(-rhs)
    }
}

impl Neg for &ExponentValue {
    type Output = ExponentValue;
    fn neg(self) -> ExponentValue {
        ExponentValue {
            rational: -&self.rational,
            terms: self.terms.iter().map(|(c, q)| (c.clone(), -q)).collect(),
        }
    }
}

impl Neg for ExponentValue {
    type Output = ExponentValue;
    fn neg(self) -> ExponentValue {
        -&self
    }
}

impl fmt::Display for ExponentValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        if !self.rational.is_zero() || self.terms.is_empty() {
            f.write_str(&format_rational(&self.rational))?;
            first = false;
        }
        for (c, q) in &self.terms {
            let (neg, mag) = (q.is_negative(), q.abs());
            match (first, neg) {
                (true, true) => f.write_str("-")?,
                (true, false) => {}
                (false, true) => f.write_str(" - ")?,
                (false, false) => f.write_str(" + ")?,
            }
            if mag.is_one() {
                write!(f, "{c}")?;
            } else {
                write!(f, "{}*{c}", format_rational(&mag))?;
            }
            first = false;
        }
        Ok(())
    }
}

impl fmt::Debug for ExponentValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// A degree or truncation vector in `ℝⁿ`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct ExponentVector(Vec<ExponentValue>);

impl ExponentVector {
    pub fn new(entries: Vec<ExponentValue>) -> Self {
        ExponentVector(entries)
    }

    pub fn zeros(n: usize) -> Self {
        ExponentVector(vec![ExponentValue::zero(); n])
    }

    pub fn from_integers(entries: &[i64]) -> Self {
        ExponentVector(
            entries
                .iter()
                .map(|&k| ExponentValue::from_integer(k))
                .collect(),
        )
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn entries(&self) -> &[ExponentValue] {
        &self.0
    }

    pub fn into_entries(self) -> Vec<ExponentValue> {
        self.0
    }

    pub fn iter(&self) -> std::slice::Iter<'_, ExponentValue> {
        self.0.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(ExponentValue::is_zero)
    }

    pub fn scale(&self, by: &BigRational) -> Self {
        ExponentVector(self.0.iter().map(|v| v.scale(by)).collect())
    }

    /// Vector equal to `self` in coordinate `i` and zero elsewhere.
    pub fn projection(&self, i: usize) -> Self {
        let mut out = ExponentVector::zeros(self.len());
        out.0[i] = self.0[i].clone();
        out
    }

    /// Keep coordinates in `mask`, zero the rest.
    pub fn restrict(&self, mask: &[bool]) -> Self {
        ExponentVector(
            self.0
                .iter()
                .zip(mask)
                .map(|(v, &keep)| {
                    if keep {
                        v.clone()
                    } else {
                        ExponentValue::zero()
                    }
                })
                .collect(),
        )
    }

    pub fn is_nonnegative(&self) -> Result<bool> {
        for v in &self.0 {
            if v.signum_with(&Precision::default())? == Ordering::Less {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn is_strictly_positive(&self) -> Result<bool> {
        for v in &self.0 {
            if v.signum_with(&Precision::default())? != Ordering::Greater {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Coordinatewise `self ≤ other`.
    pub fn le(&self, other: &ExponentVector) -> Result<bool> {
        check_len(self, other)?;
        for (a, b) in self.0.iter().zip(&other.0) {
            if !a.le(b)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Coordinatewise minimum.
    pub fn meet(&self, other: &ExponentVector) -> Result<ExponentVector> {
        check_len(self, other)?;
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.min(b))
            .collect::<Result<Vec<_>>>()
            .map(ExponentVector)
    }

    pub fn parse(parts: &[&str], basis: &mut ConstantBasis) -> Result<Self> {
        parts
            .iter()
            .map(|p| ExponentValue::parse(p, basis))
            .collect::<Result<Vec<_>>>()
            .map(ExponentVector)
    }
}

fn check_len(a: &ExponentVector, b: &ExponentVector) -> Result<()> {
    if a.len() != b.len() {
        return Err(Error::DimensionMismatch {
            expected: a.len(),
            found: b.len(),
        });
    }
    Ok(())
}

impl Index<usize> for ExponentVector {
    type Output = ExponentValue;
    fn index(&self, i: usize) -> &ExponentValue {
        &self.0[i]
    }
}

impl<'a> Add<&'a ExponentVector> for &'a ExponentVector {
    type Output = ExponentVector;
    fn add(self, rhs: &ExponentVector) -> ExponentVector {
        assert_eq!(self.len(), rhs.len(), "vector length mismatch");
        ExponentVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl<'a> Sub<&'a ExponentVector> for &'a ExponentVector {
    type Output = ExponentVector;
    fn sub(self, rhs: &ExponentVector) -> ExponentVector {
        assert_eq!(self.len(), rhs.len(), "vector length mismatch");
        ExponentVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &ExponentVector {
    type Output = ExponentVector;
    fn neg(self) -> ExponentVector {
        ExponentVector(self.0.iter().map(|v| -v).collect())
    }
}

impl FromIterator<ExponentValue> for ExponentVector {
    fn from_iter<I: IntoIterator<Item = ExponentValue>>(iter: I) -> Self {
        ExponentVector(iter.into_iter().collect())
    }
}

impl fmt::Display for ExponentVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{v}")?;
        }
        f.write_str(")")
    }
}

impl fmt::Debug for ExponentVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn basis() -> ConstantBasis {
        ConstantBasis::with_builtins()
    }

    fn v(s: &str, b: &mut ConstantBasis) -> ExponentValue {
        ExponentValue::parse(s, b).unwrap()
    }

    #[test]
    fn compare_pi_with_three() {
        let mut b = basis();
        assert_eq!(
            v("pi", &mut b).compare(&v("3", &mut b)).unwrap(),
            Ordering::Greater
        );
        assert_eq!(
            v("3", &mut b).compare(&v("pi", &mut b)).unwrap(),
            Ordering::Less
        );
    }

    #[test]
    fn compare_symbolic_equal() {
        let mut b = basis();
        assert_eq!(
            v("2 + e", &mut b).compare(&v("e + 2", &mut b)).unwrap(),
            Ordering::Equal
        );
    }

    #[test]
    fn compare_pi_minus_e_positive() {
        // 50-digit table values give pi - e = 0.4233108251307480031023559119268...
        let mut b = basis();
        let pi50 = parse_rational("3.14159265358979323846264338327950288419716939937510").unwrap();
        let e50 = parse_rational("2.71828182845904523536028747135266249775724709369995").unwrap();
        let oracle = (pi50 - e50).cmp(&BigRational::zero());
        assert_eq!(oracle, Ordering::Greater);
        let diff = v("pi", &mut b) - v("e", &mut b);
        assert_eq!(diff.compare(&ExponentValue::zero()).unwrap(), oracle);
    }

    #[test]
    fn tiny_separation_needs_refinement() {
        // a loose declaration so the generator, not the declared interval, does the work
        let mut b = ConstantBasis::new();
        b.declare(
            "pi",
            BigRational::from_integer(3.into()),
            BigRational::from_integer(4.into()),
            1,
        )
        .unwrap();
        // pi minus its 30-digit truncation is about 2.9e-31 > 0
        let x = v("pi - 3.141592653589793238462643383279", &mut b);
        let coarse = Precision {
            initial_digits: 2,
            max_digits: 256,
        };
        assert_eq!(x.signum_with(&coarse).unwrap(), Ordering::Greater);
        let capped = Precision {
            initial_digits: 2,
            max_digits: 4,
        };
        assert!(matches!(
            x.signum_with(&capped),
            Err(Error::PrecisionExhausted { .. })
        ));
    }

    #[test]
    fn fixed_constant_cannot_refine() {
        let mut b = ConstantBasis::new();
        b.declare(
            "tau",
            parse_rational("6.28").unwrap(),
            parse_rational("6.29").unwrap(),
            1,
        )
        .unwrap();
        let tau = v("tau", &mut b);
        assert_eq!(tau.compare(&v("6", &mut b)).unwrap(), Ordering::Greater);
        assert!(tau.compare(&v("6.285", &mut b)).is_err());
    }

    #[test]
    fn parse_and_display_round_trip() {
        let mut b = basis();
        for s in ["2", "1/3", "e", "-pi", "2*pi - 6", "1/2 + 3/4*e", "-1/4"] {
            let x = v(s, &mut b);
            assert_eq!(v(&x.to_string(), &mut b), x, "{s}");
        }
        assert_eq!(v("0.5", &mut b), ExponentValue::from_ratio(1, 2));
        assert_eq!(v("22 - 7*pi", &mut b).to_string(), "22 - 7*pi");
        assert!(ExponentValue::parse("2 +", &mut b).is_err());
        assert!(ExponentValue::parse("", &mut b).is_err());
        assert!(ExponentValue::parse("zeta", &mut b).is_err());
    }

    #[test]
    fn sign_tests() {
        let mut b = basis();
        assert!(ExponentVector::parse(&["2", "e"], &mut b)
            .unwrap()
            .is_nonnegative()
            .unwrap());
        assert!(!ExponentVector::parse(&["0", "e"], &mut b)
            .unwrap()
            .is_strictly_positive()
            .unwrap());
        // pi - 3 ≈ 0.1416 by the 50-digit table
        assert!(ExponentVector::parse(&["pi - 3", "1"], &mut b)
            .unwrap()
            .is_nonnegative()
            .unwrap());
    }

    #[test]
    fn meet_examples() {
        let mut b = basis();
        let m = ExponentVector::parse(&["2", "e"], &mut b)
            .unwrap()
            .meet(&ExponentVector::parse(&["pi", "1"], &mut b).unwrap())
            .unwrap();
        assert_eq!(m, ExponentVector::from_integers(&[2, 1]));
        let a = ExponentVector::parse(&["pi", "2"], &mut b).unwrap();
        assert_eq!(a.meet(&a).unwrap(), a);
        let m = a
            .meet(&ExponentVector::parse(&["3", "e"], &mut b).unwrap())
            .unwrap();
        assert_eq!(m, ExponentVector::from_integers(&[3, 2]));
    }

    #[test]
    fn ratio_to() {
        let mut b = basis();
        let eps = v("1/2*e", &mut b);
        assert_eq!(
            v("2*e", &mut b).ratio_to(&eps),
            Some(BigRational::from_integer(4.into()))
        );
        assert_eq!(v("2*e + 1", &mut b).ratio_to(&eps), None);
        assert_eq!(
            v("3/2", &mut b).ratio_to(&v("1/4", &mut b)),
            Some(BigRational::from_integer(6.into()))
        );
    }
}
