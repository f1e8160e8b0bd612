//! Named real constants with certified, refinable decimal enclosures.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::{BigInt, Sign};
use num_integer::Roots;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// How an enclosure can be tightened beyond the user-supplied interval.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Refinement {
    /// No generator: the declared interval is all we know.
    Fixed,
    Pi,
    E,
    /// Square root of a positive non-square rational.
    Sqrt(BigRational),
}

#[derive(Debug)]
struct ConstantDef {
    name: String,
    class: u32,
    lo: BigRational,
    hi: BigRational,
    refinement: Refinement,
}

/// A declared irrational constant. Identity (equality, hashing, order) is by name.
#[derive(Clone)]
pub struct Constant(Arc<ConstantDef>);

impl Constant {
    pub fn name(&self) -> &str {
        &self.0.name
    }

    pub fn class(&self) -> u32 {
        self.0.class
    }

    pub fn declared_enclosure(&self) -> (&BigRational, &BigRational) {
        (&self.0.lo, &self.0.hi)
    }

    pub fn refinement(&self) -> &Refinement {
        &self.0.refinement
    }

    /// Enclosure of width roughly `10^-digits`, intersected with the declared one.
    /// `Fixed` constants always return the declared interval.
    pub fn enclosure(&self, digits: usize) -> (BigRational, BigRational) {
        let def = &self.0;
        let computed = match &def.refinement {
            Refinement::Fixed => None,
            Refinement::Pi => Some(cached(CacheKey::Pi, digits, || pi_enclosure(digits))),
            Refinement::E => Some(cached(CacheKey::E, digits, || e_enclosure(digits))),
            Refinement::Sqrt(q) => Some(sqrt_enclosure(q, digits)),
        };
        match computed {
            None => (def.lo.clone(), def.hi.clone()),
            Some((lo, hi)) => (
                if lo > def.lo { lo } else { def.lo.clone() },
                if hi < def.hi { hi } else { def.hi.clone() },
            ),
        }
    }

    pub fn is_refinable(&self) -> bool {
        self.0.refinement != Refinement::Fixed
    }
}

impl PartialEq for Constant {
    fn eq(&self, other: &Self) -> bool {
        self.0.name == other.0.name
    }
}

impl Eq for Constant {}

impl Hash for Constant {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.0.name.hash(state)
    }
}

impl PartialOrd for Constant {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Constant {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.0.name.cmp(&other.0.name)
    }
}

impl fmt::Debug for Constant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0.name)
    }
}

impl fmt::Display for Constant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0.name)
    }
}

/// The declared constants of a problem instance.
///
/// Class `0` is the rational class: its members have zero-width enclosures and
/// are folded into the rational part of every value that mentions them. All
/// other constants are trusted to be linearly independent over the rationals,
/// together with `1`.
#[derive(Clone, Debug, Default)]
pub struct ConstantBasis {
    irrational: BTreeMap<String, Constant>,
    rational: BTreeMap<String, BigRational>,
}

impl ConstantBasis {
    pub fn new() -> Self {
        Self::default()
    }

    /// Basis with `pi` (class 1) and `e` (class 2) declared.
    pub fn with_builtins() -> Self {
        let mut basis = Self::new();
        basis.ensure_builtin("pi").expect("pi is builtin");
        basis.ensure_builtin("e").expect("e is builtin");
        basis
    }

    /// Declare a constant. A zero-width enclosure in class 0 declares a rational alias.
    pub fn declare(
        &mut self,
        name: &str,
        lo: BigRational,
        hi: BigRational,
        class: u32,
    ) -> Result<()> {
        let invalid = |reason: &str| Error::InvalidConstant {
            name: name.to_string(),
            reason: reason.to_string(),
        };
        if !is_identifier(name) {
            return Err(invalid("names must be identifiers"));
        }
        if self.irrational.contains_key(name) || self.rational.contains_key(name) {
            return Err(invalid("declared twice"));
        }
        if class == 0 {
            if lo != hi {
                return Err(invalid("rational-class constants need an exact value"));
            }
            self.rational.insert(name.to_string(), lo);
            return Ok(());
        }
        if lo >= hi {
            return Err(invalid("enclosure must satisfy lo < hi"));
        }
        let refinement = builtin_refinement(name);
        let def = ConstantDef {
            name: name.to_string(),
            class,
            lo,
            hi,
            refinement,
        };
        let constant = Constant(Arc::new(def));
        if constant.is_refinable() {
            let (lo, hi) = constant.enclosure(40);
            let (dlo, dhi) = constant.declared_enclosure();
            if lo > *dhi || hi < *dlo || lo > hi {
                return Err(invalid("declared enclosure does not contain the constant"));
            }
        }
        self.irrational.insert(name.to_string(), constant);
        Ok(())
    }

    /// Declare `pi`, `e` or `sqrtN` with a generated enclosure if not already present.
    pub fn ensure_builtin(&mut self, name: &str) -> Result<Constant> {
        if let Some(c) = self.irrational.get(name) {
            return Ok(c.clone());
        }
        let refinement = builtin_refinement(name);
        if refinement == Refinement::Fixed {
            return Err(Error::UnknownSymbol(name.to_string()));
        }
        let probe = Constant(Arc::new(ConstantDef {
            name: name.to_string(),
            class: 0,
            lo: BigRational::from_integer((-1_000_000).into()),
            hi: BigRational::from_integer(1_000_000.into()),
            refinement,
        }));
        let (lo, hi) = probe.enclosure(30);
        let class = self
            .irrational
            .values()
            .map(|c| c.class())
            .max()
            .unwrap_or(0)
            + 1;
        self.declare(name, lo, hi, class)?;
        Ok(self.irrational[name].clone())
    }

    pub fn get(&self, name: &str) -> Option<&Constant> {
        self.irrational.get(name)
    }

    pub fn rational_alias(&self, name: &str) -> Option<&BigRational> {
        self.rational.get(name)
    }

    pub fn constants(&self) -> impl Iterator<Item = &Constant> {
        self.irrational.values()
    }
}

fn is_identifier(name: &str) -> bool {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

fn builtin_refinement(name: &str) -> Refinement {
    match name {
        "pi" => Refinement::Pi,
        "e" => Refinement::E,
        _ => match name
            .strip_prefix("sqrt")
            .and_then(|s| s.parse::<u64>().ok())
        {
            Some(k) if k > 1 && k.sqrt() * k.sqrt() != k => {
                Refinement::Sqrt(BigRational::from_integer(k.into()))
            }
            _ => Refinement::Fixed,
        },
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash)]
enum CacheKey {
    Pi,
    E,
}

type Enclosure = (BigRational, BigRational);

fn cached(key: CacheKey, digits: usize, compute: impl FnOnce() -> Enclosure) -> Enclosure {
    static CACHE: OnceLock<Mutex<HashMap<(CacheKey, usize), Enclosure>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(hit) = cache.lock().unwrap().get(&(key, digits)) {
        return hit.clone();
    }
    let value = compute();
    cache.lock().unwrap().insert((key, digits), value.clone());
    value
}

const GUARD_DIGITS: usize = 10;

fn pow10(k: usize) -> BigInt {
    num_traits::pow(BigInt::from(10), k)
}

fn fixed_point_enclosure(approx: BigInt, err: BigInt, scale: BigInt) -> Enclosure {
    (
        BigRational::new(&approx - &err, scale.clone()),
        BigRational::new(approx + err, scale),
    )
}

/// `arctan(1/x)` scaled by `scale`, with the number of series terms used.
fn arctan_inv(x: u64, scale: &BigInt) -> (BigInt, u64) {
    let x = BigInt::from(x);
    let x2 = &x * &x;
    let mut power = scale / &x;
    let mut sum = BigInt::zero();
    let mut k: u64 = 0;
    while !power.is_zero() {
        let term = &power / BigInt::from(2 * k + 1);
        if k.is_multiple_of(2) {
            sum += term;
        } else {
            sum -= term;
        }
        power /= &x2;
        k += 1;
    }
    (sum, k)
}

fn pi_enclosure(digits: usize) -> Enclosure {
    let scale = pow10(digits + GUARD_DIGITS);
    let (a, n1) = arctan_inv(5, &scale);
    let (b, n2) = arctan_inv(239, &scale);
    let approx = a * 16 - b * 4;
    // each truncated division is off by < 1 ulp; the alternating tail by < 1 ulp
    let err = BigInt::from(16 * (2 * n1 + 2) + 4 * (2 * n2 + 2));
    fixed_point_enclosure(approx, err, scale)
}

fn e_enclosure(digits: usize) -> Enclosure {
    let scale = pow10(digits + GUARD_DIGITS);
    let mut term = scale.clone();
    let mut sum = BigInt::zero();
    let mut k: u64 = 0;
    while !term.is_zero() {
        sum += &term;
        k += 1;
        term /= BigInt::from(k);
    }
    // truncation error per term < 2 ulp, tail < 2 ulp
    let err = BigInt::from(2 * k + 4);
    fixed_point_enclosure(sum, err, scale)
}

fn sqrt_enclosure(q: &BigRational, digits: usize) -> Enclosure {
    let scale = pow10(digits + GUARD_DIGITS);
    let num = q.numer() * q.denom() * &scale * &scale;
    let root = match num.sign() {
        Sign::Minus => BigInt::zero(),
        _ => num.sqrt(),
    };
    let denom = q.denom() * &scale;
    (
        BigRational::new(root.clone(), denom.clone()),
        BigRational::new(root + BigInt::one(), denom),
    )
}

/// Parse a decimal string (`"3.14159"`, `"-2"`, `"1e-3"` is not accepted) or a ratio `"p/q"`.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let err = || Error::Parse(format!("not a rational literal: `{s}`"));
    if let Some((p, q)) = s.split_once('/') {
        let p: BigInt = p.trim().parse().map_err(|_| err())?;
        let q: BigInt = q.trim().parse().map_err(|_| err())?;
        if q.is_zero() {
            return Err(err());
        }
        return Ok(BigRational::new(p, q));
    }
    let (neg, body) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s.strip_prefix('+').unwrap_or(s)),
    };
    let (int_part, frac_part) = body.split_once('.').unwrap_or((body, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(err());
    }
    if !int_part.chars().all(|c| c.is_ascii_digit())
        || !frac_part.chars().all(|c| c.is_ascii_digit())
    {
        return Err(err());
    }
    let digits = format!("{int_part}{frac_part}");
    let numer: BigInt = if digits.is_empty() {
        BigInt::zero()
    } else {
        digits.parse().map_err(|_| err())?
    };
    let value = BigRational::new(numer, pow10(frac_part.len()));
    Ok(if neg { -value } else { value })
}

/// Shortest-ish decimal rendering used in JSON output: exact `p/q` unless integral.
pub fn format_rational(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}
