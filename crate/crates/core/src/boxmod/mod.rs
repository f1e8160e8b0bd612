//! Box modules `k[B]`, canonical morphisms between them, and cellwise evaluation.

mod arrangement;
mod interval;

use std::fmt;
use std::str::FromStr;

use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exponents::{format_rational, ConstantBasis, ExponentValue, ValueSpec};
use crate::linalg;

pub use arrangement::{
    build_arrangement, can_map, ranges_contain, Cell, CellArrangement, PieceRange,
};
pub use interval::{minkowski_orthant, BoxModule, Interval};

/// Coefficient field: exact rationals or a prime field.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum FieldConfig {
    #[default]
    Rational,
    Prime(u64),
}

impl FieldConfig {
    pub fn prime(p: u64) -> Result<Self> {
        if linalg::is_prime(p) {
            Ok(FieldConfig::Prime(p))
        } else {
            Err(Error::InvalidParameter(format!("{p} is not prime")))
        }
    }

    /// Rank of a matrix given by rows.
    pub fn rank(&self, rows: &[Vec<BigRational>]) -> Result<usize> {
        match self {
            FieldConfig::Rational => Ok(linalg::rank_rational(rows)),
            FieldConfig::Prime(p) => linalg::rank_mod_p(rows, *p),
        }
    }

    /// Whether a scalar is zero in this field.
    pub fn is_zero(&self, q: &BigRational) -> Result<bool> {
        match self {
            FieldConfig::Rational => Ok(q.is_zero()),
            FieldConfig::Prime(p) => Ok(linalg::reduce_mod_p(q, *p)? == 0),
        }
    }
}

impl fmt::Display for FieldConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldConfig::Rational => f.write_str("q"),
            FieldConfig::Prime(p) => write!(f, "p:{p}"),
        }
    }
}

impl FromStr for FieldConfig {
    type Err = Error;

    /// `q` or `p:<prime>`.
    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "q" | "Q" => Ok(FieldConfig::Rational),
            other => match other.strip_prefix("p:").map(str::parse::<u64>) {
                Some(Ok(p)) => FieldConfig::prime(p),
                _ => Err(Error::Parse(format!(
                    "field must be `q` or `p:<prime>`, got `{s}`"
                ))),
            },
        }
    }
}

/// A scalar multiple of the identity-on-overlap map between two boxes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CanonicalMorphism {
    pub source: BoxModule,
    pub target: BoxModule,
    pub scalar: BigRational,
}

impl CanonicalMorphism {
    pub fn new(source: BoxModule, target: BoxModule, scalar: BigRational) -> Result<Self> {
        if !scalar.is_zero() && !can_map(&source, &target)? {
            return Err(Error::InvalidParameter(format!(
                "no canonical morphism k[{source}] -> k[{target}]"
            )));
        }
        Ok(CanonicalMorphism {
            source,
            target,
            scalar,
        })
    }

    /// The scalar acting on a cell: nonzero only on cells in both boxes.
    pub fn on_cell(&self, arr: &CellArrangement, cell: &[usize]) -> Result<BigRational> {
        if arr.evaluate(&self.source, cell)? == 1 && arr.evaluate(&self.target, cell)? == 1 {
            Ok(self.scalar.clone())
        } else {
            Ok(BigRational::zero())
        }
    }
}

/// One end of an interval in JSON: `{"v": exponent, "closed": bool}`; an
/// upper end may use `"v": "inf"`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct EndSpec {
    pub v: ValueSpec,
    #[serde(default)]
    pub closed: bool,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct IntervalSpec {
    pub lo: EndSpec,
    pub hi: EndSpec,
}

/// `{"intervals": [{"lo": {...}, "hi": {...}}, ...]}`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct BoxSpec {
    pub intervals: Vec<IntervalSpec>,
}

fn is_inf(v: &ValueSpec) -> bool {
    matches!(v, ValueSpec::Expr(s) if s.trim() == "inf")
}

impl BoxSpec {
    pub fn build(&self, basis: &mut ConstantBasis) -> Result<BoxModule> {
        let intervals = self
            .intervals
            .iter()
            .map(|i| {
                if is_inf(&i.lo.v) {
                    return Err(Error::Parse("lower ends must be finite".into()));
                }
                let lo = i.lo.v.to_value(basis)?;
                let hi = if is_inf(&i.hi.v) {
                    None
                } else {
                    Some(i.hi.v.to_value(basis)?)
                };
                Interval::new(lo, i.lo.closed, hi, i.hi.closed)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(BoxModule::new(intervals))
    }

    pub fn from_box(b: &BoxModule) -> Self {
        let end = |v: Option<&ExponentValue>, closed: bool| EndSpec {
            v: ValueSpec::Expr(v.map_or_else(|| "inf".to_string(), value_string)),
            closed,
        };
        BoxSpec {
            intervals: b
                .intervals()
                .iter()
                .map(|i| IntervalSpec {
                    lo: end(Some(i.lo()), i.lo_closed()),
                    hi: end(i.hi(), i.hi_closed()),
                })
                .collect(),
        }
    }
}

/// Canonical string form of an exponent value (parseable back).
pub fn value_string(v: &ExponentValue) -> String {
    match v.as_rational() {
        Some(q) => format_rational(q),
        None => v.to_string(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_parsing() {
        assert_eq!("q".parse::<FieldConfig>().unwrap(), FieldConfig::Rational);
        assert_eq!("p:7".parse::<FieldConfig>().unwrap(), FieldConfig::Prime(7));
        assert!("p:8".parse::<FieldConfig>().is_err());
        assert!("r".parse::<FieldConfig>().is_err());
    }

    #[test]
    fn box_json_round_trip() {
        let mut basis = ConstantBasis::with_builtins();
        let text = r#"{"intervals": [
            {"lo": {"v": "0", "closed": true}, "hi": {"v": "1", "closed": false}},
            {"lo": {"v": "pi - 3", "closed": false}, "hi": {"v": "inf"}}
        ]}"#;
        let spec: BoxSpec = serde_json::from_str(text).unwrap();
        let b = spec.build(&mut basis).unwrap();
        assert_eq!(b.to_string(), "[0,1) x (-3 + pi,inf)");
        let again = BoxSpec::from_box(&b).build(&mut basis).unwrap();
        assert_eq!(again, b);
    }

    #[test]
    fn canonical_morphism_legality() {
        let r = BoxModule::ring(1);
        let k = BoxModule::residue_field(1);
        let one = BigRational::from_integer(1.into());
        assert!(CanonicalMorphism::new(r.clone(), k.clone(), one.clone()).is_ok());
        assert!(CanonicalMorphism::new(k, r, one).is_err());
    }
}
