//! Finitely generated exponent groups `G ⊆ ℝⁿ` and their cones.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::constants::{parse_rational, Constant, ConstantBasis};
use super::lattice::{column_hnf, solve_integer};
use super::value::{ExponentValue, ExponentVector};
use crate::error::{Error, Result};

#[derive(Clone, Debug)]
enum GroupKind {
    /// All of `ℝⁿ`: every exponent over the basis is a member.
    Full,
    Generated(Vec<ExponentVector>),
}

/// A subgroup of `ℝⁿ`, either everything or the integer span of generators.
#[derive(Clone, Debug)]
pub struct ExponentGroup {
    n: usize,
    basis: ConstantBasis,
    kind: GroupKind,
}

/// Coordinate of a value in the rational span: `None` is the unit `1`.
type Component = Option<Constant>;

impl ExponentGroup {
    pub fn full(n: usize, basis: ConstantBasis) -> Self {
        ExponentGroup {
            n,
            basis,
            kind: GroupKind::Full,
        }
    }

    pub fn generated(
        n: usize,
        basis: ConstantBasis,
        generators: Vec<ExponentVector>,
    ) -> Result<Self> {
        for g in &generators {
            if g.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: g.len(),
                });
            }
            for value in g.iter() {
                for c in value.terms().keys() {
                    if basis.get(c.name()).is_none() {
                        return Err(Error::UnknownSymbol(c.name().to_string()));
                    }
                }
            }
        }
        Ok(ExponentGroup {
            n,
            basis,
            kind: GroupKind::Generated(generators),
        })
    }

    /// `(1/d)ℤⁿ`.
    pub fn rational_lattice(n: usize, d: i64) -> Self {
        let gens = (0..n)
            .map(|i| {
                let mut v = ExponentVector::zeros(n).into_entries();
                v[i] = ExponentValue::from_ratio(1, d);
                ExponentVector::new(v)
            })
            .collect();
        ExponentGroup::generated(n, ConstantBasis::new(), gens).expect("rational generators")
    }

    pub fn dimension(&self) -> usize {
        self.n
    }

    pub fn basis(&self) -> &ConstantBasis {
        &self.basis
    }

    pub fn basis_mut(&mut self) -> &mut ConstantBasis {
        &mut self.basis
    }

    pub fn is_full(&self) -> bool {
        matches!(self.kind, GroupKind::Full)
    }

    pub fn generators(&self) -> Option<&[ExponentVector]> {
        match &self.kind {
            GroupKind::Full => None,
            GroupKind::Generated(g) => Some(g),
        }
    }

    fn check_dim(&self, v: &ExponentVector) -> Result<()> {
        if v.len() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: v.len(),
            });
        }
        Ok(())
    }

    /// Integer coefficients expressing `v` in the generators, if `v ∈ G`.
    /// For the full group the witness is empty.
    pub fn membership_witness(&self, v: &ExponentVector) -> Result<Option<Vec<BigInt>>> {
        self.check_dim(v)?;
        let gens = match &self.kind {
            GroupKind::Full => return Ok(Some(Vec::new())),
            GroupKind::Generated(g) => g,
        };
        let coords: Vec<usize> = (0..self.n).collect();
        let (a, b) = integer_system(gens, &coords, Some(v));
        Ok(solve_integer(&a, gens.len(), &b).map(|(x, _)| x))
    }

    pub fn is_member(&self, v: &ExponentVector) -> Result<bool> {
        Ok(self.membership_witness(v)?.is_some())
    }

    /// `v ∈ G₊ = G ∩ ℝⁿ₊`.
    pub fn in_positive_cone(&self, v: &ExponentVector) -> Result<bool> {
        Ok(self.is_member(v)? && v.is_nonnegative()?)
    }

    /// A `ℤ`-basis of `{ t : t·eᵢ ∈ G }`, in Hermite-reduced form with positive leading terms.
    /// For the full group this returns `None` (the ray is all of `ℝ`).
    pub fn ray_intersection(&self, axis: usize) -> Result<Option<Vec<ExponentValue>>> {
        if axis >= self.n {
            return Err(Error::InvalidParameter(format!(
                "axis {axis} out of range for n = {}",
                self.n
            )));
        }
        let gens = match &self.kind {
            GroupKind::Full => return Ok(None),
            GroupKind::Generated(g) => g,
        };
        let others: Vec<usize> = (0..self.n).filter(|&i| i != axis).collect();
        let (a, _) = integer_system(gens, &others, None);
        let kernel = if a.is_empty() {
            (0..gens.len())
                .map(|j| {
                    (0..gens.len())
                        .map(|i| BigInt::from((i == j) as i64))
                        .collect()
                })
                .collect()
        } else {
            column_hnf(&a, gens.len()).kernel()
        };
        let images: Vec<ExponentValue> = kernel
            .iter()
            .map(|k| {
                k.iter()
                    .zip(gens)
                    .fold(ExponentValue::zero(), |acc, (c, g)| {
                        acc + g[axis].scale_int(c)
                    })
            })
            .filter(|v| !v.is_zero())
            .collect();
        Ok(Some(reduce_to_basis(&images)))
    }

    /// Membership in `G̊₊`: every ray projection is strictly positive and lies in `G`.
    pub fn in_open_cone(&self, v: &ExponentVector) -> Result<bool> {
        if !self.in_positive_cone(v)? {
            return Err(Error::NotInGroup(format!("{v} (positive cone)")));
        }
        if !v.is_strictly_positive()? {
            return Ok(false);
        }
        for i in 0..self.n {
            if !self.is_member(&v.projection(i))? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Parse the JSON group description.
    pub fn from_json(text: &str) -> Result<Self> {
        let spec: GroupSpec = serde_json::from_str(text)?;
        spec.build()
    }
}

fn component_key(c: &Component) -> (u32, String) {
    match c {
        None => (0, String::new()),
        Some(c) => (c.class(), c.name().to_string()),
    }
}

/// Rows `(coordinate, component)` over `coords`, grouped by independence class,
/// scaled to integers. Columns are generators; the right-hand side comes from `rhs`.
fn integer_system(
    gens: &[ExponentVector],
    coords: &[usize],
    rhs: Option<&ExponentVector>,
) -> (Vec<Vec<BigInt>>, Vec<BigInt>) {
    let mut rows = Vec::new();
    let mut b = Vec::new();
    for &i in coords {
        let mut keys: BTreeSet<(u32, String)> = BTreeSet::new();
        let mut comps: Vec<Component> = vec![None];
        keys.insert(component_key(&None));
        let values = gens.iter().map(|g| &g[i]).chain(rhs.map(|v| &v[i]));
        for value in values {
            for c in value.terms().keys() {
                let comp = Some(c.clone());
                if keys.insert(component_key(&comp)) {
                    comps.push(comp);
                }
            }
        }
        comps.sort_by_key(component_key);
        for comp in &comps {
            let mut row: Vec<BigRational> = gens
                .iter()
                .map(|g| g[i].coefficient(comp.as_ref()))
                .collect();
            let target = rhs
                .map(|v| v[i].coefficient(comp.as_ref()))
                .unwrap_or_else(BigRational::zero);
            row.push(target);
            let lcm = row.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
            let mut ints: Vec<BigInt> = row
                .iter()
                .map(|q| (q * BigRational::from_integer(lcm.clone())).to_integer())
                .collect();
            let t = ints.pop().expect("rhs column");
            rows.push(ints);
            b.push(t);
        }
    }
    (rows, b)
}

/// Hermite-reduce a generating set of a finitely generated subgroup of the
/// rational span into a basis with positive leading components.
fn reduce_to_basis(values: &[ExponentValue]) -> Vec<ExponentValue> {
    if values.is_empty() {
        return Vec::new();
    }
    let mut comps: Vec<Component> = vec![None];
    for v in values {
        for c in v.terms().keys() {
            if !comps.contains(&Some(c.clone())) {
                comps.push(Some(c.clone()));
            }
        }
    }
    comps.sort_by_key(component_key);
    let denom = values.iter().fold(BigInt::one(), |acc, v| {
        comps
            .iter()
            .fold(acc, |acc, c| acc.lcm(v.coefficient(c.as_ref()).denom()))
    });
    let scale = BigRational::from_integer(denom.clone());
    let matrix: Vec<Vec<BigInt>> = comps
        .iter()
        .map(|c| {
            values
                .iter()
                .map(|v| (v.coefficient(c.as_ref()) * &scale).to_integer())
                .collect()
        })
        .collect();
    let hnf = column_hnf(&matrix, values.len());
    let inv = BigRational::new(BigInt::one(), denom);
    (0..hnf.rank())
        .map(|j| {
            comps
                .iter()
                .enumerate()
                .fold(ExponentValue::zero(), |acc, (r, c)| {
                    let q = BigRational::from_integer(hnf.h[r][j].clone()) * &inv;
                    let unit = match c {
                        None => ExponentValue::from_integer(1),
                        Some(c) => ExponentValue::constant(c),
                    };
                    acc + unit.scale(&q)
                })
        })
        .collect()
}

/// One declared constant in the JSON group description.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ConstantSpec {
    pub name: String,
    pub lo: String,
    pub hi: String,
    pub class: u32,
}

/// An entry of a generator: either an expression string or a coefficient map.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ValueSpec {
    Expr(String),
    Int(i64),
    Coeffs(std::collections::BTreeMap<String, serde_json::Value>),
}

impl ValueSpec {
    pub fn to_value(&self, basis: &mut ConstantBasis) -> Result<ExponentValue> {
        match self {
            ValueSpec::Expr(s) => ExponentValue::parse(s, basis),
            ValueSpec::Int(k) => Ok(ExponentValue::from_integer(*k)),
            ValueSpec::Coeffs(map) => {
                let mut parsed = Vec::new();
                for (name, coeff) in map {
                    let q = match coeff {
                        serde_json::Value::Number(n) => parse_rational(&n.to_string())?,
                        serde_json::Value::String(s) => parse_rational(s)?,
                        other => {
                            return Err(Error::Parse(format!("bad coefficient {other}")));
                        }
                    };
                    parsed.push((name.as_str(), q));
                }
                ExponentValue::from_coefficients(parsed, basis)
            }
        }
    }
}

/// `{"n": 2, "basis": [...], "generators": [[...], ...]}`; omitting
/// `generators` describes the full group `ℝⁿ`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GroupSpec {
    pub n: usize,
    #[serde(default)]
    pub basis: Vec<ConstantSpec>,
    #[serde(default)]
    pub generators: Option<Vec<Vec<ValueSpec>>>,
}

impl GroupSpec {
    pub fn build(&self) -> Result<ExponentGroup> {
        let mut basis = ConstantBasis::new();
        for c in &self.basis {
            basis.declare(
                &c.name,
                parse_rational(&c.lo)?,
                parse_rational(&c.hi)?,
                c.class,
            )?;
        }
        match &self.generators {
            None => Ok(ExponentGroup::full(self.n, basis)),
            Some(gens) => {
                let mut vectors = Vec::new();
                for g in gens {
                    let v = g
                        .iter()
                        .map(|s| s.to_value(&mut basis))
                        .collect::<Result<Vec<_>>>()?;
                    vectors.push(ExponentVector::new(v));
                }
                ExponentGroup::generated(self.n, basis, vectors)
            }
        }
    }
}

/// The group generated by `(2,0), (π,0), (1,1), (0,e)` in `ℝ²`.
pub fn dense_example_group() -> ExponentGroup {
    let mut basis = ConstantBasis::with_builtins();
    let gens = [["2", "0"], ["pi", "0"], ["1", "1"], ["0", "e"]]
        .iter()
        .map(|g| ExponentVector::parse(g, &mut basis).expect("literal generators"))
        .collect();
    ExponentGroup::generated(2, basis, gens).expect("valid example group")
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    fn vec_of(g: &mut ExponentGroup, parts: &[&str]) -> ExponentVector {
        ExponentVector::parse(parts, g.basis_mut()).unwrap()
    }

    fn as_strings(values: &[ExponentValue]) -> BTreeSet<String> {
        values.iter().map(|v| v.to_string()).collect()
    }

    #[test]
    fn dense_example_membership() {
        let mut g = dense_example_group();
        let v = vec_of(&mut g, &["0", "2"]);
        let w = g.membership_witness(&v).unwrap().unwrap();
        // (0,2) = -1·(2,0) + 2·(1,1)... any witness must reproduce v
        let gens = g.generators().unwrap().to_vec();
        let recon = w
            .iter()
            .zip(&gens)
            .fold(ExponentVector::zeros(2), |acc, (c, gv)| {
                &acc + &gv.scale(&BigRational::from_integer(c.clone()))
            });
        assert_eq!(recon, v);
        {
            let v = vec_of(&mut g, &["0", "1"]);
            assert!(!g.is_member(&v).unwrap());
        }
        assert!(g.is_member(&ExponentVector::zeros(2)).unwrap());
    }

    #[test]
    fn dense_example_y_ray() {
        let g = dense_example_group();
        let ray = g.ray_intersection(1).unwrap().unwrap();
        assert_eq!(
            as_strings(&ray),
            ["2", "e"].iter().map(|s| s.to_string()).collect()
        );
        let ray = g.ray_intersection(0).unwrap().unwrap();
        assert_eq!(
            as_strings(&ray),
            ["2", "pi"].iter().map(|s| s.to_string()).collect()
        );
    }

    #[test]
    fn product_and_diagonal_rays() {
        let g = ExponentGroup::rational_lattice(2, 3);
        let ray = g.ray_intersection(0).unwrap().unwrap();
        assert_eq!(as_strings(&ray), ["1/3".to_string()].into_iter().collect());
        let diag = ExponentGroup::generated(
            2,
            ConstantBasis::new(),
            vec![ExponentVector::from_integers(&[1, 1])],
        )
        .unwrap();
        assert!(diag.ray_intersection(0).unwrap().unwrap().is_empty());
    }

    #[test]
    fn open_cone_examples() {
        let mut g = dense_example_group();
        {
            let v = vec_of(&mut g, &["1", "1"]);
            assert!(!g.in_open_cone(&v).unwrap());
        }
        {
            let v = vec_of(&mut g, &["2", "2"]);
            assert!(g.in_open_cone(&v).unwrap());
        }
        {
            let v = vec_of(&mut g, &["0", "2"]);
            assert!(!g.in_open_cone(&v).unwrap());
        }
        {
            let v = vec_of(&mut g, &["0", "1"]);
            assert!(g.in_open_cone(&v).is_err());
        }
    }

    #[test]
    fn json_round_trip_of_example() {
        let text = r#"{
            "n": 2,
            "basis": [
                {"name": "pi", "lo": "3.14159", "hi": "3.14160", "class": 1},
                {"name": "e", "lo": "2.71828", "hi": "2.71829", "class": 2}
            ],
            "generators": [["2", "0"], [{"pi": 1}, 0], [1, 1], ["0", "e"]]
        }"#;
        let g = ExponentGroup::from_json(text).unwrap();
        let ray = g.ray_intersection(1).unwrap().unwrap();
        assert_eq!(
            as_strings(&ray),
            ["2", "e"].iter().map(|s| s.to_string()).collect()
        );
    }
}
