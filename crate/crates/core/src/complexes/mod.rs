//! Finite chain complexes of box-module sums with canonical-morphism differentials.

mod homology;
mod ops;
pub mod oracle;

use std::collections::{BTreeMap, HashMap};

use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::boxmod::{
    build_arrangement, can_map, ranges_contain, BoxModule, BoxSpec, CellArrangement, PieceRange,
};
use crate::error::{Error, Result};
use crate::exponents::{format_rational, parse_rational, ConstantBasis};

pub use homology::{
    euler_consistent, homology, homology_on, homology_with, kunneth_consistent, CellHomologyTable,
    CrossCheck, HomologyOptions,
};
pub use ops::{collapse, direct_sum, dualize_free, tensor, tensor_total, TotalComplex};

/// One nonzero entry of a differential `d_i : C_i → C_{i-1}`: the canonical
/// morphism from summand `col` of `C_i` to summand `row` of `C_{i-1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Entry {
    pub row: usize,
    pub col: usize,
    pub scalar: BigRational,
}

/// A bounded chain complex of finite direct sums of box modules over `n` variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoxComplex {
    n: usize,
    terms: BTreeMap<i64, Vec<BoxModule>>,
    differentials: BTreeMap<i64, Vec<Entry>>,
}

/// The first failure found by [`BoxComplex::verify`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    /// An entry whose boxes admit no canonical morphism.
    Illegal { degree: i64, row: usize, col: usize },
    /// `d_{i-1} ∘ d_i` is nonzero at `(row, col)` on `cell`.
    NonzeroSquare {
        cell: String,
        degree: i64,
        row: usize,
        col: usize,
    },
    /// An entry refers to a summand that does not exist.
    OutOfRange { degree: i64, row: usize, col: usize },
}

impl std::fmt::Display for Violation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Violation::Illegal { degree, row, col } => {
                write!(f, "illegal entry ({row}, {col}) of d_{degree}")
            }
            Violation::NonzeroSquare {
                cell,
                degree,
                row,
                col,
            } => write!(
                f,
                "d_{} d_{degree} has nonzero entry ({row}, {col}) on cell {cell}",
                degree - 1
            ),
            Violation::OutOfRange { degree, row, col } => {
                write!(f, "entry ({row}, {col}) of d_{degree} is out of range")
            }
        }
    }
}

impl BoxComplex {
    pub fn new(n: usize) -> Self {
        BoxComplex {
            n,
            terms: BTreeMap::new(),
            differentials: BTreeMap::new(),
        }
    }

    /// The field `k` over zero variables, concentrated in degree 0.
    pub fn point() -> Self {
        let mut c = BoxComplex::new(0);
        c.set_term(0, vec![BoxModule::unit()]);
        c
    }

    /// A single module (sum of boxes) in degree 0.
    pub fn module(n: usize, boxes: Vec<BoxModule>) -> Self {
        let mut c = BoxComplex::new(n);
        c.set_term(0, boxes);
        c
    }

    pub fn dimension(&self) -> usize {
        self.n
    }

    pub fn set_term(&mut self, degree: i64, boxes: Vec<BoxModule>) {
        if boxes.is_empty() {
            self.terms.remove(&degree);
        } else {
            self.terms.insert(degree, boxes);
        }
    }

    /// Add `scalar` to entry `(row, col)` of `d_degree`.
    pub fn add_entry(&mut self, degree: i64, row: usize, col: usize, scalar: BigRational) {
        if scalar.is_zero() {
            return;
        }
        let entries = self.differentials.entry(degree).or_default();
        if let Some(e) = entries.iter_mut().find(|e| e.row == row && e.col == col) {
            e.scalar += scalar;
            if e.scalar.is_zero() {
                entries.retain(|e| !e.scalar.is_zero());
            }
        } else {
            entries.push(Entry { row, col, scalar });
        }
    }

    pub fn set_differential(&mut self, degree: i64, entries: Vec<Entry>) {
        let entries: Vec<Entry> = entries
            .into_iter()
            .filter(|e| !e.scalar.is_zero())
            .collect();
        if entries.is_empty() {
            self.differentials.remove(&degree);
        } else {
            self.differentials.insert(degree, entries);
        }
    }

    pub fn term(&self, degree: i64) -> &[BoxModule] {
        self.terms.get(&degree).map_or(&[], Vec::as_slice)
    }

    /// Entries of `d_degree : C_degree → C_{degree-1}`.
    pub fn differential(&self, degree: i64) -> &[Entry] {
        self.differentials.get(&degree).map_or(&[], Vec::as_slice)
    }

    pub fn terms(&self) -> &BTreeMap<i64, Vec<BoxModule>> {
        &self.terms
    }

    /// Degrees carrying nonzero terms.
    pub fn degrees(&self) -> Vec<i64> {
        self.terms.keys().copied().collect()
    }

    pub fn min_degree(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_degree(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    /// `max − min` over nonzero degrees; `0` for a module and for the zero complex.
    pub fn length(&self) -> usize {
        match (self.min_degree(), self.max_degree()) {
            (Some(a), Some(b)) => (b - a) as usize,
            _ => 0,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn rank(&self, degree: i64) -> usize {
        self.term(degree).len()
    }

    pub fn all_boxes(&self) -> impl Iterator<Item = &BoxModule> {
        self.terms.values().flatten()
    }

    /// Whether every term is a sum of free boxes `R(-b)`.
    pub fn is_free(&self) -> bool {
        self.all_boxes().all(BoxModule::is_free)
    }

    /// The arrangement generated by every box endpoint in the complex.
    pub fn arrangement(&self) -> Result<CellArrangement> {
        build_arrangement(self.n, self.all_boxes())
    }

    /// Shift homological degrees: `C[by]_i = C_{i - by}`.
    pub fn shifted(&self, by: i64) -> BoxComplex {
        BoxComplex {
            n: self.n,
            terms: self
                .terms
                .iter()
                .map(|(d, t)| (d + by, t.clone()))
                .collect(),
            differentials: self
                .differentials
                .iter()
                .map(|(d, e)| (d + by, e.clone()))
                .collect(),
        }
    }

    /// Legality of every entry and `d ∘ d = 0` on every cell of the joint arrangement.
    pub fn verify(&self) -> Result<Option<Violation>> {
        for (&degree, entries) in &self.differentials {
            for e in entries {
                let (src, tgt) = (self.term(degree), self.term(degree - 1));
                if e.col >= src.len() || e.row >= tgt.len() {
                    return Ok(Some(Violation::OutOfRange {
                        degree,
                        row: e.row,
                        col: e.col,
                    }));
                }
                if !can_map(&src[e.col], &tgt[e.row])? {
                    return Ok(Some(Violation::Illegal {
                        degree,
                        row: e.row,
                        col: e.col,
                    }));
                }
            }
        }
        let arr = self.arrangement()?;
        let ranges = self.ranges(&arr)?;
        for (&degree, outer) in &self.differentials {
            let inner = self.differential(degree - 1);
            if inner.is_empty() {
                continue;
            }
            // composable pairs grouped by (row in C_{d-2}, col in C_d)
            let mut paths: BTreeMap<(usize, usize), Vec<(usize, BigRational)>> = BTreeMap::new();
            for e1 in outer {
                for e2 in inner.iter().filter(|e2| e2.col == e1.row) {
                    paths
                        .entry((e2.row, e1.col))
                        .or_default()
                        .push((e1.row, &e1.scalar * &e2.scalar));
                }
            }
            if paths.is_empty() {
                continue;
            }
            let (ra, rb, rc) = (
                &ranges[&degree],
                &ranges[&(degree - 1)],
                &ranges[&(degree - 2)],
            );
            for cell in arr.cells() {
                for (&(row, col), via) in &paths {
                    if !ranges_contain(&ra[col], &cell) || !ranges_contain(&rc[row], &cell) {
                        continue;
                    }
                    let sum: BigRational = via
                        .iter()
                        .filter(|(mid, _)| ranges_contain(&rb[*mid], &cell))
                        .map(|(_, s)| s.clone())
                        .sum();
                    if !sum.is_zero() {
                        return Ok(Some(Violation::NonzeroSquare {
                            cell: arr.cell_label(&cell),
                            degree,
                            row,
                            col,
                        }));
                    }
                }
            }
        }
        Ok(None)
    }

    /// Piece ranges of every box, keyed by degree (empty for missing degrees).
    pub(crate) fn ranges(
        &self,
        arr: &CellArrangement,
    ) -> Result<HashMap<i64, Vec<Vec<PieceRange>>>> {
        let mut out = HashMap::new();
        let lo = self.min_degree().unwrap_or(0) - 2;
        let hi = self.max_degree().unwrap_or(0) + 2;
        for d in lo..=hi {
            let r = self
                .term(d)
                .iter()
                .map(|b| arr.box_ranges(b))
                .collect::<Result<Vec<_>>>()?;
            out.insert(d, r);
        }
        Ok(out)
    }

    /// JSON description with boxes listed once and referenced by id.
    pub fn to_spec(&self) -> ComplexSpec {
        let mut boxes: Vec<BoxModule> = Vec::new();
        let mut ids: HashMap<BoxModule, usize> = HashMap::new();
        let mut terms = BTreeMap::new();
        for (&d, t) in &self.terms {
            let refs = t
                .iter()
                .map(|b| {
                    *ids.entry(b.clone()).or_insert_with(|| {
                        boxes.push(b.clone());
                        boxes.len() - 1
                    })
                })
                .collect();
            terms.insert(d, refs);
        }
        let differentials = self
            .differentials
            .iter()
            .map(|(&d, es)| {
                let mut es: Vec<EntrySpec> = es
                    .iter()
                    .map(|e| EntrySpec {
                        row: e.row,
                        col: e.col,
                        scalar: format_rational(&e.scalar),
                    })
                    .collect();
                es.sort_by_key(|e| (e.col, e.row));
                (d, es)
            })
            .collect();
        ComplexSpec {
            n: self.n,
            boxes: boxes.iter().map(BoxSpec::from_box).collect(),
            terms,
            differentials,
        }
    }

    pub fn from_spec(spec: &ComplexSpec, basis: &mut ConstantBasis) -> Result<Self> {
        let boxes = spec
            .boxes
            .iter()
            .map(|b| b.build(basis))
            .collect::<Result<Vec<_>>>()?;
        let mut c = BoxComplex::new(spec.n);
        for (&d, ids) in &spec.terms {
            let t = ids
                .iter()
                .map(|&i| {
                    boxes
                        .get(i)
                        .cloned()
                        .ok_or_else(|| Error::Parse(format!("unknown box id {i}")))
                })
                .collect::<Result<Vec<_>>>()?;
            if let Some(b) = t.iter().find(|b| b.dimension() != spec.n) {
                return Err(Error::DimensionMismatch {
                    expected: spec.n,
                    found: b.dimension(),
                });
            }
            c.set_term(d, t);
        }
        for (&d, es) in &spec.differentials {
            for e in es {
                c.add_entry(d, e.row, e.col, parse_rational(&e.scalar)?);
            }
        }
        Ok(c)
    }
}

/// `{"n", "boxes": [box...], "terms": {"0": [ids]}, "differentials": {"1": [entries]}}`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ComplexSpec {
    pub n: usize,
    pub boxes: Vec<BoxSpec>,
    pub terms: BTreeMap<i64, Vec<usize>>,
    #[serde(default)]
    pub differentials: BTreeMap<i64, Vec<EntrySpec>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct EntrySpec {
    pub row: usize,
    pub col: usize,
    pub scalar: String,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::boxmod::Interval;
    use crate::exponents::ExponentValue;

    fn one() -> BigRational {
        BigRational::from_integer(1.into())
    }

    /// `R₁ ← 𝔪₁`, the inclusion.
    fn open_k1() -> BoxComplex {
        let mut c = BoxComplex::new(1);
        c.set_term(0, vec![BoxModule::ring(1)]);
        c.set_term(
            1,
            vec![BoxModule::new(vec![Interval::open_ray(
                ExponentValue::zero(),
            )])],
        );
        c.add_entry(1, 0, 0, one());
        c
    }

    #[test]
    fn open_koszul_base_verifies() {
        assert_eq!(open_k1().verify().unwrap(), None);
    }

    #[test]
    fn illegal_and_nonsquare_detected() {
        let mut c = BoxComplex::new(1);
        c.set_term(0, vec![BoxModule::ring(1)]);
        c.set_term(1, vec![BoxModule::residue_field(1)]);
        c.add_entry(1, 0, 0, one());
        assert!(matches!(
            c.verify().unwrap(),
            Some(Violation::Illegal { .. })
        ));

        let r = BoxModule::ring(1);
        let mut sq = BoxComplex::new(1);
        for d in 0..3 {
            sq.set_term(d, vec![r.clone()]);
        }
        sq.add_entry(1, 0, 0, one());
        sq.add_entry(2, 0, 0, one());
        assert!(matches!(
            sq.verify().unwrap(),
            Some(Violation::NonzeroSquare { .. })
        ));
    }

    #[test]
    fn json_round_trip() {
        let c = open_k1();
        let text = serde_json::to_string(&c.to_spec()).unwrap();
        let spec: ComplexSpec = serde_json::from_str(&text).unwrap();
        let back = BoxComplex::from_spec(&spec, &mut ConstantBasis::new()).unwrap();
        assert_eq!(back, c);
    }
}
