//! Cellwise homology over the coefficient field.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_rational::BigRational;
use num_traits::Zero;
use rayon::prelude::*;
use serde::Serialize;

use crate::boxmod::{ranges_contain, Cell, CellArrangement, FieldConfig, PieceRange};
use crate::error::Result;

use super::BoxComplex;

#[derive(Clone, Copy, Debug, Default)]
pub struct HomologyOptions {
    pub field: FieldConfig,
    /// Evaluate cells on the rayon pool.
    pub parallel: bool,
}

/// Outcome of the rational cross-check run on every tenth cell in prime-field mode.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct CrossCheck {
    pub checked_cells: usize,
    /// Cells where the prime-field ranks differ from the rational ones.
    pub mismatches: Vec<String>,
}

/// Nonzero homology dimensions per cell and degree.
#[derive(Clone, Debug)]
pub struct CellHomologyTable {
    pub arrangement: CellArrangement,
    pub field: FieldConfig,
    entries: BTreeMap<Cell, BTreeMap<i64, usize>>,
    pub cross_check: Option<CrossCheck>,
}

#[derive(Serialize)]
struct CellRow {
    cell: String,
    pieces: Vec<usize>,
    homology: BTreeMap<i64, usize>,
}

#[derive(Serialize)]
struct TableJson<'a> {
    field: String,
    critical: Vec<Vec<String>>,
    cells: Vec<CellRow>,
    #[serde(skip_serializing_if = "Option::is_none")]
    cross_check: &'a Option<CrossCheck>,
}

impl CellHomologyTable {
    /// `dim H_degree` on `cell` (zero when absent).
    pub fn get(&self, cell: &[usize], degree: i64) -> usize {
        self.entries
            .get(cell)
            .and_then(|m| m.get(&degree))
            .copied()
            .unwrap_or(0)
    }

    /// All nonzero `(cell, degree, dim)` triples in canonical order.
    pub fn nonzero(&self) -> impl Iterator<Item = (&Cell, i64, usize)> {
        self.entries
            .iter()
            .flat_map(|(c, m)| m.iter().map(move |(&d, &v)| (c, d, v)))
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Cells with some nonzero homology in `degree`.
    pub fn support(&self, degree: i64) -> Vec<Cell> {
        self.entries
            .iter()
            .filter(|(_, m)| m.get(&degree).is_some_and(|&v| v > 0))
            .map(|(c, _)| c.clone())
            .collect()
    }

    pub fn to_json(&self) -> serde_json::Value {
        let critical = (0..self.arrangement.dimension())
            .map(|i| {
                self.arrangement
                    .critical(i)
                    .iter()
                    .map(crate::boxmod::value_string)
                    .collect()
            })
            .collect();
        let cells = self
            .entries
            .iter()
            .map(|(c, m)| CellRow {
                cell: self.arrangement.cell_label(c),
                pieces: c.clone(),
                homology: m.clone(),
            })
            .collect();
        serde_json::to_value(TableJson {
            field: self.field.to_string(),
            critical,
            cells,
            cross_check: &self.cross_check,
        })
        .expect("table serializes")
    }

    /// `cell,degree,dim` rows for nonzero entries.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("cell,degree,dim\n");
        for (c, d, v) in self.nonzero() {
            let _ = writeln!(out, "\"{}\",{d},{v}", self.arrangement.cell_label(c));
        }
        out
    }

    /// ASCII grid of homology for `n ≤ 2`. Each cell shows the nonzero
    /// dimensions as `d:dim` pairs or `.` when acyclic; rows are the second
    /// coordinate, top row largest.
    pub fn to_grid(&self) -> Option<String> {
        let n = self.arrangement.dimension();
        let show = |cell: &[usize]| -> String {
            match self.entries.get(cell) {
                None => ".".to_string(),
                Some(m) => m
                    .iter()
                    .map(|(d, v)| format!("{d}:{v}"))
                    .collect::<Vec<_>>()
                    .join(","),
            }
        };
        let mut out = String::new();
        match n {
            0 => {
                let _ = writeln!(out, "pt | {}", show(&[]));
            }
            1 => {
                for p in 0..self.arrangement.piece_count(0) {
                    let _ = writeln!(
                        out,
                        "{:>16} | {}",
                        self.arrangement.piece_label(0, p),
                        show(&[p])
                    );
                }
            }
            2 => {
                let width = 10;
                for q in (0..self.arrangement.piece_count(1)).rev() {
                    let _ = write!(out, "{:>16} |", self.arrangement.piece_label(1, q));
                    for p in 0..self.arrangement.piece_count(0) {
                        let _ = write!(out, " {:^width$}", show(&[p, q]));
                    }
                    out.push('\n');
                }
                let _ = write!(out, "{:>16} +", "");
                for p in 0..self.arrangement.piece_count(0) {
                    let _ = write!(out, " {:^width$}", self.arrangement.piece_label(0, p));
                }
                out.push('\n');
            }
            _ => return None,
        }
        Some(out)
    }
}

pub(crate) struct CellData {
    pub dims: BTreeMap<i64, usize>,
    pub ranks: BTreeMap<i64, usize>,
}

/// Local differential matrix of `d_degree` on a cell, with its active indices.
pub(crate) fn local_matrix(
    c: &BoxComplex,
    ranges: &std::collections::HashMap<i64, Vec<Vec<PieceRange>>>,
    degree: i64,
    cell: &[usize],
) -> Vec<Vec<BigRational>> {
    let active = |d: i64| -> Vec<Option<usize>> {
        let mut k = 0;
        ranges[&d]
            .iter()
            .map(|r| {
                if ranges_contain(r, cell) {
                    k += 1;
                    Some(k - 1)
                } else {
                    None
                }
            })
            .collect()
    };
    let (src, tgt) = (active(degree), active(degree - 1));
    let rows = tgt.iter().flatten().count();
    let cols = src.iter().flatten().count();
    let mut m = vec![vec![BigRational::zero(); cols]; rows];
    for e in c.differential(degree) {
        if let (Some(r), Some(col)) = (tgt[e.row], src[e.col]) {
            m[r][col] += &e.scalar;
        }
    }
    m
}

fn cell_data(
    c: &BoxComplex,
    ranges: &std::collections::HashMap<i64, Vec<Vec<PieceRange>>>,
    cell: &[usize],
    field: FieldConfig,
) -> Result<CellData> {
    let mut dims = BTreeMap::new();
    let mut ranks = BTreeMap::new();
    for d in c.degrees() {
        let dim = ranges[&d]
            .iter()
            .filter(|r| ranges_contain(r, cell))
            .count();
        dims.insert(d, dim);
    }
    for &d in c.differentials.keys() {
        let m = local_matrix(c, ranges, d, cell);
        if m.is_empty() || m[0].is_empty() {
            continue;
        }
        ranks.insert(d, field.rank(&m)?);
    }
    Ok(CellData { dims, ranks })
}

fn homology_of(data: &CellData) -> BTreeMap<i64, usize> {
    data.dims
        .iter()
        .filter_map(|(&d, &dim)| {
            let out = data.ranks.get(&d).copied().unwrap_or(0);
            let inc = data.ranks.get(&(d + 1)).copied().unwrap_or(0);
            let h = dim - out - inc;
            (h > 0).then_some((d, h))
        })
        .collect()
}

/// Cellwise homology over `ℚ`, in parallel.
pub fn homology(c: &BoxComplex) -> Result<CellHomologyTable> {
    homology_with(
        c,
        &HomologyOptions {
            field: FieldConfig::Rational,
            parallel: true,
        },
    )
}

/// Cellwise homology on the joint arrangement of the complex.
pub fn homology_with(c: &BoxComplex, opts: &HomologyOptions) -> Result<CellHomologyTable> {
    let arr = c.arrangement()?;
    homology_on(c, arr, opts)
}

/// Cellwise homology on a caller-supplied arrangement, which must contain
/// every endpoint of the complex (finer arrangements are allowed).
pub fn homology_on(
    c: &BoxComplex,
    arr: CellArrangement,
    opts: &HomologyOptions,
) -> Result<CellHomologyTable> {
    let ranges = c.ranges(&arr)?;
    let cells = if c.is_zero() { Vec::new() } else { arr.cells() };
    let check = matches!(opts.field, FieldConfig::Prime(_));
    let work = |(i, cell): (usize, &Cell)| -> Result<(Cell, BTreeMap<i64, usize>, Option<bool>)> {
        let data = cell_data(c, &ranges, cell, opts.field)?;
        let agree = if check && i % 10 == 0 {
            let exact = cell_data(c, &ranges, cell, FieldConfig::Rational)?;
            Some(exact.ranks == data.ranks)
        } else {
            None
        };
        Ok((cell.clone(), homology_of(&data), agree))
    };
    let results: Vec<_> = if opts.parallel {
        cells
            .par_iter()
            .enumerate()
            .map(work)
            .collect::<Result<_>>()?
    } else {
        cells.iter().enumerate().map(work).collect::<Result<_>>()?
    };
    let mut entries = BTreeMap::new();
    let mut cross = CrossCheck::default();
    for (cell, h, agree) in results {
        if let Some(ok) = agree {
            cross.checked_cells += 1;
            if !ok {
                cross.mismatches.push(arr.cell_label(&cell));
            }
        }
        if !h.is_empty() {
            entries.insert(cell, h);
        }
    }
    Ok(CellHomologyTable {
        arrangement: arr,
        field: opts.field,
        entries,
        cross_check: check.then_some(cross),
    })
}

/// Euler consistency on every cell: alternating sums of term and homology dimensions agree.
pub fn euler_consistent(c: &BoxComplex, table: &CellHomologyTable) -> Result<bool> {
    let arr = &table.arrangement;
    let ranges = c.ranges(arr)?;
    for cell in arr.cells() {
        let mut chi: i64 = 0;
        for d in c.degrees() {
            let dim = ranges[&d]
                .iter()
                .filter(|r| ranges_contain(r, &cell))
                .count() as i64;
            chi += if d.rem_euclid(2) == 0 { dim } else { -dim };
        }
        let mut hchi: i64 = 0;
        for d in c.degrees() {
            let h = table.get(&cell, d) as i64;
            hchi += if d.rem_euclid(2) == 0 { h } else { -h };
        }
        if chi != hchi {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Künneth over a field: `H_m(C ⊗ D)` on a product cell is
/// `Σ_{p+q=m} H_p(C) · H_q(D)` on the factor cells.
pub fn kunneth_consistent(
    left: &CellHomologyTable,
    right: &CellHomologyTable,
    product: &CellHomologyTable,
    degrees: std::ops::RangeInclusive<i64>,
) -> bool {
    let n1 = left.arrangement.dimension();
    for cell in product.arrangement.cells() {
        let (a, b) = cell.split_at(n1);
        for m in degrees.clone() {
            let expected: usize = degrees
                .clone()
                .map(|p| left.get(a, p) * right.get(b, m - p))
                .sum();
            if product.get(&cell, m) != expected {
                return false;
            }
        }
    }
    true
}
