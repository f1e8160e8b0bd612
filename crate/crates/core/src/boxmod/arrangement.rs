//! Cells cut out by critical exponents, and symbolic evaluation of boxes on them.

use std::cmp::Ordering;
use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::exponents::{ExponentValue, ExponentVector};

use super::interval::{BoxModule, Interval};

/// A cell: one piece index per coordinate. With `m` critical values `c_0 < … < c_{m-1}`,
/// piece `2j` is the open gap below `c_j` (piece `2m` is `(c_{m-1}, ∞)`) and
/// piece `2j+1` is the point `{c_j}`.
pub type Cell = Vec<usize>;

/// Inclusive range of piece indices covered by an interval.
pub type PieceRange = (usize, usize);

/// Product partition of `ℝⁿ` by per-coordinate critical values.
#[derive(Clone, Debug)]
pub struct CellArrangement {
    critical: Vec<Vec<ExponentValue>>,
    index: Vec<HashMap<ExponentValue, usize>>,
}

fn sort_dedup(mut values: Vec<ExponentValue>) -> Result<Vec<ExponentValue>> {
    values.sort_by_key(|a| a.to_string());
    values.dedup();
    let mut err = None;
    values.sort_by(|a, b| {
        a.compare(b).unwrap_or_else(|e| {
            err.get_or_insert(e);
            Ordering::Equal
        })
    });
    match err {
        Some(e) => Err(e),
        None => Ok(values),
    }
}

impl CellArrangement {
    /// Sorts and deduplicates each coordinate's critical values.
    pub fn new(critical: Vec<Vec<ExponentValue>>) -> Result<Self> {
        let critical = critical
            .into_iter()
            .map(sort_dedup)
            .collect::<Result<Vec<_>>>()?;
        let index = critical
            .iter()
            .map(|cs| {
                cs.iter()
                    .cloned()
                    .enumerate()
                    .map(|(j, c)| (c, j))
                    .collect()
            })
            .collect();
        Ok(CellArrangement { critical, index })
    }

    pub fn dimension(&self) -> usize {
        self.critical.len()
    }

    pub fn critical(&self, coord: usize) -> &[ExponentValue] {
        &self.critical[coord]
    }

    pub fn piece_count(&self, coord: usize) -> usize {
        2 * self.critical[coord].len() + 1
    }

    pub fn cell_count(&self) -> usize {
        (0..self.dimension()).map(|i| self.piece_count(i)).product()
    }

    /// All cells in lexicographic order of piece indices.
    pub fn cells(&self) -> Vec<Cell> {
        let mut out = vec![Vec::new()];
        for i in 0..self.dimension() {
            let pieces = self.piece_count(i);
            out = out
                .into_iter()
                .flat_map(|prefix| {
                    (0..pieces).map(move |p| {
                        let mut c = prefix.clone();
                        c.push(p);
                        c
                    })
                })
                .collect();
        }
        out
    }

    fn position(&self, coord: usize, value: &ExponentValue) -> Result<usize> {
        self.index[coord]
            .get(value)
            .copied()
            .ok_or_else(|| Error::ArrangementMismatch {
                coord,
                value: value.to_string(),
            })
    }

    /// Pieces of coordinate `coord` covered by `interval`.
    pub fn piece_range(&self, coord: usize, interval: &Interval) -> Result<PieceRange> {
        let l = self.position(coord, interval.lo())?;
        let first = if interval.lo_closed() {
            2 * l + 1
        } else {
            2 * l + 2
        };
        let last = match interval.hi() {
            None => self.piece_count(coord) - 1,
            Some(h) => {
                let u = self.position(coord, h)?;
                if interval.hi_closed() {
                    2 * u + 1
                } else {
                    2 * u
                }
            }
        };
        Ok((first, last))
    }

    /// Per-coordinate piece ranges of a box, for repeated evaluation.
    pub fn box_ranges(&self, b: &BoxModule) -> Result<Vec<PieceRange>> {
        if b.dimension() != self.dimension() {
            return Err(Error::DimensionMismatch {
                expected: self.dimension(),
                found: b.dimension(),
            });
        }
        (0..b.dimension())
            .map(|i| self.piece_range(i, b.interval(i)))
            .collect()
    }

    /// `dim_k k[B]` on a cell: 1 if the cell lies in the box, else 0.
    pub fn evaluate(&self, b: &BoxModule, cell: &[usize]) -> Result<usize> {
        Ok(ranges_contain(&self.box_ranges(b)?, cell) as usize)
    }

    /// Symbolic label of a piece, e.g. `(-inf,0)`, `{1/2}`, `(1,inf)`.
    pub fn piece_label(&self, coord: usize, piece: usize) -> String {
        let cs = &self.critical[coord];
        if piece % 2 == 1 {
            return format!("{{{}}}", cs[piece / 2]);
        }
        let j = piece / 2;
        let lo = if j == 0 {
            "-inf".to_string()
        } else {
            cs[j - 1].to_string()
        };
        let hi = if j == cs.len() {
            "inf".to_string()
        } else {
            cs[j].to_string()
        };
        format!("({lo},{hi})")
    }

    pub fn cell_label(&self, cell: &[usize]) -> String {
        if cell.is_empty() {
            return "pt".to_string();
        }
        cell.iter()
            .enumerate()
            .map(|(i, &p)| self.piece_label(i, p))
            .collect::<Vec<_>>()
            .join(" x ")
    }

    /// The cell containing a degree, found by comparisons.
    pub fn locate(&self, degree: &ExponentVector) -> Result<Cell> {
        if degree.len() != self.dimension() {
            return Err(Error::DimensionMismatch {
                expected: self.dimension(),
                found: degree.len(),
            });
        }
        let mut cell = Vec::with_capacity(degree.len());
        for (i, x) in degree.iter().enumerate() {
            let cs = &self.critical[i];
            let mut piece = 2 * cs.len();
            for (j, c) in cs.iter().enumerate() {
                match x.compare(c)? {
                    Ordering::Less => {
                        piece = 2 * j;
                        break;
                    }
                    Ordering::Equal => {
                        piece = 2 * j + 1;
                        break;
                    }
                    Ordering::Greater => {}
                }
            }
            cell.push(piece);
        }
        Ok(cell)
    }

    /// A representative value of a piece (for oracles): the critical value
    /// itself, a midpoint, or a point one unit beyond the extremes.
    pub fn representative(&self, coord: usize, piece: usize) -> ExponentValue {
        let cs = &self.critical[coord];
        if cs.is_empty() {
            return ExponentValue::zero();
        }
        if piece % 2 == 1 {
            return cs[piece / 2].clone();
        }
        let j = piece / 2;
        let one = ExponentValue::from_integer(1);
        if j == 0 {
            &cs[0] - &one
        } else if j == cs.len() {
            &cs[j - 1] + &one
        } else {
            (&cs[j - 1] + &cs[j]).scale(&num_rational::BigRational::new(1.into(), 2.into()))
        }
    }

    /// Adds critical values, returning the refinement.
    pub fn refine(&self, extra: &[Vec<ExponentValue>]) -> Result<CellArrangement> {
        let critical = self
            .critical
            .iter()
            .zip(extra)
            .map(|(cs, more)| cs.iter().chain(more).cloned().collect())
            .collect();
        CellArrangement::new(critical)
    }

    /// The cell of `self` containing a cell of a refinement `fine`.
    pub fn coarsen(&self, fine: &CellArrangement, cell: &[usize]) -> Result<Cell> {
        let mut out = Vec::with_capacity(cell.len());
        for (i, &p) in cell.iter().enumerate() {
            let coarse = &self.critical[i];
            let fine_cs = &fine.critical[i];
            if p % 2 == 1 {
                let v = &fine_cs[p / 2];
                out.push(match self.index[i].get(v) {
                    Some(&j) => 2 * j + 1,
                    None => gap_below(coarse, v)?,
                });
            } else {
                // an open gap of the refinement lies inside one coarse gap,
                // located by its upper end (or the top gap)
                let j = p / 2;
                out.push(if j == fine_cs.len() {
                    2 * coarse.len()
                } else {
                    gap_below(coarse, &fine_cs[j])
                        .or_else(|_| self.position(i, &fine_cs[j]).map(|u| 2 * u))?
                });
            }
        }
        Ok(out)
    }
}

// index of the open gap containing a non-critical value
fn gap_below(coarse: &[ExponentValue], v: &ExponentValue) -> Result<usize> {
    for (j, c) in coarse.iter().enumerate() {
        match v.compare(c)? {
            Ordering::Less => return Ok(2 * j),
            Ordering::Equal => {
                return Err(Error::ArrangementMismatch {
                    coord: 0,
                    value: v.to_string(),
                })
            }
            Ordering::Greater => {}
        }
    }
    Ok(2 * coarse.len())
}

pub fn ranges_contain(ranges: &[PieceRange], cell: &[usize]) -> bool {
    ranges
        .iter()
        .zip(cell)
        .all(|(&(a, b), &p)| a <= p && p <= b)
}

/// Arrangement generated by the endpoints of a collection of boxes.
pub fn build_arrangement<'a>(
    n: usize,
    boxes: impl IntoIterator<Item = &'a BoxModule>,
) -> Result<CellArrangement> {
    let mut critical: Vec<Vec<ExponentValue>> = vec![Vec::new(); n];
    for b in boxes {
        if b.dimension() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: b.dimension(),
            });
        }
        for (i, interval) in b.intervals().iter().enumerate() {
            critical[i].extend(interval.endpoints().cloned());
        }
    }
    CellArrangement::new(critical)
}

/// Whether the identity-on-overlap map `k[S] → k[T]` is a graded homomorphism.
///
/// Writing `O = S ∩ T`, this needs `(O + ℝⁿ₊) ∩ T ⊆ S` (the image is closed
/// under multiplication in `T`) and `(O − ℝⁿ₊) ∩ S ⊆ T` (nothing of `S` below
/// the overlap falls outside `T`, where it would have to map to zero). Both
/// conditions split over coordinates; an empty overlap gives the zero map.
pub fn can_map(source: &BoxModule, target: &BoxModule) -> Result<bool> {
    if source.dimension() != target.dimension() {
        return Err(Error::DimensionMismatch {
            expected: source.dimension(),
            found: target.dimension(),
        });
    }
    let mut legal = true;
    for i in 0..source.dimension() {
        let (s, t) = (source.interval(i), target.interval(i));
        let arr =
            CellArrangement::new(vec![s.endpoints().chain(t.endpoints()).cloned().collect()])?;
        let rs = arr.piece_range(0, s)?;
        let rt = arr.piece_range(0, t)?;
        let top = arr.piece_count(0) - 1;
        let overlap = (rs.0.max(rt.0), rs.1.min(rt.1));
        if overlap.0 > overlap.1 {
            return Ok(true);
        }
        let up = (overlap.0.max(rt.0), rt.1.min(top));
        let down = (rs.0, overlap.1.min(rs.1));
        legal &= subset(up, rs) && subset(down, rt);
    }
    Ok(legal)
}

fn subset(a: PieceRange, b: PieceRange) -> bool {
    a.0 > a.1 || (b.0 <= a.0 && a.1 <= b.1)
}
