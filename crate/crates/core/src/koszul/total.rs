//! The total Koszul complex `K(x^ε − y^ε) ⊗_{R^y} M^y` and its lattice discretization.
//!
//! The differentials `x_i^ε − y_i^ε` are not homogeneous for the `ℝ^{2n}`
//! grading, but they are for the sum grading `deg(xᵃyᵇm) = a + b + deg(m)`.
//! Restricting to the lattice `(ε/2^m)ℤⁿ` makes every sum-graded piece finite.

use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::Zero;

use crate::boxmod::{BoxModule, FieldConfig};
use crate::error::{Error, Result};
use crate::exponents::{ExponentValue, ExponentVector};

use super::{binomial, subsets};

/// The symbolic terms: degree `i` holds, for each `|σ| = i` and each box `B`
/// of `M`, the `2n`-variable box `R^x(−ε_σ) × B`.
#[derive(Clone, Debug)]
pub struct TotalKoszul {
    eps: ExponentVector,
    module: Vec<BoxModule>,
    pub terms: BTreeMap<i64, Vec<(Vec<bool>, usize, BoxModule)>>,
}

/// Build the symbolic total Koszul complex of `module` at scale `eps`.
pub fn total_koszul_truncated(module: &[BoxModule], eps: &ExponentVector) -> Result<TotalKoszul> {
    let n = eps.len();
    if !eps.is_strictly_positive()? {
        return Err(Error::InvalidParameter(format!(
            "ε must be strictly positive, got {eps}"
        )));
    }
    if let Some(b) = module.iter().find(|b| b.dimension() != n) {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: b.dimension(),
        });
    }
    let mut terms = BTreeMap::new();
    for i in 0..=n {
        let mut slot = Vec::new();
        for sigma in subsets(n, i) {
            let x = BoxModule::free(&eps.restrict(&sigma));
            for (j, b) in module.iter().enumerate() {
                slot.push((sigma.clone(), j, x.product(b)));
            }
        }
        terms.insert(i as i64, slot);
    }
    Ok(TotalKoszul {
        eps: eps.clone(),
        module: module.to_vec(),
        terms,
    })
}

impl TotalKoszul {
    pub fn dimension(&self) -> usize {
        self.eps.len()
    }

    /// Number of symbolic summands in degree `i`, `C(n, i)·|boxes|`.
    pub fn summand_count(&self, i: i64) -> usize {
        self.terms.get(&i).map_or(0, Vec::len)
    }

    /// Restrict to the lattice with step `ε/2^m`, keeping per-coordinate sum
    /// degrees in `[0, window·ε]`.
    pub fn discretize(&self, m: u32, window: u32) -> Result<DiscretizedComplex> {
        let n = self.dimension();
        let s = 1i64 << m;
        let top = s * window as i64;
        let step: Vec<ExponentValue> = self
            .eps
            .iter()
            .map(|e| e.scale(&BigRational::new(1.into(), s.into())))
            .collect();
        let mut boxes = Vec::new();
        for b in &self.module {
            let mut ranges = Vec::with_capacity(n);
            for (i, interval) in b.intervals().iter().enumerate() {
                let lattice = |v: &ExponentValue| -> Result<i64> {
                    let r = v
                        .ratio_to(&step[i])
                        .filter(|r| r.is_integer())
                        .ok_or_else(|| Error::OffLattice {
                            coord: i,
                            value: v.to_string(),
                        })?;
                    let r: i64 = r
                        .to_integer()
                        .try_into()
                        .map_err(|_| Error::WindowTooSmall {
                            coord: i,
                            value: v.to_string(),
                        })?;
                    if r > top {
                        return Err(Error::WindowTooSmall {
                            coord: i,
                            value: v.to_string(),
                        });
                    }
                    Ok(r)
                };
                let lo = lattice(interval.lo())?;
                if lo < 0 {
                    return Err(Error::InvalidParameter(format!(
                        "module support must lie in the positive orthant, got {b}"
                    )));
                }
                let lo = if interval.lo_closed() { lo } else { lo + 1 };
                let hi = match interval.hi() {
                    None => None,
                    Some(h) => {
                        let h = lattice(h)?;
                        Some(if interval.hi_closed() { h } else { h - 1 })
                    }
                };
                ranges.push((lo, hi));
            }
            boxes.push(ranges);
        }
        Ok(DiscretizedComplex {
            n,
            step,
            s,
            top,
            boxes,
        })
    }
}

/// A finite free complex over the lattice subring `k[x^h, y^h]`, `h = ε/s`,
/// cut to a window of per-coordinate sum degrees.
#[derive(Clone, Debug)]
pub struct DiscretizedComplex {
    n: usize,
    step: Vec<ExponentValue>,
    s: i64,
    top: i64,
    /// Lattice points of each box as inclusive integer ranges per coordinate.
    boxes: Vec<Vec<(i64, Option<i64>)>>,
}

/// A basis vector `e_σ ⊗ x^a · m_β`; `a` is determined by the sum degree.
type Basis = (Vec<bool>, usize, Vec<i64>);

impl DiscretizedComplex {
    pub fn dimension(&self) -> usize {
        self.n
    }

    /// The lattice step `ε/s` per coordinate.
    pub fn step(&self) -> &[ExponentValue] {
        &self.step
    }

    /// `s = 2^m`, the exponent of `ε` in lattice units.
    pub fn multiplier(&self) -> i64 {
        self.s
    }

    /// Largest sum degree per coordinate in the window.
    pub fn window_top(&self) -> i64 {
        self.top
    }

    fn in_box(&self, j: usize, beta: &[i64]) -> bool {
        self.boxes[j]
            .iter()
            .zip(beta)
            .all(|(&(lo, hi), &b)| b >= lo && hi.is_none_or(|h| b <= h))
    }

    /// Basis of homological degree `i` in sum degree `t`.
    fn basis(&self, i: usize, t: &[i64]) -> Vec<Basis> {
        let mut out = Vec::new();
        for sigma in subsets(self.n, i) {
            let cap: Vec<i64> = (0..self.n)
                .map(|c| t[c] - if sigma[c] { self.s } else { 0 })
                .collect();
            if cap.iter().any(|&c| c < 0) {
                continue;
            }
            for j in 0..self.boxes.len() {
                // β ranges over lattice points of box j with β ≤ cap
                let ranges: Vec<(i64, i64)> = self.boxes[j]
                    .iter()
                    .zip(&cap)
                    .map(|(&(lo, hi), &c)| (lo, hi.map_or(c, |h| h.min(c))))
                    .collect();
                if ranges.iter().any(|&(lo, hi)| lo > hi) {
                    continue;
                }
                let mut beta: Vec<i64> = ranges.iter().map(|r| r.0).collect();
                loop {
                    out.push((sigma.clone(), j, beta.clone()));
                    let mut c = 0;
                    loop {
                        if c == self.n {
                            break;
                        }
                        if beta[c] < ranges[c].1 {
                            beta[c] += 1;
                            break;
                        }
                        beta[c] = ranges[c].0;
                        c += 1;
                    }
                    if c == self.n {
                        break;
                    }
                }
            }
        }
        out
    }

    /// Matrix of `d_i` in sum degree `t` (rows: degree `i − 1`).
    fn matrix(&self, i: usize, t: &[i64]) -> Vec<Vec<BigRational>> {
        if i == 0 || i > self.n {
            return Vec::new();
        }
        let src = self.basis(i, t);
        let tgt = self.basis(i - 1, t);
        let index: BTreeMap<&Basis, usize> = tgt.iter().enumerate().map(|(k, b)| (b, k)).collect();
        let mut m = vec![vec![BigRational::zero(); src.len()]; tgt.len()];
        for (col, (sigma, j, beta)) in src.iter().enumerate() {
            let mut pos = 0;
            for l in 0..self.n {
                if !sigma[l] {
                    continue;
                }
                let sign = if pos % 2 == 0 { 1 } else { -1 };
                pos += 1;
                let mut face = sigma.clone();
                face[l] = false;
                // x_l^s: same β, larger x-exponent
                let row = index[&(face.clone(), *j, beta.clone())];
                m[row][col] += BigRational::from_integer(sign.into());
                // −y_l^s: β moves up, vanishing if it leaves the box
                let mut up = beta.clone();
                up[l] += self.s;
                if self.in_box(*j, &up) {
                    let row = index[&(face, *j, up)];
                    m[row][col] -= BigRational::from_integer(sign.into());
                }
            }
        }
        m
    }

    /// All sum degrees in the window.
    pub fn degrees(&self) -> Vec<Vec<i64>> {
        let mut out = vec![Vec::new()];
        for _ in 0..self.n {
            out = out
                .into_iter()
                .flat_map(|p| {
                    (0..=self.top).map(move |t| {
                        let mut q = p.clone();
                        q.push(t);
                        q
                    })
                })
                .collect();
        }
        out
    }

    /// Whether `d_{i} ∘ d_{i+1} = 0` in sum degree `t` for all `i`.
    pub fn square_zero_at(&self, t: &[i64]) -> bool {
        (1..self.n).all(|i| {
            let (a, b) = (self.matrix(i, t), self.matrix(i + 1, t));
            if a.is_empty() || b.is_empty() {
                return true;
            }
            let inner = b.len();
            a.iter().all(|row| {
                (0..b[0].len()).all(|c| {
                    (0..inner)
                        .map(|k| &row[k] * &b[k][c])
                        .fold(BigRational::zero(), |acc, x| acc + x)
                        .is_zero()
                })
            })
        })
    }

    /// `dim H_i` for `i = 0..=n` in sum degree `t`.
    pub fn homology_at(&self, t: &[i64], field: FieldConfig) -> Result<Vec<usize>> {
        let dims: Vec<usize> = (0..=self.n).map(|i| self.basis(i, t).len()).collect();
        let mut ranks = vec![0usize; self.n + 2];
        for (i, r) in ranks.iter_mut().enumerate().take(self.n + 1).skip(1) {
            let m = self.matrix(i, t);
            if !m.is_empty() && !m[0].is_empty() {
                *r = field.rank(&m)?;
            }
        }
        Ok((0..=self.n)
            .map(|i| dims[i] - ranks[i] - ranks[i + 1])
            .collect())
    }

    /// Homology in every sum degree of the window.
    pub fn homology(&self, field: FieldConfig) -> Result<DiscreteHomology> {
        use rayon::prelude::*;
        let entries = self
            .degrees()
            .into_par_iter()
            .map(|t| {
                let h = self.homology_at(&t, field)?;
                Ok((t, h))
            })
            .collect::<Result<BTreeMap<_, _>>>()?;
        Ok(DiscreteHomology { entries })
    }

    /// Number of basis elements in degree `i`, summed over the window; used
    /// to report the size of a run.
    pub fn total_rank(&self, i: usize) -> usize {
        self.degrees().iter().map(|t| self.basis(i, t).len()).sum()
    }

    /// Symbolic summand count in degree `i` (for cross-checks).
    pub fn summand_count(&self, i: usize) -> usize {
        binomial(self.n, i) * self.boxes.len()
    }
}

/// Homology dimensions per sum degree of the window.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiscreteHomology {
    pub entries: BTreeMap<Vec<i64>, Vec<usize>>,
}

impl DiscreteHomology {
    pub fn get(&self, t: &[i64], i: usize) -> usize {
        self.entries
            .get(t)
            .and_then(|h| h.get(i))
            .copied()
            .unwrap_or(0)
    }

    /// Sum degrees with nonzero homology in some positive degree.
    pub fn positive_failures(&self) -> Vec<Vec<i64>> {
        self.entries
            .iter()
            .filter(|(_, h)| h.iter().skip(1).any(|&d| d > 0))
            .map(|(t, _)| t.clone())
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::boxmod::Interval;

    fn eps(n: usize) -> ExponentVector {
        ExponentVector::from_integers(&vec![1; n])
    }

    #[test]
    fn symbolic_counts() {
        let cube = BoxModule::new(vec![
            Interval::bounded(
                ExponentValue::zero(),
                true,
                ExponentValue::from_integer(1),
                true
            )
            .unwrap();
            2
        ]);
        let t = total_koszul_truncated(&[cube.clone(), BoxModule::ring(2)], &eps(2)).unwrap();
        assert_eq!(t.summand_count(1), 4);
        assert_eq!(t.terms[&2][0].2.dimension(), 4);
    }

    #[test]
    fn free_module_matches_count_oracle() {
        // k[x,y]/(x^s − y^s) in sum degree t has dimension min(t + 1, s)
        let t = total_koszul_truncated(&[BoxModule::ring(1)], &eps(1)).unwrap();
        let d = t.discretize(2, 4).unwrap();
        let h = d.homology(FieldConfig::Rational).unwrap();
        for deg in 0..=d.window_top() {
            assert_eq!(h.get(&[deg], 0), ((deg + 1).min(4)) as usize, "t = {deg}");
            assert_eq!(h.get(&[deg], 1), 0);
        }
    }

    #[test]
    fn residue_field_reduces_to_ordinary_koszul() {
        let t = total_koszul_truncated(&[BoxModule::residue_field(1)], &eps(1)).unwrap();
        let d = t.discretize(2, 4).unwrap();
        let h = d.homology(FieldConfig::Rational).unwrap();
        for deg in 0..=d.window_top() {
            assert_eq!(h.get(&[deg], 0), (deg < 4) as usize);
        }
        assert!(h.positive_failures().is_empty());
    }

    #[test]
    fn square_zero_and_acyclic_in_two_variables() {
        let cube = BoxModule::new(vec![
            Interval::bounded(
                ExponentValue::zero(),
                true,
                ExponentValue::from_integer(1),
                false
            )
            .unwrap();
            2
        ]);
        let t = total_koszul_truncated(&[cube], &eps(2)).unwrap();
        let d = t.discretize(1, 3).unwrap();
        for deg in d.degrees() {
            assert!(d.square_zero_at(&deg));
        }
        let h = d.homology(FieldConfig::Rational).unwrap();
        assert!(h.positive_failures().is_empty());
    }

    #[test]
    fn lattice_errors() {
        let third = BoxModule::new(vec![Interval::closed_ray(ExponentValue::from_ratio(1, 3))]);
        let t = total_koszul_truncated(&[third], &eps(1)).unwrap();
        assert!(matches!(t.discretize(2, 4), Err(Error::OffLattice { .. })));
        let far = BoxModule::new(vec![Interval::closed_ray(ExponentValue::from_integer(9))]);
        let t = total_koszul_truncated(&[far], &eps(1)).unwrap();
        assert!(matches!(
            t.discretize(2, 4),
            Err(Error::WindowTooSmall { .. })
        ));
    }
}
