//! Free resolutions of length at most `n + 1` from flat resolutions.
//!
//! Each orthant summand of the flat resolution is replaced by its truncated
//! two-term free resolution, the flat differentials are lifted by solving
//! the comparison equations, and the double complex is totalized. Closed
//! orthants are already free; their padding is cancelled afterwards.

use num_rational::BigRational;
use num_traits::{One, Zero};
use serde_json::json;

use crate::boxmod::{build_arrangement, BoxModule, CellArrangement};
use crate::complexes::{homology_on, BoxComplex, HomologyOptions};
use crate::error::{Error, Result};
use crate::exponents::{ExponentValue, ExponentVector};
use crate::koszul::flat_resolution;
use crate::linalg::solve_rational;

/// A totalized free resolution with its stabilization report.
#[derive(Clone, Debug)]
pub struct ProjectiveResolution {
    pub complex: BoxComplex,
    pub depth: usize,
    /// Length of the flat resolution that was lifted.
    pub flat_length: usize,
    /// Cells near a truncated open face, where the truncation has not
    /// stabilized (reported, not an error).
    pub unstabilized: Vec<String>,
    /// Stabilized cells where `H₀ ≠ M` or `H_{>0} ≠ 0`.
    pub failures: Vec<String>,
    pub stabilized_cells: usize,
}

impl ProjectiveResolution {
    pub fn length(&self) -> usize {
        self.complex.length()
    }

    pub fn is_exact_on_stabilized(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn report(&self) -> serde_json::Value {
        json!({
            "depth": self.depth,
            "length": self.length(),
            "flat_length": self.flat_length,
            "ranks": self.complex.terms().iter().map(|(d, t)| (d.to_string(), t.len())).collect::<std::collections::BTreeMap<_, _>>(),
            "stabilized_cells": self.stabilized_cells,
            "unstabilized_cells": self.unstabilized,
            "failures": self.failures,
        })
    }
}

/// Points `e_k = c + δ_k` on the open faces of an orthant with corner `c`.
fn orthant_points(b: &BoxModule, deltas: &[ExponentVector]) -> Vec<ExponentVector> {
    let corner = b.corner();
    let open = b.open_lower_faces();
    deltas
        .iter()
        .map(|d| &corner + &d.restrict(&open))
        .collect()
}

/// Default offsets: per coordinate, half the smallest gap between distinct
/// endpoints, halved again at each level.
fn default_deltas(flat: &BoxComplex, depth: usize) -> Result<Vec<ExponentVector>> {
    let arr = flat.arrangement()?;
    let mut base = Vec::with_capacity(arr.dimension());
    for i in 0..arr.dimension() {
        let cs = arr.critical(i);
        let mut gap: Option<ExponentValue> = None;
        for w in cs.windows(2) {
            let g = &w[1] - &w[0];
            gap = Some(match gap {
                None => g,
                Some(h) => h.min(&g)?,
            });
        }
        base.push(gap.unwrap_or_else(|| ExponentValue::from_integer(1)));
    }
    let base = ExponentVector::new(base);
    Ok((0..=depth)
        .map(|k| {
            base.scale(&BigRational::new(
                1.into(),
                num_bigint::BigInt::from(1) << (k + 1),
            ))
        })
        .collect())
}

/// Solve for chain maps `(f₀, f₁)` between two truncated resolutions lifting
/// `s` times the canonical map on `H₀`. Unknowns are ordered with diagonal
/// coefficients first, so the least-index solution is diagonal when possible.
#[allow(clippy::type_complexity)]
fn lift(
    src: &[ExponentVector],
    tgt: &[ExponentVector],
    s: &BigRational,
) -> Result<(Vec<Vec<BigRational>>, Vec<Vec<BigRational>>)> {
    let k_max = src.len() - 1;
    // (is_v, k, k')
    let mut unknowns: Vec<(bool, usize, usize)> = Vec::new();
    let mut diag = Vec::new();
    let mut rest = Vec::new();
    for is_v in [false, true] {
        let top = if is_v { k_max } else { k_max + 1 };
        for k in 0..top {
            for kp in 0..top {
                if tgt[kp].le(&src[k])? {
                    if k == kp {
                        diag.push((is_v, k, kp));
                    } else {
                        rest.push((is_v, k, kp));
                    }
                }
            }
        }
    }
    unknowns.extend(diag);
    unknowns.extend(rest);
    let idx = |u: (bool, usize, usize)| unknowns.iter().position(|&w| w == u);
    let cols = unknowns.len();
    let mut rows = Vec::new();
    let mut rhs = Vec::new();
    // augmentation: Σ_{k'} u_{k,k'} = s
    for k in 0..=k_max {
        let mut r = vec![BigRational::zero(); cols];
        for kp in 0..=k_max {
            if let Some(i) = idx((false, k, kp)) {
                r[i] += BigRational::one();
            }
        }
        rows.push(r);
        rhs.push(s.clone());
    }
    // f₀ d = d f₁ on 1_k, read on 1_{k'}
    for k in 0..k_max {
        for kp in 0..=k_max {
            let mut r = vec![BigRational::zero(); cols];
            let mut add = |u: (bool, usize, usize), v: i64| {
                if let Some(i) = idx(u) {
                    r[i] += BigRational::from_integer(v.into());
                }
            };
            if kp < k_max {
                add((true, k, kp), 1);
            }
            if kp > 0 {
                add((true, k, kp - 1), -1);
            }
            add((false, k, kp), -1);
            add((false, k + 1, kp), 1);
            rows.push(r);
            rhs.push(BigRational::zero());
        }
    }
    let sol = solve_rational(&rows, cols, &rhs)
        .ok_or_else(|| Error::LiftFailed(format!("no chain map lifting scalar {s}")))?;
    let mut f0 = vec![vec![BigRational::zero(); k_max + 1]; k_max + 1];
    let mut f1 = vec![vec![BigRational::zero(); k_max]; k_max];
    for (&(is_v, k, kp), v) in unknowns.iter().zip(sol.particular) {
        if is_v {
            f1[k][kp] = v;
        } else {
            f0[k][kp] = v;
        }
    }
    Ok((f0, f1))
}

/// Dense differentials for Gaussian cancellation.
struct Dense {
    terms: std::collections::BTreeMap<i64, Vec<BoxModule>>,
    /// `mats[m][row][col]` for `d_m : T_m → T_{m−1}`.
    mats: std::collections::BTreeMap<i64, Vec<Vec<BigRational>>>,
    alive: std::collections::BTreeMap<i64, Vec<bool>>,
}

impl Dense {
    fn from_complex(c: &BoxComplex) -> Self {
        let terms = c.terms().clone();
        let mut mats = std::collections::BTreeMap::new();
        for (&m, t) in &terms {
            let rows = c.rank(m - 1);
            let mut mat = vec![vec![BigRational::zero(); t.len()]; rows];
            for e in c.differential(m) {
                mat[e.row][e.col] += &e.scalar;
            }
            mats.insert(m, mat);
        }
        let alive = terms
            .iter()
            .map(|(&m, t)| (m, vec![true; t.len()]))
            .collect();
        Dense { terms, mats, alive }
    }

    /// Cancel generator `col` of degree `m` against `row` of degree `m − 1`.
    fn cancel(&mut self, m: i64, row: usize, col: usize) -> bool {
        let same_box = self.terms[&m][col] == self.terms[&(m - 1)][row];
        let Some(mat) = self.mats.get_mut(&m) else {
            return false;
        };
        let alpha = mat[row][col].clone();
        if alpha.is_zero() || !same_box {
            return false;
        }
        let col_vals: Vec<(usize, BigRational)> = (0..mat.len())
            .filter(|&r| r != row && !mat[r][col].is_zero())
            .map(|r| (r, mat[r][col].clone()))
            .collect();
        let row_vals: Vec<(usize, BigRational)> = (0..mat[row].len())
            .filter(|&c| c != col && !mat[row][c].is_zero())
            .map(|c| (c, mat[row][c].clone() / &alpha))
            .collect();
        for (r, a) in &col_vals {
            for (c, b) in &row_vals {
                mat[*r][*c] -= a * b;
            }
        }
        for r in mat.iter_mut() {
            r[col] = BigRational::zero();
        }
        for v in mat[row].iter_mut() {
            *v = BigRational::zero();
        }
        if let Some(up) = self.mats.get_mut(&(m + 1)) {
            for v in up[col].iter_mut() {
                *v = BigRational::zero();
            }
        }
        if let Some(down) = self.mats.get_mut(&(m - 1)) {
            for r in down.iter_mut() {
                r[row] = BigRational::zero();
            }
        }
        self.alive.get_mut(&m).expect("degree exists")[col] = false;
        self.alive.get_mut(&(m - 1)).expect("degree exists")[row] = false;
        true
    }

    fn into_complex(self, n: usize) -> BoxComplex {
        let mut out = BoxComplex::new(n);
        let mut maps = std::collections::BTreeMap::new();
        for (&m, t) in &self.terms {
            let alive = &self.alive[&m];
            let mut map = Vec::with_capacity(t.len());
            let mut kept = Vec::new();
            for (i, b) in t.iter().enumerate() {
                map.push(alive[i].then_some(kept.len()));
                if alive[i] {
                    kept.push(b.clone());
                }
            }
            out.set_term(m, kept);
            maps.insert(m, map);
        }
        for (&m, mat) in &self.mats {
            let (Some(cmap), Some(rmap)) = (maps.get(&m), maps.get(&(m - 1))) else {
                continue;
            };
            for (r, row) in mat.iter().enumerate() {
                for (c, v) in row.iter().enumerate() {
                    if let (Some(rr), Some(cc)) = (rmap[r], cmap[c]) {
                        out.add_entry(m, rr, cc, v.clone());
                    }
                }
            }
        }
        out
    }
}

/// A free resolution of `⊕ k[B]` truncated at depth `depth`.
///
/// `deltas`, if given, supplies the offsets `δ₀ > … > δ_K` used on open faces
/// (one vector per level); they must stay below half of every positive gap
/// between endpoints for the lifts to exist.
pub fn projective_resolution(
    n: usize,
    module: &[BoxModule],
    depth: usize,
    deltas: Option<&[ExponentVector]>,
) -> Result<ProjectiveResolution> {
    if depth == 0 {
        return Err(Error::InvalidParameter(
            "truncation depth must be positive".into(),
        ));
    }
    let flat = flat_resolution(n, module)?;
    let deltas = match deltas {
        Some(d) if d.len() == depth + 1 => d.to_vec(),
        Some(d) => {
            return Err(Error::InvalidParameter(format!(
                "expected {} offsets, got {}",
                depth + 1,
                d.len()
            )))
        }
        None => default_deltas(&flat, depth)?,
    };
    let points: std::collections::BTreeMap<i64, Vec<Vec<ExponentVector>>> = flat
        .terms()
        .iter()
        .map(|(&t, boxes)| {
            (
                t,
                boxes.iter().map(|b| orthant_points(b, &deltas)).collect(),
            )
        })
        .collect();
    let k = depth;
    // Tot_m = (flat_m ⊗ P₀) ⊕ (flat_{m−1} ⊗ P₁)
    let rank = |t: i64| flat.rank(t);
    let pos0 = |_t: i64, a: usize, j: usize| a * (k + 1) + j;
    let pos1 = |t: i64, a: usize, j: usize| rank(t + 1) * (k + 1) + a * k + j;
    let mut tot = BoxComplex::new(n);
    let lo = flat.min_degree().unwrap_or(0);
    let hi = flat.max_degree().unwrap_or(-1);
    for m in lo..=hi + 1 {
        let mut boxes = Vec::new();
        if let Some(p) = points.get(&m) {
            for pts in p {
                boxes.extend(pts.iter().map(BoxModule::free));
            }
        }
        if let Some(p) = points.get(&(m - 1)) {
            for pts in p {
                boxes.extend(pts[..k].iter().map(BoxModule::free));
            }
        }
        tot.set_term(m, boxes);
    }
    // vertical differentials with sign (−1)^t
    for (&t, p) in &points {
        let sign = if t.rem_euclid(2) == 0 {
            BigRational::one()
        } else {
            -BigRational::one()
        };
        for a in 0..p.len() {
            for j in 0..k {
                tot.add_entry(t + 1, pos0(t, a, j), pos1(t, a, j), sign.clone());
                tot.add_entry(t + 1, pos0(t, a, j + 1), pos1(t, a, j), -sign.clone());
            }
        }
    }
    // horizontal lifts
    for t in flat.degrees() {
        for e in flat.differential(t) {
            let (src, tgt) = (&points[&t][e.col], &points[&(t - 1)][e.row]);
            let (f0, f1) = lift(src, tgt, &e.scalar)?;
            for j in 0..=k {
                for jp in 0..=k {
                    tot.add_entry(
                        t,
                        pos0(t - 1, e.row, jp),
                        pos0(t, e.col, j),
                        f0[j][jp].clone(),
                    );
                }
            }
            for j in 0..k {
                for jp in 0..k {
                    tot.add_entry(
                        t + 1,
                        pos1(t - 1, e.row, jp),
                        pos1(t, e.col, j),
                        f1[j][jp].clone(),
                    );
                }
            }
        }
    }
    // cancel the padding of closed orthants, one level at a time
    let mut dense = Dense::from_complex(&tot);
    for (&t, boxes) in flat.terms() {
        for (a, b) in boxes.iter().enumerate() {
            if b.open_lower_faces().iter().any(|&o| o) {
                continue;
            }
            for j in 0..k {
                dense.cancel(t + 1, pos0(t, a, j), pos1(t, a, j));
            }
        }
    }
    let complex = dense.into_complex(n);
    if let Some(v) = complex.verify()? {
        return Err(Error::LiftFailed(format!("totalized complex fails: {v}")));
    }
    // stabilization: open corners c and the window (c, c + δ_K) per coordinate
    let mut windows: Vec<Vec<(ExponentValue, ExponentValue)>> = vec![Vec::new(); n];
    let mut extra: Vec<Vec<ExponentValue>> = vec![Vec::new(); n];
    for b in flat.all_boxes() {
        for (i, open) in b.open_lower_faces().into_iter().enumerate() {
            let c = b.interval(i).lo().clone();
            extra[i].push(c.clone());
            if open {
                windows[i].push((c.clone(), &c + &deltas[k][i]));
            }
        }
    }
    for b in module {
        for (i, interval) in b.intervals().iter().enumerate() {
            extra[i].extend(interval.endpoints().cloned());
        }
    }
    let arr: CellArrangement = if complex.is_zero() {
        build_arrangement(n, module.iter())?
    } else {
        complex.arrangement()?.refine(&extra)?
    };
    let h = homology_on(&complex, arr, &HomologyOptions::default())?;
    let arr = &h.arrangement;
    let mut unstabilized = Vec::new();
    let mut failures = Vec::new();
    let mut stabilized = 0;
    for cell in arr.cells() {
        let mut stable = true;
        for i in 0..n {
            let r = arr.representative(i, cell[i]);
            for (lo, hi) in &windows[i] {
                if lo.lt(&r)? && r.lt(hi)? {
                    stable = false;
                }
            }
        }
        if !stable {
            unstabilized.push(arr.cell_label(&cell));
            continue;
        }
        stabilized += 1;
        let mut expected = 0;
        for b in module {
            expected += arr.evaluate(b, &cell)?;
        }
        let h0 = h.get(&cell, 0);
        let higher: usize = complex
            .degrees()
            .iter()
            .filter(|&&d| d != 0)
            .map(|&d| h.get(&cell, d))
            .sum();
        if h0 != expected || higher != 0 {
            failures.push(format!(
                "{}: H_0 = {h0} (expected {expected}), higher = {higher}",
                arr.cell_label(&cell)
            ));
        }
    }
    Ok(ProjectiveResolution {
        complex,
        depth,
        flat_length: flat.length(),
        unstabilized,
        failures,
        stabilized_cells: stabilized,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::certificates::fixtures;

    #[test]
    fn residue_field_in_one_variable() {
        let r = projective_resolution(1, &fixtures::residue_field(1), 4, None).unwrap();
        assert_eq!(r.length(), 2);
        assert_eq!(r.complex.rank(0), 1);
        assert_eq!(r.complex.rank(1), 5);
        assert_eq!(r.complex.rank(2), 4);
        assert!(r.is_exact_on_stabilized(), "{:?}", r.failures);
        assert!(!r.unstabilized.is_empty());
    }

    #[test]
    fn free_module_prunes_to_itself() {
        let r = projective_resolution(2, &[BoxModule::ring(2)], 5, None).unwrap();
        assert_eq!(r.length(), 0);
        assert_eq!(r.complex.rank(0), 1);
        assert!(r.is_exact_on_stabilized());
        assert!(r.unstabilized.is_empty());
    }

    #[test]
    fn unit_cube_has_length_at_most_three() {
        let m = fixtures::quotient_by_i_prime(2).unwrap();
        let r = projective_resolution(2, &m, 3, None).unwrap();
        assert!(r.length() <= 3);
        assert!(r.is_exact_on_stabilized(), "{:?}", r.failures);
    }
}
