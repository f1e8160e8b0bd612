//! Truncated free resolutions of orthant ideals.

use num_rational::BigRational;

use crate::boxmod::BoxModule;
use crate::complexes::BoxComplex;
use crate::error::{Error, Result};
use crate::exponents::{ExponentValue, ExponentVector};

use super::one;

/// A strictly decreasing sequence `e₀ > e₁ > … > e_K` approximating the
/// orthant ideal open along `sigma`: coordinates off `sigma` are `0`, those on
/// `sigma` are positive and strictly decrease.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncationSequence {
    sigma: Vec<bool>,
    entries: Vec<ExponentVector>,
}

impl TruncationSequence {
    pub fn new(sigma: Vec<bool>, entries: Vec<ExponentVector>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::BadSequence("empty sequence".into()));
        }
        let n = sigma.len();
        for (k, e) in entries.iter().enumerate() {
            if e.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: e.len(),
                });
            }
            for (i, v) in e.iter().enumerate() {
                if sigma[i] {
                    if v.signum_with(&Default::default())? != std::cmp::Ordering::Greater {
                        return Err(Error::BadSequence(format!(
                            "entry {k} coordinate {i} is {v}, expected positive"
                        )));
                    }
                } else if !v.is_zero() {
                    return Err(Error::BadSequence(format!(
                        "entry {k} coordinate {i} is {v}, expected 0 off the orthant's open faces"
                    )));
                }
            }
            if k > 0 {
                let prev = &entries[k - 1];
                for i in (0..n).filter(|&i| sigma[i]) {
                    if !e[i].lt(&prev[i])? {
                        return Err(Error::BadSequence(format!(
                            "coordinate {i} does not decrease at step {k}: {} then {}",
                            prev[i], e[i]
                        )));
                    }
                }
            }
        }
        Ok(TruncationSequence { sigma, entries })
    }

    /// `e_k = e₀ · 2⁻ᵏ` on `sigma` for `k = 0..=depth`; `e₀` is read on `sigma` only.
    pub fn geometric(sigma: &[bool], e0: &ExponentVector, depth: usize) -> Result<Self> {
        let base = e0.restrict(sigma);
        let half = BigRational::new(1.into(), 2.into());
        let mut entries = vec![base];
        for k in 0..depth {
            entries.push(entries[k].scale(&half));
        }
        TruncationSequence::new(sigma.to_vec(), entries)
    }

    pub fn sigma(&self) -> &[bool] {
        &self.sigma
    }

    pub fn entries(&self) -> &[ExponentVector] {
        &self.entries
    }

    pub fn dimension(&self) -> usize {
        self.sigma.len()
    }

    /// `K`, the index of the last entry.
    pub fn depth(&self) -> usize {
        self.entries.len() - 1
    }

    /// The prefix `e₀, …, e_k`.
    pub fn truncate(&self, k: usize) -> Result<Self> {
        if k > self.depth() {
            return Err(Error::InvalidParameter(format!(
                "depth {k} exceeds sequence depth {}",
                self.depth()
            )));
        }
        Ok(TruncationSequence {
            sigma: self.sigma.clone(),
            entries: self.entries[..=k].to_vec(),
        })
    }

    /// The sequence translated by `corner` (which must be nonnegative).
    pub fn shifted(&self, corner: &ExponentVector) -> Vec<ExponentVector> {
        self.entries.iter().map(|e| e + corner).collect()
    }

    /// Coordinatewise minimum, the common refinement of two levels.
    pub fn meet_at(&self, other: &TruncationSequence, k: usize) -> Result<ExponentVector> {
        self.entries[k].meet(&other.entries[k])
    }
}

/// `0 ← ⊕_{k≤K} R(−e_k) ← ⊕_{k<K} R(−e_k) ← 0` with `1_k ↦ 1_k − x^{e_k−e_{k+1}} 1_{k+1}`.
/// Consecutive points must be coordinatewise weakly decreasing.
pub fn truncated_resolution(points: &[ExponentVector]) -> Result<BoxComplex> {
    let n = points.first().map_or(0, ExponentVector::len);
    for w in points.windows(2) {
        if !w[1].le(&w[0])? {
            return Err(Error::BadSequence(format!(
                "{} is not below {}",
                w[1], w[0]
            )));
        }
    }
    let mut c = BoxComplex::new(n);
    c.set_term(0, points.iter().map(BoxModule::free).collect());
    if points.len() > 1 {
        let k_max = points.len() - 1;
        c.set_term(1, points[..k_max].iter().map(BoxModule::free).collect());
        for k in 0..k_max {
            c.add_entry(1, k, k, one());
            c.add_entry(1, k + 1, k, -one());
        }
    }
    Ok(c)
}

/// A truncated orthant resolution with what it approximates.
#[derive(Clone, Debug)]
pub struct OrthantResolution {
    pub complex: BoxComplex,
    /// `H₀` at this level, `R(−e_K)`.
    pub h0: BoxModule,
    /// The orthant ideal `I_σ` the levels converge to.
    pub limit: BoxModule,
    pub depth: usize,
}

/// The truncated resolution of `I_σ` along `seq`.
pub fn orthant_resolution(sigma: &[bool], seq: &TruncationSequence) -> Result<OrthantResolution> {
    if seq.sigma() != sigma {
        return Err(Error::BadSequence(format!(
            "sequence is open along {:?}, expected {:?}",
            seq.sigma(),
            sigma
        )));
    }
    let n = sigma.len();
    Ok(OrthantResolution {
        complex: truncated_resolution(seq.entries())?,
        h0: BoxModule::free(&seq.entries()[seq.depth()]),
        limit: BoxModule::orthant(&ExponentVector::zeros(n), sigma),
        depth: seq.depth(),
    })
}

/// Whether a cell's `sigma`-coordinates all lie strictly above the level `e`,
/// where the truncation has stabilized.
pub(crate) fn beyond_level(
    arr: &crate::boxmod::CellArrangement,
    cell: &[usize],
    sigma: &[bool],
    e: &ExponentVector,
) -> Result<bool> {
    for i in (0..sigma.len()).filter(|&i| sigma[i]) {
        let rep: ExponentValue = arr.representative(i, cell[i]);
        if !e[i].lt(&rep)? {
            return Ok(false);
        }
    }
    Ok(true)
}
