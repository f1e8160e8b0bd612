//! Support escape: splittings of the truncated resolution of `𝔪₁` must use
//! the deepest truncation index.

use std::collections::BTreeSet;

use num_rational::BigRational;
use num_traits::{One, Zero};
use serde_json::json;

use crate::boxmod::value_string;
use crate::error::{Error, Result};
use crate::koszul::TruncationSequence;
use crate::linalg::solve_rational;

/// The solved splitting system at one truncation depth.
///
/// A degree-0 map `φ` from the level-`K` truncation of `𝔪₁` to `F_K` sends
/// `x^{e_j}` to `Σ_{k≥j} c_{jk} x^{e_j−e_k} 1_k`. Compatibility with
/// multiplication forces `c_{jk} = c_{j′k}` for `k ≥ j′ > j` and `c_{jk} = 0`
/// for `j ≤ k < j′`; `α∘φ = c·id` forces `Σ_k c_{jk} = c`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SupportEscapeCertificate {
    pub depth: usize,
    pub scalar: BigRational,
    /// Unknowns `(j, k)` in column order.
    pub unknowns: Vec<(usize, usize)>,
    /// The least-index particular solution.
    pub solution: Vec<BigRational>,
    /// Dimension of the solution space of the homogeneous system.
    pub nullity: usize,
    /// Indices `k` used by the particular solution.
    pub support: BTreeSet<usize>,
    /// Indices `k` that every solution uses.
    pub forced: BTreeSet<usize>,
}

impl SupportEscapeCertificate {
    pub fn minimal_forced(&self) -> Option<usize> {
        self.forced.iter().next().copied()
    }

    /// For `c ≠ 0` the forced support is exactly `{K}`; for `c = 0` the zero
    /// map is a solution.
    pub fn escapes(&self) -> bool {
        if self.scalar.is_zero() {
            self.solution.iter().all(Zero::is_zero)
        } else {
            self.minimal_forced() == Some(self.depth)
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "depth": self.depth,
            "scalar": crate::exponents::format_rational(&self.scalar),
            "unknowns": self.unknowns.len(),
            "solution": self
                .unknowns
                .iter()
                .zip(&self.solution)
                .filter(|(_, v)| !v.is_zero())
                .map(|(&(j, k), v)| json!({"j": j, "k": k, "value": crate::exponents::format_rational(v)}))
                .collect::<Vec<_>>(),
            "nullity": self.nullity,
            "support": self.support,
            "forced": self.forced,
            "minimal_forced": self.minimal_forced(),
        })
    }
}

/// Solve the splitting system at depth `depth` with `α∘φ = c·id`.
pub fn support_escape(
    depth: usize,
    c: &BigRational,
    seq: &TruncationSequence,
) -> Result<SupportEscapeCertificate> {
    if seq.dimension() != 1 {
        return Err(Error::InvalidParameter(format!(
            "support escape lives in one variable, got n = {}",
            seq.dimension()
        )));
    }
    if seq.depth() < depth {
        return Err(Error::InvalidParameter(format!(
            "sequence depth {} is below {depth}",
            seq.depth()
        )));
    }
    let e = seq.entries();
    let mut unknowns = Vec::new();
    for j in 0..=depth {
        for k in j..=depth {
            // 1_k may appear in φ(x^{e_j}) only when e_k ≤ e_j
            if e[k].le(&e[j])? {
                unknowns.push((j, k));
            }
        }
    }
    let col = |j: usize, k: usize| unknowns.iter().position(|&u| u == (j, k));
    let cols = unknowns.len();
    let mut rows: Vec<Vec<BigRational>> = Vec::new();
    let mut rhs: Vec<BigRational> = Vec::new();
    let unit = |i: usize, v: BigRational| {
        let mut r = vec![BigRational::zero(); cols];
        r[i] = v;
        r
    };
    for j in 0..=depth {
        for jp in j + 1..=depth {
            for k in j..=depth {
                let Some(a) = col(j, k) else { continue };
                match (k >= jp).then(|| col(jp, k)).flatten() {
                    Some(b) => {
                        let mut r = unit(a, BigRational::one());
                        r[b] = -BigRational::one();
                        rows.push(r);
                    }
                    None => rows.push(unit(a, BigRational::one())),
                }
                rhs.push(BigRational::zero());
            }
        }
        let mut r = vec![BigRational::zero(); cols];
        for k in j..=depth {
            if let Some(a) = col(j, k) {
                r[a] = BigRational::one();
            }
        }
        rows.push(r);
        rhs.push(c.clone());
    }
    let sol = solve_rational(&rows, cols, &rhs)
        .ok_or_else(|| Error::Infeasible(format!("no splitting at depth {depth} with c = {c}")))?;
    let support = unknowns
        .iter()
        .zip(&sol.particular)
        .filter(|(_, v)| !v.is_zero())
        .map(|(&(_, k), _)| k)
        .collect();
    let mut forced = BTreeSet::new();
    if !c.is_zero() {
        for k in 0..=depth {
            let mut extra_rows = rows.clone();
            let mut extra_rhs = rhs.clone();
            for j in 0..=k {
                if let Some(a) = col(j, k) {
                    extra_rows.push(unit(a, BigRational::one()));
                    extra_rhs.push(BigRational::zero());
                }
            }
            if solve_rational(&extra_rows, cols, &extra_rhs).is_none() {
                forced.insert(k);
            }
        }
    }
    Ok(SupportEscapeCertificate {
        depth,
        scalar: c.clone(),
        nullity: sol.nullspace.len(),
        solution: sol.particular,
        unknowns,
        support,
        forced,
    })
}

/// Human-readable sequence entries, used in certificate parameters.
pub(crate) fn sequence_strings(seq: &TruncationSequence) -> Vec<String> {
    seq.entries().iter().map(|e| value_string(&e[0])).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exponents::{ExponentValue, ExponentVector};

    fn geometric(k: usize) -> TruncationSequence {
        TruncationSequence::geometric(&[true], &ExponentVector::from_integers(&[1]), k).unwrap()
    }

    fn q(k: i64) -> BigRational {
        BigRational::from_integer(k.into())
    }

    #[test]
    fn depth_five_forces_last_index() {
        let cert = support_escape(5, &q(1), &geometric(5)).unwrap();
        assert!(cert.escapes());
        assert_eq!(cert.forced, BTreeSet::from([5]));
        assert_eq!(cert.support, BTreeSet::from([5]));
    }

    #[test]
    fn zero_scalar_has_empty_support() {
        for k in 1..5 {
            let cert = support_escape(k, &q(0), &geometric(k)).unwrap();
            assert!(cert.support.is_empty());
            assert!(cert.escapes());
        }
    }

    #[test]
    fn depth_one_by_hand() {
        // unknowns c00, c01, c11: c00 = 0 (0 < 1), c01 = c11, c00 + c01 = 2, c11 = 2
        let cert = support_escape(1, &q(2), &geometric(1)).unwrap();
        assert_eq!(cert.unknowns, vec![(0, 0), (0, 1), (1, 1)]);
        assert_eq!(cert.solution, vec![q(0), q(2), q(2)]);
        assert!(cert.support.contains(&1));
        assert_eq!(cert.nullity, 0);
    }

    #[test]
    fn non_geometric_sequences_escape_too() {
        let pts =
            [9, 7, 4, 3, 1].map(|p| ExponentVector::new(vec![ExponentValue::from_ratio(p, 5)]));
        let seq = TruncationSequence::new(vec![true], pts.to_vec()).unwrap();
        for k in 1..=4 {
            assert_eq!(
                support_escape(k, &q(1), &seq).unwrap().minimal_forced(),
                Some(k)
            );
        }
    }
}
