//! Constructors for the Koszul-type complexes: ordinary and open Koszul
//! complexes, truncated orthant resolutions, the discretized total Koszul
//! complex and the flat-resolution bookkeeping.

mod flat;
mod group;
mod total;
mod truncation;

use num_rational::BigRational;

use crate::boxmod::{BoxModule, Interval};
use crate::complexes::{collapse, tensor, BoxComplex};
use crate::error::{Error, Result};
use crate::exponents::{ExponentValue, ExponentVector};

pub use flat::{flat_decomposition, flat_resolution, FlatDecomposition, FlatSummand};
pub use group::GroupContext;
pub use total::{total_koszul_truncated, DiscreteHomology, DiscretizedComplex, TotalKoszul};
pub(crate) use truncation::beyond_level as truncation_beyond_level;
pub use truncation::{
    orthant_resolution, truncated_resolution, OrthantResolution, TruncationSequence,
};

pub(crate) fn one() -> BigRational {
    BigRational::from_integer(1.into())
}

/// `0 ← R₁ ← R₁(−ε) ← 0`.
pub fn koszul_one(eps: &ExponentValue) -> BoxComplex {
    let mut c = BoxComplex::new(1);
    c.set_term(0, vec![BoxModule::ring(1)]);
    c.set_term(
        1,
        vec![BoxModule::new(vec![Interval::closed_ray(eps.clone())])],
    );
    c.add_entry(1, 0, 0, one());
    c
}

/// `R₁ ↩ 𝔪₁`, the flat resolution of `k` over one variable.
pub fn open_koszul_one() -> BoxComplex {
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

/// The Koszul complex `K(x^ε)` on `x_1^{ε_1}, …, x_n^{ε_n}`: degree `i` is
/// `⊕_{|σ|=i} R(−ε_σ)`.
pub fn ordinary_koszul(eps: &ExponentVector) -> Result<BoxComplex> {
    if !eps.is_strictly_positive()? {
        return Err(Error::InvalidParameter(format!(
            "Koszul exponents must be strictly positive, got {eps}"
        )));
    }
    Ok(eps
        .iter()
        .fold(BoxComplex::point(), |acc, e| tensor(&acc, &koszul_one(e))))
}

/// The open Koszul complex `K̊ˣ`, the `n`-fold tensor power of `R₁ ↩ 𝔪₁`.
/// Degree `i` is `⊕_{|σ|=i} I_σ`.
pub fn open_koszul(n: usize) -> BoxComplex {
    (0..n).fold(BoxComplex::point(), |acc, _| {
        tensor(&acc, &open_koszul_one())
    })
}

/// `dim Tor_i^R(k, R/⟨x^ε⟩)`: collapse the Koszul complex to `k` and read off ranks.
/// Fails if some differential survives the collapse.
pub fn tor_of_power_quotient(eps: &ExponentVector, i: i64) -> Result<usize> {
    let k = ordinary_koszul(eps)?;
    let coords: Vec<usize> = (0..eps.len()).collect();
    let collapsed = collapse(&k, &coords)?;
    for d in collapsed.degrees() {
        if !collapsed.differential(d).is_empty() {
            return Err(Error::NonzeroDifferential { degree: d });
        }
    }
    Ok(collapsed.rank(i))
}

/// `C(n, k)`.
pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1usize, |acc, j| acc * (n - j) / (j + 1))
}

/// Subsets of `{0..n}` of size `k` as masks, in lexicographic order of index lists.
pub fn subsets(n: usize, k: usize) -> Vec<Vec<bool>> {
    fn go(n: usize, k: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<bool>>) {
        if cur.len() == k {
            let mut mask = vec![false; n];
            for &i in cur.iter() {
                mask[i] = true;
            }
            out.push(mask);
            return;
        }
        for i in start..n {
            cur.push(i);
            go(n, k, i + 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, k, 0, &mut Vec::new(), &mut out);
    out
}
