//! Brute-force homology at sampled degrees, independent of the cell machinery.
//!
//! A degree is drawn at random from each coordinate's pieces (critical values,
//! interior points of gaps, points beyond the extremes), the complex is
//! instantiated there by direct interval comparisons, and ranks come from
//! Gauss-Jordan elimination rather than the fraction-free routine.

use num_rational::BigRational;
use num_traits::Zero;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::boxmod::CellArrangement;
use crate::error::Result;
use crate::exponents::{ExponentValue, ExponentVector};
use crate::linalg::solve_rational;

use super::{BoxComplex, CellHomologyTable};

/// A disagreement between the oracle and a table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleMismatch {
    pub degree: String,
    pub homological_degree: i64,
    pub oracle: usize,
    pub table: usize,
}

fn rank(m: &[Vec<BigRational>]) -> usize {
    let cols = m.first().map_or(0, Vec::len);
    if cols == 0 {
        return 0;
    }
    let zero = vec![BigRational::zero(); m.len()];
    let sol = solve_rational(m, cols, &zero).expect("homogeneous systems are consistent");
    cols - sol.nullspace.len()
}

/// Homology dimensions at one degree, computed directly.
pub fn homology_at(c: &BoxComplex, degree: &ExponentVector) -> Result<Vec<(i64, usize)>> {
    let mut active = std::collections::HashMap::new();
    for d in c.degrees() {
        let mut idx = Vec::new();
        for b in c.term(d) {
            idx.push(b.contains(degree)?);
        }
        active.insert(d, idx);
    }
    let local = |d: i64| -> Vec<Vec<BigRational>> {
        let empty = Vec::new();
        let src = active.get(&d).unwrap_or(&empty);
        let tgt = active.get(&(d - 1)).unwrap_or(&empty);
        let pos = |flags: &Vec<bool>| -> Vec<Option<usize>> {
            let mut k = 0;
            flags
                .iter()
                .map(|&f| {
                    f.then(|| {
                        k += 1;
                        k - 1
                    })
                })
                .collect()
        };
        let (ps, pt) = (pos(src), pos(tgt));
        let rows = pt.iter().flatten().count();
        let cols = ps.iter().flatten().count();
        let mut m = vec![vec![BigRational::zero(); cols]; rows];
        for e in c.differential(d) {
            if let (Some(Some(r)), Some(Some(k))) = (pt.get(e.row), ps.get(e.col)) {
                m[*r][*k] += &e.scalar;
            }
        }
        m
    };
    let mut out = Vec::new();
    for d in c.degrees() {
        let dim = active[&d].iter().filter(|&&f| f).count();
        let h = dim - rank(&local(d)) - rank(&local(d + 1));
        out.push((d, h));
    }
    Ok(out)
}

fn sample_in_piece(
    arr: &CellArrangement,
    coord: usize,
    piece: usize,
    rng: &mut ChaCha8Rng,
) -> ExponentValue {
    let cs = arr.critical(coord);
    if cs.is_empty() {
        return ExponentValue::from_ratio(rng.gen_range(-50..50), 7);
    }
    if piece % 2 == 1 {
        return cs[piece / 2].clone();
    }
    let j = piece / 2;
    // t ∈ (0, 1) with a denominator unrelated to the critical values
    let t = BigRational::new(rng.gen_range(1..97).into(), 97.into());
    if j == 0 {
        &cs[0] - &ExponentValue::from_rational(t)
    } else if j == cs.len() {
        &cs[j - 1] + &ExponentValue::from_rational(t * BigRational::from_integer(3.into()))
    } else {
        let gap = &cs[j] - &cs[j - 1];
        &cs[j - 1] + &gap.scale(&t)
    }
}

/// Compare `table` with the oracle at `samples` random degrees drawn from `seed`.
pub fn check_against_oracle(
    c: &BoxComplex,
    table: &CellHomologyTable,
    samples: usize,
    seed: u64,
) -> Result<Vec<OracleMismatch>> {
    let arr = &table.arrangement;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut mismatches = Vec::new();
    for _ in 0..samples {
        let degree: ExponentVector = (0..arr.dimension())
            .map(|i| {
                let piece = rng.gen_range(0..arr.piece_count(i));
                sample_in_piece(arr, i, piece, &mut rng)
            })
            .collect();
        let cell = arr.locate(&degree)?;
        for (d, h) in homology_at(c, &degree)? {
            let t = table.get(&cell, d);
            if t != h {
                mismatches.push(OracleMismatch {
                    degree: degree.to_string(),
                    homological_degree: d,
                    oracle: h,
                    table: t,
                });
            }
        }
    }
    Ok(mismatches)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::boxmod::{BoxModule, Interval};
    use crate::complexes::homology;

    #[test]
    fn oracle_agrees_on_inclusion_complex() {
        // 0 ← R₁ ← R₁(−ε) ← 0: H₀ = 1 exactly on [0, ε)
        let eps = ExponentValue::from_ratio(1, 3);
        let mut c = BoxComplex::new(1);
        c.set_term(0, vec![BoxModule::ring(1)]);
        c.set_term(
            1,
            vec![BoxModule::new(vec![Interval::closed_ray(eps.clone())])],
        );
        c.add_entry(1, 0, 0, BigRational::from_integer(1.into()));
        let table = homology(&c).unwrap();
        assert_eq!(table.get(&[1], 0), 1);
        assert_eq!(table.get(&[2], 0), 1);
        assert_eq!(table.get(&[3], 0), 0);
        assert_eq!(table.get(&[0], 0), 0);
        assert!(table.support(1).is_empty());
        assert!(check_against_oracle(&c, &table, 50, 7).unwrap().is_empty());
    }
}
