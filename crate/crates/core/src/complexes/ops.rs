//! Tensor products, free duals and residue collapses of box complexes.

use std::collections::BTreeMap;

use num_rational::BigRational;

use crate::boxmod::{BoxModule, Interval};
use crate::error::{Error, Result};

use super::BoxComplex;

/// `Tot(C ⊗_k D)` with the source `(p, i, q, j)` of each summand: summand `i`
/// of `C_p` tensored with summand `j` of `D_q`.
#[derive(Clone, Debug)]
pub struct TotalComplex {
    pub complex: BoxComplex,
    pub index: BTreeMap<i64, Vec<(i64, usize, i64, usize)>>,
}

/// Tensor product over `k` of complexes in disjoint variable blocks.
///
/// Degree `m` is `⊕_{p+q=m} C_p ⊗ D_q`, ordered by `p`, then the left
/// summand, then the right summand. The differential is
/// `d(c ⊗ d) = dc ⊗ d + (−1)^p c ⊗ dd`.
pub fn tensor_total(c: &BoxComplex, d: &BoxComplex) -> TotalComplex {
    let mut index: BTreeMap<i64, Vec<(i64, usize, i64, usize)>> = BTreeMap::new();
    for (&p, ct) in &c.terms {
        for (&q, dt) in &d.terms {
            let slot = index.entry(p + q).or_default();
            for i in 0..ct.len() {
                for j in 0..dt.len() {
                    slot.push((p, i, q, j));
                }
            }
        }
    }
    for slot in index.values_mut() {
        slot.sort();
    }
    let position: BTreeMap<(i64, usize, i64, usize), usize> = index
        .values()
        .flat_map(|slot| slot.iter().enumerate().map(|(k, &key)| (key, k)))
        .collect();
    let mut out = BoxComplex::new(c.n + d.n);
    for (&m, slot) in &index {
        out.set_term(
            m,
            slot.iter()
                .map(|&(p, i, q, j)| c.term(p)[i].product(&d.term(q)[j]))
                .collect(),
        );
    }
    for (&m, slot) in &index {
        for (col, &(p, i, q, j)) in slot.iter().enumerate() {
            for e in c.differential(p).iter().filter(|e| e.col == i) {
                let row = position[&(p - 1, e.row, q, j)];
                out.add_entry(m, row, col, e.scalar.clone());
            }
            let sign = if p.rem_euclid(2) == 0 { 1 } else { -1 };
            for e in d.differential(q).iter().filter(|e| e.col == j) {
                let row = position[&(p, i, q - 1, e.row)];
                out.add_entry(
                    m,
                    row,
                    col,
                    &e.scalar * BigRational::from_integer(sign.into()),
                );
            }
        }
    }
    TotalComplex {
        complex: out,
        index,
    }
}

/// Tensor product over `k` of complexes in disjoint variable blocks.
pub fn tensor(c: &BoxComplex, d: &BoxComplex) -> BoxComplex {
    tensor_total(c, d).complex
}

/// Direct sum, with the summands of each degree concatenated in order.
pub fn direct_sum(parts: &[BoxComplex]) -> Result<BoxComplex> {
    let n = parts.first().map_or(0, |c| c.n);
    if let Some(c) = parts.iter().find(|c| c.n != n) {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: c.n,
        });
    }
    let mut out = BoxComplex::new(n);
    let mut offsets: BTreeMap<i64, usize> = BTreeMap::new();
    for c in parts {
        for (&d, es) in &c.differentials {
            let col0 = offsets.get(&d).copied().unwrap_or(0);
            let row0 = offsets.get(&(d - 1)).copied().unwrap_or(0);
            for e in es {
                out.add_entry(d, row0 + e.row, col0 + e.col, e.scalar.clone());
            }
        }
        for (&d, t) in &c.terms {
            let mut merged = out.term(d).to_vec();
            merged.extend(t.iter().cloned());
            out.set_term(d, merged);
            *offsets.entry(d).or_default() += t.len();
        }
    }
    Ok(out)
}

/// The free dual `Hom_R(−, R)`: `R(−b)` in degree `i` becomes `R(b)` in
/// degree `−i`, and differentials are transposed.
pub fn dualize_free(c: &BoxComplex) -> Result<BoxComplex> {
    for (&d, t) in &c.terms {
        if let Some(index) = t.iter().position(|b| !b.is_free()) {
            return Err(Error::NotFree { degree: d, index });
        }
    }
    let mut out = BoxComplex::new(c.n);
    for (&d, t) in &c.terms {
        out.set_term(
            -d,
            t.iter()
                .map(|b| {
                    BoxModule::new(
                        b.intervals()
                            .iter()
                            .map(|i| Interval::closed_ray(-i.lo()))
                            .collect(),
                    )
                })
                .collect(),
        );
    }
    for (&d, es) in &c.differentials {
        // d_d : C_d → C_{d-1} dualizes to C*_{-(d-1)} → C*_{-d}
        for e in es {
            out.add_entry(1 - d, e.col, e.row, e.scalar.clone());
        }
    }
    Ok(out)
}

/// `C ⊗_R R/⟨x_i : i ∈ coords⟩` for a free complex: each `R(−b)` keeps its
/// remaining coordinates, and an entry survives only when its monomial does
/// not involve the collapsed variables (equal corners there).
pub fn collapse(c: &BoxComplex, coords: &[usize]) -> Result<BoxComplex> {
    for (&d, t) in &c.terms {
        if let Some(index) = t.iter().position(|b| !b.is_free()) {
            return Err(Error::NotFree { degree: d, index });
        }
    }
    let keep: Vec<usize> = (0..c.n).filter(|i| !coords.contains(i)).collect();
    let mut out = BoxComplex::new(keep.len());
    for (&d, t) in &c.terms {
        out.set_term(d, t.iter().map(|b| b.select(&keep)).collect());
    }
    for (&d, es) in &c.differentials {
        for e in es {
            let (src, tgt) = (&c.term(d)[e.col], &c.term(d - 1)[e.row]);
            if coords
                .iter()
                .all(|&i| src.interval(i).lo() == tgt.interval(i).lo())
            {
                out.add_entry(d, e.row, e.col, e.scalar.clone());
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complexes::{homology, kunneth_consistent};
    use crate::exponents::{ExponentValue, ExponentVector};

    fn one() -> BigRational {
        BigRational::from_integer(1.into())
    }

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

    fn koszul1(eps: ExponentValue) -> BoxComplex {
        let mut c = BoxComplex::new(1);
        c.set_term(0, vec![BoxModule::ring(1)]);
        c.set_term(1, vec![BoxModule::free(&ExponentVector::new(vec![eps]))]);
        c.add_entry(1, 0, 0, one());
        c
    }

    #[test]
    fn tensor_of_two_open_pieces() {
        let t = tensor(&open_k1(), &open_k1());
        assert_eq!(t.rank(0), 1);
        assert_eq!(t.rank(1), 2);
        assert_eq!(t.rank(2), 1);
        // ordered by the left factor's degree
        assert_eq!(t.term(1)[0].to_string(), "[0,inf) x (0,inf)");
        assert_eq!(t.term(1)[1].to_string(), "(0,inf) x [0,inf)");
        assert_eq!(t.verify().unwrap(), None);
    }

    #[test]
    fn point_is_a_unit() {
        let c = open_k1();
        assert_eq!(tensor(&c, &BoxComplex::point()), c);
        assert_eq!(tensor(&BoxComplex::point(), &c), c);
    }

    #[test]
    fn sign_errors_are_caught() {
        // flipping the sign rule breaks d² = 0 on the square
        let mut t = tensor(&open_k1(), &open_k1());
        let es: Vec<_> = t
            .differential(2)
            .iter()
            .map(|e| crate::complexes::Entry {
                row: e.row,
                col: e.col,
                scalar: BigRational::from_integer(1.into()),
            })
            .collect();
        t.set_differential(2, es);
        assert!(t.verify().unwrap().is_some());
    }

    #[test]
    fn kunneth_on_small_products() {
        let a = koszul1(ExponentValue::from_integer(1));
        let b = open_k1();
        let ab = tensor(&a, &b);
        let (ha, hb, hab) = (
            homology(&a).unwrap(),
            homology(&b).unwrap(),
            homology(&ab).unwrap(),
        );
        assert!(kunneth_consistent(&ha, &hb, &hab, -1..=3));
    }

    #[test]
    fn dual_of_koszul_and_double_dual() {
        let eps = ExponentValue::from_ratio(1, 2);
        let k = koszul1(eps.clone());
        let dual = dualize_free(&k).unwrap();
        assert_eq!(dual.term(0)[0], BoxModule::ring(1));
        assert_eq!(
            dual.term(-1)[0],
            BoxModule::free(&ExponentVector::new(vec![-&eps]))
        );
        assert_eq!(dual.verify().unwrap(), None);
        assert_eq!(dualize_free(&dual).unwrap(), k);
        assert!(dualize_free(&open_k1()).is_err());
    }

    #[test]
    fn collapse_kills_positive_monomials() {
        let k = koszul1(ExponentValue::from_integer(1));
        let c = collapse(&k, &[0]).unwrap();
        assert_eq!(c.dimension(), 0);
        assert!(c.differential(1).is_empty());
        assert_eq!((c.rank(0), c.rank(1)), (1, 1));
    }
}
