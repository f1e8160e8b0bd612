//! Exact linear algebra over `ℚ` and prime fields.
//!
//! Ranks over `ℚ` use fraction-free integer elimination with content removal,
//! so intermediate entries stay small. Linear solves use Gauss-Jordan
//! elimination over `BigRational` with least-index pivoting.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

fn lcm_of_denominators(row: &[BigRational]) -> BigInt {
    row.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()))
}

/// Scale a rational row to a primitive integer row.
fn integer_row(row: &[BigRational]) -> Vec<BigInt> {
    let l = lcm_of_denominators(row);
    let mut out: Vec<BigInt> = row.iter().map(|q| q.numer() * (&l / q.denom())).collect();
    remove_content(&mut out);
    out
}

fn remove_content(row: &mut [BigInt]) {
    let g = row.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if !g.is_zero() && !g.is_one() {
        for x in row.iter_mut() {
            *x /= &g;
        }
    }
}

/// Rank over `ℚ` of a matrix given by rows.
pub fn rank_rational(rows: &[Vec<BigRational>]) -> usize {
    let mut m: Vec<Vec<BigInt>> = rows
        .iter()
        .map(|r| integer_row(r))
        .filter(|r| r.iter().any(|x| !x.is_zero()))
        .collect();
    rank_integer_in_place(&mut m)
}

/// Rank over `ℚ` of an integer matrix, destroying it.
pub fn rank_integer_in_place(m: &mut [Vec<BigInt>]) -> usize {
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        if rank == m.len() {
            break;
        }
        // smallest nonzero pivot keeps growth down
        let pivot = (rank..m.len())
            .filter(|&r| !m[r][c].is_zero())
            .min_by(|&a, &b| m[a][c].abs().cmp(&m[b][c].abs()));
        let Some(p) = pivot else { continue };
        m.swap(rank, p);
        let (head, tail) = m.split_at_mut(rank + 1);
        let prow = &head[rank];
        for row in tail.iter_mut() {
            if row[c].is_zero() {
                continue;
            }
            let g = prow[c].gcd(&row[c]);
            let a = &prow[c] / &g;
            let b = &row[c] / &g;
            for (x, y) in row.iter_mut().zip(prow.iter()).skip(c) {
                *x = &a * &*x - &b * y;
            }
            remove_content(row);
        }
        rank += 1;
    }
    rank
}

/// `q mod p`, failing when `p` divides the denominator.
pub fn reduce_mod_p(q: &BigRational, p: u64) -> Result<u64> {
    let pb = BigInt::from(p);
    let num = q.numer().mod_floor(&pb).to_u64().expect("reduced below p");
    let den = q.denom().mod_floor(&pb).to_u64().expect("reduced below p");
    if den == 0 {
        return Err(Error::FieldDenominator(format!("{q} mod {p}")));
    }
    Ok(mul_mod(num, inv_mod(den, p), p))
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, a, p);
        }
        a = mul_mod(a, a, p);
        e >>= 1;
    }
    acc
}

fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

/// Rank over `F_p`.
pub fn rank_mod_p(rows: &[Vec<BigRational>], p: u64) -> Result<usize> {
    let mut m: Vec<Vec<u64>> = rows
        .iter()
        .map(|r| r.iter().map(|q| reduce_mod_p(q, p)).collect())
        .collect::<Result<_>>()?;
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(piv) = (rank..m.len()).find(|&r| m[r][c] != 0) else {
            continue;
        };
        m.swap(rank, piv);
        let inv = inv_mod(m[rank][c], p);
        let prow: Vec<u64> = m[rank].iter().map(|&x| mul_mod(x, inv, p)).collect();
        for row in m.iter_mut().skip(rank + 1) {
            let f = row[c];
            if f == 0 {
                continue;
            }
            for (x, y) in row.iter_mut().zip(&prow).skip(c) {
                *x = (*x + p - mul_mod(f, *y, p)) % p;
            }
        }
        m[rank] = prow;
        rank += 1;
    }
    Ok(rank)
}

/// Whether `p` is prime (trial division; primes here are word-sized).
pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Solution set of a linear system: a particular solution plus a nullspace basis.
#[derive(Clone, Debug, PartialEq)]
pub struct Solution {
    pub particular: Vec<BigRational>,
    pub nullspace: Vec<Vec<BigRational>>,
}

/// Solve `A x = b` over `ℚ` by Gauss-Jordan elimination with least-index
/// pivots. Free variables are zero in the particular solution. Returns
/// `None` when the system is inconsistent.
pub fn solve_rational(a: &[Vec<BigRational>], cols: usize, b: &[BigRational]) -> Option<Solution> {
    assert_eq!(a.len(), b.len(), "row count mismatch");
    let mut m: Vec<Vec<BigRational>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    let mut pivots: Vec<usize> = Vec::new();
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..m.len()).find(|&r| !m[r][c].is_zero()) else {
            continue;
        };
        m.swap(rank, p);
        let inv = m[rank][c].recip();
        for x in m[rank].iter_mut() {
            *x *= &inv;
        }
        let prow = m[rank].clone();
        for (r, row) in m.iter_mut().enumerate() {
            if r == rank || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (x, y) in row.iter_mut().zip(&prow) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
        }
        pivots.push(c);
        rank += 1;
    }
    if m[rank..].iter().any(|row| !row[cols].is_zero()) {
        return None;
    }
    let mut particular = vec![BigRational::zero(); cols];
    for (r, &c) in pivots.iter().enumerate() {
        particular[c] = m[r][cols].clone();
    }
    let mut is_pivot = vec![false; cols];
    for &c in &pivots {
        is_pivot[c] = true;
    }
    let nullspace = (0..cols)
        .filter(|&f| !is_pivot[f])
        .map(|f| {
            let mut v = vec![BigRational::zero(); cols];
            v[f] = BigRational::one();
            for (r, &c) in pivots.iter().enumerate() {
                v[c] = -m[r][f].clone();
            }
            v
        })
        .collect();
    Some(Solution {
        particular,
        nullspace,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(x: i64) -> BigRational {
        BigRational::from_integer(x.into())
    }

    fn mat(rows: &[&[i64]]) -> Vec<Vec<BigRational>> {
        rows.iter()
            .map(|r| r.iter().map(|&x| q(x)).collect())
            .collect()
    }

    // second opinion: Gauss-Jordan pivot count
    fn rref_rank(rows: &[Vec<BigRational>]) -> usize {
        let cols = rows.first().map_or(0, Vec::len);
        let zero = vec![BigRational::zero(); rows.len()];
        let sol = solve_rational(rows, cols, &zero).unwrap();
        cols - sol.nullspace.len()
    }

    #[test]
    fn ranks_of_small_matrices() {
        assert_eq!(rank_rational(&mat(&[&[1, 2], &[2, 4]])), 1);
        assert_eq!(rank_rational(&mat(&[&[1, 2], &[3, 4]])), 2);
        assert_eq!(rank_rational(&mat(&[])), 0);
        assert_eq!(rank_rational(&mat(&[&[0, 0]])), 0);
    }

    #[test]
    fn prime_rank_can_drop() {
        // det = -2 vanishes mod 2
        let m = mat(&[&[1, 2], &[3, 4]]);
        assert_eq!(rank_mod_p(&m, 2).unwrap(), 1);
        assert_eq!(rank_mod_p(&m, 3).unwrap(), 2);
    }

    #[test]
    fn denominator_divisible_by_p_is_rejected() {
        let half = BigRational::new(1.into(), 2.into());
        assert!(reduce_mod_p(&half, 2).is_err());
        assert_eq!(reduce_mod_p(&half, 5).unwrap(), 3);
    }

    #[test]
    fn solve_with_free_variables() {
        // x + y = 2, free y: particular (2, 0), kernel (-1, 1)
        let sol = solve_rational(&mat(&[&[1, 1]]), 2, &[q(2)]).unwrap();
        assert_eq!(sol.particular, vec![q(2), q(0)]);
        assert_eq!(sol.nullspace, vec![vec![q(-1), q(1)]]);
        assert!(solve_rational(&mat(&[&[1, 1], &[1, 1]]), 2, &[q(1), q(2)]).is_none());
    }

    #[test]
    fn primality() {
        assert!(is_prime(2) && is_prime(101) && is_prime(1_000_000_007));
        assert!(!is_prime(1) && !is_prime(91));
    }

    proptest! {
        #[test]
        fn fraction_free_rank_matches_gauss_jordan(
            entries in proptest::collection::vec(-5i64..5, 12),
            den in 1i64..4,
        ) {
            let rows: Vec<Vec<BigRational>> = entries
                .chunks(4)
                .map(|r| r.iter().map(|&x| BigRational::new(x.into(), den.into())).collect())
                .collect();
            prop_assert_eq!(rank_rational(&rows), rref_rank(&rows));
            // a large prime agrees with Q on tiny matrices
            prop_assert_eq!(rank_mod_p(&rows, 1_000_000_007).unwrap(), rref_rank(&rows));
        }
    }
}
