//! Integer linear algebra: column Hermite normal form and lattice solving.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

pub type IntMatrix = Vec<Vec<BigInt>>;

/// Result of a column Hermite reduction `A · U = H`.
#[derive(Clone, Debug)]
pub struct ColumnHnf {
    /// Lower column-echelon form with positive pivots, entries left of a
    /// pivot reduced into `[0, pivot)`.
    pub h: IntMatrix,
    /// Unimodular transform.
    pub u: IntMatrix,
    /// `(row, column)` of each pivot; pivot columns are `0..pivots.len()`.
    pub pivots: Vec<(usize, usize)>,
}

impl ColumnHnf {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Basis of the integer kernel of `A` (columns of `U` past the pivots).
    pub fn kernel(&self) -> Vec<Vec<BigInt>> {
        let cols = self.u.len();
        (self.rank()..cols)
            .map(|j| self.u.iter().map(|row| row[j].clone()).collect())
            .collect()
    }
}

fn column_combine(m: &mut IntMatrix, p: usize, q: usize, coeffs: [&BigInt; 4]) {
    // [col_p, col_q] <- [a*col_p + b*col_q, c*col_p + d*col_q]
    let [a, b, c, d] = coeffs;
    for row in m.iter_mut() {
        let (x, y) = (row[p].clone(), row[q].clone());
        row[p] = a * &x + b * &y;
        row[q] = c * &x + d * &y;
    }
}

fn column_swap(m: &mut IntMatrix, p: usize, q: usize) {
    for row in m.iter_mut() {
        row.swap(p, q);
    }
}

fn column_axpy(m: &mut IntMatrix, target: usize, factor: &BigInt, source: usize) {
    // col_target -= factor * col_source
    for row in m.iter_mut() {
        let delta = factor * &row[source];
        row[target] -= delta;
    }
}

fn column_negate(m: &mut IntMatrix, p: usize) {
    for row in m.iter_mut() {
        row[p] = -&row[p];
    }
}

/// Column-style Hermite normal form of an `rows × cols` integer matrix.
pub fn column_hnf(a: &[Vec<BigInt>], cols: usize) -> ColumnHnf {
    let mut h: IntMatrix = a.to_vec();
    let mut u: IntMatrix = (0..cols)
        .map(|i| {
            (0..cols)
                .map(|j| {
                    if i == j {
                        BigInt::one()
                    } else {
                        BigInt::zero()
                    }
                })
                .collect()
        })
        .collect();
    let mut pivots = Vec::new();
    let mut pc = 0;
    for r in 0..h.len() {
        if pc == cols {
            break;
        }
        // gather the gcd of row r (columns pc..) into column pc
        for j in pc + 1..cols {
            if h[r][j].is_zero() {
                continue;
            }
            if h[r][pc].is_zero() {
                column_swap(&mut h, pc, j);
                column_swap(&mut u, pc, j);
                continue;
            }
            let (x, y) = (h[r][pc].clone(), h[r][j].clone());
            let eg = x.extended_gcd(&y);
            let g = eg.gcd;
            let (s, t) = (eg.x, eg.y);
            let c = -(&y / &g);
            let d = &x / &g;
            column_combine(&mut h, pc, j, [&s, &t, &c, &d]);
            column_combine(&mut u, pc, j, [&s, &t, &c, &d]);
        }
        if h[r][pc].is_zero() {
            continue;
        }
        if h[r][pc].is_negative() {
            column_negate(&mut h, pc);
            column_negate(&mut u, pc);
        }
        let pivot = h[r][pc].clone();
        for j in 0..pc {
            let q = h[r][j].div_floor(&pivot);
            if !q.is_zero() {
                column_axpy(&mut h, j, &q, pc);
                column_axpy(&mut u, j, &q, pc);
            }
        }
        pivots.push((r, pc));
        pc += 1;
    }
    ColumnHnf { h, u, pivots }
}

/// Solve `A x = b` over the integers. Returns a particular solution and a
/// kernel basis, or `None` if no integer solution exists.
pub fn solve_integer(
    a: &[Vec<BigInt>],
    cols: usize,
    b: &[BigInt],
) -> Option<(Vec<BigInt>, Vec<Vec<BigInt>>)> {
    assert_eq!(a.len(), b.len(), "row count mismatch");
    let hnf = column_hnf(a, cols);
    let rank = hnf.rank();
    let mut beta = vec![BigInt::zero(); cols];
    for (j, &(r, _)) in hnf.pivots.iter().enumerate() {
        let mut residual = b[r].clone();
        for (jj, bj) in beta.iter().enumerate().take(j) {
            residual -= &hnf.h[r][jj] * bj;
        }
        let pivot = &hnf.h[r][j];
        if !residual.is_multiple_of(pivot) {
            return None;
        }
        beta[j] = residual / pivot;
    }
    for (r, row) in hnf.h.iter().enumerate() {
        let mut acc = BigInt::zero();
        for (hj, bj) in row.iter().zip(&beta).take(rank) {
            acc += hj * bj;
        }
        if acc != b[r] {
            return None;
        }
    }
    let x = (0..cols)
        .map(|i| {
            hnf.u[i]
                .iter()
                .zip(&beta)
                .fold(BigInt::zero(), |acc, (uij, bj)| acc + uij * bj)
        })
        .collect();
    Some((x, hnf.kernel()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn m(rows: &[&[i64]]) -> IntMatrix {
        rows.iter()
            .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
            .collect()
    }

    fn mul(a: &IntMatrix, x: &[BigInt]) -> Vec<BigInt> {
        a.iter()
            .map(|row| {
                row.iter()
                    .zip(x)
                    .fold(BigInt::zero(), |acc, (p, q)| acc + p * q)
            })
            .collect()
    }

    #[test]
    fn solves_simple_system() {
        let a = m(&[&[2, 3]]);
        let (x, kernel) = solve_integer(&a, 2, &[BigInt::from(1)]).unwrap();
        assert_eq!(mul(&a, &x), vec![BigInt::from(1)]);
        assert_eq!(kernel.len(), 1);
        assert_eq!(mul(&a, &kernel[0]), vec![BigInt::zero()]);
    }

    #[test]
    fn detects_non_integral() {
        let a = m(&[&[2, 4]]);
        assert!(solve_integer(&a, 2, &[BigInt::from(3)]).is_none());
    }

    #[test]
    fn inconsistent_rows() {
        let a = m(&[&[1, 0], &[1, 0]]);
        assert!(solve_integer(&a, 2, &[BigInt::from(1), BigInt::from(2)]).is_none());
    }

    proptest! {
        #[test]
        fn solution_satisfies_system(
            entries in proptest::collection::vec(-6i64..6, 6),
            coeffs in proptest::collection::vec(-4i64..4, 3),
        ) {
            let a = m(&[&entries[0..3], &entries[3..6]]);
            let x0: Vec<BigInt> = coeffs.iter().map(|&c| BigInt::from(c)).collect();
            let b = mul(&a, &x0);
            let (x, kernel) = solve_integer(&a, 3, &b).expect("constructed to be solvable");
            prop_assert_eq!(mul(&a, &x), b);
            for k in kernel {
                prop_assert!(mul(&a, &k).iter().all(Zero::is_zero));
            }
        }
    }
}
