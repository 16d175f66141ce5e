//! Exact integer and rational linear algebra used by the classifiers and
//! the geometry module: fraction-free determinants, congruence inertia,
//! kernel bases and strict linear feasibility. No floating point.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Determinant of a square integer matrix by fraction-free (Bareiss)
/// elimination. `m` is row-major with side `n`.
pub(crate) fn bareiss_det(m: &[BigInt], n: usize) -> BigInt {
    if n == 0 {
        return BigInt::one();
    }
    let mut a: Vec<BigInt> = m.to_vec();
    let mut sign = 1i32;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k * n + k].is_zero() {
            // pivot search below row k in column k
            match (k + 1..n).find(|&r| !a[r * n + k].is_zero()) {
                Some(r) => {
                    for c in 0..n {
                        a.swap(k * n + c, r * n + c);
                    }
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &a[i * n + j] * &a[k * n + k] - &a[i * n + k] * &a[k * n + j];
                a[i * n + j] = num / &prev;
            }
            a[i * n + k] = BigInt::zero();
        }
        prev = a[k * n + k].clone();
    }
    let det = a[(n - 1) * n + (n - 1)].clone();
    if sign < 0 {
        -det
    } else {
        det
    }
}

/// Inertia `(positive, negative, zero)` of a symmetric rational matrix,
/// computed by exact symmetric (congruence) pivoting.
pub(crate) fn inertia(b: &[Vec<BigRational>]) -> (usize, usize, usize) {
    let (d, _t) = congruence_diagonalize(b);
    let mut pos = 0;
    let mut neg = 0;
    let mut zero = 0;
    for v in &d {
        if v.is_zero() {
            zero += 1;
        } else if v.is_positive() {
            pos += 1;
        } else {
            neg += 1;
        }
    }
    (pos, neg, zero)
}

/// Symmetric Gaussian elimination under congruence: returns `(d, t)` with
/// `t * B * t^T = diag(d)`, `t` invertible rational.
pub(crate) fn congruence_diagonalize(
    b: &[Vec<BigRational>],
) -> (Vec<BigRational>, Vec<Vec<BigRational>>) {
    let n = b.len();
    let mut a: Vec<Vec<BigRational>> = b.to_vec();
    let mut t: Vec<Vec<BigRational>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        BigRational::one()
                    } else {
                        BigRational::zero()
                    }
                })
                .collect()
        })
        .collect();

    let swap_sym =
        |a: &mut Vec<Vec<BigRational>>, t: &mut Vec<Vec<BigRational>>, k: usize, j: usize| {
            a.swap(k, j);
            for row in a.iter_mut() {
                row.swap(k, j);
            }
            t.swap(k, j);
        };
    // row_k += f * row_j together with the matching column operation
    let add_sym = |a: &mut Vec<Vec<BigRational>>,
                   t: &mut Vec<Vec<BigRational>>,
                   k: usize,
                   j: usize,
                   f: &BigRational| {
        for c in 0..a.len() {
            let v = &a[j][c] * f;
            a[k][c] += v;
        }
        for r in 0..a.len() {
            let v = &a[r][j] * f;
            a[r][k] += v;
        }
        for c in 0..t.len() {
            let v = &t[j][c] * f;
            t[k][c] += v;
        }
    };

    for k in 0..n {
        if a[k][k].is_zero() {
            if let Some(j) = (k + 1..n).find(|&j| !a[j][j].is_zero()) {
                swap_sym(&mut a, &mut t, k, j);
            } else if let Some(j) = (k + 1..n).find(|&j| !a[k][j].is_zero()) {
                // all remaining diagonal entries vanish; fold column j in
                // to create a nonzero pivot at (k,k)
                let one = BigRational::one();
                add_sym(&mut a, &mut t, k, j, &one);
            } else {
                continue; // row k is zero in the remaining block
            }
        }
        let pivot = a[k][k].clone();
        for i in k + 1..n {
            if a[i][k].is_zero() {
                continue;
            }
            let f = -(&a[i][k] / &pivot);
            add_sym(&mut a, &mut t, i, k, &f);
        }
    }
    let d = (0..n).map(|i| a[i][i].clone()).collect();
    (d, t)
}

/// Inverse of an invertible rational matrix by Gauss-Jordan elimination.
pub(crate) fn invert(m: &[Vec<BigRational>]) -> Option<Vec<Vec<BigRational>>> {
    let n = m.len();
    let mut a = m.to_vec();
    let mut inv: Vec<Vec<BigRational>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        BigRational::one()
                    } else {
                        BigRational::zero()
                    }
                })
                .collect()
        })
        .collect();
    for k in 0..n {
        let pivot_row = (k..n).find(|&r| !a[r][k].is_zero())?;
        a.swap(k, pivot_row);
        inv.swap(k, pivot_row);
        let p = a[k][k].clone();
        for c in 0..n {
            a[k][c] /= &p;
            inv[k][c] /= &p;
        }
        for r in 0..n {
            if r == k || a[r][k].is_zero() {
                continue;
            }
            let f = a[r][k].clone();
            for c in 0..n {
                let v = &a[k][c] * &f;
                a[r][c] -= v;
                let v = &inv[k][c] * &f;
                inv[r][c] -= v;
            }
        }
    }
    Some(inv)
}

/// Basis of the right kernel of an integer matrix (rows of the result are
/// kernel vectors, exact rationals).
pub(crate) fn kernel_basis(m: &[BigInt], n: usize) -> Vec<Vec<BigRational>> {
    let mut a: Vec<Vec<BigRational>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| BigRational::from(m[i * n + j].clone()))
                .collect()
        })
        .collect();
    let mut pivot_cols = Vec::new();
    let mut row = 0;
    for col in 0..n {
        let Some(r) = (row..n).find(|&r| !a[r][col].is_zero()) else {
            continue;
        };
        a.swap(row, r);
        let p = a[row][col].clone();
        for c in 0..n {
            a[row][c] /= &p;
        }
        for r2 in 0..n {
            if r2 == row || a[r2][col].is_zero() {
                continue;
            }
            let f = a[r2][col].clone();
            for c in 0..n {
                let v = &a[row][c] * &f;
                a[r2][c] -= v;
            }
        }
        pivot_cols.push(col);
        row += 1;
        if row == n {
            break;
        }
    }
    let free_cols: Vec<usize> = (0..n).filter(|c| !pivot_cols.contains(c)).collect();
    let mut basis = Vec::new();
    for &fc in &free_cols {
        let mut v = vec![BigRational::zero(); n];
        v[fc] = BigRational::one();
        for (r, &pc) in pivot_cols.iter().enumerate() {
            v[pc] = -a[r][fc].clone();
        }
        basis.push(v);
    }
    basis
}

/// Feasibility of a homogeneous system of strict inequalities
/// `sum_j c[j] x[j] > 0`, decided by Fourier–Motzkin elimination.
pub(crate) fn strict_feasible(mut constraints: Vec<Vec<BigRational>>, nvars: usize) -> bool {
    let all_zero = |c: &[BigRational]| c.iter().all(Zero::is_zero);
    if constraints.iter().any(|c| all_zero(c)) {
        return false;
    }
    for var in 0..nvars {
        let mut pos = Vec::new();
        let mut neg = Vec::new();
        let mut rest = Vec::new();
        for c in constraints {
            if c[var].is_positive() {
                pos.push(c);
            } else if c[var].is_negative() {
                neg.push(c);
            } else {
                rest.push(c);
            }
        }
        // If the variable is bounded on one side only, it can absorb the
        // constraints that mention it.
        if !pos.is_empty() && !neg.is_empty() {
            for p in &pos {
                for q in &neg {
                    let wp = -q[var].clone(); // positive
                    let wq = p[var].clone(); // positive
                    let combined: Vec<BigRational> =
                        (0..nvars).map(|j| &p[j] * &wp + &q[j] * &wq).collect();
                    if all_zero(&combined) {
                        return false;
                    }
                    rest.push(combined);
                }
            }
        }
        constraints = rest;
        if constraints.iter().any(|c| all_zero(c)) {
            return false;
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(rows: &[&[i64]]) -> (Vec<BigInt>, usize) {
        let n = rows.len();
        (
            rows.iter()
                .flat_map(|r| r.iter().map(|&v| BigInt::from(v)))
                .collect(),
            n,
        )
    }

    fn rat(rows: &[&[i64]]) -> Vec<Vec<BigRational>> {
        rows.iter()
            .map(|r| {
                r.iter()
                    .map(|&v| BigRational::from(BigInt::from(v)))
                    .collect()
            })
            .collect()
    }

    #[test]
    fn determinants() {
        let (m, n) = big(&[&[2, -1], &[-1, 2]]);
        assert_eq!(bareiss_det(&m, n), BigInt::from(3));
        let (m, n) = big(&[&[2, -2], &[-2, 2]]);
        assert_eq!(bareiss_det(&m, n), BigInt::zero());
        let (m, n) = big(&[&[2, -2, -2], &[-2, 2, -2], &[-2, -2, 2]]);
        assert_eq!(bareiss_det(&m, n), BigInt::from(-32));
        // zero pivot forces a column swap
        let (m, n) = big(&[&[0, 1], &[1, 0]]);
        assert_eq!(bareiss_det(&m, n), BigInt::from(-1));
    }

    #[test]
    fn inertia_of_small_matrices() {
        assert_eq!(inertia(&rat(&[&[2, -1], &[-1, 2]])), (2, 0, 0));
        assert_eq!(inertia(&rat(&[&[2, -2], &[-2, 2]])), (1, 0, 1));
        assert_eq!(
            inertia(&rat(&[&[2, -2, -2], &[-2, 2, -2], &[-2, -2, 2]])),
            (2, 1, 0)
        );
        // zero diagonal exercised via the fold-in branch
        assert_eq!(inertia(&rat(&[&[0, 1], &[1, 0]])), (1, 1, 0));
        assert_eq!(inertia(&rat(&[&[0, 0], &[0, 0]])), (0, 0, 2));
    }

    #[test]
    fn congruence_transform_is_exact() {
        let b = rat(&[&[2, -2, -2], &[-2, 2, -2], &[-2, -2, 2]]);
        let (d, t) = congruence_diagonalize(&b);
        let n = b.len();
        for i in 0..n {
            for j in 0..n {
                let mut acc = BigRational::zero();
                for p in 0..n {
                    for q in 0..n {
                        acc += &t[i][p] * &b[p][q] * &t[j][q];
                    }
                }
                let expect = if i == j {
                    d[i].clone()
                } else {
                    BigRational::zero()
                };
                assert_eq!(acc, expect);
            }
        }
    }

    #[test]
    fn inverse_round_trip() {
        let b = rat(&[&[2, -1, 0], &[-1, 2, -1], &[0, -1, 2]]);
        let inv = invert(&b).unwrap();
        let n = b.len();
        for i in 0..n {
            for j in 0..n {
                let mut acc = BigRational::zero();
                for k in 0..n {
                    acc += &b[i][k] * &inv[k][j];
                }
                let expect = if i == j {
                    BigRational::one()
                } else {
                    BigRational::zero()
                };
                assert_eq!(acc, expect);
            }
        }
    }

    #[test]
    fn kernel_of_affine_matrix() {
        let (m, n) = big(&[&[2, -2], &[-2, 2]]);
        let k = kernel_basis(&m, n);
        assert_eq!(k.len(), 1);
        assert_eq!(k[0][0], k[0][1]);
    }

    #[test]
    fn feasibility() {
        let one = || BigRational::one();
        let neg = || -BigRational::one();
        // x > 0, -x > 0: infeasible
        assert!(!strict_feasible(vec![vec![one()], vec![neg()]], 1));
        // x > 0: feasible
        assert!(strict_feasible(vec![vec![one()]], 1));
        // x > 0, y > 0, x - y > 0: feasible
        assert!(strict_feasible(
            vec![
                vec![one(), BigRational::zero()],
                vec![BigRational::zero(), one()],
                vec![one(), neg()]
            ],
            2
        ));
    }
}
