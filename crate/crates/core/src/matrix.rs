//! Exact integer and rational linear algebra on small dense matrices.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub type BigMatrix = Vec<Vec<BigInt>>;

pub fn to_big(m: &[Vec<i64>]) -> BigMatrix {
    m.iter()
        .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
        .collect()
}

pub fn to_i64(m: &BigMatrix) -> Option<Vec<Vec<i64>>> {
    m.iter()
        .map(|r| r.iter().map(|x| x.to_i64()).collect::<Option<Vec<_>>>())
        .collect()
}

pub fn identity(n: usize) -> BigMatrix {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        BigInt::one()
                    } else {
                        BigInt::zero()
                    }
                })
                .collect()
        })
        .collect()
}

pub fn transpose<T: Clone>(m: &[Vec<T>]) -> Vec<Vec<T>> {
    if m.is_empty() {
        return Vec::new();
    }
    (0..m[0].len())
        .map(|j| m.iter().map(|r| r[j].clone()).collect())
        .collect()
}

pub fn mul(a: &BigMatrix, b: &BigMatrix) -> BigMatrix {
    let inner = b.len();
    let cols = if inner == 0 { 0 } else { b[0].len() };
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| {
                    let mut s = BigInt::zero();
                    for k in 0..inner {
                        if !row[k].is_zero() && !b[k][j].is_zero() {
                            s += &row[k] * &b[k][j];
                        }
                    }
                    s
                })
                .collect()
        })
        .collect()
}

/// Fraction-free elimination without pivoting. Returns the leading principal
/// minors in order, stopping at the first zero one.
pub fn leading_minors(m: &BigMatrix) -> Vec<BigInt> {
    let n = m.len();
    let mut a = m.clone();
    let mut minors = Vec::with_capacity(n);
    let mut prev = BigInt::one();
    for k in 0..n {
        let pivot = a[k][k].clone();
        minors.push(pivot.clone());
        if pivot.is_zero() {
            break;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&pivot * &a[i][j] - &a[i][k] * &a[k][j]) / &prev;
                a[i][j] = v;
            }
        }
        prev = pivot;
    }
    minors
}

/// Determinant by Bareiss elimination with row pivoting.
pub fn det(m: &BigMatrix) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut a = m.clone();
    let mut sign = 1;
    let mut prev = BigInt::one();
    for k in 0..n {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(i, k);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&a[k][k] * &a[i][j] - &a[i][k] * &a[k][j]) / &prev;
                a[i][j] = v;
            }
        }
        prev = a[k][k].clone();
    }
    if sign < 0 {
        -prev
    } else {
        prev
    }
}

/// Row Hermite normal form with a unimodular transform `t` such that
/// `t * rows = h`. Rows of `h` are upper echelon with positive pivots and
/// entries above each pivot reduced into `[0, pivot)`.
pub fn hnf_with_transform(rows: &BigMatrix) -> (BigMatrix, BigMatrix) {
    let m = rows.len();
    let n = if m == 0 { 0 } else { rows[0].len() };
    let mut h = rows.clone();
    let mut t = identity(m);
    let mut r = 0;
    for c in 0..n {
        if r == m {
            break;
        }
        loop {
            // smallest nonzero entry in column c among rows r..
            let mut best: Option<usize> = None;
            for i in r..m {
                if !h[i][c].is_zero() && best.is_none_or(|b| h[i][c].abs() < h[b][c].abs()) {
                    best = Some(i);
                }
            }
            let Some(b) = best else { break };
            h.swap(r, b);
            t.swap(r, b);
            let mut done = true;
            for i in r + 1..m {
                if h[i][c].is_zero() {
                    continue;
                }
                let q = h[i][c].div_floor(&h[r][c]);
                if !q.is_zero() {
                    let (hr, tr) = (h[r].clone(), t[r].clone());
                    for j in 0..n {
                        h[i][j] -= &q * &hr[j];
                    }
                    for j in 0..m {
                        t[i][j] -= &q * &tr[j];
                    }
                }
                if !h[i][c].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if r < m && !h[r][c].is_zero() {
            if h[r][c].is_negative() {
                for x in h[r].iter_mut() {
                    *x = -x.clone();
                }
                for x in t[r].iter_mut() {
                    *x = -x.clone();
                }
            }
            let (hr, tr) = (h[r].clone(), t[r].clone());
            for i in 0..r {
                let q = h[i][c].div_floor(&hr[c]);
                if !q.is_zero() {
                    for j in 0..n {
                        h[i][j] -= &q * &hr[j];
                    }
                    for j in 0..m {
                        t[i][j] -= &q * &tr[j];
                    }
                }
            }
            r += 1;
        }
    }
    (h, t)
}

/// Nonzero rows of the Hermite normal form: a basis of the row lattice.
pub fn hnf_basis(rows: &BigMatrix) -> BigMatrix {
    let (h, _) = hnf_with_transform(rows);
    h.into_iter()
        .filter(|r| r.iter().any(|x| !x.is_zero()))
        .collect()
}

/// Basis of the integer kernel `{x : a x = 0}`, returned as rows.
pub fn integer_kernel(a: &BigMatrix, n: usize) -> BigMatrix {
    if a.is_empty() {
        return identity(n);
    }
    let at = transpose(a);
    let (h, t) = hnf_with_transform(&at);
    h.iter()
        .zip(t)
        .filter(|(row, _)| row.iter().all(|x| x.is_zero()))
        .map(|(_, tr)| tr)
        .collect()
}

/// Smith normal form `u * a * v = diag(d)`, with `d` nonnegative and each
/// entry dividing the next. Returns `(d, u, v)`.
pub fn smith(a: &BigMatrix) -> (Vec<BigInt>, BigMatrix, BigMatrix) {
    let m = a.len();
    let n = if m == 0 { 0 } else { a[0].len() };
    let mut s = a.clone();
    let mut u = identity(m);
    let mut v = identity(n);
    let k = m.min(n);
    for t in 0..k {
        loop {
            let mut best: Option<(usize, usize)> = None;
            for i in t..m {
                for j in t..n {
                    if !s[i][j].is_zero()
                        && best.is_none_or(|(bi, bj)| s[i][j].abs() < s[bi][bj].abs())
                    {
                        best = Some((i, j));
                    }
                }
            }
            let Some((bi, bj)) = best else {
                return finish_smith(s, u, v, k);
            };
            s.swap(t, bi);
            u.swap(t, bi);
            for row in s.iter_mut() {
                row.swap(t, bj);
            }
            for row in v.iter_mut() {
                row.swap(t, bj);
            }
            let mut clean = true;
            for i in t + 1..m {
                if s[i][t].is_zero() {
                    continue;
                }
                let q = s[i][t].div_floor(&s[t][t]);
                let (st, ut) = (s[t].clone(), u[t].clone());
                for j in 0..n {
                    s[i][j] -= &q * &st[j];
                }
                for j in 0..m {
                    u[i][j] -= &q * &ut[j];
                }
                if !s[i][t].is_zero() {
                    clean = false;
                }
            }
            for j in t + 1..n {
                if s[t][j].is_zero() {
                    continue;
                }
                let q = s[t][j].div_floor(&s[t][t]);
                for i in 0..m {
                    let x = &q * &s[i][t];
                    s[i][j] -= x;
                }
                for i in 0..n {
                    let x = &q * &v[i][t];
                    v[i][j] -= x;
                }
                if !s[t][j].is_zero() {
                    clean = false;
                }
            }
            if !clean {
                continue;
            }
            // divisibility: fold a bad row into row t and retry
            let mut bad = None;
            'outer: for i in t + 1..m {
                for j in t + 1..n {
                    if !(&s[i][j] % &s[t][t]).is_zero() {
                        bad = Some(i);
                        break 'outer;
                    }
                }
            }
            match bad {
                Some(i) => {
                    let (si, ui) = (s[i].clone(), u[i].clone());
                    for j in 0..n {
                        s[t][j] += &si[j];
                    }
                    for j in 0..m {
                        u[t][j] += &ui[j];
                    }
                }
                None => break,
            }
        }
        if s[t][t].is_negative() {
            for x in s[t].iter_mut() {
                *x = -x.clone();
            }
            for x in u[t].iter_mut() {
                *x = -x.clone();
            }
        }
    }
    finish_smith(s, u, v, k)
}

fn finish_smith(
    s: BigMatrix,
    u: BigMatrix,
    v: BigMatrix,
    k: usize,
) -> (Vec<BigInt>, BigMatrix, BigMatrix) {
    let d = (0..k).map(|i| s[i][i].abs()).collect();
    (d, u, v)
}

/// Rank over the rationals.
pub fn rank(rows: &BigMatrix) -> usize {
    hnf_basis(rows).len()
}

/// Solve `y^T b = x` for rational `y`, where the rows of `b` are independent.
pub fn solve_left(b: &[Vec<BigRational>], x: &[BigRational]) -> Option<Vec<BigRational>> {
    let r = b.len();
    let n = x.len();
    // augmented system: columns of b^T | x
    let mut a: Vec<Vec<BigRational>> = (0..n)
        .map(|j| {
            let mut row: Vec<BigRational> = (0..r).map(|i| b[i][j].clone()).collect();
            row.push(x[j].clone());
            row
        })
        .collect();
    let mut piv_cols = Vec::new();
    let mut row = 0;
    for c in 0..r {
        let Some(p) = (row..n).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(row, p);
        let inv = a[row][c].recip();
        for j in c..=r {
            a[row][j] = &a[row][j] * &inv;
        }
        for i in 0..n {
            if i != row && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                for j in c..=r {
                    let t = &f * &a[row][j];
                    a[i][j] -= t;
                }
            }
        }
        piv_cols.push(c);
        row += 1;
    }
    if piv_cols.len() != r {
        return None;
    }
    if a[row..].iter().any(|rw| !rw[r].is_zero()) {
        return None;
    }
    let mut y = vec![BigRational::zero(); r];
    for (i, &c) in piv_cols.iter().enumerate() {
        y[c] = a[i][r].clone();
    }
    Some(y)
}

/// Inverse of a nonsingular integer matrix as rationals.
pub fn inverse(m: &BigMatrix) -> Option<Vec<Vec<BigRational>>> {
    let n = m.len();
    let mut a: Vec<Vec<BigRational>> = m
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut row: Vec<BigRational> = r
                .iter()
                .map(|x| BigRational::from_integer(x.clone()))
                .collect();
            row.extend((0..n).map(|j| {
                if i == j {
                    BigRational::one()
                } else {
                    BigRational::zero()
                }
            }));
            row
        })
        .collect();
    for c in 0..n {
        let p = (c..n).find(|&i| !a[i][c].is_zero())?;
        a.swap(c, p);
        let inv = a[c][c].recip();
        for j in 0..2 * n {
            a[c][j] = &a[c][j] * &inv;
        }
        for i in 0..n {
            if i != c && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                for j in 0..2 * n {
                    let t = &f * &a[c][j];
                    a[i][j] -= t;
                }
            }
        }
    }
    Some(a.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Inverse of a unimodular integer matrix.
pub fn unimodular_inverse(m: &BigMatrix) -> Option<BigMatrix> {
    let inv = inverse(m)?;
    inv.into_iter()
        .map(|r| {
            r.into_iter()
                .map(|x| {
                    if x.is_integer() {
                        Some(x.to_integer())
                    } else {
                        None
                    }
                })
                .collect()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(m: &[&[i64]]) -> BigMatrix {
        m.iter()
            .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
            .collect()
    }

    #[test]
    fn det_matches_cofactor_expansion() {
        let m = big(&[&[2, -1, 0], &[-1, 2, -1], &[0, -1, 2]]);
        assert_eq!(det(&m), BigInt::from(4));
        let s = big(&[&[0, 1], &[1, 0]]);
        assert_eq!(det(&s), BigInt::from(-1));
    }

    #[test]
    fn leading_minors_of_a3() {
        let m = big(&[&[2, -1, 0], &[-1, 2, -1], &[0, -1, 2]]);
        let lm: Vec<i64> = leading_minors(&m)
            .iter()
            .map(|x| x.to_i64().unwrap())
            .collect();
        assert_eq!(lm, vec![2, 3, 4]);
    }

    #[test]
    fn hnf_of_repetition_code_lift() {
        let rows = big(&[&[2, 0], &[0, 2], &[1, 1]]);
        let b = hnf_basis(&rows);
        assert_eq!(b, big(&[&[1, 1], &[0, 2]]));
        let (h, t) = hnf_with_transform(&rows);
        assert_eq!(mul(&t, &rows), h);
    }

    #[test]
    fn kernel_of_sum_functional() {
        let a = big(&[&[1, 1, 1]]);
        let k = integer_kernel(&a, 3);
        assert_eq!(k.len(), 2);
        for r in &k {
            let s: BigInt = r.iter().sum();
            assert!(s.is_zero());
        }
        assert_eq!(rank(&k), 2);
    }

    #[test]
    fn smith_of_d4_gram() {
        let g = big(&[
            &[2, -1, 0, 0],
            &[-1, 2, -1, -1],
            &[0, -1, 2, 0],
            &[0, -1, 0, 2],
        ]);
        let (d, u, v) = smith(&g);
        let d: Vec<i64> = d.iter().map(|x| x.to_i64().unwrap()).collect();
        assert_eq!(d, vec![1, 1, 2, 2]);
        let prod = mul(&mul(&u, &g), &v);
        for i in 0..4 {
            for j in 0..4 {
                let want = if i == j {
                    BigInt::from(d[i])
                } else {
                    BigInt::zero()
                };
                assert_eq!(prod[i][j], want);
            }
        }
    }

    #[test]
    fn solve_left_recovers_coefficients() {
        let q = |a: i64, b: i64| BigRational::new(a.into(), b.into());
        let b = vec![vec![q(1, 2), q(1, 2)], vec![q(0, 1), q(1, 1)]];
        let x = vec![q(3, 2), q(7, 2)];
        let y = solve_left(&b, &x).unwrap();
        assert_eq!(y, vec![q(3, 1), q(2, 1)]);
    }
}
