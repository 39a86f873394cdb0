//! Integral LLL reduction of a Gram matrix (delta = 3/4), exact throughout.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::matrix::{self, BigMatrix};

/// Result of reducing a Gram matrix: `basis` rows are the new basis vectors in
/// old coordinates, and `gram = basis * G * basis^T`.
#[derive(Clone, Debug)]
pub struct Reduced {
    pub basis: Vec<Vec<i64>>,
    pub gram: Vec<Vec<i64>>,
}

/// Reduces the positive definite Gram matrix `g`.
pub fn lll_gram(g: &[Vec<i64>]) -> Reduced {
    let n = g.len();
    if n == 0 {
        return Reduced {
            basis: Vec::new(),
            gram: Vec::new(),
        };
    }
    let mut st = State {
        g: matrix::to_big(g),
        h: matrix::identity(n),
        lambda: vec![vec![BigInt::zero(); n]; n],
        d: vec![BigInt::zero(); n + 1],
    };
    st.d[0] = BigInt::one();
    st.d[1] = st.g[0][0].clone();
    let mut k = 1usize;
    let mut kmax = 0usize;
    while k < n {
        if k > kmax {
            kmax = k;
            st.incremental_gs(k);
        }
        loop {
            st.redi(k, k - 1);
            // Lovasz test in integral form: 4 d_k d_{k-2} < 3 d_{k-1}^2 - 4 lambda^2
            let lhs = BigInt::from(4) * &st.d[k + 1] * &st.d[k - 1];
            let lam = &st.lambda[k][k - 1];
            let rhs = BigInt::from(3) * &st.d[k] * &st.d[k] - BigInt::from(4) * lam * lam;
            if lhs < rhs {
                st.swapi(k, kmax);
                k = if k > 1 { k - 1 } else { 1 };
            } else {
                for l in (0..k.saturating_sub(1)).rev() {
                    st.redi(k, l);
                }
                k += 1;
                break;
            }
        }
    }
    Reduced {
        basis: matrix::to_i64(&st.h).expect("LLL transform fits in 64 bits"),
        gram: matrix::to_i64(&st.g).expect("reduced gram fits in 64 bits"),
    }
}

struct State {
    g: BigMatrix,
    h: BigMatrix,
    lambda: BigMatrix,
    // d[i+1] is the i-th Gram determinant; d[0] = 1
    d: Vec<BigInt>,
}

impl State {
    fn incremental_gs(&mut self, k: usize) {
        for j in 0..=k {
            let mut u = self.g[k][j].clone();
            for i in 0..j {
                u = (&self.d[i + 1] * &u - &self.lambda[k][i] * &self.lambda[j][i]) / &self.d[i];
            }
            if j < k {
                self.lambda[k][j] = u;
            } else {
                assert!(!u.is_zero(), "gram matrix is singular");
                self.d[k + 1] = u;
            }
        }
    }

    fn redi(&mut self, k: usize, l: usize) {
        let two_lam = &self.lambda[k][l] * BigInt::from(2);
        if two_lam.abs() <= self.d[l + 1] {
            return;
        }
        let dl = self.d[l + 1].clone();
        // nearest integer to lambda / d_l
        let q = (two_lam + &dl).div_floor(&(&dl * BigInt::from(2)));
        self.sub_row(k, l, &q);
        self.lambda[k][l] -= &q * &dl;
        for i in 0..l {
            let t = &q * &self.lambda[l][i];
            self.lambda[k][i] -= t;
        }
    }

    /// b_k <- b_k - q b_l, updating the transform and the Gram matrix.
    fn sub_row(&mut self, k: usize, l: usize, q: &BigInt) {
        let n = self.g.len();
        for j in 0..n {
            let t = q * &self.h[l][j];
            self.h[k][j] -= t;
        }
        let gkl = self.g[k][l].clone();
        let gll = self.g[l][l].clone();
        for j in 0..n {
            if j == k {
                continue;
            }
            let t = q * &self.g[l][j];
            self.g[k][j] -= t;
            self.g[j][k] = self.g[k][j].clone();
        }
        let gkk = &self.g[k][k] - BigInt::from(2) * q * &gkl + q * q * &gll;
        self.g[k][k] = gkk;
    }

    fn swapi(&mut self, k: usize, kmax: usize) {
        self.h.swap(k, k - 1);
        self.g.swap(k, k - 1);
        for row in self.g.iter_mut() {
            row.swap(k, k - 1);
        }
        for j in 0..k.saturating_sub(1) {
            let t = self.lambda[k][j].clone();
            self.lambda[k][j] = self.lambda[k - 1][j].clone();
            self.lambda[k - 1][j] = t;
        }
        let lam = self.lambda[k][k - 1].clone();
        let b = (&self.d[k - 1] * &self.d[k + 1] + &lam * &lam) / &self.d[k];
        for i in k + 1..=kmax {
            let t = self.lambda[i][k].clone();
            self.lambda[i][k] = (&self.d[k + 1] * &self.lambda[i][k - 1] - &lam * &t) / &self.d[k];
            self.lambda[i][k - 1] = (&b * &t + &lam * &self.lambda[i][k]) / &self.d[k + 1];
        }
        self.d[k] = b;
    }
}

/// Ratio of a reduced basis' diagonal product to the determinant, a cheap
/// quality figure used by tests.
pub fn orthogonality_defect(gram: &[Vec<i64>]) -> f64 {
    let det = matrix::det(&matrix::to_big(gram))
        .to_f64()
        .unwrap_or(f64::INFINITY);
    let prod: f64 = gram.iter().enumerate().map(|(i, r)| r[i] as f64).product();
    (prod / det).sqrt()
}
