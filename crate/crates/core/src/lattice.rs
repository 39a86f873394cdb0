//! Definite integral lattices stored as a positive definite Gram matrix.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive};
use serde::{Deserialize, Serialize};

use crate::error::{LatticeError, Result};
use crate::matrix;

/// Coordinates of a lattice vector with respect to the lattice basis.
pub type LatticeVector = Vec<i64>;

/// Basis rows in some ambient space. The actual vectors are
/// `rows[i] / sqrt(norm_divisor)`, so `rows * rows^T = norm_divisor * gram`.
/// For an honest rational embedding `norm_divisor = denominator^2`; codes
/// rescaled by `1/sqrt(2)` or `1/sqrt(8)` use other divisors.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Ambient {
    pub rows: Vec<Vec<i64>>,
    pub denominator: i64,
    pub norm_divisor: i64,
}

impl Ambient {
    pub fn rational(rows: Vec<Vec<i64>>, denominator: i64) -> Self {
        Ambient {
            rows,
            denominator,
            norm_divisor: denominator * denominator,
        }
    }

    pub fn is_rational(&self) -> bool {
        self.norm_divisor == self.denominator * self.denominator
    }

    /// Ambient coordinates (scaled by the denominator) of a lattice vector.
    pub fn embed(&self, v: &[i64]) -> Vec<i64> {
        let dim = self.rows.first().map_or(0, |r| r.len());
        let mut out = vec![0i64; dim];
        for (c, row) in v.iter().zip(&self.rows) {
            if *c != 0 {
                for (o, x) in out.iter_mut().zip(row) {
                    *o += c * x;
                }
            }
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Lattice {
    pub label: String,
    /// +1 for positive definite, -1 for negative definite inputs.
    pub sign: i8,
    gram: Vec<Vec<i64>>,
    pub ambient: Option<Ambient>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Validation {
    pub unimodular: bool,
    pub definite: bool,
    pub even: bool,
    pub det: BigInt,
}

impl Lattice {
    /// Builds a lattice from a positive definite Gram matrix.
    pub fn new(label: impl Into<String>, gram: Vec<Vec<i64>>) -> Result<Self> {
        let l = Lattice {
            label: label.into(),
            sign: 1,
            gram,
            ambient: None,
        };
        l.check_gram()?;
        Ok(l)
    }

    /// Accepts a Gram matrix of either definite sign; negative definite forms
    /// are negated and remembered through `sign`.
    pub fn from_signed_gram(
        label: impl Into<String>,
        gram: Vec<Vec<i64>>,
        sign: i8,
    ) -> Result<Self> {
        if sign != 1 && sign != -1 {
            return Err(LatticeError::Invalid(format!(
                "sign must be +1 or -1, got {sign}"
            )));
        }
        let g = if sign < 0 {
            gram.iter()
                .map(|r| r.iter().map(|x| -x).collect())
                .collect()
        } else {
            gram
        };
        let mut l = Lattice::new(label, g)?;
        l.sign = sign;
        Ok(l)
    }

    /// Lattice spanned by independent ambient rows `rows / sqrt(norm_divisor)`.
    pub fn from_ambient(label: impl Into<String>, ambient: Ambient) -> Result<Self> {
        let n = ambient.rows.len();
        let mut gram = vec![vec![0i64; n]; n];
        for i in 0..n {
            for j in 0..=i {
                let dot: i128 = ambient.rows[i]
                    .iter()
                    .zip(&ambient.rows[j])
                    .map(|(&a, &b)| a as i128 * b as i128)
                    .sum();
                if dot % ambient.norm_divisor as i128 != 0 {
                    return Err(LatticeError::Construction(format!(
                        "rows {i} and {j} have non-integral inner product {dot}/{}",
                        ambient.norm_divisor
                    )));
                }
                let v = dot / ambient.norm_divisor as i128;
                let v = i64::try_from(v).map_err(|_| LatticeError::Overflow(v.to_string()))?;
                gram[i][j] = v;
                gram[j][i] = v;
            }
        }
        let mut l = Lattice::new(label, gram)?;
        l.ambient = Some(ambient);
        Ok(l)
    }

    /// Lattice generated by possibly dependent ambient rows, reduced to a
    /// basis by Hermite normal form.
    pub fn from_generators(
        label: impl Into<String>,
        generators: &[Vec<i64>],
        denominator: i64,
        norm_divisor: i64,
    ) -> Result<Self> {
        let basis = matrix::hnf_basis(&matrix::to_big(generators));
        let rows = matrix::to_i64(&basis)
            .ok_or_else(|| LatticeError::Overflow("hermite basis entry".into()))?;
        Lattice::from_ambient(
            label,
            Ambient {
                rows,
                denominator,
                norm_divisor,
            },
        )
    }

    fn check_gram(&self) -> Result<()> {
        let n = self.gram.len();
        if self.gram.iter().any(|r| r.len() != n) {
            return Err(LatticeError::NotSquare);
        }
        for i in 0..n {
            for j in 0..i {
                if self.gram[i][j] != self.gram[j][i] {
                    return Err(LatticeError::NotSymmetric(i, j));
                }
            }
        }
        let minors = matrix::leading_minors(&matrix::to_big(&self.gram));
        for (k, m) in minors.iter().enumerate() {
            if !m.is_positive() {
                return Err(LatticeError::NotPositiveDefinite {
                    index: k + 1,
                    value: m.to_string(),
                });
            }
        }
        if let Some(a) = &self.ambient {
            if a.rows.len() != n {
                return Err(LatticeError::AmbientMismatch);
            }
        }
        Ok(())
    }

    pub fn rank(&self) -> usize {
        self.gram.len()
    }

    pub fn gram(&self) -> &[Vec<i64>] {
        &self.gram
    }

    /// Gram matrix with the user's sign restored.
    pub fn signed_gram(&self) -> Vec<Vec<i64>> {
        self.gram
            .iter()
            .map(|r| r.iter().map(|x| x * self.sign as i64).collect())
            .collect()
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    pub fn with_sign(mut self, sign: i8) -> Self {
        self.sign = sign;
        self
    }

    pub fn inner(&self, a: &[i64], b: &[i64]) -> i64 {
        let mut s: i128 = 0;
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            let row = &self.gram[i];
            let mut t: i128 = 0;
            for (j, &y) in b.iter().enumerate() {
                t += row[j] as i128 * y as i128;
            }
            s += x as i128 * t;
        }
        i64::try_from(s).expect("inner product overflow")
    }

    pub fn norm(&self, v: &[i64]) -> i64 {
        self.inner(v, v)
    }

    /// `gram * v`, the pairings of `v` with the basis vectors.
    pub fn pairings(&self, v: &[i64]) -> Vec<i64> {
        self.gram
            .iter()
            .map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    pub fn det(&self) -> BigInt {
        matrix::det(&matrix::to_big(&self.gram))
    }

    pub fn is_even(&self) -> bool {
        self.gram.iter().enumerate().all(|(i, r)| r[i] % 2 == 0)
    }

    pub fn is_unimodular(&self) -> bool {
        self.det().abs().is_one()
    }

    pub fn validate(&self) -> Result<Validation> {
        self.check_gram()?;
        if let Some(a) = &self.ambient {
            let n = self.rank();
            for i in 0..n {
                for j in 0..n {
                    let dot: i128 = a.rows[i]
                        .iter()
                        .zip(&a.rows[j])
                        .map(|(&x, &y)| x as i128 * y as i128)
                        .sum();
                    if dot != a.norm_divisor as i128 * self.gram[i][j] as i128 {
                        return Err(LatticeError::AmbientMismatch);
                    }
                }
            }
        }
        let det = self.det();
        Ok(Validation {
            unimodular: det.abs().is_one(),
            definite: true,
            even: self.is_even(),
            det,
        })
    }

    pub fn require_unimodular(&self) -> Result<()> {
        let d = self.det();
        if d.abs().is_one() {
            Ok(())
        } else {
            Err(LatticeError::NotUnimodular(d.to_string()))
        }
    }

    pub fn check_vector(&self, v: &[i64]) -> Result<()> {
        if v.len() != self.rank() {
            return Err(LatticeError::DimensionMismatch {
                got: v.len(),
                rank: self.rank(),
            });
        }
        Ok(())
    }

    /// Sublattice (or change of basis) whose basis rows are `rows`, given in
    /// coordinates of the current basis.
    pub fn sublattice(&self, label: impl Into<String>, rows: &[Vec<i64>]) -> Result<Lattice> {
        let n = rows.len();
        let mut gram = vec![vec![0i64; n]; n];
        let pair: Vec<Vec<i64>> = rows.iter().map(|r| self.pairings(r)).collect();
        for i in 0..n {
            for j in 0..n {
                gram[i][j] = rows[j].iter().zip(&pair[i]).map(|(a, b)| a * b).sum();
            }
        }
        let mut l = Lattice::new(label, gram)?;
        l.sign = self.sign;
        if let Some(a) = &self.ambient {
            l.ambient = Some(Ambient {
                rows: rows.iter().map(|r| a.embed(r)).collect(),
                denominator: a.denominator,
                norm_divisor: a.norm_divisor,
            });
        }
        Ok(l)
    }

    /// Coordinates of an ambient vector (scaled by the ambient denominator),
    /// if it lies in the lattice.
    pub fn coords_of_ambient(&self, x: &[i64]) -> Option<LatticeVector> {
        use num_rational::BigRational;
        let a = self.ambient.as_ref()?;
        let q = |v: i64| BigRational::from_integer(BigInt::from(v));
        let b: Vec<Vec<BigRational>> = a
            .rows
            .iter()
            .map(|r| r.iter().map(|&v| q(v)).collect())
            .collect();
        let xv: Vec<BigRational> = x.iter().map(|&v| q(v)).collect();
        let y = matrix::solve_left(&b, &xv)?;
        y.into_iter()
            .map(|c| {
                if c.is_integer() {
                    c.to_integer().to_i64()
                } else {
                    None
                }
            })
            .collect()
    }
}

/// Orthogonal direct sum with block-diagonal Gram matrix.
pub fn direct_sum(a: &Lattice, b: &Lattice) -> Result<Lattice> {
    if a.sign != b.sign {
        return Err(LatticeError::MixedSigns);
    }
    let (n, m) = (a.rank(), b.rank());
    let mut gram = vec![vec![0i64; n + m]; n + m];
    for i in 0..n {
        gram[i][..n].copy_from_slice(&a.gram[i]);
    }
    for i in 0..m {
        gram[n + i][n..].copy_from_slice(&b.gram[i]);
    }
    let mut l = Lattice::new(join_labels(&a.label, &b.label), gram)?;
    l.sign = a.sign;
    l.ambient = match (&a.ambient, &b.ambient) {
        (Some(x), Some(y)) if x.is_rational() && y.is_rational() => {
            let den = x.denominator.lcm(&y.denominator);
            let (fx, fy) = (den / x.denominator, den / y.denominator);
            let dx = x.rows.first().map_or(0, |r| r.len());
            let dy = y.rows.first().map_or(0, |r| r.len());
            let mut rows = Vec::with_capacity(n + m);
            for r in &x.rows {
                let mut row: Vec<i64> = r.iter().map(|v| v * fx).collect();
                row.extend(std::iter::repeat_n(0, dy));
                rows.push(row);
            }
            for r in &y.rows {
                let mut row = vec![0i64; dx];
                row.extend(r.iter().map(|v| v * fy));
                rows.push(row);
            }
            Some(Ambient::rational(rows, den))
        }
        _ => None,
    };
    Ok(l)
}

fn join_labels(a: &str, b: &str) -> String {
    match (a.is_empty(), b.is_empty()) {
        (true, _) => b.to_string(),
        (_, true) => a.to_string(),
        _ => format!("{a}+{b}"),
    }
}

/// The diagonal lattice of rank `n` with identity Gram matrix.
pub fn diagonal(n: usize) -> Lattice {
    let rows: Vec<Vec<i64>> = (0..n)
        .map(|i| (0..n).map(|j| (i == j) as i64).collect())
        .collect();
    Lattice::from_ambient(format!("Z{n}"), Ambient::rational(rows, 1))
        .expect("identity is definite")
}

/// Is the integer matrix unimodular (determinant +-1)?
pub fn is_unimodular_matrix(u: &[Vec<i64>]) -> bool {
    matrix::det(&matrix::to_big(u)).abs() == BigInt::one()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e8_gram() -> Vec<Vec<i64>> {
        // Dynkin diagram E8 with the branch at the third node
        let mut g = vec![vec![0i64; 8]; 8];
        for i in 0..8 {
            g[i][i] = 2;
        }
        let edges = [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (2, 7)];
        for (a, b) in edges {
            g[a][b] = -1;
            g[b][a] = -1;
        }
        g
    }

    #[test]
    fn identity_validates() {
        let v = diagonal(3).validate().unwrap();
        assert!(v.unimodular && v.definite && !v.even);
        assert_eq!(v.det, BigInt::from(1));
    }

    #[test]
    fn e8_gram_is_even_unimodular() {
        let v = Lattice::new("E8", e8_gram()).unwrap().validate().unwrap();
        assert!(v.unimodular && v.even);
    }

    #[test]
    fn indefinite_gram_names_the_minor() {
        let err = Lattice::new("h", vec![vec![1, 2], vec![2, 1]]).unwrap_err();
        assert_eq!(
            err,
            LatticeError::NotPositiveDefinite {
                index: 2,
                value: "-3".into()
            }
        );
        assert!(matches!(
            Lattice::new("x", vec![vec![1, 0], vec![1, 1]]),
            Err(LatticeError::NotSymmetric(1, 0))
        ));
    }

    #[test]
    fn negative_definite_input_is_normalized() {
        let l = Lattice::from_signed_gram("-Z2", vec![vec![-1, 0], vec![0, -1]], -1).unwrap();
        assert_eq!(l.gram(), &[vec![1, 0], vec![0, 1]]);
        assert_eq!(l.signed_gram(), vec![vec![-1, 0], vec![0, -1]]);
    }

    #[test]
    fn direct_sums() {
        let z2 = direct_sum(&diagonal(1), &diagonal(1)).unwrap();
        assert_eq!(z2.gram(), diagonal(2).gram());
        let e8 = Lattice::new("E8", e8_gram()).unwrap();
        let s = direct_sum(&e8, &diagonal(3)).unwrap();
        assert_eq!(s.rank(), 11);
        assert!(s.is_unimodular());
        let neg = diagonal(1).with_sign(-1);
        assert_eq!(
            direct_sum(&neg, &diagonal(1)),
            Err(LatticeError::MixedSigns)
        );
    }

    #[test]
    fn ambient_coordinates_round_trip() {
        let l = Lattice::from_generators("D2", &[vec![1, 1], vec![1, -1]], 1, 1).unwrap();
        assert_eq!(l.det(), BigInt::from(4));
        let c = l.coords_of_ambient(&[2, 0]).unwrap();
        assert_eq!(l.ambient.as_ref().unwrap().embed(&c), vec![2, 0]);
        assert!(l.coords_of_ambient(&[1, 0]).is_none());
    }
}
