//! Discriminant groups `L*/L` and index-2 integral overlattices.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{LatticeError, Result};
use crate::lattice::{Ambient, Lattice};
use crate::matrix::{self, BigMatrix};

/// A dual vector `numerators / denominator` in lattice coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DualVector {
    #[serde(serialize_with = "ser_big_vec")]
    pub numerators: Vec<BigInt>,
    #[serde(serialize_with = "ser_big")]
    pub denominator: BigInt,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DiscriminantGroup {
    #[serde(serialize_with = "ser_big_vec")]
    pub invariant_factors: Vec<BigInt>,
    pub generator_lifts: Vec<DualVector>,
    #[serde(serialize_with = "ser_rat_vec")]
    pub quadratic_values: Vec<BigRational>,
}

impl DiscriminantGroup {
    pub fn order(&self) -> BigInt {
        self.invariant_factors.iter().product()
    }

    pub fn is_trivial(&self) -> bool {
        self.invariant_factors.is_empty()
    }
}

fn ser_big<S: serde::Serializer>(x: &BigInt, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&x.to_string())
}

fn ser_big_vec<S: serde::Serializer>(x: &[BigInt], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(x.iter().map(|v| v.to_string()))
}

fn ser_rat_vec<S: serde::Serializer>(
    x: &[BigRational],
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(x.iter().map(|v| v.to_string()))
}

fn quad(g: &BigMatrix, y: &[BigInt]) -> BigInt {
    let mut s = BigInt::zero();
    for i in 0..y.len() {
        if y[i].is_zero() {
            continue;
        }
        let mut t = BigInt::zero();
        for j in 0..y.len() {
            t += &g[i][j] * &y[j];
        }
        s += &y[i] * t;
    }
    s
}

/// With `u G v = diag(d)`, the columns `v e_i / d_i` generate `L*/L`.
pub fn discriminant_group(l: &Lattice) -> DiscriminantGroup {
    let g = matrix::to_big(l.gram());
    let (d, _u, v) = matrix::smith(&g);
    let n = l.rank();
    let mut out = DiscriminantGroup {
        invariant_factors: Vec::new(),
        generator_lifts: Vec::new(),
        quadratic_values: Vec::new(),
    };
    for (i, di) in d.iter().enumerate() {
        if *di <= BigInt::one() {
            continue;
        }
        let col: Vec<BigInt> = (0..n).map(|r| v[r][i].clone()).collect();
        let q = BigRational::new(quad(&g, &col), di * di);
        out.invariant_factors.push(di.clone());
        out.generator_lifts.push(DualVector {
            numerators: col,
            denominator: di.clone(),
        });
        out.quadratic_values.push(q);
    }
    out
}

/// All integral lattices containing `l` with index 2, as `L + Z h` for the
/// order-2 classes `h` of `L*/L` with integral norm.
pub fn index2_overlattices(l: &Lattice) -> Result<Vec<Lattice>> {
    let det = l.det().abs();
    if !det.is_multiple_of(&BigInt::from(4)) {
        return Err(LatticeError::Precondition(format!(
            "determinant {det} is not divisible by 4"
        )));
    }
    let n = l.rank();
    let g = matrix::to_big(l.gram());
    let (d, _u, v) = matrix::smith(&g);
    // columns of v whose factor is even give h = v_i / 2
    let halves: Vec<Vec<BigInt>> = (0..n)
        .filter(|&i| d[i].is_even() && !d[i].is_zero())
        .map(|i| (0..n).map(|r| v[r][i].clone()).collect())
        .collect();
    let k = halves.len();
    if k > 20 {
        return Err(LatticeError::Precondition(format!(
            "2-rank {k} of the discriminant group is too large"
        )));
    }
    let mut out = Vec::new();
    for mask in 1u32..(1 << k) {
        let mut y = vec![BigInt::zero(); n];
        for (b, col) in halves.iter().enumerate() {
            if mask >> b & 1 == 1 {
                for (yi, ci) in y.iter_mut().zip(col) {
                    *yi += ci;
                }
            }
        }
        for yi in y.iter_mut() {
            *yi = yi.mod_floor(&BigInt::from(2));
        }
        // h = y/2 has norm y^T G y / 4
        if !quad(&g, &y).is_multiple_of(&BigInt::from(4)) {
            continue;
        }
        out.push(glue_half(l, &y, out.len())?);
    }
    Ok(out)
}

/// The lattice `L + Z (y/2)` in coordinates of `L/2`.
fn glue_half(l: &Lattice, y: &[BigInt], idx: usize) -> Result<Lattice> {
    let n = l.rank();
    let mut gens: BigMatrix = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| BigInt::from(if i == j { 2 } else { 0 }))
                .collect()
        })
        .collect();
    gens.push(y.to_vec());
    let basis = matrix::hnf_basis(&gens);
    let basis =
        matrix::to_i64(&basis).ok_or_else(|| LatticeError::Overflow("glue basis".into()))?;
    let g = l.gram();
    let mut gram = vec![vec![0i64; n]; n];
    for i in 0..n {
        for j in 0..n {
            let mut s: i128 = 0;
            for a in 0..n {
                for b in 0..n {
                    s += basis[i][a] as i128 * g[a][b] as i128 * basis[j][b] as i128;
                }
            }
            if s % 4 != 0 {
                return Err(LatticeError::Construction(
                    "overlattice is not integral".into(),
                ));
            }
            gram[i][j] = (s / 4)
                .to_i64()
                .ok_or_else(|| LatticeError::Overflow(s.to_string()))?;
        }
    }
    let label = format!("{}+glue{}", l.label, idx);
    let mut m = Lattice::new(label, gram)?;
    m.sign = l.sign;
    if let Some(a) = &l.ambient {
        if a.is_rational() {
            let rows: Vec<Vec<i64>> = basis.iter().map(|r| a.embed(r)).collect();
            m.ambient = Some(reduce_ambient(rows, a.denominator * 2));
        }
    }
    Ok(m)
}

/// Cancels common factors between the rows and the denominator.
pub(crate) fn reduce_ambient(mut rows: Vec<Vec<i64>>, mut den: i64) -> Ambient {
    let mut gcd = den;
    for r in &rows {
        for &x in r {
            gcd = gcd.gcd(&x);
        }
    }
    if gcd > 1 {
        for r in rows.iter_mut() {
            for x in r.iter_mut() {
                *x /= gcd;
            }
        }
        den /= gcd;
    }
    Ambient::rational(rows, den)
}
