//! The linear forms `L_z`, the sublattice `L^w`, and the half-sum `eta`.
//!
//! `eta(w, a) = 1/2 sum_{z in Min(w + 2L)} (-1)^{((z+w)/2)^2} L_z(a)`. Since
//! `z^2 = w^2 = N` on the minimal set, the sign exponent is `(N + z.w)/2`.
//! Replacing `z` by `-z` multiplies a term by `(-1)^{N + m}`, so `eta`
//! vanishes for odd `N + m` and is otherwise a sum over one vector of each
//! `+-` pair.

use serde::{Deserialize, Serialize};

use crate::coset::{coset_minima, CosetClass};
use crate::error::{LatticeError, Result};
use crate::lattice::{Lattice, LatticeVector};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FactorBasis {
    /// A vector of the `lw_basis` of `L^w`.
    Lw,
    /// A vector of the lattice basis.
    Full,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Factor {
    pub basis: FactorBasis,
    pub index: usize,
}

/// A monomial `a` in `Sym^{m0}(L^w) (x) Sym^{m1}(L)`, factors sorted.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SymMonomial {
    pub factors: Vec<Factor>,
    pub m0: usize,
    pub m1: usize,
}

impl SymMonomial {
    pub fn empty() -> Self {
        SymMonomial {
            factors: Vec::new(),
            m0: 0,
            m1: 0,
        }
    }

    pub fn new(lw: &[usize], full: &[usize]) -> Self {
        let mut factors: Vec<Factor> = lw
            .iter()
            .map(|&index| Factor {
                basis: FactorBasis::Lw,
                index,
            })
            .chain(full.iter().map(|&index| Factor {
                basis: FactorBasis::Full,
                index,
            }))
            .collect();
        factors.sort();
        SymMonomial {
            factors,
            m0: lw.len(),
            m1: full.len(),
        }
    }

    pub fn degree(&self) -> usize {
        self.m0 + self.m1
    }

    fn check(&self) -> Result<()> {
        let lw = self
            .factors
            .iter()
            .filter(|f| f.basis == FactorBasis::Lw)
            .count();
        if lw != self.m0 || self.factors.len() != self.m0 + self.m1 {
            return Err(LatticeError::Invalid(
                "monomial split does not match its factors".into(),
            ));
        }
        Ok(())
    }
}

/// Basis of `L^w = {x : w.x even}`: basis vectors pairing evenly with `w`,
/// the others corrected by the first odd one `e_p`, and `2 e_p` last.
pub fn lw_basis(l: &Lattice, w: &[i64]) -> Vec<LatticeVector> {
    let n = l.rank();
    let pw = l.pairings(w);
    let unit = |i: usize, s: i64| {
        let mut v = vec![0; n];
        v[i] = s;
        v
    };
    let Some(p) = (0..n).find(|&i| pw[i] & 1 != 0) else {
        return (0..n).map(|i| unit(i, 1)).collect();
    };
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        if i == p {
            continue;
        }
        let mut v = unit(i, 1);
        if pw[i] & 1 != 0 {
            v[p] -= 1;
        }
        out.push(v);
    }
    out.push(unit(p, 2));
    out
}

/// `L_z(a_1 ... a_m) = (z.a_1) ... (z.a_m)`; 1 for the empty product.
pub fn l_form(l: &Lattice, z: &[i64], factors: &[LatticeVector]) -> Result<i128> {
    let pz = l.pairings(z);
    let mut acc: i128 = 1;
    for a in factors {
        let d: i128 = pz.iter().zip(a).map(|(x, y)| *x as i128 * *y as i128).sum();
        acc = acc
            .checked_mul(d)
            .ok_or_else(|| LatticeError::Overflow("linear form".into()))?;
    }
    Ok(acc)
}

/// The factors of `a` as lattice vectors, resolving `Lw` indices against
/// `lw_basis(l, w)`.
pub fn monomial_vectors(l: &Lattice, w: &[i64], a: &SymMonomial) -> Result<Vec<LatticeVector>> {
    a.check()?;
    let n = l.rank();
    let lw = lw_basis(l, w);
    a.factors
        .iter()
        .map(|f| {
            if f.index >= n {
                return Err(LatticeError::Invalid(format!(
                    "factor index {} out of range",
                    f.index
                )));
            }
            Ok(match f.basis {
                FactorBasis::Lw => lw[f.index].clone(),
                FactorBasis::Full => {
                    let mut v = vec![0; n];
                    v[f.index] = 1;
                    v
                }
            })
        })
        .collect()
}

/// Sign `(-1)^{((z+w)/2)^2}` for `z` in the minimal set of norm `n`.
pub fn eta_sign(norm: i64, zw: i64) -> i128 {
    debug_assert_eq!((norm + zw) % 2, 0);
    if ((norm + zw) / 2).rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

/// Minimal set of the class of `w`, after checking that `w` is nonzero and
/// extremal.
pub fn extremal_min_set(l: &Lattice, w: &[i64]) -> Result<Vec<LatticeVector>> {
    l.check_vector(w)?;
    if w.iter().all(|&x| x == 0) {
        return Err(LatticeError::Precondition("w must be nonzero".into()));
    }
    let c = CosetClass::of(w);
    if c.is_zero() {
        return Err(LatticeError::Precondition(
            "w lies in 2L, so its class minimum is 0 and w is not extremal".into(),
        ));
    }
    let min = coset_minima(l, c)?;
    if l.norm(w) != min.min_norm {
        return Err(LatticeError::Precondition(format!(
            "w has norm {} but its class has minimum {}",
            l.norm(w),
            min.min_norm
        )));
    }
    Ok(min.vectors)
}

/// `eta(L, w, a)` evaluated by its definition over the given minimal set.
pub fn eta_with_min(
    l: &Lattice,
    w: &[i64],
    factors: &[LatticeVector],
    min: &[LatticeVector],
) -> Result<i128> {
    let norm = l.norm(w);
    let pw = l.pairings(w);
    let mut s: i128 = 0;
    for z in min {
        let zw: i64 = z.iter().zip(&pw).map(|(a, b)| a * b).sum();
        let t = l_form(l, z, factors)?;
        s = s
            .checked_add(eta_sign(norm, zw) * t)
            .ok_or_else(|| LatticeError::Overflow("eta".into()))?;
    }
    debug_assert_eq!(s % 2, 0);
    Ok(s / 2)
}

/// `eta(L, w, a)` for nonzero extremal `w`. Factors from the `L^w` basis pair
/// evenly with every vector of the minimal set.
pub fn eta(l: &Lattice, w: &[i64], a: &SymMonomial) -> Result<i128> {
    let min = extremal_min_set(l, w)?;
    let f = monomial_vectors(l, w, a)?;
    eta_with_min(l, w, &f, &min)
}

/// One vector from each `+-` pair: those whose first nonzero entry is
/// positive.
pub fn pair_representatives(min: &[LatticeVector]) -> Vec<LatticeVector> {
    min.iter()
        .filter(|v| v.iter().find(|&&x| x != 0).is_some_and(|&x| x > 0))
        .cloned()
        .collect()
}

/// `sum L_z(a)` over one vector of each pair, without signs: the quantity
/// whose `2^{-m}` multiple decides the mod 2 invariant.
pub fn pair_sum_with_min(
    l: &Lattice,
    factors: &[LatticeVector],
    min: &[LatticeVector],
) -> Result<i128> {
    let mut s: i128 = 0;
    for z in pair_representatives(min) {
        s = s
            .checked_add(l_form(l, &z, factors)?)
            .ok_or_else(|| LatticeError::Overflow("pair sum".into()))?;
    }
    Ok(s)
}

pub fn pair_sum(l: &Lattice, w: &[i64], a: &SymMonomial) -> Result<i128> {
    let min = extremal_min_set(l, w)?;
    let f = monomial_vectors(l, w, a)?;
    pair_sum_with_min(l, &f, &min)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::diagonal;

    #[test]
    fn l_form_examples() {
        let z2 = diagonal(2);
        assert_eq!(l_form(&z2, &[5, 7], &[]).unwrap(), 1);
        assert_eq!(l_form(&z2, &[1, 1], &[vec![1, 0], vec![0, 1]]).unwrap(), 1);
        assert_eq!(l_form(&z2, &[2, 0], &[vec![1, 0], vec![1, 0]]).unwrap(), 4);
    }

    #[test]
    fn lw_basis_examples() {
        let z2 = diagonal(2);
        assert_eq!(lw_basis(&z2, &[1, 0]), vec![vec![0, 1], vec![2, 0]]);
        assert_eq!(lw_basis(&z2, &[2, 4]), vec![vec![1, 0], vec![0, 1]]);
    }

    #[test]
    fn eta_on_unit_vector() {
        // Min(e1 + 2Z^2) = {+-e1}; signs (-1)^1 and (-1)^0 cancel
        let z2 = diagonal(2);
        assert_eq!(eta(&z2, &[1, 0], &SymMonomial::empty()).unwrap(), 0);
        assert_eq!(pair_sum(&z2, &[1, 0], &SymMonomial::empty()).unwrap(), 1);
        // with one full factor e1: N + m even
        let a = SymMonomial::new(&[], &[0]);
        assert_eq!(eta(&z2, &[1, 0], &a).unwrap(), -1);
    }

    #[test]
    fn non_extremal_rejected() {
        let z1 = diagonal(1);
        assert!(eta(&z1, &[3], &SymMonomial::empty()).is_err());
        assert!(eta(&z1, &[0], &SymMonomial::empty()).is_err());
    }
}
