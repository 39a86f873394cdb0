//! Classes in L/2L, their minimal vectors, and the characteristic class.

use serde::Serialize;

use crate::enumerate::{parity_bits, Budget, Enumerator, Flow};
use crate::error::{LatticeError, Result};
use crate::lattice::{Lattice, LatticeVector};

/// A class of `L/2L`: bit `i` is the parity of coordinate `i`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct CosetClass {
    pub bits: u64,
}

impl CosetClass {
    pub fn of(v: &[i64]) -> Self {
        CosetClass {
            bits: parity_bits(v),
        }
    }

    pub fn zero() -> Self {
        CosetClass { bits: 0 }
    }

    pub fn is_zero(&self) -> bool {
        self.bits == 0
    }

    /// The 0/1 representative.
    pub fn lift(&self, n: usize) -> LatticeVector {
        (0..n).map(|i| (self.bits >> i & 1) as i64).collect()
    }

    pub fn to_bit_string(&self, n: usize) -> String {
        (0..n)
            .map(|i| if self.bits >> i & 1 == 1 { '1' } else { '0' })
            .collect()
    }

    pub fn parse(s: &str) -> Option<Self> {
        let mut bits = 0u64;
        for (i, ch) in s.chars().enumerate() {
            match ch {
                '0' => {}
                '1' => bits |= 1 << i,
                _ => return None,
            }
        }
        Some(CosetClass { bits })
    }
}

/// The set `Min(c)` of a class `c`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MinimaResult {
    pub coset: CosetClass,
    pub min_norm: i64,
    pub vectors: Vec<LatticeVector>,
    pub exhaustive: bool,
}

pub fn coset_minima(l: &Lattice, c: CosetClass) -> Result<MinimaResult> {
    coset_minima_with(&Enumerator::new(l), c, &Budget::unlimited())
}

/// Shifted-ellipsoid search for the minimal vectors of `c`. The radius starts
/// at the norm of the 0/1 lift (in reduced coordinates) and shrinks to the
/// best norm seen.
pub fn coset_minima_with(e: &Enumerator, c: CosetClass, budget: &Budget) -> Result<MinimaResult> {
    let n = e.rank();
    if c.is_zero() {
        return Ok(MinimaResult {
            coset: c,
            min_norm: 0,
            vectors: vec![vec![0; n]],
            exhaustive: true,
        });
    }
    let mut best = i64::MAX;
    let mut found: Vec<Vec<i64>> = Vec::new();
    let res = shifted_search(e, c, budget, |v, nv| {
        if nv < best {
            best = nv;
            found.clear();
        }
        if nv == best {
            found.push(v.to_vec());
        }
        best
    });
    if let Err(LatticeError::Budget { radius, .. }) = res {
        return Err(LatticeError::Budget {
            radius,
            best: Some(best),
        });
    }
    res?;
    let mut vectors: Vec<LatticeVector> = found.iter().map(|x| e.to_original(x)).collect();
    vectors.sort();
    Ok(MinimaResult {
        coset: c,
        min_norm: best,
        vectors,
        exhaustive: true,
    })
}

/// Minimal norm of a class and the number of vectors attaining it, without
/// storing them.
pub fn coset_min_norm(e: &Enumerator, c: CosetClass, budget: &Budget) -> Result<(i64, u64)> {
    if c.is_zero() {
        return Ok((0, 1));
    }
    let mut best = i64::MAX;
    let mut count = 0u64;
    let res = shifted_search(e, c, budget, |_, nv| {
        if nv < best {
            best = nv;
            count = 0;
        }
        if nv == best {
            count += 1;
        }
        best
    });
    if let Err(LatticeError::Budget { radius, .. }) = res {
        return Err(LatticeError::Budget {
            radius,
            best: Some(best),
        });
    }
    res?;
    Ok((best, count))
}

/// Visits vectors `t + 2x` of the class in reduced coordinates. The callback
/// returns the current best norm, which becomes the new radius.
fn shifted_search<F>(e: &Enumerator, c: CosetClass, budget: &Budget, mut f: F) -> Result<()>
where
    F: FnMut(&[i64], i64) -> i64,
{
    let n = e.rank();
    let t = CosetClass {
        bits: e.reduced_class(c.bits),
    }
    .lift(n);
    let start = e.norm_reduced(&t);
    let offset: Vec<f64> = t.iter().map(|&b| b as f64 / 2.0).collect();
    let mut v = vec![0i64; n];
    e.search(&offset, start as f64 / 4.0, false, budget, |x| {
        for i in 0..n {
            v[i] = t[i] + 2 * x[i];
        }
        let nv = e.norm_reduced(&v);
        let best = f(&v, nv);
        Flow::Shrink(best as f64 / 4.0)
    })
}

pub fn is_extremal(l: &Lattice, w: &[i64]) -> Result<bool> {
    l.check_vector(w)?;
    let c = CosetClass::of(w);
    if c.is_zero() {
        return Ok(w.iter().all(|&x| x == 0) || l.norm(w) == 0);
    }
    let (min, _) = coset_min_norm(&Enumerator::new(l), c, &Budget::unlimited())?;
    Ok(l.norm(w) == min)
}

/// Solves `G xi = diag(G)` over the field with two elements.
pub fn characteristic_coset(l: &Lattice) -> Result<CosetClass> {
    let n = l.rank();
    let g = l.gram();
    // augmented rows: bits 0..n coefficients, bit n right-hand side
    let mut rows: Vec<u128> = (0..n)
        .map(|i| {
            let mut r = 0u128;
            for j in 0..n {
                if g[i][j] & 1 != 0 {
                    r |= 1 << j;
                }
            }
            if g[i][i] & 1 != 0 {
                r |= 1 << n;
            }
            r
        })
        .collect();
    for col in 0..n {
        let Some(p) = (col..n).find(|&i| rows[i] >> col & 1 == 1) else {
            return Err(LatticeError::Precondition(
                "gram matrix is singular mod 2; no unique characteristic class".into(),
            ));
        };
        rows.swap(col, p);
        for i in 0..n {
            if i != col && rows[i] >> col & 1 == 1 {
                rows[i] ^= rows[col];
            }
        }
    }
    let mut bits = 0u64;
    for (i, r) in rows.iter().enumerate() {
        if r >> n & 1 == 1 {
            bits |= 1 << i;
        }
    }
    Ok(CosetClass { bits })
}

pub fn min_characteristic_norm(l: &Lattice) -> Result<i64> {
    let c = characteristic_coset(l)?;
    let (m, _) = coset_min_norm(&Enumerator::new(l), c, &Budget::unlimited())?;
    Ok(m)
}
