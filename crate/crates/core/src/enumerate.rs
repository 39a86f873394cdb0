//! Fincke-Pohst enumeration over an LLL-reduced basis.
//!
//! Pruning uses floating point Gram-Schmidt data with a relative safety
//! margin; every reported vector is re-checked with exact integer norms by the
//! callers, so floats only decide which subtrees are skipped.

use std::time::Instant;

use crate::error::{LatticeError, Result};
use crate::lattice::{Lattice, LatticeVector};
use crate::lll;

const MARGIN: f64 = 1.0 / (1u64 << 20) as f64;

/// Wall-clock limit shared by the enumeration kernels.
#[derive(Clone, Copy, Debug, Default)]
pub struct Budget {
    pub deadline: Option<Instant>,
}

impl Budget {
    pub fn unlimited() -> Self {
        Budget { deadline: None }
    }

    pub fn seconds(s: u64) -> Self {
        Budget {
            deadline: Some(Instant::now() + std::time::Duration::from_secs(s)),
        }
    }

    pub fn expired(&self) -> bool {
        self.deadline.is_some_and(|d| Instant::now() >= d)
    }
}

pub(crate) enum Flow {
    Continue,
    /// Lower the search radius (in the units passed to `search`).
    Shrink(f64),
}

/// Precomputed reduction data for one lattice.
#[derive(Clone, Debug)]
pub struct Enumerator {
    n: usize,
    /// Reduced basis vectors in original coordinates (rows).
    basis: Vec<Vec<i64>>,
    gram: Vec<Vec<i64>>,
    /// mu[j][i] for i < j
    mu: Vec<Vec<f64>>,
    bstar: Vec<f64>,
    /// original-coordinate parity mask of each reduced basis vector
    to_orig_mask: Vec<u64>,
    /// reduced-coordinate parity mask of each original basis vector
    to_red_mask: Vec<u64>,
}

impl Enumerator {
    pub fn new(l: &Lattice) -> Self {
        let n = l.rank();
        let r = lll::lll_gram(l.gram());
        let mut mu = vec![vec![0.0; n]; n];
        let mut bstar = vec![0.0; n];
        for i in 0..n {
            for j in 0..i {
                let mut s = r.gram[i][j] as f64;
                for k in 0..j {
                    s -= mu[j][k] * mu[i][k] * bstar[k];
                }
                mu[i][j] = s / bstar[j];
            }
            let mut s = r.gram[i][i] as f64;
            for k in 0..i {
                s -= mu[i][k] * mu[i][k] * bstar[k];
            }
            bstar[i] = s;
        }
        let to_orig_mask = r
            .basis
            .iter()
            .map(|row| parity_bits(row))
            .collect::<Vec<_>>();
        // inverse of the transform mod 2: original e_i in reduced coordinates
        let inv = crate::matrix::unimodular_inverse(&crate::matrix::to_big(&r.basis))
            .expect("LLL transform is unimodular");
        let inv = crate::matrix::to_i64(&inv).expect("inverse transform fits in 64 bits");
        let to_red_mask = inv.iter().map(|row| parity_bits(row)).collect();
        Enumerator {
            n,
            basis: r.basis,
            gram: r.gram,
            mu,
            bstar,
            to_orig_mask,
            to_red_mask,
        }
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn reduced_gram(&self) -> &[Vec<i64>] {
        &self.gram
    }

    /// Maps reduced coordinates to original coordinates.
    pub fn to_original(&self, x: &[i64]) -> LatticeVector {
        let mut out = vec![0i64; self.n];
        for (c, row) in x.iter().zip(&self.basis) {
            if *c != 0 {
                for (o, b) in out.iter_mut().zip(row) {
                    *o += c * b;
                }
            }
        }
        out
    }

    /// Parity class (original coordinates) of a vector given in reduced ones.
    pub fn class_of_reduced(&self, x: &[i64]) -> u64 {
        let mut bits = 0u64;
        for (c, m) in x.iter().zip(&self.to_orig_mask) {
            if c & 1 != 0 {
                bits ^= m;
            }
        }
        bits
    }

    /// Parity class in reduced coordinates of an original-coordinate class.
    pub fn reduced_class(&self, orig_bits: u64) -> u64 {
        let mut bits = 0u64;
        for (i, m) in self.to_red_mask.iter().enumerate() {
            if orig_bits >> i & 1 != 0 {
                bits ^= m;
            }
        }
        bits
    }

    pub fn norm_reduced(&self, x: &[i64]) -> i64 {
        let mut s: i128 = 0;
        for i in 0..self.n {
            if x[i] == 0 {
                continue;
            }
            let row = &self.gram[i];
            let mut t: i128 = 0;
            for j in 0..self.n {
                t += row[j] as i128 * x[j] as i128;
            }
            s += x[i] as i128 * t;
        }
        i64::try_from(s).expect("norm overflow")
    }

    /// Visits every integer `x` with `Q(x + offset) <= radius` (up to the
    /// float margin). With `half` and a zero offset only one of each `+-x`
    /// pair is visited and the zero vector is skipped.
    pub(crate) fn search<F>(
        &self,
        offset: &[f64],
        radius: f64,
        half: bool,
        budget: &Budget,
        mut visit: F,
    ) -> Result<()>
    where
        F: FnMut(&[i64]) -> Flow,
    {
        let n = self.n;
        if n == 0 {
            return Ok(());
        }
        let mut st = SearchState {
            x: vec![0i64; n],
            partial: vec![0.0; n + 1],
            radius: radius * (1.0 + MARGIN) + 1e-9,
            nodes: 0,
        };
        self.descend(n - 1, offset, half, true, &mut st, budget, &mut visit)
    }

    #[allow(clippy::too_many_arguments)]
    fn descend<F>(
        &self,
        i: usize,
        offset: &[f64],
        half: bool,
        upper_zero: bool,
        st: &mut SearchState,
        budget: &Budget,
        visit: &mut F,
    ) -> Result<()>
    where
        F: FnMut(&[i64]) -> Flow,
    {
        st.nodes += 1;
        if st.nodes & 0xffff == 0 && budget.expired() {
            return Err(LatticeError::Budget {
                radius: st.radius as i64,
                best: None,
            });
        }
        let mut c = -offset[i];
        for j in i + 1..self.n {
            c -= self.mu[j][i] * (st.x[j] as f64 + offset[j]);
        }
        let rem = st.radius - st.partial[i + 1];
        if rem < 0.0 {
            return Ok(());
        }
        let r = (rem / self.bstar[i]).sqrt();
        let mut lo = (c - r).ceil() as i64;
        let hi = (c + r).floor() as i64;
        if half && upper_zero && lo < 0 {
            lo = 0;
        }
        for v in lo..=hi {
            let d = v as f64 - c;
            let val = st.partial[i + 1] + self.bstar[i] * d * d;
            if val > st.radius {
                if (v as f64) > c {
                    break;
                }
                continue;
            }
            st.x[i] = v;
            st.partial[i] = val;
            if i == 0 {
                if half && upper_zero && v == 0 {
                    continue;
                }
                if let Flow::Shrink(r) = visit(&st.x) {
                    let r = r * (1.0 + MARGIN) + 1e-9;
                    if r < st.radius {
                        st.radius = r;
                    }
                }
            } else {
                self.descend(i - 1, offset, half, upper_zero && v == 0, st, budget, visit)?;
            }
        }
        st.x[i] = 0;
        Ok(())
    }
}

struct SearchState {
    x: Vec<i64>,
    partial: Vec<f64>,
    radius: f64,
    nodes: u64,
}

pub(crate) fn parity_bits(v: &[i64]) -> u64 {
    assert!(v.len() <= 64, "parity classes are limited to rank 64");
    v.iter().enumerate().fold(
        0u64,
        |acc, (i, &c)| if c & 1 != 0 { acc | 1 << i } else { acc },
    )
}

/// All nonzero vectors of norm at most `bound`, closed under negation and
/// sorted lexicographically on original coordinates.
pub fn shortest_vectors(l: &Lattice, bound: i64) -> Result<Vec<LatticeVector>> {
    shortest_vectors_with(l, &Enumerator::new(l), bound, &Budget::unlimited())
}

pub fn shortest_vectors_with(
    l: &Lattice,
    e: &Enumerator,
    bound: i64,
    budget: &Budget,
) -> Result<Vec<LatticeVector>> {
    debug_assert_eq!(l.rank(), e.rank());
    let mut out = Vec::new();
    let zero = vec![0.0; e.rank()];
    e.search(&zero, bound as f64, true, budget, |x| {
        if e.norm_reduced(x) <= bound {
            let v = e.to_original(x);
            out.push(v.iter().map(|c| -c).collect());
            out.push(v);
        }
        Flow::Continue
    })
    .map_err(|err| match err {
        LatticeError::Budget { radius, .. } => LatticeError::Budget { radius, best: None },
        other => other,
    })?;
    out.sort();
    Ok(out)
}

/// Visits each `+-` pair of nonzero vectors with norm at most `bound` once,
/// passing reduced coordinates and the exact norm.
pub fn for_each_short<F>(e: &Enumerator, bound: i64, budget: &Budget, mut f: F) -> Result<()>
where
    F: FnMut(&[i64], i64),
{
    let zero = vec![0.0; e.rank()];
    e.search(&zero, bound as f64, true, budget, |x| {
        let nv = e.norm_reduced(x);
        if nv <= bound {
            f(x, nv);
        }
        Flow::Continue
    })
}

/// Number of vectors of each norm `0..=bound` (index = norm).
pub fn norm_counts(l: &Lattice, bound: i64) -> Result<Vec<u64>> {
    let e = Enumerator::new(l);
    let mut counts = vec![0u64; bound as usize + 1];
    counts[0] = 1;
    for_each_short(&e, bound, &Budget::unlimited(), |_, nv| {
        counts[nv as usize] += 2
    })?;
    Ok(counts)
}
