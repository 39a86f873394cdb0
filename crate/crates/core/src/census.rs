//! Coset census of the odd lattice `E7 + E7` glued by `g`.
//!
//! Classes of `L/2L` outside the image of `E7^2 / 2E7^2` are split into
//! orbits of the group generated by coordinate permutations within each
//! half, the swap of the halves, and negation of the first half. The orbits
//! of the six glue representatives are compared with the expected sizes.
//! As a coarser cross-check the classes are also grouped by a signature
//! invariant under all automorphisms (minimal norm, minimal set size, and
//! the histogram of inner products within the minimal set). The eta
//! vanishing claims are checked by direct evaluation over every relevant
//! basis monomial.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::constructions::e7_squared;
use crate::coset::CosetClass;
use crate::enumerate::{Budget, Enumerator};
use crate::error::{LatticeError, Result};
use crate::eta::{eta_with_min, extremal_min_set, lw_basis, pair_sum_with_min};
use crate::invariants::{class_table, Mode};
use crate::lattice::{Lattice, LatticeVector};

/// Orbit sizes of the glue classes `(a,a) (a,b) (a,c) (b,b) (b,c) (c,c)`.
pub const EXPECTED_ORBITS: [u64; 6] = [1568, 3920, 112, 2450, 140, 2];

/// One representative from the table of candidate `w`, in ambient
/// coordinates scaled by 4.
struct Rep {
    label: &'static str,
    left: [i64; 8],
    right: [i64; 8],
}

const A: [i64; 8] = [3, 3, -1, -1, -1, -1, -1, -1];
const B: [i64; 8] = [3, 3, 3, -5, -1, -1, -1, -1];
const C: [i64; 8] = [7, -1, -1, -1, -1, -1, -1, -1];
const X: [i64; 8] = [4, -4, 0, 0, 0, 0, 0, 0];
const Y: [i64; 8] = [4, 4, -4, -4, 0, 0, 0, 0];
const Z: [i64; 8] = [6, 6, -2, -2, -2, -2, -2, -2];
const O: [i64; 8] = [0; 8];

const REPS: [Rep; 11] = [
    Rep {
        label: "(x,0)",
        left: X,
        right: O,
    },
    Rep {
        label: "(a,a)",
        left: A,
        right: A,
    },
    Rep {
        label: "(x,x)",
        left: X,
        right: X,
    },
    Rep {
        label: "(y,0)",
        left: Y,
        right: O,
    },
    Rep {
        label: "(a,b)",
        left: A,
        right: B,
    },
    Rep {
        label: "(a,c)",
        left: A,
        right: C,
    },
    Rep {
        label: "(x,y)",
        left: X,
        right: Y,
    },
    Rep {
        label: "(z,0)",
        left: Z,
        right: O,
    },
    Rep {
        label: "(b,b)",
        left: B,
        right: B,
    },
    Rep {
        label: "(b,c)",
        left: B,
        right: C,
    },
    Rep {
        label: "(c,c)",
        left: C,
        right: C,
    },
];

const GLUE: [&str; 6] = ["(a,a)", "(a,b)", "(a,c)", "(b,b)", "(b,c)", "(c,c)"];

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Signature {
    pub norm: i64,
    pub min_size: usize,
    /// `(inner product, number of ordered pairs)` over distinct minimal vectors.
    pub histogram: Vec<(i64, u64)>,
}

#[derive(Clone, Debug, Serialize)]
pub struct RepRow {
    pub label: String,
    pub w: LatticeVector,
    pub norm: i64,
    pub extremal: bool,
    pub min_set_size: usize,
    /// `min_set_size / 2`: the minimal set up to sign.
    pub min_set_pairs: usize,
    /// Size of the orbit of the class (glue vectors only).
    pub orbit_size: Option<u64>,
    /// Number of non-image classes sharing the signature (glue vectors only).
    pub signature_group_size: Option<u64>,
    pub expected_orbit: Option<u64>,
    /// `None` when claim (i) says nothing about this vector.
    pub claim_i: Option<bool>,
    /// Literal `2^{-m} eta` vanishing mod 2 for all `L^w` basis monomials
    /// with `w^2 - m >= 4`.
    pub claim_ii_literal: bool,
    /// The same with the unsigned pair sum.
    pub claim_ii_pair_sum: bool,
    pub monomials_checked: u64,
}

#[derive(Clone, Debug, Serialize)]
pub struct CensusReport {
    pub non_image_classes: u64,
    pub orbit_sizes: Vec<u64>,
    pub signature_group_sizes: Vec<u64>,
    pub rows: Vec<RepRow>,
    pub orbit_sum: u64,
    pub orbits_match: bool,
    pub claims_hold: bool,
}

impl CensusReport {
    pub fn passed(&self) -> bool {
        self.orbits_match && self.claims_hold && self.non_image_classes == 8192
    }
}

pub fn signature(l: &Lattice, norm: i64, min: &[LatticeVector]) -> Signature {
    let mut hist: BTreeMap<i64, u64> = BTreeMap::new();
    let pairs: Vec<Vec<i64>> = min.iter().map(|v| l.pairings(v)).collect();
    for (i, p) in pairs.iter().enumerate() {
        for (j, v) in min.iter().enumerate() {
            if i != j {
                let d: i64 = p.iter().zip(v).map(|(a, b)| a * b).sum();
                *hist.entry(d).or_default() += 1;
            }
        }
    }
    Signature {
        norm,
        min_size: min.len(),
        histogram: hist.into_iter().collect(),
    }
}

fn rep_vector(l: &Lattice, r: &Rep) -> Result<LatticeVector> {
    let amb: Vec<i64> = r.left.iter().chain(&r.right).copied().collect();
    l.coords_of_ambient(&amb)
        .ok_or_else(|| LatticeError::Construction(format!("{} is not in the lattice", r.label)))
}

/// Nondecreasing index tuples of length `m` below `n`.
fn multisets(n: usize, m: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(m);
    fn rec(n: usize, m: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == m {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(n, m, i, cur, out);
            cur.pop();
        }
    }
    rec(n, m, 0, &mut cur, &mut out);
    out
}

fn claim_ii(l: &Lattice, w: &[i64], min: &[LatticeVector]) -> Result<(bool, bool, u64)> {
    let norm = l.norm(w);
    let basis = lw_basis(l, w);
    let (mut literal, mut pair, mut count) = (true, true, 0u64);
    for m in 0..=(norm - 4).max(-1) {
        let m = m as usize;
        for idx in multisets(basis.len(), m) {
            let f: Vec<LatticeVector> = idx.iter().map(|&i| basis[i].clone()).collect();
            let scale = 1i128 << m;
            let e = eta_with_min(l, w, &f, min)?;
            let s = pair_sum_with_min(l, &f, min)?;
            if e % scale != 0 || s % scale != 0 {
                return Err(LatticeError::Construction(
                    "L^w monomial not divisible by 2^m".into(),
                ));
            }
            literal &= (e / scale) % 2 == 0;
            pair &= (s / scale) % 2 == 0;
            count += 1;
        }
    }
    Ok((literal, pair, count))
}

fn claim_i(l: &Lattice, label: &str, w: &[i64], min: &[LatticeVector]) -> Result<Option<bool>> {
    let n = l.rank();
    Ok(match label {
        "(x,y)" | "(z,0)" => Some(eta_with_min(l, w, &[], min)? == 0),
        "(b,b)" | "(b,c)" | "(c,c)" => {
            let mut ok = true;
            for i in 0..n {
                let mut e = vec![0; n];
                e[i] = 1;
                ok &= eta_with_min(l, w, &[e], min)? == 0;
            }
            Some(ok)
        }
        _ => None,
    })
}

/// Signed coordinate permutation `x -> y` with `y[perm[i]] = sign[i] x[i]`.
struct Move {
    perm: Vec<usize>,
    sign: Vec<i64>,
}

fn generators() -> Vec<Move> {
    let id: Vec<usize> = (0..16).collect();
    let plus = vec![1i64; 16];
    let mut out = Vec::new();
    for half in [0usize, 8] {
        let mut t = id.clone();
        t.swap(half, half + 1);
        out.push(Move {
            perm: t,
            sign: plus.clone(),
        });
        let mut cyc = id.clone();
        for i in 0..8 {
            cyc[half + i] = half + (i + 1) % 8;
        }
        out.push(Move {
            perm: cyc,
            sign: plus.clone(),
        });
    }
    out.push(Move {
        perm: (0..16).map(|i| (i + 8) % 16).collect(),
        sign: plus.clone(),
    });
    out.push(Move {
        perm: id,
        sign: (0..16).map(|i| if i < 8 { -1 } else { 1 }).collect(),
    });
    out
}

/// Orbit index of every class with bit 0 set (others `None`) and the size
/// of each orbit, for the action of `generators` on `L/2L`.
fn non_image_orbits(l: &Lattice) -> Result<(Vec<Option<usize>>, Vec<u64>)> {
    let n = l.rank();
    let amb = l
        .ambient
        .as_ref()
        .ok_or_else(|| LatticeError::Construction("no ambient rows".into()))?;
    let mut images: Vec<Vec<u64>> = Vec::new();
    for g in generators() {
        let mut cols = Vec::with_capacity(n);
        for row in &amb.rows {
            let mut y = vec![0i64; row.len()];
            for (i, &x) in row.iter().enumerate() {
                y[g.perm[i]] = g.sign[i] * x;
            }
            let v = l.coords_of_ambient(&y).ok_or_else(|| {
                LatticeError::Construction("generator does not preserve the lattice".into())
            })?;
            cols.push(CosetClass::of(&v).bits);
        }
        images.push(cols);
    }
    let size = 1usize << n;
    let mut parent: Vec<usize> = (0..size).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    for c in 0..size {
        for cols in &images {
            let img = (0..n)
                .filter(|&i| c >> i & 1 == 1)
                .fold(0u64, |a, i| a ^ cols[i]) as usize;
            let (a, b) = (find(&mut parent, c), find(&mut parent, img));
            if a != b {
                parent[a] = b;
            }
        }
    }
    let mut index: BTreeMap<usize, usize> = BTreeMap::new();
    let mut orbit_of = vec![None; size];
    let mut count = Vec::new();
    for c in (0..size).filter(|c| c & 1 == 1) {
        let root = find(&mut parent, c);
        let k = *index.entry(root).or_insert_with(|| {
            count.push(0u64);
            count.len() - 1
        });
        count[k] += 1;
        orbit_of[c] = Some(k);
    }
    Ok((orbit_of, count))
}

pub fn e7_squared_census(budget: &Budget) -> Result<CensusReport> {
    let l = e7_squared()?;
    let e = Enumerator::new(&l);
    let table = class_table(&l, &e, &Mode::Exhaustive, budget)?;
    // the first basis vector is g, the only one outside E7 + E7
    let mut groups: BTreeMap<Signature, u64> = BTreeMap::new();
    let mut by_class: BTreeMap<u64, Signature> = BTreeMap::new();
    for info in table.iter().filter(|c| c.class.bits & 1 == 1) {
        let min = info
            .min
            .as_ref()
            .expect("exhaustive tables keep minimal sets");
        let sig = signature(&l, info.norm, min);
        *groups.entry(sig.clone()).or_default() += 1;
        by_class.insert(info.class.bits, sig);
    }
    let non_image = by_class.len() as u64;
    let (orbit_of, orbit_count) = non_image_orbits(&l)?;
    let mut rows = Vec::new();
    for r in &REPS {
        let w = rep_vector(&l, r)?;
        let min = extremal_min_set(&l, &w);
        let extremal = min.is_ok();
        let min = min.unwrap_or_default();
        let glue = GLUE.iter().position(|g| *g == r.label);
        let bits = CosetClass::of(&w).bits;
        let signature_group_size = glue.map(|_| {
            by_class
                .get(&bits)
                .and_then(|s| groups.get(s))
                .copied()
                .unwrap_or(0)
        });
        let orbit_size = glue.map(|_| orbit_of[bits as usize].map_or(0, |o| orbit_count[o]));
        let (lit, pair, checked) = if extremal {
            claim_ii(&l, &w, &min)?
        } else {
            (false, false, 0)
        };
        rows.push(RepRow {
            label: r.label.into(),
            norm: l.norm(&w),
            extremal,
            min_set_size: min.len(),
            min_set_pairs: min.len() / 2,
            orbit_size,
            signature_group_size,
            expected_orbit: glue.map(|i| EXPECTED_ORBITS[i]),
            claim_i: if extremal {
                claim_i(&l, r.label, &w, &min)?
            } else {
                None
            },
            claim_ii_literal: lit,
            claim_ii_pair_sum: pair,
            monomials_checked: checked,
            w,
        });
    }
    let orbit_sum: u64 = rows.iter().filter_map(|r| r.orbit_size).sum();
    let orbits_match =
        rows.iter().all(|r| r.orbit_size == r.expected_orbit) && orbit_sum == non_image;
    let claims_hold = rows.iter().all(|r| {
        r.extremal && r.claim_i != Some(false) && r.claim_ii_literal && r.claim_ii_pair_sum
    });
    let mut signature_group_sizes: Vec<u64> = groups.values().copied().collect();
    signature_group_sizes.sort_unstable_by(|a, b| b.cmp(a));
    let mut orbit_sizes: Vec<u64> = orbit_count.iter().copied().filter(|&c| c > 0).collect();
    orbit_sizes.sort_unstable_by(|a, b| b.cmp(a));
    Ok(CensusReport {
        non_image_classes: non_image,
        orbit_sizes,
        signature_group_sizes,
        rows,
        orbit_sum,
        orbits_match,
        claims_hold,
    })
}
