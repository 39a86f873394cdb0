//! The invariants `m`, `f2`, `f4`, `e0` and `e_p` with exhaustive, witness
//! and user search modes.
//!
//! Search strategy. `2^{-m0} eta(w, a)` is Z-linear in `a`, so it is nonzero
//! modulo 2, 4, `p`, or in Z for some `a` of a given degree and split exactly
//! when it is nonzero for some monomial in basis vectors. Only basis
//! monomials are searched. Changing `w` inside its minimal set multiplies
//! every sign by the same `(-1)^{d^2}` and leaves `L^w` unchanged, so each
//! class is evaluated once, at the lexicographically smallest minimal
//! vector (or at the user's `w`).
//!
//! Candidate values are tried from the largest down; for a fixed value the
//! classes are visited in a fixed order (by `w` in exhaustive mode, by norm
//! then class bits in witness mode) and the first success is reported, with
//! monomials ordered by degree, split and factor indices.
//!
//! The mod 2 invariant uses `sum L_z(a)` over one vector of each `+-` pair:
//! for `a` in `Sym(L^w)` every term is divisible by `2^m`, so the signs of
//! the literal definition are irrelevant mod 2, while the literal half-sum
//! would vanish identically for odd `N + m`.

use std::collections::HashMap;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::{Arc, OnceLock};
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::coset::{coset_minima_with, CosetClass};
use crate::enumerate::{for_each_short, Budget, Enumerator};
use crate::error::{LatticeError, Result};
use crate::eta::{
    eta_sign, eta_with_min, extremal_min_set, lw_basis, monomial_vectors, pair_representatives,
    pair_sum_with_min, SymMonomial,
};
use crate::lattice::{Lattice, LatticeVector};

/// Default norm bound for witness mode.
pub const DEFAULT_NORM_BOUND: i64 = 7;
/// Largest rank scanned exhaustively by default.
pub const EXHAUSTIVE_RANK: usize = 16;
/// Vector budget for the bucketing pass of an exhaustive scan.
const BUCKET_CAP: f64 = 4.0e6;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Invariant {
    M,
    F2,
    F4,
    E0,
    Ep(u64),
}

impl Invariant {
    pub fn parse(s: &str, modulus: Option<u64>) -> Result<Self> {
        match s {
            "m" => Ok(Invariant::M),
            "f2" => Ok(Invariant::F2),
            "f4" => Ok(Invariant::F4),
            "e0" => Ok(Invariant::E0),
            "ep" => {
                let p =
                    modulus.ok_or_else(|| LatticeError::Invalid("ep needs a modulus".into()))?;
                Invariant::ep(p)
            }
            _ => Err(LatticeError::Invalid(format!("unknown invariant {s:?}"))),
        }
    }

    /// Inverse of `name`.
    pub fn from_name(s: &str) -> Result<Self> {
        match s.strip_prefix("ep(").and_then(|r| r.strip_suffix(')')) {
            Some(p) => Invariant::ep(
                p.parse()
                    .map_err(|_| LatticeError::Invalid(format!("bad modulus in {s:?}")))?,
            ),
            None => Invariant::parse(s, None),
        }
    }

    pub fn ep(p: u64) -> Result<Self> {
        if p < 3 || p.is_multiple_of(2) {
            return Err(LatticeError::Invalid(format!(
                "modulus {p} must be odd and at least 3"
            )));
        }
        Ok(Invariant::Ep(p))
    }

    pub fn name(&self) -> String {
        match self {
            Invariant::M => "m".into(),
            Invariant::F2 => "f2".into(),
            Invariant::F4 => "f4".into(),
            Invariant::E0 => "e0".into(),
            Invariant::Ep(p) => format!("ep({p})"),
        }
    }

    /// Largest value attainable from a class of minimal norm `norm`.
    fn max_value(&self, norm: i64) -> i64 {
        match self {
            Invariant::M | Invariant::F2 => norm - 1,
            Invariant::F4 => norm / 2,
            Invariant::E0 | Invariant::Ep(_) => (norm + 3) / 4,
        }
    }

    /// Degrees `m` giving value `v` from norm `norm`, in increasing order.
    fn degrees(&self, norm: i64, v: i64) -> Vec<usize> {
        let ok = |m: i64| m >= 0;
        match self {
            Invariant::M => {
                if norm - 1 == v {
                    vec![0]
                } else {
                    vec![]
                }
            }
            Invariant::F2 => {
                let m = norm - 1 - v;
                if ok(m) {
                    vec![m as usize]
                } else {
                    vec![]
                }
            }
            Invariant::F4 => {
                let m = norm - 2 * v;
                if ok(m) {
                    vec![m as usize]
                } else {
                    vec![]
                }
            }
            Invariant::E0 | Invariant::Ep(_) => (norm - 4 * v..=norm - 4 * v + 3)
                .filter(|&m| ok(m) && (norm - m) % 2 == 0)
                .map(|m| m as usize)
                .collect(),
        }
    }

    fn value(&self, norm: i64, m: usize) -> i64 {
        let m = m as i64;
        match self {
            Invariant::M | Invariant::F2 => norm - m - 1,
            Invariant::F4 => (norm - m) / 2,
            Invariant::E0 | Invariant::Ep(_) => (norm - m + 3).div_euclid(4),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Mode {
    Exhaustive,
    Witness { norm_bound: i64 },
    User { w: LatticeVector },
}

impl Mode {
    pub fn default_for(l: &Lattice) -> Mode {
        if l.rank() <= EXHAUSTIVE_RANK {
            Mode::Exhaustive
        } else {
            Mode::Witness {
                norm_bound: DEFAULT_NORM_BOUND,
            }
        }
    }

    pub fn describe(&self) -> String {
        match self {
            Mode::Exhaustive => "exhaustive".into(),
            Mode::Witness { norm_bound } => format!("witness({norm_bound})"),
            Mode::User { .. } => "user".into(),
        }
    }
}

fn ser_i128<S: Serializer>(x: &i128, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&x.to_string())
}

fn de_i128<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<i128, D::Error> {
    let s = String::deserialize(d)?;
    s.parse().map_err(serde::de::Error::custom)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub w: LatticeVector,
    pub monomial: SymMonomial,
    /// `eta(L, w, a)`; for `m` and `f2` the unsigned pair sum instead.
    #[serde(serialize_with = "ser_i128", deserialize_with = "de_i128")]
    pub eta: i128,
    pub min_set_size: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvariantReport {
    pub invariant: String,
    pub value: i64,
    pub mode: String,
    /// False when the value is only a lower bound.
    pub exact: bool,
    /// Set when the budget ran out; larger values than this were excluded.
    pub upper_bound: Option<i64>,
    pub partial: bool,
    pub witness: Option<Witness>,
    pub cosets_scanned: u64,
    pub elapsed_ms: u64,
}

/// Minimal norm and size of the minimal set of one class.
#[derive(Clone, Debug)]
pub struct ClassInfo {
    pub class: CosetClass,
    pub norm: i64,
    pub count: u64,
    /// Smallest minimal vector, when known.
    pub w: Option<LatticeVector>,
    /// The sorted minimal set, when the table scan already saw it.
    pub min: Option<Vec<LatticeVector>>,
}

/// Nonzero classes with their minima. Exhaustive tables cover every class;
/// witness tables cover the classes with minimum at most the bound.
pub fn class_table(
    l: &Lattice,
    e: &Enumerator,
    mode: &Mode,
    budget: &Budget,
) -> Result<Vec<ClassInfo>> {
    match mode {
        Mode::Exhaustive => exhaustive_table(l, e, budget),
        Mode::Witness { norm_bound } => witness_table(e, *norm_bound, budget),
        Mode::User { w } => {
            let c = CosetClass::of(w);
            let min = coset_minima_with(e, c, budget)?;
            Ok(vec![ClassInfo {
                class: c,
                norm: min.min_norm,
                count: min.vectors.len() as u64,
                w: Some(w.clone()),
                min: Some(min.vectors),
            }])
        }
    }
}

fn unit_ball(n: usize) -> f64 {
    // pi^{n/2} / Gamma(n/2 + 1)
    let mut v = 1.0f64;
    let mut k = n;
    while k >= 2 {
        v *= 2.0 * std::f64::consts::PI / k as f64;
        k -= 2;
    }
    if k == 1 {
        v *= 2.0;
    }
    v
}

fn bucket_radius(l: &Lattice) -> i64 {
    let n = l.rank();
    let det = num_traits::ToPrimitive::to_f64(&l.det()).unwrap_or(f64::MAX);
    let vol = unit_ball(n) / det.sqrt();
    let mut r = 1i64;
    while r < 64 && vol * ((r + 1) as f64).powf(n as f64 / 2.0) <= BUCKET_CAP {
        r += 1;
    }
    r
}

fn exhaustive_table(l: &Lattice, e: &Enumerator, budget: &Budget) -> Result<Vec<ClassInfo>> {
    let n = l.rank();
    if n > 26 {
        return Err(LatticeError::Precondition(format!(
            "rank {n} is too large for an exhaustive scan"
        )));
    }
    let size = 1usize << n;
    let mut norm = vec![i64::MAX; size];
    let mut count = vec![0u64; size];
    let mut mins: Vec<Vec<LatticeVector>> = vec![Vec::new(); size];
    let radius = bucket_radius(l);
    for_each_short(e, radius, budget, |x, nv| {
        let c = e.class_of_reduced(x) as usize;
        if nv > norm[c] {
            return;
        }
        let v = e.to_original(x);
        let neg: LatticeVector = v.iter().map(|a| -a).collect();
        if nv < norm[c] {
            norm[c] = nv;
            count[c] = 0;
            mins[c].clear();
        }
        count[c] += 2;
        mins[c].push(v);
        mins[c].push(neg);
    })
    .map_err(|err| relabel_budget(err, None))?;
    let missing: Vec<usize> = (1..size).filter(|&c| norm[c] == i64::MAX).collect();
    let filled: Vec<Result<(usize, ClassInfo)>> = missing
        .par_iter()
        .map(|&c| {
            let class = CosetClass { bits: c as u64 };
            let min = coset_minima_with(e, class, budget)?;
            Ok((
                c,
                ClassInfo {
                    class,
                    norm: min.min_norm,
                    count: min.vectors.len() as u64,
                    w: min.vectors.first().cloned(),
                    min: Some(min.vectors),
                },
            ))
        })
        .collect();
    let mut out: Vec<Option<ClassInfo>> = (0..size)
        .map(|c| {
            (c > 0 && norm[c] != i64::MAX).then(|| {
                let mut min = std::mem::take(&mut mins[c]);
                min.sort();
                ClassInfo {
                    class: CosetClass { bits: c as u64 },
                    norm: norm[c],
                    count: count[c],
                    w: min.first().cloned(),
                    min: Some(min),
                }
            })
        })
        .collect();
    for f in filled {
        let (c, info) = f?;
        out[c] = Some(info);
    }
    Ok(out.into_iter().flatten().collect())
}

fn witness_table(e: &Enumerator, bound: i64, budget: &Budget) -> Result<Vec<ClassInfo>> {
    if bound < 2 {
        return Err(LatticeError::Invalid(
            "witness norm bound must be at least 2".into(),
        ));
    }
    let mut map: HashMap<u64, (i64, u64)> = HashMap::new();
    for_each_short(e, bound, budget, |x, nv| {
        let c = e.class_of_reduced(x);
        let ent = map.entry(c).or_insert((nv, 0));
        if nv < ent.0 {
            *ent = (nv, 0);
        }
        if nv == ent.0 {
            ent.1 += 2;
        }
    })
    .map_err(|err| relabel_budget(err, None))?;
    let mut out: Vec<ClassInfo> = map
        .into_iter()
        .map(|(bits, (norm, count))| ClassInfo {
            class: CosetClass { bits },
            norm,
            count,
            w: None,
            min: None,
        })
        .collect();
    out.sort_by(|a, b| b.norm.cmp(&a.norm).then(a.class.cmp(&b.class)));
    Ok(out)
}

fn relabel_budget(err: LatticeError, best: Option<i64>) -> LatticeError {
    match err {
        LatticeError::Budget { radius, .. } => LatticeError::Budget { radius, best },
        other => other,
    }
}

/// Pairing data of one class, prepared for monomial search.
struct Prepared {
    w: LatticeVector,
    norm: i64,
    min_size: usize,
    min: Vec<LatticeVector>,
    /// Literal sign of each pair representative.
    signs: Vec<i64>,
    /// `full[i][z] = z . e_i`
    full: Vec<Vec<i64>>,
    /// `half[j][z] = (z . b_j) / 2` for the `L^w` basis `b`
    half: Vec<Vec<i64>>,
}

impl Prepared {
    fn new(l: &Lattice, w: LatticeVector, min: Vec<LatticeVector>) -> Self {
        let n = l.rank();
        let norm = l.norm(&w);
        let pw = l.pairings(&w);
        let reps = pair_representatives(&min);
        let lw = lw_basis(l, &w);
        let pz: Vec<Vec<i64>> = reps.iter().map(|z| l.pairings(z)).collect();
        let signs = reps
            .iter()
            .map(|z| {
                let zw: i64 = z.iter().zip(&pw).map(|(a, b)| a * b).sum();
                eta_sign(norm, zw) as i64
            })
            .collect();
        let full = (0..n).map(|i| pz.iter().map(|p| p[i]).collect()).collect();
        let half = lw
            .iter()
            .map(|b| {
                pz.iter()
                    .map(|p| {
                        let d: i64 = p.iter().zip(b).map(|(x, y)| x * y).sum();
                        debug_assert_eq!(d % 2, 0);
                        d / 2
                    })
                    .collect()
            })
            .collect();
        Prepared {
            w,
            norm,
            min_size: min.len(),
            min,
            signs,
            full,
            half,
        }
    }

    fn pairs(&self) -> usize {
        self.signs.len()
    }
}

#[derive(Clone, Copy)]
enum Arith {
    Mod(i128),
    Exact,
}

impl Arith {
    fn mul(self, a: i128, b: i64) -> Result<i128> {
        match self {
            Arith::Mod(q) => Ok((a * (b as i128)).rem_euclid(q)),
            Arith::Exact => a
                .checked_mul(b as i128)
                .ok_or_else(|| LatticeError::Overflow("eta evaluation".into())),
        }
    }

    fn nonzero(self, s: i128) -> bool {
        match self {
            Arith::Mod(q) => s.rem_euclid(q) != 0,
            Arith::Exact => s != 0,
        }
    }
}

struct Search<'a> {
    segments: [(&'a [Vec<i64>], usize); 2],
    arith: Arith,
    budget: &'a Budget,
    nodes: u64,
    chosen: Vec<usize>,
}

impl Search<'_> {
    /// Depth-first search for the first nondecreasing index tuple (per
    /// segment) with nonzero total.
    fn run(&mut self, vals: &[i128], seg: usize, start: usize, left: usize) -> Result<bool> {
        self.nodes += 1;
        if self.nodes & 0x3ff == 0 && self.budget.expired() {
            return Err(LatticeError::Budget {
                radius: 0,
                best: None,
            });
        }
        if left == 0 {
            if seg + 1 < self.segments.len() {
                let next = self.segments[seg + 1].1;
                return self.run(vals, seg + 1, 0, next);
            }
            let mut s: i128 = 0;
            for v in vals {
                s = match self.arith {
                    Arith::Mod(q) => (s + v) % q,
                    Arith::Exact => s
                        .checked_add(*v)
                        .ok_or_else(|| LatticeError::Overflow("eta evaluation".into()))?,
                };
            }
            return Ok(self.arith.nonzero(s));
        }
        let table = self.segments[seg].0;
        let mut next = vec![0i128; vals.len()];
        for i in start..table.len() {
            let col = &table[i];
            let mut any = false;
            for (k, (v, c)) in vals.iter().zip(col).enumerate() {
                next[k] = self.arith.mul(*v, *c)?;
                any |= next[k] != 0;
            }
            if !any {
                continue;
            }
            self.chosen.push(i);
            if self.run(&next, seg, i, left - 1)? {
                return Ok(true);
            }
            self.chosen.pop();
        }
        Ok(false)
    }
}

fn odd_subset(
    masks: &[u64],
    n: usize,
    start: usize,
    left: usize,
    chosen: &mut Vec<usize>,
    budget: &Budget,
) -> Result<bool> {
    if budget.expired() {
        return Err(LatticeError::Budget {
            radius: 0,
            best: None,
        });
    }
    for j in start..n {
        let sub: Vec<u64> = masks.iter().copied().filter(|x| x >> j & 1 != 0).collect();
        if sub.is_empty() {
            continue;
        }
        chosen.push(j);
        if sub.len() % 2 == 1 || (left > 1 && odd_subset(&sub, n, j + 1, left - 1, chosen, budget)?)
        {
            return Ok(true);
        }
        chosen.pop();
    }
    Ok(false)
}

/// Tries every basis monomial of degree `m`; returns the first that
/// satisfies the invariant's condition.
fn try_degree(
    p: &Prepared,
    inv: Invariant,
    m: usize,
    budget: &Budget,
) -> Result<Option<SymMonomial>> {
    let n_pairs = p.pairs();
    match inv {
        Invariant::M => Ok((n_pairs % 2 == 1).then(SymMonomial::empty)),
        Invariant::F2 => {
            if m == 0 {
                return Ok((n_pairs % 2 == 1).then(SymMonomial::empty));
            }
            // Mod 2 only the odd halved pairings matter and repeated factors
            // collapse, so look for a set S of at most m indices such that an
            // odd number of representatives are odd on all of S.
            let masks: Vec<u64> = (0..n_pairs)
                .map(|z| {
                    p.half
                        .iter()
                        .enumerate()
                        .filter(|(_, col)| col[z] & 1 != 0)
                        .fold(0u64, |a, (j, _)| a | 1 << j)
                })
                .collect();
            let mut chosen = Vec::new();
            let found = odd_subset(&masks, p.half.len(), 0, m, &mut chosen, budget)?;
            Ok(found.then(|| {
                let last = *chosen.last().unwrap();
                chosen.resize(m, last);
                SymMonomial::new(&chosen, &[])
            }))
        }
        Invariant::F4 => {
            if (p.norm - m as i64) % 2 != 0 {
                return Ok(None);
            }
            let init: Vec<i128> = p.signs.iter().map(|&s| s as i128).collect();
            for m0 in 0..=m {
                let mut s = Search {
                    segments: [(&p.half, m0), (&p.full, m - m0)],
                    arith: Arith::Mod(4),
                    budget,
                    nodes: 0,
                    chosen: Vec::new(),
                };
                if s.run(&init, 0, 0, m0)? {
                    return Ok(Some(SymMonomial::new(&s.chosen[..m0], &s.chosen[m0..])));
                }
            }
            Ok(None)
        }
        Invariant::E0 | Invariant::Ep(_) => {
            if (p.norm - m as i64) % 2 != 0 {
                return Ok(None);
            }
            let arith = match inv {
                Invariant::Ep(q) => Arith::Mod(q as i128),
                _ => Arith::Exact,
            };
            let init: Vec<i128> = p.signs.iter().map(|&s| s as i128).collect();
            let mut s = Search {
                segments: [(&p.full, m), (&[], 0)],
                arith,
                budget,
                nodes: 0,
                chosen: Vec::new(),
            };
            Ok(s.run(&init, 0, 0, m)?
                .then(|| SymMonomial::new(&[], &s.chosen)))
        }
    }
}

fn witness_for(l: &Lattice, inv: Invariant, p: &Prepared, a: SymMonomial) -> Result<Witness> {
    let f = monomial_vectors(l, &p.w, &a)?;
    let eta = match inv {
        Invariant::M | Invariant::F2 => pair_sum_with_min(l, &f, &p.min)?,
        _ => eta_with_min(l, &p.w, &f, &p.min)?,
    };
    Ok(Witness {
        w: p.w.clone(),
        monomial: a,
        eta,
        min_set_size: p.min_size,
    })
}

/// Computes an invariant. Budget exhaustion yields a partial report rather
/// than an error.
pub fn compute(
    l: &Lattice,
    inv: Invariant,
    mode: &Mode,
    budget: &Budget,
) -> Result<InvariantReport> {
    let start = Instant::now();
    let scanned = AtomicU64::new(0);
    let mut report = InvariantReport {
        invariant: inv.name(),
        value: 0,
        mode: mode.describe(),
        exact: matches!(mode, Mode::Exhaustive),
        upper_bound: None,
        partial: false,
        witness: None,
        cosets_scanned: 0,
        elapsed_ms: 0,
    };
    if l.rank() == 0 {
        return Ok(report);
    }
    if let Mode::User { w } = mode {
        extremal_min_set(l, w)?;
    }
    let e = Enumerator::new(l);
    let table = match class_table(l, &e, mode, budget) {
        Ok(t) => t,
        Err(LatticeError::Budget { .. }) => {
            report.partial = true;
            report.exact = false;
            report.elapsed_ms = start.elapsed().as_millis() as u64;
            return Ok(report);
        }
        Err(err) => return Err(err),
    };
    let mut order: Vec<usize> = (0..table.len()).collect();
    if matches!(mode, Mode::Exhaustive) {
        order.sort_by(|&a, &b| table[a].w.cmp(&table[b].w));
    }
    let prepared: Vec<OnceLock<Arc<Prepared>>> =
        (0..table.len()).map(|_| OnceLock::new()).collect();
    let prepare = |i: usize| -> Result<Arc<Prepared>> {
        if let Some(p) = prepared[i].get() {
            return Ok(p.clone());
        }
        let info = &table[i];
        let min = match &info.min {
            Some(m) => m.clone(),
            None => coset_minima_with(&e, info.class, budget)?.vectors,
        };
        let w = info.w.clone().unwrap_or_else(|| min[0].clone());
        let p = Arc::new(Prepared::new(l, w, min));
        Ok(prepared[i].get_or_init(|| p).clone())
    };
    let vmax = table
        .iter()
        .map(|c| inv.max_value(c.norm))
        .max()
        .unwrap_or(0);
    for v in (1..=vmax).rev() {
        let found = order.par_iter().find_map_first(|&i| {
            let info = &table[i];
            let degrees = inv.degrees(info.norm, v);
            if degrees.is_empty() {
                return None;
            }
            scanned.fetch_add(1, Ordering::Relaxed);
            // the count alone settles degree 0 of the mod 2 invariants
            if (matches!(inv, Invariant::M) || (matches!(inv, Invariant::F2) && degrees == [0]))
                && (info.count / 2) % 2 == 0
            {
                return None;
            }
            let attempt = || -> Result<Option<Witness>> {
                let p = prepare(i)?;
                for &m in &degrees {
                    if let Some(a) = try_degree(&p, inv, m, budget)? {
                        debug_assert_eq!(inv.value(p.norm, m), v);
                        return Ok(Some(witness_for(l, inv, &p, a)?));
                    }
                }
                Ok(None)
            };
            attempt().transpose()
        });
        match found {
            Some(Ok(w)) => {
                report.value = v;
                report.witness = Some(w);
                break;
            }
            Some(Err(LatticeError::Budget { .. })) => {
                report.partial = true;
                report.exact = false;
                report.upper_bound = Some(v);
                break;
            }
            Some(Err(err)) => return Err(err),
            None => {}
        }
    }
    report.cosets_scanned = scanned.load(Ordering::Relaxed);
    report.elapsed_ms = start.elapsed().as_millis() as u64;
    Ok(report)
}

/// Re-evaluates a reported witness without searching: `w` must be nonzero
/// and extremal, the monomial must satisfy the invariant's condition, and
/// the value must follow from `w^2` and the degree.
pub fn verify_witness(l: &Lattice, inv: Invariant, value: i64, wit: &Witness) -> Result<bool> {
    let min = extremal_min_set(l, &wit.w)?;
    let norm = l.norm(&wit.w);
    let a = &wit.monomial;
    let m = a.degree();
    let f = monomial_vectors(l, &wit.w, a)?;
    let pow = |k: usize| -> i128 { 1i128 << k };
    let ok = match inv {
        Invariant::M => {
            m == 0 && (min.len() / 2) % 2 == 1 && pair_sum_with_min(l, &f, &min)? == wit.eta
        }
        Invariant::F2 => {
            let s = pair_sum_with_min(l, &f, &min)?;
            a.m1 == 0 && s == wit.eta && s % pow(m) == 0 && (s / pow(m)).rem_euclid(2) == 1
        }
        Invariant::F4 => {
            let s = eta_with_min(l, &wit.w, &f, &min)?;
            (norm - m as i64) % 2 == 0
                && s == wit.eta
                && s % pow(a.m0) == 0
                && (s / pow(a.m0)).rem_euclid(4) != 0
        }
        Invariant::E0 => {
            let s = eta_with_min(l, &wit.w, &f, &min)?;
            (norm - m as i64) % 2 == 0 && s == wit.eta && s != 0
        }
        Invariant::Ep(p) => {
            let s = eta_with_min(l, &wit.w, &f, &min)?;
            (norm - m as i64) % 2 == 0 && s == wit.eta && s.rem_euclid(p as i128) != 0
        }
    };
    Ok(ok && min.len() == wit.min_set_size && inv.value(norm, m) == value)
}
