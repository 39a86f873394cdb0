//! Coordinate models of the lattices in the catalog, glue and code
//! constructions, and root system analysis.

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::code::{self, BinaryCode};
use crate::coset::{coset_minima, CosetClass};
use crate::discriminant::index2_overlattices;
use crate::enumerate::shortest_vectors;
use crate::error::{LatticeError, Result};
use crate::lattice::{diagonal, Ambient, Lattice, LatticeVector};
use crate::lll;
use crate::matrix;

/// A sublattice of `Q^ambient_dim` generated by `base_rows / denominator`
/// and `glue_rows / denominator`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GlueSpec {
    pub ambient_dim: usize,
    pub denominator: i64,
    pub base_rows: Vec<Vec<i64>>,
    pub glue_rows: Vec<Vec<i64>>,
}

pub fn glue(label: &str, spec: &GlueSpec) -> Result<Lattice> {
    if spec.denominator <= 0 {
        return Err(LatticeError::Invalid(
            "glue denominator must be positive".into(),
        ));
    }
    let rows: Vec<Vec<i64>> = spec
        .base_rows
        .iter()
        .chain(&spec.glue_rows)
        .cloned()
        .collect();
    if rows.iter().any(|r| r.len() != spec.ambient_dim) {
        return Err(LatticeError::Invalid(
            "glue row length differs from ambient_dim".into(),
        ));
    }
    let d = spec.denominator;
    Lattice::from_generators(label, &rows, d, d * d)
}

fn unit(n: usize, i: usize, scale: i64) -> Vec<i64> {
    let mut v = vec![0; n];
    v[i] = scale;
    v
}

/// Generators of the even-sum lattice `D_n` scaled by `scale`.
fn dn_rows(n: usize, scale: i64) -> Vec<Vec<i64>> {
    let mut rows = Vec::with_capacity(n);
    let mut first = vec![0; n];
    first[0] = scale;
    first[1] = scale;
    rows.push(first);
    for i in 0..n - 1 {
        let mut r = vec![0; n];
        r[i] = scale;
        r[i + 1] = -scale;
        rows.push(r);
    }
    rows
}

/// Concatenates blocks into one ambient vector.
fn place(parts: &[Vec<i64>]) -> Vec<i64> {
    parts.concat()
}

fn block_diag(blocks: &[Vec<Vec<i64>>]) -> Vec<Vec<i64>> {
    let dim: usize = blocks.iter().map(|b| b[0].len()).sum();
    let mut out = Vec::new();
    let mut off = 0;
    for b in blocks {
        let w = b[0].len();
        for r in b {
            let mut row = vec![0; dim];
            row[off..off + w].copy_from_slice(r);
            out.push(row);
        }
        off += w;
    }
    out
}

/// LLL-reduces the basis, keeping the ambient embedding.
fn reduce(l: &Lattice) -> Result<Lattice> {
    let r = lll::lll_gram(l.gram());
    let mut m = l.sublattice(l.label.clone(), &r.basis)?;
    m.sign = l.sign;
    Ok(m)
}

/// Sublattice cut out by linear forms on the ambient space.
fn kernel_of_forms(l: &Lattice, forms: &[Vec<i64>], label: &str) -> Result<Lattice> {
    let a = l
        .ambient
        .as_ref()
        .ok_or_else(|| LatticeError::Construction("kernel needs an ambient basis".into()))?;
    let m: Vec<Vec<i64>> = forms
        .iter()
        .map(|f| {
            a.rows
                .iter()
                .map(|r| r.iter().zip(f).map(|(x, y)| x * y).sum())
                .collect()
        })
        .collect();
    let k = matrix::integer_kernel(&matrix::to_big(&m), l.rank());
    let k = matrix::to_i64(&k).ok_or_else(|| LatticeError::Overflow("kernel basis".into()))?;
    reduce(&l.sublattice(label, &k)?)
}

pub fn zn(n: usize) -> Lattice {
    diagonal(n)
}

/// `A_n`: zero-sum vectors of `Z^{n+1}`.
pub fn an(n: usize) -> Result<Lattice> {
    if n == 0 {
        return Err(LatticeError::Invalid("A_n needs n >= 1".into()));
    }
    let rows: Vec<Vec<i64>> = (0..n)
        .map(|i| {
            let mut r = vec![0; n + 1];
            r[i] = 1;
            r[i + 1] = -1;
            r
        })
        .collect();
    Lattice::from_ambient(format!("A{n}-root"), Ambient::rational(rows, 1))
}

/// `D_n`: vectors of `Z^n` with even coordinate sum.
pub fn dn(n: usize) -> Result<Lattice> {
    if n < 2 {
        return Err(LatticeError::Invalid("D_n needs n >= 2".into()));
    }
    Lattice::from_ambient(format!("D{n}-root"), Ambient::rational(dn_rows(n, 1), 1))
}

/// `Gamma_{4k}`: `D_{4k}` together with `(1/2, ..., 1/2)`.
pub fn gamma(k: usize) -> Result<Lattice> {
    if k == 0 {
        return Err(LatticeError::Invalid("Gamma_4k needs k >= 1".into()));
    }
    let n = 4 * k;
    let mut rows = vec![vec![1; n]];
    rows.extend(dn_rows(n, 2));
    let l = Lattice::from_generators(format!("Gamma{n}"), &rows, 2, 4)?;
    l.require_unimodular()?;
    if l.is_even() != k.is_multiple_of(2) {
        return Err(LatticeError::Construction(format!(
            "Gamma{n} has the wrong parity"
        )));
    }
    Ok(l)
}

pub fn e8() -> Result<Lattice> {
    Ok(gamma(2)?.with_label("E8"))
}

/// Zero-sum vectors of `E8`.
pub fn e7() -> Result<Lattice> {
    kernel_of_forms(&e8()?, &[vec![1; 8]], "E7-root")
}

/// Vectors of `E8` whose last three coordinates agree.
pub fn e6() -> Result<Lattice> {
    let f1 = vec![0, 0, 0, 0, 0, 1, -1, 0];
    let f2 = vec![0, 0, 0, 0, 0, 0, 1, -1];
    kernel_of_forms(&e8()?, &[f1, f2], "E6-root")
}

/// The odd unimodular lattice of rank 15 with root system `A15`: the roots
/// `e_i - e_{i+1}` (`i >= 1`) of `A15` in `Z^16` together with the glue
/// vector `(-1^12, 3^4)/4`.
pub fn a15() -> Result<Lattice> {
    let mut rows = vec![[vec![-1; 12], vec![3; 4]].concat()];
    for i in 1..15 {
        let mut r = vec![0; 16];
        r[i] = 4;
        r[i + 1] = -4;
        rows.push(r);
    }
    let l = Lattice::from_ambient("A15", Ambient::rational(rows, 4))?;
    l.require_unimodular()?;
    Ok(l)
}

/// `E7^2` with the fourteen basis rows of the standard glued model.
pub fn e7_squared() -> Result<Lattice> {
    let mut rows = vec![[1, 1, 1, 1, 1, 1, -3, -3, 1, 1, 1, 1, 1, 1, -3, -3].to_vec()];
    rows.push(
        [2, 2, 2, 2, -2, -2, -2, -2]
            .iter()
            .copied()
            .chain([0; 8])
            .collect(),
    );
    for i in 0..6 {
        let mut r = vec![0; 16];
        r[i] = 4;
        r[i + 1] = -4;
        rows.push(r);
    }
    for i in 9..15 {
        let mut r = vec![0; 16];
        r[i] = 4;
        r[i + 1] = -4;
        rows.push(r);
    }
    let l = Lattice::from_ambient("E7^2", Ambient::rational(rows, 4))?;
    l.require_unimodular()?;
    if l.is_even() {
        return Err(LatticeError::Construction("E7^2 should be odd".into()));
    }
    Ok(l)
}

fn half_block(n: usize, last_negative: bool) -> Vec<i64> {
    let mut v = vec![1; n];
    if last_negative {
        v[n - 1] = -1;
    }
    v
}

/// `D8^2` glued by `((1/2)^8, (-1, 0^7))` and its mirror.
pub fn d8_squared() -> Result<Lattice> {
    let mut rows = block_diag(&[dn_rows(8, 2), dn_rows(8, 2)]);
    rows.push(place(&[vec![1; 8], unit(8, 0, -2)]));
    rows.push(place(&[unit(8, 0, -2), vec![1; 8]]));
    finish("D8^2", Lattice::from_generators("D8^2", &rows, 2, 4)?)
}

/// `D6^3` glued by the three cyclic glue vectors.
pub fn d6_cubed() -> Result<Lattice> {
    let z = vec![0; 6];
    let mut rows = block_diag(&[dn_rows(6, 2), dn_rows(6, 2), dn_rows(6, 2)]);
    rows.push(place(&[
        z.clone(),
        half_block(6, false),
        half_block(6, true),
    ]));
    rows.push(place(&[
        half_block(6, true),
        z.clone(),
        half_block(6, false),
    ]));
    rows.push(place(&[half_block(6, false), half_block(6, true), z]));
    finish("D6^3", Lattice::from_generators("D6^3", &rows, 2, 4)?)
}

/// `D4^5` glued by `((1/2)^4)^5` and the cyclic shifts of `g1`.
pub fn d4_fifth() -> Result<Lattice> {
    let blocks: Vec<Vec<Vec<i64>>> = (0..5).map(|_| dn_rows(4, 2)).collect();
    let mut rows = block_diag(&blocks);
    rows.push(vec![1; 20]);
    let g1 = d4_glue_blocks();
    for s in 0..5 {
        let parts: Vec<Vec<i64>> = (0..5).map(|b| g1[(b + 5 - s) % 5].clone()).collect();
        rows.push(place(&parts));
    }
    finish("D4^5", Lattice::from_generators("D4^5", &rows, 2, 4)?)
}

fn d4_glue_blocks() -> Vec<Vec<i64>> {
    vec![
        vec![0, 0, 0, 0],
        vec![0, 0, 0, 2],
        half_block(4, true),
        half_block(4, true),
        vec![0, 0, 0, 2],
    ]
}

fn finish(label: &str, l: Lattice) -> Result<Lattice> {
    l.require_unimodular()
        .map_err(|_| LatticeError::Construction(format!("{label} is not unimodular")))?;
    Ok(l)
}

/// Construction A: vectors `x / sqrt(2)` with `x mod 2` in the code.
pub fn construction_a(label: &str, c: &BinaryCode) -> Result<Lattice> {
    let n = c.length;
    let mut rows: Vec<Vec<i64>> = (0..n).map(|i| unit(n, i, 2)).collect();
    for &g in &c.generators {
        rows.push((0..n).map(|i| (g >> i & 1) as i64).collect());
    }
    Lattice::from_generators(label, &rows, 1, 2)
}

pub fn a1_22() -> Result<Lattice> {
    let c = code::shortened_golay22()?;
    finish("A1^22", construction_a("A1^22", &c)?)
}

/// Leech lattice as `x / sqrt(8)`: generated by twice the Golay codewords,
/// `4 e_i +- 4 e_j`, and `(-3, 1^23)`.
pub fn leech() -> Result<Lattice> {
    let g = code::golay24()?;
    let mut rows: Vec<Vec<i64>> = g
        .generators
        .iter()
        .map(|&w| (0..24).map(|i| 2 * (w >> i & 1) as i64).collect())
        .collect();
    for i in 0..23 {
        let mut r = unit(24, i, 4);
        r[i + 1] = 4;
        rows.push(r.clone());
        r[i + 1] = -4;
        rows.push(r);
    }
    let mut odd = vec![1; 24];
    odd[0] = -3;
    rows.push(odd);
    let l = Lattice::from_generators("Leech", &rows, 1, 8)?;
    l.require_unimodular()?;
    if !l.is_even() {
        return Err(LatticeError::Construction(
            "Leech lattice should be even".into(),
        ));
    }
    if !shortest_vectors(&l, 3)?.is_empty() {
        return Err(LatticeError::Construction(
            "Leech lattice has vectors of norm < 4".into(),
        ));
    }
    Ok(l)
}

/// The shorter Leech lattice: the orthogonal complement of a norm 4 vector
/// `u` of the Leech lattice, enlarged by its unique integral index-2 glue.
pub fn shorter_leech() -> Result<Lattice> {
    let leech = leech()?;
    let mut u = vec![0; 24];
    u[0] = 4;
    u[1] = 4;
    let uc = leech
        .coords_of_ambient(&u)
        .ok_or_else(|| LatticeError::Construction("(4,4,0,...) not in Leech".into()))?;
    let k = matrix::integer_kernel(&matrix::to_big(&[leech.pairings(&uc)]), 24);
    let k = matrix::to_i64(&k).ok_or_else(|| LatticeError::Overflow("kernel basis".into()))?;
    let perp = leech.sublattice("Leech-perp", &k)?;
    let perp = Lattice::new("Leech-perp", perp.gram().to_vec())?;
    if perp.det() != BigInt::from(4) {
        return Err(LatticeError::Construction(format!(
            "complement has det {}",
            perp.det()
        )));
    }
    let ov = index2_overlattices(&perp)?;
    if ov.len() != 1 {
        return Err(LatticeError::Construction(format!(
            "expected one integral overlattice, found {}",
            ov.len()
        )));
    }
    let o = ov.into_iter().next().unwrap();
    let o = reduce(&Lattice::new("O23", o.gram().to_vec())?)?;
    o.require_unimodular()?;
    if !shortest_vectors(&o, 2)?.is_empty() {
        return Err(LatticeError::Construction(
            "O23 has vectors of norm <= 2".into(),
        ));
    }
    Ok(o)
}

/// Names understood by [`named`].
pub const CATALOG: &[&str] = &[
    "Zn(n)",
    "An(n)",
    "Dn(n)",
    "E6",
    "E7",
    "E8",
    "Gamma(4k)",
    "D12",
    "A15",
    "E7^2",
    "D8^2",
    "D6^3",
    "D4^5",
    "A1^22",
    "Leech",
    "O23",
];

fn parse_arg(name: &str, prefix: &str) -> Option<usize> {
    let rest = name.strip_prefix(prefix)?;
    let inner = rest
        .strip_prefix('(')
        .and_then(|r| r.strip_suffix(')'))
        .unwrap_or(rest);
    inner.parse().ok()
}

pub fn named(name: &str) -> Result<Lattice> {
    let name = name.trim();
    match name {
        "E6" => return e6(),
        "E7" => return e7(),
        "E8" => return e8(),
        "D12" | "Gamma12" => return Ok(gamma(3)?.with_label(name)),
        "A15" => return a15(),
        "E7^2" | "E7E7" => return e7_squared(),
        "D8^2" => return d8_squared(),
        "D6^3" => return d6_cubed(),
        "D4^5" => return d4_fifth(),
        "A1^22" => return a1_22(),
        "Leech" => return leech(),
        "O23" => return shorter_leech(),
        _ => {}
    }
    if let Some(n) = parse_arg(name, "Zn").or_else(|| parse_arg(name, "Z")) {
        return Ok(zn(n));
    }
    if let Some(n) = parse_arg(name, "An") {
        return an(n);
    }
    if let Some(n) = parse_arg(name, "Dn") {
        return dn(n);
    }
    if let Some(n) = parse_arg(name, "Gamma") {
        if n % 4 != 0 || n == 0 {
            return Err(LatticeError::Invalid(format!(
                "Gamma rank {n} is not a positive multiple of 4"
            )));
        }
        return gamma(n / 4);
    }
    Err(LatticeError::Invalid(format!(
        "unknown lattice name {name:?}; known: {}",
        CATALOG.join(", ")
    )))
}

/// Named glue witness vectors in lattice coordinates.
pub fn glue_witness(name: &str) -> Result<LatticeVector> {
    let (l, amb) = match name {
        "D8^2" => {
            // g1 + g2
            let mut v = vec![1; 16];
            v[0] = -1;
            v[8] = -1;
            (d8_squared()?, v)
        }
        "D6^3" => {
            // g1 - g2
            let mut v = vec![-1, -1, -1, -1, -1, 1];
            v.extend(vec![1; 6]);
            v.extend([0, 0, 0, 0, 0, -2]);
            (d6_cubed()?, v)
        }
        "D4^5" => (d4_fifth()?, vec![1; 20]),
        "Gamma12" | "D12" => (gamma(3)?, vec![1; 12]),
        _ => {
            return Err(LatticeError::Invalid(format!(
                "no named witness for {name}"
            )))
        }
    };
    l.coords_of_ambient(&amb)
        .ok_or_else(|| LatticeError::Construction(format!("{name} witness is not in the lattice")))
}

/// `(1/2, ..., 1/2)` in `Gamma_{4k}`.
pub fn gamma_half_vector(k: usize) -> Result<(Lattice, LatticeVector)> {
    let l = gamma(k)?;
    let v = l
        .coords_of_ambient(&vec![1; 4 * k])
        .ok_or_else(|| LatticeError::Construction("half vector missing".into()))?;
    Ok((l, v))
}

/// A weight-10 codeword lift `v / sqrt(2)` in `A1^22` whose class has
/// minimal set `{w, -w}`; the first such codeword in enumeration order.
pub fn a1_22_witness(l: &Lattice) -> Result<LatticeVector> {
    let c = code::shortened_golay22()?;
    for w in c.codewords() {
        if w.count_ones() != 10 {
            continue;
        }
        let amb: Vec<i64> = (0..22).map(|i| (w >> i & 1) as i64).collect();
        let Some(x) = l.coords_of_ambient(&amb) else {
            continue;
        };
        let min = coset_minima(l, CosetClass::of(&x))?;
        if min.min_norm == 5 && min.vectors.len() == 2 {
            return Ok(x);
        }
    }
    Err(LatticeError::Construction(
        "no weight-10 witness found".into(),
    ))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RootComponent {
    pub kind: char,
    pub rank: usize,
    pub root_count: usize,
    pub basis: Vec<LatticeVector>,
}

impl RootComponent {
    pub fn name(&self) -> String {
        format!("{}{}", self.kind, self.rank)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RootDecomposition {
    pub components: Vec<RootComponent>,
    pub total_roots: usize,
}

impl RootDecomposition {
    /// Compact label such as `E7^2` or `A11 E6`; `O` when there are no roots.
    pub fn label(&self) -> String {
        if self.components.is_empty() {
            return "O".into();
        }
        let mut parts: Vec<(String, usize)> = Vec::new();
        for c in &self.components {
            match parts.last_mut() {
                Some((n, k)) if *n == c.name() => *k += 1,
                _ => parts.push((c.name(), 1)),
            }
        }
        parts
            .iter()
            .map(|(n, k)| {
                if *k == 1 {
                    n.clone()
                } else {
                    format!("{n}^{k}")
                }
            })
            .collect::<Vec<_>>()
            .join(" ")
    }
}

fn ade_type(rank: usize, count: usize) -> Option<char> {
    if count == rank * (rank + 1) {
        return Some('A');
    }
    if rank >= 4 && count == 2 * rank * (rank - 1) {
        return Some('D');
    }
    match (rank, count) {
        (6, 72) | (7, 126) | (8, 240) => Some('E'),
        _ => None,
    }
}

pub fn root_decomposition(l: &Lattice) -> Result<RootDecomposition> {
    let roots: Vec<LatticeVector> = shortest_vectors(l, 2)?
        .into_iter()
        .filter(|v| l.norm(v) == 2)
        .collect();
    let n = roots.len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        let mut y = x;
        while p[y] != r {
            let next = p[y];
            p[y] = r;
            y = next;
        }
        r
    }
    let pair: Vec<Vec<i64>> = roots.iter().map(|r| l.pairings(r)).collect();
    for i in 0..n {
        for j in i + 1..n {
            let ip: i64 = pair[i].iter().zip(&roots[j]).map(|(a, b)| a * b).sum();
            if ip != 0 {
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                if a != b {
                    parent[a.max(b)] = a.min(b);
                }
            }
        }
    }
    let mut groups: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
    for i in 0..n {
        let r = find(&mut parent, i);
        groups.entry(r).or_default().push(i);
    }
    let mut components = Vec::new();
    for idx in groups.values() {
        let rows: Vec<Vec<i64>> = idx.iter().map(|&i| roots[i].clone()).collect();
        let basis = matrix::to_i64(&matrix::hnf_basis(&matrix::to_big(&rows)))
            .ok_or_else(|| LatticeError::Overflow("root basis".into()))?;
        let rank = basis.len();
        let kind = ade_type(rank, rows.len()).ok_or_else(|| {
            LatticeError::Construction(format!(
                "root component of rank {rank} with {} roots is not of type ADE",
                rows.len()
            ))
        })?;
        components.push(RootComponent {
            kind,
            rank,
            root_count: rows.len(),
            basis,
        });
    }
    components.sort_by(|a, b| {
        b.rank
            .cmp(&a.rank)
            .then(a.kind.cmp(&b.kind))
            .then(a.basis.cmp(&b.basis))
    });
    Ok(RootDecomposition {
        components,
        total_roots: n,
    })
}

/// Splits off the norm 1 vectors: returns `k` and the complement, so that
/// `l = Z^k + complement`.
pub fn reduced_part(l: &Lattice) -> Result<(usize, Lattice)> {
    let ones: Vec<LatticeVector> = shortest_vectors(l, 1)?
        .into_iter()
        .filter(|v| v.iter().find(|&&x| x != 0).is_some_and(|&x| x > 0))
        .collect();
    let k = ones.len();
    let forms: Vec<Vec<i64>> = ones.iter().map(|u| l.pairings(u)).collect();
    let label = format!("{}-reduced", l.label);
    if k == 0 {
        return Ok((0, l.clone().with_label(label)));
    }
    let ker = matrix::to_i64(&matrix::integer_kernel(&matrix::to_big(&forms), l.rank()))
        .ok_or_else(|| LatticeError::Overflow("kernel basis".into()))?;
    if ker.is_empty() {
        let mut z = Lattice::new(label, Vec::new())?;
        z.sign = l.sign;
        return Ok((k, z));
    }
    let sub = l.sublattice(label, &ker)?;
    Ok((k, reduce(&sub)?))
}

/// Rank and the exact norm counts `a_1, a_2, a_3`.
pub fn small_norm_counts(l: &Lattice) -> Result<[u64; 3]> {
    let c = crate::enumerate::norm_counts(l, 3)?;
    Ok([c[1], c[2], c[3]])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn root_lattice_determinants() {
        assert_eq!(an(3).unwrap().det(), BigInt::from(4));
        assert_eq!(dn(5).unwrap().det(), BigInt::from(4));
        assert_eq!(e7().unwrap().det(), BigInt::from(2));
        assert_eq!(e6().unwrap().det(), BigInt::from(3));
        assert_eq!(e8().unwrap().det(), BigInt::from(1));
    }

    #[test]
    fn gamma_parity() {
        for k in 1..5 {
            let g = gamma(k).unwrap();
            assert!(g.is_unimodular());
            assert_eq!(g.is_even(), k % 2 == 0);
        }
    }

    #[test]
    fn root_types_of_small_lattices() {
        let e7 = root_decomposition(&e7().unwrap()).unwrap();
        assert_eq!(e7.label(), "E7");
        assert_eq!(e7.total_roots, 126);
        let e6 = root_decomposition(&e6().unwrap()).unwrap();
        assert_eq!(e6.label(), "E6");
        let d4 = root_decomposition(&dn(4).unwrap()).unwrap();
        assert_eq!(d4.label(), "D4");
        let a3 = root_decomposition(&dn(3).unwrap()).unwrap();
        assert_eq!(a3.label(), "A3");
    }

    #[test]
    fn reduced_part_of_gamma4_is_empty() {
        let (k, r) = reduced_part(&gamma(1).unwrap()).unwrap();
        assert_eq!(k, 4);
        assert_eq!(r.rank(), 0);
    }

    #[test]
    fn construction_a_of_repetition_code() {
        let c = BinaryCode::new(2, vec![0b11]).unwrap();
        let l = construction_a("rep", &c).unwrap();
        assert_eq!(l.gram(), &[vec![1, 1], vec![1, 2]]);
        let zero = BinaryCode::new(3, vec![]).unwrap();
        let l = construction_a("zero", &zero).unwrap();
        assert_eq!(l.gram(), &[vec![2, 0, 0], vec![0, 2, 0], vec![0, 0, 2]]);
    }

    #[test]
    fn named_parsing() {
        assert_eq!(named("Z5").unwrap().rank(), 5);
        assert_eq!(named("Zn(3)").unwrap().rank(), 3);
        assert_eq!(named("An(4)").unwrap().rank(), 4);
        assert_eq!(named("Gamma(12)").unwrap().rank(), 12);
        assert!(named("nope").is_err());
    }
}
