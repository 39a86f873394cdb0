//! Binary linear codes of length at most 64, stored as bit masks.

use serde::{Deserialize, Serialize};

use crate::error::{LatticeError, Result};

/// Bit `i` of a word is coordinate `i`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BinaryCode {
    pub length: usize,
    #[serde(with = "word_strings")]
    pub generators: Vec<u64>,
}

mod word_strings {
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(w: &[u64], s: S) -> Result<S::Ok, S::Error> {
        // the length is not known here; trailing zeros are trimmed
        s.collect_seq(
            w.iter()
                .map(|&x| super::word_to_string(x, 64 - x.leading_zeros() as usize)),
        )
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<u64>, D::Error> {
        let v: Vec<String> = Vec::deserialize(d)?;
        v.iter()
            .map(|s| {
                super::parse_word(s)
                    .ok_or_else(|| serde::de::Error::custom(format!("bad codeword {s}")))
            })
            .collect()
    }
}

pub fn word_to_string(w: u64, len: usize) -> String {
    (0..len)
        .map(|i| if w >> i & 1 == 1 { '1' } else { '0' })
        .collect()
}

pub fn parse_word(s: &str) -> Option<u64> {
    if s.len() > 64 {
        return None;
    }
    let mut w = 0u64;
    for (i, c) in s.chars().enumerate() {
        match c {
            '0' => {}
            '1' => w |= 1 << i,
            _ => return None,
        }
    }
    Some(w)
}

/// Row-reduces `rows` over GF(2), returning an independent spanning set.
pub fn gf2_basis(rows: &[u64]) -> Vec<u64> {
    let mut basis: Vec<u64> = Vec::new();
    for &r in rows {
        let mut x = r;
        for &b in &basis {
            let top = 63 - b.leading_zeros();
            if x >> top & 1 == 1 {
                x ^= b;
            }
        }
        if x != 0 {
            // keep basis sorted by leading bit, fully reduced
            let top = 63 - x.leading_zeros();
            for b in basis.iter_mut() {
                if *b >> top & 1 == 1 {
                    *b ^= x;
                }
            }
            basis.push(x);
            basis.sort_unstable_by(|a, b| b.cmp(a));
        }
    }
    basis
}

impl BinaryCode {
    pub fn new(length: usize, generators: Vec<u64>) -> Result<Self> {
        if length > 64 {
            return Err(LatticeError::Invalid(
                "codes longer than 64 are unsupported".into(),
            ));
        }
        let mask = if length == 64 {
            u64::MAX
        } else {
            (1u64 << length) - 1
        };
        if generators.iter().any(|g| g & !mask != 0) {
            return Err(LatticeError::Invalid(
                "generator exceeds code length".into(),
            ));
        }
        if gf2_basis(&generators).len() != generators.len() {
            return Err(LatticeError::Invalid(
                "generators are linearly dependent".into(),
            ));
        }
        Ok(BinaryCode { length, generators })
    }

    pub fn dimension(&self) -> usize {
        self.generators.len()
    }

    /// All `2^k` codewords, indexed by the generator combination.
    pub fn codewords(&self) -> Vec<u64> {
        let k = self.dimension();
        let mut out = vec![0u64; 1 << k];
        for i in 1..out.len() {
            let low = i.trailing_zeros() as usize;
            out[i] = out[i & (i - 1)] ^ self.generators[low];
        }
        out
    }

    /// `enumerator[w]` is the number of codewords of weight `w`.
    pub fn weight_enumerator(&self) -> Vec<u64> {
        let mut e = vec![0u64; self.length + 1];
        for c in self.codewords() {
            e[c.count_ones() as usize] += 1;
        }
        e
    }

    pub fn min_distance(&self) -> Option<usize> {
        self.weight_enumerator()
            .iter()
            .enumerate()
            .skip(1)
            .find(|(_, &c)| c > 0)
            .map(|(w, _)| w)
    }

    pub fn is_self_orthogonal(&self) -> bool {
        self.generators.iter().all(|a| {
            self.generators
                .iter()
                .all(|b| (a & b).count_ones() % 2 == 0)
        })
    }
}

fn quadratic_residues(p: u64) -> Vec<u64> {
    let mut q: Vec<u64> = (1..p).map(|x| x * x % p).collect();
    q.sort_unstable();
    q.dedup();
    q
}

fn cyclic_span(seed: u64, p: usize) -> Vec<u64> {
    let mask = (1u64 << p) - 1;
    let shifts: Vec<u64> = (0..p)
        .map(|s| ((seed << s) | (seed >> (p - s))) & mask)
        .collect();
    gf2_basis(&shifts)
}

/// The extended binary Golay code: a quadratic residue code of length 23 with
/// a parity bit in coordinate 23. Checked to be `[24,12,8]` with weight
/// distribution 1, 759, 2576, 759, 1.
pub fn golay24() -> Result<BinaryCode> {
    let p = 23usize;
    let q = quadratic_residues(p as u64);
    let qr: u64 = q.iter().fold(0, |a, &i| a | 1 << i);
    let all = (1u64 << p) - 1;
    let nr = all & !qr & !1;
    let seeds = [qr, nr, qr | 1, nr | 1];
    let code23 = seeds
        .iter()
        .map(|&s| cyclic_span(s, p))
        .find(|b| {
            b.len() == 12
                && BinaryCode::new(p, b.clone())
                    .ok()
                    .and_then(|c| c.min_distance())
                    == Some(7)
        })
        .ok_or_else(|| LatticeError::Construction("no [23,12,7] residue code found".into()))?;
    let gens: Vec<u64> = code23
        .iter()
        .map(|&g| {
            if g.count_ones() % 2 == 1 {
                g | 1 << 23
            } else {
                g
            }
        })
        .collect();
    let c = BinaryCode::new(24, gens)?;
    let e = c.weight_enumerator();
    let mut expect = vec![0u64; 25];
    expect[0] = 1;
    expect[8] = 759;
    expect[12] = 2576;
    expect[16] = 759;
    expect[24] = 1;
    if e != expect {
        return Err(LatticeError::Construction(format!(
            "unexpected Golay weights {e:?}"
        )));
    }
    Ok(c)
}

/// Codewords of the Golay code agreeing on coordinates 0 and 1, restricted to
/// coordinates 2..24.
pub fn shortened_golay22() -> Result<BinaryCode> {
    let g = golay24()?;
    let words: Vec<u64> = g
        .codewords()
        .into_iter()
        .filter(|w| (w & 1) == (w >> 1 & 1))
        .map(|w| w >> 2)
        .collect();
    let basis = gf2_basis(&words);
    let c = BinaryCode::new(22, basis)?;
    if c.dimension() != 11 {
        return Err(LatticeError::Construction(format!(
            "shortened code has dimension {}",
            c.dimension()
        )));
    }
    Ok(c)
}
