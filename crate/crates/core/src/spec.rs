//! Lattice spec files.
//!
//! A spec is a JSON object with an optional `"name"` (or `"label"`), an
//! optional `"sign"` and exactly one source: `"gram"`, `"ambient"` or
//! `"construction"`. Integers may be JSON numbers or decimal strings.
//! `to_spec` writes the canonical form, which parses back to the same
//! lattice.

use serde_json::Value;

use crate::code::{parse_word, BinaryCode};
use crate::constructions::{self, GlueSpec};
use crate::error::{LatticeError, Result};
use crate::lattice::{direct_sum, Ambient, Lattice};

fn invalid(msg: impl Into<String>) -> LatticeError {
    LatticeError::Invalid(msg.into())
}

fn int(v: &Value) -> Result<i64> {
    match v {
        Value::Number(n) => n
            .as_i64()
            .ok_or_else(|| LatticeError::Overflow(n.to_string())),
        Value::String(s) => s.trim().parse::<i64>().map_err(|_| {
            if s.trim().parse::<num_bigint::BigInt>().is_ok() {
                LatticeError::Overflow(s.clone())
            } else {
                invalid(format!("{s:?} is not an integer"))
            }
        }),
        other => Err(invalid(format!("expected an integer, found {other}"))),
    }
}

fn int_field(obj: &Value, key: &str) -> Result<i64> {
    int(obj
        .get(key)
        .ok_or_else(|| invalid(format!("missing field {key:?}")))?)
}

fn matrix(v: &Value) -> Result<Vec<Vec<i64>>> {
    let rows = v.as_array().ok_or_else(|| invalid("expected a matrix"))?;
    rows.iter()
        .map(|r| {
            r.as_array()
                .ok_or_else(|| invalid("expected a matrix row"))?
                .iter()
                .map(int)
                .collect()
        })
        .collect()
}

fn matrix_field(obj: &Value, key: &str) -> Result<Vec<Vec<i64>>> {
    match obj.get(key) {
        Some(v) => matrix(v),
        None => Ok(Vec::new()),
    }
}

fn ambient(v: &Value) -> Result<Ambient> {
    let rows = matrix_field(v, "rows")?;
    let denominator = int_field(v, "denominator")?;
    if denominator <= 0 {
        return Err(invalid("ambient denominator must be positive"));
    }
    let norm_divisor = match v.get("norm_divisor") {
        Some(x) => int(x)?,
        None => denominator * denominator,
    };
    if norm_divisor <= 0 {
        return Err(invalid("norm_divisor must be positive"));
    }
    Ok(Ambient {
        rows,
        denominator,
        norm_divisor,
    })
}

fn code(v: &Value) -> Result<BinaryCode> {
    let length = int_field(v, "length")? as usize;
    let gens = v
        .get("generators")
        .and_then(Value::as_array)
        .ok_or_else(|| invalid("code needs generators"))?
        .iter()
        .map(|g| {
            let s = g
                .as_str()
                .ok_or_else(|| invalid("codewords are bit strings"))?;
            if s.len() != length {
                return Err(invalid(format!(
                    "codeword {s} does not have length {length}"
                )));
            }
            parse_word(s).ok_or_else(|| invalid(format!("bad codeword {s}")))
        })
        .collect::<Result<Vec<u64>>>()?;
    BinaryCode::new(length, gens)
}

/// Builds the lattice described by a `"construction"` object.
pub fn construction(v: &Value) -> Result<Lattice> {
    let kind = v
        .get("kind")
        .and_then(Value::as_str)
        .ok_or_else(|| invalid("construction needs a kind"))?;
    match kind {
        "named" => {
            let name = v
                .get("name")
                .and_then(Value::as_str)
                .ok_or_else(|| invalid("named needs a name"))?;
            constructions::named(name)
        }
        "root" => {
            let t = v
                .get("type")
                .and_then(Value::as_str)
                .ok_or_else(|| invalid("root needs a type"))?;
            let n = int_field(v, "rank")? as usize;
            match (t, n) {
                ("A", n) => constructions::an(n),
                ("D", n) => constructions::dn(n),
                ("E", 6) => constructions::e6(),
                ("E", 7) => constructions::e7(),
                ("E", 8) => constructions::e8(),
                ("Z", n) => Ok(constructions::zn(n)),
                _ => Err(invalid(format!("unknown root lattice {t}{n}"))),
            }
        }
        "gamma" => {
            let k = match v.get("k") {
                Some(k) => int(k)?,
                None => {
                    let n = int_field(v, "rank")?;
                    if n % 4 != 0 {
                        return Err(invalid("gamma rank must be a multiple of 4"));
                    }
                    n / 4
                }
            };
            if k < 1 {
                return Err(invalid("gamma needs k >= 1"));
            }
            constructions::gamma(k as usize)
        }
        "glue" => {
            let spec = GlueSpec {
                ambient_dim: int_field(v, "ambient_dim")? as usize,
                denominator: int_field(v, "denominator")?,
                base_rows: matrix_field(v, "base_rows")?,
                glue_rows: matrix_field(v, "glue_rows")?,
            };
            constructions::glue("glue", &spec)
        }
        "construction_a" => {
            let c = code(
                v.get("code")
                    .ok_or_else(|| invalid("construction_a needs a code"))?,
            )?;
            constructions::construction_a("construction-A", &c)
        }
        "direct_sum" => {
            let parts = v
                .get("parts")
                .and_then(Value::as_array)
                .ok_or_else(|| invalid("direct_sum needs parts"))?;
            let mut it = parts.iter();
            let first = it
                .next()
                .ok_or_else(|| invalid("direct_sum needs at least one part"))?;
            let mut acc = parse(first)?;
            for p in it {
                acc = direct_sum(&acc, &parse(p)?)?;
            }
            Ok(acc)
        }
        other => Err(invalid(format!("unknown construction kind {other:?}"))),
    }
}

/// Builds the lattice described by a spec value.
pub fn parse(v: &Value) -> Result<Lattice> {
    if !v.is_object() {
        return Err(invalid("a lattice spec is a JSON object"));
    }
    let sign = match v.get("sign") {
        Some(s) => int(s)?,
        None => 1,
    };
    if sign != 1 && sign != -1 {
        return Err(invalid("sign must be 1 or -1"));
    }
    let sources = ["gram", "ambient", "construction"]
        .iter()
        .filter(|k| v.get(**k).is_some_and(|x| !x.is_null()))
        .count();
    let mut l = if let Some(c) = v.get("construction").filter(|x| !x.is_null()) {
        if sources > 1 {
            return Err(invalid("give only one of gram, ambient, construction"));
        }
        let mut l = construction(c)?;
        if sign < 0 {
            l = l.with_sign(-1);
        }
        l
    } else if let Some(a) = v.get("ambient").filter(|x| !x.is_null()) {
        let l = Lattice::from_ambient("lattice", ambient(a)?)?;
        if let Some(g) = v.get("gram").filter(|x| !x.is_null()) {
            // canonical files carry both; they must agree
            let g = matrix(g)?;
            let expect: Vec<Vec<i64>> = l
                .gram()
                .iter()
                .map(|r| r.iter().map(|x| x * sign).collect())
                .collect();
            if g != expect {
                return Err(LatticeError::AmbientMismatch);
            }
        }
        l.with_sign(sign as i8)
    } else if let Some(g) = v.get("gram").filter(|x| !x.is_null()) {
        Lattice::from_signed_gram("lattice", matrix(g)?, sign as i8)?
    } else {
        return Err(invalid("spec needs one of gram, ambient, construction"));
    };
    if let Some(name) = v
        .get("name")
        .or_else(|| v.get("label"))
        .and_then(Value::as_str)
    {
        l = l.with_label(name);
    }
    Ok(l)
}

/// Canonical spec: name, sign, the signed Gram matrix and the ambient rows
/// when known.
pub fn to_spec(l: &Lattice) -> Value {
    let mut v = serde_json::json!({
        "name": l.label,
        "sign": l.sign,
        "gram": l.signed_gram(),
    });
    if let Some(a) = &l.ambient {
        v["ambient"] = serde_json::json!({
            "rows": a.rows,
            "denominator": a.denominator,
            "norm_divisor": a.norm_divisor,
        });
    }
    v
}

/// Accepts `named:<catalog name>`, a bare catalog name, or a JSON spec
/// text.
pub fn parse_str(s: &str) -> Result<Lattice> {
    let t = s.trim();
    if let Some(name) = t.strip_prefix("named:") {
        return constructions::named(name);
    }
    if t.starts_with('{') {
        let v: Value = serde_json::from_str(t).map_err(|e| invalid(format!("bad JSON: {e}")))?;
        return parse(&v);
    }
    constructions::named(t)
}
