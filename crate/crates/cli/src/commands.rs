use std::path::{Path, PathBuf};
use std::time::Instant;

use anyhow::Context;
use lattice_lab_core::census::e7_squared_census;
use lattice_lab_core::constructions::{root_decomposition, small_norm_counts};
use lattice_lab_core::coset::{coset_minima_with, min_characteristic_norm};
use lattice_lab_core::enumerate::Enumerator;
use lattice_lab_core::invariants::{compute, verify_witness, EXHAUSTIVE_RANK};
use lattice_lab_core::spec::{parse, parse_str, to_spec};
use lattice_lab_core::zeta::{self, substitute_epsilon, verify_up_to, xi_check, zeta_prime};
use lattice_lab_core::{
    Budget, CosetClass, Invariant, InvariantReport, Lattice, LatticeError, Mode,
};
use serde_json::{json, Value};

use crate::{
    CensusKind, Command, Failure, Format, ModeArg, ReportKind, RingCommand, EXIT_INVALID, EXIT_OK,
    EXIT_PARTIAL, EXIT_VERIFY,
};

type Outcome = Result<u8, Failure>;

/// Exhaustive scans above this rank need `--force`.
const FORCE_RANK: usize = 18;

fn invalid(msg: impl Into<String>) -> Failure {
    Failure {
        code: EXIT_INVALID,
        message: msg.into(),
    }
}

fn emit(format: Format, value: &Value, text: impl FnOnce() -> String) {
    match format {
        Format::Json => println!("{}", serde_json::to_string_pretty(value).expect("json")),
        Format::Text => print!("{}", text()),
    }
}

/// A path to a spec file, or anything `parse_str` accepts.
pub fn load_lattice(arg: &str) -> anyhow::Result<Lattice> {
    let p = Path::new(arg);
    if !arg.trim_start().starts_with('{') && !arg.starts_with("named:") && p.is_file() {
        let text = std::fs::read_to_string(p).with_context(|| format!("reading {arg}"))?;
        let v: Value = serde_json::from_str(&text).with_context(|| format!("parsing {arg}"))?;
        return Ok(parse(&v)?);
    }
    Ok(parse_str(arg)?)
}

fn parse_vector(s: &str, l: &Lattice) -> Result<Vec<i64>, Failure> {
    let v = s
        .split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .map(|t| {
            t.parse::<i64>()
                .map_err(|_| invalid(format!("bad coordinate {t:?}")))
        })
        .collect::<Result<Vec<_>, _>>()?;
    l.check_vector(&v)?;
    Ok(v)
}

fn budget(seconds: Option<u64>) -> Budget {
    seconds.map_or_else(Budget::unlimited, Budget::seconds)
}

fn write_json(path: &Path, v: &Value) -> Result<(), Failure> {
    let text = serde_json::to_string_pretty(v).expect("json") + "\n";
    std::fs::write(path, text).map_err(|e| invalid(format!("writing {}: {e}", path.display())))
}

pub fn run(cmd: Command, format: Format) -> Outcome {
    match cmd {
        Command::Build { lattice, out } => build(&lattice, out, format),
        Command::Invariant {
            name,
            lattice,
            mode,
            norm_bound,
            witness,
            modulus,
            budget_seconds,
            force,
            out,
        } => {
            let l = load_lattice(&lattice)?;
            let inv = Invariant::parse(&name, modulus)?;
            let mode = resolve_mode(&l, mode, norm_bound, witness.as_deref(), force)?;
            invariant(&l, inv, &mode, budget(budget_seconds), out, format)
        }
        Command::Minima {
            lattice,
            class,
            vector,
            budget_seconds,
        } => minima(&lattice, class, vector, budget(budget_seconds), format),
        Command::Roots { lattice } => roots(&lattice, format),
        Command::CharMin { lattice } => char_min(&lattice, format),
        Command::Report {
            which:
                ReportKind::Elkies {
                    budget_seconds,
                    norm_bound,
                },
        } => elkies(budget_seconds, norm_bound, format),
        Command::Census {
            which: CensusKind::E72,
        } => census(format),
        Command::Ring { which } => ring(which, format),
        Command::VerifyCertificate { certificate } => verify_certificate(&certificate, format),
    }
}

fn build(arg: &str, out: Option<PathBuf>, format: Format) -> Outcome {
    let l = load_lattice(arg)?;
    let v = l.validate()?;
    let roots = root_decomposition(&l)?;
    let spec = to_spec(&l);
    if let Some(p) = &out {
        write_json(p, &spec)?;
    }
    let summary = json!({
        "name": l.label,
        "rank": l.rank(),
        "det": (&v.det * if l.sign < 0 && l.rank() % 2 == 1 { -1i64 } else { 1 }).to_string(),
        "sign": l.sign,
        "even": v.even,
        "unimodular": v.unimodular,
        "roots": roots.label(),
        "root_count": roots.total_roots,
        "lattice": spec,
    });
    emit(format, &summary, || {
        let mut s = format!(
            "{}: rank {}, det {}, {}, {}\nroots: {} ({} roots)\n",
            l.label,
            l.rank(),
            summary["det"].as_str().unwrap_or_default(),
            if v.even { "even" } else { "odd" },
            if v.unimodular {
                "unimodular"
            } else {
                "not unimodular"
            },
            roots.label(),
            roots.total_roots
        );
        if out.is_none() {
            s += &serde_json::to_string(&spec).expect("json");
            s.push('\n');
        }
        s
    });
    Ok(EXIT_OK)
}

fn resolve_mode(
    l: &Lattice,
    mode: Option<ModeArg>,
    norm_bound: i64,
    witness: Option<&str>,
    force: bool,
) -> Result<Mode, Failure> {
    let mode = match (mode, witness) {
        (Some(ModeArg::User) | None, Some(w)) => Mode::User {
            w: parse_vector(w, l)?,
        },
        (Some(ModeArg::User), None) => return Err(invalid("user mode needs --witness")),
        (Some(_), Some(_)) => return Err(invalid("--witness is only used in user mode")),
        (Some(ModeArg::Exhaustive), None) => Mode::Exhaustive,
        (Some(ModeArg::Witness), None) => Mode::Witness { norm_bound },
        (None, None) => match Mode::default_for(l) {
            Mode::Witness { .. } => Mode::Witness { norm_bound },
            m => m,
        },
    };
    if let Mode::Witness { norm_bound } = mode {
        if norm_bound < 2 {
            return Err(invalid("--norm-bound must be at least 2"));
        }
    }
    if mode == Mode::Exhaustive && l.rank() > FORCE_RANK && !force {
        return Err(invalid(format!(
            "exhaustive scan of rank {} needs 2^{} classes; pass --force or use witness mode",
            l.rank(),
            l.rank()
        )));
    }
    Ok(mode)
}

fn report_text(r: &InvariantReport) -> String {
    let rel = if r.exact { "=" } else { ">=" };
    let mut s = format!("{} {rel} {}  [{}", r.invariant, r.value, r.mode);
    if r.partial {
        s += ", budget exhausted";
        if let Some(u) = r.upper_bound {
            s += &format!(", values above {u} excluded");
        }
    }
    s += &format!(", {} classes, {} ms]\n", r.cosets_scanned, r.elapsed_ms);
    if let Some(w) = &r.witness {
        let deg = w.monomial.degree();
        s += &format!(
            "witness w = {:?}, |Min| = {}, degree {} (m0 {}, m1 {}), eta = {}\n",
            w.w, w.min_set_size, deg, w.monomial.m0, w.monomial.m1, w.eta
        );
    }
    s
}

fn invariant(
    l: &Lattice,
    inv: Invariant,
    mode: &Mode,
    budget: Budget,
    out: Option<PathBuf>,
    format: Format,
) -> Outcome {
    l.require_unimodular()?;
    let report = compute(l, inv, mode, &budget)?;
    let cert = json!({"lattice": to_spec(l), "report": report});
    if let Some(p) = &out {
        write_json(p, &cert)?;
    }
    emit(format, &cert, || {
        format!("{}: {}", l.label, report_text(&report))
    });
    Ok(if report.partial {
        EXIT_PARTIAL
    } else {
        EXIT_OK
    })
}

fn minima(
    arg: &str,
    class: Option<String>,
    vector: Option<String>,
    budget: Budget,
    format: Format,
) -> Outcome {
    let l = load_lattice(arg)?;
    let n = l.rank();
    let c = match (class, vector) {
        (Some(s), None) => {
            if s.len() != n {
                return Err(invalid(format!("class needs {n} bits")));
            }
            CosetClass::parse(&s).ok_or_else(|| invalid(format!("bad class {s:?}")))?
        }
        (None, Some(v)) => CosetClass::of(&parse_vector(&v, &l)?),
        _ => return Err(invalid("give --class or --vector")),
    };
    let e = Enumerator::new(&l);
    let res = coset_minima_with(&e, c, &budget)?;
    let v = json!({
        "lattice": l.label,
        "class": c.to_bit_string(n),
        "min_norm": res.min_norm,
        "count": res.vectors.len(),
        "vectors": res.vectors,
    });
    emit(format, &v, || {
        let mut s = format!(
            "class {}: min norm {}, {} vectors\n",
            c.to_bit_string(n),
            res.min_norm,
            res.vectors.len()
        );
        for x in &res.vectors {
            s += &format!("  {x:?}\n");
        }
        s
    });
    Ok(EXIT_OK)
}

fn roots(arg: &str, format: Format) -> Outcome {
    let l = load_lattice(arg)?;
    let d = root_decomposition(&l)?;
    let v = json!({
        "lattice": l.label,
        "label": d.label(),
        "total_roots": d.total_roots,
        "components": d.components.iter().map(|c| json!({
            "name": c.name(), "rank": c.rank, "root_count": c.root_count, "basis": c.basis,
        })).collect::<Vec<_>>(),
    });
    emit(format, &v, || {
        let mut s = format!("{}: {} ({} roots)\n", l.label, d.label(), d.total_roots);
        for c in &d.components {
            s += &format!("  {} with {} roots\n", c.name(), c.root_count);
        }
        s
    });
    Ok(EXIT_OK)
}

fn char_min(arg: &str, format: Format) -> Outcome {
    let l = load_lattice(arg)?;
    l.require_unimodular()?;
    let m = min_characteristic_norm(&l)?;
    let n = l.rank() as i64;
    let v =
        json!({"lattice": l.label, "rank": n, "min_characteristic_norm": m, "rank_minus_8": n - 8});
    emit(format, &v, || {
        format!(
            "{}: min characteristic norm {m} (rank - 8 = {})\n",
            l.label,
            n - 8
        )
    });
    Ok(EXIT_OK)
}

const ELKIES: [&str; 9] = [
    "E8", "D12", "E7^2", "A15", "D8^2", "D6^3", "D4^5", "A1^22", "O23",
];
const ELKIES_UNBUILT: [(&str, usize); 5] = [
    ("A11E6", 17),
    ("A9^2", 18),
    ("A7^2D5", 19),
    ("A5^4", 20),
    ("A3^7", 21),
];

/// Invariant columns of the report; `e0` only where it is cheap.
fn report_invariants(rank: usize) -> Vec<Invariant> {
    let mut v = vec![Invariant::M, Invariant::F2, Invariant::F4];
    if rank <= 14 {
        v.push(Invariant::E0);
    }
    v
}

fn elkies(budget_seconds: Option<u64>, norm_bound: i64, format: Format) -> Outcome {
    let per = budget_seconds.unwrap_or(60);
    let mut rows = Vec::new();
    let mut text =
        String::from("lattice  n  a2 (formula)  a3 (formula)  char-min (n-8)  invariants\n");
    let mut all_ok = true;
    for name in ELKIES {
        let l = lattice_lab_core::named(name)?;
        let n = l.rank() as i64;
        let [a1, a2, a3] = small_norm_counts(&l)?;
        let a2f = 2 * n * (23 - n);
        let a3f = 8 * n * (28 - n) * (n - 8) / 3;
        let cm = min_characteristic_norm(&l)?;
        let ok = a1 == 0 && a2 as i64 == a2f && a3 as i64 == a3f && cm >= n - 8;
        all_ok &= ok;
        let mode = if l.rank() <= EXHAUSTIVE_RANK {
            Mode::Exhaustive
        } else {
            Mode::Witness { norm_bound }
        };
        let mut invs = serde_json::Map::new();
        let mut cells = Vec::new();
        let mut exact = std::collections::HashMap::new();
        for inv in report_invariants(l.rank()) {
            let r = compute(&l, inv, &mode, &Budget::seconds(per))?;
            let rel = if r.exact { "=" } else { ">=" };
            cells.push(format!(
                "{}{rel}{}{}",
                inv.name(),
                r.value,
                if r.partial { "*" } else { "" }
            ));
            if r.exact {
                exact.insert(inv, r.value);
            }
            invs.insert(inv.name(), serde_json::to_value(&r).expect("json"));
        }
        // no lattice with f2 > m is known; flag one if it turns up
        let f2_exceeds_m = matches!(
            (exact.get(&Invariant::M), exact.get(&Invariant::F2)),
            (Some(m), Some(f)) if f > m
        );
        if f2_exceeds_m {
            cells.push("(f2 > m)".into());
        }
        text += &format!(
            "{:<7} {:>2}  {:>4} ({:>4})   {:>5} ({:>5})   {:>3} ({:>3})       {}\n",
            name,
            n,
            a2,
            a2f,
            a3,
            a3f,
            cm,
            n - 8,
            cells.join(" ")
        );
        rows.push(json!({
            "name": name, "rank": n, "constructed": true,
            "a1": a1, "a2": a2, "a2_formula": a2f, "a3": a3, "a3_formula": a3f,
            "min_characteristic_norm": cm, "rank_minus_8": n - 8, "checks_pass": ok,
            "mode": mode.describe(), "invariants": invs, "f2_exceeds_m": f2_exceeds_m,
        }));
    }
    for (name, n) in ELKIES_UNBUILT {
        text += &format!("{name:<7} {n:>2}  needs user glue spec\n");
        rows.push(
            json!({"name": name, "rank": n, "constructed": false, "note": "needs user glue spec"}),
        );
    }
    if format == Format::Text {
        text += "(* marks an exhausted budget; >= marks a witness-mode lower bound)\n";
    }
    emit(
        format,
        &json!({"rows": rows, "checks_pass": all_ok}),
        || text,
    );
    Ok(if all_ok { EXIT_OK } else { EXIT_VERIFY })
}

fn census(format: Format) -> Outcome {
    let r = e7_squared_census(&Budget::unlimited())?;
    let v = serde_json::to_value(&r).expect("json");
    emit(format, &json!({"census": v, "passed": r.passed()}), || {
        let mut s =
            format!(
            "non-image classes: {}\norbit sizes: {:?} (sum {}, match {})\nsignature groups: {:?}\n",
            r.non_image_classes, r.orbit_sizes, r.orbit_sum, r.orbits_match, r.signature_group_sizes
        );
        s += "rep     norm extremal |Min| orbit  claim(i) claim(ii) literal/pair-sum\n";
        for row in &r.rows {
            let opt = |x: Option<u64>| x.map_or("-".to_string(), |v| v.to_string());
            let b = |x: Option<bool>| x.map_or("-", |v| if v { "yes" } else { "NO" });
            s += &format!(
                "{:<7} {:>4} {:>8} {:>5} {:>5}  {:>8} {:>9}/{}\n",
                row.label,
                row.norm,
                row.extremal,
                row.min_set_size,
                opt(row.orbit_size),
                b(row.claim_i),
                if row.claim_ii_literal { "yes" } else { "NO" },
                if row.claim_ii_pair_sum { "yes" } else { "NO" },
            );
        }
        s += if r.passed() {
            "census reproduces\n"
        } else {
            "census FAILED\n"
        };
        s
    });
    Ok(if r.passed() { EXIT_OK } else { EXIT_VERIFY })
}

fn ring(cmd: RingCommand, format: Format) -> Outcome {
    match cmd {
        RingCommand::Zeta { r, epsilon, prime } => {
            let mut p = if prime { zeta_prime(r) } else { zeta::zeta(r) };
            if epsilon {
                p = substitute_epsilon(&p);
            }
            emit(
                format,
                &json!({"r": r, "polynomial": p.to_json(), "text": p.to_string()}),
                || format!("{p}\n"),
            );
            Ok(EXIT_OK)
        }
        RingCommand::Table3 { g_max } => {
            if g_max == 0 {
                return Err(invalid("table3 needs G >= 1"));
            }
            let rows = zeta::table3(g_max)?;
            let v: Vec<Value> = rows
                .iter()
                .enumerate()
                .map(|(i, s)| json!({"g": i + 1, "row": s}))
                .collect();
            emit(format, &json!({"rows": v}), || {
                rows.iter()
                    .enumerate()
                    .map(|(i, s)| format!("{}: {s}\n", i + 1))
                    .collect()
            });
            Ok(EXIT_OK)
        }
        RingCommand::Verify { up_to, xi } => {
            if up_to == 0 {
                return Err(invalid("--up-to must be at least 1"));
            }
            let start = Instant::now();
            let mut certified = 0usize;
            let results = verify_up_to(up_to, |c| {
                if c.passed() && certified + 1 == c.g {
                    certified = c.g;
                }
                if c.g % 16 == 0 {
                    eprintln!(
                        "checkpoint: g = {}, certified through {certified}, {:.1} s",
                        c.g,
                        start.elapsed().as_secs_f64()
                    );
                }
            });
            let xis: Vec<_> = if xi {
                (1..=up_to).map(xi_check).collect()
            } else {
                Vec::new()
            };
            let failed = results.iter().filter(|c| !c.passed()).count()
                + xis.iter().filter(|x| !x.ok).count();
            let v = json!({
                "up_to": up_to,
                "passed": failed == 0,
                "certified_through": certified,
                "results": results,
                "xi": xis,
            });
            emit(format, &v, || {
                let mut s = String::new();
                for c in &results {
                    if c.passed() {
                        let sign = if c.sign == Some(-1) { "-" } else { "+" };
                        s += &format!(
                            "g = {:>3}: pass ({sign}alpha^g mod 4, {} terms)\n",
                            c.g, c.terms
                        );
                    } else {
                        s += &format!("g = {:>3}: FAIL {:?}\n", c.g, c.offending);
                    }
                }
                for x in xis.iter().filter(|x| !x.ok) {
                    s += &format!("xi g = {}: FAIL {:?}\n", x.g, x.offending);
                }
                if xi {
                    s += &format!("xi criterion checked for g <= {up_to}\n");
                }
                s += &format!(
                    "{} of {up_to} pass; certified through g = {certified}\n",
                    up_to - failed.min(up_to)
                );
                s
            });
            Ok(if failed == 0 { EXIT_OK } else { EXIT_VERIFY })
        }
    }
}

fn verify_certificate(path: &Path, format: Format) -> Outcome {
    let text = std::fs::read_to_string(path)
        .map_err(|e| invalid(format!("reading {}: {e}", path.display())))?;
    let cert: Value =
        serde_json::from_str(&text).map_err(|e| invalid(format!("bad certificate: {e}")))?;
    let l = parse(
        cert.get("lattice")
            .ok_or_else(|| invalid("certificate has no lattice"))?,
    )?;
    let report: InvariantReport = serde_json::from_value(
        cert.get("report")
            .cloned()
            .ok_or_else(|| invalid("certificate has no report"))?,
    )
    .map_err(|e| invalid(format!("bad report: {e}")))?;
    let inv = Invariant::from_name(&report.invariant)?;
    let (ok, note) = match &report.witness {
        Some(w) => match verify_witness(&l, inv, report.value, w) {
            Ok(true) => (true, "witness reproduces the value".to_string()),
            Ok(false) => (false, "witness does not reproduce the value".to_string()),
            Err(e @ LatticeError::Budget { .. }) => return Err(e.into()),
            Err(e) => (false, e.to_string()),
        },
        None if report.value == 0 => (true, "value 0 needs no witness".to_string()),
        None => (false, "nonzero value without a witness".to_string()),
    };
    let v =
        json!({"invariant": report.invariant, "value": report.value, "verified": ok, "note": note});
    emit(format, &v, || {
        format!(
            "{} = {} on {}: {}\n",
            report.invariant,
            report.value,
            l.label,
            if ok {
                format!("verified ({note})")
            } else {
                format!("REJECTED ({note})")
            }
        )
    });
    Ok(if ok { EXIT_OK } else { EXIT_VERIFY })
}
