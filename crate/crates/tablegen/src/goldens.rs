//! Golden-file regression harness.
//!
//! The reference rows of every table ship as plain-text fixtures embedded
//! in the binary (see `goldens/*.txt`).  [`verify_sets`] recomputes each
//! row with the library and reports per-record deviations; a record fails
//! when any component differs from its reference decimal by at least
//! `10^-tolerance_digits`, and computation errors are surfaced per record
//! without aborting the run.  The report text is deterministic: two runs
//! over the same sets are byte-identical.

use crate::emit::{complex_cell, real_cell, ClassLabel, TableKind};
use dirichlet::{character_table, CharValue, ConstantFamily, Error, PrecisionContext, Result};
use rayon::prelude::*;
use rug::{ops::Pow, Float};
use std::fmt::Write as _;

/// Fixture stems in report order.
pub const GOLDEN_STEMS: [&str; 10] = [
    "chars", "l", "lprime", "primel", "pzm", "zetamod", "const_a", "const_q", "const_f",
    "const_c",
];

/// The embedded fixture text for one stem.
pub fn embedded_golden(stem: &str) -> Option<&'static str> {
    Some(match stem {
        "chars" => include_str!("../goldens/chars.txt"),
        "l" => include_str!("../goldens/l.txt"),
        "lprime" => include_str!("../goldens/lprime.txt"),
        "primel" => include_str!("../goldens/primel.txt"),
        "pzm" => include_str!("../goldens/pzm.txt"),
        "zetamod" => include_str!("../goldens/zetamod.txt"),
        "const_a" => include_str!("../goldens/const_a.txt"),
        "const_q" => include_str!("../goldens/const_q.txt"),
        "const_f" => include_str!("../goldens/const_f.txt"),
        "const_c" => include_str!("../goldens/const_c.txt"),
        _ => return None,
    })
}

/// The table kind a fixture stem refers to.
pub fn kind_for_stem(stem: &str) -> Option<TableKind> {
    Some(match stem {
        "chars" => TableKind::Chars,
        "l" => TableKind::L,
        "lprime" => TableKind::LDeriv,
        "primel" => TableKind::PrimeL,
        "pzm" => TableKind::Pzm,
        "zetamod" => TableKind::ZetaMod,
        "const_a" => TableKind::Constant(ConstantFamily::Artin),
        "const_q" => TableKind::Constant(ConstantFamily::Quadratic),
        "const_f" => TableKind::Constant(ConstantFamily::FellerTornier),
        "const_c" => TableKind::Constant(ConstantFamily::HardyLittlewood),
        _ => return None,
    })
}

/// One reference row.
#[derive(Clone, Debug)]
pub enum GoldenRecord {
    /// A character-table row: exponents over `phi(m)`, `None` marking a
    /// zero of the character.
    Chars {
        line: usize,
        m: u32,
        r: u32,
        f: u32,
        values: Vec<Option<u32>>,
    },
    /// A complex-valued row with 50-digit decimal components.
    Complex {
        line: usize,
        m: u32,
        r: u32,
        s: u32,
        re: String,
        im: String,
    },
    /// A real-valued row: residue class or star.
    Real {
        line: usize,
        m: u32,
        n: ClassLabel,
        s: u32,
        value: String,
    },
}

impl GoldenRecord {
    fn line(&self) -> usize {
        match self {
            GoldenRecord::Chars { line, .. }
            | GoldenRecord::Complex { line, .. }
            | GoldenRecord::Real { line, .. } => *line,
        }
    }

    fn label(&self) -> String {
        match self {
            GoldenRecord::Chars { m, r, .. } => format!("m={m} r={r}"),
            GoldenRecord::Complex { m, r, s, .. } => format!("m={m} r={r} s={s}"),
            GoldenRecord::Real { m, n, s, .. } => format!("m={m} n={n} s={s}"),
        }
    }
}

/// One parsed fixture.
#[derive(Clone, Debug)]
pub struct GoldenSet {
    pub name: String,
    pub kind: TableKind,
    pub records: Vec<GoldenRecord>,
}

fn parse_err(name: &str, line: usize, what: &str) -> Error {
    Error::InvalidArgument(format!("{name}:{line}: {what}"))
}

fn field<T: std::str::FromStr>(
    name: &str,
    line: usize,
    parts: &[&str],
    idx: usize,
    what: &str,
) -> Result<T> {
    parts
        .get(idx)
        .and_then(|t| t.parse::<T>().ok())
        .ok_or_else(|| parse_err(name, line, &format!("expected {what} in field {}", idx + 1)))
}

fn check_decimal(name: &str, line: usize, token: &str) -> Result<String> {
    if Float::parse(token).is_err() {
        return Err(parse_err(name, line, &format!("unparseable decimal {token:?}")));
    }
    Ok(token.to_string())
}

/// Parse one fixture file.  `name` must be one of [`GOLDEN_STEMS`]; it
/// selects the record grammar.  Comment lines start with `#`.
pub fn parse_golden(name: &str, text: &str) -> Result<GoldenSet> {
    let kind = kind_for_stem(name)
        .ok_or_else(|| Error::InvalidArgument(format!("unknown golden set {name:?}")))?;
    let mut records = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let parts: Vec<&str> = trimmed.split_whitespace().collect();
        let record = match kind {
            TableKind::Chars => {
                let m: u32 = field(name, line, &parts, 0, "modulus")?;
                let r: u32 = field(name, line, &parts, 1, "row index")?;
                let f: u32 = field(name, line, &parts, 2, "conductor")?;
                if parts.len() != 3 + m as usize {
                    return Err(parse_err(
                        name,
                        line,
                        &format!("expected {m} character values, got {}", parts.len() - 3),
                    ));
                }
                let mut values = Vec::with_capacity(m as usize);
                for (j, token) in parts[3..].iter().enumerate() {
                    values.push(if *token == "z" {
                        None
                    } else {
                        Some(token.parse::<u32>().map_err(|_| {
                            parse_err(name, line, &format!("bad exponent {token:?} at n={}", j + 1))
                        })?)
                    });
                }
                GoldenRecord::Chars { line, m, r, f, values }
            }
            TableKind::L | TableKind::LDeriv | TableKind::PrimeL => {
                if parts.len() < 5 {
                    return Err(parse_err(name, line, "expected m r s re im [tag]"));
                }
                GoldenRecord::Complex {
                    line,
                    m: field(name, line, &parts, 0, "modulus")?,
                    r: field(name, line, &parts, 1, "row index")?,
                    s: field(name, line, &parts, 2, "exponent s")?,
                    re: check_decimal(name, line, parts[3])?,
                    im: check_decimal(name, line, parts[4])?,
                }
            }
            _ => {
                if parts.len() != 4 {
                    return Err(parse_err(name, line, "expected m n s value"));
                }
                let n = if parts[1] == "*" {
                    ClassLabel::Star
                } else {
                    ClassLabel::Class(field(name, line, &parts, 1, "residue class")?)
                };
                GoldenRecord::Real {
                    line,
                    m: field(name, line, &parts, 0, "modulus")?,
                    n,
                    s: field(name, line, &parts, 2, "exponent s")?,
                    value: check_decimal(name, line, parts[3])?,
                }
            }
        };
        records.push(record);
    }
    Ok(GoldenSet {
        name: name.to_string(),
        kind,
        records,
    })
}

/// Parse every embedded fixture, in report order.
pub fn builtin_sets() -> Vec<GoldenSet> {
    GOLDEN_STEMS
        .iter()
        .map(|stem| {
            parse_golden(stem, embedded_golden(stem).expect("stem is embedded"))
                .expect("embedded fixtures parse")
        })
        .collect()
}

/// Reconstruct golden records from `emit_table(.., Json, ..)` output of a
/// numeric table, for round-trip verification.  (Character tables are
/// verified against their exact fixture instead; their JSON rows carry
/// display symbols, not exponents.)
pub fn records_from_json(kind: TableKind, text: &str) -> Result<Vec<GoldenRecord>> {
    let mut records = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        if raw.trim().is_empty() {
            continue;
        }
        let v: serde_json::Value = serde_json::from_str(raw)
            .map_err(|e| parse_err("json", line, &format!("bad JSON row: {e}")))?;
        let got = v["kind"].as_str().unwrap_or_default();
        if got != kind.name() {
            return Err(parse_err(
                "json",
                line,
                &format!("kind {got:?} does not match {:?}", kind.name()),
            ));
        }
        let int = |key: &str| -> Result<u32> {
            v[key]
                .as_u64()
                .and_then(|x| u32::try_from(x).ok())
                .ok_or_else(|| parse_err("json", line, &format!("missing integer {key:?}")))
        };
        let text_field = |key: &str| -> Result<String> {
            v[key]
                .as_str()
                .map(str::to_string)
                .ok_or_else(|| parse_err("json", line, &format!("missing string {key:?}")))
        };
        match kind {
            TableKind::L | TableKind::LDeriv | TableKind::PrimeL => {
                records.push(GoldenRecord::Complex {
                    line,
                    m: int("m")?,
                    r: int("r")?,
                    s: int("s")?,
                    re: text_field("re")?,
                    im: text_field("im")?,
                });
            }
            TableKind::Pzm | TableKind::ZetaMod | TableKind::Constant(_) => {
                let n_raw = text_field("n")?;
                let n = if n_raw == "*" {
                    ClassLabel::Star
                } else {
                    ClassLabel::Class(n_raw.parse().map_err(|_| {
                        parse_err("json", line, &format!("bad residue class {n_raw:?}"))
                    })?)
                };
                records.push(GoldenRecord::Real {
                    line,
                    m: int("m")?,
                    n,
                    s: int("s")?,
                    value: text_field("value")?,
                });
            }
            TableKind::Chars => {
                return Err(Error::InvalidArgument(
                    "character tables round-trip through their fixture format".into(),
                ))
            }
        }
    }
    Ok(records)
}

struct RowCheck {
    line: usize,
    label: String,
    delta: f64,
    pass: bool,
    note: Option<String>,
}

fn parse_reference(s: &str, prec: u32) -> Float {
    Float::with_val(prec, Float::parse(s).expect("validated at parse time"))
}

fn check_record(
    kind: TableKind,
    rec: &GoldenRecord,
    tol: &Float,
    ctx: &PrecisionContext,
) -> RowCheck {
    let mut check = RowCheck {
        line: rec.line(),
        label: rec.label(),
        delta: 0.0,
        pass: true,
        note: None,
    };
    let outcome: Result<(Float, Option<Float>)> = match rec {
        GoldenRecord::Chars { m, r, f, values, .. } => {
            match verify_chars_row(*m, *r, *f, values) {
                Ok(()) => Ok((Float::new(ctx.prec()), None)),
                Err(note) => {
                    check.pass = false;
                    check.delta = 1.0;
                    check.note = Some(note);
                    return check;
                }
            }
        }
        GoldenRecord::Complex { m, r, s, .. } => character_table(*m)
            .and_then(|table| {
                let chi = table.get(*r)?;
                complex_cell(kind, chi, *s, ctx)
            })
            .map(|v| (v.re, Some(v.im))),
        GoldenRecord::Real { m, n, s, .. } => {
            real_cell(kind, *m, *n, *s, ctx).map(|v| (v, None))
        }
    };
    match outcome {
        Err(e) => {
            check.pass = false;
            check.delta = f64::INFINITY;
            check.note = Some(e.to_string());
        }
        Ok((re, im)) => {
            let prec = ctx.prec();
            let mut worst = Float::new(prec);
            match rec {
                GoldenRecord::Chars { .. } => {}
                GoldenRecord::Complex { re: gre, im: gim, .. } => {
                    let dre = (re - parse_reference(gre, prec)).abs();
                    let dim =
                        (im.expect("complex rows carry both components")
                            - parse_reference(gim, prec))
                        .abs();
                    worst = if dre > dim { dre } else { dim };
                }
                GoldenRecord::Real { value, .. } => {
                    worst = (re - parse_reference(value, prec)).abs();
                }
            }
            check.delta = worst.to_f64();
            check.pass = worst < *tol;
        }
    }
    check
}

fn verify_chars_row(
    m: u32,
    r: u32,
    f: u32,
    values: &[Option<u32>],
) -> std::result::Result<(), String> {
    let table = character_table(m).map_err(|e| e.to_string())?;
    let phi = table.phi();
    let chi = table.get(r).map_err(|e| e.to_string())?;
    if chi.conductor() != f {
        return Err(format!("conductor {} != reference {f}", chi.conductor()));
    }
    for (j, reference) in values.iter().enumerate() {
        let n = j as u64 + 1;
        let computed = match chi.value(n) {
            CharValue::Zero => None,
            // fixture exponents are over phi(m); character exponents are
            // over the character order d | phi(m)
            CharValue::Root(k) => Some(k * (phi / chi.denom()) % phi),
        };
        if computed != *reference {
            return Err(format!(
                "chi({n}) = {} differs from reference {}",
                match computed {
                    None => "z".to_string(),
                    Some(k) => k.to_string(),
                },
                match reference {
                    None => "z".to_string(),
                    Some(k) => k.to_string(),
                }
            ));
        }
    }
    Ok(())
}

/// The result of a verification run: a deterministic textual report plus
/// the raw tallies.
#[derive(Clone, Debug)]
pub struct VerifyOutcome {
    pub report: String,
    pub rows: usize,
    pub failed: usize,
    /// Largest observed deviation across all numeric rows.
    pub worst: f64,
}

impl VerifyOutcome {
    pub fn passed(&self) -> bool {
        self.failed == 0
    }
}

/// Maximum failing rows listed per set before the report truncates.
const MAX_LISTED_FAILURES: usize = 25;

/// Recompute every record of every set and render the report.
pub fn verify_sets(
    sets: &[GoldenSet],
    tolerance_digits: u32,
    ctx: &PrecisionContext,
) -> VerifyOutcome {
    let tol = Float::with_val(ctx.prec(), 10u32).pow(-(tolerance_digits as i32));
    let mut report = format!(
        "golden verification: |delta| < 1e-{tolerance_digits}, {} digits, cutoff {}\n\n",
        ctx.target_digits(),
        ctx.cutoff()
    );
    let _ = writeln!(
        report,
        "  {:<10} {:>6} {:>6} {:>6}   worst |delta|",
        "set", "rows", "pass", "fail"
    );
    let mut rows = 0;
    let mut failed = 0;
    let mut worst_all = 0.0f64;
    for set in sets {
        let checks: Vec<RowCheck> = set
            .records
            .par_iter()
            .map(|rec| check_record(set.kind, rec, &tol, ctx))
            .collect();
        let fail: Vec<&RowCheck> = checks.iter().filter(|c| !c.pass).collect();
        let worst = checks
            .iter()
            .max_by(|a, b| a.delta.partial_cmp(&b.delta).unwrap_or(std::cmp::Ordering::Equal));
        let worst_text = match worst {
            Some(c) if c.delta > 0.0 => {
                format!("{:.1e} (line {}: {})", c.delta, c.line, c.label)
            }
            _ => "exact".to_string(),
        };
        let _ = writeln!(
            report,
            "  {:<10} {:>6} {:>6} {:>6}   {}",
            set.name,
            checks.len(),
            checks.len() - fail.len(),
            fail.len(),
            worst_text
        );
        for c in fail.iter().take(MAX_LISTED_FAILURES) {
            let _ = writeln!(
                report,
                "    FAIL line {} ({}): |delta| = {:.1e}{}",
                c.line,
                c.label,
                c.delta,
                match &c.note {
                    Some(n) => format!(" [{n}]"),
                    None => String::new(),
                }
            );
        }
        if fail.len() > MAX_LISTED_FAILURES {
            let _ = writeln!(report, "    ... {} more failures", fail.len() - MAX_LISTED_FAILURES);
        }
        rows += checks.len();
        failed += fail.len();
        if let Some(c) = worst {
            worst_all = worst_all.max(c.delta);
        }
    }
    let _ = writeln!(report, "  {:<10} {rows:>6} {:>6} {failed:>6}", "total", rows - failed);
    let _ = writeln!(report, "\n{}", if failed == 0 { "PASS" } else { "FAIL" });
    VerifyOutcome {
        report,
        rows,
        failed,
        worst: worst_all,
    }
}
