//! Table emitters.
//!
//! Every reference table can be rendered in two formats:
//!
//! * `paper`: the space-aligned text layout of the printed listings —
//!   a header line, right-aligned index columns, fixed 50-decimal value
//!   columns, blank lines between modulus groups, and (behind the
//!   `fillers` flag) the listings' placeholder lines for blocks that
//!   duplicate or conjugate an earlier block;
//! * `json`: newline-delimited JSON, one object per row, with values as
//!   decimal strings so no precision is lost in transit.
//!
//! Cell values are computed in parallel; assembly is sequential, so the
//! output is deterministic for a given option set.

use dirichlet::{
    character_table, constant_value, l_deriv, l_deriv_at_1, l_value, p_mod, prime_l_series,
    star_row, to_fixed_decimal, zeta_mod, BigComplex, CharValue, Character, ConstantFamily, Error,
    PrecisionContext, Result,
};
use rayon::prelude::*;
use rug::Float;
use serde::Serialize;

/// Whole periods summed directly by `l_deriv_at_1` before its tail
/// correction takes over; 40 keeps the tail well inside the 50-digit
/// budget for every modulus up to 22.
pub const DERIV_DIRECT_PERIODS: u32 = 40;

/// Which reference table to produce.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TableKind {
    /// Character tables: exact root-of-unity symbols plus conductors.
    Chars,
    /// `L(s, chi)`.
    L,
    /// `L'(s, chi)`.
    LDeriv,
    /// The prime L-series `S(s, chi)`.
    PrimeL,
    /// The prime zeta modulo function `P_{m,n}(s)`.
    Pzm,
    /// The residue-class Euler product `zeta_{m,n}(s)`.
    ZetaMod,
    /// One of the four constant families over residue classes.
    Constant(ConstantFamily),
}

impl TableKind {
    /// The `kind` string used in JSON rows and golden records.
    pub fn name(self) -> &'static str {
        match self {
            TableKind::Chars => "chars",
            TableKind::L => "L",
            TableKind::LDeriv => "Lprime",
            TableKind::PrimeL => "S",
            TableKind::Pzm => "P",
            TableKind::ZetaMod => "Zeta",
            TableKind::Constant(ConstantFamily::Artin) => "A",
            TableKind::Constant(ConstantFamily::Quadratic) => "Q",
            TableKind::Constant(ConstantFamily::FellerTornier) => "F",
            TableKind::Constant(ConstantFamily::HardyLittlewood) => "C",
        }
    }

    /// Inclusive modulus range of the printed listing for this table.
    pub fn default_moduli(self) -> (u32, u32) {
        match self {
            TableKind::Chars => (2, 22),
            TableKind::L => (2, 14),
            TableKind::LDeriv => (2, 7),
            TableKind::PrimeL => (2, 6),
            TableKind::Pzm => (3, 10),
            TableKind::ZetaMod => (3, 14),
            TableKind::Constant(_) => (3, 7),
        }
    }

    /// Largest `s` of the printed listing for this table.
    pub fn default_smax(self) -> u32 {
        match self {
            TableKind::Chars => 0,
            TableKind::L | TableKind::LDeriv | TableKind::Pzm | TableKind::ZetaMod => 10,
            TableKind::PrimeL => 9,
            TableKind::Constant(f) => match f {
                ConstantFamily::Artin | ConstantFamily::Quadratic => 5,
                ConstantFamily::FellerTornier => 5,
                ConstantFamily::HardyLittlewood => 6,
            },
        }
    }

    /// Smallest admissible `s` for a non-principal row (complex kinds)
    /// or any row (real kinds).
    fn min_s(self) -> u32 {
        match self {
            TableKind::Chars => 0,
            TableKind::L | TableKind::LDeriv | TableKind::PrimeL => 1,
            TableKind::Pzm | TableKind::ZetaMod => 2,
            TableKind::Constant(f) => f.min_s(),
        }
    }

    fn is_complex(self) -> bool {
        matches!(self, TableKind::L | TableKind::LDeriv | TableKind::PrimeL)
    }

    /// Column headers of the fixed-width text layout.
    fn headers(self) -> (&'static str, &'static str) {
        match self {
            TableKind::Chars => ("", ""),
            TableKind::L => ("Re(L)", "Im(L)"),
            TableKind::LDeriv => ("Re(L')", "Im(L')"),
            TableKind::PrimeL => ("Re(S)", "Im(S)"),
            TableKind::Pzm => ("P", ""),
            TableKind::ZetaMod => ("Zeta", ""),
            TableKind::Constant(ConstantFamily::Artin) => ("A", ""),
            TableKind::Constant(ConstantFamily::Quadratic) => ("Q", ""),
            TableKind::Constant(ConstantFamily::FellerTornier) => ("F", ""),
            TableKind::Constant(ConstantFamily::HardyLittlewood) => ("C", ""),
        }
    }
}

/// Output format selector.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OutputFormat {
    /// The printed listings' space-aligned text layout.
    Paper,
    /// Newline-delimited JSON, one object per row.
    Json,
}

/// Row index within a real-valued listing: a residue class or the star
/// row (the all-classes product of a constant family).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ClassLabel {
    /// Residue class `n mod m`.
    Class(u32),
    /// The all-classes product row, printed as `*`.
    Star,
}

impl std::fmt::Display for ClassLabel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ClassLabel::Class(n) => write!(f, "{n}"),
            ClassLabel::Star => write!(f, "*"),
        }
    }
}

/// Options shared by every table emitter.
#[derive(Clone, Debug)]
pub struct EmitOptions {
    /// Inclusive modulus range; `None` = the listing's own range.
    pub moduli: Option<(u32, u32)>,
    /// Smallest `s`; `None` = the listing's own start (per block for the
    /// complex kinds: principal rows never start below 2).
    pub smin: Option<u32>,
    /// Largest `s`; `None` = the listing's own end.
    pub smax: Option<u32>,
    /// Printed decimals per value.
    pub digits: u32,
    /// Output format.
    pub format: OutputFormat,
    /// Reproduce the listings' placeholder lines instead of repeating
    /// blocks that equal or conjugate an earlier block (paper format
    /// only; JSON always carries full blocks).
    pub fillers: bool,
}

impl Default for EmitOptions {
    fn default() -> Self {
        EmitOptions {
            moduli: None,
            smin: None,
            smax: None,
            digits: 50,
            format: OutputFormat::Paper,
            fillers: false,
        }
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn prime_divisors(mut m: u32) -> Vec<u32> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= m {
        if m.is_multiple_of(p) {
            out.push(p);
            while m.is_multiple_of(p) {
                m /= p;
            }
        }
        p += 1;
    }
    if m > 1 {
        out.push(m);
    }
    out
}

/// Evaluate one cell of a complex-valued listing.
pub(crate) fn complex_cell(
    kind: TableKind,
    chi: &Character,
    s: u32,
    ctx: &PrecisionContext,
) -> Result<BigComplex> {
    match kind {
        TableKind::L => l_value(chi, s, ctx),
        TableKind::LDeriv => {
            if s == 1 {
                l_deriv_at_1(chi, ctx, DERIV_DIRECT_PERIODS)
            } else {
                l_deriv(chi, s, ctx)
            }
        }
        TableKind::PrimeL => prime_l_series(chi, s, ctx),
        _ => Err(Error::InvalidArgument(format!(
            "{} is not a complex-valued table",
            kind.name()
        ))),
    }
}

/// Evaluate one cell of a real-valued listing.
pub(crate) fn real_cell(
    kind: TableKind,
    m: u32,
    label: ClassLabel,
    s: u32,
    ctx: &PrecisionContext,
) -> Result<Float> {
    match (kind, label) {
        (TableKind::Pzm, ClassLabel::Class(n)) => p_mod(m, n, s, ctx),
        (TableKind::ZetaMod, ClassLabel::Class(n)) => zeta_mod(m, n, s, ctx),
        (TableKind::Constant(f), ClassLabel::Class(n)) => constant_value(f, m, n, s, ctx),
        (TableKind::Constant(f), ClassLabel::Star) => star_row(f, m, s, ctx),
        _ => Err(Error::InvalidArgument(format!(
            "{} has no star rows",
            kind.name()
        ))),
    }
}

/// A block's identity for the "same block as ..." rule: two characters
/// give identical L, L', and S columns exactly when they are induced by
/// the same primitive character and their moduli share one set of prime
/// divisors (the dropped Euler factors then coincide).
#[derive(Clone, PartialEq, Eq, Debug)]
struct BlockSignature {
    conductor: u32,
    radical: Vec<u32>,
    /// Values of the inducing primitive character on its own coprime
    /// residues, as reduced exponent fractions of a full turn.
    primitive: Vec<(u32, u32)>,
}

fn reduce_exponent(k: u32, d: u32) -> (u32, u32) {
    if k == 0 {
        return (0, 1);
    }
    let g = gcd(k as u64, d as u64) as u32;
    (k / g, d / g)
}

fn block_signature(chi: &Character) -> BlockSignature {
    let m = chi.modulus();
    let f = chi.conductor();
    let mut primitive = Vec::new();
    for n in 1..=f {
        if gcd(n as u64, f as u64) != 1 {
            continue;
        }
        // lift n to a residue coprime to the whole modulus; the induced
        // value there is the primitive character's value at n
        let mut lift = n;
        while gcd(lift as u64, m as u64) != 1 {
            lift += f;
        }
        primitive.push(match chi.value(lift as u64) {
            CharValue::Root(k) => reduce_exponent(k, chi.denom()),
            CharValue::Zero => unreachable!("lift is coprime to the modulus"),
        });
    }
    BlockSignature {
        conductor: f,
        radical: prime_divisors(m),
        primitive,
    }
}

/// One line of a planned listing, before any value is computed.
enum Piece {
    /// Literal text (header, blank separator, filler line).
    Text(String),
    /// A complex-valued cell.
    ComplexCell { m: u32, r: u32, s: u32 },
    /// A real-valued cell.
    RealCell { m: u32, label: ClassLabel, s: u32 },
}

#[derive(Serialize)]
struct JsonComplexRow<'a> {
    kind: &'a str,
    m: u32,
    r: u32,
    s: u32,
    re: String,
    im: String,
}

#[derive(Serialize)]
struct JsonRealRow<'a> {
    kind: &'a str,
    m: u32,
    n: String,
    s: u32,
    value: String,
}

#[derive(Serialize)]
struct JsonCharsRow<'a> {
    kind: &'a str,
    m: u32,
    r: u32,
    f: u32,
    values: Vec<String>,
}

/// Render `kind` with the given options.  This is the single entry point
/// used by both the command line and the tests.
pub fn emit_table(kind: TableKind, opts: &EmitOptions, ctx: &PrecisionContext) -> Result<String> {
    match kind {
        TableKind::Chars => emit_chars(opts),
        k if k.is_complex() => emit_complex(k, opts, ctx),
        k => emit_real(k, opts, ctx),
    }
}

fn value_width(digits: u32) -> usize {
    // sign slot + one integer digit + decimal point + the decimals
    digits as usize + 3
}

fn filler_line(m: u32, r: u32, text: &str) -> String {
    format!("{m:>2} {r:>2}  *  {text}")
}

fn resolve_ranges(kind: TableKind, opts: &EmitOptions) -> Result<(u32, u32, u32, u32)> {
    let (dlo, dhi) = kind.default_moduli();
    let (mlo, mhi) = opts.moduli.unwrap_or((dlo, dhi));
    if mlo < 2 || mhi < mlo {
        return Err(Error::InvalidArgument(format!(
            "modulus range {mlo}..{mhi} is not usable (need 2 <= lo <= hi)"
        )));
    }
    let smin = opts.smin.unwrap_or(kind.min_s());
    let smax = opts.smax.unwrap_or_else(|| kind.default_smax().max(smin));
    if smin < kind.min_s() {
        return Err(Error::InvalidArgument(format!(
            "{} rows start at s = {}; got smin = {smin}",
            kind.name(),
            kind.min_s()
        )));
    }
    if smax < smin {
        return Err(Error::InvalidArgument(format!(
            "empty s range {smin}..{smax}"
        )));
    }
    Ok((mlo, mhi, smin, smax))
}

fn emit_complex(kind: TableKind, opts: &EmitOptions, ctx: &PrecisionContext) -> Result<String> {
    let (mlo, mhi, smin, smax) = resolve_ranges(kind, opts)?;
    let w = value_width(opts.digits);
    let paper = opts.format == OutputFormat::Paper;

    let mut pieces = Vec::new();
    if paper {
        let (re_label, im_label) = kind.headers();
        pieces.push(Piece::Text(format!(
            "{:>2} {:>2} {:>2}  {:<lw$}{}",
            "m",
            "r",
            "s",
            re_label,
            im_label,
            lw = w + 1
        )));
    }

    let mut explicit: Vec<(u32, u32, BlockSignature)> = Vec::new();
    for m in mlo..=mhi {
        if paper && m > mlo {
            pieces.push(Piece::Text(String::new()));
        }
        let table = character_table(m)?;
        for r in 1..=table.phi() {
            let chi = table.get(r)?;
            let start = if chi.is_principal() { smin.max(2) } else { smin };
            if paper && opts.fillers {
                let sig = block_signature(chi);
                if let Some((sm, sr)) = explicit
                    .iter()
                    .find(|(_, _, other)| *other == sig)
                    .map(|(sm, sr, _)| (*sm, *sr))
                {
                    // the listings keep the s = 1 row of a duplicated
                    // non-principal block and replace only the rest
                    if !chi.is_principal() && start == 1 && smax >= 1 {
                        pieces.push(Piece::ComplexCell { m, r, s: 1 });
                    }
                    pieces.push(Piece::Text(filler_line(
                        m,
                        r,
                        &format!("same block as m={sm}, r={sr} above"),
                    )));
                    continue;
                }
                let cr = table.conjugate_index(r)?;
                if cr < r && explicit.iter().any(|(em, er, _)| *em == m && *er == cr) {
                    pieces.push(Piece::Text(filler_line(
                        m,
                        r,
                        &format!("complex conjugate of block m={m}, r={cr} above"),
                    )));
                    continue;
                }
                explicit.push((m, r, sig));
            }
            for s in start..=smax {
                pieces.push(Piece::ComplexCell { m, r, s });
            }
        }
    }

    render_pieces(kind, &pieces, opts, ctx)
}

fn coprime_classes(m: u32) -> Vec<u32> {
    (1..=m).filter(|&n| gcd(n as u64, m as u64) == 1).collect()
}

fn emit_real(kind: TableKind, opts: &EmitOptions, ctx: &PrecisionContext) -> Result<String> {
    let (mlo, mhi, smin, smax) = resolve_ranges(kind, opts)?;
    let paper = opts.format == OutputFormat::Paper;
    let star = matches!(kind, TableKind::Constant(_));

    let mut pieces = Vec::new();
    if paper {
        let (label, _) = kind.headers();
        pieces.push(Piece::Text(format!("{:>2} {:>2} {:>2}  {}", "m", "n", "s", label)));
    }
    for m in mlo..=mhi {
        if paper && m > mlo {
            pieces.push(Piece::Text(String::new()));
        }
        for s in smin..=smax {
            for n in coprime_classes(m) {
                pieces.push(Piece::RealCell {
                    m,
                    label: ClassLabel::Class(n),
                    s,
                });
            }
            if star {
                pieces.push(Piece::RealCell {
                    m,
                    label: ClassLabel::Star,
                    s,
                });
            }
        }
    }

    render_pieces(kind, &pieces, opts, ctx)
}

/// Compute every cell (in parallel) and assemble the final text in plan
/// order.
fn render_pieces(
    kind: TableKind,
    pieces: &[Piece],
    opts: &EmitOptions,
    ctx: &PrecisionContext,
) -> Result<String> {
    let w = value_width(opts.digits);
    let digits = opts.digits;
    let rendered: Vec<Result<String>> = pieces
        .par_iter()
        .map(|piece| match piece {
            Piece::Text(t) => Ok(t.clone()),
            Piece::ComplexCell { m, r, s } => {
                let table = character_table(*m)?;
                let chi = table.get(*r)?;
                let v = complex_cell(kind, chi, *s, ctx)?;
                let re = to_fixed_decimal(&v.re, digits);
                let im = to_fixed_decimal(&v.im, digits);
                Ok(match opts.format {
                    OutputFormat::Paper => {
                        format!("{m:>2} {r:>2} {s:>2} {re:>w$} {im:>w$}")
                    }
                    OutputFormat::Json => serde_json::to_string(&JsonComplexRow {
                        kind: kind.name(),
                        m: *m,
                        r: *r,
                        s: *s,
                        re,
                        im,
                    })
                    .expect("row serialization cannot fail"),
                })
            }
            Piece::RealCell { m, label, s } => {
                let v = real_cell(kind, *m, *label, *s, ctx)?;
                let dec = to_fixed_decimal(&v, digits);
                Ok(match opts.format {
                    OutputFormat::Paper => {
                        let n = label.to_string();
                        format!("{m:>2} {n:>2} {s:>2} {dec:>w$}")
                    }
                    OutputFormat::Json => serde_json::to_string(&JsonRealRow {
                        kind: kind.name(),
                        m: *m,
                        n: label.to_string(),
                        s: *s,
                        value: dec,
                    })
                    .expect("row serialization cannot fail"),
                })
            }
        })
        .collect();

    let mut out = String::new();
    for line in rendered {
        out.push_str(&line?);
        out.push('\n');
    }
    Ok(out)
}

fn emit_chars(opts: &EmitOptions) -> Result<String> {
    let (mlo, mhi) = opts
        .moduli
        .unwrap_or_else(|| TableKind::Chars.default_moduli());
    if mlo < 2 || mhi < mlo {
        return Err(Error::InvalidArgument(format!(
            "modulus range {mlo}..{mhi} is not usable (need 2 <= lo <= hi)"
        )));
    }
    let mut out = String::new();
    for m in mlo..=mhi {
        let table = character_table(m)?;
        match opts.format {
            OutputFormat::Paper => {
                if m > mlo {
                    out.push('\n');
                }
                out.push_str(&format!("chi_r(n) mod {m}, phi = {}\n", table.phi()));
                let symbols: Vec<Vec<String>> = (1..=table.phi())
                    .map(|r| {
                        let chi = table.get(r).expect("row index in range");
                        (1..=m as u64).map(|n| chi.symbol(n)).collect()
                    })
                    .collect();
                let w = symbols
                    .iter()
                    .flatten()
                    .map(String::len)
                    .chain((1..=m).map(|n| n.to_string().len()))
                    .max()
                    .unwrap_or(1);
                let mut head = format!("{:>3}", "r");
                for n in 1..=m {
                    head.push_str(&format!(" {n:>w$}"));
                }
                head.push_str(&format!("  {:>2}", "f"));
                out.push_str(&head);
                out.push('\n');
                for (row, syms) in symbols.iter().enumerate() {
                    let r = row as u32 + 1;
                    let chi = table.get(r).expect("row index in range");
                    let mut line = format!("{r:>3}");
                    for sym in syms {
                        line.push_str(&format!(" {sym:>w$}"));
                    }
                    line.push_str(&format!("  {:>2}", chi.conductor()));
                    out.push_str(&line);
                    out.push('\n');
                }
            }
            OutputFormat::Json => {
                for r in 1..=table.phi() {
                    let chi = table.get(r)?;
                    let row = JsonCharsRow {
                        kind: TableKind::Chars.name(),
                        m,
                        r,
                        f: chi.conductor(),
                        values: (1..=m as u64).map(|n| chi.symbol(n)).collect(),
                    };
                    out.push_str(
                        &serde_json::to_string(&row).expect("row serialization cannot fail"),
                    );
                    out.push('\n');
                }
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx() -> PrecisionContext {
        PrecisionContext::standard()
    }

    #[test]
    fn l_listing_head_is_byte_identical() {
        let fixture = include_str!("../goldens/listing_l_head.txt");
        let opts = EmitOptions {
            moduli: Some((2, 5)),
            fillers: true,
            ..EmitOptions::default()
        };
        let text = emit_table(TableKind::L, &opts, &ctx()).unwrap();
        assert_eq!(text, fixture);
    }

    #[test]
    fn filler_planning_matches_listing_quirks() {
        // induced blocks keep their s = 1 row and then defer to the
        // source block; conjugate blocks defer outright
        let opts = EmitOptions {
            moduli: Some((2, 12)),
            fillers: true,
            ..EmitOptions::default()
        };
        let text = emit_table(TableKind::L, &opts, &ctx()).unwrap();
        assert!(text.contains(" 4  1  *  same block as m=2, r=1 above"));
        assert!(text.contains(" 8  3  *  same block as m=4, r=2 above"));
        assert!(text.contains(" 9  4  *  same block as m=3, r=2 above"));
        assert!(text.contains("12  2  *  same block as m=6, r=2 above"));
        assert!(text.contains("12  1  *  same block as m=6, r=1 above"));
        assert!(text.contains(" 5  4  *  complex conjugate of block m=5, r=2 above"));
        // the kept lead rows
        let p8 = text.find(" 8  3  1 ").expect("s=1 row of the induced block mod 8");
        assert!(p8 < text.find(" 8  3  *").unwrap());
        // a filler never shadows an explicit block's own rows
        assert!(text.contains(" 8  2  1 "));
    }

    #[test]
    fn real_listing_layout_places_star_after_classes() {
        let opts = EmitOptions {
            moduli: Some((3, 4)),
            smin: Some(1),
            smax: Some(2),
            digits: 12,
            ..EmitOptions::default()
        };
        let text =
            emit_table(TableKind::Constant(ConstantFamily::Artin), &opts, &ctx()).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], " m  n  s  A");
        assert!(lines[1].starts_with(" 3  1  1 "));
        assert!(lines[2].starts_with(" 3  2  1 "));
        assert!(lines[3].starts_with(" 3  *  1 "));
        assert!(lines[4].starts_with(" 3  1  2 "));
        assert_eq!(lines[7], "", "blank line between modulus groups");
        assert!(lines[8].starts_with(" 4  1  1 "));
    }

    #[test]
    fn json_rows_carry_full_blocks_and_digit_strings() {
        let opts = EmitOptions {
            moduli: Some((4, 4)),
            smax: Some(2),
            format: OutputFormat::Json,
            fillers: true, // ignored in JSON: blocks stay complete
            ..EmitOptions::default()
        };
        let text = emit_table(TableKind::L, &opts, &ctx()).unwrap();
        let rows: Vec<serde_json::Value> = text
            .lines()
            .map(|l| serde_json::from_str(l).unwrap())
            .collect();
        // principal block s=2 plus non-principal s=1,2: three rows, none
        // replaced by fillers
        assert_eq!(rows.len(), 3);
        assert_eq!(rows[0]["kind"], "L");
        assert_eq!(rows[0]["m"], 4);
        assert_eq!(rows[0]["r"], 1);
        assert_eq!(rows[0]["s"], 2);
        let re = rows[0]["re"].as_str().unwrap();
        assert_eq!(re.len(), 52);
        // L(2, chi_1 mod 4) = zeta(2)(1 - 2^-2) = pi^2/8 = 1.2337...
        assert!(re.starts_with("1.2337"));
        assert_eq!(rows[1]["s"], 1);
        assert_eq!(rows[1]["re"].as_str().unwrap(), to_fixed_decimal(
            &l_value(character_table(4).unwrap().get(2).unwrap(), 1, &ctx()).unwrap().re,
            50,
        ));
    }

    #[test]
    fn chars_listing_shows_symbols_and_conductors() {
        let opts = EmitOptions {
            moduli: Some((5, 5)),
            ..EmitOptions::default()
        };
        let text = emit_table(TableKind::Chars, &opts, &ctx()).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], "chi_r(n) mod 5, phi = 4");
        let tokens = |i: usize| lines[i].split_whitespace().collect::<Vec<_>>();
        assert_eq!(tokens(1), ["r", "1", "2", "3", "4", "5", "f"]);
        assert_eq!(tokens(2), ["1", "1", "1", "1", "1", "0", "1"]);
        // 2 generates (Z/5)*: 2^2 = 4, 2^3 = 3, so chi_2 walks 1, i,
        // -1, -i along 1, 2, 4, 3
        assert_eq!(tokens(3), ["2", "1", "i", "-i", "-1", "0", "5"]);
        assert_eq!(tokens(5), ["4", "1", "-i", "i", "-1", "0", "5"]);
    }

    #[test]
    fn range_errors_are_usage_errors() {
        let c = ctx();
        let bad = EmitOptions {
            smin: Some(1),
            ..EmitOptions::default()
        };
        assert!(matches!(
            emit_table(TableKind::Pzm, &bad, &c),
            Err(Error::InvalidArgument(_))
        ));
        let empty = EmitOptions {
            smin: Some(5),
            smax: Some(4),
            ..EmitOptions::default()
        };
        assert!(matches!(
            emit_table(TableKind::L, &empty, &c),
            Err(Error::InvalidArgument(_))
        ));
        let hl = EmitOptions {
            smin: Some(1),
            ..EmitOptions::default()
        };
        assert!(matches!(
            emit_table(
                TableKind::Constant(ConstantFamily::HardyLittlewood),
                &hl,
                &c
            ),
            Err(Error::InvalidArgument(_))
        ));
    }
}
