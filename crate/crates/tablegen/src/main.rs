//! Command-line front end: render any reference table (text or JSON) or
//! verify the embedded golden rows.  Exits 0 when verification passes,
//! 1 on any failure or usage error.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use dirichlet::{ConstantFamily, PrecisionContext};
use tablegen::emit::{emit_table, EmitOptions, OutputFormat, TableKind};
use tablegen::goldens::{self, GoldenSet};

#[derive(Parser)]
#[command(
    name = "tablegen",
    version,
    about = "Generate and verify high-precision tables of Dirichlet L-series, \
             prime zeta modulo functions, residue-class Euler products, and \
             prime constants"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Character tables: exact root-of-unity symbols and conductors
    Chars(EmitArgs),
    /// Dirichlet L-series L(s, chi)
    L(EmitArgs),
    /// First derivative L'(s, chi)
    Lprime(EmitArgs),
    /// Prime L-series S(s, chi): the L-sum restricted to primes
    Primel(EmitArgs),
    /// Prime zeta modulo function P_{m,n}(s)
    Pzm(EmitArgs),
    /// Euler product zeta_{m,n}(s) over one residue class
    Zetamod(EmitArgs),
    /// Constant family tables over residue classes
    Const {
        /// a = Artin, q = quadratic class, f = Feller-Tornier,
        /// c = Hardy-Littlewood
        #[arg(value_enum)]
        family: FamilyArg,
        #[command(flatten)]
        args: EmitArgs,
    },
    /// Recompute golden reference rows and report deviations
    Verify(VerifyArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyArg {
    A,
    Q,
    F,
    C,
}

impl From<FamilyArg> for ConstantFamily {
    fn from(f: FamilyArg) -> Self {
        match f {
            FamilyArg::A => ConstantFamily::Artin,
            FamilyArg::Q => ConstantFamily::Quadratic,
            FamilyArg::F => ConstantFamily::FellerTornier,
            FamilyArg::C => ConstantFamily::HardyLittlewood,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    /// Space-aligned text in the printed listings' layout
    Paper,
    /// Newline-delimited JSON, one object per row
    Json,
}

#[derive(Args)]
struct EmitArgs {
    /// Modulus or inclusive range, e.g. `7` or `2..14` (default: the
    /// listing's own range)
    #[arg(long)]
    modulus: Option<String>,

    /// Smallest exponent s (default: the listing's own start)
    #[arg(long)]
    smin: Option<u32>,

    /// Largest exponent s (default: the listing's own end)
    #[arg(long)]
    smax: Option<u32>,

    /// Decimal digits per printed value
    #[arg(long, default_value_t = 50)]
    digits: u32,

    /// Prime cutoff M separating direct sums from series tails
    #[arg(long, default_value_t = 100_000)]
    cutoff: u32,

    /// Output format
    #[arg(long, value_enum, default_value_t = FormatArg::Paper)]
    format: FormatArg,

    /// Replace blocks that equal or conjugate an earlier block with the
    /// listings' placeholder lines (text format only)
    #[arg(long)]
    fillers: bool,

    /// Worker threads for cell evaluation (0 = one per core)
    #[arg(long, default_value_t = 0)]
    jobs: usize,
}

#[derive(Args)]
struct VerifyArgs {
    /// Directory of golden fixture files (default: the embedded set)
    #[arg(long)]
    goldens: Option<PathBuf>,

    /// Fail a row when |computed - reference| >= 10^-DIGITS
    #[arg(long, default_value_t = 48)]
    tolerance_digits: u32,

    /// Restrict to these sets (repeatable); names as in the report:
    /// chars, l, lprime, primel, pzm, zetamod, const_a, const_q,
    /// const_f, const_c
    #[arg(long)]
    kind: Vec<String>,

    /// Working precision in decimal digits
    #[arg(long, default_value_t = 50)]
    digits: u32,

    /// Prime cutoff M separating direct sums from series tails
    #[arg(long, default_value_t = 100_000)]
    cutoff: u32,

    /// Worker threads for row evaluation (0 = one per core)
    #[arg(long, default_value_t = 0)]
    jobs: usize,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::FAILURE
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, String> {
    let (kind, args) = match cli.command {
        Command::Verify(v) => return run_verify(v),
        Command::Chars(a) => (TableKind::Chars, a),
        Command::L(a) => (TableKind::L, a),
        Command::Lprime(a) => (TableKind::LDeriv, a),
        Command::Primel(a) => (TableKind::PrimeL, a),
        Command::Pzm(a) => (TableKind::Pzm, a),
        Command::Zetamod(a) => (TableKind::ZetaMod, a),
        Command::Const { family, args } => (TableKind::Constant(family.into()), args),
    };
    init_jobs(args.jobs);
    let ctx = PrecisionContext::new(args.digits, args.cutoff).map_err(|e| e.to_string())?;
    let opts = EmitOptions {
        moduli: args
            .modulus
            .as_deref()
            .map(parse_modulus_spec)
            .transpose()?,
        smin: args.smin,
        smax: args.smax,
        digits: args.digits,
        format: match args.format {
            FormatArg::Paper => OutputFormat::Paper,
            FormatArg::Json => OutputFormat::Json,
        },
        fillers: args.fillers,
    };
    let text = emit_table(kind, &opts, &ctx).map_err(|e| e.to_string())?;
    print!("{text}");
    Ok(ExitCode::SUCCESS)
}

fn run_verify(args: VerifyArgs) -> Result<ExitCode, String> {
    init_jobs(args.jobs);
    for name in &args.kind {
        if !goldens::GOLDEN_STEMS.contains(&name.as_str()) {
            return Err(format!(
                "unknown golden set {name:?}; known sets: {}",
                goldens::GOLDEN_STEMS.join(", ")
            ));
        }
    }
    let selected: Vec<&str> = goldens::GOLDEN_STEMS
        .iter()
        .copied()
        .filter(|stem| args.kind.is_empty() || args.kind.iter().any(|k| k == stem))
        .collect();
    let mut sets: Vec<GoldenSet> = Vec::new();
    for stem in selected {
        let set = match &args.goldens {
            None => goldens::parse_golden(
                stem,
                goldens::embedded_golden(stem).expect("stem is embedded"),
            ),
            Some(dir) => {
                let path = dir.join(format!("{stem}.txt"));
                let text = std::fs::read_to_string(&path)
                    .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
                goldens::parse_golden(stem, &text)
            }
        };
        sets.push(set.map_err(|e| e.to_string())?);
    }
    let ctx = PrecisionContext::new(args.digits, args.cutoff).map_err(|e| e.to_string())?;
    let outcome = goldens::verify_sets(&sets, args.tolerance_digits, &ctx);
    print!("{}", outcome.report);
    Ok(if outcome.passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    })
}

fn init_jobs(jobs: usize) {
    if jobs > 0 {
        // a second initialization (e.g. in tests) is harmless; rayon
        // keeps the first pool
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build_global();
    }
}

/// `"7"` means just m = 7; `"2..14"` (or `"2-14"`) an inclusive range.
fn parse_modulus_spec(spec: &str) -> Result<(u32, u32), String> {
    let bad = || format!("bad modulus spec {spec:?}; use e.g. 7 or 2..14");
    if let Some((lo, hi)) = spec.split_once("..").or_else(|| spec.split_once('-')) {
        let lo: u32 = lo.trim().parse().map_err(|_| bad())?;
        let hi: u32 = hi.trim().parse().map_err(|_| bad())?;
        Ok((lo, hi))
    } else {
        let m: u32 = spec.trim().parse().map_err(|_| bad())?;
        Ok((m, m))
    }
}
