mod parse;
mod report;

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_rational::BigRational;
use num_traits::Zero;
use serde_json::{json, Value};
use substral::algebraic::{NumberField, RationalPolynomial};
use substral::coincidence::{theorem_certify, CertifyConfig, SpectrumVerdict};
use substral::generators::{self, greedy_expansion};
use substral::substitution::{parse_substitution, write_substitution, Substitution};
use substral::tiling::{fixed_tiling, render_svg, render_text, GeometricSubstitution};

const INPUT_ERROR: u8 = 1;

#[derive(Parser)]
#[command(name = "substral", version, about = "Substitution tilings of the line and their spectrum")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Certify pure discrete spectrum and write a JSON report.
    Check(CheckArgs),
    /// Write a substitution file from a generator family.
    Generate(GenerateArgs),
    /// Render a window of the fixed tiling around the origin.
    Tile(TileArgs),
    /// Greedy β-expansion of a nonnegative number.
    Expand(ExpandArgs),
}

#[derive(Args)]
struct CheckArgs {
    /// Substitution file (`-` for stdin).
    #[arg(long)]
    input: PathBuf,
    #[arg(long, default_value_t = 24, value_parser = clap::value_parser!(u32).range(1..))]
    nmax: u32,
    #[arg(long, default_value_t = 64, value_parser = positive_usize)]
    samples: usize,
    #[arg(long, default_value_t = 10_000, value_parser = positive_usize)]
    cap: usize,
    #[arg(long, default_value_t = 8, value_parser = clap::value_parser!(u32).range(1..))]
    window: u32,
    #[arg(long, default_value = "1e-9", value_parser = parse::positive_rational)]
    tolerance: BigRational,
    /// Write the report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    Beta,
    Ar,
    Brun,
    Jp,
}

#[derive(Args)]
struct GenerateArgs {
    #[arg(value_enum)]
    kind: Family,
    /// Minimal polynomial of β, e.g. `x^3-x-1`.
    #[arg(long)]
    minpoly: Option<String>,
    /// Alphabet size for Arnoux–Rauzy.
    #[arg(long)]
    d: Option<usize>,
    /// Word over `1..d`, e.g. `123` or `1.2.3`.
    #[arg(long)]
    word: Option<String>,
    /// Jacobi–Perron parameters, e.g. `0,1;1,2`.
    #[arg(long)]
    pairs: Option<String>,
    /// Step bound for the orbit of 1 under T_β.
    #[arg(long, default_value_t = 1000)]
    max_steps: usize,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct TileArgs {
    #[arg(long)]
    input: PathBuf,
    #[arg(long, default_value = "5", value_parser = parse::nonnegative_rational)]
    radius: BigRational,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    svg: Option<PathBuf>,
}

#[derive(Args)]
struct ExpandArgs {
    #[arg(long)]
    minpoly: String,
    /// Rational, or a polynomial in `x` standing for β.
    #[arg(long, allow_hyphen_values = true)]
    x: String,
    /// Index of the last digit.
    #[arg(long, default_value_t = 16)]
    m: i64,
}

fn positive_usize(s: &str) -> Result<usize, String> {
    match s.parse::<usize>() {
        Ok(n) if n > 0 => Ok(n),
        _ => Err(format!("expected a positive integer, got {s:?}")),
    }
}

struct Failure(String);

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure(e.to_string())
    }
}

fn read_input(path: &PathBuf) -> Result<String, Failure> {
    if path.as_os_str() == "-" {
        return Ok(std::io::read_to_string(std::io::stdin())?);
    }
    fs::read_to_string(path).map_err(|e| Failure(format!("{}: {e}", path.display())))
}

fn emit(text: &str, out: &Option<PathBuf>) -> Result<(), Failure> {
    match out {
        Some(p) => fs::write(p, text).map_err(|e| Failure(format!("{}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

/// The `# generator:` comment written by `generate`, if present.
fn provenance(text: &str) -> Value {
    text.lines()
        .find_map(|l| l.trim().strip_prefix("# generator:"))
        .map_or(Value::Null, |g| json!(g.trim()))
}

fn load(path: &PathBuf) -> Result<(String, Substitution), Failure> {
    let text = read_input(path)?;
    let parsed = parse_substitution(&text)?;
    Ok((text, parsed.substitution))
}

fn check(a: &CheckArgs) -> Result<u8, Failure> {
    let (text, sub) = load(&a.input)?;
    let cfg = CertifyConfig {
        n_max: a.nmax,
        samples: a.samples,
        cap: a.cap,
        window: a.window,
        tolerance: a.tolerance.clone(),
        ..CertifyConfig::default()
    };
    let r = theorem_certify(&sub, &cfg);
    let input = json!({ "path": a.input.display().to_string(), "text": text });
    let doc = report::check_document(&r, &cfg, input, provenance(&text));
    let mut s = serde_json::to_string_pretty(&doc)?;
    s.push('\n');
    emit(&s, &a.out)?;
    eprintln!("{}", r.verdict.label());
    Ok(match r.verdict {
        SpectrumVerdict::PdsCertifiedByTheorem | SpectrumVerdict::PdsConsistentByOverlap => 0,
        SpectrumVerdict::NotPdsEvidence { .. } => 2,
        SpectrumVerdict::Inconclusive { .. } => 3,
    })
}

fn field(minpoly: &str) -> Result<std::sync::Arc<NumberField>, Failure> {
    let p: RationalPolynomial = minpoly.parse()?;
    Ok(NumberField::from_min_poly(&p)?)
}

fn required<'a>(v: &'a Option<String>, flag: &str) -> Result<&'a str, Failure> {
    v.as_deref().ok_or_else(|| Failure(format!("--{flag} is required")))
}

fn word(a: &GenerateArgs) -> Result<Vec<usize>, Failure> {
    let w = required(&a.word, "word")?;
    generators::parse_word(w).ok_or_else(|| Failure(format!("malformed word {w:?}")))
}

fn generate(a: &GenerateArgs) -> Result<u8, Failure> {
    let (sub, description) = match a.kind {
        Family::Beta => {
            let f = field(required(&a.minpoly, "minpoly")?)?;
            let p = generators::beta_orbit(&f, a.max_steps)?;
            if !p.simple {
                return Err(Failure(format!(
                    "β is a non-simple Parry number (preperiod {}, period {})",
                    p.preperiod.unwrap_or(0),
                    p.period.unwrap_or(0)
                )));
            }
            let digits: Vec<String> = p.digits.iter().map(ToString::to_string).collect();
            let sub = generators::beta_substitution(&p)?;
            (sub, format!("beta minpoly={} digits={}", f.min_poly(), digits.join(",")))
        }
        Family::Ar => {
            let d = a.d.ok_or_else(|| Failure("--d is required".into()))?;
            let w = word(a)?;
            (generators::arnoux_rauzy(d, &w)?, format!("ar d={d} word={}", join_word(&w)))
        }
        Family::Brun => {
            let w = word(a)?;
            (generators::brun(&w)?, format!("brun word={}", join_word(&w)))
        }
        Family::Jp => {
            let pairs = parse::pairs(required(&a.pairs, "pairs")?)?;
            let text: Vec<String> = pairs.iter().map(|(x, y)| format!("{x},{y}")).collect();
            (generators::jacobi_perron(&pairs)?, format!("jp pairs={}", text.join(";")))
        }
    };
    let mut out = format!(
        "# substral {}\n# generator: {description}\n",
        env!("CARGO_PKG_VERSION")
    );
    out.push_str(&write_substitution(&sub));
    emit(&out, &a.out)?;
    Ok(0)
}

fn join_word(w: &[usize]) -> String {
    let parts: Vec<String> = w.iter().map(ToString::to_string).collect();
    parts.join(if w.iter().any(|&l| l > 9) { "." } else { "" })
}

fn tile(a: &TileArgs) -> Result<u8, Failure> {
    let (_, sub) = load(&a.input)?;
    let geo = GeometricSubstitution::new(&sub)?;
    let seed = sub.admissible_seed()?;
    let tiling = fixed_tiling(&geo, seed)?;
    let patch = tiling.window(&geo.field().from_rational(a.radius.clone()));
    emit(&format!("{}\n", render_text(&patch)), &a.out)?;
    if let Some(p) = &a.svg {
        fs::write(p, render_svg(&patch)).map_err(|e| Failure(format!("{}: {e}", p.display())))?;
    }
    Ok(0)
}

fn expand(a: &ExpandArgs) -> Result<u8, Failure> {
    let f = field(&a.minpoly)?;
    let x = match parse::rational(&a.x) {
        Ok(q) => f.from_rational(q),
        Err(_) => f.from_poly(&a.x.parse()?),
    };
    let g = greedy_expansion(&x, a.m)?;
    let wide = f.generator().floor() >= 10.into();
    let digit = |d: &num_bigint::BigInt| if wide { format!("({d})") } else { d.to_string() };
    // Digits at indices k ≤ 0 form the integer part.
    let mut digits: Vec<(i64, &num_bigint::BigInt)> =
        g.digits.iter().enumerate().map(|(i, d)| (g.start + i as i64, d)).collect();
    if g.terminates {
        while digits.len() > 1 && digits.last().is_some_and(|(k, d)| *k > 0 && d.is_zero()) {
            digits.pop();
        }
    }
    let int: String = digits.iter().filter(|(k, _)| *k <= 0).map(|(_, d)| digit(d)).collect();
    let frac: String = digits.iter().filter(|(k, _)| *k > 0).map(|(_, d)| digit(d)).collect();
    let mut s = if frac.is_empty() { int } else { format!("{int}.{frac}") };
    s.push('\n');
    for (i, d) in g.digits.iter().enumerate() {
        s.push_str(&format!("x_{} = {d}  bound OK\n", g.start + i as i64));
    }
    if g.terminates {
        s.push_str("remainder 0\n");
    }
    print!("{s}");
    Ok(0)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { INPUT_ERROR } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let result = match &cli.command {
        Command::Check(a) => check(a),
        Command::Generate(a) => generate(a),
        Command::Tile(a) => tile(a),
        Command::Expand(a) => expand(a),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(Failure(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(INPUT_ERROR)
        }
    }
}
