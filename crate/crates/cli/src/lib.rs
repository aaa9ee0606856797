//! Command-line front end: parses surface expressions, evaluates them in the
//! free integro-differential ring over `ℚ(x)` and prints canonical forms,
//! closure values and verification reports.

pub mod expr;

use std::fmt::Write as _;

use clap::{Parser, Subcommand, ValueEnum};
use idr_core::arith::RatFun;
use idr_core::basering::RationalBase;
use idr_core::idr::{AlphabetEntry, IdrElem, IdrRing, Mode};
use idr_core::verify::{check_ideal_equality, freeness_truncated, VerifyReport};
use idr_core::words::{is_in_s, is_lyndon, lyndon_factorization, split_max_shuffle, Word};
use idr_core::{IdrError, Result};
use serde::Serialize;

pub use expr::{eval, parse_expr, Expr};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Free,
    Q,
    Ida,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Mode {
        match m {
            ModeArg::Free => Mode::Free,
            ModeArg::Q => Mode::QRespecting,
            ModeArg::Ida => Mode::Multiplicative,
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "idr", version, about = "Exact computations in free integro-differential rings over Q(x)")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Which relations the evaluation constants satisfy.
    #[arg(long, global = true, value_enum, default_value = "q")]
    pub mode: ModeArg,

    /// Laurent series are computed below x^N.
    #[arg(long, global = true, default_value_t = 30, allow_negative_numbers = true)]
    pub truncation: i64,

    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,

    /// Fix the alphabet order by listing letters first, e.g. `1/(x+1),1/x`.
    #[arg(long, global = true, value_delimiter = ',')]
    pub alphabet: Vec<String>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the canonical form of an expression.
    Simplify { expr: String },
    /// Substitute the Laurent-model value of every constant.
    Closure { expr: String },
    /// Run a relation check.
    #[command(subcommand)]
    Verify(VerifyCommand),
    /// Lyndon data of a word over a..z.
    Lyndon {
        word: String,
        /// Second word W: also report whether (word, W) lies in the generating set.
        #[arg(long)]
        with: Option<String>,
    },
}

#[derive(Debug, Subcommand)]
pub enum VerifyCommand {
    /// Rank-1 ideal equality up to total degree d.
    Rank1 {
        #[arg(long, default_value_t = 10)]
        d: u32,
        /// Use d = 60 (very long running).
        #[arg(long)]
        full: bool,
    },
    /// Bounded-weight freeness of the generating set.
    Freeness {
        #[arg(long, default_value_t = 2)]
        letters: u32,
        #[arg(long, default_value_t = 5)]
        wmax: usize,
        /// Use the largest weight checked in the literature for this alphabet size.
        #[arg(long)]
        full: bool,
    },
}

/// Text or JSON to print, and whether the command succeeded.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub success: bool,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Self { stdout, success: true }
    }
}

/// Exit status for an error: 3 when the Laurent window was too small, 1 otherwise.
pub fn exit_code(e: &IdrError) -> u8 {
    match e {
        IdrError::TruncationInsufficient { .. } => 3,
        _ => 1,
    }
}

fn to_json<T: Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("serializable")
}

fn build_ring(cli: &Cli) -> Result<IdrRing<RationalBase>> {
    let pinned: Vec<RatFun> = cli
        .alphabet
        .iter()
        .map(|s| s.parse::<RatFun>())
        .collect::<Result<_>>()?;
    Ok(IdrRing::new(RationalBase::with_letters(&pinned)?, cli.mode.into()))
}

fn write_legend(out: &mut String, letters: &[AlphabetEntry], image: &[AlphabetEntry]) {
    if letters.is_empty() && image.is_empty() {
        return;
    }
    out.push_str("where\n");
    for e in letters {
        let _ = writeln!(out, "  {} = {}", e.name, e.value);
    }
    for e in image {
        let _ = writeln!(out, "  {} = {}", e.name, e.value);
    }
}

fn render_with_legend(ring: &IdrRing<RationalBase>, a: &IdrElem<RatFun>) -> String {
    let mut out = ring.render(a);
    out.push('\n');
    write_legend(&mut out, &ring.legend(a), &ring.image_legend(a));
    out
}

fn simplify(cli: &Cli, text: &str) -> Result<Outcome> {
    let ring = build_ring(cli)?;
    let a = eval(&ring, &parse_expr(text)?)?;
    if cli.json {
        return Ok(Outcome::ok(to_json(&ring.to_json(&a))));
    }
    Ok(Outcome::ok(render_with_legend(&ring, &a)))
}

#[derive(Serialize)]
struct ConstantValue {
    symbol: String,
    value: String,
}

#[derive(Serialize)]
struct ClosureJson {
    input: idr_core::idr::IdrJson,
    constants: Vec<ConstantValue>,
    result: idr_core::idr::IdrJson,
    truncation: i64,
}

fn closure(cli: &Cli, text: &str) -> Result<Outcome> {
    let ring = build_ring(cli)?;
    let a = eval(&ring, &parse_expr(text)?)?;
    let values = ring.closure_constants(&a, cli.truncation)?;
    let reduced = ring.closure_reduce(&a, cli.truncation)?;
    let constants: Vec<ConstantValue> = values
        .iter()
        .map(|(s, v)| ConstantValue { symbol: s.to_string(), value: idr_core::arith::fmt_rational(v) })
        .collect();
    if cli.json {
        let j = ClosureJson {
            input: ring.to_json(&a),
            constants,
            result: ring.to_json(&reduced),
            truncation: cli.truncation,
        };
        return Ok(Outcome::ok(to_json(&j)));
    }
    let mut out = ring.render(&reduced);
    out.push('\n');
    if !constants.is_empty() {
        out.push_str("constants\n");
        for c in &constants {
            let _ = writeln!(out, "  {} = {}", c.symbol, c.value);
        }
    }
    write_legend(&mut out, &ring.legend(&a), &ring.image_legend(&a));
    Ok(Outcome::ok(out))
}

fn report(cli: &Cli, r: VerifyReport) -> Outcome {
    let stdout = if cli.json { to_json(&r) } else { format!("{r}\n") };
    Outcome { stdout, success: r.passed() }
}

fn full_weight(letters: u32) -> usize {
    match letters {
        1 => 60,
        2 => 12,
        3 => 9,
        _ => 6,
    }
}

#[derive(Serialize)]
struct LyndonJson {
    word: String,
    lyndon: bool,
    factorization: Vec<String>,
    max_shuffle_split: Option<(String, String)>,
    with: Option<String>,
    in_s: Option<bool>,
}

fn lyndon(cli: &Cli, word: &str, with: Option<&str>) -> Result<Outcome> {
    let w = Word::parse(word)?;
    if w.is_empty() {
        return Err(IdrError::EmptyWord);
    }
    let factors = lyndon_factorization(&w)?;
    let split = split_max_shuffle(&w)?;
    let in_s = match with {
        Some(v) => Some(is_in_s(&w, &Word::parse(v)?)?),
        None => None,
    };
    let j = LyndonJson {
        word: w.to_string(),
        lyndon: is_lyndon(&w),
        factorization: factors.iter().map(|f| f.to_string()).collect(),
        max_shuffle_split: split.map(|(a, b)| (a.to_string(), b.to_string())),
        with: with.map(str::to_string),
        in_s,
    };
    if cli.json {
        return Ok(Outcome::ok(to_json(&j)));
    }
    let mut out = String::new();
    let _ = writeln!(out, "word:          {}", j.word);
    let _ = writeln!(out, "lyndon:        {}", j.lyndon);
    let _ = writeln!(out, "factorization: {}", j.factorization.join(" | "));
    if let Some((a, b)) = &j.max_shuffle_split {
        let _ = writeln!(out, "max shuffle:   {a} ш {b}");
    }
    if let (Some(v), Some(s)) = (&j.with, j.in_s) {
        let _ = writeln!(out, "({}, {v}) in S: {s}", j.word);
    }
    Ok(Outcome::ok(out))
}

pub fn run(cli: &Cli) -> Result<Outcome> {
    match &cli.command {
        Command::Simplify { expr } => simplify(cli, expr),
        Command::Closure { expr } => closure(cli, expr),
        Command::Verify(VerifyCommand::Rank1 { d, full }) => {
            Ok(report(cli, check_ideal_equality(if *full { 60 } else { *d })))
        }
        Command::Verify(VerifyCommand::Freeness { letters, wmax, full }) => {
            let wmax = if *full { full_weight(*letters) } else { *wmax };
            Ok(report(cli, freeness_truncated(*letters, wmax)))
        }
        Command::Lyndon { word, with } => lyndon(cli, word, with.as_deref()),
    }
}
