//! Command-line front end.
//!
//! Exit codes: 0 for a conjugate relation or a successful command, 1 for a
//! relation that is not conjugate (or a negative word query), 2 for usage,
//! parse and limit errors.

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde::{Deserialize, Serialize};

use crate::expr::{parse, to_snf_with_limit, RationalExpr, DEFAULT_SNF_SIZE_LIMIT};
use crate::oracle::{self, EnumBounds, OracleVerdict};
use crate::witness::{self, ConjugacyReport, DecideOptions, WitnessSet};
use crate::word::{self, Side, Word, WordPair};

pub const SCHEMA: u32 = 1;

#[derive(Debug, Parser)]
#[command(
    name = "conjugacy",
    version,
    about = "Decide conjugacy of rational relations"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Decide whether every pair of the relation is conjugate.
    Check {
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        json: bool,
        /// Search for a non-conjugate pair when the answer is negative.
        #[arg(long)]
        counterexample: bool,
        #[arg(long, env = "CONJUGACY_MAX_SNF_SIZE", default_value_t = DEFAULT_SNF_SIZE_LIMIT,
              value_parser = positive)]
        max_snf_size: usize,
    },
    /// Print the common-witness set of each summand.
    Witness {
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        json: bool,
        /// Also list the witnesses up to this length.
        #[arg(long, value_name = "L")]
        enumerate: Option<usize>,
        #[arg(long, env = "CONJUGACY_MAX_SNF_SIZE", default_value_t = DEFAULT_SNF_SIZE_LIMIT,
              value_parser = positive)]
        max_snf_size: usize,
    },
    /// Print the sumfree normal form.
    Snf {
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        json: bool,
        #[arg(long, env = "CONJUGACY_MAX_SNF_SIZE", default_value_t = DEFAULT_SNF_SIZE_LIMIT,
              value_parser = positive)]
        max_snf_size: usize,
    },
    /// Cross-check the decision against bounded enumeration.
    Oracle {
        #[command(flatten)]
        source: Source,
        #[arg(long, default_value_t = 4, value_parser = positive)]
        unroll: usize,
        #[arg(long, default_value_t = 64, value_parser = positive)]
        max_len: usize,
        #[arg(long, default_value_t = 16, value_parser = positive)]
        witness_len: usize,
        #[arg(long, default_value_t = 200_000, value_parser = positive)]
        max_pairs: usize,
        #[arg(long)]
        json: bool,
    },
    /// Word utilities.
    #[command(subcommand)]
    Word(WordCommand),
}

#[derive(Debug, Args)]
struct Source {
    /// Expression text.
    #[arg(required_unless_present = "file", conflicts_with = "file")]
    expr: Option<String>,
    /// Read the expression from a file.
    #[arg(short, long)]
    file: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
enum WordCommand {
    /// Primitive root and exponent, printed as `root^n`.
    Root { word: String },
    /// Whether the two words are cyclic shifts of each other.
    Conjugate { u: String, v: String },
    /// All cuts `(x,y)` with `u = xy` and `v = yx`.
    Cuts { u: String, v: String },
    /// Prefix delay, or suffix delay with `--suffix`.
    Delay {
        u: String,
        v: String,
        #[arg(long)]
        suffix: bool,
    },
}

fn positive(text: &str) -> Result<usize, String> {
    match text.parse::<usize>() {
        Ok(0) => Err("must be positive".into()),
        Ok(n) => Ok(n),
        Err(e) => Err(e.to_string()),
    }
}

/// `check --json` output.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckJson {
    pub schema: u32,
    pub conjugate: bool,
    pub summands: Vec<SummandJson>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SummandJson {
    pub expression: String,
    pub conjugate: bool,
    pub witnesses: WitnessSet,
    pub counterexample: Option<WordPair>,
}

impl CheckJson {
    pub fn from_report(report: &ConjugacyReport) -> Self {
        CheckJson {
            schema: SCHEMA,
            conjugate: report.conjugate,
            summands: report
                .summands
                .iter()
                .map(|s| SummandJson {
                    expression: s.monomial.to_string(),
                    conjugate: s.conjugate,
                    witnesses: s.witnesses.clone(),
                    counterexample: s.counterexample.clone(),
                })
                .collect(),
        }
    }
}

/// `witness --json` output.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessJson {
    pub schema: u32,
    pub conjugate: bool,
    pub summands: Vec<WitnessSummandJson>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessSummandJson {
    pub expression: String,
    pub witnesses: WitnessSet,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub inner: Option<Vec<Word>>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub outer: Option<Vec<Word>>,
}

/// `snf --json` output.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct SnfJson {
    pub schema: u32,
    pub summands: Vec<String>,
    pub input_size: usize,
    pub output_size: usize,
}

/// `oracle --json` output.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct OracleJson {
    pub schema: u32,
    pub pairs_checked: usize,
    pub truncated: bool,
    pub counterexample: Option<WordPair>,
    pub inner: Vec<Word>,
    pub outer: Vec<Word>,
    pub engine_conjugate: Option<bool>,
    pub discrepancies: Vec<String>,
}

struct Failure(String);

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure(e.to_string())
    }
}

type Outcome = Result<u8, Failure>;

/// Runs the command line `args` (program name first) and returns the exit
/// code.
pub fn run(args: &[String], out: &mut impl Write, err: &mut impl Write) -> u8 {
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let rendered = e.render().to_string();
            let _ = if code == 0 {
                write!(out, "{rendered}")
            } else {
                write!(err, "{rendered}")
            };
            return code;
        }
    };
    match dispatch(cli.command, out) {
        Ok(code) => code,
        Err(Failure(message)) => {
            let _ = writeln!(err, "error: {message}");
            2
        }
    }
}

fn read_source(source: &Source) -> Result<RationalExpr, Failure> {
    let text = match (&source.expr, &source.file) {
        (Some(text), _) => text.clone(),
        (None, Some(path)) => std::fs::read_to_string(path)
            .map_err(|e| Failure(format!("{}: {e}", path.display())))?,
        (None, None) => return Err(Failure("no expression given".into())),
    };
    Ok(parse(&text)?)
}

fn verdict_code(conjugate: bool) -> u8 {
    if conjugate {
        0
    } else {
        1
    }
}

fn json_line(out: &mut impl Write, value: &impl Serialize) -> Result<(), Failure> {
    writeln!(out, "{}", serde_json::to_string(value)?)?;
    Ok(())
}

fn show_pair(p: &WordPair) -> String {
    format!("({}, {})", p.u, p.v)
}

fn show_words(words: &[Word]) -> String {
    words
        .iter()
        .map(|w| {
            if w.is_empty() {
                "\"\"".to_string()
            } else {
                w.to_string()
            }
        })
        .collect::<Vec<_>>()
        .join(" ")
}

fn dispatch(command: Command, out: &mut impl Write) -> Outcome {
    match command {
        Command::Check {
            source,
            json,
            counterexample,
            max_snf_size,
        } => {
            let e = read_source(&source)?;
            let options = DecideOptions {
                max_snf_size,
                counterexample,
                ..DecideOptions::default()
            };
            let report = witness::decide(&e, &options)?;
            if json {
                json_line(out, &CheckJson::from_report(&report))?;
            } else if report.conjugate {
                writeln!(out, "conjugate")?;
            } else {
                match report.counterexample() {
                    Some(pair) => writeln!(out, "not conjugate: {}", show_pair(pair))?,
                    None => writeln!(out, "not conjugate")?,
                }
            }
            Ok(verdict_code(report.conjugate))
        }
        Command::Witness {
            source,
            json,
            enumerate,
            max_snf_size,
        } => {
            let e = read_source(&source)?;
            let options = DecideOptions {
                max_snf_size,
                ..DecideOptions::default()
            };
            let report = witness::decide(&e, &options)?;
            let mut summands = Vec::new();
            for s in &report.summands {
                let listed = |side| match (&s.witnesses, enumerate) {
                    (WitnessSet::Universal, _) | (_, None) => Ok(None),
                    (set, Some(len)) => witness::enumerate_witnesses(set, side, len).map(Some),
                };
                summands.push(WitnessSummandJson {
                    expression: s.monomial.to_string(),
                    witnesses: s.witnesses.clone(),
                    inner: listed(Side::Inner)?,
                    outer: listed(Side::Outer)?,
                });
            }
            if json {
                json_line(
                    out,
                    &WitnessJson {
                        schema: SCHEMA,
                        conjugate: report.conjugate,
                        summands,
                    },
                )?;
            } else {
                if summands.is_empty() {
                    writeln!(out, "empty relation: every word is a witness")?;
                }
                for s in &summands {
                    writeln!(out, "{}: {}", s.expression, s.witnesses)?;
                    if let Some(words) = &s.inner {
                        writeln!(out, "  inner: {}", show_words(words))?;
                    }
                    if let Some(words) = &s.outer {
                        writeln!(out, "  outer: {}", show_words(words))?;
                    }
                }
            }
            Ok(verdict_code(report.conjugate))
        }
        Command::Snf {
            source,
            json,
            max_snf_size,
        } => {
            let e = read_source(&source)?;
            let snf = to_snf_with_limit(&e, max_snf_size)?;
            if json {
                json_line(
                    out,
                    &SnfJson {
                        schema: SCHEMA,
                        summands: snf.summands.iter().map(|m| m.to_string()).collect(),
                        input_size: snf.input_size,
                        output_size: snf.output_size,
                    },
                )?;
            } else {
                writeln!(out, "{}", snf.to_expr())?;
            }
            Ok(0)
        }
        Command::Oracle {
            source,
            unroll,
            max_len,
            witness_len,
            max_pairs,
            json,
        } => {
            let e = read_source(&source)?;
            let bounds = EnumBounds {
                max_unroll: unroll,
                max_len,
                max_pairs,
            };
            let report = oracle::cross_validate(&e, &bounds, witness_len);
            let counterexample = match &report.verdict {
                OracleVerdict::Counterexample(p) => Some(p.clone()),
                OracleVerdict::AllConjugate => None,
            };
            if json {
                json_line(
                    out,
                    &OracleJson {
                        schema: SCHEMA,
                        pairs_checked: report.pairs_checked,
                        truncated: report.truncated,
                        counterexample: counterexample.clone(),
                        inner: report.inner_witnesses.clone(),
                        outer: report.outer_witnesses.clone(),
                        engine_conjugate: report.engine_conjugate,
                        discrepancies: report.discrepancies.clone(),
                    },
                )?;
            } else {
                writeln!(out, "pairs checked: {}", report.pairs_checked)?;
                writeln!(out, "truncated: {}", report.truncated)?;
                match &counterexample {
                    Some(p) => writeln!(out, "counterexample: {}", show_pair(p))?,
                    None => writeln!(out, "all conjugate")?,
                }
                if counterexample.is_none() && !report.unconstrained {
                    writeln!(
                        out,
                        "inner witnesses: {}",
                        show_words(&report.inner_witnesses)
                    )?;
                    writeln!(
                        out,
                        "outer witnesses: {}",
                        show_words(&report.outer_witnesses)
                    )?;
                }
                match (report.engine_conjugate, &report.engine_error) {
                    (Some(c), _) => writeln!(
                        out,
                        "engine: {}",
                        if c { "conjugate" } else { "not conjugate" }
                    )?,
                    (None, Some(e)) => writeln!(out, "engine: {e}")?,
                    (None, None) => {}
                }
                for d in &report.discrepancies {
                    writeln!(out, "discrepancy: {d}")?;
                }
            }
            if let Some(e) = report.engine_error {
                return Err(Failure(e));
            }
            if !report.agrees() {
                return Ok(2);
            }
            Ok(verdict_code(counterexample.is_none()))
        }
        Command::Word(command) => run_word(command, out),
    }
}

fn run_word(command: WordCommand, out: &mut impl Write) -> Outcome {
    let word = |text: &str| text.parse::<Word>().map_err(Failure::from);
    match command {
        WordCommand::Root { word: text } => {
            let (root, exponent) = word::primitive_root(&word(&text)?)?;
            writeln!(out, "{root}^{exponent}")?;
            Ok(0)
        }
        WordCommand::Conjugate { u, v } => {
            let conjugate = word::is_conjugate(&word(&u)?, &word(&v)?);
            writeln!(
                out,
                "{}",
                if conjugate {
                    "conjugate"
                } else {
                    "not conjugate"
                }
            )?;
            Ok(verdict_code(conjugate))
        }
        WordCommand::Cuts { u, v } => {
            let cuts = word::cuts(&word(&u)?, &word(&v)?);
            for cut in &cuts {
                writeln!(out, "({}, {})", cut.x, cut.y)?;
            }
            Ok(verdict_code(!cuts.is_empty()))
        }
        WordCommand::Delay { u, v, suffix } => {
            let (u, v) = (word(&u)?, word(&v)?);
            let delay = if suffix {
                word::suffix_delay(&u, &v)
            } else {
                word::prefix_delay(&u, &v)
            };
            match &delay {
                Some(d) if d.is_empty() => writeln!(out, "\"\"")?,
                Some(d) => writeln!(out, "{d}")?,
                None => writeln!(out, "undefined")?,
            }
            Ok(verdict_code(delay.is_some()))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (u8, String, String) {
        let argv: Vec<String> = std::iter::once("conjugacy")
            .chain(args.iter().copied())
            .map(String::from)
            .collect();
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let code = run(&argv, &mut out, &mut err);
        (
            code,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    #[test]
    fn check_examples() {
        assert_eq!(
            call(&["check", "(ab,ba)*"]),
            (0, "conjugate\n".into(), String::new())
        );
        let (code, out, _) = call(&["check", "--counterexample", "(ab,ba)*(ba,ab)*"]);
        assert_eq!(code, 1);
        assert_eq!(out, "not conjugate: (ababba, babaab)\n");
    }

    #[test]
    fn word_examples() {
        assert_eq!(call(&["word", "root", "abab"]).1, "ab^2\n");
        assert_eq!(call(&["word", "conjugate", "aaab", "aaba"]).0, 0);
        assert_eq!(call(&["word", "cuts", "aab", "aba"]).1, "(a, ab)\n");
        assert_eq!(call(&["word", "root", ""]).0, 2);
    }

    #[test]
    fn errors_exit_two() {
        let (code, out, err) = call(&["check", "(ab,ba"]);
        assert_eq!(code, 2);
        assert!(out.is_empty());
        assert!(err.starts_with("error: 1:7"), "{err}");
        assert_eq!(call(&["check", "(a,a)", "--max-snf-size", "0"]).0, 2);
        assert_eq!(call(&["bogus"]).0, 2);
    }

    #[test]
    fn check_json_round_trips() {
        let (code, out, _) = call(&["check", "--json", "(ab,ba)*+(a,b)"]);
        assert_eq!(code, 1);
        let parsed: CheckJson = serde_json::from_str(&out).unwrap();
        assert_eq!(parsed.schema, 1);
        assert!(!parsed.conjugate);
        assert_eq!(parsed.summands.len(), 2);
        assert_eq!(serde_json::to_string(&parsed).unwrap(), out.trim_end());
    }
}
