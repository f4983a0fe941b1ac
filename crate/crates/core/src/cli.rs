//! Command-line front end.
//!
//! Exit codes: `0` for true / all checks passed, `1` for false / a failed or
//! budget-exhausted check report, `2` for usage, parse and precondition
//! errors and for queries left undecided by the search budget.

use std::io::{BufRead, Write};
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::gn::{self, Convention, GnConstruction};
use crate::imaginaries;
use crate::report::VerificationReport;
use crate::stallings::SubgroupGraph;
use crate::whitehead;
use crate::word::{Alphabet, Word};

pub const EXIT_TRUE: i32 = 0;
pub const EXIT_FALSE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Lemma {
    Relation,
    Freefactor,
    Surface,
    Flag,
    Abelian,
    Orbit,
    Separation,
    All,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ConventionArg {
    Right,
    Left,
}

impl From<ConventionArg> for Convention {
    fn from(c: ConventionArg) -> Convention {
        match c {
            ConventionArg::Right => Convention::RightAction,
            ConventionArg::Left => Convention::LeftAction,
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "fgcert", version, about = "Free-group computations and certificate checks")]
pub struct CliConfig {
    #[command(subcommand)]
    pub command: Command,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value = "text")]
    pub format: Format,
    /// Search budget for Whitehead searches and element enumeration.
    #[arg(long, global = true)]
    pub budget: Option<usize>,
    /// Comma-separated generator names; inferred from the input words if absent.
    #[arg(long, global = true)]
    pub alphabet: Option<String>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Freely reduce words (read one per line from stdin if none are given).
    Reduce { words: Vec<String> },
    /// Decide conjugacy of two words.
    Conj { u: String, v: String },
    /// Print the root `r` and exponent `k` with `w = r^k`.
    Root { w: String },
    /// Decide whether a word is primitive.
    Primitive { w: String },
    /// Decide membership of WORD in the subgroup generated by GENS.
    Member {
        word: String,
        #[arg(required = true)]
        gens: Vec<String>,
    },
    /// Decide one of the basic equivalence relations.
    Eq {
        #[command(subcommand)]
        relation: Relation,
    },
    /// Work with the witness groups `G_n`.
    Gn {
        #[command(subcommand)]
        action: GnAction,
    },
    /// Run certificate checks on `G_n`.
    Verify {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value = "all")]
        lemma: Lemma,
        /// Flag index; every valid index is checked if absent.
        #[arg(long)]
        i: Option<usize>,
        /// Word-length bound for the separation scan.
        #[arg(long, default_value_t = 6)]
        max_len: usize,
        /// Twist bound for the orbit checks.
        #[arg(long, default_value_t = 10)]
        max_twist: u32,
        /// Gluing convention used to build `G_n` (`left` is a fault-injection mode).
        #[arg(long, value_enum, default_value = "right")]
        convention: ConventionArg,
    },
}

#[derive(Debug, Subcommand)]
pub enum Relation {
    /// Conjugacy: `x^z = y` for some `z`.
    E0 { x: String, y: String },
    /// `C(x) = C(x2)` and `y2 ∈ y·C(x)^m`.
    E1 {
        #[arg(long)]
        m: i64,
        x: String,
        y: String,
        x2: String,
        y2: String,
    },
    /// `C(x) = C(x2)` and `y2 ∈ C(x)^m·y`.
    E2 {
        #[arg(long)]
        m: i64,
        x: String,
        y: String,
        x2: String,
        y2: String,
    },
    /// `C(x) = C(x2)`, `C(y) = C(y2)` and `z ∈ C(x)^p·z2·C(y)^q`.
    E3 {
        #[arg(long)]
        p: i64,
        #[arg(long)]
        q: i64,
        x: String,
        y: String,
        z: String,
        x2: String,
        y2: String,
        z2: String,
    },
}

#[derive(Debug, Subcommand)]
pub enum GnAction {
    /// Print the generators and derived words of `G_n`.
    Build {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value = "right")]
        convention: ConventionArg,
    },
}

/// Runs the binary against the process environment.
pub fn run_from_env() -> i32 {
    let stdin = std::io::stdin();
    let mut input = stdin.lock();
    let mut out = std::io::stdout().lock();
    let mut err = std::io::stderr().lock();
    run(std::env::args_os(), &mut input, &mut out, &mut err)
}

/// Parses `args` (program name first) and executes the command.
pub fn run<I, T>(args: I, input: &mut dyn BufRead, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let config = match CliConfig::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let rendered = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(err, "{rendered}");
                EXIT_USAGE
            } else {
                let _ = write!(out, "{rendered}");
                EXIT_TRUE
            };
        }
    };
    match execute(&config, input, out, err) {
        Ok(code) => code,
        Err(Error::BudgetExhausted(b)) => {
            let _ = writeln!(err, "error: undecided, search budget of {b} exhausted");
            EXIT_USAGE
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_USAGE
        }
    }
}

struct Session<'a> {
    config: &'a CliConfig,
    out: &'a mut dyn Write,
}

impl Session<'_> {
    fn emit(&mut self, text: impl std::fmt::Display, value: Value) -> Result<()> {
        let line = match self.config.format {
            Format::Text => text.to_string(),
            Format::Json => value.to_string(),
        };
        writeln!(self.out, "{line}").map_err(|e| Error::Precondition(format!("cannot write output: {e}")))
    }

    fn answer(&mut self, key: &str, verdict: bool) -> Result<i32> {
        self.emit(verdict, json!({ key: verdict }))?;
        Ok(if verdict { EXIT_TRUE } else { EXIT_FALSE })
    }
}

/// Generator names in order of first appearance.
fn infer_alphabet<'a>(texts: impl IntoIterator<Item = &'a str>) -> Result<Arc<Alphabet>> {
    let mut names: Vec<String> = Vec::new();
    for text in texts {
        for token in text.split_whitespace() {
            let name = token.split_once('^').map_or(token, |(n, _)| n);
            let valid = name.chars().next().is_some_and(|c| c.is_ascii_lowercase())
                && name.chars().all(|c| c.is_ascii_lowercase() || c.is_ascii_digit() || c == '_');
            if valid && !names.iter().any(|n| n == name) {
                names.push(name.to_string());
            }
        }
    }
    if names.is_empty() {
        names.push("a".into());
    }
    Alphabet::new(names)
}

fn parse_words(config: &CliConfig, texts: &[&str]) -> Result<Vec<Word>> {
    let alphabet = match &config.alphabet {
        Some(list) => Alphabet::parse(list)?,
        None => infer_alphabet(texts.iter().copied())?,
    };
    texts.iter().map(|t| Word::parse(t, &alphabet)).collect()
}

fn execute(config: &CliConfig, input: &mut dyn BufRead, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32> {
    let mut s = Session { config, out };
    let budget = config.budget.unwrap_or(whitehead::DEFAULT_BUDGET);
    match &config.command {
        Command::Reduce { words } => {
            let lines: Vec<String> = if words.is_empty() {
                input
                    .lines()
                    .collect::<std::io::Result<_>>()
                    .map_err(|e| Error::Precondition(format!("cannot read stdin: {e}")))?
            } else {
                words.clone()
            };
            let texts: Vec<&str> = lines.iter().map(String::as_str).collect();
            let reduced: Vec<String> = parse_words(config, &texts)?.iter().map(Word::to_string).collect();
            s.emit(reduced.join("\n"), json!({ "reduced": reduced }))?;
            Ok(EXIT_TRUE)
        }
        Command::Conj { u, v } => {
            let w = parse_words(config, &[u, v])?;
            let verdict = w[0].is_conjugate(&w[1])?;
            let text = verdict.to_string();
            s.emit(
                text,
                json!({
                    "conjugate": verdict,
                    "canonical": [w[0].cyclic_normal_form().canonical.to_string(),
                                  w[1].cyclic_normal_form().canonical.to_string()],
                }),
            )?;
            Ok(if verdict { EXIT_TRUE } else { EXIT_FALSE })
        }
        Command::Root { w } => {
            let w = &parse_words(config, &[w])?[0];
            let (root, k) = w.root()?;
            s.emit(format!("{root} {k}"), json!({ "root": root.to_string(), "power": k }))?;
            Ok(EXIT_TRUE)
        }
        Command::Primitive { w } => {
            let w = &parse_words(config, &[w])?[0];
            let verdict = whitehead::is_primitive_with_budget(w, budget)?;
            s.answer("primitive", verdict)
        }
        Command::Member { word, gens } => {
            let mut texts: Vec<&str> = vec![word];
            texts.extend(gens.iter().map(String::as_str));
            let w = parse_words(config, &texts)?;
            let graph = SubgroupGraph::fold_over(w[0].alphabet(), &w[1..])?;
            s.answer("member", graph.contains(&w[0])?)
        }
        Command::Eq { relation } => {
            let verdict = match relation {
                Relation::E0 { x, y } => {
                    let w = parse_words(config, &[x, y])?;
                    imaginaries::e0(&w[0], &w[1])?
                }
                Relation::E1 { m, x, y, x2, y2 } => {
                    let w = parse_words(config, &[x, y, x2, y2])?;
                    imaginaries::e1(*m, &w[0], &w[1], &w[2], &w[3])?
                }
                Relation::E2 { m, x, y, x2, y2 } => {
                    let w = parse_words(config, &[x, y, x2, y2])?;
                    imaginaries::e2(*m, &w[0], &w[1], &w[2], &w[3])?
                }
                Relation::E3 { p, q, x, y, z, x2, y2, z2 } => {
                    let w = parse_words(config, &[x, y, z, x2, y2, z2])?;
                    imaginaries::e3(*p, *q, &w[0], &w[1], &w[2], &w[3], &w[4], &w[5])?
                }
            };
            s.answer("equivalent", verdict)
        }
        Command::Gn {
            action: GnAction::Build { n, convention },
        } => {
            let g = gn::build_gn_with(*n, (*convention).into());
            let (text, value) = describe_gn(&g);
            s.emit(text, value)?;
            Ok(EXIT_TRUE)
        }
        Command::Verify {
            n,
            lemma,
            i,
            max_len,
            max_twist,
            convention,
        } => {
            let g = gn::build_gn_with(*n, (*convention).into());
            let options = VerifyOptions {
                i: *i,
                max_len: *max_len,
                max_twist: *max_twist,
                cap: config.budget.unwrap_or(gn::DEFAULT_ELEMENT_CAP),
            };
            let (reports, skipped) = run_lemma(&g, *lemma, &options)?;
            for note in &skipped {
                let _ = writeln!(err, "skipped: {note}");
            }
            emit_reports(&mut s, &reports)?;
            let all_pass = reports.iter().all(VerificationReport::passed);
            Ok(if all_pass { EXIT_TRUE } else { EXIT_FALSE })
        }
    }
}

fn describe_gn(g: &GnConstruction) -> (String, Value) {
    let strings = |ws: &[Word]| ws.iter().map(Word::to_string).collect::<Vec<_>>();
    let mut text = format!(
        "G_{} ({} convention), rank {}\nalphabet: {}\n",
        g.n,
        g.convention.name(),
        g.alphabet.rank(),
        g.alphabet.names().join(",")
    );
    for (name, word) in gn::derived_table(g) {
        text.push_str(&format!("{name} = {word}\n"));
    }
    let rewrite = g.rewrite.as_ref().map(|r| {
        text.push_str(&format!("surface basis: {}\n", strings(&r.new_basis).join(", ")));
        json!({
            "a_prime": strings(&r.a_prime),
            "b_prime": strings(&r.b_prime),
            "a_dblprime": strings(&r.a_dblprime),
            "b_dblprime": strings(&r.b_dblprime),
            "d_n_prime": r.d_n_prime.to_string(),
            "new_basis": strings(&r.new_basis),
            "identity_residue": r.identity_residue.to_string(),
        })
    });
    let value = json!({
        "n": g.n,
        "convention": g.convention.name(),
        "alphabet": g.alphabet.names(),
        "c": strings(&g.c),
        "d": strings(&g.d),
        "s": strings(&g.s),
        "h_bar": g.h_bar.iter().map(|h| strings(h)).collect::<Vec<_>>(),
        "rewrite": rewrite,
    });
    (text.trim_end().to_string(), value)
}

pub struct VerifyOptions {
    pub i: Option<usize>,
    pub max_len: usize,
    pub max_twist: u32,
    pub cap: usize,
}

type Job<'a> = Box<dyn FnOnce() -> Result<Vec<VerificationReport>> + Send + 'a>;

/// Runs the requested checks, in parallel for `all`. Reports are sorted by
/// check name and parameters; the second list names skipped checks.
pub fn run_lemma(
    g: &GnConstruction,
    lemma: Lemma,
    options: &VerifyOptions,
) -> Result<(Vec<VerificationReport>, Vec<String>)> {
    let mut jobs: Vec<Job> = Vec::new();
    let mut skipped = Vec::new();
    let all = lemma == Lemma::All;
    let n = g.n;
    let flag_indices: Vec<usize> = match options.i {
        Some(i) => vec![i],
        None => (1..).take_while(|i| 2 * i + 2 <= n).collect(),
    };

    if matches!(lemma, Lemma::Relation | Lemma::All) {
        jobs.push(Box::new(|| Ok(vec![gn::verify_relation_chain(g)])));
    }
    if lemma == Lemma::Freefactor || (all && n >= 1) {
        jobs.push(Box::new(|| Ok(vec![gn::verify_free_factor_chain(g)?])));
    } else if all {
        skipped.push("freefactor: needs n >= 1".to_string());
    }
    if lemma == Lemma::Surface || (all && n >= 2 && n.is_multiple_of(2)) {
        jobs.push(Box::new(|| Ok(vec![gn::verify_surface_rewrite(g)?])));
    } else if all {
        skipped.push(if n % 2 == 1 { "surface: n odd" } else { "surface: needs n >= 2" }.to_string());
    }
    if lemma == Lemma::Flag && flag_indices.is_empty() {
        return Err(Error::Precondition(format!("no valid flag index for n={n}")));
    }
    if lemma == Lemma::Flag || (all && n.is_multiple_of(2) && !flag_indices.is_empty()) {
        for i in flag_indices {
            jobs.push(Box::new(move || Ok(vec![gn::explicit_flag_decomposition(g, i)?])));
        }
    } else if all {
        skipped.push(if n % 2 == 1 { "flag: n odd" } else { "flag: no valid index" }.to_string());
    }
    if lemma == Lemma::Abelian || (all && n >= 1) {
        jobs.push(Box::new(|| Ok(vec![gn::verify_not_decomposable(g)?])));
    } else if all {
        skipped.push("abelian: needs n >= 1".to_string());
    }
    if lemma == Lemma::Separation || (all && n >= 2) {
        let (max_len, cap) = (options.max_len, options.cap);
        jobs.push(Box::new(move || Ok(vec![gn::separation_check(g, max_len, cap)?])));
    } else if all {
        skipped.push("separation: needs n >= 2".to_string());
    }
    if matches!(lemma, Lemma::Orbit | Lemma::All) {
        let max_twist = options.max_twist;
        jobs.push(Box::new(move || {
            Ok(vec![gn::amalgam_instance().check(max_twist)?, gn::hnn_instance().check(max_twist)?])
        }));
    }

    let results: Vec<Result<Vec<VerificationReport>>> = std::thread::scope(|scope| {
        let handles: Vec<_> = jobs.into_iter().map(|job| scope.spawn(job)).collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("verification thread panicked"))
            .collect()
    });
    let mut reports = Vec::new();
    for r in results {
        reports.extend(r?);
    }
    reports.sort_by(|a, b| (&a.check, &a.params).cmp(&(&b.check, &b.params)));
    Ok((reports, skipped))
}

fn emit_reports(s: &mut Session<'_>, reports: &[VerificationReport]) -> Result<()> {
    let text = reports.iter().map(ToString::to_string).collect::<Vec<_>>().join("\n");
    let value = match reports {
        [single] => serde_json::to_value(single),
        many => serde_json::to_value(many),
    }
    .map_err(|e| Error::Precondition(format!("cannot serialize report: {e}")))?;
    s.emit(text, value)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str], stdin: &str) -> (i32, String, String) {
        let mut input = stdin.as_bytes();
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let mut argv = vec!["fgcert"];
        argv.extend_from_slice(args);
        let code = run(argv, &mut input, &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn reduce_from_arguments_and_stdin() {
        let (code, out, _) = run_args(&["reduce", "a b b^-1 a"], "");
        assert_eq!((code, out.trim()), (0, "a^2"));
        let (code, out, _) = run_args(&["reduce"], "x x^-1\ny^3 y^-1\n");
        assert_eq!((code, out.trim()), (0, "1\ny^2"));
    }

    #[test]
    fn verdict_exit_codes() {
        assert_eq!(run_args(&["conj", "a b", "b a"], "").0, 0);
        assert_eq!(run_args(&["conj", "a", "b"], "").0, 1);
        assert_eq!(run_args(&["primitive", "a b a^-1 b^-1"], "").0, 1);
        assert_eq!(run_args(&["member", "a^4", "a^2", "b"], "").0, 0);
        assert_eq!(run_args(&["eq", "e1", "--m", "2", "a", "b", "a", "b a^4"], "").0, 0);
    }

    #[test]
    fn parse_errors_carry_positions() {
        let (code, _, err) = run_args(&["reduce", "--alphabet", "a,b", "a c"], "");
        assert_eq!(code, 2);
        assert!(err.contains("byte 2"), "{err}");
        assert_eq!(run_args(&["reduce", "a^x"], "").0, 2);
        assert_eq!(run_args(&["verify"], "").0, 2);
    }

    #[test]
    fn verify_all_skips_odd_surface() {
        let (code, out, err) = run_args(&["verify", "--n", "3", "--lemma", "all"], "");
        assert_eq!(code, 0, "{out}{err}");
        assert!(err.contains("surface: n odd"));
        assert!(out.contains("relation_chain"));
    }

    #[test]
    fn flipped_convention_fails_surface() {
        let (code, out, _) = run_args(&["verify", "--n", "2", "--lemma", "surface", "--convention", "left"], "");
        assert_eq!(code, 1, "{out}");
    }

    #[test]
    fn json_reports_round_trip() {
        let (code, out, _) = run_args(&["verify", "--n", "2", "--lemma", "relation", "--format", "json"], "");
        assert_eq!(code, 0);
        let report: VerificationReport = serde_json::from_str(out.trim()).unwrap();
        assert_eq!(report.check, "relation_chain");
        let (_, out, _) = run_args(&["verify", "--n", "2", "--lemma", "orbit", "--format", "json"], "");
        let reports: Vec<VerificationReport> = serde_json::from_str(out.trim()).unwrap();
        assert_eq!(reports.len(), 2);
    }
}
