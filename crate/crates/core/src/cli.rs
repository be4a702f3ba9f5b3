//! Command-line surface. `run` parses arguments, executes one verb and
//! returns the process exit code: 0 success, 1 verification failure,
//! 2 usage, parse or precondition error.

use std::ffi::OsString;
use std::io::Write;

use clap::{ArgGroup, Parser, Subcommand, ValueEnum};

use crate::arborify::{arborify_x, arborify_y};
use crate::error::Error;
use crate::forests::{enumerate_trees, Forest};
use crate::hoffman::{exp_map, log_map};
use crate::lincomb::LinComb;
use crate::verify::{self, format_real, render, Format, ReportRow, ORACLE_CUTOFF};
use crate::words::{Letter, Word, XLetter, XWord, YLetter, YWord};
use crate::zeta::{
    format_zeta_combination, format_zeta_combination_x, zeta_tree_x, zeta_tree_y, zeta_word_x, zeta_word_y, DEFAULT_TOL,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(
    name = "arbormz",
    version,
    about = "Arborified multiple zeta values, exactly expanded and numerically checked"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Arborify a forest into a combination of words.
    #[command(group(ArgGroup::new("flavor").required(true).args(["simple", "contracting"])))]
    Expand {
        /// Shuffle target, forests decorated by x0 and x1.
        #[arg(long)]
        simple: bool,
        /// Quasi-shuffle target, forests decorated by y1, y2, ...
        #[arg(long)]
        contracting: bool,
        forest: String,
    },
    /// Expand a convergent forest or word into MZVs and evaluate it.
    Zeta {
        /// Read the input as a word instead of a forest.
        #[arg(long)]
        word: bool,
        #[arg(long, default_value_t = DEFAULT_TOL)]
        tol: f64,
        input: String,
    },
    /// Run an identity suite and print one row per identity.
    Verify {
        suite: Suite,
        /// Weight cap for the relations and bmz suites.
        #[arg(long)]
        max_weight: Option<u32>,
        /// Vertex cap for the hopf and oracle suites.
        #[arg(long)]
        max_vertices: Option<usize>,
        /// Largest decoration index used by the oracle suite (decorations 2..=k).
        #[arg(long, default_value_t = 3)]
        max_index: u32,
        /// Label cutoff of the oracle nested sums.
        #[arg(long, default_value_t = ORACLE_CUTOFF)]
        cutoff: usize,
        #[arg(long, default_value_t = DEFAULT_TOL)]
        tol: f64,
        #[arg(long, value_enum, default_value_t = FormatArg::Text)]
        format: FormatArg,
    },
    /// List canonical trees with n vertices decorated by y1..yk.
    Enumerate {
        n: usize,
        #[arg(long, default_value_t = 1)]
        decorations: u32,
        #[arg(long, default_value_t = 8)]
        max_n: usize,
    },
    /// Hoffman's exponential or logarithm of a word.
    Hoffman { map: HoffmanMap, word: String },
    /// Check every worked example against its stored value.
    Selftest {
        #[arg(long, value_enum, default_value_t = FormatArg::Text)]
        format: FormatArg,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum Suite {
    Relations,
    Bmz,
    Hopf,
    Oracle,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum FormatArg {
    Text,
    Tsv,
    Json,
}

impl From<FormatArg> for Format {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::Text => Format::Text,
            FormatArg::Tsv => Format::Tsv,
            FormatArg::Json => Format::Json,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum HoffmanMap {
    Exp,
    Log,
}

/// A failed command: message for stderr and the exit code.
#[derive(Debug, Clone, PartialEq)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::usage(e.to_string())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Alphabet {
    X,
    Y,
    /// No letters at all, e.g. the empty forest `e`.
    Unknown,
}

fn alphabet_of(text: &str) -> Alphabet {
    match text.chars().find(|c| matches!(c, 'x' | 'y')) {
        Some('x') => Alphabet::X,
        Some('y') => Alphabet::Y,
        _ => Alphabet::Unknown,
    }
}

/// Output of `expand`.
pub fn expand_output(text: &str, contracting: bool) -> Result<String, Failure> {
    match (alphabet_of(text), contracting) {
        (Alphabet::Y, false) => {
            return Err(Failure::usage(
                "simple arborification takes forests decorated by x0 and x1; use --contracting for y-letters",
            ))
        }
        (Alphabet::X, true) => {
            return Err(Failure::usage(
                "contracting arborification takes forests decorated by y1, y2, ...; use --simple for x-letters",
            ))
        }
        _ => {}
    }
    if contracting {
        let forest: Forest<YLetter> = text.parse()?;
        Ok(arborify_y(&forest).to_string())
    } else {
        let forest: Forest<XLetter> = text.parse()?;
        Ok(arborify_x(&forest).to_string())
    }
}

/// Output of `zeta`: the MZV combination, then the value line.
pub fn zeta_output(text: &str, as_word: bool, tol: f64) -> Result<String, Failure> {
    let (expansion, value) = match (alphabet_of(text), as_word) {
        (Alphabet::X, false) => {
            let forest: Forest<XLetter> = text.parse()?;
            let value = zeta_tree_x(&forest, tol)?;
            (format_zeta_combination_x(&arborify_x(&forest))?, value)
        }
        (Alphabet::Y, false) => {
            let forest: Forest<YLetter> = text.parse()?;
            let value = zeta_tree_y(&forest, tol)?;
            (format_zeta_combination(&arborify_y(&forest)), value)
        }
        (Alphabet::X, true) => {
            let w: XWord = text.parse()?;
            let value = zeta_word_x(&w, tol)?;
            (format_zeta_combination_x(&LinComb::basis(w))?, value)
        }
        (Alphabet::Y, true) => {
            let w: YWord = text.parse()?;
            let value = zeta_word_y(&w, tol)?;
            (format_zeta_combination(&LinComb::basis(w)), value)
        }
        (Alphabet::Unknown, _) => {
            return Err(Failure::usage(format!(
                "`{text}` has no x- or y-letters; the empty input has value 1 and is not a convergent MZV expansion"
            )))
        }
    };
    Ok(format!("{expansion}\n= {}  (tol {tol:e})", format_real(value)))
}

fn verify_rows(
    suite: Suite,
    max_weight: Option<u32>,
    max_vertices: Option<usize>,
    max_index: u32,
    cutoff: usize,
    tol: f64,
) -> Result<Vec<ReportRow>, Failure> {
    Ok(match suite {
        Suite::Relations => verify::relations_suite(tol, max_weight.unwrap_or(5))?,
        Suite::Bmz => verify::bmz_suite(tol, max_weight.unwrap_or(4))?,
        Suite::Hopf => verify::hopf_suite(max_vertices.unwrap_or(4)),
        Suite::Oracle => {
            if max_index < 2 {
                return Err(Failure::usage("--max-index must be at least 2"));
            }
            let decorations: Vec<u32> = (2..=max_index).collect();
            verify::oracle_suite(tol, max_vertices.unwrap_or(3), &decorations, cutoff)?
        }
    })
}

/// Output of `enumerate`: a count line and one tree per line.
pub fn enumerate_output(n: usize, decorations: u32, max_n: usize) -> Result<String, Failure> {
    if n > max_n {
        return Err(Failure::usage(format!(
            "n = {n} exceeds the cap {max_n}; raise it with --max-n"
        )));
    }
    if decorations == 0 {
        return Err(Failure::usage("--decorations must be at least 1"));
    }
    let letters: Vec<YLetter> = (1..=decorations).filter_map(YLetter::new).collect();
    let trees = enumerate_trees(n, &letters);
    let mut out = format!(
        "{} trees with {n} vertices, decorations y1..y{decorations}",
        trees.len()
    );
    for t in &trees {
        out.push('\n');
        out.push_str(&t.to_string());
    }
    Ok(out)
}

fn hoffman_image<A: Letter>(map: HoffmanMap, w: &Word<A>) -> LinComb<Word<A>> {
    match map {
        HoffmanMap::Exp => exp_map(w),
        HoffmanMap::Log => log_map(w),
    }
}

pub fn hoffman_output(map: HoffmanMap, text: &str) -> Result<String, Failure> {
    Ok(match alphabet_of(text) {
        Alphabet::X => hoffman_image(map, &text.parse::<XWord>()?).to_string(),
        _ => hoffman_image(map, &text.parse::<YWord>()?).to_string(),
    })
}

fn report(rows: &[ReportRow], format: FormatArg) -> (String, i32) {
    let code = if verify::all_pass(rows) { EXIT_OK } else { EXIT_FAILURE };
    let mut text = render(rows, format.into());
    if text.ends_with('\n') {
        text.pop();
    }
    (text, code)
}

fn execute(cli: Cli) -> Result<(String, i32), Failure> {
    match cli.command {
        Command::Expand {
            contracting, forest, ..
        } => Ok((expand_output(&forest, contracting)?, EXIT_OK)),
        Command::Zeta { word, tol, input } => Ok((zeta_output(&input, word, tol)?, EXIT_OK)),
        Command::Verify {
            suite,
            max_weight,
            max_vertices,
            max_index,
            cutoff,
            tol,
            format,
        } => {
            let rows = verify_rows(suite, max_weight, max_vertices, max_index, cutoff, tol)?;
            Ok(report(&rows, format))
        }
        Command::Enumerate { n, decorations, max_n } => Ok((enumerate_output(n, decorations, max_n)?, EXIT_OK)),
        Command::Hoffman { map, word } => Ok((hoffman_output(map, &word)?, EXIT_OK)),
        Command::Selftest { format } => Ok(report(&crate::selftest::selftest(), format)),
    }
}

/// Parses `args` (program name first), runs the verb and writes its output.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let sink: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(sink, "{}", e.render());
            return code;
        }
    };
    match execute(cli) {
        Ok((text, code)) => {
            let _ = writeln!(out, "{text}");
            code
        }
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_capture(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let argv = std::iter::once("arbormz").chain(args.iter().copied());
        let code = run(argv, &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn expand_examples() {
        assert_eq!(
            expand_output("y3(y1,y2)", true).unwrap(),
            "1*y1.y2.y3 + 1*y2.y1.y3 + 1*y3.y3"
        );
        assert_eq!(expand_output("x1(x0,x0(x0))", false).unwrap(), "3*x0.x0.x0.x1");
        assert_eq!(expand_output("e", false).unwrap(), "1*e");
        assert_eq!(expand_output("y3(y1)", false).unwrap_err().code, EXIT_USAGE);
    }

    #[test]
    fn zeta_examples() {
        let text = zeta_output("x1(x0,x1(x0))", false, 1e-9).unwrap();
        assert!(text.starts_with("2*zeta(3,1) + 1*zeta(2,2)\n"));
        assert!(zeta_output("y2.y3", true, 1e-9).unwrap().starts_with("1*zeta(2,3)\n"));
        let failure = zeta_output("y3(y1,y2)", false, 1e-9).unwrap_err();
        assert_eq!(failure.code, EXIT_USAGE);
        assert!(failure.message.contains("leaf decorated y1"));
    }

    #[test]
    fn exit_codes() {
        assert_eq!(run_capture(&["enumerate", "5"]).0, EXIT_OK);
        assert_eq!(run_capture(&["enumerate", "9"]).0, EXIT_USAGE);
        assert_eq!(run_capture(&["expand", "x1(x0"]).0, EXIT_USAGE);
        let (code, _, err) = run_capture(&["expand", "--simple", "x1(x0"]);
        assert_eq!(code, EXIT_USAGE);
        assert!(err.contains("position"));
        assert_eq!(run_capture(&["bogus"]).0, EXIT_USAGE);
        assert_eq!(run_capture(&["--help"]).0, EXIT_OK);
    }

    #[test]
    fn enumerate_listing() {
        let text = enumerate_output(3, 1, 8).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines.len(), 3);
        assert!(lines[0].starts_with("2 trees"));
        for line in &lines[1..] {
            let t: crate::forests::Tree<YLetter> = line.parse().unwrap();
            assert_eq!(&t.to_string(), line);
        }
    }

    #[test]
    fn failing_rows_exit_with_one() {
        let rows = vec![
            ReportRow::numeric("ok", 1.0, 1.0, 1e-9),
            ReportRow::numeric("bad", 1.0, 2.0, 1e-9),
        ];
        assert_eq!(report(&rows, FormatArg::Text).1, EXIT_FAILURE);
        assert_eq!(report(&rows[..1], FormatArg::Text).1, EXIT_OK);
    }

    #[test]
    fn hoffman_words() {
        assert_eq!(hoffman_output(HoffmanMap::Exp, "y1.y2").unwrap(), "1*y1.y2 + 1/2*y3");
        assert_eq!(hoffman_output(HoffmanMap::Log, "x0.x1").unwrap(), "1*x0.x1");
    }
}
