//! Command-line surface. [`run`] never prints or exits; the binary does.

use std::fs;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::Value;

use crate::ck_hopf::{
    hr_antipode, hr_coproduct, hr_counit, hr_delta, hr_l, hr_natural_growth, hr_product, HrElement,
};
use crate::exactlin::{format_rational, Basis, LinComb, ParseBasis, Rational};
use crate::gl_hopf::{gl_antipode, gl_coproduct_elem, gl_counit, gl_mul, AElement};
use crate::lie_l1::{bracket, phi, psi, star, L1Element, Z};
use crate::operators::{m_apply, n_apply, x_k};
use crate::trees::{count_trees_recurrence, enumerate_trees, Forest, Tree};
use crate::verify::{run_suite, Suite};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Ok,
    Error,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CommandResult {
    pub status: Status,
    pub payload: String,
    /// 0 ok, 1 verification failure, 2 usage or input error.
    pub exit_code: i32,
}

impl CommandResult {
    fn ok(payload: String) -> Self {
        CommandResult {
            status: Status::Ok,
            payload,
            exit_code: 0,
        }
    }

    fn usage(payload: String) -> Self {
        CommandResult {
            status: Status::Error,
            payload,
            exit_code: 2,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Algebra {
    /// Grossman-Larson algebra of trees
    Gl,
    /// Connes-Kreimer algebra of forests
    Hr,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SuiteArg {
    Trees,
    Hr,
    Gl,
    Lie,
    Operators,
    Dual,
    All,
}

impl From<SuiteArg> for Suite {
    fn from(s: SuiteArg) -> Self {
        match s {
            SuiteArg::Trees => Suite::Trees,
            SuiteArg::Hr => Suite::Hr,
            SuiteArg::Gl => Suite::Gl,
            SuiteArg::Lie => Suite::Lie,
            SuiteArg::Operators => Suite::Operators,
            SuiteArg::Dual => Suite::Dual,
            SuiteArg::All => Suite::All,
        }
    }
}

/// Exact computations with rooted-tree Hopf algebras.
///
/// Elements are given as tree or forest encodings (`[[][]]`, `[] [[]]`, `1`),
/// as inline LinComb JSON, or as `@path` to a file holding LinComb JSON.
#[derive(Debug, Parser)]
#[command(name = "treehopf", version)]
struct Cli {
    /// Output format
    #[arg(long, value_enum, global = true, default_value = "json")]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// List the rooted trees with N vertices
    #[command(name = "enum")]
    Enumerate {
        #[arg(long)]
        size: usize,
        /// Print only the number of trees
        #[arg(long)]
        count_only: bool,
    },
    /// Product of two elements
    Prod {
        #[arg(long, value_enum)]
        algebra: Algebra,
        a: String,
        b: String,
    },
    /// Coproduct
    Coprod {
        #[arg(long, value_enum)]
        algebra: Algebra,
        x: String,
    },
    /// Antipode
    Antipode {
        #[arg(long, value_enum)]
        algebra: Algebra,
        x: String,
    },
    /// Counit
    Counit {
        #[arg(long, value_enum)]
        algebra: Algebra,
        x: String,
    },
    /// Natural growth operator N
    Grow {
        #[arg(long, value_enum)]
        algebra: Algebra,
        x: String,
    },
    /// x_k = N^k(e) in the Grossman-Larson algebra
    Xk { k: usize },
    /// δ_k = N^(k-1)(e) in the Connes-Kreimer algebra
    Delta { k: usize },
    /// Operator M on the Grossman-Larson algebra
    Mop { x: String },
    /// Operator L (root grafting) on the Connes-Kreimer algebra
    Lop { x: String },
    /// Lie bracket [Z_t1, Z_t2]
    Bracket { t1: String, t2: String },
    /// Star product Z_t1 * Z_t2
    Star { t1: String, t2: String },
    /// Primitive tree to Z symbol
    Phi { t: String },
    /// Z symbol to primitive tree
    Psi { t: String },
    /// Run a verification suite
    Verify {
        #[arg(long, value_enum, default_value = "all")]
        suite: SuiteArg,
        #[arg(long, default_value_t = 5)]
        max_degree: usize,
        /// Report format, defaults to --format
        #[arg(long, value_enum)]
        report: Option<Format>,
    },
}

fn read_source(arg: &str) -> Result<String, String> {
    match arg.strip_prefix('@') {
        Some(path) => fs::read_to_string(path).map_err(|e| format!("cannot read {path}: {e}")),
        None => Ok(arg.to_string()),
    }
}

/// JSON if the text looks like an object, otherwise a single basis encoding.
fn parse_element<B: ParseBasis>(
    arg: &str,
    basis: impl Fn(&str) -> crate::Result<B>,
) -> Result<LinComb<B>, String> {
    let text = read_source(arg)?;
    let trimmed = text.trim();
    if trimmed.starts_with('{') {
        LinComb::from_json_str(trimmed).map_err(|e| format!("invalid element {arg:?}: {e}"))
    } else {
        basis(trimmed)
            .map(LinComb::basis)
            .map_err(|e| format!("invalid element {arg:?}: {e}"))
    }
}

fn gl_input(arg: &str) -> Result<AElement, String> {
    parse_element(arg, Tree::parse)
}

fn hr_input(arg: &str) -> Result<HrElement, String> {
    parse_element(arg, Forest::parse)
}

fn l1_input(arg: &str) -> Result<L1Element, String> {
    parse_element(arg, |s| {
        if s.starts_with("Z:") {
            Z::decode(s)
        } else {
            Tree::parse(s).map(Z)
        }
    })
}

fn render<B: Basis>(x: &LinComb<B>, format: Format) -> String {
    match format {
        Format::Json => x.to_json().to_string(),
        Format::Text => x.to_string(),
    }
}

fn render_scalar(q: &Rational, format: Format) -> String {
    match format {
        Format::Json => Value::String(format_rational(q)).to_string(),
        Format::Text => format_rational(q),
    }
}

fn execute(cli: Cli) -> Result<CommandResult, String> {
    let f = cli.format;
    let out = match cli.command {
        Command::Enumerate { size, count_only } => {
            if size == 0 {
                return Err("--size must be at least 1".into());
            }
            if count_only {
                count_trees_recurrence(size).to_string()
            } else {
                let trees = enumerate_trees(size);
                match f {
                    Format::Json => {
                        Value::from(trees.iter().map(|t| t.encode()).collect::<Vec<_>>())
                            .to_string()
                    }
                    Format::Text => trees
                        .iter()
                        .map(|t| t.encode())
                        .collect::<Vec<_>>()
                        .join("\n"),
                }
            }
        }
        Command::Prod { algebra, a, b } => match algebra {
            Algebra::Gl => render(&gl_mul(&gl_input(&a)?, &gl_input(&b)?), f),
            Algebra::Hr => render(&hr_product(&hr_input(&a)?, &hr_input(&b)?), f),
        },
        Command::Coprod { algebra, x } => match algebra {
            Algebra::Gl => render(&gl_coproduct_elem(&gl_input(&x)?), f),
            Algebra::Hr => render(&hr_coproduct(&hr_input(&x)?), f),
        },
        Command::Antipode { algebra, x } => match algebra {
            Algebra::Gl => render(&gl_antipode(&gl_input(&x)?), f),
            Algebra::Hr => render(&hr_antipode(&hr_input(&x)?), f),
        },
        Command::Counit { algebra, x } => match algebra {
            Algebra::Gl => render_scalar(&gl_counit(&gl_input(&x)?), f),
            Algebra::Hr => render_scalar(&hr_counit(&hr_input(&x)?), f),
        },
        Command::Grow { algebra, x } => match algebra {
            Algebra::Gl => render(&n_apply(&gl_input(&x)?), f),
            Algebra::Hr => render(&hr_natural_growth(&hr_input(&x)?), f),
        },
        Command::Xk { k } => render(&x_k(k), f),
        Command::Delta { k } => render(&hr_delta(k).map_err(|e| e.to_string())?, f),
        Command::Mop { x } => render(&m_apply(&gl_input(&x)?), f),
        Command::Lop { x } => render(&hr_l(&hr_input(&x)?), f),
        Command::Bracket { t1, t2 } => render(&bracket(&l1_input(&t1)?, &l1_input(&t2)?), f),
        Command::Star { t1, t2 } => render(&star(&l1_input(&t1)?, &l1_input(&t2)?), f),
        Command::Phi { t } => render(&phi(&gl_input(&t)?).map_err(|e| e.to_string())?, f),
        Command::Psi { t } => render(&psi(&l1_input(&t)?), f),
        Command::Verify {
            suite,
            max_degree,
            report,
        } => {
            let r = run_suite(suite.into(), max_degree);
            let payload = match report.unwrap_or(f) {
                Format::Json => r.to_json().to_string(),
                Format::Text => r.to_text().trim_end().to_string(),
            };
            return Ok(if r.passed() {
                CommandResult::ok(payload)
            } else {
                CommandResult {
                    status: Status::Error,
                    payload,
                    exit_code: 1,
                }
            });
        }
    };
    Ok(CommandResult::ok(out))
}

/// Runs one invocation. `argv` excludes the program name.
pub fn run<I, S>(argv: I) -> CommandResult
where
    I: IntoIterator<Item = S>,
    S: Into<String>,
{
    let args = std::iter::once("treehopf".to_string()).chain(argv.into_iter().map(Into::into));
    match Cli::try_parse_from(args) {
        Ok(cli) => execute(cli).unwrap_or_else(|msg| CommandResult::usage(format!("error: {msg}"))),
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string().trim_end().to_string();
            match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => CommandResult::ok(text),
                _ => CommandResult::usage(text),
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn count_only() {
        let r = run(["enum", "--size", "5", "--count-only"]);
        assert_eq!(r, CommandResult::ok("9".into()));
    }

    #[test]
    fn gl_product_json() {
        let r = run(["prod", "--algebra", "gl", "[[]]", "[[]]"]);
        assert_eq!(r.exit_code, 0);
        assert_eq!(
            r.payload,
            r#"{"terms":[{"basis":"[[[]]]","coeff":"1/1"},{"basis":"[[][]]","coeff":"1/1"}]}"#
        );
    }

    #[test]
    fn text_format() {
        let r = run(["--format", "text", "antipode", "--algebra", "gl", "[[][]]"]);
        assert_eq!(r.payload, "2*[[[]]] + [[][]]");
        let r = run(["counit", "--algebra", "hr", "1", "--format", "text"]);
        assert_eq!(r.payload, "1/1");
    }

    #[test]
    fn usage_errors() {
        assert_eq!(run(["frobnicate"]).exit_code, 2);
        assert_eq!(run(["xk", "2", "--bogus"]).exit_code, 2);
        assert_eq!(run(["prod", "--algebra", "gl", "[[]", "[]"]).exit_code, 2);
        assert_eq!(run(["phi", "[[][]]"]).exit_code, 2);
        assert_eq!(run(["delta", "0"]).exit_code, 2);
        assert_eq!(run(["enum", "--size", "0"]).exit_code, 2);
        assert_eq!(run(["mop", "@/nonexistent/file.json"]).exit_code, 2);
        let help = run(["--help"]);
        assert_eq!(help.exit_code, 0);
        assert!(help.payload.contains("verify"));
    }

    #[test]
    fn l1_inputs_accept_both_spellings() {
        let a = run(["bracket", "[]", "[[]]"]);
        let b = run([
            "bracket",
            "Z:[]",
            r#"{"terms":[{"basis":"Z:[[]]","coeff":"1"}]}"#,
        ]);
        assert_eq!(a, b);
        assert_eq!(
            a.payload,
            r#"{"terms":[{"basis":"Z:[[][]]","coeff":"1/1"}]}"#
        );
    }
}
