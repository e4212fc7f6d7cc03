//! `riesz`: evaluation, synthesis, decision procedures and coherence
//! checking from the command line.

use std::fmt;
use std::io::Read;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand};
use riesz_core::coherence::{span_invalidity, verify};
use riesz_core::geometry::{is_invalid, maximum, minimum};
use riesz_core::pwl::io as pwl_io;
use riesz_core::synthesis::simplify;
use riesz_core::{
    check_coherent, parse, semantic_equiv, synth_pwl, Book, Budget, Error, Extremum, Formula, Rational, Verdict,
};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "riesz", version, about = "Exact decision procedures for Riesz MV-algebra logic")]
struct Cli {
    /// Print JSON instead of line-oriented text.
    #[arg(long, global = true)]
    json: bool,

    /// Largest number of linear systems vertex enumeration may solve.
    #[arg(long, global = true, env = "RIESZ_BUDGET", value_name = "SYSTEMS")]
    budget: Option<u64>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Truth value of a formula at a point.
    Eval {
        formula: String,
        /// Comma-separated coordinates, `p/q` or decimals.
        #[arg(long, value_name = "POINT", default_value = "")]
        at: String,
    },
    /// Affine pieces of the term function.
    Components {
        formula: String,
        /// Dimension of the cube; defaults to the formula's arity.
        #[arg(long)]
        dim: Option<usize>,
    },
    /// Formula whose term function is the given max-min function.
    Synth {
        /// PWL JSON file, or `-` for stdin.
        file: String,
        #[arg(long)]
        simplify: bool,
    },
    /// Minimum of the term function and a point attaining it.
    Min { formula: String },
    /// Maximum of the term function and a point attaining it.
    Max { formula: String },
    /// Whether the formula takes value 1 everywhere.
    Valid { formula: String },
    /// Whether the formula takes value 0 somewhere.
    Invalid { formula: String },
    /// Whether two formulas have the same term function.
    Equiv { left: String, right: String },
    /// Unit seminorm: the largest value of the formula.
    Norm { formula: String },
    /// Decide coherence of a book and print a certificate.
    Coherent {
        /// Book JSON file, or `-` for stdin.
        book: String,
        /// Re-check this certificate instead of solving.
        #[arg(long, value_name = "CERT")]
        verify: Option<String>,
    },
    /// Span member for the given stakes and whether it is invalid.
    Span {
        book: String,
        /// Comma-separated stakes, one per event.
        #[arg(long, allow_hyphen_values = true)]
        stakes: String,
        #[arg(long)]
        simplify: bool,
    },
}

enum Failure {
    Core(Error),
    Parse { input: String, err: riesz_core::formula::ParseError },
    Input(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Core(e) if e.is_budget() => 2,
            _ => 1,
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Core(e) => write!(f, "{e}"),
            Failure::Parse { input, err } => {
                let caret = input[..err.position().min(input.len())].chars().count();
                write!(f, "{err}\n  {input}\n  {}^", " ".repeat(caret))
            }
            Failure::Input(msg) => f.write_str(msg),
        }
    }
}

type Outcome = Result<Vec<String>, Failure>;

fn formula(text: &str) -> Result<Formula, Failure> {
    parse(text).map_err(|err| Failure::Parse { input: text.to_string(), err })
}

fn rationals(text: &str, what: &str) -> Result<Vec<Rational>, Failure> {
    if text.trim().is_empty() {
        return Ok(Vec::new());
    }
    text.split(',')
        .map(|s| s.trim().parse().map_err(|e| Failure::Input(format!("{what} `{}`: {e}", s.trim()))))
        .collect()
}

fn read_input(path: &str) -> Result<String, Failure> {
    let mut text = String::new();
    let res = if path == "-" {
        std::io::stdin().read_to_string(&mut text).map(|_| ())
    } else {
        std::fs::read_to_string(path).map(|t| text = t)
    };
    res.map_err(|e| Failure::Input(format!("{path}: {e}")))?;
    Ok(text)
}

fn point_text(p: &[Rational]) -> String {
    format!("({})", p.iter().map(ToString::to_string).collect::<Vec<_>>().join(", "))
}

fn strings(p: &[Rational]) -> Value {
    Value::from(p.iter().map(ToString::to_string).collect::<Vec<_>>())
}

fn extremum(e: &Extremum, json: bool) -> Vec<String> {
    if json {
        return vec![json!({ "value": e.value.to_string(), "witness": strings(&e.witness) }).to_string()];
    }
    vec![e.value.to_string(), format!("at {}", point_text(&e.witness))]
}

fn verdict(flag: &str, holds: bool, witness: Option<&[Rational]>, json: bool) -> Vec<String> {
    if json {
        return vec![json!({ flag: holds, "witness": witness.map(strings) }).to_string()];
    }
    let mut out = vec![holds.to_string()];
    out.extend(witness.map(|w| format!("at {}", point_text(w))));
    out
}

fn run(cli: &Cli) -> Outcome {
    let budget = cli.budget.map_or_else(Budget::default, Budget::with_systems);
    let json = cli.json;
    match &cli.command {
        Command::Eval { formula: text, at } => {
            let f = formula(text)?;
            let x = rationals(at, "coordinate")?;
            let v = f.eval_at(&x).map_err(Error::from)?;
            Ok(vec![if json { json!({ "value": v.to_string() }).to_string() } else { v.to_string() }])
        }
        Command::Components { formula: text, dim } => {
            let f = formula(text)?;
            let n = dim.unwrap_or_else(|| f.arity());
            let comps = riesz_core::pwl::term_pwl_within(&f, n, &budget)?.components();
            if json {
                let list: Vec<Value> = comps.iter().map(|a| strings(a.coeffs())).collect();
                return Ok(vec![json!({ "n": n, "components": list }).to_string()]);
            }
            Ok(comps.iter().map(ToString::to_string).collect())
        }
        Command::Synth { file, simplify: lean } => {
            let f = pwl_io::from_json(&read_input(file)?)?;
            let mut phi = synth_pwl(&f, &budget)?;
            if *lean {
                phi = simplify(&phi);
            }
            Ok(vec![if json { json!({ "formula": phi.to_string() }).to_string() } else { phi.to_string() }])
        }
        Command::Min { formula: text } => Ok(extremum(&minimum(&formula(text)?, &budget)?, json)),
        Command::Max { formula: text } | Command::Norm { formula: text } => {
            Ok(extremum(&maximum(&formula(text)?, &budget)?, json))
        }
        Command::Valid { formula: text } => {
            let lo = minimum(&formula(text)?, &budget)?;
            let valid = lo.value.is_one();
            Ok(verdict("valid", valid, (!valid).then_some(&lo.witness[..]), json))
        }
        Command::Invalid { formula: text } => {
            let w = is_invalid(&formula(text)?, &budget)?;
            Ok(verdict("invalid", w.is_some(), w.as_deref(), json))
        }
        Command::Equiv { left, right } => {
            let (a, b) = (formula(left)?, formula(right)?);
            if semantic_equiv(&a, &b, &budget)? {
                return Ok(verdict("equivalent", true, None, json));
            }
            let apart = maximum(&a.distance(&b), &budget)?;
            Ok(verdict("equivalent", false, Some(&apart.witness), json))
        }
        Command::Coherent { book, verify: cert } => {
            let book = Book::from_json(&read_input(book)?)?;
            match cert {
                Some(path) => check_certificate(&book, &read_input(path)?, &budget, json),
                None => Ok(certificate(&check_coherent(&book, &budget)?, json)),
            }
        }
        Command::Span { book, stakes, simplify: lean } => {
            let book = Book::from_json(&read_input(book)?)?;
            let cs = rationals(stakes, "stake")?;
            let mut check = span_invalidity(&book, &cs, &budget)?;
            if *lean {
                check.formula = simplify(&check.formula);
            }
            let w = check.zero_at.as_deref();
            if json {
                let v =
                    json!({ "formula": check.formula.to_string(), "invalid": w.is_some(), "witness": w.map(strings) });
                return Ok(vec![v.to_string()]);
            }
            let mut out = vec![check.formula.to_string()];
            out.push(match w {
                Some(p) => format!("invalid at {}", point_text(p)),
                None => "not invalid".to_string(),
            });
            Ok(out)
        }
    }
}

fn certificate(v: &Verdict, json: bool) -> Vec<String> {
    if json {
        return vec![v.to_json()];
    }
    match v {
        Verdict::Coherent(w) => {
            let mut out = vec!["coherent".to_string()];
            out.extend(w.support.iter().map(|(p, a)| format!("weight {a} at {}", point_text(p))));
            out
        }
        Verdict::Incoherent(d) => {
            vec!["incoherent".to_string(), format!("stakes {}", point_text(&d.stakes)), format!("margin {}", d.margin)]
        }
    }
}

fn check_certificate(book: &Book, text: &str, budget: &Budget, json: bool) -> Outcome {
    let v = Verdict::from_json(text)?;
    match verify(book, &v, budget)? {
        Ok(()) if json => Ok(vec![json!({ "verified": true }).to_string()]),
        Ok(()) => Ok(vec!["verified".to_string()]),
        Err(e) => Err(Failure::Input(format!("certificate rejected: {e}"))),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(64),
            };
        }
    };
    match run(&cli) {
        Ok(lines) => {
            for line in lines {
                println!("{line}");
            }
            ExitCode::SUCCESS
        }
        Err(f) => {
            eprintln!("error: {f}");
            ExitCode::from(f.code())
        }
    }
}
