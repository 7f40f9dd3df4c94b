//! `nerode`: batch front end for the realization engine.
//!
//! Every verb reads JSON files, writes a deterministic report to stdout (or
//! `--output`), and encodes its outcome in the exit code: 0 when the checked
//! property holds (or the computation succeeds), 1 when a property fails
//! (inequivalent machines, a broken diagram, an invalid machine under
//! `validate`), 2 on usage or input errors. Diagnostics go to stderr.

use std::collections::BTreeMap;
use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use nerode_core::io::{
    self, machine_to_json, markov_from_json, markov_to_json, parse_system_json, SequenceJson,
    SystemFile,
};
use nerode_core::nerode::{
    controllable_subset, machine_equivalence, minimize, quotient_map, Mode,
};
use nerode_core::system::{MealyMachine, System};
use nerode_core::{Error, Sequence};

#[derive(Parser)]
#[command(name = "nerode", about = "Nerode realizations of discrete-time systems", version)]
struct Cli {
    /// Report format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    #[command(subcommand)]
    verb: Verb,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    /// Quotient over the rest-reachable states.
    Rest,
    /// Quotient over the controllable subset.
    Xc,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Mode {
        match m {
            ModeArg::Rest => Mode::RestReachable,
            ModeArg::Xc => Mode::Controllable,
        }
    }
}

#[derive(Subcommand)]
enum Verb {
    /// Evaluate a system's response on the window [from, to].
    Simulate {
        #[arg(long)]
        system: PathBuf,
        /// Input sequence file over the system's input alphabet.
        #[arg(long)]
        input: PathBuf,
        #[arg(long, allow_negative_numbers = true)]
        from: i64,
        #[arg(long, allow_negative_numbers = true)]
        to: i64,
    },
    /// Minimal state-space realization of a finite system.
    Minimize {
        #[arg(long)]
        system: PathBuf,
        #[arg(long, value_enum)]
        mode: ModeArg,
    },
    /// Behavioral equivalence of two finite systems, with a shortest
    /// counterexample on failure (exit 1).
    Equiv {
        #[arg(long)]
        system: PathBuf,
        #[arg(long)]
        against: PathBuf,
        /// Only report differences witnessed by words up to this length;
        /// longer counterexamples count as equivalent-within-bound.
        #[arg(long)]
        max_len: Option<usize>,
    },
    /// Build the minimal realization and check the quotient-map diagram
    /// against it (or against a supplied minimal machine).
    Quotient {
        #[arg(long)]
        system: PathBuf,
        #[arg(long)]
        against: Option<PathBuf>,
    },
    /// The controllable subset of a finite system's state space.
    Xc {
        #[arg(long)]
        system: PathBuf,
    },
    /// Nerode equivalence of two input sequences at time 0.
    NerodeEq {
        #[arg(long)]
        system: PathBuf,
        #[arg(long)]
        u1: PathBuf,
        #[arg(long)]
        u2: PathBuf,
    },
    /// Markov parameters M_0..M_{count-1} of a linear system file.
    Markov {
        #[arg(long)]
        system: PathBuf,
        #[arg(long)]
        count: usize,
    },
    /// Exact minimal realization from a Markov-parameter file.
    Hokalman {
        #[arg(long)]
        markov: PathBuf,
        #[arg(long)]
        block_rows: usize,
        #[arg(long)]
        block_cols: usize,
        /// Output dimension.
        #[arg(long)]
        p: usize,
        /// Input dimension.
        #[arg(long)]
        m: usize,
    },
    /// Parse and validate a system file, reporting every violation.
    Validate {
        #[arg(long)]
        system: PathBuf,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("nerode: {e}");
            ExitCode::from(2)
        }
    }
}

/// One input file: raw bytes plus the digest quoted in the report.
struct Input {
    text: String,
    digest: String,
}

fn read_input(path: &Path) -> Result<Input, String> {
    let bytes = fs::read(path).map_err(|e| format!("{}: {e}", path.display()))?;
    let digest = format!("sha256:{:x}", Sha256::digest(&bytes));
    let text = String::from_utf8(bytes).map_err(|_| format!("{}: not UTF-8", path.display()))?;
    Ok(Input { text, digest })
}

fn finite_system(input: &Input) -> Result<System, String> {
    match parse_system_json(&input.text).map_err(|e| e.to_string())? {
        SystemFile::System(sys) => Ok(sys),
        SystemFile::Linear(_) => Err("expected a finite system, got a linear one".into()),
    }
}

fn finite_machine(input: &Input) -> Result<MealyMachine, String> {
    finite_system(input)?.to_mealy().map_err(|e| e.to_string())
}

fn run(cli: &Cli) -> Result<ExitCode, String> {
    let mut digests = BTreeMap::new();
    let mut load = |flag: &str, path: &Path| -> Result<Input, String> {
        let input = read_input(path)?;
        digests.insert(flag.to_string(), input.digest.clone());
        Ok(input)
    };

    // `code` is 0 unless the verb checks a property and the property fails.
    let (verb_name, result, text, code): (&str, Value, String, u8) = match &cli.verb {
        Verb::Simulate { system, input, from, to } => {
            let sys = finite_system(&load("system", system)?)?;
            let seq = load("input", input)?;
            let json: SequenceJson = serde_json::from_str(&seq.text)
                .map_err(|e| format!("{}: {e}", input.display()))?;
            let u = io::sequence_from_json(&json, sys.input_alphabet())
                .map_err(|e| e.to_string())?;
            let y = sys.evaluate(&u, *from, *to).map_err(|e| e.to_string())?;
            let out = io::sequence_to_json(&y);
            let text = format!(
                "y = {} (default {}, start {})",
                out.values.join(","),
                out.default,
                out.start
            );
            ("simulate", serde_json::to_value(&out).unwrap(), text, 0)
        }
        Verb::Minimize { system, mode } => {
            let sys = finite_system(&load("system", system)?)?;
            let real = minimize(&sys, (*mode).into()).map_err(|e| e.to_string())?;
            let out = machine_to_json(real.machine());
            let text = format!("minimal realization: {} states", out.states.len());
            ("minimize", serde_json::to_value(&out).unwrap(), text, 0)
        }
        Verb::Equiv { system, against, max_len } => {
            let m1 = finite_machine(&load("system", system)?)?;
            let m2 = finite_machine(&load("against", against)?)?;
            let outcome = machine_equivalence(&m1, &m2).map_err(|e| e.to_string())?;
            let cex = io::counterexample_to_json(&outcome, m1.input_alphabet());
            let within_bound = match (&cex, max_len) {
                (Some(c), Some(n)) => c.word.len() > *n,
                _ => false,
            };
            if outcome.equivalent || within_bound {
                let mut result = json!({ "equivalent": true });
                let mut text = "equivalent".to_string();
                if let Some(n) = max_len {
                    result["max_len"] = json!(n);
                    text = format!("equivalent on all words of length <= {n}");
                }
                ("equiv", result, text, 0)
            } else {
                let cex = cex.expect("inequivalent outcome carries a word");
                let text = format!("inequivalent; counterexample {}", cex.word.join(","));
                let result = json!({ "equivalent": false, "counterexample": cex.word });
                ("equiv", result, text, 1)
            }
        }
        Verb::Quotient { system, against } => {
            let given = finite_machine(&load("system", system)?)?;
            let minimal_src = match against {
                Some(path) => System::Mealy(finite_machine(&load("against", path)?)?),
                None => System::Mealy(given.clone()),
            };
            let real = minimize(&minimal_src, Mode::Controllable).map_err(|e| e.to_string())?;
            let report = match quotient_map(&given, &real) {
                Ok(report) => report,
                Err(Error::NotEquivalent(word)) => {
                    let result = json!({ "holds": false, "counterexample": word });
                    let text = format!(
                        "machines are not equivalent; counterexample {}",
                        word.join(",")
                    );
                    return finish(cli, "quotient", &digests, result, text, 1);
                }
                Err(e) => return Err(e.to_string()),
            };
            let holds = report.holds();
            let mut result = serde_json::to_value(io::report_to_json(&report)).unwrap();
            result["holds"] = json!(holds);
            let text = if holds {
                format!("diagram commutes; quotient map covers {} states", report.map.len())
            } else {
                format!(
                    "diagram broken: {} f-violations, {} g-violations, surjective = {}",
                    report.f_violations.len(),
                    report.g_violations.len(),
                    report.surjective
                )
            };
            ("quotient", result, text, u8::from(!holds))
        }
        Verb::Xc { system } => {
            let m = finite_machine(&load("system", system)?)?;
            let xc: Vec<&str> = controllable_subset(&m)
                .into_iter()
                .map(|s| m.states()[s].as_str())
                .collect();
            let text = format!("X_c = {{{}}}", xc.join(", "));
            ("xc", json!({ "states": xc }), text, 0)
        }
        Verb::NerodeEq { system, u1, u2 } => {
            let sys = finite_system(&load("system", system)?)?;
            let parse_seq = |input: &Input, path: &Path| -> Result<Sequence, String> {
                let json: SequenceJson = serde_json::from_str(&input.text)
                    .map_err(|e| format!("{}: {e}", path.display()))?;
                io::sequence_from_json(&json, sys.input_alphabet()).map_err(|e| e.to_string())
            };
            let s1 = parse_seq(&load("u1", u1)?, u1)?;
            let s2 = parse_seq(&load("u2", u2)?, u2)?;
            let real = minimize(&sys, Mode::RestReachable).map_err(|e| e.to_string())?;
            let eq = real.nerode_equivalent(&s1, &s2).map_err(|e| e.to_string())?;
            let text = if eq { "Nerode equivalent at 0" } else { "not Nerode equivalent at 0" };
            ("nerode-eq", json!({ "equivalent": eq }), text.to_string(), u8::from(!eq))
        }
        Verb::Markov { system, count } => {
            let sys = match parse_system_json(&load("system", system)?.text)
                .map_err(|e| e.to_string())?
            {
                SystemFile::Linear(sys) => sys,
                SystemFile::System(_) => {
                    return Err("markov expects a linear system file".into())
                }
            };
            let markov = sys.markov_parameters(*count);
            let text = format!("{count} Markov parameters of a degree-{} realization", sys.state_dim());
            ("markov", serde_json::to_value(markov_to_json(&markov)).unwrap(), text, 0)
        }
        Verb::Hokalman { markov, block_rows, block_cols, p, m } => {
            let input = load("markov", markov)?;
            let json: Vec<Vec<Vec<String>>> = serde_json::from_str(&input.text)
                .map_err(|e| format!("{}: {e}", markov.display()))?;
            let params = markov_from_json(&json).map_err(|e| e.to_string())?;
            let sys = nerode_core::linear::ho_kalman(&params, *block_rows, *block_cols, *p, *m)
                .map_err(|e| e.to_string())?;
            let out = io::linear_to_json(&sys);
            let text = format!("realized order {}", sys.state_dim());
            ("hokalman", serde_json::to_value(&out).unwrap(), text, 0)
        }
        Verb::Validate { system } => {
            let input = load("system", system)?;
            match parse_system_json(&input.text) {
                Ok(SystemFile::System(sys)) => {
                    let kind = match sys {
                        System::Mealy(_) => "mealy",
                        System::Window(_) => "window",
                        System::LinearModP(_) => "modp",
                    };
                    let result = json!({ "valid": true, "type": kind });
                    ("validate", result, format!("valid {kind} system"), 0)
                }
                Ok(SystemFile::Linear(_)) => {
                    let result = json!({ "valid": true, "type": "linear" });
                    ("validate", result, "valid linear system".to_string(), 0)
                }
                Err(Error::InvalidMachine(violations)) => {
                    let msgs: Vec<String> =
                        violations.iter().map(|v| v.to_string()).collect();
                    let text = format!("invalid machine:\n  {}", msgs.join("\n  "));
                    ("validate", json!({ "valid": false, "violations": msgs }), text, 1)
                }
                Err(e @ (Error::Parse(_) | Error::Capacity(_))) => return Err(e.to_string()),
                Err(e) => {
                    let msgs = vec![e.to_string()];
                    let text = format!("invalid system:\n  {}", msgs.join("\n  "));
                    ("validate", json!({ "valid": false, "violations": msgs }), text, 1)
                }
            }
        }
    };
    finish(cli, verb_name, &digests, result, text, code)
}

/// Assembles the RunReport and writes it out. `serde_json` maps are ordered,
/// so identical inputs always produce identical bytes.
fn finish(
    cli: &Cli,
    verb: &str,
    digests: &BTreeMap<String, String>,
    result: Value,
    text: String,
    code: u8,
) -> Result<ExitCode, String> {
    let rendered = match cli.format {
        Format::Json => {
            let report = json!({
                "verb": verb,
                "inputs": digests,
                "exit_code": code,
                "result": result,
            });
            let mut s = serde_json::to_string_pretty(&report).unwrap();
            s.push('\n');
            s
        }
        Format::Text => format!("{text}\n"),
    };
    match &cli.output {
        Some(path) => fs::write(path, rendered)
            .map_err(|e| format!("{}: {e}", path.display()))?,
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(rendered.as_bytes()).map_err(|e| e.to_string())?;
        }
    }
    Ok(ExitCode::from(code))
}
