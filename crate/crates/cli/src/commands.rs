//! Subcommands. [`run`] does all the work so tests can drive it without a process.

use std::io::Read;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use vardec_core::vardec::{self, Config, Outcome};
use vardec_core::{cert, Partition};

use crate::format::{parse_document, parse_partition, parse_problem, Document, Problem, ProofBlock, Verdict};
use crate::gen::{self, Family, GenError, Params};
use crate::sexpr::{Sexp, SyntaxError};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{file}:{err}")]
    Syntax { file: String, err: SyntaxError },
    #[error(transparent)]
    Core(#[from] vardec_core::Error),
    #[error(transparent)]
    Gen(#[from] GenError),
    #[error("{0}: {1}")]
    Io(String, std::io::Error),
    #[error("{0}")]
    Usage(String),
}

/// Exit codes: success and accept are 0, a negative answer or a rejected proof 1,
/// and bad usage or input 2.
pub const EXIT_OK: u8 = 0;
pub const EXIT_NO: u8 = 1;
pub const EXIT_ERROR: u8 = 2;

#[derive(Debug, Parser)]
#[command(name = "vardec", version, about = "Variable decomposition for linear real arithmetic")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Decide whether the formula decomposes along the partition.
    Decide {
        #[command(flatten)]
        common: Common,
        /// Also print a Λ-proof when the answer is negative.
        #[arg(long)]
        emit_proof: bool,
    },
    /// Print a decomposition, failing with exit code 1 when there is none.
    Decompose(Common),
    /// Decide monadic decomposability, that is, along the singleton partition.
    Mondec(Common),
    /// Print the decomposable approximation for a two-block partition.
    Approx(Common),
    /// Check the `(proof …)` form of a document against its formula.
    Verify(Common),
    /// Generate an instance of a benchmark family and time `decide` on it.
    Bench(Bench),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Switch {
    On,
    Off,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Sexpr,
}

#[derive(Debug, Clone, Args)]
pub struct Common {
    /// Input file; standard input when absent.
    #[arg(long)]
    pub input: Option<PathBuf>,
    /// Partition overriding the file's, e.g. "((x y) (z))". Defaults to singletons.
    #[arg(long)]
    pub partition: Option<String>,
    #[arg(long, value_enum, default_value_t = Switch::On)]
    pub heuristics: Switch,
    /// Worker threads; 0 uses every core. Output does not depend on it.
    #[arg(long, default_value_t = 0)]
    pub jobs: usize,
    #[arg(long, value_enum, default_value_t = Format::Sexpr)]
    pub format: Format,
}

impl Default for Common {
    fn default() -> Self {
        Common { input: None, partition: None, heuristics: Switch::On, jobs: 0, format: Format::Sexpr }
    }
}

impl Common {
    fn config(&self) -> Config {
        Config::default().with_heuristics(self.heuristics == Switch::On).with_jobs(self.jobs)
    }
}

#[derive(Debug, Clone, Args)]
pub struct Bench {
    #[arg(long)]
    pub family: String,
    /// Family parameter as name=value; repeatable.
    #[arg(long = "param", value_parser = gen::parse_param)]
    pub params: Vec<(String, i64)>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Print the generated instance instead of solving it.
    #[arg(long)]
    pub emit_instance: bool,
    #[arg(long, value_enum, default_value_t = Switch::On)]
    pub heuristics: Switch,
    #[arg(long, default_value_t = 0)]
    pub jobs: usize,
}

/// What a command printed and how it exits.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Output {
    pub stdout: String,
    pub code: u8,
}

fn read_input(common: &Common, stdin: &mut dyn Read) -> Result<(String, String), CliError> {
    match &common.input {
        Some(path) => {
            let name = path.display().to_string();
            let text = std::fs::read_to_string(path).map_err(|e| CliError::Io(name.clone(), e))?;
            Ok((name, text))
        }
        None => {
            let mut text = String::new();
            stdin.read_to_string(&mut text).map_err(|e| CliError::Io("<stdin>".into(), e))?;
            Ok(("<stdin>".into(), text))
        }
    }
}

fn syntax(file: &str) -> impl Fn(SyntaxError) -> CliError + '_ {
    move |err| CliError::Syntax { file: file.to_string(), err }
}

/// The problem with `--partition` applied and singletons filled in.
fn load(common: &Common, stdin: &mut dyn Read) -> Result<(Problem, Partition), CliError> {
    let (name, text) = read_input(common, stdin)?;
    let problem = parse_problem(&text).map_err(syntax(&name))?;
    let partition = match &common.partition {
        Some(p) => parse_partition(p, &problem.vars).map_err(syntax("--partition"))?,
        None => problem.partition.clone().unwrap_or_else(|| Partition::singletons(problem.vars.len())),
    };
    Ok((problem, partition))
}

fn decide_doc(problem: &Problem, partition: &Partition, cfg: &Config, emit_proof: bool) -> Result<(Document, u8), CliError> {
    let n = problem.vars.len();
    let mut doc = Document::from_problem(problem);
    doc.partition = Some(partition.clone());
    match vardec::decide(n, &problem.formula, partition, cfg)? {
        Outcome::Decomposable(d) => {
            doc.result = Some(Verdict::Decomposable);
            doc.decomposition = Some(d.formula());
            Ok((doc, EXIT_OK))
        }
        Outcome::NonDecomposable(w) => {
            doc.result = Some(Verdict::NotDecomposable);
            if emit_proof {
                let proof = cert::prove(n, &problem.formula, &w)?;
                doc.proof = Some(ProofBlock { partition: w.partition.clone(), proof });
            }
            doc.witness = Some(*w);
            Ok((doc, EXIT_NO))
        }
    }
}

fn lines(forms: impl IntoIterator<Item = Sexp>) -> String {
    forms.into_iter().map(|x| format!("{x}\n")).collect()
}

/// Runs one command. Errors map to exit code [`EXIT_ERROR`].
pub fn run(command: &Command, stdin: &mut dyn Read) -> Result<Output, CliError> {
    match command {
        Command::Decide { common, emit_proof } => {
            let (problem, partition) = load(common, stdin)?;
            let (doc, code) = decide_doc(&problem, &partition, &common.config(), *emit_proof)?;
            Ok(Output { stdout: doc.to_string(), code })
        }
        Command::Mondec(common) => {
            let (problem, _) = load(common, stdin)?;
            let singletons = Partition::singletons(problem.vars.len());
            let (doc, code) = decide_doc(&problem, &singletons, &common.config(), false)?;
            Ok(Output { stdout: doc.to_string(), code })
        }
        Command::Decompose(common) => {
            let (problem, partition) = load(common, stdin)?;
            let (doc, code) = decide_doc(&problem, &partition, &common.config(), false)?;
            let stdout = match &doc.decomposition {
                Some(_) => {
                    let only = Document { vars: doc.vars.clone(), decomposition: doc.decomposition.clone(), ..Document::default() };
                    lines(only.forms())
                }
                None => lines(doc.forms().into_iter().filter(|x| x.head().is_some_and(|(t, _)| t == "result"))),
            };
            Ok(Output { stdout, code })
        }
        Command::Approx(common) => {
            let (problem, partition) = load(common, stdin)?;
            let approx = vardec::approx(problem.vars.len(), &problem.formula, &partition, &common.config())?;
            let mut doc = Document::from_problem(&problem);
            doc.partition = Some(partition);
            doc.approximation = Some(approx);
            Ok(Output { stdout: doc.to_string(), code: EXIT_OK })
        }
        Command::Verify(common) => {
            let (name, text) = read_input(common, stdin)?;
            let doc = parse_document(&text).map_err(syntax(&name))?;
            let missing = |what: &str| CliError::Usage(format!("{name}: no `({what} …)` form to verify"));
            let phi = doc.formula.as_ref().ok_or_else(|| missing("formula"))?;
            let block = doc.proof.as_ref().ok_or_else(|| missing("proof"))?;
            let verdict = cert::verify(doc.vars.len(), phi, &block.partition, &block.proof);
            let code = if verdict.is_ok() { EXIT_OK } else { EXIT_NO };
            Ok(Output { stdout: lines([crate::format::verdict_sexp(&verdict)]), code })
        }
        Command::Bench(b) => bench(b),
    }
}

fn bench(b: &Bench) -> Result<Output, CliError> {
    let family: Family = b.family.parse()?;
    let params = Params::resolve(family, &b.params)?;
    let problem = gen::generate(family, &params, b.seed)?;
    if b.emit_instance {
        return Ok(Output { stdout: Document::from_problem(&problem).to_string(), code: EXIT_OK });
    }
    let partition = problem.partition.clone().expect("generators set a partition");
    let cfg = Config::default().with_heuristics(b.heuristics == Switch::On).with_jobs(b.jobs);
    let start = Instant::now();
    let outcome = vardec::decide(problem.vars.len(), &problem.formula, &partition, &cfg)?;
    let millis = start.elapsed().as_millis();
    let (word, size) = match &outcome {
        Outcome::Decomposable(d) => ("decomposable", d.formula().size()),
        Outcome::NonDecomposable(_) => ("not-decomposable", 0),
    };
    let sym = |s: String| Sexp::sym(s);
    let form = Sexp::tagged(
        "bench",
        [
            Sexp::tagged("family", [Sexp::sym(family.name())]),
            Sexp::tagged("params", params.iter().map(|(k, v)| Sexp::list(vec![sym(k.into()), sym(v.to_string())]))),
            Sexp::tagged("seed", [sym(b.seed.to_string())]),
            Sexp::tagged("result", [Sexp::sym(word)]),
            Sexp::tagged("input-size", [sym(problem.formula.size().to_string())]),
            Sexp::tagged("output-size", [sym(size.to_string())]),
            Sexp::tagged("millis", [sym(millis.to_string())]),
        ],
    );
    Ok(Output { stdout: lines([form]), code: EXIT_OK })
}

/// Parses `args` and runs the command, rendering errors to a message for stderr.
pub fn main_with(args: impl IntoIterator<Item = String>, stdin: &mut dyn Read) -> (Output, Option<String>) {
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_ERROR } else { EXIT_OK };
            let text = e.render().to_string();
            return if e.use_stderr() {
                (Output { stdout: String::new(), code }, Some(text))
            } else {
                (Output { stdout: text, code }, None)
            };
        }
    };
    match run(&cli.command, stdin) {
        Ok(out) => (out, None),
        Err(e) => (Output { stdout: String::new(), code: EXIT_ERROR }, Some(format!("error: {e}"))),
    }
}
