use std::path::PathBuf;
use std::process::ExitCode;

use acs_cohomology::commands::{corpus_listing, parse_bidegree, run_command, Command, Flags, Format};
use acs_cohomology::corpus::lookup;
use acs_cohomology::document::{parse_metric, parse_spec};
use acs_cohomology::harmonic::Operator;
use acs_cohomology::Error;
use clap::{Args, Parser, Subcommand};

/// Exact cohomology of Lie algebras with almost complex structures.
#[derive(Parser)]
#[command(name = "acsc", version)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Args)]
struct Input {
    /// JSON input document.
    file: Option<PathBuf>,
    /// Use a built-in example instead of a file.
    #[arg(long)]
    corpus: Option<String>,
    /// Spectral-sequence page.
    #[arg(long)]
    page: Option<usize>,
    /// Restrict to one bidegree, written p,q.
    #[arg(long, allow_hyphen_values = true)]
    bidegree: Option<String>,
    /// text, json or csv.
    #[arg(long, default_value = "text")]
    format: String,
    /// JSON file with a rational metric matrix.
    #[arg(long)]
    metric: Option<PathBuf>,
    /// Laplacian for `harmonic`: mu, del, delbar or mubar.
    #[arg(long)]
    delta: Option<String>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Check the Lie algebra, J and metric.
    Validate(Input),
    /// Betti numbers and de Rham representatives.
    Derham(Input),
    /// Dolbeault cohomology via μ̄-cohomology.
    Dolbeault(Input),
    /// Pages of the spectral sequence.
    Spectral(Input),
    /// J-invariant and anti-invariant cohomology.
    Jinv(Input),
    /// Laplacians, μ̄-harmonic forms and ∂̄_μ̄.
    Harmonic(Input),
    /// Run a theorem check.
    Check {
        /// serre, frolicher, relations, inclusion or all.
        #[arg(value_parser = ["serre", "frolicher", "relations", "inclusion", "all"])]
        kind: String,
        #[command(flatten)]
        input: Input,
    },
    /// List built-in examples.
    Corpus {
        /// Recompute each entry's expected results.
        #[arg(long)]
        verify: bool,
    },
}

fn read(path: &PathBuf) -> Result<Vec<u8>, Error> {
    std::fs::read(path).map_err(|e| Error::Config(format!("cannot read {}: {e}", path.display())))
}

fn run(cli: Cli) -> Result<(String, i32), Error> {
    let (name, check, input) = match cli.command {
        Cmd::Corpus { verify } => {
            let out = corpus_listing(verify)?;
            return Ok((out.text.clone(), out.exit_code()));
        }
        Cmd::Validate(i) => ("validate", None, i),
        Cmd::Derham(i) => ("derham", None, i),
        Cmd::Dolbeault(i) => ("dolbeault", None, i),
        Cmd::Spectral(i) => ("spectral", None, i),
        Cmd::Jinv(i) => ("jinv", None, i),
        Cmd::Harmonic(i) => ("harmonic", None, i),
        Cmd::Check { kind, input } => ("check", Some(kind), input),
    };
    let cmd = Command::parse(name, check.as_deref())?;
    let flags = Flags {
        page: input.page,
        bidegree: input.bidegree.as_deref().map(parse_bidegree).transpose()?,
        format: input.format.parse::<Format>()?,
        metric: input.metric.as_ref().map(|p| read(p).and_then(|b| parse_metric(&b))).transpose()?,
        operator: match input.delta.as_deref() {
            None => None,
            Some(s) => Some(Operator::parse(s).ok_or_else(|| Error::Usage(format!("unknown operator {s:?}")))?),
        },
    };
    let doc = match (&input.file, &input.corpus) {
        (Some(_), Some(_)) => return Err(Error::Usage("give either a file or --corpus, not both".into())),
        (None, None) => return Err(Error::Usage("an input file or --corpus KEY is required".into())),
        (Some(path), None) => parse_spec(&read(path)?)?,
        (None, Some(key)) => lookup(key)?.document,
    };
    let out = run_command(cmd, &flags, &doc)?;
    Ok((out.text.clone(), out.exit_code()))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 64 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok((text, code)) => {
            print!("{text}");
            ExitCode::from(code as u8)
        }
        Err(e) => {
            eprintln!("acsc: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
