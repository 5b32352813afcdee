//! Command line front end for the certified verification pipeline.
//!
//! Every subcommand runs a subset of the pipeline stages and emits a
//! certificate in the chosen format. Exit codes: 0 when every evaluated
//! claim is verified, 1 when a recomputation contradicts a claim, 2 when
//! the working precision could not decide a comparison, 3 for bad
//! configuration.

use std::collections::BTreeSet;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{error::ErrorKind, CommandFactory, Parser, Subcommand, ValueEnum};
use pillai_core::certificate::{
    render_csv, render_json, render_text, run_pipeline, Certificate, CertificateError,
    PipelineConfig, Stage, Verdict,
};
use pillai_core::search::IndexConvention;

#[derive(Parser)]
#[command(
    name = "pillai",
    version,
    about = "Recomputes and certifies every step of the two-representation theorem \
             for Padovan-minus-Lucas differences"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Base working precision for certified interval arithmetic (bits).
    /// Stages escalate on their own when a comparison needs more.
    #[arg(long, global = true, default_value_t = 192)]
    precision_bits: u32,

    /// Largest Padovan index enumerated by the search stage.
    #[arg(long, global = true, default_value_t = 189)]
    m_max: u32,

    /// Largest Lucas index enumerated by the search stage.
    #[arg(long, global = true, default_value_t = 300)]
    n_max: u32,

    /// Where the sequence indices start.
    #[arg(long, global = true, value_enum, default_value_t = Convention::Canonical)]
    convention: Convention,

    /// Output format for the certificate.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Write the certificate to this file instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Enumerate the differences and compare the multi-represented set
    /// with the published one.
    Search,
    /// Certify the continued fraction expansions and the published
    /// convergent data.
    Cf,
    /// Recompute the chain of constants leading to the absolute bound on n.
    Bounds,
    /// Rerun every published reduction campaign (pulls in cf and bounds).
    Reduce,
    /// Run all stages and evaluate the complete claims registry.
    Certify,
}

#[derive(Clone, Copy, ValueEnum)]
enum Convention {
    /// Padovan index from 4, Lucas index from 0 (the published window).
    Canonical,
    /// Padovan index from 1, Lucas index from 2 (the bookkeeping variant,
    /// which distorts the set).
    Bookkeeping,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

fn stages_for(command: &Command) -> BTreeSet<Stage> {
    match command {
        Command::Search => [Stage::Search].into_iter().collect(),
        Command::Cf => [Stage::Cf].into_iter().collect(),
        Command::Bounds => [Stage::Bounds].into_iter().collect(),
        Command::Reduce => [Stage::Reduce].into_iter().collect(),
        Command::Certify => Stage::all(),
    }
}

fn emit(cert: &Certificate, format: Format, out: &Option<PathBuf>) -> Result<(), String> {
    let rendered = match format {
        Format::Json => render_json(cert).map_err(|e| e.to_string())?,
        Format::Csv => render_csv(cert),
        Format::Text => render_text(cert),
    };
    match out {
        Some(path) => std::fs::write(path, rendered)
            .map_err(|e| format!("cannot write {}: {e}", path.display())),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(rendered.as_bytes()).map_err(|e| e.to_string())
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = e.print();
                    return ExitCode::SUCCESS;
                }
                _ => 3,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };

    if !(64..=4096).contains(&cli.precision_bits) {
        let mut cmd = Cli::command();
        let _ = cmd.print_help();
        eprintln!("\nerror: --precision-bits must lie in 64..=4096, got {}", cli.precision_bits);
        return ExitCode::from(3);
    }

    let convention = match cli.convention {
        Convention::Canonical => IndexConvention::canonical(),
        Convention::Bookkeeping => IndexConvention::bookkeeping(),
    };
    let config = PipelineConfig {
        stages: stages_for(&cli.command),
        precision_bits: cli.precision_bits,
        m_max: cli.m_max,
        n_max: cli.n_max,
        convention,
    };

    match run_pipeline(&config) {
        Ok(cert) => {
            if let Err(msg) = emit(&cert, cli.format, &cli.out) {
                eprintln!("error: {msg}");
                return ExitCode::from(3);
            }
            match cert.verdict {
                Verdict::Verified => ExitCode::SUCCESS,
                Verdict::MismatchFound => ExitCode::from(1),
            }
        }
        Err(CertificateError::Config(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
        Err(e) if e.is_precision_related() => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
