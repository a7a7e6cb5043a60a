use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use flopkit::{MonomialOrder, Rational};
use flopkit_cli::report::Failure;
use flopkit_cli::{run, Command, JobSpec, CATALOGUE_ENV};

#[derive(Parser)]
#[command(name = "flopkit", version, about = "Matrix factorisations, module blowups and flops of rational double points")]
struct Cli {
    #[command(subcommand)]
    command: Cmd,

    /// Order in which chart equations are reported.
    #[arg(long, global = true, value_enum, default_value_t = Order::Degrevlex)]
    order: Order,

    /// Seed for the random hyperplanes and coordinate changes.
    #[arg(long, global = true, default_value_t = 1)]
    seed: u64,

    /// Degree bound for fractional-equivalence witnesses.
    #[arg(long, global = true, default_value_t = 4)]
    search_degree: u32,

    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Extra value of the family parameter for the base-change check.
    #[arg(long = "t", global = true, allow_hyphen_values = true, value_parser = parse_rational)]
    t_value: Option<Rational>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Check every factorisation in the input and its minimality.
    VerifyMf { input: PathBuf },
    /// Blow up each factorisation's singularity in its module.
    Blowup { input: PathBuf },
    /// Name the rational double point of each polynomial.
    Classify { input: PathBuf },
    /// Fundamental cycles, module ranks and partial resolutions.
    Graph { input: PathBuf },
    /// Build and check the flop of each family (default: the catalogue's).
    Flop {
        input: Option<PathBuf>,
        #[arg(long)]
        family: Option<String>,
    },
    /// Load, re-verify and list the catalogue.
    Catalogue { input: Option<PathBuf> },
}

#[derive(Clone, Copy, ValueEnum)]
enum Order {
    Lex,
    Degrevlex,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

fn parse_rational(s: &str) -> Result<Rational, String> {
    s.parse::<Rational>().map_err(|e| format!("`{s}` is not a rational number: {e}"))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (command, input, family) = match cli.command {
        Cmd::VerifyMf { input } => (Command::VerifyMf, Some(input), None),
        Cmd::Blowup { input } => (Command::Blowup, Some(input), None),
        Cmd::Classify { input } => (Command::Classify, Some(input), None),
        Cmd::Graph { input } => (Command::Graph, Some(input), None),
        Cmd::Flop { input, family } => (Command::Flop, input, family),
        Cmd::Catalogue { input } => (Command::Catalogue, input, None),
    };
    let mut spec = JobSpec::new(command);
    spec.input = input;
    spec.family = family;
    spec.order = match cli.order {
        Order::Lex => MonomialOrder::Lex,
        Order::Degrevlex => MonomialOrder::DegRevLex,
    };
    spec.seed = cli.seed;
    spec.search_degree = cli.search_degree;
    spec.t_value = cli.t_value;
    spec.catalogue = std::env::var_os(CATALOGUE_ENV).map(PathBuf::from);

    let json = cli.format == Format::Json;
    match run(&spec) {
        Ok(report) => {
            if json {
                println!("{}", serde_json::to_string_pretty(&report).expect("reports serialize"));
            } else {
                print!("{}", report.to_text());
            }
            if report.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            let failure = Failure::new(command.name(), &spec.input_name(), &e);
            if json {
                println!("{}", serde_json::to_string_pretty(&failure).expect("failures serialize"));
            } else {
                eprintln!("flopkit {}: {e}", command.name());
            }
            ExitCode::from(failure.exit_code as u8)
        }
    }
}
