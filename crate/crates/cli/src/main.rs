mod builtins;
mod commands;
mod io;
mod scenarios;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use io::{envelope, write_json, CliResult};

#[derive(Parser)]
#[command(name = "fmbkit", version, about = "Filtered multiplicative bases of local algebras")]
struct Cli {
    /// Write the JSON report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone, Default)]
pub struct InputArgs {
    /// JSON input file; stdin when neither this nor --builtin is given.
    #[arg(long = "in")]
    pub input: Option<PathBuf>,
    /// Use a shipped example instead of a file.
    #[arg(long)]
    pub builtin: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Bases of associative algebras.
    #[command(subcommand)]
    Fmb(FmbCommand),
    /// Restricted Lie algebras and their enveloping algebras.
    #[command(subcommand)]
    Lie(LieCommand),
    /// Finite p-groups given by Cayley tables.
    #[command(subcommand)]
    Group(GroupCommand),
    /// Reproducible end-to-end checks.
    Scenario(ScenarioArgs),
    /// Converts a group or Lie algebra into an algebra (or a group into its Lie algebra).
    Convert {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, value_enum, default_value_t = Target::Algebra)]
        to: Target,
    },
}

#[derive(Clone, Copy, ValueEnum)]
pub enum Target {
    Algebra,
    Lie,
}

#[derive(Subcommand)]
pub enum FmbCommand {
    /// Checks that a basis is an f.m.b.
    Verify(InputArgs),
    /// Closure search for an f.m.b.
    Search {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, default_value_t = 100_000)]
        budget: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Multiplicative basis of A/K from an ideal with a regular basis.
    Quotient(InputArgs),
    /// Regular basis of the kernel of a map onto an algebra with a multiplicative basis.
    RegularKernel(InputArgs),
    /// Carries an f.m.b. of A to gr(A).
    GrTransport(InputArgs),
    /// Degree-3 products of three lifted generators of u(L).
    Probe(InputArgs),
    /// Verifies a Heisenberg-type witness.
    CertifyHeisenberg(InputArgs),
}

#[derive(Subcommand)]
pub enum LieCommand {
    /// u(L) as an algebra.
    Env(InputArgs),
    /// Powers of the augmentation ideal against the radical filtration.
    Omega(InputArgs),
    /// L(m,n;s).
    Family(FamilyArgs),
    /// Certified f.m.b. of u(L(m,n;s)).
    FamilyFmb(FamilyArgs),
    /// Basis of u(L) by images of words in generators.
    WordBasis(InputArgs),
    /// Dimension subalgebras and heights.
    Dimsub(InputArgs),
    /// gr(L) and the comparison of u(gr L) with gr u(L).
    Grlie(InputArgs),
    /// Decomposition of an abelian algebra into nilcyclics.
    Decompose(InputArgs),
}

#[derive(Args, Clone, Copy)]
pub struct FamilyArgs {
    #[arg(long, default_value_t = 0)]
    pub m: usize,
    #[arg(long, default_value_t = 1)]
    pub n: usize,
    #[arg(long, default_value_t = 1)]
    pub s: usize,
    #[arg(long, default_value_t = 2)]
    pub p: u32,
}

#[derive(Subcommand)]
pub enum GroupCommand {
    /// Dimension subgroups and the associated restricted Lie algebra.
    Jennings(InputArgs),
    /// gr(FG) against u(L(G) ⊗ F).
    Quillen(InputArgs),
    /// Whether G is powerful.
    Powerful(InputArgs),
    /// Class, powerfulness, Lie class and f.m.b. verdict for FG.
    Corollary2 {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, default_value_t = 100_000)]
        budget: u64,
    },
}

#[derive(Args, Clone)]
pub struct ScenarioArgs {
    #[arg(value_enum)]
    pub name: ScenarioName,
    #[arg(long, default_value_t = 0)]
    pub m: usize,
    #[arg(long, default_value_t = 1)]
    pub n: usize,
    #[arg(long, default_value_t = 1)]
    pub s: usize,
    /// Number of randomized instances.
    #[arg(long, default_value_t = 100)]
    pub random: usize,
    #[arg(long, default_value_t = 7)]
    pub seed: u64,
    #[arg(long, default_value_t = 2)]
    pub p: u32,
    /// Random closure samples for the probe scenario.
    #[arg(long, default_value_t = 10_000)]
    pub samples: u64,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum ScenarioName {
    Lemma2,
    #[value(name = "thm1-roundtrip")]
    Thm1Roundtrip,
    #[value(name = "thm3-transport")]
    Thm3Transport,
    #[value(name = "thm2-probe")]
    Thm2Probe,
    Quillen,
    Corollary2,
    Lalpha,
}

fn run(cli: &Cli) -> CliResult<bool> {
    let report = match &cli.command {
        Command::Scenario(args) => scenarios::run(args)?,
        other => {
            let (name, input, outcome) = match other {
                Command::Fmb(c) => commands::fmb(c)?,
                Command::Lie(c) => commands::lie(c)?,
                Command::Group(c) => commands::group(c)?,
                Command::Convert { input, to } => commands::convert(input, *to)?,
                Command::Scenario(_) => unreachable!(),
            };
            envelope(&name, &input, &outcome)
        }
    };
    write_json(cli.out.as_ref(), &report)?;
    Ok(report["status"] == "pass")
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("fmbkit: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
