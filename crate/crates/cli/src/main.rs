use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

mod commands;
mod output;

use output::{CliError, Output};

#[derive(Parser)]
#[command(name = "sqdual", version, about = "Squarefree monomial quotients, their Alexander duals and Stanley decompositions")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone, Copy)]
pub struct Global {
    /// Field characteristic for homology and exterior computations (0 = rationals)
    #[arg(long = "char", global = true, default_value_t = 32003)]
    pub characteristic: u64,
    /// Seed for random instance generation
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, global = true, value_enum, default_value_t = FormatArg::Json)]
    pub format: FormatArg,
    /// Largest n accepted by exhaustive surveys
    #[arg(long = "cap-n", global = true, default_value_t = sqdual_core::survey::DEFAULT_CAP_N)]
    pub cap_n: usize,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FormatArg {
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Alexander dual of a quotient (or of a complex), as an instance file
    Dual { input: PathBuf },
    /// Stanley depth with an optimal decomposition
    Sdepth { input: PathBuf },
    /// Minimal h-regularity over all decompositions, against reg
    Hreg { input: PathBuf },
    /// A Stanley decomposition and its dual
    Decompose {
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = Via::Filtration)]
        via: Via,
    },
    /// Prime filtrations: build, validate, dualize
    Filtration {
        #[command(subcommand)]
        action: FiltrationAction,
    },
    /// Exterior-algebra counterparts
    Exterior {
        #[command(subcommand)]
        action: ExteriorAction,
    },
    /// Multigraded Betti numbers and derived invariants
    Invariants { input: PathBuf },
    /// Linear quotient order of an ideal
    Linquot { input: PathBuf },
    /// Partitionability of a complex and the dual generator-bottom test
    Partition { input: PathBuf },
    /// Run every check over a family of instances
    Survey(SurveyArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Via {
    Filtration,
    Sdepth,
    Hreg,
}

#[derive(Subcommand)]
enum FiltrationAction {
    /// Facet-peel filtration of a quotient
    Build { input: PathBuf },
    /// Check a filtration file
    Validate { input: PathBuf },
    /// Dual filtration of a filtration file
    Dualize { input: PathBuf },
}

#[derive(Subcommand)]
enum ExteriorAction {
    /// Evaluate theta over every generator-divisor presentation
    Theta {
        input: PathBuf,
        /// Restrict to one squarefree degree, e.g. 1,3
        #[arg(long, value_delimiter = ',')]
        degree: Option<Vec<usize>>,
    },
    /// Dual decomposition of the E-module with pairing signs
    Edual { input: PathBuf },
}

#[derive(Args)]
pub struct SurveyArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long, value_enum, default_value_t = ModeArg::Exhaustive)]
    pub mode: ModeArg,
    /// Instances drawn in random mode
    #[arg(long, default_value_t = 100)]
    pub count: usize,
    #[arg(long, value_enum, default_value_t = TargetArg::Quotients)]
    pub target: TargetArg,
    /// Record per-instance wall-clock time
    #[arg(long)]
    pub timings: bool,
    /// Write the report here instead of stdout
    #[arg(long, short)]
    pub output: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Exhaustive,
    Random,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TargetArg {
    Quotients,
    Cyclic,
    Ideals,
}

fn run(cli: Cli) -> Result<Output, CliError> {
    let g = cli.global;
    match cli.command {
        Command::Dual { input } => commands::dual(&input),
        Command::Sdepth { input } => commands::sdepth(&input),
        Command::Hreg { input } => commands::hreg(g, &input),
        Command::Decompose { input, via } => commands::decompose(&input, via),
        Command::Filtration { action } => match action {
            FiltrationAction::Build { input } => commands::filtration_build(&input),
            FiltrationAction::Validate { input } => commands::filtration_validate(&input),
            FiltrationAction::Dualize { input } => commands::filtration_dualize(&input),
        },
        Command::Exterior { action } => match action {
            ExteriorAction::Theta { input, degree } => commands::theta(g, &input, degree.as_deref()),
            ExteriorAction::Edual { input } => commands::edual(g, &input),
        },
        Command::Invariants { input } => commands::invariants(g, &input),
        Command::Linquot { input } => commands::linquot(g, &input),
        Command::Partition { input } => commands::partition(g, &input),
        Command::Survey(args) => commands::survey(g, &args),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    let format = cli.global.format;
    let result = run(cli).and_then(|out| out.render(format));
    match result {
        Ok(text) => {
            let mut stdout = std::io::stdout().lock();
            if stdout.write_all(text.as_bytes()).and_then(|_| stdout.flush()).is_err() {
                return ExitCode::from(1);
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("sqdual: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
