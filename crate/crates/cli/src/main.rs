use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use orbiklt::germ::EnumerationBounds;
use orbiklt::orbibase::Kappa;
use orbiklt_cli::commands::{self, VerdictFlags};
use orbiklt_cli::input::parse_kappa;
use orbiklt_cli::{CliError, Format, Report};

#[derive(Parser)]
#[command(name = "orbiklt", version, about = "klt surface germs, cyclic quotients and orbifold curve groups")]
struct Cli {
    /// Report format; ORBIKLT_FORMAT overrides it when set.
    #[arg(long, value_enum, default_value_t = FormatArg::Json, global = true)]
    format: FormatArg,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Json,
    Plain,
}

#[derive(Subcommand)]
enum Command {
    /// Discrepancies, klt verdict and class of a dual graph file.
    Graph {
        file: PathBuf,
        /// Also report the local fundamental group order (chains with two boundary ends).
        #[arg(long)]
        order: bool,
    },
    /// Classify a boundary germ on a smooth surface.
    Germ { file: PathBuf },
    /// Enumerate klt multiplicities of smooth branches with a common contact order,
    /// or with --catalogue the klt classes of the full germ sweep.
    Enumerate(EnumerateArgs),
    /// Cover verdict for a single (p, q)-cusp of multiplicity m.
    Cusp {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        q: u64,
        #[arg(long)]
        mult: u64,
    },
    /// Hirzebruch-Jung expansion of N/q, or evaluation of a chain.
    Cyclic {
        #[arg(long, value_delimiter = ',', conflicts_with = "chain", required_unless_present = "chain")]
        nq: Vec<u64>,
        #[arg(long, value_delimiter = ',')]
        chain: Vec<u64>,
    },
    /// Degree, type and fundamental group of an orbifold curve.
    Curve {
        #[arg(long)]
        genus: u64,
        #[arg(long, value_delimiter = ',', default_value = "")]
        mults: Vec<String>,
    },
    /// Orbifold base of a fibration file.
    Base {
        file: PathBuf,
        /// Kodaira dimension (-inf, 0, 1, 2); adds a specialness verdict.
        #[arg(long, value_parser = parse_kappa, allow_hyphen_values = true)]
        kappa: Option<Kappa>,
    },
    /// Abelianity verdict for a special surface pair, from a summary file or flags.
    Verdict(VerdictArgs),
}

#[derive(Args)]
struct EnumerateArgs {
    #[arg(long)]
    branches: usize,
    #[arg(long)]
    contact: u64,
    #[arg(long)]
    max_mult: u64,
    #[arg(long)]
    catalogue: bool,
    #[arg(long, default_value_t = 7, requires = "catalogue")]
    max_cusp_exp: u64,
    #[arg(long, default_value_t = 2, requires = "catalogue")]
    max_cusps: usize,
}

#[derive(Args)]
struct VerdictArgs {
    /// Summary file; when given, the flags below are not used.
    #[arg(conflicts_with_all = ["kappa", "outcome", "special"])]
    file: Option<PathBuf>,
    #[arg(long, value_parser = parse_kappa, allow_hyphen_values = true, required_unless_present = "file")]
    kappa: Option<Kappa>,
    #[arg(long, value_parser = ["nef", "mori", "del-pezzo"], required_unless_present = "file")]
    outcome: Option<String>,
    #[arg(long, required_unless_present = "file")]
    special: Option<bool>,
    #[arg(long)]
    mori_genus: Option<u64>,
    #[arg(long, value_delimiter = ',')]
    mori_mults: Vec<u64>,
}

fn parse_mults(raw: &[String]) -> Result<Vec<u64>, CliError> {
    raw.iter()
        .filter(|s| !s.is_empty())
        .map(|s| {
            s.trim().parse::<u64>().map_err(|_| CliError::Parse {
                path: "--mults".into(),
                message: format!("{s:?} is not a decimal integer"),
            })
        })
        .collect()
}

fn run(cli: Cli) -> Result<Report, CliError> {
    match cli.command {
        Command::Graph { file, order } => commands::graph(&file, order),
        Command::Germ { file } => commands::germ(&file),
        Command::Enumerate(a) if a.catalogue => commands::catalogue(EnumerationBounds {
            max_mult: a.max_mult,
            max_contact: a.contact,
            max_cusp_exp: a.max_cusp_exp,
            max_branches: a.branches,
            max_cusps: a.max_cusps,
        }),
        Command::Enumerate(a) => commands::enumerate(a.branches, a.contact, a.max_mult),
        Command::Cusp { p, q, mult } => commands::cusp(p, q, mult),
        Command::Cyclic { nq, chain } => match nq.as_slice() {
            [] => commands::cyclic_from_chain(&chain),
            &[n, q] => commands::cyclic_from_pair(n, q),
            _ => Err(CliError::Validation("--nq takes exactly N,Q".into())),
        },
        Command::Curve { genus, mults } => commands::curve(genus, &parse_mults(&mults)?),
        Command::Base { file, kappa } => commands::base(&file, kappa),
        Command::Verdict(v) => match v.file {
            Some(file) => commands::verdict_file(&file),
            None => commands::verdict_flags(&VerdictFlags {
                kappa: v.kappa.expect("required by clap"),
                outcome: v.outcome.expect("required by clap"),
                special: v.special.expect("required by clap"),
                mori_genus: v.mori_genus,
                mori_mults: v.mori_mults,
            }),
        },
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let flag = match cli.format {
        FormatArg::Json => Format::Json,
        FormatArg::Plain => Format::Plain,
    };
    let format = match std::env::var("ORBIKLT_FORMAT") {
        Ok(v) if !v.is_empty() => match Format::parse(&v) {
            Some(f) => f,
            None => {
                eprintln!("error: ORBIKLT_FORMAT must be json or plain, got {v:?}");
                return ExitCode::from(2);
            }
        },
        _ => flag,
    };
    match run(cli) {
        Ok(report) => {
            print!("{}", report.render(format));
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
