use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Duration;

use clap::{Parser, Subcommand, ValueEnum};

use mdg::commands::{self, AutOptions, ExportTarget, Format, GroupSpec, Target};
use mdg::report::Report;
use mdg::{MdgError, Settings};

/// Verify, explore and export mixed dihedral groups and their graphs.
#[derive(Parser, Debug)]
#[command(name = "mdg", version)]
struct Cli {
    /// Worker threads; 0 uses every core.
    #[arg(long, global = true, env = "MDG_THREADS", default_value_t = 0)]
    threads: usize,
    /// Search-tree node budget for automorphism searches.
    #[arg(long, global = true, env = "MDG_MAX_NODES", default_value_t = Settings::default().max_nodes)]
    max_nodes: u64,
    /// Wall-clock limit for one automorphism search, in seconds.
    #[arg(long, global = true, env = "MDG_TIME_LIMIT", default_value_t = 300)]
    time_limit: u64,
    /// Emit reports as JSON.
    #[arg(long, global = true)]
    json: bool,
    /// Zero every runtime so reports are byte-for-byte reproducible.
    #[arg(long, global = true)]
    no_timings: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check group and graph claims and print a report.
    #[command(subcommand)]
    Verify(Verify),
    /// Order of the automorphism group, known and searched.
    Aut {
        #[arg(short)]
        n: usize,
        #[arg(long, value_enum, default_value_t = TargetArg::Gamma)]
        target: TargetArg,
        /// Run a full automorphism search.
        #[arg(long)]
        full_search: bool,
        /// Allow the full search at n = 3.
        #[arg(long)]
        long_run: bool,
    },
    /// Write a graph as graph6 or an edge list.
    Export {
        #[arg(short)]
        n: usize,
        #[arg(long, value_enum, default_value_t = ExportArg::Gamma)]
        target: ExportArg,
        #[arg(long, value_enum, default_value_t = FormatArg::Graph6)]
        format: FormatArg,
        /// Output file; standard output when absent.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Distance diagram of the Cayley graph around the identity.
    Diagram {
        #[arg(short)]
        n: usize,
        #[arg(long, value_enum, default_value_t = DiagramFormat::Json)]
        format: DiagramFormat,
    },
}

#[derive(Subcommand, Debug)]
enum Verify {
    /// Order, presentation, derived subgroup, center and the mixed dihedral test.
    Group {
        #[arg(short, conflicts_with = "dihedral", required_unless_present = "dihedral")]
        n: Option<usize>,
        /// A product of dihedral groups D_2m, as m1,m2,...
        #[arg(long, value_delimiter = ',')]
        dihedral: Option<Vec<u64>>,
    },
    /// Structure and symmetry of the Cayley graph and the coset graph.
    Graphs {
        #[arg(short)]
        n: usize,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum TargetArg {
    Gamma,
    Sigma,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ExportArg {
    Gamma,
    Sigma,
    Quotient,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum FormatArg {
    Graph6,
    Edgelist,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum DiagramFormat {
    Json,
    Table,
}

/// Writes to standard output; a reader that has gone away is not an error.
fn emit(text: &str) -> Result<(), MdgError> {
    match std::io::stdout().lock().write_all(text.as_bytes()) {
        Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => Err(e.into()),
        _ => Ok(()),
    }
}

fn print_report(mut r: Report, cli: &Cli) -> Result<u8, MdgError> {
    if cli.no_timings {
        r.strip_timings();
    }
    if cli.json {
        emit(&(r.to_json() + "\n"))?;
    } else {
        emit(&r.to_text())?;
    }
    Ok(r.exit_code() as u8)
}

fn run(cli: &Cli) -> Result<u8, MdgError> {
    let settings = Settings {
        threads: cli.threads,
        max_nodes: cli.max_nodes,
        time_limit: Duration::from_secs(cli.time_limit),
    };
    match &cli.command {
        Command::Verify(Verify::Group { n, dihedral }) => {
            let spec = match (n, dihedral) {
                (Some(n), _) => GroupSpec::I(*n),
                (None, Some(ms)) => GroupSpec::Dihedral(ms.clone()),
                (None, None) => unreachable!("clap requires one of -n and --dihedral"),
            };
            print_report(commands::verify_group(&spec)?, cli)
        }
        Command::Verify(Verify::Graphs { n }) => print_report(commands::verify_graphs(*n, &settings)?, cli),
        Command::Aut {
            n,
            target,
            full_search,
            long_run,
        } => {
            let opts = AutOptions {
                n: *n,
                target: match target {
                    TargetArg::Gamma => Target::Gamma,
                    TargetArg::Sigma => Target::Sigma,
                },
                full_search: *full_search,
                long_run: *long_run,
            };
            print_report(commands::aut(&opts, &settings)?, cli)
        }
        Command::Export {
            n,
            target,
            format,
            output,
        } => {
            let target = match target {
                ExportArg::Gamma => ExportTarget::Gamma,
                ExportArg::Sigma => ExportTarget::Sigma,
                ExportArg::Quotient => ExportTarget::Quotient,
            };
            let format = match format {
                FormatArg::Graph6 => Format::Graph6,
                FormatArg::Edgelist => Format::Edgelist,
            };
            let text = commands::export(*n, target, format, &settings)?;
            match output {
                Some(path) => std::fs::write(path, text)?,
                None => emit(&text)?,
            }
            Ok(0)
        }
        Command::Diagram { n, format } => {
            let d = commands::diagram(*n, &settings)?;
            match format {
                DiagramFormat::Json => emit(&(d.to_json() + "\n"))?,
                DiagramFormat::Table => emit(&d.to_table())?,
            }
            Ok(u8::from(!d.matches_reference()))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("mdg: {e}");
            ExitCode::from(2)
        }
    }
}
