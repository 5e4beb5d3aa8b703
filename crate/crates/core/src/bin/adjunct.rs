use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use adjunct::cli::{enumerate, run_task, Document, Family, Format, Structure};
use adjunct::util::DEFAULT_BUDGET;
use adjunct::Budget;
use clap::{Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(name = "adjunct", version, about = "Run finite adjunction checks described by JSON documents")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a task document and print its report.
    Run {
        /// Document path; stdin when absent or `-`.
        file: Option<PathBuf>,
        /// Maximum number of candidates any enumeration may visit.
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
        #[arg(long, value_enum, default_value_t = FormatArg::Text)]
        format: FormatArg,
        /// Accepted for interface stability; every search is exhaustive and
        /// ordered, so the seed changes nothing.
        #[arg(long)]
        seed: Option<u64>,
        /// Add wall-clock time to the report.
        #[arg(long)]
        timing: bool,
    },
    /// Validate a document and print its canonical form.
    Check {
        file: Option<PathBuf>,
    },
    /// Print every structure of a family within the bounds, one document per line.
    Enumerate {
        #[arg(value_enum)]
        family: FamilyArg,
        #[arg(long)]
        size: usize,
        /// Edges per hom set, for graphs.
        #[arg(long, default_value_t = 1)]
        max_edges: usize,
        /// Value quantale, for v-categories.
        #[arg(long, value_enum, default_value_t = QuantaleArg::Boolean)]
        quantale: QuantaleArg,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Text,
    Machine,
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyArg {
    Posets,
    Magmas,
    Graphs,
    VCategories,
}

#[derive(Clone, Copy, ValueEnum)]
enum QuantaleArg {
    Boolean,
    Tropical,
}

fn read_input(file: &Option<PathBuf>) -> Result<String, String> {
    match file {
        Some(p) if p.as_os_str() != "-" => std::fs::read_to_string(p).map_err(|e| format!("{}: {e}", p.display())),
        _ => {
            let mut s = String::new();
            io::stdin().read_to_string(&mut s).map_err(|e| format!("stdin: {e}"))?;
            Ok(s)
        }
    }
}

fn parse(file: &Option<PathBuf>) -> Result<Document, String> {
    let text = read_input(file)?;
    Document::parse(&text).map_err(|e| e.to_string())
}

fn run(cli: Cli) -> Result<u8, String> {
    let mut out = io::stdout().lock();
    match cli.command {
        Command::Run { file, budget, format, seed: _, timing } => {
            let doc = parse(&file)?;
            let Structure::Task(spec) = doc.structure() else {
                return Err(format!("expected a task document, found {}", doc.kind()));
            };
            let start = Instant::now();
            let mut report = run_task(spec, Budget(budget)).map_err(|e| format!("{}: {e}", spec.name))?;
            if timing {
                report.timing_ms = Some(start.elapsed().as_millis() as u64);
            }
            let format = match format {
                FormatArg::Text => Format::Text,
                FormatArg::Machine => Format::Machine,
            };
            out.write_all(report.render(format).as_bytes()).map_err(|e| e.to_string())?;
            Ok(report.verdict.exit_code() as u8)
        }
        Command::Check { file } => {
            let doc = parse(&file)?;
            out.write_all(doc.render().as_bytes()).map_err(|e| e.to_string())?;
            Ok(0)
        }
        Command::Enumerate { family, size, max_edges, quantale } => {
            let family = match family {
                FamilyArg::Posets => Family::Posets,
                FamilyArg::Magmas => Family::Magmas,
                FamilyArg::Graphs => Family::Graphs,
                FamilyArg::VCategories => Family::VCategories,
            };
            let quantale = match quantale {
                QuantaleArg::Boolean => "boolean",
                QuantaleArg::Tropical => "tropical",
            };
            for doc in enumerate(family, size, max_edges, quantale) {
                writeln!(out, "{}", doc.render_compact()).map_err(|e| e.to_string())?;
            }
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => ExitCode::from(code),
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}
