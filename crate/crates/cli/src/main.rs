//! `latext`: scenario runner, verification suites, catalog writer and free
//! lattice word problem. Exit codes: 0 all pass, 1 a property failed, 2 an
//! input or internal error.

mod report;
mod scenario;
mod verify;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use latext_core::catalog::{named_catalog, CATALOG_MAX_SIZE};
use latext_core::free::{fl_leq, parse_term, LatticeTerm};
use latext_core::text::render_lattice;

use report::{Report, Status};
use verify::{verify_section, Caps, SECTIONS};

const DEFAULT_SEED: u64 = 0x5eed_1a77;

#[derive(Parser)]
#[command(name = "latext", version, about = "Finite lattice constructions and their checks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the verification suite for one section (2 to 7).
    Verify {
        #[arg(long)]
        section: u8,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long, default_value_t = Caps::default().max_size)]
        max_size: usize,
        #[arg(long, default_value_t = Caps::default().samples)]
        samples: usize,
        /// Write the JSON report here instead of stdout.
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Run scenario files.
    Run {
        #[arg(required = true)]
        scenarios: Vec<PathBuf>,
        #[arg(long)]
        report: Option<PathBuf>,
        /// Write each factorization with its manifest to `DIR/<scenario>.lat`.
        #[arg(long)]
        emit: Option<PathBuf>,
    },
    /// Write the lattices with at most `max_size` elements, one file each.
    Catalog {
        #[arg(long)]
        max_size: usize,
        #[arg(long)]
        out: PathBuf,
    },
    /// Free lattice terms.
    Term {
        #[command(subcommand)]
        op: TermOp,
    },
}

#[derive(Subcommand)]
enum TermOp {
    /// Decide `S ≤ T` in the free lattice on the given generators.
    Leq {
        s: String,
        t: String,
        #[arg(long, value_delimiter = ',', required = true)]
        gens: Vec<String>,
    },
}

fn emit(report: &Report, path: Option<&Path>) -> Result<(), String> {
    let json = report.to_json();
    match path {
        Some(p) => fs::write(p, json).map_err(|e| format!("cannot write {}: {e}", p.display())),
        None => {
            print!("{json}");
            Ok(())
        }
    }
}

fn finish(report: Report, path: Option<&Path>) -> ExitCode {
    if let Some(p) = path {
        for e in &report.entries {
            eprintln!("{:<5} {}", format!("{:?}", e.status).to_lowercase(), e.name);
        }
        eprintln!("report written to {}", p.display());
    }
    match emit(&report, path) {
        Ok(()) => ExitCode::from(report.status.exit_code() as u8),
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn run_files(paths: &[PathBuf], emit: Option<&Path>) -> Report {
    let mut entries = Vec::new();
    for p in paths {
        let name = p.display().to_string();
        match fs::read_to_string(p) {
            Ok(src) => entries.extend(scenario::run_source(&src, &name, emit)),
            Err(e) => entries.push(report::Entry::failed(name, format!("cannot read: {e}"), 0)),
        }
    }
    Report::new("run", DEFAULT_SEED, entries)
}

fn write_catalog(max_size: usize, out: &Path) -> Result<usize, String> {
    if max_size > CATALOG_MAX_SIZE {
        return Err(format!("max size {max_size} exceeds cap {CATALOG_MAX_SIZE}"));
    }
    let entries = named_catalog(max_size).map_err(|e| e.to_string())?;
    fs::create_dir_all(out).map_err(|e| format!("cannot create {}: {e}", out.display()))?;
    for (name, l) in &entries {
        let path = out.join(format!("{name}.lat"));
        fs::write(&path, render_lattice(name, l)).map_err(|e| format!("cannot write {}: {e}", path.display()))?;
    }
    Ok(entries.len())
}

fn term_leq(s: &str, t: &str, gens: &[String]) -> Result<bool, String> {
    let g: Vec<&str> = gens.iter().map(String::as_str).collect();
    let parse = |src: &str| -> Result<LatticeTerm, String> { parse_term(src, &g).map_err(|e| format!("{src:?}: {e}")) };
    Ok(fl_leq(&parse(s)?, &parse(t)?))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match cli.command {
        Command::Verify { section, seed, max_size, samples, report } => {
            if !SECTIONS.contains(&section) {
                eprintln!("error: section must be one of {SECTIONS:?}");
                return ExitCode::from(2);
            }
            if max_size > CATALOG_MAX_SIZE {
                eprintln!("error: max size {max_size} exceeds cap {CATALOG_MAX_SIZE}");
                return ExitCode::from(2);
            }
            let entries = verify_section(section, seed, Caps { max_size, samples });
            finish(Report::new(format!("verify --section {section}"), seed, entries), report.as_deref())
        }
        Command::Run { scenarios, report, emit } => finish(run_files(&scenarios, emit.as_deref()), report.as_deref()),
        Command::Catalog { max_size, out } => match write_catalog(max_size, &out) {
            Ok(n) => {
                println!("wrote {n} lattices to {}", out.display());
                ExitCode::SUCCESS
            }
            Err(msg) => {
                eprintln!("error: {msg}");
                ExitCode::from(2)
            }
        },
        Command::Term { op: TermOp::Leq { s, t, gens } } => match term_leq(&s, &t, &gens) {
            Ok(holds) => {
                println!("{holds}");
                ExitCode::from(if holds { Status::Pass } else { Status::Fail }.exit_code() as u8)
            }
            Err(msg) => {
                eprintln!("error: {msg}");
                ExitCode::from(2)
            }
        },
    }
}
