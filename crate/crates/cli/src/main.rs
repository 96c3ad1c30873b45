mod report;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use angleset_core::design::{analyze, file};
use angleset_core::jacobi::{Eps, GeometryParams};
use angleset_core::rankforms::{rank_profile, scan_collisions};
use angleset_core::scheme::analyze_scheme;
use angleset_core::{catalog, Error};
use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use report::{AnalysisReport, RanksReport, ScanReport};

#[derive(Parser)]
#[command(name = "angleset", version)]
#[command(about = "Exact angle-set analysis of tight designs on spheres and projective spaces")]
struct Cli {
    /// Output format
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Write output to FILE instead of stdout
    #[arg(short = 'o', long = "output", global = true, value_name = "FILE")]
    output: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Angle set, strength, annihilator and tightness of a design file
    Analyze { file: PathBuf },
    /// Full analysis plus the idempotent basis, ranks and rationality verdict
    Scheme { file: PathBuf },
    /// Closed-form idempotent ranks for a tight design with given parameters
    Ranks {
        #[arg(long)]
        rank: u32,
        #[arg(long)]
        degree: u32,
        #[arg(long)]
        s: u32,
        #[arg(long)]
        eps: u32,
    },
    /// Rank collisions over all admissible parameter cells
    Scan {
        #[arg(long, value_delimiter = ',', default_value = "1,2,4,8")]
        degrees: Vec<u32>,
        #[arg(long, default_value_t = 50)]
        max_rank: u32,
        #[arg(long, default_value_t = 50)]
        max_s: u32,
    },
    /// Write a catalog design as a design file (polygon-N, simplex-N,
    /// cross-polytope-N, icosahedron, e8, jordan-frame-RHO-D, sic-RHO)
    Catalog { name: String },
}

fn emit<T: Serialize>(value: &T, text: impl FnOnce(&T) -> String, format: Format) -> String {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(value).expect("reports serialize");
            s.push('\n');
            s
        }
        Format::Text => text(value),
    }
}

fn analysis(path: &Path, with_scheme: bool, format: Format) -> Result<String, Error> {
    let design = file::read_design_file(path)?;
    let a = analyze(&design)?;
    let scheme = if with_scheme {
        Some(analyze_scheme(&design, &a.profile, &a.annihilator)?)
    } else {
        None
    };
    let report = AnalysisReport::new(&design, &a, scheme.as_ref());
    Ok(emit(&report, AnalysisReport::to_text, format))
}

fn run(cli: &Cli) -> Result<String, Error> {
    match &cli.command {
        Command::Analyze { file } => analysis(file, false, cli.format),
        Command::Scheme { file } => analysis(file, true, cli.format),
        Command::Ranks { rank, degree, s, eps } => {
            let geom = GeometryParams::new(*rank, *degree)?;
            let profile = rank_profile(&geom, *s, Eps::from_value(*eps)?)?;
            Ok(emit(&RanksReport::from(&profile), RanksReport::to_text, cli.format))
        }
        Command::Scan {
            degrees,
            max_rank,
            max_s,
        } => {
            let mut degrees = degrees.clone();
            degrees.sort_unstable();
            degrees.dedup();
            let scan = scan_collisions(&degrees, *max_rank, *max_s);
            let report = ScanReport::new(degrees, *max_rank, *max_s, scan);
            Ok(emit(&report, ScanReport::to_text, cli.format))
        }
        Command::Catalog { name } => {
            let entry = catalog::by_name(name)?;
            Ok(file::design_to_json(&entry.design))
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    let out = match run(&cli) {
        Ok(out) => out,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(if e.is_internal() { 2 } else { 1 });
        }
    };
    match &cli.output {
        Some(path) => {
            if let Err(e) = fs::write(path, out) {
                eprintln!("error: {}: {e}", path.display());
                return ExitCode::from(1);
            }
        }
        None => print!("{out}"),
    }
    ExitCode::SUCCESS
}
