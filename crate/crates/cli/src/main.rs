use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use log::{info, warn};
use stairmesh::io::{self, ContourFile};
use stairmesh::{
    boundary_distance_profile, classify_nodes, refinement_study, trace_contour, Contour, Grid,
};

#[derive(Parser)]
#[command(
    name = "stairmesh",
    version,
    about = "Staircase grid approximation of 2D contours"
)]
struct Cli {
    /// Log progress to standard error (repeat for more detail).
    #[arg(short, long, action = clap::ArgAction::Count, global = true)]
    verbose: u8,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Trace one grid and write the classified mesh.
    Trace(TraceArgs),
    /// Area and node counts over several n x n refinement levels.
    Study(StudyArgs),
    /// Distance from each chain node to the given contour.
    Distances(DistancesArgs),
}

#[derive(Args)]
struct GridArgs {
    /// Contour file (.csv or .json).
    #[arg(long)]
    input: PathBuf,
    /// Partitions along x.
    #[arg(long)]
    nx: usize,
    /// Partitions along y.
    #[arg(long)]
    ny: usize,
    /// Margin added around the contour's bounding box.
    #[arg(long, default_value_t = 0.0)]
    padding: f64,
}

#[derive(Args)]
struct TraceArgs {
    #[command(flatten)]
    grid: GridArgs,
    /// Mesh CSV destination; standard output when omitted.
    #[arg(long)]
    out_mesh: Option<PathBuf>,
    /// Optional SVG plot of the contour, chain and nodes.
    #[arg(long)]
    out_svg: Option<PathBuf>,
}

#[derive(Args)]
struct StudyArgs {
    /// Contour file (.csv or .json).
    #[arg(long)]
    input: PathBuf,
    /// Comma-separated partition counts, e.g. 50,100,200.
    #[arg(long, value_delimiter = ',', required = true)]
    levels: Vec<usize>,
    /// Study CSV destination; standard output when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct DistancesArgs {
    #[command(flatten)]
    grid: GridArgs,
    /// Distance CSV destination; standard output when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

/// Exit 1: bad input. Exit 2: the pipeline itself failed.
enum Failure {
    Input(String),
    Trace(String),
}

impl Failure {
    fn input(e: impl std::fmt::Display) -> Self {
        Failure::Input(e.to_string())
    }

    fn trace(e: impl std::fmt::Display) -> Self {
        Failure::Trace(e.to_string())
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
    let level = match cli.verbose {
        0 => log::LevelFilter::Warn,
        1 => log::LevelFilter::Info,
        _ => log::LevelFilter::Debug,
    };
    env_logger::Builder::new()
        .filter_level(level)
        .format_timestamp(None)
        .target(env_logger::Target::Stderr)
        .init();

    let result = match cli.command {
        Command::Trace(args) => run_trace(args),
        Command::Study(args) => run_study(args),
        Command::Distances(args) => run_distances(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Trace(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn load(path: &Path) -> Result<Contour, Failure> {
    io::load_contour(&ContourFile::from_path(path)).map_err(Failure::input)
}

fn grid_for(args: &GridArgs) -> Result<(Contour, Grid), Failure> {
    let contour = load(&args.input)?;
    let grid = Grid::around(&contour, args.nx, args.ny, args.padding).map_err(Failure::input)?;
    Ok((contour, grid))
}

fn emit(out: Option<&Path>, bytes: &[u8]) -> Result<(), Failure> {
    match out {
        Some(path) => io::write_file(path, bytes).map_err(Failure::input),
        None => std::io::stdout()
            .lock()
            .write_all(bytes)
            .map_err(|e| Failure::input(format!("writing standard output: {e}"))),
    }
}

fn run_trace(args: TraceArgs) -> Result<(), Failure> {
    let (contour, grid) = grid_for(&args.grid)?;
    let approx = trace_contour(&contour, &grid).map_err(Failure::trace)?;
    let classes = classify_nodes(&grid, &approx).map_err(Failure::trace)?;
    info!(
        "chain of {} nodes: {} boundary, {} interior",
        approx.len(),
        classes.boundary_count(),
        classes.interior_count()
    );
    let mut mesh = Vec::new();
    io::write_mesh_to(&mut mesh, &classes, &approx).expect("writing to memory");
    emit(args.out_mesh.as_deref(), &mesh)?;
    if let Some(svg) = &args.out_svg {
        io::write_svg(&contour, &approx, &classes, svg).map_err(Failure::input)?;
    }
    Ok(())
}

fn run_study(args: StudyArgs) -> Result<(), Failure> {
    let contour = load(&args.input)?;
    if let Some(&n) = args.levels.iter().find(|&&n| n < 2) {
        return Err(Failure::Input(format!(
            "level {n} is below the minimum of 2 partitions"
        )));
    }
    let mut rows = Vec::new();
    let mut failed = 0;
    for level in refinement_study(&contour, &args.levels) {
        match level.row {
            Ok(row) => rows.push(row),
            Err(e) => {
                warn!("level {} failed", level.n);
                eprintln!("error: level {}: {e}", level.n);
                failed += 1;
            }
        }
    }
    let mut csv = Vec::new();
    io::write_study_csv(&mut csv, &rows).expect("writing to memory");
    emit(args.out.as_deref(), &csv)?;
    if failed > 0 {
        return Err(Failure::Trace(format!(
            "{failed} of {} levels failed",
            args.levels.len()
        )));
    }
    Ok(())
}

fn run_distances(args: DistancesArgs) -> Result<(), Failure> {
    let (contour, grid) = grid_for(&args.grid)?;
    let approx = trace_contour(&contour, &grid).map_err(Failure::trace)?;
    let profile = boundary_distance_profile(&approx, &contour);
    info!(
        "max distance {:e}, mean {:e}",
        profile.max(),
        profile.mean()
    );
    let mut csv = Vec::new();
    io::write_distances_csv(&mut csv, &profile).expect("writing to memory");
    emit(args.out.as_deref(), &csv)
}
