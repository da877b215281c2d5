use std::fs::File;
use std::io::{BufReader, BufWriter};
use std::ops::RangeInclusive;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use tetmorton::tables::Dim;
use tetmorton::{io, perf, vtk, CoarseMesh, Execution, Forest, MeshConfig, TetId};

/// Build, adapt, validate, benchmark and export simplicial Morton forests.
#[derive(Debug, Parser)]
#[command(name = "tetmorton", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Build a partitioned uniform forest and write it as a dump.
    New(NewArgs),
    /// Uniform forest followed by recursive refinement of types 0 and 3.
    AdaptFractal(FractalArgs),
    /// Check sortedness, leaf property and index validity of a dump.
    Validate {
        #[arg(long = "in")]
        input: PathBuf,
    },
    /// Time uniform construction over a range of levels.
    Bench(BenchArgs),
    /// Write a dump as a legacy ASCII VTK unstructured grid.
    Export {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Debug, Args)]
struct MeshArgs {
    #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(u32).range(2..=3))]
    dim: u32,
    /// Number of trees; ignored when --coarse is given.
    #[arg(long, default_value_t = 1)]
    trees: u32,
    /// Coarse mesh file with the header `dim K`.
    #[arg(long)]
    coarse: Option<PathBuf>,
    /// Maximum refinement level L (defaults to the largest supported).
    #[arg(long)]
    max_level: Option<u8>,
    /// Run on the calling thread only.
    #[arg(long)]
    sequential: bool,
}

impl MeshArgs {
    fn resolve(&self) -> Result<(CoarseMesh, MeshConfig)> {
        let coarse = match &self.coarse {
            Some(path) => {
                let text = std::fs::read_to_string(path)
                    .with_context(|| format!("reading {}", path.display()))?;
                io::parse_coarse_mesh(&text)?
            }
            None => CoarseMesh::new(Dim::from_u32(self.dim)?, self.trees)?,
        };
        let config = match self.max_level {
            Some(l) => MeshConfig::new(coarse.dim(), l)?,
            None => MeshConfig::with_default_level(coarse.dim()),
        };
        Ok((coarse, config))
    }

    fn execution(&self) -> Execution {
        if self.sequential {
            Execution::Sequential
        } else {
            Execution::Parallel
        }
    }
}

#[derive(Debug, Args)]
struct NewArgs {
    #[command(flatten)]
    mesh: MeshArgs,
    #[arg(long)]
    level: u8,
    #[arg(long, default_value_t = 1)]
    ranks: u32,
    #[arg(long, default_value_t = 0)]
    rank: u32,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct FractalArgs {
    #[command(flatten)]
    mesh: MeshArgs,
    /// Uniform starting level k.
    #[arg(long)]
    init: u8,
    /// Refinement depth beyond k.
    #[arg(long, default_value_t = 5)]
    extra: u8,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct BenchArgs {
    #[command(flatten)]
    mesh: MeshArgs,
    /// Inclusive level range, e.g. `5..8`.
    #[arg(long, value_parser = parse_levels)]
    levels: RangeInclusive<u8>,
    #[arg(long, default_value_t = 3)]
    repeat: u32,
}

fn parse_levels(s: &str) -> Result<RangeInclusive<u8>, String> {
    let (a, b) = s
        .split_once("..")
        .ok_or_else(|| format!("expected `a..b`, got `{s}`"))?;
    let b = b.strip_prefix('=').unwrap_or(b);
    let a: u8 = a.trim().parse().map_err(|_| format!("bad level `{a}`"))?;
    let b: u8 = b.trim().parse().map_err(|_| format!("bad level `{b}`"))?;
    if a > b {
        return Err(format!("empty level range {a}..{b}"));
    }
    Ok(a..=b)
}

/// Outcome of a command that ran to completion.
enum Status {
    Ok,
    Invalid,
}

fn write_dump(forest: &Forest, path: &Path) -> Result<()> {
    let file = File::create(path).with_context(|| format!("creating {}", path.display()))?;
    io::write_forest(forest, file)?;
    Ok(())
}

fn read_dump(path: &Path) -> Result<Forest> {
    let file = File::open(path).with_context(|| format!("opening {}", path.display()))?;
    Ok(io::read_forest(BufReader::new(file))?)
}

fn cmd_new(args: &NewArgs) -> Result<Status> {
    let (coarse, config) = args.mesh.resolve()?;
    let start = Instant::now();
    let forest = Forest::new_uniform_with(
        args.mesh.execution(),
        coarse,
        config,
        args.level,
        args.ranks,
        args.rank,
    )?;
    let secs = start.elapsed().as_secs_f64();
    println!("elements: {}", forest.element_count());
    println!("seconds: {secs:.6}");
    if let Some(out) = &args.out {
        write_dump(&forest, out)?;
    }
    Ok(Status::Ok)
}

fn cmd_adapt_fractal(args: &FractalArgs) -> Result<Status> {
    let (coarse, config) = args.mesh.resolve()?;
    if config.dim() != Dim::Three {
        bail!("adapt-fractal is defined for tetrahedra only (--dim 3)");
    }
    let fine = args.init as u32 + args.extra as u32;
    let exec = args.mesh.execution();
    let start = Instant::now();
    let forest = Forest::new_uniform_with(exec, coarse, config, args.init, 1, 0)?;
    let built = start.elapsed().as_secs_f64();
    let start = Instant::now();
    let (forest, stats) = forest.adapt_with(exec, true, |_, e: &[TetId]| {
        (matches!(e[0].ty.0, 0 | 3) && (e[0].level as u32) < fine) as i32
    });
    let adapted = start.elapsed().as_secs_f64();
    let n = forest.element_count();
    println!("elements: {n}");
    println!("new seconds: {built:.6}");
    println!("adapt seconds: {adapted:.6}");
    println!("adapt seconds per element: {:.3e}", adapted / n as f64);
    println!("refined: {}", stats.refined);
    println!("clamped verdicts: {}", stats.clamped());
    if let Some(out) = &args.out {
        write_dump(&forest, out)?;
    }
    Ok(Status::Ok)
}

fn cmd_validate(input: &Path) -> Result<Status> {
    let forest = read_dump(input)?;
    let r = forest.validate();
    println!("elements: {}", r.elements);
    println!("malformed: {}", r.malformed);
    println!("outside root: {}", r.outside_root);
    println!("invalid code: {}", r.invalid_code);
    println!("unsorted: {}", r.unsorted);
    println!("not leaf: {}", r.not_leaf);
    println!("violations: {}", r.violations());
    Ok(if r.is_ok() {
        Status::Ok
    } else {
        Status::Invalid
    })
}

fn cmd_bench(args: &BenchArgs) -> Result<Status> {
    let (coarse, config) = args.mesh.resolve()?;
    let timings = perf::time_levels(
        args.mesh.execution(),
        coarse,
        config,
        args.levels.clone(),
        args.repeat,
    )?;
    let factors = perf::time_factors(&timings);
    println!(
        "{:>5} {:>14} {:>12} {:>8}",
        "level", "elements", "seconds", "factor"
    );
    for (i, t) in timings.iter().enumerate() {
        let factor = match i {
            0 => "-".to_string(),
            _ => format!("{:.2}", factors[i - 1]),
        };
        println!(
            "{:>5} {:>14} {:>12.6} {:>8}",
            t.level,
            t.elements,
            t.time.as_secs_f64(),
            factor
        );
    }
    Ok(Status::Ok)
}

fn cmd_export(input: &Path, out: &Path) -> Result<Status> {
    let forest = read_dump(input)?;
    let file = File::create(out).with_context(|| format!("creating {}", out.display()))?;
    vtk::write_vtk(&forest, BufWriter::new(file))?;
    println!("cells: {}", forest.element_count());
    Ok(Status::Ok)
}

fn run(cli: &Cli) -> Result<Status> {
    match &cli.command {
        Command::New(a) => cmd_new(a),
        Command::AdaptFractal(a) => cmd_adapt_fractal(a),
        Command::Validate { input } => cmd_validate(input),
        Command::Bench(a) => cmd_bench(a),
        Command::Export { input, out } => cmd_export(input, out),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(Status::Ok) => ExitCode::SUCCESS,
        Ok(Status::Invalid) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
