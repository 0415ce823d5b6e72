mod bench;
mod render;

use std::fmt;
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use manet_core::comanet::{
    check_connectivity, check_edge_feasibility, check_one_level, export_lp, link_graph, Assignment,
};
use manet_core::geometry::{DistanceMode, Energy, Space};
use manet_core::maned::{Maned, DEFAULT_BRUTE_FORCE_LIMIT};
use manet_core::netgen::{self, CostParams, GenerateParams, Network, DEFAULT_SECTOR_SIZE, DEFAULT_SPACE_SIDE};
use manet_core::solution::{format_arrow, SolutionFile};
use manet_core::{DeviceId, Error};

pub const EXIT_USAGE: u8 = 2;
const EXIT_IO: u8 = 3;
const EXIT_VALIDATION: u8 = 4;
const EXIT_NO_PATH: u8 = 5;

#[derive(Parser)]
#[command(name = "manet", version, about = "Minimum-energy routing in sectorized ad-hoc networks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a random network file.
    Generate(GenerateArgs),
    /// Find the cheapest path between two devices.
    Solve(SolveArgs),
    /// Check a solution file against a network.
    Validate(ValidateArgs),
    /// Write the optimization model as an LP file.
    Export(ExportArgs),
    /// Draw a network, and optionally a solution, as SVG.
    Render(RenderArgs),
    /// Time generation and solving over a range of sizes.
    Bench(bench::BenchArgs),
}

#[derive(clap::Args)]
struct GenerateArgs {
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
    devices: u32,
    #[arg(long, default_value_t = DEFAULT_SPACE_SIDE, value_parser = clap::value_parser!(u32).range(1..))]
    width: u32,
    #[arg(long, default_value_t = DEFAULT_SPACE_SIDE, value_parser = clap::value_parser!(u32).range(1..))]
    height: u32,
    #[arg(long, default_value_t = DEFAULT_SECTOR_SIZE, value_parser = clap::value_parser!(u32).range(1..))]
    sector_size: u32,
    #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(u32).range(1..=16))]
    levels: u32,
    /// Random seed; drawn from the system when omitted and printed either way.
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long, default_value_t = netgen::DEFAULT_ALPHA)]
    alpha: f64,
    #[arg(long, default_value_t = netgen::DEFAULT_SWING_COST)]
    cb: Energy,
    #[arg(long, default_value_t = netgen::DEFAULT_DESTINATION_COST)]
    cd: Energy,
    #[arg(long)]
    out: PathBuf,
}

/// Options shared by every command that reads a network.
#[derive(clap::Args)]
struct NetworkArgs {
    #[arg(long)]
    network: PathBuf,
    #[arg(long, value_enum, default_value_t = Mode::Sector)]
    mode: Mode,
    /// Override the swing cost stored in the network file.
    #[arg(long)]
    cb: Option<Energy>,
    /// Override the destination cost stored in the network file.
    #[arg(long)]
    cd: Option<Energy>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Sector,
    Euclidean,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(clap::Args)]
struct SolveArgs {
    #[command(flatten)]
    net: NetworkArgs,
    #[arg(long)]
    source: DeviceId,
    #[arg(long)]
    dest: DeviceId,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Write the output here instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Cross-check against exhaustive search on small networks.
    #[arg(long)]
    oracle: bool,
}

#[derive(clap::Args)]
struct ValidateArgs {
    #[command(flatten)]
    net: NetworkArgs,
    #[arg(long)]
    solution: PathBuf,
}

#[derive(clap::Args)]
struct ExportArgs {
    #[command(flatten)]
    net: NetworkArgs,
    #[arg(long)]
    source: DeviceId,
    #[arg(long)]
    dest: DeviceId,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(clap::Args)]
struct RenderArgs {
    #[command(flatten)]
    net: NetworkArgs,
    /// Solution file whose path is drawn in bold.
    #[arg(long)]
    solution: Option<PathBuf>,
    #[arg(long)]
    out: Option<PathBuf>,
    /// Also write the graph in DOT format.
    #[arg(long)]
    dot: Option<PathBuf>,
}

/// An error with the process exit code it maps to.
#[derive(Debug)]
pub struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    pub fn new(code: u8, message: impl Into<String>) -> Self {
        Failure {
            code,
            message: message.into(),
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match &e {
            Error::Io(_) | Error::Parse { .. } => EXIT_IO,
            Error::NoFeasiblePath { .. } => EXIT_NO_PATH,
            Error::Validation(_) | Error::OutOfBounds { .. } => EXIT_VALIDATION,
            Error::InvalidLevel(_) | Error::Config(_) | Error::UnknownDevice(_) | Error::LimitExceeded { .. } => {
                EXIT_USAGE
            }
        };
        let message = match e {
            Error::NoFeasiblePath { origin, destination } => {
                format!("no feasible path from {origin} to {destination}")
            }
            other => other.to_string(),
        };
        Failure::new(code, message)
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::new(EXIT_IO, e.to_string())
    }
}

pub type CliResult<T = ()> = Result<T, Failure>;

fn with_path<T>(path: &Path, r: manet_core::Result<T>) -> CliResult<T> {
    r.map_err(|e| {
        let mut f = Failure::from(e);
        f.message = format!("{}: {}", path.display(), f.message);
        f
    })
}

fn load_network(args: &NetworkArgs) -> CliResult<Network> {
    let mut net = with_path(&args.network, netgen::load_from_path(&args.network))?;
    net = net.with_distance_mode(match args.mode {
        Mode::Sector => DistanceMode::Sector,
        Mode::Euclidean => DistanceMode::Euclidean,
    });
    if let Some(cb) = args.cb {
        net = net.with_swing_cost(cb);
    }
    if let Some(cd) = args.cd {
        net = net.with_destination_cost(cd);
    }
    Ok(net)
}

fn load_solution(path: &Path) -> CliResult<SolutionFile> {
    let file = fs::File::open(path).map_err(|e| Failure::new(EXIT_IO, format!("{}: {e}", path.display())))?;
    with_path(path, SolutionFile::load(io::BufReader::new(file)))
}

fn emit(out: Option<&Path>, text: &str) -> CliResult {
    match out {
        Some(path) => fs::write(path, text).map_err(|e| Failure::new(EXIT_IO, format!("{}: {e}", path.display()))),
        None => {
            match io::stdout().lock().write_all(text.as_bytes()) {
                Err(e) if e.kind() != io::ErrorKind::BrokenPipe => Err(e.into()),
                _ => Ok(()),
            }
        }
    }
}

fn generate(args: GenerateArgs) -> CliResult {
    let seed = args.seed.unwrap_or_else(rand::random);
    let params = GenerateParams {
        devices: args.devices as usize,
        space: Space {
            x: args.width,
            y: args.height,
            z: 0,
        },
        sector_size: args.sector_size,
        levels: args.levels,
        seed,
        costs: CostParams {
            alpha: args.alpha,
            swing_cost: args.cb,
            destination_cost: args.cd,
        },
    };
    let net = netgen::generate(&params)?;
    with_path(&args.out, netgen::save_to_path(&net, &args.out))?;
    println!("generated {} devices with seed {seed} -> {}", net.len(), args.out.display());
    Ok(())
}

fn solve(args: SolveArgs) -> CliResult {
    let net = load_network(&args.net)?;
    let solver = Maned::new(&net);
    let path = solver.solve(args.source, args.dest)?;
    let text = match args.format {
        Format::Text => format!("{}\ntotal: {}\n", format_arrow(&net, &path), path),
        Format::Json => SolutionFile::new(&path, &net).to_json(),
    };
    emit(args.out.as_deref(), &text)?;
    if args.oracle {
        if net.len() > DEFAULT_BRUTE_FORCE_LIMIT {
            eprintln!("oracle: skipped ({} devices, limit {DEFAULT_BRUTE_FORCE_LIMIT})", net.len());
        } else {
            let reference = solver.brute_force(args.source, args.dest, DEFAULT_BRUTE_FORCE_LIMIT)?;
            if reference != path {
                return Err(Failure::new(
                    EXIT_VALIDATION,
                    format!("oracle: mismatch (exhaustive search gives {reference})"),
                ));
            }
            // keep standard output clean for --format json
            if args.format == Format::Json && args.out.is_none() {
                eprintln!("oracle: match");
            } else {
                println!("oracle: match");
            }
        }
    }
    Ok(())
}

fn validate(args: ValidateArgs) -> CliResult {
    let net = load_network(&args.net)?;
    let sol = load_solution(&args.solution)?;
    let net = net.with_swing_cost(sol.cb).with_destination_cost(sol.cd);
    let assignment = Assignment::declared_by(&net, &sol.hops, sol.destination);

    let mut ok = true;
    let one_level = check_one_level(&assignment, &net);
    ok &= one_level.is_ok();
    print_check("one level per device", one_level.map_err(|v| format!("devices {:?}", v.items)));

    let energy = check_edge_feasibility(&assignment, &net);
    ok &= energy.is_ok();
    print_check("link energy", energy.map_err(|v| format!("links {:?}", v.items)));

    let connected = match link_graph(&assignment, &net) {
        Ok(g) => check_connectivity(&g, sol.source, sol.destination).map_err(|v| format!("pairs {:?}", v.items)),
        Err(e) => Err(e.to_string()),
    };
    ok &= connected.is_ok();
    print_check("source reaches destination", connected);

    let cost = match sol.evaluate(&net) {
        Ok(path) if path.total_cost == sol.total_cost && path.swings == sol.swings => Ok(()),
        Ok(path) => Err(format!(
            "recorded {} with {} swings, recomputed {} with {}",
            sol.total_cost, sol.swings, path.total_cost, path.swings
        )),
        Err(e) => Err(e.to_string()),
    };
    ok &= cost.is_ok();
    print_check("cost", cost);

    if ok {
        Ok(())
    } else {
        Err(Failure::new(EXIT_VALIDATION, "solution does not satisfy the model"))
    }
}

fn print_check(name: &str, outcome: Result<(), String>) {
    match outcome {
        Ok(()) => println!("{name}: pass"),
        Err(detail) => println!("{name}: FAIL {detail}"),
    }
}

fn export(args: ExportArgs) -> CliResult {
    let net = load_network(&args.net)?;
    net.index_of(args.source)?;
    net.index_of(args.dest)?;
    let mut buf = Vec::new();
    export_lp(&net, args.source, args.dest, &mut buf)?;
    emit(args.out.as_deref(), &String::from_utf8_lossy(&buf))
}

fn render_cmd(args: RenderArgs) -> CliResult {
    let net = load_network(&args.net)?;
    let path = match &args.solution {
        Some(p) => {
            let sol = load_solution(p)?;
            Some(with_path(p, sol.evaluate(&net))?)
        }
        None => None,
    };
    emit(args.out.as_deref(), &render::svg(&net, path.as_ref()))?;
    if let Some(dot) = &args.dot {
        emit(Some(dot), &render::dot(&net, path.as_ref()))?;
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { 0 });
        }
    };
    let result = match cli.command {
        Command::Generate(a) => generate(a),
        Command::Solve(a) => solve(a),
        Command::Validate(a) => validate(a),
        Command::Export(a) => export(a),
        Command::Render(a) => render_cmd(a),
        Command::Bench(a) => bench::run(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {f}");
            ExitCode::from(f.code)
        }
    }
}
