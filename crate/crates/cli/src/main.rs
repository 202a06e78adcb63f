//! `geodome` command-line front end.

mod bench;
mod svg;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use geodome::constructions::InstanceRecipe;
use geodome::escape::{self, Method};
use geodome::tri::{graph_distortion, triangulation_from_domain};
use geodome::{distortion, geod, random_family, Error, Family, Point, PolygonalDomain, SamplerConfig};

#[derive(Parser)]
#[command(name = "geodome", version, about = "Geodesic vs Euclidean diameters of polygonal domains")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check that a domain file is well formed and valid.
    Validate { file: PathBuf },
    /// Geodesic distance between two points.
    Geod {
        file: PathBuf,
        #[arg(long, value_parser = parse_point)]
        s: Point,
        #[arg(long, value_parser = parse_point)]
        t: Point,
    },
    /// Certified lower bound on the distortion.
    Distortion {
        file: PathBuf,
        /// Outer-boundary sample spacing relative to diam_2 (0 disables).
        #[arg(long, default_value_t = 1.0 / 64.0)]
        spacing: f64,
    },
    /// Escape path from a point to the outer boundary.
    Escape {
        file: PathBuf,
        #[arg(long, value_parser = parse_point)]
        s: Point,
        /// greedy, straight, fat, grid, segment, surrogate, staircase or auto.
        #[arg(long, default_value = "auto")]
        method: String,
        /// Initial greedy direction in radians.
        #[arg(long)]
        dir: Option<f64>,
    },
    /// Generate an instance and write it with a sidecar recipe.
    Generate {
        /// nested, greedy-hard, fat, segments, axis-rects or bounded-delta.
        #[arg(long)]
        family: String,
        #[arg(long, default_value_t = 3)]
        k: usize,
        #[arg(long, default_value_t = 10)]
        h: usize,
        #[arg(long, default_value_t = 0.5)]
        lambda: f64,
        #[arg(long)]
        delta: Option<f64>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Constrained Delaunay triangulation of the hole diametral segments.
    Triangulate {
        file: PathBuf,
        /// Write the triangulation here instead of standard output.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run an experiment spec and write results.csv and growth.svg.
    Bench {
        #[arg(long)]
        spec: PathBuf,
        #[arg(long)]
        out: PathBuf,
        /// Write 0 in the wall_ms column.
        #[arg(long)]
        no_timing: bool,
    },
}

/// Failure with its exit code: 1 for invalid input, 2 for usage errors.
pub struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure { code: 2, message: message.into() }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::InvalidParameter(_) => 2,
            _ => 1,
        };
        Failure { code, message: e.to_string() }
    }
}

fn parse_point(s: &str) -> Result<Point, String> {
    let (x, y) = s.split_once(',').ok_or_else(|| format!("expected x,y but got '{s}'"))?;
    let x: f64 = x.trim().parse().map_err(|e| format!("bad x in '{s}': {e}"))?;
    let y: f64 = y.trim().parse().map_err(|e| format!("bad y in '{s}': {e}"))?;
    Ok(Point::new(x, y))
}

fn load(path: &Path) -> Result<PolygonalDomain, Failure> {
    PolygonalDomain::load(path).map_err(|e| Failure { code: 1, message: format!("{}: {e}", path.display()) })
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Validate { file } => {
            let d = load(&file)?;
            println!("valid: {} holes, diam_2 = {:?}", d.hole_count(), d.euclidean_diameter());
        }
        Command::Geod { file, s, t } => {
            let d = load(&file)?;
            let r = geod(&d, s, t)?;
            println!("length = {:?}", r.length);
            println!("path = {}", serde_json::to_string(&r.path.points).expect("points serialize"));
        }
        Command::Distortion { file, spacing } => {
            let d = load(&file)?;
            let cfg = SamplerConfig { boundary_spacing: spacing, ..SamplerConfig::default() };
            let r = distortion(&d, &cfg)?;
            println!("diam_2 = {:?}", r.euclidean_diameter);
            println!("geod_lb = {:?}", r.geodesic_diameter_lb);
            println!("rho_lb = {:?}", r.rho_lb);
            println!("candidates = {}", r.candidate_count);
            println!("witness = {}", serde_json::to_string(&r.witness_pair).expect("points serialize"));
        }
        Command::Escape { file, s, method, dir } => {
            let d = load(&file)?;
            let r = if method == "auto" {
                escape::auto_escape(&d, s)?
            } else {
                let m: Method = method.parse()?;
                escape::escape(&d, s, m, dir.map(Point::from_angle))?
            };
            println!("method = {}", r.method);
            println!("length = {:?}", r.length);
            println!("certificate = {:?}", r.bound_certificate);
            println!("diam_2 = {:?}", d.euclidean_diameter());
            println!("path = {}", serde_json::to_string(&r.path.points).expect("points serialize"));
        }
        Command::Generate { family, k, h, lambda, delta, seed, out } => {
            let family: Family = family.parse()?;
            let recipe = InstanceRecipe { family, k, h, lambda, delta, seed };
            let d = random_family(&recipe)?;
            d.save(&out)?;
            let sidecar = sidecar_path(&out);
            std::fs::write(&sidecar, serde_json::to_string_pretty(&recipe).expect("recipe serializes"))
                .map_err(|e| Failure { code: 1, message: format!("{}: {e}", sidecar.display()) })?;
            println!("wrote {} ({} holes)", out.display(), d.hole_count());
        }
        Command::Triangulate { file, out } => {
            let d = load(&file)?;
            let t = triangulation_from_domain(&d)?;
            match out {
                Some(path) => {
                    t.save(&path)?;
                    println!("vertices = {}", t.vertex_count());
                    println!("faces = {}", t.face_count());
                    println!("rho_T = {:?}", graph_distortion(&t)?);
                }
                None => println!("{}", t.to_json()),
            }
        }
        Command::Bench { spec, out, no_timing } => {
            let text =
                std::fs::read_to_string(&spec).map_err(|e| Failure::usage(format!("{}: {e}", spec.display())))?;
            let spec: bench::ExperimentSpec = serde_json::from_str(&text)
                .map_err(|e| Failure { code: 1, message: format!("{}: {e}", spec.display()) })?;
            let summary = bench::run_benchmark(&spec, &out, !no_timing)?;
            println!("rows = {}", summary.rows);
            println!("failures = {}", summary.failures);
            match summary.slope {
                Some(s) => println!("slope = {s:?}"),
                None => println!("slope = n/a"),
            }
        }
    }
    Ok(())
}

fn sidecar_path(out: &Path) -> PathBuf {
    let mut name = out.file_name().map(|n| n.to_os_string()).unwrap_or_default();
    name.push(".recipe.json");
    out.with_file_name(name)
}

fn configure_threads() {
    if let Some(n) = std::env::var("GEODOME_THREADS").ok().and_then(|v| v.parse::<usize>().ok()) {
        // ignore the error when a pool already exists
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global();
    }
}

fn main() -> ExitCode {
    configure_threads();
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
