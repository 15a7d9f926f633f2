mod report;

use std::fs::File;
use std::io::{self, BufWriter, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use quintic_flow::basins::{
    attractor_statistics, attractors_1d, render_1d, render_plane, s3_plane_attractors, write_ppm, GridSpec, PlaneChart,
    Portrait, DEFAULT_MAX_ITER, DEFAULT_RESOLUTION,
};
use quintic_flow::checks::{self, CheckOptions};
use quintic_flow::equivariants::EquivariantMap;
use quintic_flow::maps1d::{restricted_map, RESTRICTED_MAP_NAMES};
use quintic_flow::param::KParams;
use quintic_flow::solver::{resolvent_rk, solve, IterateOptions, SolveOptions};
use quintic_flow::special::named_orbit;
use quintic_flow::{Error, C};

use report::{BasinStats, SolveInput, SolveOutput};

/// Environment variable capping the worker threads used for rendering.
const THREADS_ENV: &str = "QUINTIC_FLOW_THREADS";

/// Plane portraits offered next to the one-variable maps.
const PLANE_MAPS: [&str; 1] = ["f6_plane"];

#[derive(Parser, Debug)]
#[command(name = "quintic-flow", version, about = "Solve quintics through S5-equivariant dynamics on CP3")]
struct Cli {
    /// Seed for every random choice (starts, regularizing maps, samples).
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Solve a monic quintic given as JSON {"coefficients": [[re, im], ...]} (a1..a5).
    Solve(SolveArgs),
    /// Run the oracle suite.
    Verify(VerifyArgs),
    /// Print a special orbit as CSV.
    Orbits(OrbitsArgs),
    /// Render a basin portrait as binary PPM.
    Basins(BasinsArgs),
    /// Print the coefficients of the resolvent R_K.
    Resolvent(ResolventArgs),
}

#[derive(Args, Debug)]
struct SolveArgs {
    /// Input file; standard input when omitted or "-".
    input: Option<PathBuf>,
    /// Write the report here instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Convergence tolerance on the chordal step.
    #[arg(long, default_value_t = IterateOptions::default().tol)]
    tol: f64,
    #[arg(long, default_value_t = IterateOptions::default().max_iter)]
    max_iter: usize,
    #[arg(long, default_value_t = IterateOptions::default().max_restarts)]
    max_restarts: usize,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    /// Comma-separated groups: group, configuration, invariants, equivariance, conformance, param.
    #[arg(long)]
    filter: Option<String>,
    /// Add this amount to one coefficient of Phi2K before the family oracles,
    /// to see the suite catch a corrupted table.
    #[arg(long, allow_hyphen_values = true)]
    perturb_phi2k: Option<f64>,
}

#[derive(Args, Debug)]
struct OrbitsArgs {
    /// Point family such as p5, p20, q24 or a descriptor such as q20_12_1.
    name: String,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct BasinsArgs {
    /// A restricted map (dodeca11, oct5_conic, f6_l15, ...) or f6_plane.
    #[arg(long)]
    map: String,
    /// cx,cy,w,h of the window; defaults to a square around the origin.
    #[arg(long, allow_hyphen_values = true)]
    window: Option<String>,
    #[arg(long, default_value_t = DEFAULT_RESOLUTION)]
    res: usize,
    #[arg(long, default_value_t = DEFAULT_MAX_ITER)]
    max_iter: usize,
    #[arg(long)]
    out: PathBuf,
    /// JSON sidecar with basin fractions.
    #[arg(long)]
    stats: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct ResolventArgs {
    /// K1 as "re" or "re,im".
    #[arg(long, allow_hyphen_values = true)]
    k1: String,
    #[arg(long, allow_hyphen_values = true)]
    k2: String,
    #[arg(long, allow_hyphen_values = true)]
    k3: String,
}

/// A failure with the exit code it maps to.
#[derive(Debug)]
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure { code: 1, message: message.into() }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::NoConvergence { .. } => 2,
            Error::RegularizationFailed(_) => 3,
            _ => 1,
        };
        Failure { code, message: e.to_string() }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::usage(e.to_string())
    }
}

fn output(path: Option<&PathBuf>) -> io::Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn parse_complex(s: &str) -> Result<C, Failure> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    let num = |t: &str| t.parse::<f64>().map_err(|_| Failure::usage(format!("not a number: `{t}`")));
    match parts.as_slice() {
        [re] => Ok(C::new(num(re)?, 0.0)),
        [re, im] => Ok(C::new(num(re)?, num(im)?)),
        _ => Err(Failure::usage(format!("expected `re` or `re,im`, got `{s}`"))),
    }
}

fn fmt_complex(z: C) -> String {
    if z.im == 0.0 {
        format!("{}", z.re)
    } else {
        format!("{}{}{}i", z.re, if z.im < 0.0 { "-" } else { "+" }, z.im.abs())
    }
}

fn cmd_solve(a: &SolveArgs, seed: u64) -> Result<(), Failure> {
    let mut text = String::new();
    match &a.input {
        Some(p) if p.as_os_str() != "-" => text = std::fs::read_to_string(p)?,
        _ => {
            io::stdin().read_to_string(&mut text)?;
        }
    }
    let input: SolveInput = serde_json::from_str(&text).map_err(|e| Failure::usage(format!("malformed input: {e}")))?;
    let q = input.quintic().map_err(Failure::usage)?;
    let opts = SolveOptions {
        seed,
        iterate: IterateOptions { tol: a.tol, max_iter: a.max_iter, max_restarts: a.max_restarts, ..Default::default() },
        ..Default::default()
    };
    if !(opts.iterate.tol > 0.0) {
        return Err(Failure::usage("--tol must be positive"));
    }
    let report = solve(&q, &opts)?;
    let mut out = output(a.out.as_ref())?;
    serde_json::to_writer_pretty(&mut out, &SolveOutput::new(&report, seed)).map_err(|e| Failure::usage(e.to_string()))?;
    writeln!(out)?;
    out.flush()?;
    Ok(())
}

fn cmd_verify(a: &VerifyArgs, seed: u64) -> Result<(), Failure> {
    let opts = CheckOptions { seed, perturb_phi2k: a.perturb_phi2k };
    let results = checks::run(a.filter.as_deref(), &opts)?;
    let mut out = io::stdout().lock();
    for c in &results {
        writeln!(out, "{c}")?;
    }
    let failed = results.iter().filter(|c| !c.passed).count();
    writeln!(out, "{} checks, {} passed, {failed} failed", results.len(), results.len() - failed)?;
    if failed > 0 {
        return Err(Failure::usage(format!("{failed} checks failed")));
    }
    Ok(())
}

fn cmd_orbits(a: &OrbitsArgs) -> Result<(), Failure> {
    let orbit = named_orbit(&a.name)?;
    let mut out = output(a.out.as_ref())?;
    writeln!(out, "descriptor,x1_re,x1_im,x2_re,x2_im,x3_re,x3_im,x4_re,x4_im,x5_re,x5_im")?;
    for (label, x) in orbit {
        let coords: Vec<String> = x.iter().flat_map(|z| [z.re.to_string(), z.im.to_string()]).collect();
        writeln!(out, "{label},{}", coords.join(","))?;
    }
    out.flush()?;
    Ok(())
}

fn default_window(map: &str) -> [f64; 4] {
    if map == "f6_plane" {
        [0.0, 0.0, 3.0, 3.0]
    } else {
        [0.0, 0.0, 4.0, 4.0]
    }
}

fn parse_window(s: &str) -> Result<[f64; 4], Failure> {
    let v: Vec<f64> = s
        .split(',')
        .map(|t| t.trim().parse::<f64>().map_err(|_| Failure::usage(format!("bad window component `{t}`"))))
        .collect::<Result<_, _>>()?;
    v.try_into().map_err(|_| Failure::usage("--window takes cx,cy,w,h"))
}

fn cmd_basins(a: &BasinsArgs) -> Result<(), Failure> {
    let window = match &a.window {
        Some(w) => parse_window(w)?,
        None => default_window(&a.map),
    };
    let grid = GridSpec::new((window[0], window[1]), window[2], window[3], (a.res, a.res))
        .map_err(|_| Failure::usage("window and resolution must be positive"))?;
    let portrait: Portrait = if PLANE_MAPS.contains(&a.map.as_str()) {
        render_plane(&PlaneChart::s3_plane(), &EquivariantMap::Phi6, grid, &s3_plane_attractors(), a.max_iter)?
    } else if RESTRICTED_MAP_NAMES.contains(&a.map.as_str()) {
        let m = restricted_map(&a.map)?;
        render_1d(&m, grid, &attractors_1d(&m, 4)?, a.max_iter)
    } else {
        let known: Vec<&str> = RESTRICTED_MAP_NAMES.iter().chain(PLANE_MAPS.iter()).copied().collect();
        return Err(Failure::usage(format!("unknown map `{}`; known: {}", a.map, known.join(", "))));
    };
    let mut out = BufWriter::new(File::create(&a.out)?);
    write_ppm(&portrait, &mut out)?;
    out.flush()?;
    if let Some(path) = &a.stats {
        let stats = BasinStats::new(&a.map, window, a.res, a.max_iter, &attractor_statistics(&portrait));
        let mut f = BufWriter::new(File::create(path)?);
        serde_json::to_writer_pretty(&mut f, &stats).map_err(|e| Failure::usage(e.to_string()))?;
        writeln!(f)?;
        f.flush()?;
    }
    Ok(())
}

fn cmd_resolvent(a: &ResolventArgs) -> Result<(), Failure> {
    let k = KParams::new(parse_complex(&a.k1)?, parse_complex(&a.k2)?, parse_complex(&a.k3)?);
    let rk = resolvent_rk(&k)?;
    let mut out = io::stdout().lock();
    writeln!(out, "R_K(s) = C0 s^5 + C1 s^4 + C2 s^3 + C3 s^2 + C4 s + C5")?;
    for (i, c) in rk.iter().rev().enumerate() {
        writeln!(out, "C{i} = {}", fmt_complex(*c))?;
    }
    Ok(())
}

fn configure_threads() -> Result<(), Failure> {
    let Ok(v) = std::env::var(THREADS_ENV) else { return Ok(()) };
    let n: usize = v.trim().parse().ok().filter(|&n| n > 0).ok_or_else(|| Failure::usage(format!("{THREADS_ENV} must be a positive integer")))?;
    rayon::ThreadPoolBuilder::new().num_threads(n).build_global().map_err(|e| Failure::usage(e.to_string()))
}

fn run(cli: &Cli) -> Result<(), Failure> {
    configure_threads()?;
    match &cli.command {
        Command::Solve(a) => cmd_solve(a, cli.seed),
        Command::Verify(a) => cmd_verify(a, cli.seed),
        Command::Orbits(a) => cmd_orbits(a),
        Command::Basins(a) => cmd_basins(a),
        Command::Resolvent(a) => cmd_resolvent(a),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            // exit code 2 is reserved for non-convergence
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
