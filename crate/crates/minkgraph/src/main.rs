//! Thin CLI over the library: scenario runner, classification, W statistics,
//! verification, curvature evaluation and exporters.
//!
//! Exit codes: 0 all checks pass, 1 a check failed, 2 usage or config
//! error, 3 numeric failure.

use std::collections::BTreeMap;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use num_complex::Complex64;

use minkgraph::error::Error;
use minkgraph::lab::{self, GridSpec, ScenarioConfig};
use minkgraph::rep::{self, StationaryData, StationaryDataSpec};
use minkgraph::{curvature, Classification, Expr};

#[derive(Parser)]
#[command(name = "minkgraph", version, about = "Spacelike stationary graphs in Minkowski space")]
struct Cli {
    /// Worker threads for grid sweeps (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Seed for any randomized sample sets.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct DataArgs {
    /// JSON file with {a, b, consts, beta, m}.
    #[arg(long)]
    data: Option<String>,
    #[arg(long, default_value_t = 0.0)]
    a: f64,
    #[arg(long, default_value_t = 2.0)]
    b: f64,
    /// Holomorphic expression in z.
    #[arg(long, default_value = "z")]
    beta: String,
    /// Comma-separated middle constants d3, ..., d_{1+m}.
    #[arg(long, default_value = "")]
    consts: String,
    #[arg(long, short, default_value_t = 2)]
    m: usize,
}

impl DataArgs {
    fn resolve(&self) -> Result<StationaryData, Error> {
        if let Some(path) = &self.data {
            let text = std::fs::read_to_string(path)?;
            let spec: StationaryDataSpec = serde_json::from_str(&text)?;
            return StationaryData::from_spec(&spec);
        }
        let consts: Vec<f64> = if self.consts.trim().is_empty() {
            Vec::new()
        } else {
            self.consts
                .split(',')
                .map(|s| {
                    s.trim()
                        .parse::<f64>()
                        .map_err(|e| Error::Config(format!("bad constant `{s}`: {e}")))
                })
                .collect::<Result<_, _>>()?
        };
        rep::make_canonical(self.a, self.b, &consts, Expr::parse(&self.beta)?, self.m)
    }
}

#[derive(Args)]
struct GridArgs {
    /// Half-width of the sampling square.
    #[arg(long, default_value_t = 2.0)]
    l: f64,
    /// Samples per axis.
    #[arg(long, default_value_t = 21)]
    n: usize,
}

#[derive(Subcommand)]
enum Command {
    /// Run a catalog scenario and print its report.
    Scenario {
        /// One of: flat-plane, lightlike-graph, incomplete-graph, mww-audit,
        /// t1-case-ii, t1-case-iii, ber1-check, ber3, ftc-divergence,
        /// lewy-conformal.
        name: String,
        /// JSON scenario config; flags override its fields.
        #[arg(long)]
        config: Option<String>,
        #[arg(long)]
        l: Option<f64>,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        fd_step: Option<f64>,
    },
    /// Classify canonical data into the affine / lightlike / oscillating
    /// trichotomy.
    Classify {
        #[command(flatten)]
        data: DataArgs,
    },
    /// Empirical and closed-form W statistics on a grid.
    WStats {
        #[command(flatten)]
        data: DataArgs,
        #[command(flatten)]
        grid: GridArgs,
    },
    /// Verify isotropy, the stationarity residual and W-consistency of the
    /// recovered graph.
    Verify {
        #[command(flatten)]
        data: DataArgs,
        #[command(flatten)]
        grid: GridArgs,
        #[arg(long, default_value_t = 1e-3)]
        fd_step: f64,
        /// Residual threshold.
        #[arg(long, default_value_t = 1e-6)]
        tol: f64,
    },
    /// Curvature sample at one parameter point, with the finite-difference
    /// oracle alongside.
    Curvature {
        #[command(flatten)]
        data: DataArgs,
        #[arg(long, default_value_t = 0.0)]
        u1: f64,
        #[arg(long, default_value_t = 0.0)]
        u2: f64,
        #[arg(long, default_value_t = 1e-3)]
        fd_step: f64,
    },
    /// Total |K| dM over expanding squares.
    TotalCurvature {
        #[command(flatten)]
        data: DataArgs,
        /// Comma-separated list of R values.
        #[arg(long, default_value = "2,4,8,16,32")]
        radii: String,
        #[arg(long, default_value_t = 1e-6)]
        rel_tol: f64,
    },
    /// Sample a surface to CSV and/or OBJ.
    Export {
        #[command(flatten)]
        data: DataArgs,
        #[command(flatten)]
        grid: GridArgs,
        #[arg(long)]
        csv: Option<String>,
        #[arg(long)]
        obj: Option<String>,
        /// OBJ coordinate triple, 0-based into (x1, x2, f1, ..., fm).
        #[arg(long, default_value = "0,1,2")]
        coords: String,
    },
}

fn exit_code_for(err: &Error) -> u8 {
    match err {
        Error::Quadrature { .. }
        | Error::Evaluation(_)
        | Error::NotSpacelike(..)
        | Error::DivisionByZero { .. }
        | Error::Degenerate(_) => 3,
        _ => 2,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(t) = cli.threads {
        if rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build_global()
            .is_err()
        {
            eprintln!("error: could not configure {t} worker threads");
            return ExitCode::from(2);
        }
    }
    match run(cli) {
        Ok(pass) => {
            if pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code_for(&e))
        }
    }
}

fn print_json<T: serde::Serialize>(v: &T) -> Result<(), Error> {
    use std::io::Write;
    let text = serde_json::to_string_pretty(v)?;
    // tolerate a closed pipe (e.g. piping into `head`)
    let mut out = std::io::stdout().lock();
    match writeln!(out, "{text}") {
        Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => Ok(()),
        other => Ok(other?),
    }
}

fn run(cli: Cli) -> Result<bool, Error> {
    match cli.command {
        Command::Scenario {
            name,
            config,
            l,
            n,
            fd_step,
        } => {
            let mut cfg = match config {
                Some(path) => {
                    let text = std::fs::read_to_string(&path)?;
                    serde_json::from_str::<ScenarioConfig>(&text)?
                }
                None => ScenarioConfig::named(&name),
            };
            cfg.name = name;
            if let Some(l) = l {
                cfg.grid.l = l;
            }
            if let Some(n) = n {
                cfg.grid.n = n;
            }
            if let Some(h) = fd_step {
                cfg.fd_step = h;
            }
            if cli.seed != 0 {
                cfg.seed = cli.seed;
            }
            let report = lab::run_scenario(&cfg)?;
            print_json(&report)?;
            Ok(report.passed())
        }
        Command::Classify { data } => {
            let data = data.resolve()?;
            let out = match data.classify() {
                Classification::CaseI => serde_json::json!({"case": "I"}),
                Classification::CaseII { y0 } => serde_json::json!({"case": "II", "y0": y0}),
                Classification::CaseIII { r1, r2 } => {
                    serde_json::json!({"case": "III", "r1": r1, "r2": r2, "product": r1 * r2})
                }
            };
            print_json(&out)?;
            Ok(true)
        }
        Command::WStats { data, grid } => {
            let data = data.resolve()?;
            let (lo, hi) = data.w_range_on_grid(grid.l, grid.n)?;
            let (r1, r2) = data.w_extremes();
            print_json(&serde_json::json!({
                "grid_min": lo,
                "grid_max": hi,
                "grid_product": lo * hi,
                "closed_form_min": r1,
                "closed_form_max": r2,
                "closed_form_product": r1 * r2,
            }))?;
            Ok(true)
        }
        Command::Verify {
            data,
            grid,
            fd_step,
            tol,
        } => {
            let data = data.resolve()?;
            let surface = data.graph_surface();
            let pts = GridSpec { l: 1.0, n: 5 }.points();
            let mut residual = 0.0f64;
            for &(x1, x2) in &pts {
                let r = surface.stationarity_residual(x1, x2, fd_step)?;
                residual = r.iter().fold(residual, |m, v| m.max(v.abs()));
            }
            let mut isotropy = 0.0f64;
            let mut w_dev = 0.0f64;
            let sweep = GridSpec {
                l: grid.l,
                n: grid.n.min(21),
            };
            for &(u1, u2) in &sweep.points() {
                let z = Complex64::new(u1, u2);
                isotropy = isotropy.max(data.isotropy_defect(z)?);
                let (x1, x2) = {
                    let p = data.synthesize_point(z, 1e-10)?;
                    (p.0[0], p.0[1])
                };
                let w_graph = surface
                    .metric_at(x1, x2)?
                    .w
                    .ok_or(Error::NotSpacelike(x1, x2))?;
                w_dev = w_dev.max((w_graph - data.w_of(z)?).abs());
            }
            let pass = residual <= tol && isotropy <= 1e-12 && w_dev <= 1e-8;
            print_json(&serde_json::json!({
                "max_residual": residual,
                "residual_threshold": tol,
                "max_isotropy_defect": isotropy,
                "max_w_deviation": w_dev,
                "pass": pass,
            }))?;
            Ok(pass)
        }
        Command::Curvature {
            data,
            u1,
            u2,
            fd_step,
        } => {
            let data = data.resolve()?;
            let z = Complex64::new(u1, u2);
            let s = curvature::curvatures(&data, z)?;
            let oracle = if s.flat_by_classification {
                None
            } else {
                Some(curvature::curvature_fd_oracle(&data, z, fd_step)?)
            };
            print_json(&serde_json::json!({
                "e2omega": s.e2omega,
                "K": s.k,
                "Kperp": s.kperp,
                "density": s.density,
                "flat_by_classification": s.flat_by_classification,
                "fd_oracle_K": oracle.map(|o| o.0),
                "fd_oracle_Kperp": oracle.map(|o| o.1),
            }))?;
            Ok(true)
        }
        Command::TotalCurvature {
            data,
            radii,
            rel_tol,
        } => {
            let data = data.resolve()?;
            let rs: Vec<f64> = radii
                .split(',')
                .map(|s| {
                    s.trim()
                        .parse::<f64>()
                        .map_err(|e| Error::Config(format!("bad radius `{s}`: {e}")))
                })
                .collect::<Result<_, _>>()?;
            let mut table = BTreeMap::new();
            for &r in &rs {
                table.insert(
                    format!("{r}"),
                    curvature::total_curvature(&data, r, rel_tol)?,
                );
            }
            print_json(&table)?;
            Ok(true)
        }
        Command::Export {
            data,
            grid,
            csv,
            obj,
            coords,
        } => {
            let data = data.resolve()?;
            if csv.is_none() && obj.is_none() {
                return Err(Error::Config("export needs --csv and/or --obj".into()));
            }
            let rows = lab::sample_grid(&data, grid.l, grid.n)?;
            if let Some(path) = csv {
                let mut w = std::io::BufWriter::new(std::fs::File::create(path)?);
                lab::write_csv(&mut w, data.codim(), &rows)?;
            }
            if let Some(path) = obj {
                let idx: Vec<usize> = coords
                    .split(',')
                    .map(|s| {
                        s.trim()
                            .parse::<usize>()
                            .map_err(|e| Error::Config(format!("bad coordinate `{s}`: {e}")))
                    })
                    .collect::<Result<_, _>>()?;
                if idx.len() != 3 {
                    return Err(Error::Config("--coords needs exactly three indices".into()));
                }
                let mut w = std::io::BufWriter::new(std::fs::File::create(path)?);
                lab::write_obj(&mut w, data.codim(), &rows, grid.n, [idx[0], idx[1], idx[2]])?;
            }
            Ok(true)
        }
    }
}
