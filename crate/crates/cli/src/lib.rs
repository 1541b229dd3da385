//! The `frechet` command line.

pub mod error;
pub mod svg;

use std::fs;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use frechet_core::{EngineOptions, EngineRegistry, Shape, Tolerances, DEFAULT_ISO_CAP};
use frechet_harness::{SuiteConfig, SuiteRegistry, SuiteReport};
use frechet_morph::{classify_shape, Ball, MorphContext, StrategyRegistry};
use serde_json::json;

pub use error::CliError;
pub use svg::emit_svg;

#[derive(Debug, Parser)]
#[command(name = "frechet", version, about = "Fréchet distances, classes and morphs of curves and graph-maps")]
pub struct Cli {
    /// Distance tolerance used by every engine.
    #[arg(long, global = true, default_value_t = 1e-6)]
    pub tol: f64,
    #[arg(long, global = true, env = "FRECHET_SEED", default_value_t = 0)]
    pub seed: u64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Kind {
    Discrete,
    Continuous,
    Path,
    Graph,
}

impl Kind {
    fn engine(self) -> &'static str {
        match self {
            Kind::Discrete => "discrete",
            Kind::Continuous => "continuous",
            Kind::Path => "path",
            Kind::Graph => "graph",
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Distance between two curves or graph-maps.
    Dist {
        a: PathBuf,
        b: PathBuf,
        #[arg(long, value_enum, default_value = "continuous")]
        kind: Kind,
        /// Keep orientation for `--kind path` (otherwise the reversal is tried too).
        #[arg(long)]
        oriented: bool,
    },
    /// Class (E, I or C) and the defects found.
    Classify { input: PathBuf },
    /// Sampled morph from `a` to `b`, written as JSON lines.
    Morph {
        a: PathBuf,
        b: PathBuf,
        /// continuous, immersion, embedding, or a strategy name such as alexander.
        #[arg(long, default_value = "continuous")]
        class: String,
        #[arg(long, default_value_t = 64)]
        frames: usize,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        svg: Option<PathBuf>,
        /// Fixed lift height for crossings.
        #[arg(long)]
        bump: Option<f64>,
        /// Zero-extend inputs to four coordinates before an embedding morph.
        #[arg(long = "lift-4d")]
        lift_4d: bool,
        /// Center of a ball the frames must stay inside; needs `--radius`.
        #[arg(long, requires = "radius")]
        center: Option<PathBuf>,
        #[arg(long, requires = "center")]
        radius: Option<f64>,
    },
    /// Runs a property suite.
    Verify {
        #[arg(long)]
        suite: String,
        #[arg(long)]
        trials: Option<usize>,
        #[arg(long)]
        dim: Option<usize>,
        #[arg(long)]
        report: Option<PathBuf>,
        /// Record wall-clock time in the report (makes it non-reproducible).
        #[arg(long)]
        timing: bool,
    },
    /// Runs the counterexample gallery.
    Gallery {
        #[arg(long)]
        report: Option<PathBuf>,
        #[arg(long)]
        timing: bool,
        /// Also write the gallery curves into this directory.
        #[arg(long)]
        export: Option<PathBuf>,
    },
}

/// Outcome of a command: what to print and the exit status.
#[derive(Debug, Default)]
pub struct Output {
    pub stdout: String,
    pub stderr: Vec<String>,
    pub code: i32,
}

fn read_shape(path: &Path, tol: &Tolerances) -> Result<Shape, CliError> {
    let name = path.display().to_string();
    let text = fs::read_to_string(path).map_err(|e| CliError::Input { path: name.clone(), msg: e.to_string() })?;
    let v: serde_json::Value = serde_json::from_str(&text).map_err(|e| CliError::Input { path: name.clone(), msg: format!("invalid JSON: {e}") })?;
    Shape::from_json_value(&v, tol.eps_dist).map_err(|e| CliError::Input { path: name, msg: e.to_string() })
}

fn write(path: &Path, text: &str) -> Result<(), CliError> {
    fs::write(path, text).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

fn same_dim(a: &Shape, b: &Shape) -> Result<(), CliError> {
    if a.dim() != b.dim() {
        return Err(CliError::Usage(format!("dimension mismatch: {} vs {}", a.dim(), b.dim())));
    }
    Ok(())
}

fn tolerances(tol: f64) -> Result<Tolerances, CliError> {
    let t = Tolerances::with_eps_dist(tol);
    t.validate().map_err(|e| CliError::Usage(e.to_string()))?;
    Ok(t)
}

/// Writes the report and one witness file per failed property.
fn finish_report(report: &SuiteReport, path: Option<&Path>, out: &mut Output) -> Result<(), CliError> {
    let text = report.to_json();
    let dir = match path {
        Some(p) => {
            write(p, &format!("{text}\n"))?;
            p.parent().map(Path::to_path_buf).unwrap_or_default()
        }
        None => {
            out.stdout = format!("{text}\n");
            PathBuf::new()
        }
    };
    for p in report.failures() {
        if let Some(w) = &p.witness {
            let file = dir.join(format!("{}-{}.witness.json", report.suite, p.name));
            write(&file, &format!("{}\n", serde_json::to_string_pretty(w).expect("json")))?;
            out.stderr.push(format!("witness: {}", file.display()));
        }
    }
    out.code = if report.passed() { 0 } else { 1 };
    Ok(())
}

pub fn execute(cli: &Cli) -> Result<Output, CliError> {
    let tol = tolerances(cli.tol)?;
    let mut out = Output::default();
    match &cli.command {
        Command::Dist { a, b, kind, oriented } => {
            let (sa, sb) = (read_shape(a, &tol)?, read_shape(b, &tol)?);
            same_dim(&sa, &sb)?;
            let opts = EngineOptions { tol, oriented: *oriented || *kind == Kind::Continuous, iso_cap: DEFAULT_ISO_CAP };
            let report = EngineRegistry::with_defaults().get(kind.engine())?.distance(&sa, &sb, &opts)?;
            out.stdout = format!("{}\n", serde_json::to_string(&report).expect("json"));
        }
        Command::Classify { input } => {
            let s = read_shape(input, &tol)?;
            out.stdout = format!("{}\n", serde_json::to_string(&classify_shape(&s, &tol)).expect("json"));
        }
        Command::Morph { a, b, class, frames, out: path, svg, bump, lift_4d, center, radius } => {
            let (sa, sb) = (read_shape(a, &tol)?, read_shape(b, &tol)?);
            same_dim(&sa, &sb)?;
            let ball = match (center, radius) {
                (Some(c), Some(r)) => Some(Ball { center: read_shape(c, &tol)?, radius: *r }),
                _ => None,
            };
            let ctx = MorphContext { tol, frames: *frames, ball, bump: *bump, iso_cap: DEFAULT_ISO_CAP, lift_to_4d: *lift_4d };
            let registry = StrategyRegistry::with_defaults();
            let seq = registry.for_class(class)?.morph(&sa, &sb, &ctx)?;
            if let Some(p) = svg {
                write(p, &emit_svg(&seq)?)?;
            }
            let summary = json!({
                "strategy": seq.strategy,
                "frames": seq.frames.len(),
                "events": seq.events.len(),
                "obstruction": seq.obstruction,
            });
            match path {
                Some(p) => {
                    write(p, &seq.to_jsonl())?;
                    out.stdout = format!("{summary}\n");
                }
                None => out.stdout = seq.to_jsonl(),
            }
            if let Some(o) = &seq.obstruction {
                out.stderr.push(format!("obstruction: {} at t={} ({})", o.constraint, o.t, o.detail));
                out.code = 1;
            }
        }
        Command::Verify { suite, trials, dim, report, timing } => {
            let registry = SuiteRegistry::with_defaults();
            let base = registry.get(suite)?.defaults();
            let cfg = SuiteConfig { seed: cli.seed, trials: trials.unwrap_or(base.trials), dim: dim.unwrap_or(base.dim), tol, ..base };
            let r = registry.run(suite, &cfg, *timing)?;
            finish_report(&r, report.as_deref(), &mut out)?;
        }
        Command::Gallery { report, timing, export } => {
            let registry = SuiteRegistry::with_defaults();
            let cfg = SuiteConfig { seed: cli.seed, tol, ..registry.get("gallery")?.defaults() };
            let r = registry.run("gallery", &cfg, *timing)?;
            if let Some(dir) = export {
                fs::create_dir_all(dir).map_err(|e| CliError::Io(format!("{}: {e}", dir.display())))?;
                let g = frechet_harness::Gallery::load()?;
                for (name, s) in [("g1", &g.g1), ("g2", &g.g2), ("g3", &g.g3)] {
                    let mut curves = vec![("p", &s.p), ("q", &s.q)];
                    if let Some(c) = &s.center {
                        curves.push(("center", c));
                    }
                    for (which, c) in curves {
                        let text = serde_json::to_string_pretty(&c.to_json()).expect("json");
                        write(&dir.join(format!("{name}_{which}.json")), &format!("{text}\n"))?;
                    }
                }
            }
            finish_report(&r, report.as_deref(), &mut out)?;
        }
    }
    Ok(out)
}
