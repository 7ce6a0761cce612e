//! Command-line front end: argument parsing, file I/O and JSON reports.

use anyhow::{bail, Context};
use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};
use std::path::{Path, PathBuf};
use steepness_core::criteria::{
    bound2, codim_bound, codimension2, index_bounds, nekhoroshev_choice,
};
use steepness_core::grassmann::{codim_scan, witness_chart};
use steepness_core::thalweg::ProbeConfig;
use steepness_core::vanishing::{residual, vanishing_verdict, Method, DEFAULT_TOL};
use steepness_core::{io, Error, Jet};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_NUMERICAL: i32 = 2;
pub const EXIT_FINDING: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "steepness",
    version,
    about = "Steepness criteria for polynomial jets"
)]
pub struct Cli {
    /// Write the JSON report here instead of stdout.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum Mode {
    #[value(name = "3jet")]
    ThreeJet,
    Jet1d,
    Classify,
    Eliminate,
    Scan,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum Solver {
    Lu,
    Diagonalized,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Residual table of the vanishing system along a curve truncation.
    VanishingSystem {
        #[arg(long)]
        jet: PathBuf,
        #[arg(long)]
        curve: PathBuf,
        #[arg(long, default_value_t = DEFAULT_TOL)]
        tol: f64,
        /// Use the power-series oracle instead of the closed form.
        #[arg(long)]
        oracle: bool,
    },
    /// Explicit steepness criteria.
    Check {
        #[arg(long)]
        jet: PathBuf,
        #[arg(long, value_enum, default_value = "3jet")]
        mode: Mode,
        #[arg(long)]
        frame: Option<PathBuf>,
        #[arg(long)]
        s: Option<usize>,
        #[arg(long)]
        tol: Option<f64>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 64)]
        samples: usize,
        /// Iteration cap for `scan`.
        #[arg(long, default_value_t = 1_000_000)]
        budget: usize,
        /// Highest order searched by `scan`.
        #[arg(long)]
        r_max: Option<usize>,
        /// Linear curve coefficients for `eliminate`, comma separated.
        #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
        a1: Vec<f64>,
        #[arg(long, value_enum, default_value = "lu")]
        solver: Solver,
    },
    /// Max-min profile and steepness index estimate on a subspace.
    Probe {
        #[arg(long)]
        jet: PathBuf,
        #[arg(long)]
        frame: PathBuf,
        #[arg(long)]
        xi_max: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 64)]
        samples: usize,
        #[arg(long, default_value_t = 24)]
        points: usize,
        /// Vanishing order for the index bound comparison.
        #[arg(long)]
        s: Option<usize>,
        #[arg(long)]
        emit_profile: Option<PathBuf>,
    },
    /// Degeneracy locus of a bilinear form on Grassmannian charts.
    Grassmann {
        #[arg(long)]
        form: PathBuf,
        #[arg(long)]
        m: usize,
        #[arg(long, conflicts_with_all = ["scan", "witness"])]
        chart: Option<PathBuf>,
        /// Number of random lines to scan.
        #[arg(long, conflicts_with = "witness")]
        scan: Option<usize>,
        /// Evaluate the distinct-spectrum witness chart on `I = 0..m`.
        #[arg(long)]
        witness: bool,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
    },
    /// Closed-form index and codimension bounds.
    Bounds {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        r: Option<usize>,
        #[arg(long)]
        nekhoroshev: bool,
        /// `s_1, …, s_{n−1}`, comma separated.
        #[arg(long, value_delimiter = ',')]
        s: Vec<i64>,
    },
}

/// Shared run settings echoed in every report.
#[derive(Debug, Clone, Serialize)]
pub struct RunConfig {
    pub tol: Option<f64>,
    pub seed: Option<u64>,
    pub samples: Option<usize>,
    pub budget: Option<usize>,
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, Serialize)]
pub struct InputDigest {
    pub path: String,
    pub sha256: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub command: Vec<String>,
    pub version: String,
    pub config: RunConfig,
    pub inputs: Vec<InputDigest>,
    pub verdict: String,
    pub result: Value,
}

pub struct Outcome {
    pub code: i32,
    pub report: Option<Report>,
    pub message: Option<String>,
}

struct Inputs(Vec<InputDigest>);

impl Inputs {
    fn read(&mut self, path: &Path) -> anyhow::Result<String> {
        let bytes = std::fs::read(path).with_context(|| format!("reading {}", path.display()))?;
        self.0.push(InputDigest {
            path: path.display().to_string(),
            sha256: hex::encode(Sha256::digest(&bytes)),
        });
        String::from_utf8(bytes).with_context(|| format!("{} is not UTF-8", path.display()))
    }
}

fn exit_code(err: &anyhow::Error) -> i32 {
    match err.downcast_ref::<Error>() {
        Some(Error::IllConditioned { .. }) => EXIT_NUMERICAL,
        _ => EXIT_INPUT,
    }
}

/// Parses `argv` and runs the command; the report is returned, not printed.
pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let argv: Vec<std::ffi::OsString> = argv.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            return Outcome {
                code,
                report: None,
                message: Some(e.render().to_string()),
            };
        }
    };
    let echo = argv
        .iter()
        .map(|a| a.to_string_lossy().into_owned())
        .collect();
    match dispatch(&cli) {
        Ok((code, verdict, config, inputs, result)) => Outcome {
            code,
            report: Some(Report {
                command: echo,
                version: format!("steepness {}", env!("CARGO_PKG_VERSION")),
                config: RunConfig {
                    output: cli.output.clone(),
                    ..config
                },
                inputs,
                verdict,
                result,
            }),
            message: None,
        },
        Err(e) => Outcome {
            code: exit_code(&e),
            report: None,
            message: Some(format!("error: {e:#}")),
        },
    }
}

type Dispatched = (i32, String, RunConfig, Vec<InputDigest>, Value);

fn config(
    tol: Option<f64>,
    seed: Option<u64>,
    samples: Option<usize>,
    budget: Option<usize>,
) -> RunConfig {
    RunConfig {
        tol,
        seed,
        samples,
        budget,
        output: None,
    }
}

fn check_tol(tol: f64) -> anyhow::Result<()> {
    if !(tol > 0.0 && tol.is_finite()) {
        bail!("`--tol` must be positive, got {tol}");
    }
    Ok(())
}

fn check_samples(samples: usize) -> anyhow::Result<()> {
    if samples == 0 {
        bail!("`--samples` must be at least 1");
    }
    Ok(())
}

fn dispatch(cli: &Cli) -> anyhow::Result<Dispatched> {
    let mut inputs = Inputs(Vec::new());
    match &cli.command {
        Command::VanishingSystem {
            jet,
            curve,
            tol,
            oracle,
        } => {
            check_tol(*tol)?;
            let p = io::parse_jet(&inputs.read(jet)?)?;
            let c = io::parse_curve(&inputs.read(curve)?)?;
            let method = if *oracle {
                Method::SeriesOracle
            } else {
                Method::ClosedForm
            };
            let res = residual(&p, &c, method)?;
            let vanishing = vanishing_verdict(&p, &res, *tol);
            let result = json!({
                "s_vanishing": vanishing,
                "method": if *oracle { "series_oracle" } else { "closed_form" },
                "residuals": res,
                "normalized": res.normalized_table(),
                "max_abs": res.max_abs(),
            });
            let (code, verdict) = if vanishing {
                (EXIT_FINDING, "s_vanishing")
            } else {
                (EXIT_OK, "not_s_vanishing")
            };
            Ok((
                code,
                verdict.into(),
                config(Some(*tol), None, None, None),
                inputs.0,
                result,
            ))
        }
        Command::Check {
            jet,
            mode,
            frame,
            s,
            tol,
            seed,
            samples,
            budget,
            r_max,
            a1,
            solver,
        } => {
            check_samples(*samples)?;
            let q = io::parse_jet(&inputs.read(jet)?)?;
            let frame = match frame {
                Some(f) => Some(io::parse_frame(&inputs.read(f)?)?),
                None => None,
            };
            run_check(
                &q, *mode, frame, *s, *tol, *seed, *samples, *budget, *r_max, a1, *solver,
            )
            .map(|(code, verdict, cfg, result)| (code, verdict, cfg, inputs.0, result))
        }
        Command::Probe {
            jet,
            frame,
            xi_max,
            seed,
            samples,
            points,
            s,
            emit_profile,
        } => {
            check_samples(*samples)?;
            let q = io::parse_jet(&inputs.read(jet)?)?;
            let f = io::parse_frame(&inputs.read(frame)?)?;
            let cfg = ProbeConfig {
                xi_max: *xi_max,
                points: *points,
                samples: *samples,
                seed: *seed,
                tol: 1e-8,
                s: *s,
            };
            let rep = steepness_core::probe_point(&q, &f, &cfg)?;
            if let Some(path) = emit_profile {
                write_profile(path, rep.fit.maxmin_curve())?;
            }
            let (code, verdict) = if rep.fit.is_nonsteep() {
                (EXIT_FINDING, "nonsteep_evidence")
            } else {
                (EXIT_OK, "index_estimated")
            };
            Ok((
                code,
                verdict.into(),
                config(None, Some(*seed), Some(*samples), None),
                inputs.0,
                serde_json::to_value(&rep)?,
            ))
        }
        Command::Grassmann {
            form,
            m,
            chart,
            scan,
            witness,
            seed,
            tol,
        } => {
            check_tol(*tol)?;
            let b = io::parse_form(&inputs.read(form)?, *tol)?;
            let n = b.n();
            if *m == 0 || *m >= n {
                bail!("`--m` must lie in 1..{n}, got {m}");
            }
            if let Some(lines) = scan {
                let stats = codim_scan(&b, *m, *lines, *seed)?;
                return Ok((
                    EXIT_OK,
                    "scan".into(),
                    config(Some(*tol), Some(*seed), None, None),
                    inputs.0,
                    serde_json::to_value(&stats)?,
                ));
            }
            let c = match (chart, witness) {
                (Some(path), _) => io::parse_chart(&inputs.read(path)?, n)?,
                (None, true) => witness_chart(&b, (0..*m).collect())?,
                (None, false) => bail!("one of `--chart`, `--scan` or `--witness` is required"),
            };
            if c.m() != *m {
                bail!("chart file: `I` has {} entries but `--m` = {m}", c.m());
            }
            let det = steepness_core::degeneracy_det(&b, &c)?;
            let disc = steepness_core::discriminant_locus(&b, &c)?;
            let degenerate = det.abs() <= *tol;
            let frame = steepness_core::chart_to_frame(&c);
            let result = json!({
                "degeneracy_det": det,
                "discriminant": disc,
                "degenerate": degenerate,
                "m_b": steepness_core::grassmann::m_b(&b, &c)?.row_iter()
                    .map(|r| r.iter().copied().collect::<Vec<f64>>()).collect::<Vec<_>>(),
                "chart": io::ChartFile::from_chart(&c),
                "frame": frame.vectors(),
            });
            let (code, verdict) = if degenerate {
                (EXIT_FINDING, "degenerate")
            } else {
                (EXIT_OK, "nondegenerate")
            };
            Ok((
                code,
                verdict.into(),
                config(Some(*tol), None, None, None),
                inputs.0,
                result,
            ))
        }
        Command::Bounds {
            n,
            r,
            nekhoroshev,
            s,
        } => {
            let n = *n;
            if n < 2 {
                bail!("`--n` must be at least 2");
            }
            let result = if *nekhoroshev {
                let Some(r) = *r else {
                    bail!("`--nekhoroshev` needs `--r`");
                };
                let rows: Vec<Value> = (1..n)
                    .map(|m| {
                        json!({
                            "m": m,
                            "s_bar": nekhoroshev_choice(n, r, m),
                            "alpha_bar": bound2(n, r, m),
                        })
                    })
                    .collect();
                let s_bar: Vec<i64> = (1..n).map(|m| nekhoroshev_choice(n, r, m)).collect();
                json!({
                    "n": n,
                    "r": r,
                    "per_m": rows,
                    "codim_bound": codim_bound(n, &s_bar),
                    "codimension2": codimension2(n, r),
                })
            } else {
                if s.len() != n - 1 {
                    bail!("`--s` needs n − 1 = {} entries, got {}", n - 1, s.len());
                }
                if let Some(r) = r {
                    if let Some(k) = s.iter().position(|&sm| sm < 1 || sm > *r as i64 - 1) {
                        bail!("`--s` entry {k} must lie in 1..=r−1");
                    }
                }
                let rows: Vec<Value> = s
                    .iter()
                    .enumerate()
                    .map(|(k, &sm)| json!({"m": k + 1, "s": sm, "alpha": index_bounds(k + 1, sm)}))
                    .collect();
                json!({"n": n, "per_m": rows, "codim_bound": codim_bound(n, s)})
            };
            Ok((
                EXIT_OK,
                "bounds".into(),
                config(None, None, None, None),
                inputs.0,
                result,
            ))
        }
    }
}

#[allow(clippy::too_many_arguments)]
fn run_check(
    q: &Jet,
    mode: Mode,
    frame: Option<steepness_core::Frame>,
    s: Option<usize>,
    tol: Option<f64>,
    seed: u64,
    samples: usize,
    budget: usize,
    r_max: Option<usize>,
    a1: &[f64],
    solver: Solver,
) -> anyhow::Result<(i32, String, RunConfig, Value)> {
    use steepness_core::criteria::*;
    let need_s = || s.context("`--s` is required for this mode");
    match mode {
        Mode::ThreeJet | Mode::Jet1d => {
            let tol = tol.unwrap_or(1e-9);
            check_tol(tol)?;
            let (witness, value) = if let Mode::ThreeJet = mode {
                let rep = check_3jet(q, tol, samples, seed)?;
                (rep.report.outcome.is_witness(), serde_json::to_value(&rep)?)
            } else {
                let rep = check_jet_1d(q, need_s()?, tol, samples, seed)?;
                (rep.outcome.is_witness(), serde_json::to_value(&rep)?)
            };
            let (code, verdict) = if witness {
                (EXIT_FINDING, "witness")
            } else {
                (EXIT_OK, "nondegenerate")
            };
            Ok((
                code,
                verdict.into(),
                config(Some(tol), Some(seed), Some(samples), None),
                value,
            ))
        }
        Mode::Classify => {
            let tol = tol.unwrap_or(NULL_EIGEN_TOL);
            check_tol(tol)?;
            let f = frame.context("`--frame` is required for classify")?;
            let c = classify_subspace(q, &f, tol)?;
            let verdict = match c.class {
                LambdaClass::Lambda0 => "lambda0",
                LambdaClass::Lambda1 => "lambda1",
                LambdaClass::LambdaGe2 => "lambda_ge2",
            };
            Ok((
                EXIT_OK,
                verdict.into(),
                config(Some(tol), None, None, None),
                serde_json::to_value(&c)?,
            ))
        }
        Mode::Eliminate => {
            let tol = tol.unwrap_or(1e-9);
            check_tol(tol)?;
            let p = match &frame {
                Some(f) => q.restrict_jet(f)?,
                None => q.clone(),
            };
            let a1 = if a1.is_empty() {
                vec![0.0; p.n().saturating_sub(1)]
            } else {
                a1.to_vec()
            };
            let solver = match solver {
                Solver::Lu => ElimSolver::Lu,
                Solver::Diagonalized => ElimSolver::Diagonalized,
            };
            let e = eliminate_curve_params(&p, &a1, need_s()?, tol, solver)?;
            let (code, verdict) = if e.vanishing {
                (EXIT_FINDING, "s_vanishing")
            } else {
                (EXIT_OK, "not_s_vanishing")
            };
            Ok((
                code,
                verdict.into(),
                config(Some(tol), None, None, None),
                serde_json::to_value(&e)?,
            ))
        }
        Mode::Scan => {
            let tol = tol.unwrap_or(1e-9);
            check_tol(tol)?;
            let cfg = ScanConfig {
                r_max: r_max.unwrap_or(q.r().saturating_sub(1)),
                tol,
                budget,
                samples,
                seed,
            };
            let rep = nonsteep_witness_scan(q, &cfg)?;
            let (code, verdict) = if rep.any_suspected() {
                (EXIT_FINDING, "suspected_witness")
            } else {
                (EXIT_OK, "no_witness_found")
            };
            Ok((
                code,
                verdict.into(),
                config(Some(tol), Some(seed), Some(samples), Some(budget)),
                serde_json::to_value(&rep)?,
            ))
        }
    }
}

fn write_profile(
    path: &Path,
    profile: &[steepness_core::thalweg::ProfilePoint],
) -> anyhow::Result<()> {
    let mut w =
        csv::Writer::from_path(path).with_context(|| format!("writing {}", path.display()))?;
    w.write_record(["xi", "maxmin"])?;
    for p in profile {
        w.write_record([format!("{:e}", p.xi), format!("{:e}", p.maxmin)])?;
    }
    w.flush()?;
    Ok(())
}

/// Serializes the report to `path` or stdout.
pub fn emit(report: &Report, path: Option<&Path>) -> anyhow::Result<()> {
    let text = serde_json::to_string_pretty(report)? + "\n";
    match path {
        Some(p) => std::fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}
