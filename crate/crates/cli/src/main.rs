//! `crformal`: command-line front end for the truncated formal power
//! series toolkit.
//!
//! Exit status: 0 for definite verdicts, 2 for verdicts that are
//! inconclusive at the working order, 1 for errors.

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use thiserror::Error;

use crformal::classify::{classify, ClassifyOptions, Status};
use crformal::expr::parse_defining_expression;
use crformal::flows::{find_tangent_field, nonconvergent_selfmap};
use crformal::mapping::{
    artin_witness, check_invertible, conjugate_reflection_identities, defining_function_equivalence_check,
    first_chain_jets, reflection_function, reflection_identities, second_chain_system, tangency_check, FormalMap,
};
use crformal::{manifest, Hypersurface};

#[derive(Debug, Error)]
enum CliError {
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{context}: {source}")]
    Core { context: String, source: crformal::Error },
    #[error("{0}")]
    Usage(String),
}

type CliResult<T> = Result<T, CliError>;

trait Context<T> {
    fn context(self, what: impl Into<String>) -> CliResult<T>;
}

impl<T> Context<T> for crformal::Result<T> {
    fn context(self, what: impl Into<String>) -> CliResult<T> {
        self.map_err(|source| CliError::Core {
            context: what.into(),
            source,
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Machine,
}

#[derive(Debug, Parser)]
#[command(
    name = "crformal",
    version,
    about = "Exact truncated formal power series for CR geometry"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args, Clone)]
struct Common {
    /// Working truncation order.
    #[arg(long, default_value_t = 10)]
    order: u32,
    /// Largest jet order examined by the classifier.
    #[arg(long)]
    kmax: Option<u32>,
    /// Bound on |β| for multiindex searches and identity checks.
    #[arg(long = "beta-bound", default_value_t = 3)]
    beta_bound: u32,
    /// Seed for the random evaluation points of rank computations.
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Output style.
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// 1-based index of the graph variable in defining expressions
    /// (default: the last coordinate).
    #[arg(long = "graph-var")]
    graph_var: Option<usize>,
}

/// A hypersurface given by a manifest path or by `--expr`.
#[derive(Debug, Args)]
struct HypersurfaceInput {
    /// Hypersurface manifest (`.hsf`).
    #[arg(required_unless_present = "expr")]
    file: Option<PathBuf>,
    /// Real defining expression instead of a manifest.
    #[arg(long, conflicts_with = "file")]
    expr: Option<String>,
}

#[derive(Debug, Args)]
struct MapInput {
    /// Map manifest (`.fmap`).
    map: PathBuf,
    /// Source hypersurface manifest.
    source: PathBuf,
    /// Target hypersurface manifest (defaults to the source).
    target: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Parse a real defining expression and print the hypersurface manifest.
    Parse {
        expr: String,
        #[command(flatten)]
        common: Common,
    },
    /// Evaluate the nondegeneracy hierarchy.
    Classify {
        #[command(flatten)]
        input: HypersurfaceInput,
        #[command(flatten)]
        common: Common,
    },
    /// Test minimality at the origin.
    Minimal {
        #[command(flatten)]
        input: HypersurfaceInput,
        #[command(flatten)]
        common: Common,
    },
    /// Bring a hypersurface to normal coordinates.
    Normalize {
        #[command(flatten)]
        input: HypersurfaceInput,
        /// Write the normalizing map to this `.fmap` file.
        #[arg(long)]
        witness: Option<PathBuf>,
        #[command(flatten)]
        common: Common,
    },
    /// Check tangency and invertibility of a map.
    VerifyMap {
        #[command(flatten)]
        maps: MapInput,
        #[command(flatten)]
        common: Common,
    },
    /// Print the truncated reflection function of a map.
    Reflect {
        /// Map manifest (`.fmap`).
        map: PathBuf,
        /// Target hypersurface manifest.
        target: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Check the classical and conjugate reflection identities.
    Identities {
        #[command(flatten)]
        maps: MapInput,
        #[command(flatten)]
        common: Common,
    },
    /// First-chain jets and the second-chain determinant systems.
    Chains {
        #[command(flatten)]
        maps: MapInput,
        /// Largest number of z-derivatives on the first chain.
        #[arg(long = "max-alpha", default_value_t = 2)]
        max_alpha: u32,
        /// Vanishing order to use when no multiindex selection exists.
        #[arg(long)]
        kappa0: Option<u32>,
        #[command(flatten)]
        common: Common,
    },
    /// Find a holomorphic tangent field and build a formal self-map along it.
    Flows {
        #[command(flatten)]
        input: HypersurfaceInput,
        /// Degree bound of the polynomial ansatz.
        #[arg(long = "degree-bound", default_value_t = 3)]
        degree_bound: u32,
        /// Write the self-map to this `.fmap` file.
        #[arg(long)]
        out: Option<PathBuf>,
        #[command(flatten)]
        common: Common,
    },
    /// Determinant criterion for a formal solution of an analytic system.
    Artin {
        /// System manifest (`.artin`).
        file: PathBuf,
        #[command(flatten)]
        common: Common,
    },
}

/// What a command produced: report lines and whether the verdict is
/// definite.
struct Outcome {
    lines: Vec<String>,
    definite: bool,
}

impl Outcome {
    fn definite(lines: Vec<String>) -> Self {
        Outcome { lines, definite: true }
    }
}

fn read(path: &Path) -> CliResult<String> {
    fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn write(path: &Path, text: &str) -> CliResult<()> {
    fs::write(path, text).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn from_expression(text: &str, common: &Common) -> CliResult<Hypersurface> {
    let rho = parse_defining_expression(text)
        .map_err(crformal::Error::from)
        .context("parsing the defining expression")?;
    let graph = common.graph_var.unwrap_or(rho.n);
    Hypersurface::from_real_defining(&rho, graph, common.order).context("solving for the graph variable")
}

fn load_hypersurface(path: &Path) -> CliResult<Hypersurface> {
    manifest::read_hypersurface(&read(path)?).context(path.display().to_string())
}

fn hypersurface(input: &HypersurfaceInput, common: &Common) -> CliResult<Hypersurface> {
    match (&input.file, &input.expr) {
        (_, Some(e)) => from_expression(e, common),
        (Some(p), None) => load_hypersurface(p),
        (None, None) => Err(CliError::Usage("a manifest path or --expr is required".into())),
    }
}

fn load_maps(maps: &MapInput) -> CliResult<(FormalMap, Hypersurface, Hypersurface)> {
    let h = manifest::read_map(&read(&maps.map)?).context(maps.map.display().to_string())?;
    let m = load_hypersurface(&maps.source)?;
    let mp = match &maps.target {
        Some(p) => load_hypersurface(p)?,
        None => m.clone(),
    };
    Ok((h, m, mp))
}

fn run(cmd: Command) -> CliResult<Outcome> {
    match cmd {
        Command::Parse { expr, common } => {
            let h = from_expression(&expr, &common)?;
            Ok(Outcome::definite(vec![manifest::write_hypersurface(&h)]))
        }
        Command::Classify { input, common } => {
            let h = hypersurface(&input, &common)?;
            let opts = ClassifyOptions {
                order: common.order,
                kmax: common.kmax,
                beta_bound: common.beta_bound,
                seed: common.seed,
            };
            let report = classify(&h, &opts).context("classification")?;
            let v_inconclusive = matches!(report.verdicts[4].status, Status::Inconclusive(_));
            let lines = match common.format {
                Format::Machine => report.machine_lines(),
                Format::Text => vec![report.to_string()],
            };
            Ok(Outcome {
                lines,
                definite: report.minimality.minimal && !v_inconclusive,
            })
        }
        Command::Minimal { input, common } => {
            let h = hypersurface(&input, &common)?.truncate(common.order);
            let v = h.is_minimal(common.seed).context("minimality")?;
            Ok(Outcome {
                lines: vec![v.to_string()],
                definite: v.minimal,
            })
        }
        Command::Normalize { input, witness, common } => {
            let h = hypersurface(&input, &common)?;
            let (normal, map) = h.normalize(common.order).context("normalization")?;
            if let Some(p) = witness {
                write(&p, &manifest::write_map(&map))?;
            }
            Ok(Outcome::definite(vec![manifest::write_hypersurface(&normal)]))
        }
        Command::VerifyMap { maps, common } => {
            let (h, m, mp) = load_maps(&maps)?;
            let inv = check_invertible(&h);
            let tan = tangency_check(&h, &m, &mp, common.order).context("tangency")?;
            let lines = vec![
                format!("tangent={} order={}", tan.tangent, tan.order),
                format!(
                    "invertible={} det={} det_g_w={}",
                    inv.invertible(),
                    inv.det,
                    inv.det_g_w
                ),
            ];
            Ok(Outcome::definite(lines))
        }
        Command::Reflect { map, target, common } => {
            let h = manifest::read_map(&read(&map)?).context(map.display().to_string())?;
            let mp = load_hypersurface(&target)?;
            let r = reflection_function(&h, &mp, common.order, common.beta_bound).context("reflection function")?;
            let s = r.to_series();
            let lines = match common.format {
                Format::Machine => vec![s.to_record()],
                Format::Text => vec![format!("R = {s}")],
            };
            Ok(Outcome::definite(lines))
        }
        Command::Identities { maps, common } => {
            let (h, m, mp) = load_maps(&maps)?;
            let k = common.beta_bound;
            let mut lines: Vec<String> = reflection_identities(&h, &m, &mp, k, common.order)
                .context("classical reflection identities")?
                .iter()
                .map(|r| r.record())
                .collect();
            lines.extend(
                conjugate_reflection_identities(&h, &m, &mp, k, common.order)
                    .context("conjugate reflection identities")?
                    .iter()
                    .map(|r| r.record()),
            );
            let eq = defining_function_equivalence_check(&h, &m, &mp, k, common.order)
                .context("defining-function equivalence")?;
            lines.push(format!(
                "equivalence=defining_functions e_zero={} f_zero={} leibniz={} alpha0={} order={}",
                eq.e_zero, eq.f_zero, eq.leibniz_holds, eq.alpha0, eq.order
            ));
            Ok(Outcome::definite(lines))
        }
        Command::Chains {
            maps,
            max_alpha,
            kappa0,
            common,
        } => {
            let (h, m, mp) = load_maps(&maps)?;
            let mut lines: Vec<String> = first_chain_jets(&h, &m, &mp, max_alpha, common.beta_bound, common.order)
                .context("first-chain jets")?
                .iter()
                .map(|j| j.record())
                .collect();
            let second = second_chain_system(&h, &m, &mp, kappa0, common.beta_bound, common.order, common.seed)
                .context("second-chain systems")?;
            lines.extend(second.records());
            Ok(Outcome::definite(lines))
        }
        Command::Flows {
            input,
            degree_bound,
            out,
            common,
        } => {
            let h = hypersurface(&input, &common)?;
            let Some(field) = find_tangent_field(&h, degree_bound, common.order).context("tangent field search")?
            else {
                let line = format!("field=none degree_bound={degree_bound} order={}", common.order);
                return Ok(Outcome {
                    lines: vec![line],
                    definite: false,
                });
            };
            let (map, cert) = nonconvergent_selfmap(&h, &field, common.order).context("self-map construction")?;
            let mut lines = vec![match common.format {
                Format::Machine => manifest::write_field(&field),
                Format::Text => format!("field: {field}"),
            }];
            lines.extend(cert.records());
            let fmap = manifest::write_map(&map);
            match out {
                Some(p) => write(&p, &fmap)?,
                None => lines.push(match common.format {
                    Format::Machine => fmap,
                    Format::Text => format!("self-map:\n{map}"),
                }),
            }
            Ok(Outcome::definite(lines))
        }
        Command::Artin { file, common } => {
            let sys = manifest::read_artin(&read(&file)?).context(file.display().to_string())?;
            let v = artin_witness(&sys.equations, &sys.solution, common.order).context("determinant criterion")?;
            let line = match common.format {
                Format::Machine => v.record(),
                Format::Text => v.to_string(),
            };
            Ok(Outcome {
                lines: vec![line],
                definite: v.is_satisfied(),
            })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(outcome) => {
            let mut out = io::stdout().lock();
            for l in &outcome.lines {
                let sep = if l.ends_with('\n') { "" } else { "\n" };
                if let Err(e) = write!(out, "{l}{sep}") {
                    // A closed pipe (e.g. `| head`) is not an error of ours.
                    if e.kind() == io::ErrorKind::BrokenPipe {
                        break;
                    }
                    eprintln!("error: writing output: {e}");
                    return ExitCode::from(1);
                }
            }
            if outcome.definite {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(2)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
