//! Command-line front end. [`run`] does all the work and returns the exit
//! code and both output streams, so it can be tested without a process.

use std::ffi::OsString;
use std::path::{Path, PathBuf};

use cartprod::graph::{
    distance_cartesian_check, distance_matrix, is_transmission_regular, transmissions, wiener_index,
};
use cartprod::identities::cartesian_factorize;
use cartprod::io::{parse_matrix_json, AnyMatrix};
use cartprod::matrix::set_capacity;
use cartprod::spectral::{default_zero_tol, inertia_of, jacobi_eigenvalues};
use cartprod::verify::run_verify;
use cartprod::{Dims, Execution, Graph, Matrix, Scalar};
use clap::error::ErrorKind;
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

pub const CAPACITY_ENV: &str = "CARTPROD_CAPACITY";

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{0}")]
    Core(#[from] cartprod::Error),
}

#[derive(Debug, Parser)]
#[command(
    name = "cartprod",
    version,
    about = "Cartesian products of matrices and graphs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Emit {
    Graph,
    Dist,
    Both,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Wiener index, transmissions, distance spectral radius and inertia of a graph
    Invariants { graph: PathBuf },
    /// Cartesian product of two graphs and its distance matrix
    Product {
        g1: PathBuf,
        g2: PathBuf,
        #[arg(long, value_enum, default_value_t = Emit::Both)]
        emit: Emit,
    },
    /// Canonical factors (A, B) of M = A⊘B with b11 = 0
    Factorize {
        matrix: PathBuf,
        /// Factor orders as m,n
        #[arg(long, value_parser = parse_split)]
        split: (usize, usize),
    },
    /// Eigenvalues of a symmetric matrix, or of a graph's distance matrix
    Spectrum {
        input: PathBuf,
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
    },
    /// Seeded randomized checks of every identity
    Verify {
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long, default_value_t = 200)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 3)]
        max_order: usize,
    },
}

fn parse_split(s: &str) -> Result<(usize, usize), String> {
    let (m, n) = s
        .split_once(',')
        .ok_or_else(|| format!("expected m,n but got {s:?}"))?;
    let parse = |x: &str| {
        x.trim()
            .parse::<usize>()
            .map_err(|e| format!("bad order {x:?}: {e}"))
    };
    Ok((parse(m)?, parse(n)?))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CommandResult {
    pub exit_code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl CommandResult {
    fn usage(message: impl Into<String>) -> Self {
        CommandResult {
            exit_code: EXIT_USAGE,
            stdout: String::new(),
            stderr: message.into(),
        }
    }
}

/// Parses `args` (including the program name) and runs the command.
/// `capacity` is the raw value of [`CAPACITY_ENV`], if set.
pub fn run<I, T>(args: I, capacity: Option<&str>) -> CommandResult
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => CommandResult {
                    exit_code: EXIT_OK,
                    stdout: text,
                    stderr: String::new(),
                },
                _ => CommandResult::usage(text),
            };
        }
    };
    if let Some(raw) = capacity {
        match raw.trim().parse::<usize>() {
            Ok(cap) if cap > 0 => {
                set_capacity(cap);
            }
            _ => {
                return CommandResult::usage(format!(
                    "error: {CAPACITY_ENV} must be a positive integer, got {raw:?}\n"
                ))
            }
        }
    }
    match execute(cli.command) {
        Ok((exit_code, payload)) => {
            let mut stdout = serde_json::to_string_pretty(&payload).expect("JSON values serialize");
            stdout.push('\n');
            CommandResult {
                exit_code,
                stdout,
                stderr: String::new(),
            }
        }
        Err(e) => CommandResult::usage(format!("error: {e}\n")),
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn read_graph(path: &Path) -> Result<Graph, CliError> {
    Ok(Graph::parse_edge_list(&read(path)?)?)
}

fn execute(command: Command) -> Result<(i32, Value), CliError> {
    match command {
        Command::Invariants { graph } => invariants(&read_graph(&graph)?),
        Command::Product { g1, g2, emit } => product(&read_graph(&g1)?, &read_graph(&g2)?, emit),
        Command::Factorize { matrix, split } => factorize(&read(&matrix)?, split),
        Command::Spectrum { input, tol } => spectrum(&read(&input)?, tol),
        Command::Verify {
            suite,
            trials,
            seed,
            max_order,
        } => verify(&suite, trials, seed, max_order),
    }
}

fn invariants(g: &Graph) -> Result<(i32, Value), CliError> {
    let d = distance_matrix(g)?;
    let spectrum = jacobi_eigenvalues(&d, cartprod::spectral::DEFAULT_TOL)?;
    let inertia = inertia_of(&spectrum.eigenvalues, default_zero_tol(&d));
    Ok((
        EXIT_OK,
        json!({
            "status": "ok",
            "vertices": g.vertex_count(),
            "edges": g.edge_count(),
            "wiener": wiener_index(g)?,
            "transmissions": transmissions(g)?,
            "transmission_regular": is_transmission_regular(g)?,
            "rho": spectrum.max(),
            "inertia": inertia.as_array(),
        }),
    ))
}

fn product(g1: &Graph, g2: &Graph, emit: Emit) -> Result<(i32, Value), CliError> {
    let p = g1.cartesian_product(g2);
    let holds = distance_cartesian_check(g1, g2)?;
    let mut payload = json!({
        "status": if holds { "ok" } else { "identity_violated" },
        "vertices": p.vertex_count(),
        "edges": p.edge_count(),
        "cartesian_identity_holds": holds,
    });
    if matches!(emit, Emit::Graph | Emit::Both) {
        payload["graph"] = Value::String(p.to_edge_list());
    }
    if matches!(emit, Emit::Dist | Emit::Both) {
        payload["distance_matrix"] =
            serde_json::to_value(distance_matrix(&p)?.to_doc()?).expect("document serializes");
    }
    Ok((if holds { EXIT_OK } else { EXIT_FAILURE }, payload))
}

fn factor_payload<T: Scalar>(m: &Matrix<T>, dims: Dims) -> Result<(i32, Value), CliError> {
    Ok(match cartesian_factorize(m, dims)? {
        Some((a, b)) => (
            EXIT_OK,
            json!({
                "status": "ok",
                "split": [dims.m, dims.n],
                "a": serde_json::to_value(a.to_doc()?).expect("document serializes"),
                "b": serde_json::to_value(b.to_doc()?).expect("document serializes"),
            }),
        ),
        None => (
            EXIT_FAILURE,
            json!({ "status": "not_a_cartesian_product", "split": [dims.m, dims.n] }),
        ),
    })
}

fn factorize(text: &str, (m, n): (usize, usize)) -> Result<(i32, Value), CliError> {
    let dims = Dims::new(m, n)?;
    match parse_matrix_json(text)? {
        AnyMatrix::Exact(x) => factor_payload(&x, dims),
        AnyMatrix::Approx(x) => factor_payload(&x, dims),
    }
}

fn spectrum_payload<T: Scalar>(
    m: &Matrix<T>,
    tol: f64,
    source: &str,
) -> Result<(i32, Value), CliError> {
    let s = jacobi_eigenvalues(m, tol)?;
    let inertia = inertia_of(&s.eigenvalues, default_zero_tol(m));
    Ok((
        EXIT_OK,
        json!({
            "status": "ok",
            "source": source,
            "order": m.rows(),
            "eigenvalues": s.eigenvalues,
            "max": s.max(),
            "off_diag_norm": s.off_diag_norm,
            "sweeps": s.sweeps,
            "inertia": inertia.as_array(),
        }),
    ))
}

fn spectrum(text: &str, tol: f64) -> Result<(i32, Value), CliError> {
    if text.trim_start().starts_with('{') {
        match parse_matrix_json(text)? {
            AnyMatrix::Exact(x) => spectrum_payload(&x, tol, "matrix"),
            AnyMatrix::Approx(x) => spectrum_payload(&x, tol, "matrix"),
        }
    } else {
        let g = Graph::parse_edge_list(text)?;
        let (code, mut payload) = spectrum_payload(&distance_matrix(&g)?, tol, "distance_matrix")?;
        payload["rho"] = payload["max"].clone();
        Ok((code, payload))
    }
}

fn verify(
    suite: &str,
    trials: usize,
    seed: u64,
    max_order: usize,
) -> Result<(i32, Value), CliError> {
    let reports = run_verify(suite, trials, seed, max_order, Execution::default())?;
    let failures: usize = reports.iter().map(|r| r.failures).sum();
    Ok((
        if failures == 0 { EXIT_OK } else { EXIT_FAILURE },
        json!({
            "status": if failures == 0 { "ok" } else { "failures" },
            "total_failures": failures,
            "reports": reports,
        }),
    ))
}
