//! `vertex-energy`: per-vertex graph energies from the command line.
//!
//! Exit codes: 0 success, 1 verification failure, 2 input or parse error,
//! 3 numerical failure.

mod input;
mod render;

use std::io::{self, Write};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use thiserror::Error;
use vertex_energy::verify::{verify_graph, verify_named, Check, DEFAULT_TOLERANCE};
use vertex_energy::{
    cluster_eigenvalues, compute, eigendecompose, max_pairwise_discrepancy, named_graph,
    vertex_energies_spectral, walk_table, Graph, Method, NamedGraphId, WalkTable,
    DEFAULT_CLUSTER_TOL,
};

use input::{Input, Source};
use render::{CatalogRow, GraphEnergies};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error(transparent)]
    Core(#[from] vertex_energy::Error),
    #[error("{label}: {source}")]
    Graph {
        label: String,
        source: vertex_energy::Error,
    },
    #[error("cannot write output: {0}")]
    Output(String),
    #[error("verification failed")]
    VerificationFailed,
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::VerificationFailed => 1,
            CliError::Core(e) | CliError::Graph { source: e, .. } if e.is_numerical() => 3,
            _ => 2,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Table,
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum MethodArg {
    Spectral,
    Weights,
    Moments,
    Transitive,
    /// Spectral, weights and moments, plus their largest disagreement.
    All,
}

impl MethodArg {
    fn methods(self) -> Vec<Method> {
        match self {
            MethodArg::Spectral => vec![Method::Spectral],
            MethodArg::Weights => vec![Method::Weights],
            MethodArg::Moments => vec![Method::Moments],
            MethodArg::Transitive => vec![Method::Transitive],
            MethodArg::All => vec![Method::Spectral, Method::Weights, Method::Moments],
        }
    }
}

fn parse_tolerance(s: &str) -> Result<f64, String> {
    let t: f64 = s.trim().parse().map_err(|e| format!("{e}"))?;
    if t.is_finite() && t >= 0.0 {
        Ok(t)
    } else {
        Err(format!(
            "tolerance must be a finite non-negative number, got {s}"
        ))
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "vertex-energy",
    version,
    about = "Per-vertex energies of simple graphs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// List the named graphs with order, degree and distinct-eigenvalue count.
    Catalog {
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
    },
    /// Per-vertex energies.
    Energy {
        #[command(flatten)]
        source: Source,
        #[arg(long, value_enum, default_value_t = MethodArg::Spectral)]
        method: MethodArg,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
    },
    /// Closed-walk counts (A^k)_ii for k = 0..=kmax.
    Walks {
        #[command(flatten)]
        source: Source,
        /// Largest walk length; defaults to (number of distinct eigenvalues) - 1.
        #[arg(long)]
        kmax: Option<usize>,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
    },
    /// Cross-check the energy routes and walk counts.
    Verify {
        #[command(flatten)]
        source: Source,
        /// Verify every catalog graph.
        #[arg(long, conflicts_with = "source")]
        all_catalog: bool,
        #[arg(long, env = "VE_TOLERANCE", default_value_t = DEFAULT_TOLERANCE, value_parser = parse_tolerance)]
        tolerance: f64,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
    },
    /// Two-column CSV (vertex, energy) of spectral energies for plotting.
    FigureData {
        #[command(flatten)]
        source: Source,
    },
}

/// Runs `f` on every input in parallel; results keep input order and the
/// first failure in input order is reported.
fn map_inputs<T, F>(inputs: &[Input], f: F) -> Result<Vec<T>, CliError>
where
    T: Send,
    F: Fn(&Input) -> Result<T, vertex_energy::Error> + Sync,
{
    let results: Vec<Result<T, vertex_energy::Error>> = inputs.par_iter().map(&f).collect();
    results
        .into_iter()
        .zip(inputs)
        .map(|(r, i)| {
            r.map_err(|source| CliError::Graph {
                label: i.label.clone(),
                source,
            })
        })
        .collect()
}

fn distinct_eigenvalues(g: &Graph) -> Result<usize, vertex_energy::Error> {
    let s = eigendecompose(&g.adjacency_matrix())?;
    Ok(cluster_eigenvalues(&s, DEFAULT_CLUSTER_TOL)?.len())
}

fn cmd_catalog(format: Format) -> Result<String, CliError> {
    let rows = NamedGraphId::ALL
        .into_iter()
        .map(|id| {
            let g = named_graph(id);
            Ok(CatalogRow {
                name: id.name(),
                n: g.order(),
                degree: g.is_regular(),
                distinct: distinct_eigenvalues(&g)?,
            })
        })
        .collect::<Result<Vec<_>, CliError>>()?;
    match format {
        Format::Table => Ok(render::catalog_table(&rows)),
        Format::Csv => render::catalog_csv(&rows),
        Format::Json => render::catalog_json(&rows),
    }
}

fn cmd_energy(source: &Source, method: MethodArg, format: Format) -> Result<String, CliError> {
    let inputs = source.load()?;
    let methods = method.methods();
    let results = map_inputs(&inputs, |i| {
        let reports = methods
            .iter()
            .map(|&m| compute(&i.graph, m))
            .collect::<Result<Vec<_>, _>>()?;
        let discrepancy = (method == MethodArg::All).then(|| max_pairwise_discrepancy(&reports));
        Ok(GraphEnergies {
            label: i.label.clone(),
            n: i.graph.order(),
            reports,
            discrepancy,
        })
    })?;
    match format {
        Format::Table => Ok(render::energy_table(&results)),
        Format::Csv => render::energy_csv(&results),
        Format::Json => render::energy_json(&results),
    }
}

fn cmd_walks(source: &Source, kmax: Option<usize>, format: Format) -> Result<String, CliError> {
    let inputs = source.load()?;
    let tables: Vec<(String, WalkTable)> = map_inputs(&inputs, |i| {
        let k = match kmax {
            Some(k) => k,
            None => distinct_eigenvalues(&i.graph)? - 1,
        };
        Ok((i.label.clone(), walk_table(&i.graph, k)?))
    })?;
    match format {
        Format::Table => Ok(render::walks_table(&tables)),
        Format::Csv => render::walks_csv(&tables),
        Format::Json => render::walks_json(&tables),
    }
}

fn cmd_verify(
    source: &Source,
    all_catalog: bool,
    tolerance: f64,
    format: Format,
) -> Result<(String, bool), CliError> {
    let results: Vec<(String, Vec<Check>)> = if all_catalog || !source.is_given() {
        if !all_catalog {
            return Err(CliError::Input(
                "no graph given; use --graph, --graph6, --file, --stdin or --all-catalog".into(),
            ));
        }
        let ids = NamedGraphId::ALL.to_vec();
        let checks: Vec<Result<Vec<Check>, _>> = ids
            .par_iter()
            .map(|&id| verify_named(id, tolerance))
            .collect();
        ids.iter()
            .zip(checks)
            .map(|(id, r)| {
                r.map(|c| (id.name().to_string(), c))
                    .map_err(|source| CliError::Graph {
                        label: id.name().to_string(),
                        source,
                    })
            })
            .collect::<Result<_, _>>()?
    } else {
        let inputs = source.load()?;
        map_inputs(&inputs, |i| {
            let checks = match i.named {
                Some(id) => verify_named(id, tolerance)?,
                None => verify_graph(&i.graph, tolerance)?,
            };
            Ok((i.label.clone(), checks))
        })?
    };
    let passed = results.iter().all(|(_, c)| c.iter().all(|c| c.passed));
    let text = match format {
        Format::Table => render::verify_table(&results),
        Format::Csv => render::verify_csv(&results)?,
        Format::Json => render::verify_json(&results)?,
    };
    Ok((text, passed))
}

fn cmd_figure_data(source: &Source) -> Result<String, CliError> {
    let inputs = source.load()?;
    let [input] = inputs.as_slice() else {
        return Err(CliError::Input(format!(
            "figure-data takes exactly one graph, got {}",
            inputs.len()
        )));
    };
    let r = vertex_energies_spectral(&input.graph).map_err(|source| CliError::Graph {
        label: input.label.clone(),
        source,
    })?;
    render::figure_csv(&r.energies)
}

fn run(cli: Cli) -> Result<(String, bool), CliError> {
    match cli.command {
        Command::Catalog { format } => cmd_catalog(format).map(|s| (s, true)),
        Command::Energy {
            source,
            method,
            format,
        } => cmd_energy(&source, method, format).map(|s| (s, true)),
        Command::Walks {
            source,
            kmax,
            format,
        } => cmd_walks(&source, kmax, format).map(|s| (s, true)),
        Command::Verify {
            source,
            all_catalog,
            tolerance,
            format,
        } => cmd_verify(&source, all_catalog, tolerance, format),
        Command::FigureData { source } => cmd_figure_data(&source).map(|s| (s, true)),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = run(cli).and_then(|(text, passed)| {
        let mut out = io::stdout().lock();
        out.write_all(text.as_bytes())
            .and_then(|()| out.flush())
            .map_err(|e| CliError::Output(e.to_string()))?;
        if passed {
            Ok(())
        } else {
            Err(CliError::VerificationFailed)
        }
    });
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
