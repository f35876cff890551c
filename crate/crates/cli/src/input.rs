use std::fs;
use std::io::{self, Read};
use std::path::PathBuf;

use clap::Args;
use rayon::prelude::*;
use vertex_energy::{named_graph, parse_graph6, Graph, NamedGraphId};

use crate::CliError;

/// Where the graph(s) come from. Exactly one source may be given.
#[derive(Debug, Args)]
#[group(id = "source", multiple = false)]
pub struct Source {
    /// Catalog graph (see `catalog`).
    #[arg(long, value_name = "NAME")]
    pub graph: Option<String>,

    /// File of graph6 strings, one per line.
    #[arg(long, value_name = "PATH")]
    pub file: Option<PathBuf>,

    /// Read graph6 strings, one per line, from standard input.
    #[arg(long)]
    pub stdin: bool,

    /// A single graph6 string given inline.
    #[arg(long, value_name = "TEXT")]
    pub graph6: Option<String>,
}

#[derive(Debug, Clone)]
pub struct Input {
    pub label: String,
    pub named: Option<NamedGraphId>,
    pub graph: Graph,
}

impl Source {
    pub fn is_given(&self) -> bool {
        self.graph.is_some() || self.file.is_some() || self.stdin || self.graph6.is_some()
    }

    pub fn load(&self) -> Result<Vec<Input>, CliError> {
        if let Some(name) = &self.graph {
            let id: NamedGraphId = name.parse()?;
            return Ok(vec![Input {
                label: id.name().to_string(),
                named: Some(id),
                graph: named_graph(id),
            }]);
        }
        if let Some(text) = &self.graph6 {
            return parse_lines(text);
        }
        if let Some(path) = &self.file {
            let text = fs::read_to_string(path)
                .map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))?;
            return parse_lines(&text);
        }
        if self.stdin {
            let mut text = String::new();
            io::stdin()
                .read_to_string(&mut text)
                .map_err(|e| CliError::Input(format!("cannot read standard input: {e}")))?;
            return parse_lines(&text);
        }
        Err(CliError::Input(
            "no graph given; use --graph, --graph6, --file or --stdin".into(),
        ))
    }
}

/// Parses one graph6 string per non-blank line. Each graph is labelled by
/// its own graph6 text.
fn parse_lines(text: &str) -> Result<Vec<Input>, CliError> {
    let lines: Vec<(usize, &str)> = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty())
        .collect();
    if lines.is_empty() {
        return Err(CliError::Input("input contains no graph6 lines".into()));
    }
    lines
        .par_iter()
        .map(|&(no, line)| {
            let graph =
                parse_graph6(line).map_err(|e| CliError::Input(format!("line {no}: {e}")))?;
            let label = line.strip_prefix(">>graph6<<").unwrap_or(line).to_string();
            Ok(Input {
                label,
                named: None,
                graph,
            })
        })
        .collect()
}
