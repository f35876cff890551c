//! Text, CSV and JSON rendering. Everything is rendered into a `String`
//! first so output is byte-identical between runs.

use std::fmt::Write as _;

use serde_json::{json, Map, Value};
use vertex_energy::verify::Check;
use vertex_energy::{EnergyReport, WalkTable};

use crate::CliError;

/// A real as a JSON number with 17 significant digits (trailing zeros
/// dropped), which always parses back to the same f64. Non-finite values
/// become `null`.
pub fn json_real(x: f64) -> Value {
    if !x.is_finite() {
        return Value::Null;
    }
    serde_json::from_str(&format_17(x)).expect("formatted real is valid JSON")
}

fn format_17(x: f64) -> String {
    if x == 0.0 {
        return "0.0".into();
    }
    let sci = format!("{x:.16e}");
    let (mantissa, exp) = sci.split_once('e').expect("exponent in {:e} output");
    let exp: i32 = exp.parse().expect("integer exponent");
    if (-5..17).contains(&exp) {
        let decimals = (16 - exp).max(0) as usize;
        let fixed = format!("{x:.decimals$}");
        if fixed.contains('.') {
            let trimmed = fixed.trim_end_matches('0');
            if trimmed.ends_with('.') {
                format!("{trimmed}0")
            } else {
                trimmed.to_string()
            }
        } else {
            fixed
        }
    } else {
        let m = if mantissa.contains('.') {
            mantissa.trim_end_matches('0').trim_end_matches('.')
        } else {
            mantissa
        };
        format!("{m}e{exp}")
    }
}

fn csv_writer() -> csv::Writer<Vec<u8>> {
    csv::Writer::from_writer(Vec::new())
}

fn csv_finish(w: csv::Writer<Vec<u8>>) -> Result<String, CliError> {
    let bytes = w
        .into_inner()
        .map_err(|e| CliError::Output(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| CliError::Output(e.to_string()))
}

fn csv_row<I, T>(w: &mut csv::Writer<Vec<u8>>, row: I) -> Result<(), CliError>
where
    I: IntoIterator<Item = T>,
    T: AsRef<[u8]>,
{
    w.write_record(row)
        .map_err(|e| CliError::Output(e.to_string()))
}

fn to_json_text(v: &Value) -> Result<String, CliError> {
    let mut s = serde_json::to_string_pretty(v).map_err(|e| CliError::Output(e.to_string()))?;
    s.push('\n');
    Ok(s)
}

pub struct CatalogRow {
    pub name: &'static str,
    pub n: usize,
    pub degree: Option<usize>,
    pub distinct: usize,
}

pub fn catalog_table(rows: &[CatalogRow]) -> String {
    let mut out = String::new();
    for r in rows {
        let degree = r.degree.map_or("-".to_string(), |d| d.to_string());
        writeln!(out, "{} {} {} {}", r.name, r.n, degree, r.distinct).unwrap();
    }
    out
}

pub fn catalog_csv(rows: &[CatalogRow]) -> Result<String, CliError> {
    let mut w = csv_writer();
    csv_row(&mut w, ["name", "n", "degree", "distinct_eigenvalues"])?;
    for r in rows {
        let degree = r.degree.map_or(String::new(), |d| d.to_string());
        csv_row(
            &mut w,
            [
                r.name.to_string(),
                r.n.to_string(),
                degree,
                r.distinct.to_string(),
            ],
        )?;
    }
    csv_finish(w)
}

pub fn catalog_json(rows: &[CatalogRow]) -> Result<String, CliError> {
    let v: Vec<Value> = rows
        .iter()
        .map(|r| json!({"name": r.name, "n": r.n, "degree": r.degree, "distinct_eigenvalues": r.distinct}))
        .collect();
    to_json_text(&Value::Array(v))
}

/// Energies of one input graph under one or more methods.
pub struct GraphEnergies {
    pub label: String,
    pub n: usize,
    pub reports: Vec<EnergyReport>,
    pub discrepancy: Option<f64>,
}

pub fn energy_table(results: &[GraphEnergies]) -> String {
    let mut out = String::new();
    for (gi, g) in results.iter().enumerate() {
        for (ri, r) in g.reports.iter().enumerate() {
            if gi + ri > 0 {
                out.push('\n');
            }
            writeln!(out, "graph {} (n = {}), method {}", g.label, g.n, r.method).unwrap();
            writeln!(out, "{:>6}  {:>12}", "vertex", "energy").unwrap();
            for (v, e) in r.energies.iter().enumerate() {
                writeln!(out, "{:>6}  {:>12.6}", v + 1, e).unwrap();
            }
            writeln!(out, "{:>6}  {:>12.6}", "total", r.total).unwrap();
            for (k, v) in r.diagnostics.entries() {
                writeln!(out, "  {k} = {v:.6e}").unwrap();
            }
        }
        if let Some(d) = g.discrepancy {
            writeln!(out, "max pairwise discrepancy = {d:.6e}").unwrap();
        }
    }
    out
}

pub fn energy_csv(results: &[GraphEnergies]) -> Result<String, CliError> {
    let mut w = csv_writer();
    csv_row(&mut w, ["graph", "n", "method", "vertex", "energy"])?;
    for g in results {
        let n = g.n.to_string();
        for r in &g.reports {
            for (v, e) in r.energies.iter().enumerate() {
                csv_row(
                    &mut w,
                    [
                        g.label.clone(),
                        n.clone(),
                        r.method.to_string(),
                        (v + 1).to_string(),
                        format!("{e:.6}"),
                    ],
                )?;
            }
        }
        if let Some(d) = g.discrepancy {
            csv_row(
                &mut w,
                [
                    g.label.clone(),
                    n.clone(),
                    "max_pairwise_discrepancy".into(),
                    String::new(),
                    format!("{d:.6e}"),
                ],
            )?;
        }
    }
    csv_finish(w)
}

fn report_json(label: &str, n: usize, r: &EnergyReport) -> Value {
    let diagnostics: Map<String, Value> = r
        .diagnostics
        .entries()
        .into_iter()
        .map(|(k, v)| (k.to_string(), json_real(v)))
        .collect();
    json!({
        "graph": label,
        "n": n,
        "method": r.method.name(),
        "energies": r.energies.iter().map(|&e| json_real(e)).collect::<Vec<_>>(),
        "total": json_real(r.total),
        "diagnostics": diagnostics,
    })
}

pub fn energy_json(results: &[GraphEnergies]) -> Result<String, CliError> {
    let v: Vec<Value> = results
        .iter()
        .map(|g| {
            let mut obj = Map::new();
            obj.insert("graph".into(), json!(g.label));
            obj.insert("n".into(), json!(g.n));
            obj.insert(
                "records".into(),
                Value::Array(
                    g.reports
                        .iter()
                        .map(|r| report_json(&g.label, g.n, r))
                        .collect(),
                ),
            );
            if let Some(d) = g.discrepancy {
                obj.insert("max_pairwise_discrepancy".into(), json_real(d));
            }
            Value::Object(obj)
        })
        .collect();
    to_json_text(&Value::Array(v))
}

pub fn walks_table(results: &[(String, WalkTable)]) -> String {
    let mut out = String::new();
    for (i, (label, t)) in results.iter().enumerate() {
        if results.len() > 1 {
            if i > 0 {
                out.push('\n');
            }
            writeln!(out, "graph {label}").unwrap();
        }
        let width = t
            .counts
            .iter()
            .flatten()
            .map(|c| c.to_string().len())
            .max()
            .unwrap_or(1)
            .max(t.n.to_string().len() + 1);
        write!(out, "{:>3}", "k").unwrap();
        for v in 1..=t.n {
            write!(out, " {:>width$}", format!("v{v}")).unwrap();
        }
        out.push('\n');
        for (k, row) in t.counts.iter().enumerate() {
            write!(out, "{k:>3}").unwrap();
            for c in row {
                write!(out, " {c:>width$}").unwrap();
            }
            out.push('\n');
        }
    }
    out
}

pub fn walks_csv(results: &[(String, WalkTable)]) -> Result<String, CliError> {
    let mut out = String::new();
    for (i, (label, t)) in results.iter().enumerate() {
        if results.len() > 1 {
            if i > 0 {
                out.push('\n');
            }
            writeln!(out, "# graph {label}").unwrap();
        }
        let mut w = csv_writer();
        let header = std::iter::once("k".to_string()).chain((1..=t.n).map(|v| format!("v{v}")));
        csv_row(&mut w, header)?;
        for (k, row) in t.counts.iter().enumerate() {
            csv_row(
                &mut w,
                std::iter::once(k.to_string()).chain(row.iter().map(i64::to_string)),
            )?;
        }
        out.push_str(&csv_finish(w)?);
    }
    Ok(out)
}

pub fn walks_json(results: &[(String, WalkTable)]) -> Result<String, CliError> {
    let v: Vec<Value> = results
        .iter()
        .map(|(label, t)| json!({"graph": label, "n": t.n, "kmax": t.kmax, "counts": t.counts}))
        .collect();
    to_json_text(&Value::Array(v))
}

pub fn verify_table(results: &[(String, Vec<Check>)]) -> String {
    let mut out = String::new();
    for (i, (label, checks)) in results.iter().enumerate() {
        if i > 0 {
            out.push('\n');
        }
        writeln!(out, "graph {label}").unwrap();
        for c in checks {
            writeln!(out, "{c}").unwrap();
        }
        let passed = checks.iter().filter(|c| c.passed).count();
        writeln!(out, "{passed}/{} checks passed", checks.len()).unwrap();
    }
    out
}

pub fn verify_csv(results: &[(String, Vec<Check>)]) -> Result<String, CliError> {
    let mut w = csv_writer();
    csv_row(&mut w, ["graph", "check", "passed", "detail"])?;
    for (label, checks) in results {
        for c in checks {
            csv_row(
                &mut w,
                [
                    label.as_str(),
                    c.name,
                    if c.passed { "true" } else { "false" },
                    &c.detail,
                ],
            )?;
        }
    }
    csv_finish(w)
}

pub fn verify_json(results: &[(String, Vec<Check>)]) -> Result<String, CliError> {
    let v: Vec<Value> = results
        .iter()
        .map(|(label, checks)| {
            json!({
                "graph": label,
                "passed": checks.iter().all(|c| c.passed),
                "checks": checks
                    .iter()
                    .map(|c| json!({"name": c.name, "passed": c.passed, "detail": c.detail}))
                    .collect::<Vec<_>>(),
            })
        })
        .collect();
    to_json_text(&Value::Array(v))
}

pub fn figure_csv(energies: &[f64]) -> Result<String, CliError> {
    let mut w = csv_writer();
    csv_row(&mut w, ["vertex", "energy"])?;
    for (v, e) in energies.iter().enumerate() {
        csv_row(&mut w, [(v + 1).to_string(), format!("{e:.6}")])?;
    }
    csv_finish(w)
}
