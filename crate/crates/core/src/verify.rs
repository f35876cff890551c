//! Cross-checks between the energy routes and the closed-walk counts.
//!
//! Each check carries its own threshold. Thresholds that measure algebraic
//! identities (doubly stochastic rows, conservation, spectral vs. weights)
//! are fixed; the caller's tolerance governs the comparisons that go through
//! an independent numerical route (moment solves, walk-count consistency).

use std::fmt;

use crate::catalog::{named_graph, NamedGraphId};
use crate::energy::{
    max_pairwise_discrepancy, moment_class_weights, transitive_energy, vertex_energies_moments,
    vertex_energies_spectral, vertex_energies_weights, NEGATIVE_WEIGHT_FLOOR,
};
use crate::error::Result;
use crate::graph::Graph;
use crate::spectral::{
    class_weights, cluster_eigenvalues, eigendecompose, matrix_abs, sqrt_oracle, weight_matrix,
    Spectrum, DEFAULT_CLUSTER_TOL,
};
use crate::walks::walk_table;

pub const DEFAULT_TOLERANCE: f64 = 1e-6;

/// Largest walk length used by the walk/spectrum consistency checks.
pub const WALK_CHECK_KMAX: usize = 11;

pub const STOCHASTIC_TOL: f64 = 1e-10;
pub const CONSERVATION_TOL: f64 = 1e-9;
pub const SPECTRAL_WEIGHTS_TOL: f64 = 1e-10;
pub const SQRT_ORACLE_TOL: f64 = 1e-8;
pub const CATALOG_SPECTRUM_TOL: f64 = 1e-9;
pub const TRANSITIVE_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    fn new(name: &'static str, passed: bool, detail: String) -> Self {
        Check {
            name,
            passed,
            detail,
        }
    }

    fn within(name: &'static str, value: f64, limit: f64, what: &str) -> Self {
        Check::new(
            name,
            value <= limit,
            format!("{what} = {value:.3e} (limit {limit:.0e})"),
        )
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "{tag} {}: {}", self.name, self.detail)
    }
}

/// Runs every graph-generic check.
pub fn verify_graph(g: &Graph, tolerance: f64) -> Result<Vec<Check>> {
    let n = g.order();
    let a = g.adjacency_matrix();
    let am = a.to_matrix();
    let s = eigendecompose(&a)?;
    let mut checks = Vec::new();

    let residual = s.residual(&am);
    let orth = s.orthogonality_error();
    let trace: f64 = s.values.iter().sum();
    let res_bound = Spectrum::residual_bound(n, am.max_abs().max(1.0));
    let orth_bound = Spectrum::orthogonality_bound(n);
    checks.push(Check::new(
        "eigendecomposition",
        residual <= res_bound && orth <= orth_bound && trace.abs() <= 1e-10 * n as f64,
        format!(
            "residual {residual:.1e} (limit {res_bound:.1e}), orthogonality {orth:.1e} (limit {orth_bound:.1e}), trace {trace:.1e}"
        ),
    ));

    let p = weight_matrix(&s);
    checks.push(Check::within(
        "doubly stochastic",
        p.stochastic_deviation(),
        STOCHASTIC_TOL,
        "max |row/column sum - 1|",
    ));

    let spectral = vertex_energies_spectral(g)?;
    let weights = vertex_energies_weights(g)?;
    let moments = vertex_energies_moments(g)?;
    let energy = s.energy();
    let sum: f64 = spectral.energies.iter().sum();
    checks.push(Check::new(
        "conservation",
        [&spectral, &weights, &moments]
            .iter()
            .all(|r| (r.energies.iter().sum::<f64>() - energy).abs() <= CONSERVATION_TOL),
        format!("Σ energies = {sum:.6} = Σ|λ| = {energy:.6}"),
    ));
    checks.push(Check::new(
        "nonnegative energies",
        [&spectral, &weights, &moments]
            .iter()
            .all(|r| r.energies.iter().all(|&e| e >= -1e-9)),
        format!(
            "min energy {:.3e}",
            spectral
                .energies
                .iter()
                .copied()
                .fold(f64::INFINITY, f64::min)
        ),
    ));
    checks.push(Check::within(
        "spectral vs weights",
        spectral.max_abs_diff(&weights),
        SPECTRAL_WEIGHTS_TOL,
        "max per-vertex difference",
    ));
    checks.push(Check::within(
        "method agreement",
        max_pairwise_discrepancy(&[spectral.clone(), weights, moments.clone()]),
        tolerance,
        "max pairwise per-vertex difference",
    ));
    let min_q = moments.diagnostics.min_weight.unwrap_or(0.0);
    checks.push(Check::new(
        "moment weights",
        min_q >= NEGATIVE_WEIGHT_FLOOR
            && moments.diagnostics.max_row_sum_deviation.unwrap_or(0.0) <= 1e-8,
        format!(
            "min weight {min_q:.3e}, max |Σq - 1| {:.3e}",
            moments.diagnostics.max_row_sum_deviation.unwrap_or(0.0)
        ),
    ));

    let abs = matrix_abs(&s);
    let root = sqrt_oracle(&a.gram())?;
    checks.push(Check::within(
        "sqrt oracle",
        root.max_abs_diff(&abs),
        SQRT_ORACLE_TOL,
        "max |(AAᵀ)^½ - |A||",
    ));

    let classes = cluster_eigenvalues(&s, DEFAULT_CLUSTER_TOL)?;
    let q = class_weights(&p, &classes)?;
    let nodes = classes.nodes();
    let walks = walk_table(g, WALK_CHECK_KMAX)?;
    let mut worst_local = 0.0_f64;
    let mut worst_trace = 0.0_f64;
    for k in 0..=WALK_CHECK_KMAX {
        for v in 0..n {
            let predicted: f64 = nodes
                .iter()
                .enumerate()
                .map(|(c, x)| q[(v, c)] * x.powi(k as i32))
                .sum();
            let count = walks.counts[k][v] as f64;
            worst_local = worst_local.max((predicted - count).abs() / count.abs().max(1.0));
        }
        let power_sum: f64 = s.values.iter().map(|x| x.powi(k as i32)).sum();
        let total = walks.row_total(k) as f64;
        worst_trace = worst_trace.max((power_sum - total).abs() / total.abs().max(1.0));
    }
    checks.push(Check::within(
        "walk consistency",
        worst_local,
        tolerance,
        "max relative |Σ_c q_c λ_c^k - (A^k)_ii|",
    ));
    checks.push(Check::within(
        "trace identity",
        worst_trace,
        tolerance,
        "max relative |Σ λ^k - tr A^k|",
    ));

    let moment_sol = moment_class_weights(g)?;
    checks.push(Check::within(
        "class weights",
        moment_sol.weights.max_abs_diff(&q),
        tolerance,
        "max |moment weights - Σ u²|",
    ));

    Ok(checks)
}

/// Generic checks plus those specific to a catalog graph: known spectrum
/// and, for the vertex-transitive members, constant vertex energy.
pub fn verify_named(id: NamedGraphId, tolerance: f64) -> Result<Vec<Check>> {
    let g = named_graph(id);
    let mut checks = verify_graph(&g, tolerance)?;
    let s = eigendecompose(&g.adjacency_matrix())?;

    if let Some(known) = id.known_spectrum() {
        let expected: Vec<f64> = known
            .iter()
            .flat_map(|&(v, m)| std::iter::repeat_n(v, m))
            .collect();
        let dev = s
            .values
            .iter()
            .zip(&expected)
            .fold(0.0_f64, |m, (a, b)| m.max((a - b).abs()));
        let classes = cluster_eigenvalues(&s, DEFAULT_CLUSTER_TOL)?;
        let mult_ok = classes.multiplicities() == known.iter().map(|&(_, m)| m).collect::<Vec<_>>();
        checks.push(Check::new(
            "catalog spectrum",
            dev <= CATALOG_SPECTRUM_TOL && mult_ok,
            format!(
                "max eigenvalue deviation {dev:.3e}, multiplicities {:?}",
                classes.multiplicities()
            ),
        ));

        let spectral = vertex_energies_spectral(&g)?;
        let common = transitive_energy(&g)?.energies[0];
        let spread = spectral.spread();
        let offset = spectral
            .energies
            .iter()
            .fold(0.0_f64, |m, e| m.max((e - common).abs()));
        checks.push(Check::new(
            "transitive consistency",
            spread <= TRANSITIVE_TOL && offset <= TRANSITIVE_TOL,
            format!("spread {spread:.3e}, |ℰ(v) - ℰ(G)/n| {offset:.3e}, ℰ(G)/n = {common:.6}"),
        ));
    }
    Ok(checks)
}
