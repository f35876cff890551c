//! Per-vertex energy `ℰ(v_i) = |A|_ii` by several independent routes.
//!
//! * [`Method::Spectral`] reads the diagonal of `|A| = U·diag(|λ|)·Uᵀ`.
//! * [`Method::Weights`] forms `Σ_j u_ij²·|λ_j|` from the weight matrix.
//! * [`Method::Moments`] never touches eigenvectors: for each vertex it solves
//!   the Vandermonde system `Σ_c q_c·λ_c^k = (A^k)_ii`, k = 0..d−1, over the
//!   `d` distinct eigenvalues, then sums `q_c·|λ_c|`.
//! * [`Method::Transitive`] assumes every vertex is alike and returns `ℰ(G)/n`.

// Negated comparisons below are deliberate: a NaN must fail every check.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

use std::fmt;
use std::str::FromStr;

use crate::dd::Dd;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::linalg::Matrix;
use crate::spectral::{
    self, cluster_eigenvalues, eigendecompose, matrix_abs, weight_matrix, EigenClasses, Spectrum,
    DEFAULT_CLUSTER_TOL,
};
use crate::walks::{walk_table, WalkTable};

/// Moment-method weights below this are treated as a failed solve.
pub const NEGATIVE_WEIGHT_FLOOR: f64 = -1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    Spectral,
    Weights,
    Moments,
    Transitive,
}

impl Method {
    pub const ALL: [Method; 4] = [
        Method::Spectral,
        Method::Weights,
        Method::Moments,
        Method::Transitive,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Method::Spectral => "spectral",
            Method::Weights => "weights",
            Method::Moments => "moments",
            Method::Transitive => "transitive",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Method::ALL
            .into_iter()
            .find(|m| m.name().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| Error::BadParameters(format!("unknown method `{s}`")))
    }
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct Diagnostics {
    /// ‖AU − UΛ‖_max of the eigendecomposition used.
    pub eigen_residual: f64,
    /// ‖UᵀU − I‖_max.
    pub orthogonality_error: f64,
    /// Largest |Σ_j p_ij − 1| over rows (and columns, for the full weight matrix).
    pub max_row_sum_deviation: Option<f64>,
    /// Smallest weight that entered the energy sum.
    pub min_weight: Option<f64>,
    /// Worst ‖Vq − rhs‖_max over all vertex moment systems.
    pub moment_residual: Option<f64>,
}

impl Diagnostics {
    fn from_spectrum(g: &Graph, s: &Spectrum) -> Self {
        Diagnostics {
            eigen_residual: s.residual(&g.adjacency_matrix().to_matrix()),
            orthogonality_error: s.orthogonality_error(),
            ..Default::default()
        }
    }

    /// Flattened `(key, value)` pairs, skipping absent entries.
    pub fn entries(&self) -> Vec<(&'static str, f64)> {
        let mut out = vec![
            ("eigen_residual", self.eigen_residual),
            ("orthogonality_error", self.orthogonality_error),
        ];
        let optional = [
            ("max_row_sum_deviation", self.max_row_sum_deviation),
            ("min_weight", self.min_weight),
            ("moment_residual", self.moment_residual),
        ];
        out.extend(optional.into_iter().filter_map(|(k, v)| v.map(|v| (k, v))));
        out
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct EnergyReport {
    pub method: Method,
    /// Energy of each vertex, in vertex-index order.
    pub energies: Vec<f64>,
    pub total: f64,
    pub diagnostics: Diagnostics,
}

impl EnergyReport {
    /// Largest per-vertex absolute difference between two reports.
    pub fn max_abs_diff(&self, other: &EnergyReport) -> f64 {
        assert_eq!(self.energies.len(), other.energies.len());
        self.energies
            .iter()
            .zip(&other.energies)
            .fold(0.0, |m, (a, b)| m.max((a - b).abs()))
    }

    /// max − min over vertices.
    pub fn spread(&self) -> f64 {
        let (lo, hi) = self
            .energies
            .iter()
            .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &e| {
                (lo.min(e), hi.max(e))
            });
        hi - lo
    }
}

/// Largest per-vertex discrepancy over all pairs of reports.
pub fn max_pairwise_discrepancy(reports: &[EnergyReport]) -> f64 {
    let mut worst = 0.0_f64;
    for (i, a) in reports.iter().enumerate() {
        for b in &reports[i + 1..] {
            worst = worst.max(a.max_abs_diff(b));
        }
    }
    worst
}

pub fn compute(g: &Graph, method: Method) -> Result<EnergyReport> {
    match method {
        Method::Spectral => vertex_energies_spectral(g),
        Method::Weights => vertex_energies_weights(g),
        Method::Moments => vertex_energies_moments(g),
        Method::Transitive => transitive_energy(g),
    }
}

pub fn graph_energy(g: &Graph) -> Result<f64> {
    Ok(eigendecompose(&g.adjacency_matrix())?.energy())
}

pub fn vertex_energies_spectral(g: &Graph) -> Result<EnergyReport> {
    let s = eigendecompose(&g.adjacency_matrix())?;
    let energies = matrix_abs(&s).diag();
    Ok(EnergyReport {
        method: Method::Spectral,
        total: energies.iter().sum(),
        energies,
        diagnostics: Diagnostics::from_spectrum(g, &s),
    })
}

pub fn vertex_energies_weights(g: &Graph) -> Result<EnergyReport> {
    let s = eigendecompose(&g.adjacency_matrix())?;
    let p = weight_matrix(&s);
    let abs_values: Vec<f64> = s.values.iter().map(|l| l.abs()).collect();
    let energies: Vec<f64> = (0..g.order())
        .map(|i| {
            p.matrix()
                .row(i)
                .iter()
                .zip(&abs_values)
                .map(|(w, l)| w * l)
                .sum()
        })
        .collect();
    Ok(EnergyReport {
        method: Method::Weights,
        total: energies.iter().sum(),
        energies,
        diagnostics: Diagnostics {
            max_row_sum_deviation: Some(p.stochastic_deviation()),
            min_weight: Some(p.min_entry()),
            ..Diagnostics::from_spectrum(g, &s)
        },
    })
}

/// Square Vandermonde system over distinct eigenvalue nodes; row `k` holds
/// the `k`-th powers of the nodes.
///
/// Nodes are carried to double-double precision. Solving in plain f64 loses
/// too much: the rounding of the eigenvalues alone moves the weights by
/// ~1e-10 on small random graphs.
#[derive(Debug, Clone)]
pub struct MomentSystem {
    nodes: Vec<f64>,
    precise: Vec<Dd>,
    matrix: Matrix,
}

impl MomentSystem {
    pub fn new(nodes: Vec<f64>) -> Result<Self> {
        if nodes.is_empty() {
            return Err(Error::BadParameters(
                "moment system needs at least one node".into(),
            ));
        }
        if let Some(w) = nodes.windows(2).find(|w| !(w[0] < w[1])) {
            return Err(Error::BadParameters(format!(
                "moment nodes must be strictly increasing ({} then {})",
                w[0], w[1]
            )));
        }
        let d = nodes.len();
        let matrix = Matrix::from_fn(d, d, |k, j| nodes[j].powi(k as i32));
        let precise = nodes.iter().map(|&x| Dd::from(x)).collect();
        Ok(MomentSystem {
            nodes,
            precise,
            matrix,
        })
    }

    pub fn from_classes(classes: &EigenClasses) -> Result<Self> {
        MomentSystem::new(classes.nodes())
    }

    pub fn dim(&self) -> usize {
        self.nodes.len()
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    /// Polishes the nodes against exact power sums.
    ///
    /// With `multiplicities[c]` copies of node `c`, the nodes must satisfy
    /// `Σ_c m_c·x_c^k = traces[k−1]` for k = 1..=d, where `traces[k−1]` is
    /// `tr(A^k)`. A few Newton steps on this system, with residuals in
    /// double-double, recover the nodes far below f64 rounding. Returns
    /// `false` and leaves the nodes alone if the iteration misbehaves.
    pub fn refine_nodes(&mut self, multiplicities: &[usize], traces: &[i128]) -> bool {
        let d = self.dim();
        assert_eq!(multiplicities.len(), d);
        assert_eq!(traces.len(), d);
        let scale = self.nodes.iter().fold(1.0_f64, |m, x| m.max(x.abs()));
        let mut x = self.precise.clone();
        let mut last = f64::INFINITY;
        for _ in 0..6 {
            let mut pow: Vec<Dd> = x.clone();
            let mut rhs = Vec::with_capacity(d);
            for (k, &t) in traces.iter().enumerate() {
                let mut f = -Dd::from_i128(t);
                for (c, p) in pow.iter().enumerate() {
                    f = f + *p * Dd::from(multiplicities[c] as f64);
                }
                rhs.push(f.to_f64() / (k + 1) as f64);
                for (p, xc) in pow.iter_mut().zip(&x) {
                    *p = *p * *xc;
                }
            }
            let hi: Vec<f64> = x.iter().map(|v| v.hi).collect();
            let mut step = bjorck_pereyra(&hi, rhs.into_iter().map(Dd::from).collect())
                .into_iter()
                .map(Dd::to_f64)
                .collect::<Vec<_>>();
            for (s, &m) in step.iter_mut().zip(multiplicities) {
                *s /= m as f64;
            }
            let size = step.iter().fold(0.0_f64, |m, s| m.max(s.abs()));
            if !(size <= 1e-8 * scale) {
                return false;
            }
            if size >= last {
                break;
            }
            last = size;
            for (xc, s) in x.iter_mut().zip(step) {
                *xc = *xc - Dd::from(s);
            }
            if size <= 1e-30 * scale {
                break;
            }
        }
        let hi: Vec<f64> = x.iter().map(|v| v.to_f64()).collect();
        if hi.windows(2).any(|w| !(w[0] < w[1])) {
            return false;
        }
        self.matrix = Matrix::from_fn(d, d, |k, j| hi[j].powi(k as i32));
        self.nodes = hi;
        self.precise = x;
        true
    }

    /// ‖V·q − rhs‖_max, evaluated in double-double.
    pub fn residual(&self, q: &[f64], rhs: &[i64]) -> f64 {
        let q: Vec<Dd> = q.iter().map(|&v| Dd::from(v)).collect();
        self.residual_dd(&q, rhs)
    }

    fn residual_dd(&self, q: &[Dd], rhs: &[i64]) -> f64 {
        let mut pow = vec![Dd::ONE; self.dim()];
        let mut worst = 0.0_f64;
        for &r in rhs {
            let mut acc = -Dd::from_i128(i128::from(r));
            for (p, qj) in pow.iter().zip(q) {
                acc = acc + *p * *qj;
            }
            let a = acc.to_f64().abs();
            worst = if a.is_nan() { f64::NAN } else { worst.max(a) };
            for (p, x) in pow.iter_mut().zip(&self.precise) {
                *p = *p * *x;
            }
        }
        worst
    }
}

/// Primal Björck–Pereyra recurrences in double-double; `b` is overwritten
/// with the solution.
#[allow(clippy::needless_range_loop)]
fn bjorck_pereyra<X: Copy + Into<Dd>>(x: &[X], mut b: Vec<Dd>) -> Vec<Dd> {
    let x: Vec<Dd> = x.iter().map(|&v| v.into()).collect();
    let n = x.len() - 1;
    for k in 0..n {
        for i in (k + 1..=n).rev() {
            b[i] = b[i] - x[k] * b[i - 1];
        }
    }
    for k in (0..n).rev() {
        for i in k + 1..=n {
            b[i] = b[i] / (x[i] - x[i - k - 1]);
        }
        for i in k..n {
            b[i] = b[i] - b[i + 1];
        }
    }
    b
}

/// Solves `Σ_j q_j·node_j^k = rhs_k` for k = 0..d−1.
///
/// Uses the Björck–Pereyra recurrences for the primal Vandermonde problem
/// (O(d²), no pivoting), then checks the result against the explicit
/// matrix.
pub fn solve_moment_system(ms: &MomentSystem, rhs: &[i64]) -> Result<Vec<f64>> {
    let d = ms.dim();
    if rhs.len() != d {
        return Err(Error::DimensionMismatch {
            expected: d,
            found: rhs.len(),
        });
    }
    let b: Vec<Dd> = rhs.iter().map(|&r| Dd::from_i128(i128::from(r))).collect();
    let q = bjorck_pereyra(&ms.precise, b);

    let residual = ms.residual_dd(&q, rhs);
    let scale = rhs
        .iter()
        .map(|r| r.unsigned_abs())
        .max()
        .unwrap_or(0)
        .max(1) as f64;
    if !(residual <= 1e-6 * scale) {
        return Err(Error::IllConditioned {
            residual,
            detail: format!("Vandermonde residual exceeds 1e-6 x {scale}"),
        });
    }
    let sum = q.iter().fold(Dd::ZERO, |acc, v| acc + *v);
    let sum_err = (sum - Dd::from_i128(i128::from(rhs[0]))).abs().to_f64();
    if !(sum_err <= 1e-8 * (rhs[0].unsigned_abs().max(1) as f64)) {
        return Err(Error::IllConditioned {
            residual: sum_err,
            detail: "weights do not sum to the zeroth moment".into(),
        });
    }
    Ok(q.into_iter().map(Dd::to_f64).collect())
}

/// Class weights recovered from closed-walk counts, one row per vertex.
#[derive(Debug, Clone)]
pub struct MomentSolution {
    pub classes: EigenClasses,
    pub system: MomentSystem,
    /// Closed-walk counts for k = 0..d−1.
    pub walks: WalkTable,
    /// `weights[(i, c)]` is vertex `i`'s weight on class `c`.
    pub weights: Matrix,
    pub max_residual: f64,
    pub spectrum: Spectrum,
}

pub fn moment_class_weights(g: &Graph) -> Result<MomentSolution> {
    let spectrum = eigendecompose(&g.adjacency_matrix())?;
    let classes = cluster_eigenvalues(&spectrum, DEFAULT_CLUSTER_TOL)?;
    let mut system = MomentSystem::from_classes(&classes)?;
    let d = system.dim();

    // One extra walk length gives tr(A^d) for polishing the nodes; without
    // it the f64 eigenvalues are used as they are.
    let walks = match walk_table(g, d) {
        Ok(mut t) => {
            let traces: Vec<i128> = (1..=d).map(|k| t.row_total(k)).collect();
            system.refine_nodes(&classes.multiplicities(), &traces);
            t.counts.truncate(d);
            t.kmax = d - 1;
            t
        }
        Err(Error::Overflow { k, .. }) if k == d => walk_table(g, d - 1)?,
        Err(e) => return Err(e),
    };

    let n = g.order();
    let mut weights = Matrix::zeros(n, d);
    let mut max_residual = 0.0_f64;
    for v in 0..n {
        let rhs = walks.moments_for_vertex(v)?;
        let q = solve_moment_system(&system, &rhs)?;
        max_residual = max_residual.max(system.residual(&q, &rhs));
        for (c, &w) in q.iter().enumerate() {
            if !(NEGATIVE_WEIGHT_FLOOR..=1.0 - NEGATIVE_WEIGHT_FLOOR).contains(&w) {
                return Err(Error::IllConditioned {
                    residual: max_residual,
                    detail: format!(
                        "weight {w:e} of vertex {} on eigenvalue {} is outside [0, 1]",
                        v + 1,
                        system.nodes()[c]
                    ),
                });
            }
            weights[(v, c)] = w;
        }
    }
    Ok(MomentSolution {
        classes,
        system,
        walks,
        weights,
        max_residual,
        spectrum,
    })
}

pub fn vertex_energies_moments(g: &Graph) -> Result<EnergyReport> {
    let sol = moment_class_weights(g)?;
    let abs_nodes: Vec<f64> = sol.system.nodes().iter().map(|x| x.abs()).collect();
    let energies: Vec<f64> = (0..g.order())
        .map(|i| {
            sol.weights
                .row(i)
                .iter()
                .zip(&abs_nodes)
                .map(|(q, l)| q * l)
                .sum()
        })
        .collect();
    let row_dev = sol
        .weights
        .row_sums()
        .into_iter()
        .fold(0.0_f64, |m, s| m.max((s - 1.0).abs()));
    Ok(EnergyReport {
        method: Method::Moments,
        total: energies.iter().sum(),
        energies,
        diagnostics: Diagnostics {
            max_row_sum_deviation: Some(row_dev),
            min_weight: Some(
                sol.weights
                    .as_slice()
                    .iter()
                    .copied()
                    .fold(f64::INFINITY, f64::min),
            ),
            moment_residual: Some(sol.max_residual),
            ..Diagnostics::from_spectrum(g, &sol.spectrum)
        },
    })
}

/// Common vertex energy `ℰ(G)/n` of a vertex-transitive graph.
///
/// Only regularity is checked; a regular but asymmetric graph (Frucht, for
/// instance) gets the average energy, not its true per-vertex values.
pub fn transitive_energy(g: &Graph) -> Result<EnergyReport> {
    if g.is_regular().is_none() {
        return Err(Error::NotPlausiblyTransitive);
    }
    let s = spectral::eigendecompose(&g.adjacency_matrix())?;
    let total = s.energy();
    let n = g.order();
    Ok(EnergyReport {
        method: Method::Transitive,
        energies: vec![total / n as f64; n],
        total,
        diagnostics: Diagnostics::from_spectrum(g, &s),
    })
}
