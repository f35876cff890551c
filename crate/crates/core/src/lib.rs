//! Vertex energies of simple graphs.
//!
//! The energy of vertex `v_i` is the diagonal entry `|A|_ii` of the matrix
//! absolute value `|A| = (A·Aᵀ)^{1/2}` of the adjacency matrix; the vertex
//! energies sum to the graph energy `Σ|λ_j|`. This crate computes them three
//! independent ways and cross-checks the results:
//!
//! | route | module | needs |
//! |-------|--------|-------|
//! | diagonal of `U·diag(|λ|)·Uᵀ` | [`energy::vertex_energies_spectral`] | eigenvectors |
//! | `Σ_j u_ij²·|λ_j|` | [`energy::vertex_energies_weights`] | eigenvectors |
//! | Vandermonde solve on closed-walk counts | [`energy::vertex_energies_moments`] | eigenvalues only |
//!
//! ```
//! use vertex_energy::{named_graph, vertex_energies_spectral, NamedGraphId};
//!
//! let petersen = named_graph(NamedGraphId::Petersen);
//! let report = vertex_energies_spectral(&petersen).unwrap();
//! assert!(report.energies.iter().all(|e| (e - 1.6).abs() < 1e-12));
//! ```

pub mod catalog;
mod dd;
pub mod energy;
pub mod error;
pub mod graph;
pub mod linalg;
pub mod spectral;
pub mod verify;
pub mod walks;

#[cfg(test)]
mod testutil;

pub use catalog::{generalized_petersen, lcf_graph, named_graph, shrikhande, NamedGraphId};
pub use energy::{
    compute, graph_energy, max_pairwise_discrepancy, moment_class_weights, solve_moment_system,
    transitive_energy, vertex_energies_moments, vertex_energies_spectral, vertex_energies_weights,
    Diagnostics, EnergyReport, Method, MomentSolution, MomentSystem,
};
pub use error::{Error, Result};
pub use graph::{parse_graph6, write_graph6, AdjacencyMatrix, Graph};
pub use linalg::Matrix;
pub use spectral::{
    class_weights, cluster_eigenvalues, eigendecompose, matrix_abs, sqrt_oracle, weight_matrix,
    EigenClass, EigenClasses, Spectrum, WeightMatrix, DEFAULT_CLUSTER_TOL,
};
pub use walks::{moments_for_vertex, walk_table, WalkTable};
