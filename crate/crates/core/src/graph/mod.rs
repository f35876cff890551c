//! Simple undirected graphs and their 0/1 adjacency matrices.

mod graph6;

pub use graph6::{parse_graph6, write_graph6, MAX_GRAPH6_ORDER};

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::linalg::Matrix;

/// A simple undirected graph on vertices `0..n`.
///
/// Edges are stored as ordered pairs `(u, v)` with `u < v`, so two graphs
/// compare equal exactly when they have the same order and the same labelled
/// edge set.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    edges: BTreeSet<(usize, usize)>,
    neighbors: Vec<Vec<usize>>,
}

impl Graph {
    /// Builds a graph from an edge list. Duplicate pairs and pair orientation
    /// are ignored; loops and out-of-range endpoints are rejected.
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyGraph);
        }
        let mut set = BTreeSet::new();
        for (u, v) in edges {
            for index in [u, v] {
                if index >= n {
                    return Err(Error::OutOfRange { index, n });
                }
            }
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            set.insert((u.min(v), u.max(v)));
        }
        let mut neighbors = vec![Vec::new(); n];
        for &(u, v) in &set {
            neighbors[u].push(v);
            neighbors[v].push(u);
        }
        for list in &mut neighbors {
            list.sort_unstable();
        }
        Ok(Graph {
            n,
            edges: set,
            neighbors,
        })
    }

    /// Graph on `n` vertices with no edges.
    pub fn empty(n: usize) -> Result<Self> {
        Graph::new(n, std::iter::empty())
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().copied()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.edges.contains(&(u.min(v), u.max(v)))
    }

    /// Sorted neighbours of `v`. Panics if `v` is out of range.
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.neighbors[v]
    }

    pub fn degree(&self, v: usize) -> Result<usize> {
        self.neighbors
            .get(v)
            .map(Vec::len)
            .ok_or(Error::OutOfRange {
                index: v,
                n: self.n,
            })
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.neighbors.iter().map(Vec::len).collect()
    }

    /// Returns the common degree if every vertex has the same degree.
    pub fn is_regular(&self) -> Option<usize> {
        let first = self.neighbors[0].len();
        self.neighbors
            .iter()
            .all(|l| l.len() == first)
            .then_some(first)
    }

    pub fn adjacency_matrix(&self) -> AdjacencyMatrix {
        let n = self.n;
        let mut entries = vec![0u8; n * n];
        for &(u, v) in &self.edges {
            entries[u * n + v] = 1;
            entries[v * n + u] = 1;
        }
        AdjacencyMatrix { n, entries }
    }
}

/// Symmetric 0/1 adjacency matrix with zero diagonal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdjacencyMatrix {
    n: usize,
    entries: Vec<u8>,
}

impl AdjacencyMatrix {
    pub fn order(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> u8 {
        self.entries[i * self.n + j]
    }

    pub fn row(&self, i: usize) -> &[u8] {
        &self.entries[i * self.n..(i + 1) * self.n]
    }

    pub fn row_sum(&self, i: usize) -> usize {
        self.row(i).iter().map(|&a| a as usize).sum()
    }

    pub fn to_matrix(&self) -> Matrix {
        Matrix::from_fn(self.n, self.n, |i, j| f64::from(self.get(i, j)))
    }

    /// A·Aᵀ, computed exactly in integers and returned as floats.
    pub fn gram(&self) -> Matrix {
        let n = self.n;
        Matrix::from_fn(n, n, |i, j| {
            self.row(i)
                .iter()
                .zip(self.row(j))
                .map(|(&a, &b)| u32::from(a & b))
                .sum::<u32>() as f64
        })
    }
}
