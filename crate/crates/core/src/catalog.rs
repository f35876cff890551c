//! Constructors for the named regular graphs and the families they belong to.
//!
//! Vertex labels follow the usual textbook constructions (LCF cycle order,
//! outer-then-inner for generalized Petersen graphs, row-major for the
//! Shrikhande Cayley graph).

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Builds a cubic Hamiltonian graph from LCF notation `[shifts]^repeats`.
///
/// Vertex `i` lies on the cycle `0, 1, ..., m-1` and additionally joins
/// `i + shifts[i mod len]` (mod m). Each shift must be written in the
/// canonical range `-m/2 < s <= m/2`, and the chords must form a perfect
/// matching that avoids the cycle edges.
pub fn lcf_graph(shifts: &[i64], repeats: usize) -> Result<Graph> {
    if shifts.is_empty() || repeats == 0 {
        return Err(Error::InvalidLcf("empty shift list or zero repeats".into()));
    }
    let m = shifts.len() * repeats;
    if m < 3 {
        return Err(Error::InvalidLcf(format!(
            "{m} vertices is too few for a cycle"
        )));
    }
    let mi = m as i64;
    for &s in shifts {
        if s == 0 || s.abs() >= mi {
            return Err(Error::InvalidLcf(format!(
                "shift {s} out of range for {m} vertices"
            )));
        }
        if 2 * s <= -mi || 2 * s > mi {
            return Err(Error::InvalidLcf(format!(
                "shift {s} is not in canonical form for {m} vertices"
            )));
        }
    }

    let partner = |i: usize| (i as i64 + shifts[i % shifts.len()]).rem_euclid(mi) as usize;
    let mut edges = Vec::with_capacity(m + m / 2);
    for i in 0..m {
        edges.push((i, (i + 1) % m));
        let j = partner(i);
        if partner(j) != i {
            return Err(Error::InvalidLcf(format!(
                "chord {i}-{j} is not matched by vertex {j}"
            )));
        }
        if j == (i + 1) % m || i == (j + 1) % m {
            return Err(Error::InvalidLcf(format!(
                "chord {i}-{j} duplicates a cycle edge"
            )));
        }
        if i < j {
            edges.push((i, j));
        }
    }
    Graph::new(m, edges)
}

/// Generalized Petersen graph GP(n, k): outer cycle `0..n`, spokes `i - (n+i)`,
/// inner edges `(n+i) - (n + (i+k) mod n)`.
pub fn generalized_petersen(n: usize, k: usize) -> Result<Graph> {
    if n < 3 || k == 0 || 2 * k >= n {
        return Err(Error::BadParameters(format!(
            "generalized Petersen graph needs n >= 3 and 1 <= k < n/2, got n={n}, k={k}"
        )));
    }
    let mut edges = Vec::with_capacity(3 * n);
    for i in 0..n {
        edges.push((i, (i + 1) % n));
        edges.push((i, n + i));
        edges.push((n + i, n + (i + k) % n));
    }
    Graph::new(2 * n, edges)
}

/// Shrikhande graph: Cayley graph on Z4 x Z4 with connection set
/// {±(1,0), ±(0,1), ±(1,1)}. Vertex (a, b) has index 4a + b.
pub fn shrikhande() -> Graph {
    let index = |a: usize, b: usize| 4 * (a % 4) + (b % 4);
    let mut edges = Vec::with_capacity(48);
    for a in 0..4 {
        for b in 0..4 {
            let v = index(a, b);
            edges.push((v, index(a + 1, b)));
            edges.push((v, index(a, b + 1)));
            edges.push((v, index(a + 1, b + 1)));
        }
    }
    Graph::new(16, edges).expect("Shrikhande edge list is valid")
}

const FRUCHT_LCF: [i64; 12] = [-5, -2, -4, 2, 5, -2, 2, 5, -2, -5, 4, 2];
const DESARGUES_LCF: [i64; 4] = [5, -5, 9, -9];
const TUTTE_COXETER_LCF: [i64; 6] = [-13, -9, 7, -7, 9, 13];
const HEAWOOD_LCF: [i64; 2] = [5, -5];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum NamedGraphId {
    Frucht,
    Desargues,
    TutteCoxeter,
    Heawood,
    Shrikhande,
    Petersen,
}

impl NamedGraphId {
    pub const ALL: [NamedGraphId; 6] = [
        NamedGraphId::Frucht,
        NamedGraphId::Desargues,
        NamedGraphId::TutteCoxeter,
        NamedGraphId::Heawood,
        NamedGraphId::Shrikhande,
        NamedGraphId::Petersen,
    ];

    pub fn name(self) -> &'static str {
        match self {
            NamedGraphId::Frucht => "frucht",
            NamedGraphId::Desargues => "desargues",
            NamedGraphId::TutteCoxeter => "tutte_coxeter",
            NamedGraphId::Heawood => "heawood",
            NamedGraphId::Shrikhande => "shrikhande",
            NamedGraphId::Petersen => "petersen",
        }
    }

    /// Known spectrum as (eigenvalue, multiplicity) pairs in ascending order,
    /// read off the characteristic polynomial. `None` for Frucht, whose twelve
    /// simple eigenvalues include the roots of an irreducible quartic.
    pub fn known_spectrum(self) -> Option<Vec<(f64, usize)>> {
        let r2 = std::f64::consts::SQRT_2;
        let spectrum = match self {
            NamedGraphId::Frucht => return None,
            NamedGraphId::Desargues => {
                vec![
                    (-3.0, 1),
                    (-2.0, 4),
                    (-1.0, 5),
                    (1.0, 5),
                    (2.0, 4),
                    (3.0, 1),
                ]
            }
            NamedGraphId::TutteCoxeter => vec![(-3.0, 1), (-2.0, 9), (0.0, 10), (2.0, 9), (3.0, 1)],
            NamedGraphId::Heawood => vec![(-3.0, 1), (-r2, 6), (r2, 6), (3.0, 1)],
            NamedGraphId::Shrikhande => vec![(-2.0, 9), (2.0, 6), (6.0, 1)],
            NamedGraphId::Petersen => vec![(-2.0, 4), (1.0, 5), (3.0, 1)],
        };
        Some(spectrum)
    }
}

impl fmt::Display for NamedGraphId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for NamedGraphId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let key = s.trim().to_ascii_lowercase().replace(['-', ' '], "_");
        NamedGraphId::ALL
            .into_iter()
            .find(|id| id.name() == key)
            .ok_or_else(|| Error::BadParameters(format!("unknown graph name `{s}`")))
    }
}

pub fn named_graph(id: NamedGraphId) -> Graph {
    let g = match id {
        NamedGraphId::Frucht => lcf_graph(&FRUCHT_LCF, 1),
        NamedGraphId::Desargues => lcf_graph(&DESARGUES_LCF, 5),
        NamedGraphId::TutteCoxeter => lcf_graph(&TUTTE_COXETER_LCF, 5),
        NamedGraphId::Heawood => lcf_graph(&HEAWOOD_LCF, 7),
        NamedGraphId::Shrikhande => Ok(shrikhande()),
        NamedGraphId::Petersen => generalized_petersen(5, 2),
    };
    g.expect("catalog constructions are valid")
}
