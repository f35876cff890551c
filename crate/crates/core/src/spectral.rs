//! Symmetric eigendecomposition and the spectral quantities built on it:
//! eigenvalue classes, the squared-eigenvector weight matrix, the matrix
//! absolute value, and an eigensolver-free square root used to cross-check it.

use crate::error::{Error, Result};
use crate::graph::AdjacencyMatrix;
use crate::linalg::Matrix;

/// Sweep cap for the cyclic Jacobi iteration.
pub const MAX_JACOBI_SWEEPS: usize = 30;

/// Iteration cap for the Newton–Schulz square root.
pub const MAX_SQRT_ITERATIONS: usize = 100;

/// Default absolute tolerance for grouping numerically equal eigenvalues.
pub const DEFAULT_CLUSTER_TOL: f64 = 1e-6;

/// Eigenvalues in ascending order and the matching orthonormal eigenvectors
/// (column `j` of `vectors` belongs to `values[j]`).
#[derive(Debug, Clone)]
pub struct Spectrum {
    pub values: Vec<f64>,
    pub vectors: Matrix,
}

impl Spectrum {
    pub fn order(&self) -> usize {
        self.values.len()
    }

    /// ‖A·U − U·diag(λ)‖_max.
    pub fn residual(&self, a: &Matrix) -> f64 {
        let au = a.matmul(&self.vectors);
        let ul = self.vectors.matmul(&Matrix::diagonal(&self.values));
        au.max_abs_diff(&ul)
    }

    /// ‖UᵀU − I‖_max.
    pub fn orthogonality_error(&self) -> f64 {
        let n = self.order();
        self.vectors
            .transpose()
            .matmul(&self.vectors)
            .max_abs_diff(&Matrix::identity(n))
    }

    /// Σ|λ_j|, the graph energy when this is an adjacency spectrum.
    pub fn energy(&self) -> f64 {
        self.values.iter().map(|l| l.abs()).sum()
    }

    /// Upper bound on [`Spectrum::residual`] accepted for a matrix with
    /// largest entry `a_max`.
    pub fn residual_bound(n: usize, a_max: f64) -> f64 {
        64.0 * n as f64 * f64::EPSILON * a_max
    }

    pub fn orthogonality_bound(n: usize) -> f64 {
        64.0 * n as f64 * f64::EPSILON
    }
}

pub fn eigendecompose(a: &AdjacencyMatrix) -> Result<Spectrum> {
    symmetric_eigen(&a.to_matrix())
}

/// Cyclic Jacobi eigensolver for a real symmetric matrix.
///
/// Rotations are applied in fixed row-by-row order, so the result is
/// deterministic. Eigenvectors are sign-normalized so that the entry of
/// largest magnitude in each column is positive.
pub fn symmetric_eigen(a: &Matrix) -> Result<Spectrum> {
    if !a.is_square() {
        return Err(Error::DimensionMismatch {
            expected: a.rows(),
            found: a.cols(),
        });
    }
    let n = a.rows();
    let mut m = a.clone();
    let mut v = Matrix::identity(n);
    let scale = a.as_slice().iter().map(|x| x * x).sum::<f64>().sqrt();
    let target = 1e-3 * f64::EPSILON * scale;

    let off_norm = |m: &Matrix| {
        let mut s = 0.0;
        for p in 0..n {
            for q in p + 1..n {
                s += m[(p, q)] * m[(p, q)];
            }
        }
        s.sqrt()
    };

    let mut sweeps = 0;
    loop {
        let off = off_norm(&m);
        if off <= target {
            break;
        }
        if sweeps == MAX_JACOBI_SWEEPS {
            return Err(Error::ConvergenceFailure {
                routine: "Jacobi eigensolver",
                iterations: sweeps,
                residual: off,
            });
        }
        sweeps += 1;

        for p in 0..n {
            for q in p + 1..n {
                let apq = m[(p, q)];
                if apq == 0.0 {
                    continue;
                }
                let theta = (m[(q, q)] - m[(p, p)]) / (2.0 * apq);
                let t = if theta.abs() > 1e150 {
                    0.5 / theta
                } else {
                    theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt())
                };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                rotate(&mut m, &mut v, p, q, c, s);
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    let diag = m.diag();
    order.sort_by(|&i, &j| diag[i].total_cmp(&diag[j]));
    let values: Vec<f64> = order.iter().map(|&i| diag[i]).collect();
    let mut vectors = v.permute_columns(&order);

    for j in 0..n {
        let mut pivot = 0;
        for i in 1..n {
            if vectors[(i, j)].abs() > vectors[(pivot, j)].abs() {
                pivot = i;
            }
        }
        if vectors[(pivot, j)] < 0.0 {
            for i in 0..n {
                vectors[(i, j)] = -vectors[(i, j)];
            }
        }
    }

    Ok(Spectrum { values, vectors })
}

/// Applies the plane rotation in (p, q) as m ← Jᵀ·m·J and v ← v·J.
fn rotate(m: &mut Matrix, v: &mut Matrix, p: usize, q: usize, c: f64, s: f64) {
    let n = m.rows();
    for k in 0..n {
        let (mkp, mkq) = (m[(k, p)], m[(k, q)]);
        m[(k, p)] = c * mkp - s * mkq;
        m[(k, q)] = s * mkp + c * mkq;
    }
    for k in 0..n {
        let (mpk, mqk) = (m[(p, k)], m[(q, k)]);
        m[(p, k)] = c * mpk - s * mqk;
        m[(q, k)] = s * mpk + c * mqk;
    }
    m[(p, q)] = 0.0;
    m[(q, p)] = 0.0;
    for k in 0..n {
        let (vkp, vkq) = (v[(k, p)], v[(k, q)]);
        v[(k, p)] = c * vkp - s * vkq;
        v[(k, q)] = s * vkp + c * vkq;
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct EigenClass {
    /// Mean of the member eigenvalues.
    pub value: f64,
    /// Indices into [`Spectrum::values`].
    pub members: Vec<usize>,
}

impl EigenClass {
    pub fn multiplicity(&self) -> usize {
        self.members.len()
    }
}

/// Partition of the (sorted) eigenvalues into numerically distinct values.
#[derive(Debug, Clone, PartialEq)]
pub struct EigenClasses {
    pub classes: Vec<EigenClass>,
    pub tolerance: f64,
}

impl EigenClasses {
    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn nodes(&self) -> Vec<f64> {
        self.classes.iter().map(|c| c.value).collect()
    }

    pub fn multiplicities(&self) -> Vec<usize> {
        self.classes.iter().map(EigenClass::multiplicity).collect()
    }
}

/// Greedy left-to-right clustering: a new class starts wherever consecutive
/// sorted eigenvalues differ by more than `tol`.
///
/// Fails with [`Error::AmbiguousClustering`] when a class is wider than
/// `tol/2` and sits within `2·tol` of a neighbouring class, since the split
/// then depends on the exact tolerance chosen.
pub fn cluster_eigenvalues(s: &Spectrum, tol: f64) -> Result<EigenClasses> {
    if !(tol > 0.0 && tol.is_finite()) {
        return Err(Error::BadParameters(format!(
            "clustering tolerance must be positive, got {tol}"
        )));
    }
    let vals = &s.values;
    let mut groups: Vec<Vec<usize>> = Vec::new();
    for j in 0..vals.len() {
        match groups.last_mut() {
            Some(g) if vals[j] - vals[j - 1] <= tol => g.push(j),
            _ => groups.push(vec![j]),
        }
    }

    let lo = |g: &[usize]| vals[g[0]];
    let hi = |g: &[usize]| vals[*g.last().unwrap()];
    for (k, g) in groups.iter().enumerate() {
        if hi(g) - lo(g) <= tol / 2.0 {
            continue;
        }
        let gap_below = (k > 0).then(|| lo(g) - hi(&groups[k - 1]));
        let gap_above = groups.get(k + 1).map(|next| lo(next) - hi(g));
        if gap_below
            .into_iter()
            .chain(gap_above)
            .any(|gap| gap < 2.0 * tol)
        {
            let value = g.iter().map(|&j| vals[j]).sum::<f64>() / g.len() as f64;
            return Err(Error::AmbiguousClustering {
                tolerance: tol,
                value,
            });
        }
    }

    let classes = groups
        .into_iter()
        .map(|members| EigenClass {
            value: members.iter().map(|&j| vals[j]).sum::<f64>() / members.len() as f64,
            members,
        })
        .collect();
    Ok(EigenClasses {
        classes,
        tolerance: tol,
    })
}

/// Doubly stochastic matrix of squared eigenvector entries, `p_ij = u_ij²`.
#[derive(Debug, Clone)]
pub struct WeightMatrix(Matrix);

impl WeightMatrix {
    pub fn matrix(&self) -> &Matrix {
        &self.0
    }

    pub fn order(&self) -> usize {
        self.0.rows()
    }

    /// Largest |row sum − 1| or |column sum − 1|.
    pub fn stochastic_deviation(&self) -> f64 {
        self.0
            .row_sums()
            .into_iter()
            .chain(self.0.col_sums())
            .fold(0.0, |m, s| m.max((s - 1.0).abs()))
    }

    pub fn min_entry(&self) -> f64 {
        self.0
            .as_slice()
            .iter()
            .copied()
            .fold(f64::INFINITY, f64::min)
    }
}

pub fn weight_matrix(s: &Spectrum) -> WeightMatrix {
    let u = &s.vectors;
    WeightMatrix(Matrix::from_fn(u.rows(), u.cols(), |i, j| {
        u[(i, j)] * u[(i, j)]
    }))
}

/// Collapses weights onto eigenvalue classes: entry (i, k) is the total weight
/// vertex `i` places on the eigenvalues of class `k`.
pub fn class_weights(p: &WeightMatrix, classes: &EigenClasses) -> Result<Matrix> {
    let n = p.order();
    let covered: usize = classes.classes.iter().map(EigenClass::multiplicity).sum();
    if covered != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: covered,
        });
    }
    if let Some(&bad) = classes
        .classes
        .iter()
        .flat_map(|c| &c.members)
        .find(|&&j| j >= n)
    {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: bad + 1,
        });
    }
    let m = p.matrix();
    Ok(Matrix::from_fn(n, classes.len(), |i, k| {
        classes.classes[k].members.iter().map(|&j| m[(i, j)]).sum()
    }))
}

/// |A| = U·diag(|λ|)·Uᵀ, exactly symmetric.
pub fn matrix_abs(s: &Spectrum) -> Matrix {
    let n = s.order();
    let u = &s.vectors;
    let mut out = Matrix::zeros(n, n);
    for i in 0..n {
        for j in i..n {
            let x: f64 = (0..n)
                .map(|k| u[(i, k)] * s.values[k].abs() * u[(j, k)])
                .sum();
            out[(i, j)] = x;
            out[(j, i)] = x;
        }
    }
    out
}

/// Principal square root of a symmetric positive semidefinite matrix by the
/// coupled Newton–Schulz iteration
///
/// ```text
/// Y₀ = M/c, Z₀ = I,  T = (3I − Z·Y)/2,  Y ← Y·T,  Z ← T·Z
/// ```
///
/// with `c = ‖M‖_∞` so the spectrum of `M/c` lies in `[0, 1]`. Only matrix
/// products are used, so singular `M` is handled and no eigensolver is
/// involved. Iterates until the residual ‖Y² − M/c‖ stops decreasing.
pub fn sqrt_oracle(m: &Matrix) -> Result<Matrix> {
    if !m.is_square() {
        return Err(Error::DimensionMismatch {
            expected: m.rows(),
            found: m.cols(),
        });
    }
    if !m.is_symmetric(1e-12 * m.max_abs().max(1.0)) {
        return Err(Error::BadParameters(
            "square-root input is not symmetric".into(),
        ));
    }
    let n = m.rows();
    let c = m.norm_inf();
    if c == 0.0 {
        return Ok(Matrix::zeros(n, n));
    }
    let scaled = m.scale(1.0 / c);
    let target = 1e-8 * m.max_abs().max(1.0) / c;
    let three_i = Matrix::identity(n).scale(3.0);

    let mut y = scaled.clone();
    let mut z = Matrix::identity(n);
    let mut best = y.matmul(&y).max_abs_diff(&scaled);
    let mut iterations = 0;
    while iterations < MAX_SQRT_ITERATIONS {
        iterations += 1;
        let t = three_i.sub(&z.matmul(&y)).scale(0.5);
        let y_next = y.matmul(&t);
        let z_next = t.matmul(&z);
        let r = y_next.matmul(&y_next).max_abs_diff(&scaled);
        if !r.is_finite() {
            break;
        }
        if r < best {
            best = r;
            y = y_next;
            z = z_next;
        } else if best <= target {
            break;
        } else {
            y = y_next;
            z = z_next;
        }
    }
    if best > target {
        return Err(Error::ConvergenceFailure {
            routine: "Newton-Schulz square root",
            iterations,
            residual: best * c,
        });
    }
    let root = y.scale(c.sqrt());
    Ok(Matrix::from_fn(n, n, |i, j| {
        0.5 * (root[(i, j)] + root[(j, i)])
    }))
}
