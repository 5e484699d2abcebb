//! Dense complex linear algebra used by the witness pipeline.
//!
//! Everything operates on [`CMatrix`] / [`CVector`] (dynamically sized,
//! `Complex<f64>`). Eigen- and singular-value decompositions are delegated to
//! nalgebra; the Takagi and antisymmetric canonical factorizations are built on
//! top of them here, since both need deterministic handling of degenerate
//! spectra.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex;

use crate::error::{Error, Result};

pub type Complex64 = Complex<f64>;
pub type CMatrix = DMatrix<Complex64>;
pub type CVector = DVector<Complex64>;

/// Eigenvalues closer than `DEGENERACY_TOL * (1 + |λ_max|)` are treated as one
/// eigenspace.
pub const DEGENERACY_TOL: f64 = 1e-8;

/// Canonical coefficients below `ZERO_COEFF_TOL * (largest + 1)` count as zero.
pub const ZERO_COEFF_TOL: f64 = 1e-10;

pub fn max_abs(m: &CMatrix) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

pub fn hermiticity_deviation(m: &CMatrix) -> f64 {
    max_abs(&(m - m.adjoint()))
}

pub fn is_hermitian(m: &CMatrix, rel_tol: f64) -> bool {
    hermiticity_deviation(m) <= rel_tol * max_abs(m).max(f64::MIN_POSITIVE)
}

/// Kronecker product with `(a ⊗ b)[(i·rows_b + k), (j·cols_b + l)] = a[i,j]·b[k,l]`.
pub fn kron(a: &CMatrix, b: &CMatrix) -> CMatrix {
    a.kronecker(b)
}

/// Identity matrix of side `n`.
pub fn eye(n: usize) -> CMatrix {
    CMatrix::identity(n, n)
}

/// Hermitian eigendecomposition, eigenvalues ascending.
///
/// Returns `(eigenvalues, eigenvectors)` with eigenvector `k` in column `k`,
/// so that `m = V diag(λ) V†`.
pub fn eigh(m: &CMatrix) -> Result<(Vec<f64>, CMatrix)> {
    let scale = max_abs(m);
    let dev = hermiticity_deviation(m);
    if scale > 0.0 && dev > 1e-12 * scale {
        return Err(Error::NonHermitian {
            deviation: dev,
            tolerance: 1e-12 * scale,
        });
    }
    let n = m.nrows();
    // Work on the exactly Hermitian part so solver round-off does not leak.
    let h = (m + m.adjoint()).scale(0.5);
    let se = h.symmetric_eigen();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| se.eigenvalues[a].total_cmp(&se.eigenvalues[b]));
    let values: Vec<f64> = order.iter().map(|&i| se.eigenvalues[i]).collect();
    let vectors = CMatrix::from_fn(n, n, |r, c| se.eigenvectors[(r, order[c])]);
    Ok((values, vectors))
}

/// Singular values, descending.
pub fn singular_values(m: &CMatrix) -> Vec<f64> {
    let svd = m.clone().svd(false, false);
    let mut s: Vec<f64> = svd.singular_values.iter().copied().collect();
    s.sort_by(|a, b| b.total_cmp(a));
    s
}

/// Takagi factorization of a complex symmetric matrix: `v = u·diag(c)·uᵀ`
/// with `u` unitary and `c` the singular values of `v`, descending.
///
/// Implemented through the real symmetric doubling `[[Re v, Im v], [Im v, −Re v]]`:
/// an eigenvector `(a; b)` with eigenvalue `σ > 0` gives a column `u = a + ib`
/// with `v·conj(u) = σ·u`, which stays orthonormal across degenerate clusters.
/// Zero modes are completed by Gram–Schmidt.
pub fn takagi(v: &CMatrix) -> Result<(Vec<f64>, CMatrix)> {
    let n = v.nrows();
    if v.ncols() != n {
        return Err(Error::DimensionMismatch(format!(
            "takagi needs a square matrix, got {}x{}",
            n,
            v.ncols()
        )));
    }
    let scale = max_abs(v);
    let dev = max_abs(&(v - v.transpose()));
    let tol = 1e-10 * (1.0 + scale);
    if dev > tol {
        return Err(Error::NotSymmetric {
            deviation: dev,
            tolerance: tol,
        });
    }

    let mut m = DMatrix::<f64>::zeros(2 * n, 2 * n);
    for i in 0..n {
        for j in 0..n {
            let re = 0.5 * (v[(i, j)].re + v[(j, i)].re);
            let im = 0.5 * (v[(i, j)].im + v[(j, i)].im);
            m[(i, j)] = re;
            m[(i, j + n)] = im;
            m[(i + n, j)] = im;
            m[(i + n, j + n)] = -re;
        }
    }
    let se = m.symmetric_eigen();
    let mut order: Vec<usize> = (0..2 * n).collect();
    order.sort_by(|&a, &b| se.eigenvalues[b].total_cmp(&se.eigenvalues[a]));

    let zero_tol = ZERO_COEFF_TOL * (se.eigenvalues[order[0]].max(0.0) + 1.0);
    let mut coeffs = Vec::with_capacity(n);
    let mut columns: Vec<CVector> = Vec::with_capacity(n);
    for &idx in order.iter().take(n) {
        let sigma = se.eigenvalues[idx];
        coeffs.push(sigma.max(0.0));
        if sigma > zero_tol {
            let raw = CVector::from_fn(n, |i, _| {
                Complex64::new(se.eigenvectors[(i, idx)], se.eigenvectors[(i + n, idx)])
            });
            // Polish: columns inside a degenerate cluster are orthonormal only
            // up to the cluster separation, so project against what we have.
            let mut col = raw;
            for q in &columns {
                let overlap = q.dotc(&col);
                col -= q * overlap;
            }
            let nrm = col.norm();
            columns.push(col.unscale(nrm));
        }
    }
    complete_basis(&mut columns, n);
    let u = CMatrix::from_fn(n, n, |r, c| columns[c][r]);
    Ok((coeffs, u))
}

/// Canonical block form of a complex antisymmetric matrix.
///
/// Returns `(z, u)` with `z` positive descending and `u` unitary such that
/// `u·w·uᵀ` is the direct sum of blocks `[[0, z_i], [−z_i, 0]]` followed by
/// zeros. The `z_i²` are the nonzero eigenvalues of `w·w†`.
pub fn antisym_block_diagonalize(w: &CMatrix) -> Result<(Vec<f64>, CMatrix)> {
    let n = w.nrows();
    if w.ncols() != n {
        return Err(Error::DimensionMismatch(format!(
            "antisymmetric factorization needs a square matrix, got {}x{}",
            n,
            w.ncols()
        )));
    }
    let scale = max_abs(w);
    let dev = max_abs(&(w + w.transpose()));
    let tol = 1e-10 * (1.0 + scale);
    if dev > tol {
        return Err(Error::NotAntisymmetric {
            deviation: dev,
            tolerance: tol,
        });
    }

    let b = w * w.adjoint();
    let (evals, evecs) = eigh(&b)?;
    let lam_max = evals.last().copied().unwrap_or(0.0).max(0.0);
    let z_tol = ZERO_COEFF_TOL * (lam_max.sqrt() + 1.0);
    // Eigenvalues of w·w† carry ~ε·λ_max absolute solver noise whose square
    // root would pass the z-scale threshold; below this floor a direction is
    // indistinguishable from the kernel.
    let lam_floor = 1e-13 * lam_max;

    // Pool of eigenvectors of w·w† with nonzero z, largest first; each pick
    // u1 pairs with u2 = w·conj(u1)/z, after which span{u1,u2} is deflated.
    let mut pool: Vec<CVector> = Vec::new();
    for k in (0..n).rev() {
        let lam = evals[k].max(0.0);
        if lam > lam_floor && lam.sqrt() > z_tol {
            pool.push(evecs.column(k).into_owned());
        }
    }

    let mut zs = Vec::new();
    let mut paired: Vec<CVector> = Vec::new();
    while let Some(u1) = pool.first().cloned() {
        let tu = apply_conj(w, &u1);
        let z = tu.norm();
        let mut u2 = tu.unscale(z);
        zs.push(z);
        for q in paired.iter().chain(std::iter::once(&u1)) {
            let overlap = q.dotc(&u2);
            u2 -= q * overlap;
        }
        u2 = u2.clone().unscale(u2.norm());
        paired.push(u2.clone());
        paired.push(u1.clone());
        // Deflate the pair out of the pool.
        let mut next_pool = Vec::new();
        for col in pool.into_iter() {
            let mut c = col;
            c -= &u1 * u1.dotc(&c);
            c -= &u2 * u2.dotc(&c);
            for q in &next_pool {
                let overlap: Complex64 = CVector::dotc(q, &c);
                c -= q * overlap;
            }
            if c.norm() > 1e-6 {
                let nrm = c.norm();
                next_pool.push(c.unscale(nrm));
            }
        }
        pool = next_pool;
    }

    complete_basis(&mut paired, n);
    // u·w·uᵀ canonical with u = U† where U holds the pair columns (u2, u1).
    let u_cols = CMatrix::from_fn(n, n, |r, c| paired[c][r]);
    Ok((zs, u_cols.adjoint()))
}

/// `w · conj(x)`.
fn apply_conj(w: &CMatrix, x: &CVector) -> CVector {
    w * x.map(|z| z.conj())
}

/// Extend `columns` to an orthonormal basis of dimension `dim`, taking for
/// each empty slot the standard basis vector with the largest residual.
fn complete_basis(columns: &mut Vec<CVector>, dim: usize) {
    while columns.len() < dim {
        let mut best: Option<CVector> = None;
        let mut best_norm = 0.0;
        for k in 0..dim {
            let mut cand = CVector::zeros(dim);
            cand[k] = Complex64::new(1.0, 0.0);
            for _ in 0..2 {
                for q in columns.iter() {
                    let overlap = q.dotc(&cand);
                    cand -= q * overlap;
                }
            }
            let nrm = cand.norm();
            if nrm > best_norm {
                best_norm = nrm;
                best = Some(cand.unscale(nrm));
            }
        }
        columns.push(best.expect("residual space is nonempty"));
    }
}

/// Gram–Schmidt with re-orthogonalization; drops vectors whose residual norm
/// falls below `tol`.
pub fn orthonormalize(vectors: &[CVector], tol: f64) -> Vec<CVector> {
    let mut basis: Vec<CVector> = Vec::new();
    for v in vectors {
        let mut w = v.clone();
        for _ in 0..2 {
            for q in &basis {
                let overlap = q.dotc(&w);
                w -= q * overlap;
            }
        }
        let nrm = w.norm();
        if nrm > tol {
            basis.push(w.unscale(nrm));
        }
    }
    basis
}

/// Partial trace over the first factor: `result[k,l] = Σ_i m[(i,k),(i,l)]`.
pub fn partial_trace_first(m: &CMatrix, dim_first: usize, dim_second: usize) -> Result<CMatrix> {
    let side = dim_first * dim_second;
    if m.nrows() != side || m.ncols() != side {
        return Err(Error::DimensionMismatch(format!(
            "partial trace expects a {side}x{side} matrix, got {}x{}",
            m.nrows(),
            m.ncols()
        )));
    }
    let mut out = CMatrix::zeros(dim_second, dim_second);
    for k in 0..dim_second {
        for l in 0..dim_second {
            let mut acc = Complex64::new(0.0, 0.0);
            for i in 0..dim_first {
                acc += m[(i * dim_second + k, i * dim_second + l)];
            }
            out[(k, l)] = acc;
        }
    }
    Ok(out)
}

/// Swap of the two copies on a `d²`-dimensional two-copy space: `|ab⟩ ↦ |ba⟩`.
pub fn swap_operator(d: usize) -> CMatrix {
    let mut s = CMatrix::zeros(d * d, d * d);
    for a in 0..d {
        for b in 0..d {
            s[(b * d + a, a * d + b)] = Complex64::new(1.0, 0.0);
        }
    }
    s
}

/// The slot-swap operators on `(ℂⁿ)⊗4`: `S1|ijkl⟩ = |kjil⟩`, `S2|ijkl⟩ = |ilkj⟩`.
pub fn copy_swap_operators(n: usize) -> (CMatrix, CMatrix) {
    let d4 = n * n * n * n;
    let idx = |i: usize, j: usize, k: usize, l: usize| ((i * n + j) * n + k) * n + l;
    let mut s1 = CMatrix::zeros(d4, d4);
    let mut s2 = CMatrix::zeros(d4, d4);
    let one = Complex64::new(1.0, 0.0);
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                for l in 0..n {
                    s1[(idx(k, j, i, l), idx(i, j, k, l))] = one;
                    s2[(idx(i, l, k, j), idx(i, j, k, l))] = one;
                }
            }
        }
    }
    (s1, s2)
}

/// Isometry from a subspace into its ambient space; columns are orthonormal.
#[derive(Clone, Debug)]
pub struct Isometry {
    matrix: CMatrix,
}

impl Isometry {
    pub fn new(matrix: CMatrix) -> Self {
        Self { matrix }
    }

    pub fn identity(dim: usize) -> Self {
        Self { matrix: eye(dim) }
    }

    pub fn ambient_dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn subspace_dim(&self) -> usize {
        self.matrix.ncols()
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    /// `V† M V`: compress an ambient operator onto the subspace.
    pub fn compress_op(&self, m: &CMatrix) -> CMatrix {
        self.matrix.adjoint() * m * &self.matrix
    }

    /// `V† x`: coordinates of an ambient vector in the subspace basis.
    pub fn compress_vec(&self, x: &CVector) -> CVector {
        self.matrix.adjoint() * x
    }

    /// `V x`: embed subspace coordinates into the ambient space.
    pub fn expand_vec(&self, x: &CVector) -> CVector {
        &self.matrix * x
    }
}

/// Isometry of the symmetric subspace `H∨H ⊂ H⊗H`.
///
/// Columns: `|ii⟩` for `i = 0..n`, then `(|ij⟩ + |ji⟩)/√2` for `i < j` in
/// lexicographic order.
pub fn sym_subspace_isometry(n: usize) -> Isometry {
    let d = n * (n + 1) / 2;
    let mut m = CMatrix::zeros(n * n, d);
    let mut col = 0;
    for i in 0..n {
        m[(i * n + i, col)] = Complex64::new(1.0, 0.0);
        col += 1;
    }
    let inv_sqrt2 = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
    for i in 0..n {
        for j in (i + 1)..n {
            m[(i * n + j, col)] = inv_sqrt2;
            m[(j * n + i, col)] = inv_sqrt2;
            col += 1;
        }
    }
    Isometry::new(m)
}

/// Isometry of the antisymmetric subspace `H∧H ⊂ H⊗H`.
///
/// Columns: `(|ij⟩ − |ji⟩)/√2` for `i < j` in lexicographic order.
pub fn antisym_subspace_isometry(n: usize) -> Isometry {
    let d = n * (n - 1) / 2;
    let mut m = CMatrix::zeros(n * n, d);
    let inv_sqrt2 = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
    let mut col = 0;
    for i in 0..n {
        for j in (i + 1)..n {
            m[(i * n + j, col)] = inv_sqrt2;
            m[(j * n + i, col)] = -inv_sqrt2;
            col += 1;
        }
    }
    Isometry::new(m)
}
