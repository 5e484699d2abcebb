//! Casimir and Lichtenstein operators, witness assembly, Kraus extraction and
//! the explicit projector constructions.
//!
//! Quadratic expressions carry a weight `1/(2 N_k)` per simple su(N_k) factor
//! (the Killing-form normalization); with the tr-normalized basis this
//! reproduces the closed-form Casimir constants `(1 − 1/N²)` for a pair of
//! distinguishable parties and `(1 − 2/N² ± 1/N)` on the symmetric and
//! antisymmetric two-particle subspaces, and puts the top eigenvalue of `L`
//! exactly on the nonentangled two-copy states.

use crate::error::{Error, Result};
use crate::lie::{RepresentedAlgebra, SystemSpec};
use crate::linalg::{
    antisym_subspace_isometry, eigh, eye, kron, max_abs, orthonormalize, swap_operator,
    sym_subspace_isometry, CMatrix, CVector, Complex64, DEGENERACY_TOL,
};

/// How the witness operator is normalized.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WitnessKind {
    /// `A = l_max · I − L`.
    SpectralGap,
    /// `A` is the orthogonal projector onto the symmetric-Kraus part of the
    /// non-top eigenspaces of `L`.
    Projector,
}

/// One distinct eigenvalue of `L` with its multiplicity.
#[derive(Clone, Copy, Debug)]
pub struct Eigenspace {
    pub value: f64,
    pub multiplicity: usize,
}

/// The two-copy witness operator with its spectral data and Kraus operators.
#[derive(Clone, Debug)]
pub struct Witness {
    spec: SystemSpec,
    kind: WitnessKind,
    a_matrix: CMatrix,
    l_max: f64,
    /// Distinct eigenvalues of `L`, descending.
    eigenspaces: Vec<Eigenspace>,
    /// Symmetric Kraus operators (the ones contributing to the concurrence).
    kraus: Vec<CMatrix>,
    /// All Kraus operators of `A` (symmetric and antisymmetric sectors).
    kraus_all: Vec<CMatrix>,
}

impl Witness {
    pub fn spec(&self) -> &SystemSpec {
        &self.spec
    }

    pub fn kind(&self) -> WitnessKind {
        self.kind
    }

    pub fn a_matrix(&self) -> &CMatrix {
        &self.a_matrix
    }

    pub fn l_max(&self) -> f64 {
        self.l_max
    }

    pub fn eigenspaces(&self) -> &[Eigenspace] {
        &self.eigenspaces
    }

    pub fn kraus(&self) -> &[CMatrix] {
        &self.kraus
    }

    pub fn kraus_all(&self) -> &[CMatrix] {
        &self.kraus_all
    }

    /// Dimension of the single-copy composite space.
    pub fn composite_dim(&self) -> usize {
        self.kraus_all
            .first()
            .map(|t| t.nrows())
            .unwrap_or_else(|| (self.a_matrix.nrows() as f64).sqrt().round() as usize)
    }
}

/// Per-factor weight for quadratic expressions.
fn factor_weight(n: usize) -> f64 {
    1.0 / (2.0 * n as f64)
}

/// The second-order Casimir operator of the represented algebra.
pub fn casimir(ra: &RepresentedAlgebra) -> CMatrix {
    let d = ra.dim();
    let mut c2 = CMatrix::zeros(d, d);
    for f in ra.factors() {
        let w = factor_weight(f.n);
        for (x, y) in f.pos_roots.iter().zip(&f.neg_roots) {
            c2 += (x * y + y * x).scale(w);
        }
        for h in &f.cartan {
            c2 += (h * h).scale(w);
        }
    }
    c2
}

/// The two-copy operator `L` whose top eigenspace carries the symmetric
/// squares of nonentangled states.
pub fn lichtenstein(ra: &RepresentedAlgebra) -> CMatrix {
    let d = ra.dim();
    let c2 = casimir(ra);
    let id = eye(d);
    let mut l = kron(&c2, &id) + kron(&id, &c2);
    for f in ra.factors() {
        let w = 2.0 * factor_weight(f.n);
        for (x, y) in f.pos_roots.iter().zip(&f.neg_roots) {
            l += (kron(x, y) + kron(y, x)).scale(w);
        }
        for h in &f.cartan {
            l += kron(h, h).scale(w);
        }
    }
    l
}

/// Action of `L′ = N(L − C₂⊗I − I⊗C₂)` on the product ket `|ijkl⟩` of the
/// uncompressed identical-particle space `(ℂⁿ)⊗4`, as a sparse combination of
/// kets (0-based indices). Terms with zero merged coefficient are dropped.
pub fn lichtenstein_prime_action(
    n: usize,
    i: usize,
    j: usize,
    k: usize,
    l: usize,
) -> Result<Vec<([usize; 4], f64)>> {
    for &idx in &[i, j, k, l] {
        if idx >= n {
            return Err(Error::IndexOutOfRange { index: idx, dim: n });
        }
    }
    let d = |a: usize, b: usize| if a == b { 1.0 } else { 0.0 };
    let mut terms: Vec<([usize; 4], f64)> = Vec::with_capacity(5);
    let mut push = |ket: [usize; 4], coeff: f64| {
        if coeff == 0.0 {
            return;
        }
        if let Some(t) = terms.iter_mut().find(|t| t.0 == ket) {
            t.1 += coeff;
        } else {
            terms.push((ket, coeff));
        }
    };
    push([k, j, i, l], 1.0 - d(i, k));
    push([l, j, k, i], 1.0 - d(i, l));
    push([i, k, j, l], 1.0 - d(j, k));
    push([i, l, k, j], 1.0 - d(j, l));
    push(
        [i, j, k, l],
        -4.0 / n as f64 + d(i, k) + d(i, l) + d(j, k) + d(j, l),
    );
    terms.retain(|t| t.1 != 0.0);
    Ok(terms)
}

/// Eigenvalue grouping: adjacent eigenvalues within
/// `DEGENERACY_TOL · (1 + |λ_max|)` belong to one eigenspace.
fn group_eigenvalues(values: &[f64]) -> Vec<std::ops::Range<usize>> {
    let tol = DEGENERACY_TOL * (1.0 + values.last().map(|v| v.abs()).unwrap_or(0.0));
    let mut groups = Vec::new();
    let mut start = 0;
    for k in 1..=values.len() {
        if k == values.len() || values[k] - values[k - 1] > tol {
            groups.push(start..k);
            start = k;
        }
    }
    groups
}

/// Build the witness for the represented algebra.
pub fn build_witness(ra: &RepresentedAlgebra, kind: WitnessKind) -> Result<Witness> {
    let d = ra.dim();
    let l = lichtenstein(ra);
    let (evals, evecs) = eigh(&l)?;
    let groups = group_eigenvalues(&evals);
    let top = groups.last().expect("nonempty spectrum").clone();
    let tol = DEGENERACY_TOL * (1.0 + evals.last().unwrap().abs());
    let spread = evals[top.end - 1] - evals[top.start];
    if spread > tol {
        return Err(Error::DegenerateTop { spread });
    }
    let l_max = evals[top.clone()].iter().sum::<f64>() / top.len() as f64;

    let eigenspaces: Vec<Eigenspace> = groups
        .iter()
        .rev()
        .map(|g| Eigenspace {
            value: evals[g.clone()].iter().sum::<f64>() / g.len() as f64,
            multiplicity: g.len(),
        })
        .collect();

    let swap = swap_operator(d);
    let mut kraus: Vec<CMatrix> = Vec::new();
    let mut kraus_all: Vec<CMatrix> = Vec::new();
    let mut a_proj = CMatrix::zeros(d * d, d * d);

    // Non-top eigenspaces, descending eigenvalue for reproducible indexing.
    for g in groups[..groups.len() - 1].iter().rev() {
        let value = evals[g.clone()].iter().sum::<f64>() / g.len() as f64;
        let nu = match kind {
            WitnessKind::SpectralGap => l_max - value,
            WitnessKind::Projector => 1.0,
        };
        if nu <= 1e-10 * l_max.abs().max(1.0) {
            continue;
        }
        for sign in [1.0, -1.0] {
            // Rotate the eigenbasis into the copy-swap ±1 sectors so every
            // Kraus operator is exactly symmetric or antisymmetric.
            let mut sector: Vec<CVector> = Vec::new();
            for col in g.clone() {
                let v: CVector = evecs.column(col).into_owned();
                let sv = &swap * &v;
                sector.push((&v + sv.scale(sign)).scale(0.5));
            }
            let basis = orthonormalize(&sector, 1e-8);
            for v in basis {
                let t = CMatrix::from_fn(d, d, |r, c| v[r * d + c] * nu.sqrt());
                let dev = max_abs(&(&t - t.transpose().scale(sign)));
                debug_assert!(
                    dev <= 1e-9 * (1.0 + max_abs(&t)),
                    "Kraus operator not in its symmetry sector: {dev:e}"
                );
                if sign > 0.0 {
                    kraus.push(t.clone());
                    kraus_all.push(t);
                    if kind == WitnessKind::Projector {
                        let outer = CMatrix::from_fn(d * d, d * d, |r, c| v[r] * v[c].conj());
                        a_proj += outer;
                    }
                } else if kind == WitnessKind::SpectralGap {
                    kraus_all.push(t);
                }
            }
        }
    }

    let a_matrix = match kind {
        WitnessKind::SpectralGap => {
            let mut a = CMatrix::identity(d * d, d * d).scale(l_max);
            a -= &l;
            a
        }
        WitnessKind::Projector => a_proj,
    };

    Ok(Witness {
        spec: ra.spec().clone(),
        kind,
        a_matrix,
        l_max,
        eigenspaces,
        kraus,
        kraus_all,
    })
}

/// `Λ(ρ) = tr₁((ρᵀ ⊗ I) · a)`: the map associated to a two-copy operator.
pub fn jamiolkowski_apply(a: &CMatrix, rho: &CMatrix) -> Result<CMatrix> {
    let d = rho.nrows();
    if rho.ncols() != d {
        return Err(Error::DimensionMismatch("ρ must be square".into()));
    }
    if a.nrows() != d * d || a.ncols() != d * d {
        return Err(Error::DimensionMismatch(format!(
            "two-copy operator is {}x{}, expected {}x{}",
            a.nrows(),
            a.ncols(),
            d * d,
            d * d
        )));
    }
    let m = kron(&rho.transpose(), &eye(d)) * a;
    crate::linalg::partial_trace_first(&m, d, d)
}

/// Index of the compressed basis vector for the unordered pair `(i, j)`.
fn pair_index(n: usize, i: usize, j: usize, has_diagonal: bool) -> usize {
    let (a, b) = if i <= j { (i, j) } else { (j, i) };
    let off = |a: usize, b: usize| -> usize {
        // position of (a, b), a < b, in lexicographic i<j order
        a * n - a * (a + 1) / 2 + (b - a - 1)
    };
    if has_diagonal {
        if a == b {
            a
        } else {
            n + off(a, b)
        }
    } else {
        off(a, b)
    }
}

/// Compressed coordinates of `ψ_ij = |ij⟩ + |ji⟩` (with `ψ_ii = 2|ii⟩`) in the
/// orthonormal symmetric basis.
fn boson_pair_vector(n: usize, i: usize, j: usize) -> CVector {
    let d = n * (n + 1) / 2;
    let mut v = CVector::zeros(d);
    if i == j {
        v[pair_index(n, i, i, true)] = Complex64::new(2.0, 0.0);
    } else {
        v[pair_index(n, i, j, true)] = Complex64::new(std::f64::consts::SQRT_2, 0.0);
    }
    v
}

/// Compressed coordinates of `φ_ij = |ij⟩ − |ji⟩` (zero when `i = j`) in the
/// orthonormal antisymmetric basis.
fn fermion_pair_vector(n: usize, i: usize, j: usize) -> CVector {
    let d = n * (n - 1) / 2;
    let mut v = CVector::zeros(d);
    if i != j {
        let sign = if i < j { 1.0 } else { -1.0 };
        v[pair_index(n, i, j, false)] = Complex64::new(sign * std::f64::consts::SQRT_2, 0.0);
    }
    v
}

fn kron_vec(a: &CVector, b: &CVector) -> CVector {
    let mut out = CVector::zeros(a.len() * b.len());
    for i in 0..a.len() {
        for j in 0..b.len() {
            out[i * b.len() + j] = a[i] * b[j];
        }
    }
    out
}

/// Orthogonal projector onto the witness subspace built from the explicit
/// spanning vectors instead of the spectrum of `L`.
pub fn projector_appendix(spec: &SystemSpec) -> Result<CMatrix> {
    spec.validate()?;
    let mut vectors: Vec<CVector> = Vec::new();
    match spec {
        SystemSpec::Distinguishable { dims } => {
            if dims.len() != 2 {
                return Err(Error::UnsupportedSpec(format!(
                    "explicit projector construction covers two parties, got {}",
                    spec.label()
                )));
            }
            let (n1, n2) = (dims[0], dims[1]);
            let d = n1 * n2;
            let idx = |a: usize, b: usize, c: usize, e: usize| (a * n2 + b) * d + (c * n2 + e);
            for i in 0..n1 {
                for j in 0..n2 {
                    for k in 0..n1 {
                        for l in 0..n2 {
                            let mut v = CVector::zeros(d * d);
                            v[idx(i, j, k, l)] += Complex64::new(1.0, 0.0);
                            v[idx(k, l, i, j)] += Complex64::new(1.0, 0.0);
                            v[idx(k, j, i, l)] -= Complex64::new(1.0, 0.0);
                            v[idx(i, l, k, j)] -= Complex64::new(1.0, 0.0);
                            if v.norm() > 1e-12 {
                                vectors.push(v);
                            }
                        }
                    }
                }
            }
        }
        SystemSpec::Boson2 { n } => {
            let n = *n;
            let psi = |i: usize, j: usize| boson_pair_vector(n, i, j);
            for i in 0..n {
                for j in 0..n {
                    for k in 0..n {
                        for l in 0..n {
                            let sym2 =
                                kron_vec(&psi(i, j), &psi(k, l)) + kron_vec(&psi(k, l), &psi(i, j));
                            let sym_il =
                                kron_vec(&psi(i, l), &psi(j, k)) + kron_vec(&psi(j, k), &psi(i, l));
                            let sym_ik =
                                kron_vec(&psi(i, k), &psi(j, l)) + kron_vec(&psi(j, l), &psi(i, k));
                            let v2 = &sym2 - &sym_il;
                            let v3 = &sym2 - &sym_ik;
                            if v2.norm() > 1e-12 {
                                vectors.push(v2);
                            }
                            if v3.norm() > 1e-12 {
                                vectors.push(v3);
                            }
                        }
                    }
                }
            }
        }
        SystemSpec::Fermion2 { n } => {
            let n = *n;
            let phi = |i: usize, j: usize| fermion_pair_vector(n, i, j);
            // Alternating-sign combination: the Plücker-type eigenvector of
            // the lowest eigenvalue; repeated indices vanish identically.
            for i in 0..n {
                for j in 0..n {
                    for k in 0..n {
                        for l in 0..n {
                            let s_ij_kl =
                                kron_vec(&phi(i, j), &phi(k, l)) + kron_vec(&phi(k, l), &phi(i, j));
                            let s_ik_jl =
                                kron_vec(&phi(i, k), &phi(j, l)) + kron_vec(&phi(j, l), &phi(i, k));
                            let s_il_jk =
                                kron_vec(&phi(i, l), &phi(j, k)) + kron_vec(&phi(j, k), &phi(i, l));
                            let v = s_ij_kl - s_ik_jl + s_il_jk;
                            if v.norm() > 1e-12 {
                                vectors.push(v);
                            }
                        }
                    }
                }
            }
        }
    }

    let dim = spec.composite_dim()?;
    let basis = orthonormalize(&vectors, 1e-8);
    let mut p = CMatrix::zeros(dim * dim, dim * dim);
    for v in &basis {
        for r in 0..dim * dim {
            for c in 0..dim * dim {
                p[(r, c)] += v[r] * v[c].conj();
            }
        }
    }
    Ok(p)
}

/// Two-copy image `V†⊗V† · M · V⊗V` of an ambient two-copy operator under the
/// subspace embedding; used to compare compressed and ambient constructions.
pub fn compress_two_copy(spec: &SystemSpec, ambient: &CMatrix) -> Result<CMatrix> {
    let iso = match spec {
        SystemSpec::Boson2 { n } => sym_subspace_isometry(*n),
        SystemSpec::Fermion2 { n } => antisym_subspace_isometry(*n),
        _ => {
            return Err(Error::UnsupportedSpec(
                "two-copy compression applies to identical particles".into(),
            ))
        }
    };
    let vv = kron(iso.matrix(), iso.matrix());
    Ok(vv.adjoint() * ambient * vv)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::represent;
    use crate::sampling;

    fn distinct_values(w: &Witness) -> Vec<f64> {
        w.eigenspaces().iter().map(|e| e.value).collect()
    }

    fn assert_close(a: f64, b: f64, tol: f64, what: &str) {
        assert!((a - b).abs() <= tol, "{what}: {a} vs {b}");
    }

    #[test]
    fn casimir_constants() {
        // Pair of distinguishable parties: (1 − 1/N²)·I.
        for n in 2..=4usize {
            let ra = represent(&SystemSpec::distinguishable(&[n, n])).unwrap();
            let c2 = casimir(&ra);
            let expect = 1.0 - 1.0 / (n * n) as f64;
            assert!(
                max_abs(&(&c2 - eye(ra.dim()).scale(expect))) < 1e-10,
                "dist {n}"
            );
        }
        // Boson: (1 − 2/N² + 1/N)·I ; fermion: (1 − 2/N² − 1/N)·I.
        let ra = represent(&SystemSpec::boson(2)).unwrap();
        assert!(max_abs(&(casimir(&ra) - eye(3))) < 1e-10);
        let ra = represent(&SystemSpec::fermion(2)).unwrap();
        assert!(max_abs(&casimir(&ra)) < 1e-12);
        for n in 3..=5usize {
            let nf = n as f64;
            let ra = represent(&SystemSpec::boson(n)).unwrap();
            let expect = 1.0 - 2.0 / (nf * nf) + 1.0 / nf;
            assert!(max_abs(&(casimir(&ra) - eye(ra.dim()).scale(expect))) < 1e-10);
            let ra = represent(&SystemSpec::fermion(n)).unwrap();
            let expect = 1.0 - 2.0 / (nf * nf) - 1.0 / nf;
            assert!(max_abs(&(casimir(&ra) - eye(ra.dim()).scale(expect))) < 1e-10);
        }
    }

    #[test]
    fn two_qubit_spectrum() {
        let ra = represent(&SystemSpec::distinguishable(&[2, 2])).unwrap();
        let w = build_witness(&ra, WitnessKind::Projector).unwrap();
        let values = distinct_values(&w);
        assert_eq!(values.len(), 3);
        assert_close(values[0], 2.0, 1e-9, "λ_S²");
        assert_close(values[1], 1.0, 1e-9, "λ_A");
        assert_close(values[2], 0.0, 1e-9, "λ_S¹");
        let mults: Vec<usize> = w.eigenspaces().iter().map(|e| e.multiplicity).collect();
        assert_eq!(mults, vec![9, 6, 1]);
        assert_close(w.l_max(), 2.0, 1e-9, "l_max");
    }

    #[test]
    fn boson2_and_fermion4_spectra() {
        let ra = represent(&SystemSpec::boson(2)).unwrap();
        let w = build_witness(&ra, WitnessKind::Projector).unwrap();
        let v = distinct_values(&w);
        assert_eq!(v.len(), 3);
        assert_close(v[0], 3.0, 1e-9, "boson λ+");
        assert_close(v[1], 1.0, 1e-9, "boson λ");
        assert_close(v[2], 0.0, 1e-9, "boson λ−");

        let ra = represent(&SystemSpec::fermion(4)).unwrap();
        let w = build_witness(&ra, WitnessKind::Projector).unwrap();
        let v = distinct_values(&w);
        assert_eq!(v.len(), 3);
        assert_close(v[0], 1.5, 1e-9, "fermion λ+");
        assert_close(v[1], 1.0, 1e-9, "fermion λ");
        assert_close(v[2], 0.0, 1e-9, "fermion λ−");
    }

    #[test]
    fn lichtenstein_prime_action_cases() {
        // All indices equal: single diagonal term −4/n + 4.
        let terms = lichtenstein_prime_action(2, 0, 0, 0, 0).unwrap();
        assert_eq!(terms.len(), 1);
        assert_eq!(terms[0].0, [0, 0, 0, 0]);
        assert!((terms[0].1 - 2.0).abs() < 1e-15);

        // |0101⟩ at n=2: diagonal coefficient −4/2 + 2 = 0 drops out.
        let terms = lichtenstein_prime_action(2, 0, 1, 0, 1).unwrap();
        assert!(terms.iter().all(|t| t.0 != [0, 1, 0, 1]));

        assert!(matches!(
            lichtenstein_prime_action(2, 0, 1, 2, 0),
            Err(Error::IndexOutOfRange { .. })
        ));
    }

    /// Dense `L′ = N(L − C₂⊗I − I⊗C₂)` built on the uncompressed pair space
    /// agrees with the sparse ket action.
    #[test]
    fn lichtenstein_prime_dense_vs_sparse() {
        let n = 4usize;
        let basis = crate::lie::su_basis(n).unwrap();
        let id = eye(n);
        let pi = |a: &CMatrix| kron(a, &id) + kron(&id, a);
        let d2 = n * n;
        let mut dense = CMatrix::zeros(d2 * d2, d2 * d2);
        for (x, y) in basis.pos_roots().iter().zip(basis.neg_roots()) {
            dense += kron(&pi(x), &pi(y)) + kron(&pi(y), &pi(x));
        }
        for h in basis.cartan() {
            dense += kron(&pi(h), &pi(h));
        }

        let idx = |i: usize, j: usize, k: usize, l: usize| ((i * n + j) * n + k) * n + l;
        let mut rng = sampling::rng_for(77, 0);
        use rand::Rng;
        for _ in 0..20 {
            let (i, j, k, l) = (
                rng.random_range(0..n),
                rng.random_range(0..n),
                rng.random_range(0..n),
                rng.random_range(0..n),
            );
            let terms = lichtenstein_prime_action(n, i, j, k, l).unwrap();
            let mut expect = CVector::zeros(d2 * d2);
            for (ket, coeff) in &terms {
                expect[idx(ket[0], ket[1], ket[2], ket[3])] += Complex64::new(*coeff, 0.0);
            }
            let col: CVector = dense.column(idx(i, j, k, l)).into_owned();
            assert!((col - expect).norm() < 1e-10, "ket ({i},{j},{k},{l})");
        }

        // Compressing the dense L′ reproduces N(L − C₂⊗I − I⊗C₂) from the
        // compressed pipeline, for both statistics.
        for spec in [SystemSpec::boson(n), SystemSpec::fermion(n)] {
            let ra = represent(&spec).unwrap();
            let d = ra.dim();
            let c2 = casimir(&ra);
            let l = lichtenstein(&ra);
            let lp = (l - kron(&c2, &eye(d)) - kron(&eye(d), &c2)).scale(n as f64);
            let compressed = compress_two_copy(&spec, &dense).unwrap();
            assert!(max_abs(&(lp - compressed)) < 1e-9, "spec {}", spec.label());
        }
    }

    #[test]
    fn two_qubit_projector_is_rank_one() {
        let ra = represent(&SystemSpec::distinguishable(&[2, 2])).unwrap();
        let w = build_witness(&ra, WitnessKind::Projector).unwrap();
        assert_eq!(w.kraus().len(), 1);
        assert_eq!(w.kraus_all().len(), 1);
        let trace = w.a_matrix().trace();
        assert!((trace.re - 1.0).abs() < 1e-10);
        // A equals the appendix span construction.
        let p = projector_appendix(&SystemSpec::distinguishable(&[2, 2])).unwrap();
        assert!(max_abs(&(w.a_matrix() - &p)) < 1e-10);
    }

    #[test]
    fn two_qubit_gap_kraus_filtering() {
        let ra = represent(&SystemSpec::distinguishable(&[2, 2])).unwrap();
        let w = build_witness(&ra, WitnessKind::SpectralGap).unwrap();
        assert_eq!(w.kraus().len(), 1, "one symmetric Kraus survives");
        assert_eq!(
            w.kraus_all().len(),
            7,
            "six antisymmetric ones are kept in kraus_all"
        );
        for t in w.kraus() {
            assert!(max_abs(&(t - t.transpose())) < 1e-9 * (1.0 + max_abs(t)));
        }
    }

    /// `|w⟩ = |e₀⟩⊗|e₁⟩` gives the single-coefficient Kraus operator
    /// `T = |e₀⟩⟨e₁|`.
    #[test]
    fn kraus_reshape_convention() {
        let d = 3;
        let mut v = CVector::zeros(d * d);
        v[1] = Complex64::new(1.0, 0.0); // slot (0, 1)
        let t = CMatrix::from_fn(d, d, |r, c| v[r * d + c]);
        assert!((t[(0, 1)] - Complex64::new(1.0, 0.0)).norm() < 1e-15);
        assert_eq!(t.iter().filter(|z| z.norm() > 0.0).count(), 1);
    }

    #[test]
    fn jamiolkowski_basics() {
        let mut rng = sampling::rng_for(91, 0);
        let rho = sampling::random_density(3, 3, &mut rng);
        // a = I⊗I → Λ(ρ) = I (tr ρᵀ = 1).
        let lam = jamiolkowski_apply(&eye(9), &rho).unwrap();
        assert!(max_abs(&(lam - eye(3))) < 1e-12);
        // a = SWAP → Λ(ρ) = ρᵀ.
        let lam = jamiolkowski_apply(&swap_operator(3), &rho).unwrap();
        assert!(max_abs(&(lam - rho.transpose())) < 1e-12);
        assert!(matches!(
            jamiolkowski_apply(&eye(8), &rho),
            Err(Error::DimensionMismatch(_))
        ));
    }

    /// Kraus form of the Jamiolkowski image: Λ(ρ) = Σ_μ T_μ ρ T_μ† over
    /// kraus_all, for both witness kinds.
    #[test]
    fn kraus_form_matches_jamiolkowski() {
        let mut rng = sampling::rng_for(92, 0);
        for spec in [
            SystemSpec::distinguishable(&[2, 2]),
            SystemSpec::boson(3),
            SystemSpec::fermion(4),
        ] {
            let ra = represent(&spec).unwrap();
            let d = ra.dim();
            for kind in [WitnessKind::Projector, WitnessKind::SpectralGap] {
                let w = build_witness(&ra, kind).unwrap();
                let rho = sampling::random_density(d, d, &mut rng);
                let lhs = jamiolkowski_apply(w.a_matrix(), &rho).unwrap();
                let mut rhs = CMatrix::zeros(d, d);
                for t in w.kraus_all() {
                    rhs += t * &rho * t.adjoint();
                }
                assert!(
                    max_abs(&(lhs - rhs)) < 1e-9 * (1.0 + 1.0),
                    "spec {} kind {:?}",
                    spec.label(),
                    kind
                );
            }
        }
    }

    /// Matrix elements of `A` from the Kraus operators. For the projector
    /// witness all Kraus operators are symmetric and the identity holds with
    /// T_μ†; the general (gap) form needs the entrywise conjugate T̄_μ.
    #[test]
    fn matrix_element_identity() {
        let mut rng = sampling::rng_for(93, 0);
        for spec in [SystemSpec::distinguishable(&[2, 2]), SystemSpec::boson(3)] {
            let ra = represent(&spec).unwrap();
            let d = ra.dim();
            for kind in [WitnessKind::Projector, WitnessKind::SpectralGap] {
                let w = build_witness(&ra, kind).unwrap();
                for _ in 0..10 {
                    let p1 = sampling::haar_state(d, &mut rng);
                    let p2 = sampling::haar_state(d, &mut rng);
                    let p3 = sampling::haar_state(d, &mut rng);
                    let p4 = sampling::haar_state(d, &mut rng);
                    let lhs = kron_vec(&p2, &p4).dotc(&(w.a_matrix() * kron_vec(&p1, &p3)));
                    let mut rhs = Complex64::new(0.0, 0.0);
                    for t in w.kraus_all() {
                        let f1 = p2.dotc(&(t * p4.map(|z| z.conj())));
                        let tbar = t.map(|z| z.conj());
                        let f2 = p1.map(|z| z.conj()).dotc(&(tbar * &p3));
                        rhs += f1 * f2;
                    }
                    assert!(
                        (lhs - rhs).norm() < 1e-9,
                        "spec {} kind {:?}",
                        spec.label(),
                        kind
                    );
                }
            }
        }
    }

    /// Eigenspace identification for a pair of distinguishable parties: the
    /// S₁S₂-antisymmetric vectors carry λ_A, the S₁ = S₂ = −1 vectors λ_S¹ and
    /// the S₁ = S₂ = +1 vectors λ_S².
    #[test]
    fn eigenspace_identification_by_spanning_sets() {
        let n = 3usize;
        let ra = represent(&SystemSpec::distinguishable(&[n, n])).unwrap();
        let l = lichtenstein(&ra);
        let (s1, s2) = crate::linalg::copy_swap_operators(n);
        let nf = n as f64;
        let lam_a = 2.0 - 4.0 / (nf * nf);
        let lam_s1 = lam_a - 2.0 / nf;
        let lam_s2 = lam_a + 2.0 / nf;

        let d4 = n * n * n * n;
        let idx = |i: usize, j: usize, k: usize, l_: usize| ((i * n + j) * n + k) * n + l_;
        let mut rng = sampling::rng_for(94, 0);
        use rand::Rng;
        for _ in 0..20 {
            let (i, j, k, l_) = (
                rng.random_range(0..n),
                rng.random_range(0..n),
                rng.random_range(0..n),
                rng.random_range(0..n),
            );
            let mut e = CVector::zeros(d4);
            e[idx(i, j, k, l_)] = Complex64::new(1.0, 0.0);
            let s1e = &s1 * &e;
            let s2e = &s2 * &e;
            let s12e = &s1 * &s2e;

            for (vec, lam) in [
                (&e - &s12e, lam_a),
                (&e + &s12e - &s1e - &s2e, lam_s1),
                (&e + &s12e + &s1e + &s2e, lam_s2),
            ] {
                if vec.norm() < 1e-12 {
                    continue;
                }
                let lv = &l * &vec;
                assert!(
                    (lv - vec.scale(lam)).norm() < 1e-9 * vec.norm(),
                    "λ = {lam}"
                );
            }
        }
    }

    /// A ⪰ 0 and A annihilates the two-copy square of the highest-weight state.
    #[test]
    fn witness_psd_and_kernel() {
        for spec in [
            SystemSpec::distinguishable(&[2, 3]),
            SystemSpec::boson(3),
            SystemSpec::fermion(4),
        ] {
            let ra = represent(&spec).unwrap();
            for kind in [WitnessKind::Projector, WitnessKind::SpectralGap] {
                let w = build_witness(&ra, kind).unwrap();
                let (evals, _) = eigh(w.a_matrix()).unwrap();
                assert!(evals[0] >= -1e-9, "A not PSD for {}", spec.label());
                // Highest-weight vector is the first basis ray for these specs.
                let mut v = CVector::zeros(ra.dim());
                v[0] = Complex64::new(1.0, 0.0);
                let two = kron_vec(&v, &v);
                assert!((w.a_matrix() * two).norm() < 1e-9);
            }
        }
    }

    /// Appendix-projector equivalence across the three system kinds.
    #[test]
    fn projector_matches_eigenprojector() {
        for spec in [
            SystemSpec::distinguishable(&[2, 2]),
            SystemSpec::distinguishable(&[3, 3]),
            SystemSpec::distinguishable(&[2, 3]),
            SystemSpec::boson(3),
            SystemSpec::fermion(4),
        ] {
            let ra = represent(&spec).unwrap();
            let w = build_witness(&ra, WitnessKind::Projector).unwrap();
            let p = projector_appendix(&spec).unwrap();
            assert!(
                max_abs(&(w.a_matrix() - &p)) < 1e-10,
                "projector mismatch for {}",
                spec.label()
            );
        }
    }

    #[test]
    fn projector_rejects_multiparty() {
        assert!(matches!(
            projector_appendix(&SystemSpec::distinguishable(&[2, 2, 2])),
            Err(Error::UnsupportedSpec(_))
        ));
    }

    /// Fermion N=3: no symmetric non-top sector, so A = 0 (every two-fermion
    /// state in three modes is a single Slater determinant).
    #[test]
    fn fermion3_witness_vanishes() {
        let ra = represent(&SystemSpec::fermion(3)).unwrap();
        let w = build_witness(&ra, WitnessKind::Projector).unwrap();
        assert!(w.kraus().is_empty());
        assert!(max_abs(w.a_matrix()) < 1e-12);
        let p = projector_appendix(&SystemSpec::fermion(3)).unwrap();
        assert!(max_abs(&p) < 1e-12);
    }

    /// Gap vs projector on symmetric two-copy vectors for two qubits: a single
    /// factor of 2 (the S¹ gap).
    #[test]
    fn gap_vs_projector_two_qubits() {
        let ra = represent(&SystemSpec::distinguishable(&[2, 2])).unwrap();
        let wg = build_witness(&ra, WitnessKind::SpectralGap).unwrap();
        let wp = build_witness(&ra, WitnessKind::Projector).unwrap();
        let mut rng = sampling::rng_for(95, 0);
        for _ in 0..10 {
            let psi = sampling::haar_state(4, &mut rng);
            let two = kron_vec(&psi, &psi);
            let eg = two.dotc(&(wg.a_matrix() * &two)).re;
            let ep = two.dotc(&(wp.a_matrix() * &two)).re;
            assert!((eg - 2.0 * ep).abs() < 1e-9);
        }
    }
}
