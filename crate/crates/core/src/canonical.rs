//! Schmidt, Slater and Takagi canonical forms of pure states, with the
//! per-particle-type nonentanglement predicates.
//!
//! A [`PureState`] always stores its amplitude vector in the composite basis
//! (the compressed `ψ_ij`/`φ_ij` basis for identical particles). Bosonic and
//! fermionic states can also be built from, and read back as, their
//! single-particle coefficient matrices `v` / `w` normalized to
//! `tr(v†v) = tr(w†w) = 1/2`.

use crate::error::{Error, Result};
use crate::lie::SystemSpec;
use crate::linalg::{
    antisym_block_diagonalize, singular_values, takagi, CMatrix, CVector, ZERO_COEFF_TOL,
};

/// Default tolerance for the nonentanglement predicate.
pub const DEFAULT_NONENTANGLED_TOL: f64 = 1e-8;

const NORMALIZATION_TOL: f64 = 1e-6;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CanonicalKind {
    Schmidt,
    Slater,
    Takagi,
}

/// Canonical coefficients, nonnegative and descending.
#[derive(Clone, Debug)]
pub struct CanonicalCoeffs {
    pub kind: CanonicalKind,
    pub values: Vec<f64>,
}

impl CanonicalCoeffs {
    /// Number of coefficients above `tol · (largest + 1)`.
    pub fn effective_rank(&self, tol: f64) -> usize {
        let largest = self.values.first().copied().unwrap_or(0.0);
        let cut = tol * (largest + 1.0);
        self.values.iter().filter(|&&v| v > cut).count()
    }
}

/// A pure state tagged with its system descriptor.
#[derive(Clone, Debug)]
pub struct PureState {
    spec: SystemSpec,
    amplitudes: CVector,
}

impl PureState {
    /// Build from amplitudes in the composite basis; checks dimension and
    /// normalization.
    pub fn new(spec: SystemSpec, amplitudes: CVector) -> Result<Self> {
        let dim = spec.composite_dim()?;
        if amplitudes.len() != dim {
            return Err(Error::DimensionMismatch(format!(
                "state has {} amplitudes, system {} needs {}",
                amplitudes.len(),
                spec.label(),
                dim
            )));
        }
        let norm = amplitudes.norm();
        if (norm - 1.0).abs() > NORMALIZATION_TOL {
            return Err(Error::NotNormalized(format!("norm(ψ) = {norm}")));
        }
        Ok(Self { spec, amplitudes })
    }

    /// Two-fermion state from its antisymmetric coefficient matrix `w`
    /// (`tr w†w = 1/2`): amplitude on `(|ij⟩−|ji⟩)/√2` is `2 w_ij` for `i<j`.
    pub fn from_fermion_coefficients(n: usize, w: &CMatrix) -> Result<Self> {
        let spec = SystemSpec::fermion(n);
        if w.nrows() != n || w.ncols() != n {
            return Err(Error::DimensionMismatch(format!(
                "coefficient matrix is {}x{}, expected {n}x{n}",
                w.nrows(),
                w.ncols()
            )));
        }
        let scale = crate::linalg::max_abs(w);
        let dev = crate::linalg::max_abs(&(w + w.transpose()));
        if dev > 1e-8 * (1.0 + scale) {
            return Err(Error::NotAntisymmetric {
                deviation: dev,
                tolerance: 1e-8 * (1.0 + scale),
            });
        }
        let mut amp = CVector::zeros(n * (n - 1) / 2);
        let mut col = 0;
        for i in 0..n {
            for j in (i + 1)..n {
                amp[col] = 2.0 * w[(i, j)];
                col += 1;
            }
        }
        Self::new(spec, amp)
    }

    /// Two-boson state from its symmetric coefficient matrix `v`
    /// (`tr v†v = 1/2`): amplitude `√2 v_ii` on `|ii⟩` and `2 v_ij` on
    /// `(|ij⟩+|ji⟩)/√2` for `i<j`.
    pub fn from_boson_coefficients(n: usize, v: &CMatrix) -> Result<Self> {
        let spec = SystemSpec::boson(n);
        if v.nrows() != n || v.ncols() != n {
            return Err(Error::DimensionMismatch(format!(
                "coefficient matrix is {}x{}, expected {n}x{n}",
                v.nrows(),
                v.ncols()
            )));
        }
        let scale = crate::linalg::max_abs(v);
        let dev = crate::linalg::max_abs(&(v - v.transpose()));
        if dev > 1e-8 * (1.0 + scale) {
            return Err(Error::NotSymmetric {
                deviation: dev,
                tolerance: 1e-8 * (1.0 + scale),
            });
        }
        let mut amp = CVector::zeros(n * (n + 1) / 2);
        for i in 0..n {
            amp[i] = std::f64::consts::SQRT_2 * v[(i, i)];
        }
        let mut col = n;
        for i in 0..n {
            for j in (i + 1)..n {
                amp[col] = 2.0 * v[(i, j)];
                col += 1;
            }
        }
        Self::new(spec, amp)
    }

    pub fn spec(&self) -> &SystemSpec {
        &self.spec
    }

    pub fn amplitudes(&self) -> &CVector {
        &self.amplitudes
    }

    /// The coefficient matrix: `c` (N×M) for a bipartite distinguishable
    /// state, `w` for fermions, `v` for bosons.
    pub fn coefficient_matrix(&self) -> Result<CMatrix> {
        match &self.spec {
            SystemSpec::Distinguishable { dims } => {
                if dims.len() != 2 {
                    return Err(Error::UnsupportedSpec(format!(
                        "coefficient matrix needs a bipartite system, got {}",
                        self.spec.label()
                    )));
                }
                let (n, m) = (dims[0], dims[1]);
                Ok(CMatrix::from_fn(n, m, |i, j| self.amplitudes[i * m + j]))
            }
            SystemSpec::Fermion2 { n } => {
                let mut w = CMatrix::zeros(*n, *n);
                let mut col = 0;
                for i in 0..*n {
                    for j in (i + 1)..*n {
                        let wij = self.amplitudes[col] * 0.5;
                        w[(i, j)] = wij;
                        w[(j, i)] = -wij;
                        col += 1;
                    }
                }
                Ok(w)
            }
            SystemSpec::Boson2 { n } => {
                let mut v = CMatrix::zeros(*n, *n);
                for i in 0..*n {
                    v[(i, i)] = self.amplitudes[i] * std::f64::consts::FRAC_1_SQRT_2;
                }
                let mut col = *n;
                for i in 0..*n {
                    for j in (i + 1)..*n {
                        let vij = self.amplitudes[col] * 0.5;
                        v[(i, j)] = vij;
                        v[(j, i)] = vij;
                        col += 1;
                    }
                }
                Ok(v)
            }
        }
    }
}

/// Schmidt coefficients of a bipartite distinguishable state: the singular
/// values of its coefficient matrix, descending.
pub fn schmidt(state: &PureState) -> Result<CanonicalCoeffs> {
    match state.spec() {
        SystemSpec::Distinguishable { dims } if dims.len() == 2 => {
            let c = state.coefficient_matrix()?;
            Ok(CanonicalCoeffs {
                kind: CanonicalKind::Schmidt,
                values: singular_values(&c),
            })
        }
        SystemSpec::Distinguishable { .. } => Err(Error::UnsupportedSpec(format!(
            "Schmidt form needs a bipartite system, got {}",
            state.spec().label()
        ))),
        other => Err(Error::UnsupportedSpec(format!(
            "Schmidt form applies to distinguishable particles, got {}",
            other.label()
        ))),
    }
}

/// Slater coefficients of a two-fermion state: the block coefficients `z_i`
/// of the canonical antisymmetric form, positive descending.
pub fn slater(state: &PureState) -> Result<CanonicalCoeffs> {
    match state.spec() {
        SystemSpec::Fermion2 { .. } => {
            let w = state.coefficient_matrix()?;
            let (zs, _) = antisym_block_diagonalize(&w)?;
            Ok(CanonicalCoeffs {
                kind: CanonicalKind::Slater,
                values: zs,
            })
        }
        other => Err(Error::UnsupportedSpec(format!(
            "Slater form applies to two fermions, got {}",
            other.label()
        ))),
    }
}

/// Takagi coefficients of a two-boson state: the singular values of its
/// symmetric coefficient matrix, descending.
pub fn takagi_coeffs(state: &PureState) -> Result<CanonicalCoeffs> {
    match state.spec() {
        SystemSpec::Boson2 { .. } => {
            let v = state.coefficient_matrix()?;
            let (coeffs, _) = takagi(&v)?;
            Ok(CanonicalCoeffs {
                kind: CanonicalKind::Takagi,
                values: coeffs,
            })
        }
        other => Err(Error::UnsupportedSpec(format!(
            "Takagi form applies to two bosons, got {}",
            other.label()
        ))),
    }
}

/// Canonical coefficients for any supported spec.
pub fn canonical_coeffs(state: &PureState) -> Result<CanonicalCoeffs> {
    match state.spec() {
        SystemSpec::Distinguishable { .. } => schmidt(state),
        SystemSpec::Fermion2 { .. } => slater(state),
        SystemSpec::Boson2 { .. } => takagi_coeffs(state),
    }
}

/// True iff exactly one canonical coefficient exceeds `tol · (largest + 1)`.
pub fn is_nonentangled(state: &PureState, tol: f64) -> Result<bool> {
    let coeffs = canonical_coeffs(state)?;
    Ok(coeffs.effective_rank(tol) == 1)
}

/// Zero threshold used when reporting canonical ranks.
pub fn coefficient_zero_cut(values: &[f64]) -> f64 {
    ZERO_COEFF_TOL * (values.first().copied().unwrap_or(0.0) + 1.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::Complex64;
    use crate::sampling;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn dist_state(dims: &[usize], amps: Vec<Complex64>) -> PureState {
        PureState::new(SystemSpec::distinguishable(dims), CVector::from_vec(amps)).unwrap()
    }

    #[test]
    fn schmidt_product_and_bell() {
        let s = dist_state(
            &[2, 2],
            vec![c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)],
        );
        let coeffs = schmidt(&s).unwrap();
        assert!((coeffs.values[0] - 1.0).abs() < 1e-12);
        assert_eq!(coeffs.effective_rank(DEFAULT_NONENTANGLED_TOL), 1);
        assert!(is_nonentangled(&s, DEFAULT_NONENTANGLED_TOL).unwrap());

        let h = std::f64::consts::FRAC_1_SQRT_2;
        let bell = dist_state(
            &[2, 2],
            vec![c(h, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(h, 0.0)],
        );
        let coeffs = schmidt(&bell).unwrap();
        assert!((coeffs.values[0] - h).abs() < 1e-12 && (coeffs.values[1] - h).abs() < 1e-12);
        assert!(!is_nonentangled(&bell, DEFAULT_NONENTANGLED_TOL).unwrap());
    }

    #[test]
    fn schmidt_matches_svd_oracle() {
        let mut rng = sampling::rng_for(5, 0);
        let g = sampling::gaussian_matrix(3, 4, &mut rng);
        let nrm = g.norm();
        let cmat = g.unscale(nrm);
        let amps = CVector::from_fn(12, |k, _| cmat[(k / 4, k % 4)]);
        let s = PureState::new(SystemSpec::distinguishable(&[3, 4]), amps).unwrap();
        let coeffs = schmidt(&s).unwrap();
        let sv = singular_values(&cmat);
        for (a, b) in coeffs.values.iter().zip(sv.iter()) {
            assert!((a - b).abs() < 1e-12);
        }
        let sum: f64 = coeffs.values.iter().map(|v| v * v).sum();
        assert!((sum - 1.0).abs() < 1e-10);
    }

    #[test]
    fn slater_single_and_double() {
        // f₁†f₂†|0⟩ in n=2: w = [[0, 1/2], [−1/2, 0]].
        let mut w = CMatrix::zeros(2, 2);
        w[(0, 1)] = c(0.5, 0.0);
        w[(1, 0)] = c(-0.5, 0.0);
        let s = PureState::from_fermion_coefficients(2, &w).unwrap();
        let coeffs = slater(&s).unwrap();
        assert_eq!(coeffs.values.len(), 1);
        assert!((coeffs.values[0] - 0.5).abs() < 1e-12);
        assert!(is_nonentangled(&s, DEFAULT_NONENTANGLED_TOL).unwrap());

        // (f₁†f₂† + f₃†f₄†)|0⟩/√2 in n=4: two equal coefficients.
        let mut w = CMatrix::zeros(4, 4);
        let z = 0.5 * std::f64::consts::FRAC_1_SQRT_2;
        for (i, j) in [(0usize, 1usize), (2, 3)] {
            w[(i, j)] = c(z, 0.0);
            w[(j, i)] = c(-z, 0.0);
        }
        let s = PureState::from_fermion_coefficients(4, &w).unwrap();
        let coeffs = slater(&s).unwrap();
        assert_eq!(coeffs.values.len(), 2);
        assert!((coeffs.values[0] - coeffs.values[1]).abs() < 1e-12);
        assert!(!is_nonentangled(&s, DEFAULT_NONENTANGLED_TOL).unwrap());
    }

    #[test]
    fn slater_rank_one_invariant_under_mode_rotation() {
        let mut rng = sampling::rng_for(6, 0);
        for _ in 0..20 {
            let s = sampling::random_product_state(&SystemSpec::fermion(4), &mut rng);
            let w = s.coefficient_matrix().unwrap();
            let u = sampling::haar_unitary(4, &mut rng);
            let w2 = &u * &w * u.transpose();
            let s2 = PureState::from_fermion_coefficients(4, &w2).unwrap();
            let coeffs = slater(&s2).unwrap();
            assert_eq!(coeffs.effective_rank(DEFAULT_NONENTANGLED_TOL), 1);
        }
    }

    #[test]
    fn takagi_single_and_double_mode() {
        // b₁†b₁†|0⟩: v = diag(1/√2, 0).
        let mut v = CMatrix::zeros(2, 2);
        v[(0, 0)] = c(std::f64::consts::FRAC_1_SQRT_2, 0.0);
        let s = PureState::from_boson_coefficients(2, &v).unwrap();
        let coeffs = takagi_coeffs(&s).unwrap();
        assert_eq!(coeffs.effective_rank(DEFAULT_NONENTANGLED_TOL), 1);
        assert!(is_nonentangled(&s, DEFAULT_NONENTANGLED_TOL).unwrap());

        // (b₁†b₁† + b₂†b₂†)|0⟩ normalized: two equal coefficients.
        let mut v = CMatrix::zeros(2, 2);
        v[(0, 0)] = c(0.5, 0.0);
        v[(1, 1)] = c(0.5, 0.0);
        let s = PureState::from_boson_coefficients(2, &v).unwrap();
        let coeffs = takagi_coeffs(&s).unwrap();
        assert!((coeffs.values[0] - 0.5).abs() < 1e-12 && (coeffs.values[1] - 0.5).abs() < 1e-12);
        assert!(!is_nonentangled(&s, DEFAULT_NONENTANGLED_TOL).unwrap());
    }

    #[test]
    fn takagi_random_symmetric_matches_svd() {
        let mut rng = sampling::rng_for(7, 0);
        let g = sampling::gaussian_matrix(3, 3, &mut rng);
        let sym = (&g + g.transpose()).scale(0.5);
        let nrm = (sym.adjoint() * &sym).trace().re.sqrt();
        let v = sym.unscale(nrm * std::f64::consts::SQRT_2);
        let s = PureState::from_boson_coefficients(3, &v).unwrap();
        let coeffs = takagi_coeffs(&s).unwrap();
        let sv = singular_values(&v);
        for (a, b) in coeffs.values.iter().zip(sv.iter()) {
            assert!((a - b).abs() < 1e-10);
        }
    }

    #[test]
    fn coefficient_roundtrip() {
        let mut rng = sampling::rng_for(8, 0);
        for spec in [SystemSpec::boson(3), SystemSpec::fermion(4)] {
            let s = sampling::haar_pure_state(&spec, &mut rng);
            let m = s.coefficient_matrix().unwrap();
            let s2 = match spec {
                SystemSpec::Boson2 { n } => PureState::from_boson_coefficients(n, &m).unwrap(),
                SystemSpec::Fermion2 { n } => PureState::from_fermion_coefficients(n, &m).unwrap(),
                _ => unreachable!(),
            };
            assert!((s.amplitudes() - s2.amplitudes()).norm() < 1e-12);
        }
    }

    /// Canonical coefficients are invariant under the appropriate local
    /// transformations.
    #[test]
    fn local_unitary_invariance() {
        let mut rng = sampling::rng_for(9, 0);
        for _ in 0..10 {
            // Schmidt: c → U c Vᵀ.
            let g = sampling::gaussian_matrix(3, 3, &mut rng);
            let nrm = g.norm();
            let cmat = g.unscale(nrm);
            let amps = CVector::from_fn(9, |k, _| cmat[(k / 3, k % 3)]);
            let s = PureState::new(SystemSpec::distinguishable(&[3, 3]), amps).unwrap();
            let u = sampling::haar_unitary(3, &mut rng);
            let v = sampling::haar_unitary(3, &mut rng);
            let c2 = &u * &cmat * v.transpose();
            let amps2 = CVector::from_fn(9, |k, _| c2[(k / 3, k % 3)]);
            let s2 = PureState::new(SystemSpec::distinguishable(&[3, 3]), amps2).unwrap();
            let a = schmidt(&s).unwrap().values;
            let b = schmidt(&s2).unwrap().values;
            for (x, y) in a.iter().zip(&b) {
                assert!((x - y).abs() < 1e-9);
            }

            // Takagi: v → U v Uᵀ. Slater: w → U w Uᵀ.
            for spec in [SystemSpec::boson(3), SystemSpec::fermion(4)] {
                let s = sampling::haar_pure_state(&spec, &mut rng);
                let m = s.coefficient_matrix().unwrap();
                let n = m.nrows();
                let u = sampling::haar_unitary(n, &mut rng);
                let m2 = &u * &m * u.transpose();
                let s2 = match spec {
                    SystemSpec::Boson2 { .. } => {
                        PureState::from_boson_coefficients(n, &m2).unwrap()
                    }
                    _ => PureState::from_fermion_coefficients(n, &m2).unwrap(),
                };
                let a = canonical_coeffs(&s).unwrap().values;
                let b = canonical_coeffs(&s2).unwrap().values;
                assert_eq!(a.len(), b.len());
                for (x, y) in a.iter().zip(&b) {
                    assert!((x - y).abs() < 1e-9);
                }
            }
        }
    }

    /// Cross-module consistency on 500 random states per spec: the canonical
    /// predicate and the concurrence agree on where zero lives.
    #[test]
    fn nonentangled_iff_zero_concurrence() {
        use crate::witness::{build_witness, WitnessKind};
        let mut rng = sampling::rng_for(11, 0);
        for spec in [
            SystemSpec::distinguishable(&[2, 2]),
            SystemSpec::boson(3),
            SystemSpec::fermion(4),
        ] {
            let ra = crate::lie::represent(&spec).unwrap();
            let w = build_witness(&ra, WitnessKind::Projector).unwrap();
            for k in 0..500 {
                let s = if k % 2 == 0 {
                    sampling::random_product_state(&spec, &mut rng)
                } else {
                    sampling::haar_pure_state(&spec, &mut rng)
                };
                let flagged = is_nonentangled(&s, DEFAULT_NONENTANGLED_TOL).unwrap();
                let c = crate::concurrence::concurrence_pure(&s, &w).unwrap();
                assert_eq!(
                    flagged,
                    c <= 1e-8,
                    "{} state {k}: c_A = {c:.3e}",
                    spec.label()
                );
            }
        }
    }

    #[test]
    fn unsupported_specs_error() {
        let mut rng = sampling::rng_for(10, 0);
        let s = sampling::haar_pure_state(&SystemSpec::distinguishable(&[2, 2, 2]), &mut rng);
        assert!(matches!(schmidt(&s), Err(Error::UnsupportedSpec(_))));
        assert!(matches!(
            is_nonentangled(&s, 1e-8),
            Err(Error::UnsupportedSpec(_))
        ));
        let b = sampling::haar_pure_state(&SystemSpec::boson(3), &mut rng);
        assert!(matches!(schmidt(&b), Err(Error::UnsupportedSpec(_))));
        assert!(matches!(slater(&b), Err(Error::UnsupportedSpec(_))));
    }

    #[test]
    fn normalization_enforced() {
        let amps = CVector::from_vec(vec![c(1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)]);
        assert!(matches!(
            PureState::new(SystemSpec::distinguishable(&[2, 2]), amps),
            Err(Error::NotNormalized(_))
        ));
    }
}
