//! Seeded random sampling of states, unitaries and isometries.
//!
//! All helpers take an explicit RNG so library results stay reproducible; the
//! per-trial stream construction in [`rng_for`] makes batched searches
//! independent of evaluation order.

use nalgebra::DMatrix;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::canonical::PureState;
use crate::lie::SystemSpec;
use crate::linalg::{kron, CMatrix, CVector, Complex64};

/// RNG for trial `stream` of a search seeded with `seed`; distinct streams are
/// independent, so parallel and serial evaluation orders agree.
pub fn rng_for(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Standard complex Gaussian (unit variance per complex entry).
pub fn complex_gaussian(rng: &mut ChaCha8Rng) -> Complex64 {
    // Box-Muller from two uniforms.
    let u1: f64 = rng.random::<f64>().max(1e-300);
    let u2: f64 = rng.random();
    let r = (-2.0 * u1.ln()).sqrt();
    let theta = 2.0 * std::f64::consts::PI * u2;
    Complex64::new(r * theta.cos(), r * theta.sin()) * std::f64::consts::FRAC_1_SQRT_2
}

pub fn gaussian_matrix(rows: usize, cols: usize, rng: &mut ChaCha8Rng) -> CMatrix {
    let data: Vec<Complex64> = (0..rows * cols).map(|_| complex_gaussian(rng)).collect();
    DMatrix::from_vec(rows, cols, data)
}

/// Haar-random pure state vector.
pub fn haar_state(dim: usize, rng: &mut ChaCha8Rng) -> CVector {
    let v = CVector::from_fn(dim, |_, _| complex_gaussian(rng));
    let n = v.norm();
    v.unscale(n)
}

/// Haar-random unitary via QR of a complex Gaussian with phase fixing.
pub fn haar_unitary(dim: usize, rng: &mut ChaCha8Rng) -> CMatrix {
    let g = gaussian_matrix(dim, dim, rng);
    let qr = g.qr();
    let mut q = qr.q();
    let r = qr.r();
    for j in 0..dim {
        let d = r[(j, j)];
        let phase = if d.norm() > 0.0 {
            d / d.norm()
        } else {
            Complex64::new(1.0, 0.0)
        };
        for i in 0..dim {
            q[(i, j)] *= phase.conj();
        }
    }
    q
}

/// Random `k×r` left-isometry (`V†V = I_r`), `k ≥ r`.
pub fn random_isometry(k: usize, r: usize, rng: &mut ChaCha8Rng) -> CMatrix {
    assert!(k >= r, "isometry needs k >= r");
    let g = gaussian_matrix(k, r, rng);
    orthonormal_columns(&g)
}

/// QR-orthonormalize the columns of `g` (returns the thin Q factor).
pub fn orthonormal_columns(g: &CMatrix) -> CMatrix {
    let qr = g.clone().qr();
    let q = qr.q();
    q.columns(0, g.ncols()).into_owned()
}

/// Random density matrix of the given rank (normalized Wishart).
pub fn random_density(dim: usize, rank: usize, rng: &mut ChaCha8Rng) -> CMatrix {
    let g = gaussian_matrix(dim, rank, rng);
    let m = &g * g.adjoint();
    let t = m.trace().re;
    m.unscale(t)
}

/// Haar-random pure state of the given system (on its composite space).
pub fn haar_pure_state(spec: &SystemSpec, rng: &mut ChaCha8Rng) -> PureState {
    let dim = spec.composite_dim().expect("valid spec");
    PureState::new(spec.clone(), haar_state(dim, rng)).expect("haar state is normalized")
}

/// Random nonentangled state: a tensor product of single-party states, the
/// symmetrization of one doubly-occupied mode, or a single Slater determinant.
pub fn random_product_state(spec: &SystemSpec, rng: &mut ChaCha8Rng) -> PureState {
    match spec {
        SystemSpec::Distinguishable { dims } => {
            let mut amp = CMatrix::identity(1, 1);
            for &d in dims {
                let v = haar_state(d, rng);
                let col = CMatrix::from_fn(v.len(), 1, |i, _| v[i]);
                amp = kron(&amp, &col);
            }
            let v = CVector::from_fn(amp.nrows(), |i, _| amp[(i, 0)]);
            PureState::new(spec.clone(), v).expect("product state is normalized")
        }
        SystemSpec::Boson2 { n } => {
            let phi = haar_state(*n, rng);
            // v = φφᵀ/√2 has tr(v†v) = 1/2.
            let v = CMatrix::from_fn(*n, *n, |i, j| {
                phi[i] * phi[j] * std::f64::consts::FRAC_1_SQRT_2
            });
            PureState::from_boson_coefficients(*n, &v).expect("rank-1 symmetric coefficients")
        }
        SystemSpec::Fermion2 { n } => {
            let g = gaussian_matrix(*n, 2, rng);
            let q = orthonormal_columns(&g);
            // w = (q₁q₂ᵀ − q₂q₁ᵀ)/2 has tr(w†w) = 1/2.
            let w = CMatrix::from_fn(*n, *n, |i, j| {
                (q[(i, 0)] * q[(j, 1)] - q[(i, 1)] * q[(j, 0)]) * 0.5
            });
            PureState::from_fermion_coefficients(*n, &w).expect("single-Slater coefficients")
        }
    }
}
