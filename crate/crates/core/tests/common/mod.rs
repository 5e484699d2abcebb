//! Shared oracles for the integration suites.
#![allow(dead_code)] // each test target compiles its own copy

use witnesslab::linalg::{eigh, kron, CMatrix, CVector, Complex64};

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// σ_y ⊗ σ_y.
pub fn spin_flip_operator() -> CMatrix {
    let sy = CMatrix::from_fn(2, 2, |i, j| match (i, j) {
        (0, 1) => c(0.0, -1.0),
        (1, 0) => c(0.0, 1.0),
        _ => c(0.0, 0.0),
    });
    kron(&sy, &sy)
}

/// Hermitian principal square root.
fn sqrtm(m: &CMatrix) -> CMatrix {
    let (vals, vecs) = eigh(m).expect("hermitian");
    let d = CMatrix::from_diagonal(&CVector::from_fn(vals.len(), |i, _| {
        c(vals[i].max(0.0).sqrt(), 0.0)
    }));
    &vecs * d * vecs.adjoint()
}

/// Wootters concurrence of a two-qubit density matrix:
/// `max{0, λ₁ − λ₂ − λ₃ − λ₄}` with λ's the square roots of the eigenvalues
/// of `√ρ (σy⊗σy) ρ* (σy⊗σy) √ρ`, descending.
pub fn wootters_concurrence(rho: &CMatrix) -> f64 {
    let y = spin_flip_operator();
    let rho_tilde = &y * rho.map(|z| z.conj()) * &y;
    let s = sqrtm(rho);
    let m = &s * rho_tilde * &s;
    let (vals, _) = eigh(&m).expect("hermitian");
    // sqrt amplifies eigenvalue noise near zero; clamp relative to the top.
    let top = vals.last().copied().unwrap_or(0.0).max(0.0);
    let mut lambdas: Vec<f64> = vals
        .iter()
        .map(|&v| if v > 1e-13 * top { v.sqrt() } else { 0.0 })
        .collect();
    lambdas.sort_by(|a, b| b.total_cmp(a));
    (lambdas[0] - lambdas[1] - lambdas[2] - lambdas[3]).max(0.0)
}

/// Two-qubit Werner state `p|Ψ⁻⟩⟨Ψ⁻| + (1−p) I/4`.
pub fn werner_rho(p: f64) -> CMatrix {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let psi_minus = CVector::from_vec(vec![c(0.0, 0.0), c(h, 0.0), c(-h, 0.0), c(0.0, 0.0)]);
    let mut rho = CMatrix::from_fn(4, 4, |i, j| psi_minus[i] * psi_minus[j].conj() * p);
    for i in 0..4 {
        rho[(i, i)] += c((1.0 - p) / 4.0, 0.0);
    }
    rho
}

/// Density matrix of a pure amplitude vector.
pub fn pure_rho(psi: &CVector) -> CMatrix {
    CMatrix::from_fn(psi.len(), psi.len(), |i, j| psi[i] * psi[j].conj())
}
