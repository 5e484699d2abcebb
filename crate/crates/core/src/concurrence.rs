//! Pure-state generalized concurrence and mixed-state lower bounds.
//!
//! The pure-state measure is `c_A(ψ) = (Σ_μ |⟨ψ|T_μ|ψ*⟩|²)^{1/2}` over the
//! symmetric Kraus operators of a witness; conjugation is entrywise in the
//! computational basis of the composite space (the compressed pair basis for
//! identical particles), matching the basis the Kraus operators were extracted
//! in. Mixed states get the closed-form lower bound
//! `max{0, λ₁ − Σ_{j>1} λ_j}` from the singular values of `𝒯 = Σ_μ y_μ τ_μ`,
//! plus a randomized convex-roof upper estimate for sandwich checks.

use crate::canonical::PureState;
use crate::error::{Error, Result};
use crate::lie::SystemSpec;
use crate::linalg::{eigh, singular_values, CMatrix, CVector, Complex64};
use crate::sampling;
use crate::witness::Witness;

/// Eigenvalues of ρ below this are dropped when forming `|ξ_k⟩`.
pub const RANK_EPS: f64 = 1e-10;

/// A density matrix tagged with its system descriptor.
#[derive(Clone, Debug)]
pub struct MixedState {
    spec: SystemSpec,
    rho: CMatrix,
}

impl MixedState {
    pub fn new(spec: SystemSpec, rho: CMatrix) -> Result<Self> {
        let dim = spec.composite_dim()?;
        if rho.nrows() != dim || rho.ncols() != dim {
            return Err(Error::DimensionMismatch(format!(
                "density matrix is {}x{}, system {} needs {dim}x{dim}",
                rho.nrows(),
                rho.ncols(),
                spec.label()
            )));
        }
        let dev = crate::linalg::hermiticity_deviation(&rho);
        let scale = crate::linalg::max_abs(&rho).max(f64::MIN_POSITIVE);
        if dev > 1e-8 * scale {
            return Err(Error::NonHermitian {
                deviation: dev,
                tolerance: 1e-8 * scale,
            });
        }
        let tr = rho.trace().re;
        if (tr - 1.0).abs() > 1e-8 {
            return Err(Error::InvalidState(format!("tr ρ = {tr}, expected 1")));
        }
        Ok(Self { spec, rho })
    }

    pub fn from_pure(state: &PureState) -> Self {
        let v = state.amplitudes();
        let d = v.len();
        let rho = CMatrix::from_fn(d, d, |i, j| v[i] * v[j].conj());
        Self {
            spec: state.spec().clone(),
            rho,
        }
    }

    pub fn spec(&self) -> &SystemSpec {
        &self.spec
    }

    pub fn rho(&self) -> &CMatrix {
        &self.rho
    }

    /// Unnormalized spectral vectors `|ξ_k⟩ = √r_k |η_k⟩` over eigenvalues
    /// above [`RANK_EPS`], largest first.
    pub fn xi_vectors(&self) -> Result<Vec<CVector>> {
        let (evals, evecs) = eigh(&self.rho)?;
        let mut xis = Vec::new();
        for k in (0..evals.len()).rev() {
            if evals[k] > RANK_EPS {
                let col: CVector = evecs.column(k).into_owned();
                xis.push(col.scale(evals[k].sqrt()));
            }
        }
        Ok(xis)
    }
}

/// The `r×r` matrices `(τ_μ)_{ij} = ⟨ξ_i|T_μ|ξ_j*⟩` over the symmetric Kraus
/// operators.
#[derive(Clone, Debug)]
pub struct TauSet {
    taus: Vec<CMatrix>,
    r: usize,
}

impl TauSet {
    pub fn taus(&self) -> &[CMatrix] {
        &self.taus
    }

    /// Effective rank of ρ.
    pub fn rank(&self) -> usize {
        self.r
    }

    pub fn len(&self) -> usize {
        self.taus.len()
    }

    pub fn is_empty(&self) -> bool {
        self.taus.is_empty()
    }
}

/// How the weight vector of a bound report was chosen.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BoundStrategy {
    FixedWeights,
    SingleBest,
    RandomSearch,
    CoordinateAscent,
}

/// Result of a lower-bound evaluation.
#[derive(Clone, Debug)]
pub struct BoundReport {
    pub bound: f64,
    pub y: Vec<f64>,
    pub singulars: Vec<f64>,
    pub strategy: BoundStrategy,
}

/// Weight-vector search strategies for [`optimize_y`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OptimizeStrategy {
    /// Try each unit vector e_μ.
    SingleBest,
    /// SingleBest plus `k` uniformly random unit weight vectors.
    RandomSearch { k: usize },
    /// Refine the best SingleBest seed by local moves until the improvement
    /// drops below 1e-10.
    CoordinateAscent,
}

fn bilinear_conj(t: &CMatrix, a: &CVector, b: &CVector) -> Complex64 {
    // ⟨a|T|b*⟩ with entrywise conjugation of b.
    a.dotc(&(t * b.map(|z| z.conj())))
}

/// `c_A(ψ) = (Σ_μ |⟨ψ|T_μ|ψ*⟩|²)^{1/2}` over the symmetric Kraus operators.
pub fn concurrence_pure(psi: &PureState, w: &Witness) -> Result<f64> {
    if psi.spec() != w.spec() {
        return Err(Error::SpecMismatch {
            state: psi.spec().label(),
            witness: w.spec().label(),
        });
    }
    Ok(concurrence_amplitudes(psi.amplitudes(), w))
}

/// Same as [`concurrence_pure`] for a raw (possibly unnormalized) amplitude
/// vector; scales as `|α|²` under `ψ → αψ`.
pub fn concurrence_amplitudes(psi: &CVector, w: &Witness) -> f64 {
    let mut sum = 0.0;
    for t in w.kraus() {
        sum += bilinear_conj(t, psi, psi).norm_sqr();
    }
    sum.sqrt()
}

/// τ matrices of a mixed state for the symmetric Kraus operators of `w`.
pub fn tau_matrices(rho: &MixedState, w: &Witness) -> Result<TauSet> {
    if rho.spec() != w.spec() {
        return Err(Error::SpecMismatch {
            state: rho.spec().label(),
            witness: w.spec().label(),
        });
    }
    let xis = rho.xi_vectors()?;
    let r = xis.len();
    let taus = w
        .kraus()
        .iter()
        .map(|t| CMatrix::from_fn(r, r, |i, j| bilinear_conj(t, &xis[i], &xis[j])))
        .collect();
    Ok(TauSet { taus, r })
}

fn bound_from_singulars(singulars: &[f64]) -> f64 {
    match singulars.split_first() {
        Some((first, rest)) => (first - rest.iter().sum::<f64>()).max(0.0),
        None => 0.0,
    }
}

/// Closed-form lower bound for a fixed weight vector `y` (Σ y_μ² = 1):
/// `max{0, λ₁ − Σ_{j>1} λ_j}` over the singular values of `𝒯 = Σ_μ y_μ τ_μ`.
pub fn uhlmann_bound(ts: &TauSet, y: &[f64]) -> Result<BoundReport> {
    if ts.is_empty() {
        // No symmetric Kraus operators: the measure vanishes identically.
        return Ok(BoundReport {
            bound: 0.0,
            y: Vec::new(),
            singulars: Vec::new(),
            strategy: BoundStrategy::FixedWeights,
        });
    }
    if y.len() != ts.len() {
        return Err(Error::BadWeights(format!(
            "{} weights for {} τ matrices",
            y.len(),
            ts.len()
        )));
    }
    let norm2: f64 = y.iter().map(|v| v * v).sum();
    if (norm2 - 1.0).abs() > 1e-10 {
        return Err(Error::BadWeights(format!("Σ y² = {norm2}, expected 1")));
    }
    let r = ts.rank();
    let mut t = CMatrix::zeros(r, r);
    for (w, tau) in y.iter().zip(ts.taus()) {
        t += tau.scale(*w);
    }
    let singulars = singular_values(&t);
    Ok(BoundReport {
        bound: bound_from_singulars(&singulars),
        y: y.to_vec(),
        singulars,
        strategy: BoundStrategy::FixedWeights,
    })
}

/// Search the weight sphere for the best lower bound.
pub fn optimize_y(ts: &TauSet, strategy: OptimizeStrategy, seed: u64) -> Result<BoundReport> {
    if ts.is_empty() {
        return Ok(BoundReport {
            bound: 0.0,
            y: Vec::new(),
            singulars: Vec::new(),
            strategy: BoundStrategy::SingleBest,
        });
    }
    let m = ts.len();
    let mut best: Option<BoundReport> = None;
    let mut consider = |y: &[f64]| -> Result<()> {
        let rep = uhlmann_bound(ts, y)?;
        if best.as_ref().map(|b| rep.bound > b.bound).unwrap_or(true) {
            best = Some(rep);
        }
        Ok(())
    };

    for mu in 0..m {
        let mut y = vec![0.0; m];
        y[mu] = 1.0;
        consider(&y)?;
    }

    match strategy {
        OptimizeStrategy::SingleBest => {}
        OptimizeStrategy::RandomSearch { k } => {
            for trial in 0..k {
                let mut rng = sampling::rng_for(seed, trial as u64);
                let y = random_unit(m, &mut rng);
                consider(&y)?;
            }
        }
        OptimizeStrategy::CoordinateAscent => {
            let mut current = best.clone().expect("seeded above");
            let mut step = 0.5;
            while step > 1e-6 {
                let mut improved = false;
                for mu in 0..m {
                    for dir in [1.0, -1.0] {
                        let mut y = current.y.clone();
                        y[mu] += dir * step;
                        let n: f64 = y.iter().map(|v| v * v).sum::<f64>().sqrt();
                        if n < 1e-12 {
                            continue;
                        }
                        for v in &mut y {
                            *v /= n;
                        }
                        let rep = uhlmann_bound(ts, &y)?;
                        if rep.bound > current.bound + 1e-10 {
                            current = rep;
                            improved = true;
                        }
                    }
                }
                if !improved {
                    step *= 0.5;
                }
            }
            if current.bound > best.as_ref().unwrap().bound {
                best = Some(current);
            }
        }
    }

    let mut rep = best.expect("at least one candidate");
    rep.strategy = match strategy {
        OptimizeStrategy::SingleBest => BoundStrategy::SingleBest,
        OptimizeStrategy::RandomSearch { .. } => BoundStrategy::RandomSearch,
        OptimizeStrategy::CoordinateAscent => BoundStrategy::CoordinateAscent,
    };
    Ok(rep)
}

fn random_unit(m: usize, rng: &mut rand_chacha::ChaCha8Rng) -> Vec<f64> {
    use rand::Rng;
    loop {
        let v: Vec<f64> = (0..m).map(|_| rng.random::<f64>() * 2.0 - 1.0).collect();
        let n: f64 = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if n > 1e-6 {
            return v.into_iter().map(|x| x / n).collect();
        }
    }
}

/// Σ_k (Σ_μ |(V̄ τ_μ V†)_kk|²)^{1/2}: the decomposition average for the
/// isometry `V` (rows = decomposition members) in the ξ basis.
fn decomposition_cost(v: &CMatrix, taus: &[CMatrix]) -> f64 {
    let (k_rows, r) = v.shape();
    let mut total = 0.0;
    for k in 0..k_rows {
        let row: Vec<Complex64> = (0..r).map(|j| v[(k, j)].conj()).collect();
        let mut s = 0.0;
        for tau in taus {
            let mut acc = Complex64::new(0.0, 0.0);
            for i in 0..r {
                for j in 0..r {
                    acc += row[i] * tau[(i, j)] * row[j];
                }
            }
            s += acc.norm_sqr();
        }
        total += s.sqrt();
    }
    total
}

/// Randomized upper estimate of the convex roof `c_A(ρ)`.
///
/// Decompositions are sampled as `K×R` left-isometries (QR of complex Gaussian
/// matrices). The first ~30% of trials draw uniformly; the rest
/// QR-orthonormalize Gaussian perturbations of the incumbent best with a
/// geometrically shrinking step, which is what lets the estimate approach the
/// two-qubit closed-form roof at realistic trial counts. Deterministic for a
/// fixed seed, independent of evaluation order.
pub fn convex_roof_upper(
    rho: &MixedState,
    w: &Witness,
    trials: usize,
    k_size: usize,
    seed: u64,
) -> Result<f64> {
    let ts = tau_matrices(rho, w)?;
    let r = ts.rank();
    if ts.is_empty() {
        return Ok(0.0);
    }
    if k_size < r {
        return Err(Error::BadDecompositionSize { k: k_size, rank: r });
    }
    if trials == 0 {
        return Err(Error::BadWeights(
            "convex roof needs at least one trial".into(),
        ));
    }

    let explore = ((trials * 3) / 10).max(1);
    let mut best = f64::INFINITY;
    let mut best_v: Option<CMatrix> = None;
    for trial in 0..trials {
        let mut rng = sampling::rng_for(seed, trial as u64);
        let g = sampling::gaussian_matrix(k_size, r, &mut rng);
        let candidate = match (trial < explore, &best_v) {
            (true, _) | (_, None) => sampling::orthonormal_columns(&g),
            (false, Some(v)) => {
                let frac = (trial - explore) as f64 / (trials - explore).max(1) as f64;
                let sigma = 1e-3f64.powf(frac);
                sampling::orthonormal_columns(&(v + g.scale(sigma)))
            }
        };
        let cost = decomposition_cost(&candidate, ts.taus());
        if cost < best {
            best = cost;
            best_v = Some(candidate);
        }
    }
    Ok(best)
}
