//! Python bindings: witness construction, concurrence, canonical forms and
//! mixed-state bounds.
//!
//! State data follows the file-format conventions: distinguishable pure states
//! pass composite amplitudes, identical-particle pure states pass the n×n
//! single-particle coefficient matrix row-major (`tr(m†m) = 1/2`), mixed
//! states pass the composite density matrix row-major.

use num_complex::Complex;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use witnesslab::canonical::{canonical_coeffs, CanonicalKind, DEFAULT_NONENTANGLED_TOL};
use witnesslab::concurrence::{optimize_y, tau_matrices, OptimizeStrategy};
use witnesslab::statefile::{LoadedState, StateFile, StateType, SCHEMA_VERSION};
use witnesslab::{represent, SystemSpec, WitnessKind};

fn err<E: std::fmt::Display>(e: E) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn parse_kind(kind: &str) -> PyResult<WitnessKind> {
    match kind {
        "projector" => Ok(WitnessKind::Projector),
        "gap" => Ok(WitnessKind::SpectralGap),
        other => Err(err(format!(
            "unknown witness kind {other:?} (use projector|gap)"
        ))),
    }
}

fn load_state(
    system: &str,
    data: Vec<Complex<f64>>,
    state_type: StateType,
) -> PyResult<LoadedState> {
    let spec = SystemSpec::parse(system).map_err(err)?;
    let file = StateFile {
        schema_version: SCHEMA_VERSION,
        system: spec,
        state_type,
        data: data.iter().map(|z| [z.re, z.im]).collect(),
    };
    file.to_state().map_err(err)
}

/// A constructed entanglement witness for one system.
#[pyclass]
struct Witness {
    inner: witnesslab::Witness,
}

#[pymethods]
impl Witness {
    #[new]
    #[pyo3(signature = (system, kind = "projector"))]
    fn new(system: &str, kind: &str) -> PyResult<Self> {
        let spec = SystemSpec::parse(system).map_err(err)?;
        let ra = represent(&spec).map_err(err)?;
        let inner = witnesslab::build_witness(&ra, parse_kind(kind)?).map_err(err)?;
        Ok(Witness { inner })
    }

    /// Largest eigenvalue of L.
    fn l_max(&self) -> f64 {
        self.inner.l_max()
    }

    /// Distinct eigenvalues of L with multiplicities, descending.
    fn spectrum(&self) -> Vec<(f64, usize)> {
        self.inner
            .eigenspaces()
            .iter()
            .map(|e| (e.value, e.multiplicity))
            .collect()
    }

    /// (symmetric, total) Kraus operator counts.
    fn kraus_counts(&self) -> (usize, usize) {
        (self.inner.kraus().len(), self.inner.kraus_all().len())
    }

    /// Generalized concurrence of a pure state.
    fn concurrence(&self, data: Vec<Complex<f64>>) -> PyResult<f64> {
        let system = self.inner.spec().label();
        match load_state(&system, data, StateType::Pure)? {
            LoadedState::Pure(psi) => witnesslab::concurrence_pure(&psi, &self.inner).map_err(err),
            _ => unreachable!(),
        }
    }

    /// Closed-form lower bound on the mixed-state concurrence.
    ///
    /// `strategy`: "single" | "random:<k>" | "ascent".
    #[pyo3(signature = (data, strategy = "single", seed = 0))]
    fn mixed_bound(
        &self,
        data: Vec<Complex<f64>>,
        strategy: &str,
        seed: u64,
    ) -> PyResult<(f64, Vec<f64>, Vec<f64>)> {
        let system = self.inner.spec().label();
        let rho = match load_state(&system, data, StateType::Mixed)? {
            LoadedState::Mixed(m) => m,
            _ => unreachable!(),
        };
        let ts = tau_matrices(&rho, &self.inner).map_err(err)?;
        let strat = if strategy == "single" {
            OptimizeStrategy::SingleBest
        } else if strategy == "ascent" {
            OptimizeStrategy::CoordinateAscent
        } else if let Some(k) = strategy.strip_prefix("random:") {
            OptimizeStrategy::RandomSearch {
                k: k.parse().map_err(err)?,
            }
        } else {
            return Err(err(format!("unknown strategy {strategy:?}")));
        };
        let rep = optimize_y(&ts, strat, seed).map_err(err)?;
        Ok((rep.bound, rep.y, rep.singulars))
    }

    /// Randomized convex-roof upper estimate for a mixed state.
    #[pyo3(signature = (data, trials = 2000, seed = 0))]
    fn convex_roof_upper(
        &self,
        data: Vec<Complex<f64>>,
        trials: usize,
        seed: u64,
    ) -> PyResult<f64> {
        let system = self.inner.spec().label();
        let rho = match load_state(&system, data, StateType::Mixed)? {
            LoadedState::Mixed(m) => m,
            _ => unreachable!(),
        };
        let ts = tau_matrices(&rho, &self.inner).map_err(err)?;
        let k_size = ts.rank() + 2;
        witnesslab::convex_roof_upper(&rho, &self.inner, trials, k_size, seed).map_err(err)
    }
}

/// Canonical coefficients and the nonentanglement verdict of a pure state.
///
/// Returns `(form, coefficients, nonentangled)` with form one of
/// "schmidt" | "slater" | "takagi".
#[pyfunction]
fn canonical_coefficients(
    system: &str,
    data: Vec<Complex<f64>>,
) -> PyResult<(String, Vec<f64>, bool)> {
    let psi = match load_state(system, data, StateType::Pure)? {
        LoadedState::Pure(p) => p,
        _ => unreachable!(),
    };
    let coeffs = canonical_coeffs(&psi).map_err(err)?;
    let form = match coeffs.kind {
        CanonicalKind::Schmidt => "schmidt",
        CanonicalKind::Slater => "slater",
        CanonicalKind::Takagi => "takagi",
    };
    let nonent = coeffs.effective_rank(DEFAULT_NONENTANGLED_TOL) == 1;
    Ok((form.to_string(), coeffs.values, nonent))
}

/// Composite dimension of a system label such as "dist:2,2" or "fermion:4".
#[pyfunction]
fn composite_dim(system: &str) -> PyResult<usize> {
    let spec = SystemSpec::parse(system).map_err(err)?;
    spec.composite_dim().map_err(err)
}

#[pymodule]
fn witnesslab_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    m.add_class::<Witness>()?;
    m.add_function(wrap_pyfunction!(canonical_coefficients, m)?)?;
    m.add_function(wrap_pyfunction!(composite_dim, m)?)?;
    Ok(())
}
