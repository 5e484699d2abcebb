//! JSON state files.
//!
//! Complex numbers are stored as `[re, im]` pairs, matrices row-major. For
//! pure identical-particle states the data block holds the n×n single-particle
//! coefficient matrix (`v` symmetric / `w` antisymmetric, `tr(m†m) = 1/2`);
//! pure distinguishable states store the composite amplitude vector and mixed
//! states the composite density matrix.

use serde::{Deserialize, Serialize};

use crate::canonical::PureState;
use crate::concurrence::MixedState;
use crate::error::{Error, Result};
use crate::lie::SystemSpec;
use crate::linalg::{CMatrix, CVector, Complex64};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum StateType {
    Pure,
    Mixed,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct StateFile {
    pub schema_version: u32,
    pub system: SystemSpec,
    pub state_type: StateType,
    pub data: Vec<[f64; 2]>,
}

/// A parsed state, pure or mixed.
#[derive(Clone, Debug)]
pub enum LoadedState {
    Pure(PureState),
    Mixed(MixedState),
}

impl LoadedState {
    pub fn spec(&self) -> &SystemSpec {
        match self {
            LoadedState::Pure(s) => s.spec(),
            LoadedState::Mixed(s) => s.spec(),
        }
    }
}

fn to_complex(data: &[[f64; 2]]) -> Vec<Complex64> {
    data.iter().map(|p| Complex64::new(p[0], p[1])).collect()
}

fn from_complex<'a>(values: impl Iterator<Item = &'a Complex64>) -> Vec<[f64; 2]> {
    values.map(|z| [z.re, z.im]).collect()
}

impl StateFile {
    pub fn parse(text: &str) -> Result<Self> {
        let file: StateFile = serde_json::from_str(text)?;
        if file.schema_version != SCHEMA_VERSION {
            return Err(Error::Parse(format!(
                "unsupported schema_version {}, expected {SCHEMA_VERSION}",
                file.schema_version
            )));
        }
        file.system.validate()?;
        Ok(file)
    }

    pub fn load(path: &std::path::Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        Self::parse(&text)
    }

    /// Expected data length for this system and state type.
    fn expected_len(&self) -> Result<usize> {
        let d = self.system.composite_dim()?;
        Ok(match (self.state_type, &self.system) {
            (StateType::Pure, SystemSpec::Boson2 { n })
            | (StateType::Pure, SystemSpec::Fermion2 { n }) => n * n,
            (StateType::Pure, _) => d,
            (StateType::Mixed, _) => d * d,
        })
    }

    /// Materialize the state, validating dimensions, symmetry and
    /// normalization.
    pub fn to_state(&self) -> Result<LoadedState> {
        let expected = self.expected_len()?;
        if self.data.len() != expected {
            return Err(Error::DimensionMismatch(format!(
                "data has {} entries, {} {} state needs {expected}",
                self.data.len(),
                self.system.label(),
                match self.state_type {
                    StateType::Pure => "pure",
                    StateType::Mixed => "mixed",
                },
            )));
        }
        let entries = to_complex(&self.data);
        match self.state_type {
            StateType::Pure => match &self.system {
                SystemSpec::Boson2 { n } => {
                    let m = CMatrix::from_fn(*n, *n, |i, j| entries[i * n + j]);
                    Ok(LoadedState::Pure(PureState::from_boson_coefficients(
                        *n, &m,
                    )?))
                }
                SystemSpec::Fermion2 { n } => {
                    let m = CMatrix::from_fn(*n, *n, |i, j| entries[i * n + j]);
                    Ok(LoadedState::Pure(PureState::from_fermion_coefficients(
                        *n, &m,
                    )?))
                }
                spec => Ok(LoadedState::Pure(PureState::new(
                    spec.clone(),
                    CVector::from_vec(entries),
                )?)),
            },
            StateType::Mixed => {
                let d = self.system.composite_dim()?;
                let rho = CMatrix::from_fn(d, d, |i, j| entries[i * d + j]);
                Ok(LoadedState::Mixed(MixedState::new(
                    self.system.clone(),
                    rho,
                )?))
            }
        }
    }

    pub fn from_pure(state: &PureState) -> Result<Self> {
        let data = match state.spec() {
            SystemSpec::Boson2 { .. } | SystemSpec::Fermion2 { .. } => {
                let m = state.coefficient_matrix()?;
                let rows: Vec<Complex64> = (0..m.nrows())
                    .flat_map(|i| (0..m.ncols()).map(move |j| (i, j)))
                    .map(|(i, j)| m[(i, j)])
                    .collect();
                from_complex(rows.iter())
            }
            _ => from_complex(state.amplitudes().iter()),
        };
        Ok(StateFile {
            schema_version: SCHEMA_VERSION,
            system: state.spec().clone(),
            state_type: StateType::Pure,
            data,
        })
    }

    pub fn from_mixed(state: &MixedState) -> Self {
        let rho = state.rho();
        let d = rho.nrows();
        let rows: Vec<Complex64> = (0..d)
            .flat_map(|i| (0..d).map(move |j| (i, j)))
            .map(|(i, j)| rho[(i, j)])
            .collect();
        StateFile {
            schema_version: SCHEMA_VERSION,
            system: state.spec().clone(),
            state_type: StateType::Mixed,
            data: from_complex(rows.iter()),
        }
    }

    /// Canonical JSON: fixed field order, compact separators.
    pub fn to_json_canonical(&self) -> String {
        serde_json::to_string(self).expect("state file serializes")
    }
}
