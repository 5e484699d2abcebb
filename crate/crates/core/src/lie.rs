//! The su(N) basis and its representation on composite Hilbert spaces.
//!
//! The basis follows the standard construction: root vectors `X_ij = |i⟩⟨j|`
//! and Cartan generators `H_l = (Σ_{k≤l} |k⟩⟨k| − l|l+1⟩⟨l+1|)/√(l(l+1))`,
//! normalized so that `tr H_l² = tr X_ij X_ji = 1`. Positive roots are the
//! `(i,j)` with `i < j` in lexicographic order.
//!
//! Representations: one su(N_k) per party acting on its tensor slot for
//! distinguishable particles, and `π(A) = A⊗I + I⊗A` compressed onto the
//! symmetric or antisymmetric two-particle subspace for identical particles.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{
    antisym_subspace_isometry, eye, kron, sym_subspace_isometry, CMatrix, CVector, Complex64,
    Isometry,
};
use crate::DEFAULT_DIM_CAP;

/// The su(N) basis with tr-normalization.
#[derive(Clone, Debug)]
pub struct SuBasis {
    n: usize,
    cartan: Vec<CMatrix>,
    pos_roots: Vec<CMatrix>,
    neg_roots: Vec<CMatrix>,
    root_index: Vec<(usize, usize)>,
}

impl SuBasis {
    pub fn n(&self) -> usize {
        self.n
    }

    /// Cartan generators H_1..H_{N−1}.
    pub fn cartan(&self) -> &[CMatrix] {
        &self.cartan
    }

    /// Positive root vectors X_ij (i < j, lexicographic).
    pub fn pos_roots(&self) -> &[CMatrix] {
        &self.pos_roots
    }

    /// Negative root vectors X_ji matching `pos_roots` index by index.
    pub fn neg_roots(&self) -> &[CMatrix] {
        &self.neg_roots
    }

    /// The (i, j) index pairs of the positive roots.
    pub fn root_index(&self) -> &[(usize, usize)] {
        &self.root_index
    }

    /// Diagonal coefficient a_{lk} = ⟨k|H_l|k⟩.
    pub fn cartan_coeff(&self, l: usize, k: usize) -> f64 {
        self.cartan[l][(k, k)].re
    }
}

/// Build the tr-normalized su(n) basis.
pub fn su_basis(n: usize) -> Result<SuBasis> {
    if n < 2 {
        return Err(Error::BadDimension(format!("su(n) needs n >= 2, got {n}")));
    }
    let mut cartan = Vec::with_capacity(n - 1);
    for l in 1..n {
        let mut h = CMatrix::zeros(n, n);
        let norm = 1.0 / ((l * (l + 1)) as f64).sqrt();
        for k in 0..l {
            h[(k, k)] = Complex64::new(norm, 0.0);
        }
        h[(l, l)] = Complex64::new(-(l as f64) * norm, 0.0);
        cartan.push(h);
    }
    let mut pos_roots = Vec::new();
    let mut neg_roots = Vec::new();
    let mut root_index = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            let mut x = CMatrix::zeros(n, n);
            x[(i, j)] = Complex64::new(1.0, 0.0);
            pos_roots.push(x);
            let mut y = CMatrix::zeros(n, n);
            y[(j, i)] = Complex64::new(1.0, 0.0);
            neg_roots.push(y);
            root_index.push((i, j));
        }
    }
    Ok(SuBasis {
        n,
        cartan,
        pos_roots,
        neg_roots,
        root_index,
    })
}

/// Kind of composite system the witness machinery supports.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum SystemSpec {
    #[serde(rename = "distinguishable")]
    Distinguishable { dims: Vec<usize> },
    #[serde(rename = "boson")]
    Boson2 { n: usize },
    #[serde(rename = "fermion")]
    Fermion2 { n: usize },
}

impl SystemSpec {
    pub fn distinguishable(dims: &[usize]) -> Self {
        SystemSpec::Distinguishable {
            dims: dims.to_vec(),
        }
    }

    pub fn boson(n: usize) -> Self {
        SystemSpec::Boson2 { n }
    }

    pub fn fermion(n: usize) -> Self {
        SystemSpec::Fermion2 { n }
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            SystemSpec::Distinguishable { dims } => {
                if dims.len() < 2 {
                    return Err(Error::BadDimension(format!(
                        "distinguishable system needs at least 2 parties, got {}",
                        dims.len()
                    )));
                }
                if let Some(&d) = dims.iter().find(|&&d| d < 2) {
                    return Err(Error::BadDimension(format!("party dimension {d} < 2")));
                }
                Ok(())
            }
            SystemSpec::Boson2 { n } | SystemSpec::Fermion2 { n } => {
                if *n < 2 {
                    Err(Error::BadDimension(format!(
                        "identical-particle system needs n >= 2, got {n}"
                    )))
                } else {
                    Ok(())
                }
            }
        }
    }

    /// Dimension of the composite space (compressed for identical particles).
    pub fn composite_dim(&self) -> Result<usize> {
        self.validate()?;
        match self {
            SystemSpec::Distinguishable { dims } => dims.iter().try_fold(1usize, |acc, &d| {
                acc.checked_mul(d).ok_or(Error::DimensionCap {
                    got: usize::MAX,
                    cap: DEFAULT_DIM_CAP,
                })
            }),
            SystemSpec::Boson2 { n } => Ok(n * (n + 1) / 2),
            SystemSpec::Fermion2 { n } => Ok(n * (n - 1) / 2),
        }
    }

    /// Short label used in reports and error messages, e.g. `dist:2,2`.
    pub fn label(&self) -> String {
        match self {
            SystemSpec::Distinguishable { dims } => {
                let parts: Vec<String> = dims.iter().map(|d| d.to_string()).collect();
                format!("dist:{}", parts.join(","))
            }
            SystemSpec::Boson2 { n } => format!("boson:{n}"),
            SystemSpec::Fermion2 { n } => format!("fermion:{n}"),
        }
    }

    /// Parse a CLI-style label: `dist:<d1,d2,...>`, `boson:<n>`, `fermion:<n>`.
    pub fn parse(label: &str) -> Result<Self> {
        let (kind, rest) = label.split_once(':').ok_or_else(|| {
            Error::Parse(format!(
                "system must look like dist:2,2 or boson:3, got {label:?}"
            ))
        })?;
        let spec = match kind {
            "dist" | "distinguishable" => {
                let dims: Vec<usize> = rest
                    .split(',')
                    .map(|p| {
                        p.trim()
                            .parse::<usize>()
                            .map_err(|_| Error::Parse(format!("bad dimension {p:?}")))
                    })
                    .collect::<Result<_>>()?;
                SystemSpec::Distinguishable { dims }
            }
            "boson" => SystemSpec::Boson2 {
                n: rest
                    .trim()
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad mode count {rest:?}")))?,
            },
            "fermion" => SystemSpec::Fermion2 {
                n: rest
                    .trim()
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad mode count {rest:?}")))?,
            },
            other => return Err(Error::Parse(format!("unknown system kind {other:?}"))),
        };
        spec.validate()?;
        Ok(spec)
    }
}

/// One simple su(N_k) factor represented on the composite space.
#[derive(Clone, Debug)]
pub struct RepFactor {
    /// Single-particle dimension of this factor (sets the quadratic weight).
    pub n: usize,
    pub cartan: Vec<CMatrix>,
    pub pos_roots: Vec<CMatrix>,
    pub neg_roots: Vec<CMatrix>,
    pub root_index: Vec<(usize, usize)>,
}

/// The local-transformation algebra represented on a composite Hilbert space.
#[derive(Clone, Debug)]
pub struct RepresentedAlgebra {
    spec: SystemSpec,
    factors: Vec<RepFactor>,
    embed: Isometry,
    dim: usize,
}

impl RepresentedAlgebra {
    pub fn spec(&self) -> &SystemSpec {
        &self.spec
    }

    pub fn factors(&self) -> &[RepFactor] {
        &self.factors
    }

    /// Composite-space dimension the operators act on.
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Embedding of the composite space into the full tensor product
    /// (identity for distinguishable particles).
    pub fn embed(&self) -> &Isometry {
        &self.embed
    }

    pub fn rep_cartan(&self) -> impl Iterator<Item = &CMatrix> {
        self.factors.iter().flat_map(|f| f.cartan.iter())
    }

    pub fn rep_pos_roots(&self) -> impl Iterator<Item = &CMatrix> {
        self.factors.iter().flat_map(|f| f.pos_roots.iter())
    }

    pub fn rep_neg_roots(&self) -> impl Iterator<Item = &CMatrix> {
        self.factors.iter().flat_map(|f| f.neg_roots.iter())
    }
}

/// Represent the local algebra with the default dimension cap.
pub fn represent(spec: &SystemSpec) -> Result<RepresentedAlgebra> {
    represent_with_cap(spec, DEFAULT_DIM_CAP)
}

/// Represent the local algebra; errors with `DimensionCap` when the squared
/// composite dimension exceeds `cap`.
pub fn represent_with_cap(spec: &SystemSpec, cap: usize) -> Result<RepresentedAlgebra> {
    spec.validate()?;
    let dim = spec.composite_dim()?;
    let squared = dim.checked_mul(dim).ok_or(Error::DimensionCap {
        got: usize::MAX,
        cap,
    })?;
    if squared > cap {
        return Err(Error::DimensionCap { got: squared, cap });
    }

    match spec {
        SystemSpec::Distinguishable { dims } => {
            let mut factors = Vec::with_capacity(dims.len());
            for (party, &nk) in dims.iter().enumerate() {
                let basis = su_basis(nk)?;
                let embed_op = |a: &CMatrix| -> CMatrix {
                    let mut out = CMatrix::identity(1, 1);
                    for (slot, &d) in dims.iter().enumerate() {
                        if slot == party {
                            out = kron(&out, a);
                        } else {
                            out = kron(&out, &eye(d));
                        }
                    }
                    out
                };
                factors.push(RepFactor {
                    n: nk,
                    cartan: basis.cartan().iter().map(&embed_op).collect(),
                    pos_roots: basis.pos_roots().iter().map(&embed_op).collect(),
                    neg_roots: basis.neg_roots().iter().map(&embed_op).collect(),
                    root_index: basis.root_index().to_vec(),
                });
            }
            Ok(RepresentedAlgebra {
                spec: spec.clone(),
                factors,
                embed: Isometry::identity(dim),
                dim,
            })
        }
        SystemSpec::Boson2 { n } | SystemSpec::Fermion2 { n } => {
            let basis = su_basis(*n)?;
            let embed = match spec {
                SystemSpec::Boson2 { .. } => sym_subspace_isometry(*n),
                _ => antisym_subspace_isometry(*n),
            };
            let id = eye(*n);
            let compress = |a: &CMatrix| -> CMatrix {
                let ambient = kron(a, &id) + kron(&id, a);
                embed.compress_op(&ambient)
            };
            let factor = RepFactor {
                n: *n,
                cartan: basis.cartan().iter().map(&compress).collect(),
                pos_roots: basis.pos_roots().iter().map(&compress).collect(),
                neg_roots: basis.neg_roots().iter().map(&compress).collect(),
                root_index: basis.root_index().to_vec(),
            };
            Ok(RepresentedAlgebra {
                spec: spec.clone(),
                factors: vec![factor],
                embed,
                dim,
            })
        }
    }
}

/// True iff `v` is a joint eigenvector of every represented Cartan generator
/// (residual ≤ 1e-9) and is annihilated by every represented positive root
/// (image norm ≤ 1e-9).
pub fn verify_highest_weight(ra: &RepresentedAlgebra, v: &CVector) -> Result<bool> {
    if v.len() != ra.dim() {
        return Err(Error::DimensionMismatch(format!(
            "vector has dimension {}, composite space has {}",
            v.len(),
            ra.dim()
        )));
    }
    for h in ra.rep_cartan() {
        let hv = h * v;
        let lambda = v.dotc(&hv);
        let residual = (&hv - v * lambda).norm();
        if residual > 1e-9 {
            return Ok(false);
        }
    }
    for x in ra.rep_pos_roots() {
        if (x * v).norm() > 1e-9 {
            return Ok(false);
        }
    }
    Ok(true)
}
