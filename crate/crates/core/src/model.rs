//! Anyon-model algebraic data: charges, fusion rules, `F`/`R` symbols and
//! derived quantities (quantum dimensions, twists, `S` and monodromy
//! matrices).
//!
//! Models are immutable after construction and cheap to share behind an
//! [`alloc::sync::Arc`]. All tables are precomputed at build time; the hot
//! paths only read.

mod builtin;
mod report;
mod su2k;
mod validate;

pub use report::model_table_report;
pub use su2k::{q_6j, q_number};
pub use validate::{IdentityCheck, ValidationReport};

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::Complex;

/// Index of a topological charge within one model. Index 0 is always the
/// vacuum charge.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(transparent))]
pub struct Charge(pub u8);

impl Charge {
    /// The trivial vacuum charge.
    pub const VACUUM: Charge = Charge(0);

    #[inline]
    pub fn idx(self) -> usize {
        self.0 as usize
    }

    #[inline]
    pub fn is_vacuum(self) -> bool {
        self.0 == 0
    }
}

/// Which built-in anyon model to construct.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum ModelSpec {
    Ising,
    Fib,
    FibConj,
    Su2k { k: u32 },
}

impl ModelSpec {
    pub fn name(&self) -> String {
        use alloc::format;
        match self {
            ModelSpec::Ising => String::from("ising"),
            ModelSpec::Fib => String::from("fib"),
            ModelSpec::FibConj => String::from("fib_conj"),
            ModelSpec::Su2k { k } => format!("su2k({k})"),
        }
    }
}

impl core::str::FromStr for ModelSpec {
    type Err = ModelError;

    /// Accepts `ising`, `fib`, `fib_conj`, and `su2k(K)`.
    fn from_str(s: &str) -> Result<Self, ModelError> {
        match s {
            "ising" => Ok(ModelSpec::Ising),
            "fib" => Ok(ModelSpec::Fib),
            "fib_conj" => Ok(ModelSpec::FibConj),
            _ => {
                if let Some(rest) = s.strip_prefix("su2k(").and_then(|r| r.strip_suffix(')')) {
                    let k: u32 = rest.parse().map_err(|_| ModelError::UnknownModel)?;
                    Ok(ModelSpec::Su2k { k })
                } else {
                    Err(ModelError::UnknownModel)
                }
            }
        }
    }
}

/// Errors from model construction.
#[derive(Clone, Debug, PartialEq)]
pub enum ModelError {
    /// Unrecognized model name.
    UnknownModel,
    /// SU(2)_k level outside the supported range `1..=16`.
    LevelOutOfRange { k: u32 },
    /// A constructed table failed self-validation.
    ValidationFailed(ValidationReport),
    /// A probe distribution was not a probability distribution.
    BadProbe,
}

impl fmt::Display for ModelError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ModelError::UnknownModel => write!(f, "unknown model name"),
            ModelError::LevelOutOfRange { k } => {
                write!(f, "su2k level k={k} outside supported range 1..=16")
            }
            ModelError::ValidationFailed(report) => {
                write!(f, "model failed validation: {}", report.summary())
            }
            ModelError::BadProbe => write!(f, "probe distribution is not normalized"),
        }
    }
}

impl core::error::Error for ModelError {}

/// Dense `F`-symbol storage: one small block per outer label tuple
/// `(a, b, c, d)`, holding the matrix `[F_d^{abc}]_{ef}` over the admissible
/// intermediate charges `e` (rows) and `f` (columns).
#[derive(Clone, Debug, Default)]
pub(crate) struct FBlock {
    pub es: Vec<Charge>,
    pub fs: Vec<Charge>,
    /// Row-major `es.len() x fs.len()`.
    pub mat: Vec<Complex>,
}

impl FBlock {
    fn get(&self, e: Charge, f: Charge) -> Complex {
        match (
            self.es.iter().position(|&x| x == e),
            self.fs.iter().position(|&x| x == f),
        ) {
            (Some(i), Some(j)) => self.mat[i * self.fs.len() + j],
            _ => Complex::new(0.0, 0.0),
        }
    }
}

/// Immutable algebraic data of one anyon theory.
pub struct AnyonModel {
    spec: ModelSpec,
    names: Vec<String>,
    n: usize,
    dual: Vec<Charge>,
    /// `n^3` fusion table, `N_ab^c` in `{0, 1}` (multiplicity-free).
    nfuse: Vec<bool>,
    /// `n^2` ordered outcome lists for `a x b`.
    fuse_list: Vec<Vec<Charge>>,
    qdim: Vec<f64>,
    total_qdim: f64,
    /// `n^3` R-symbols `R_c^{ab}`; zero when the vertex is inadmissible.
    rsym: Vec<Complex>,
    /// `n^4` F-blocks indexed by `(a, b, c, d)`.
    fsym: Vec<FBlock>,
    twist: Vec<Complex>,
    smat: Vec<Complex>,
    mono: Vec<Complex>,
}

impl fmt::Debug for AnyonModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("AnyonModel")
            .field("spec", &self.spec)
            .field("charges", &self.names)
            .finish()
    }
}

/// Build a fully populated, validated anyon model.
///
/// Ising and Fibonacci tables are hard-coded; SU(2)_k tables come from the
/// q-deformed 6j formula. Construction rejects `su2k` levels outside
/// `1..=16` and any table set that fails [`AnyonModel::validate`] at
/// tolerance `1e-9`.
pub fn build_model(spec: ModelSpec) -> Result<AnyonModel, ModelError> {
    let model = match spec {
        ModelSpec::Ising => builtin::ising(),
        ModelSpec::Fib => builtin::fib(false),
        ModelSpec::FibConj => builtin::fib(true),
        ModelSpec::Su2k { k } => {
            if !(1..=16).contains(&k) {
                return Err(ModelError::LevelOutOfRange { k });
            }
            su2k::build(k)
        }
    };
    let report = model.validate(1e-9);
    if !report.passed() {
        return Err(ModelError::ValidationFailed(report));
    }
    Ok(model)
}

impl AnyonModel {
    pub fn spec(&self) -> ModelSpec {
        self.spec
    }

    pub fn name(&self) -> String {
        self.spec.name()
    }

    /// Number of topological charges.
    pub fn charge_count(&self) -> usize {
        self.n
    }

    /// All charges in canonical index order.
    pub fn charges(&self) -> impl Iterator<Item = Charge> + '_ {
        (0..self.n as u8).map(Charge)
    }

    /// Display name of a charge (e.g. `I`, `σ`, `ψ`, `ε`, `1/2`).
    pub fn charge_name(&self, a: Charge) -> &str {
        &self.names[a.idx()]
    }

    pub fn charge_by_name(&self, name: &str) -> Option<Charge> {
        self.names.iter().position(|n| n == name).map(|i| Charge(i as u8))
    }

    /// Conjugate charge. All built-in models are self-dual.
    pub fn dual(&self, a: Charge) -> Charge {
        self.dual[a.idx()]
    }

    /// Fusion multiplicity `N_ab^c` (0 or 1).
    #[inline]
    pub fn n_fuse(&self, a: Charge, b: Charge, c: Charge) -> bool {
        self.nfuse[(a.idx() * self.n + b.idx()) * self.n + c.idx()]
    }

    /// Ordered list of fusion outcomes of `a x b` (canonical charge order).
    #[inline]
    pub fn fuse(&self, a: Charge, b: Charge) -> &[Charge] {
        &self.fuse_list[a.idx() * self.n + b.idx()]
    }

    /// Quantum dimension `d_a`.
    #[inline]
    pub fn qdim(&self, a: Charge) -> f64 {
        self.qdim[a.idx()]
    }

    /// Total quantum dimension `D = sqrt(sum_a d_a^2)`.
    pub fn total_qdim(&self) -> f64 {
        self.total_qdim
    }

    /// `true` if `d_a = 1` (unique fusion with every charge).
    pub fn is_abelian(&self, a: Charge) -> bool {
        (self.qdim(a) - 1.0).abs() < 1e-9
    }

    /// F-symbol `[F_d^{abc}]_{ef}`; zero when any vertex is inadmissible.
    pub fn f_symbol(&self, a: Charge, b: Charge, c: Charge, d: Charge, e: Charge, f: Charge) -> Complex {
        self.f_block(a, b, c, d).get(e, f)
    }

    pub(crate) fn f_block(&self, a: Charge, b: Charge, c: Charge, d: Charge) -> &FBlock {
        &self.fsym[((a.idx() * self.n + b.idx()) * self.n + c.idx()) * self.n + d.idx()]
    }

    /// Bent F-symbol `[F_{cd}^{ab}]_{ef}`, related to the plain one by
    /// `[F_{cd}^{ab}]_{ef} = sqrt(d_e d_f / (d_a d_d)) [F_f^{ceb}]^*_{ad}`.
    pub fn f_bend(&self, a: Charge, b: Charge, c: Charge, d: Charge, e: Charge, f: Charge) -> Complex {
        let scale = libm::sqrt(self.qdim(e) * self.qdim(f) / (self.qdim(a) * self.qdim(d)));
        scale * self.f_symbol(c, e, b, f, a, d).conj()
    }

    /// R-symbol `R_c^{ab}`; zero when the vertex is inadmissible.
    #[inline]
    pub fn r_symbol(&self, a: Charge, b: Charge, c: Charge) -> Complex {
        self.rsym[(a.idx() * self.n + b.idx()) * self.n + c.idx()]
    }

    /// Topological spin `θ_a`.
    pub fn twist(&self, a: Charge) -> Complex {
        self.twist[a.idx()]
    }

    /// Topological S-matrix entry `S_ab`.
    pub fn s_matrix(&self, a: Charge, b: Charge) -> Complex {
        self.smat[a.idx() * self.n + b.idx()]
    }

    /// Monodromy scalar component `M_ab = S_ab S_00 / (S_0a S_0b)`.
    pub fn monodromy(&self, a: Charge, b: Charge) -> Complex {
        self.mono[a.idx() * self.n + b.idx()]
    }

    /// Expected monodromy `M_aB = sum_b p_b M_ab` against a probe mixture.
    pub fn monodromy_probe(&self, a: Charge, probe: &ProbeSpec) -> Complex {
        probe
            .weights()
            .iter()
            .map(|&(b, p)| self.monodromy(a, b) * p)
            .sum()
    }

    /// The standard fully-distinguishing probe for this model: `σ` for Ising,
    /// `ε` for Fib, charge `1/2` for SU(2)_k.
    pub fn standard_probe(&self) -> ProbeSpec {
        let b = match self.spec {
            ModelSpec::Ising => Charge(1),
            ModelSpec::Fib | ModelSpec::FibConj => Charge(1),
            ModelSpec::Su2k { .. } => Charge(1),
        };
        ProbeSpec::pure(b)
    }

    /// The computational charge `a` used for qubit encoding: `σ`, `ε`, or
    /// spin `1/2`.
    pub fn computational_charge(&self) -> Charge {
        Charge(1)
    }

    /// Run every identity check the tables must satisfy; see
    /// [`ValidationReport`].
    pub fn validate(&self, tol: f64) -> ValidationReport {
        validate::run(self, tol)
    }
}

// libm shim: route through num-traits so the same code builds with and
// without std.
mod libm {
    use num_traits::Float;

    #[inline]
    pub fn sqrt(x: f64) -> f64 {
        Float::sqrt(x)
    }
}

/// Probability distribution over probe charges used in interferometry.
#[derive(Clone, Debug, PartialEq)]
pub struct ProbeSpec {
    weights: Vec<(Charge, f64)>,
}

impl ProbeSpec {
    /// A probe of definite charge `b`.
    pub fn pure(b: Charge) -> ProbeSpec {
        ProbeSpec {
            weights: alloc::vec![(b, 1.0)],
        }
    }

    /// A general probe mixture; weights must be non-negative and sum to 1
    /// within `1e-12`.
    pub fn mixture(weights: Vec<(Charge, f64)>) -> Result<ProbeSpec, ModelError> {
        let sum: f64 = weights.iter().map(|&(_, p)| p).sum();
        if weights.iter().any(|&(_, p)| p < 0.0) || (sum - 1.0).abs() > 1e-12 {
            return Err(ModelError::BadProbe);
        }
        Ok(ProbeSpec { weights })
    }

    pub fn weights(&self) -> &[(Charge, f64)] {
        &self.weights
    }
}
