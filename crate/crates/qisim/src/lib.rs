//! Sparse-state simulator for high-efficiency quantum interrogation.
//!
//! A two-level atom sits in one arm of an N-cycle interferometer and is probed
//! by a single photon. With the per-cycle splitting angle set to pi/(2N), an
//! atom in its transparent state leaves the photon untouched, while an
//! absorbing atom either flips the photon's output port (probability
//! cos^(2N)(pi/2N), approaching 1 as N grows) or scatters it out of the
//! interferometer. Chaining these interrogations and conditioning on photon
//! detection entangles atoms that never interacted directly; the [`schemes`]
//! module builds Bell, W and GHZ states of atoms this way, plus a
//! photon-entangling variant that measures the atom out of the register.
//!
//! The crate is organised as a library; start with the runnable programs in
//! `examples/`:
//!
//! * `interrogation_basics` - one interrogation gate, survival and scatter weights
//! * `bell_scheme`, `w_scheme`, `ghz_scheme` - atom-entangling runs and measures
//! * `photon_scheme` - photon entanglement via a measured atom
//! * `entanglement_measures` - concurrence, tangle and three-tangle on known states
//! * `bell_variants` - port swaps and local Pauli corrections reaching other targets
//! * `oracle_check` - simulation against closed-form maps over a cycle range
//!
//! A thin `qisim` binary exposes `sweep`, `state` and `limits` subcommands over
//! the same library calls.

pub mod density;
pub mod interrogation;
pub mod label;
pub mod linalg;
pub mod measures;
pub mod schemes;
pub mod state;
pub mod sweep;

pub use density::DensityMatrix;
pub use interrogation::{InterrogationSpec, MapTerm, PortVariant};
pub use label::{BasisLabel, PhotonMode, PhotonSlot, Register, ScatterEvent};
pub use linalg::CMatrix;
pub use measures::{MeasureComponents, MeasureResult};
pub use schemes::{closed_form_scheme_state, run, variant_map, SchemeConfig, SchemeKind, SchemeOutput, SchemeReport};
pub use state::{AtomBranch, Projection, PureState};
pub use sweep::{
    limits, render_csv, render_json, run_sweep, state_dump, worst_amplitude_difference,
    LimitsTable, StateDump, SweepJob, SweepRow,
};

use num_complex::Complex64;

/// Complex amplitude carried by every basis term. Must stay finite; state
/// constructors and gate applications reject NaN or infinite values.
pub type Amplitude = Complex64;

/// Numerical tolerances used across the crate. Centralised so that tests and
/// library code agree on what "equal" means at each level of the stack.
pub mod tol {
    /// Total norm of a pure state is conserved to this bound across evolution.
    pub const NORM_CONSERVATION: f64 = 1e-12;
    /// A gate matrix must satisfy ||U U^dag - I||_max below this bound.
    pub const UNITARITY: f64 = 1e-9;
    /// Matrices handed to the eigensolver must be Hermitian to this bound.
    pub const HERMITICITY: f64 = 1e-10;
    /// Eigenvalues above this floor are treated as non-negative when a matrix
    /// must be positive semidefinite; anything lower is a hard error.
    pub const PSD_FLOOR: f64 = -1e-10;
    /// Eigendecomposition must reconstruct its input to this bound.
    pub const EIGEN_RECONSTRUCTION: f64 = 1e-10;
    /// Eigenvalues below this fraction of the spectral radius are numerical
    /// zeros; square-rooting them would inject sqrt(eps) noise.
    pub const SPECTRUM_RELATIVE_FLOOR: f64 = 1e-14;
    /// A matrix square root S must satisfy ||S S - M||_max below this bound.
    pub const SQRT_RESIDUAL: f64 = 1e-9;
    /// Projection outcomes with less weight than this are flagged empty.
    pub const EMPTY_PROJECTION: f64 = 1e-14;
    /// Input amplitude pairs must be normalised to this bound.
    pub const AMPLITUDE_NORM: f64 = 1e-9;
    /// Three-tangle values above this floor are clamped to zero; anything
    /// lower reports a diagnostic error instead of being silently hidden.
    pub const THREE_TANGLE_FLOOR: f64 = -1e-9;
    /// Amplitudes below this magnitude are omitted from state dumps.
    pub const DISPLAY_AMPLITUDE: f64 = 1e-14;
    /// Simulation and closed form must agree to this bound in `--oracle-check`.
    pub const ORACLE_DIVERGENCE: f64 = 1e-10;
}

/// Crate-wide error type.
#[derive(Debug, Clone, thiserror::Error)]
pub enum Error {
    #[error("amplitude pair is not normalised: |a|^2 + |b|^2 = {0}")]
    NotNormalised(f64),
    #[error("non-finite amplitude produced during {0}")]
    NonFiniteAmplitude(&'static str),
    #[error("register {0:?} is out of range for this state")]
    RegisterOutOfRange(Register),
    #[error("register selectors must be distinct")]
    DuplicateRegister,
    #[error("register signatures do not match: {0} vs {1}")]
    SignatureMismatch(String, String),
    #[error("basis label does not match the state signature")]
    MalformedLabel,
    #[error("matrix is not unitary (max deviation {0})")]
    NotUnitary(f64),
    #[error("matrix is not Hermitian (max deviation {0})")]
    NotHermitian(f64),
    #[error("matrix is not positive semidefinite (eigenvalue {0})")]
    NotPositiveSemidefinite(f64),
    #[error("matrix dimension {got} unsupported: {reason}")]
    BadDimension { got: usize, reason: &'static str },
    #[error("eigensolver failed to converge after {0} sweeps")]
    EigensolverStalled(usize),
    #[error("density matrix trace {0} is not usable")]
    BadTrace(f64),
    #[error("conditioned state has no support (probability {0:e})")]
    EmptyConditionedState(f64),
    #[error("photon register {0} is not in a single logical mode across all terms")]
    PhotonNotUniform(usize),
    #[error("interrogation cycle count must be at least 1")]
    ZeroCycles,
    #[error("unsupported variant request: {0}")]
    UnsupportedVariant(String),
    #[error("no closed form for this configuration: {0}")]
    UnsupportedClosedForm(&'static str),
    #[error("invalid scheme configuration: {0}")]
    InvalidConfig(String),
    #[error("three-tangle came out {0}, below the diagnostic floor")]
    NegativeThreeTangle(f64),
    #[error("simulation diverged from the closed form at N = {cycles}: {detail}")]
    OracleDivergence { cycles: u32, detail: String },
}

pub type Result<T> = std::result::Result<T, Error>;
