//! Entanglement-assisted classical capacity of qubit channels in Kraus form.
//!
//! The capacity of a channel is the supremum of the quantum mutual information
//! `I(ε, ρ) = S(ρ) + S(ε(ρ)) − S(ε, ρ)` over input states, where the entropy
//! exchange `S(ε, ρ)` is the von Neumann entropy of the matrix
//! `Ω_ij = tr(E_i ρ E_j†)` built from the Kraus operators of the channel.
//!
//! For the amplitude damping channel the three entropies reduce to closed
//! forms in the Bloch vector of the input state, and the mutual information
//! is concave and symmetric under sign flips of `w1` and `w2`. The optimum
//! therefore sits on the `w3` axis and the capacity follows from a one
//! dimensional root find on `dI/dw3`. A brute-force search over the whole
//! Bloch ball ([`capacity::capacity_grid_oracle`]) cross-checks the
//! reduction, and [`verify::run_all`] bundles the self-check suites exposed
//! by the CLI.
//!
//! All entropies are in bits (base-2 logarithms).

use thiserror::Error;

pub mod capacity;
pub mod channel;
pub mod qmat;
pub mod verify;

pub use capacity::{
    capacity_grid_oracle, capacity_record, grad_w3, i_center_closed, mutual_information,
    mutual_information_ad_closed, optimize_w3, CapacityRecord, MutualInfoBreakdown,
    OptimizerConfig,
};
pub use channel::{
    apply_channel, exchange_matrix, make_amplitude_damping, make_depolarizing, ExchangeMatrix,
    KrausChannel,
};
pub use qmat::{
    binary_entropy, bloch_to_density, density_to_bloch, eig2, eig_jacobi, von_neumann_entropy,
    BlochVector, DensityMatrix, HermitianMatrix,
};

/// Errors produced by state validation, eigensolvers, and the optimizer.
#[derive(Debug, Error)]
pub enum Error {
    #[error("Bloch vector norm {0} exceeds 1: not a physical state")]
    BlochOutOfBall(f64),

    #[error("{name} = {value} is outside [{lo}, {hi}]")]
    OutOfRange {
        name: &'static str,
        value: f64,
        lo: f64,
        hi: f64,
    },

    #[error("matrix dimension {0} unsupported (expected 2, 3, or 4)")]
    UnsupportedDim(usize),

    #[error("matrix entry count {got} does not match dimension {dim}")]
    BadEntryCount { dim: usize, got: usize },

    #[error("matrix entries must be finite")]
    NonFiniteEntry,

    #[error("matrix is not Hermitian: max |m[i][j] - conj(m[j][i])| = {0:e}")]
    NotHermitian(f64),

    #[error("trace {0} differs from 1 beyond tolerance")]
    TraceNotOne(f64),

    #[error("eigenvalue {0:e} is below the positive-semidefinite tolerance")]
    NegativeEigenvalue(f64),

    #[error("Kraus completeness violated: residual {0:e}")]
    KrausIncomplete(f64),

    #[error("channel has {0} Kraus operators (expected 1 to 4)")]
    BadKrausCount(usize),

    #[error("Jacobi eigensolver did not converge within {0} sweeps")]
    JacobiNoConvergence(usize),

    #[error("derivative does not change sign on [{lo}, {hi}]")]
    NoSignChange { lo: f64, hi: f64 },

    #[error("invalid optimizer config: {0}")]
    InvalidConfig(&'static str),
}

pub type Result<T> = std::result::Result<T, Error>;
