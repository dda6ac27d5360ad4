//! Error type shared by all modules of the crate.

use thiserror::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    // ---- mesh construction ----
    #[error("node positions must be strictly increasing: {0}")]
    NonMonotonePositions(String),
    #[error("an interval mesh needs at least 2 node positions, got {0}")]
    TooFewNodes(usize),
    #[error("duplicate constraint on node {node} local dof {local_dof}")]
    DuplicateConstraint { node: usize, local_dof: usize },
    #[error("node selector matched no node: {0}")]
    UnknownNode(String),
    #[error("invalid mesh: {0}")]
    InvalidMesh(String),

    // ---- MSH parsing ----
    #[error("malformed MSH header: {0}")]
    MalformedHeader(String),
    #[error("unsupported MSH version {0} (only 2.2 ASCII is read)")]
    UnsupportedVersion(String),
    #[error("unsupported MSH element type code {0}")]
    UnsupportedElementType(u32),
    #[error("element {element} references unknown node {node}")]
    DanglingNodeReference { element: usize, node: usize },
    #[error("MSH parse error at line {line}: {message}")]
    MshSyntax { line: usize, message: String },

    // ---- element matrices ----
    #[error("element length must be positive, got {0}")]
    NonPositiveLength(f64),
    #[error("triangle has non-positive area {0}")]
    DegenerateTriangle(f64),

    // ---- assembly / quadratic forms ----
    #[error("material parameter must be positive, got {0}")]
    NonPositiveMaterial(f64),
    #[error("dof map does not match the mesh: {0}")]
    DofMapMismatch(String),
    #[error("stiffness matrix is singular after applying boundary conditions ({0})")]
    SingularAfterBC(String),
    #[error("dof (node {node}, local {local_dof}) is not closed")]
    NotAClosedDof { node: usize, local_dof: usize },
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("matrix is not symmetric (max asymmetry {0:.3e})")]
    NonSymmetric(f64),

    // ---- Gaussian statistics ----
    #[error("matrix is not positive definite")]
    NotPositiveDefinite,
    #[error("inverse temperature must be positive, got {0}")]
    NonPositiveBeta(f64),
    #[error("point {0} lies outside the meshed domain")]
    PointOutsideDomain(String),

    // ---- sampling ----
    #[error("energy became non-finite at step {step}")]
    NonFiniteEnergy { step: usize },
    #[error("chain produced no post-burn-in samples")]
    EmptyChain,
    #[error("invalid chain configuration: {0}")]
    InvalidChainConfig(String),

    // ---- models ----
    #[error("bond position {0} is not a mesh node")]
    BondOffMesh(f64),
    #[error("invalid model parameter: {0}")]
    InvalidParameter(String),
}
