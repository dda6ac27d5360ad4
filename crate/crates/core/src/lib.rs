//! Functional-integral evaluation by finite elements.
//!
//! A stochastic system whose state is a function u(x) over a domain carries
//! averages of the form `<g[u]> = integral of g[u] p[u] Du`. Discretizing u
//! on a mesh with shape functions turns that functional integral into an
//! ordinary integral over the vector of open nodal values. For
//! Boltzmann-distributed systems with quadratic energy the reduced density
//! is Gaussian and every moment has a closed form ([`gaussian`]); other
//! energies go through Markov-chain Monte-Carlo ([`sampler`]).
//!
//! The crate ships the machinery (meshes, shape functions, assembly of
//! quadratic energies) plus four worked systems in [`models`]: a tensioned
//! string, an Euler-Bernoulli cantilever, a 2-D membrane, and a
//! beam-on-breakable-bonds adhesion model whose bond count is a discrete
//! spin variable marginalized exactly.

pub mod assembly;
pub mod elements;
pub mod error;
pub mod gaussian;
pub mod mesh;
pub mod models;
pub mod numeric;
pub mod sampler;

pub use assembly::{assemble, assemble_sensitivity, Load, Material, QuadraticForm};
pub use error::{Error, Result};
pub use gaussian::{
    expect_linear, expect_quadratic, field_covariance, mean_field, moments, EnsembleSpec,
    GaussianStats,
};
pub use mesh::{
    build_dof_map, build_interval_mesh, parse_msh, DofMap, DofStatus, Element, ElementKind, Mesh,
    Node, NodeSelector,
};
pub use sampler::{metropolis, metropolis_with_spin, ChainConfig, Estimate};
