//! The worked physical systems: a tensioned string, an Euler-Bernoulli
//! cantilever, a 2-D membrane, and a beam adhering to a substrate through
//! breakable bonds. Each model maps physical parameters to quadratic
//! energy forms and exposes its observables.

pub mod adhesion;
pub mod beam;
pub mod membrane;
pub mod string;
mod sweep;

pub use adhesion::{
    build_spin_ensemble, mean_force, spin_observables, AdhesionAnalysis, AdhesionParams,
    SpinEnsemble, SpinObservables,
};
pub use beam::{build_beam, BeamConstraint, BeamParams};
pub use membrane::{build_membrane, MembraneParams};
pub use string::{build_string, StringParams};
pub use sweep::{adhesion_sweep, field_beta_sweep, Table};
