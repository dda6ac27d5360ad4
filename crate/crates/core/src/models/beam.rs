//! Euler-Bernoulli beam in a heat bath: bending energy with cubic Hermite
//! interpolation, two DOFs per node (deflection and slope).

use crate::assembly::{assemble, Load, Material, QuadraticForm};
use crate::error::{Error, Result};
use crate::mesh::{build_dof_map, DofMap, ElementKind, Mesh, NodeSelector};

/// Prescribed deflection and/or slope at one node.
#[derive(Debug, Clone)]
pub struct BeamConstraint {
    /// Position of the constrained node.
    pub x: f64,
    pub deflection: Option<f64>,
    pub slope: Option<f64>,
}

#[derive(Debug, Clone)]
pub struct BeamParams {
    pub length: f64,
    pub bending_stiffness: f64,
    pub load: Option<Load>,
    pub constraints: Vec<BeamConstraint>,
}

impl BeamParams {
    /// Clamped at x = 0 (zero deflection and slope), free at x = length.
    pub fn cantilever(length: f64, bending_stiffness: f64, load: Option<Load>) -> Self {
        BeamParams {
            length,
            bending_stiffness,
            load,
            constraints: vec![BeamConstraint {
                x: 0.0,
                deflection: Some(0.0),
                slope: Some(0.0),
            }],
        }
    }
}

pub fn beam_dof_map(params: &BeamParams, mesh: &Mesh) -> Result<DofMap> {
    let mut constraints = Vec::new();
    for c in &params.constraints {
        if let Some(u) = c.deflection {
            constraints.push((NodeSelector::Position(vec![c.x]), 0, u));
        }
        if let Some(s) = c.slope {
            constraints.push((NodeSelector::Position(vec![c.x]), 1, s));
        }
    }
    build_dof_map(mesh, 2, &constraints)
}

/// Assembles the bending energy over a 1-D Hermite mesh.
pub fn build_beam(params: &BeamParams, mesh: &Mesh) -> Result<QuadraticForm> {
    if !(params.length > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "beam length must be positive, got {}",
            params.length
        )));
    }
    if mesh.spatial_dim() != 1
        || mesh
            .elements()
            .iter()
            .any(|e| e.kind != ElementKind::HermiteLine2)
    {
        return Err(Error::DofMapMismatch(
            "beam model needs a 1-D HermiteLine2 mesh".into(),
        ));
    }
    let (lo, hi) = mesh.bounding_box();
    if lo[0].abs() > 1e-9 * params.length || (hi[0] - params.length).abs() > 1e-9 * params.length {
        return Err(Error::InvalidParameter(format!(
            "mesh spans [{}, {}] but the beam length is {}",
            lo[0], hi[0], params.length
        )));
    }
    let dofmap = beam_dof_map(params, mesh)?;
    assemble(
        mesh,
        &dofmap,
        &Material::Uniform(params.bending_stiffness),
        params.load.as_ref(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gaussian::{moments, EnsembleSpec};
    use crate::mesh::build_interval_mesh;

    fn uniform_mesh(n_elements: usize) -> Mesh {
        let positions: Vec<f64> = (0..=n_elements)
            .map(|i| i as f64 / n_elements as f64)
            .collect();
        build_interval_mesh(1.0, &positions, ElementKind::HermiteLine2).unwrap()
    }

    #[test]
    fn cantilever_tip_deflection_and_rotation() {
        let mesh = uniform_mesh(4);
        let params = BeamParams::cantilever(1.0, 1.0, Some(Load::Constant(1.0)));
        let q = build_beam(&params, &mesh).unwrap();
        assert_eq!(q.n(), 2 * 5 - 2);
        let stats = moments(&EnsembleSpec::new(&q, 1.0).unwrap()).unwrap();

        let tip_node = 5; // node at x = 1 in the interval numbering
        let tip_deflection = stats.mean[q.open_index(tip_node, 0).unwrap()];
        let tip_rotation = stats.mean[q.open_index(tip_node, 1).unwrap()];
        // Uniform-load cantilever: f L^4 / (8 K_B) and f L^3 / (6 K_B).
        assert!((tip_deflection - 0.125).abs() <= 1e-9, "{tip_deflection}");
        assert!((tip_rotation - 1.0 / 6.0).abs() <= 1e-9, "{tip_rotation}");
    }

    #[test]
    fn unloaded_cantilever_has_zero_mean() {
        let mesh = uniform_mesh(3);
        let params = BeamParams::cantilever(1.0, 2.5, None);
        let q = build_beam(&params, &mesh).unwrap();
        let stats = moments(&EnsembleSpec::new(&q, 0.7).unwrap()).unwrap();
        assert!(stats.mean.abs().max() <= 1e-15);
    }

    #[test]
    fn mean_is_beta_independent() {
        let mesh = uniform_mesh(4);
        let params = BeamParams::cantilever(1.0, 1.0, Some(Load::Constant(0.6)));
        let q = build_beam(&params, &mesh).unwrap();
        let s1 = moments(&EnsembleSpec::new(&q, 0.1).unwrap()).unwrap();
        let s2 = moments(&EnsembleSpec::new(&q, 10.0).unwrap()).unwrap();
        assert!((&s1.mean - &s2.mean).abs().max() <= 1e-12);
    }
}
