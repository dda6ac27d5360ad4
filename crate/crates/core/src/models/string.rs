//! String under uniform tension in a heat bath: quadratic tension energy
//! with linear shape functions, both ends usually pinned.

use crate::assembly::{assemble, Load, Material, QuadraticForm};
use crate::error::{Error, Result};
use crate::mesh::{build_dof_map, ElementKind, Mesh, NodeSelector};

#[derive(Debug, Clone)]
pub struct StringParams {
    pub length: f64,
    pub tension: f64,
    pub load: Option<Load>,
    /// Prescribed transverse displacements at x = 0 and x = length;
    /// `None` leaves that end open.
    pub end_values: (Option<f64>, Option<f64>),
}

impl StringParams {
    /// Both ends pinned at zero.
    pub fn pinned(length: f64, tension: f64, load: Option<Load>) -> Self {
        StringParams {
            length,
            tension,
            load,
            end_values: (Some(0.0), Some(0.0)),
        }
    }
}

/// Assembles the string energy over the given 1-D Line2 mesh.
pub fn build_string(params: &StringParams, mesh: &Mesh) -> Result<QuadraticForm> {
    if !(params.length > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "string length must be positive, got {}",
            params.length
        )));
    }
    if mesh.spatial_dim() != 1
        || mesh.elements().iter().any(|e| e.kind != ElementKind::Line2)
    {
        return Err(Error::DofMapMismatch(
            "string model needs a 1-D Line2 mesh".into(),
        ));
    }
    let (lo, hi) = mesh.bounding_box();
    if lo[0].abs() > 1e-9 * params.length || (hi[0] - params.length).abs() > 1e-9 * params.length {
        return Err(Error::InvalidParameter(format!(
            "mesh spans [{}, {}] but the string length is {}",
            lo[0], hi[0], params.length
        )));
    }

    let mut constraints = Vec::new();
    if let Some(u) = params.end_values.0 {
        constraints.push((NodeSelector::Position(vec![0.0]), 0, u));
    }
    if let Some(u) = params.end_values.1 {
        constraints.push((NodeSelector::Position(vec![params.length]), 0, u));
    }
    let dofmap = build_dof_map(mesh, 1, &constraints)?;
    assemble(
        mesh,
        &dofmap,
        &Material::Uniform(params.tension),
        params.load.as_ref(),
    )
}

/// DOF map matching [`build_string`], for field evaluation.
pub fn string_dof_map(params: &StringParams, mesh: &Mesh) -> Result<crate::mesh::DofMap> {
    let mut constraints = Vec::new();
    if let Some(u) = params.end_values.0 {
        constraints.push((NodeSelector::Position(vec![0.0]), 0, u));
    }
    if let Some(u) = params.end_values.1 {
        constraints.push((NodeSelector::Position(vec![params.length]), 0, u));
    }
    build_dof_map(mesh, 1, &constraints)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gaussian::{mean_field, moments, EnsembleSpec};
    use crate::mesh::build_interval_mesh;

    #[test]
    fn two_element_hand_assembly() {
        let mesh = build_interval_mesh(1.0, &[0.0, 0.5, 1.0], ElementKind::Line2).unwrap();
        let params = StringParams::pinned(1.0, 1.0, Some(Load::Constant(1.0)));
        let q = build_string(&params, &mesh).unwrap();
        assert_eq!(q.n(), 1);
        assert!((q.stiffness()[(0, 0)] - 4.0).abs() <= 1e-14);
        assert!((q.linear()[0] + 0.5).abs() <= 1e-14);
        assert!(q.constant().abs() <= 1e-15);
    }

    #[test]
    fn unloaded_string_has_zero_mean() {
        let mesh =
            build_interval_mesh(1.0, &[0.0, 0.21, 0.4, 0.77, 1.0], ElementKind::Line2).unwrap();
        let params = StringParams::pinned(1.0, 2.0, None);
        let q = build_string(&params, &mesh).unwrap();
        let stats = moments(&EnsembleSpec::new(&q, 1.0).unwrap()).unwrap();
        assert!(stats.mean.abs().max() <= 1e-15);
    }

    #[test]
    fn uniform_load_is_nodally_exact() {
        let positions: Vec<f64> = (0..=8).map(|i| i as f64 / 8.0).collect();
        let mesh = build_interval_mesh(1.0, &positions, ElementKind::Line2).unwrap();
        let params = StringParams::pinned(1.0, 1.0, Some(Load::Constant(1.0)));
        let q = build_string(&params, &mesh).unwrap();
        let dofmap = string_dof_map(&params, &mesh).unwrap();
        let stats = moments(&EnsembleSpec::new(&q, 1.0).unwrap()).unwrap();
        for &x in &positions {
            let sag = x * (1.0 - x) / 2.0;
            let mean = mean_field(&stats, &mesh, &dofmap, &[x]).unwrap();
            assert!((mean - sag).abs() <= 1e-10, "x={x}: {mean} vs {sag}");
        }
    }

    #[test]
    fn rejects_wrong_mesh_kind() {
        let mesh =
            build_interval_mesh(1.0, &[0.0, 0.5, 1.0], ElementKind::HermiteLine2).unwrap();
        let params = StringParams::pinned(1.0, 1.0, None);
        assert!(build_string(&params, &mesh).is_err());
    }
}
