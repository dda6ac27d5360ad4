//! Tensioned membrane over a 2-D triangulated domain. Boundary values are
//! prescribed through MSH physical groups.

use crate::assembly::{assemble, Load, Material, QuadraticForm};
use crate::error::{Error, Result};
use crate::mesh::{build_dof_map, DofMap, ElementKind, Mesh, NodeSelector};

#[derive(Debug, Clone)]
pub struct MembraneParams {
    pub tension: f64,
    pub load: Option<Load>,
    /// Prescribed value per physical-group tag.
    pub boundary: Vec<(i32, f64)>,
}

pub fn membrane_dof_map(params: &MembraneParams, mesh: &Mesh) -> Result<DofMap> {
    // Boundary groups share corner nodes; resolve them first and keep one
    // constraint per node, rejecting only genuinely conflicting values.
    let mut per_node: std::collections::BTreeMap<usize, f64> = std::collections::BTreeMap::new();
    for &(tag, value) in &params.boundary {
        for node in NodeSelector::PhysicalGroup(tag).resolve(mesh)? {
            match per_node.insert(node, value) {
                Some(previous) if previous != value => {
                    return Err(Error::DuplicateConstraint {
                        node,
                        local_dof: 0,
                    })
                }
                _ => {}
            }
        }
    }
    let constraints: Vec<_> = per_node
        .into_iter()
        .map(|(node, value)| (NodeSelector::Id(node), 0, value))
        .collect();
    build_dof_map(mesh, 1, &constraints)
}

/// Assembles the membrane energy sigma/2 |grad u|^2 - f u over the
/// triangles of a 2-D mesh; line elements only mark boundaries.
pub fn build_membrane(params: &MembraneParams, mesh: &Mesh) -> Result<QuadraticForm> {
    if mesh.spatial_dim() != 2 {
        return Err(Error::DofMapMismatch("membrane model needs a 2-D mesh".into()));
    }
    if !mesh.elements().iter().any(|e| e.kind == ElementKind::Tri3) {
        return Err(Error::DofMapMismatch("mesh contains no triangles".into()));
    }
    let dofmap = membrane_dof_map(params, mesh)?;
    assemble(
        mesh,
        &dofmap,
        &Material::Uniform(params.tension),
        params.load.as_ref(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gaussian::{mean_field, moments, EnsembleSpec};
    use crate::mesh::parse_msh;

    fn square_mesh() -> Mesh {
        let path = concat!(
            env!("CARGO_MANIFEST_DIR"),
            "/../../data/meshes/square8.msh"
        );
        parse_msh(&std::fs::read_to_string(path).unwrap()).unwrap()
    }

    fn boundary_groups(value: f64) -> Vec<(i32, f64)> {
        (1..=4).map(|tag| (tag, value)).collect()
    }

    #[test]
    fn unloaded_membrane_has_zero_mean() {
        let mesh = square_mesh();
        let params = MembraneParams {
            tension: 1.0,
            load: None,
            boundary: boundary_groups(0.0),
        };
        let q = build_membrane(&params, &mesh).unwrap();
        assert_eq!(q.n(), 7 * 7);
        let stats = moments(&EnsembleSpec::new(&q, 1.0).unwrap()).unwrap();
        assert!(stats.mean.abs().max() <= 1e-15);
    }

    #[test]
    fn mean_equals_deterministic_solve() {
        let mesh = square_mesh();
        let params = MembraneParams {
            tension: 1.0,
            load: Some(Load::Constant(1.0)),
            boundary: boundary_groups(0.0),
        };
        let q = build_membrane(&params, &mesh).unwrap();
        let stats = moments(&EnsembleSpec::new(&q, 3.0).unwrap()).unwrap();
        // Independent solve of K d = -b through an LU factorization.
        let lu = q.stiffness().clone().lu();
        let d = lu.solve(&(-q.linear())).unwrap();
        assert!((&stats.mean - &d).abs().max() <= 1e-12);
    }

    #[test]
    fn center_deflection_near_series_value() {
        // Coarse mesh: only a loose bracket on the classic Poisson value.
        let mesh = square_mesh();
        let params = MembraneParams {
            tension: 1.0,
            load: Some(Load::Constant(1.0)),
            boundary: boundary_groups(0.0),
        };
        let q = build_membrane(&params, &mesh).unwrap();
        let dofmap = membrane_dof_map(&params, &mesh).unwrap();
        let stats = moments(&EnsembleSpec::new(&q, 1.0).unwrap()).unwrap();
        let center = mean_field(&stats, &mesh, &dofmap, &[0.5, 0.5]).unwrap();
        assert!((center - 0.0736713).abs() < 0.05 * 0.0736713, "{center}");
    }

    #[test]
    fn rejects_one_dimensional_mesh() {
        let mesh =
            crate::mesh::build_interval_mesh(1.0, &[0.0, 1.0], ElementKind::Line2).unwrap();
        let params = MembraneParams {
            tension: 1.0,
            load: None,
            boundary: vec![],
        };
        assert!(build_membrane(&params, &mesh).is_err());
    }
}
