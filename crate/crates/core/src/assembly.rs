//! Assembly of element contributions into the global quadratic energy
//!
//! ```text
//! E(d) = 1/2 d^T K d + b^T d + c,        b = v - F
//! ```
//!
//! over the open DOFs. Closed DOFs are eliminated by static condensation:
//! their couplings move into `b` (via v), their quadratic self-energy and
//! any load acting on them into the constant `c`, so that `E(d)` equals the
//! element-wise energy of the reconstructed field identically.
//!
//! Storage is dense symmetric with a Cholesky factorization as the solve /
//! log-det kernel; this is O(n^3) and intended for n up to a few thousand.

use crate::elements::{element_matrices, ElementGeometry};
use crate::error::{Error, Result};
use crate::mesh::{DofMap, DofStatus, Element, ElementKind, Mesh};
use nalgebra::{DMatrix, DVector};
use std::collections::HashMap;

/// Stiffness-like material parameter: string tension, beam bending
/// stiffness or membrane tension.
#[derive(Debug, Clone)]
pub enum Material {
    Uniform(f64),
    /// One value per element, in `mesh.elements()` order.
    PerElement(Vec<f64>),
}

impl Material {
    fn value(&self, element_index: usize, n_elements: usize) -> Result<f64> {
        let v = match self {
            Material::Uniform(v) => *v,
            Material::PerElement(values) => {
                if values.len() != n_elements {
                    return Err(Error::DofMapMismatch(format!(
                        "material has {} entries for {} elements",
                        values.len(),
                        n_elements
                    )));
                }
                values[element_index]
            }
        };
        if v > 0.0 {
            Ok(v)
        } else {
            Err(Error::NonPositiveMaterial(v))
        }
    }
}

/// Distributed load described by its values at the mesh nodes
/// (interpolated linearly inside each element).
#[derive(Debug, Clone)]
pub enum Load {
    Constant(f64),
    /// Values keyed by node id.
    Nodal(HashMap<usize, f64>),
}

impl Load {
    pub fn nodal(pairs: impl IntoIterator<Item = (usize, f64)>) -> Self {
        Load::Nodal(pairs.into_iter().collect())
    }

    fn at(&self, node_id: usize) -> Result<f64> {
        match self {
            Load::Constant(v) => Ok(*v),
            Load::Nodal(values) => values.get(&node_id).copied().ok_or_else(|| {
                Error::DofMapMismatch(format!("no load value for node {node_id}"))
            }),
        }
    }
}

/// The global energy 1/2 d^T K d + b^T d + c over the open DOFs.
#[derive(Debug, Clone)]
pub struct QuadraticForm {
    k: DMatrix<f64>,
    b: DVector<f64>,
    c: f64,
    labels: Vec<(usize, usize)>,
}

impl QuadraticForm {
    pub fn new(
        k: DMatrix<f64>,
        b: DVector<f64>,
        c: f64,
        labels: Vec<(usize, usize)>,
    ) -> Result<Self> {
        let n = k.nrows();
        if k.ncols() != n || b.len() != n || labels.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: b.len().max(k.ncols()).max(labels.len()),
            });
        }
        let asym = (&k - k.transpose()).abs().max();
        let scale = k.abs().max().max(1.0);
        if asym > 1e-12 * scale {
            return Err(Error::NonSymmetric(asym));
        }
        Ok(QuadraticForm { k, b, c, labels })
    }

    /// Number of open DOFs.
    pub fn n(&self) -> usize {
        self.k.nrows()
    }

    pub fn stiffness(&self) -> &DMatrix<f64> {
        &self.k
    }

    pub fn linear(&self) -> &DVector<f64> {
        &self.b
    }

    pub fn constant(&self) -> f64 {
        self.c
    }

    /// Back-map from open-DOF index to `(node id, local dof)`.
    pub fn labels(&self) -> &[(usize, usize)] {
        &self.labels
    }

    /// Evaluates the quadratic energy at `d`.
    pub fn energy(&self, d: &[f64]) -> Result<f64> {
        if d.len() != self.n() {
            return Err(Error::DimensionMismatch {
                expected: self.n(),
                got: d.len(),
            });
        }
        let mut quadratic = 0.0;
        let mut linear = 0.0;
        for i in 0..d.len() {
            let mut row = 0.0;
            for j in 0..d.len() {
                row += self.k[(i, j)] * d[j];
            }
            quadratic += d[i] * row;
            linear += self.b[i] * d[i];
        }
        Ok(0.5 * quadratic + linear + self.c)
    }

    /// Adds `amount` to the diagonal stiffness entry of open DOF `index`
    /// (used to attach point springs).
    pub fn add_to_diagonal(&mut self, index: usize, amount: f64) -> Result<()> {
        if index >= self.n() {
            return Err(Error::DimensionMismatch {
                expected: self.n(),
                got: index,
            });
        }
        self.k[(index, index)] += amount;
        Ok(())
    }

    /// Adds a state-independent energy offset.
    pub fn add_to_constant(&mut self, amount: f64) {
        self.c += amount;
    }

    /// Index of the open DOF labelled `(node id, local dof)`, if open.
    pub fn open_index(&self, node_id: usize, local_dof: usize) -> Option<usize> {
        self.labels
            .iter()
            .position(|&(n, d)| n == node_id && d == local_dof)
    }
}

/// Whether an element contributes energy in this mesh: 2-D meshes may carry
/// line elements as boundary markers only.
fn is_integrable(mesh: &Mesh, element: &Element) -> bool {
    match element.kind {
        ElementKind::Tri3 => true,
        ElementKind::Line2 | ElementKind::HermiteLine2 => mesh.spatial_dim() == 1,
    }
}

fn element_geometry(mesh: &Mesh, element: &Element) -> ElementGeometry {
    match element.kind {
        ElementKind::Tri3 => ElementGeometry::Triangle {
            coords: mesh.triangle_coords(element),
        },
        _ => ElementGeometry::Line {
            length: mesh.element_length(element),
        },
    }
}

/// Statuses of the element's DOFs in local order (node-major).
fn element_dof_statuses(
    dofmap: &DofMap,
    element: &Element,
) -> Result<Vec<DofStatus>> {
    let ndof = element.kind.ndof_per_node();
    if ndof != dofmap.ndof_per_node() {
        return Err(Error::DofMapMismatch(format!(
            "element {} needs {} DOFs per node, map has {}",
            element.id,
            ndof,
            dofmap.ndof_per_node()
        )));
    }
    let mut statuses = Vec::with_capacity(element.node_ids.len() * ndof);
    for &nid in &element.node_ids {
        for ld in 0..ndof {
            statuses.push(dofmap.status(nid, ld)?);
        }
    }
    Ok(statuses)
}

fn element_nodal_load(load: Option<&Load>, element: &Element) -> Result<Option<Vec<f64>>> {
    match load {
        None => Ok(None),
        Some(load) => {
            let values: Vec<f64> = element
                .node_ids
                .iter()
                .map(|&nid| load.at(nid))
                .collect::<Result<_>>()?;
            Ok(Some(values))
        }
    }
}

/// Assembles the global quadratic energy over the open DOFs.
///
/// The resulting stiffness must be positive definite; a zero-energy mode
/// (e.g. a string with no fixed end) is reported as [`Error::SingularAfterBC`].
pub fn assemble(
    mesh: &Mesh,
    dofmap: &DofMap,
    material: &Material,
    load: Option<&Load>,
) -> Result<QuadraticForm> {
    let n = dofmap.n_open();
    let mut k = DMatrix::zeros(n, n);
    let mut v = DVector::zeros(n);
    let mut f = DVector::zeros(n);
    let mut s = 0.0;
    let mut c_load = 0.0;
    let n_elements = mesh.elements().len();

    for (e_idx, element) in mesh.elements().iter().enumerate() {
        if !is_integrable(mesh, element) {
            continue;
        }
        let mat = material.value(e_idx, n_elements)?;
        let geometry = element_geometry(mesh, element);
        let nodal_f = element_nodal_load(load, element)?;
        let em = element_matrices(element.kind, &geometry, mat, nodal_f.as_deref())?;
        let statuses = element_dof_statuses(dofmap, element)?;
        let ne = statuses.len();

        for i in 0..ne {
            for j in 0..ne {
                match (statuses[i], statuses[j]) {
                    (DofStatus::Open(gi), DofStatus::Open(gj)) => {
                        k[(gi, gj)] += em.k[(i, j)];
                    }
                    (DofStatus::Open(gi), DofStatus::Closed(uj)) => {
                        v[gi] += em.k[(i, j)] * uj;
                    }
                    (DofStatus::Closed(ui), DofStatus::Closed(uj)) => {
                        s += ui * em.k[(i, j)] * uj;
                    }
                    (DofStatus::Closed(_), DofStatus::Open(_)) => {}
                }
            }
            if let Some(ref fe) = em.f_vec {
                match statuses[i] {
                    DofStatus::Open(gi) => f[gi] += fe[i],
                    DofStatus::Closed(ui) => c_load -= fe[i] * ui,
                }
            }
        }
    }

    let b = v - f;
    let c = 0.5 * s + c_load;
    let form = QuadraticForm::new(k, b, c, dofmap.open_labels())?;

    if form.n() > 0 && crate::numeric::spd_cholesky(&form.k).is_none() {
        return Err(Error::SingularAfterBC(format!(
            "{} open DOFs with insufficient constraints",
            form.n()
        )));
    }
    Ok(form)
}

/// Exact derivatives of `(b, c)` with respect to the prescribed value of one
/// closed DOF. `b` is affine and `c` quadratic in each prescribed value, so
/// these derivatives are evaluated at the map's current values.
pub fn assemble_sensitivity(
    mesh: &Mesh,
    dofmap: &DofMap,
    material: &Material,
    load: Option<&Load>,
    wrt: (usize, usize),
) -> Result<(DVector<f64>, f64)> {
    match dofmap.status(wrt.0, wrt.1)? {
        DofStatus::Closed(_) => {}
        DofStatus::Open(_) => {
            return Err(Error::NotAClosedDof {
                node: wrt.0,
                local_dof: wrt.1,
            })
        }
    }

    let mut db = DVector::zeros(dofmap.n_open());
    let mut dc = 0.0;
    let n_elements = mesh.elements().len();

    for (e_idx, element) in mesh.elements().iter().enumerate() {
        if !is_integrable(mesh, element) {
            continue;
        }
        let ndof = element.kind.ndof_per_node();
        let local_wrt = element
            .node_ids
            .iter()
            .position(|&nid| nid == wrt.0)
            .map(|pos| pos * ndof + wrt.1);
        let Some(w) = local_wrt else { continue };

        let mat = material.value(e_idx, n_elements)?;
        let geometry = element_geometry(mesh, element);
        let nodal_f = element_nodal_load(load, element)?;
        let em = element_matrices(element.kind, &geometry, mat, nodal_f.as_deref())?;
        let statuses = element_dof_statuses(dofmap, element)?;

        for (i, &status) in statuses.iter().enumerate() {
            match status {
                DofStatus::Open(gi) => db[gi] += em.k[(i, w)],
                DofStatus::Closed(ui) => dc += em.k[(w, i)] * ui,
            }
        }
        if let Some(ref fe) = em.f_vec {
            dc -= fe[w];
        }
    }
    Ok((db, dc))
}
