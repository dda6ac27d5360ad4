//! Meshes over 1-D intervals and 2-D triangulations, with per-node
//! degree-of-freedom bookkeeping.
//!
//! A [`Mesh`] is immutable after construction; all invariants (unique node
//! ids, valid element references, positive element measures, 1-D elements
//! sorted and non-overlapping) are checked by [`Mesh::new`]. The split of
//! nodal values into open (unknown) and closed (prescribed) degrees of
//! freedom lives in [`DofMap`].

mod msh;

pub use msh::parse_msh;

use crate::error::{Error, Result};
use std::collections::HashMap;

/// Interpolation scheme attached to an element.
///
/// `HermiteLine2` shares the two-node line geometry of `Line2`; the kind
/// only selects the shape functions (and hence the number of DOFs per node).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ElementKind {
    /// Two-node line, piecewise-linear interpolation, 1 DOF per node.
    Line2,
    /// Two-node line, cubic Hermite interpolation, 2 DOFs per node
    /// (value and slope).
    HermiteLine2,
    /// Three-node triangle, linear interpolation, 1 DOF per node.
    Tri3,
}

impl ElementKind {
    pub fn n_nodes(self) -> usize {
        match self {
            ElementKind::Line2 | ElementKind::HermiteLine2 => 2,
            ElementKind::Tri3 => 3,
        }
    }

    /// Number of DOFs each node of this element carries.
    pub fn ndof_per_node(self) -> usize {
        match self {
            ElementKind::Line2 | ElementKind::Tri3 => 1,
            ElementKind::HermiteLine2 => 2,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Node {
    /// Unique positive id (MSH files use 1-based ids; we keep them).
    pub id: usize,
    /// Spatial coordinates; length equals the mesh's `spatial_dim`.
    pub coords: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Element {
    pub id: usize,
    pub kind: ElementKind,
    /// Ordered node ids: 2 for lines, 3 for triangles (counter-clockwise).
    pub node_ids: Vec<usize>,
    /// Physical-group tag from the mesh file, used to select boundary nodes.
    pub physical_tag: Option<i32>,
}

#[derive(Debug, Clone)]
pub struct Mesh {
    nodes: Vec<Node>,
    elements: Vec<Element>,
    spatial_dim: usize,
    /// node id -> index into `nodes`
    node_index: HashMap<usize, usize>,
}

impl Mesh {
    /// Builds a mesh and checks its invariants.
    pub fn new(nodes: Vec<Node>, elements: Vec<Element>, spatial_dim: usize) -> Result<Self> {
        if spatial_dim != 1 && spatial_dim != 2 {
            return Err(Error::InvalidMesh(format!(
                "spatial_dim must be 1 or 2, got {spatial_dim}"
            )));
        }
        let mut node_index = HashMap::with_capacity(nodes.len());
        for (i, node) in nodes.iter().enumerate() {
            if node.id == 0 {
                return Err(Error::InvalidMesh("node ids must be >= 1".into()));
            }
            if node.coords.len() != spatial_dim {
                return Err(Error::InvalidMesh(format!(
                    "node {} has {} coordinates in a {spatial_dim}-D mesh",
                    node.id,
                    node.coords.len()
                )));
            }
            if node_index.insert(node.id, i).is_some() {
                return Err(Error::InvalidMesh(format!("duplicate node id {}", node.id)));
            }
        }

        let mesh = Mesh {
            nodes,
            elements,
            spatial_dim,
            node_index,
        };
        mesh.validate()?;
        Ok(mesh)
    }

    fn validate(&self) -> Result<()> {
        if self.elements.is_empty() {
            return Err(Error::InvalidMesh("mesh has no elements".into()));
        }
        let mut referenced = vec![false; self.nodes.len()];
        for element in &self.elements {
            if element.node_ids.len() != element.kind.n_nodes() {
                return Err(Error::InvalidMesh(format!(
                    "element {} has {} nodes, expected {}",
                    element.id,
                    element.node_ids.len(),
                    element.kind.n_nodes()
                )));
            }
            for &nid in &element.node_ids {
                match self.node_index.get(&nid) {
                    Some(&i) => referenced[i] = true,
                    None => {
                        return Err(Error::DanglingNodeReference {
                            element: element.id,
                            node: nid,
                        })
                    }
                }
            }
            match element.kind {
                ElementKind::Line2 | ElementKind::HermiteLine2 => {
                    // Monotone ordering only makes sense on 1-D meshes; in 2-D
                    // line elements are boundary markers with free orientation.
                    if self.spatial_dim == 1 {
                        let x0 = self.node(element.node_ids[0]).coords[0];
                        let x1 = self.node(element.node_ids[1]).coords[0];
                        if x1 <= x0 {
                            return Err(Error::NonMonotonePositions(format!(
                                "element {}: [{x0}, {x1}]",
                                element.id
                            )));
                        }
                    }
                }
                ElementKind::Tri3 => {
                    let area = self.triangle_signed_area(element)?;
                    if area <= 0.0 {
                        return Err(Error::DegenerateTriangle(area));
                    }
                }
            }
        }
        if let Some(i) = referenced.iter().position(|r| !r) {
            return Err(Error::InvalidMesh(format!(
                "node {} is not referenced by any element",
                self.nodes[i].id
            )));
        }
        if self.spatial_dim == 1 {
            self.check_1d_non_overlap()?;
        }
        if !(self.h() > 0.0) {
            return Err(Error::InvalidMesh("mesh parameter h must be positive".into()));
        }
        Ok(())
    }

    /// 1-D elements must tile the interval without overlap: sorted by left
    /// end, each element starts where (or after) the previous one ends.
    fn check_1d_non_overlap(&self) -> Result<()> {
        let mut intervals: Vec<(f64, f64)> = self
            .elements
            .iter()
            .map(|e| {
                (
                    self.node(e.node_ids[0]).coords[0],
                    self.node(e.node_ids[1]).coords[0],
                )
            })
            .collect();
        intervals.sort_by(|a, b| a.0.total_cmp(&b.0));
        let tol = 1e-12 * self.h().max(1.0);
        for pair in intervals.windows(2) {
            if pair[1].0 < pair[0].1 - tol {
                return Err(Error::InvalidMesh(format!(
                    "1-D elements overlap near x = {}",
                    pair[1].0
                )));
            }
        }
        Ok(())
    }

    pub fn nodes(&self) -> &[Node] {
        &self.nodes
    }

    pub fn elements(&self) -> &[Element] {
        &self.elements
    }

    pub fn spatial_dim(&self) -> usize {
        self.spatial_dim
    }

    /// Looks a node up by id. Panics on unknown ids; element node ids are
    /// validated at construction.
    pub fn node(&self, id: usize) -> &Node {
        &self.nodes[self.node_index[&id]]
    }

    pub fn contains_node(&self, id: usize) -> bool {
        self.node_index.contains_key(&id)
    }

    /// Node ids in ascending order; this is the ordering DOF maps use.
    pub fn sorted_node_ids(&self) -> Vec<usize> {
        let mut ids: Vec<usize> = self.nodes.iter().map(|n| n.id).collect();
        ids.sort_unstable();
        ids
    }

    /// Length of a line element.
    pub fn element_length(&self, element: &Element) -> f64 {
        let a = &self.node(element.node_ids[0]).coords;
        let b = &self.node(element.node_ids[1]).coords;
        a.iter()
            .zip(b.iter())
            .map(|(x, y)| (x - y).powi(2))
            .sum::<f64>()
            .sqrt()
    }

    /// Vertex coordinates of a triangle element.
    pub fn triangle_coords(&self, element: &Element) -> [[f64; 2]; 3] {
        let mut coords = [[0.0; 2]; 3];
        for (i, &nid) in element.node_ids.iter().enumerate() {
            let c = &self.node(nid).coords;
            coords[i] = [c[0], c[1]];
        }
        coords
    }

    pub fn triangle_signed_area(&self, element: &Element) -> Result<f64> {
        if element.kind != ElementKind::Tri3 {
            return Err(Error::InvalidMesh(format!(
                "element {} is not a triangle",
                element.id
            )));
        }
        let c = self.triangle_coords(element);
        Ok(triangle_signed_area(&c))
    }

    /// Mesh parameter: the diameter of the largest element.
    pub fn h(&self) -> f64 {
        self.elements
            .iter()
            .map(|e| self.element_diameter(e))
            .fold(0.0, f64::max)
    }

    pub fn element_diameter(&self, element: &Element) -> f64 {
        match element.kind {
            ElementKind::Line2 | ElementKind::HermiteLine2 => self.element_length(element),
            ElementKind::Tri3 => {
                let c = self.triangle_coords(element);
                let edge = |a: [f64; 2], b: [f64; 2]| ((a[0] - b[0]).powi(2) + (a[1] - b[1]).powi(2)).sqrt();
                edge(c[0], c[1]).max(edge(c[1], c[2])).max(edge(c[2], c[0]))
            }
        }
    }

    /// Axis-aligned bounding box as (min, max) corner coordinates.
    pub fn bounding_box(&self) -> (Vec<f64>, Vec<f64>) {
        let dim = self.spatial_dim;
        let mut lo = vec![f64::INFINITY; dim];
        let mut hi = vec![f64::NEG_INFINITY; dim];
        for node in &self.nodes {
            for d in 0..dim {
                lo[d] = lo[d].min(node.coords[d]);
                hi[d] = hi[d].max(node.coords[d]);
            }
        }
        (lo, hi)
    }

    /// Finds the element containing physical point `x` and the reference
    /// coordinates of `x` within it. Line elements use xi in [0, 1]; triangles
    /// use (xi, eta) with vertices at (0,0), (1,0), (0,1). Points on shared
    /// boundaries resolve to the first containing element.
    pub fn locate(&self, x: &[f64]) -> Result<(usize, Vec<f64>)> {
        if x.len() != self.spatial_dim {
            return Err(Error::DimensionMismatch {
                expected: self.spatial_dim,
                got: x.len(),
            });
        }
        let tol = 1e-12 * self.h().max(1.0);
        for (idx, element) in self.elements.iter().enumerate() {
            match element.kind {
                ElementKind::Line2 | ElementKind::HermiteLine2 => {
                    if self.spatial_dim != 1 {
                        continue;
                    }
                    let x0 = self.node(element.node_ids[0]).coords[0];
                    let x1 = self.node(element.node_ids[1]).coords[0];
                    if x[0] >= x0 - tol && x[0] <= x1 + tol {
                        let xi = ((x[0] - x0) / (x1 - x0)).clamp(0.0, 1.0);
                        return Ok((idx, vec![xi]));
                    }
                }
                ElementKind::Tri3 => {
                    let c = self.triangle_coords(element);
                    let area2 = 2.0 * triangle_signed_area(&c);
                    // Barycentric coordinates of x with respect to the triangle.
                    let l2 = ((c[2][1] - c[0][1]) * (x[0] - c[0][0])
                        - (c[2][0] - c[0][0]) * (x[1] - c[0][1]))
                        / area2;
                    let l3 = (-(c[1][1] - c[0][1]) * (x[0] - c[0][0])
                        + (c[1][0] - c[0][0]) * (x[1] - c[0][1]))
                        / area2;
                    let l1 = 1.0 - l2 - l3;
                    let btol = 1e-12 * (1.0 + area2.abs());
                    if l1 >= -btol && l2 >= -btol && l3 >= -btol {
                        return Ok((idx, vec![l2.clamp(0.0, 1.0), l3.clamp(0.0, 1.0)]));
                    }
                }
            }
        }
        Err(Error::PointOutsideDomain(format!("{x:?}")))
    }
}

pub fn triangle_signed_area(coords: &[[f64; 2]; 3]) -> f64 {
    0.5 * ((coords[1][0] - coords[0][0]) * (coords[2][1] - coords[0][1])
        - (coords[2][0] - coords[0][0]) * (coords[1][1] - coords[0][1]))
}

/// Builds a 1-D mesh over `[0, length]` with nodes at the given positions.
///
/// Node ids are 1-based in position order; element `e` spans positions
/// `e-1..e`.
pub fn build_interval_mesh(length: f64, positions: &[f64], kind: ElementKind) -> Result<Mesh> {
    if kind == ElementKind::Tri3 {
        return Err(Error::InvalidMesh(
            "interval meshes are made of line elements".into(),
        ));
    }
    if positions.len() < 2 {
        return Err(Error::TooFewNodes(positions.len()));
    }
    if !(length > 0.0) {
        return Err(Error::InvalidMesh(format!(
            "interval length must be positive, got {length}"
        )));
    }
    for pair in positions.windows(2) {
        if pair[1] <= pair[0] {
            return Err(Error::NonMonotonePositions(format!(
                "{} followed by {}",
                pair[0], pair[1]
            )));
        }
    }
    if positions[0] != 0.0 || positions[positions.len() - 1] != length {
        return Err(Error::NonMonotonePositions(format!(
            "positions must span [0, {length}], got [{}, {}]",
            positions[0],
            positions[positions.len() - 1]
        )));
    }

    let nodes = positions
        .iter()
        .enumerate()
        .map(|(i, &x)| Node {
            id: i + 1,
            coords: vec![x],
        })
        .collect();
    let elements = (1..positions.len())
        .map(|i| Element {
            id: i,
            kind,
            node_ids: vec![i, i + 1],
            physical_tag: None,
        })
        .collect();
    Mesh::new(nodes, elements, 1)
}

/// Status of one scalar nodal DOF.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DofStatus {
    /// Unknown; carries its index into the global vector of open DOFs.
    Open(usize),
    /// Prescribed to the stored value.
    Closed(f64),
}

/// Ways of picking nodes when imposing constraints.
#[derive(Debug, Clone, PartialEq)]
pub enum NodeSelector {
    /// A single node by id.
    Id(usize),
    /// The node closest to the given coordinates (must match within a
    /// 1e-9 * domain-size tolerance).
    Position(Vec<f64>),
    /// All nodes belonging to elements with the given physical-group tag.
    PhysicalGroup(i32),
}

impl NodeSelector {
    /// Resolves the selector to node ids (ascending order).
    pub fn resolve(&self, mesh: &Mesh) -> Result<Vec<usize>> {
        match self {
            NodeSelector::Id(id) => {
                if mesh.contains_node(*id) {
                    Ok(vec![*id])
                } else {
                    Err(Error::UnknownNode(format!("id {id}")))
                }
            }
            NodeSelector::Position(x) => {
                if x.len() != mesh.spatial_dim() {
                    return Err(Error::DimensionMismatch {
                        expected: mesh.spatial_dim(),
                        got: x.len(),
                    });
                }
                let (lo, hi) = mesh.bounding_box();
                let scale = lo
                    .iter()
                    .zip(hi.iter())
                    .map(|(a, b)| b - a)
                    .fold(1.0_f64, f64::max);
                let tol = 1e-9 * scale;
                let mut best: Option<(usize, f64)> = None;
                for node in mesh.nodes() {
                    let d2: f64 = node
                        .coords
                        .iter()
                        .zip(x.iter())
                        .map(|(a, b)| (a - b).powi(2))
                        .sum();
                    if best.map_or(true, |(_, bd)| d2 < bd) {
                        best = Some((node.id, d2));
                    }
                }
                match best {
                    Some((id, d2)) if d2.sqrt() <= tol => Ok(vec![id]),
                    _ => Err(Error::UnknownNode(format!("no node at {x:?}"))),
                }
            }
            NodeSelector::PhysicalGroup(tag) => {
                let mut ids: Vec<usize> = mesh
                    .elements()
                    .iter()
                    .filter(|e| e.physical_tag == Some(*tag))
                    .flat_map(|e| e.node_ids.iter().copied())
                    .collect();
                ids.sort_unstable();
                ids.dedup();
                if ids.is_empty() {
                    return Err(Error::UnknownNode(format!("no elements with physical group {tag}")));
                }
                Ok(ids)
            }
        }
    }
}

/// Global numbering of nodal DOFs with open/closed status.
///
/// Open DOFs are numbered `0..n_open` in `(node id, local dof)` lexicographic
/// order, which makes the numbering reproducible regardless of element order.
#[derive(Debug, Clone)]
pub struct DofMap {
    ndof_per_node: usize,
    /// Node ids in ascending order; row `i` of `statuses` belongs to
    /// `node_ids[i / ndof_per_node]`.
    node_ids: Vec<usize>,
    statuses: Vec<DofStatus>,
    node_row: HashMap<usize, usize>,
    n_open: usize,
}

impl DofMap {
    pub fn ndof_per_node(&self) -> usize {
        self.ndof_per_node
    }

    /// Number of open DOFs (the dimension N of the reduced integral).
    pub fn n_open(&self) -> usize {
        self.n_open
    }

    pub fn n_closed(&self) -> usize {
        self.statuses.len() - self.n_open
    }

    pub fn status(&self, node_id: usize, local_dof: usize) -> Result<DofStatus> {
        let row = self
            .node_row
            .get(&node_id)
            .ok_or_else(|| Error::UnknownNode(format!("id {node_id}")))?;
        if local_dof >= self.ndof_per_node {
            return Err(Error::DimensionMismatch {
                expected: self.ndof_per_node,
                got: local_dof,
            });
        }
        Ok(self.statuses[row * self.ndof_per_node + local_dof])
    }

    /// Back-map from open-DOF index to `(node id, local dof)`.
    pub fn open_labels(&self) -> Vec<(usize, usize)> {
        let mut labels = vec![(0, 0); self.n_open];
        for (row, &nid) in self.node_ids.iter().enumerate() {
            for ld in 0..self.ndof_per_node {
                if let DofStatus::Open(g) = self.statuses[row * self.ndof_per_node + ld] {
                    labels[g] = (nid, ld);
                }
            }
        }
        labels
    }

    /// Iterates `(node id, local dof, status)` in numbering order.
    pub fn iter(&self) -> impl Iterator<Item = (usize, usize, DofStatus)> + '_ {
        self.node_ids.iter().enumerate().flat_map(move |(row, &nid)| {
            (0..self.ndof_per_node)
                .map(move |ld| (nid, ld, self.statuses[row * self.ndof_per_node + ld]))
        })
    }

    /// Assembles the full nodal vector for a given open-DOF vector, with
    /// prescribed values filled in. Entries follow `iter()` order.
    pub fn full_vector(&self, open_values: &[f64]) -> Result<Vec<f64>> {
        if open_values.len() != self.n_open {
            return Err(Error::DimensionMismatch {
                expected: self.n_open,
                got: open_values.len(),
            });
        }
        Ok(self
            .iter()
            .map(|(_, _, status)| match status {
                DofStatus::Open(g) => open_values[g],
                DofStatus::Closed(v) => v,
            })
            .collect())
    }
}

/// Numbers the DOFs of a mesh, closing the ones named by `constraints`.
///
/// Each constraint is `(selector, local dof, prescribed value)`; selectors
/// resolving to several nodes (physical groups) close the DOF on all of them.
pub fn build_dof_map(
    mesh: &Mesh,
    ndof_per_node: usize,
    constraints: &[(NodeSelector, usize, f64)],
) -> Result<DofMap> {
    if ndof_per_node != 1 && ndof_per_node != 2 {
        return Err(Error::DofMapMismatch(format!(
            "ndof_per_node must be 1 or 2, got {ndof_per_node}"
        )));
    }
    let node_ids = mesh.sorted_node_ids();
    let node_row: HashMap<usize, usize> =
        node_ids.iter().enumerate().map(|(i, &id)| (id, i)).collect();

    let mut prescribed: HashMap<(usize, usize), f64> = HashMap::new();
    for (selector, local_dof, value) in constraints {
        if *local_dof >= ndof_per_node {
            return Err(Error::DofMapMismatch(format!(
                "local dof {local_dof} out of range for {ndof_per_node} DOFs per node"
            )));
        }
        for node_id in selector.resolve(mesh)? {
            if prescribed.insert((node_id, *local_dof), *value).is_some() {
                return Err(Error::DuplicateConstraint {
                    node: node_id,
                    local_dof: *local_dof,
                });
            }
        }
    }

    let mut statuses = Vec::with_capacity(node_ids.len() * ndof_per_node);
    let mut next_index = 0;
    for &nid in &node_ids {
        for ld in 0..ndof_per_node {
            match prescribed.get(&(nid, ld)) {
                Some(&v) => statuses.push(DofStatus::Closed(v)),
                None => {
                    statuses.push(DofStatus::Open(next_index));
                    next_index += 1;
                }
            }
        }
    }

    Ok(DofMap {
        ndof_per_node,
        node_ids,
        statuses,
        node_row,
        n_open: next_index,
    })
}
