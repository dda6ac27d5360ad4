//! Exact statistics of the Boltzmann ensemble p(d) ~ exp(-beta E(d)) when
//! the energy is the quadratic form 1/2 d^T K d + b^T d + c with K positive
//! definite: the density is an off-centered Gaussian, so means, covariances
//! and the partition function have closed forms.
//!
//! The partition function is kept in log scale throughout; linear-scale Z
//! underflows already at moderate beta * energy.

use crate::assembly::QuadraticForm;
use crate::elements::{hermite_dof_scales, ShapeFunctionSet};
use crate::error::{Error, Result};
use crate::mesh::{DofMap, DofStatus, ElementKind, Mesh};
use nalgebra::{DMatrix, DVector};

/// A Boltzmann ensemble: inverse temperature plus quadratic energy.
#[derive(Debug, Clone, Copy)]
pub struct EnsembleSpec<'a> {
    beta: f64,
    form: &'a QuadraticForm,
}

impl<'a> EnsembleSpec<'a> {
    pub fn new(form: &'a QuadraticForm, beta: f64) -> Result<Self> {
        if !(beta > 0.0) {
            return Err(Error::NonPositiveBeta(beta));
        }
        Ok(EnsembleSpec { beta, form })
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn form(&self) -> &QuadraticForm {
        self.form
    }
}

/// Closed-form Gaussian statistics of an ensemble.
#[derive(Debug, Clone)]
pub struct GaussianStats {
    /// Mean nodal values; also the energy argmin (independent of beta).
    pub mean: DVector<f64>,
    /// Covariance (beta K)^-1.
    pub covariance: DMatrix<f64>,
    /// Log partition function over the open DOFs (Lebesgue measure).
    pub log_z: f64,
    /// Energy at the mean.
    pub min_energy: f64,
    /// Mean energy; exceeds the minimum by n/(2 beta) (equipartition).
    pub mean_energy: f64,
}

impl GaussianStats {
    pub fn n(&self) -> usize {
        self.mean.len()
    }
}

/// Computes mean, covariance and log partition function from one Cholesky
/// factorization of K.
pub fn moments(spec: &EnsembleSpec) -> Result<GaussianStats> {
    let form = spec.form();
    let beta = spec.beta();
    let n = form.n();
    if n == 0 {
        // Fully prescribed system: a point mass at the boundary values.
        return Ok(GaussianStats {
            mean: DVector::zeros(0),
            covariance: DMatrix::zeros(0, 0),
            log_z: -beta * form.constant(),
            min_energy: form.constant(),
            mean_energy: form.constant(),
        });
    }

    let chol =
        crate::numeric::spd_cholesky(form.stiffness()).ok_or(Error::NotPositiveDefinite)?;
    let mean = chol.solve(&(-form.linear()));
    let log_det_k: f64 = 2.0 * chol.l_dirty().diagonal().iter().map(|d| d.ln()).sum::<f64>();
    let min_energy = form.constant() + 0.5 * form.linear().dot(&mean);
    let log_z = 0.5 * n as f64 * (2.0 * std::f64::consts::PI / beta).ln()
        - 0.5 * log_det_k
        - beta * min_energy;
    let covariance = chol.inverse() / beta;

    Ok(GaussianStats {
        mean,
        covariance,
        log_z,
        min_energy,
        mean_energy: min_energy + n as f64 / (2.0 * beta),
    })
}

/// Expectation of the affine observable a . d + a0.
pub fn expect_linear(stats: &GaussianStats, a: &DVector<f64>, a0: f64) -> Result<f64> {
    if a.len() != stats.n() {
        return Err(Error::DimensionMismatch {
            expected: stats.n(),
            got: a.len(),
        });
    }
    Ok(a.dot(&stats.mean) + a0)
}

/// Expectation of the quadratic observable d^T A d + a . d + a0 for
/// symmetric A: mu^T A mu + tr(A C) + a . mu + a0.
pub fn expect_quadratic(
    stats: &GaussianStats,
    a_mat: &DMatrix<f64>,
    a: &DVector<f64>,
    a0: f64,
) -> Result<f64> {
    let n = stats.n();
    if a_mat.nrows() != n || a_mat.ncols() != n || a.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: a_mat.nrows().max(a.len()),
        });
    }
    let asym = (a_mat - a_mat.transpose()).abs().max();
    if asym > 1e-12 * a_mat.abs().max().max(1.0) {
        return Err(Error::NonSymmetric(asym));
    }
    let mut quadratic = 0.0;
    let mut trace = 0.0;
    for i in 0..n {
        for j in 0..n {
            quadratic += stats.mean[i] * a_mat[(i, j)] * stats.mean[j];
            trace += a_mat[(i, j)] * stats.covariance[(j, i)];
        }
    }
    Ok(quadratic + trace + a.dot(&stats.mean) + a0)
}

/// Shape-function values of every DOF of the element containing `x`,
/// with Hermite slope scaling applied, tagged by DOF status.
fn point_dof_values(
    mesh: &Mesh,
    dofmap: &DofMap,
    x: &[f64],
) -> Result<Vec<(DofStatus, f64)>> {
    let (e_idx, xi) = mesh.locate(x)?;
    let element = &mesh.elements()[e_idx];
    let shapes = ShapeFunctionSet::new(element.kind);
    let values = shapes.eval(&xi);
    let scales: Vec<f64> = match element.kind {
        ElementKind::HermiteLine2 => {
            hermite_dof_scales(mesh.element_length(element)).to_vec()
        }
        _ => vec![1.0; shapes.n_funcs()],
    };
    let ndof = element.kind.ndof_per_node();
    let mut out = Vec::with_capacity(shapes.n_funcs());
    for (pos, &nid) in element.node_ids.iter().enumerate() {
        for ld in 0..ndof {
            let local = pos * ndof + ld;
            out.push((dofmap.status(nid, ld)?, scales[local] * values[local]));
        }
    }
    Ok(out)
}

/// Mean of the interpolated field at a physical point: open DOFs contribute
/// their Gaussian mean, closed DOFs their prescribed value.
pub fn mean_field(
    stats: &GaussianStats,
    mesh: &Mesh,
    dofmap: &DofMap,
    x: &[f64],
) -> Result<f64> {
    if dofmap.n_open() != stats.n() {
        return Err(Error::DimensionMismatch {
            expected: dofmap.n_open(),
            got: stats.n(),
        });
    }
    let mut value = 0.0;
    for (status, phi) in point_dof_values(mesh, dofmap, x)? {
        value += phi
            * match status {
                DofStatus::Open(g) => stats.mean[g],
                DofStatus::Closed(u) => u,
            };
    }
    Ok(value)
}

/// Covariance of the field between two physical points:
/// phi(x)|open^T C phi(y)|open. Prescribed values carry no variance.
pub fn field_covariance(
    stats: &GaussianStats,
    mesh: &Mesh,
    dofmap: &DofMap,
    x: &[f64],
    y: &[f64],
) -> Result<f64> {
    if dofmap.n_open() != stats.n() {
        return Err(Error::DimensionMismatch {
            expected: dofmap.n_open(),
            got: stats.n(),
        });
    }
    let open_phi = |point: &[f64]| -> Result<Vec<(usize, f64)>> {
        Ok(point_dof_values(mesh, dofmap, point)?
            .into_iter()
            .filter_map(|(status, phi)| match status {
                DofStatus::Open(g) => Some((g, phi)),
                DofStatus::Closed(_) => None,
            })
            .collect())
    };
    let px = open_phi(x)?;
    let py = open_phi(y)?;
    let mut cov = 0.0;
    for &(gi, vi) in &px {
        for &(gj, vj) in &py {
            cov += vi * stats.covariance[(gi, gj)] * vj;
        }
    }
    Ok(cov)
}
