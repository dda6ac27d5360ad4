//! Beam adhering to a rigid substrate through breakable bonds.
//!
//! The beam is clamped at x = 0 and its far end is held at a prescribed
//! height u_bar. N bonds at positions x_A act as linear springs of
//! stiffness k while connected and store the constant energy k U^2 / 2
//! each while broken. One-sided decohesion is assumed: the spin variable
//! xi in 0..=N counts connected bonds, always the xi closest to the
//! clamped end. Marginalizing the Gaussian over each spin state makes
//! every observable an exact finite sum.

use crate::assembly::{assemble, assemble_sensitivity, Material, QuadraticForm};
use crate::error::{Error, Result};
use crate::gaussian::{moments, EnsembleSpec};
use crate::mesh::{
    build_dof_map, build_interval_mesh, DofMap, DofStatus, ElementKind, Mesh, NodeSelector,
};
use crate::numeric::logsumexp;

#[derive(Debug, Clone)]
pub struct AdhesionParams {
    pub length: f64,
    pub bending_stiffness: f64,
    pub n_bonds: usize,
    /// Spring stiffness k of a connected bond.
    pub bond_stiffness: f64,
    /// Length constant U of the broken-state energy k U^2 / 2.
    pub broken_length: f64,
    /// Prescribed height of the supported end.
    pub end_displacement: f64,
    /// Bond positions along the beam; defaults to n_bonds equally spaced
    /// interior points A L / (N+1).
    pub bond_positions: Option<Vec<f64>>,
}

impl AdhesionParams {
    /// The parameter set of the published decohesion curves:
    /// k U^2 / E0 = 5 and N = 6, in units where L = U = K_B = 1 (so E0 = 1).
    pub fn reference(end_displacement: f64) -> Self {
        AdhesionParams {
            length: 1.0,
            bending_stiffness: 1.0,
            n_bonds: 6,
            bond_stiffness: 5.0,
            broken_length: 1.0,
            end_displacement,
            bond_positions: None,
        }
    }

    /// Energy scale E0 = K_B U^2 / L^3 used for non-dimensional reporting.
    pub fn energy_scale(&self) -> f64 {
        self.bending_stiffness * self.broken_length * self.broken_length
            / (self.length * self.length * self.length)
    }

    pub fn with_end_displacement(&self, end_displacement: f64) -> Self {
        AdhesionParams {
            end_displacement,
            ..self.clone()
        }
    }

    /// Bond positions in ascending order from the clamped end.
    pub fn resolved_bond_positions(&self) -> Result<Vec<f64>> {
        let positions = match &self.bond_positions {
            Some(given) => {
                let mut p = given.clone();
                p.sort_by(f64::total_cmp);
                p
            }
            None => (1..=self.n_bonds)
                .map(|a| a as f64 * self.length / (self.n_bonds + 1) as f64)
                .collect(),
        };
        if positions.len() != self.n_bonds {
            return Err(Error::InvalidParameter(format!(
                "{} bond positions given for {} bonds",
                positions.len(),
                self.n_bonds
            )));
        }
        for &x in &positions {
            if !(0.0..=self.length).contains(&x) || !x.is_finite() {
                return Err(Error::BondOffMesh(x));
            }
        }
        for pair in positions.windows(2) {
            if pair[1] - pair[0] <= 1e-12 * self.length {
                return Err(Error::InvalidParameter(format!(
                    "bond positions {} and {} coincide",
                    pair[0], pair[1]
                )));
            }
        }
        Ok(positions)
    }

    fn validate(&self) -> Result<()> {
        if !(self.length > 0.0) {
            return Err(Error::InvalidParameter("length must be positive".into()));
        }
        if !(self.bending_stiffness > 0.0) {
            return Err(Error::InvalidParameter(
                "bending_stiffness must be positive".into(),
            ));
        }
        if self.n_bonds == 0 {
            return Err(Error::InvalidParameter("n_bonds must be >= 1".into()));
        }
        if !(self.bond_stiffness > 0.0) {
            return Err(Error::InvalidParameter(
                "bond_stiffness must be positive".into(),
            ));
        }
        if !(self.broken_length > 0.0) {
            return Err(Error::InvalidParameter(
                "broken_length must be positive".into(),
            ));
        }
        Ok(())
    }
}

/// The family of quadratic forms indexed by the spin variable, sharing one
/// DOF layout: form xi carries the bond stiffness on the value-DOF diagonal
/// of bonds 1..=xi plus the broken-state constant of the other N - xi.
#[derive(Debug, Clone)]
pub struct SpinEnsemble {
    beta: f64,
    bond_stiffness: f64,
    broken_energy: f64,
    mesh: Mesh,
    dofmap: DofMap,
    forms: Vec<QuadraticForm>,
    /// Value DOF of each bond, ascending position order.
    bond_dofs: Vec<DofStatus>,
    bond_node_ids: Vec<usize>,
    end_node_id: usize,
}

impl SpinEnsemble {
    pub fn n_bonds(&self) -> usize {
        self.forms.len() - 1
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn forms(&self) -> &[QuadraticForm] {
        &self.forms
    }

    pub fn form(&self, xi: usize) -> &QuadraticForm {
        &self.forms[xi]
    }

    pub fn mesh(&self) -> &Mesh {
        &self.mesh
    }

    pub fn dofmap(&self) -> &DofMap {
        &self.dofmap
    }

    /// Joint energy E(d; xi).
    pub fn energy(&self, d: &[f64], xi: usize) -> Result<f64> {
        self.forms[xi].energy(d)
    }

    fn bond_value(&self, bond: usize, d: &[f64]) -> f64 {
        match self.bond_dofs[bond] {
            DofStatus::Open(g) => d[g],
            DofStatus::Closed(u) => u,
        }
    }

    /// Log conditional weights of the spin states at fixed d,
    /// log w(xi) = -beta E(d; xi); suitable for exact heat-bath resampling.
    pub fn log_conditional_weights(&self, d: &[f64]) -> Result<Vec<f64>> {
        let base = self.forms[0].energy(d)?;
        let n = self.n_bonds();
        let mut weights = Vec::with_capacity(n + 1);
        let mut spring_sum = 0.0;
        weights.push(-self.beta * base);
        for a in 0..n {
            let u = self.bond_value(a, d);
            spring_sum += 0.5 * self.bond_stiffness * u * u;
            let energy = base + spring_sum - (a + 1) as f64 * self.broken_energy;
            weights.push(-self.beta * energy);
        }
        Ok(weights)
    }
}

/// Builds the ensemble: a Hermite mesh with nodes at the clamped end, every
/// bond position and the supported end, plus the N + 1 quadratic forms.
pub fn build_spin_ensemble(params: &AdhesionParams, beta: f64) -> Result<SpinEnsemble> {
    params.validate()?;
    if !(beta > 0.0) {
        return Err(Error::NonPositiveBeta(beta));
    }
    let bonds = params.resolved_bond_positions()?;
    let merge_tol = 1e-12 * params.length;

    let mut positions = vec![0.0];
    for &x in &bonds {
        if (x - positions[positions.len() - 1]).abs() > merge_tol {
            positions.push(x);
        }
    }
    if (params.length - positions[positions.len() - 1]).abs() > merge_tol {
        positions.push(params.length);
    } else {
        *positions.last_mut().unwrap() = params.length;
    }

    let mesh = build_interval_mesh(params.length, &positions, ElementKind::HermiteLine2)?;
    let node_at = |x: f64| -> usize {
        positions
            .iter()
            .position(|&p| (p - x).abs() <= merge_tol)
            .map(|i| i + 1)
            .expect("bond positions are mesh nodes by construction")
    };
    let end_node_id = node_at(params.length);

    let dofmap = build_dof_map(
        &mesh,
        2,
        &[
            (NodeSelector::Id(1), 0, 0.0),
            (NodeSelector::Id(1), 1, 0.0),
            (NodeSelector::Id(end_node_id), 0, params.end_displacement),
        ],
    )?;
    let beam = assemble(
        &mesh,
        &dofmap,
        &Material::Uniform(params.bending_stiffness),
        None,
    )?;

    let bond_node_ids: Vec<usize> = bonds.iter().map(|&x| node_at(x)).collect();
    let bond_dofs: Vec<DofStatus> = bond_node_ids
        .iter()
        .map(|&nid| dofmap.status(nid, 0))
        .collect::<Result<_>>()?;

    let k = params.bond_stiffness;
    let broken_energy = 0.5 * k * params.broken_length * params.broken_length;
    let n = params.n_bonds;
    let mut forms = Vec::with_capacity(n + 1);
    for xi in 0..=n {
        let mut form = beam.clone();
        for bond in 0..xi {
            match bond_dofs[bond] {
                DofStatus::Open(g) => form.add_to_diagonal(g, k)?,
                DofStatus::Closed(u) => form.add_to_constant(0.5 * k * u * u),
            }
        }
        form.add_to_constant((n - xi) as f64 * broken_energy);
        forms.push(form);
    }

    Ok(SpinEnsemble {
        beta,
        bond_stiffness: k,
        broken_energy,
        mesh,
        dofmap,
        forms,
        bond_dofs,
        bond_node_ids,
        end_node_id,
    })
}

/// Exact spin statistics obtained by summing the per-state Gaussian
/// partition functions.
#[derive(Debug, Clone)]
pub struct SpinObservables {
    pub log_z_total: f64,
    pub mean_xi: f64,
    /// Marginal probability of each spin state.
    pub xi_weights: Vec<f64>,
    pub log_z_per_state: Vec<f64>,
}

pub fn spin_observables(ensemble: &SpinEnsemble) -> Result<SpinObservables> {
    let log_z_per_state: Vec<f64> = ensemble
        .forms
        .iter()
        .map(|form| Ok(moments(&EnsembleSpec::new(form, ensemble.beta)?)?.log_z))
        .collect::<Result<_>>()?;
    let log_z_total = logsumexp(&log_z_per_state);
    let xi_weights: Vec<f64> = log_z_per_state
        .iter()
        .map(|lz| (lz - log_z_total).exp())
        .collect();
    let mean_xi = xi_weights
        .iter()
        .enumerate()
        .map(|(xi, w)| xi as f64 * w)
        .sum();
    Ok(SpinObservables {
        log_z_total,
        mean_xi,
        xi_weights,
        log_z_per_state,
    })
}

/// Everything the analytic route yields at one (u_bar, beta) point.
#[derive(Debug, Clone)]
pub struct AdhesionAnalysis {
    pub log_z_total: f64,
    pub mean_xi: f64,
    pub xi_weights: Vec<f64>,
    /// Thermodynamic force conjugate to the end displacement,
    /// -(1/beta) d ln Z / d u_bar.
    pub mean_force: f64,
}

/// Analytic observables at one parameter point: spin marginal plus the mean
/// support force, with the u_bar derivative of each log Z taken exactly via
/// the assembled sensitivities.
pub fn analyze(params: &AdhesionParams, beta: f64) -> Result<AdhesionAnalysis> {
    let ensemble = build_spin_ensemble(params, beta)?;
    let (db, dc_beam) = assemble_sensitivity(
        &ensemble.mesh,
        &ensemble.dofmap,
        &Material::Uniform(params.bending_stiffness),
        None,
        (ensemble.end_node_id, 0),
    )?;

    let n = ensemble.n_bonds();
    let mut log_zs = Vec::with_capacity(n + 1);
    let mut dlogz = Vec::with_capacity(n + 1);
    for xi in 0..=n {
        let stats = moments(&EnsembleSpec::new(&ensemble.forms[xi], beta)?)?;
        // Connected bonds sitting on the prescribed end contribute
        // k u_bar^2 / 2 to c, hence k u_bar to dc.
        let mut dc = dc_beam;
        for bond in 0..xi {
            if ensemble.bond_node_ids[bond] == ensemble.end_node_id {
                dc += params.bond_stiffness * params.end_displacement;
            }
        }
        let d_min_energy = dc + db.dot(&stats.mean);
        log_zs.push(stats.log_z);
        dlogz.push(-beta * d_min_energy);
    }

    let log_z_total = logsumexp(&log_zs);
    let xi_weights: Vec<f64> = log_zs.iter().map(|lz| (lz - log_z_total).exp()).collect();
    let mean_xi = xi_weights
        .iter()
        .enumerate()
        .map(|(xi, w)| xi as f64 * w)
        .sum();
    let dlogz_total: f64 = xi_weights
        .iter()
        .zip(&dlogz)
        .map(|(w, dz)| w * dz)
        .sum();
    Ok(AdhesionAnalysis {
        log_z_total,
        mean_xi,
        xi_weights,
        mean_force: -dlogz_total / beta,
    })
}

/// Mean force applied by the support, -(1/beta) d ln Z / d u_bar.
pub fn mean_force(params: &AdhesionParams, beta: f64) -> Result<f64> {
    Ok(analyze(params, beta)?.mean_force)
}
