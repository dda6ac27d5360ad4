//! Parameter sweeps producing flat numeric tables. Rows are computed in
//! parallel (each point is independent) and merged in input order.

use super::adhesion::{analyze, AdhesionParams};
use crate::assembly::QuadraticForm;
use crate::error::Result;
use crate::gaussian::{field_covariance, mean_field, moments, EnsembleSpec};
use crate::mesh::{DofMap, Mesh};
use rayon::prelude::*;

/// A column-labelled table of f64 rows.
#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    columns: Vec<String>,
    rows: Vec<Vec<f64>>,
}

impl Table {
    pub fn new(columns: &[&str]) -> Self {
        Table {
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<f64>) {
        assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn columns(&self) -> &[String] {
        &self.columns
    }

    pub fn rows(&self) -> &[Vec<f64>] {
        &self.rows
    }

    pub fn column(&self, name: &str) -> Option<Vec<f64>> {
        let idx = self.columns.iter().position(|c| c == name)?;
        Some(self.rows.iter().map(|r| r[idx]).collect())
    }
}

/// Decohesion curves: one row per (beta, u_bar) pair, betas outermost.
/// Columns: u_bar, beta, mean_force, mean_xi, log_Z.
pub fn adhesion_sweep(
    params: &AdhesionParams,
    betas: &[f64],
    u_bars: &[f64],
) -> Result<Table> {
    let jobs: Vec<(f64, f64)> = betas
        .iter()
        .flat_map(|&beta| u_bars.iter().map(move |&u| (beta, u)))
        .collect();
    let rows: Vec<Vec<f64>> = jobs
        .par_iter()
        .map(|&(beta, u_bar)| {
            let a = analyze(&params.with_end_displacement(u_bar), beta)?;
            Ok(vec![u_bar, beta, a.mean_force, a.mean_xi, a.log_z_total])
        })
        .collect::<Result<_>>()?;
    let mut table = Table::new(&["u_bar", "beta", "mean_force", "mean_xi", "log_Z"]);
    for row in rows {
        table.push(row);
    }
    Ok(table)
}

/// Temperature sweep of a quadratic (field) model, probing the mean and
/// variance of the field at one point.
/// Columns: beta, log_Z, min_energy, mean_energy, mean_u_probe, var_u_probe.
pub fn field_beta_sweep(
    form: &QuadraticForm,
    mesh: &Mesh,
    dofmap: &DofMap,
    probe: &[f64],
    betas: &[f64],
) -> Result<Table> {
    let rows: Vec<Vec<f64>> = betas
        .par_iter()
        .map(|&beta| {
            let stats = moments(&EnsembleSpec::new(form, beta)?)?;
            let mean = mean_field(&stats, mesh, dofmap, probe)?;
            let var = field_covariance(&stats, mesh, dofmap, probe, probe)?;
            Ok(vec![
                beta,
                stats.log_z,
                stats.min_energy,
                stats.mean_energy,
                mean,
                var,
            ])
        })
        .collect::<Result<_>>()?;
    let mut table = Table::new(&[
        "beta",
        "log_Z",
        "min_energy",
        "mean_energy",
        "mean_u_probe",
        "var_u_probe",
    ]);
    for row in rows {
        table.push(row);
    }
    Ok(table)
}
