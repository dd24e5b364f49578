//! Simplex bases to benchmark instances.

use qls_instances::{Instance, MetricsConfig};
use qls_simplexer::{filter_wellconditioned, run_simplex, to_qls_instance, to_standard_form, ConditionPolicy, LpProblem, Status, SystemKind};
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::sweep::INSTANCE_EXTENSION;

/// One visited basis; `id` and `file` are set for accepted bases only.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BasisRow {
    pub lp: String,
    pub iteration: usize,
    pub phase: u8,
    #[serde(rename = "M")]
    pub m: usize,
    pub kappa_b: f64,
    pub accepted: bool,
    pub id: Option<String>,
    pub file: Option<String>,
}

#[derive(Debug, Clone)]
pub struct Extraction {
    pub status: Status,
    pub objective: f64,
    pub bases: Vec<BasisRow>,
    pub instances: Vec<Instance>,
}

/// Runs the simplex on `lp` and dilates every basis that passes `policy`.
pub fn extract_simplex(lp: &LpProblem, max_iter: usize, policy: &ConditionPolicy, kind: SystemKind, cfg: &MetricsConfig) -> Result<Extraction> {
    let sf = to_standard_form(lp)?;
    let mut run = run_simplex(&sf, max_iter)?;
    filter_wellconditioned(&mut run.snapshots, policy);
    let mut bases = Vec::with_capacity(run.snapshots.len());
    let mut instances = Vec::new();
    for snap in &run.snapshots {
        let mut row = BasisRow {
            lp: lp.name.clone(),
            iteration: snap.iteration,
            phase: snap.phase,
            m: snap.matrix.nrows(),
            kappa_b: snap.kappa_b,
            accepted: snap.accepted,
            id: None,
            file: None,
        };
        if snap.accepted {
            let inst = to_qls_instance(snap, &lp.name, kind, cfg)?;
            row.file = Some(format!("{}.{INSTANCE_EXTENSION}", inst.id));
            row.id = Some(inst.id.clone());
            instances.push(inst);
        }
        bases.push(row);
    }
    Ok(Extraction { status: run.status, objective: run.objective, bases, instances })
}
