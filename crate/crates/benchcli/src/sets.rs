//! Instance sets for sweeps: random `kappa` x `d` grids and Poisson families, with manifests.

use std::path::Path;

use qls_generators::{gen_poisson_points, gen_random, poisson_kappa_closed_form, RandomSpec};
use qls_instances::{save_instance, Instance};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{BenchError, Result};
use crate::report::write_file;
use crate::sweep::INSTANCE_EXTENSION;

pub const MANIFEST_CSV: &str = "manifest.csv";

/// Generator targets of one written instance.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ManifestRow {
    pub id: String,
    pub file: String,
    pub source: String,
    #[serde(rename = "N")]
    pub n: usize,
    pub target_d: usize,
    pub target_kappa: f64,
    pub seed: Option<u64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RandomGrid {
    pub dim: usize,
    pub kappas: Vec<f64>,
    pub ds: Vec<usize>,
    /// Seeds `base_seed .. base_seed + seeds`, shared by every (`kappa`, `d`) cell.
    pub seeds: u64,
    pub base_seed: u64,
}

impl RandomGrid {
    pub fn specs(&self) -> Vec<RandomSpec> {
        let mut specs = Vec::new();
        for &kappa in &self.kappas {
            for &d in &self.ds {
                for s in 0..self.seeds {
                    specs.push(RandomSpec::new(self.dim, kappa, d, self.base_seed + s));
                }
            }
        }
        specs
    }
}

fn manifest_row(inst: &Instance, target_d: usize, target_kappa: f64, seed: Option<u64>) -> ManifestRow {
    ManifestRow {
        id: inst.id.clone(),
        file: format!("{}.{INSTANCE_EXTENSION}", inst.id),
        source: inst.source.as_str().to_string(),
        n: inst.dim(),
        target_d,
        target_kappa,
        seed,
    }
}

pub fn random_set(grid: &RandomGrid) -> Result<Vec<(Instance, ManifestRow)>> {
    grid.specs()
        .par_iter()
        .map(|spec| {
            let inst = gen_random(spec)?;
            let row = manifest_row(&inst, spec.target_d, spec.target_kappa, Some(spec.rng_seed));
            Ok((inst, row))
        })
        .collect()
}

/// `(dimension, points per axis)` pairs.
pub fn poisson_set(points: &[(usize, usize)], max_n: usize) -> Result<Vec<(Instance, ManifestRow)>> {
    points
        .par_iter()
        .map(|&(dim, m)| {
            let inst = gen_poisson_points(dim, m, max_n)?;
            let row = manifest_row(&inst, 2 * dim + 1, poisson_kappa_closed_form(dim, m), None);
            Ok((inst, row))
        })
        .collect()
}

/// Twenty Poisson systems over `D = 1, 2, 3`, all with `N <= 1024` so dense metrics stay cheap.
pub const DEFAULT_POISSON_POINTS: [(usize, usize); 20] = [
    (1, 3),
    (1, 7),
    (1, 15),
    (1, 31),
    (1, 63),
    (1, 127),
    (1, 255),
    (1, 511),
    (2, 3),
    (2, 5),
    (2, 7),
    (2, 11),
    (2, 15),
    (2, 21),
    (2, 31),
    (3, 3),
    (3, 4),
    (3, 5),
    (3, 7),
    (3, 9),
];

/// Writes `<id>.qls` per instance and the manifest, sorted by id.
pub fn write_set(dir: &Path, set: &[(Instance, ManifestRow)]) -> Result<()> {
    std::fs::create_dir_all(dir).map_err(|e| BenchError::io(dir, e))?;
    let mut order: Vec<&(Instance, ManifestRow)> = set.iter().collect();
    order.sort_by(|a, b| a.1.id.cmp(&b.1.id));
    for (inst, row) in &order {
        save_instance(&dir.join(&row.file), inst)?;
    }
    let mut w = csv::Writer::from_writer(Vec::new());
    for (_, row) in &order {
        w.serialize(row)?;
    }
    let bytes = w.into_inner().map_err(|e| BenchError::io(dir.join(MANIFEST_CSV), e.into_error()))?;
    write_file(&dir.join(MANIFEST_CSV), &String::from_utf8(bytes).expect("csv output is UTF-8"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_order_and_seeds() {
        let grid = RandomGrid { dim: 8, kappas: vec![10.0, 100.0], ds: vec![2, 4], seeds: 3, base_seed: 5 };
        let specs = grid.specs();
        assert_eq!(specs.len(), 12);
        assert_eq!((specs[0].target_kappa, specs[0].target_d, specs[0].rng_seed), (10.0, 2, 5));
        assert_eq!((specs[11].target_kappa, specs[11].target_d, specs[11].rng_seed), (100.0, 4, 7));
    }

    #[test]
    fn default_poisson_points_stay_small() {
        for (dim, m) in DEFAULT_POISSON_POINTS {
            assert!(m.pow(dim as u32) <= 1024, "{dim} {m}");
        }
    }

    #[test]
    fn written_set_reloads() {
        let dir = tempfile::tempdir().unwrap();
        let set = poisson_set(&[(1, 3), (2, 3)], 1 << 10).unwrap();
        write_set(dir.path(), &set).unwrap();
        let manifest = std::fs::read_to_string(dir.path().join(MANIFEST_CSV)).unwrap();
        assert_eq!(manifest.lines().next().unwrap(), "id,file,source,N,target_d,target_kappa,seed");
        assert_eq!(manifest.lines().count(), 3);
        for (inst, row) in &set {
            assert_eq!(&qls_instances::load_instance(&dir.path().join(&row.file)).unwrap(), inst);
        }
    }
}
