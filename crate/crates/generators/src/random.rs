//! Semi-random instances `P U D U^dagger P^T` with block-diagonal Haar `U`.

use nalgebra::DMatrix;
use num_complex::Complex64;
use qls_instances::{Instance, SparseHermitian, Source};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::error::{GenError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum EigenvalueLaw {
    /// Interior eigenvalues uniform on the open interval `(1/kappa, 1)`.
    #[default]
    UniformOpenInterval,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RandomSpec {
    pub dim: usize,
    pub target_kappa: f64,
    pub target_d: usize,
    pub rng_seed: u64,
    pub eigenvalue_law: EigenvalueLaw,
}

impl RandomSpec {
    pub fn new(dim: usize, target_kappa: f64, target_d: usize, rng_seed: u64) -> Self {
        RandomSpec { dim, target_kappa, target_d, rng_seed, eigenvalue_law: EigenvalueLaw::UniformOpenInterval }
    }

    pub fn validate(&self) -> Result<()> {
        if self.dim < 2 {
            return Err(GenError::InvalidSpec(format!("dimension must be at least 2, got {}", self.dim)));
        }
        if self.target_d == 0 || self.target_d > self.dim {
            return Err(GenError::InvalidSpec(format!("sparsity {} outside [1, {}]", self.target_d, self.dim)));
        }
        if !(self.target_kappa >= 1.0) || !self.target_kappa.is_finite() {
            return Err(GenError::InvalidSpec(format!("condition number must be finite and >= 1, got {}", self.target_kappa)));
        }
        Ok(())
    }

    pub fn id(&self) -> String {
        format!("random-n{}-d{}-k{}-s{}", self.dim, self.target_d, self.target_kappa, self.rng_seed)
    }
}

/// Intermediate products of [`gen_random`].
#[derive(Debug, Clone)]
pub struct RandomParts {
    pub blocks: Vec<usize>,
    /// Diagonal of `D`, in block order.
    pub eigenvalues: Vec<f64>,
    /// `U D U^dagger` before the permutation.
    pub unpermuted: SparseHermitian,
    /// Row and column `i` of the unpermuted matrix become `permutation[i]`.
    pub permutation: Vec<usize>,
    pub instance: Instance,
}

pub fn gen_random(spec: &RandomSpec) -> Result<Instance> {
    Ok(gen_random_parts(spec)?.instance)
}

pub fn gen_random_parts(spec: &RandomSpec) -> Result<RandomParts> {
    spec.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(spec.rng_seed);
    let (n, d, kappa) = (spec.dim, spec.target_d, spec.target_kappa);

    let blocks = block_sizes(&mut rng, n, d);
    let eigenvalues = spectrum(&mut rng, n, kappa, spec.eigenvalue_law);

    let mut trip = Vec::new();
    let mut off = 0;
    for &b in &blocks {
        if b == 1 {
            // a 1x1 unitary is a phase, so U D U^dagger is the eigenvalue itself
            trip.push((off, off, Complex64::new(eigenvalues[off], 0.0)));
            off += 1;
            continue;
        }
        let u = haar_unitary(&mut rng, b);
        let dd = DMatrix::from_diagonal(&nalgebra::DVector::from_iterator(
            b,
            eigenvalues[off..off + b].iter().map(|&l| Complex64::new(l, 0.0)),
        ));
        let a = &u * dd * u.adjoint();
        // upper triangle mirrored so that A = A^dagger holds bitwise
        for j in 0..b {
            trip.push((off + j, off + j, Complex64::new(a[(j, j)].re, 0.0)));
            for k in j + 1..b {
                let v = a[(j, k)];
                trip.push((off + j, off + k, v));
                trip.push((off + k, off + j, v.conj()));
            }
        }
        off += b;
    }
    let unpermuted = SparseHermitian::from_triplets(n, trip.clone())?;

    let mut permutation: Vec<usize> = (0..n).collect();
    permutation.shuffle(&mut rng);
    let ptrip = trip.into_iter().map(|(j, k, v)| (permutation[j], permutation[k], v)).collect();
    let matrix = SparseHermitian::from_triplets(n, ptrip)?;

    let rhs = gaussian_vector(&mut rng, n);
    let instance = Instance::new(spec.id(), Source::Random, matrix, rhs)?.with_kappa_truth(kappa);
    Ok(RandomParts { blocks, eigenvalues, unpermuted, permutation, instance })
}

/// Draws `b_i` uniform on `[1, d]` while at least `d` remains, closes with the remainder,
/// then grows the first block to `d` if no block reached it.
fn block_sizes(rng: &mut ChaCha8Rng, n: usize, d: usize) -> Vec<usize> {
    let mut blocks = Vec::new();
    let mut rem = n;
    while rem >= d {
        let b = rng.random_range(1..=d);
        blocks.push(b);
        rem -= b;
    }
    if rem > 0 {
        blocks.push(rem);
    }
    if !blocks.contains(&d) {
        let mut deficit = d - blocks[0];
        blocks[0] = d;
        // n >= d, so the later blocks hold at least the deficit
        while deficit > 0 {
            let last = blocks.last_mut().expect("blocks");
            let take = deficit.min(*last);
            *last -= take;
            deficit -= take;
            if *last == 0 {
                blocks.pop();
            }
        }
    }
    blocks
}

/// One eigenvalue `1`, one `1/kappa` at distinct random positions, the rest from the law.
fn spectrum(rng: &mut ChaCha8Rng, n: usize, kappa: f64, law: EigenvalueLaw) -> Vec<f64> {
    let lo = 1.0 / kappa;
    let mut ev: Vec<f64> = (0..n)
        .map(|_| match law {
            EigenvalueLaw::UniformOpenInterval => loop {
                let v = lo + (1.0 - lo) * rng.random::<f64>();
                if v > lo && v < 1.0 || lo == 1.0 {
                    break v;
                }
            },
        })
        .collect();
    let top = rng.random_range(0..n);
    let mut bottom = rng.random_range(0..n - 1);
    if bottom >= top {
        bottom += 1;
    }
    ev[top] = 1.0;
    ev[bottom] = lo;
    ev
}

fn gaussian_vector(rng: &mut ChaCha8Rng, n: usize) -> Vec<Complex64> {
    let v: Vec<Complex64> = (0..n).map(|_| Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))).collect();
    let nrm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    v.into_iter().map(|z| z / nrm).collect()
}

/// Haar-distributed `n x n` unitary: QR of a complex Gaussian matrix with the phases of
/// `diag(R)` moved into `Q`.
pub fn haar_unitary(rng: &mut impl Rng, n: usize) -> DMatrix<Complex64> {
    let z = DMatrix::from_fn(n, n, |_, _| Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal)) / 2f64.sqrt());
    let qr = z.qr();
    let (mut q, r) = qr.unpack();
    for k in 0..n {
        let rk = r[(k, k)];
        let ph = if rk.norm() > 0.0 { rk / rk.norm() } else { Complex64::new(1.0, 0.0) };
        for i in 0..n {
            q[(i, k)] *= ph;
        }
    }
    q
}
