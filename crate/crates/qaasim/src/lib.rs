//! Monte-Carlo simulation of the randomized amplitude-amplification loop.
//!
//! Round `k` uses the bound `m_k = floor(min(c^k, sqrt(1/p0)))`, draws `j` uniformly from
//! `0..=m_k`, applies `Q` `j` times and succeeds with probability `sin^2((2j+1) theta)`.
//! Only `Q` applications are counted; each costs two applications of `A`, so the mean
//! `A` count estimates the analytic `n_QAA` series. The single `A` preparing each round is
//! reported separately as `mean_rounds`.

use qls_costkit::qaa::{amplitude_angle, check_growth, check_probabilities, mean_success, qaa_expected};
use qls_costkit::{schedule_m, CostError};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use thiserror::Error;

/// Trials per independently seeded shard. Fixed so results do not depend on the thread count.
pub const SHARD_TRIALS: u64 = 4096;
/// `|z|` above this marks a crossvalidation row as failed.
pub const Z_LIMIT: f64 = 4.0;

#[derive(Debug, Error)]
pub enum QaaError {
    #[error(transparent)]
    Parameters(#[from] CostError),
    #[error("trials must be at least 1")]
    NoTrials,
}

pub type Result<T> = std::result::Result<T, QaaError>;

/// Parameters of one simulation run.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QaaProcess {
    pub p: f64,
    pub p0: f64,
    pub c: f64,
    pub rng_seed: u64,
    pub trials: u64,
}

impl QaaProcess {
    pub fn new(p: f64, p0: f64, c: f64, rng_seed: u64, trials: u64) -> Result<Self> {
        let proc_ = QaaProcess { p, p0, c, rng_seed, trials };
        proc_.validate()?;
        Ok(proc_)
    }

    pub fn validate(&self) -> Result<()> {
        check_probabilities(self.p, self.p0)?;
        check_growth(self.c)?;
        if self.trials == 0 {
            return Err(QaaError::NoTrials);
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct QaaStats {
    pub trials: u64,
    pub mean_q_applications: f64,
    /// Always exactly `2 * mean_q_applications`.
    pub mean_a_applications: f64,
    /// Standard error of `mean_a_applications`.
    pub stderr: f64,
    /// Mean number of rounds, i.e. of the per-round state preparations not in the series.
    pub mean_rounds: f64,
    /// `histogram[k - 1]` counts trials that succeeded in round `k`.
    pub histogram: Vec<u64>,
}

// integer accumulators merge exactly, so shard order cannot change the result
#[derive(Default)]
struct Tally {
    trials: u64,
    q_sum: u128,
    q_sq_sum: u128,
    rounds: u128,
    histogram: Vec<u64>,
}

impl Tally {
    fn merge(mut self, other: Tally) -> Tally {
        self.trials += other.trials;
        self.q_sum += other.q_sum;
        self.q_sq_sum += other.q_sq_sum;
        self.rounds += other.rounds;
        if self.histogram.len() < other.histogram.len() {
            self.histogram.resize(other.histogram.len(), 0);
        }
        for (a, b) in self.histogram.iter_mut().zip(other.histogram) {
            *a += b;
        }
        self
    }
}

/// Uniform draw from `0..=m`.
pub fn draw_j<R: Rng + ?Sized>(rng: &mut R, m: u64) -> u64 {
    rng.random_range(0..=m)
}

/// Generator of shard `shard` of a run seeded with `seed`.
pub fn shard_rng(seed: u64, shard: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(shard);
    rng
}

/// Applications of `Q` in one trial and the round it succeeded in.
fn one_trial<R: Rng + ?Sized>(rng: &mut R, theta: f64, c: f64, p0: f64) -> (u64, u32) {
    let mut q = 0u64;
    let mut k = 1u32;
    loop {
        let m = schedule_m(k, c, p0);
        let j = draw_j(rng, m);
        q += j;
        let ps = ((2 * j + 1) as f64 * theta).sin().powi(2);
        if rng.random::<f64>() < ps {
            return (q, k);
        }
        k += 1;
    }
}

fn run_shard(proc_: &QaaProcess, theta: f64, shard: u64, trials: u64) -> Tally {
    let mut rng = shard_rng(proc_.rng_seed, shard);
    let mut t = Tally { trials, ..Tally::default() };
    for _ in 0..trials {
        let (q, k) = one_trial(&mut rng, theta, proc_.c, proc_.p0);
        t.q_sum += q as u128;
        t.q_sq_sum += (q as u128) * (q as u128);
        t.rounds += k as u128;
        let idx = (k - 1) as usize;
        if t.histogram.len() <= idx {
            t.histogram.resize(idx + 1, 0);
        }
        t.histogram[idx] += 1;
    }
    t
}

/// Runs `process.trials` independent trials; deterministic in `rng_seed`.
pub fn simulate_qaa(process: &QaaProcess) -> Result<QaaStats> {
    process.validate()?;
    let theta = amplitude_angle(process.p);
    let shards = process.trials.div_ceil(SHARD_TRIALS);
    let tally = (0..shards)
        .into_par_iter()
        .map(|s| {
            let n = SHARD_TRIALS.min(process.trials - s * SHARD_TRIALS);
            run_shard(process, theta, s, n)
        })
        .reduce(Tally::default, Tally::merge);
    let n = tally.trials as f64;
    let mean_q = tally.q_sum as f64 / n;
    let var_q = if tally.trials > 1 {
        // exact integer centring avoids cancellation in the sample variance
        let num = tally.q_sq_sum as f64 - (tally.q_sum as f64) * mean_q;
        (num / (n - 1.0)).max(0.0)
    } else {
        0.0
    };
    Ok(QaaStats {
        trials: tally.trials,
        mean_q_applications: mean_q,
        mean_a_applications: 2.0 * mean_q,
        stderr: 2.0 * (var_q / n).sqrt(),
        mean_rounds: tally.rounds as f64 / n,
        histogram: tally.histogram,
    })
}

/// One row of the analytic-versus-empirical comparison.
#[derive(Debug, Clone, PartialEq)]
pub struct CrossRow {
    pub p: f64,
    pub p0: f64,
    pub analytic: f64,
    pub empirical: f64,
    pub stderr: f64,
    pub z: f64,
    pub rel_err: f64,
    pub mean_rounds: f64,
    pub pass: bool,
}

/// Simulates every `(p, p0)` case and compares with the series; case `i` uses seed `seed + i`.
pub fn crossvalidate(cases: &[(f64, f64)], c: f64, trials: u64, seed: u64) -> Result<Vec<CrossRow>> {
    cases
        .iter()
        .enumerate()
        .map(|(i, &(p, p0))| {
            let proc_ = QaaProcess::new(p, p0, c, seed.wrapping_add(i as u64), trials)?;
            let analytic = qaa_expected(p, p0, c)?;
            let st = simulate_qaa(&proc_)?;
            let diff = st.mean_a_applications - analytic;
            let z = if st.stderr > 0.0 {
                diff / st.stderr
            } else if diff == 0.0 {
                0.0
            } else {
                f64::INFINITY
            };
            Ok(CrossRow {
                p,
                p0,
                analytic,
                empirical: st.mean_a_applications,
                stderr: st.stderr,
                z,
                rel_err: diff.abs() / analytic,
                mean_rounds: st.mean_rounds,
                pass: z.abs() <= Z_LIMIT,
            })
        })
        .collect()
}

/// Cartesian grid restricted to `p0 <= p`.
pub fn grid(p_grid: &[f64], p0_grid: &[f64]) -> Vec<(f64, f64)> {
    p_grid.iter().flat_map(|&p| p0_grid.iter().filter(move |&&p0| p0 <= p).map(move |&p0| (p, p0))).collect()
}

/// Expected success probability of round `k` given it is reached; exposed for diagnostics.
pub fn round_success(k: u32, p: f64, p0: f64, c: f64) -> f64 {
    mean_success(schedule_m(k, c, p0), amplitude_angle(p))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn certain_success_enumerates_two_branches() {
        let st = simulate_qaa(&QaaProcess::new(1.0, 1.0, 1.2, 7, 200_000).unwrap()).unwrap();
        assert_eq!(st.histogram, vec![200_000]);
        assert!((st.mean_q_applications - 0.5).abs() < 0.01);
        assert_eq!(st.mean_a_applications, 2.0 * st.mean_q_applications);
        assert!((st.mean_a_applications - 1.0).abs() < 0.02);
        assert_eq!(st.mean_rounds, 1.0);
    }

    #[test]
    fn same_seed_same_stats() {
        let p = QaaProcess::new(0.1, 0.05, 1.2, 99, 10_000).unwrap();
        assert_eq!(simulate_qaa(&p).unwrap(), simulate_qaa(&p).unwrap());
        let q = QaaProcess { rng_seed: 100, ..p };
        assert_ne!(simulate_qaa(&p).unwrap(), simulate_qaa(&q).unwrap());
    }

    #[test]
    fn thread_count_does_not_matter() {
        let p = QaaProcess::new(0.05, 0.05, 1.2, 5, 3 * SHARD_TRIALS + 17).unwrap();
        let one = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap().install(|| simulate_qaa(&p).unwrap());
        let many = rayon::ThreadPoolBuilder::new().num_threads(4).build().unwrap().install(|| simulate_qaa(&p).unwrap());
        assert_eq!(one, many);
        assert_eq!(one.trials, 3 * SHARD_TRIALS + 17);
        assert_eq!(one.histogram.iter().sum::<u64>(), one.trials);
    }

    #[test]
    fn rejects_bad_process() {
        assert!(QaaProcess::new(0.1, 0.2, 1.2, 0, 10).is_err());
        assert!(matches!(QaaProcess::new(0.1, 0.1, 1.2, 0, 0), Err(QaaError::NoTrials)));
    }

    #[test]
    fn empty_grid_gives_empty_table() {
        assert!(crossvalidate(&[], 1.2, 100, 0).unwrap().is_empty());
        assert_eq!(grid(&[0.5, 0.1], &[0.25, 0.1]), vec![(0.5, 0.25), (0.5, 0.1), (0.1, 0.1)]);
    }

    #[test]
    fn draws_are_uniform() {
        // chi-square with 10 degrees of freedom; 35 is beyond the 0.9999 quantile
        let m = 10u64;
        let n = 110_000u64;
        let mut rng = shard_rng(2024, 0);
        let mut counts = [0u64; 11];
        for _ in 0..n {
            counts[draw_j(&mut rng, m) as usize] += 1;
        }
        let e = n as f64 / (m + 1) as f64;
        let chi2: f64 = counts.iter().map(|&o| (o as f64 - e).powi(2) / e).sum();
        assert!(chi2 < 35.0, "chi2 {chi2}");
    }
}
