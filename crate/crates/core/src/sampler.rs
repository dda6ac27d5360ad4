//! Markov-chain Monte-Carlo estimation of observable means for energies
//! that need not be quadratic, and cross-validation of the analytic route.
//!
//! The sampler is a plain random-walk Metropolis chain with symmetric
//! Gaussian proposals; for systems carrying a finite spin variable the
//! chain alternates Metropolis sweeps on the continuous state with exact
//! heat-bath resampling of the spin. Standard errors come from batch means
//! with floor(sqrt(samples)) batches. Runs are deterministic per seed.

use crate::error::{Error, Result};
use crate::numeric::logsumexp;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;
use rand_distr::{Distribution, StandardNormal};

/// Random-walk chain parameters.
///
/// `proposal_scale` is the per-coordinate standard deviation of the Gaussian
/// proposal; aim for a 20-50% acceptance rate. There is no auto-tuning, so
/// runs stay reproducible.
#[derive(Debug, Clone)]
pub struct ChainConfig {
    /// Total steps, including burn-in.
    pub n_steps: usize,
    pub burn_in: usize,
    pub proposal_scale: f64,
    pub seed: u64,
    /// Record the observable every `thin` post-burn-in steps.
    pub thin: usize,
}

impl ChainConfig {
    fn validate(&self) -> Result<()> {
        if !(self.proposal_scale > 0.0) {
            return Err(Error::InvalidChainConfig(format!(
                "proposal_scale must be positive, got {}",
                self.proposal_scale
            )));
        }
        if self.thin == 0 {
            return Err(Error::InvalidChainConfig("thin must be >= 1".into()));
        }
        if self.n_steps <= self.burn_in {
            return Err(Error::EmptyChain);
        }
        Ok(())
    }

    fn n_samples(&self) -> usize {
        (self.n_steps - self.burn_in).div_ceil(self.thin)
    }
}

/// Sample-mean estimate with batch-means standard errors.
#[derive(Debug, Clone, PartialEq)]
pub struct Estimate {
    pub value: Vec<f64>,
    pub std_error: Vec<f64>,
    pub n_effective_batches: usize,
    /// Fraction of accepted proposals over the whole run.
    pub acceptance_rate: f64,
}

/// Streaming batch-means accumulator: the sample count is known up front,
/// so batches can be closed on the fly without storing the chain.
struct BatchMeans {
    dim: usize,
    n_batches: usize,
    batch_len: usize,
    seen: usize,
    total_sum: Vec<f64>,
    batch_sum: Vec<f64>,
    batch_mean_sum: Vec<f64>,
    batch_mean_sq_sum: Vec<f64>,
}

impl BatchMeans {
    fn new(dim: usize, n_samples: usize) -> Self {
        let n_batches = (n_samples as f64).sqrt().floor() as usize;
        let n_batches = n_batches.max(1);
        BatchMeans {
            dim,
            n_batches,
            batch_len: n_samples / n_batches,
            seen: 0,
            total_sum: vec![0.0; dim],
            batch_sum: vec![0.0; dim],
            batch_mean_sum: vec![0.0; dim],
            batch_mean_sq_sum: vec![0.0; dim],
        }
    }

    fn push(&mut self, sample: &[f64]) {
        for (acc, &s) in self.total_sum.iter_mut().zip(sample) {
            *acc += s;
        }
        // Samples beyond n_batches * batch_len only feed the overall mean.
        if self.seen < self.n_batches * self.batch_len {
            for (acc, &s) in self.batch_sum.iter_mut().zip(sample) {
                *acc += s;
            }
            if (self.seen + 1) % self.batch_len == 0 {
                for i in 0..self.dim {
                    let mean = self.batch_sum[i] / self.batch_len as f64;
                    self.batch_mean_sum[i] += mean;
                    self.batch_mean_sq_sum[i] += mean * mean;
                    self.batch_sum[i] = 0.0;
                }
            }
        }
        self.seen += 1;
    }

    fn finish(self, acceptance_rate: f64) -> Estimate {
        let value: Vec<f64> = self
            .total_sum
            .iter()
            .map(|s| s / self.seen as f64)
            .collect();
        let b = self.n_batches as f64;
        let std_error: Vec<f64> = if self.n_batches < 2 {
            vec![f64::INFINITY; self.dim]
        } else {
            (0..self.dim)
                .map(|i| {
                    let mean = self.batch_mean_sum[i] / b;
                    let var = (self.batch_mean_sq_sum[i] / b - mean * mean).max(0.0) * b
                        / (b - 1.0);
                    (var / b).sqrt()
                })
                .collect()
        };
        Estimate {
            value,
            std_error,
            n_effective_batches: self.n_batches,
            acceptance_rate,
        }
    }
}

fn propose(rng: &mut ChaCha12Rng, current: &[f64], scale: f64, out: &mut [f64]) {
    for (o, &c) in out.iter_mut().zip(current) {
        let z: f64 = StandardNormal.sample(rng);
        *o = c + scale * z;
    }
}

/// Random-walk Metropolis estimate of the mean of `observable` under
/// p(d) ~ exp(-beta * energy(d)).
pub fn metropolis<E, O>(
    energy_fn: E,
    beta: f64,
    init: &[f64],
    observable: O,
    cfg: &ChainConfig,
) -> Result<Estimate>
where
    E: Fn(&[f64]) -> f64,
    O: Fn(&[f64]) -> Vec<f64>,
{
    if !(beta > 0.0) {
        return Err(Error::NonPositiveBeta(beta));
    }
    cfg.validate()?;
    let mut rng = ChaCha12Rng::seed_from_u64(cfg.seed);

    let mut d = init.to_vec();
    let mut energy = energy_fn(&d);
    if !energy.is_finite() {
        return Err(Error::NonFiniteEnergy { step: 0 });
    }

    let mut acc = BatchMeans::new(observable(&d).len(), cfg.n_samples());
    let mut proposal = vec![0.0; d.len()];
    let mut accepted = 0usize;

    for step in 0..cfg.n_steps {
        propose(&mut rng, &d, cfg.proposal_scale, &mut proposal);
        let proposed_energy = energy_fn(&proposal);
        if !proposed_energy.is_finite() {
            return Err(Error::NonFiniteEnergy { step });
        }
        let delta = proposed_energy - energy;
        let u: f64 = rng.random();
        if delta <= 0.0 || u < (-beta * delta).exp() {
            d.copy_from_slice(&proposal);
            energy = proposed_energy;
            accepted += 1;
        }
        if step >= cfg.burn_in && (step - cfg.burn_in) % cfg.thin == 0 {
            acc.push(&observable(&d));
        }
    }

    Ok(acc.finish(accepted as f64 / cfg.n_steps as f64))
}

/// Metropolis on the continuous state alternated with exact heat-bath
/// resampling of a finite spin variable.
///
/// `spin_log_weights(d)` must return, for every spin state, a value equal to
/// the log conditional probability up to a common constant (for a Boltzmann
/// ensemble: -beta * E(d, xi)). The heat-bath step normalizes them and draws
/// the spin exactly.
pub fn metropolis_with_spin<E, W, O>(
    joint_energy: E,
    beta: f64,
    init_d: &[f64],
    init_spin: usize,
    spin_log_weights: W,
    observable: O,
    cfg: &ChainConfig,
) -> Result<Estimate>
where
    E: Fn(&[f64], usize) -> f64,
    W: Fn(&[f64]) -> Vec<f64>,
    O: Fn(&[f64], usize) -> Vec<f64>,
{
    if !(beta > 0.0) {
        return Err(Error::NonPositiveBeta(beta));
    }
    cfg.validate()?;
    let mut rng = ChaCha12Rng::seed_from_u64(cfg.seed);

    let mut d = init_d.to_vec();
    let mut spin = init_spin;
    let n_states = spin_log_weights(&d).len();
    if n_states == 0 || init_spin >= n_states {
        return Err(Error::InvalidChainConfig(format!(
            "initial spin {init_spin} out of range for {n_states} states"
        )));
    }
    let mut energy = joint_energy(&d, spin);
    if !energy.is_finite() {
        return Err(Error::NonFiniteEnergy { step: 0 });
    }

    let mut acc = BatchMeans::new(observable(&d, spin).len(), cfg.n_samples());
    let mut proposal = vec![0.0; d.len()];
    let mut accepted = 0usize;

    for step in 0..cfg.n_steps {
        // (i) Metropolis move on d at fixed spin.
        propose(&mut rng, &d, cfg.proposal_scale, &mut proposal);
        let proposed_energy = joint_energy(&proposal, spin);
        if !proposed_energy.is_finite() {
            return Err(Error::NonFiniteEnergy { step });
        }
        let delta = proposed_energy - energy;
        let u: f64 = rng.random();
        if delta <= 0.0 || u < (-beta * delta).exp() {
            d.copy_from_slice(&proposal);
            energy = proposed_energy;
            accepted += 1;
        }

        // (ii) Exact heat-bath draw of the spin from its conditional.
        let log_w = spin_log_weights(&d);
        let norm = logsumexp(&log_w);
        if !norm.is_finite() {
            return Err(Error::NonFiniteEnergy { step });
        }
        let u: f64 = rng.random();
        let mut cumulative = 0.0;
        let previous_spin = spin;
        spin = n_states - 1;
        for (i, lw) in log_w.iter().enumerate() {
            cumulative += (lw - norm).exp();
            if u < cumulative {
                spin = i;
                break;
            }
        }
        if spin != previous_spin {
            energy = joint_energy(&d, spin);
        }

        if step >= cfg.burn_in && (step - cfg.burn_in) % cfg.thin == 0 {
            acc.push(&observable(&d, spin));
        }
    }

    Ok(acc.finish(accepted as f64 / cfg.n_steps as f64))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(seed: u64) -> ChainConfig {
        ChainConfig {
            n_steps: 60_000,
            burn_in: 5_000,
            proposal_scale: 1.0,
            seed,
            thin: 1,
        }
    }

    #[test]
    fn rejects_degenerate_chain_lengths() {
        let bad = ChainConfig {
            n_steps: 100,
            burn_in: 100,
            proposal_scale: 1.0,
            seed: 1,
            thin: 1,
        };
        let err = metropolis(|_| 0.0, 1.0, &[0.0], |d| d.to_vec(), &bad).unwrap_err();
        assert_eq!(err, Error::EmptyChain);
    }

    #[test]
    fn flat_energy_accepts_every_proposal() {
        let est = metropolis(|_| 1.5, 1.0, &[0.0], |d| d.to_vec(), &cfg(3)).unwrap();
        assert_eq!(est.acceptance_rate, 1.0);
    }

    #[test]
    fn quadratic_second_moment() {
        // E = 1/2 * 4 d^2 at beta = 1: variance 1/4.
        let est = metropolis(
            |d| 2.0 * d[0] * d[0],
            1.0,
            &[0.0],
            |d| vec![d[0] * d[0]],
            &cfg(42),
        )
        .unwrap();
        assert!(
            (est.value[0] - 0.25).abs() <= 3.0 * est.std_error[0],
            "{} +- {}",
            est.value[0],
            est.std_error[0]
        );
        assert!(est.acceptance_rate > 0.2 && est.acceptance_rate < 0.9);
    }

    #[test]
    fn seed_determinism_is_bitwise() {
        let run = || {
            metropolis(
                |d| d.iter().map(|x| x * x).sum::<f64>(),
                0.7,
                &[0.3, -0.1],
                |d| d.to_vec(),
                &cfg(9),
            )
            .unwrap()
        };
        let a = run();
        let b = run();
        assert_eq!(a, b);
        for (x, y) in a.value.iter().zip(&b.value) {
            assert_eq!(x.to_bits(), y.to_bits());
        }
    }

    #[test]
    fn non_finite_energy_is_reported() {
        let err = metropolis(
            |d| if d[0].abs() > 0.5 { f64::NAN } else { 0.0 },
            1.0,
            &[0.0],
            |d| d.to_vec(),
            &cfg(5),
        )
        .unwrap_err();
        assert!(matches!(err, Error::NonFiniteEnergy { .. }));
    }

    #[test]
    fn two_well_occupation_matches_boltzmann_ratio() {
        // Steep quadratic wells at -1 and +1, the right one raised by delta.
        let delta = 0.8;
        let beta = 1.3;
        let energy = |d: &[f64]| {
            let left = 50.0 * (d[0] + 1.0) * (d[0] + 1.0);
            let right = 50.0 * (d[0] - 1.0) * (d[0] - 1.0) + delta;
            left.min(right)
        };
        let est = metropolis(
            energy,
            beta,
            &[-1.0],
            |d| vec![if d[0] > 0.0 { 1.0 } else { 0.0 }],
            &ChainConfig {
                n_steps: 400_000,
                burn_in: 20_000,
                proposal_scale: 0.6,
                seed: 2024,
                thin: 1,
            },
        )
        .unwrap();
        // Equal curvatures: occupation of the raised well is 1/(1+e^{beta delta}).
        let expected = 1.0 / (1.0 + (beta * delta).exp());
        assert!(
            (est.value[0] - expected).abs() <= 3.0 * est.std_error[0],
            "{} vs {expected} +- {}",
            est.value[0],
            est.std_error[0]
        );
    }

    #[test]
    fn spin_heat_bath_is_uniform_for_equal_weights() {
        let n_states = 7usize;
        let est = metropolis_with_spin(
            |d, _| d[0] * d[0],
            1.0,
            &[0.0],
            0,
            |_| vec![0.0; n_states],
            |_, spin| vec![spin as f64],
            &cfg(11),
        )
        .unwrap();
        let expected = (n_states - 1) as f64 / 2.0;
        assert!(
            (est.value[0] - expected).abs() <= 3.0 * est.std_error[0],
            "{} +- {}",
            est.value[0],
            est.std_error[0]
        );
    }

    #[test]
    fn spin_chain_is_deterministic_per_seed() {
        let run = || {
            metropolis_with_spin(
                |d, s| d[0] * d[0] + s as f64 * 0.3,
                1.0,
                &[0.1],
                1,
                |d| (0..3).map(|s| -(d[0] * d[0] + s as f64 * 0.3)).collect(),
                |d, s| vec![d[0], s as f64],
                &cfg(77),
            )
            .unwrap()
        };
        assert_eq!(run(), run());
    }
}
