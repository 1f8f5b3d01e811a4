//! Counting positive values on the Boolean cube.
//!
//! [`estimate_positive_proportion`] is the Monte Carlo estimator used by the
//! verifier; [`exact_counts`] enumerates the whole cube and serves as the
//! ground truth at small sizes. [`required_trials`] evaluates the trial
//! count bound `N >= C * 4 * log2(2 / delta) / epsilon^2`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;

use crate::error::{Error, Result};
use crate::poly::Polynomial;
use crate::scalar::Coefficient;

/// Enumeration guard for the exact counters.
pub const EXACT_COUNT_MAX_VARS: usize = 25;

/// Anything that can be evaluated on cube vertices.
pub trait CubeFunction<C> {
    fn nvars(&self) -> usize;

    /// Value at the vertex whose bit `i - 1` holds `x_i`.
    fn value(&self, bits: u64) -> Result<C>;
}

impl<C: Coefficient> CubeFunction<C> for Polynomial<C> {
    fn nvars(&self) -> usize {
        Polynomial::nvars(self)
    }

    fn value(&self, bits: u64) -> Result<C> {
        self.evaluate_bits(bits)
    }
}

fn tuple_mask(nvars: usize) -> u64 {
    if nvars >= 64 {
        u64::MAX
    } else {
        (1u64 << nvars) - 1
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SignCounts {
    pub positive: u64,
    pub zero: u64,
    pub negative: u64,
}

impl SignCounts {
    pub fn total(&self) -> u64 {
        self.positive + self.zero + self.negative
    }

    pub fn positive_proportion(&self) -> f64 {
        self.positive as f64 / self.total() as f64
    }
}

/// Exact sign counts over all `2^nvars` vertices.
pub fn exact_counts<C, F>(f: &F) -> Result<SignCounts>
where
    C: Coefficient,
    F: CubeFunction<C> + ?Sized,
{
    let nvars = f.nvars();
    if nvars > EXACT_COUNT_MAX_VARS {
        return Err(Error::Capacity { nvars, max: EXACT_COUNT_MAX_VARS });
    }
    let mut counts = SignCounts::default();
    for bits in 0..1u64 << nvars {
        let v = f.value(bits)?;
        if v.is_positive() {
            counts.positive += 1;
        } else if v.is_negative() {
            counts.negative += 1;
        } else {
            counts.zero += 1;
        }
    }
    Ok(counts)
}

/// Number of vertices where `p` is strictly positive.
pub fn exact_positive_count<C: Coefficient>(p: &Polynomial<C>) -> Result<u64> {
    exact_counts(p).map(|c| c.positive)
}

/// Result of a Monte Carlo run.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Estimate {
    pub positives: u64,
    pub trials: u64,
}

impl Estimate {
    pub fn proportion(&self) -> f64 {
        self.positives as f64 / self.trials as f64
    }
}

/// Evaluates `f` on `trials` independent uniform vertices and counts the
/// strictly positive values.
pub fn estimate_positive_proportion<C, F, R>(f: &F, trials: u64, rng: &mut R) -> Result<Estimate>
where
    C: Coefficient,
    F: CubeFunction<C> + ?Sized,
    R: Rng + ?Sized,
{
    if trials == 0 {
        return Err(Error::InvalidParams("at least one trial is required".into()));
    }
    let mask = tuple_mask(f.nvars());
    let mut positives = 0;
    for _ in 0..trials {
        if f.value(rng.gen::<u64>() & mask)?.is_positive() {
            positives += 1;
        }
    }
    Ok(Estimate { positives, trials })
}

/// Splits the trials over `threads` workers. Chunk `j` draws from a
/// ChaCha20 stream `j` keyed by `seed`, so the result depends only on
/// `(seed, threads)`.
pub fn estimate_partitioned<C, F>(f: &F, trials: u64, seed: u64, threads: usize) -> Result<Estimate>
where
    C: Coefficient,
    F: CubeFunction<C> + Sync + ?Sized,
{
    if trials == 0 {
        return Err(Error::InvalidParams("at least one trial is required".into()));
    }
    let threads = threads.clamp(1, trials.min(1024) as usize);
    let chunk_rng = |j: usize| {
        let mut rng = ChaCha20Rng::seed_from_u64(seed);
        rng.set_stream(j as u64);
        rng
    };
    let chunk_len = |j: usize| trials / threads as u64 + u64::from((j as u64) < trials % threads as u64);

    if threads == 1 {
        return estimate_positive_proportion(f, trials, &mut chunk_rng(0));
    }
    let partial: Vec<Result<Estimate>> = std::thread::scope(|scope| {
        let handles: Vec<_> = (0..threads)
            .map(|j| {
                scope.spawn(move || estimate_positive_proportion(f, chunk_len(j), &mut chunk_rng(j)))
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("counting worker panicked"))
            .collect()
    });
    partial.into_iter().try_fold(Estimate { positives: 0, trials: 0 }, |acc, e| {
        let e = e?;
        Ok(Estimate { positives: acc.positives + e.positives, trials: acc.trials + e.trials })
    })
}

/// Parameters of the trial-count bound.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct McConfig {
    pub trials: u64,
    pub epsilon: f64,
    pub delta: f64,
    pub c_const: f64,
}

impl Default for McConfig {
    fn default() -> Self {
        McConfig { trials: 3000, epsilon: 0.03, delta: 2f64.powi(-33), c_const: 0.02 }
    }
}

impl McConfig {
    pub fn validate(&self) -> Result<()> {
        check_bound_args(self.epsilon, self.delta, self.c_const)?;
        if self.trials == 0 {
            return Err(Error::InvalidParams("trials must be at least 1".into()));
        }
        Ok(())
    }

    pub fn required_trials(&self) -> Result<u64> {
        required_trials(self.epsilon, self.delta, self.c_const)
    }

    /// The failure probability the configured trial count buys, i.e. the
    /// bound solved for delta.
    pub fn implied_delta(&self) -> Result<f64> {
        self.validate()?;
        let exponent = self.trials as f64 * self.epsilon * self.epsilon / (4.0 * self.c_const);
        Ok(2.0 * 2f64.powf(-exponent))
    }
}

fn check_bound_args(epsilon: f64, delta: f64, c_const: f64) -> Result<()> {
    if !(epsilon > 0.0 && epsilon < 1.0) {
        return Err(Error::InvalidParams(format!("epsilon {epsilon} outside (0, 1)")));
    }
    if !(delta > 0.0 && delta < 1.0) {
        return Err(Error::InvalidParams(format!("delta {delta} outside (0, 1)")));
    }
    if !(c_const > 0.0 && c_const.is_finite()) {
        return Err(Error::InvalidParams(format!("constant {c_const} must be positive")));
    }
    Ok(())
}

/// `ceil(c_const * 4 * log2(2 / delta) / epsilon^2)`.
pub fn required_trials(epsilon: f64, delta: f64, c_const: f64) -> Result<u64> {
    check_bound_args(epsilon, delta, c_const)?;
    let n = c_const * 4.0 * (2.0 / delta).log2() / (epsilon * epsilon);
    // shave float noise so exact products do not round up a whole trial
    Ok((n - 1e-9).ceil().max(1.0) as u64)
}
