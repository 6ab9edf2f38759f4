//! Exact sampling from finitely supported rational laws.
//!
//! All masses are scaled to a common denominator `D`; a draw picks an integer
//! uniformly in `[0, D)` and inverts the cumulative sums. There is no floating
//! point rounding anywhere, so draws follow the table exactly.

use num_bigint::{BigInt, BigUint, RandBigInt};
use num_traits::{Signed, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::rational::{common_denominator, Rational};

/// Owns its generator; make one per thread.
#[derive(Debug, Clone)]
pub struct ExactSampler<T> {
    outcomes: Vec<T>,
    cumulative: Vec<BigUint>,
    total: BigUint,
    rng: ChaCha8Rng,
}

impl<T: Clone> ExactSampler<T> {
    /// Builds a sampler over `(outcome, mass)` pairs in the given order.
    /// Masses must be nonnegative with a positive total; they need not sum to 1.
    pub fn new(entries: impl IntoIterator<Item = (T, Rational)>, seed: u64) -> Result<Self> {
        let entries: Vec<(T, Rational)> = entries.into_iter().collect();
        if entries.iter().any(|(_, p)| p.is_negative()) {
            return Err(Error::InvalidArgument("negative mass in sampling table".into()));
        }
        let denom = common_denominator(entries.iter().map(|(_, p)| p));
        let mut outcomes = Vec::with_capacity(entries.len());
        let mut cumulative = Vec::with_capacity(entries.len());
        let mut running = BigUint::zero();
        for (outcome, p) in entries {
            if p.is_zero() {
                continue;
            }
            let scaled: BigInt = p.numer() * (&denom / p.denom());
            running += scaled.magnitude();
            outcomes.push(outcome);
            cumulative.push(running.clone());
        }
        if running.is_zero() {
            return Err(Error::EmptySupport("sampling table has no mass".into()));
        }
        Ok(Self { outcomes, cumulative, total: running, rng: ChaCha8Rng::seed_from_u64(seed) })
    }

    pub fn draw(&mut self) -> T {
        let u = self.rng.gen_biguint_below(&self.total);
        let idx = self.cumulative.partition_point(|c| *c <= u);
        self.outcomes[idx].clone()
    }
}

impl<T: Clone> Iterator for ExactSampler<T> {
    type Item = T;

    fn next(&mut self) -> Option<T> {
        Some(self.draw())
    }
}
