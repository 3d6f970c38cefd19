//! Execution strategy for the exhaustive and sampled sweeps.
//!
//! Every heavy check in the crate is a data-parallel loop over an index
//! range. With the `parallel` feature (on by default) those loops run on
//! rayon; without it, or when [`Exec::Sequential`] is requested, they run on
//! the calling thread. Results never depend on the strategy: searches return
//! the lowest failing index, and collections keep index order.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// How a sweep is executed.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Exec {
    Sequential,
    /// Falls back to sequential when the crate is built without `parallel`.
    Parallel,
}

impl Default for Exec {
    fn default() -> Self {
        if cfg!(feature = "parallel") {
            Exec::Parallel
        } else {
            Exec::Sequential
        }
    }
}

impl Exec {
    /// Returns the smallest `i` in `0..len` for which `f` yields `Some`,
    /// together with the value.
    pub fn find_first<T, F>(self, len: u64, f: F) -> Option<(u64, T)>
    where
        T: Send,
        F: Fn(u64) -> Option<T> + Sync + Send,
    {
        match self {
            #[cfg(feature = "parallel")]
            Exec::Parallel => (0..len)
                .into_par_iter()
                .find_map_first(|i| f(i).map(|t| (i, t))),
            _ => (0..len).find_map(|i| f(i).map(|t| (i, t))),
        }
    }

    /// Maps `0..len` through `f`, preserving index order.
    pub fn map_collect<T, F>(self, len: usize, f: F) -> Vec<T>
    where
        T: Send,
        F: Fn(usize) -> T + Sync + Send,
    {
        match self {
            #[cfg(feature = "parallel")]
            Exec::Parallel => (0..len).into_par_iter().map(f).collect(),
            _ => (0..len).map(f).collect(),
        }
    }

    /// Counts indices in `0..len` satisfying `f`.
    pub fn count<F>(self, len: u64, f: F) -> u64
    where
        F: Fn(u64) -> bool + Sync + Send,
    {
        match self {
            #[cfg(feature = "parallel")]
            Exec::Parallel => (0..len).into_par_iter().filter(|&i| f(i)).count() as u64,
            _ => (0..len).filter(|&i| f(i)).count() as u64,
        }
    }
}

const SAMPLE_CHUNK: u64 = 1 << 14;

/// Draws `samples` random tuples, slot `i` uniform below `bounds[i]`, and
/// returns the first one (in draw order) rejected by `check`.
///
/// Draws are split into fixed-size chunks, each with its own ChaCha stream
/// keyed by `(seed, chunk)`, so the drawn tuples and the reported witness are
/// the same for every execution strategy.
pub fn sample_find_first<F>(
    exec: Exec,
    seed: u64,
    samples: u64,
    bounds: &[usize],
    check: F,
) -> Option<Vec<usize>>
where
    F: Fn(&[usize]) -> bool + Sync + Send,
{
    let chunks = samples.div_ceil(SAMPLE_CHUNK);
    exec.find_first(chunks, |chunk| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(chunk);
        let take = SAMPLE_CHUNK.min(samples - chunk * SAMPLE_CHUNK);
        let mut tuple = vec![0usize; bounds.len()];
        for _ in 0..take {
            for (slot, &b) in tuple.iter_mut().zip(bounds) {
                *slot = rng.gen_range(0..b);
            }
            if !check(&tuple) {
                return Some(tuple.clone());
            }
        }
        None
    })
    .map(|(_, t)| t)
}

/// Decodes `index` into `arity` digits base `bound` (little-endian).
pub fn tuple_of(index: u64, arity: usize, bound: usize) -> Vec<usize> {
    mixed_tuple_of(index, &vec![bound; arity])
}

/// Decodes `index` in the little-endian mixed radix `bounds`.
pub fn mixed_tuple_of(index: u64, bounds: &[usize]) -> Vec<usize> {
    let mut rest = index;
    bounds
        .iter()
        .map(|&b| {
            let d = (rest % b as u64) as usize;
            rest /= b as u64;
            d
        })
        .collect()
}

/// Exhaustive sweep over all `arity`-tuples below `bound` when there are at
/// most `exhaustive_limit` of them, otherwise `samples` seeded draws.
/// Returns the first rejected tuple, the number of tuples examined and
/// whether the sweep was exhaustive.
pub fn sweep_tuples<F>(
    exec: Exec,
    arity: usize,
    bound: usize,
    exhaustive_limit: u64,
    samples: u64,
    seed: u64,
    check: F,
) -> (Option<Vec<usize>>, u64, bool)
where
    F: Fn(&[usize]) -> bool + Sync + Send,
{
    sweep_mixed(
        exec,
        &vec![bound; arity],
        exhaustive_limit,
        samples,
        seed,
        check,
    )
}

/// [`sweep_tuples`] over a mixed-radix box.
pub fn sweep_mixed<F>(
    exec: Exec,
    bounds: &[usize],
    exhaustive_limit: u64,
    samples: u64,
    seed: u64,
    check: F,
) -> (Option<Vec<usize>>, u64, bool)
where
    F: Fn(&[usize]) -> bool + Sync + Send,
{
    let total = bounds
        .iter()
        .fold(1u64, |acc, &b| acc.saturating_mul(b as u64));
    if total <= exhaustive_limit {
        let hit = exec
            .find_first(total, |i| {
                let t = mixed_tuple_of(i, bounds);
                (!check(&t)).then_some(t)
            })
            .map(|(_, t)| t);
        (hit, total, true)
    } else {
        (
            sample_find_first(exec, seed, samples, bounds, check),
            samples,
            false,
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn find_first_is_lowest_index() {
        for exec in [Exec::Sequential, Exec::Parallel] {
            let hit = exec.find_first(10_000, |i| (i % 977 == 500).then_some(i * 2));
            assert_eq!(hit, Some((500, 1000)));
        }
    }

    #[test]
    fn sampling_is_strategy_independent() {
        let check = |t: &[usize]| t[0] + t[1] != 17;
        let a = sample_find_first(Exec::Sequential, 9, 100_000, &[20, 20], check);
        let b = sample_find_first(Exec::Parallel, 9, 100_000, &[20, 20], check);
        assert!(a.is_some());
        assert_eq!(a, b);
    }

    #[test]
    fn tuple_decoding() {
        assert_eq!(tuple_of(7, 3, 2), vec![1, 1, 1]);
        assert_eq!(tuple_of(5, 2, 4), vec![1, 1]);
        assert_eq!(mixed_tuple_of(7, &[2, 5]), vec![1, 3]);
    }
}
