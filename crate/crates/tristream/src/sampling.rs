//! Seeded sampling helpers shared by the stream shuffle, the detectors,
//! and the generators.

use rand::Rng;

/// First `k` entries of a seeded Fisher-Yates walk over `0..n`.
///
/// With `k == n` this is a full permutation. The result is a uniform
/// k-subset in uniform order, drawn without replacement.
pub(crate) fn partial_fisher_yates<R: Rng>(n: usize, k: usize, rng: &mut R) -> Vec<usize> {
    debug_assert!(k <= n);
    let mut ids: Vec<usize> = (0..n).collect();
    for i in 0..k {
        let j = rng.random_range(i..n);
        ids.swap(i, j);
    }
    ids.truncate(k);
    ids
}
