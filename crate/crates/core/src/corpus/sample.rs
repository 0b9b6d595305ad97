use crate::error::{Error, Result};

use super::patterns::PatternId;
use super::Utterance;

const MODULUS: u64 = (1 << 31) - 1;
const MULTIPLIER: u64 = 16807;

/// The Park–Miller "minimal standard" generator, `x ← 16807·x mod (2³¹−1)`.
#[derive(Debug, Clone)]
pub struct Minstd {
    state: u64,
}

impl Minstd {
    /// Seeds with `(seed mod (2³¹−2)) + 1`, which is always a valid nonzero state.
    pub fn new(seed: u64) -> Self {
        Minstd {
            state: seed % (MODULUS - 1) + 1,
        }
    }

    pub fn state(&self) -> u64 {
        self.state
    }

    /// Advances and returns the new state, in `1..2³¹−1`.
    pub fn next_u32(&mut self) -> u32 {
        self.state = self.state * MULTIPLIER % MODULUS;
        self.state as u32
    }

    /// Draw in `0..bound` by reduction modulo `bound`.
    pub fn below(&mut self, bound: usize) -> usize {
        self.next_u32() as usize % bound
    }
}

/// Indices of a `cap`-sized reproducible selection from `n` items, in
/// ascending order.
///
/// Step `i` of the partial Fisher–Yates shuffle swaps position `i` with
/// `i + below(n − i)`.
pub fn sample_indices(n: usize, cap: usize, seed: u64) -> Result<Vec<usize>> {
    if cap == 0 {
        return Err(Error::Argument("sample cap must be at least 1".into()));
    }
    if n <= cap {
        return Ok((0..n).collect());
    }
    let mut rng = Minstd::new(seed);
    let mut order: Vec<usize> = (0..n).collect();
    for i in 0..cap {
        let j = i + rng.below(n - i);
        order.swap(i, j);
    }
    let mut chosen = order[..cap].to_vec();
    chosen.sort_unstable();
    Ok(chosen)
}

/// Selects at most `cap` hits; the selection keeps input order.
pub fn sample<T: Clone>(hits: &[T], cap: usize, seed: u64) -> Result<Vec<T>> {
    Ok(sample_indices(hits.len(), cap, seed)?
        .into_iter()
        .map(|i| hits[i].clone())
        .collect())
}

/// Samples each pattern's hits separately, grouping every utterance under
/// its primary (first-occurring) pattern, and merges the selections back
/// into input order.
pub fn sample_per_pattern(hits: &[Utterance], cap: usize, seed: u64) -> Result<Vec<Utterance>> {
    if cap == 0 {
        return Err(Error::Argument("sample cap must be at least 1".into()));
    }
    let mut keep = vec![false; hits.len()];
    for id in PatternId::ALL {
        let group: Vec<usize> = hits
            .iter()
            .enumerate()
            .filter(|(_, u)| u.primary_pattern() == Some(id))
            .map(|(i, _)| i)
            .collect();
        for k in sample_indices(group.len(), cap, seed)? {
            keep[group[k]] = true;
        }
    }
    Ok(hits
        .iter()
        .zip(keep)
        .filter(|&(_, k)| k)
        .map(|(u, _)| u.clone())
        .collect())
}
