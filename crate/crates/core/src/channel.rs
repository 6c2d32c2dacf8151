//! The operator channel: erase `κ` dimensions of the transmitted subspace
//! and insert `γ` new ones.
//!
//! Randomness comes from [`TrialRng`] (ChaCha8), seeded per trial. Campaigns
//! derive each trial's seed from a master seed and the trial number with
//! [`derive_seed`], so results do not depend on scheduling.

use alloc::vec::Vec;

use rand::{Rng, SeedableRng};

use crate::subspace::Subspace;
use crate::{Error, Result};

pub type TrialRng = rand_chacha::ChaCha8Rng;

pub fn trial_rng(seed: u64) -> TrialRng {
    TrialRng::seed_from_u64(seed)
}

/// SplitMix64 mix of `(master, trial)`.
pub fn derive_seed(master: u64, trial: u64) -> u64 {
    let mut z = master ^ trial.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ChannelConfig {
    pub kappa: usize,
    pub gamma: usize,
    pub seed: u64,
}

fn check_dims(sent: &Subspace, kappa: usize, gamma: usize) -> Result<()> {
    if kappa > sent.dim() {
        return Err(Error::TooManyErasures { kappa, dim: sent.dim() });
    }
    let dim = sent.dim() - kappa + gamma;
    if dim > sent.ambient_dim() {
        return Err(Error::TooManyInsertions { dim, ambient: sent.ambient_dim() });
    }
    Ok(())
}

/// Seeds a [`TrialRng`] from `cfg.seed` and runs [`transmit_with`].
pub fn transmit(sent: &Subspace, cfg: &ChannelConfig) -> Result<Subspace> {
    let mut rng = trial_rng(cfg.seed);
    transmit_with(sent, cfg.kappa, cfg.gamma, &mut rng)
}

/// Keeps a uniformly random `(dim V - κ)`-dimensional subspace of `V` and
/// adds `γ` uniformly random ambient vectors, each resampled until it is
/// independent of what has been received so far.
pub fn transmit_with<R: Rng + ?Sized>(sent: &Subspace, kappa: usize, gamma: usize, rng: &mut R) -> Result<Subspace> {
    check_dims(sent, kappa, gamma)?;
    let q = sent.q();
    let n = sent.ambient_dim();
    let keep = sent.dim() - kappa;
    // full-rank keep × dim(V) coefficient matrix
    let kept = loop {
        let rows: Vec<Vec<u32>> = (0..keep)
            .map(|_| {
                let coeffs: Vec<u32> = (0..sent.dim()).map(|_| rng.random_range(0..q)).collect();
                sent.combine(&coeffs)
            })
            .collect();
        let s = Subspace::from_generators(q, n, &rows)?;
        if s.dim() == keep {
            break s;
        }
    };
    let mut received = kept;
    for _ in 0..gamma {
        loop {
            let v: Vec<u32> = (0..n).map(|_| rng.random_range(0..q)).collect();
            if !received.contains(&v)? {
                received = received.sum(&Subspace::from_generators(q, n, &[v])?)?;
                break;
            }
        }
    }
    Ok(received)
}

/// Deterministic channel output `span(kept ∪ errors)`.
///
/// `kept` must be independent vectors of `sent`, and `errors` must be
/// independent of each other and of `kept`.
pub fn transmit_worst_case<V: AsRef<[u32]>>(sent: &Subspace, kept: &[V], errors: &[V]) -> Result<Subspace> {
    let q = sent.q();
    let n = sent.ambient_dim();
    for v in kept {
        if !sent.contains(v.as_ref())? {
            return Err(Error::NotInSubspace);
        }
    }
    let kept_space = Subspace::from_generators(q, n, kept)?;
    if kept_space.dim() != kept.len() {
        return Err(Error::DependentVectors);
    }
    check_dims(sent, sent.dim() - kept.len(), errors.len())?;
    let error_space = Subspace::from_generators(q, n, errors)?;
    let received = kept_space.sum(&error_space)?;
    if received.dim() != kept.len() + errors.len() {
        return Err(Error::DependentVectors);
    }
    Ok(received)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn plane() -> Subspace {
        Subspace::from_generators(2, 4, &[vec![1, 0, 0, 1], vec![0, 1, 1, 0]]).unwrap()
    }

    #[test]
    fn noiseless_and_full_erasure() {
        let v = plane();
        let cfg = ChannelConfig { kappa: 0, gamma: 0, seed: 3 };
        assert_eq!(transmit(&v, &cfg).unwrap(), v);
        let cfg = ChannelConfig { kappa: 2, gamma: 0, seed: 3 };
        assert!(transmit(&v, &cfg).unwrap().is_zero());
    }

    #[test]
    fn dimension_errors() {
        let v = plane();
        let cfg = ChannelConfig { kappa: 3, gamma: 0, seed: 0 };
        assert_eq!(transmit(&v, &cfg), Err(Error::TooManyErasures { kappa: 3, dim: 2 }));
        let cfg = ChannelConfig { kappa: 0, gamma: 3, seed: 0 };
        assert_eq!(transmit(&v, &cfg), Err(Error::TooManyInsertions { dim: 5, ambient: 4 }));
    }

    #[test]
    fn worst_case_channel() {
        let v = plane();
        let basis = v.rows().to_vec();
        let none: Vec<Vec<u32>> = Vec::new();
        assert_eq!(transmit_worst_case(&v, &basis, &none).unwrap(), v);
        let inside = vec![basis[0].clone()];
        assert_eq!(
            transmit_worst_case(&v, &inside, &inside),
            Err(Error::DependentVectors)
        );
        let outside = vec![vec![1, 0, 0, 0]];
        assert_eq!(transmit_worst_case(&v, &outside, &none), Err(Error::NotInSubspace));
    }

    #[test]
    fn seeds_are_spread() {
        let a = derive_seed(7, 0);
        let b = derive_seed(7, 1);
        let c = derive_seed(8, 0);
        assert!(a != b && a != c && b != c);
        assert_eq!(derive_seed(7, 0), a);
    }
}
