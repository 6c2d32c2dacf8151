use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use subcodec_core::channel::{derive_seed, transmit, transmit_with, ChannelConfig};
use subcodec_core::{CodeParams, RecursiveCode, Subspace};

#[test]
fn single_erasure_keeps_a_line_of_the_word() {
    let code = RecursiveCode::new(CodeParams::new(2, 2, 4, 1)).unwrap();
    for trial in 0..1000u64 {
        let (_, v) = code.encode_index(u128::from(trial % 20)).unwrap();
        let cfg = ChannelConfig { kappa: 1, gamma: 0, seed: derive_seed(9, trial) };
        let u = transmit(&v, &cfg).unwrap();
        assert_eq!(u.dim(), 1);
        assert!(u.is_subspace_of(&v).unwrap());
    }
}

#[test]
fn dimension_and_distance_invariants() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for _ in 0..1000 {
        let q = if rng.random_bool(0.5) { 2 } else { 3 };
        let n = 6;
        let v = Subspace::random(q, n, rng.random_range(1..=4), &mut rng).unwrap();
        let kappa = rng.random_range(0..=v.dim());
        let gamma = rng.random_range(0..=n - v.dim() + kappa);
        let u = transmit_with(&v, kappa, gamma, &mut rng).unwrap();
        assert_eq!(u.dim(), v.dim() - kappa + gamma);
        let common = u.intersect(&v).unwrap().dim();
        assert!(common >= v.dim() - kappa);
        let d = u.distance(&v).unwrap();
        assert!(d <= kappa + gamma);
        assert_eq!(d == kappa + gamma, common == v.dim() - kappa);
    }
}

#[test]
fn seeded_runs_repeat() {
    let v = Subspace::from_generators(2, 6, &[[1, 0, 0, 0, 1, 1], [0, 1, 0, 1, 0, 1]]).unwrap();
    let cfg = ChannelConfig { kappa: 1, gamma: 1, seed: 1234 };
    let first = transmit(&v, &cfg).unwrap();
    for _ in 0..5 {
        assert_eq!(transmit(&v, &cfg).unwrap(), first);
    }
    let other = (0..20)
        .map(|s| transmit(&v, &ChannelConfig { seed: s, ..cfg }).unwrap())
        .any(|u| u != first);
    assert!(other);
}
