use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use subcodec_core::channel::transmit_with;
use subcodec_core::kk::{KkCode, KkOutcome, DEFAULT_ORACLE_LIMIT};
use subcodec_core::{GaloisField, Subspace};

fn kk(q: u32, ell: usize, m: usize, k: usize) -> KkCode {
    KkCode::with_polynomial_basis(GaloisField::with_default_modulus(q, m).unwrap(), ell, k).unwrap()
}

fn codewords(code: &KkCode) -> Vec<Subspace> {
    (0..code.cardinality().unwrap()).map(|i| code.encode_index(i).unwrap()).collect()
}

#[test]
fn every_codeword_round_trips() {
    let code = kk(2, 2, 4, 1);
    let words = codewords(&code);
    assert_eq!(words.len(), 16);
    for (i, w) in words.iter().enumerate() {
        assert_eq!(w.dim(), 2);
        match code.decode(w).unwrap() {
            KkOutcome::Decoded { message, codeword } => {
                assert_eq!(&codeword, w);
                assert_eq!(code.message_index(&message).unwrap(), i as u128);
            }
            KkOutcome::Failure => panic!("codeword {i} not decoded"),
        }
    }
}

#[test]
fn distances_exhaustive() {
    for m in 1..=4 {
        for k in 1..=2 {
            for ell in k..=m {
                let code = kk(2, ell, m, k);
                let words = codewords(&code);
                let distinct: BTreeSet<&Subspace> = words.iter().collect();
                assert_eq!(distinct.len(), words.len());
                for (i, u) in words.iter().enumerate() {
                    for v in &words[i + 1..] {
                        assert!(u.intersect(v).unwrap().dim() < k);
                        assert!(u.distance(v).unwrap() >= 2 * (ell - k + 1));
                    }
                }
            }
        }
    }
}

#[test]
fn named_decoding_examples() {
    let code = kk(2, 2, 4, 1);
    let words = codewords(&code);
    let v = &words[5];
    // one-dimensional subspace of a codeword
    let line = Subspace::from_generators(2, 6, &v.rows()[..1]).unwrap();
    assert_eq!(code.decode(&line).unwrap().codeword(), Some(v));
    assert_eq!(code.decode_oracle(&line, DEFAULT_ORACLE_LIMIT).unwrap().codeword(), Some(v));
    // one inserted dimension
    let outside = (0u32..64)
        .map(|b| (0..6).map(|i| (b >> i) & 1).collect::<Vec<u32>>())
        .find(|x| !v.contains(x).unwrap())
        .unwrap();
    let mut gens = v.rows().to_vec();
    gens.push(outside);
    let grown = Subspace::from_generators(2, 6, &gens).unwrap();
    assert_eq!(grown.dim(), 3);
    assert_eq!(code.decode(&grown).unwrap().codeword(), Some(v));
    // the whole space is too far from every codeword
    let full = Subspace::full(2, 6).unwrap();
    assert_eq!(code.decode(&full).unwrap(), KkOutcome::Failure);
    for w in &words {
        assert!(full.distance(w).unwrap() >= code.radius());
    }
}

#[test]
fn agrees_with_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    for (q, ell, m, k) in [(2, 2, 4, 1), (2, 3, 4, 2), (3, 2, 2, 1)] {
        let code = kk(q, ell, m, k);
        let words = codewords(&code);
        let n = ell + m;
        for _ in 0..1000 {
            let received = if rng.random_bool(0.5) {
                let v = &words[rng.random_range(0..words.len())];
                let kappa = rng.random_range(0..=ell);
                let gamma = rng.random_range(0..=(n - ell + kappa).min(2));
                transmit_with(v, kappa, gamma, &mut rng).unwrap()
            } else {
                let r = rng.random_range(0..=n.min(ell + 2));
                Subspace::random(q, n, r, &mut rng).unwrap()
            };
            let fast = code.decode(&received).unwrap();
            let slow = code.decode_oracle(&received, DEFAULT_ORACLE_LIMIT).unwrap();
            assert_eq!(fast.codeword(), slow.codeword(), "{q} {ell} {m} {k}: {received:?}");
        }
    }
}

#[test]
fn guaranteed_radius() {
    let code = kk(2, 3, 6, 2);
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    for _ in 0..300 {
        let index = rng.random_range(0..code.cardinality().unwrap());
        let v = code.encode_index(index).unwrap();
        // radius 2: any kappa + gamma <= 1 with gamma error vectors outside V
        let (kappa, gamma) = [(0, 0), (1, 0), (0, 1)][rng.random_range(0..3)];
        let u = transmit_with(&v, kappa, gamma, &mut rng).unwrap();
        assert_eq!(code.decode(&u).unwrap().codeword(), Some(&v));
    }
}

#[test]
fn oracle_respects_limit() {
    let code = kk(2, 2, 4, 2);
    let u = Subspace::zero(2, 6).unwrap();
    assert!(code.decode_oracle(&u, 10).is_err());
}
