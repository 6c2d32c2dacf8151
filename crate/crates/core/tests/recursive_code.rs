use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use subcodec_core::channel::{transmit_with, transmit_worst_case};
use subcodec_core::recursive::{
    cardinality, cardinality_closed_form, distance_profile, is_boundary, optimize_h, DEFAULT_ENUMERATION_LIMIT,
};
use subcodec_core::{Branch, CodeParams, DecodeOutcome, HSchedule, KkOutcome, RecursiveCode, Subspace};

fn code(q: u32, ell: usize, m: usize, k: usize) -> RecursiveCode {
    RecursiveCode::new(CodeParams::new(q, ell, m, k)).unwrap()
}

/// C[7,3,2] built from C[4,2,2] with one pilot dimension per appended word.
fn h1_code() -> RecursiveCode {
    let params = CodeParams::new(2, 3, 4, 2).with_schedule(HSchedule::zeros().with(7, 1));
    RecursiveCode::new(params).unwrap()
}

fn words(c: &RecursiveCode) -> Vec<Subspace> {
    c.enumerate(DEFAULT_ENUMERATION_LIMIT).unwrap().into_iter().map(|(_, w)| w).collect()
}

/// Unique codeword within the decoding radius, by scanning every word.
fn nearest_by_scan<'a>(words: &'a [Subspace], radius: usize, u: &Subspace) -> Option<&'a Subspace> {
    let mut hits = words.iter().filter(|w| u.distance(w).unwrap() < radius);
    let first = hits.next();
    assert!(hits.next().is_none(), "two codewords inside the radius");
    first
}

#[test]
fn cardinalities_agree() {
    let c = code(2, 2, 4, 1);
    assert_eq!(c.size(), 20);
    assert_eq!(words(&c).len(), 20);
    let zeros = HSchedule::zeros();
    assert_eq!(cardinality_closed_form(2, 2, 4, 1, &zeros).unwrap(), 20);
    assert_eq!(cardinality(2, 4, 8, 2, &zeros).unwrap(), 65792);
    assert_eq!(cardinality_closed_form(2, 4, 8, 2, &zeros).unwrap(), 65792);
    for q in [2, 3] {
        for k in 1..=3 {
            for ell in k..=6 {
                for m in ell..=12 {
                    let Ok(n) = cardinality(q, ell, m, k, &zeros) else { continue };
                    assert_eq!(cardinality_closed_form(q, ell, m, k, &zeros).unwrap(), n, "{q} {ell} {m} {k}");
                }
            }
        }
    }
    assert!(cardinality_closed_form(2, 3, 4, 2, &HSchedule::zeros().with(7, 1)).is_err());
}

#[test]
fn enumeration_matches_recursion_on_small_codes() {
    for (q, ell, m, k) in [(2, 2, 4, 1), (2, 2, 6, 1), (2, 3, 3, 1), (3, 2, 4, 1), (2, 3, 6, 2)] {
        let c = code(q, ell, m, k);
        let ws = words(&c);
        assert_eq!(ws.len() as u128, c.size());
        assert!(ws.iter().all(|w| w.dim() == ell));
        assert_eq!(ws.iter().collect::<BTreeSet<_>>().len(), ws.len());
        let boundary = is_boundary(ell, m, 0, k);
        assert_eq!(c.size() > c.base_size(), !boundary);
        assert!(c.depth() <= (ell + m).div_ceil(ell));
    }
}

#[test]
fn distance_structure() {
    for c in [code(2, 2, 4, 1), h1_code(), code(2, 2, 6, 1), code(3, 2, 4, 1)] {
        let p = c.params();
        let profile = distance_profile(&words(&c)).unwrap().unwrap();
        assert_eq!(profile.max_intersection, p.k - 1);
        assert_eq!(profile.min_distance, 2 * (p.ell - p.k + 1));
    }
}

#[test]
fn h1_instance() {
    let c = h1_code();
    assert_eq!(c.size(), 259);
    assert_eq!(c.appended_size(), 3);
    assert_eq!(c.candidates().len(), 3);
    for (s, v) in c.candidates().iter().enumerate() {
        assert_eq!(v.dim(), 3);
        // exactly one pilot vector (α_s, 0) inside V_σ
        let pilots = (0..3)
            .filter(|&j| {
                let mut e = vec![0; 7];
                e[j] = 1;
                v.contains(&e).unwrap()
            })
            .collect::<Vec<_>>();
        assert_eq!(pilots, [s]);
        let (word, w) = c.encode_index(256 + s as u128).unwrap();
        assert_eq!(&w, v);
        assert_eq!(word.branch, Branch::Appended { sigma: s as u128 + 1, pilots: s..s + 1 });
    }
    assert_eq!(optimize_h(2, 3, 4, 2).unwrap(), (1, 259));
}

#[test]
fn zero_error_round_trip() {
    for c in [code(2, 2, 4, 1), h1_code(), code(2, 2, 6, 1)] {
        for (i, w) in words(&c).iter().enumerate() {
            let out = c.decode(w).unwrap();
            assert_eq!(out.index(), Some(i as u128));
            assert_eq!(out.codeword(), Some(w));
        }
    }
}

#[test]
fn first_appended_word() {
    let c = code(2, 2, 4, 1);
    let (word, w) = c.encode_index(16).unwrap();
    assert_eq!(word.level, 1);
    assert!(!word.is_base());
    assert_eq!(w.rows(), [vec![0, 0, 1, 0, 0, 0], vec![0, 0, 0, 1, 0, 0]]);
    assert!(c.encode_index(20).is_err());
}

#[test]
fn appended_word_with_one_erasure() {
    let c = code(2, 2, 4, 1);
    let ws = words(&c);
    for i in 16..20 {
        let v = &ws[i];
        let kept = [v.rows()[1].clone()];
        let none: [Vec<u32>; 0] = [];
        let u = transmit_worst_case(v, &kept, &none).unwrap();
        assert_eq!(u, transmit_worst_case(v, &kept, &none).unwrap());
        // the base decoder alone fails, the projection path recovers the word
        assert_eq!(c.base_code().decode(&u).unwrap(), KkOutcome::Failure);
        let out = c.decode(&u).unwrap();
        assert_eq!(out.index(), Some(i as u128));
        assert_eq!(nearest_by_scan(&ws, c.radius(), &u), Some(v));
    }
}

fn check_against_scan(c: &RecursiveCode, trials: usize, seed: u64) {
    let ws = words(c);
    let ell = c.params().ell;
    let n = c.ambient_dim();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..trials {
        let i = rng.random_range(0..ws.len());
        let v = &ws[i];
        let kappa = rng.random_range(0..=ell);
        let gamma = rng.random_range(0..=(n - ell + kappa).min(c.radius()));
        let u = transmit_with(v, kappa, gamma, &mut rng).unwrap();
        let out = c.decode(&u).unwrap();
        let expected = nearest_by_scan(&ws, c.radius(), &u);
        assert_eq!(out.codeword(), expected, "sent {i}, kappa {kappa}, gamma {gamma}");
        if kappa + gamma < c.radius() {
            assert_eq!(out.index(), Some(i as u128));
        }
        if let DecodeOutcome::Decoded { index, codeword, .. } = &out {
            assert_eq!(&ws[*index as usize], codeword);
        }
    }
}

#[test]
fn decoder_matches_scan_with_pilots() {
    let c = h1_code();
    check_against_scan(&c, 1000, 31);
    let mut rng = ChaCha8Rng::seed_from_u64(32);
    let ws = words(&c);
    for _ in 0..300 {
        let u = Subspace::random(2, 7, rng.random_range(0..=5), &mut rng).unwrap();
        let expected = nearest_by_scan(&ws, c.radius(), &u).filter(|w| c.candidates().contains(w));
        assert_eq!(c.decode_general(&u).unwrap().codeword(), expected);
    }
}

#[test]
fn decoder_matches_scan_without_pilots() {
    check_against_scan(&code(2, 2, 4, 1), 1000, 41);
    check_against_scan(&code(2, 2, 6, 1), 300, 42);
}

#[test]
fn decoder_rejects_wrong_space() {
    let c = code(2, 2, 4, 1);
    assert!(c.decode(&Subspace::zero(2, 5).unwrap()).is_err());
    assert!(c.decode(&Subspace::zero(3, 6).unwrap()).is_err());
}

#[test]
fn optimizer_keeps_the_base_when_room_allows() {
    for k in 1..=3 {
        for ell in k.max(3)..=6 {
            for m in 2 * ell..=12 {
                assert_eq!(optimize_h(2, ell, m, k).unwrap().0, 0, "{ell} {m} {k}");
            }
        }
    }
    assert_eq!(optimize_h(2, 3, 8, 2).unwrap().0, 0);
}
