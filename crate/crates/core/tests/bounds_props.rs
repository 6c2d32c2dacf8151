use num_bigint::BigUint;
use subcodec_core::bounds::{gaussian_binomial, johnson_bound, rate_report, singleton_bound, wang_bound};
use subcodec_core::recursive::is_boundary;
use subcodec_core::{CodeParams, Subspace};

/// `[n; k]_q` from the q-Pascal rule `[n; k] = [n-1; k-1] + q^k [n-1; k]`.
fn q_pascal(n: usize, k: usize, q: u32) -> BigUint {
    let mut row = vec![BigUint::from(1u32)];
    for i in 1..=n {
        let mut next = vec![BigUint::from(1u32); i + 1];
        for j in 1..i {
            next[j] = &row[j - 1] + BigUint::from(q).pow(j as u32) * &row[j];
        }
        row = next;
    }
    row.get(k).cloned().unwrap_or_default()
}

#[test]
fn gaussian_binomial_oracles() {
    for q in [2, 3, 5] {
        for n in 0..=12 {
            for k in 0..=n + 1 {
                let g = gaussian_binomial(n, k, q);
                assert_eq!(g, q_pascal(n, k, q), "[{n};{k}]_{q}");
                if k <= n {
                    assert_eq!(g, gaussian_binomial(n, n - k, q));
                }
            }
        }
    }
}

#[test]
fn gaussian_binomial_counts_subspaces() {
    // every 2-dimensional subspace of F_2^4 from pairs of vectors
    let vectors: Vec<Vec<u32>> = (1u32..16).map(|b| (0..4).map(|i| (b >> i) & 1).collect()).collect();
    let mut planes = std::collections::BTreeSet::new();
    for a in &vectors {
        for b in &vectors {
            let s = Subspace::from_generators(2, 4, &[a, b]).unwrap();
            if s.dim() == 2 {
                planes.insert(s);
            }
        }
    }
    assert_eq!(BigUint::from(planes.len()), gaussian_binomial(4, 2, 2));
}

#[test]
fn reference_values() {
    assert_eq!(singleton_bound(2, 4, 1, 2), BigUint::from(31u32));
    assert_eq!(wang_bound(2, 4, 1, 2).floor, BigUint::from(21u32));
    assert_eq!(johnson_bound(2, 4, 1, 2).unwrap(), BigUint::from(21u32));
    assert_eq!(johnson_bound(4, 8, 2, 2).unwrap(), BigUint::from(79716u32));
    // [10; 2]_2 as an independent product
    let direct = BigUint::from((1u64 << 10) - 1) * BigUint::from((1u64 << 9) - 1) / BigUint::from(3u32);
    assert_eq!(singleton_bound(4, 8, 2, 2), direct);
    assert_eq!(direct, BigUint::from(174251u32));
}

#[test]
fn sweep() {
    for q in [2, 3] {
        for k in 1..=3 {
            for ell in k..=6 {
                for m in ell..=12 {
                    let r = rate_report(&CodeParams::new(q, ell, m, k)).unwrap();
                    assert!(r.within_bounds(), "{q} {ell} {m} {k}");
                    assert!(r.wang.floor <= r.singleton);
                    assert_eq!(r.size > r.base_size, !is_boundary(ell, m, 0, k));
                }
            }
        }
    }
}
