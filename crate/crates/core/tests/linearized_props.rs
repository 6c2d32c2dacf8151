use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use subcodec_core::field::{FieldElement, GaloisField};
use subcodec_core::LinearizedPoly;

fn random_poly(f: &GaloisField, rng: &mut ChaCha8Rng, max_deg: usize) -> LinearizedPoly {
    let d = rng.random_range(0..=max_deg);
    LinearizedPoly::new((0..=d).map(|_| f.random(rng)).collect())
}

/// `Σ c_i a^{q^i}` by repeated powering, independent of the Frobenius routine.
fn evaluate_by_powers(f: &GaloisField, p: &LinearizedPoly, a: FieldElement) -> FieldElement {
    let mut acc = FieldElement::ZERO;
    let mut e = 1u64;
    for &c in p.coeffs() {
        acc = f.add(acc, f.mul(c, f.pow(a, e)));
        e *= u64::from(f.q());
    }
    acc
}

#[test]
fn evaluation_is_fq_linear() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for (q, m) in [(2, 4), (3, 3), (2, 6)] {
        let f = GaloisField::with_default_modulus(q, m).unwrap();
        for _ in 0..100 {
            let p = random_poly(&f, &mut rng, m - 1);
            let (a, b) = (f.random(&mut rng), f.random(&mut rng));
            let c = rng.random_range(0..q);
            let lhs = p.evaluate(&f, f.add(f.scale(c, a), b));
            let rhs = f.add(f.scale(c, p.evaluate(&f, a)), p.evaluate(&f, b));
            assert_eq!(lhs, rhs);
            assert_eq!(p.evaluate(&f, a), evaluate_by_powers(&f, &p, a));
        }
    }
}

#[test]
fn root_space_is_small() {
    let f = GaloisField::with_default_modulus(2, 4).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for _ in 0..200 {
        let p = random_poly(&f, &mut rng, 3);
        let Some(d) = p.q_degree() else { continue };
        let roots: Vec<FieldElement> = f.elements().filter(|&a| p.evaluate(&f, a).is_zero()).collect();
        // roots form an F_2-subspace of size at most 2^d
        assert!(roots.len().is_power_of_two());
        assert!(roots.len() <= 1 << d);
        for &x in &roots {
            for &y in &roots {
                assert!(roots.contains(&f.add(x, y)));
            }
        }
    }
}

#[test]
fn composition_matches_pointwise_and_associates() {
    let f = GaloisField::with_default_modulus(2, 4).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..100 {
        let g = random_poly(&f, &mut rng, 3);
        let h = random_poly(&f, &mut rng, 3);
        let k = random_poly(&f, &mut rng, 2);
        let gh = g.compose(&f, &h);
        for a in f.elements() {
            assert_eq!(gh.evaluate(&f, a), g.evaluate(&f, h.evaluate(&f, a)));
        }
        assert_eq!(gh.compose(&f, &k), g.compose(&f, &h.compose(&f, &k)));
        if let (Some(dg), Some(dh)) = (g.q_degree(), h.q_degree()) {
            assert_eq!(gh.q_degree(), Some(dg + dh));
        }
    }
}

#[test]
fn left_division_round_trip() {
    let f = GaloisField::with_default_modulus(2, 6).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut done = 0;
    while done < 100 {
        let divisor = random_poly(&f, &mut rng, 3);
        if divisor.is_zero() {
            continue;
        }
        let quotient = random_poly(&f, &mut rng, 3);
        let product = divisor.compose(&f, &quotient);
        assert_eq!(product.left_divide(&f, &divisor).unwrap(), Some(quotient));
        done += 1;
    }
    assert!(LinearizedPoly::identity().left_divide(&f, &LinearizedPoly::zero()).is_err());
}

#[test]
fn q_degree_of_zero_is_minus_infinity() {
    assert_eq!(LinearizedPoly::zero().q_degree(), None);
    assert_eq!(LinearizedPoly::new(vec![FieldElement::ZERO; 3]).q_degree(), None);
    assert_eq!(LinearizedPoly::identity().q_degree(), Some(0));
}
