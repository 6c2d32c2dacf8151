//! Invariant suites run by `subcodec selfcheck`, all at pinned seeds.

use std::panic::{catch_unwind, AssertUnwindSafe};

use rand::{Rng, SeedableRng};
use serde::Serialize;
use subcodec_core::channel::TrialRng;
use subcodec_core::kk::{KkCode, KkOutcome};
use subcodec_core::recursive::{cardinality, cardinality_closed_form, distance_profile, DEFAULT_ENUMERATION_LIMIT};
use subcodec_core::{bounds, CodeParams, FieldElement, GaloisField, HSchedule, LinearizedPoly, ModulusTable, RecursiveCode, Subspace};

use crate::campaign::{self, BranchFilter, CampaignSpec};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn field(table: &ModulusTable, q: u32, m: usize) -> Result<GaloisField, String> {
    table.spec(q, m).map(GaloisField::new).map_err(|e| format!("field q={q} m={m}: {e}"))
}

fn modulus_table(table: &ModulusTable) -> Outcome {
    match table.validate() {
        Ok(()) => Ok(format!("{} override(s) valid", table.entries().count())),
        Err((q, m, e)) => Err(format!("entry q={q} m={m}: {e}")),
    }
}

fn field_laws(table: &ModulusTable) -> Outcome {
    let mut rng = TrialRng::seed_from_u64(1);
    let mut count = 0;
    for q in [2, 3] {
        for m in 1..=8 {
            let f = field(table, q, m)?;
            for _ in 0..20 {
                let (a, b, c) = (f.random(&mut rng), f.random(&mut rng), f.random(&mut rng));
                ensure(f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c)), || format!("distributivity in F_{q}^{m}"))?;
                ensure(f.mul(a, f.mul(b, c)) == f.mul(f.mul(a, b), c), || format!("associativity in F_{q}^{m}"))?;
                ensure(f.add(a, f.neg(a)).is_zero(), || format!("additive inverse in F_{q}^{m}"))?;
                if !a.is_zero() {
                    let inv = f.inv(a).map_err(|e| e.to_string())?;
                    ensure(f.mul(a, inv) == FieldElement::ONE, || format!("inverse in F_{q}^{m}"))?;
                    ensure(f.pow(a, f.order() - 1) == FieldElement::ONE, || format!("group order in F_{q}^{m}"))?;
                }
                count += 1;
            }
        }
    }
    Ok(format!("{count} triples over 16 fields"))
}

fn frobenius_order(table: &ModulusTable) -> Outcome {
    let mut rng = TrialRng::seed_from_u64(2);
    for (q, m) in [(2, 4), (2, 8), (3, 5), (5, 3)] {
        let f = field(table, q, m)?;
        for _ in 0..50 {
            let a = f.random(&mut rng);
            let mut x = a;
            for _ in 0..m {
                x = f.frobenius(x, 1);
            }
            ensure(x == a, || format!("Frobenius^m is not the identity in F_{q}^{m}"))?;
            ensure(f.frobenius(a, 1) == f.pow(a, u64::from(q)), || format!("Frobenius is not a^q in F_{q}^{m}"))?;
        }
    }
    Ok("phi^m = id on 200 samples".into())
}

fn random_space(rng: &mut TrialRng, q: u32, n: usize) -> Result<Subspace, String> {
    let r = rng.random_range(0..=n);
    Subspace::random(q, n, r, rng).map_err(|e| e.to_string())
}

fn subspace_formula() -> Outcome {
    let mut rng = TrialRng::seed_from_u64(3);
    for _ in 0..1000 {
        let (q, n) = if rng.random_bool(0.5) { (2, 6) } else { (3, 4) };
        let u = random_space(&mut rng, q, n)?;
        let v = random_space(&mut rng, q, n)?;
        let meet = u.intersect(&v).map_err(|e| e.to_string())?;
        let join = u.sum(&v).map_err(|e| e.to_string())?;
        ensure(meet.dim() + join.dim() == u.dim() + v.dim(), || "dim(U+V) + dim(U∩V) != dim U + dim V".into())?;
        ensure(Subspace::from_generators(q, n, u.rows()).ok() == Some(u.clone()), || "RREF not idempotent".into())?;
    }
    Ok("1000 pairs".into())
}

fn subspace_metric() -> Outcome {
    let mut rng = TrialRng::seed_from_u64(4);
    let d = |a: &Subspace, b: &Subspace| a.distance(b).map_err(|e| e.to_string());
    for _ in 0..1000 {
        let u = random_space(&mut rng, 2, 5)?;
        let v = random_space(&mut rng, 2, 5)?;
        let w = random_space(&mut rng, 2, 5)?;
        ensure(d(&u, &u)? == 0, || "d(U,U) != 0".into())?;
        ensure((d(&u, &v)? == 0) == (u == v), || "d(U,V) = 0 for U != V".into())?;
        ensure(d(&u, &v)? == d(&v, &u)?, || "distance not symmetric".into())?;
        ensure(d(&u, &v)? <= d(&u, &w)? + d(&w, &v)?, || "triangle inequality".into())?;
    }
    Ok("1000 triples".into())
}

fn random_poly(f: &GaloisField, rng: &mut TrialRng, max_deg: usize) -> LinearizedPoly {
    let d = rng.random_range(0..=max_deg);
    LinearizedPoly::new((0..=d).map(|_| f.random(rng)).collect())
}

fn linearized_linearity(table: &ModulusTable) -> Outcome {
    let f = field(table, 2, 4)?;
    let mut rng = TrialRng::seed_from_u64(5);
    for _ in 0..200 {
        let p = random_poly(&f, &mut rng, 3);
        let (a, b) = (f.random(&mut rng), f.random(&mut rng));
        ensure(p.evaluate(&f, f.add(a, b)) == f.add(p.evaluate(&f, a), p.evaluate(&f, b)), || "L(a+b) != L(a)+L(b)".into())?;
    }
    Ok("200 samples in F_16".into())
}

fn compose_left_divide(table: &ModulusTable) -> Outcome {
    let f = field(table, 2, 6)?;
    let mut rng = TrialRng::seed_from_u64(6);
    let mut pairs = 0;
    while pairs < 100 {
        let g = random_poly(&f, &mut rng, 3);
        if g.is_zero() {
            continue;
        }
        let h = random_poly(&f, &mut rng, 3);
        let gh = g.compose(&f, &h);
        let x = f.random(&mut rng);
        ensure(gh.evaluate(&f, x) == g.evaluate(&f, h.evaluate(&f, x)), || "composition disagrees pointwise".into())?;
        ensure(gh.left_divide(&f, &g).map_err(|e| e.to_string())? == Some(h), || "left division lost the quotient".into())?;
        pairs += 1;
    }
    Ok("100 pairs in F_64".into())
}

fn kk_round_trip(table: &ModulusTable) -> Outcome {
    let code = KkCode::with_polynomial_basis(field(table, 2, 4)?, 2, 1).map_err(|e| e.to_string())?;
    for i in 0..16 {
        let w = code.encode_index(i).map_err(|e| e.to_string())?;
        match code.decode(&w).map_err(|e| e.to_string())? {
            KkOutcome::Decoded { codeword, .. } if codeword == w => {}
            _ => return Err(format!("codeword {i} of K[6,2,1] not recovered")),
        }
    }
    Ok("16 codewords of K[6,2,1]".into())
}

fn distance_check(params: CodeParams) -> Outcome {
    let (ell, k) = (params.ell, params.k);
    let code = RecursiveCode::new(params).map_err(|e| e.to_string())?;
    let words: Vec<Subspace> = code
        .enumerate(DEFAULT_ENUMERATION_LIMIT)
        .map_err(|e| e.to_string())?
        .into_iter()
        .map(|(_, w)| w)
        .collect();
    let Some(p) = distance_profile(&words).map_err(|e| e.to_string())? else {
        return Ok("single codeword".into());
    };
    let detail = format!("{} words, max intersection {}, min distance {}", words.len(), p.max_intersection, p.min_distance);
    ensure(p.max_intersection == k - 1 && p.min_distance == 2 * (ell - k + 1), || detail.clone())?;
    Ok(detail)
}

fn cardinality_agreement() -> Outcome {
    let zeros = HSchedule::zeros();
    let e = |e: subcodec_core::Error| e.to_string();
    let small = (cardinality(2, 2, 4, 1, &zeros).map_err(e)?, cardinality_closed_form(2, 2, 4, 1, &zeros).map_err(e)?);
    let enumerated = RecursiveCode::new(CodeParams::new(2, 2, 4, 1)).map_err(e)?.enumerate(1000).map_err(e)?.len() as u128;
    let large = (cardinality(2, 4, 8, 2, &zeros).map_err(e)?, cardinality_closed_form(2, 4, 8, 2, &zeros).map_err(e)?);
    let detail = format!("N(6,2,1) = {}/{}/{enumerated}, N(12,4,2) = {}/{}", small.0, small.1, large.0, large.1);
    ensure(small == (20, 20) && enumerated == 20 && large == (65792, 65792), || detail.clone())?;
    Ok(detail)
}

fn bounds_reference() -> Outcome {
    let s = bounds::singleton_bound(2, 4, 1, 2);
    let w = bounds::wang_bound(2, 4, 1, 2).floor;
    let j = bounds::johnson_bound(2, 4, 1, 2).map_err(|e| e.to_string())?;
    let j2 = bounds::johnson_bound(4, 8, 2, 2).map_err(|e| e.to_string())?;
    let detail = format!("singleton {s}, wang {w}, johnson {j}, johnson(12,4,2) {j2}");
    ensure(s == 31u32.into() && w == 21u32.into() && j == 21u32.into() && j2 == 79716u32.into(), || detail.clone())?;
    Ok(detail)
}

fn decoding_radius(params: CodeParams) -> Outcome {
    let code = RecursiveCode::new(params).map_err(|e| e.to_string())?;
    let spec = CampaignSpec {
        cells: campaign::grid(&code, code.radius() - 1),
        trials: 100,
        seed: 7,
        branch: BranchFilter::Any,
        timing: false,
    };
    let records = campaign::run(&code, &spec).map_err(|e| e.to_string())?;
    let failed = records.iter().filter(|r| !r.success()).count();
    let detail = format!("{} trials over {} cells, {failed} failed", records.len(), spec.cells.len());
    ensure(failed == 0, || detail.clone())?;
    Ok(detail)
}

fn run_one(name: &str, f: impl FnOnce() -> Outcome) -> Check {
    let (passed, detail) = match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(d)) => (true, d),
        Ok(Err(d)) => (false, d),
        Err(_) => (false, "panicked".into()),
    };
    Check { name: name.to_string(), passed, detail }
}

/// Runs every suite. `params` adds code-specific checks for the configured
/// instance; its modulus table is used for every field.
pub fn run(params: &CodeParams) -> Vec<Check> {
    let table = &params.moduli;
    let mut checks = vec![
        run_one("modulus_table", || modulus_table(table)),
        run_one("field_laws", || field_laws(table)),
        run_one("frobenius_order", || frobenius_order(table)),
        run_one("subspace_dimension_formula", subspace_formula),
        run_one("subspace_metric", subspace_metric),
        run_one("linearized_linearity", || linearized_linearity(table)),
        run_one("compose_left_divide", || compose_left_divide(table)),
        run_one("kk_round_trip", || kk_round_trip(table)),
        run_one("min_distance_C621", || {
            let mut p = CodeParams::new(2, 2, 4, 1);
            p.moduli = table.clone();
            distance_check(p)
        }),
        run_one("cardinality_agreement", cardinality_agreement),
        run_one("bounds_reference", bounds_reference),
    ];
    let configured = (params.q, params.ell, params.m, params.k) != (2, 2, 4, 1) || !params.h_schedule.is_all_zero();
    let small = cardinality(params.q, params.ell, params.m, params.k, &params.h_schedule).is_ok_and(|n| n <= 10_000);
    if configured && small {
        checks.push(run_one("min_distance_configured", || distance_check(params.clone())));
    }
    checks.push(run_one("decoding_radius", || decoding_radius(params.clone())));
    checks
}
