//! Acceptance criteria, one PASS/FAIL line each.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use cosetposet::a7smith::{overgroup_census, smith_fixed_point_check, A7Environment, SmithActionSpec};
use cosetposet::catalog::{catalog_group, default_catalog};
use cosetposet::complexes::{
    is_acyclic, kunneth_join_betti, order_complex, poset_reduced_euler_characteristic, reduced_betti, BettiVector,
};
use cosetposet::coset_poset::{build_coset_poset, build_relative_poset};
use cosetposet::genchecks::{
    check_alternating_claims, check_diagonal_universal, imprimitive_parity_identity, univ_gen_via_maximal_indices,
    universally_p_generates,
};
use cosetposet::hallzeta::{
    as_integer, brute_force_generation_probability, hall_polynomial, poset_moebius_hat, DirichletPolynomial,
};
use cosetposet::sylow::prime_divisors;
use cosetposet::{GeneratedGroup, SubgroupLattice};

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn group(name: &str) -> GeneratedGroup {
    catalog_group(name).unwrap_or_else(|| panic!("{name} missing from catalog")).build().unwrap()
}

/// Lattice with the bound raised to the group order.
fn lattice(g: &GeneratedGroup) -> SubgroupLattice {
    let bound = g.order_u64().unwrap().max(1000);
    SubgroupLattice::enumerate(g, bound).unwrap()
}

fn hall(g: &GeneratedGroup, lat: &SubgroupLattice) -> DirichletPolynomial {
    hall_polynomial(g, lat, &lat.moebius_to_top().unwrap()).unwrap()
}

fn coset_betti(g: &GeneratedGroup) -> BettiVector {
    let lat = lattice(g);
    let poset = build_coset_poset(g, &lat).unwrap();
    reduced_betti(&order_complex(poset.poset()), 2).unwrap()
}

fn relative_betti(g: &GeneratedGroup, n: &GeneratedGroup) -> BettiVector {
    let lat = lattice(g);
    let poset = build_relative_poset(g, n, &lat).unwrap();
    reduced_betti(&order_complex(poset.poset()), 2).unwrap()
}

/// The unique normal subgroup of the given order.
fn normal_of_order(g: &GeneratedGroup, order: usize) -> GeneratedGroup {
    let lat = lattice(g);
    let found: Vec<usize> = (0..lat.len()).filter(|&i| lat.subgroup(i).order() == order && lat.is_normal(i)).collect();
    assert_eq!(found.len(), 1, "expected one normal subgroup of order {order}");
    lat.subgroup_group(found[0])
}

fn criterion_1() -> Outcome {
    let mut checked = 0;
    for entry in default_catalog() {
        let g = entry.build().map_err(|e| e.to_string())?;
        if g.order_u64().unwrap() > 120 {
            continue;
        }
        let lat = lattice(&g);
        let p_minus_one = as_integer(&hall(&g, &lat).evaluate(-1)).ok_or("P(-1) is not an integer")?;
        let poset = build_coset_poset(&g, &lat).map_err(|e| e.to_string())?;
        let chi = poset_reduced_euler_characteristic(poset.poset());
        let hat = poset_moebius_hat(poset.poset());
        ensure(p_minus_one == -chi && chi == hat, || {
            format!("{}: P(-1) = {p_minus_one}, chi = {chi}, moebius = {hat}", entry.name)
        })?;
        checked += 1;
    }
    Ok(format!("{checked} groups with |G| <= 120"))
}

fn criterion_2() -> Outcome {
    let s3 = group("S3");
    let lat = lattice(&s3);
    let poset = build_coset_poset(&s3, &lat).unwrap();
    let chi = poset_reduced_euler_characteristic(poset.poset());
    let betti = coset_betti(&s3);
    let p = as_integer(&hall(&s3, &lat).evaluate(-1));
    ensure(chi == -8 && betti.values() == [0, 0, 8] && p == Some(8), || {
        format!("S3: chi {chi}, betti {:?}, P(-1) {p:?}", betti.values())
    })?;

    let v4 = group("Z2xZ2");
    let lat = lattice(&v4);
    let chi = poset_reduced_euler_characteristic(build_coset_poset(&v4, &lat).unwrap().poset());
    let betti = coset_betti(&v4);
    ensure(chi == -3 && betti.values() == [0, 0, 3], || format!("Z2xZ2: chi {chi}, betti {:?}", betti.values()))?;

    let z4 = group("Z4");
    let lat = lattice(&z4);
    let chi = poset_reduced_euler_characteristic(build_coset_poset(&z4, &lat).unwrap().poset());
    let betti = coset_betti(&z4);
    let z2 = normal_of_order(&z4, 2);
    let rel = build_relative_poset(&z4, &z2, &lat).unwrap();
    let rel_complex = order_complex(rel.poset());
    let rel_betti = reduced_betti(&rel_complex, 2).unwrap();
    ensure(
        chi == 1
            && betti.values() == [0, 1]
            && rel.is_empty()
            && rel_complex.f_vector() == [1]
            && rel_betti.values() == [1],
        || format!("Z4: chi {chi}, betti {:?}, relative betti {:?}", betti.values(), rel_betti.values()),
    )?;
    Ok("S3, Z2xZ2, Z4 and C(Z4,Z2) exact".into())
}

fn criterion_3() -> Outcome {
    let mut groups = 0;
    let mut pairs = 0;
    for entry in default_catalog() {
        let g = entry.build().map_err(|e| e.to_string())?;
        let order = g.order_u64().unwrap();
        if order <= 1 || order > 60 {
            continue;
        }
        let betti = coset_betti(&g);
        ensure(!betti.is_zero(), || format!("{}: C(G) is GF(2)-acyclic", entry.name))?;
        let lat = lattice(&g);
        for n in g.minimal_normal_subgroups().map_err(|e| e.to_string())? {
            let rel = build_relative_poset(&g, &n, &lat).map_err(|e| e.to_string())?;
            let acyclic = is_acyclic(&order_complex(rel.poset()), 2).map_err(|e| e.to_string())?;
            ensure(!acyclic, || format!("{}: C(G,N) acyclic for |N| = {}", entry.name, n.order()))?;
            pairs += 1;
        }
        groups += 1;
    }
    Ok(format!("{groups} groups, {pairs} minimal normal subgroups"))
}

fn criterion_4() -> Outcome {
    let cases = [("S3", 3), ("Z4", 2), ("S4", 4), ("Q8", 2), ("Z6", 3)];
    for (name, n_order) in cases {
        let g = group(name);
        let n = normal_of_order(&g, n_order);
        let quotient = g.quotient_representation(&n).map_err(|e| e.to_string())?;
        let whole = coset_betti(&g);
        let predicted =
            kunneth_join_betti(&coset_betti(&quotient), &relative_betti(&g, &n)).map_err(|e| e.to_string())?;
        ensure(whole == predicted, || {
            format!("{name}: direct {:?} vs join formula {:?}", whole.values(), predicted.values())
        })?;
    }
    Ok("5 pairs".into())
}

fn criterion_5() -> Outcome {
    let mut checked = 0;
    for entry in default_catalog() {
        let g = entry.build().map_err(|e| e.to_string())?;
        let order = g.order_u64().unwrap();
        if order * order > 10_000_000 {
            continue;
        }
        let poly = hall(&g, &lattice(&g));
        for k in [1u32, 2] {
            let oracle = brute_force_generation_probability(&g, k).map_err(|e| e.to_string())?;
            let formula = poly.evaluate(k as i64);
            ensure(formula == oracle, || format!("{} k={k}: formula {formula}, brute force {oracle}", entry.name))?;
        }
        checked += 1;
    }
    Ok(format!("{checked} groups, k in {{1,2}}"))
}

fn criterion_6() -> Outcome {
    let start = Instant::now();
    let nine = check_alternating_claims(9).map_err(|e| e.to_string())?;
    let nine_time = start.elapsed();
    ensure(nine.verdict && nine.tests == 40320, || format!("n=9: verdict {}, {} tests", nine.verdict, nine.tests))?;
    ensure(nine_time < Duration::from_secs(600), || format!("n=9 took {nine_time:?}"))?;
    let seven = check_alternating_claims(7).map_err(|e| e.to_string())?;
    ensure(
        !seven.verdict
            && !seven.witnesses.is_empty()
            && seven.witnesses.iter().all(|w| w.generated_order == 168u32.into())
            && seven.witnesses_recheck(7),
        || format!("n=7: verdict {}, {} witnesses", seven.verdict, seven.witnesses.len()),
    )?;
    let ten = if cfg!(feature = "slow") {
        let ten = check_alternating_claims(10).map_err(|e| e.to_string())?;
        ensure(ten.verdict, || "n=10: verdict false".into())?;
        format!("n=10 true over {} tests", ten.tests)
    } else {
        "n=10 skipped without the slow feature".into()
    };
    Ok(format!("n=9 true in {nine_time:.1?}, n=7 false with {} order-168 witnesses, {ten}", seven.witnesses.len()))
}

fn criterion_7() -> Outcome {
    let start = Instant::now();
    let env = A7Environment::new().map_err(|e| e.to_string())?;
    let census = overgroup_census(&env).map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    let indices: Vec<u64> = census.orders.iter().map(|o| 2520 / o).collect();
    ensure(census.passes() && indices == [15, 15], || format!("{census:?}"))?;
    ensure(elapsed < Duration::from_secs(120), || format!("took {elapsed:?}"))?;
    Ok(format!(
        "{} overgroups of P, 2 with a 7-cycle of index 15, classes {:?}, in {elapsed:.1?}",
        census.overgroup_count, census.class_sizes
    ))
}

fn criterion_8() -> Outcome {
    let env = A7Environment::new().map_err(|e| e.to_string())?;
    let mut parts = Vec::new();
    for (name, g) in [("A7", env.a7.clone()), ("S7", env.s7.clone())] {
        let spec = SmithActionSpec::for_a7(&env, &g).map_err(|e| e.to_string())?;
        let r = smith_fixed_point_check(&spec).map_err(|e| e.to_string())?;
        ensure(r.e_fixed == 0 && r.series_shape && r.pk_fixed == r.translation_fixed, || format!("{name}: {r:?}"))?;
        parts.push(format!("{name}: P x K fixes {}, E fixes 0", r.pk_fixed));
    }
    Ok(parts.join("; "))
}

fn criterion_9() -> Outcome {
    let mut count = 0;
    for n in 2..=40u64 {
        for d in (2..n).filter(|d| n % d == 0) {
            let id = imprimitive_parity_identity(n, d).map_err(|e| e.to_string())?;
            ensure(id.factorial_side == id.binomial_side, || format!("({n},{d}) sides differ"))?;
            if n % 2 == 1 && n <= 35 {
                ensure(id.even && id.holds(), || format!("({n},{d}) not even"))?;
            }
            count += 1;
        }
    }
    Ok(format!("{count} (n,d) pairs"))
}

fn criterion_10() -> Outcome {
    let a5 = GeneratedGroup::alternating(5);
    let k = GeneratedGroup::from_cycle_words(&["(1,2,3,4,5)"], 5).unwrap();
    for t in 1..=2 {
        let report = check_diagonal_universal(&a5, &k, 2, t).map_err(|e| e.to_string())?;
        ensure(report.verdict, || format!("t={t}: diagonal does not universally 2-generate"))?;
        let n = a5.direct_power(t).map_err(|e| e.to_string())?;
        let p = n.sylow(2).map_err(|e| e.to_string())?;
        let kd = k.diagonal_embedding(t).map_err(|e| e.to_string())?;
        let lat = SubgroupLattice::interval_above(&n, &p).map_err(|e| e.to_string())?;
        let rel = build_relative_poset(&n, &n, &lat).map_err(|e| e.to_string())?;
        let fixed = rel.translation_fixed_points(&p, &kd).map_err(|e| e.to_string())?;
        ensure(fixed.is_empty(), || format!("t={t}: {} fixed cosets", fixed.len()))?;
    }
    let mut pairs = 0;
    for entry in default_catalog() {
        let g = entry.build().map_err(|e| e.to_string())?;
        let primes = prime_divisors(g.order_u64().unwrap());
        if primes.is_empty() {
            continue;
        }
        let lat = lattice(&g);
        for &r in &primes {
            let sylow_r = g.sylow(r).map_err(|e| e.to_string())?;
            for &p in &primes {
                let by_index = univ_gen_via_maximal_indices(&g, r, p, &lat).map_err(|e| e.to_string())?;
                let by_sweep = universally_p_generates(&g, &sylow_r, p).map_err(|e| e.to_string())?.verdict;
                ensure(by_index == by_sweep, || format!("{} (p={p}, r={r}): {by_index} vs {by_sweep}", entry.name))?;
                pairs += 1;
            }
        }
    }
    Ok(format!("A5 diagonal t=1,2 with empty fixed sets; {pairs} (G,p,r) triples agree"))
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("reciprocity P(-1) = -chi = moebius", criterion_1),
        ("worked exact values", criterion_2),
        ("coset posets are not GF(2)-acyclic", criterion_3),
        ("join formula for C(G/N) * C(G,N)", criterion_4),
        ("Hall polynomial vs brute force", criterion_5),
        ("alternating generation claims", criterion_6),
        ("A7 overgroups of a Sylow 2-subgroup", criterion_7),
        ("empty fixed set of (P x K) : <theta>", criterion_8),
        ("factorial/binomial parity identity", criterion_9),
        ("universal generation and fixed sets", criterion_10),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|e| {
            let msg = e.downcast_ref::<String>().cloned().or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()));
            Err(format!("panic: {}", msg.unwrap_or_default()))
        });
        let elapsed = start.elapsed();
        match outcome {
            Ok(detail) => println!("PASS {:>2} {name}: {detail} [{elapsed:.1?}]", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {detail} [{elapsed:.1?}]", i + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
