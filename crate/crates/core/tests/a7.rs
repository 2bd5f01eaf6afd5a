use cosetposet::a7smith::{
    abelian_antichain_check, check_pgl_strong_generation, check_phi_properties, check_rho_on_power, overgroup_census,
    overgroups_of_sylow2, smith_fixed_point_check, A7Environment, SmithActionSpec,
};
use cosetposet::coset_poset::{build_relative_poset, OvergroupAutomorphism};
use cosetposet::elements::ElementTable;
use cosetposet::{GeneratedGroup, SubgroupLattice};

#[test]
fn environment_and_phi() {
    let env = A7Environment::new().unwrap();
    assert_eq!(env.a7.order_u64(), Some(2520));
    assert_eq!(env.p.order_u64(), Some(8));
    assert_eq!(env.seven_cycle_group().order_u64(), Some(7));
    let phi = check_phi_properties(&env).unwrap();
    assert!(phi.passes(), "{phi:?}");
    assert_eq!(phi.sylow2_count, 315);
    // the chosen P is the smallest invariant one, so it really is invariant
    assert!(env.p.generators().iter().all(|g| env.p.contains(&env.phi.apply(g))));
}

#[test]
fn overgroups_of_the_sylow_subgroup() {
    let env = A7Environment::new().unwrap();
    let overgroups = overgroups_of_sylow2(&env).unwrap();
    assert!(overgroups.iter().any(|h| h.same_group(&env.p)));
    assert!(overgroups.iter().all(|h| env.p.is_subgroup_of(h)));
    let census = overgroup_census(&env).unwrap();
    assert!(census.passes(), "{census:?}");
    for k in &census.with_seven_cycle {
        assert!(check_pgl_strong_generation(k).unwrap());
    }
    // each class of 15 has 15·21/315 = 1 member containing the fixed P
    assert_eq!(census.class_sizes.iter().sum::<usize>() * 21 / 315, 2);
}

#[test]
fn strong_generation_rejects_a4() {
    assert!(check_pgl_strong_generation(&GeneratedGroup::alternating(4)).is_err());
    assert!(!cosetposet::a7smith::conjugate_closure_generates(&GeneratedGroup::alternating(4), 2, 3).unwrap());
}

#[test]
fn rho_on_powers() {
    let env = A7Environment::new().unwrap();
    for t in 1..=2 {
        let r = check_rho_on_power(&env, t).unwrap();
        assert!(r.passes(), "{r:?}");
    }
    assert!(check_rho_on_power(&env, 3).is_err());
}

/// Cosets fixed by left translation by `P` and right translation by `⟨h⟩`,
/// recomputed from element sets.
#[test]
fn translation_fixed_cosets_are_the_two_overgroups() {
    let env = A7Environment::new().unwrap();
    let lat = SubgroupLattice::interval_above(&env.a7, &env.p).unwrap();
    let poset = build_relative_poset(&env.a7, &env.a7, &lat).unwrap();
    let table = lat.table();
    let k = env.seven_cycle_group();
    let fast = poset.translation_fixed_points(&env.p, &k).unwrap();
    let left: Vec<u32> = env.p.generators().iter().map(|x| table.id_of(x).unwrap()).collect();
    let h = table.id_of(&env.seven_cycle).unwrap();
    let brute: Vec<usize> = (0..poset.len())
        .filter(|&v| {
            let coset = poset.coset_elements(v);
            let same = |mut img: Vec<u32>| {
                img.sort_unstable();
                img == coset
            };
            left.iter().all(|&x| same(coset.iter().map(|&y| table.mul(table.inv(x), y)).collect()))
                && same(coset.iter().map(|&y| table.mul(y, h)).collect())
        })
        .collect();
    assert_eq!(fast, brute);
    let census = overgroup_census(&env).unwrap();
    assert_eq!(fast.len(), 2);
    for v in fast {
        let sub = lat.subgroup_group(poset.vertices()[v].subgroup);
        assert!(census.with_seven_cycle.iter().any(|kk| kk.same_group(&sub)));
    }
}

#[test]
fn smith_action_for_a7_and_s7() {
    let env = A7Environment::new().unwrap();
    let a7 = smith_fixed_point_check(&SmithActionSpec::for_a7(&env, &env.a7).unwrap()).unwrap();
    assert!(a7.translation_fixed > 0 && a7.pk_fixed == a7.translation_fixed);
    assert_eq!(a7.e_fixed, 0);
    assert!(a7.series_shape);
    assert_eq!((a7.pk_order, a7.e_order), (56, 112));
    let s7 = smith_fixed_point_check(&SmithActionSpec::for_a7(&env, &env.s7).unwrap()).unwrap();
    assert_eq!(s7.e_fixed, 0);
    assert!(s7.series_shape);
}

#[test]
fn smith_action_is_conjugation_invariant() {
    let env = A7Environment::new().unwrap();
    let base = smith_fixed_point_check(&SmithActionSpec::for_a7(&env, &env.a7).unwrap()).unwrap();
    let table = ElementTable::new(&env.a7).unwrap();
    for id in [1u32, 97, 1234, 2519] {
        let c = table.element(id).clone();
        let x = env.phi.conjugator().conjugate_by(&c);
        let spec = SmithActionSpec {
            g: env.a7.clone(),
            n: env.a7.clone(),
            p: env.p.conjugate_group(&c).unwrap(),
            k: env.seven_cycle_group().conjugate_group(&c).unwrap(),
            theta: OvergroupAutomorphism::new(&env.a7, &env.s7, x).unwrap(),
            prime: 2,
        };
        let r = smith_fixed_point_check(&spec).unwrap();
        assert_eq!((r.translation_fixed, r.e_fixed, r.e_order), (base.translation_fixed, base.e_fixed, base.e_order));
    }
}

#[test]
fn smith_spec_rejects_a_non_normalizing_theta() {
    let env = A7Environment::new().unwrap();
    let spec = SmithActionSpec {
        g: env.a7.clone(),
        n: env.a7.clone(),
        p: env.p.clone(),
        k: env.seven_cycle_group(),
        theta: OvergroupAutomorphism::new(&env.a7, &env.s7, env.seven_cycle.clone()).unwrap(),
        prime: 2,
    };
    assert!(smith_fixed_point_check(&spec).is_err());
}

#[test]
fn abelian_antichains() {
    let s4 = GeneratedGroup::symmetric(4);
    let v4 = GeneratedGroup::from_cycle_words(&["(1,2)(3,4)", "(1,3)(2,4)"], 4).unwrap();
    let r = abelian_antichain_check(&s4, &v4).unwrap();
    assert!(r.passes() && r.size > 0 && r.size.is_multiple_of(4), "{r:?}");
    for entry in cosetposet::catalog::default_catalog() {
        let g = entry.build().unwrap();
        if g.order_u64().unwrap() > 120 || g.is_trivial() {
            continue;
        }
        for n in g.minimal_normal_subgroups().unwrap().into_iter().filter(|n| n.is_abelian()) {
            let r = abelian_antichain_check(&g, &n).unwrap();
            assert!(r.passes(), "{}: {r:?}", entry.name);
        }
    }
}
