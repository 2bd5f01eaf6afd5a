//! Structure of `A7` around a Sylow 2-subgroup, the involution induced by
//! `x = (1,2)(3,4)(5,6)`, its diagonal version on `A7^t`, and the
//! fixed-point computation for `E = (P × K) ⋊ ⟨θ⟩` on relative coset posets.

use crate::complexes::{order_complex, reduced_betti, BettiVector};
use crate::coset_poset::{build_relative_poset, ActionGroup, OvergroupAutomorphism, ACTION_CLOSURE_LIMIT};
use crate::elements::{ElementSubset, ElementTable};
use crate::error::{Error, Result};
use crate::genchecks::long_cycles;
use crate::group::GeneratedGroup;
use crate::lattice::{SubgroupLattice, DEFAULT_LATTICE_BOUND};
use crate::perm::Permutation;
use crate::products::repeat_blocks;
use crate::sylow::is_p_group;

/// The conjugator inducing the involution of `A7` used throughout.
pub const PHI_CONJUGATOR: &str = "(1,2)(3,4)(5,6)";

pub struct A7Environment {
    pub a7: GeneratedGroup,
    pub s7: GeneratedGroup,
    /// The first `φ`-invariant Sylow 2-subgroup, in order of sorted element ids.
    pub p: GeneratedGroup,
    /// The first 7-cycle, in the listing of [`long_cycles`], whose cyclic
    /// group is `φ`-invariant.
    pub seven_cycle: Permutation,
    pub phi: OvergroupAutomorphism,
    pub sylow2_count: usize,
    pub invariant_sylow2_count: usize,
}

impl A7Environment {
    pub fn new() -> Result<Self> {
        let a7 = GeneratedGroup::alternating(7);
        let s7 = GeneratedGroup::symmetric(7);
        let x = Permutation::parse(PHI_CONJUGATOR, 7)?;
        let phi = OvergroupAutomorphism::new(&a7, &s7, x)?;
        let table = ElementTable::new(&a7)?;
        let gens = generator_ids(&table, &a7);
        let phi_map = phi.id_map(&table);

        let start = a7.sylow(2)?;
        let start_ids = generator_ids(&table, &start);
        let mut sylows = subgroup_class(&table, &gens, &table.generate(&start_ids));
        sylows.sort_by(|a, b| a.elements.cmp(&b.elements));
        let invariant: Vec<&ElementSubset> = sylows.iter().filter(|s| is_invariant(s, &phi_map)).collect();
        let chosen = invariant.first().ok_or_else(|| Error::SearchFailed("no φ-invariant Sylow 2-subgroup".into()))?;
        let p = subset_group(&table, chosen);

        let seven_cycle = long_cycles(7, 7)
            .into_iter()
            .find(|h| {
                let c = GeneratedGroup::cyclic(h.clone());
                phi.normalizes(&c)
            })
            .ok_or_else(|| Error::SearchFailed("no φ-invariant Sylow 7-subgroup".into()))?;

        Ok(A7Environment {
            sylow2_count: sylows.len(),
            invariant_sylow2_count: invariant.len(),
            a7,
            s7,
            p,
            seven_cycle,
            phi,
        })
    }

    pub fn seven_cycle_group(&self) -> GeneratedGroup {
        GeneratedGroup::cyclic(self.seven_cycle.clone())
    }
}

fn generator_ids(table: &ElementTable, g: &GeneratedGroup) -> Vec<u32> {
    g.generators().iter().map(|x| table.id_of(x).expect("inside the table's group")).collect()
}

fn is_invariant(s: &ElementSubset, map: &[u32]) -> bool {
    s.elements.iter().all(|&e| s.contains(map[e as usize]))
}

/// Smallest generating set found greedily from the sorted elements.
fn subset_group(table: &ElementTable, s: &ElementSubset) -> GeneratedGroup {
    let (_, witness) = crate::products::generate_with_witness(table, &s.elements);
    table.subgroup_group(&witness)
}

/// The conjugacy class of a subgroup, as element subsets.
fn subgroup_class(table: &ElementTable, gens: &[u32], start: &ElementSubset) -> Vec<ElementSubset> {
    let mut class = vec![start.clone()];
    let mut k = 0;
    while k < class.len() {
        for &g in gens {
            let c = table.conjugate_subset(&class[k], g);
            if !class.contains(&c) {
                class.push(c);
            }
        }
        k += 1;
    }
    class
}

fn contains_seven_cycle(h: &GeneratedGroup) -> Result<bool> {
    Ok(h.elements()?.iter().any(|e| e.cycle_type().first() == Some(&7)))
}

/// Every subgroup `H` with `P ≤ H ≤ A7`, found by closing `{P}` under
/// single-element extensions.
pub fn overgroups_of_sylow2(env: &A7Environment) -> Result<Vec<GeneratedGroup>> {
    let lattice = SubgroupLattice::interval_above(&env.a7, &env.p)?;
    Ok((0..lattice.len()).map(|i| lattice.subgroup_group(i)).collect())
}

#[derive(Clone, Debug)]
pub struct OvergroupCensus {
    pub overgroup_count: usize,
    /// Proper overgroups of `P` containing a 7-cycle.
    pub with_seven_cycle: Vec<GeneratedGroup>,
    pub orders: Vec<u64>,
    pub class_sizes: Vec<usize>,
    pub conjugate_in_a7: bool,
    pub swapped_by_phi: bool,
    /// Each one has itself as its only minimal normal subgroup.
    pub all_simple: bool,
    pub strong_generation: Vec<bool>,
}

impl OvergroupCensus {
    pub fn passes(&self) -> bool {
        self.with_seven_cycle.len() == 2
            && self.orders == [168, 168]
            && self.class_sizes == [15, 15]
            && !self.conjugate_in_a7
            && self.swapped_by_phi
            && self.all_simple
            && self.strong_generation.iter().all(|&b| b)
    }
}

pub fn overgroup_census(env: &A7Environment) -> Result<OvergroupCensus> {
    let overgroups = overgroups_of_sylow2(env)?;
    let mut with_seven_cycle = Vec::new();
    for h in &overgroups {
        if h.order() != env.a7.order() && contains_seven_cycle(h)? {
            with_seven_cycle.push(h.clone());
        }
    }
    let table = ElementTable::new(&env.a7)?;
    let gens = generator_ids(&table, &env.a7);
    let subsets: Vec<ElementSubset> =
        with_seven_cycle.iter().map(|h| table.generate(&generator_ids(&table, h))).collect();
    let classes: Vec<Vec<ElementSubset>> = subsets.iter().map(|s| subgroup_class(&table, &gens, s)).collect();
    let conjugate_in_a7 = subsets.len() == 2 && classes[0].contains(&subsets[1]);
    let phi_map = env.phi.id_map(&table);
    let image = |s: &ElementSubset| {
        let mut e: Vec<u32> = s.elements.iter().map(|&x| phi_map[x as usize]).collect();
        e.sort_unstable();
        e
    };
    let swapped_by_phi = classes.len() == 2
        && classes[0].iter().all(|k| classes[1].iter().any(|m| m.elements == image(k)))
        && classes[1].iter().all(|k| classes[0].iter().any(|m| m.elements == image(k)));
    let mut all_simple = true;
    for h in &with_seven_cycle {
        let minimal = h.minimal_normal_subgroups()?;
        all_simple &= !h.is_abelian() && minimal.len() == 1 && minimal[0].same_group(h);
    }
    let strong_generation = with_seven_cycle.iter().map(check_pgl_strong_generation).collect::<Result<Vec<_>>>()?;
    Ok(OvergroupCensus {
        overgroup_count: overgroups.len(),
        orders: with_seven_cycle.iter().map(|h| h.order_u64().unwrap_or(0)).collect(),
        class_sizes: classes.iter().map(Vec::len).collect(),
        with_seven_cycle,
        conjugate_in_a7,
        swapped_by_phi,
        all_simple,
        strong_generation,
    })
}

/// For every Sylow 2-subgroup `Q` and Sylow 7-subgroup `R` of an order-168
/// group `K`: is `⟨Q^r : r ∈ R⟩ = K`?
pub fn check_pgl_strong_generation(k: &GeneratedGroup) -> Result<bool> {
    if k.order_u64() != Some(168) {
        return Err(Error::InvalidArgument(format!("expected a group of order 168, got {}", k.order())));
    }
    conjugate_closure_generates(k, 2, 7)
}

/// For all Sylow `p`-subgroups `Q` and Sylow `r`-subgroups `R` of `K`:
/// does `⟨Q^y : y ∈ R⟩` equal `K`?
pub fn conjugate_closure_generates(k: &GeneratedGroup, p: u64, r: u64) -> Result<bool> {
    let table = ElementTable::new(k)?;
    let gens = generator_ids(&table, k);
    let sylow_class = |q: u64| -> Result<Vec<ElementSubset>> {
        let s = k.sylow(q)?;
        Ok(subgroup_class(&table, &gens, &table.generate(&generator_ids(&table, &s))))
    };
    let ps = sylow_class(p)?;
    let rs = sylow_class(r)?;
    for q in &ps {
        for rr in &rs {
            let mut candidates = Vec::new();
            for &y in &rr.elements {
                candidates.extend(table.conjugate_subset(q, y).elements);
            }
            let (closure, _) = crate::products::generate_with_witness(&table, &candidates);
            if closure.len() != table.len() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[derive(Clone, Debug)]
pub struct PhiReport {
    pub phi_squared_identity: bool,
    pub phi_is_outer: bool,
    pub p_invariant: bool,
    pub seven_cycle_invariant: bool,
    pub swaps_classes: bool,
    pub invariant_sylow2_count: usize,
    pub sylow2_count: usize,
}

impl PhiReport {
    pub fn passes(&self) -> bool {
        self.phi_squared_identity
            && self.phi_is_outer
            && self.p_invariant
            && self.seven_cycle_invariant
            && self.swaps_classes
    }
}

pub fn check_phi_properties(env: &A7Environment) -> Result<PhiReport> {
    let x = env.phi.conjugator();
    let census = overgroup_census(env)?;
    Ok(PhiReport {
        phi_squared_identity: (x * x).is_identity(),
        phi_is_outer: !env.a7.contains(x),
        p_invariant: env.phi.normalizes(&env.p),
        seven_cycle_invariant: env.phi.normalizes(&env.seven_cycle_group()),
        swaps_classes: census.swapped_by_phi,
        invariant_sylow2_count: env.invariant_sylow2_count,
        sylow2_count: env.sylow2_count,
    })
}

#[derive(Clone, Debug)]
pub struct RhoReport {
    pub t: usize,
    pub rho_order_two: bool,
    pub normalizes_factors: bool,
    pub normalizes_factor_sylows: bool,
    pub normalizes_product_sylow: bool,
    pub normalizes_diagonal_cycle: bool,
    /// In each factor, the only `ρ`-invariant overgroup of `P_i` containing
    /// `h_i` is the factor itself.
    pub only_invariant_overgroup_is_factor: bool,
}

impl RhoReport {
    pub fn passes(&self) -> bool {
        self.rho_order_two
            && self.normalizes_factors
            && self.normalizes_factor_sylows
            && self.normalizes_product_sylow
            && self.normalizes_diagonal_cycle
            && self.only_invariant_overgroup_is_factor
    }
}

/// `ρ` is conjugation by `(x, …, x)` on `A7^t ≤ S7^t`.
pub fn check_rho_on_power(env: &A7Environment, t: usize) -> Result<RhoReport> {
    if !(1..=2).contains(&t) {
        return Err(Error::InvalidArgument(format!("t = {t} is outside the supported range 1..=2")));
    }
    let n = env.a7.direct_power(t)?;
    let overgroup = env.s7.direct_power(t)?;
    let xt = repeat_blocks(env.phi.conjugator(), t);
    let rho = OvergroupAutomorphism::new(&n, &overgroup, xt.clone())?;
    let rho_order_two = (&xt * &xt).is_identity() && n.generators().iter().any(|g| g.conjugate_by(&xt) != *g);

    let mut normalizes_factors = true;
    let mut normalizes_factor_sylows = true;
    let mut only_invariant = true;
    let mut p_gens = Vec::new();
    for i in 0..t {
        let li = env.a7.factor_embedding(i, t)?;
        let pi = env.p.factor_embedding(i, t)?;
        let hi = env.seven_cycle.shifted(7 * i, 7 * t);
        let ci = GeneratedGroup::cyclic(hi.clone());
        normalizes_factors &= rho.normalizes(&li);
        normalizes_factor_sylows &= rho.normalizes(&pi) && rho.normalizes(&ci);
        let interval = SubgroupLattice::interval_above(&li, &pi)?;
        let invariant_with_cycle: Vec<usize> = (0..interval.len())
            .filter(|&j| {
                let h = interval.subgroup_group(j);
                h.contains(&hi) && rho.normalizes(&h)
            })
            .collect();
        only_invariant &= invariant_with_cycle == [interval.index_of_parent()];
        p_gens.extend(pi.generators().iter().cloned());
    }
    let p = GeneratedGroup::from_generators(p_gens, 7 * t)?;
    let k = GeneratedGroup::cyclic(repeat_blocks(&env.seven_cycle, t));
    Ok(RhoReport {
        t,
        rho_order_two,
        normalizes_factors,
        normalizes_factor_sylows,
        normalizes_product_sylow: rho.normalizes(&p),
        normalizes_diagonal_cycle: rho.normalizes(&k),
        only_invariant_overgroup_is_factor: only_invariant,
    })
}

/// `G ⊵ N ≥ P, K` with an automorphism `θ` of `G` normalizing `N`, `P`, `K`.
pub struct SmithActionSpec {
    pub g: GeneratedGroup,
    pub n: GeneratedGroup,
    pub p: GeneratedGroup,
    pub k: GeneratedGroup,
    pub theta: OvergroupAutomorphism,
    /// Prime with `P` a `prime`-group.
    pub prime: u64,
}

impl SmithActionSpec {
    /// `G = A7` or `G = S7` with `N = A7`, `P` and `K = ⟨h⟩` from the
    /// environment and `θ` conjugation by `x`.
    pub fn for_a7(env: &A7Environment, g: &GeneratedGroup) -> Result<Self> {
        let theta = OvergroupAutomorphism::new(g, &env.s7, env.phi.conjugator().clone())?;
        Ok(SmithActionSpec {
            g: g.clone(),
            n: env.a7.clone(),
            p: env.p.clone(),
            k: env.seven_cycle_group(),
            theta,
            prime: 2,
        })
    }

    fn validate(&self) -> Result<()> {
        if !self.n.is_normal_in(&self.g) {
            return Err(Error::NotNormal("N is not normal in G".into()));
        }
        if !self.p.is_subgroup_of(&self.n) || !self.k.is_subgroup_of(&self.n) {
            return Err(Error::NotSubgroup("P and K must lie in N".into()));
        }
        if !is_p_group(&self.p, self.prime) || self.k.generators().len() > 1 {
            return Err(Error::InvalidArgument("P must be a p-group and K cyclic".into()));
        }
        for (what, h) in [("N", &self.n), ("P", &self.p), ("K", &self.k)] {
            if !self.theta.normalizes(h) {
                return Err(Error::ActionNotPreserving(format!("θ does not normalize {what}")));
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug)]
pub struct SmithReport {
    /// Vertices of `C(G, N)` over subgroups containing `P`.
    pub restricted_vertices: usize,
    pub translation_fixed: usize,
    /// Vertices fixed by `P × K` acting through `ActionGroup`.
    pub pk_fixed: usize,
    pub e_fixed: usize,
    pub e_order: usize,
    pub pk_order: usize,
    /// `P × K` is the kernel of `E → ⟨θ⟩` and that quotient has order 2.
    pub series_shape: bool,
}

/// Fixed points of `E = (P × K) ⋊ ⟨θ⟩` on `C(G, N)`.
///
/// A coset `Hx` fixed by left translation by `P` has `P ≤ H`, so it is
/// enough to build the relative poset over the overgroups of `P`.
pub fn smith_fixed_point_check(spec: &SmithActionSpec) -> Result<SmithReport> {
    spec.validate()?;
    let lattice = SubgroupLattice::interval_above(&spec.g, &spec.p)?;
    let poset = build_relative_poset(&spec.g, &spec.n, &lattice)?;
    let table = lattice.table();
    let translation = poset.translation_fixed_points(&spec.p, &spec.k)?;
    let pk = ActionGroup::new(table, spec.p.generators(), spec.k.generators(), &[])?;
    let pk_fixed = poset.action_fixed_points(&pk)?;
    let e = ActionGroup::new(table, spec.p.generators(), spec.k.generators(), &[&spec.theta])?;
    let e_fixed = poset.action_fixed_points(&e)?;

    let e_elems = e.closure(table, ACTION_CLOSURE_LIMIT)?;
    let pk_elems = pk.closure(table, ACTION_CLOSURE_LIMIT)?;
    let kernel = e_elems.iter().filter(|t| t.aut == 0).count();
    let pk_order = (spec.p.order() * spec.k.order()).to_string().parse::<usize>().unwrap_or(0);
    let series_shape = pk_elems.len() == pk_order
        && kernel == pk_order
        && e.automorphism_count() == 2
        && e_elems.len() == 2 * pk_order;
    Ok(SmithReport {
        restricted_vertices: poset.len(),
        translation_fixed: translation.len(),
        pk_fixed: pk_fixed.len(),
        e_fixed: e_fixed.len(),
        e_order: e_elems.len(),
        pk_order: pk_elems.len(),
        series_shape,
    })
}

#[derive(Clone, Debug)]
pub struct AntichainReport {
    pub size: usize,
    pub normal_order: u64,
    pub antichain: bool,
    pub divisible: bool,
    pub betti: BettiVector,
}

impl AntichainReport {
    /// Antichain, size divisible by `|N|`, and a nonzero `β̃₋₁ + β̃₀`.
    pub fn passes(&self) -> bool {
        self.antichain && self.divisible && self.betti.get(-1) + self.betti.get(0) > 0
    }
}

/// For an abelian minimal normal `N`, `C(G, N)` is an antichain whose size
/// is a multiple of `|N|`.
pub fn abelian_antichain_check(g: &GeneratedGroup, n: &GeneratedGroup) -> Result<AntichainReport> {
    if !n.is_abelian() || !g.minimal_normal_subgroups()?.iter().any(|m| m.same_group(n)) {
        return Err(Error::InvalidArgument("N must be an abelian minimal normal subgroup".into()));
    }
    let lattice = SubgroupLattice::enumerate(g, DEFAULT_LATTICE_BOUND)?;
    let poset = build_relative_poset(g, n, &lattice)?;
    let normal_order = n.order_u64().unwrap_or(0);
    let betti = reduced_betti(&order_complex(poset.poset()), 2)?;
    Ok(AntichainReport {
        size: poset.len(),
        normal_order,
        antichain: poset.is_antichain(),
        divisible: (poset.len() as u64).is_multiple_of(normal_order),
        betti,
    })
}
