//! Universal `p`-generation, the cycle sweeps for alternating groups, and
//! the binomial identity behind the parity of imprimitive subgroup counts.
//!
//! `K` universally `p`-generates `G` when `⟨K, P⟩ = G` for every Sylow
//! `p`-subgroup `P`. Since the Sylow subgroups are the conjugates `P^g`, and
//! `⟨K, P^g⟩ = ⟨K^{g⁻¹}, P⟩^g`, it suffices to run over the conjugates of
//! `K` against one fixed `P`.

use std::collections::HashMap;
use std::time::Instant;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::group::{factorial, GeneratedGroup};
use crate::lattice::{Family, SubgroupLattice};
use crate::perm::Permutation;
use crate::sylow::{check_prime, p_part, symmetric_sylow_generators};

/// A re-checkable failure (or, for positive runs, a sample) of generation.
#[derive(Clone, Debug)]
pub struct GenerationWitness {
    /// The conjugator or cycle that was tested.
    pub element: Permutation,
    /// Generators of the subgroup actually generated.
    pub generators: Vec<Permutation>,
    pub generated_order: BigUint,
}

#[derive(Clone, Debug)]
pub struct GenerationReport {
    pub subject: String,
    pub verdict: bool,
    pub tests: u64,
    pub witnesses: Vec<GenerationWitness>,
    pub millis: u128,
}

impl GenerationReport {
    /// Re-derives the order of every witness.
    pub fn witnesses_recheck(&self, degree: usize) -> bool {
        self.witnesses.iter().all(|w| {
            GeneratedGroup::from_generators(w.generators.clone(), degree)
                .map(|h| *h.order() == w.generated_order)
                .unwrap_or(false)
        })
    }
}

/// Sweeps every conjugate `K^x` against one fixed Sylow `p`-subgroup.
pub fn universally_p_generates(g: &GeneratedGroup, k: &GeneratedGroup, p: u64) -> Result<GenerationReport> {
    check_prime(p)?;
    if !k.is_subgroup_of(g) {
        return Err(Error::NotSubgroup("K is not a subgroup of G".into()));
    }
    if !(g.order() % p).is_zero() {
        return Err(Error::InvalidArgument(format!("{p} does not divide |G| = {}", g.order())));
    }
    let sylow = g.sylow(p)?;
    sweep_conjugates(g, k, &sylow, format!("K of order {} in G of order {}, p = {p}", k.order(), g.order()), false)
}

/// The sweep with a caller-supplied Sylow subgroup. With `stop_early` the
/// sweep ends at the first failure.
pub fn sweep_conjugates(
    g: &GeneratedGroup,
    k: &GeneratedGroup,
    sylow: &GeneratedGroup,
    subject: String,
    stop_early: bool,
) -> Result<GenerationReport> {
    let start = Instant::now();
    // Breadth-first orbit of K under conjugation, keyed by its element set.
    let key_of = |h: &GeneratedGroup| -> Result<Vec<Permutation>> { h.elements() };
    let mut seen: HashMap<Vec<Permutation>, ()> = HashMap::new();
    let mut queue: Vec<(GeneratedGroup, Permutation)> = vec![(k.clone(), g.identity())];
    seen.insert(key_of(k)?, ());
    let mut witnesses = Vec::new();
    let mut tests = 0u64;
    let mut i = 0;
    while i < queue.len() {
        let (kx, x) = queue[i].clone();
        tests += 1;
        let generated = kx.join(sylow);
        if generated.order() != g.order() {
            let mut gens = kx.generators().to_vec();
            gens.extend(sylow.generators().iter().cloned());
            witnesses.push(GenerationWitness {
                element: x.clone(),
                generators: gens,
                generated_order: generated.order().clone(),
            });
            if stop_early {
                break;
            }
        }
        for s in g.generators() {
            let next = kx.conjugate_group(s)?;
            let key = key_of(&next)?;
            if seen.insert(key, ()).is_none() {
                queue.push((next, &x * s));
            }
        }
        i += 1;
    }
    Ok(GenerationReport {
        subject,
        verdict: witnesses.is_empty(),
        tests,
        witnesses,
        millis: start.elapsed().as_millis(),
    })
}

/// True when every maximal subgroup of `G` has index divisible by `p` or `r`.
pub fn univ_gen_via_maximal_indices(g: &GeneratedGroup, r: u64, p: u64, lattice: &SubgroupLattice) -> Result<bool> {
    check_prime(r)?;
    check_prime(p)?;
    if lattice.family() != Family::Full || !g.same_group(lattice.parent()) {
        return Err(Error::LatticeMismatch);
    }
    let order = lattice.table().len() as u64;
    Ok(lattice.maximal_subgroups().iter().all(|&m| {
        let index = order / lattice.subgroup(m).order() as u64;
        index.is_multiple_of(p) || index.is_multiple_of(r)
    }))
}

/// Every `n`-cycle (odd `n`) or `(n−1)`-cycle (even `n`) of `A_n`, against
/// one fixed Sylow 2-subgroup `P`: does `⟨c, P⟩ = A_n` hold for all of them?
///
/// Failures are grouped by the subgroup they generate; each distinct proper
/// subgroup appears once among the witnesses, with its first cycle.
pub fn check_alternating_claims(n: usize) -> Result<GenerationReport> {
    if n < 5 {
        return Err(Error::InvalidArgument(format!("alternating claims need n >= 5, got {n}")));
    }
    let start = Instant::now();
    let an = GeneratedGroup::alternating(n);
    let sylow = an.sylow(2)?;
    let cycles = if n % 2 == 1 { long_cycles(n, n) } else { long_cycles(n, n - 1) };
    let failures = sweep_cycles(&an, &sylow, &cycles);
    let mut witnesses: Vec<GenerationWitness> = Vec::new();
    let mut groups: Vec<GeneratedGroup> = Vec::new();
    for idx in failures {
        let c = &cycles[idx];
        if groups.iter().any(|h| h.contains(c)) {
            continue;
        }
        let h = sylow.with_generator(c.clone());
        witnesses.push(GenerationWitness {
            element: c.clone(),
            generators: h.generators().to_vec(),
            generated_order: h.order().clone(),
        });
        groups.push(h);
    }
    let len = if n % 2 == 1 { n } else { n - 1 };
    Ok(GenerationReport {
        subject: format!("A{n}: all {len}-cycles against a fixed Sylow 2-subgroup"),
        verdict: witnesses.is_empty(),
        tests: cycles.len() as u64,
        witnesses,
        millis: start.elapsed().as_millis(),
    })
}

/// Number of `len`-cycles in `S_n`, `n! / (len · (n−len)!)`.
pub fn long_cycle_count(n: usize, len: usize) -> BigUint {
    factorial(n as u64) / (BigUint::from(len) * factorial((n - len) as u64))
}

/// All `len`-cycles on `n` points for `len ∈ {n−1, n}`, each listed once:
/// for `len = n` the cycles start at point 1; for `len = n−1` one point is
/// left fixed and the cycle starts at the smallest remaining point.
pub fn long_cycles(n: usize, len: usize) -> Vec<Permutation> {
    assert!(len == n || len + 1 == n, "only n- and (n-1)-cycles are listed");
    let mut out = Vec::new();
    let fixed_choices: Vec<Option<usize>> = if len == n { vec![None] } else { (0..n).map(Some).collect() };
    for fixed in fixed_choices {
        let support: Vec<usize> = (0..n).filter(|&i| Some(i) != fixed).collect();
        let head = support[0];
        let mut rest: Vec<usize> = support[1..].to_vec();
        // Heap's algorithm over the tail, order fixed by the algorithm
        let mut c = vec![0usize; rest.len()];
        let emit = |rest: &[usize], out: &mut Vec<Permutation>| {
            let mut images: Vec<u32> = (0..n as u32).collect();
            let mut prev = head;
            for &r in rest {
                images[prev] = r as u32;
                prev = r;
            }
            images[prev] = head as u32;
            out.push(Permutation::from_images(images).expect("cycle"));
        };
        emit(&rest, &mut out);
        let mut i = 0;
        while i < rest.len() {
            if c[i] < i {
                if i % 2 == 0 {
                    rest.swap(0, i);
                } else {
                    rest.swap(c[i], i);
                }
                emit(&rest, &mut out);
                c[i] += 1;
                i = 0;
            } else {
                c[i] = 0;
                i += 1;
            }
        }
    }
    out
}

/// Indices of the cycles `c` with `⟨c, P⟩ ≠ G`, increasing.
#[cfg(feature = "parallel")]
fn sweep_cycles(g: &GeneratedGroup, sylow: &GeneratedGroup, cycles: &[Permutation]) -> Vec<usize> {
    use rayon::prelude::*;
    cycles
        .par_iter()
        .enumerate()
        .filter(|(_, c)| sylow.with_generator((*c).clone()).order() != g.order())
        .map(|(i, _)| i)
        .collect()
}

#[cfg(not(feature = "parallel"))]
fn sweep_cycles(g: &GeneratedGroup, sylow: &GeneratedGroup, cycles: &[Permutation]) -> Vec<usize> {
    cycles
        .iter()
        .enumerate()
        .filter(|(_, c)| sylow.with_generator((*c).clone()).order() != g.order())
        .map(|(i, _)| i)
        .collect()
}

/// Does `K^diag` universally `p`-generate `L^t`?
///
/// The Sylow subgroup of `L^t` is the product of Sylow subgroups of the
/// factors. A failing run stops at the first non-generating conjugate.
pub fn check_diagonal_universal(l: &GeneratedGroup, k: &GeneratedGroup, p: u64, t: usize) -> Result<GenerationReport> {
    check_prime(p)?;
    if !k.is_subgroup_of(l) || k.order() == l.order() {
        return Err(Error::NotSubgroup("K must be a proper subgroup of L".into()));
    }
    if t == 0 {
        return Err(Error::InvalidArgument("t must be positive".into()));
    }
    if !(l.order() % p).is_zero() {
        return Err(Error::InvalidArgument(format!("{p} does not divide |L|")));
    }
    let n = l.direct_power(t)?;
    let kd = k.diagonal_embedding(t)?;
    let sl = l.sylow(p)?;
    let d = l.degree();
    let gens = (0..t).flat_map(|b| sl.generators().iter().map(move |s| s.shifted(b * d, t * d))).collect();
    let sylow = GeneratedGroup::from_generators(gens, t * d)?;
    debug_assert_eq!(*sylow.order(), p_part(n.order(), p).0);
    sweep_conjugates(&n, &kd, &sylow, format!("diagonal K in L^{t}, p = {p}"), true)
}

/// An element of the explicit Sylow 2-subgroup of `A_n` moving every point.
///
/// Returns `None` for odd `n` without searching: orbits of a 2-group have
/// power-of-two sizes, so one of them has size 1.
pub fn sylow2_fixed_point_free_element(n: usize) -> Result<Option<Permutation>> {
    if n < 2 {
        return Err(Error::InvalidArgument("degree must be at least 2".into()));
    }
    if n % 2 == 1 {
        return Ok(None);
    }
    let sylow = alternating_sylow2(n)?;
    Ok(sylow.elements()?.into_iter().find(|e| e.fixed_points() == 0))
}

/// Sylow 2-subgroup of `A_n` as the even part of the wreath-product Sylow
/// subgroup of `S_n`, at every degree.
pub fn alternating_sylow2(n: usize) -> Result<GeneratedGroup> {
    let s = GeneratedGroup::from_generators(symmetric_sylow_generators(n, 2, 0, n), n)?;
    Ok(crate::sylow::even_part(&s))
}

/// Both sides of `n! / (d!^ℓ ℓ!) = Π_{j=1}^{ℓ} C(jd−1, d−1)`, `ℓ = n/d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParityIdentity {
    pub n: u64,
    pub d: u64,
    pub factorial_side: BigUint,
    pub binomial_side: BigUint,
    pub even: bool,
    /// `d · C(2d−1, d−1) = 2 (2d−1) C(2d−3, d−1)`, checked for `d ≥ 2`.
    pub factor_identity: bool,
}

impl ParityIdentity {
    pub fn holds(&self) -> bool {
        self.factorial_side == self.binomial_side && self.factor_identity
    }
}

pub fn imprimitive_parity_identity(n: u64, d: u64) -> Result<ParityIdentity> {
    if d <= 1 || d >= n || !n.is_multiple_of(d) {
        return Err(Error::InvalidArgument(format!("{d} is not a proper nontrivial divisor of {n}")));
    }
    let l = n / d;
    let factorial_side = factorial(n) / (num_traits::pow(factorial(d), l as usize) * factorial(l));
    let binomial_side: BigUint = (1..=l).map(|j| binomial(j * d - 1, d - 1)).product();
    let factor_identity = BigUint::from(d) * binomial(2 * d - 1, d - 1)
        == BigUint::from(2u32) * BigUint::from(2 * d - 1) * binomial(2 * d - 3, d - 1);
    let even = binomial_side.is_even();
    Ok(ParityIdentity { n, d, factorial_side, binomial_side, even, factor_identity })
}

/// `C(n, k)` by the multiplicative formula.
pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * BigUint::from(n - i) / BigUint::from(i + 1);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(words: &[&str], n: usize) -> GeneratedGroup {
        GeneratedGroup::from_cycle_words(words, n).unwrap()
    }

    #[test]
    fn universal_generation_examples() {
        let a5 = GeneratedGroup::alternating(5);
        let c5 = g(&["(1,2,3,4,5)"], 5);
        let r = universally_p_generates(&a5, &c5, 2).unwrap();
        assert!(r.verdict);
        assert_eq!(r.tests, 6);

        let z6 = g(&["(1,2,3,4,5,6)"], 6);
        let c3 = g(&["(1,3,5)(2,4,6)"], 6);
        assert!(universally_p_generates(&z6, &c3, 2).unwrap().verdict);

        assert!(matches!(universally_p_generates(&z6, &c3, 5), Err(Error::InvalidArgument(_))));
        assert!(matches!(universally_p_generates(&c3, &z6, 2), Err(Error::NotSubgroup(_))));
    }

    #[test]
    fn seven_cycle_fails_in_a7() {
        let a7 = GeneratedGroup::alternating(7);
        let c7 = g(&["(1,2,3,4,5,6,7)"], 7);
        let r = universally_p_generates(&a7, &c7, 2).unwrap();
        assert!(!r.verdict);
        assert_eq!(r.tests, 120);
        assert!(r.witnesses.iter().all(|w| w.generated_order == BigUint::from(168u32)));
        assert!(r.witnesses_recheck(7));
    }

    #[test]
    fn cycle_listing_counts() {
        assert_eq!(long_cycles(5, 5).len(), 24);
        assert_eq!(long_cycles(6, 5).len(), 144);
        assert_eq!(BigUint::from(144u32), long_cycle_count(6, 5));
        let mut all = long_cycles(6, 5);
        all.sort();
        all.dedup();
        assert_eq!(all.len(), 144);
        assert!(all.iter().all(|c| c.cycle_type() == vec![5, 1]));
    }

    #[test]
    fn small_alternating_sweeps() {
        let r = check_alternating_claims(5).unwrap();
        assert!(r.verdict);
        assert_eq!(r.tests, 24);
        let r = check_alternating_claims(7).unwrap();
        assert!(!r.verdict);
        assert_eq!(r.witnesses.len(), 2);
        assert!(r.witnesses.iter().all(|w| w.generated_order == BigUint::from(168u32)));
        assert!(check_alternating_claims(4).is_err());
    }

    #[test]
    fn maximal_index_criterion() {
        let a5 = GeneratedGroup::alternating(5);
        let lat = SubgroupLattice::enumerate(&a5, 1000).unwrap();
        assert!(univ_gen_via_maximal_indices(&a5, 5, 2, &lat).unwrap());
        let s3 = GeneratedGroup::symmetric(3);
        let lat3 = SubgroupLattice::enumerate(&s3, 1000).unwrap();
        assert!(univ_gen_via_maximal_indices(&s3, 3, 2, &lat3).unwrap());
        assert!(matches!(univ_gen_via_maximal_indices(&s3, 3, 2, &lat), Err(Error::LatticeMismatch)));
    }

    #[test]
    fn diagonal_checks() {
        let a5 = GeneratedGroup::alternating(5);
        let c5 = g(&["(1,2,3,4,5)"], 5);
        assert!(check_diagonal_universal(&a5, &c5, 2, 1).unwrap().verdict);
        assert!(check_diagonal_universal(&a5, &c5, 2, 2).unwrap().verdict);
    }

    #[test]
    fn fixed_point_free_elements() {
        for n in [4usize, 6, 8, 10, 12] {
            let w = sylow2_fixed_point_free_element(n).unwrap().expect("even degree");
            assert_eq!(w.fixed_points(), 0);
            assert!(w.is_even());
            assert!(alternating_sylow2(n).unwrap().contains(&w));
        }
        assert_eq!(sylow2_fixed_point_free_element(7).unwrap(), None);
        // the odd case really has no such element
        let p7 = alternating_sylow2(7).unwrap();
        assert!(p7.elements().unwrap().iter().all(|e| e.fixed_points() > 0));
    }

    #[test]
    fn parity_identity_examples() {
        for (n, d, v) in [(9, 3, 280u64), (15, 5, 126126), (15, 3, 1401400)] {
            let r = imprimitive_parity_identity(n, d).unwrap();
            assert_eq!(r.binomial_side, BigUint::from(v));
            assert!(r.holds() && r.even);
        }
        assert!(imprimitive_parity_identity(9, 2).is_err());
        assert!(imprimitive_parity_identity(9, 9).is_err());
        assert!(imprimitive_parity_identity(9, 1).is_err());
    }
}
