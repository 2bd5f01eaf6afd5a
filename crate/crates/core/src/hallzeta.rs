//! Hall's Dirichlet polynomial `P_G(s) = Σ_{H≤G} μ(H,G) [G:H]^{-s}`, its
//! exact values at integers, and a brute-force generation oracle.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Pow, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::group::GeneratedGroup;
use crate::lattice::{Family, MoebiusTable, SubgroupLattice};
use crate::perm::Permutation;
use crate::poset::Poset;

pub type ExactRational = BigRational;

pub const DEFAULT_TUPLE_BUDGET: u64 = 10_000_000;

/// `Σ a_n n^{-s}` with integer coefficients; zero coefficients are not stored.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DirichletPolynomial {
    coefficients: BTreeMap<u64, i64>,
}

impl DirichletPolynomial {
    pub fn from_coefficients(pairs: impl IntoIterator<Item = (u64, i64)>) -> Self {
        let mut coefficients = BTreeMap::new();
        for (n, a) in pairs {
            *coefficients.entry(n).or_insert(0) += a;
        }
        coefficients.retain(|_, a| *a != 0);
        DirichletPolynomial { coefficients }
    }

    pub fn coefficient(&self, n: u64) -> i64 {
        self.coefficients.get(&n).copied().unwrap_or(0)
    }

    /// Nonzero `(n, a_n)` in increasing `n`.
    pub fn terms(&self) -> impl Iterator<Item = (u64, i64)> + '_ {
        self.coefficients.iter().map(|(&n, &a)| (n, a))
    }

    /// Exact value `Σ a_n n^{-k}`; for negative `k` this is an integer.
    pub fn evaluate(&self, k: i64) -> ExactRational {
        let mut sum = BigRational::zero();
        for (n, a) in self.terms() {
            let base = BigInt::from(n);
            let power: BigInt = Pow::pow(&base, k.unsigned_abs());
            let term = if k >= 0 {
                BigRational::new(BigInt::from(a), power)
            } else {
                BigRational::from_integer(BigInt::from(a) * power)
            };
            sum += term;
        }
        sum
    }
}

/// Serialized as sorted `n:a_n` pairs separated by commas.
impl fmt::Display for DirichletPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.terms().map(|(n, a)| format!("{n}:{a}")).collect();
        f.write_str(&parts.join(","))
    }
}

/// Hall's polynomial from a full lattice: `a_n = Σ_{[G:H]=n} μ(H,G)`.
pub fn hall_polynomial(
    group: &GeneratedGroup,
    lattice: &SubgroupLattice,
    mu: &MoebiusTable,
) -> Result<DirichletPolynomial> {
    if lattice.family() != Family::Full || !group.same_group(lattice.parent()) || mu.values().len() != lattice.len() {
        return Err(Error::LatticeMismatch);
    }
    let order = lattice.table().len();
    Ok(DirichletPolynomial::from_coefficients(
        (0..lattice.len()).map(|i| ((order / lattice.subgroup(i).order()) as u64, mu.mu(i))),
    ))
}

/// Fraction of `k`-tuples of elements that generate the group, by exhaustive
/// enumeration with the default budget.
pub fn brute_force_generation_probability(group: &GeneratedGroup, k: u32) -> Result<ExactRational> {
    brute_force_generation_probability_with_budget(group, k, DEFAULT_TUPLE_BUDGET)
}

pub fn brute_force_generation_probability_with_budget(
    group: &GeneratedGroup,
    k: u32,
    budget: u64,
) -> Result<ExactRational> {
    if k == 0 {
        return Err(Error::InvalidArgument("tuple length must be positive".into()));
    }
    let total: BigUint = Pow::pow(group.order(), k);
    if total > BigUint::from(budget) {
        return Err(Error::TupleBudget { needed: total.to_string(), budget });
    }
    let elements = group.elements()?;
    let count = count_generating_tuples(group, &elements, k as usize);
    Ok(BigRational::new(BigInt::from(count), BigInt::from(total)))
}

/// Tuples whose first entry is `first`, walked by a mixed-radix counter.
fn count_with_first(group: &GeneratedGroup, elements: &[Permutation], k: usize, first: usize) -> u64 {
    let n = elements.len();
    let mut digits = vec![0usize; k];
    digits[0] = first;
    let mut count = 0u64;
    loop {
        let gens: Vec<Permutation> = digits.iter().map(|&d| elements[d].clone()).collect();
        let h = GeneratedGroup::from_generators(gens, group.degree()).expect("same degree");
        if h.order() == group.order() {
            count += 1;
        }
        let mut pos = k - 1;
        loop {
            if pos == 0 {
                return count;
            }
            digits[pos] += 1;
            if digits[pos] < n {
                break;
            }
            digits[pos] = 0;
            pos -= 1;
        }
    }
}

#[cfg(feature = "parallel")]
fn count_generating_tuples(group: &GeneratedGroup, elements: &[Permutation], k: usize) -> u64 {
    use rayon::prelude::*;
    (0..elements.len()).into_par_iter().map(|f| count_with_first(group, elements, k, f)).sum()
}

#[cfg(not(feature = "parallel"))]
fn count_generating_tuples(group: &GeneratedGroup, elements: &[Permutation], k: usize) -> u64 {
    (0..elements.len()).map(|f| count_with_first(group, elements, k, f)).sum()
}

/// `μ(0̂, 1̂)` in the poset with a new bottom and top adjoined.
pub fn poset_moebius_hat(poset: &Poset) -> i128 {
    // mu[v] = μ(0̂, v); acc[v] collects Σ μ(0̂, u) over u < v
    let mut acc = vec![0i128; poset.len()];
    let mut total = 1i128; // μ(0̂, 0̂)
    for v in poset.linear_extension() {
        let mu_v = -(1 + acc[v]);
        total += mu_v;
        for w in poset.upper(v).ones() {
            acc[w] += mu_v;
        }
    }
    -total
}

/// Exact integer value of a rational known to be integral.
pub fn as_integer(r: &ExactRational) -> Option<i128> {
    if r.denom().is_one() {
        r.numer().to_i128()
    } else {
        None
    }
}
