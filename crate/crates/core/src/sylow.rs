//! Sylow subgroups: explicit iterated wreath products for symmetric and
//! alternating groups of large degree, normalizer growth elsewhere.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::group::{factorial, GeneratedGroup};
use crate::perm::Permutation;

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

pub(crate) fn check_prime(p: u64) -> Result<()> {
    if is_prime(p) {
        Ok(())
    } else {
        Err(Error::NotPrime(p))
    }
}

/// Largest power of `p` dividing `n`, with its exponent.
pub fn p_part(n: &BigUint, p: u64) -> (BigUint, u32) {
    let pb = BigUint::from(p);
    let mut rest = n.clone();
    let mut part = BigUint::one();
    let mut exp = 0;
    if rest.is_zero() {
        return (part, 0);
    }
    while (&rest % &pb).is_zero() {
        rest /= &pb;
        part *= &pb;
        exp += 1;
    }
    (part, exp)
}

pub fn prime_divisors(n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut m = n;
    let mut d = 2;
    while d * d <= m {
        if m.is_multiple_of(d) {
            out.push(d);
            while m.is_multiple_of(d) {
                m /= d;
            }
        }
        d += 1;
    }
    if m > 1 {
        out.push(m);
    }
    out
}

/// Generators of a Sylow `p`-subgroup of the symmetric group on
/// `offset..offset + n` inside `degree` points.
///
/// `n` is split by its base-`p` digits into blocks of size `p^k`; each block
/// carries the iterated wreath product `C_p ≀ ⋯ ≀ C_p`.
pub fn symmetric_sylow_generators(n: usize, p: usize, offset: usize, degree: usize) -> Vec<Permutation> {
    let mut gens = Vec::new();
    let mut start = offset;
    let mut digits = Vec::new();
    let mut m = n;
    while m > 0 {
        digits.push(m % p);
        m /= p;
    }
    for (k, &count) in digits.iter().enumerate().rev() {
        let block = p.pow(k as u32);
        for _ in 0..count {
            for j in 0..k {
                let step = p.pow(j as u32);
                let span = step * p;
                let mut images: Vec<u32> = (0..degree as u32).collect();
                for m in 0..span {
                    images[start + m] = (start + (m + step) % span) as u32;
                }
                gens.push(Permutation::from_images_unchecked(images));
            }
            start += block;
        }
    }
    gens
}

/// Even permutations of `group`, via Schreier generators for the transversal `{1, t}`.
pub fn even_part(group: &GeneratedGroup) -> GeneratedGroup {
    let Some(t) = group.generators().iter().find(|g| !g.is_even()).cloned() else {
        return group.clone();
    };
    let t_inv = t.inverse();
    let mut gens = Vec::new();
    for s in group.generators() {
        if s.is_even() {
            gens.push(s.clone());
            gens.push(&(&t * s) * &t_inv);
        } else {
            gens.push(s * &t_inv);
            gens.push(&t * s);
        }
    }
    gens.retain(|g| !g.is_identity());
    GeneratedGroup::from_generators(gens, group.degree()).expect("same degree")
}

enum FullGroup {
    Symmetric,
    Alternating,
}

fn recognise_full(group: &GeneratedGroup) -> Option<FullGroup> {
    let n = group.degree() as u64;
    let full = factorial(n);
    if *group.order() == full {
        Some(FullGroup::Symmetric)
    } else if n >= 3 && group.order() * BigUint::from(2u32) == full {
        Some(FullGroup::Alternating)
    } else {
        None
    }
}

impl GeneratedGroup {
    /// A Sylow `p`-subgroup; the trivial group when `p` does not divide the order.
    pub fn sylow(&self, p: u64) -> Result<GeneratedGroup> {
        check_prime(p)?;
        let (target, exp) = p_part(self.order(), p);
        if exp == 0 {
            return Ok(GeneratedGroup::trivial(self.degree()));
        }
        if self.degree() >= 9 {
            if let Some(kind) = recognise_full(self) {
                let n = self.degree();
                let gens = symmetric_sylow_generators(n, p as usize, 0, n);
                let sym_sylow = GeneratedGroup::from_generators(gens, n)?;
                let sylow = match kind {
                    FullGroup::Symmetric => sym_sylow,
                    FullGroup::Alternating if p == 2 => even_part(&sym_sylow),
                    FullGroup::Alternating => sym_sylow,
                };
                debug_assert_eq!(*sylow.order(), target);
                return Ok(sylow);
            }
        }
        self.sylow_by_normalizer_growth(p, &target)
    }

    /// Grows a `p`-subgroup one step at a time by a `p`-element of its
    /// normalizer that lies outside it, scanning elements in sorted order.
    fn sylow_by_normalizer_growth(&self, p: u64, target: &BigUint) -> Result<GeneratedGroup> {
        let elements = self.elements()?;
        let mut sylow = GeneratedGroup::trivial(self.degree());
        while sylow.order() != target {
            let mut grown = None;
            for g in &elements {
                if sylow.contains(g) || !sylow.is_normalized_by(g) {
                    continue;
                }
                let ord = g.order();
                let mut p_free = ord;
                while p_free % p == 0 {
                    p_free /= p;
                }
                let h = g.pow(p_free as i64);
                if h.is_identity() || sylow.contains(&h) {
                    continue;
                }
                grown = Some(sylow.with_generator(h));
                break;
            }
            sylow = grown.ok_or_else(|| Error::SearchFailed(format!("no p-element extends the {p}-subgroup")))?;
        }
        Ok(sylow)
    }
}

/// True when the order is a power of `p` (including 1).
pub fn is_p_group(group: &GeneratedGroup, p: u64) -> bool {
    let (part, _) = p_part(group.order(), p);
    part == *group.order()
}

/// `n / p^a` for the full `p`-part `p^a` of `n`.
pub fn p_free_part(n: &BigUint, p: u64) -> BigUint {
    let (part, _) = p_part(n, p);
    n.div_floor(&part)
}
