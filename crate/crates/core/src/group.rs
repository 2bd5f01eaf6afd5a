//! Permutation groups given by generators, with a deterministic
//! Schreier–Sims base and strong generating set for exact order and
//! membership.

use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};

use crate::error::{Error, Result};
use crate::perm::Permutation;

/// Groups up to this order may be enumerated element by element.
pub const ENUMERATION_LIMIT: u64 = 1_000_000;

#[derive(Clone)]
struct Level {
    point: usize,
    gens: Vec<Permutation>,
    orbit: Vec<usize>,
    /// `transversal[b]` maps the base point to `b`.
    transversal: Vec<Option<Permutation>>,
    inverse_transversal: Vec<Option<Permutation>>,
}

impl Level {
    fn new(point: usize, degree: usize, gens: Vec<Permutation>) -> Level {
        let mut level = Level {
            point,
            gens,
            orbit: Vec::new(),
            transversal: vec![None; degree],
            inverse_transversal: vec![None; degree],
        };
        level.recompute();
        level
    }

    fn recompute(&mut self) {
        let degree = self.transversal.len();
        self.transversal.iter_mut().for_each(|t| *t = None);
        self.inverse_transversal.iter_mut().for_each(|t| *t = None);
        let id = Permutation::identity(degree);
        self.transversal[self.point] = Some(id.clone());
        self.inverse_transversal[self.point] = Some(id);
        self.orbit.clear();
        self.orbit.push(self.point);
        let mut k = 0;
        while k < self.orbit.len() {
            let b = self.orbit[k];
            for s in &self.gens {
                let c = s.image(b);
                if self.transversal[c].is_none() {
                    let u = self.transversal[b].as_ref().unwrap() * s;
                    self.inverse_transversal[c] = Some(u.inverse());
                    self.transversal[c] = Some(u);
                    self.orbit.push(c);
                }
            }
            k += 1;
        }
    }
}

/// Sifts `g` through `levels[start..]`; returns the residue and the level at
/// which sifting stopped (`levels.len()` when it passed every level).
fn strip(levels: &[Level], start: usize, mut g: Permutation) -> (Permutation, usize) {
    for (l, level) in levels.iter().enumerate().skip(start) {
        let b = g.image(level.point);
        match &level.inverse_transversal[b] {
            None => return (g, l),
            Some(ui) => g = &g * ui,
        }
    }
    (g, levels.len())
}

fn schreier_sims(degree: usize, gens: &[Permutation]) -> Vec<Level> {
    let mut strong: Vec<Permutation> = Vec::new();
    for g in gens {
        if !g.is_identity() && !strong.contains(g) {
            strong.push(g.clone());
        }
    }
    let mut base: Vec<usize> = Vec::new();
    for g in &strong {
        if base.iter().all(|&b| g.image(b) == b) {
            base.push(g.smallest_moved_point().unwrap());
        }
    }
    let mut levels: Vec<Level> = base
        .iter()
        .enumerate()
        .map(|(i, &b)| {
            let fixing = strong.iter().filter(|g| base[..i].iter().all(|&c| g.image(c) == c)).cloned().collect();
            Level::new(b, degree, fixing)
        })
        .collect();

    let mut i = levels.len() as isize - 1;
    while i >= 0 {
        let iu = i as usize;
        match first_failing_schreier_generator(&levels, iu) {
            None => i -= 1,
            Some((h, j)) => {
                if j == levels.len() {
                    let pt = h.smallest_moved_point().expect("non-identity residue");
                    levels.push(Level::new(pt, degree, Vec::new()));
                }
                for level in &mut levels[iu + 1..=j] {
                    level.gens.push(h.clone());
                    level.recompute();
                }
                i = j as isize;
            }
        }
    }
    levels
}

fn first_failing_schreier_generator(levels: &[Level], i: usize) -> Option<(Permutation, usize)> {
    let level = &levels[i];
    let degree = level.transversal.len();
    let mut images = vec![0u32; degree];
    for &beta in &level.orbit {
        let u = level.transversal[beta].as_ref().unwrap();
        for s in &level.gens {
            let back = level.inverse_transversal[s.image(beta)].as_ref().unwrap();
            // u * s * back in one pass
            let mut trivial = true;
            for (k, slot) in images.iter_mut().enumerate() {
                let v = back.image(s.image(u.image(k))) as u32;
                trivial &= v == k as u32;
                *slot = v;
            }
            if trivial {
                continue;
            }
            let schreier = Permutation::from_images_unchecked(images.clone());
            let (h, j) = strip(levels, i + 1, schreier);
            if j < levels.len() || !h.is_identity() {
                return Some((h, j));
            }
        }
    }
    None
}

/// A permutation group together with its stabilizer chain.
#[derive(Clone)]
pub struct GeneratedGroup {
    degree: usize,
    generators: Vec<Permutation>,
    levels: Vec<Level>,
    order: BigUint,
}

impl GeneratedGroup {
    /// Builds the group generated by `gens` on `degree` points. The empty list
    /// gives the trivial group.
    pub fn from_generators(gens: Vec<Permutation>, degree: usize) -> Result<Self> {
        if let Some(bad) = gens.iter().find(|g| g.degree() != degree) {
            return Err(Error::DegreeMismatch { left: degree, right: bad.degree() });
        }
        Ok(GeneratedGroup::build(gens, degree))
    }

    fn build(generators: Vec<Permutation>, degree: usize) -> Self {
        let levels = schreier_sims(degree, &generators);
        let order = levels.iter().map(|l| BigUint::from(l.orbit.len())).product();
        GeneratedGroup { degree, generators, levels, order }
    }

    pub fn trivial(degree: usize) -> Self {
        GeneratedGroup::build(Vec::new(), degree)
    }

    /// Parses generators in cycle notation.
    pub fn from_cycle_words<S: AsRef<str>>(words: &[S], degree: usize) -> Result<Self> {
        let gens = words.iter().map(|w| Permutation::parse(w.as_ref(), degree)).collect::<Result<Vec<_>>>()?;
        GeneratedGroup::from_generators(gens, degree)
    }

    pub fn symmetric(n: usize) -> Self {
        let mut gens = Vec::new();
        if n >= 2 {
            gens.push(Permutation::from_cycles(n, &[vec![1, 2]]).unwrap());
        }
        if n >= 3 {
            gens.push(Permutation::from_cycles(n, &[(1..=n).collect()]).unwrap());
        }
        GeneratedGroup::build(gens, n)
    }

    pub fn alternating(n: usize) -> Self {
        let mut gens = Vec::new();
        if n >= 3 {
            gens.push(Permutation::from_cycles(n, &[vec![1, 2, 3]]).unwrap());
        }
        if n >= 4 {
            let long: Vec<usize> = if n % 2 == 1 { (1..=n).collect() } else { (2..=n).collect() };
            gens.push(Permutation::from_cycles(n, &[long]).unwrap());
        }
        GeneratedGroup::build(gens, n)
    }

    pub fn cyclic(generator: Permutation) -> Self {
        let n = generator.degree();
        GeneratedGroup::build(vec![generator], n)
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn order(&self) -> &BigUint {
        &self.order
    }

    /// The order as a machine integer, when it fits.
    pub fn order_u64(&self) -> Option<u64> {
        self.order.to_u64()
    }

    pub fn base(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.point).collect()
    }

    pub fn strong_generators(&self) -> Vec<Permutation> {
        let mut out: Vec<Permutation> = Vec::new();
        for l in &self.levels {
            for g in &l.gens {
                if !out.contains(g) {
                    out.push(g.clone());
                }
            }
        }
        out
    }

    /// Sizes of the fundamental orbits along the base.
    pub fn orbit_sizes(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.orbit.len()).collect()
    }

    pub fn identity(&self) -> Permutation {
        Permutation::identity(self.degree)
    }

    pub fn is_trivial(&self) -> bool {
        self.order.is_one()
    }

    /// Membership by sifting.
    pub fn membership(&self, p: &Permutation) -> Result<bool> {
        if p.degree() != self.degree {
            return Err(Error::DegreeMismatch { left: self.degree, right: p.degree() });
        }
        Ok(self.contains(p))
    }

    /// Membership for a permutation of matching degree.
    pub fn contains(&self, p: &Permutation) -> bool {
        debug_assert_eq!(p.degree(), self.degree);
        let (h, j) = strip(&self.levels, 0, p.clone());
        j == self.levels.len() && h.is_identity()
    }

    /// True when every generator of `self` lies in `other`.
    pub fn is_subgroup_of(&self, other: &GeneratedGroup) -> bool {
        self.degree == other.degree && self.generators.iter().all(|g| other.contains(g))
    }

    pub fn same_group(&self, other: &GeneratedGroup) -> bool {
        self.order == other.order && self.is_subgroup_of(other)
    }

    /// `g⁻¹ K g`, generated by the conjugated generators.
    pub fn conjugate_group(&self, g: &Permutation) -> Result<GeneratedGroup> {
        if g.degree() != self.degree {
            return Err(Error::DegreeMismatch { left: self.degree, right: g.degree() });
        }
        let gens = self.generators.iter().map(|k| k.conjugate_by(g)).collect();
        Ok(GeneratedGroup::build(gens, self.degree))
    }

    /// True when `g⁻¹ self g = self`. `g` may come from an overgroup.
    pub fn is_normalized_by(&self, g: &Permutation) -> bool {
        g.degree() == self.degree && self.generators.iter().all(|k| self.contains(&k.conjugate_by(g)))
    }

    pub fn is_normal_in(&self, parent: &GeneratedGroup) -> bool {
        self.is_subgroup_of(parent) && parent.generators.iter().all(|g| self.is_normalized_by(g))
    }

    pub fn is_abelian(&self) -> bool {
        let gens = &self.generators;
        gens.iter().enumerate().all(|(i, a)| gens[i + 1..].iter().all(|b| a * b == b * a))
    }

    pub fn join(&self, other: &GeneratedGroup) -> GeneratedGroup {
        let mut gens = self.generators.clone();
        gens.extend(other.generators.iter().cloned());
        GeneratedGroup::build(gens, self.degree)
    }

    pub fn with_generator(&self, g: Permutation) -> GeneratedGroup {
        let mut gens = self.generators.clone();
        gens.push(g);
        GeneratedGroup::build(gens, self.degree)
    }

    /// All elements, sorted by image sequence. The identity comes first.
    pub fn elements(&self) -> Result<Vec<Permutation>> {
        self.check_enumerable(ENUMERATION_LIMIT)?;
        let mut list = vec![self.identity()];
        for level in self.levels.iter().rev() {
            let mut next = Vec::with_capacity(list.len() * level.orbit.len());
            for e in &list {
                for &b in &level.orbit {
                    next.push(e * level.transversal[b].as_ref().unwrap());
                }
            }
            list = next;
        }
        list.sort_unstable();
        Ok(list)
    }

    pub fn check_enumerable(&self, bound: u64) -> Result<()> {
        match self.order_u64() {
            Some(o) if o <= bound => Ok(()),
            _ => Err(Error::EnumerationBound { order: self.order.to_string(), bound }),
        }
    }

    /// Points moved by at least one generator.
    pub fn moved_points(&self) -> Vec<usize> {
        (0..self.degree).filter(|&i| self.generators.iter().any(|g| g.image(i) != i)).collect()
    }

    pub fn orbit(&self, point: usize) -> Vec<usize> {
        let mut seen = vec![false; self.degree];
        seen[point] = true;
        let mut orbit = vec![point];
        let mut k = 0;
        while k < orbit.len() {
            for g in &self.generators {
                let c = g.image(orbit[k]);
                if !seen[c] {
                    seen[c] = true;
                    orbit.push(c);
                }
            }
            k += 1;
        }
        orbit
    }
}

impl fmt::Debug for GeneratedGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Group(order {}, degree {}, gens [", self.order, self.degree)?;
        for (i, g) in self.generators.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{g}")?;
        }
        f.write_str("])")
    }
}

pub(crate) fn factorial(n: u64) -> BigUint {
    (1..=n).map(BigUint::from).product()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str, n: usize) -> Permutation {
        Permutation::parse(s, n).unwrap()
    }

    #[test]
    fn small_orders() {
        assert_eq!(GeneratedGroup::trivial(3).order_u64(), Some(1));
        let g = GeneratedGroup::from_generators(vec![], 3).unwrap();
        assert!(g.is_trivial());
        let c2 = GeneratedGroup::from_generators(vec![p("(1,2)", 2)], 2).unwrap();
        assert_eq!(c2.order_u64(), Some(2));
    }

    #[test]
    fn a9_from_three_cycle_and_nine_cycle() {
        let g = GeneratedGroup::from_cycle_words(&["(1,2,3)", "(1,2,3,4,5,6,7,8,9)"], 9).unwrap();
        assert_eq!(g.order(), &(factorial(9) / BigUint::from(2u32)));
        // product of fundamental orbit sizes
        let prod: usize = g.orbit_sizes().iter().product();
        assert_eq!(BigUint::from(prod), *g.order());
        assert!(g.generators().iter().all(|x| g.contains(x)));
    }

    #[test]
    fn membership_examples() {
        let a4 = GeneratedGroup::alternating(4);
        assert_eq!(a4.order_u64(), Some(12));
        assert!(a4.membership(&p("(1,2,3)", 4)).unwrap());
        assert!(!a4.membership(&p("(1,2)", 4)).unwrap());
        assert!(a4.membership(&p("(1,2)", 5)).is_err());

        let c5 = GeneratedGroup::cyclic(p("(1,2,3,4,5)", 5));
        assert!(c5.contains(&p("(1,3,5,2,4)", 5)));
        assert!(!c5.contains(&p("(1,2,3,5,4)", 5)));
    }

    #[test]
    fn membership_matches_power_enumeration() {
        let g = p("(1,2,3,4,5)", 5);
        let c5 = GeneratedGroup::cyclic(g.clone());
        let powers: Vec<Permutation> = (0..5).map(|k| g.pow(k)).collect();
        for e in GeneratedGroup::symmetric(5).elements().unwrap() {
            assert_eq!(c5.contains(&e), powers.contains(&e));
        }
    }

    #[test]
    fn elements_are_sorted_and_complete() {
        let s4 = GeneratedGroup::symmetric(4);
        let els = s4.elements().unwrap();
        assert_eq!(els.len(), 24);
        assert!(els[0].is_identity());
        assert!(els.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn conjugation_examples() {
        let k = GeneratedGroup::cyclic(p("(1,2)", 3));
        assert!(k.conjugate_group(&Permutation::identity(3)).unwrap().same_group(&k));
        let kg = k.conjugate_group(&p("(2,3)", 3)).unwrap();
        assert!(kg.same_group(&GeneratedGroup::cyclic(p("(1,3)", 3))));
    }

    #[test]
    fn symmetric_and_alternating_orders() {
        for n in 1..=8u64 {
            let s = GeneratedGroup::symmetric(n as usize);
            assert_eq!(*s.order(), factorial(n));
            let a = GeneratedGroup::alternating(n as usize);
            let expected = if n < 2 { BigUint::one() } else { factorial(n) / BigUint::from(2u32) };
            assert_eq!(*a.order(), expected);
        }
    }
}
