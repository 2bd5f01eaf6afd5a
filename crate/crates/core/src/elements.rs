//! Canonical element enumeration of a small group.
//!
//! Element ids follow the sorted order of image sequences, so id 0 is the
//! identity and the numbering depends only on the group as a set.

use std::collections::HashMap;

use fixedbitset::FixedBitSet;

use crate::error::Result;
use crate::group::{GeneratedGroup, ENUMERATION_LIMIT};
use crate::perm::Permutation;

/// Full multiplication tables are kept for groups up to this order.
pub const MUL_TABLE_LIMIT: usize = 2600;

/// Degrees up to this use a dense Lehmer-rank index instead of hashing.
const DENSE_LOOKUP_DEGREE: usize = 8;

enum Lookup {
    Dense(Vec<u32>),
    Hashed(HashMap<Permutation, u32>),
}

pub struct ElementTable {
    degree: usize,
    elements: Vec<Permutation>,
    lookup: Lookup,
    mul: Option<Vec<u32>>,
    inverse: Vec<u32>,
}

impl ElementTable {
    pub fn new(group: &GeneratedGroup) -> Result<Self> {
        group.check_enumerable(ENUMERATION_LIMIT)?;
        let elements = group.elements()?;
        let degree = group.degree();
        let lookup = if degree <= DENSE_LOOKUP_DEGREE {
            let size: usize = (1..=degree).product();
            let mut dense = vec![u32::MAX; size];
            for (i, e) in elements.iter().enumerate() {
                dense[e.lehmer_rank()] = i as u32;
            }
            Lookup::Dense(dense)
        } else {
            Lookup::Hashed(elements.iter().enumerate().map(|(i, e)| (e.clone(), i as u32)).collect())
        };
        let mut table = ElementTable { degree, elements, lookup, mul: None, inverse: Vec::new() };
        table.inverse = (0..table.len())
            .map(|i| table.id_of(&table.elements[i].inverse()).expect("closed under inverse"))
            .collect();
        if table.len() <= MUL_TABLE_LIMIT {
            let n = table.len();
            let mut mul = vec![0u32; n * n];
            for a in 0..n {
                for b in 0..n {
                    mul[a * n + b] = table.mul_uncached(a as u32, b as u32);
                }
            }
            table.mul = Some(mul);
        }
        Ok(table)
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn element(&self, id: u32) -> &Permutation {
        &self.elements[id as usize]
    }

    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    pub fn id_of(&self, p: &Permutation) -> Option<u32> {
        if p.degree() != self.degree {
            return None;
        }
        match &self.lookup {
            Lookup::Dense(dense) => {
                let id = dense[p.lehmer_rank()];
                (id != u32::MAX).then_some(id)
            }
            Lookup::Hashed(map) => map.get(p).copied(),
        }
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        match &self.mul {
            Some(t) => t[a as usize * self.len() + b as usize],
            None => self.mul_uncached(a, b),
        }
    }

    fn mul_uncached(&self, a: u32, b: u32) -> u32 {
        let pa = self.elements[a as usize].images();
        let pb = self.elements[b as usize].images();
        match &self.lookup {
            Lookup::Dense(dense) => {
                let n = self.degree;
                let mut rank = 0usize;
                let mut used: u32 = 0;
                for (i, &x) in pa.iter().enumerate() {
                    let v = pb[x as usize];
                    let smaller_unused = v - (used & ((1u32 << v) - 1)).count_ones();
                    rank = rank * (n - i) + smaller_unused as usize;
                    used |= 1 << v;
                }
                dense[rank]
            }
            Lookup::Hashed(map) => {
                let prod = &self.elements[a as usize] * &self.elements[b as usize];
                map[&prod]
            }
        }
    }

    #[inline]
    pub fn inv(&self, a: u32) -> u32 {
        self.inverse[a as usize]
    }

    /// `by⁻¹ a by`.
    pub fn conj(&self, a: u32, by: u32) -> u32 {
        self.mul(self.mul(self.inv(by), a), by)
    }

    pub fn element_order(&self, a: u32) -> u64 {
        let mut x = a;
        let mut k = 1;
        while x != 0 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn empty_set(&self) -> FixedBitSet {
        FixedBitSet::with_capacity(self.len())
    }

    /// Subgroup generated by the given element ids.
    pub fn generate(&self, gens: &[u32]) -> ElementSubset {
        let mut set = self.empty_set();
        set.insert(0);
        let trivial = ElementSubset { elements: vec![0], set };
        gens.iter().fold(trivial, |h, &g| self.extend(&h, gens, g))
    }

    /// `⟨H, g⟩`, where `h_gens ∪ {g}` generates the result and `H` is closed.
    ///
    /// Builds the result as a union of right cosets of `H`.
    pub fn extend(&self, h: &ElementSubset, h_gens: &[u32], g: u32) -> ElementSubset {
        if h.set.contains(g as usize) {
            return h.clone();
        }
        let mut set = h.set.clone();
        let mut elements = h.elements.clone();
        let mut reps = vec![0u32];
        let mut k = 0;
        while k < reps.len() {
            let r = reps[k];
            for &s in h_gens.iter().chain(std::iter::once(&g)) {
                let y = self.mul(r, s);
                if set.contains(y as usize) {
                    continue;
                }
                for &x in &h.elements {
                    let z = self.mul(x, y);
                    set.insert(z as usize);
                    elements.push(z);
                }
                reps.push(y);
            }
            k += 1;
        }
        elements.sort_unstable();
        ElementSubset { elements, set }
    }

    /// Image of a subset under `x ↦ by⁻¹ x by`.
    pub fn conjugate_subset(&self, h: &ElementSubset, by: u32) -> ElementSubset {
        let by_inv = self.inv(by);
        let mut elements: Vec<u32> = h.elements.iter().map(|&x| self.mul(self.mul(by_inv, x), by)).collect();
        elements.sort_unstable();
        let mut set = self.empty_set();
        elements.iter().for_each(|&x| set.insert(x as usize));
        ElementSubset { elements, set }
    }

    /// Right coset `H x` as sorted ids.
    pub fn right_coset(&self, h: &ElementSubset, x: u32) -> Vec<u32> {
        let mut c: Vec<u32> = h.elements.iter().map(|&y| self.mul(y, x)).collect();
        c.sort_unstable();
        c
    }

    /// Group object for a subset that is known to be a subgroup.
    pub fn subgroup_group(&self, gens: &[u32]) -> GeneratedGroup {
        let perms = gens.iter().map(|&g| self.element(g).clone()).collect();
        GeneratedGroup::from_generators(perms, self.degree).expect("degrees agree")
    }
}

/// A subset of group elements held both as a sorted id list and a bitset.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ElementSubset {
    pub elements: Vec<u32>,
    pub set: FixedBitSet,
}

impl ElementSubset {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, id: u32) -> bool {
        self.set.contains(id as usize)
    }

    pub fn is_subset(&self, other: &ElementSubset) -> bool {
        self.len() <= other.len() && self.set.is_subset(&other.set)
    }
}
