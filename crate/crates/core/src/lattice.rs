//! Subgroup lattices of small groups and the Möbius function `μ(H, G)`.
//!
//! A full lattice holds every subgroup. An upper interval holds every
//! subgroup containing a fixed base subgroup, which is all that fixed-point
//! computations for actions containing left translation by that base need.

use std::collections::HashMap;
use std::fmt::Write as _;

use fixedbitset::FixedBitSet;

use crate::elements::{ElementSubset, ElementTable};
use crate::error::{Error, Result};
use crate::group::{GeneratedGroup, ENUMERATION_LIMIT};
use crate::sylow::prime_divisors;

pub const DEFAULT_LATTICE_BOUND: u64 = 1000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    /// Every subgroup of the parent.
    Full,
    /// Every subgroup containing the subgroup at this index.
    Above(usize),
}

#[derive(Clone, Debug)]
pub struct SubgroupRecord {
    pub subset: ElementSubset,
    /// Element ids generating the subgroup.
    pub generators: Vec<u32>,
}

impl SubgroupRecord {
    pub fn order(&self) -> usize {
        self.subset.len()
    }
}

pub struct SubgroupLattice {
    parent: GeneratedGroup,
    table: ElementTable,
    parent_gen_ids: Vec<u32>,
    subgroups: Vec<SubgroupRecord>,
    /// `contained_in[i]` has bit `j` set iff subgroup `i` ⊆ subgroup `j`.
    contained_in: Vec<FixedBitSet>,
    index: HashMap<Vec<u32>, usize>,
    parent_index: usize,
    family: Family,
}

impl SubgroupLattice {
    /// Every subgroup of `group`, which must have order at most `bound`.
    ///
    /// Works class by class: each conjugacy class of subgroups is extended by
    /// every cyclic subgroup of prime-power order, and every resulting class
    /// is added whole. Every subgroup is generated by its prime-power cyclic
    /// subgroups, so extending class representatives reaches all of them.
    pub fn enumerate(group: &GeneratedGroup, bound: u64) -> Result<Self> {
        group.check_enumerable(bound.min(ENUMERATION_LIMIT))?;
        let table = ElementTable::new(group)?;
        let gen_ids = parent_generator_ids(&table, group);

        // Prime-power cyclic subgroups, with the index of ⟨g⟩ for every such g.
        let mut cyclic_gens: Vec<u32> = Vec::new();
        let mut cyclic_of = vec![u32::MAX; table.len()];
        for g in 1..table.len() as u32 {
            if cyclic_of[g as usize] != u32::MAX || prime_divisors(table.element_order(g)).len() != 1 {
                continue;
            }
            let idx = cyclic_gens.len() as u32;
            cyclic_gens.push(g);
            for x in table.generate(&[g]).elements {
                if x != 0 && table.element_order(x) == table.element_order(g) {
                    cyclic_of[x as usize] = idx;
                }
            }
        }

        let mut builder = Builder::new(&table, &gen_ids);
        builder.add_class(table.generate(&[]), Vec::new());
        for &c in &cyclic_gens {
            builder.add_class(table.generate(&[c]), vec![c]);
        }
        while let Some(rep) = builder.worklist.pop() {
            let (h, h_gens) = {
                let r = &builder.records[rep];
                (r.subset.clone(), r.generators.clone())
            };
            // ⟨H, C^n⟩ = ⟨H, C⟩^n for n normalizing H, so one C per orbit suffices.
            let normalizer: Vec<u32> =
                (0..table.len() as u32).filter(|&n| h_gens.iter().all(|&x| h.contains(table.conj(x, n)))).collect();
            let (_, n_gens) = crate::products::generate_with_witness(&table, &normalizer);
            let mut done = vec![false; cyclic_gens.len()];
            for (ci, &c) in cyclic_gens.iter().enumerate() {
                if done[ci] {
                    continue;
                }
                let mut orbit = vec![c];
                done[ci] = true;
                let mut k = 0;
                while k < orbit.len() {
                    for &n in &n_gens {
                        let d = table.conj(orbit[k], n);
                        let di = cyclic_of[d as usize] as usize;
                        if !done[di] {
                            done[di] = true;
                            orbit.push(d);
                        }
                    }
                    k += 1;
                }
                if h.contains(c) {
                    continue;
                }
                let j = table.extend(&h, &h_gens, c);
                if builder.found.contains_key(&j.elements) {
                    continue;
                }
                let mut gens = h_gens.clone();
                gens.push(c);
                builder.add_class(j, gens);
            }
        }
        let records = builder.records;
        Ok(SubgroupLattice::assemble(group.clone(), table, gen_ids, records, None))
    }

    /// Every subgroup of `group` containing `base`.
    pub fn interval_above(group: &GeneratedGroup, base: &GeneratedGroup) -> Result<Self> {
        if !base.is_subgroup_of(group) {
            return Err(Error::NotSubgroup("base of the interval is not a subgroup".into()));
        }
        let table = ElementTable::new(group)?;
        let gen_ids = parent_generator_ids(&table, group);
        let base_ids: Vec<u32> = base.generators().iter().map(|g| table.id_of(g).unwrap()).collect();
        let (base_subset, base_gens) = crate::products::generate_with_witness(&table, &base_ids);

        let mut found: HashMap<Vec<u32>, usize> = HashMap::new();
        let mut records = vec![SubgroupRecord { subset: base_subset.clone(), generators: base_gens }];
        found.insert(base_subset.elements.clone(), 0);
        let mut k = 0;
        while k < records.len() {
            let h = records[k].subset.clone();
            let h_gens = records[k].generators.clone();
            let mut done = h.set.clone();
            for g in 0..table.len() as u32 {
                if done.contains(g as usize) {
                    continue;
                }
                let j = table.extend(&h, &h_gens, g);
                // ⟨H, a g^e b⟩ = ⟨H, g⟩ for a, b ∈ H and e prime to |g|
                let ord = table.element_order(g);
                let mut power = g;
                for e in 1..ord {
                    if num_integer::gcd(e, ord) == 1 {
                        for &a in &h.elements {
                            let ag = table.mul(a, power);
                            for &b in &h.elements {
                                done.insert(table.mul(ag, b) as usize);
                            }
                        }
                    }
                    power = table.mul(power, g);
                }
                if !found.contains_key(&j.elements) {
                    found.insert(j.elements.clone(), records.len());
                    let mut gens = h_gens.clone();
                    gens.push(g);
                    records.push(SubgroupRecord { subset: j, generators: gens });
                }
            }
            k += 1;
        }
        Ok(SubgroupLattice::assemble(group.clone(), table, gen_ids, records, Some(base_subset.elements)))
    }

    fn assemble(
        parent: GeneratedGroup,
        table: ElementTable,
        parent_gen_ids: Vec<u32>,
        mut records: Vec<SubgroupRecord>,
        base: Option<Vec<u32>>,
    ) -> Self {
        records.sort_by(|a, b| (a.order(), &a.subset.elements).cmp(&(b.order(), &b.subset.elements)));
        let index: HashMap<Vec<u32>, usize> =
            records.iter().enumerate().map(|(i, r)| (r.subset.elements.clone(), i)).collect();
        let n = records.len();
        let mut contained_in = vec![FixedBitSet::with_capacity(n); n];
        for i in 0..n {
            contained_in[i].insert(i);
            let oi = records[i].order();
            for j in i + 1..n {
                let oj = records[j].order();
                if oj > oi && oj.is_multiple_of(oi) && records[i].subset.set.is_subset(&records[j].subset.set) {
                    contained_in[i].insert(j);
                }
            }
        }
        let parent_index = n - 1;
        debug_assert_eq!(records[parent_index].order(), table.len());
        let family = match base {
            None => Family::Full,
            Some(b) => Family::Above(index[&b]),
        };
        SubgroupLattice { parent, table, parent_gen_ids, subgroups: records, contained_in, index, parent_index, family }
    }

    pub fn parent(&self) -> &GeneratedGroup {
        &self.parent
    }

    pub fn table(&self) -> &ElementTable {
        &self.table
    }

    pub fn parent_generator_ids(&self) -> &[u32] {
        &self.parent_gen_ids
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn len(&self) -> usize {
        self.subgroups.len()
    }

    pub fn is_empty(&self) -> bool {
        self.subgroups.is_empty()
    }

    pub fn subgroups(&self) -> &[SubgroupRecord] {
        &self.subgroups
    }

    pub fn subgroup(&self, i: usize) -> &SubgroupRecord {
        &self.subgroups[i]
    }

    pub fn index_of_parent(&self) -> usize {
        self.parent_index
    }

    /// Index of the trivial subgroup; present in full lattices only (or when
    /// the interval starts at the trivial group).
    pub fn index_of_trivial(&self) -> Option<usize> {
        (self.subgroups[0].order() == 1).then_some(0)
    }

    /// `H_i ≤ H_j`.
    pub fn is_contained(&self, i: usize, j: usize) -> bool {
        self.contained_in[i].contains(j)
    }

    /// Indices of all `K` with `H_i ≤ K`, including `i`.
    pub fn above(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        self.contained_in[i].ones()
    }

    pub fn index_of_subset(&self, elements: &[u32]) -> Option<usize> {
        self.index.get(elements).copied()
    }

    /// Lattice index of a subgroup of the parent given by generators.
    pub fn index_of_group(&self, group: &GeneratedGroup) -> Option<usize> {
        let ids: Option<Vec<u32>> = group.generators().iter().map(|g| self.table.id_of(g)).collect();
        let (subset, _) = crate::products::generate_with_witness(&self.table, &ids?);
        self.index_of_subset(&subset.elements)
    }

    pub fn subgroup_group(&self, i: usize) -> GeneratedGroup {
        self.table.subgroup_group(&self.subgroups[i].generators)
    }

    pub fn is_normal(&self, i: usize) -> bool {
        let s = &self.subgroups[i].subset;
        self.parent_gen_ids
            .iter()
            .all(|&g| self.subgroups[i].generators.iter().all(|&h| s.contains(self.table.conj(h, g))))
    }

    /// Indices of the subgroups below `G` that no other proper subgroup contains.
    pub fn maximal_subgroups(&self) -> Vec<usize> {
        let top = self.parent_index;
        (0..self.len()).filter(|&i| i != top && self.above(i).all(|j| j == i || j == top)).collect()
    }

    /// `μ(H, G)` for every subgroup `H` in the lattice.
    pub fn moebius_to_top(&self) -> Result<MoebiusTable> {
        let n = self.len();
        let mut mu = vec![0i64; n];
        mu[self.parent_index] = 1;
        for i in (0..n).rev() {
            if i == self.parent_index {
                continue;
            }
            let mut sum: i64 = 0;
            for j in self.above(i) {
                if j != i {
                    sum = sum.checked_add(mu[j]).ok_or(Error::Overflow("Möbius recursion"))?;
                }
            }
            mu[i] = sum.checked_neg().ok_or(Error::Overflow("Möbius recursion"))?;
        }
        Ok(MoebiusTable { mu })
    }

    /// One subgroup per line: `order;element ids;μ`.
    pub fn dump(&self, mu: &MoebiusTable) -> String {
        let mut out = String::new();
        for (i, s) in self.subgroups.iter().enumerate() {
            let ids: Vec<String> = s.subset.elements.iter().map(u32::to_string).collect();
            let _ = writeln!(out, "{};{};{}", s.order(), ids.join(","), mu.mu(i));
        }
        out
    }
}

fn parent_generator_ids(table: &ElementTable, group: &GeneratedGroup) -> Vec<u32> {
    group.generators().iter().map(|g| table.id_of(g).expect("generator enumerated")).collect()
}

struct Builder<'a> {
    table: &'a ElementTable,
    gen_ids: &'a [u32],
    records: Vec<SubgroupRecord>,
    found: HashMap<Vec<u32>, usize>,
    worklist: Vec<usize>,
}

impl<'a> Builder<'a> {
    fn new(table: &'a ElementTable, gen_ids: &'a [u32]) -> Self {
        Builder { table, gen_ids, records: Vec::new(), found: HashMap::new(), worklist: Vec::new() }
    }

    /// Adds the whole conjugacy class of `subset`; queues `subset` as its representative.
    fn add_class(&mut self, subset: ElementSubset, generators: Vec<u32>) {
        if self.found.contains_key(&subset.elements) {
            return;
        }
        let rep = self.records.len();
        self.found.insert(subset.elements.clone(), rep);
        self.records.push(SubgroupRecord { subset, generators });
        self.worklist.push(rep);
        let mut k = rep;
        while k < self.records.len() {
            for &g in self.gen_ids {
                let conj = self.table.conjugate_subset(&self.records[k].subset, g);
                if self.found.contains_key(&conj.elements) {
                    continue;
                }
                let gens = self.records[k].generators.iter().map(|&h| self.table.conj(h, g)).collect();
                self.found.insert(conj.elements.clone(), self.records.len());
                self.records.push(SubgroupRecord { subset: conj, generators: gens });
            }
            k += 1;
        }
    }
}

/// `μ(H, G)` indexed like the lattice.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MoebiusTable {
    mu: Vec<i64>,
}

impl MoebiusTable {
    pub fn mu(&self, i: usize) -> i64 {
        self.mu[i]
    }

    pub fn values(&self) -> &[i64] {
        &self.mu
    }
}
