//! The coset poset `C(G)`, the relative poset `C(G, N)`, and fixed points of
//! the action of `(G × G) ⋊ Aut(G)` on them.
//!
//! A triple `(g, h, α)` sends the right coset `Hx` to `(g⁻¹ H x h)^α`, where
//! `α` is conjugation by an element of some overgroup normalizing `G`.

use std::collections::HashMap;
use std::fmt::Write as _;

use fixedbitset::FixedBitSet;

use crate::elements::ElementTable;
use crate::error::{Error, Result};
use crate::group::GeneratedGroup;
use crate::lattice::SubgroupLattice;
use crate::perm::Permutation;
use crate::poset::Poset;

/// A coset `Hx`: lattice index of `H` and the smallest element id in `Hx`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CosetVertex {
    pub subgroup: usize,
    pub representative: u32,
}

pub struct CosetPoset<'a> {
    lattice: &'a SubgroupLattice,
    vertices: Vec<CosetVertex>,
    poset: Poset,
    /// Subgroups contributing vertices, in vertex order.
    subgroups: Vec<usize>,
    /// For each contributing subgroup: element id to coset number.
    coset_of: HashMap<usize, Vec<u32>>,
    /// First vertex index of each contributing subgroup.
    offset: HashMap<usize, usize>,
    normal: Option<Vec<u32>>,
}

/// Cosets of every proper subgroup in the lattice's family.
pub fn build_coset_poset<'a>(group: &GeneratedGroup, lattice: &'a SubgroupLattice) -> Result<CosetPoset<'a>> {
    check_lattice(group, lattice)?;
    let keep: Vec<usize> = (0..lattice.len()).filter(|&i| i != lattice.index_of_parent()).collect();
    Ok(CosetPoset::assemble(lattice, keep, None))
}

/// Cosets `Hx` of proper subgroups with `HN = G`.
pub fn build_relative_poset<'a>(
    group: &GeneratedGroup,
    normal: &GeneratedGroup,
    lattice: &'a SubgroupLattice,
) -> Result<CosetPoset<'a>> {
    check_lattice(group, lattice)?;
    if !normal.is_subgroup_of(group) {
        return Err(Error::NotSubgroup("N is not a subgroup of G".into()));
    }
    if !normal.is_normal_in(group) {
        return Err(Error::NotNormal("N is not normal in G".into()));
    }
    let table = lattice.table();
    let n_ids: Vec<u32> = normal.elements()?.iter().map(|e| table.id_of(e).expect("N inside G")).collect();
    let mut n_set = table.empty_set();
    n_ids.iter().for_each(|&x| n_set.insert(x as usize));
    let g_order = table.len();
    let keep: Vec<usize> = (0..lattice.len())
        .filter(|&i| i != lattice.index_of_parent())
        .filter(|&i| {
            let h = &lattice.subgroup(i).subset;
            let meet = h.set.intersection(&n_set).count();
            h.len() * n_ids.len() == g_order * meet
        })
        .collect();
    Ok(CosetPoset::assemble(lattice, keep, Some(n_ids)))
}

fn check_lattice(group: &GeneratedGroup, lattice: &SubgroupLattice) -> Result<()> {
    if group.degree() != lattice.parent().degree() || !group.same_group(lattice.parent()) {
        return Err(Error::LatticeMismatch);
    }
    Ok(())
}

impl<'a> CosetPoset<'a> {
    fn assemble(lattice: &'a SubgroupLattice, subgroups: Vec<usize>, normal: Option<Vec<u32>>) -> Self {
        let table = lattice.table();
        let mut vertices = Vec::new();
        let mut coset_of = HashMap::new();
        let mut offset = HashMap::new();
        for &s in &subgroups {
            let h = &lattice.subgroup(s).subset;
            let mut map = vec![u32::MAX; table.len()];
            offset.insert(s, vertices.len());
            let mut count = 0;
            for x in 0..table.len() as u32 {
                if map[x as usize] != u32::MAX {
                    continue;
                }
                // x is the smallest element of Hx, since smaller ones are already assigned
                for &y in &h.elements {
                    map[table.mul(y, x) as usize] = count;
                }
                vertices.push(CosetVertex { subgroup: s, representative: x });
                count += 1;
            }
            coset_of.insert(s, map);
        }
        let n = vertices.len();
        let mut above = vec![FixedBitSet::with_capacity(n); n];
        for (v, vx) in vertices.iter().enumerate() {
            for k in lattice.above(vx.subgroup) {
                if k == vx.subgroup {
                    continue;
                }
                if let Some(&off) = offset.get(&k) {
                    above[v].insert(off + coset_of[&k][vx.representative as usize] as usize);
                }
            }
        }
        CosetPoset { lattice, vertices, poset: Poset::from_upper_sets(above), subgroups, coset_of, offset, normal }
    }

    pub fn lattice(&self) -> &'a SubgroupLattice {
        self.lattice
    }

    pub fn poset(&self) -> &Poset {
        &self.poset
    }

    pub fn vertices(&self) -> &[CosetVertex] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Lattice indices of the subgroups whose cosets are vertices.
    pub fn subgroups(&self) -> &[usize] {
        &self.subgroups
    }

    pub fn is_relative(&self) -> bool {
        self.normal.is_some()
    }

    /// Vertex index of the coset of subgroup `subgroup` containing element `x`.
    pub fn vertex_of(&self, subgroup: usize, x: u32) -> Option<usize> {
        let off = self.offset.get(&subgroup)?;
        Some(off + self.coset_of[&subgroup][x as usize] as usize)
    }

    /// Elements of the coset at vertex `v`, sorted.
    pub fn coset_elements(&self, v: usize) -> Vec<u32> {
        let vx = self.vertices[v];
        self.lattice.table().right_coset(&self.lattice.subgroup(vx.subgroup).subset, vx.representative)
    }

    pub fn is_antichain(&self) -> bool {
        self.poset.is_antichain()
    }

    /// Cosets `Hx` fixed by left translation by `P` and right translation by
    /// `K`, which happens exactly when `P ≤ H` and `x K x⁻¹ ≤ H`.
    pub fn translation_fixed_points(&self, p: &GeneratedGroup, k: &GeneratedGroup) -> Result<Vec<usize>> {
        let table = self.lattice.table();
        let p_ids = subgroup_generator_ids(table, p, "P")?;
        let k_ids = subgroup_generator_ids(table, k, "K")?;
        Ok((0..self.len())
            .filter(|&v| {
                let vx = self.vertices[v];
                let h = &self.lattice.subgroup(vx.subgroup).subset;
                let x_inv = table.inv(vx.representative);
                p_ids.iter().all(|&g| h.contains(g)) && k_ids.iter().all(|&kk| h.contains(table.conj(kk, x_inv)))
            })
            .collect())
    }

    /// Image of vertex `v` under one triple of `E`.
    pub fn act(&self, e: &ActionGroup, t: &ActionTriple, v: usize) -> Result<usize> {
        let table = self.lattice.table();
        let vx = self.vertices[v];
        let aut = &e.auts[t.aut];
        let g_inv = table.inv(t.g);
        let mut image: Vec<u32> = self
            .lattice
            .subgroup(vx.subgroup)
            .subset
            .elements
            .iter()
            .map(|&y| aut[table.conj(y, t.g) as usize])
            .collect();
        image.sort_unstable();
        let target = self
            .lattice
            .index_of_subset(&image)
            .ok_or_else(|| Error::ActionNotPreserving("image subgroup is outside the lattice family".into()))?;
        let rep = aut[table.mul(table.mul(g_inv, vx.representative), t.h) as usize];
        self.vertex_of(target, rep).ok_or_else(|| Error::ActionNotPreserving("image coset is not a vertex".into()))
    }

    /// Vertices fixed by every generator of `E`. Each generator must map the
    /// vertex set onto itself.
    pub fn action_fixed_points(&self, e: &ActionGroup) -> Result<Vec<usize>> {
        if e.degree != self.lattice.table().len() {
            return Err(Error::LatticeMismatch);
        }
        if let Some(n) = &self.normal {
            for aut in &e.auts {
                let mut img: Vec<u32> = n.iter().map(|&x| aut[x as usize]).collect();
                img.sort_unstable();
                let mut sorted = n.clone();
                sorted.sort_unstable();
                if img != sorted {
                    return Err(Error::ActionNotPreserving("automorphism does not normalize N".into()));
                }
            }
        }
        let mut fixed = vec![true; self.len()];
        for t in &e.generators {
            let mut hit = FixedBitSet::with_capacity(self.len());
            for (v, f) in fixed.iter_mut().enumerate() {
                let w = self.act(e, t, v)?;
                hit.insert(w);
                if w != v {
                    *f = false;
                }
            }
            if hit.count_ones(..) != self.len() {
                return Err(Error::ActionNotPreserving("generator is not a bijection on vertices".into()));
            }
        }
        Ok((0..self.len()).filter(|&v| fixed[v]).collect())
    }

    /// One vertex per line as `order:representative`, then `--`, then the
    /// cover pairs `i j` by vertex index.
    pub fn dump(&self) -> String {
        let table = self.lattice.table();
        let mut out = String::new();
        for vx in &self.vertices {
            let _ =
                writeln!(out, "{}:{}", self.lattice.subgroup(vx.subgroup).order(), table.element(vx.representative));
        }
        out.push_str("--\n");
        for (i, j) in self.poset.covers() {
            let _ = writeln!(out, "{i} {j}");
        }
        out
    }
}

fn subgroup_generator_ids(table: &ElementTable, sub: &GeneratedGroup, what: &str) -> Result<Vec<u32>> {
    sub.generators()
        .iter()
        .map(|g| table.id_of(g).ok_or_else(|| Error::NotSubgroup(format!("{what} is not a subgroup of G"))))
        .collect()
}

/// `Σ_{H<G} [G:H]` over the proper subgroups in the lattice's family.
pub fn expected_vertex_count(lattice: &SubgroupLattice) -> usize {
    let n = lattice.table().len();
    (0..lattice.len()).filter(|&i| i != lattice.index_of_parent()).map(|i| n / lattice.subgroup(i).order()).sum()
}

/// Conjugation by an element of an overgroup that normalizes `G`.
#[derive(Clone, Debug)]
pub struct OvergroupAutomorphism {
    overgroup: GeneratedGroup,
    conjugator: Permutation,
}

impl OvergroupAutomorphism {
    pub fn new(group: &GeneratedGroup, overgroup: &GeneratedGroup, conjugator: Permutation) -> Result<Self> {
        if !overgroup.membership(&conjugator)? {
            return Err(Error::InvalidArgument("conjugator is not in the overgroup".into()));
        }
        if !group.is_subgroup_of(overgroup) {
            return Err(Error::NotSubgroup("G is not inside the overgroup".into()));
        }
        if !group.is_normalized_by(&conjugator) {
            return Err(Error::NotNormalizing);
        }
        Ok(OvergroupAutomorphism { overgroup: overgroup.clone(), conjugator })
    }

    pub fn conjugator(&self) -> &Permutation {
        &self.conjugator
    }

    pub fn overgroup(&self) -> &GeneratedGroup {
        &self.overgroup
    }

    pub fn apply(&self, p: &Permutation) -> Permutation {
        p.conjugate_by(&self.conjugator)
    }

    pub fn apply_group(&self, h: &GeneratedGroup) -> GeneratedGroup {
        h.conjugate_group(&self.conjugator).expect("degrees agree")
    }

    /// True when the automorphism maps `h` onto itself.
    pub fn normalizes(&self, h: &GeneratedGroup) -> bool {
        h.is_normalized_by(&self.conjugator)
    }

    /// The induced map on element ids of `table`.
    pub fn id_map(&self, table: &ElementTable) -> Vec<u32> {
        table.elements().iter().map(|e| table.id_of(&self.apply(e)).expect("conjugator normalizes G")).collect()
    }
}

/// An element `(g, h, α)` of `(G × G) ⋊ Aut(G)`, with `α` an index into the
/// owning group's automorphism list.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ActionTriple {
    pub g: u32,
    pub h: u32,
    pub aut: usize,
}

/// A finitely generated subgroup of `(G × G) ⋊ Aut(G)` acting on cosets.
pub struct ActionGroup {
    degree: usize,
    /// Closed list of automorphisms as id maps; index 0 is the identity.
    auts: Vec<Vec<u32>>,
    aut_inverse: Vec<usize>,
    aut_product: Vec<Vec<usize>>,
    generators: Vec<ActionTriple>,
}

pub const ACTION_CLOSURE_LIMIT: usize = 1_000_000;

impl ActionGroup {
    /// Group generated by left translations `(g, 1, 1)`, right translations
    /// `(1, h, 1)` and automorphisms `(1, 1, α)`.
    pub fn new(
        table: &ElementTable,
        left: &[Permutation],
        right: &[Permutation],
        automorphisms: &[&OvergroupAutomorphism],
    ) -> Result<Self> {
        let ids = |ps: &[Permutation]| -> Result<Vec<u32>> {
            ps.iter()
                .map(|p| table.id_of(p).ok_or_else(|| Error::NotSubgroup("translation outside G".into())))
                .collect()
        };
        let left = ids(left)?;
        let right = ids(right)?;
        let n = table.len();
        let mut auts: Vec<Vec<u32>> = vec![(0..n as u32).collect()];
        let gen_maps: Vec<Vec<u32>> = automorphisms.iter().map(|a| a.id_map(table)).collect();
        let mut k = 0;
        while k < auts.len() {
            for m in &gen_maps {
                let c: Vec<u32> = auts[k].iter().map(|&x| m[x as usize]).collect();
                if !auts.contains(&c) {
                    auts.push(c);
                }
            }
            k += 1;
        }
        let find = |m: &Vec<u32>| auts.iter().position(|a| a == m).expect("closed");
        let aut_product: Vec<Vec<usize>> = auts
            .iter()
            .map(|a| auts.iter().map(|b| find(&a.iter().map(|&x| b[x as usize]).collect())).collect())
            .collect();
        let aut_inverse = (0..auts.len()).map(|a| aut_product[a].iter().position(|&c| c == 0).unwrap()).collect();
        let mut generators: Vec<ActionTriple> = Vec::new();
        generators.extend(left.iter().map(|&g| ActionTriple { g, h: 0, aut: 0 }));
        generators.extend(right.iter().map(|&h| ActionTriple { g: 0, h, aut: 0 }));
        for m in &gen_maps {
            generators.push(ActionTriple { g: 0, h: 0, aut: find(m) });
        }
        Ok(ActionGroup { degree: n, auts, aut_inverse, aut_product, generators })
    }

    pub fn identity() -> ActionTriple {
        ActionTriple { g: 0, h: 0, aut: 0 }
    }

    pub fn generators(&self) -> &[ActionTriple] {
        &self.generators
    }

    /// Number of distinct automorphisms generated.
    pub fn automorphism_count(&self) -> usize {
        self.auts.len()
    }

    /// `y^α` for the automorphism at index `aut`.
    pub fn apply_aut(&self, aut: usize, y: u32) -> u32 {
        self.auts[aut][y as usize]
    }

    /// Product `t1 · t2`, acting as `t1` first:
    /// `(g1 · g2^{α1⁻¹}, h1 · h2^{α1⁻¹}, α1 α2)`.
    pub fn compose(&self, table: &ElementTable, t1: &ActionTriple, t2: &ActionTriple) -> ActionTriple {
        let back = self.aut_inverse[t1.aut];
        ActionTriple {
            g: table.mul(t1.g, self.apply_aut(back, t2.g)),
            h: table.mul(t1.h, self.apply_aut(back, t2.h)),
            aut: self.aut_product[t1.aut][t2.aut],
        }
    }

    /// All elements, by breadth-first closure from the identity.
    pub fn closure(&self, table: &ElementTable, limit: usize) -> Result<Vec<ActionTriple>> {
        let mut seen = std::collections::HashSet::new();
        let mut out = vec![ActionGroup::identity()];
        seen.insert(out[0]);
        let mut k = 0;
        while k < out.len() {
            for s in &self.generators {
                let t = self.compose(table, &out[k], s);
                if seen.insert(t) {
                    if out.len() >= limit {
                        return Err(Error::Overflow("action group closure"));
                    }
                    out.push(t);
                }
            }
            k += 1;
        }
        out.sort_unstable();
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::DEFAULT_LATTICE_BOUND;

    fn g(words: &[&str], n: usize) -> GeneratedGroup {
        GeneratedGroup::from_cycle_words(words, n).unwrap()
    }

    #[test]
    fn small_coset_posets() {
        let z2 = g(&["(1,2)"], 2);
        let lat = SubgroupLattice::enumerate(&z2, DEFAULT_LATTICE_BOUND).unwrap();
        let c = build_coset_poset(&z2, &lat).unwrap();
        assert_eq!((c.len(), c.poset().relation_count()), (2, 0));

        let v4 = g(&["(1,2)", "(3,4)"], 4);
        let lat = SubgroupLattice::enumerate(&v4, DEFAULT_LATTICE_BOUND).unwrap();
        let c = build_coset_poset(&v4, &lat).unwrap();
        assert_eq!((c.len(), c.poset().covers().len()), (10, 12));

        let s3 = GeneratedGroup::symmetric(3);
        let lat = SubgroupLattice::enumerate(&s3, DEFAULT_LATTICE_BOUND).unwrap();
        let c = build_coset_poset(&s3, &lat).unwrap();
        assert_eq!((c.len(), c.poset().relation_count()), (17, 24));
        assert_eq!(c.len(), expected_vertex_count(&lat));
        assert!(c.poset().is_strict_order());
        assert!(!c.is_antichain());
    }

    #[test]
    fn relative_posets() {
        let s3 = GeneratedGroup::symmetric(3);
        let lat = SubgroupLattice::enumerate(&s3, DEFAULT_LATTICE_BOUND).unwrap();
        let a3 = GeneratedGroup::alternating(3);
        let r = build_relative_poset(&s3, &a3, &lat).unwrap();
        assert_eq!(r.len(), 9);
        assert!(r.is_antichain());
        let c2 = g(&["(1,2)"], 3);
        assert!(matches!(build_relative_poset(&s3, &c2, &lat), Err(Error::NotNormal(_))));

        let z4 = g(&["(1,2,3,4)"], 4);
        let lat = SubgroupLattice::enumerate(&z4, DEFAULT_LATTICE_BOUND).unwrap();
        let r = build_relative_poset(&z4, &g(&["(1,3)(2,4)"], 4), &lat).unwrap();
        assert!(r.is_empty());
        assert!(r.is_antichain());
    }

    #[test]
    fn lattice_must_match() {
        let s3 = GeneratedGroup::symmetric(3);
        let lat = SubgroupLattice::enumerate(&s3, DEFAULT_LATTICE_BOUND).unwrap();
        assert!(matches!(build_coset_poset(&GeneratedGroup::alternating(3), &lat), Err(Error::LatticeMismatch)));
    }

    #[test]
    fn translation_fixed_points_examples() {
        let z2 = g(&["(1,2)"], 2);
        let lat = SubgroupLattice::enumerate(&z2, DEFAULT_LATTICE_BOUND).unwrap();
        let c = build_coset_poset(&z2, &lat).unwrap();
        assert!(c.translation_fixed_points(&z2, &GeneratedGroup::trivial(2)).unwrap().is_empty());

        let s3 = GeneratedGroup::symmetric(3);
        let lat = SubgroupLattice::enumerate(&s3, DEFAULT_LATTICE_BOUND).unwrap();
        let c = build_coset_poset(&s3, &lat).unwrap();
        let c3 = GeneratedGroup::alternating(3);
        let fixed = c.translation_fixed_points(&c3, &c3).unwrap();
        assert_eq!(fixed.len(), 2);
        assert!(fixed.iter().all(|&v| lat.subgroup(c.vertices()[v].subgroup).order() == 3));

        let table = lat.table();
        let e = ActionGroup::new(table, c3.generators(), c3.generators(), &[]).unwrap();
        assert_eq!(c.action_fixed_points(&e).unwrap(), fixed);
        assert_eq!(e.closure(table, 100).unwrap().len(), 9);

        let trivial = ActionGroup::new(table, &[], &[], &[]).unwrap();
        assert_eq!(c.action_fixed_points(&trivial).unwrap().len(), 17);
    }

    #[test]
    fn automorphisms_must_normalize() {
        let a4 = GeneratedGroup::alternating(4);
        let s4 = GeneratedGroup::symmetric(4);
        let t = Permutation::parse("(1,2)", 4).unwrap();
        assert!(OvergroupAutomorphism::new(&a4, &s4, t.clone()).is_ok());
        let c3 = g(&["(1,2,3)"], 4);
        assert!(matches!(
            OvergroupAutomorphism::new(&c3, &s4, Permutation::parse("(3,4)", 4).unwrap()),
            Err(Error::NotNormalizing)
        ));
    }

    #[test]
    fn dump_lists_vertices_then_covers() {
        let z2 = g(&["(1,2)"], 2);
        let lat = SubgroupLattice::enumerate(&z2, DEFAULT_LATTICE_BOUND).unwrap();
        let c = build_coset_poset(&z2, &lat).unwrap();
        assert_eq!(c.dump(), "1:()\n1:(1,2)\n--\n");
    }
}
