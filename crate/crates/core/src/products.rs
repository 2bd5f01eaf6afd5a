//! Direct powers, diagonal copies, quotient actions and minimal normal
//! subgroups.

use crate::elements::{ElementSubset, ElementTable};
use crate::error::{Error, Result};
use crate::group::GeneratedGroup;
use crate::perm::Permutation;

/// `(k, k, …, k)` acting on `t` consecutive blocks.
pub fn repeat_blocks(k: &Permutation, t: usize) -> Permutation {
    let n = k.degree();
    let images = (0..t).flat_map(|b| k.images().iter().map(move |&i| (b * n) as u32 + i)).collect();
    Permutation::from_images_unchecked(images)
}

impl GeneratedGroup {
    /// `L^t` on `t · degree` points, one copy per block.
    pub fn direct_power(&self, t: usize) -> Result<GeneratedGroup> {
        if t == 0 {
            return Err(Error::InvalidArgument("direct power needs t >= 1".into()));
        }
        let n = self.degree();
        let gens = (0..t).flat_map(|b| self.generators().iter().map(move |g| g.shifted(b * n, t * n))).collect();
        GeneratedGroup::from_generators(gens, t * n)
    }

    /// The `block`-th factor of `self^t`.
    pub fn factor_embedding(&self, block: usize, t: usize) -> Result<GeneratedGroup> {
        if block >= t {
            return Err(Error::InvalidArgument(format!("block {block} out of range for t = {t}")));
        }
        let n = self.degree();
        let gens = self.generators().iter().map(|g| g.shifted(block * n, t * n)).collect();
        GeneratedGroup::from_generators(gens, t * n)
    }

    /// `{(k, …, k) : k ∈ K}` inside the `t`-th direct power of the parent.
    pub fn diagonal_embedding(&self, t: usize) -> Result<GeneratedGroup> {
        if t == 0 {
            return Err(Error::InvalidArgument("diagonal embedding needs t >= 1".into()));
        }
        let gens = self.generators().iter().map(|k| repeat_blocks(k, t)).collect();
        GeneratedGroup::from_generators(gens, t * self.degree())
    }

    /// `G/N` as a permutation group on the right cosets of `N`.
    ///
    /// Generator `i` of the result is the image of generator `i` of `G`.
    /// Cosets are numbered by their smallest element id.
    pub fn quotient_representation(&self, normal: &GeneratedGroup) -> Result<GeneratedGroup> {
        if !normal.is_subgroup_of(self) {
            return Err(Error::NotSubgroup("N is not a subgroup of G".into()));
        }
        if !normal.is_normal_in(self) {
            return Err(Error::NotNormal("N is not normal in G".into()));
        }
        let table = ElementTable::new(self)?;
        let n_ids: Vec<u32> = normal.elements()?.iter().map(|e| table.id_of(e).expect("N inside G")).collect();
        let mut coset_of = vec![u32::MAX; table.len()];
        let mut count = 0u32;
        for x in 0..table.len() as u32 {
            if coset_of[x as usize] != u32::MAX {
                continue;
            }
            for &y in &n_ids {
                coset_of[table.mul(y, x) as usize] = count;
            }
            count += 1;
        }
        let reps: Vec<u32> = {
            let mut r = vec![u32::MAX; count as usize];
            for x in 0..table.len() as u32 {
                let c = coset_of[x as usize] as usize;
                if r[c] == u32::MAX {
                    r[c] = x;
                }
            }
            r
        };
        let gens = self
            .generators()
            .iter()
            .map(|g| {
                let gid = table.id_of(g).expect("generator in G");
                let images = reps.iter().map(|&r| coset_of[table.mul(r, gid) as usize]).collect();
                Permutation::from_images_unchecked(images)
            })
            .collect();
        GeneratedGroup::from_generators(gens, count as usize)
    }

    /// All minimal normal subgroups, sorted by order and then element ids.
    ///
    /// Each one is the normal closure of any of its non-identity elements, so
    /// the candidates are the subgroups generated by single conjugacy classes.
    pub fn minimal_normal_subgroups(&self) -> Result<Vec<GeneratedGroup>> {
        if self.is_trivial() {
            return Err(Error::TrivialGroup);
        }
        let table = ElementTable::new(self)?;
        let gen_ids: Vec<u32> = self.generators().iter().map(|g| table.id_of(g).unwrap()).collect();
        let classes = conjugacy_classes(&table, &gen_ids);
        let mut closures: Vec<(ElementSubset, Vec<u32>)> = Vec::new();
        for class in classes.iter().skip(1) {
            let (closure, witness) = generate_with_witness(&table, class);
            if !closures.iter().any(|(c, _)| *c == closure) {
                closures.push((closure, witness));
            }
        }
        let mut minimal: Vec<&(ElementSubset, Vec<u32>)> = closures
            .iter()
            .filter(|(c, _)| !closures.iter().any(|(d, _)| d.len() < c.len() && d.is_subset(c)))
            .collect();
        minimal.sort_by(|a, b| (a.0.len(), &a.0.elements).cmp(&(b.0.len(), &b.0.elements)));
        Ok(minimal.into_iter().map(|(_, w)| table.subgroup_group(w)).collect())
    }
}

/// Conjugacy classes as sorted id lists, ordered by smallest element; the
/// identity class comes first.
pub fn conjugacy_classes(table: &ElementTable, gen_ids: &[u32]) -> Vec<Vec<u32>> {
    let mut class_of = vec![usize::MAX; table.len()];
    let mut classes = Vec::new();
    for start in 0..table.len() as u32 {
        if class_of[start as usize] != usize::MAX {
            continue;
        }
        let idx = classes.len();
        class_of[start as usize] = idx;
        let mut class = vec![start];
        let mut k = 0;
        while k < class.len() {
            let x = class[k];
            for &g in gen_ids {
                let y = table.conj(x, g);
                if class_of[y as usize] == usize::MAX {
                    class_of[y as usize] = idx;
                    class.push(y);
                }
            }
            k += 1;
        }
        class.sort_unstable();
        classes.push(class);
    }
    classes
}

/// Subgroup generated by `candidates`, with the sub-list of candidates that
/// actually enlarged it along the way.
pub fn generate_with_witness(table: &ElementTable, candidates: &[u32]) -> (ElementSubset, Vec<u32>) {
    let mut witness: Vec<u32> = Vec::new();
    let mut current = table.generate(&[]);
    for &c in candidates {
        if !current.contains(c) {
            current = table.extend(&current, &witness, c);
            witness.push(c);
        }
    }
    (current, witness)
}
