//! Finite posets stored as strict upper sets.

use fixedbitset::FixedBitSet;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poset {
    /// `above[i]` holds every `j` with `i < j`.
    above: Vec<FixedBitSet>,
}

impl Poset {
    /// Caller guarantees the sets describe a strict partial order.
    pub fn from_upper_sets(above: Vec<FixedBitSet>) -> Self {
        let n = above.len();
        debug_assert!(above.iter().enumerate().all(|(i, s)| s.len() == n && !s.contains(i)));
        Poset { above }
    }

    /// Strict order given by `less(i, j)`; the relation must already be transitive.
    pub fn from_relation(n: usize, less: impl Fn(usize, usize) -> bool) -> Self {
        let above = (0..n)
            .map(|i| {
                let mut s = FixedBitSet::with_capacity(n);
                for j in 0..n {
                    if i != j && less(i, j) {
                        s.insert(j);
                    }
                }
                s
            })
            .collect();
        Poset { above }
    }

    pub fn antichain(n: usize) -> Self {
        Poset { above: vec![FixedBitSet::with_capacity(n); n] }
    }

    /// `0 < 1 < … < n-1`.
    pub fn chain(n: usize) -> Self {
        Poset::from_relation(n, |i, j| i < j)
    }

    pub fn len(&self) -> usize {
        self.above.len()
    }

    pub fn is_empty(&self) -> bool {
        self.above.is_empty()
    }

    pub fn less(&self, i: usize, j: usize) -> bool {
        self.above[i].contains(j)
    }

    pub fn comparable(&self, i: usize, j: usize) -> bool {
        self.less(i, j) || self.less(j, i)
    }

    pub fn upper(&self, i: usize) -> &FixedBitSet {
        &self.above[i]
    }

    /// Number of pairs `i < j`.
    pub fn relation_count(&self) -> usize {
        self.above.iter().map(|s| s.count_ones(..)).sum()
    }

    pub fn is_antichain(&self) -> bool {
        self.above.iter().all(|s| s.is_clear())
    }

    /// Pairs `(i, j)` with `i < j` and nothing strictly between, sorted.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (i, up) in self.above.iter().enumerate() {
            let mut skip = FixedBitSet::with_capacity(self.len());
            for k in up.ones() {
                skip.union_with(&self.above[k]);
            }
            out.extend(up.difference(&skip).map(|j| (i, j)));
        }
        out
    }

    /// A linear extension: every element precedes everything above it.
    pub fn linear_extension(&self) -> Vec<usize> {
        let mut below = vec![0usize; self.len()];
        for up in &self.above {
            for j in up.ones() {
                below[j] += 1;
            }
        }
        let mut order: Vec<usize> = (0..self.len()).collect();
        order.sort_by_key(|&i| below[i]);
        order
    }

    /// Sub-poset on `keep`, renumbered in the given order.
    pub fn induced(&self, keep: &[usize]) -> Poset {
        Poset::from_relation(keep.len(), |a, b| self.less(keep[a], keep[b]))
    }

    /// Irreflexive and transitive.
    pub fn is_strict_order(&self) -> bool {
        self.above.iter().enumerate().all(|(i, up)| !up.contains(i) && up.ones().all(|j| self.above[j].is_subset(up)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn chains_and_antichains() {
        let c = Poset::chain(4);
        assert_eq!(c.relation_count(), 6);
        assert_eq!(c.covers(), vec![(0, 1), (1, 2), (2, 3)]);
        assert!(c.is_strict_order());
        assert!(!c.is_antichain());
        let a = Poset::antichain(3);
        assert!(a.is_antichain());
        assert!(Poset::antichain(0).is_antichain());
    }

    #[test]
    fn linear_extension_respects_order() {
        let p = Poset::from_relation(6, |i, j| j % i.max(1) == 0 && i != 0 && j > i);
        let ext = p.linear_extension();
        let pos: Vec<usize> = (0..6).map(|v| ext.iter().position(|&x| x == v).unwrap()).collect();
        for i in 0..6 {
            for j in p.upper(i).ones() {
                assert!(pos[i] < pos[j]);
            }
        }
    }
}
