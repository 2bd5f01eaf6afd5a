//! Simplicial complexes with the empty face, order complexes of posets,
//! joins, reduced Euler characteristics and reduced Betti numbers over GF(p).
//!
//! Layers are indexed by face size, so layer `s` holds the faces of
//! dimension `s - 1` and layer 0 is `{∅}`. Betti vectors use the same
//! indexing: entry 0 is dimension −1.

use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::linalg::{gf2_rank_dense, sparse_rank, SparseColumn};
use crate::poset::Poset;
use crate::sylow::check_prime;

/// Boundary matrices up to this many entries use packed dense GF(2) rows.
const DENSE_GF2_ENTRIES: usize = 1 << 24;

/// Faces of one size, stored back to back.
#[derive(Clone, Debug, PartialEq, Eq)]
struct Layer {
    size: usize,
    count: usize,
    data: Vec<u32>,
}

impl Layer {
    fn new(size: usize) -> Self {
        Layer { size, count: 0, data: Vec::new() }
    }

    fn push(&mut self, face: &[u32]) {
        debug_assert_eq!(face.len(), self.size);
        self.data.extend_from_slice(face);
        self.count += 1;
    }

    fn face(&self, i: usize) -> &[u32] {
        &self.data[i * self.size..(i + 1) * self.size]
    }

    fn sort(&mut self) {
        if self.size == 0 {
            return;
        }
        let mut faces: Vec<&[u32]> = self.data.chunks(self.size).collect();
        faces.sort_unstable();
        faces.dedup();
        self.count = faces.len();
        self.data = faces.concat();
    }

    fn index_of(&self, face: &[u32]) -> Option<usize> {
        if self.size == 0 {
            return (self.count == 1).then_some(0);
        }
        let (mut lo, mut hi) = (0, self.count);
        while lo < hi {
            let mid = (lo + hi) / 2;
            match self.face(mid).cmp(face) {
                Ordering::Less => lo = mid + 1,
                Ordering::Greater => hi = mid,
                Ordering::Equal => return Some(mid),
            }
        }
        None
    }
}

/// A finite simplicial complex that always contains the empty face.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialComplex {
    vertex_count: usize,
    layers: Vec<Layer>,
}

impl SimplicialComplex {
    /// The complex `{∅}`.
    pub fn empty_face_only() -> Self {
        let mut l0 = Layer::new(0);
        l0.count = 1;
        SimplicialComplex { vertex_count: 0, layers: vec![l0] }
    }

    /// Downward closure of the given faces on vertices `0..vertex_count`.
    pub fn from_faces(vertex_count: usize, faces: &[Vec<u32>]) -> Self {
        let mut c = SimplicialComplex::empty_face_only();
        c.vertex_count = vertex_count;
        for f in faces {
            let mut f = f.clone();
            f.sort_unstable();
            f.dedup();
            assert!(f.iter().all(|&v| (v as usize) < vertex_count), "vertex out of range");
            for mask in 1u64..(1 << f.len()) {
                let sub: Vec<u32> = (0..f.len()).filter(|i| mask >> i & 1 == 1).map(|i| f[i]).collect();
                c.layer_mut(sub.len()).push(&sub);
            }
        }
        c.finish();
        c
    }

    /// `n` isolated vertices.
    pub fn points(n: usize) -> Self {
        let faces: Vec<Vec<u32>> = (0..n as u32).map(|v| vec![v]).collect();
        SimplicialComplex::from_faces(n, &faces)
    }

    /// The full simplex on `n ≥ 1` vertices.
    pub fn simplex(n: usize) -> Self {
        SimplicialComplex::from_faces(n, &[(0..n as u32).collect()])
    }

    fn layer_mut(&mut self, size: usize) -> &mut Layer {
        while self.layers.len() <= size {
            let s = self.layers.len();
            self.layers.push(Layer::new(s));
        }
        &mut self.layers[size]
    }

    fn finish(&mut self) {
        for l in &mut self.layers {
            l.sort();
        }
        while self.layers.len() > 1 && self.layers.last().is_some_and(|l| l.count == 0) {
            self.layers.pop();
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    /// Top dimension; −1 for `{∅}`.
    pub fn dimension(&self) -> isize {
        self.layers.len() as isize - 2
    }

    /// Face counts from dimension −1 upwards.
    pub fn f_vector(&self) -> Vec<u64> {
        self.layers.iter().map(|l| l.count as u64).collect()
    }

    /// Faces of dimension `dim`, each a sorted vertex list, in lexicographic order.
    pub fn faces(&self, dim: isize) -> Vec<Vec<u32>> {
        let s = (dim + 1) as usize;
        match self.layers.get(s) {
            Some(l) => (0..l.count).map(|i| l.face(i).to_vec()).collect(),
            None => Vec::new(),
        }
    }

    /// Every facet of every face is present.
    pub fn is_downward_closed(&self) -> bool {
        self.layers.iter().skip(1).all(|l| {
            (0..l.count).all(|i| {
                let f = l.face(i);
                (0..f.len()).all(|skip| {
                    let sub: Vec<u32> = f.iter().enumerate().filter(|(j, _)| *j != skip).map(|(_, &v)| v).collect();
                    self.layers[l.size - 1].index_of(&sub).is_some()
                })
            })
        })
    }

    /// Columns of the boundary map from layer `s` to layer `s - 1` over GF(p).
    fn boundary_columns(&self, s: usize, p: u64) -> Vec<SparseColumn> {
        let (upper, lower) = (&self.layers[s], &self.layers[s - 1]);
        let mut sub = Vec::with_capacity(s);
        (0..upper.count)
            .map(|i| {
                let f = upper.face(i);
                let mut col: SparseColumn = (0..s)
                    .map(|skip| {
                        sub.clear();
                        sub.extend(f.iter().enumerate().filter(|(j, _)| *j != skip).map(|(_, &v)| v));
                        let row = lower.index_of(&sub).expect("downward closed") as u32;
                        let coeff = if skip % 2 == 0 { 1 } else { (p - 1) as u8 };
                        (row, coeff)
                    })
                    .collect();
                col.sort_unstable_by_key(|e| e.0);
                col
            })
            .collect()
    }

    fn boundary_rank(&self, s: usize, p: u64) -> Result<usize> {
        if s == 0 || s >= self.layers.len() {
            return Ok(0);
        }
        let rows = self.layers[s - 1].count;
        let cols = self.layers[s].count;
        let columns = self.boundary_columns(s, p);
        if p == 2 && rows.saturating_mul(cols) <= DENSE_GF2_ENTRIES {
            let words = rows.div_ceil(64).max(1);
            let packed = columns
                .iter()
                .map(|c| {
                    let mut w = vec![0u64; words];
                    for &(r, _) in c {
                        w[r as usize / 64] |= 1 << (r % 64);
                    }
                    w
                })
                .collect();
            return Ok(gf2_rank_dense(packed));
        }
        sparse_rank(columns, rows, p)
    }
}

/// Order complex: one face per chain of the poset, plus `∅`.
pub fn order_complex(poset: &Poset) -> SimplicialComplex {
    let mut c = SimplicialComplex::empty_face_only();
    c.vertex_count = poset.len();
    let mut chain: Vec<u32> = Vec::new();
    let mut sorted: Vec<u32> = Vec::new();
    fn extend(poset: &Poset, c: &mut SimplicialComplex, chain: &mut Vec<u32>, sorted: &mut Vec<u32>) {
        sorted.clear();
        sorted.extend_from_slice(chain);
        sorted.sort_unstable();
        c.layer_mut(sorted.len()).push(sorted);
        let top = *chain.last().unwrap() as usize;
        for w in poset.upper(top).ones() {
            chain.push(w as u32);
            extend(poset, c, chain, sorted);
            chain.pop();
        }
    }
    for v in 0..poset.len() {
        chain.push(v as u32);
        extend(poset, &mut c, &mut chain, &mut sorted);
        chain.pop();
    }
    c.finish();
    c
}

/// Join `X * Y`; the vertices of `Y` are renumbered after those of `X`.
pub fn join(x: &SimplicialComplex, y: &SimplicialComplex) -> SimplicialComplex {
    let mut c = SimplicialComplex::empty_face_only();
    c.vertex_count = x.vertex_count + y.vertex_count;
    let shift = x.vertex_count as u32;
    let mut face = Vec::new();
    for lx in &x.layers {
        for ly in &y.layers {
            for i in 0..lx.count {
                for j in 0..ly.count {
                    face.clear();
                    face.extend_from_slice(lx.face(i));
                    face.extend(ly.face(j).iter().map(|&v| v + shift));
                    c.layer_mut(face.len()).push(&face);
                }
            }
        }
    }
    // the empty layer was counted once per (∅, ∅) pair
    c.layers[0].count = 1;
    c.finish();
    c
}

/// `Σ_k (−1)^k f_k` from dimension −1 upwards.
pub fn reduced_euler_characteristic(x: &SimplicialComplex) -> i128 {
    alternating_sum(&x.f_vector())
}

fn alternating_sum(f: &[u64]) -> i128 {
    f.iter().enumerate().map(|(s, &n)| if s % 2 == 0 { -(n as i128) } else { n as i128 }).sum()
}

/// Face counts of the order complex of `poset` without building it, by
/// counting chains with a given minimum from the top down.
pub fn chain_f_vector(poset: &Poset) -> Vec<u64> {
    let order = poset.linear_extension();
    let mut counts: Vec<Vec<u64>> = vec![Vec::new(); poset.len()];
    for &v in order.iter().rev() {
        let mut c = vec![1u64];
        for w in poset.upper(v).ones() {
            let cw = &counts[w];
            if c.len() < cw.len() + 1 {
                c.resize(cw.len() + 1, 0);
            }
            for (l, &n) in cw.iter().enumerate() {
                c[l + 1] = c[l + 1].checked_add(n).expect("chain count overflow");
            }
        }
        counts[v] = c;
    }
    let mut f = vec![1u64];
    for c in &counts {
        if f.len() < c.len() + 1 {
            f.resize(c.len() + 1, 0);
        }
        for (l, &n) in c.iter().enumerate() {
            f[l + 1] = f[l + 1].checked_add(n).expect("chain count overflow");
        }
    }
    f
}

/// Reduced Euler characteristic of the order complex of `poset`.
pub fn poset_reduced_euler_characteristic(poset: &Poset) -> i128 {
    alternating_sum(&chain_f_vector(poset))
}

/// Reduced Betti numbers over GF(p), entry 0 being dimension −1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BettiVector {
    prime: u64,
    values: Vec<u64>,
}

impl BettiVector {
    /// Trailing zeros are dropped so equal vectors compare equal.
    pub fn new(prime: u64, mut values: Vec<u64>) -> Self {
        while values.last() == Some(&0) {
            values.pop();
        }
        BettiVector { prime, values }
    }

    pub fn prime(&self) -> u64 {
        self.prime
    }

    /// `β̃_dim`, zero outside the stored range.
    pub fn get(&self, dim: isize) -> u64 {
        if dim < -1 {
            return 0;
        }
        self.values.get((dim + 1) as usize).copied().unwrap_or(0)
    }

    /// Values from dimension −1 upwards, without trailing zeros.
    pub fn values(&self) -> &[u64] {
        &self.values
    }

    pub fn is_zero(&self) -> bool {
        self.values.is_empty()
    }

    pub fn euler_characteristic(&self) -> i128 {
        alternating_sum(&self.values)
    }
}

/// Reduced Betti numbers of `x` over GF(p).
pub fn reduced_betti(x: &SimplicialComplex, p: u64) -> Result<BettiVector> {
    check_prime(p)?;
    let n = x.layers.len();
    let ranks = boundary_ranks(x, p)?;
    let values = (0..n)
        .map(|s| {
            let r_in = if s + 1 < n { ranks[s + 1] } else { 0 };
            (x.layers[s].count - ranks[s] - r_in) as u64
        })
        .collect();
    Ok(BettiVector::new(p, values))
}

#[cfg(feature = "parallel")]
fn boundary_ranks(x: &SimplicialComplex, p: u64) -> Result<Vec<usize>> {
    use rayon::prelude::*;
    (0..x.layers.len()).into_par_iter().map(|s| x.boundary_rank(s, p)).collect()
}

#[cfg(not(feature = "parallel"))]
fn boundary_ranks(x: &SimplicialComplex, p: u64) -> Result<Vec<usize>> {
    (0..x.layers.len()).map(|s| x.boundary_rank(s, p)).collect()
}

pub fn is_acyclic(x: &SimplicialComplex, p: u64) -> Result<bool> {
    Ok(reduced_betti(x, p)?.is_zero())
}

/// Betti numbers of a join from those of its factors:
/// `β̃_k(X * Y) = Σ_{i+j=k−1} β̃_i(X) β̃_j(Y)`.
pub fn kunneth_join_betti(bx: &BettiVector, by: &BettiVector) -> Result<BettiVector> {
    if bx.prime != by.prime {
        return Err(Error::FieldMismatch { left: bx.prime, right: by.prime });
    }
    if bx.is_zero() || by.is_zero() {
        return Ok(BettiVector::new(bx.prime, Vec::new()));
    }
    // with entry a at dimension a−1, dimensions (a−1)+(b−1)+1 land at entry a+b
    let mut out = vec![0u64; bx.values.len() + by.values.len() - 1];
    for (a, &u) in bx.values.iter().enumerate() {
        for (b, &v) in by.values.iter().enumerate() {
            out[a + b] += u * v;
        }
    }
    Ok(BettiVector::new(bx.prime, out))
}

/// Checks `∂_{k} ∘ ∂_{k+1} = 0` over GF(p) on every basis face.
pub fn boundary_squares_vanish(x: &SimplicialComplex, p: u64) -> Result<bool> {
    check_prime(p)?;
    for s in 2..x.layers.len() {
        let outer = x.boundary_columns(s, p);
        let inner = x.boundary_columns(s - 1, p);
        for col in &outer {
            let mut acc = vec![0u64; x.layers[s - 2].count];
            for &(r, c) in col {
                for &(r2, c2) in &inner[r as usize] {
                    acc[r2 as usize] = (acc[r2 as usize] + c as u64 * c2 as u64) % p;
                }
            }
            if acc.iter().any(|&v| v != 0) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
