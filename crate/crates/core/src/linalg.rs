//! Matrix rank over GF(p) for boundary matrices.
//!
//! Two layouts: packed bit rows with word-level XOR for dense GF(2) work, and
//! sparse column reduction keyed by the lowest nonzero row, which suits the
//! very sparse boundary matrices of large order complexes.

use crate::error::{Error, Result};
use crate::sylow::is_prime;

/// A sparse column: strictly increasing row indices with nonzero coefficients.
pub type SparseColumn = Vec<(u32, u8)>;

/// Rank of a dense GF(2) matrix given as packed rows of `u64` words.
pub fn gf2_rank_dense(mut rows: Vec<Vec<u64>>) -> usize {
    let mut rank = 0;
    // pivot row for each bit position
    let mut pivots: Vec<Option<usize>> = Vec::new();
    let width = rows.first().map_or(0, Vec::len);
    pivots.resize(width * 64, None);
    for r in 0..rows.len() {
        while let Some(lead) = first_bit(&rows[r]) {
            match pivots[lead] {
                Some(p) => {
                    // pivots always come from earlier rows
                    let (lo, hi) = rows.split_at_mut(r);
                    for (x, y) in hi[0].iter_mut().zip(lo[p].iter()) {
                        *x ^= *y;
                    }
                }
                None => {
                    pivots[lead] = Some(r);
                    rank += 1;
                    break;
                }
            }
        }
    }
    rank
}

fn first_bit(row: &[u64]) -> Option<usize> {
    row.iter().enumerate().find(|(_, w)| **w != 0).map(|(i, w)| i * 64 + w.trailing_zeros() as usize)
}

/// Rank of a dense matrix over GF(p) with byte entries.
pub fn dense_rank_mod_p(mut rows: Vec<Vec<u8>>, p: u64) -> Result<usize> {
    let p = field_prime(p)?;
    let width = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..width {
        let Some(pivot) = (rank..rows.len()).find(|&r| rows[r][col] != 0) else { continue };
        rows.swap(rank, pivot);
        let inv = inverse_mod(rows[rank][col] as u32, p);
        for x in &mut rows[rank][col..] {
            *x = ((*x as u32 * inv) % p) as u8;
        }
        let pivot_row = rows[rank].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != rank && row[col] != 0 {
                let f = row[col] as u32;
                for (x, &y) in row[col..].iter_mut().zip(&pivot_row[col..]) {
                    let sub = f * y as u32 % p;
                    *x = ((*x as u32 + p - sub) % p) as u8;
                }
            }
        }
        rank += 1;
    }
    Ok(rank)
}

/// Rank of a matrix over GF(p) given by sparse columns.
///
/// Each column is reduced against stored columns sharing its lowest row until
/// its lowest row is new or it vanishes.
pub fn sparse_rank(columns: Vec<SparseColumn>, row_count: usize, p: u64) -> Result<usize> {
    let p = field_prime(p)?;
    if p == 2 {
        let cols = columns.into_iter().map(|c| c.into_iter().map(|(r, _)| r).collect()).collect();
        return Ok(sparse_rank_gf2(cols, row_count));
    }
    let mut owner: Vec<u32> = vec![u32::MAX; row_count];
    let mut stored: Vec<SparseColumn> = Vec::new();
    for mut col in columns {
        while let Some(&(low, c)) = col.last() {
            let o = owner[low as usize];
            if o == u32::MAX {
                // normalize so the pivot coefficient is 1
                let inv = inverse_mod(c as u32, p);
                for e in col.iter_mut() {
                    e.1 = ((e.1 as u32 * inv) % p) as u8;
                }
                owner[low as usize] = stored.len() as u32;
                stored.push(col);
                break;
            }
            col = axpy_mod_p(&col, &stored[o as usize], p - c as u32, p);
        }
    }
    Ok(stored.len())
}

/// Rank over GF(2) of sparse columns given as sorted row lists.
pub fn sparse_rank_gf2(columns: Vec<Vec<u32>>, row_count: usize) -> usize {
    let mut owner: Vec<u32> = vec![u32::MAX; row_count];
    let mut stored: Vec<Vec<u32>> = Vec::new();
    for mut col in columns {
        while let Some(&low) = col.last() {
            let o = owner[low as usize];
            if o == u32::MAX {
                owner[low as usize] = stored.len() as u32;
                stored.push(col);
                break;
            }
            col = symmetric_difference(&col, &stored[o as usize]);
        }
    }
    stored.len()
}

fn symmetric_difference(a: &[u32], b: &[u32]) -> Vec<u32> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => {
                out.push(a[i]);
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                out.push(b[j]);
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    out
}

/// `a + f·b` over GF(p), dropping zero entries.
fn axpy_mod_p(a: &[(u32, u8)], b: &[(u32, u8)], f: u32, p: u32) -> SparseColumn {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let ra = a.get(i).map_or(u32::MAX, |e| e.0);
        let rb = b.get(j).map_or(u32::MAX, |e| e.0);
        if ra < rb {
            out.push(a[i]);
            i += 1;
        } else if rb < ra {
            out.push((rb, ((f * b[j].1 as u32) % p) as u8));
            j += 1;
        } else {
            let v = (a[i].1 as u32 + f * b[j].1 as u32) % p;
            if v != 0 {
                out.push((ra, v as u8));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

fn field_prime(p: u64) -> Result<u32> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if p > 251 {
        return Err(Error::InvalidArgument(format!("GF({p}) entries do not fit in a byte")));
    }
    Ok(p as u32)
}

fn inverse_mod(a: u32, p: u32) -> u32 {
    // Fermat: a^(p-2)
    let (mut base, mut exp, mut acc) = (a % p, p - 2, 1u32);
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        exp >>= 1;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pack(rows: &[&[u8]]) -> Vec<Vec<u64>> {
        rows.iter()
            .map(|r| {
                let mut words = vec![0u64; r.len().div_ceil(64).max(1)];
                for (i, &b) in r.iter().enumerate() {
                    if b & 1 == 1 {
                        words[i / 64] |= 1 << (i % 64);
                    }
                }
                words
            })
            .collect()
    }

    #[test]
    fn small_ranks_agree() {
        let m: &[&[u8]] = &[&[1, 1, 0], &[0, 1, 1], &[1, 0, 1]];
        assert_eq!(gf2_rank_dense(pack(m)), 2);
        assert_eq!(dense_rank_mod_p(m.iter().map(|r| r.to_vec()).collect(), 2).unwrap(), 2);
        // over GF(3) the rows are independent: det = 2
        assert_eq!(dense_rank_mod_p(m.iter().map(|r| r.to_vec()).collect(), 3).unwrap(), 3);
        let cols: Vec<SparseColumn> =
            (0..3).map(|c| (0..3).filter(|&r| m[r][c] != 0).map(|r| (r as u32, m[r][c])).collect()).collect();
        assert_eq!(sparse_rank(cols.clone(), 3, 2).unwrap(), 2);
        assert_eq!(sparse_rank(cols, 3, 3).unwrap(), 3);
    }

    #[test]
    fn non_prime_field_is_rejected() {
        assert!(matches!(sparse_rank(vec![], 0, 4), Err(Error::NotPrime(4))));
    }

    #[test]
    fn inverses() {
        for p in [3u32, 5, 7, 251] {
            for a in 1..p {
                assert_eq!(a * inverse_mod(a, p) % p, 1);
            }
        }
    }
}
