//! Permutations of `{1..n}` acting on the right.
//!
//! Points are stored 0-based. Products apply the left factor first:
//! `p * q` maps `i` to `q(p(i))`, so `x^g = g⁻¹ x g` and right cosets `Hx`
//! read the same way they are written.

use std::fmt;
use std::ops::Mul;

use num_integer::Integer;

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<u32>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Permutation { images: (0..degree as u32).collect() }
    }

    /// Builds a permutation from 0-based images, checking bijectivity.
    pub fn from_images(images: Vec<u32>) -> Result<Self> {
        let degree = images.len();
        let mut seen = vec![false; degree];
        for &i in &images {
            let i = i as usize;
            if i >= degree || seen[i] {
                return Err(Error::NotBijection { degree });
            }
            seen[i] = true;
        }
        Ok(Permutation { images })
    }

    pub(crate) fn from_images_unchecked(images: Vec<u32>) -> Self {
        debug_assert!(Permutation::from_images(images.clone()).is_ok());
        Permutation { images }
    }

    /// Builds a permutation of the given degree from disjoint or overlapping
    /// cycles of 1-based points, multiplied left to right.
    pub fn from_cycles(degree: usize, cycles: &[Vec<usize>]) -> Result<Self> {
        let mut result = Permutation::identity(degree);
        for cycle in cycles {
            let mut images: Vec<u32> = (0..degree as u32).collect();
            let mut seen = std::collections::HashSet::new();
            for (k, &pt) in cycle.iter().enumerate() {
                if pt == 0 || pt > degree {
                    return Err(Error::Parse(format!("point {pt} outside 1..{degree}")));
                }
                if !seen.insert(pt) {
                    return Err(Error::Parse(format!("point {pt} repeated in a cycle")));
                }
                let next = cycle[(k + 1) % cycle.len()];
                images[pt - 1] = (next - 1) as u32;
            }
            result = &result * &Permutation { images };
        }
        Ok(result)
    }

    /// Parses cycle notation such as `(1,2,3)(4,5)`; `()` is the identity.
    pub fn parse(text: &str, degree: usize) -> Result<Self> {
        let cycles = parse_cycles(text)?;
        Permutation::from_cycles(degree, &cycles)
    }

    /// Parses cycle notation, taking the degree to be the largest point.
    pub fn parse_auto(text: &str) -> Result<Self> {
        let cycles = parse_cycles(text)?;
        let degree = cycles.iter().flatten().copied().max().unwrap_or(1);
        Permutation::from_cycles(degree, &cycles)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    /// Image of the 0-based point `i`.
    #[inline]
    pub fn image(&self, i: usize) -> usize {
        self.images[i] as usize
    }

    pub fn images(&self) -> &[u32] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &j)| i as u32 == j)
    }

    /// Checked product: apply `self` first, then `other`.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation> {
        if self.degree() != other.degree() {
            return Err(Error::DegreeMismatch { left: self.degree(), right: other.degree() });
        }
        Ok(self * other)
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0u32; self.degree()];
        for (i, &j) in self.images.iter().enumerate() {
            inv[j as usize] = i as u32;
        }
        Permutation { images: inv }
    }

    /// `g⁻¹ self g`.
    pub fn conjugate_by(&self, g: &Permutation) -> Permutation {
        // (g⁻¹ p g)(g(i)) = g(p(i))
        let mut images = vec![0u32; self.degree()];
        for i in 0..self.degree() {
            images[g.image(i)] = g.images[self.image(i)];
        }
        Permutation { images }
    }

    pub fn pow(&self, exp: i64) -> Permutation {
        let base = if exp < 0 { self.inverse() } else { self.clone() };
        let mut e = exp.unsigned_abs();
        let mut acc = Permutation::identity(self.degree());
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &sq;
            }
            sq = &sq * &sq;
            e >>= 1;
        }
        acc
    }

    /// Cycles of length at least two, as 0-based points starting at the
    /// smallest point of each cycle.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] || self.image(start) == start {
                continue;
            }
            let mut cycle = Vec::new();
            let mut j = start;
            while !seen[j] {
                seen[j] = true;
                cycle.push(j);
                j = self.image(j);
            }
            out.push(cycle);
        }
        out
    }

    /// Lengths of all cycles including fixed points, sorted descending.
    pub fn cycle_type(&self) -> Vec<usize> {
        let mut lens: Vec<usize> = self.cycles().iter().map(Vec::len).collect();
        lens.extend(std::iter::repeat_n(1, self.fixed_points()));
        lens.sort_unstable_by(|a, b| b.cmp(a));
        lens
    }

    pub fn fixed_points(&self) -> usize {
        self.images.iter().enumerate().filter(|(i, &j)| *i as u32 == j).count()
    }

    pub fn smallest_moved_point(&self) -> Option<usize> {
        self.images.iter().enumerate().find(|(i, &j)| *i as u32 != j).map(|(i, _)| i)
    }

    pub fn sign(&self) -> i8 {
        let transpositions: usize = self.cycles().iter().map(|c| c.len() - 1).sum();
        if transpositions.is_multiple_of(2) {
            1
        } else {
            -1
        }
    }

    pub fn is_even(&self) -> bool {
        self.sign() == 1
    }

    pub fn order(&self) -> u64 {
        self.cycles().iter().fold(1u64, |acc, c| acc.lcm(&(c.len() as u64)))
    }

    /// Copy of `self` acting on `offset..offset + degree` inside `{0..new_degree}`.
    pub fn shifted(&self, offset: usize, new_degree: usize) -> Permutation {
        assert!(offset + self.degree() <= new_degree);
        let mut images: Vec<u32> = (0..new_degree as u32).collect();
        for i in 0..self.degree() {
            images[offset + i] = (offset + self.image(i)) as u32;
        }
        Permutation { images }
    }

    /// Lehmer rank in `0..degree!`. Only meaningful for small degrees.
    pub(crate) fn lehmer_rank(&self) -> usize {
        let n = self.degree();
        let mut rank = 0usize;
        let mut used: u32 = 0;
        for i in 0..n {
            let v = self.images[i];
            let smaller_unused = v - (used & ((1u32 << v) - 1)).count_ones();
            rank = rank * (n - i) + smaller_unused as usize;
            used |= 1 << v;
        }
        rank
    }
}

impl Mul for &Permutation {
    type Output = Permutation;

    /// Apply `self` first, then `rhs`. Panics on a degree mismatch.
    #[inline]
    fn mul(self, rhs: &Permutation) -> Permutation {
        assert_eq!(self.degree(), rhs.degree(), "degree mismatch in permutation product");
        Permutation { images: self.images.iter().map(|&i| rhs.images[i as usize]).collect() }
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return f.write_str("()");
        }
        for c in cycles {
            f.write_str("(")?;
            for (k, p) in c.iter().enumerate() {
                if k > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{}", p + 1)?;
            }
            f.write_str(")")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Splits cycle notation into 1-based point lists.
fn parse_cycles(text: &str) -> Result<Vec<Vec<usize>>> {
    let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    let mut cycles = Vec::new();
    let mut rest = compact.as_str();
    while !rest.is_empty() {
        let body = rest.strip_prefix('(').ok_or_else(|| Error::Parse(format!("expected '(' in {text:?}")))?;
        let close = body.find(')').ok_or_else(|| Error::Parse(format!("unclosed cycle in {text:?}")))?;
        let inner = &body[..close];
        if inner.contains('(') {
            return Err(Error::Parse(format!("unclosed cycle in {text:?}")));
        }
        if !inner.is_empty() {
            let pts = inner
                .split(',')
                .map(|s| {
                    s.parse::<usize>()
                        .ok()
                        .filter(|&p| p > 0)
                        .ok_or_else(|| Error::Parse(format!("bad point {s:?} in {text:?}")))
                })
                .collect::<Result<Vec<_>>>()?;
            cycles.push(pts);
        }
        rest = &body[close + 1..];
    }
    Ok(cycles)
}

/// Splits a generator list such as `(1,2),(1,2,3)(4,5)` at top-level commas.
pub fn split_generator_list(text: &str) -> Result<Vec<String>> {
    let mut words = Vec::new();
    let mut depth = 0i32;
    let mut current = String::new();
    for ch in text.chars() {
        match ch {
            '(' => {
                depth += 1;
                if depth > 1 {
                    return Err(Error::Parse(format!("nested parenthesis in {text:?}")));
                }
                current.push(ch);
            }
            ')' => {
                depth -= 1;
                if depth < 0 {
                    return Err(Error::Parse(format!("unbalanced ')' in {text:?}")));
                }
                current.push(ch);
            }
            ',' if depth == 0 => {
                words.push(std::mem::take(&mut current));
            }
            c if c.is_whitespace() => {}
            c => current.push(c),
        }
    }
    if depth != 0 {
        return Err(Error::Parse(format!("unclosed cycle in {text:?}")));
    }
    if !current.is_empty() || !words.is_empty() {
        words.push(current);
    }
    if words.iter().any(String::is_empty) {
        return Err(Error::Parse(format!("empty generator in {text:?}")));
    }
    Ok(words)
}
