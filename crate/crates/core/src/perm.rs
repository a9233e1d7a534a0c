//! Permutations of a fixed point domain and words over a generator list.
//!
//! Points are 0-based internally. Everything that faces a user (cycle
//! notation, scripts, map files) is 1-based, the way computer algebra
//! systems print permutations.
//!
//! Products act on the right: `a.mul(&b)` applies `a` first, then `b`, so a
//! word `g1 g2` is evaluated as `g1.mul(&g2)`. This is the natural reading
//! for move sequences on a puzzle.

use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PermError {
    #[error("domain mismatch: degree {left} vs {right}")]
    DomainMismatch { left: usize, right: usize },
    #[error("not a bijection: {0}")]
    NotABijection(String),
    #[error("cannot parse cycle notation: {0}")]
    Parse(String),
    #[error("generator index {index} out of range ({count} generators)")]
    UnknownGenerator { index: usize, count: usize },
}

/// A bijection of `0..degree`, stored as its image array.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm {
    images: Vec<u32>,
}

impl Perm {
    pub fn identity(degree: usize) -> Self {
        Perm {
            images: (0..degree as u32).collect(),
        }
    }

    pub fn from_images(images: Vec<usize>) -> Result<Self, PermError> {
        let n = images.len();
        let mut seen = vec![false; n];
        for (i, &x) in images.iter().enumerate() {
            if x >= n || seen[x] {
                return Err(PermError::NotABijection(format!(
                    "point {} has image {} in a domain of size {}",
                    i + 1,
                    x + 1,
                    n
                )));
            }
            seen[x] = true;
        }
        Ok(Perm {
            images: images.into_iter().map(|x| x as u32).collect(),
        })
    }

    /// Builds a permutation from disjoint cycles of 0-based points.
    pub fn from_cycles(degree: usize, cycles: &[Vec<usize>]) -> Result<Self, PermError> {
        let mut images: Vec<usize> = (0..degree).collect();
        let mut used = vec![false; degree];
        for cycle in cycles {
            for (k, &x) in cycle.iter().enumerate() {
                if x >= degree {
                    return Err(PermError::NotABijection(format!(
                        "point {} outside domain of size {}",
                        x + 1,
                        degree
                    )));
                }
                if used[x] {
                    return Err(PermError::NotABijection(format!(
                        "point {} appears twice in the cycles",
                        x + 1
                    )));
                }
                used[x] = true;
                images[x] = cycle[(k + 1) % cycle.len()];
            }
        }
        Perm::from_images(images)
    }

    /// Parses 1-based disjoint cycle notation such as `(1,2,3)(4,5)`.
    /// Whitespace and line breaks are ignored; `()` is the identity.
    pub fn parse_cycles(text: &str, degree: usize) -> Result<Self, PermError> {
        let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        let mut cycles = Vec::new();
        let mut rest = compact.as_str();
        while !rest.is_empty() {
            let body = rest
                .strip_prefix('(')
                .ok_or_else(|| PermError::Parse(format!("expected '(' at {rest:?}")))?;
            let close = body
                .find(')')
                .ok_or_else(|| PermError::Parse("unclosed cycle".into()))?;
            let inner = &body[..close];
            if !inner.is_empty() {
                let cycle = inner
                    .split(',')
                    .map(|tok| match tok.parse::<usize>() {
                        Ok(0) | Err(_) => Err(PermError::Parse(format!("bad point {tok:?}"))),
                        Ok(x) => Ok(x - 1),
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                cycles.push(cycle);
            }
            rest = &body[close + 1..];
        }
        Perm::from_cycles(degree, &cycles)
    }

    #[inline]
    pub fn degree(&self) -> usize {
        self.images.len()
    }

    #[inline]
    pub fn image(&self, point: usize) -> usize {
        self.images[point] as usize
    }

    pub fn images(&self) -> impl ExactSizeIterator<Item = usize> + '_ {
        self.images.iter().map(|&x| x as usize)
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i as u32 == x)
    }

    fn check_domain(&self, other: &Perm) -> Result<(), PermError> {
        if self.degree() == other.degree() {
            Ok(())
        } else {
            Err(PermError::DomainMismatch {
                left: self.degree(),
                right: other.degree(),
            })
        }
    }

    /// `self` followed by `other`. Panics on a degree mismatch; see
    /// [`Perm::compose`] for the checked variant.
    pub fn mul(&self, other: &Perm) -> Perm {
        assert_eq!(self.degree(), other.degree(), "permutation degree mismatch");
        Perm {
            images: self
                .images
                .iter()
                .map(|&x| other.images[x as usize])
                .collect(),
        }
    }

    pub fn compose(&self, other: &Perm) -> Result<Perm, PermError> {
        self.check_domain(other)?;
        Ok(self.mul(other))
    }

    /// In-place `self = self * other`.
    #[inline]
    pub fn mul_assign(&mut self, other: &Perm) {
        debug_assert_eq!(self.degree(), other.degree());
        for x in self.images.iter_mut() {
            *x = other.images[*x as usize];
        }
    }

    pub fn inverse(&self) -> Perm {
        let mut images = vec![0u32; self.degree()];
        for (i, &x) in self.images.iter().enumerate() {
            images[x as usize] = i as u32;
        }
        Perm { images }
    }

    pub fn pow(&self, exponent: i64) -> Perm {
        let base = if exponent < 0 { self.inverse() } else { self.clone() };
        let mut e = exponent.unsigned_abs();
        let mut acc = Perm::identity(self.degree());
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc.mul_assign(&sq);
            }
            sq = sq.mul(&sq);
            e >>= 1;
        }
        acc
    }

    pub fn commutes_with(&self, other: &Perm) -> bool {
        self.mul(other) == other.mul(self)
    }

    /// Nontrivial cycles, each starting at its smallest point, ordered by
    /// that point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] || self.image(start) == start {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut x = self.image(start);
            while x != start {
                seen[x] = true;
                cycle.push(x);
                x = self.image(x);
            }
            out.push(cycle);
        }
        out
    }

    /// Sorted lengths of the nontrivial cycles.
    pub fn cycle_type(&self) -> Vec<usize> {
        let mut lengths: Vec<usize> = self.cycles().iter().map(Vec::len).collect();
        lengths.sort_unstable();
        lengths
    }

    /// +1 for even permutations, -1 for odd ones.
    pub fn sign(&self) -> i8 {
        let transpositions: usize = self.cycles().iter().map(|c| c.len() - 1).sum();
        if transpositions.is_multiple_of(2) {
            1
        } else {
            -1
        }
    }

    pub fn element_order(&self) -> u64 {
        self.cycles()
            .iter()
            .fold(1u64, |acc, c| acc.lcm(&(c.len() as u64)))
    }

    pub fn moved_points(&self) -> usize {
        self.images
            .iter()
            .enumerate()
            .filter(|&(i, &x)| i as u32 != x)
            .count()
    }

    pub fn first_moved_point(&self) -> Option<usize> {
        self.images
            .iter()
            .enumerate()
            .find(|&(i, &x)| i as u32 != x)
            .map(|(i, _)| i)
    }

    /// Restriction to the points `range`, which must be mapped onto itself.
    pub fn restrict(&self, range: std::ops::Range<usize>) -> Option<Perm> {
        let offset = range.start;
        let mut images = Vec::with_capacity(range.len());
        for x in range.clone() {
            let y = self.image(x);
            if !range.contains(&y) {
                return None;
            }
            images.push((y - offset) as u32);
        }
        Some(Perm { images })
    }

    /// Sign of the action on `range`, which must be mapped onto itself.
    pub fn sign_on(&self, range: std::ops::Range<usize>) -> Option<i8> {
        self.restrict(range).map(|p| p.sign())
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return f.write_str("()");
        }
        for cycle in cycles {
            f.write_str("(")?;
            for (k, x) in cycle.iter().enumerate() {
                if k > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{}", x + 1)?;
            }
            f.write_str(")")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Perm[{}]{}", self.degree(), self)
    }
}

/// One factor `g_generator ^ exponent` of a word.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Letter {
    pub generator: usize,
    pub exponent: i32,
}

/// A product of generator powers, read left to right.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Word {
    letters: Vec<Letter>,
}

impl Word {
    pub fn new() -> Self {
        Word::default()
    }

    pub fn from_letters(letters: impl IntoIterator<Item = (usize, i32)>) -> Self {
        let mut w = Word::new();
        for (g, e) in letters {
            w.push(g, e);
        }
        w
    }

    /// Appends `g^exponent`, merging with a trailing power of the same
    /// generator. Zero exponents are dropped.
    pub fn push(&mut self, generator: usize, exponent: i32) {
        if exponent == 0 {
            return;
        }
        if let Some(last) = self.letters.last_mut() {
            if last.generator == generator {
                last.exponent += exponent;
                if last.exponent == 0 {
                    self.letters.pop();
                }
                return;
            }
        }
        self.letters.push(Letter {
            generator,
            exponent,
        });
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut w = self.clone();
        for l in &other.letters {
            w.push(l.generator, l.exponent);
        }
        w
    }

    pub fn inverse(&self) -> Word {
        Word {
            letters: self
                .letters
                .iter()
                .rev()
                .map(|l| Letter {
                    generator: l.generator,
                    exponent: -l.exponent,
                })
                .collect(),
        }
    }

    pub fn evaluate(&self, generators: &[Perm], degree: usize) -> Result<Perm, PermError> {
        let mut acc = Perm::identity(degree);
        for l in &self.letters {
            let g = generators.get(l.generator).ok_or(PermError::UnknownGenerator {
                index: l.generator,
                count: generators.len(),
            })?;
            acc.check_domain(g)?;
            acc.mul_assign(&g.pow(l.exponent as i64));
        }
        Ok(acc)
    }

    /// Reduces every exponent into `(-order/2, order/2]` using the given
    /// generator orders, merging neighbours that meet after a cancellation.
    pub fn reduced(&self, orders: &[u64]) -> Word {
        let mut out = Word::new();
        for l in &self.letters {
            out.push(l.generator, l.exponent);
            if let Some(last) = out.letters.last_mut() {
                if let Some(&ord) = orders.get(last.generator) {
                    let ord = ord as i64;
                    if ord > 0 {
                        let mut e = (last.exponent as i64).rem_euclid(ord);
                        if e > ord / 2 {
                            e -= ord;
                        }
                        last.exponent = e as i32;
                        if e == 0 {
                            out.letters.pop();
                        }
                    }
                }
            }
        }
        out
    }

    /// Total number of generator applications, counting `g^3` as three.
    pub fn weight(&self) -> u64 {
        self.letters.iter().map(|l| l.exponent.unsigned_abs() as u64).sum()
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return f.write_str("()");
        }
        for (k, l) in self.letters.iter().enumerate() {
            if k > 0 {
                f.write_str(" ")?;
            }
            write!(f, "g{}", l.generator + 1)?;
            if l.exponent != 1 {
                write!(f, "^{}", l.exponent)?;
            }
        }
        Ok(())
    }
}
