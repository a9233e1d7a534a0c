//! Corner orientation and the mod-3 shift invariant.
//!
//! The three corners at a vertex form a triple ordered by `sigma`: the
//! corner owned by the vertex's smallest dart is slot 0, the one owned by
//! `sigma` of it is slot 1, and so on. Turning the triple one notch moves
//! slot `k` to slot `k + 1`, and `sh_pair(c, c')` counts the notches from
//! `c` to `c'`.
//!
//! For a corner permutation `f` that keeps triples together and respects
//! their cyclic order, and any choice `phi` of one corner per vertex,
//!
//! ```text
//! sh(f) = sum over v of sh_pair(phi(f(v)), f(phi(v)))   (mod 3)
//! ```
//!
//! which does not depend on `phi`. With this orientation a one-notch twist
//! at a single vertex has shift 1.

use std::ops::{Add, Neg};

use rand::Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::perm::Perm;
use crate::rubik::RubikPresentation;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ShiftError {
    #[error("corners {0} and {1} are at different vertices")]
    DifferentVertices(usize, usize),
    #[error("permutation does not preserve the oriented corner triples")]
    NotOrientationPreserving,
    #[error("expected a permutation of {expected} corners, got degree {found}")]
    DomainMismatch { expected: usize, found: usize },
    #[error("vertex {vertex} out of range ({count} vertices)")]
    UnknownVertex { vertex: usize, count: usize },
}

/// An element of Z/3.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ShiftValue(u8);

impl ShiftValue {
    pub const ZERO: ShiftValue = ShiftValue(0);

    pub fn new(k: i64) -> Self {
        ShiftValue(k.rem_euclid(3) as u8)
    }

    pub fn value(self) -> u8 {
        self.0
    }
}

impl Add for ShiftValue {
    type Output = ShiftValue;
    fn add(self, rhs: ShiftValue) -> ShiftValue {
        ShiftValue((self.0 + rhs.0) % 3)
    }
}

impl Neg for ShiftValue {
    type Output = ShiftValue;
    fn neg(self) -> ShiftValue {
        ShiftValue((3 - self.0) % 3)
    }
}

impl std::iter::Sum for ShiftValue {
    fn sum<I: Iterator<Item = ShiftValue>>(iter: I) -> ShiftValue {
        iter.fold(ShiftValue::ZERO, Add::add)
    }
}

impl std::fmt::Display for ShiftValue {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// One chosen corner per vertex, stored as its slot in the vertex triple.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CornerSelection {
    slots: Vec<u8>,
}

impl CornerSelection {
    /// The smallest-dart corner at every vertex.
    pub fn canonical(vertices: usize) -> Self {
        CornerSelection {
            slots: vec![0; vertices],
        }
    }

    pub fn random(vertices: usize, rng: &mut impl Rng) -> Self {
        CornerSelection {
            slots: (0..vertices).map(|_| rng.random_range(0..3)).collect(),
        }
    }

    pub fn from_slots(slots: Vec<u8>) -> Self {
        CornerSelection {
            slots: slots.into_iter().map(|s| s % 3).collect(),
        }
    }

    pub fn slot(&self, vertex: usize) -> u8 {
        self.slots[vertex]
    }
}

/// The oriented corner triples of a presentation, on corner points `0..n`.
#[derive(Clone, Debug)]
pub struct CornerOrientation {
    triples: Vec<[usize; 3]>,
    /// For each corner point: its vertex and its slot.
    place: Vec<(usize, u8)>,
}

impl CornerOrientation {
    pub fn new(presentation: &RubikPresentation) -> Self {
        let map = presentation.map();
        let mut place = vec![(0, 0); presentation.corner_count()];
        let triples = map
            .vertices()
            .iter()
            .enumerate()
            .map(|(v, darts)| {
                let t = darts.map(|d| presentation.corner_point(d));
                for (k, &c) in t.iter().enumerate() {
                    place[c] = (v, k as u8);
                }
                t
            })
            .collect();
        CornerOrientation { triples, place }
    }

    pub fn vertex_count(&self) -> usize {
        self.triples.len()
    }

    pub fn corner_count(&self) -> usize {
        self.place.len()
    }

    /// Corner points at `vertex` in rotation order.
    pub fn triple(&self, vertex: usize) -> [usize; 3] {
        self.triples[vertex]
    }

    pub fn vertex_of(&self, corner: usize) -> usize {
        self.place[corner].0
    }

    /// Notches `k` with `r^k(c) = c2`.
    pub fn sh_pair(&self, c: usize, c2: usize) -> Result<ShiftValue, ShiftError> {
        let (v, a) = self.place[c];
        let (w, b) = self.place[c2];
        if v != w {
            return Err(ShiftError::DifferentVertices(c + 1, c2 + 1));
        }
        Ok(ShiftValue::new(b as i64 - a as i64))
    }

    fn check_degree(&self, p: &Perm) -> Result<(), ShiftError> {
        if p.degree() != self.corner_count() {
            return Err(ShiftError::DomainMismatch {
                expected: self.corner_count(),
                found: p.degree(),
            });
        }
        Ok(())
    }

    /// Whether `p` maps each triple onto a triple, keeping the cyclic order.
    pub fn is_ormap(&self, p: &Perm) -> bool {
        if p.degree() != self.corner_count() {
            return false;
        }
        self.triples.iter().all(|t| {
            let (w, s) = self.place[p.image(t[0])];
            (1..3).all(|k| self.place[p.image(t[k])] == (w, (s + k as u8) % 3))
        })
    }

    /// The shift of `f` with the canonical corner selection.
    pub fn shift(&self, f: &Perm) -> Result<ShiftValue, ShiftError> {
        self.shift_with(f, &CornerSelection::canonical(self.vertex_count()))
    }

    pub fn shift_with(&self, f: &Perm, phi: &CornerSelection) -> Result<ShiftValue, ShiftError> {
        self.check_degree(f)?;
        if !self.is_ormap(f) {
            return Err(ShiftError::NotOrientationPreserving);
        }
        let chosen = |v: usize| self.triples[v][phi.slot(v) as usize];
        (0..self.vertex_count())
            .map(|v| {
                let moved = f.image(chosen(v));
                let target = chosen(self.vertex_of(moved));
                self.sh_pair(target, moved)
            })
            .sum::<Result<ShiftValue, ShiftError>>()
    }

    /// Turns the triple at `vertex` one notch and fixes every other corner.
    pub fn single_vertex_twist(&self, vertex: usize) -> Result<Perm, ShiftError> {
        let t = self.triples.get(vertex).ok_or(ShiftError::UnknownVertex {
            vertex: vertex + 1,
            count: self.vertex_count(),
        })?;
        Ok(Perm::from_cycles(self.corner_count(), &[t.to_vec()]).expect("triple is a 3-cycle"))
    }
}
