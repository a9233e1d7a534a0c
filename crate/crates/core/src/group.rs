//! Permutation groups backed by a base and strong generating set.
//!
//! Construction runs randomized Schreier-Sims (product-replacement random
//! elements, sifted into the chain until a run of them sift to the
//! identity), followed by a deterministic Schreier-Sims pass over every
//! Schreier generator. After that pass the chain is exact: orders are exact
//! and membership has no error probability.
//!
//! Kernels of action homomorphisms come out of a chain whose base starts
//! with the points of the target action, so the pointwise stabilizer of
//! those points is a tail of the chain.

use std::collections::{HashSet, VecDeque};
use std::sync::OnceLock;
use std::time::Instant;

use num_bigint::BigUint;
use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::factor::FactorTable;
use crate::perm::{Perm, PermError, Word};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("domain mismatch: expected degree {expected}, got {found}")]
    DomainMismatch { expected: usize, found: usize },
    #[error("a group needs at least one generator")]
    NoGenerators,
    #[error("permutation is not a member of the group")]
    NotAMember,
    #[error("projection is not well defined: {0}")]
    IllDefinedProjection(String),
    #[error("enumeration exceeded the cap of {cap} elements")]
    CapExceeded { cap: usize },
    #[error("time budget exceeded")]
    BudgetExceeded,
    #[error(transparent)]
    Perm(#[from] PermError),
}

/// Knobs for building a stabilizer chain.
#[derive(Clone, Debug, Default)]
pub struct BuildOptions {
    /// Seed for the random phase. The finished chain is verified, so the
    /// seed only changes the base images picked, never the group order.
    pub seed: u64,
    /// Points that must open the base, in this order.
    pub base_prefix: Vec<usize>,
    pub deadline: Option<Instant>,
}

impl BuildOptions {
    pub fn seeded(seed: u64) -> Self {
        BuildOptions {
            seed,
            ..Default::default()
        }
    }
}

/// Consecutive trivial sifts that end the random phase.
const RANDOM_PATIENCE: usize = 32;

fn check_deadline(deadline: Option<Instant>) -> Result<(), GroupError> {
    match deadline {
        Some(d) if Instant::now() >= d => Err(GroupError::BudgetExceeded),
        _ => Ok(()),
    }
}

#[derive(Clone, Debug)]
pub(crate) struct Level {
    pub(crate) base: usize,
    /// Indices into `StabChain::strong` of the generators fixing every
    /// earlier base point.
    gens: Vec<usize>,
    pub(crate) orbit: Vec<usize>,
    /// `transversal[b]` maps the base point to `b`.
    transversal: Vec<Option<Perm>>,
    inverse: Vec<Option<Perm>>,
    /// (orbit prefix, generator prefix) whose Schreier generators already
    /// sift through the levels below.
    checked: (usize, usize),
}

impl Level {
    fn new(degree: usize, base: usize) -> Self {
        let mut transversal = vec![None; degree];
        let mut inverse = vec![None; degree];
        transversal[base] = Some(Perm::identity(degree));
        inverse[base] = Some(Perm::identity(degree));
        Level {
            base,
            gens: Vec::new(),
            orbit: vec![base],
            transversal,
            inverse,
            checked: (0, 0),
        }
    }
}

#[derive(Clone, Debug)]
pub(crate) struct StabChain {
    degree: usize,
    strong: Vec<Perm>,
    pub(crate) levels: Vec<Level>,
}

impl StabChain {
    fn new(degree: usize, prefix: &[usize]) -> Self {
        let mut chain = StabChain {
            degree,
            strong: Vec::new(),
            levels: Vec::new(),
        };
        let mut seen = HashSet::new();
        for &b in prefix {
            if seen.insert(b) {
                chain.levels.push(Level::new(degree, b));
            }
        }
        chain
    }

    /// Sifts `g` starting at level `start`. Returns the residue and the
    /// level where sifting stopped (`levels.len()` if it went through).
    fn sift(&self, g: &Perm, start: usize) -> (Perm, usize) {
        let mut h = g.clone();
        for (i, level) in self.levels.iter().enumerate().skip(start) {
            match &level.inverse[h.image(level.base)] {
                Some(u) => h.mul_assign(u),
                None => return (h, i),
            }
        }
        (h, self.levels.len())
    }

    fn contains(&self, g: &Perm) -> bool {
        self.sift(g, 0).0.is_identity()
    }

    fn add_strong(&mut self, h: Perm, depth: usize) {
        debug_assert!(!h.is_identity());
        if depth == self.levels.len() {
            let b = h.first_moved_point().expect("nontrivial residue");
            self.levels.push(Level::new(self.degree, b));
        }
        let idx = self.strong.len();
        self.strong.push(h);
        for l in 0..=depth {
            self.levels[l].gens.push(idx);
            self.extend_orbit(l, idx);
        }
    }

    fn extend_orbit(&mut self, l: usize, new_gen: usize) {
        let StabChain { strong, levels, .. } = self;
        let level = &mut levels[l];
        let s = &strong[new_gen];
        let mut queue = VecDeque::new();
        let old_len = level.orbit.len();
        for k in 0..old_len {
            let beta = level.orbit[k];
            let gamma = s.image(beta);
            if level.transversal[gamma].is_none() {
                let u = level.transversal[beta].as_ref().unwrap().mul(s);
                level.inverse[gamma] = Some(u.inverse());
                level.transversal[gamma] = Some(u);
                level.orbit.push(gamma);
                queue.push_back(gamma);
            }
        }
        while let Some(beta) = queue.pop_front() {
            for &gi in &level.gens {
                let g = &strong[gi];
                let gamma = g.image(beta);
                if level.transversal[gamma].is_none() {
                    let u = level.transversal[beta].as_ref().unwrap().mul(g);
                    level.inverse[gamma] = Some(u.inverse());
                    level.transversal[gamma] = Some(u);
                    level.orbit.push(gamma);
                    queue.push_back(gamma);
                }
            }
        }
    }

    fn build(degree: usize, generators: &[Perm], opts: &BuildOptions) -> Result<Self, GroupError> {
        let mut chain = StabChain::new(degree, &opts.base_prefix);
        for g in generators {
            let (h, j) = chain.sift(g, 0);
            if !h.is_identity() {
                chain.add_strong(h, j);
            }
        }
        if chain.strong.is_empty() {
            return Ok(chain);
        }

        let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
        let mut pr = ProductReplacement::new(generators, &mut rng);
        let mut trivial_run = 0;
        while trivial_run < RANDOM_PATIENCE {
            check_deadline(opts.deadline)?;
            let r = pr.next(&mut rng);
            let (h, j) = chain.sift(&r, 0);
            if h.is_identity() {
                trivial_run += 1;
            } else {
                trivial_run = 0;
                chain.add_strong(h, j);
            }
        }

        chain.verify(opts.deadline)?;
        Ok(chain)
    }

    /// Deterministic Schreier-Sims: works from the deepest level up,
    /// sifting every Schreier generator through the levels below, and
    /// restarts at the level where a nontrivial residue was added.
    fn verify(&mut self, deadline: Option<Instant>) -> Result<(), GroupError> {
        let mut i = self.levels.len();
        while i > 0 {
            match self.failing_schreier_generator(i - 1, deadline)? {
                None => i -= 1,
                Some((h, j)) => {
                    self.add_strong(h, j);
                    i = j + 1;
                }
            }
        }
        Ok(())
    }

    fn failing_schreier_generator(
        &mut self,
        i: usize,
        deadline: Option<Instant>,
    ) -> Result<Option<(Perm, usize)>, GroupError> {
        let level = &self.levels[i];
        let (done_orbit, done_gens) = level.checked;
        let mut g = Perm::identity(self.degree);
        for (a, &beta) in level.orbit.iter().enumerate() {
            if a % 16 == 0 {
                check_deadline(deadline)?;
            }
            let u = level.transversal[beta].as_ref().unwrap();
            for (b, &si) in level.gens.iter().enumerate() {
                if a < done_orbit && b < done_gens {
                    continue;
                }
                let s = &self.strong[si];
                let gamma = s.image(beta);
                let u_inv = level.inverse[gamma].as_ref().unwrap();
                g.clone_from(u);
                g.mul_assign(s);
                g.mul_assign(u_inv);
                if g.is_identity() {
                    continue;
                }
                let (h, j) = self.sift(&g, i + 1);
                if !h.is_identity() {
                    return Ok(Some((h, j)));
                }
            }
        }
        let level = &mut self.levels[i];
        level.checked = (level.orbit.len(), level.gens.len());
        Ok(None)
    }

    fn order(&self) -> BigUint {
        self.levels
            .iter()
            .fold(BigUint::one(), |acc, l| acc * BigUint::from(l.orbit.len()))
    }

    /// The chain of the stabilizer of the first `from` base points,
    /// restricted to the invariant block `range`.
    fn tail(&self, from: usize, range: std::ops::Range<usize>) -> StabChain {
        let offset = range.start;
        let degree = range.len();
        let mut remap = vec![usize::MAX; self.strong.len()];
        let mut strong = Vec::new();
        if let Some(first) = self.levels.get(from) {
            for &si in &first.gens {
                remap[si] = strong.len();
                strong.push(
                    self.strong[si]
                        .restrict(range.clone())
                        .expect("stabilizer generators preserve the block"),
                );
            }
        }
        let restrict = |p: &Option<Perm>| {
            p.as_ref()
                .map(|p| p.restrict(range.clone()).expect("transversal preserves the block"))
        };
        let levels = self.levels[from..]
            .iter()
            .map(|l| {
                let mut transversal = vec![None; degree];
                let mut inverse = vec![None; degree];
                for &b in &l.orbit {
                    transversal[b - offset] = restrict(&l.transversal[b]);
                    inverse[b - offset] = restrict(&l.inverse[b]);
                }
                let gens: Vec<usize> = l.gens.iter().map(|&si| remap[si]).collect();
                Level {
                    base: l.base - offset,
                    checked: (l.orbit.len(), gens.len()),
                    gens,
                    orbit: l.orbit.iter().map(|&b| b - offset).collect(),
                    transversal,
                    inverse,
                }
            })
            .collect();
        StabChain {
            degree,
            strong,
            levels,
        }
    }
}

/// Product replacement with an accumulator ("rattle"), giving close to
/// uniform random elements after a short warm-up.
struct ProductReplacement {
    slots: Vec<Perm>,
    acc: Perm,
}

impl ProductReplacement {
    fn new(generators: &[Perm], rng: &mut impl Rng) -> Self {
        let n = generators[0].degree();
        let size = generators.len().max(10);
        let slots = (0..size)
            .map(|k| generators[k % generators.len()].clone())
            .collect();
        let mut pr = ProductReplacement {
            slots,
            acc: Perm::identity(n),
        };
        for _ in 0..60 {
            pr.next(rng);
        }
        pr
    }

    fn next(&mut self, rng: &mut impl Rng) -> Perm {
        let n = self.slots.len();
        let i = rng.random_range(0..n);
        let mut j = rng.random_range(0..n - 1);
        if j >= i {
            j += 1;
        }
        let other = if rng.random_bool(0.5) {
            self.slots[j].clone()
        } else {
            self.slots[j].inverse()
        };
        if rng.random_bool(0.5) {
            self.slots[i].mul_assign(&other);
        } else {
            self.slots[i] = other.mul(&self.slots[i]);
        }
        self.acc.mul_assign(&self.slots[i]);
        self.acc.clone()
    }
}

/// A point map from one action domain onto another. `None` drops a point
/// (restriction); several points sharing an image collapse into one
/// (e.g. both side edges of an edge becoming that edge).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Projection {
    target_degree: usize,
    map: Vec<Option<usize>>,
}

impl Projection {
    pub fn new(target_degree: usize, map: Vec<Option<usize>>) -> Result<Self, GroupError> {
        let mut hit = vec![false; target_degree];
        for t in map.iter().flatten() {
            if *t >= target_degree {
                return Err(GroupError::IllDefinedProjection(format!(
                    "image {} outside target of size {}",
                    t + 1,
                    target_degree
                )));
            }
            hit[*t] = true;
        }
        if let Some(t) = hit.iter().position(|h| !h) {
            return Err(GroupError::IllDefinedProjection(format!(
                "target point {} has no preimage",
                t + 1
            )));
        }
        Ok(Projection { target_degree, map })
    }

    pub fn identity(degree: usize) -> Self {
        Projection {
            target_degree: degree,
            map: (0..degree).map(Some).collect(),
        }
    }

    pub fn source_degree(&self) -> usize {
        self.map.len()
    }

    pub fn target_degree(&self) -> usize {
        self.target_degree
    }

    pub fn point(&self, x: usize) -> Option<usize> {
        self.map[x]
    }

    /// `self` followed by `next`.
    pub fn then(&self, next: &Projection) -> Result<Projection, GroupError> {
        if next.source_degree() != self.target_degree {
            return Err(GroupError::DomainMismatch {
                expected: self.target_degree,
                found: next.source_degree(),
            });
        }
        Projection::new(
            next.target_degree,
            self.map.iter().map(|t| t.and_then(|t| next.map[t])).collect(),
        )
    }

    /// The permutation `g` induces on the target domain.
    pub fn apply(&self, g: &Perm) -> Result<Perm, GroupError> {
        if g.degree() != self.source_degree() {
            return Err(GroupError::DomainMismatch {
                expected: self.source_degree(),
                found: g.degree(),
            });
        }
        let mut images: Vec<Option<usize>> = vec![None; self.target_degree];
        for (x, t) in self.map.iter().enumerate() {
            let Some(t) = *t else { continue };
            let Some(img) = self.map[g.image(x)] else {
                return Err(GroupError::IllDefinedProjection(format!(
                    "point {} is sent to a dropped point",
                    x + 1
                )));
            };
            match images[t] {
                None => images[t] = Some(img),
                Some(prev) if prev == img => {}
                Some(_) => {
                    return Err(GroupError::IllDefinedProjection(format!(
                        "target point {} has two images",
                        t + 1
                    )))
                }
            }
        }
        let images: Vec<usize> = images.into_iter().map(|x| x.unwrap()).collect();
        Perm::from_images(images).map_err(|e| GroupError::IllDefinedProjection(e.to_string()))
    }

    /// For a pure restriction (every target point has exactly one source),
    /// the source of each target point in target order.
    fn restriction_sources(&self) -> Option<Vec<usize>> {
        let mut sources = vec![None; self.target_degree];
        for (x, t) in self.map.iter().enumerate() {
            if let Some(t) = *t {
                if sources[t].replace(x).is_some() {
                    return None;
                }
            }
        }
        sources.into_iter().collect()
    }
}

/// A permutation group with a verified stabilizer chain.
#[derive(Debug)]
pub struct PermGroup {
    degree: usize,
    generators: Vec<Perm>,
    chain: StabChain,
    seed: u64,
    factor_table: OnceLock<FactorTable>,
}

impl Clone for PermGroup {
    fn clone(&self) -> Self {
        PermGroup {
            degree: self.degree,
            generators: self.generators.clone(),
            chain: self.chain.clone(),
            seed: self.seed,
            factor_table: OnceLock::new(),
        }
    }
}

impl PermGroup {
    pub fn from_generators(generators: Vec<Perm>) -> Result<Self, GroupError> {
        PermGroup::with_options(generators, &BuildOptions::default())
    }

    pub fn with_options(generators: Vec<Perm>, opts: &BuildOptions) -> Result<Self, GroupError> {
        let degree = generators.first().ok_or(GroupError::NoGenerators)?.degree();
        if let Some(g) = generators.iter().find(|g| g.degree() != degree) {
            return Err(GroupError::DomainMismatch {
                expected: degree,
                found: g.degree(),
            });
        }
        if let Some(&b) = opts.base_prefix.iter().find(|&&b| b >= degree) {
            return Err(GroupError::DomainMismatch {
                expected: degree,
                found: b + 1,
            });
        }
        let chain = StabChain::build(degree, &generators, opts)?;
        Ok(PermGroup {
            degree,
            generators,
            chain,
            seed: opts.seed,
            factor_table: OnceLock::new(),
        })
    }

    fn from_chain(chain: StabChain, seed: u64) -> Self {
        let degree = chain.degree;
        let mut generators = chain.strong.clone();
        if generators.is_empty() {
            generators.push(Perm::identity(degree));
        }
        PermGroup {
            degree,
            generators,
            chain,
            seed,
            factor_table: OnceLock::new(),
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Perm] {
        &self.generators
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// Product of the basic orbit lengths.
    pub fn order(&self) -> BigUint {
        self.chain.order()
    }

    pub fn base(&self) -> Vec<usize> {
        self.chain.levels.iter().map(|l| l.base).collect()
    }

    pub fn basic_orbit_lengths(&self) -> Vec<usize> {
        self.chain.levels.iter().map(|l| l.orbit.len()).collect()
    }

    pub fn strong_generators(&self) -> &[Perm] {
        &self.chain.strong
    }

    #[cfg(test)]
    pub(crate) fn chain(&self) -> &StabChain {
        &self.chain
    }

    fn check_degree(&self, p: &Perm) -> Result<(), GroupError> {
        if p.degree() == self.degree {
            Ok(())
        } else {
            Err(GroupError::DomainMismatch {
                expected: self.degree,
                found: p.degree(),
            })
        }
    }

    pub fn contains(&self, p: &Perm) -> Result<bool, GroupError> {
        self.check_degree(p)?;
        Ok(self.chain.contains(p))
    }

    /// A word in the generators evaluating to `p`. The word comes from a
    /// table of short transversal words along the chain and is not minimal.
    pub fn factor(&self, p: &Perm) -> Result<Word, GroupError> {
        if !self.contains(p)? {
            return Err(GroupError::NotAMember);
        }
        let table = self
            .factor_table
            .get_or_init(|| FactorTable::build(&self.chain, &self.generators));
        let word = table.factor(p).ok_or(GroupError::NotAMember)?;
        let orders: Vec<u64> = self.generators.iter().map(Perm::element_order).collect();
        Ok(word.reduced(&orders))
    }

    /// Uniform random element: a random transversal element from every level.
    pub fn random_element(&self, rng: &mut impl Rng) -> Perm {
        let mut acc = Perm::identity(self.degree);
        for level in self.chain.levels.iter().rev() {
            let beta = level.orbit[rng.random_range(0..level.orbit.len())];
            acc.mul_assign(level.transversal[beta].as_ref().unwrap());
        }
        acc
    }

    pub fn is_abelian(&self) -> bool {
        self.generators.iter().enumerate().all(|(i, a)| {
            self.generators[i + 1..]
                .iter()
                .all(|b| a.commutes_with(b))
        })
    }

    /// Checks `g^k = 1` on every generator and on `samples` random elements.
    pub fn has_exponent(&self, k: u64, samples: usize, rng: &mut impl Rng) -> bool {
        let kills = |g: &Perm| g.pow(k as i64).is_identity();
        self.generators.iter().all(kills)
            && (0..samples).all(|_| kills(&self.random_element(rng)))
    }

    /// The group generated by the projected generators, built from scratch.
    pub fn action_image(&self, projection: &Projection) -> Result<PermGroup, GroupError> {
        self.action_image_within(projection, None)
    }

    pub fn action_image_within(
        &self,
        projection: &Projection,
        deadline: Option<Instant>,
    ) -> Result<PermGroup, GroupError> {
        let gens = self
            .generators
            .iter()
            .map(|g| projection.apply(g))
            .collect::<Result<Vec<_>, _>>()?;
        PermGroup::with_options(
            gens,
            &BuildOptions {
                seed: self.seed,
                base_prefix: Vec::new(),
                deadline,
            },
        )
    }

    /// Kernel of the action on the projection's target, as a group on this
    /// group's domain.
    pub fn kernel(&self, projection: &Projection) -> Result<PermGroup, GroupError> {
        self.kernel_within(projection, None)
    }

    pub fn kernel_within(
        &self,
        projection: &Projection,
        deadline: Option<Instant>,
    ) -> Result<PermGroup, GroupError> {
        if projection.source_degree() != self.degree {
            return Err(GroupError::DomainMismatch {
                expected: self.degree,
                found: projection.source_degree(),
            });
        }
        let projected = self
            .generators
            .iter()
            .map(|g| projection.apply(g))
            .collect::<Result<Vec<_>, _>>()?;

        if let Some(sources) = projection.restriction_sources() {
            // Kernel = pointwise stabilizer of the kept points.
            let opts = BuildOptions {
                seed: self.seed,
                base_prefix: sources.clone(),
                deadline,
            };
            let chain = StabChain::build(self.degree, &self.generators, &opts)?;
            let prefix = chain.levels.len().min(sources.len());
            return Ok(PermGroup::from_chain(
                chain.tail(prefix, 0..self.degree),
                self.seed,
            ));
        }

        // General case: act on target ⊔ source at once; the stabilizer of
        // every target point is the kernel.
        let t = projection.target_degree();
        let n = self.degree;
        let gens: Vec<Perm> = projected
            .iter()
            .zip(&self.generators)
            .map(|(img, g)| {
                let images: Vec<usize> = img.images().chain(g.images().map(|x| x + t)).collect();
                Perm::from_images(images)
            })
            .collect::<Result<_, _>>()?;
        let opts = BuildOptions {
            seed: self.seed,
            base_prefix: (0..t).collect(),
            deadline,
        };
        let chain = StabChain::build(t + n, &gens, &opts)?;
        Ok(PermGroup::from_chain(chain.tail(t, t..t + n), self.seed))
    }

    /// Exact element count by closure over the generators. Independent of
    /// the stabilizer chain; meant as an oracle for small groups.
    pub fn enumerate_all(&self, cap: usize) -> Result<usize, GroupError> {
        enumerate_all(&self.generators, cap)
    }
}

/// Breadth-first closure of the generators; fails once more than `cap`
/// elements have been seen.
pub fn enumerate_all(generators: &[Perm], cap: usize) -> Result<usize, GroupError> {
    let first = generators.first().ok_or(GroupError::NoGenerators)?;
    let identity = Perm::identity(first.degree());
    let mut seen = HashSet::new();
    let mut queue = VecDeque::new();
    seen.insert(identity.clone());
    queue.push_back(identity);
    while let Some(x) = queue.pop_front() {
        for g in generators {
            let y = x.compose(g)?;
            if seen.insert(y.clone()) {
                if seen.len() > cap {
                    return Err(GroupError::CapExceeded { cap });
                }
                queue.push_back(y);
            }
        }
    }
    Ok(seen.len())
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigUint;

    fn p(text: &str, n: usize) -> Perm {
        Perm::parse_cycles(text, n).unwrap()
    }

    fn factorial(n: u64) -> BigUint {
        (1..=n).map(BigUint::from).product()
    }

    #[test]
    fn trivial_group() {
        let g = PermGroup::from_generators(vec![Perm::identity(4)]).unwrap();
        assert_eq!(g.order(), BigUint::one());
        assert_eq!(g.enumerate_all(10).unwrap(), 1);
        assert!(g.is_abelian());
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        assert!(g.has_exponent(1, 5, &mut rng));
        assert_eq!(g.factor(&Perm::identity(4)).unwrap(), Word::new());
    }

    #[test]
    fn symmetric_group_on_three_points() {
        let gens = vec![p("(1,2)", 3), p("(1,2,3)", 3)];
        assert_eq!(enumerate_all(&gens, 100).unwrap(), 6);
        let g = PermGroup::from_generators(gens).unwrap();
        assert_eq!(g.order(), BigUint::from(6u32));
        assert!(!g.is_abelian());
    }

    #[test]
    fn symmetric_and_alternating_orders() {
        let n = 12;
        let s = PermGroup::from_generators(vec![
            p("(1,2)", n),
            p("(1,2,3,4,5,6,7,8,9,10,11,12)", n),
        ])
        .unwrap();
        assert_eq!(s.order(), factorial(12));
        let a = PermGroup::from_generators(vec![p("(1,2,3)", n), p("(2,3,4,5,6,7,8,9,10,11,12)", n)])
            .unwrap();
        assert_eq!(a.order(), factorial(12) / BigUint::from(2u32));
        assert!(!a.contains(&p("(1,2)", n)).unwrap());
        assert!(a.contains(&p("(1,2)(3,4)", n)).unwrap());
    }

    #[test]
    fn enumeration_cap() {
        let gens = vec![p("(1,2)", 5), p("(1,2,3,4,5)", 5)];
        assert_eq!(
            enumerate_all(&gens, 50),
            Err(GroupError::CapExceeded { cap: 50 })
        );
    }

    #[test]
    fn mixed_degrees_are_rejected() {
        let err = PermGroup::from_generators(vec![Perm::identity(3), Perm::identity(4)]).unwrap_err();
        assert!(matches!(err, GroupError::DomainMismatch { .. }));
        assert_eq!(PermGroup::from_generators(vec![]).unwrap_err(), GroupError::NoGenerators);
        let g = PermGroup::from_generators(vec![p("(1,2)", 3)]).unwrap();
        assert!(g.contains(&Perm::identity(4)).is_err());
    }

    #[test]
    fn seeds_agree_on_order() {
        let gens = vec![p("(1,2,3,4,5,6,7,8)", 10), p("(1,9)(2,10)", 10), p("(3,5)", 10)];
        let orders: Vec<_> = (0..5)
            .map(|s| {
                PermGroup::with_options(gens.clone(), &BuildOptions::seeded(s))
                    .unwrap()
                    .order()
            })
            .collect();
        assert!(orders.windows(2).all(|w| w[0] == w[1]));
        assert_eq!(orders[0], BigUint::from(enumerate_all(&gens, 5_000_000).unwrap()));
    }

    #[test]
    fn identity_projection_has_trivial_kernel() {
        let g = PermGroup::from_generators(vec![p("(1,2,3)", 4), p("(3,4)", 4)]).unwrap();
        let proj = Projection::identity(4);
        assert_eq!(g.kernel(&proj).unwrap().order(), BigUint::one());
        assert_eq!(g.action_image(&proj).unwrap().order(), g.order());
    }

    #[test]
    fn kernel_of_block_action() {
        // Wreath product C2 wr S3 acting on pairs {1,2},{3,4},{5,6}.
        let gens = vec![p("(1,2)", 6), p("(1,3,5)(2,4,6)", 6), p("(1,3)(2,4)", 6)];
        let g = PermGroup::from_generators(gens).unwrap();
        assert_eq!(g.order(), BigUint::from(48u32));
        let blocks = Projection::new(3, vec![Some(0), Some(0), Some(1), Some(1), Some(2), Some(2)])
            .unwrap();
        let image = g.action_image(&blocks).unwrap();
        let kernel = g.kernel(&blocks).unwrap();
        assert_eq!(image.order(), BigUint::from(6u32));
        assert_eq!(kernel.order(), BigUint::from(8u32));
        assert!(kernel.is_abelian());
        for k in kernel.generators() {
            assert!(blocks.apply(k).unwrap().is_identity());
            assert!(g.contains(k).unwrap());
        }
    }

    #[test]
    fn kernel_of_restriction() {
        // S3 x S3 on {1,2,3} and {4,5,6}; restrict to the first block.
        let gens = vec![p("(1,2)", 6), p("(1,2,3)", 6), p("(4,5)", 6), p("(4,5,6)", 6)];
        let g = PermGroup::from_generators(gens).unwrap();
        let first = Projection::new(3, vec![Some(0), Some(1), Some(2), None, None, None]).unwrap();
        let kernel = g.kernel(&first).unwrap();
        assert_eq!(kernel.order(), BigUint::from(6u32));
        assert_eq!(kernel.degree(), 6);
        assert!(kernel.contains(&p("(4,6)", 6)).unwrap());
        assert!(!kernel.contains(&p("(1,2)", 6)).unwrap());
    }

    #[test]
    fn ill_defined_projection() {
        let g = PermGroup::from_generators(vec![p("(1,3)", 4)]).unwrap();
        // {1,2} collapse to one point but 3 is alone: (1,3) breaks the blocks.
        let bad = Projection::new(3, vec![Some(0), Some(0), Some(1), Some(2)]).unwrap();
        assert!(matches!(
            g.kernel(&bad),
            Err(GroupError::IllDefinedProjection(_))
        ));
        let dropped = Projection::new(2, vec![Some(0), Some(1), None, None]).unwrap();
        assert!(matches!(
            g.action_image(&dropped),
            Err(GroupError::IllDefinedProjection(_))
        ));
    }

    #[test]
    fn factorization_round_trip() {
        let n = 9;
        let gens = vec![p("(1,2,3,4,5,6,7,8,9)", n), p("(1,2)", n)];
        let g = PermGroup::from_generators(gens.clone()).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..50 {
            let x = g.random_element(&mut rng);
            let w = g.factor(&x).unwrap();
            assert_eq!(w.evaluate(&gens, n).unwrap(), x);
        }
        let h = PermGroup::from_generators(vec![p("(1,2,3)", n)]).unwrap();
        assert_eq!(h.factor(&p("(1,2)", n)), Err(GroupError::NotAMember));
    }

    #[test]
    fn expired_deadline() {
        let opts = BuildOptions {
            deadline: Some(Instant::now()),
            ..Default::default()
        };
        let gens = vec![p("(1,2)", 8), p("(1,2,3,4,5,6,7,8)", 8)];
        assert_eq!(
            PermGroup::with_options(gens, &opts).unwrap_err(),
            GroupError::BudgetExceeded
        );
    }
}
