//! Transversal words for factorization.
//!
//! For every level of a verified stabilizer chain we keep, per orbit point,
//! a word in the original generators that fixes the earlier base points and
//! moves the base point there. Factoring an element is then a sift through
//! the table.
//!
//! The table is filled Minkwitz-style: short words are sifted in, shorter
//! words replace longer ones, and products of table entries are sifted in
//! rounds. Whatever is still missing afterwards is filled by Schreier-Sims
//! run on the table itself, which always completes it.

use crate::group::StabChain;
use crate::perm::{Perm, Word};

/// Letter `2g` is generator `g`, letter `2g + 1` its inverse.
type Letter = u32;

#[derive(Clone)]
struct Entry {
    letters: Vec<Letter>,
    perm: Perm,
}

impl Entry {
    fn identity(degree: usize) -> Self {
        Entry {
            letters: Vec::new(),
            perm: Perm::identity(degree),
        }
    }

    fn len(&self) -> usize {
        self.letters.len()
    }

    fn push_letters(letters: &mut Vec<Letter>, tail: impl Iterator<Item = Letter>) {
        for l in tail {
            if letters.last() == Some(&(l ^ 1)) {
                letters.pop();
            } else {
                letters.push(l);
            }
        }
    }

    fn mul(&self, other: &Entry) -> Entry {
        let mut letters = self.letters.clone();
        Entry::push_letters(&mut letters, other.letters.iter().copied());
        Entry {
            letters,
            perm: self.perm.mul(&other.perm),
        }
    }

    /// `self * other^-1`
    fn div(&self, other: &Entry) -> Entry {
        let mut letters = self.letters.clone();
        Entry::push_letters(&mut letters, other.letters.iter().rev().map(|l| l ^ 1));
        Entry {
            letters,
            perm: self.perm.mul(&other.perm.inverse()),
        }
    }

    fn inverse(&self) -> Entry {
        Entry {
            letters: self.letters.iter().rev().map(|l| l ^ 1).collect(),
            perm: self.perm.inverse(),
        }
    }
}

/// Words enumerated breadth-first before the product rounds.
const MAX_SEED_WORDS: usize = 20_000;
const PRODUCT_ROUNDS: usize = 3;
/// Products sifted per round; past this the completion pass is cheaper.
const MAX_ROUND_PRODUCTS: usize = 100_000;
const INITIAL_LENGTH_LIMIT: usize = 24;

#[derive(Debug)]
pub(crate) struct FactorTable {
    base: Vec<usize>,
    orbit_lengths: Vec<usize>,
    rows: Vec<Vec<Option<Entry>>>,
    filled: Vec<usize>,
}

impl std::fmt::Debug for Entry {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Entry(len {})", self.letters.len())
    }
}

impl FactorTable {
    pub(crate) fn build(chain: &StabChain, generators: &[Perm]) -> Self {
        let degree = generators[0].degree();
        let base: Vec<usize> = chain.levels.iter().map(|l| l.base).collect();
        let orbit_lengths = chain.levels.iter().map(|l| l.orbit.len()).collect();
        let mut rows = vec![vec![None; degree]; base.len()];
        for (row, &b) in rows.iter_mut().zip(&base) {
            row[b] = Some(Entry::identity(degree));
        }
        let mut table = FactorTable {
            filled: vec![1; base.len()],
            base,
            orbit_lengths,
            rows,
        };
        if table.base.is_empty() {
            return table;
        }

        let letters: Vec<Entry> = generators
            .iter()
            .enumerate()
            .flat_map(|(g, p)| {
                let fwd = Entry {
                    letters: vec![2 * g as Letter],
                    perm: p.clone(),
                };
                let inv = fwd.inverse();
                [fwd, inv]
            })
            .collect();

        table.seed_short_words(&letters, INITIAL_LENGTH_LIMIT);
        let mut limit = INITIAL_LENGTH_LIMIT;
        for _ in 0..PRODUCT_ROUNDS {
            if table.is_full() {
                break;
            }
            table.product_round(limit);
            limit *= 2;
        }
        if !table.is_full() {
            table.complete(&letters);
        }
        debug_assert!(table.is_full());
        table
    }

    fn is_full(&self) -> bool {
        self.filled == self.orbit_lengths
    }

    fn store(&mut self, level: usize, point: usize, entry: Entry) {
        let slot = &mut self.rows[level][point];
        if slot.is_none() {
            self.filled[level] += 1;
        }
        *slot = Some(entry);
    }

    /// Stores `entry` (which maps the base point to `point`) and its
    /// inverse, if the inverse's slot is empty or longer.
    fn insert_pair(&mut self, level: usize, point: usize, entry: Entry) {
        let inv = entry.inverse();
        let back = inv.perm.image(self.base[level]);
        self.store(level, point, entry);
        let replace = match &self.rows[level][back] {
            None => true,
            Some(e) => e.len() > inv.len(),
        };
        if replace {
            self.store(level, back, inv);
        }
    }

    /// Minkwitz sift: fill empty slots, keep the shorter of two words.
    fn sift_improve(&mut self, mut t: Entry, limit: usize) {
        for level in 0..self.base.len() {
            if t.perm.is_identity() || t.len() > limit {
                return;
            }
            let beta = t.perm.image(self.base[level]);
            match &self.rows[level][beta] {
                None => {
                    self.insert_pair(level, beta, t);
                    return;
                }
                Some(e) if t.len() < e.len() => {
                    let old = e.clone();
                    let next = old.div(&t);
                    self.insert_pair(level, beta, t);
                    t = next;
                }
                Some(e) => t = t.div(e),
            }
        }
    }

    fn seed_short_words(&mut self, letters: &[Entry], limit: usize) {
        let degree = letters[0].perm.degree();
        let mut frontier = vec![Entry::identity(degree)];
        let mut produced = 0;
        while produced < MAX_SEED_WORDS && !self.is_full() {
            let mut next = Vec::new();
            for w in &frontier {
                for l in letters {
                    if w.letters.last() == Some(&(l.letters[0] ^ 1)) {
                        continue;
                    }
                    let x = w.mul(l);
                    self.sift_improve(x.clone(), limit);
                    next.push(x);
                    produced += 1;
                    if produced >= MAX_SEED_WORDS {
                        return;
                    }
                }
            }
            frontier = next;
        }
    }

    fn entries(&self) -> Vec<Entry> {
        self.rows
            .iter()
            .flatten()
            .flatten()
            .filter(|e| !e.letters.is_empty())
            .cloned()
            .collect()
    }

    fn product_round(&mut self, limit: usize) {
        let mut entries = self.entries();
        entries.sort_by_key(Entry::len);
        let mut budget = MAX_ROUND_PRODUCTS;
        for a in &entries {
            for b in &entries {
                if a.len() + b.len() > limit {
                    break;
                }
                if budget == 0 {
                    return;
                }
                budget -= 1;
                self.sift_improve(a.mul(b), limit);
            }
        }
    }

    /// Sifts `t` from `start`; the first empty slot it reaches is filled.
    /// Returns the level and point of the new entry, if any.
    fn sift_fill(&mut self, mut t: Entry, start: usize) -> Option<(usize, usize)> {
        for level in start..self.base.len() {
            if t.perm.is_identity() {
                return None;
            }
            let beta = t.perm.image(self.base[level]);
            match &self.rows[level][beta] {
                None => {
                    self.store(level, beta, t);
                    return Some((level, beta));
                }
                Some(e) => t = t.div(e),
            }
        }
        assert!(t.perm.is_identity(), "element fixing the whole base must be trivial");
        None
    }

    /// Schreier-Sims over the table: the strong generators of level `i` are
    /// the original generators fixing the earlier base points plus every
    /// entry at level `i` or deeper.
    fn complete(&mut self, letters: &[Entry]) {
        let depth = self.base.len();
        let originals: Vec<&Entry> = letters.iter().step_by(2).collect();
        let mut points: Vec<Vec<usize>> = self
            .rows
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|(_, e)| e.is_some())
                    .map(|(x, _)| x)
                    .collect()
            })
            .collect();
        let mut strong: Vec<Vec<Entry>> = vec![Vec::new(); depth];
        for (i, s) in strong.iter_mut().enumerate() {
            for g in &originals {
                if self.base[..i].iter().all(|&b| g.perm.image(b) == b) {
                    s.push((*g).clone());
                }
            }
            for (j, row) in self.rows.iter().enumerate().skip(i) {
                for &x in &points[j] {
                    if x != self.base[j] {
                        s.push(row[x].clone().unwrap());
                    }
                }
            }
        }
        let mut checked = vec![(0usize, 0usize); depth];

        let mut i = depth;
        'levels: while i > 0 {
            let level = i - 1;
            loop {
                let (np, ns) = (points[level].len(), strong[level].len());
                let (cp, cs) = checked[level];
                if (cp, cs) == (np, ns) {
                    break;
                }
                for a in 0..np {
                    for b in 0..ns {
                        if a < cp && b < cs {
                            continue;
                        }
                        let beta = points[level][a];
                        let s = &strong[level][b];
                        let gamma = s.perm.image(beta);
                        let prod = self.rows[level][beta].as_ref().unwrap().mul(s);
                        let residue = match &self.rows[level][gamma] {
                            None => {
                                self.store(level, gamma, prod.clone());
                                points[level].push(gamma);
                                for s in strong.iter_mut().take(level + 1) {
                                    s.push(prod.clone());
                                }
                                continue;
                            }
                            Some(e) => prod.div(e),
                        };
                        if let Some((j, x)) = self.sift_fill(residue, level + 1) {
                            points[j].push(x);
                            let e = self.rows[j][x].clone().unwrap();
                            for s in strong.iter_mut().take(j + 1) {
                                s.push(e.clone());
                            }
                            i = j + 1;
                            continue 'levels;
                        }
                    }
                }
                checked[level] = (np, ns);
            }
            i -= 1;
        }
    }

    pub(crate) fn factor(&self, p: &Perm) -> Option<Word> {
        let mut h = p.clone();
        let mut used = Vec::new();
        for (level, &b) in self.base.iter().enumerate() {
            let e = self.rows[level][h.image(b)].as_ref()?;
            h.mul_assign(&e.perm.inverse());
            used.push(e);
        }
        if !h.is_identity() {
            return None;
        }
        let mut word = Word::new();
        for e in used.iter().rev() {
            for &l in &e.letters {
                word.push((l / 2) as usize, if l % 2 == 0 { 1 } else { -1 });
            }
        }
        Some(word)
    }

    #[cfg(test)]
    fn max_entry_len(&self) -> usize {
        self.rows.iter().flatten().flatten().map(Entry::len).max().unwrap_or(0)
    }
}
