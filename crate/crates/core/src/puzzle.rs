//! Playable puzzle state on top of a presentation.
//!
//! A state is the group element produced by the moves so far. A sticker
//! starting at point `x` sits at `state(x)`, and its colour is the face it
//! started on. Moves are written `F3`, `F3^-1`, `F3^2`, with 1-based faces.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::group::{BuildOptions, GroupError, PermGroup};
use crate::map::Map;
use crate::perm::{Perm, Word};
use crate::rubik::{RubikError, RubikPresentation};

#[derive(Debug, Error)]
pub enum PuzzleError {
    #[error("face {face} does not exist (the map has {count} faces)")]
    UnknownFace { face: usize, count: usize },
    #[error("cannot parse moves: {0}")]
    MalformedMoves(String),
    #[error("state is not an element of the puzzle group")]
    NotAMember,
    #[error(transparent)]
    Rubik(#[from] RubikError),
    #[error(transparent)]
    Group(GroupError),
}

impl From<GroupError> for PuzzleError {
    fn from(e: GroupError) -> Self {
        match e {
            GroupError::NotAMember => PuzzleError::NotAMember,
            e => PuzzleError::Group(e),
        }
    }
}

/// Formats a word over face generators as `F1 F2^-1`; `()` when empty.
pub fn format_moves(word: &Word) -> String {
    if word.is_empty() {
        return "()".into();
    }
    word.letters()
        .iter()
        .map(|l| match l.exponent {
            1 => format!("F{}", l.generator + 1),
            e => format!("F{}^{}", l.generator + 1, e),
        })
        .collect::<Vec<_>>()
        .join(" ")
}

/// Parses moves separated by whitespace. `faces` bounds the face labels.
pub fn parse_moves(text: &str, faces: usize) -> Result<Word, PuzzleError> {
    let mut word = Word::new();
    let text = text.trim();
    if text == "()" {
        return Ok(word);
    }
    for tok in text.split_whitespace() {
        let bad = || PuzzleError::MalformedMoves(format!("bad move {tok:?}"));
        let body = tok.strip_prefix('F').ok_or_else(bad)?;
        let (face, exponent) = match body.split_once('^') {
            Some((f, e)) => (f, e.parse::<i32>().map_err(|_| bad())?),
            None => (body, 1),
        };
        let face: usize = face.parse().map_err(|_| bad())?;
        if face == 0 || face > faces {
            return Err(PuzzleError::UnknownFace { face, count: faces });
        }
        word.push(face - 1, exponent);
    }
    Ok(word)
}

#[derive(Debug, Clone)]
pub struct Puzzle {
    presentation: RubikPresentation,
    group: PermGroup,
}

impl Puzzle {
    pub fn new(map: Map, seed: u64) -> Result<Self, PuzzleError> {
        let presentation = RubikPresentation::new(map)?;
        let group = presentation.group_with(&BuildOptions::seeded(seed))?;
        Ok(Puzzle {
            presentation,
            group,
        })
    }

    pub fn map(&self) -> &Map {
        self.presentation.map()
    }

    pub fn presentation(&self) -> &RubikPresentation {
        &self.presentation
    }

    pub fn group(&self) -> &PermGroup {
        &self.group
    }

    pub fn face_count(&self) -> usize {
        self.presentation.generators().len()
    }

    pub fn solved(&self) -> PuzzleState {
        PuzzleState {
            element: Perm::identity(self.presentation.degree()),
            history: Word::new(),
        }
    }

    fn check_face(&self, face: usize) -> Result<(), PuzzleError> {
        if face >= self.face_count() {
            return Err(PuzzleError::UnknownFace {
                face: face + 1,
                count: self.face_count(),
            });
        }
        Ok(())
    }

    /// Turns 0-based `face` by `exponent` notches.
    pub fn apply_move(
        &self,
        state: &mut PuzzleState,
        face: usize,
        exponent: i32,
    ) -> Result<(), PuzzleError> {
        self.check_face(face)?;
        let g = &self.presentation.generators()[face];
        state.element.mul_assign(&g.pow(exponent as i64));
        state.history.push(face, exponent);
        Ok(())
    }

    pub fn apply_word(&self, state: &mut PuzzleState, word: &Word) -> Result<(), PuzzleError> {
        for l in word.letters() {
            self.check_face(l.generator)?;
        }
        for l in word.letters() {
            self.apply_move(state, l.generator, l.exponent)?;
        }
        Ok(())
    }

    /// A random move sequence, fixed by `seed`. Consecutive moves turn
    /// different faces and every exponent is a non-trivial turn.
    pub fn scramble_word(&self, seed: u64, length: usize) -> Word {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let faces = self.face_count();
        let mut word = Word::new();
        let mut last = None;
        for _ in 0..length {
            let mut f = rng.random_range(0..faces);
            if faces > 1 {
                while Some(f) == last {
                    f = rng.random_range(0..faces);
                }
            }
            let p = self.presentation.map().faces()[f].len() as i32;
            let mut e = rng.random_range(1..p);
            if e > p / 2 {
                e -= p;
            }
            word.push(f, e);
            last = Some(f);
        }
        word
    }

    pub fn scramble(&self, state: &mut PuzzleState, seed: u64, length: usize) -> Word {
        let word = self.scramble_word(seed, length);
        self.apply_word(state, &word)
            .expect("scramble uses existing faces");
        word
    }

    /// Moves taking `state` back to solved. Not minimal.
    pub fn solve(&self, state: &PuzzleState) -> Result<Word, PuzzleError> {
        Ok(self.group.factor(&state.element)?.inverse())
    }

    /// Face labels of the stickers at every point, corners first.
    pub fn stickers(&self, state: &PuzzleState) -> Vec<usize> {
        let inv = state.element.inverse();
        (0..self.presentation.degree())
            .map(|y| self.presentation.home_face(inv.image(y)))
            .collect()
    }

    pub fn is_solved(&self, state: &PuzzleState) -> bool {
        state.element.is_identity()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PuzzleState {
    #[serde(skip)]
    element: Perm,
    history: Word,
}

impl PuzzleState {
    pub fn element(&self) -> &Perm {
        &self.element
    }

    pub fn history(&self) -> &Word {
        &self.history
    }

    pub fn reset(&mut self) {
        self.element = Perm::identity(self.element.degree());
        self.history = Word::new();
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::map::prism;

    #[test]
    fn move_text_round_trip() {
        let w = parse_moves("F1 F3^-1 F2^2", 5).unwrap();
        assert_eq!(format_moves(&w), "F1 F3^-1 F2^2");
        assert!(parse_moves("()", 5).unwrap().is_empty());
        assert!(parse_moves("", 5).unwrap().is_empty());
        assert!(matches!(
            parse_moves("F6", 5),
            Err(PuzzleError::UnknownFace { face: 6, count: 5 })
        ));
        assert!(matches!(parse_moves("G1", 5), Err(PuzzleError::MalformedMoves(_))));
        assert!(matches!(parse_moves("F1^x", 5), Err(PuzzleError::MalformedMoves(_))));
    }

    #[test]
    fn face_order_restores_state() {
        let pz = Puzzle::new(prism(3).unwrap(), 1).unwrap();
        for f in 0..pz.face_count() {
            let mut s = pz.solved();
            let p = pz.map().faces()[f].len();
            for _ in 0..p {
                pz.apply_move(&mut s, f, 1).unwrap();
            }
            assert!(pz.is_solved(&s));
        }
    }

    #[test]
    fn scramble_then_solve() {
        let pz = Puzzle::new(prism(3).unwrap(), 1).unwrap();
        let mut s = pz.solved();
        assert!(pz.solve(&s).unwrap().is_empty());
        let w = pz.scramble(&mut s, 42, 25);
        assert_eq!(w, pz.scramble_word(42, 25));
        assert!(!pz.is_solved(&s));
        let fix = pz.solve(&s).unwrap();
        pz.apply_word(&mut s, &fix).unwrap();
        assert!(pz.is_solved(&s));
    }

    #[test]
    fn stickers_follow_history() {
        let pz = Puzzle::new(prism(4).unwrap(), 3).unwrap();
        let mut s = pz.solved();
        pz.scramble(&mut s, 9, 12);
        let mut replay = pz.solved();
        pz.apply_word(&mut replay, &s.history().clone()).unwrap();
        assert_eq!(pz.stickers(&replay), pz.stickers(&s));
        let mut counts = vec![0; pz.face_count()];
        for f in pz.stickers(&s) {
            counts[f] += 1;
        }
        let mut expected = vec![0; pz.face_count()];
        for f in pz.stickers(&pz.solved()) {
            expected[f] += 1;
        }
        assert_eq!(counts, expected);
    }
}
