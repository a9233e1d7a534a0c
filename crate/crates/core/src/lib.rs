//! Rubik-style twisty-puzzle groups of oriented 3-valent maps.
//!
//! Each face of a map turns one notch, carrying along the corners and side
//! edges that touch it. [`rubik`] builds those generators, [`group`] does
//! the permutation group work (orders, membership, kernels, images),
//! [`shift`] measures corner twist and [`verify`] checks the structure of
//! the resulting group against its predicted order.

pub mod factor;
pub mod group;
pub mod map;
pub mod perm;
pub mod puzzle;
pub mod rubik;
pub mod shift;
pub mod verify;

pub use group::{BuildOptions, GroupError, PermGroup, Projection};
pub use map::{Map, MapError};
pub use perm::{Letter, Perm, PermError, Word};
pub use puzzle::{Puzzle, PuzzleError, PuzzleState};
pub use rubik::{rubik_generators, side_movement, RubikError, RubikPresentation};
pub use shift::{CornerOrientation, CornerSelection, ShiftError, ShiftValue};
pub use verify::{predicted_order, run_suite, verify, ConjectureReport, VerifyError, VerifyOptions};
