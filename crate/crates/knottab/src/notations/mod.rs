//! Braid words and closed lattice walks. These are checked for validity and
//! rewritten by their own equivalence moves; they are not converted to
//! Dowker codes.

pub mod braid;
pub mod lattice;

pub use braid::{
    braid_components, braid_is_connected_sum_candidate, braid_rewrite, markov_move, BraidWord, Markov, Rewrite,
};
pub use lattice::{saw_move, saw_validate, LatticeWalk, SawMove};
