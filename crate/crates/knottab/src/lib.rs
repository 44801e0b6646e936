//! Knot tabulation over Dowker pair-set codes.
//!
//! The crate enumerates knot projections as Dowker codes, decides which codes
//! are drawable in the plane, merges codes connected by Reidemeister moves,
//! and certifies that the remaining classes are distinct with Alexander
//! polynomials, skein polynomials and coloring counts.
//!
//! ```
//! use knottab::{DowkerSet, drawability, invariants};
//!
//! let trefoil = DowkerSet::parse("1,4 3,6 5,2").unwrap();
//! assert!(drawability::realize(&trefoil).is_drawable());
//! let alex = invariants::alexander_poly(&trefoil).unwrap();
//! assert_eq!(alex.coefficients(), vec![1, -1, 1]);
//! ```
//!
//! The `book/` directory next to the workspace walks through each stage; its
//! code snippets are compiled and run as doc-tests of this crate.

pub mod dowker;
pub mod drawability;
pub mod error;
pub mod invariants;
pub mod moves;
pub mod notations;
pub mod tabulator;

pub use dowker::{CanonicalCode, DowkerSet, SplitPoint, Transform};
pub use error::{CodeError, MatrixError, MoveError, NotationError, SkeinError, Undrawable};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/codes.md")]
    mod codes {}
    #[doc = include_str!("../../../book/src/drawability.md")]
    mod drawability {}
    #[doc = include_str!("../../../book/src/moves.md")]
    mod moves {}
    #[doc = include_str!("../../../book/src/invariants.md")]
    mod invariants {}
    #[doc = include_str!("../../../book/src/notations.md")]
    mod notations {}
    #[doc = include_str!("../../../book/src/tabulation.md")]
    mod tabulation {}
}
