//! Exact-arithmetic structure of the tempered dual for a catalog of linear
//! real reductive groups.
//!
//! The crate computes, over the rationals and Gaussian rationals only:
//!
//! * root-system and weight combinatorics (Freudenthal multiplicities,
//!   tensor products, branching, Blattner discrete-series K-type counts);
//! * Clifford algebras, irreducible spin modules and the canonical morphism
//!   from a compact Lie algebra into the Clifford algebra;
//! * a normal-ordering engine for low-degree elements of the enveloping
//!   algebra tensored with the Clifford algebra, used to check the
//!   Parthasarathy square formula symbolically;
//! * a validated catalog of concrete groups (SL(2,R), Sp(4,R), SL(2,C))
//!   with their parabolic and intertwining data;
//! * associate classes of the tempered dual, the essential/inessential
//!   split, Dirac-square scalars, spin-module matching tables;
//! * K-theory bookkeeping: Bott elements, the crossed-product isomorphism
//!   for finite-group actions, rank/degree summaries, and the explicit
//!   Dirac family for SL(2,R).

pub mod error;
pub mod num;
pub mod linalg;
pub mod weight;
pub mod roots;
pub mod reps;
pub mod clifford;
pub mod pbw;
pub mod catalog;
pub mod spin;
pub mod tempered;
pub mod ktheory;
pub mod verify;

pub use error::{Error, Result};
pub use num::{Gq, Rat};
