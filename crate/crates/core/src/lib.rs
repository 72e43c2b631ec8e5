//! Skew polynomial rings of bijective type, term-spanned subextensions, and
//! brute-force module theory over finite rings.

pub mod bitset;
pub mod coeffring;
pub mod error;
pub mod linalg;
pub mod modlattice;
pub mod orecore;
pub mod termorder;
pub mod family5;
pub mod subext;
pub mod report;
pub mod suite;
pub mod verdict;

pub use coeffring::{build_finite, build_ring, AnyRing, CoeffMap, CoeffRing, FiniteRing, IntegerRing, Side};
pub use error::{OreError, Result};
pub use termorder::{compare_revlex, min_term, LaurentTerm, LeadTerm, Term};
