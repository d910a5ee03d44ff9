//! Exact engine for squarefree monomial quotients `J/I` over
//! `S = K[x_1, ..., x_n]` and their exterior-algebra counterparts.
//!
//! The crate computes Alexander duals of complexes, ideals and quotients,
//! squarefree Stanley decompositions with exact Stanley depth and
//! h-regularity, prime filtrations and their duals, multigraded Betti
//! numbers over a chosen field, linear-quotient orders and partitions of
//! simplicial complexes, and runs instance sweeps that check the duality
//! statements connecting them.
//!
//! Scalar-dependent code is generic over [`field::Field`]; the aliases
//! below fix the usual choices.

pub mod error;
pub mod exterior;
pub mod field;
pub mod filtration;
pub mod generate;
pub mod homology;
pub mod ideals;
pub mod instance;
pub mod linquot;
pub mod partition;
pub mod report;
pub mod setcalc;
pub mod sqmod;
pub mod survey;

pub use error::{Error, Result};
pub use field::{Field, Fp};
pub use ideals::{Monomial, MonomialIdeal, SqIdeal};
pub use setcalc::{IndexSet, Interval, SimplicialComplex};
pub use sqmod::{SqQuotient, StanleyDecomposition, StanleySpace};

/// Default coefficient field, `F_32003`.
pub type DefaultField = Fp<32003>;
/// Characteristic zero.
pub type Rational = num_rational::BigRational;
/// `F_2`, where some complexes change their homology.
pub type F2 = Fp<2>;
pub type F3 = Fp<3>;

pub type ExtElementF = exterior::ExtElement<DefaultField>;
pub type ExtElementQ = exterior::ExtElement<Rational>;
