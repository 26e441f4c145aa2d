//! Exact computations for integral surface pairs and orbifold curves.
//!
//! * [`exact`]: rationals, multiplicities, Hirzebruch–Jung continued fractions.
//! * [`graph`]: discrepancies and klt classification on resolution dual graphs.
//! * [`germ`]: klt classification of integral pairs on a smooth surface germ.
//! * [`orbibase`]: orbifold curves, orbifold bases of fibrations, specialness and
//!   the abelianity verdict for special 2-dimensional orbifolds.

pub mod error;
pub mod exact;
pub mod germ;
pub mod graph;
mod linalg;
pub mod orbibase;

pub use error::{ExactError, GermError, GraphError, OrbifoldError};
pub use exact::{coeff, gcd_list, hj_evaluate, hj_expand, HjChain, Multiplicity, Rational};
