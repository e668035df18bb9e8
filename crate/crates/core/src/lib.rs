//! Exact combinatorics of the Bruhat-Tits apartment of a split, simply
//! connected, almost simple group.
//!
//! Everything here is computed with exact integers and rationals:
//!
//! * [`cartan`] builds irreducible root data (positive roots, highest-root
//!   coefficients `c`, the coefficients `c'` of `2ρ`, Weyl degrees).
//! * [`apartment`] works with points of the apartment written in the
//!   fundamental-coweight basis, `t_i = α_i(x)`: vertex detection, typing,
//!   folding into the fundamental alcove and vertex enumeration.
//! * [`distance`] implements the wall-separation distance, the simplicial
//!   distance and apartment balls.
//! * [`moyprasad`] is the concave-function calculus behind Moy-Prasad
//!   filtration indices.
//! * [`qpoly`] holds polynomials in the formal residue-field size `q`.
//! * [`growth`] turns all of the above into ball-cardinality bounds,
//!   growth exponents and the bounds tables.
//! * [`verify`] bundles the invariant suites exposed by the command line.

pub mod apartment;
pub mod cartan;
pub mod distance;
pub mod error;
pub mod growth;
pub mod moyprasad;
pub mod point;
pub mod qpoly;
pub mod verify;

pub use apartment::{AffineRoot, Budget, VertexSet};
pub use cartan::{Family, Root, RootDatum, RootSystemType};
pub use distance::DistanceReport;
pub use error::{Error, Result};
pub use growth::{BallReport, BoundsTable, SandwichReport};
pub use moyprasad::{ConcaveFunction, IndexExponent};
pub use point::ApartmentPoint;
pub use qpoly::QPolynomial;

/// Version tag written into every JSON report.
pub const SCHEMA_VERSION: u32 = 1;
