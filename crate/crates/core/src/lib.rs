//! Exact arithmetic for conservative dynamical Belyi polynomials.
//!
//! - [`belyi`] builds `B_{d,k}` and certifies that both finite critical
//!   points are fixed.
//! - [`reduction`] decides good / potential good / persistent bad reduction
//!   at a prime from valuations of the monic conjugate, classifies the pairs
//!   `(d, p)` for which persistent bad reduction can occur, and builds the
//!   witnessing polynomial.
//! - [`padic`] computes Newton polygons with rational ordinates.
//! - [`heights`] computes Mahler measures and heights with an
//!   extended-precision root finder.
//! - [`table`] regenerates the degree-18 witness table and flags the printed
//!   coefficients that disagree with the closed form.
//! - [`cli`] is the command-line front end.
//!
//! ```
//! use dynbelyi::belyi::generate;
//! use dynbelyi::reduction::{persistent_bad_witness, Verdict};
//!
//! let b = generate(4, 1).unwrap();
//! assert_eq!(b.to_string(), "-3z^4 + 4z^3");
//!
//! let (w, report) = persistent_bad_witness(18, 2).unwrap();
//! assert_eq!(w.k(), 2);
//! assert_eq!(report.verdict, Verdict::PersistentBadReduction);
//! ```

pub mod belyi;
pub mod cli;
pub mod error;
pub mod exact;
pub mod heights;
pub mod padic;
pub mod poly;
pub mod reduction;
pub mod table;

pub use belyi::{generate, BelyiPoly};
pub use error::{Error, Result};
pub use exact::{Integer, Rational};
pub use padic::{newton_polygon, NewtonPolygon};
pub use poly::{AffineMap, Polynomial};
