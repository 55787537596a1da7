//! Exact convolution algebra of permutohedral cones and blades.
//!
//! The crate implements, over exact rational arithmetic:
//!
//! - polyhedral cones in the sum-zero hyperplane `V0^n` with dual H/V
//!   representations and canonical forms ([`cone`]);
//! - the vector space of rational combinations of closed-cone indicator
//!   functions with convolution, pointwise product, duality and decidable
//!   equality ([`indicator`]);
//! - plates, open plates, tripods and blades together with their
//!   factorization and quotient identities ([`plate`], [`blade`]);
//! - the canonical basis for graduated blades, straightening, enumeration
//!   tables and generating-function diagnostics ([`canonical`]);
//! - rational-function representations and amplitude-style identity checks
//!   ([`valuation`]);
//! - the nilpotent graded ring on edge generators with its triple subalgebra,
//!   combinatorial scattering equations and balanced graphs ([`cohomology`]);
//! - configurations of points on the circle modulo rotation ([`circle`]).
//!
//! Everything is sized for desk-scale verification (ambient n <= 7); there
//! are no floating-point code paths.

pub mod blade;
pub mod canonical;
pub mod circle;
pub mod cohomology;
pub mod cone;
pub mod error;
pub mod exact;
pub mod indicator;
pub mod osp;
pub mod plate;
pub mod valuation;

pub use blade::{AlcoveLocation, BladeLabel};
pub use canonical::{CanonicalElement, GraduatedBlade, IntPolynomial};
pub use cone::ClosedCone;
pub use error::{Error, Result};
pub use exact::{Rational, RationalMatrix, RationalVector};
pub use indicator::ConeFunction;
pub use osp::{CompositeOsp, OrderedSetPartition, PolygonTriangulation};
pub use plate::PlateLabel;
