//! Exact Newton numbers of convenient Newton polyhedra in dimensions 1 to 3,
//! and the effect on the Newton number of adding a lattice point below the
//! Newton boundary.
//!
//! * [`exactgeom`]: rational arithmetic, hulls, vertex enumeration, volumes.
//! * [`newton`]: support sets, Newton polyhedra, the region `Γ₋` under the
//!   Newton boundary and the Newton number `ν`.
//! * [`monotonicity`]: point addition, the unit-pyramid criterion for
//!   `ν`-preservation and the classification of strict drops.
//! * [`oracle`]: an independent slab-integration path for the same volumes,
//!   a reproducible generator of random supports and a property cross-check.

pub mod error;
pub mod exactgeom;
pub mod monotonicity;
pub mod newton;
pub mod oracle;

pub use error::{Error, Result};
pub use exactgeom::{Halfspace, LatticePoint, Rational, RationalPoint};
pub use monotonicity::{
    add_point, classify, difference_skeleton, enumerate_equal, is_unit_pyramid, nu_drop,
    nu_zero_witness, Classification, CoordinatePlane, DifferenceSkeleton, EqualPoint, NuDrop,
    NuZeroWitness, OffPlane, PlaneFailure, StrictReason, UnitPyramid,
};
pub use newton::{
    build_polyhedron, gamma_minus, newton_number, restrict, CompactFacet, GammaMinusRegion,
    NewtonPolyhedron, Piece, SupportSet,
};
pub use oracle::{cross_check, nu_oracle, random_convenient_support, volume_slab, CrossCheck, CrossCheckReport, GeneratorConfig};
