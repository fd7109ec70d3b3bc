//! Exact volumes of ample torus-invariant divisors on smooth complete toric
//! surfaces.
//!
//! The volume is computed five ways and compared: area of the divisor
//! polytope, half the classical self-intersection, the flag sum of signed
//! simplex volumes, half the sum of iterated tame-symbol boundaries of the
//! Čech cocycle, and the area of the Newton–Okounkov body at a chosen flag.
//!
//! ```
//! use flagvol::prelude::*;
//! use num_bigint::BigInt;
//!
//! let fan = hirzebruch_fan(&BigInt::from(1)).unwrap();
//! let d = TorusDivisor::from_i64(&fan, &[0, 1, 2, 0]).unwrap();
//! let dec = standard_decomposition(&fan, DecompositionVariant::DEFAULT).unwrap();
//! let report = okounkov_volume_report(&fan, &d, &dec, TFlag::new(&fan, 2, 1).unwrap()).unwrap();
//! assert!(report.agree);
//! assert_eq!(report.simplex_sum.to_string(), "3/2");
//! ```

pub mod divisor;
pub mod error;
pub mod fan;
pub mod instance;
pub mod lattice;
pub mod milnor;
pub mod render;
pub mod valuation;
pub mod volume;

pub use error::{Error, Result};

pub mod prelude {
    pub use crate::divisor::{
        cartier_data, divisor_polytope, ensure_ample, is_ample, is_globally_generated, section_lattice_points,
        CartierCocycle, InequalityWitness, Monomial, TorusDivisor,
    };
    pub use crate::error::{Error, Result};
    pub use crate::fan::{
        hirzebruch_fan, projective_plane, standard_decomposition, star_subdivide, validate_fan, DecompositionVariant,
        Fan2D, OrbitDecomposition,
    };
    pub use crate::lattice::{convex_hull_2d, polygon_area, LatticeVector, Polygon, RationalPoint};
    pub use crate::milnor::{intersection_number_via_symbols, iterated_boundary, MonomialFn, SymbolK2};
    pub use crate::valuation::{flag_valuation, graded_semigroup, trivialization_polytope, Rank2Valuation, TFlag};
    pub use crate::volume::{
        enumerate_tflags, flag_contribution, okounkov_volume_report, self_intersection_classical, simplex_sum_volume,
        VolumeReport,
    };
}
