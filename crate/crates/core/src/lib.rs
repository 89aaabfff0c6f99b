//! Exact invariants of fake weighted projective spaces.
//!
//! A `d`-dimensional fake weighted projective space is described by a lattice
//! simplex with primitive vertices and the origin in its interior. This crate
//! computes its weight system, Gorenstein index and anticanonical degree in
//! exact arithmetic, relates weight systems to unit-fraction partitions, and
//! constructs the weighted projective spaces that attain the sharp upper
//! bound on the degree for a given Gorenstein index. Exhaustive enumeration of
//! unit-fraction partitions provides an independent check of the bound at
//! small sizes.
//!
//! ```
//! use fwps_core::{degree_bound, extremal_weights, LatticeSimplex};
//!
//! let q = extremal_weights(2, 3).unwrap();
//! assert_eq!(q.to_string(), "(28,12,1,1)");
//! let p = LatticeSimplex::from_weights(&q).unwrap();
//! assert_eq!(p.degree().unwrap(), degree_bound(2, 3).unwrap());
//! ```

pub mod arith;
pub mod enumeration;
pub mod error;
pub mod simplex;
pub mod sylvester;
pub mod ufp;
pub mod weights;

pub use arith::{det_exact, gcd_many, kernel_complement, lcm_many, solve_exact, BigRat, IntMatrix};
pub use enumeration::{
    enumerate, enumerate_with, max_degree_over_partitions, verify_region, verify_sharpness, BoundStatus,
    EnumerationConfig, EnumerationReport, Execution,
};
pub use error::{Error, Result};
pub use simplex::{DualSimplex, LatticeSimplex};
pub use sylvester::{
    attainers, check_product_inequality, degree_bound, extremal_weights, syl_partition, ProductClass,
    SylvesterSeq,
};
pub use ufp::{a_of_q, det_g_closed, det_g_matrix, q_of_a, UfPartition};
pub use weights::WeightSystem;
