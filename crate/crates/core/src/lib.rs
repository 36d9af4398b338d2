//! Disc-count statistics of two determinantal point processes attached to Landau
//! levels: the Ginibre-type process on the plane and its hyperbolic analogue on the
//! Poincaré disc.
//!
//! - [`specfun`]: Laguerre and Jacobi polynomials, Pochhammer symbols, incomplete beta.
//! - [`geometry`]: Möbius maps, image discs, Euclidean and hyperbolic lens areas.
//! - [`kernels`]: correlation kernels and the radial profile `f_{ν,m}`.
//! - [`variance`]: variance of the disc count by several routes, the `r -> 1` constant,
//!   and the flat-limit table.
//! - [`counting`]: exact Poisson-binomial law of the count for the weighted Bergman case.
//! - [`cli`]: the `landau-dpp` command line.
//!
//! ```
//! use landau_dpp::{variance_hyperbolic, HyperbolicLevel, QuadratureConfig};
//!
//! let level = HyperbolicLevel::new(1.0, 0).unwrap();
//! let v = variance_hyperbolic(level, 0.5, &QuadratureConfig::default()).unwrap();
//! assert!((v.value - 4.0 / 15.0).abs() < 1e-8);
//! ```

// Negated comparisons are how NaN inputs get rejected; quadrature constants are
// kept at their published precision.
#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::excessive_precision)]

pub mod cli;
pub mod counting;
pub mod error;
pub mod geometry;
pub mod kernels;
pub mod quadrature;
pub mod specfun;
pub mod variance;

pub use counting::{
    binomial_moment, build_profile, distribution, generating_function, sample_counts, variance_series,
    BernoulliProfile, CountDistribution, CountHistogram,
};
pub use error::{Error, Result};
pub use geometry::{
    euclidean_lens_complement_area, hyperbolic_distance, hyperbolic_lens_integral,
    hyperbolic_lens_integral_transformed, image_disc, mobius, ComplexPoint, Disc, ImageDiscParams,
};
pub use kernels::{f_profile, fock_kernel_sq_weighted, hyperbolic_kernel, EuclideanLevel, HyperbolicLevel};
pub use quadrature::{QuadratureConfig, Scheme};
pub use variance::{
    asymptotic_constant, contraction_check, variance_euclidean_geometric, variance_euclidean_shirai,
    variance_hyperbolic, variance_hyperbolic_via_transformed, ContractionRow, Route, VarianceResult,
};
