//! Exact distortion invariants of knots in the cubic lattice.
//!
//! The central quantity is the vertex distortion
//! `δ_V(K) = max d_K(a, b) / d₁(a, b)` over vertex pairs, where `d_K` is arc
//! length along the knot and `d₁` the taxicab distance. Everything is computed
//! with integers and reduced fractions; there is no floating point in the
//! exact pipeline.
//!
//! ```
//! use knotdist::{generators, vertex_distortion, Ratio};
//!
//! let rect = generators::rectangle(1, 4).unwrap();
//! assert_eq!(vertex_distortion(&rect).delta, Ratio::integer(5));
//! ```

pub mod distortion;
pub mod error;
pub mod generators;
pub mod knotfile;
pub mod lattice;
pub mod metrics;
pub mod midpoint;
pub mod ratio;
pub mod report;

pub use distortion::{
    euclidean_vertex_lower_bound, gromov1_distortion, heatmap, vertex_distortion,
    vertex_distortion_with, DistortionReport, HeatmapRow, Pruning,
};
pub use error::{Error, Result};
pub use lattice::{validate, Axis, Edge, Isometry, LatticeKnot, LatticePoint, Stick, Violation};
pub use metrics::{arc_distance, d1, rho1, rho2_squared, ArcPosition};
pub use midpoint::{
    certify_unknot, classify_pair, dominating_vertex_pair, neighbors, Certificate,
    MidpointPairClass, Verdict,
};
pub use ratio::Ratio;
