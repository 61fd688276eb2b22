//! Shared inputs for the criterion benchmarks.

use knotdist::{generators, LatticeKnot};

/// Long thin rectangle with `edges` edges (`edges` must be even and at least 4).
pub fn thin_rectangle(edges: u32) -> LatticeKnot {
    generators::rectangle(1, edges / 2 - 1).expect("valid rectangle")
}

/// Near-square rectangle, where pruning helps least.
pub fn square_rectangle(edges: u32) -> LatticeKnot {
    let half = edges / 2;
    generators::rectangle(half / 2, half - half / 2).expect("valid rectangle")
}

pub fn random(edges: usize, seed: u64) -> LatticeKnot {
    generators::random_polygon(edges, seed).expect("random polygon")
}
