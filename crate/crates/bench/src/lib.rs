//! Shared fixtures for the benchmark targets.

use polyknot::embedding::PolyKnot;
use polyknot::poly::Polynomial;

/// Trefoil with degree sequence (3, 4, 5).
pub fn trefoil() -> PolyKnot {
    PolyKnot::parse("t^3 - 3t", "t^4 - 4t^2", "t^5 - 10t").unwrap()
}

/// Degree-(4, 5) plane projection with five real nodes.
pub fn five_node_projection() -> (Polynomial, Polynomial) {
    (
        "2 (t - 2) (t + 4) (t^2 - 11)".parse().unwrap(),
        "t (t^2 - 6) (t^2 - 16)".parse().unwrap(),
    )
}
