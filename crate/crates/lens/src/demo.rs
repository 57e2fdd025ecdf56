//! A small built-in dataset: 19 three-objective points forming a three-way
//! trade-off. High values (above 50) never occur in all three objectives at
//! once, yet no objective pair shows a strong rank correlation, which makes
//! the set a compact showcase for the region-map analysis. It doubles as a
//! golden fixture for the test suites.

use crate::objective::maximise_specs;
use crate::set::ApproximationSet;

/// The raw points; all three objectives are maximised.
pub const THREE_WAY_TRADEOFF_POINTS: [[f64; 3]; 19] = [
    [45.0, 68.0, 85.0],
    [6.0, 63.0, 99.0],
    [34.0, 64.0, 95.0],
    [28.0, 100.0, 48.0],
    [98.0, 47.0, 69.0],
    [48.0, 62.0, 79.0],
    [72.0, 24.0, 90.0],
    [82.0, 79.0, 16.0],
    [36.0, 100.0, 97.0],
    [100.0, 87.0, 41.0],
    [98.0, 19.0, 87.0],
    [85.0, 57.0, 50.0],
    [88.0, 20.0, 73.0],
    [91.0, 48.0, 99.0],
    [94.0, 31.0, 70.0],
    [56.0, 49.0, 59.0],
    [75.0, 93.0, 1.0],
    [38.0, 84.0, 85.0],
    [45.0, 78.0, 47.0],
];

/// The demo points as an approximation set (objectives `Z1..Z3`, maximise).
pub fn three_way_tradeoff_set() -> ApproximationSet {
    let rows: Vec<Vec<f64>> = THREE_WAY_TRADEOFF_POINTS.iter().map(|p| p.to_vec()).collect();
    ApproximationSet::from_rows(maximise_specs(3), "three-way-tradeoff", &rows)
        .expect("demo data is well-formed")
}
