//! Shared inputs for the criterion benchmarks in `benches/`.

/// `count` equally spaced success probabilities in `(0, 1]`.
pub fn p_grid(count: usize) -> Vec<f64> {
    (1..=count).map(|i| i as f64 / count as f64).collect()
}

/// Shapes used across the benchmarks.
pub const SHAPES: [f64; 5] = [0.3, 1.0, 2.7, 7.5, 10.0];
