//! Numerical tolerances shared across the crate.

/// Algebraic identities on single matrix products.
pub const ALGEBRAIC: f64 = 1e-12;

/// Composed geometric operations (≈10 matrix operations deep).
pub const GEOMETRIC: f64 = 1e-10;

/// Half-width of the band `|trace| ∈ [2 − band, 2 + band]` classified as parabolic.
pub const PARABOLIC_BAND: f64 = 1e-9;

/// Environment variable that overrides [`PARABOLIC_BAND`] in the CLI.
pub const TOLERANCE_ENV: &str = "HECKEFLOW_TOL";
