//! Ensemble-average weight and stopping-set spectra, and union-type bounds
//! for decoding over the BEC.
//!
//! All coefficients are exact rationals; floats appear only when a bound is
//! evaluated at a given erasure probability.

mod bound;
mod poly;
mod spectrum;

pub use bound::{parse_grid, regular_fraction, union_bound_bec, union_bound_terms, BoundPoint, BoundTable};
pub use poly::{compose, g_poly, g_stop_poly, phi_poly, poly_power_coeffs, GenPoly};
pub use spectrum::{ensemble_avg_spectrum, Ensemble, SpectrumKind, SpectrumTable};
