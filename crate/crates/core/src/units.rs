//! Unit conventions.
//!
//! Lengths are mm, pressures and stiffnesses kPa, forces N and moments N·mm.
//! Since 1 kPa = 1e-3 N/mm², every product of a pressure with an area picks
//! up [`KPA_TO_N_PER_MM2`].

/// N/mm² per kPa.
pub const KPA_TO_N_PER_MM2: f64 = 1e-3;

/// Bar to kPa.
pub const KPA_PER_BAR: f64 = 100.0;
