//! Design analysis for fluid-actuated soft robotic manipulator segments.
//!
//! The crate covers four steps of sizing a pressurised multi-chamber
//! segment:
//!
//! * [`geometry`]: chamber areas, centre of pressure and lever arm of a
//!   parametric cross-section, undeformed or morphed, and a bounded search
//!   for the section with the largest worst-case bending moment;
//! * [`mechanics`]: bending moment and blocked lateral tip force, stacking
//!   of segments and force-pressure curves;
//! * [`scaling`]: non-dimensional groups and the similarity laws that carry
//!   forces and curves across diameters and rubbers;
//! * [`materials`] and [`comparison`]: rubber selection and diameter-
//!   normalised comparison against published designs.
//!
//! Units are mm, kPa, N and N·mm throughout; see [`units`].
//!
//! ```
//! use softarm::scaling::scale_force_diameter;
//!
//! // 47.1 N at 33 mm OD corresponds to about 6.2 N at 12 mm
//! let f = scale_force_diameter(47.1, 33.0, 12.0).unwrap();
//! assert!((f - 6.228).abs() < 1e-3);
//! ```

pub mod comparison;
pub mod error;
pub mod geometry;
pub mod kv;
pub mod materials;
pub mod mechanics;
pub mod report;
pub mod requirements;
pub mod scaling;
pub mod units;

pub use error::{Error, Result};

// The guide's code listings run as doctests.
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/materials.md")]
    mod materials {}
    #[doc = include_str!("../../../book/src/cross_section.md")]
    mod cross_section {}
    #[doc = include_str!("../../../book/src/bending.md")]
    mod bending {}
    #[doc = include_str!("../../../book/src/scaling.md")]
    mod scaling {}
    #[doc = include_str!("../../../book/src/comparison.md")]
    mod comparison {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
