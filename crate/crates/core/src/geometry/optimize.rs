//! Bounded derivative-free search for the section that maximises the
//! worst-case bending moment.

use std::ops::RangeInclusive;

use super::{adjacent_chambers, section_geometry, validate_spec, CrossSectionSpec, MorphState};
use crate::error::{invalid, Error, Result};
use crate::requirements::RequirementsProfile;

/// Sweeps over the coordinates before the search gives up refining.
const MAX_SWEEPS: usize = 400;
/// Step size, relative to the interval width, at which a coordinate is
/// considered converged.
const STEP_TOL: f64 = 1e-10;
/// Relative objective change below which two candidates are tied.
const TIE_TOL: f64 = 1e-12;

/// Closed interval of admissible values, mm.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
}

impl Interval {
    pub fn new(lo: f64, hi: f64) -> Self {
        Self { lo, hi }
    }

    pub fn fixed(value: f64) -> Self {
        Self {
            lo: value,
            hi: value,
        }
    }

    fn midpoint(&self) -> f64 {
        if self.lo == self.hi {
            self.lo
        } else {
            0.5 * (self.lo + self.hi)
        }
    }

    fn width(&self) -> f64 {
        self.hi - self.lo
    }

    fn is_well_formed(&self) -> bool {
        self.lo.is_finite() && self.hi.is_finite() && self.lo <= self.hi
    }
}

/// Search box over every field of [`CrossSectionSpec`].
#[derive(Debug, Clone, PartialEq)]
pub struct SpecBounds {
    pub outer_diameter: Interval,
    pub outer_wall_thickness: Interval,
    pub partition_thickness: Interval,
    pub n_chambers: RangeInclusive<usize>,
    pub central_tube_od: Interval,
    pub central_tube_id: Interval,
}

impl SpecBounds {
    /// The singleton box containing only `spec`.
    pub fn fixed(spec: &CrossSectionSpec) -> Self {
        Self {
            outer_diameter: Interval::fixed(spec.outer_diameter),
            outer_wall_thickness: Interval::fixed(spec.outer_wall_thickness),
            partition_thickness: Interval::fixed(spec.partition_thickness),
            n_chambers: spec.n_chambers..=spec.n_chambers,
            central_tube_od: Interval::fixed(spec.central_tube_od),
            central_tube_id: Interval::fixed(spec.central_tube_id),
        }
    }

    fn continuous(&self) -> [Interval; 5] {
        [
            self.outer_diameter,
            self.outer_wall_thickness,
            self.partition_thickness,
            self.central_tube_od,
            self.central_tube_id,
        ]
    }
}

const PARTITION: usize = 2;

fn spec_at(x: &[f64; 5], n_chambers: usize) -> CrossSectionSpec {
    CrossSectionSpec {
        outer_diameter: x[0],
        outer_wall_thickness: x[1],
        partition_thickness: x[PARTITION],
        n_chambers,
        central_tube_od: x[3],
        central_tube_id: x[4],
    }
}

/// Moment index `A * L` of the design actuation: `n - 1` adjacent
/// chambers, two adjacent chambers for a three-chamber section.
///
/// Undeformed, every contiguous pattern of `k` chambers gives a moment at
/// least that of a single chamber, and `n - 1` chambers match it, so this is
/// the worst bending direction.
pub fn worst_case_moment_index(spec: &CrossSectionSpec, morph: MorphState) -> Result<f64> {
    let k = spec.n_chambers.saturating_sub(1).max(1);
    Ok(section_geometry(spec, &adjacent_chambers(k), morph)?.moment_index())
}

fn objective(
    spec: &CrossSectionSpec,
    profile: Option<&RequirementsProfile>,
    morph: MorphState,
) -> f64 {
    if !validate_spec(spec, profile).is_valid() {
        return f64::NEG_INFINITY;
    }
    worst_case_moment_index(spec, morph).unwrap_or(f64::NEG_INFINITY)
}

fn improves(
    candidate: f64,
    candidate_partition: f64,
    current: f64,
    current_partition: f64,
) -> bool {
    if candidate == f64::NEG_INFINITY {
        return false;
    }
    if current == f64::NEG_INFINITY {
        return true;
    }
    let tol = TIE_TOL * current.abs().max(f64::MIN_POSITIVE);
    candidate > current + tol
        || (candidate >= current - tol && candidate_partition < current_partition)
}

/// Compass search over the continuous fields for a fixed chamber count,
/// started from the centre of the box.
fn search_fixed_count(
    bounds: &[Interval; 5],
    n_chambers: usize,
    profile: Option<&RequirementsProfile>,
    morph: MorphState,
) -> ([f64; 5], f64) {
    let mut x = bounds.map(|b| b.midpoint());
    let mut fx = objective(&spec_at(&x, n_chambers), profile, morph);
    let mut steps = bounds.map(|b| 0.5 * b.width());

    for _ in 0..MAX_SWEEPS {
        let mut moved = false;
        for c in 0..x.len() {
            if steps[c] == 0.0 {
                continue;
            }
            // downward first: ties resolve toward thinner partitions
            for dir in [-1.0, 1.0] {
                let mut cand = x;
                cand[c] = (x[c] + dir * steps[c]).clamp(bounds[c].lo, bounds[c].hi);
                if cand[c] == x[c] {
                    continue;
                }
                let fc = objective(&spec_at(&cand, n_chambers), profile, morph);
                if improves(fc, cand[PARTITION], fx, x[PARTITION]) {
                    x = cand;
                    fx = fc;
                    moved = true;
                    break;
                }
            }
        }
        if !moved {
            let mut converged = true;
            for (step, b) in steps.iter_mut().zip(bounds) {
                *step *= 0.5;
                if *step <= STEP_TOL * b.width() {
                    *step = 0.0;
                }
                converged &= *step == 0.0;
            }
            if converged {
                break;
            }
        }
    }
    (x, fx)
}

/// Finds the section inside `bounds` that maximises the worst-case moment
/// index, subject to [`validate_spec`] with `profile`.
///
/// Every chamber count in the range is searched with a compass search from
/// the centre of the box, with a fixed sweep budget. Ties go to the thinner
/// partition, then to fewer chambers, so the result is deterministic.
pub fn optimize_section(
    bounds: &SpecBounds,
    profile: Option<&RequirementsProfile>,
    morph: MorphState,
) -> Result<CrossSectionSpec> {
    let continuous = bounds.continuous();
    if !continuous.iter().all(Interval::is_well_formed) {
        return Err(invalid("bounds must be finite with lo <= hi"));
    }
    if bounds.n_chambers.is_empty() {
        return Err(invalid("chamber count range is empty"));
    }

    let mut best: Option<(CrossSectionSpec, f64)> = None;
    for n in bounds.n_chambers.clone() {
        let (x, fx) = search_fixed_count(&continuous, n, profile, morph);
        if fx == f64::NEG_INFINITY {
            continue;
        }
        let better = match &best {
            None => true,
            Some((spec, f)) => improves(fx, x[PARTITION], *f, spec.partition_thickness),
        };
        if better {
            best = Some((spec_at(&x, n), fx));
        }
    }
    best.map(|(spec, _)| spec).ok_or(Error::InfeasibleBounds)
}
