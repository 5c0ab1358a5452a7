//! Quasi-static bending moment and blocked lateral tip force of a segment.
//!
//! The moment produced by pressurising a set of chambers is pressure times
//! pressurised area times the lever arm between the centre of pressure and
//! the centre of tension. A cantilevered segment of length `L` pushing
//! against a rigid stop then exerts `F = M / L` at its tip. No elastic
//! restoring term is subtracted, so the model over-predicts measured forces.

use std::collections::BTreeSet;
use std::fmt;
use std::io::BufRead;
use std::path::Path;
use std::str::FromStr;

use crate::error::{invalid, Error, Result};
use crate::geometry::{
    section_geometry, validate_spec, CrossSectionSpec, MorphState, SectionGeometry,
};
use crate::materials::Material;
use crate::requirements::RequirementsProfile;
use crate::units::KPA_TO_N_PER_MM2;

/// Column header of the force-pressure CSV format.
pub const CURVE_CSV_HEADER: &str = "pressure_kpa,force_n";

/// Stiffnesses (kPa) and Poisson ratios of the non-rubber components.
///
/// They enter non-dimensional groups that the scaling laws treat as
/// negligible or constant; they are carried for completeness only.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComponentStiffnesses {
    pub fiber: f64,
    pub central_tube: f64,
    pub partition: f64,
    pub fiber_poisson: Option<f64>,
    pub central_tube_poisson: Option<f64>,
    pub partition_poisson: Option<f64>,
}

/// A single segment: section, length, rubber and pressure limit.
#[derive(Debug, Clone, PartialEq)]
pub struct SegmentDesign {
    pub section: CrossSectionSpec,
    /// mm
    pub length: f64,
    pub material: Material,
    /// kPa
    pub max_pressure: f64,
    pub component_stiffnesses: Option<ComponentStiffnesses>,
}

impl SegmentDesign {
    /// Assumed segment length for the reference design, mm. The prototype
    /// length is not reported.
    pub const REFERENCE_LENGTH: f64 = 30.0;

    pub fn validate(&self, profile: Option<&RequirementsProfile>) -> Result<()> {
        if !(self.length > 0.0 && self.length.is_finite()) {
            return Err(invalid(format!(
                "segment length must be positive, got {}",
                self.length
            )));
        }
        if !(self.max_pressure > 0.0 && self.max_pressure.is_finite()) {
            return Err(invalid(format!(
                "max pressure must be positive, got {}",
                self.max_pressure
            )));
        }
        if let Some(p) = profile {
            if self.max_pressure > p.max_pressure {
                return Err(Error::PressureLimit {
                    pressure: self.max_pressure,
                    limit: p.max_pressure,
                });
            }
        }
        self.material.validate()?;
        let report = validate_spec(&self.section, profile);
        if let Some(v) = report.violations.first() {
            return Err(invalid(format!("invalid cross-section: {v}")));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Provenance {
    Measured,
    Predicted,
    Scaled,
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Provenance::Measured => "measured",
            Provenance::Predicted => "predicted",
            Provenance::Scaled => "scaled",
        })
    }
}

impl FromStr for Provenance {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "measured" => Ok(Provenance::Measured),
            "predicted" => Ok(Provenance::Predicted),
            "scaled" => Ok(Provenance::Scaled),
            other => Err(invalid(format!("unknown provenance `{other}`"))),
        }
    }
}

/// One (pressure, force) observation: kPa, N.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Sample {
    pub pressure: f64,
    pub force: f64,
}

impl Sample {
    pub fn new(pressure: f64, force: f64) -> Self {
        Self { pressure, force }
    }
}

/// Lateral force as a function of pressure, strictly increasing in pressure.
#[derive(Debug, Clone, PartialEq)]
pub struct ForcePressureCurve {
    samples: Vec<Sample>,
    provenance: Provenance,
}

impl ForcePressureCurve {
    pub fn new(samples: Vec<Sample>, provenance: Provenance) -> Result<Self> {
        if samples.len() < 2 {
            return Err(invalid(format!(
                "a curve needs at least 2 samples, got {}",
                samples.len()
            )));
        }
        for s in &samples {
            if !(s.pressure.is_finite() && s.force.is_finite()) {
                return Err(invalid("curve samples must be finite"));
            }
            if s.pressure < 0.0 || s.force < 0.0 {
                return Err(invalid(format!(
                    "curve samples must be non-negative, got ({}, {})",
                    s.pressure, s.force
                )));
            }
        }
        if let Some(w) = samples.windows(2).find(|w| w[1].pressure <= w[0].pressure) {
            return Err(invalid(format!(
                "pressures must be strictly increasing: {} then {}",
                w[0].pressure, w[1].pressure
            )));
        }
        Ok(Self {
            samples,
            provenance,
        })
    }

    pub fn from_pairs(pairs: &[(f64, f64)], provenance: Provenance) -> Result<Self> {
        Self::new(
            pairs.iter().map(|&(p, f)| Sample::new(p, f)).collect(),
            provenance,
        )
    }

    pub fn samples(&self) -> &[Sample] {
        &self.samples
    }

    pub fn provenance(&self) -> Provenance {
        self.provenance
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn pressure_range(&self) -> (f64, f64) {
        (
            self.samples[0].pressure,
            self.samples[self.samples.len() - 1].pressure,
        )
    }

    /// Piecewise-linear force at `pressure`, or `None` outside the sampled
    /// range.
    pub fn interpolate(&self, pressure: f64) -> Option<f64> {
        let (lo, hi) = self.pressure_range();
        if !(pressure >= lo && pressure <= hi) {
            return None;
        }
        let i = self.samples.partition_point(|s| s.pressure < pressure);
        let right = self.samples[i];
        if right.pressure == pressure || i == 0 {
            return Some(right.force);
        }
        let left = self.samples[i - 1];
        let t = (pressure - left.pressure) / (right.pressure - left.pressure);
        Some(left.force + t * (right.force - left.force))
    }

    /// Applies `f` to every sample; the result must remain a valid curve.
    pub fn map_samples(
        &self,
        provenance: Provenance,
        f: impl Fn(Sample) -> Sample,
    ) -> Result<Self> {
        Self::new(self.samples.iter().copied().map(f).collect(), provenance)
    }

    /// CSV text: a `# provenance=` line, the header, then one sample per
    /// line at full precision.
    pub fn to_csv(&self) -> String {
        let mut out = format!("# provenance={}\n{CURVE_CSV_HEADER}\n", self.provenance);
        for s in &self.samples {
            out.push_str(&format!("{},{}\n", s.pressure, s.force));
        }
        out
    }

    /// Parses the CSV format of [`ForcePressureCurve::to_csv`]. Other `#`
    /// lines are ignored; a missing provenance line means measured data.
    pub fn read_csv<R: BufRead>(reader: R, source: &Path) -> Result<Self> {
        let mut provenance = Provenance::Measured;
        let mut header_seen = false;
        let mut samples = Vec::new();
        for (idx, line) in reader.lines().enumerate() {
            let line_no = idx as u64 + 1;
            let line = line.map_err(|e| Error::io(source, e))?;
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            if let Some(comment) = line.strip_prefix('#') {
                if let Some(value) = comment.trim().strip_prefix("provenance=") {
                    provenance = value
                        .parse()
                        .map_err(|e: Error| Error::parse(source, line_no, e.to_string()))?;
                }
                continue;
            }
            if !header_seen {
                if line.replace(' ', "") != CURVE_CSV_HEADER {
                    return Err(Error::parse(
                        source,
                        line_no,
                        format!("expected header `{CURVE_CSV_HEADER}`"),
                    ));
                }
                header_seen = true;
                continue;
            }
            let mut cells = line.split(',').map(str::trim);
            let (Some(p), Some(f), None) = (cells.next(), cells.next(), cells.next()) else {
                return Err(Error::parse(source, line_no, "expected two columns"));
            };
            let num = |text: &str| {
                text.parse::<f64>()
                    .ok()
                    .filter(|x| x.is_finite())
                    .ok_or_else(|| {
                        Error::parse(source, line_no, format!("invalid number `{text}`"))
                    })
            };
            samples.push(Sample::new(num(p)?, num(f)?));
        }
        if !header_seen {
            return Err(Error::parse(source, 0, "missing header"));
        }
        Self::new(samples, provenance).map_err(|e| Error::parse(source, 0, e.to_string()))
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let file = std::fs::File::open(path).map_err(|e| Error::io(path, e))?;
        Self::read_csv(std::io::BufReader::new(file), path)
    }
}

/// Bending moment `p * A * L`, N·mm, for a pressure in kPa.
pub fn bending_moment(pressure: f64, geom: &SectionGeometry) -> Result<f64> {
    if !(pressure >= 0.0 && pressure.is_finite()) {
        return Err(invalid(format!(
            "pressure must be non-negative, got {pressure}"
        )));
    }
    Ok(pressure * KPA_TO_N_PER_MM2 * geom.pressurized_area * geom.lever_arm)
}

/// Blocked tip force of a cantilever of length `length` (mm) carrying base
/// moment `moment` (N·mm).
pub fn lateral_tip_force(moment: f64, length: f64) -> Result<f64> {
    if !(length > 0.0 && length.is_finite()) {
        return Err(invalid(format!("length must be positive, got {length}")));
    }
    Ok(moment / length)
}

/// Tip force of `n_segments` identical segments in series: the base segment
/// sees the tip load over `n` times the length.
pub fn stacked_force(single_segment_force: f64, n_segments: u32) -> Result<f64> {
    if n_segments < 1 {
        return Err(invalid("at least one segment is required"));
    }
    Ok(single_segment_force / f64::from(n_segments))
}

/// Model force at each of `pressures` (kPa, strictly increasing).
pub fn predicted_curve(
    design: &SegmentDesign,
    pressures: &[f64],
    pressurized: &BTreeSet<usize>,
    morph: MorphState,
) -> Result<ForcePressureCurve> {
    design.validate(None)?;
    if let Some(&p) = pressures.iter().find(|&&p| p > design.max_pressure) {
        return Err(Error::PressureLimit {
            pressure: p,
            limit: design.max_pressure,
        });
    }
    let geom = section_geometry(&design.section, pressurized, morph)?;
    let samples = pressures
        .iter()
        .map(|&p| {
            let moment = bending_moment(p, &geom)?;
            Ok(Sample::new(p, lateral_tip_force(moment, design.length)?))
        })
        .collect::<Result<Vec<_>>>()?;
    ForcePressureCurve::new(samples, Provenance::Predicted)
}
