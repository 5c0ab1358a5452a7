//! Parametric cross-section of a multi-chamber segment.
//!
//! The section is a silicone tube of outer diameter `d` with `n` equal
//! chambers between a central tube and the outer wall, separated by radial
//! partition walls of uniform thickness. Chamber `i` is centred on the
//! direction `2 pi i / n`.
//!
//! The inextensible central tube carries the axial tension, so the bending
//! moment produced by pressure is set by the pressurised area and its lever
//! arm about the tube. Under pressure the section morphs: the pressurised
//! chambers swell and push the tube against the opposite wall. That state is
//! represented by two gains with physical caps ([`MorphState`]), not by a
//! deformed-shape solution.

mod optimize;
mod sector;

use std::collections::BTreeSet;
use std::f64::consts::PI;
use std::fmt;
use std::path::Path;

pub use optimize::{optimize_section, worst_case_moment_index, Interval, SpecBounds};
pub use sector::{annular_sector_properties, chamber_properties, SectorProperties};

use crate::error::{invalid, Result};
use crate::kv::KeyValues;
use crate::requirements::RequirementsProfile;

/// Dimensions of a segment cross-section, all in mm.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CrossSectionSpec {
    pub outer_diameter: f64,
    pub outer_wall_thickness: f64,
    pub partition_thickness: f64,
    pub n_chambers: usize,
    pub central_tube_od: f64,
    pub central_tube_id: f64,
}

impl CrossSectionSpec {
    pub const KEYS: [&'static str; 6] = [
        "outer_diameter",
        "outer_wall_thickness",
        "partition_thickness",
        "n_chambers",
        "central_tube_od",
        "central_tube_id",
    ];

    /// The three-chamber 12 mm design with 0.8 mm partitions and a 2 mm
    /// working channel.
    ///
    /// The 1.0 mm outer wall and 3.0 mm central tube OD are assumed values;
    /// only the OD, chamber count, partition thickness and channel ID are
    /// reported for the built prototype.
    pub fn reference() -> Self {
        Self {
            outer_diameter: 12.0,
            outer_wall_thickness: 1.0,
            partition_thickness: 0.8,
            n_chambers: 3,
            central_tube_od: 3.0,
            central_tube_id: 2.0,
        }
    }

    /// Radius of the inside of the outer wall.
    pub fn inner_wall_radius(&self) -> f64 {
        0.5 * self.outer_diameter - self.outer_wall_thickness
    }

    pub fn tube_radius(&self) -> f64 {
        0.5 * self.central_tube_od
    }

    /// Largest possible distance between the tube centre and the section
    /// centre: the tube touching the inner wall.
    pub fn max_tube_offset(&self) -> f64 {
        self.inner_wall_radius() - self.tube_radius()
    }

    /// Area of the ring between the central tube and the inner wall, mm².
    pub fn annulus_area(&self) -> f64 {
        let (a, b) = (self.tube_radius(), self.inner_wall_radius());
        PI * (b * b - a * a)
    }

    /// Nominal partition area, `n * t * (b - a)`, mm².
    pub fn partition_area(&self) -> f64 {
        self.n_chambers as f64
            * self.partition_thickness
            * (self.inner_wall_radius() - self.tube_radius())
    }

    /// Properties of a single chamber.
    pub fn chamber(&self) -> Result<SectorProperties> {
        chamber_properties(
            self.tube_radius(),
            self.inner_wall_radius(),
            self.n_chambers,
            self.partition_thickness,
        )
    }

    pub fn from_kv(kv: &KeyValues) -> Result<Self> {
        kv.reject_unknown(&Self::KEYS)?;
        Ok(Self {
            outer_diameter: kv.require_f64("outer_diameter")?,
            outer_wall_thickness: kv.require_f64("outer_wall_thickness")?,
            partition_thickness: kv.require_f64("partition_thickness")?,
            n_chambers: kv.require_usize("n_chambers")?,
            central_tube_od: kv.require_f64("central_tube_od")?,
            central_tube_id: kv.require_f64("central_tube_id")?,
        })
    }

    pub fn to_kv(&self) -> KeyValues {
        let mut kv = KeyValues::new();
        kv.push("outer_diameter", self.outer_diameter);
        kv.push("outer_wall_thickness", self.outer_wall_thickness);
        kv.push("partition_thickness", self.partition_thickness);
        kv.push("n_chambers", self.n_chambers);
        kv.push("central_tube_od", self.central_tube_od);
        kv.push("central_tube_id", self.central_tube_id);
        kv
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        Self::from_kv(&KeyValues::read(path)?)
    }
}

/// A single violated geometric invariant or application constraint.
#[derive(Debug, Clone, PartialEq)]
pub enum Violation {
    NonFinite(&'static str),
    InnerBoreNonPositive {
        inner_diameter: f64,
    },
    TubeDoesNotFit {
        tube_od: f64,
        inner_diameter: f64,
    },
    TubeWallNonPositive {
        tube_od: f64,
        tube_id: f64,
    },
    NegativeTubeId(f64),
    PartitionNonPositive(f64),
    PartitionsFillAnnulus {
        partition_area: f64,
        annulus_area: f64,
    },
    ChambersConsumed,
    ChamberCount(usize),
    MaxOdExceeded {
        od: f64,
        max: f64,
    },
    ChannelTooSmall {
        id: f64,
        required: f64,
    },
    TooFewChambersForDofs {
        n_chambers: usize,
        dofs: u32,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::NonFinite(field) => write!(f, "{field} is not a finite number"),
            Violation::InnerBoreNonPositive { inner_diameter } => {
                write!(f, "inner bore nonpositive: {inner_diameter} mm")
            }
            Violation::TubeDoesNotFit {
                tube_od,
                inner_diameter,
            } => write!(
                f,
                "central tube does not fit: OD {tube_od} mm >= inner bore {inner_diameter} mm"
            ),
            Violation::TubeWallNonPositive { tube_od, tube_id } => write!(
                f,
                "central tube wall nonpositive: OD {tube_od} mm <= ID {tube_id} mm"
            ),
            Violation::NegativeTubeId(id) => write!(f, "central tube ID negative: {id} mm"),
            Violation::PartitionNonPositive(t) => {
                write!(f, "partition thickness nonpositive: {t} mm")
            }
            Violation::PartitionsFillAnnulus {
                partition_area,
                annulus_area,
            } => write!(
                f,
                "partition area {partition_area:.4} mm2 not below annulus area {annulus_area:.4} mm2"
            ),
            Violation::ChambersConsumed => write!(f, "partition walls leave no chamber area"),
            Violation::ChamberCount(n) => write!(f, "chamber count {n} outside 2..=8"),
            Violation::MaxOdExceeded { od, max } => {
                write!(f, "max OD: {od} mm exceeds the {max} mm requirement")
            }
            Violation::ChannelTooSmall { id, required } => write!(
                f,
                "working channel: ID {id} mm below the required {required} mm"
            ),
            Violation::TooFewChambersForDofs { n_chambers, dofs } => write!(
                f,
                "{n_chambers} chambers cannot provide {dofs} bending DOFs"
            ),
        }
    }
}

/// Outcome of [`validate_spec`]; empty means valid.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_valid() {
            return writeln!(f, "valid");
        }
        for v in &self.violations {
            writeln!(f, "violation: {v}")?;
        }
        Ok(())
    }
}

/// Checks the geometric invariants of `spec`, and the application
/// constraints of `profile` when one is attached.
pub fn validate_spec(
    spec: &CrossSectionSpec,
    profile: Option<&RequirementsProfile>,
) -> ValidationReport {
    let mut violations = Vec::new();
    let fields = [
        ("outer_diameter", spec.outer_diameter),
        ("outer_wall_thickness", spec.outer_wall_thickness),
        ("partition_thickness", spec.partition_thickness),
        ("central_tube_od", spec.central_tube_od),
        ("central_tube_id", spec.central_tube_id),
    ];
    for (name, value) in fields {
        if !value.is_finite() {
            violations.push(Violation::NonFinite(name));
        }
    }
    if !violations.is_empty() {
        return ValidationReport { violations };
    }

    let inner_diameter = spec.outer_diameter - 2.0 * spec.outer_wall_thickness;
    let mut ring_ok = true;
    if inner_diameter <= 0.0 {
        violations.push(Violation::InnerBoreNonPositive { inner_diameter });
        ring_ok = false;
    } else if spec.central_tube_od >= inner_diameter {
        violations.push(Violation::TubeDoesNotFit {
            tube_od: spec.central_tube_od,
            inner_diameter,
        });
        ring_ok = false;
    }
    if spec.central_tube_od <= spec.central_tube_id {
        violations.push(Violation::TubeWallNonPositive {
            tube_od: spec.central_tube_od,
            tube_id: spec.central_tube_id,
        });
    }
    if spec.central_tube_id < 0.0 {
        violations.push(Violation::NegativeTubeId(spec.central_tube_id));
    }
    let count_ok = (2..=8).contains(&spec.n_chambers);
    if !count_ok {
        violations.push(Violation::ChamberCount(spec.n_chambers));
    }
    if spec.partition_thickness <= 0.0 {
        violations.push(Violation::PartitionNonPositive(spec.partition_thickness));
    } else if ring_ok && count_ok && spec.central_tube_od >= 0.0 {
        let (partition_area, annulus_area) = (spec.partition_area(), spec.annulus_area());
        if partition_area >= annulus_area {
            violations.push(Violation::PartitionsFillAnnulus {
                partition_area,
                annulus_area,
            });
        } else if spec.chamber().map_or(true, |c| c.area <= 0.0) {
            violations.push(Violation::ChambersConsumed);
        }
    }

    if let Some(profile) = profile {
        if spec.outer_diameter > profile.max_od {
            violations.push(Violation::MaxOdExceeded {
                od: spec.outer_diameter,
                max: profile.max_od,
            });
        }
        if spec.central_tube_id < profile.channel_id {
            violations.push(Violation::ChannelTooSmall {
                id: spec.central_tube_id,
                required: profile.channel_id,
            });
        }
        // bending in any direction of the plane needs three chambers
        if profile.dofs >= 2 && spec.n_chambers < 3 {
            violations.push(Violation::TooFewChambersForDofs {
                n_chambers: spec.n_chambers,
                dofs: profile.dofs,
            });
        }
    }
    ValidationReport { violations }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MorphKind {
    Undeformed,
    MorphedIdeal,
}

/// Cross-section state: undeformed, or morphed with area and lever-arm gains.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MorphState {
    kind: MorphKind,
    area_gain: f64,
    lever_gain: f64,
}

impl MorphState {
    pub const DEFAULT_AREA_GAIN: f64 = 2.0;
    pub const DEFAULT_LEVER_GAIN: f64 = 2.0;

    pub fn undeformed() -> Self {
        Self {
            kind: MorphKind::Undeformed,
            area_gain: 1.0,
            lever_gain: 1.0,
        }
    }

    /// Morphed state with the given gains, both `>= 1`.
    pub fn morphed(area_gain: f64, lever_gain: f64) -> Result<Self> {
        if !(area_gain >= 1.0
            && area_gain.is_finite()
            && lever_gain >= 1.0
            && lever_gain.is_finite())
        {
            return Err(invalid(format!(
                "morph gains must be finite and >= 1, got ({area_gain}, {lever_gain})"
            )));
        }
        Ok(Self {
            kind: MorphKind::MorphedIdeal,
            area_gain,
            lever_gain,
        })
    }

    /// Morphed state with the default gains: chamber area and lever arm
    /// each nearly double under pressure.
    pub fn ideal() -> Self {
        Self {
            kind: MorphKind::MorphedIdeal,
            area_gain: Self::DEFAULT_AREA_GAIN,
            lever_gain: Self::DEFAULT_LEVER_GAIN,
        }
    }

    pub fn kind(&self) -> MorphKind {
        self.kind
    }

    pub fn area_gain(&self) -> f64 {
        self.area_gain
    }

    pub fn lever_gain(&self) -> f64 {
        self.lever_gain
    }

    /// Moment gain over the undeformed section when no cap is active.
    pub fn uncapped_moment_gain(&self) -> f64 {
        self.area_gain * self.lever_gain
    }
}

/// Derived properties of a section under a given actuation.
#[derive(Debug, Clone, PartialEq)]
pub struct SectionGeometry {
    /// Undeformed area of every chamber, mm².
    pub chamber_areas: Vec<f64>,
    /// mm²
    pub pressurized_area: f64,
    /// Centre of pressure, mm.
    pub pressure_centroid: [f64; 2],
    /// Centre of structural tension (the central tube axis), mm.
    pub tension_center: [f64; 2],
    /// mm
    pub lever_arm: f64,
}

impl SectionGeometry {
    /// `pressurized_area * lever_arm`, mm³. Multiplied by pressure this is
    /// the bending moment.
    pub fn moment_index(&self) -> f64 {
        self.pressurized_area * self.lever_arm
    }

    pub const CSV_HEADER: &'static str =
        "pressurized_area_mm2,pressure_centroid_x_mm,pressure_centroid_y_mm,\
tension_center_x_mm,tension_center_y_mm,lever_arm_mm,chamber_areas_mm2";

    /// One CSV row matching [`SectionGeometry::CSV_HEADER`]; chamber areas are
    /// `;`-separated.
    pub fn csv_row(&self) -> String {
        let areas: Vec<String> = self.chamber_areas.iter().map(|a| a.to_string()).collect();
        format!(
            "{},{},{},{},{},{},{}",
            self.pressurized_area,
            self.pressure_centroid[0],
            self.pressure_centroid[1],
            self.tension_center[0],
            self.tension_center[1],
            self.lever_arm,
            areas.join(";")
        )
    }
}

/// Centroids, areas and lever arm of `spec` with the chambers in
/// `pressurized` actuated.
///
/// Undeformed: the tube is concentric and the centre of pressure is the
/// area-weighted centroid of the pressurised chambers. Morphed: the
/// pressurised area grows by the area gain up to the total chamber area, the
/// lever arm by the lever gain up to the tube touching the wall; the tube
/// sits against the wall opposite the centre of pressure.
pub fn section_geometry(
    spec: &CrossSectionSpec,
    pressurized: &BTreeSet<usize>,
    morph: MorphState,
) -> Result<SectionGeometry> {
    if pressurized.is_empty() {
        return Err(invalid("no chamber is pressurised"));
    }
    if let Some(&bad) = pressurized.iter().find(|&&i| i >= spec.n_chambers) {
        return Err(invalid(format!(
            "chamber index {bad} out of range for {} chambers",
            spec.n_chambers
        )));
    }
    let report = validate_spec(spec, None);
    if !report.is_valid() {
        return Err(invalid(format!(
            "invalid cross-section: {}",
            report.violations[0]
        )));
    }

    let n = spec.n_chambers;
    let chamber = spec.chamber()?;
    let chamber_areas = vec![chamber.area; n];
    let total_area = chamber.area * n as f64;
    let pressurized_area = chamber.area * pressurized.len() as f64;

    let centroid = if pressurized.len() == n {
        [0.0, 0.0]
    } else {
        let (mut x, mut y) = (0.0, 0.0);
        for &i in pressurized {
            let angle = 2.0 * PI * i as f64 / n as f64;
            x += angle.cos();
            y += angle.sin();
        }
        let k = pressurized.len() as f64;
        [
            chamber.centroid_radius * x / k,
            chamber.centroid_radius * y / k,
        ]
    };
    let lever_arm = centroid[0].hypot(centroid[1]);

    match morph.kind() {
        MorphKind::Undeformed => Ok(SectionGeometry {
            chamber_areas,
            pressurized_area,
            pressure_centroid: centroid,
            tension_center: [0.0, 0.0],
            lever_arm,
        }),
        MorphKind::MorphedIdeal => {
            let area = (pressurized_area * morph.area_gain()).min(total_area);
            if lever_arm == 0.0 {
                return Ok(SectionGeometry {
                    chamber_areas,
                    pressurized_area: area,
                    pressure_centroid: centroid,
                    tension_center: [0.0, 0.0],
                    lever_arm: 0.0,
                });
            }
            let offset = spec.max_tube_offset();
            let lever = (lever_arm * morph.lever_gain()).min(offset);
            let dir = [centroid[0] / lever_arm, centroid[1] / lever_arm];
            let tension_center = [-dir[0] * offset, -dir[1] * offset];
            let pressure_centroid = [
                tension_center[0] + dir[0] * lever,
                tension_center[1] + dir[1] * lever,
            ];
            Ok(SectionGeometry {
                chamber_areas,
                pressurized_area: area,
                pressure_centroid,
                tension_center,
                lever_arm: lever,
            })
        }
    }
}

/// `k` adjacent chambers starting at chamber 0.
pub fn adjacent_chambers(k: usize) -> BTreeSet<usize> {
    (0..k).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(ix: &[usize]) -> BTreeSet<usize> {
        ix.iter().copied().collect()
    }

    #[test]
    fn reference_spec_is_valid() {
        let report = validate_spec(
            &CrossSectionSpec::reference(),
            Some(&RequirementsProfile::MEDICAL),
        );
        assert!(report.is_valid(), "{report}");
    }

    #[test]
    fn thick_wall_closes_the_bore() {
        let spec = CrossSectionSpec {
            outer_wall_thickness: 6.5,
            ..CrossSectionSpec::reference()
        };
        let report = validate_spec(&spec, None);
        assert!(matches!(
            report.violations[0],
            Violation::InnerBoreNonPositive { .. }
        ));
        assert!(report.to_string().contains("inner bore nonpositive"));
    }

    #[test]
    fn oversized_od_fails_the_profile_only() {
        let spec = CrossSectionSpec {
            outer_diameter: 14.0,
            ..CrossSectionSpec::reference()
        };
        assert!(validate_spec(&spec, None).is_valid());
        let report = validate_spec(&spec, Some(&RequirementsProfile::MEDICAL));
        assert_eq!(
            report.violations,
            vec![Violation::MaxOdExceeded {
                od: 14.0,
                max: 12.0
            }]
        );
    }

    #[test]
    fn other_violations() {
        let base = CrossSectionSpec::reference();
        let check = |spec: CrossSectionSpec, pred: fn(&Violation) -> bool| {
            let r = validate_spec(&spec, Some(&RequirementsProfile::MEDICAL));
            assert!(r.violations.iter().any(pred), "{r}");
        };
        check(
            CrossSectionSpec {
                central_tube_od: 10.5,
                ..base
            },
            |v| matches!(v, Violation::TubeDoesNotFit { .. }),
        );
        check(
            CrossSectionSpec {
                central_tube_id: 3.0,
                ..base
            },
            |v| matches!(v, Violation::TubeWallNonPositive { .. }),
        );
        check(
            CrossSectionSpec {
                central_tube_id: -0.5,
                ..base
            },
            |v| matches!(v, Violation::NegativeTubeId(_)),
        );
        check(
            CrossSectionSpec {
                partition_thickness: 0.0,
                ..base
            },
            |v| matches!(v, Violation::PartitionNonPositive(_)),
        );
        check(
            CrossSectionSpec {
                partition_thickness: 7.0,
                ..base
            },
            |v| matches!(v, Violation::PartitionsFillAnnulus { .. }),
        );
        check(
            CrossSectionSpec {
                n_chambers: 9,
                ..base
            },
            |v| matches!(v, Violation::ChamberCount(9)),
        );
        check(
            CrossSectionSpec {
                n_chambers: 2,
                ..base
            },
            |v| matches!(v, Violation::TooFewChambersForDofs { .. }),
        );
        check(
            CrossSectionSpec {
                central_tube_id: 1.0,
                ..base
            },
            |v| matches!(v, Violation::ChannelTooSmall { .. }),
        );
        check(
            CrossSectionSpec {
                outer_diameter: f64::NAN,
                ..base
            },
            |v| matches!(v, Violation::NonFinite("outer_diameter")),
        );
    }

    #[test]
    fn kv_round_trip() {
        let spec = CrossSectionSpec::reference();
        let text = spec.to_kv().to_string();
        assert!(text.starts_with("outer_diameter = 12\n"));
        let back = CrossSectionSpec::from_kv(&KeyValues::parse(&text, "t").unwrap()).unwrap();
        assert_eq!(back, spec);
        let bad = KeyValues::parse(&format!("{text}colour = red\n"), "t").unwrap();
        assert!(CrossSectionSpec::from_kv(&bad).is_err());
    }

    #[test]
    fn symmetric_pressurisation_has_no_lever() {
        for n in 2..=8 {
            let spec = CrossSectionSpec {
                n_chambers: n,
                partition_thickness: 0.3,
                ..CrossSectionSpec::reference()
            };
            let all: BTreeSet<usize> = (0..n).collect();
            let g = section_geometry(&spec, &all, MorphState::undeformed()).unwrap();
            assert_eq!(g.lever_arm, 0.0);
            let m = section_geometry(&spec, &all, MorphState::ideal()).unwrap();
            assert_eq!(m.lever_arm, 0.0);
        }
    }

    #[test]
    fn single_chamber_centroid_on_its_bisector() {
        let spec = CrossSectionSpec::reference();
        for i in 0..3 {
            let g = section_geometry(&spec, &set(&[i]), MorphState::undeformed()).unwrap();
            let angle = 2.0 * PI * i as f64 / 3.0;
            let [x, y] = g.pressure_centroid;
            // cross product with the bisector direction vanishes
            assert!((x * angle.sin() - y * angle.cos()).abs() < 1e-12);
            assert!(x * angle.cos() + y * angle.sin() > 0.0);
            let chamber = spec.chamber().unwrap();
            assert!((g.lever_arm - chamber.centroid_radius).abs() < 1e-12);
        }
    }

    #[test]
    fn two_adjacent_chambers_halve_the_lever() {
        let spec = CrossSectionSpec::reference();
        let g = section_geometry(&spec, &set(&[0, 1]), MorphState::undeformed()).unwrap();
        let c = spec.chamber().unwrap();
        assert!((g.lever_arm - 0.5 * c.centroid_radius).abs() < 1e-12);
        assert!((g.pressurized_area - 2.0 * c.area).abs() < 1e-12);
        let dir = g.pressure_centroid[1].atan2(g.pressure_centroid[0]);
        assert!((dir - PI / 3.0).abs() < 1e-12);
    }

    #[test]
    fn morphing_doubles_subject_to_caps() {
        let spec = CrossSectionSpec::reference();
        let p = set(&[0, 1]);
        let flat = section_geometry(&spec, &p, MorphState::undeformed()).unwrap();
        let morphed = section_geometry(&spec, &p, MorphState::ideal()).unwrap();
        let total: f64 = flat.chamber_areas.iter().sum();
        let expected_area = (2.0 * flat.pressurized_area).min(total);
        let expected_lever = (2.0 * flat.lever_arm).min(spec.max_tube_offset());
        assert_eq!(morphed.pressurized_area, expected_area);
        assert_eq!(morphed.lever_arm, expected_lever);
        // two of three chambers doubled would exceed the section
        assert!((morphed.pressurized_area - total).abs() < 1e-12);
        assert_eq!(morphed.lever_arm, 2.0 * flat.lever_arm);

        let dx = morphed.pressure_centroid[0] - morphed.tension_center[0];
        let dy = morphed.pressure_centroid[1] - morphed.tension_center[1];
        assert!((dx.hypot(dy) - morphed.lever_arm).abs() < 1e-12);
        let [tx, ty] = morphed.tension_center;
        assert!((tx.hypot(ty) - spec.max_tube_offset()).abs() < 1e-12);
        // tube pushed away from the pressure
        assert!(tx * flat.pressure_centroid[0] + ty * flat.pressure_centroid[1] < 0.0);
    }

    #[test]
    fn lever_cap_applies_to_single_chamber() {
        let spec = CrossSectionSpec::reference();
        let g = section_geometry(&spec, &set(&[0]), MorphState::ideal()).unwrap();
        assert_eq!(g.lever_arm, spec.max_tube_offset());
        assert!(g.lever_arm < 0.5 * spec.outer_diameter);
    }

    #[test]
    fn rejects_bad_actuation() {
        let spec = CrossSectionSpec::reference();
        assert!(section_geometry(&spec, &set(&[]), MorphState::undeformed()).is_err());
        assert!(section_geometry(&spec, &set(&[3]), MorphState::undeformed()).is_err());
        let broken = CrossSectionSpec {
            outer_wall_thickness: 7.0,
            ..spec
        };
        assert!(section_geometry(&broken, &set(&[0]), MorphState::undeformed()).is_err());
    }

    #[test]
    fn morph_gains_validated() {
        assert!(MorphState::morphed(0.9, 2.0).is_err());
        assert!(MorphState::morphed(2.0, f64::INFINITY).is_err());
        let m = MorphState::morphed(1.5, 1.2).unwrap();
        assert_eq!(m.kind(), MorphKind::MorphedIdeal);
        let u = MorphState::undeformed();
        assert_eq!((u.area_gain(), u.lever_gain()), (1.0, 1.0));
        assert_eq!(MorphState::ideal().uncapped_moment_gain(), 4.0);
    }

    #[test]
    fn csv_row_shape() {
        let g = section_geometry(
            &CrossSectionSpec::reference(),
            &set(&[0]),
            MorphState::undeformed(),
        )
        .unwrap();
        let row = g.csv_row();
        assert_eq!(
            row.split(',').count(),
            SectionGeometry::CSV_HEADER.split(',').count()
        );
        assert_eq!(row.split(',').next_back().unwrap().split(';').count(), 3);
    }
}
