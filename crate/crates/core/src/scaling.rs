//! Non-dimensional groups and similarity transforms between designs.
//!
//! Geometrically similar segments behave alike when
//!
//! ```text
//! p / E_r,   F / (E_r d²),   E_c / E_r,   E_p / E_r
//! ```
//!
//! are equal, with `E_r` the rubber stiffness (here its Neo-Hookean `c10`),
//! `E_c` and `E_p` the central-tube and partition stiffnesses, `d` the outer
//! diameter, `p` the pressure and `F` the external load, gravity excluded.
//! Fibre stiffness and the Poisson ratios are taken as negligible.
//!
//! Consequences used here: at fixed material, supportable force grows with
//! `d²` while the operating pressure does not change; at fixed size, both
//! pressure and force scale with `E_r`.

use std::fmt;
use std::path::Path;

use crate::error::{invalid, Error, Result};
use crate::kv::KeyValues;
use crate::mechanics::{ForcePressureCurve, Provenance, Sample};
use crate::units::KPA_TO_N_PER_MM2;

/// Dominant non-dimensional groups of a loaded, pressurised segment.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PiGroups {
    pub p_over_er: f64,
    pub f_over_er_d2: f64,
    pub ec_over_er: Option<f64>,
    pub ep_over_er: Option<f64>,
}

/// Computes [`PiGroups`] from kPa, N and mm inputs.
pub fn pi_groups(
    pressure: f64,
    force: f64,
    diameter: f64,
    er: f64,
    ec: Option<f64>,
    ep: Option<f64>,
) -> Result<PiGroups> {
    if !(er > 0.0 && er.is_finite()) {
        return Err(invalid(format!(
            "rubber stiffness must be positive, got {er}"
        )));
    }
    if !(diameter > 0.0 && diameter.is_finite()) {
        return Err(invalid(format!(
            "diameter must be positive, got {diameter}"
        )));
    }
    if !(pressure.is_finite() && force.is_finite() && force >= 0.0) {
        return Err(invalid(
            "pressure must be finite and force finite and non-negative",
        ));
    }
    let er_n_per_mm2 = er * KPA_TO_N_PER_MM2;
    Ok(PiGroups {
        p_over_er: pressure / er,
        f_over_er_d2: force / (er_n_per_mm2 * diameter * diameter),
        ec_over_er: ec.map(|ec| ec / er),
        ep_over_er: ep.map(|ep| ep / er),
    })
}

fn positive(name: &str, x: f64) -> Result<()> {
    if x > 0.0 && x.is_finite() {
        Ok(())
    } else {
        Err(invalid(format!("{name} must be positive, got {x}")))
    }
}

/// Similarity map between two geometrically equivalent designs.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScalingTransform {
    diameter_ratio: f64,
    stiffness_ratio: f64,
}

impl ScalingTransform {
    pub const KEYS: [&'static str; 2] = ["diameter_ratio", "stiffness_ratio"];

    pub fn new(diameter_ratio: f64, stiffness_ratio: f64) -> Result<Self> {
        positive("diameter ratio", diameter_ratio)?;
        positive("stiffness ratio", stiffness_ratio)?;
        Ok(Self {
            diameter_ratio,
            stiffness_ratio,
        })
    }

    pub fn identity() -> Self {
        Self {
            diameter_ratio: 1.0,
            stiffness_ratio: 1.0,
        }
    }

    pub fn diameter_ratio(&self) -> f64 {
        self.diameter_ratio
    }

    pub fn stiffness_ratio(&self) -> f64 {
        self.stiffness_ratio
    }

    pub fn pressure_scale(&self) -> f64 {
        self.stiffness_ratio
    }

    pub fn force_scale(&self) -> f64 {
        self.stiffness_ratio * self.diameter_ratio * self.diameter_ratio
    }

    pub fn from_kv(kv: &KeyValues) -> Result<Self> {
        kv.reject_unknown(&Self::KEYS)?;
        Self::new(
            kv.f64("diameter_ratio")?.unwrap_or(1.0),
            kv.f64("stiffness_ratio")?.unwrap_or(1.0),
        )
    }

    pub fn to_kv(&self) -> KeyValues {
        let mut kv = KeyValues::new();
        kv.push("diameter_ratio", self.diameter_ratio);
        kv.push("stiffness_ratio", self.stiffness_ratio);
        kv
    }
}

/// Operating point of a design, in kPa, N and mm.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DesignParams {
    pub pressure: f64,
    pub force: f64,
    pub diameter: f64,
    pub er: f64,
    pub ec: Option<f64>,
    pub ep: Option<f64>,
}

impl DesignParams {
    pub const KEYS: [&'static str; 6] = ["pressure", "force", "diameter", "er", "ec", "ep"];

    pub fn pi_groups(&self) -> Result<PiGroups> {
        pi_groups(
            self.pressure,
            self.force,
            self.diameter,
            self.er,
            self.ec,
            self.ep,
        )
    }

    pub fn from_kv(kv: &KeyValues) -> Result<Self> {
        kv.reject_unknown(&Self::KEYS)?;
        Ok(Self {
            pressure: kv.require_f64("pressure")?,
            force: kv.require_f64("force")?,
            diameter: kv.require_f64("diameter")?,
            er: kv.require_f64("er")?,
            ec: kv.f64("ec")?,
            ep: kv.f64("ep")?,
        })
    }

    pub fn to_kv(&self) -> KeyValues {
        let mut kv = KeyValues::new();
        kv.push("pressure", self.pressure);
        kv.push("force", self.force);
        kv.push("diameter", self.diameter);
        kv.push("er", self.er);
        if let Some(ec) = self.ec {
            kv.push("ec", ec);
        }
        if let Some(ep) = self.ep {
            kv.push("ep", ep);
        }
        kv
    }
}

/// Maps an operating point through `t`, keeping every Pi group fixed.
pub fn apply_transform(params: &DesignParams, t: &ScalingTransform) -> DesignParams {
    let s = t.stiffness_ratio;
    DesignParams {
        pressure: params.pressure * t.pressure_scale(),
        force: params.force * t.force_scale(),
        diameter: params.diameter * t.diameter_ratio,
        er: params.er * s,
        ec: params.ec.map(|ec| ec * s),
        ep: params.ep.map(|ep| ep * s),
    }
}

/// Force supportable by a design of diameter `d_to` given `force` at `d_from`.
pub fn scale_force_diameter(force: f64, d_from: f64, d_to: f64) -> Result<f64> {
    positive("source diameter", d_from)?;
    positive("target diameter", d_to)?;
    let ratio = d_to / d_from;
    Ok(force * ratio * ratio)
}

/// Maps a measured curve onto the same design made of another rubber:
/// `(p, F) -> (r p, r F)` with `r = c10_to / c10_from`.
pub fn scale_curve_material(
    curve: &ForcePressureCurve,
    c10_from: f64,
    c10_to: f64,
) -> Result<ForcePressureCurve> {
    positive("source stiffness", c10_from)?;
    positive("target stiffness", c10_to)?;
    let r = c10_to / c10_from;
    curve.map_samples(Provenance::Scaled, |s| {
        Sample::new(s.pressure * r, s.force * r)
    })
}

/// Maps a curve onto a geometrically similar design of another diameter:
/// pressures unchanged, forces times `(d_to / d_from)²`.
pub fn scale_curve_diameter(
    curve: &ForcePressureCurve,
    d_from: f64,
    d_to: f64,
) -> Result<ForcePressureCurve> {
    let k = scale_force_diameter(1.0, d_from, d_to)?;
    curve.map_samples(Provenance::Scaled, |s| Sample::new(s.pressure, s.force * k))
}

/// Aspect-ratio mismatch between two designs being compared.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AspectRatioWarning {
    pub aspect_a: f64,
    pub aspect_b: f64,
}

impl fmt::Display for AspectRatioWarning {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "designs are not geometrically equivalent: length/diameter {:.4} vs {:.4}",
            self.aspect_a, self.aspect_b
        )
    }
}

/// Relative aspect-ratio difference tolerated before warning.
pub const ASPECT_RATIO_TOL: f64 = 0.01;

/// Warns when two designs do not share a length-to-diameter ratio, which
/// the similarity laws assume. Comparisons still proceed.
pub fn check_geometric_equivalence(
    diameter_a: f64,
    length_a: f64,
    diameter_b: f64,
    length_b: f64,
) -> Result<Option<AspectRatioWarning>> {
    for (name, x) in [
        ("diameter", diameter_a),
        ("length", length_a),
        ("diameter", diameter_b),
        ("length", length_b),
    ] {
        positive(name, x)?;
    }
    let (aspect_a, aspect_b) = (length_a / diameter_a, length_b / diameter_b);
    let rel = (aspect_a - aspect_b).abs() / aspect_a.max(aspect_b);
    Ok((rel > ASPECT_RATIO_TOL).then_some(AspectRatioWarning { aspect_a, aspect_b }))
}

/// Search range of the stiffness-ratio fit.
pub const FIT_RATIO_RANGE: (f64, f64) = (1e-2, 1e2);
/// A candidate ratio only counts when at least this many scaled samples
/// fall inside the reference curve.
pub const FIT_MIN_OVERLAP: usize = 3;
const FIT_SCAN_POINTS: usize = 4001;
const FIT_LOG_TOL: f64 = 1e-14;
const FIT_REFINED_MINIMA: usize = 32;

/// Result of [`fit_stiffness_ratio`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StiffnessFit {
    pub ratio: f64,
    /// RMS force difference, N.
    pub residual: f64,
    /// Pressure range (kPa) of the scaled samples that contributed.
    pub overlap: (f64, f64),
    pub points: usize,
}

impl StiffnessFit {
    pub const CSV_HEADER: &'static str = "ratio,residual_n,overlap_min_kpa,overlap_max_kpa,points";

    pub fn to_csv(&self) -> String {
        format!(
            "{}\n{},{},{},{},{}\n",
            Self::CSV_HEADER,
            self.ratio,
            self.residual,
            self.overlap.0,
            self.overlap.1,
            self.points
        )
    }
}

struct Misfit {
    rms: f64,
    overlap: (f64, f64),
    points: usize,
}

fn misfit(a: &ForcePressureCurve, b: &ForcePressureCurve, r: f64) -> Option<Misfit> {
    let mut sum = 0.0;
    let mut points = 0;
    let mut overlap = (f64::INFINITY, f64::NEG_INFINITY);
    for s in a.samples() {
        let p = s.pressure * r;
        if let Some(fb) = b.interpolate(p) {
            let d = s.force * r - fb;
            sum += d * d;
            points += 1;
            overlap = (overlap.0.min(p), overlap.1.max(p));
        }
    }
    (points >= FIT_MIN_OVERLAP).then(|| Misfit {
        rms: (sum / points as f64).sqrt(),
        overlap,
        points,
    })
}

/// Stiffness ratio `r` that best maps `curve_a` onto `curve_b` under
/// `(p, F) -> (r p, r F)`.
///
/// The misfit is the RMS difference between the scaled forces of `curve_a`
/// and `curve_b` interpolated at the scaled pressures, over the samples that
/// land inside `curve_b`. The minimum is bracketed by a scan of `ln r` over
/// [`FIT_RATIO_RANGE`] and the lowest local minima are refined by golden-section search.
pub fn fit_stiffness_ratio(
    curve_a: &ForcePressureCurve,
    curve_b: &ForcePressureCurve,
) -> Result<StiffnessFit> {
    for c in [curve_a, curve_b] {
        if c.len() < 3 {
            return Err(Error::DegenerateCurve(c.len()));
        }
    }
    let cost = |x: f64| misfit(curve_a, curve_b, x.exp()).map_or(f64::INFINITY, |m| m.rms);

    let (lo, hi) = (FIT_RATIO_RANGE.0.ln(), FIT_RATIO_RANGE.1.ln());
    let step = (hi - lo) / (FIT_SCAN_POINTS - 1) as f64;
    let grid = |i: usize| {
        if i + 1 == FIT_SCAN_POINTS {
            hi
        } else {
            lo + step * i as f64
        }
    };
    let scan: Vec<f64> = (0..FIT_SCAN_POINTS).map(|i| cost(grid(i))).collect();
    let mut minima: Vec<usize> = (0..FIT_SCAN_POINTS)
        .filter(|&i| {
            scan[i].is_finite()
                && (i == 0 || scan[i] <= scan[i - 1])
                && (i + 1 == FIT_SCAN_POINTS || scan[i] <= scan[i + 1])
        })
        .collect();
    if minima.is_empty() {
        return Err(Error::NoOverlap);
    }
    minima.sort_by(|&i, &j| scan[i].total_cmp(&scan[j]).then(i.cmp(&j)));
    minima.truncate(FIT_REFINED_MINIMA);

    let mut best = (grid(minima[0]), scan[minima[0]]);
    for &i in &minima {
        let a = grid(i.saturating_sub(1));
        let b = grid((i + 1).min(FIT_SCAN_POINTS - 1));
        let (x, c) = golden_section(&cost, a, b);
        let (x, c) = if c <= scan[i] {
            (x, c)
        } else {
            (grid(i), scan[i])
        };
        if c < best.1 {
            best = (x, c);
        }
    }
    let x = best.0;
    let ratio = x.exp();
    let m = misfit(curve_a, curve_b, ratio).ok_or(Error::NoOverlap)?;
    Ok(StiffnessFit {
        ratio,
        residual: m.rms,
        overlap: m.overlap,
        points: m.points,
    })
}

fn golden_section(cost: &impl Fn(f64) -> f64, mut a: f64, mut b: f64) -> (f64, f64) {
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut x1 = b - inv_phi * (b - a);
    let mut x2 = a + inv_phi * (b - a);
    let (mut f1, mut f2) = (cost(x1), cost(x2));
    while b - a > FIT_LOG_TOL {
        if f1 <= f2 {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - inv_phi * (b - a);
            f1 = cost(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + inv_phi * (b - a);
            f2 = cost(x2);
        }
    }
    if f1 <= f2 {
        (x1, f1)
    } else {
        (x2, f2)
    }
}

/// Loads a `key = value` file with [`DesignParams`] keys.
pub fn load_design_params(path: impl AsRef<Path>) -> Result<DesignParams> {
    DesignParams::from_kv(&KeyValues::read(path)?)
}
