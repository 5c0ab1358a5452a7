//! Closed-form area and centroid of annular sectors and of partitioned
//! chambers.

use std::f64::consts::PI;

use crate::error::{invalid, Result};

/// Area and centroid distance (along the bisector) of a planar region.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SectorProperties {
    /// mm²
    pub area: f64,
    /// mm, measured from the origin along the region's bisector.
    pub centroid_radius: f64,
}

impl SectorProperties {
    /// First moment of area about the origin along the bisector, mm³.
    pub fn first_moment(&self) -> f64 {
        self.area * self.centroid_radius
    }
}

/// Area and centroid of the annular sector `r_inner <= r <= r_outer`,
/// `|phi| <= half_angle`.
pub fn annular_sector_properties(
    r_inner: f64,
    r_outer: f64,
    half_angle: f64,
) -> Result<SectorProperties> {
    if !(r_inner >= 0.0 && r_inner < r_outer && r_outer.is_finite()) {
        return Err(invalid(format!(
            "annular sector needs 0 <= r_inner < r_outer, got {r_inner}, {r_outer}"
        )));
    }
    if !(half_angle > 0.0 && half_angle <= PI) {
        return Err(invalid(format!(
            "annular sector half angle must lie in (0, pi], got {half_angle}"
        )));
    }
    let r2 = r_outer * r_outer - r_inner * r_inner;
    let r3 = r_outer.powi(3) - r_inner.powi(3);
    let area = half_angle * r2;
    let centroid_radius = 2.0 * half_angle.sin() / (3.0 * half_angle) * r3 / r2;
    // sin(pi) is ~1.2e-16, not zero
    let centroid_radius = if half_angle == PI {
        0.0
    } else {
        centroid_radius
    };
    Ok(SectorProperties {
        area,
        centroid_radius,
    })
}

/// One chamber of an `n`-chamber section: the annular sector of half angle
/// `pi / n` between `r_inner` and `r_outer`, minus the half of each radial
/// partition wall (a strip of width `wall` centred on the boundary ray)
/// that falls inside it.
///
/// For `wall == 0` this is [`annular_sector_properties`] with half angle
/// `pi / n`. Returns zero area when the partitions consume the chamber.
pub fn chamber_properties(
    r_inner: f64,
    r_outer: f64,
    n_chambers: usize,
    wall: f64,
) -> Result<SectorProperties> {
    if n_chambers < 2 {
        return Err(invalid(format!(
            "need at least 2 chambers, got {n_chambers}"
        )));
    }
    if !(wall >= 0.0 && wall.is_finite()) {
        return Err(invalid(format!(
            "partition thickness must be non-negative, got {wall}"
        )));
    }
    let beta = PI / n_chambers as f64;
    if wall == 0.0 {
        return annular_sector_properties(r_inner, r_outer, beta);
    }
    if !(r_inner >= 0.0 && r_inner < r_outer && r_outer.is_finite()) {
        return Err(invalid(format!(
            "chamber needs 0 <= r_inner < r_outer, got {r_inner}, {r_outer}"
        )));
    }
    let h = 0.5 * wall;
    // The two partition strips meet at radius h / sin(beta); the chamber is
    // empty inside it.
    let a = r_inner.max(h / beta.sin());
    if a >= r_outer {
        return Ok(SectorProperties {
            area: 0.0,
            centroid_radius: 0.0,
        });
    }
    let b = r_outer;
    // At radius r the chamber spans |phi| <= beta - asin(h / r).
    //   area   = int 2 r (beta - asin(h/r)) dr
    //   moment = int 2 r^2 sin(beta - asin(h/r)) dr
    let asin_antiderivative =
        |r: f64| 0.5 * r * r * (h / r).asin() + 0.5 * h * (r * r - h * h).sqrt();
    let area = beta * (b * b - a * a) - 2.0 * (asin_antiderivative(b) - asin_antiderivative(a));
    let moment_antiderivative =
        |r: f64| 2.0 * beta.sin() * (r * r - h * h).powf(1.5) / 3.0 - beta.cos() * h * r * r;
    let moment = moment_antiderivative(b) - moment_antiderivative(a);
    Ok(SectorProperties {
        area,
        centroid_radius: moment / area,
    })
}
