//! Test-only oracles, independent of the closed-form geometry.

#![allow(dead_code)]

use std::f64::consts::PI;

/// Area and centroid of a planar region by midpoint sampling on an
/// `n x n` grid over its bounding box.
pub struct GridEstimate {
    pub area: f64,
    pub centroid: [f64; 2],
}

impl GridEstimate {
    pub fn centroid_radius(&self) -> f64 {
        self.centroid[0].hypot(self.centroid[1])
    }
}

pub fn grid_integrate(
    bbox: ([f64; 2], [f64; 2]),
    n: usize,
    inside: impl Fn(f64, f64) -> bool,
) -> GridEstimate {
    let ([x0, y0], [x1, y1]) = bbox;
    let (dx, dy) = ((x1 - x0) / n as f64, (y1 - y0) / n as f64);
    let (mut count, mut sx, mut sy) = (0u64, 0.0, 0.0);
    for j in 0..n {
        let y = y0 + (j as f64 + 0.5) * dy;
        for i in 0..n {
            let x = x0 + (i as f64 + 0.5) * dx;
            if inside(x, y) {
                count += 1;
                sx += x;
                sy += y;
            }
        }
    }
    let area = count as f64 * dx * dy;
    let c = if count == 0 {
        [0.0, 0.0]
    } else {
        [sx / count as f64, sy / count as f64]
    };
    GridEstimate { area, centroid: c }
}

/// Bounding box of the annular sector with bisector on +x.
pub fn sector_bbox(r_inner: f64, r_outer: f64, half_angle: f64) -> ([f64; 2], [f64; 2]) {
    if half_angle >= PI / 2.0 {
        let y = r_outer;
        let x0 = if half_angle >= PI {
            -r_outer
        } else {
            (r_outer * half_angle.cos()).min(0.0)
        };
        ([x0, -y], [r_outer, y])
    } else {
        let y = r_outer * half_angle.sin();
        ([r_inner * half_angle.cos(), -y], [r_outer, y])
    }
}

/// Membership test: ring `a <= r <= b`, wedge `|phi| <= beta` about +x.
pub fn in_sector(x: f64, y: f64, a: f64, b: f64, beta: f64) -> bool {
    let r = x.hypot(y);
    r >= a && r <= b && y.atan2(x).abs() <= beta
}

fn distance_to_ray(x: f64, y: f64, dir: [f64; 2]) -> f64 {
    let along = x * dir[0] + y * dir[1];
    if along >= 0.0 {
        (x * dir[1] - y * dir[0]).abs()
    } else {
        x.hypot(y)
    }
}

/// Membership in one chamber of an `n`-chamber ring whose radial partitions
/// of thickness `wall` are centred on the rays at `+-pi/n`.
pub fn in_chamber(x: f64, y: f64, a: f64, b: f64, n: usize, wall: f64) -> bool {
    let beta = PI / n as f64;
    if !in_sector(x, y, a, b, beta) {
        return false;
    }
    let h = 0.5 * wall;
    let up = [beta.cos(), beta.sin()];
    let down = [beta.cos(), -beta.sin()];
    distance_to_ray(x, y, up) >= h && distance_to_ray(x, y, down) >= h
}

pub fn rel_err(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs()
}
