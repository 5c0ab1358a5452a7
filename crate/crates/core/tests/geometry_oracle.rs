mod common;

use std::collections::BTreeSet;
use std::f64::consts::PI;

use common::{grid_integrate, in_chamber, in_sector, rel_err, sector_bbox};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use softarm::geometry::{
    adjacent_chambers, annular_sector_properties, chamber_properties, section_geometry,
    CrossSectionSpec, MorphState,
};

const GRID: usize = 1100;

#[test]
fn sixty_degree_ring_sector_matches_grid() {
    let p = annular_sector_properties(1.0, 2.0, PI / 3.0).unwrap();
    let g = grid_integrate(sector_bbox(1.0, 2.0, PI / 3.0), GRID, |x, y| {
        in_sector(x, y, 1.0, 2.0, PI / 3.0)
    });
    assert!(rel_err(g.area, PI) < 5e-3);
    assert!(rel_err(g.area, p.area) < 5e-3);
    assert!(rel_err(g.centroid[0], p.centroid_radius) < 5e-3);
    assert!(g.centroid[1].abs() < 1e-3);
}

#[test]
fn partitioned_chambers_match_grid() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0002);
    for _ in 0..20 {
        let b = rng.random_range(3.0..8.0);
        let a = rng.random_range(0.2..0.5) * b;
        let n = rng.random_range(2..=8usize);
        let wall = rng.random_range(0.05..0.25) * (b - a) * (PI / n as f64).sin();
        let p = chamber_properties(a, b, n, wall).unwrap();
        let beta = PI / n as f64;
        let g = grid_integrate(sector_bbox(a, b, beta), GRID, |x, y| {
            in_chamber(x, y, a, b, n, wall)
        });
        assert!(
            rel_err(p.area, g.area) < 5e-3,
            "area a={a} b={b} n={n} t={wall}: {} vs {}",
            p.area,
            g.area
        );
        assert!(
            rel_err(p.centroid_radius, g.centroid[0]) < 5e-3,
            "centroid a={a} b={b} n={n} t={wall}: {} vs {}",
            p.centroid_radius,
            g.centroid[0]
        );
    }
}

#[test]
fn single_chamber_of_the_reference_section() {
    let spec = CrossSectionSpec::reference();
    let (a, b) = (spec.tube_radius(), spec.inner_wall_radius());
    let g = grid_integrate(sector_bbox(a, b, PI / 3.0), GRID, |x, y| {
        in_chamber(x, y, a, b, 3, 0.8)
    });
    let geom = section_geometry(&spec, &BTreeSet::from([0]), MorphState::undeformed()).unwrap();
    assert!(rel_err(geom.pressurized_area, g.area) < 5e-3);
    assert!(rel_err(geom.lever_arm, g.centroid_radius()) < 5e-3);
    // on the bisector of chamber 0
    assert_eq!(geom.pressure_centroid[1], 0.0);
}

#[test]
fn two_chamber_centroid_matches_grid() {
    // the pair of chambers 0 and 1 of the reference section, sampled over the full disc
    let spec = CrossSectionSpec::reference();
    let (a, b) = (spec.tube_radius(), spec.inner_wall_radius());
    let rot = |x: f64, y: f64, k: usize| {
        let t = -2.0 * PI * k as f64 / 3.0;
        (x * t.cos() - y * t.sin(), x * t.sin() + y * t.cos())
    };
    let g = grid_integrate(([-b, -b], [b, b]), 1500, |x, y| {
        (0..2).any(|k| {
            let (u, v) = rot(x, y, k);
            in_chamber(u, v, a, b, 3, 0.8)
        })
    });
    let geom = section_geometry(&spec, &adjacent_chambers(2), MorphState::undeformed()).unwrap();
    assert!(rel_err(geom.pressurized_area, g.area) < 5e-3);
    assert!((geom.pressure_centroid[0] - g.centroid[0]).abs() < 5e-3 * geom.lever_arm);
    assert!((geom.pressure_centroid[1] - g.centroid[1]).abs() < 5e-3 * geom.lever_arm);
}

fn spec_strategy() -> impl Strategy<Value = CrossSectionSpec> {
    (
        8.0..20.0f64,
        0.5..1.5f64,
        0.2..1.2f64,
        2..=8usize,
        1.0..3.0f64,
    )
        .prop_map(|(od, wall, t, n, tube)| CrossSectionSpec {
            outer_diameter: od,
            outer_wall_thickness: wall,
            partition_thickness: t,
            n_chambers: n,
            central_tube_od: tube,
            central_tube_id: 0.5 * tube,
        })
}

proptest! {
    #[test]
    fn thicker_partitions_never_grow_chambers(spec in spec_strategy(), extra in 0.0..1.0f64) {
        let thicker = CrossSectionSpec { partition_thickness: spec.partition_thickness + extra, ..spec };
        let (a, b) = (spec.chamber().unwrap(), thicker.chamber().unwrap());
        prop_assert!(b.area <= a.area);
    }

    #[test]
    fn morph_caps_hold(spec in spec_strategy(), k in 1..8usize, ga in 1.0..4.0f64, gl in 1.0..4.0f64) {
        prop_assume!(softarm::geometry::validate_spec(&spec, None).is_valid());
        let k = k.min(spec.n_chambers);
        let morph = MorphState::morphed(ga, gl).unwrap();
        let g = section_geometry(&spec, &adjacent_chambers(k), morph).unwrap();
        let total: f64 = g.chamber_areas.iter().sum();
        prop_assert!(g.pressurized_area <= total * (1.0 + 1e-12));
        prop_assert!(g.lever_arm <= spec.max_tube_offset());
        prop_assert!(g.lever_arm < 0.5 * spec.outer_diameter);
        let dx = g.pressure_centroid[0] - g.tension_center[0];
        let dy = g.pressure_centroid[1] - g.tension_center[1];
        prop_assert!((dx.hypot(dy) - g.lever_arm).abs() < 1e-9);
    }

    #[test]
    fn full_pressurisation_is_balanced(spec in spec_strategy()) {
        prop_assume!(softarm::geometry::validate_spec(&spec, None).is_valid());
        let all: BTreeSet<usize> = (0..spec.n_chambers).collect();
        let g = section_geometry(&spec, &all, MorphState::undeformed()).unwrap();
        prop_assert_eq!(g.lever_arm, 0.0);
    }

    #[test]
    fn pressurised_area_is_the_sum(spec in spec_strategy(), mask in 1u32..255) {
        prop_assume!(softarm::geometry::validate_spec(&spec, None).is_valid());
        let set: BTreeSet<usize> = (0..spec.n_chambers).filter(|i| mask & (1 << i) != 0).collect();
        prop_assume!(!set.is_empty());
        let g = section_geometry(&spec, &set, MorphState::undeformed()).unwrap();
        let sum: f64 = set.iter().map(|&i| g.chamber_areas[i]).sum();
        prop_assert!((g.pressurized_area - sum).abs() <= 1e-9 * sum);
    }
}
