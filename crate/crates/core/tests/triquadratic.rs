use std::time::Instant;

use tritile::constructor::{quadratic_tiling, triquadratic};
use tritile::numtheory::{derive_tile, TilingEquationSolution};
use tritile::quadfield::Point;
use tritile::tiling::{
    analyze, components, extract_d_matrix, find_special_vertices, segments, two_color, validate, vertex_census,
    ComponentType, FailureKind, PlacedTile, Tiling, VertexClass,
};

fn constructible(k_max: u64) -> Vec<(u64, u64)> {
    let mut out = Vec::new();
    for k in 2..=k_max {
        for m in 1..k {
            if (m * m) % k == 0 {
                out.push((m, k));
            }
        }
    }
    out
}

#[test]
fn twenty_eight_tiling_full_battery() {
    let t = triquadratic(2, 4).unwrap();
    let r = analyze(&t);
    assert!(r.ok(), "{:?} {:?}", r.validation.failures, r.invariant_failures);

    let census = r.census.as_ref().unwrap();
    assert_eq!((census.n_centers, census.n_320, census.n_640), (1, 0, 0));
    assert!(census.center_identity_holds());

    let signs = r.signs.as_ref().unwrap();
    assert_eq!(signs.m_signed, 2);
    // unscaled: 2·(2 + 3 + 4) = 14 − 12 + 16
    assert!(signs.perimeter_identity_holds(&t));

    let dm = r.d_matrix.unwrap();
    let [x, y, z] = dm.side_lengths(t.spec.scaled_sides());
    assert_eq!([x / 4, y / 4, z / 4], [14, 12, 16]);

    let comps = r.components.as_ref().unwrap();
    assert_eq!(comps.components.len(), 3);
    for k in [ComponentType::I, ComponentType::II, ComponentType::III] {
        assert!(comps.has_type(k), "missing {k:?}");
    }

    assert!(r.segments.iter().any(|s| s.essential && s.has_relation([3, 0, 0], [0, 2, 0])));

    let special = r.special.as_ref().unwrap();
    assert_eq!(special.center_points.len(), 1);
    let plan = tritile::constructor::triquadratic_plan(2, 4).unwrap();
    assert_eq!(special.center_points[0], plan.q);
}

#[test]
fn all_small_constructions_satisfy_invariants() {
    for (m, k) in constructible(20) {
        let t = triquadratic(m, k).unwrap();
        assert_eq!(t.tiles.len() as u64, 2 * k * k - m * m);
        let v = validate(&t);
        assert!(v.passed, "({m},{k}): {:?}", v.failures);
        let c = vertex_census(&t).unwrap();
        assert_eq!((c.n_centers, c.n_320, c.n_640), (1, 0, 0), "({m},{k})");
        assert_eq!(two_color(&t).unwrap().m_signed, m as i64, "({m},{k})");
        extract_d_matrix(&t).unwrap();
        let comps = components(&t).unwrap();
        assert_eq!(comps.components.len(), 3, "({m},{k})");
        assert!(segments(&t).iter().all(|s| s.b_multiple_ok.is_none()));
    }
}

#[test]
fn larger_constructions_are_fast() {
    for (m, k, n) in [(3, 9, 153), (6, 9, 126), (6, 18, 612)] {
        let start = Instant::now();
        let t = triquadratic(m, k).unwrap();
        assert_eq!(t.tiles.len(), n);
        assert!(validate(&t).passed);
        assert!(start.elapsed().as_secs_f64() < 5.0, "({m},{k}) took {:?}", start.elapsed());
    }
}

#[test]
fn deleted_tile_leaves_area_deficit() {
    let mut t = triquadratic(2, 4).unwrap();
    let removed = t.tiles.pop().unwrap();
    let r = validate(&t);
    assert!(!r.passed);
    assert!(r.has(FailureKind::AreaMismatch));
    assert_eq!(r.area_deficit2, removed.signed_area2().abs());
}

#[test]
fn reflected_tile_is_rejected() {
    let mut t = triquadratic(2, 4).unwrap();
    let tile = &t.tiles[5];
    // reflect γ across the line through the c edge
    let (a, b) = (&tile.v_alpha, &tile.v_beta);
    let ab = b - a;
    let ag = &tile.v_gamma - a;
    let proj = ab.scale(&ag.dot(&ab).checked_div(&ab.norm2()).unwrap());
    let foot = a + &proj;
    let mirrored = &(&foot + &foot) - &tile.v_gamma;
    t.tiles[5] = PlacedTile::new(tile.id, a.clone(), b.clone(), mirrored);
    let r = validate(&t);
    assert!(!r.passed);
    assert!(r.has(FailureKind::EdgeMismatch));
}

#[test]
fn quadratic_tilings_have_one_component() {
    let spec = derive_tile(TilingEquationSolution::new(28, 2, 4).unwrap());
    let f = tritile::tiling::Frame::canonical(&spec);
    // a 3×3 quadratic tiling of the tile placed with its c edge on AC
    let tile = triquadratic(2, 4).unwrap().tiles[4].clone();
    let big = |p: &Point| p.scale_int(3);
    let tiles = quadratic_tiling(3, &big(&tile.v_alpha), &big(&tile.v_beta), &big(&tile.v_gamma), 0);
    assert_eq!(tiles.len(), 9);
    let t = Tiling { spec, frame: f, tiles, partial: true };
    let comps = components(&t).unwrap();
    assert_eq!(comps.components.len(), 1);
    let census = vertex_census(&t).unwrap();
    assert_eq!(census.vertices.iter().filter(|v| v.classification == VertexClass::Center013).count(), 0);
    let special = find_special_vertices(&t, Some(&comps));
    assert!(special.center_points.is_empty() && special.stars.is_empty());
}

#[test]
fn single_tile_census_and_coloring() {
    let spec = derive_tile(TilingEquationSolution::new(28, 2, 4).unwrap());
    let one = triquadratic(2, 4).unwrap().tiles[0].clone();
    let frame = tritile::tiling::Frame { a: one.v_alpha.clone(), b: one.v_beta.clone(), c: one.v_gamma.clone() };
    let tiling = Tiling { spec, frame, tiles: vec![one], partial: true };
    let c = vertex_census(&tiling).unwrap();
    assert_eq!(c.vertices.len(), 3);
    assert!(c.vertices.iter().all(|v| v.classification == VertexClass::Corner));
    assert_eq!(two_color(&tiling).unwrap().m_signed, 1);
}
