use tritile::numtheory::{derive_tile, TilingEquationSolution};
use tritile::quadfield::{Angle, DirectionTable, Point};
use tritile::tiling::special::DownRay;
use tritile::tiling::{components, find_special_vertices, EdgeLabel, Frame, PlacedTile, Tiling};

/// Six tiles around one vertex for the (3, 8, 9) tile, arranged so that the
/// vertex is a star and the southwest ray carries a b edge next to a c edge.
fn star_patch() -> (Tiling, Point) {
    let spec = derive_tile(TilingEquationSolution::new(17, 1, 3).unwrap());
    let d = spec.radicand();
    let dirs = DirectionTable::shared(1, 3);
    let f = Point::from_ints(13, 10, d);
    let at = |len: i64, k: i32, q: i32| &f + &dirs.dir(Angle::new(k, q)).scale_int(len);
    let g = at(9, 2, 2);
    let h = at(8, 3, -1);
    let p = at(9, 1, 3);
    let r = at(3, 4, 2);
    let s = at(8, 4, 2);
    let u = at(3, 4, 0);
    let v = at(9, 1, 1);
    let x = at(3, 1, 1);
    let w = at(8, 2, 2);
    let tiles = vec![
        PlacedTile::new(0, f.clone(), p.clone(), h.clone()),
        PlacedTile::new(1, p, f.clone(), r),
        PlacedTile::new(2, f.clone(), g, s),
        PlacedTile::new(3, h, u.clone(), f.clone()),
        PlacedTile::new(4, v, f.clone(), u),
        PlacedTile::new(5, w, x, f.clone()),
    ];
    let frame = Frame::canonical(&spec);
    (Tiling { spec, frame, tiles, partial: true }, f)
}

#[test]
fn patch_tiles_are_congruent_to_the_tile() {
    let (t, _) = star_patch();
    let [a, b, c] = t.spec.scaled_sides();
    for tile in &t.tiles {
        let len2 = |e: EdgeLabel| {
            let (p, q) = tile.edge(e);
            (q - p).norm2()
        };
        for (e, want) in [(EdgeLabel::A, a), (EdgeLabel::B, b), (EdgeLabel::C, c)] {
            assert_eq!(len2(e), tritile::quadfield::QFNum::from_int((want * want) as i64, t.d()), "tile {}", tile.id);
        }
    }
}

#[test]
fn star_and_suspicious_edge_are_found() {
    let (t, f) = star_patch();
    let comps = components(&t).unwrap();
    let sv = find_special_vertices(&t, Some(&comps));
    let fp = f.to_f64();
    let star = sv.stars.iter().find(|s| s.at == fp).expect("star at F");
    assert!(!star.irregular.is_empty());
    assert!(sv.centers.is_empty());
    let sus = sv
        .suspicious_edges
        .iter()
        .find(|e| e.at == fp && e.ray == DownRay::DirectionA)
        .expect("suspicious edge on the southwest ray");
    assert_eq!(sus.b_tile, 5);
    assert_eq!(sus.other_tile, 2);
    assert_eq!(sus.other_edge, EdgeLabel::C);
}

#[test]
fn patch_without_irregular_tile_is_not_a_star() {
    let (mut t, f) = star_patch();
    t.tiles.retain(|tile| tile.id != 2);
    let sv = find_special_vertices(&t, None);
    assert!(sv.stars.iter().all(|s| s.at != f.to_f64()));
}
