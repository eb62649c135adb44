use std::collections::BTreeSet;
use std::time::Instant;

use tritile::constructor::triquadratic;
use tritile::numtheory::{derive_tile, TilingEquationSolution};
use tritile::search::{boundary_search, canonicalize, Emit, SearchConfig, SearchStatus};
use tritile::tiling::{validate, Tiling};

fn spec(n: u64, m: u64, k: u64) -> tritile::numtheory::TileSpec {
    derive_tile(TilingEquationSolution::new(n, m, k).unwrap())
}

fn all() -> SearchConfig {
    SearchConfig { emit: Emit::All, ..Default::default() }
}

type Tri = [(i64, i64); 3];

/// Triangles as sorted vertex sets rounded to 0.01.
fn rounded(t: &Tiling) -> BTreeSet<Tri> {
    t.tiles
        .iter()
        .map(|tile| {
            let mut v = [tile.v_alpha.to_f64(), tile.v_beta.to_f64(), tile.v_gamma.to_f64()]
                .map(|(x, y)| ((x * 100.0).round() as i64, (y * 100.0).round() as i64));
            v.sort();
            v
        })
        .collect()
}

// Boundary tiling of the 123-80-125 triangle by the 15-16-25 tile: vertices
// (two decimals) of a known 29-tile boundary tiling.
const KNOWN_41: [[(f64, f64); 3]; 29] = [
    [(43.10, 117.33), (37.93, 103.25), (50.60, 93.49)],
    [(37.93, 103.25), (50.60, 93.49), (45.43, 79.41)],
    [(37.93, 103.25), (45.43, 79.41), (32.76, 89.17)],
    [(32.76, 89.17), (45.43, 79.41), (40.26, 65.33)],
    [(32.76, 89.17), (40.26, 65.33), (27.58, 75.09)],
    [(27.58, 75.09), (40.26, 65.33), (35.08, 51.25)],
    [(27.58, 75.09), (35.08, 51.25), (22.41, 61.01)],
    [(22.41, 61.01), (35.08, 51.25), (29.91, 37.17)],
    [(22.41, 61.01), (29.91, 37.17), (17.24, 46.93)],
    [(17.24, 46.93), (29.91, 37.17), (24.74, 23.09)],
    [(17.24, 46.93), (21.74, 32.62), (8.62, 23.47)],
    [(8.62, 23.47), (21.74, 32.62), (13.12, 9.16)],
    [(8.62, 23.47), (13.12, 9.16), (0.00, 0.00)],
    [(0.00, 0.00), (13.12, 9.16), (25.00, 0.00)],
    [(25.00, 0.00), (13.12, 9.16), (38.12, 9.16)],
    [(25.00, 0.00), (38.12, 9.16), (50.00, 0.00)],
    [(50.00, 0.00), (30.20, 15.26), (45.20, 15.26)],
    [(50.00, 0.00), (45.20, 15.26), (65.00, 0.00)],
    [(65.00, 0.00), (45.20, 15.26), (60.20, 15.26)],
    [(65.00, 0.00), (60.20, 15.26), (80.00, 0.00)],
    [(80.00, 0.00), (60.20, 15.26), (75.20, 15.26)],
    [(75.20, 15.26), (60.20, 15.26), (55.40, 30.53)],
    [(75.20, 15.26), (55.40, 30.53), (70.40, 30.53)],
    [(70.40, 30.53), (55.40, 30.53), (50.60, 45.79)],
    [(70.40, 30.53), (50.60, 45.79), (65.60, 45.79)],
    [(65.60, 45.79), (50.60, 45.79), (45.80, 61.05)],
    [(65.60, 45.79), (52.93, 55.56), (58.10, 69.64)],
    [(58.10, 69.64), (52.93, 55.56), (45.43, 79.41)],
    [(58.10, 69.64), (45.43, 79.41), (50.60, 93.49)],
];

fn known41() -> BTreeSet<Tri> {
    KNOWN_41
        .iter()
        .map(|tri| {
            let mut v = tri.map(|(x, y)| ((x * 100.0f64).round() as i64, (y * 100.0f64).round() as i64));
            v.sort();
            v
        })
        .collect()
}

/// Same rounded triangles, allowing ±1 in the last printed digit.
fn close(a: &BTreeSet<Tri>, b: &BTreeSet<Tri>) -> bool {
    a.len() == b.len()
        && a.iter().all(|s| {
            b.iter().any(|t| s.iter().zip(t).all(|(p, q)| (p.0 - q.0).abs() <= 1 && (p.1 - q.1).abs() <= 1))
        })
}

fn sound(found: &[Tiling]) {
    for t in found {
        assert!(t.partial);
        let v = validate(t);
        assert!(v.passed, "{:?}", v.failures);
    }
}

#[test]
fn fourteen_has_no_boundary_tiling() {
    let start = Instant::now();
    let out = boundary_search(&spec(14, 2, 3), &all());
    assert_eq!(out.status, SearchStatus::Exhausted);
    assert!(out.found.is_empty());
    assert!(start.elapsed().as_secs() < 60);
}

#[test]
fn seven_and_twenty_three_exhaust() {
    for (n, m, k) in [(7, 1, 2), (23, 3, 4)] {
        let out = boundary_search(&spec(n, m, k), &all());
        assert_eq!(out.status, SearchStatus::Exhausted, "N={n}");
        sound(&out.found);
    }
}

#[test]
fn thirty_one_has_no_boundary_tiling() {
    let out = boundary_search(&spec(31, 1, 4), &all());
    assert_eq!(out.status, SearchStatus::Exhausted);
    assert!(out.found.is_empty());
}

#[test]
#[ignore = "several minutes in release mode"]
fn seventy_one_has_no_boundary_tiling() {
    let cfg = SearchConfig { threads: 4, ..all() };
    let out = boundary_search(&spec(71, 1, 6), &cfg);
    assert_eq!(out.status, SearchStatus::Exhausted);
    assert!(out.found.is_empty());
}

#[test]
fn forty_one_contains_known_29_tile_tiling() {
    let out = boundary_search(&spec(41, 3, 5), &all());
    assert_eq!(out.status, SearchStatus::Exhausted);
    assert!(!out.found.is_empty());
    sound(&out.found);
    let fig = known41();
    assert!(out.found.iter().any(|t| close(&rounded(t), &fig)), "known tiling not among {} found", out.found.len());
    let keys: BTreeSet<String> = out.found.iter().map(canonicalize).collect();
    assert_eq!(keys.len(), out.found.len());
    eprintln!("N=41: {} boundary tilings, {:?}", out.found.len(), out.stats);
}

#[test]
fn twenty_eight_contains_triquadratic_boundary() {
    let t = triquadratic(2, 4).unwrap();
    let out = boundary_search(&t.spec, &all());
    sound(&out.found);
    assert!(!out.found.is_empty());
    // every found tiling lies on the boundary; the triquadratic one restricted
    // to its boundary-touching tiles must contain one of them
    let full = rounded(&t);
    assert!(out.found.iter().any(|f| rounded(f).is_subset(&full)));
}

#[test]
fn threads_do_not_change_results() {
    let s = spec(41, 3, 5);
    let one = boundary_search(&s, &all());
    let four = boundary_search(&s, &SearchConfig { threads: 4, ..all() });
    assert_eq!(one.stats, four.stats);
    assert_eq!(one.found, four.found);
    for limit in [1, 2, 50, 777] {
        let cfg = SearchConfig { max_nodes: Some(limit), record_rejected: 5, ..all() };
        let a = boundary_search(&s, &cfg);
        let b = boundary_search(&s, &SearchConfig { threads: 3, ..cfg.clone() });
        assert_eq!(a.status, SearchStatus::NodeLimit);
        assert_eq!(a.stats, b.stats, "limit {limit}");
        assert_eq!(a.found, b.found);
        assert_eq!(a.rejected, b.rejected);
    }
}

#[test]
fn node_limit_is_reported() {
    let out = boundary_search(&spec(31, 1, 4), &SearchConfig { max_nodes: Some(10), ..all() });
    assert_eq!(out.status, SearchStatus::NodeLimit);
    assert_eq!(out.stats.nodes, 10);
}

#[test]
fn first_stops_early() {
    let out = boundary_search(&spec(41, 3, 5), &SearchConfig { emit: Emit::First, ..Default::default() });
    assert_eq!(out.status, SearchStatus::StoppedAtFirst);
    assert_eq!(out.found.len(), 1);
}

#[test]
fn rejected_partials_are_bounded_and_valid() {
    let out = boundary_search(&spec(31, 1, 4), &SearchConfig { record_rejected: 7, ..all() });
    assert_eq!(out.rejected.len(), 7);
    sound(&out.rejected);
}

#[test]
fn canonical_key_ignores_order() {
    let mut t = triquadratic(2, 4).unwrap();
    let k1 = canonicalize(&t);
    t.tiles.reverse();
    assert_eq!(k1, canonicalize(&t));
}
