//! Congruence, edge matching, coverage and area checks.

use serde::Serialize;

use super::{boxes_touch, triangles_overlap, Arrangement, EdgeLabel, Tiling};
use crate::quadfield::QFNum;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum FailureKind {
    /// `ABC` does not have the side lengths fixed by the solution.
    TriangleShape,
    /// A tile is not congruent to the tile.
    Congruence,
    DuplicateId,
    /// Complete tiling with the wrong number of tiles.
    TileCount,
    /// A stretch of tile edge with a missing or doubled neighbour.
    EdgeMismatch,
    /// Part of a side of `ABC` not covered by a tile edge.
    BoundaryGap,
    OutsideTriangle,
    Overlap,
    AreaMismatch,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Failure {
    pub kind: FailureKind,
    pub tiles: Vec<usize>,
    pub location: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ValidationReport {
    pub passed: bool,
    pub tile_count: usize,
    pub partial: bool,
    pub failures: Vec<Failure>,
    /// `2·area(ABC) − Σ 2·area(tile)`, exact; zero for a complete tiling.
    #[serde(serialize_with = "crate::tiling::io::ser_qf")]
    pub area_deficit2: QFNum,
}

impl ValidationReport {
    pub fn has(&self, kind: FailureKind) -> bool {
        self.failures.iter().any(|f| f.kind == kind)
    }
}

const MAX_FAILURES: usize = 200;

struct Collector<'a> {
    t: &'a Tiling,
    failures: Vec<Failure>,
}

impl Collector<'_> {
    fn fail(&mut self, kind: FailureKind, tiles: &[usize], location: String) {
        if self.failures.len() < MAX_FAILURES {
            let ids = tiles.iter().map(|&i| self.t.tiles[i].id).collect();
            self.failures.push(Failure { kind, tiles: ids, location });
        }
    }
}

fn fmt_point(p: &crate::quadfield::Point) -> String {
    let (x, y) = p.to_f64();
    format!("({x:.4}, {y:.4})")
}

/// Full validation for complete tilings, partial validation otherwise.
pub fn validate(t: &Tiling) -> ValidationReport {
    let d = t.d();
    let mut c = Collector { t, failures: Vec::new() };

    let [x, y, z] = t.spec.scaled_abc();
    let sq = |n: u64| QFNum::from_int((n * n) as i64, d);
    let f = &t.frame;
    if (&f.b - &f.c).norm2() != sq(x) || (&f.c - &f.a).norm2() != sq(y) || (&f.b - &f.a).norm2() != sq(z) {
        c.failures.push(Failure { kind: FailureKind::TriangleShape, tiles: vec![], location: "ABC".into() });
    }

    let mut ids: Vec<usize> = t.tiles.iter().map(|tile| tile.id).collect();
    ids.sort_unstable();
    for w in ids.windows(2) {
        if w[0] == w[1] {
            c.failures.push(Failure { kind: FailureKind::DuplicateId, tiles: vec![w[0]], location: String::new() });
        }
    }

    let sides = t.spec.scaled_sides();
    for (i, tile) in t.tiles.iter().enumerate() {
        let ok = EdgeLabel::ALL.iter().all(|&e| {
            let (p, q) = tile.edge(e);
            (q - p).norm2() == sq(sides[e.index()])
        });
        if !ok {
            c.fail(FailureKind::Congruence, &[i], fmt_point(&tile.v_alpha));
        }
    }

    if !t.partial && t.tiles.len() as u64 != t.spec.n() {
        c.failures.push(Failure {
            kind: FailureKind::TileCount,
            tiles: vec![],
            location: format!("{} tiles, expected {}", t.tiles.len(), t.spec.n()),
        });
    }

    let arr = Arrangement::build(t);
    for line in &arr.lines {
        for (i, piece) in line.pieces.iter().enumerate() {
            let at = || fmt_point(&line.point_at(&line.params[i]));
            if line.piece_on_boundary(i) {
                let (inside, outside) = line.inside_outside(i);
                if !outside.is_empty() {
                    c.fail(FailureKind::OutsideTriangle, outside, at());
                }
                if inside.len() > 1 {
                    c.fail(FailureKind::EdgeMismatch, inside, at());
                } else if inside.is_empty() && !t.partial {
                    c.fail(FailureKind::BoundaryGap, &[], at());
                }
                continue;
            }
            let (l, r) = (piece.left.len(), piece.right.len());
            if l == 0 && r == 0 {
                continue;
            }
            if line.boundary.is_some() {
                // on the extension of a side, beyond the triangle
                let all: Vec<usize> = piece.left.iter().chain(&piece.right).copied().collect();
                c.fail(FailureKind::OutsideTriangle, &all, at());
                continue;
            }
            let bad = if t.partial { l > 1 || r > 1 } else { l != 1 || r != 1 };
            if bad {
                let all: Vec<usize> = piece.left.iter().chain(&piece.right).copied().collect();
                c.fail(FailureKind::EdgeMismatch, &all, at());
            }
        }
    }

    if t.partial {
        for (i, tile) in t.tiles.iter().enumerate() {
            if !tile.vertices().iter().all(|(p, _)| f.contains(p)) {
                c.fail(FailureKind::OutsideTriangle, &[i], fmt_point(&tile.v_alpha));
            }
        }
        let boxes: Vec<[f64; 4]> = t.tiles.iter().map(|tile| tile.float_bbox()).collect();
        for i in 0..t.tiles.len() {
            for j in i + 1..t.tiles.len() {
                if !boxes_touch(&boxes[i], &boxes[j]) {
                    continue;
                }
                let (s, u) = (&t.tiles[i], &t.tiles[j]);
                if triangles_overlap([&s.v_alpha, &s.v_beta, &s.v_gamma], [&u.v_alpha, &u.v_beta, &u.v_gamma]) {
                    c.fail(FailureKind::Overlap, &[i, j], fmt_point(&s.v_alpha));
                }
            }
        }
    }

    let total = (&f.b - &f.a).cross(&(&f.c - &f.a)).abs();
    let mut covered = QFNum::zero(d);
    for tile in &t.tiles {
        covered += &tile.signed_area2().abs();
    }
    let deficit = &total - &covered;
    if !t.partial && !deficit.is_zero() {
        c.failures.push(Failure { kind: FailureKind::AreaMismatch, tiles: vec![], location: format!("deficit {}", deficit.to_f64() / 2.0) });
    }

    ValidationReport {
        passed: c.failures.is_empty(),
        tile_count: t.tiles.len(),
        partial: t.partial,
        failures: c.failures,
        area_deficit2: deficit,
    }
}
