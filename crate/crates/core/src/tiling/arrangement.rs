//! Tile edges grouped by supporting line and cut into elementary pieces.

use std::collections::HashMap;

use super::{EdgeLabel, Tiling};
use crate::quadfield::{Point, QFNum};

/// A tile edge lying on a line, as a parameter interval.
#[derive(Debug, Clone)]
pub struct EdgeOnLine {
    /// Position of the tile in `Tiling::tiles`.
    pub tile: usize,
    pub label: EdgeLabel,
    /// Indices into [`LineGroup::params`], `lo < hi`.
    pub lo: usize,
    pub hi: usize,
    /// +1 when the tile lies to the left of the line's direction.
    pub side: i8,
}

/// The stretch between two consecutive parameters, with the tiles on either side.
#[derive(Debug, Clone, Default)]
pub struct Piece {
    pub left: Vec<usize>,
    pub right: Vec<usize>,
}

#[derive(Debug, Clone)]
pub struct BoundaryInfo {
    /// Index into `Frame::sides`.
    pub side: usize,
    /// Which side of the line the triangle interior is on.
    pub inside: i8,
    /// Parameter indices of the side's endpoints.
    pub lo: usize,
    pub hi: usize,
}

#[derive(Debug, Clone)]
pub struct LineGroup {
    pub anchor: Point,
    /// Normalized direction: `(1, m)` or `(0, 1)`.
    pub dir: Point,
    pub params: Vec<QFNum>,
    pub edges: Vec<EdgeOnLine>,
    /// `pieces[i]` spans `params[i]..params[i + 1]`.
    pub pieces: Vec<Piece>,
    pub boundary: Option<BoundaryInfo>,
}

impl LineGroup {
    pub fn point_at(&self, t: &QFNum) -> Point {
        if self.dir.x.is_zero() {
            Point::new(self.anchor.x.clone(), t.clone())
        } else {
            let dt = t - &self.anchor.x;
            Point::new(t.clone(), &self.anchor.y + &(&self.dir.y * &dt))
        }
    }

    /// Is piece `i` within the triangle side carried by this line?
    pub fn piece_on_boundary(&self, i: usize) -> bool {
        self.boundary.as_ref().is_some_and(|b| b.lo <= i && i < b.hi)
    }

    /// Tiles on the interior side and the exterior side of a boundary piece.
    pub fn inside_outside(&self, i: usize) -> (&[usize], &[usize]) {
        let p = &self.pieces[i];
        match &self.boundary {
            Some(b) if b.inside < 0 => (&p.right, &p.left),
            _ => (&p.left, &p.right),
        }
    }
}

/// All tile edges of a tiling organised by line.
#[derive(Debug, Clone)]
pub struct Arrangement {
    pub lines: Vec<LineGroup>,
}

type LineKey = (Option<QFNum>, QFNum);

fn line_key(p: &Point, q: &Point) -> (LineKey, Point) {
    let v = q - p;
    let dir = if v.x.is_zero() {
        Point::new(QFNum::zero(p.x.d()), QFNum::one(p.x.d()))
    } else {
        let m = v.y.checked_div(&v.x).expect("nonzero x component");
        Point::new(QFNum::one(p.x.d()), m)
    };
    let offset = dir.cross(p);
    let slope = (!dir.x.is_zero()).then(|| dir.y.clone());
    ((slope, offset), dir)
}

fn param(dir: &Point, p: &Point) -> QFNum {
    if dir.x.is_zero() {
        p.y.clone()
    } else {
        p.x.clone()
    }
}

struct RawEdge {
    tile: usize,
    label: EdgeLabel,
    t0: QFNum,
    t1: QFNum,
    side: i8,
}

impl Arrangement {
    pub fn build(t: &Tiling) -> Arrangement {
        let mut index: HashMap<LineKey, usize> = HashMap::new();
        let mut anchors: Vec<(Point, Point)> = Vec::new();
        let mut raw: Vec<Vec<RawEdge>> = Vec::new();
        let mut bounds: Vec<Option<(usize, i8, QFNum, QFNum)>> = Vec::new();

        let mut slot = |p: &Point, q: &Point, anchors: &mut Vec<(Point, Point)>, raw: &mut Vec<Vec<RawEdge>>, bounds: &mut Vec<_>| {
            let (key, dir) = line_key(p, q);
            *index.entry(key).or_insert_with(|| {
                anchors.push((p.clone(), dir));
                raw.push(Vec::new());
                bounds.push(None);
                anchors.len() - 1
            })
        };

        let corners = t.frame.corners();
        for (s, (u, v)) in t.frame.sides().into_iter().enumerate() {
            let i = slot(u, v, &mut anchors, &mut raw, &mut bounds);
            let dir = &anchors[i].1;
            let third = corners.iter().find(|c| **c != u && **c != v).expect("three corners");
            let inside = dir.cross(&(*third - u)).sign();
            bounds[i] = Some((s, inside, param(dir, u), param(dir, v)));
        }

        for (ti, tile) in t.tiles.iter().enumerate() {
            for label in EdgeLabel::ALL {
                let (p, q) = tile.edge(label);
                if p == q {
                    continue;
                }
                let i = slot(p, q, &mut anchors, &mut raw, &mut bounds);
                let dir = &anchors[i].1;
                let r = tile.vertex(label.opposite());
                let side = dir.cross(&(r - p)).sign();
                raw[i].push(RawEdge { tile: ti, label, t0: param(dir, p), t1: param(dir, q), side });
            }
        }

        let lines = anchors
            .into_iter()
            .zip(raw)
            .zip(bounds)
            .map(|(((anchor, dir), edges), bound)| {
                let mut params: Vec<QFNum> = edges.iter().flat_map(|e| [e.t0.clone(), e.t1.clone()]).collect();
                if let Some((_, _, u, v)) = &bound {
                    params.push(u.clone());
                    params.push(v.clone());
                }
                params.sort();
                params.dedup();
                let find = |x: &QFNum| params.binary_search(x).expect("parameter recorded");
                let mut pieces = vec![Piece::default(); params.len().saturating_sub(1)];
                let edges: Vec<EdgeOnLine> = edges
                    .into_iter()
                    .map(|e| {
                        let (a, b) = (find(&e.t0), find(&e.t1));
                        let (lo, hi) = (a.min(b), a.max(b));
                        for p in &mut pieces[lo..hi] {
                            if e.side > 0 {
                                p.left.push(e.tile);
                            } else {
                                p.right.push(e.tile);
                            }
                        }
                        EdgeOnLine { tile: e.tile, label: e.label, lo, hi, side: e.side }
                    })
                    .collect();
                let boundary = bound.map(|(side, inside, u, v)| {
                    let (a, b) = (find(&u), find(&v));
                    BoundaryInfo { side, inside, lo: a.min(b), hi: a.max(b) }
                });
                LineGroup { anchor, dir, params, edges, pieces, boundary }
            })
            .collect();
        Arrangement { lines }
    }

    /// Pairs of tiles facing each other across some piece of an interior or boundary line.
    pub fn adjacent_pairs(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for line in &self.lines {
            for p in &line.pieces {
                for &l in &p.left {
                    for &r in &p.right {
                        out.push((l.min(r), l.max(r)));
                    }
                }
            }
        }
        out.sort_unstable();
        out.dedup();
        out
    }
}
