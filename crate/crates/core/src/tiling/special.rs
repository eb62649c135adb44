//! Centers, stars and suspicious edges.
//!
//! Orientation follows the canonical frame: `AC` runs east, `B` is north.
//! Direction A is the bisector of angle `A`; Direction C is the line through
//! `C` separating the two tiles there. Both are followed downwards from a
//! vertex: Direction A towards the southwest, Direction C towards the southeast.

use serde::Serialize;

use super::census::incidence_map;
use super::components::tile_type;
use super::{AngleLabel, ComponentDecomposition, ComponentType, EdgeLabel, Tiling};
use crate::quadfield::{Angle, Point};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum DownRay {
    /// Southwest along Direction A.
    DirectionA,
    /// Southeast along Direction C.
    DirectionC,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SuspiciousEdge {
    pub at: (f64, f64),
    pub ray: DownRay,
    /// Tile with its `b` edge along the ray.
    pub b_tile: usize,
    /// Tile with its `a` or `c` edge along the ray.
    pub other_tile: usize,
    pub other_edge: EdgeLabel,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Star {
    pub at: (f64, f64),
    /// Tiles at the star whose interior lies above the two rays.
    pub above: Vec<usize>,
    /// Tiles at the star that belong to neither Type I nor Type II.
    pub irregular: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpecialVertices {
    pub centers: Vec<(f64, f64)>,
    #[serde(skip)]
    pub center_points: Vec<Point>,
    pub stars: Vec<Star>,
    pub suspicious_edges: Vec<SuspiciousEdge>,
    /// The reading of "above" used by the star detector.
    pub star_interpretation: &'static str,
}

pub const STAR_INTERPRETATION: &str =
    "above = tiles with a vertex at F lying in the sector above the southwest and southeast rays from F";

/// Edges of tiles at `p` that start at `p` and run along `dir`.
fn edges_along(t: &Tiling, p: &Point, tiles: &[(usize, AngleLabel)], dir: &Point) -> Vec<(usize, EdgeLabel)> {
    let mut out = Vec::new();
    for &(pos, l) in tiles {
        let tile = &t.tiles[pos];
        for e in EdgeLabel::ALL {
            let (u, v) = e.endpoints();
            let other = if u == l {
                v
            } else if v == l {
                u
            } else {
                continue;
            };
            let w = tile.vertex(other) - p;
            if w.cross(dir).is_zero() && w.dot(dir).sign() > 0 {
                out.push((pos, e));
            }
        }
    }
    out
}

/// Detects centers, stars and suspicious edges.
///
/// Tile types come from `comps` when supplied, otherwise from each tile's own
/// edge directions (which is what a component's type reduces to).
pub fn find_special_vertices(t: &Tiling, comps: Option<&ComponentDecomposition>) -> SpecialVertices {
    let dirs = t.directions();
    let sw = dirs.dir(Angle::ALPHA + Angle::PI);
    let se = dirs.dir(-Angle::BETA);
    let type_of = |pos: usize| comps.map_or_else(|| tile_type(t, pos), |c| c.type_of_tile(pos));
    let regular = |k: ComponentType| matches!(k, ComponentType::I | ComponentType::II);

    let (points, incs) = incidence_map(t);
    let mut centers = Vec::new();
    let mut center_points = Vec::new();
    let mut stars = Vec::new();
    let mut suspicious = Vec::new();
    for (p, inc) in points.iter().zip(&incs) {
        let mut triple = [0; 3];
        for &(_, l) in inc {
            triple[l.index()] += 1;
        }
        let is_center = triple == [0, 1, 3];
        if is_center {
            centers.push(p.to_f64());
            center_points.push(p.clone());
        }

        for (ray, dir) in [(DownRay::DirectionA, &sw), (DownRay::DirectionC, &se)] {
            let along = edges_along(t, p, inc, dir);
            let b_tile = along.iter().find(|(_, e)| *e == EdgeLabel::B);
            let other = along.iter().find(|(_, e)| *e != EdgeLabel::B);
            if let (Some(&(bt, _)), Some(&(ot, oe))) = (b_tile, other) {
                suspicious.push(SuspiciousEdge {
                    at: p.to_f64(),
                    ray,
                    b_tile: t.tiles[bt].id,
                    other_tile: t.tiles[ot].id,
                    other_edge: oe,
                });
            }
        }

        if is_center || t.frame.side_of(p).is_some() {
            continue;
        }
        if edges_along(t, p, inc, &sw).is_empty() || edges_along(t, p, inc, &se).is_empty() {
            continue;
        }
        // the lower sector between the two rays is convex (its angle is γ)
        let below = |pos: usize| {
            let c = &t.tiles[pos].centroid3() - &p.scale_int(3);
            let s1 = se.cross(&c).sign();
            let s2 = c.cross(&sw).sign();
            s1 < 0 && s2 < 0
        };
        let above: Vec<usize> = inc.iter().map(|&(pos, _)| pos).filter(|&pos| !below(pos)).collect();
        if above.is_empty() || !above.iter().all(|&pos| regular(type_of(pos))) {
            continue;
        }
        let irregular: Vec<usize> = inc.iter().map(|&(pos, _)| pos).filter(|&pos| !regular(type_of(pos))).collect();
        if !irregular.is_empty() {
            stars.push(Star {
                at: p.to_f64(),
                above: above.iter().map(|&i| t.tiles[i].id).collect(),
                irregular: irregular.iter().map(|&i| t.tiles[i].id).collect(),
            });
        }
    }
    SpecialVertices { centers, center_points, stars, suspicious_edges: suspicious, star_interpretation: STAR_INTERPRETATION }
}
