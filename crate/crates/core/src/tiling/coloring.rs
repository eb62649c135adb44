//! Black/white coloring of tiles, flipping across every shared edge.

use std::collections::{BTreeMap, VecDeque};

use serde::Serialize;

use super::{Arrangement, Tiling, TilingError};
use crate::quadfield::Point;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SignAssignment {
    /// tile id → ±1
    pub signs: BTreeMap<usize, i8>,
    pub m_signed: i64,
}

impl SignAssignment {
    /// `M_signed·(a + b + c) = X − Y + Z` in scaled integers.
    pub fn perimeter_identity_holds(&self, t: &Tiling) -> bool {
        let [a, b, c] = t.spec.scaled_sides();
        let [x, y, z] = t.spec.scaled_abc();
        self.m_signed * (a + b + c) as i64 == x as i64 - y as i64 + z as i64
    }
}

/// Colors the tiles starting from `+1` at `B`.
///
/// Fails on an odd cycle, on a tiling with no tile at `B`, or when some
/// interior vertex has an odd number of edge rays.
pub fn two_color(t: &Tiling) -> Result<SignAssignment, TilingError> {
    let start = t.tile_at_b().ok_or(TilingError::Invariant { check: "two-coloring", detail: "no tile at B".into() })?;
    let pairs = Arrangement::build(t).adjacent_pairs();
    let mut adj = vec![Vec::new(); t.tiles.len()];
    for (i, j) in pairs {
        adj[i].push(j);
        adj[j].push(i);
    }
    let mut sign = vec![0i8; t.tiles.len()];
    sign[start] = 1;
    let mut queue = VecDeque::from([start]);
    while let Some(i) = queue.pop_front() {
        for &j in &adj[i] {
            if sign[j] == 0 {
                sign[j] = -sign[i];
                queue.push_back(j);
            } else if sign[j] == sign[i] {
                return Err(TilingError::Invariant {
                    check: "two-coloring",
                    detail: format!("tiles {} and {} share an edge and a color", t.tiles[i].id, t.tiles[j].id),
                });
            }
        }
    }
    if let Some(i) = sign.iter().position(|&s| s == 0) {
        return Err(TilingError::Invariant { check: "two-coloring", detail: format!("tile {} unreachable", t.tiles[i].id) });
    }
    check_even_degrees(t)?;
    let signs: BTreeMap<usize, i8> = t.tiles.iter().zip(&sign).map(|(tile, &s)| (tile.id, s)).collect();
    let m_signed = sign.iter().map(|&s| s as i64).sum();
    Ok(SignAssignment { signs, m_signed })
}

/// Distinct edge rays leaving `p` from the tiles that have a vertex there.
pub(crate) fn rays_at(t: &Tiling, p: &Point, tiles: &[usize]) -> Vec<Point> {
    let mut rays: Vec<Point> = Vec::new();
    for &ti in tiles {
        let tile = &t.tiles[ti];
        for (v, _) in tile.vertices() {
            if v == p {
                continue;
            }
            let r = v - p;
            if !rays.iter().any(|s| s.cross(&r).is_zero() && s.dot(&r).sign() > 0) {
                rays.push(r);
            }
        }
    }
    rays
}

fn check_even_degrees(t: &Tiling) -> Result<(), TilingError> {
    let (points, incs) = super::census::incidence_map(t);
    for (p, inc) in points.iter().zip(&incs) {
        if t.frame.side_of(p).is_some() {
            continue;
        }
        let tiles: Vec<usize> = inc.iter().map(|&(ti, _)| ti).collect();
        let n = rays_at(t, p, &tiles).len();
        if n % 2 == 1 {
            let (x, y) = p.to_f64();
            return Err(TilingError::Invariant {
                check: "even edge count at interior vertices",
                detail: format!("{n} edges at ({x:.4}, {y:.4})"),
            });
        }
    }
    Ok(())
}
