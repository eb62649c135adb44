//! The graph H on tiles and its connected components.
//!
//! Two tiles are joined when they share an edge with both endpoints and carry
//! different angles there, so that together they form a parallelogram.

use std::collections::{BTreeSet, HashMap};

use serde::Serialize;

use super::{Arrangement, EdgeLabel, Tiling, TilingError};
use crate::quadfield::{Angle, Point};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum ComponentType {
    I,
    II,
    III,
    Other,
}

/// A named global line direction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum LineDirection {
    AB,
    BC,
    AC,
    DirectionA,
    DirectionC,
    Unnamed,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Component {
    /// Tile ids, ascending.
    pub tiles: Vec<usize>,
    /// Directions of the `a`, `b`, `c` edges.
    pub edge_directions: [LineDirection; 3],
    pub kind: ComponentType,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ComponentDecomposition {
    pub components: Vec<Component>,
    /// H edges as pairs of tile ids.
    pub adjacency: Vec<(usize, usize)>,
    /// Pairs of component indices of equal type that are out of sync.
    pub out_of_sync: Vec<(usize, usize)>,
    /// Component index of each tile, by position in `Tiling::tiles`.
    #[serde(skip)]
    pub membership: Vec<usize>,
}

impl ComponentDecomposition {
    pub fn type_of_tile(&self, pos: usize) -> ComponentType {
        self.components[self.membership[pos]].kind
    }

    pub fn has_type(&self, k: ComponentType) -> bool {
        self.components.iter().any(|c| c.kind == k)
    }
}

fn edge_vec(t: &Tiling, pos: usize, e: EdgeLabel) -> Point {
    let (p, q) = t.tiles[pos].edge(e);
    q - p
}

pub(crate) fn reference_directions(t: &Tiling) -> [(LineDirection, Point); 5] {
    let f = &t.frame;
    let dirs = t.directions();
    [
        (LineDirection::AB, &f.b - &f.a),
        (LineDirection::BC, &f.b - &f.c),
        (LineDirection::AC, &f.c - &f.a),
        (LineDirection::DirectionA, dirs.dir(Angle::ALPHA)),
        (LineDirection::DirectionC, dirs.dir(Angle::PI - Angle::BETA)),
    ]
}

fn name_direction(refs: &[(LineDirection, Point); 5], v: &Point) -> LineDirection {
    refs.iter().find(|(_, r)| r.cross(v).is_zero()).map_or(LineDirection::Unnamed, |(n, _)| *n)
}

pub(crate) fn classify(dirs: [LineDirection; 3]) -> ComponentType {
    use LineDirection::*;
    match dirs {
        [AB, DirectionC, BC] => ComponentType::I,
        [BC, DirectionA, AB] => ComponentType::II,
        [DirectionC, DirectionA, AC] => ComponentType::III,
        _ => ComponentType::Other,
    }
}

/// Type of the component a lone tile would form, from its own edge directions.
pub(crate) fn tile_type(t: &Tiling, pos: usize) -> ComponentType {
    let refs = reference_directions(t);
    classify(EdgeLabel::ALL.map(|e| name_direction(&refs, &edge_vec(t, pos, e))))
}

/// Builds H, its components and their types, and checks that every component
/// has parallel same-length edges and is a lattice tiling.
pub fn components(t: &Tiling) -> Result<ComponentDecomposition, TilingError> {
    let n = t.tiles.len();
    let mut by_edge: HashMap<(&Point, &Point), Vec<(usize, EdgeLabel, bool)>> = HashMap::new();
    for (pos, tile) in t.tiles.iter().enumerate() {
        for e in EdgeLabel::ALL {
            let (p, q) = tile.edge(e);
            let (key, flipped) = if p <= q { ((p, q), false) } else { ((q, p), true) };
            by_edge.entry(key).or_default().push((pos, e, flipped));
        }
    }
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], mut i: usize) -> usize {
        while parent[i] != i {
            parent[i] = parent[parent[i]];
            i = parent[i];
        }
        i
    }
    let mut adjacency = Vec::new();
    for group in by_edge.values() {
        for (x, &(i, ei, fi)) in group.iter().enumerate() {
            for &(j, ej, fj) in &group[x + 1..] {
                // same label, opposite orientation of the endpoints: angles swapped
                if ei == ej && fi != fj {
                    let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
                    parent[ri] = rj;
                    adjacency.push((t.tiles[i].id.min(t.tiles[j].id), t.tiles[i].id.max(t.tiles[j].id)));
                }
            }
        }
    }
    adjacency.sort_unstable();

    let mut roots: Vec<usize> = Vec::new();
    let mut membership = vec![0usize; n];
    let mut members: Vec<Vec<usize>> = Vec::new();
    for pos in 0..n {
        let r = find(&mut parent, pos);
        let ci = match roots.iter().position(|&x| x == r) {
            Some(ci) => ci,
            None => {
                roots.push(r);
                members.push(Vec::new());
                roots.len() - 1
            }
        };
        membership[pos] = ci;
        members[ci].push(pos);
    }

    let refs = reference_directions(t);
    let mut comps = Vec::new();
    for mem in &members {
        let rep = mem[0];
        let rep_vecs = EdgeLabel::ALL.map(|e| edge_vec(t, rep, e));
        for &pos in mem {
            for e in EdgeLabel::ALL {
                if !edge_vec(t, pos, e).cross(&rep_vecs[e.index()]).is_zero() {
                    return Err(TilingError::Invariant {
                        check: "same-length edges parallel within a component",
                        detail: format!("tiles {} and {}", t.tiles[rep].id, t.tiles[pos].id),
                    });
                }
            }
        }
        check_lattice(t, mem)?;
        let edge_directions = rep_vecs.clone().map(|v| name_direction(&refs, &v));
        let mut ids: Vec<usize> = mem.iter().map(|&p| t.tiles[p].id).collect();
        ids.sort_unstable();
        comps.push(Component { tiles: ids, edge_directions, kind: classify(edge_directions) });
    }

    let out_of_sync = find_out_of_sync(t, &membership, &comps);
    Ok(ComponentDecomposition { components: comps, adjacency, out_of_sync, membership })
}

fn check_lattice(t: &Tiling, mem: &[usize]) -> Result<(), TilingError> {
    let rep = &t.tiles[mem[0]];
    let origin = &rep.v_alpha;
    let u = &rep.v_beta - origin;
    let v = &rep.v_gamma - origin;
    let det = u.cross(&v);
    for &pos in mem {
        for (p, _) in t.tiles[pos].vertices() {
            let w = p - origin;
            let s = w.cross(&v).checked_div(&det);
            let r = u.cross(&w).checked_div(&det);
            let integral = |x: &crate::quadfield::QFNum| x.is_rational() && x.p().is_integer();
            let ok = matches!((&s, &r), (Ok(s), Ok(r)) if integral(s) && integral(r));
            if !ok {
                return Err(TilingError::Invariant {
                    check: "component is a lattice tiling",
                    detail: format!("tile {} off the lattice of tile {}", t.tiles[pos].id, rep.id),
                });
            }
        }
    }
    Ok(())
}

fn find_out_of_sync(t: &Tiling, membership: &[usize], comps: &[Component]) -> Vec<(usize, usize)> {
    let arr = Arrangement::build(t);
    let mut out = BTreeSet::new();
    for line in &arr.lines {
        for e in &line.edges {
            for f in &line.edges {
                let (ci, cj) = (membership[e.tile], membership[f.tile]);
                if ci >= cj || comps[ci].kind != comps[cj].kind || e.label != f.label || e.side == f.side {
                    continue;
                }
                let overlap = e.lo.max(f.lo) < e.hi.min(f.hi);
                if overlap && (e.lo, e.hi) != (f.lo, f.hi) {
                    out.insert((ci, cj));
                }
            }
        }
    }
    out.into_iter().collect()
}
