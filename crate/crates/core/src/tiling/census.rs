//! Vertex types and the center count identity.

use std::collections::HashMap;

use serde::Serialize;

use super::{AngleLabel, Tiling, TilingError};
use crate::quadfield::{Angle, Point};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum VertexKind {
    /// Interior vertex with angles summing to 2π.
    InteriorStrict,
    /// Interior vertex lying inside another tile's edge (angles sum to π).
    InteriorNonstrict,
    Boundary,
    Corner,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum VertexClass {
    Standard111,
    Standard222,
    Center013,
    Sporadic320,
    Sporadic640,
    Sporadic431,
    Corner,
    Other,
}

impl VertexClass {
    pub fn of(triple: (u32, u32, u32)) -> VertexClass {
        match triple {
            (1, 1, 1) => VertexClass::Standard111,
            (2, 2, 2) => VertexClass::Standard222,
            (0, 1, 3) => VertexClass::Center013,
            (3, 2, 0) => VertexClass::Sporadic320,
            (6, 4, 0) => VertexClass::Sporadic640,
            (4, 3, 1) => VertexClass::Sporadic431,
            _ => VertexClass::Other,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VertexRecord {
    #[serde(serialize_with = "ser_point")]
    pub location: Point,
    /// `(tile id, angle)` pairs.
    pub incidences: Vec<(usize, AngleLabel)>,
    pub kind: VertexKind,
    pub type_triple: (u32, u32, u32),
    pub classification: VertexClass,
}

fn ser_point<S: serde::Serializer>(p: &Point, s: S) -> Result<S::Ok, S::Error> {
    let (x, y) = p.to_f64();
    serde::Serialize::serialize(&[x, y], s)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Census {
    pub vertices: Vec<VertexRecord>,
    pub n_centers: usize,
    pub n_320: usize,
    pub n_640: usize,
    pub n_431: usize,
    pub corners_ok: bool,
}

impl Census {
    /// `N_C = 1 + N_1 + 2N_2`, counting `(4,3,1)` vertices with `N_1`
    /// since they carry the same surplus of α over γ.
    pub fn center_identity_holds(&self) -> bool {
        self.n_centers == 1 + self.n_320 + 2 * self.n_640 + self.n_431
    }

    pub fn centers(&self) -> impl Iterator<Item = &VertexRecord> {
        self.vertices.iter().filter(|v| v.classification == VertexClass::Center013)
    }
}

/// Groups tile corners by location, in order of first appearance.
pub(crate) fn incidence_map(t: &Tiling) -> (Vec<Point>, Vec<Vec<(usize, AngleLabel)>>) {
    let mut index: HashMap<&Point, usize> = HashMap::new();
    let mut points = Vec::new();
    let mut inc: Vec<Vec<(usize, AngleLabel)>> = Vec::new();
    for (ti, tile) in t.tiles.iter().enumerate() {
        for (p, l) in tile.vertices() {
            let i = *index.entry(p).or_insert_with(|| {
                points.push(p.clone());
                inc.push(Vec::new());
                points.len() - 1
            });
            inc[i].push((ti, l));
        }
    }
    (points, inc)
}

/// Classifies every vertex. For complete tilings an angle sum that is neither
/// π nor 2π (or a wrong corner) is an error; partial tilings are recorded as-is.
pub fn vertex_census(t: &Tiling) -> Result<Census, TilingError> {
    let (points, incs) = incidence_map(t);
    let corners = t.frame.corners();
    let corner_angles = [Angle::ALPHA.times(2), Angle::BETA, Angle::ALPHA + Angle::BETA];
    let mut vertices = Vec::with_capacity(points.len());
    let mut corners_ok = true;
    for (p, inc) in points.into_iter().zip(incs) {
        let mut triple = (0u32, 0u32, 0u32);
        let mut sum = Angle::ZERO;
        for &(_, l) in &inc {
            match l {
                AngleLabel::Alpha => triple.0 += 1,
                AngleLabel::Beta => triple.1 += 1,
                AngleLabel::Gamma => triple.2 += 1,
            }
            sum = sum + l.angle();
        }
        let corner = corners.iter().position(|c| **c == p);
        let (kind, expected_ok) = if let Some(ci) = corner {
            (VertexKind::Corner, sum == corner_angles[ci])
        } else if t.frame.side_of(&p).is_some() {
            (VertexKind::Boundary, sum == Angle::PI)
        } else if sum == Angle::TWO_PI {
            (VertexKind::InteriorStrict, true)
        } else {
            (VertexKind::InteriorNonstrict, sum == Angle::PI)
        };
        let classification = if kind == VertexKind::Corner { VertexClass::Corner } else { VertexClass::of(triple) };
        if !t.partial {
            if !expected_ok || classification == VertexClass::Other {
                let (x, y) = p.to_f64();
                return Err(TilingError::Invariant {
                    check: "vertex angle sum",
                    detail: format!("vertex ({x:.4}, {y:.4}) has type {triple:?}"),
                });
            }
        }
        if kind == VertexKind::Corner && !expected_ok {
            corners_ok = false;
        }
        let incidences = inc.iter().map(|&(ti, l)| (t.tiles[ti].id, l)).collect();
        vertices.push(VertexRecord { location: p, incidences, kind, type_triple: triple, classification });
    }
    let count = |c: VertexClass| vertices.iter().filter(|v| v.classification == c).count();
    Ok(Census {
        n_centers: count(VertexClass::Center013),
        n_320: count(VertexClass::Sporadic320),
        n_640: count(VertexClass::Sporadic640),
        n_431: count(VertexClass::Sporadic431),
        corners_ok,
        vertices,
    })
}
