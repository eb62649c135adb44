//! Tilings of the triangle `ABC` and the analyses run on them.
//!
//! All coordinates are in K-scaled units: a tile has sides
//! `(a, b, c) = (MK, K² − M², K²)` and `ABC` has sides
//! `(|BC|, |AC|, |AB|) = (MN, K(N − K²), K³)`.

mod arrangement;
pub mod census;
pub mod coloring;
pub mod components;
pub mod dmatrix;
pub mod io;
pub mod report;
pub mod segments;
pub mod special;
pub mod validate;

use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::numtheory::{derive_tile, TileSpec, TilingEquationSolution};
use crate::quadfield::{orient, Angle, DirectionTable, Point, QFNum};

pub use arrangement::Arrangement;
pub use census::{vertex_census, Census, VertexClass, VertexKind, VertexRecord};
pub use coloring::{two_color, SignAssignment};
pub use components::{components, Component, ComponentDecomposition, ComponentType};
pub use dmatrix::{extract_d_matrix, DMatrix};
pub use report::{analyze, AnalysisReport, InvariantFailure};
pub use segments::{segments, SegmentRecord};
pub use special::{find_special_vertices, SpecialVertices, Star, SuspiciousEdge};
pub use validate::{validate, Failure, FailureKind, ValidationReport};

/// The angle carried by a tile vertex.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum AngleLabel {
    Alpha,
    Beta,
    Gamma,
}

impl AngleLabel {
    pub const ALL: [AngleLabel; 3] = [AngleLabel::Alpha, AngleLabel::Beta, AngleLabel::Gamma];

    pub fn angle(self) -> Angle {
        match self {
            AngleLabel::Alpha => Angle::ALPHA,
            AngleLabel::Beta => Angle::BETA,
            AngleLabel::Gamma => Angle::GAMMA,
        }
    }

    pub fn index(self) -> usize {
        self as usize
    }

    /// The edge opposite this vertex.
    pub fn opposite(self) -> EdgeLabel {
        match self {
            AngleLabel::Alpha => EdgeLabel::A,
            AngleLabel::Beta => EdgeLabel::B,
            AngleLabel::Gamma => EdgeLabel::C,
        }
    }
}

/// A tile edge, named after the opposite angle: `a` joins β and γ, and so on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum EdgeLabel {
    A,
    B,
    C,
}

impl EdgeLabel {
    pub const ALL: [EdgeLabel; 3] = [EdgeLabel::A, EdgeLabel::B, EdgeLabel::C];

    pub fn index(self) -> usize {
        self as usize
    }

    /// Endpoints of the edge, in the order (lower label, higher label).
    pub fn endpoints(self) -> (AngleLabel, AngleLabel) {
        match self {
            EdgeLabel::A => (AngleLabel::Beta, AngleLabel::Gamma),
            EdgeLabel::B => (AngleLabel::Alpha, AngleLabel::Gamma),
            EdgeLabel::C => (AngleLabel::Alpha, AngleLabel::Beta),
        }
    }

    pub fn opposite(self) -> AngleLabel {
        match self {
            EdgeLabel::A => AngleLabel::Alpha,
            EdgeLabel::B => AngleLabel::Beta,
            EdgeLabel::C => AngleLabel::Gamma,
        }
    }

    pub fn letter(self) -> char {
        match self {
            EdgeLabel::A => 'a',
            EdgeLabel::B => 'b',
            EdgeLabel::C => 'c',
        }
    }
}

/// One tile, given by its three angle-labelled vertices.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PlacedTile {
    pub id: usize,
    pub v_alpha: Point,
    pub v_beta: Point,
    pub v_gamma: Point,
}

impl fmt::Debug for PlacedTile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "tile {} [α {:?} β {:?} γ {:?}]", self.id, self.v_alpha, self.v_beta, self.v_gamma)
    }
}

impl PlacedTile {
    pub fn new(id: usize, v_alpha: Point, v_beta: Point, v_gamma: Point) -> Self {
        PlacedTile { id, v_alpha, v_beta, v_gamma }
    }

    pub fn vertex(&self, l: AngleLabel) -> &Point {
        match l {
            AngleLabel::Alpha => &self.v_alpha,
            AngleLabel::Beta => &self.v_beta,
            AngleLabel::Gamma => &self.v_gamma,
        }
    }

    pub fn vertices(&self) -> [(&Point, AngleLabel); 3] {
        [(&self.v_alpha, AngleLabel::Alpha), (&self.v_beta, AngleLabel::Beta), (&self.v_gamma, AngleLabel::Gamma)]
    }

    pub fn edge(&self, e: EdgeLabel) -> (&Point, &Point) {
        let (p, q) = e.endpoints();
        (self.vertex(p), self.vertex(q))
    }

    /// Twice the signed area; positive when α, β, γ run counter-clockwise.
    pub fn signed_area2(&self) -> QFNum {
        (&self.v_beta - &self.v_alpha).cross(&(&self.v_gamma - &self.v_alpha))
    }

    /// +1 when α → β → γ is counter-clockwise, −1 for the mirror image.
    pub fn chirality(&self) -> i8 {
        self.signed_area2().sign()
    }

    /// Which vertex of this tile sits at `p`, if any.
    pub fn label_at(&self, p: &Point) -> Option<AngleLabel> {
        self.vertices().into_iter().find(|(v, _)| *v == p).map(|(_, l)| l)
    }

    pub fn float_bbox(&self) -> [f64; 4] {
        let pts = [self.v_alpha.to_f64(), self.v_beta.to_f64(), self.v_gamma.to_f64()];
        let mut b = [f64::INFINITY, f64::INFINITY, f64::NEG_INFINITY, f64::NEG_INFINITY];
        for (x, y) in pts {
            b[0] = b[0].min(x);
            b[1] = b[1].min(y);
            b[2] = b[2].max(x);
            b[3] = b[3].max(y);
        }
        b
    }

    pub fn centroid_f64(&self) -> (f64, f64) {
        let pts = [self.v_alpha.to_f64(), self.v_beta.to_f64(), self.v_gamma.to_f64()];
        ((pts[0].0 + pts[1].0 + pts[2].0) / 3.0, (pts[0].1 + pts[1].1 + pts[2].1) / 3.0)
    }

    /// Three times the centroid, which stays in the field without division.
    pub fn centroid3(&self) -> Point {
        &(&self.v_alpha + &self.v_beta) + &self.v_gamma
    }
}

/// Do the closed float boxes intersect (with a little slack)?
pub(crate) fn boxes_touch(a: &[f64; 4], b: &[f64; 4]) -> bool {
    const EPS: f64 = 1e-6;
    a[0] <= b[2] + EPS && b[0] <= a[2] + EPS && a[1] <= b[3] + EPS && b[1] <= a[3] + EPS
}

/// Exact test for two triangles having a common interior point.
pub fn triangles_overlap(s: [&Point; 3], t: [&Point; 3]) -> bool {
    fn separated(s: [&Point; 3], t: [&Point; 3]) -> bool {
        for i in 0..3 {
            let (p, q, r) = (s[i], s[(i + 1) % 3], s[(i + 2) % 3]);
            let side = orient(p, q, r);
            if side == 0 {
                return true;
            }
            if t.iter().all(|v| orient(p, q, v) * side <= 0) {
                return true;
            }
        }
        false
    }
    !(separated(s, t) || separated(t, s))
}

/// Is `p` inside or on the boundary of the counter-clockwise triangle `tri`?
pub fn point_in_triangle(p: &Point, tri: [&Point; 3]) -> bool {
    let s = orient(tri[0], tri[1], tri[2]);
    (0..3).all(|i| orient(tri[i], tri[(i + 1) % 3], p) * s >= 0)
}

/// Is `p` on the closed segment `[u, v]`?
pub fn on_segment(p: &Point, u: &Point, v: &Point) -> bool {
    orient(u, v, p) == 0 && (p - u).dot(&(p - v)).sign() <= 0
}

/// The canonical placement: `A` at the origin, `C` on the positive x-axis, `B` above.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Frame {
    pub a: Point,
    pub b: Point,
    pub c: Point,
}

impl Frame {
    pub fn canonical(spec: &TileSpec) -> Frame {
        let dirs = DirectionTable::shared(spec.m(), spec.k());
        let d = spec.radicand();
        let [_, y, z] = spec.scaled_abc();
        Frame {
            a: Point::origin(d),
            c: Point::from_ints(y as i64, 0, d),
            b: dirs.dir(Angle::ALPHA.times(2)).scale_int(z as i64),
        }
    }

    /// Sides in the order `BC`, `AC`, `AB` (the rows `X`, `Y`, `Z`).
    pub fn sides(&self) -> [(&Point, &Point); 3] {
        [(&self.b, &self.c), (&self.a, &self.c), (&self.a, &self.b)]
    }

    pub fn corners(&self) -> [&Point; 3] {
        [&self.a, &self.b, &self.c]
    }

    /// Index into [`Frame::sides`] of a side containing `p`.
    pub fn side_of(&self, p: &Point) -> Option<usize> {
        self.sides().iter().position(|(u, v)| on_segment(p, u, v))
    }

    pub fn contains(&self, p: &Point) -> bool {
        point_in_triangle(p, [&self.a, &self.b, &self.c])
    }
}

/// A full or partial tiling of `ABC`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Tiling {
    pub spec: TileSpec,
    pub frame: Frame,
    pub tiles: Vec<PlacedTile>,
    pub partial: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TilingError {
    #[error("({m}, {k}) does not solve M^2 + N = 2K^2 with M^2 < N")]
    BadSolution { m: u64, k: u64 },
    #[error("K = {k} does not divide M^2 = {m2}")]
    NotDivisible { k: u64, m2: u64 },
    #[error("tiling file: {0}")]
    Format(String),
    #[error("{check} failed: {detail}")]
    Invariant { check: &'static str, detail: String },
}

impl Tiling {
    pub fn new(spec: TileSpec, tiles: Vec<PlacedTile>, partial: bool) -> Self {
        let frame = Frame::canonical(&spec);
        Tiling { spec, frame, tiles, partial }
    }

    pub fn for_mk(m: u64, k: u64, tiles: Vec<PlacedTile>, partial: bool) -> Result<Self, TilingError> {
        let sol = TilingEquationSolution::from_mk(m, k).ok_or(TilingError::BadSolution { m, k })?;
        Ok(Tiling::new(derive_tile(sol), tiles, partial))
    }

    pub fn d(&self) -> u64 {
        self.spec.radicand()
    }

    pub fn directions(&self) -> std::sync::Arc<DirectionTable> {
        DirectionTable::shared(self.spec.m(), self.spec.k())
    }

    pub fn tile(&self, id: usize) -> Option<&PlacedTile> {
        self.tiles.iter().find(|t| t.id == id)
    }

    /// Position of the tile with a vertex at `B`, if any.
    pub fn tile_at_b(&self) -> Option<usize> {
        self.tiles.iter().position(|t| t.label_at(&self.frame.b).is_some())
    }

    /// Edge vectors per label, in scaled lengths.
    pub fn scaled_length(&self, e: EdgeLabel) -> u64 {
        self.spec.scaled_sides()[e.index()]
    }
}
