//! Counts of `a`, `b`, `c` tile edges along each side of `ABC`.

use serde::Serialize;

use super::{on_segment, EdgeLabel, Tiling, TilingError};

/// Rows `X = BC`, `Y = AC`, `Z = AB`; columns count `a`, `b`, `c` edges.
/// In the usual letters the rows are `(p, d, e)`, `(g, m, f)`, `(h, ℓ, r)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct DMatrix {
    pub rows: [[u64; 3]; 3],
}

impl DMatrix {
    /// `d·(a, b, c)ᵀ` in scaled units.
    pub fn side_lengths(&self, sides: [u64; 3]) -> [u64; 3] {
        self.rows.map(|r| r[0] * sides[0] + r[1] * sides[1] + r[2] * sides[2])
    }

    /// `e`, `f`, `r`: the number of `c` edges on each side.
    pub fn c_counts(&self) -> [u64; 3] {
        [self.rows[0][2], self.rows[1][2], self.rows[2][2]]
    }
}

/// Tallies boundary edges and checks `d·(a, b, c)ᵀ = K·(ta, b, c)ᵀ`,
/// `X = M(b + c)` and that every side carries a `c` edge.
pub fn extract_d_matrix(t: &Tiling) -> Result<DMatrix, TilingError> {
    let mut rows = [[0u64; 3]; 3];
    let sides = t.frame.sides();
    for tile in &t.tiles {
        for e in EdgeLabel::ALL {
            let (p, q) = tile.edge(e);
            if let Some(s) = sides.iter().position(|(u, v)| on_segment(p, u, v) && on_segment(q, u, v)) {
                rows[s][e.index()] += 1;
            }
        }
    }
    let d = DMatrix { rows };
    if t.partial {
        return Ok(d);
    }
    let tile = t.spec.scaled_sides();
    let abc = t.spec.scaled_abc();
    let got = d.side_lengths(tile);
    if got != abc {
        return Err(TilingError::Invariant {
            check: "d-matrix equation",
            detail: format!("d·(a,b,c) = {got:?}, expected {abc:?}"),
        });
    }
    if abc[0] != t.spec.m() * (tile[1] + tile[2]) {
        return Err(TilingError::Invariant { check: "X = M(b+c)", detail: format!("X = {}", abc[0]) });
    }
    if d.c_counts().contains(&0) {
        return Err(TilingError::Invariant {
            check: "c edge on every side",
            detail: format!("c counts {:?}", d.c_counts()),
        });
    }
    Ok(d)
}
