//! Maximal interior segments and the length relations they induce.

use std::collections::BTreeSet;

use serde::Serialize;

use super::{Arrangement, Tiling};
use crate::quadfield::Point;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SegmentRecord {
    #[serde(serialize_with = "ser_points")]
    pub endpoints: (Point, Point),
    /// Counts of `a`, `b`, `c` edges on the left and on the right.
    pub side_counts: [[u64; 3]; 2],
    /// Length in scaled units.
    pub length: u64,
    pub maximal: bool,
    pub essential: bool,
    /// `left − right` per edge letter; the relation reads `Σ relation[i]·x_i = 0`.
    pub relation: [i64; 3],
    /// The divisibility check on `j` in `jb = ua + vc`; `None` when it does not apply.
    pub b_multiple_ok: Option<bool>,
    /// The minimum-length check for an all-`b` side facing `a` or `c` edges.
    pub b_length_ok: Option<bool>,
}

fn ser_points<S: serde::Serializer>(p: &(Point, Point), s: S) -> Result<S::Ok, S::Error> {
    let (a, b) = (p.0.to_f64(), p.1.to_f64());
    serde::Serialize::serialize(&[[a.0, a.1], [b.0, b.1]], s)
}

impl SegmentRecord {
    /// Renders the relation as e.g. `"3a = 2b"`.
    pub fn relation_text(&self) -> String {
        let term = |c: i64, l: char| if c == 1 { format!("{l}") } else { format!("{c}{l}") };
        let mut lhs = Vec::new();
        let mut rhs = Vec::new();
        for (c, l) in self.relation.iter().zip(['a', 'b', 'c']) {
            match c.signum() {
                1 => lhs.push(term(*c, l)),
                -1 => rhs.push(term(-c, l)),
                _ => {}
            }
        }
        let join = |v: Vec<String>| if v.is_empty() { "0".to_string() } else { v.join(" + ") };
        format!("{} = {}", join(lhs), join(rhs))
    }

    /// Is this relation `x·a + y·b + z·c = x'·a + y'·b + z'·c` equal (up to
    /// swapping sides) to `lhs = rhs`?
    pub fn has_relation(&self, lhs: [i64; 3], rhs: [i64; 3]) -> bool {
        let r: [i64; 3] = std::array::from_fn(|i| lhs[i] - rhs[i]);
        self.relation == r || self.relation == r.map(|x| -x)
    }
}

/// Enumerates maximal interior segments of a complete tiling.
pub fn segments(t: &Tiling) -> Vec<SegmentRecord> {
    let arr = Arrangement::build(t);
    let sides = t.spec.scaled_sides();
    let (m, k) = (t.spec.m(), t.spec.k());
    let divisible = t.spec.divisible;
    let mut out = Vec::new();
    for line in &arr.lines {
        let n = line.pieces.len();
        let mut i = 0;
        while i < n {
            let interior = |j: usize| {
                let p = &line.pieces[j];
                !line.piece_on_boundary(j) && !p.left.is_empty() && !p.right.is_empty()
            };
            if !interior(i) {
                i += 1;
                continue;
            }
            let start = i;
            while i < n && interior(i) {
                i += 1;
            }
            let (lo, hi) = (start, i);
            let mut counts = [[0u64; 3]; 2];
            let mut seen = BTreeSet::new();
            for e in &line.edges {
                if e.lo >= lo && e.hi <= hi && seen.insert((e.tile, e.label)) {
                    counts[usize::from(e.side < 0)][e.label.index()] += 1;
                }
            }
            let length: u64 = (0..3).map(|j| counts[0][j] * sides[j]).sum();
            let relation: [i64; 3] = std::array::from_fn(|j| counts[0][j] as i64 - counts[1][j] as i64);
            let essential = counts[0] != counts[1];
            let (b_multiple_ok, b_length_ok) = if essential && !divisible {
                let j = relation[1].abs() as u64;
                let all_b = |c: &[u64; 3]| c[0] == 0 && c[2] == 0;
                let mixed = |c: &[u64; 3]| c[0] + c[2] > 0;
                let one_sided = (all_b(&counts[0]) && mixed(&counts[1])) || (all_b(&counts[1]) && mixed(&counts[0]));
                (Some(j % k == 0), one_sided.then_some(length >= k * (k * k - m * m)))
            } else {
                (None, None)
            };
            out.push(SegmentRecord {
                endpoints: (line.point_at(&line.params[lo]), line.point_at(&line.params[hi])),
                side_counts: counts,
                length,
                maximal: true,
                essential,
                relation,
                b_multiple_ok,
                b_length_ok,
            });
        }
    }
    out
}
