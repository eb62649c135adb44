//! The versioned JSON interchange format for tilings.

use serde::{Deserialize, Serialize, Serializer};

use super::{Frame, PlacedTile, Tiling, TilingError};
use crate::numtheory::{derive_tile, TilingEquationSolution};
use crate::quadfield::{Point, QFNum};

pub const FORMAT_VERSION: u32 = 1;

pub(crate) fn ser_qf<S: Serializer>(x: &QFNum, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&x.serialize())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TileDoc {
    pub id: usize,
    pub v_alpha: [String; 2],
    pub v_beta: [String; 2],
    pub v_gamma: [String; 2],
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TilingDoc {
    pub version: u32,
    #[serde(rename = "N")]
    pub n: u64,
    #[serde(rename = "M")]
    pub m: u64,
    #[serde(rename = "K")]
    pub k: u64,
    #[serde(rename = "D")]
    pub d: u64,
    pub scaled: bool,
    pub partial: bool,
    #[serde(rename = "A")]
    pub a: [String; 2],
    #[serde(rename = "B")]
    pub b: [String; 2],
    #[serde(rename = "C")]
    pub c: [String; 2],
    pub tiles: Vec<TileDoc>,
}

fn point_doc(p: &Point) -> [String; 2] {
    [p.x.serialize(), p.y.serialize()]
}

fn parse_point(p: &[String; 2], d: u64) -> Result<Point, TilingError> {
    let f = |s: &str| QFNum::parse_with(s, d).map_err(|e| TilingError::Format(e.to_string()));
    Ok(Point::new(f(&p[0])?, f(&p[1])?))
}

impl TilingDoc {
    pub fn from_tiling(t: &Tiling) -> TilingDoc {
        TilingDoc {
            version: FORMAT_VERSION,
            n: t.spec.n(),
            m: t.spec.m(),
            k: t.spec.k(),
            d: t.d(),
            scaled: true,
            partial: t.partial,
            a: point_doc(&t.frame.a),
            b: point_doc(&t.frame.b),
            c: point_doc(&t.frame.c),
            tiles: t
                .tiles
                .iter()
                .map(|tile| TileDoc {
                    id: tile.id,
                    v_alpha: point_doc(&tile.v_alpha),
                    v_beta: point_doc(&tile.v_beta),
                    v_gamma: point_doc(&tile.v_gamma),
                })
                .collect(),
        }
    }

    pub fn into_tiling(self) -> Result<Tiling, TilingError> {
        if self.version != FORMAT_VERSION {
            return Err(TilingError::Format(format!("unsupported version {}", self.version)));
        }
        if !self.scaled {
            return Err(TilingError::Format("only K-scaled coordinates are supported".into()));
        }
        let sol = TilingEquationSolution::new(self.n, self.m, self.k).ok_or(TilingError::BadSolution { m: self.m, k: self.k })?;
        let spec = derive_tile(sol);
        if spec.radicand() != self.d {
            return Err(TilingError::Format(format!("D = {} but 4K^2 - M^2 = {}", self.d, spec.radicand())));
        }
        let d = self.d;
        let frame = Frame { a: parse_point(&self.a, d)?, b: parse_point(&self.b, d)?, c: parse_point(&self.c, d)? };
        let tiles = self
            .tiles
            .iter()
            .map(|t| {
                Ok(PlacedTile::new(t.id, parse_point(&t.v_alpha, d)?, parse_point(&t.v_beta, d)?, parse_point(&t.v_gamma, d)?))
            })
            .collect::<Result<Vec<_>, TilingError>>()?;
        Ok(Tiling { spec, frame, tiles, partial: self.partial })
    }
}

pub fn to_json(t: &Tiling) -> String {
    let mut s = serde_json::to_string_pretty(&TilingDoc::from_tiling(t)).expect("tiling documents always serialize");
    s.push('\n');
    s
}

pub fn from_json(s: &str) -> Result<Tiling, TilingError> {
    let doc: TilingDoc = serde_json::from_str(s).map_err(|e| TilingError::Format(e.to_string()))?;
    doc.into_tiling()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn one_tile() -> Tiling {
        let spec = derive_tile(TilingEquationSolution::new(7, 1, 2).unwrap());
        let d = spec.radicand();
        let tile = PlacedTile::new(0, Point::origin(d), Point::from_ints(4, 0, d), Point::from_ints(1, 2, d));
        Tiling::new(spec, vec![tile], true)
    }

    #[test]
    fn round_trip_is_exact() {
        let t = one_tile();
        let s = to_json(&t);
        let back = from_json(&s).unwrap();
        assert_eq!(back, t);
        assert_eq!(to_json(&back), s);
    }

    #[test]
    fn rejects_unknown_fields_and_bad_radicand() {
        let s = to_json(&one_tile());
        let extra = s.replacen("\"version\"", "\"color\": 1,\n  \"version\"", 1);
        assert!(from_json(&extra).is_err());
        let bad_d = s.replace("\"D\": 15", "\"D\": 16");
        assert!(matches!(from_json(&bad_d), Err(TilingError::Format(_))));
        let bad_v = s.replace("\"version\": 1", "\"version\": 2");
        assert!(from_json(&bad_v).is_err());
    }
}
