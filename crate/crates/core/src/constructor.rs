//! Quadratic and triquadratic tilings with exact coordinates.

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::numtheory::{derive_tile, TileSpec, TilingEquationSolution};
use crate::quadfield::{line_intersection, Angle, Point};
use crate::tiling::{Frame, PlacedTile, Tiling, TilingError};

/// The `n²` subdivision of the triangle with corners `(p_alpha, p_beta, p_gamma)`.
///
/// Row `j` holds upright tiles `(i, j)` and, between them, tiles rotated by π.
/// Ids are assigned consecutively from `first_id`.
pub fn quadratic_tiling(n: u64, p_alpha: &Point, p_beta: &Point, p_gamma: &Point, first_id: usize) -> Vec<PlacedTile> {
    let inv = BigRational::new(BigInt::from(1), BigInt::from(n));
    let u = (p_beta - p_alpha).scale_rational(&inv);
    let v = (p_gamma - p_alpha).scale_rational(&inv);
    let at = |i: u64, j: u64| &(p_alpha + &u.scale_int(i as i64)) + &v.scale_int(j as i64);
    let mut out = Vec::with_capacity((n * n) as usize);
    for j in 0..n {
        for i in 0..n - j {
            let id = first_id + out.len();
            out.push(PlacedTile::new(id, at(i, j), at(i + 1, j), at(i, j + 1)));
            if i + j + 1 < n {
                let id = first_id + out.len();
                out.push(PlacedTile::new(id, at(i + 1, j + 1), at(i, j + 1), at(i + 1, j)));
            }
        }
    }
    out
}

/// The pieces of a triquadratic tiling before the tiles are laid.
#[derive(Debug, Clone)]
pub struct TriquadraticPlan {
    pub spec: TileSpec,
    pub frame: Frame,
    /// The center where the three quadratic tilings meet.
    pub q: Point,
    /// On `AB`, corner of the second `b²` block.
    pub d: Point,
    /// On `BC`, corner of the `a²` block.
    pub e: Point,
    /// `(a², b², b², 2bJ)` with `a = M`, `b = (K² − M²)/K`, `J = M²/K`.
    pub counts: [u64; 4],
}

/// Lays out the construction for `(M, K)` with `K | M²`.
pub fn triquadratic_plan(m: u64, k: u64) -> Result<TriquadraticPlan, TilingError> {
    let sol = TilingEquationSolution::from_mk(m, k).ok_or(TilingError::BadSolution { m, k })?;
    if !sol.divisible() {
        return Err(TilingError::NotDivisible { k, m2: m * m });
    }
    let spec = derive_tile(sol);
    let frame = Frame::canonical(&spec);
    let dirs = crate::quadfield::DirectionTable::shared(m, k);
    let [_, b_s, c_s] = spec.scaled_sides();
    let nb = (k * k - m * m) / k;
    let j = m * m / k;

    let q = dirs.dir(Angle::ALPHA).scale_int((nb * b_s) as i64);
    let d = dirs.dir(Angle::ALPHA.times(2)).scale_int((nb * c_s) as i64);
    let e = &frame.c + &dirs.dir(Angle::new(1, 1)).scale_int((m * c_s) as i64);

    let b = line_intersection(&frame.a, &(&d - &frame.a), &frame.c, &(&e - &frame.c))
        .ok_or(TilingError::Invariant { check: "triquadratic layout", detail: "AD parallel to CE".into() })?;
    if b != frame.b {
        return Err(TilingError::Invariant {
            check: "triquadratic layout",
            detail: format!("lines AD and CE meet at {b:?}, not at B = {:?}", frame.b),
        });
    }
    let counts = [m * m, nb * nb, nb * nb, 2 * nb * j];
    if counts.iter().sum::<u64>() != spec.n() {
        return Err(TilingError::Invariant { check: "triquadratic tile count", detail: format!("{counts:?}") });
    }
    Ok(TriquadraticPlan { spec, frame, q, d, e, counts })
}

/// The triquadratic tiling of `ABC` for `(M, K)` with `K | M²`.
///
/// Tiles come in the order: `a²` block at `C`, the `b²` block on `AC`, the
/// `b²` block on `AB`, then the parallelogram strip `BDQE` cell by cell.
pub fn triquadratic(m: u64, k: u64) -> Result<Tiling, TilingError> {
    let plan = triquadratic_plan(m, k)?;
    let TriquadraticPlan { spec, frame, q, d, e, .. } = &plan;
    let nb = (k * k - m * m) / k;
    let j = m * m / k;

    let mut tiles = quadratic_tiling(m, &frame.c, e, q, 0);
    tiles.extend(quadratic_tiling(nb, &frame.a, &frame.c, q, tiles.len()));
    tiles.extend(quadratic_tiling(nb, &frame.a, d, q, tiles.len()));

    let u_a = (d - q).scale_rational(&BigRational::new(1.into(), (nb as i64).into()));
    let u_c = (e - q).scale_rational(&BigRational::new(1.into(), (j as i64).into()));
    for row in 0..nb {
        for col in 0..j {
            let p0 = &(q + &u_a.scale_int(row as i64)) + &u_c.scale_int(col as i64);
            let p1 = &p0 + &u_a;
            let p3 = &p0 + &u_c;
            let p2 = &p1 + &u_c;
            let id = tiles.len();
            tiles.push(PlacedTile::new(id, p3.clone(), p0, p1.clone()));
            tiles.push(PlacedTile::new(id + 1, p1, p2, p3));
        }
    }
    Ok(Tiling { spec: spec.clone(), frame: frame.clone(), tiles, partial: false })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tiling::validate;

    #[test]
    fn small_quadratic_counts() {
        let d = 15;
        let (a, b, c) = (Point::origin(d), Point::from_ints(4, 0, d), Point::from_ints(1, 2, d));
        assert_eq!(quadratic_tiling(1, &a, &b, &c, 0).len(), 1);
        let four = quadratic_tiling(2, &a, &b, &c, 0);
        assert_eq!(four.len(), 4);
        assert_eq!(four.iter().filter(|t| t.chirality() < 0).count(), 0);
        assert_eq!(four[1].v_alpha, Point::new(c.x.clone(), c.y.clone()).scale_rational(&BigRational::new(1.into(), 2.into())) + b.scale_rational(&BigRational::new(1.into(), 2.into())));
    }

    #[test]
    fn plan_counts() {
        assert_eq!(triquadratic_plan(2, 4).unwrap().counts, [4, 9, 9, 6]);
        assert_eq!(triquadratic_plan(3, 9).unwrap().counts, [9, 64, 64, 16]);
        assert_eq!(triquadratic_plan(6, 9).unwrap().counts, [36, 25, 25, 40]);
        assert_eq!(triquadratic_plan(6, 18).unwrap().counts, [36, 256, 256, 64]);
        assert!(matches!(triquadratic_plan(2, 6), Err(TilingError::NotDivisible { .. })));
        assert!(matches!(triquadratic_plan(4, 3), Err(TilingError::BadSolution { .. })));
    }

    #[test]
    fn twenty_eight_validates() {
        let t = triquadratic(2, 4).unwrap();
        assert_eq!(t.tiles.len(), 28);
        let r = validate(&t);
        assert!(r.passed, "{:?}", r.failures);
    }
}
