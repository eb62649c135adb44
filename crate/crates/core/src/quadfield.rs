//! Exact arithmetic in `Q(√D)`, points over it, and the direction catalog.
//!
//! For a tile with `sin(α/2) = M/(2K)` we have `cos(α/2) = √D/(2K)` with
//! `D = 4K² − M²`, so every tile edge direction `k·α/2 + q·π/2` has
//! coordinates in `Q(√D)`.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_integer::Roots;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::numtheory::TileSpec;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QfError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("malformed field element {0:?}")]
    Parse(String),
    #[error("radicand mismatch: expected sqrt{expected}, found sqrt{found}")]
    Radicand { expected: u64, found: u64 },
}

/// `p + q·√d`. When `q = 0` the radicand is irrelevant for equality.
#[derive(Clone)]
pub struct QFNum {
    p: BigRational,
    q: BigRational,
    d: u64,
}

fn perfect_sqrt(d: u64) -> Option<u64> {
    let r = d.sqrt();
    (r * r == d).then_some(r)
}

fn big(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

impl QFNum {
    /// Canonical constructor; a perfect-square radicand folds `q` into `p`.
    pub fn new(p: BigRational, q: BigRational, d: u64) -> Self {
        match perfect_sqrt(d) {
            Some(r) if !q.is_zero() => QFNum { p: p + q * big(r as i64), q: BigRational::zero(), d },
            _ => QFNum { p, q, d },
        }
    }

    pub fn from_rational(p: BigRational, d: u64) -> Self {
        QFNum { p, q: BigRational::zero(), d }
    }

    pub fn from_int(n: i64, d: u64) -> Self {
        Self::from_rational(big(n), d)
    }

    pub fn from_ratio(n: i64, den: i64, d: u64) -> Self {
        Self::from_rational(BigRational::new(n.into(), den.into()), d)
    }

    pub fn zero(d: u64) -> Self {
        Self::from_int(0, d)
    }

    pub fn one(d: u64) -> Self {
        Self::from_int(1, d)
    }

    /// `q·√d` alone.
    pub fn sqrt_part(q: BigRational, d: u64) -> Self {
        Self::new(BigRational::zero(), q, d)
    }

    pub fn p(&self) -> &BigRational {
        &self.p
    }
    pub fn q(&self) -> &BigRational {
        &self.q
    }
    pub fn d(&self) -> u64 {
        self.d
    }

    pub fn is_zero(&self) -> bool {
        self.p.is_zero() && self.q.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.q.is_zero()
    }

    fn join_d(&self, other: &Self) -> u64 {
        if self.q.is_zero() {
            other.d
        } else {
            debug_assert!(other.q.is_zero() || other.d == self.d, "mixing sqrt{} and sqrt{}", self.d, other.d);
            self.d
        }
    }

    /// Exact sign of `p + q√d`.
    pub fn sign(&self) -> i8 {
        let sp = sgn(&self.p);
        let sq = sgn(&self.q);
        if sq == 0 {
            return sp;
        }
        if sp == 0 || sp == sq {
            return sq;
        }
        // opposite signs: compare p² with q²d
        let lhs = &self.p * &self.p;
        let rhs = &self.q * &self.q * big(self.d as i64);
        match lhs.cmp(&rhs) {
            Ordering::Greater => sp,
            Ordering::Less => sq,
            Ordering::Equal => 0,
        }
    }

    /// Field conjugate `p − q√d`.
    pub fn conjugate(&self) -> Self {
        QFNum { p: self.p.clone(), q: -&self.q, d: self.d }
    }

    /// Norm `p² − q²d`, a rational.
    pub fn norm(&self) -> BigRational {
        &self.p * &self.p - &self.q * &self.q * big(self.d as i64)
    }

    pub fn recip(&self) -> Result<Self, QfError> {
        let n = self.norm();
        if n.is_zero() {
            return Err(QfError::DivisionByZero);
        }
        Ok(QFNum { p: &self.p / &n, q: -&self.q / &n, d: self.d })
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self, QfError> {
        Ok(self * &other.recip()?)
    }

    pub fn scale(&self, r: &BigRational) -> Self {
        QFNum { p: &self.p * r, q: &self.q * r, d: self.d }
    }

    pub fn scale_int(&self, n: i64) -> Self {
        if n == 1 {
            return self.clone();
        }
        self.scale(&big(n))
    }

    pub fn abs(&self) -> Self {
        if self.sign() < 0 {
            -self
        } else {
            self.clone()
        }
    }

    pub fn to_f64(&self) -> f64 {
        ratio_f64(&self.p) + ratio_f64(&self.q) * (self.d as f64).sqrt()
    }

    /// `"p_num/p_den+q_num/q_den*sqrtD"`.
    pub fn serialize(&self) -> String {
        format!("{}/{}+{}/{}*sqrt{}", self.p.numer(), self.p.denom(), self.q.numer(), self.q.denom(), self.d)
    }

    /// Parses the [`QFNum::serialize`] form and checks the radicand against `d`.
    pub fn parse_with(s: &str, d: u64) -> Result<Self, QfError> {
        let v: QFNum = s.parse()?;
        if v.d != d {
            return Err(QfError::Radicand { expected: d, found: v.d });
        }
        Ok(v)
    }
}

fn sgn(r: &BigRational) -> i8 {
    if r.is_positive() {
        1
    } else if r.is_negative() {
        -1
    } else {
        0
    }
}

pub(crate) fn ratio_f64(r: &BigRational) -> f64 {
    match (r.numer().to_f64(), r.denom().to_f64()) {
        (Some(n), Some(d)) if n.is_finite() && d.is_finite() => n / d,
        _ => r.to_f64().unwrap_or(f64::NAN),
    }
}

fn parse_ratio(s: &str) -> Option<BigRational> {
    let (n, d) = s.split_once('/')?;
    let n: BigInt = n.parse().ok()?;
    let d: BigInt = d.parse().ok()?;
    if d.is_zero() {
        return None;
    }
    Some(BigRational::new(n, d))
}

impl FromStr for QFNum {
    type Err = QfError;

    fn from_str(s: &str) -> Result<Self, QfError> {
        let err = || QfError::Parse(s.to_string());
        let (head, d) = s.rsplit_once("*sqrt").ok_or_else(err)?;
        let d: u64 = d.parse().map_err(|_| err())?;
        // the p part may itself start with '-', so split on the first '+' after the first '/'
        let slash = head.find('/').ok_or_else(err)?;
        let plus = head[slash..].find('+').ok_or_else(err)? + slash;
        let p = parse_ratio(&head[..plus]).ok_or_else(err)?;
        let q = parse_ratio(&head[plus + 1..]).ok_or_else(err)?;
        Ok(QFNum::new(p, q, d))
    }
}

impl fmt::Display for QFNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.serialize())
    }
}

impl fmt::Debug for QFNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (~{:.6})", self.serialize(), self.to_f64())
    }
}

impl PartialEq for QFNum {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.q == other.q && (self.q.is_zero() || self.d == other.d)
    }
}

impl Eq for QFNum {}

impl Hash for QFNum {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.p.hash(state);
        self.q.hash(state);
    }
}

impl PartialOrd for QFNum {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for QFNum {
    fn cmp(&self, other: &Self) -> Ordering {
        (self - other).sign().cmp(&0)
    }
}

impl<'a> Add<&'a QFNum> for &'a QFNum {
    type Output = QFNum;
    fn add(self, o: &QFNum) -> QFNum {
        QFNum { p: &self.p + &o.p, q: &self.q + &o.q, d: self.join_d(o) }
    }
}

impl<'a> Sub<&'a QFNum> for &'a QFNum {
    type Output = QFNum;
    fn sub(self, o: &QFNum) -> QFNum {
        QFNum { p: &self.p - &o.p, q: &self.q - &o.q, d: self.join_d(o) }
    }
}

impl<'a> Mul<&'a QFNum> for &'a QFNum {
    type Output = QFNum;
    fn mul(self, o: &QFNum) -> QFNum {
        let d = self.join_d(o);
        if self.q.is_zero() {
            return QFNum { p: &self.p * &o.p, q: &self.p * &o.q, d };
        }
        if o.q.is_zero() {
            return QFNum { p: &self.p * &o.p, q: &self.q * &o.p, d };
        }
        QFNum {
            p: &self.p * &o.p + &self.q * &o.q * big(d as i64),
            q: &self.p * &o.q + &self.q * &o.p,
            d,
        }
    }
}

impl Neg for &QFNum {
    type Output = QFNum;
    fn neg(self) -> QFNum {
        QFNum { p: -&self.p, q: -&self.q, d: self.d }
    }
}

impl Neg for QFNum {
    type Output = QFNum;
    fn neg(self) -> QFNum {
        QFNum { p: -self.p, q: -self.q, d: self.d }
    }
}

macro_rules! owned_ops {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr<QFNum> for QFNum {
            type Output = QFNum;
            fn $m(self, o: QFNum) -> QFNum { (&self).$m(&o) }
        }
        impl<'a> $tr<&'a QFNum> for QFNum {
            type Output = QFNum;
            fn $m(self, o: &QFNum) -> QFNum { (&self).$m(o) }
        }
    )*};
}
owned_ops!(Add add, Sub sub, Mul mul);

impl AddAssign<&QFNum> for QFNum {
    fn add_assign(&mut self, o: &QFNum) {
        self.d = self.join_d(o);
        self.p += &o.p;
        self.q += &o.q;
    }
}

impl SubAssign<&QFNum> for QFNum {
    fn sub_assign(&mut self, o: &QFNum) {
        self.d = self.join_d(o);
        self.p -= &o.p;
        self.q -= &o.q;
    }
}

/// A point or vector with coordinates in `Q(√D)`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Point {
    pub x: QFNum,
    pub y: QFNum,
}

pub type Vec2 = Point;

impl Point {
    pub fn new(x: QFNum, y: QFNum) -> Self {
        Point { x, y }
    }

    pub fn origin(d: u64) -> Self {
        Point::new(QFNum::zero(d), QFNum::zero(d))
    }

    pub fn from_ints(x: i64, y: i64, d: u64) -> Self {
        Point::new(QFNum::from_int(x, d), QFNum::from_int(y, d))
    }

    pub fn scale(&self, s: &QFNum) -> Self {
        Point::new(&self.x * s, &self.y * s)
    }

    pub fn scale_int(&self, n: i64) -> Self {
        Point::new(self.x.scale_int(n), self.y.scale_int(n))
    }

    pub fn scale_rational(&self, r: &BigRational) -> Self {
        Point::new(self.x.scale(r), self.y.scale(r))
    }

    pub fn dot(&self, o: &Self) -> QFNum {
        &self.x * &o.x + &self.y * &o.y
    }

    pub fn cross(&self, o: &Self) -> QFNum {
        &self.x * &o.y - &self.y * &o.x
    }

    pub fn norm2(&self) -> QFNum {
        self.dot(self)
    }

    pub fn is_zero(&self) -> bool {
        self.x.is_zero() && self.y.is_zero()
    }

    pub fn to_f64(&self) -> (f64, f64) {
        (self.x.to_f64(), self.y.to_f64())
    }

    /// Rotation by +90°.
    pub fn perp(&self) -> Self {
        Point::new(-&self.y, self.x.clone())
    }
}

impl fmt::Debug for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (x, y) = self.to_f64();
        write!(f, "({x:.4}, {y:.4})")
    }
}

impl<'a> Add<&'a Point> for &'a Point {
    type Output = Point;
    fn add(self, o: &Point) -> Point {
        Point::new(&self.x + &o.x, &self.y + &o.y)
    }
}

impl<'a> Sub<&'a Point> for &'a Point {
    type Output = Point;
    fn sub(self, o: &Point) -> Point {
        Point::new(&self.x - &o.x, &self.y - &o.y)
    }
}

impl Add for Point {
    type Output = Point;
    fn add(self, o: Point) -> Point {
        &self + &o
    }
}

impl Sub for Point {
    type Output = Point;
    fn sub(self, o: Point) -> Point {
        &self - &o
    }
}

impl Neg for &Point {
    type Output = Point;
    fn neg(self) -> Point {
        Point::new(-&self.x, -&self.y)
    }
}

/// Orientation of the triple `(a, b, c)`: +1 counter-clockwise, −1 clockwise, 0 collinear.
pub fn orient(a: &Point, b: &Point, c: &Point) -> i8 {
    (b - a).cross(&(c - a)).sign()
}

/// Intersection of the lines `p + s·u` and `q + t·v`, if not parallel.
pub fn line_intersection(p: &Point, u: &Vec2, q: &Point, v: &Vec2) -> Option<Point> {
    let den = u.cross(v);
    if den.is_zero() {
        return None;
    }
    let s = (q - p).cross(v).checked_div(&den).ok()?;
    Some(p + &u.scale(&s))
}

/// A 2×2 matrix over the field, used for exact rotations.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Rotation {
    pub m: [[QFNum; 2]; 2],
}

impl Rotation {
    pub fn from_cos_sin(c: QFNum, s: QFNum) -> Self {
        Rotation { m: [[c.clone(), -&s], [s, c]] }
    }

    pub fn apply(&self, v: &Vec2) -> Vec2 {
        Point::new(&self.m[0][0] * &v.x + &self.m[0][1] * &v.y, &self.m[1][0] * &v.x + &self.m[1][1] * &v.y)
    }

    pub fn compose(&self, o: &Rotation) -> Rotation {
        let e = |i: usize, j: usize| &self.m[i][0] * &o.m[0][j] + &self.m[i][1] * &o.m[1][j];
        Rotation { m: [[e(0, 0), e(0, 1)], [e(1, 0), e(1, 1)]] }
    }

    pub fn transpose(&self) -> Rotation {
        let m = &self.m;
        Rotation { m: [[m[0][0].clone(), m[1][0].clone()], [m[0][1].clone(), m[1][1].clone()]] }
    }

    pub fn determinant(&self) -> QFNum {
        &self.m[0][0] * &self.m[1][1] - &self.m[0][1] * &self.m[1][0]
    }

    /// `RᵀR = I` and `det R = 1`, exactly.
    pub fn is_proper_orthogonal(&self) -> bool {
        let d = self.m[0][0].d();
        let p = self.transpose().compose(self);
        let one = QFNum::one(d);
        let zero = QFNum::zero(d);
        p.m[0][0] == one && p.m[1][1] == one && p.m[0][1] == zero && p.m[1][0] == zero && self.determinant() == one
    }
}

/// An angle `k·(α/2) + q·(π/2)`. Since α is not a rational multiple of π,
/// this representation is unique once `q` is reduced mod 4 (for directions).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Angle {
    pub half_alpha: i32,
    pub quarter: i32,
}

impl Angle {
    pub const ZERO: Angle = Angle { half_alpha: 0, quarter: 0 };
    pub const ALPHA: Angle = Angle { half_alpha: 2, quarter: 0 };
    pub const BETA: Angle = Angle { half_alpha: -3, quarter: 1 };
    pub const GAMMA: Angle = Angle { half_alpha: 1, quarter: 1 };
    pub const PI: Angle = Angle { half_alpha: 0, quarter: 2 };
    pub const TWO_PI: Angle = Angle { half_alpha: 0, quarter: 4 };

    pub const fn new(half_alpha: i32, quarter: i32) -> Self {
        Angle { half_alpha, quarter }
    }

    /// Reduced modulo a full turn, as a direction.
    pub fn normalized(self) -> Self {
        Angle { half_alpha: self.half_alpha, quarter: self.quarter.rem_euclid(4) }
    }

    pub fn times(self, n: i32) -> Self {
        Angle { half_alpha: self.half_alpha * n, quarter: self.quarter * n }
    }

    /// Floating value in radians for a given `α`.
    pub fn radians(self, alpha: f64) -> f64 {
        self.half_alpha as f64 * alpha / 2.0 + self.quarter as f64 * std::f64::consts::FRAC_PI_2
    }
}

impl Add for Angle {
    type Output = Angle;
    fn add(self, o: Angle) -> Angle {
        Angle { half_alpha: self.half_alpha + o.half_alpha, quarter: self.quarter + o.quarter }
    }
}

impl Sub for Angle {
    type Output = Angle;
    fn sub(self, o: Angle) -> Angle {
        Angle { half_alpha: self.half_alpha - o.half_alpha, quarter: self.quarter - o.quarter }
    }
}

impl Neg for Angle {
    type Output = Angle;
    fn neg(self) -> Angle {
        Angle { half_alpha: -self.half_alpha, quarter: -self.quarter }
    }
}

/// Unit vectors `direction(k, q)` for one tile shape, memoized.
pub struct DirectionTable {
    m: u64,
    k: u64,
    d: u64,
    // cos/sin of j·α/2 for j = 0, 1, 2, ...
    powers: RwLock<Vec<(QFNum, QFNum)>>,
}

impl fmt::Debug for DirectionTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("DirectionTable").field("m", &self.m).field("k", &self.k).field("d", &self.d).finish()
    }
}

impl DirectionTable {
    pub fn new(m: u64, k: u64) -> Self {
        let d = 4 * k * k - m * m;
        DirectionTable { m, k, d, powers: RwLock::new(vec![(QFNum::one(d), QFNum::zero(d))]) }
    }

    /// The process-wide table for `(M, K)`.
    pub fn shared(m: u64, k: u64) -> Arc<DirectionTable> {
        static TABLES: OnceLock<RwLock<HashMap<(u64, u64), Arc<DirectionTable>>>> = OnceLock::new();
        let tables = TABLES.get_or_init(Default::default);
        if let Some(t) = tables.read().expect("direction tables poisoned").get(&(m, k)) {
            return t.clone();
        }
        tables.write().expect("direction tables poisoned").entry((m, k)).or_insert_with(|| Arc::new(DirectionTable::new(m, k))).clone()
    }

    pub fn d(&self) -> u64 {
        self.d
    }

    /// `(cos(α/2), sin(α/2)) = (√D/(2K), M/(2K))`.
    pub fn half_alpha_cos_sin(&self) -> (QFNum, QFNum) {
        let two_k = 2 * self.k as i64;
        (
            QFNum::sqrt_part(BigRational::new(1.into(), two_k.into()), self.d),
            QFNum::from_ratio(self.m as i64, two_k, self.d),
        )
    }

    pub fn half_alpha_rotation(&self) -> Rotation {
        let (c, s) = self.half_alpha_cos_sin();
        Rotation::from_cos_sin(c, s)
    }

    fn cos_sin_multiple(&self, j: i32) -> (QFNum, QFNum) {
        let idx = j.unsigned_abs() as usize;
        let hit = self.powers.read().expect("direction cache poisoned").get(idx).cloned();
        let (c, s) = match hit {
            Some(v) => v,
            None => {
                let (hc, hs) = self.half_alpha_cos_sin();
                let mut w = self.powers.write().expect("direction cache poisoned");
                while w.len() <= idx {
                    let (c, s) = w.last().cloned().expect("table starts non-empty");
                    w.push((&c * &hc - &s * &hs, &s * &hc + &c * &hs));
                }
                w[idx].clone()
            }
        };
        if j < 0 {
            (c, -s)
        } else {
            (c, s)
        }
    }

    /// Unit vector at angle `k·α/2 + quarter·π/2`.
    pub fn direction(&self, k: i32, quarter: i32) -> Vec2 {
        let (c, s) = self.cos_sin_multiple(k);
        match quarter.rem_euclid(4) {
            0 => Point::new(c, s),
            1 => Point::new(-s, c),
            2 => Point::new(-c, -s),
            _ => Point::new(s, -c),
        }
    }

    pub fn dir(&self, a: Angle) -> Vec2 {
        self.direction(a.half_alpha, a.quarter)
    }
}

/// Rotation by `+α/2` for the tile of `spec`.
pub fn half_alpha_rotation(spec: &TileSpec) -> Rotation {
    DirectionTable::shared(spec.m(), spec.k()).half_alpha_rotation()
}

/// Unit vector at angle `k·α/2 + quarter_turns·π/2` for the tile of `spec`.
pub fn direction(k: i32, quarter_turns: i32, spec: &TileSpec) -> Vec2 {
    DirectionTable::shared(spec.m(), spec.k()).direction(k, quarter_turns)
}

/// Exact trigonometric values of a tile's angles, with float angles in degrees.
#[derive(Debug, Clone, PartialEq)]
pub struct TileAngles {
    pub cos_half_alpha: QFNum,
    pub sin_half_alpha: QFNum,
    pub cos_alpha: QFNum,
    pub sin_alpha: QFNum,
    pub alpha_deg: f64,
    pub beta_deg: f64,
    pub gamma_deg: f64,
}

pub fn tile_angles(spec: &TileSpec) -> TileAngles {
    let (c, s) = DirectionTable::shared(spec.m(), spec.k()).half_alpha_cos_sin();
    let cos_alpha = &(&c * &c) - &(&s * &s);
    let sin_alpha = (&c * &s).scale_int(2);
    let alpha = 2.0 * s.to_f64().atan2(c.to_f64());
    let beta = (std::f64::consts::PI - 3.0 * alpha) / 2.0;
    let gamma = std::f64::consts::PI - alpha - beta;
    TileAngles {
        cos_half_alpha: c,
        sin_half_alpha: s,
        cos_alpha,
        sin_alpha,
        alpha_deg: alpha.to_degrees(),
        beta_deg: beta.to_degrees(),
        gamma_deg: gamma.to_degrees(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn conjugate_product() {
        let x = QFNum::new(r(1, 1), r(1, 1), 60);
        let y = QFNum::new(r(1, 1), r(-1, 1), 60);
        assert_eq!(&x * &y, QFNum::from_int(-59, 60));
        assert_eq!(&x + &QFNum::zero(60), x);
    }

    #[test]
    fn square_of_half_cos() {
        let c = QFNum::sqrt_part(r(1, 8), 60);
        assert_eq!(&c * &c, QFNum::from_ratio(15, 16, 60));
    }

    #[test]
    fn sign_examples() {
        assert_eq!(QFNum::new(r(-7, 1), r(1, 1), 60).sign(), 1);
        assert_eq!(QFNum::zero(60).sign(), 0);
        assert_eq!(QFNum::new(r(-8, 1), r(1, 1), 60).sign(), -1);
        assert_eq!(QFNum::new(r(8, 1), r(-1, 1), 64).sign(), 0);
    }

    #[test]
    fn perfect_square_folds() {
        let x = QFNum::new(r(1, 2), r(1, 3), 9);
        assert!(x.is_rational());
        assert_eq!(x, QFNum::from_ratio(3, 2, 9));
    }

    #[test]
    fn division() {
        let x = QFNum::new(r(3, 1), r(2, 1), 60);
        let y = QFNum::new(r(1, 5), r(-1, 7), 60);
        let q = x.checked_div(&y).unwrap();
        assert_eq!(&q * &y, x);
        assert_eq!(x.checked_div(&QFNum::zero(60)), Err(QfError::DivisionByZero));
    }

    #[test]
    fn serialization_round_trip() {
        let x = QFNum::new(r(1, 2), r(-1, 8), 60);
        assert_eq!(x.serialize(), "1/2+-1/8*sqrt60");
        assert_eq!("1/2+-1/8*sqrt60".parse::<QFNum>().unwrap(), x);
        let y = QFNum::new(r(-3, 4), r(5, 1), 60);
        assert_eq!(QFNum::parse_with(&y.serialize(), 60).unwrap(), y);
        assert!(QFNum::parse_with(&y.serialize(), 61).is_err());
        assert!("1/0+0/1*sqrt60".parse::<QFNum>().is_err());
        assert!("garbage".parse::<QFNum>().is_err());
    }

    #[test]
    fn half_alpha_identity() {
        let t = DirectionTable::new(2, 4);
        let (c, s) = t.half_alpha_cos_sin();
        assert_eq!(&c * &c + &s * &s, QFNum::one(60));
        assert!(t.half_alpha_rotation().is_proper_orthogonal());
        let v = t.direction(2, 0);
        assert_eq!(v.x, QFNum::from_ratio(7, 8, 60));
        assert_eq!(v.y, QFNum::sqrt_part(r(1, 16), 60));
        let rot = t.half_alpha_rotation();
        assert_eq!(rot.apply(&rot.apply(&Point::from_ints(1, 0, 60))), v);
    }

    #[test]
    fn direction_c_angle() {
        let t = DirectionTable::new(2, 4);
        let alpha = 2.0 * (0.25f64).asin();
        let v = t.dir(Angle::PI - Angle::BETA).to_f64();
        let beta = (std::f64::consts::PI - 3.0 * alpha) / 2.0;
        let expect = std::f64::consts::PI - beta;
        assert!((v.0 - expect.cos()).abs() < 1e-12 && (v.1 - expect.sin()).abs() < 1e-12);
        assert_eq!(Angle::PI - Angle::BETA, Angle::new(3, 1));
    }

    #[test]
    fn angle_algebra() {
        assert_eq!(Angle::ALPHA.times(3) + Angle::BETA.times(2), Angle::PI);
        assert_eq!(Angle::ALPHA + Angle::BETA + Angle::GAMMA, Angle::PI);
        assert_eq!(Angle::BETA + Angle::GAMMA.times(3), Angle::TWO_PI);
    }

    #[test]
    fn intersection() {
        let p = Point::from_ints(0, 0, 5);
        let u = Point::from_ints(1, 1, 5);
        let q = Point::from_ints(4, 0, 5);
        let v = Point::from_ints(0, 1, 5);
        assert_eq!(line_intersection(&p, &u, &q, &v), Some(Point::from_ints(4, 4, 5)));
        assert_eq!(line_intersection(&p, &u, &q, &u), None);
    }
}
