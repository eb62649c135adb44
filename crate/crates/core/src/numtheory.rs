//! The tiling equation `M² + N = 2K²` and the tile/triangle dimensions it fixes.
//!
//! A solution `(M, K)` with `M² < N` pins down the tile up to similarity
//! (`2 sin(α/2) = M/K`) and the only triangle `ABC` that could be tiled with it.

use num_integer::Roots;
use num_rational::BigRational;
use num_traits::One;
use serde::Serialize;

use crate::rational;

/// One solution of `M² + N = 2K²` with `M² < N`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct TilingEquationSolution {
    pub n: u64,
    pub m: u64,
    pub k: u64,
}

impl TilingEquationSolution {
    /// Checks the equation and the `M² < N` side condition.
    pub fn new(n: u64, m: u64, k: u64) -> Option<Self> {
        let (n128, m128, k128) = (n as u128, m as u128, k as u128);
        if m == 0 || k == 0 || m128 * m128 + n128 != 2 * k128 * k128 || m128 * m128 >= n128 {
            return None;
        }
        Some(Self { n, m, k })
    }

    /// Builds the solution belonging to `(M, K)`, with `N = 2K² − M²`.
    pub fn from_mk(m: u64, k: u64) -> Option<Self> {
        let n = (2 * (k as u128) * (k as u128)).checked_sub((m as u128) * (m as u128))?;
        Self::new(u64::try_from(n).ok()?, m, k)
    }

    /// `K | M²`, the condition under which a (triquadratic) tiling exists.
    pub fn divisible(&self) -> bool {
        (self.m * self.m) % self.k == 0
    }
}

/// Factorization of `N` split into a square part and a squarefree part.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AdmissibilityReport {
    pub n: u64,
    pub factorization: Vec<(u64, u32)>,
    pub square_part: u64,
    pub squarefree_part: u64,
    pub admissible: bool,
    pub offending_primes: Vec<u64>,
}

/// Every length and scalar derived from one solution.
///
/// Integer shapes are in "K-scaled" units: the tile is `(MK, K² − M², K²)`,
/// which is `K` times `(a, b, c) = (M, K − M²/K, K)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TileSpec {
    pub sol: TilingEquationSolution,
    pub a: u64,
    pub c: u64,
    pub b: BigRational,
    pub s: BigRational,
    pub t: BigRational,
    pub lambda: u64,
    pub divisible: bool,
    pub j: Option<u64>,
    pub tile_shape_int: [u64; 3],
    pub abc_shape_int: [u64; 3],
}

impl TileSpec {
    pub fn n(&self) -> u64 {
        self.sol.n
    }
    pub fn m(&self) -> u64 {
        self.sol.m
    }
    pub fn k(&self) -> u64 {
        self.sol.k
    }

    /// `D = 4K² − M²`, the radicand of the coordinate field.
    pub fn radicand(&self) -> u64 {
        4 * self.k() * self.k() - self.m() * self.m()
    }

    /// Scaled side lengths `(a, b, c)` of one tile.
    pub fn scaled_sides(&self) -> [u64; 3] {
        self.tile_shape_int
    }

    /// Scaled side lengths `(X, Y, Z) = (|BC|, |AC|, |AB|)` of the triangle.
    pub fn scaled_abc(&self) -> [u64; 3] {
        self.abc_shape_int
    }
}

/// All `(M, K)` with `M ≥ 1`, `M² < N` and `M² + N = 2K²`, sorted by `M`.
pub fn solve_tiling_equation(n: u64) -> Vec<TilingEquationSolution> {
    if n < 2 {
        return Vec::new();
    }
    let m_max = (n - 1).sqrt();
    (1..=m_max)
        .filter_map(|m| {
            let twice = m as u128 * m as u128 + n as u128;
            if twice % 2 != 0 {
                return None;
            }
            let k2 = twice / 2;
            let k = k2.sqrt();
            (k * k == k2).then(|| TilingEquationSolution { n, m, k: k as u64 })
        })
        .collect()
}

/// Enumerates `M = 1..⌊√(N−1)⌋` and tests `(M² + N)/2` for being a square
/// with floating point followed by exact correction; kept deliberately naive
/// so that it can serve as an oracle for [`solve_tiling_equation`].
pub fn brute_force_solutions(n: u64) -> Vec<(u64, u64)> {
    let mut out = Vec::new();
    let mut m = 1u64;
    while m * m < n {
        let total = m * m + n;
        if total % 2 == 0 {
            let half = total / 2;
            let mut k = (half as f64).sqrt() as u64;
            while k * k > half {
                k -= 1;
            }
            while (k + 1) * (k + 1) <= half {
                k += 1;
            }
            if k * k == half {
                out.push((m, k));
            }
        }
        m += 1;
    }
    out
}

/// Trial-division factorization, ascending primes.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p * p <= n {
        if n % p == 0 {
            let mut e = 0;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

fn prime_allowed(p: u64) -> bool {
    p == 2 || p % 8 == 1 || p % 8 == 7
}

/// Is `N` a square times a product of distinct primes, each 2 or `±1 mod 8`?
pub fn classify_admissible(n: u64) -> AdmissibilityReport {
    let factorization = factorize(n);
    let mut square_part = 1u64;
    let mut squarefree_part = 1u64;
    let mut offending_primes = Vec::new();
    for &(p, e) in &factorization {
        square_part *= p.pow(e - e % 2);
        if e % 2 == 1 {
            squarefree_part *= p;
            if !prime_allowed(p) {
                offending_primes.push(p);
            }
        }
    }
    AdmissibilityReport {
        n,
        factorization,
        square_part,
        squarefree_part,
        admissible: offending_primes.is_empty(),
        offending_primes,
    }
}

fn is_square(n: u64) -> bool {
    let r = n.sqrt();
    r * r == n
}

/// One row of [`admissibility_consistency`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ConsistencyRow {
    pub n: u64,
    /// `N` is a square or twice a square, where the `M² < N` regime is not claimed.
    pub excluded: bool,
    pub solvable: bool,
    pub admissible: bool,
}

impl ConsistencyRow {
    pub fn consistent(&self) -> bool {
        // solvable ⇒ admissible always; the converse only outside the excluded forms
        (!self.solvable || self.admissible) && (self.excluded || !self.admissible || self.solvable)
    }
}

/// Cross-checks the solver against the prime-form predicate for all `N ≤ n_max`.
///
/// Returns the full table, or the list of mismatching rows.
pub fn admissibility_consistency(n_max: u64) -> Result<Vec<ConsistencyRow>, Vec<ConsistencyRow>> {
    let rows: Vec<ConsistencyRow> = (1..=n_max)
        .map(|n| ConsistencyRow {
            n,
            excluded: is_square(n) || (n % 2 == 0 && is_square(n / 2)),
            solvable: !solve_tiling_equation(n).is_empty(),
            admissible: classify_admissible(n).admissible,
        })
        .collect();
    let bad: Vec<ConsistencyRow> = rows.iter().copied().filter(|r| !r.consistent()).collect();
    if bad.is_empty() {
        Ok(rows)
    } else {
        Err(bad)
    }
}

/// Multiplies `M + K√2` by the unit `3 ± 2√2`, preserving `2K² − M²`.
pub fn descent_step(m: i128, k: i128, sign: i8) -> (i128, i128) {
    let s = if sign >= 0 { 1 } else { -1 };
    (3 * m + s * 4 * k, 3 * k + s * 2 * m)
}

/// Derives all tile and triangle dimensions from a solution.
pub fn derive_tile(sol: TilingEquationSolution) -> TileSpec {
    let TilingEquationSolution { n, m, k } = sol;
    let divisible = sol.divisible();
    TileSpec {
        sol,
        a: m,
        c: k,
        b: rational(((k * k - m * m) as i64).into(), (k as i64).into()),
        s: rational((m as i64).into(), (k as i64).into()),
        t: rational((n as i64).into(), ((k * k) as i64).into()),
        lambda: k,
        divisible,
        j: divisible.then(|| m * m / k),
        tile_shape_int: [m * k, n - k * k, k * k],
        abc_shape_int: [m * n, k * (n - k * k), k * k * k],
    }
}

/// Verdict of [`tiling_exists`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Existence {
    Yes(TilingEquationSolution),
    No,
}

/// A tiling exists iff some solution has `K | M²`; the witness has least `M`.
pub fn tiling_exists(n: u64) -> Existence {
    solve_tiling_equation(n)
        .into_iter()
        .find(|s| s.divisible())
        .map_or(Existence::No, Existence::Yes)
}

/// Exact `b·c = c² − a²` in the unscaled units `a = M`, `c = K`.
pub fn sides_consistent(spec: &TileSpec) -> bool {
    let a = BigRational::from_integer((spec.a as i64).into());
    let c = BigRational::from_integer((spec.c as i64).into());
    &spec.b * &c == &c * &c - &a * &a && spec.b.is_integer() == spec.divisible && spec.s == &a / &c && {
        let one = BigRational::one();
        spec.t == BigRational::from_integer(2.into()) - &spec.s * &spec.s && &spec.b / &c == one - &spec.s * &spec.s
    }
}
