//! Exact computations on N-tilings of a triangle by congruent copies of a tile
//! whose angles satisfy `3α + 2β = π`.
//!
//! * [`numtheory`] solves `M² + N = 2K²` and derives tile dimensions.
//! * [`quadfield`] is exact arithmetic in `Q(√D)` with `D = 4K² − M²`.
//! * [`tiling`] holds the data model, the file format and the analyses.
//! * [`constructor`] builds quadratic and triquadratic tilings.
//! * [`search`] enumerates boundary tilings by backtracking.
//! * [`render`] writes SVG and pstricks figures.

pub mod constructor;
pub mod numtheory;
pub mod quadfield;
pub mod render;
pub mod search;
pub mod tiling;

use num_bigint::BigInt;
use num_rational::BigRational;

pub(crate) fn rational(n: BigInt, d: BigInt) -> BigRational {
    BigRational::new(n, d)
}
