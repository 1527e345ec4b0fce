//! Three-weight trace codes over prime fields.
//!
//! For an odd prime `p`, `q = p^m` and `a ∈ F_p`, the code `C_{D_a}` has one
//! coordinate per nonzero `d ∈ GF(q)` with `Tr(d) = a`, and the codeword for
//! `b ∈ GF(q)` is `(Tr(b d²))_d`. This crate builds these codes, enumerates
//! their weight distributions exhaustively, and checks them and the
//! character sums behind them against closed forms.
//!
//! - [`field`]: GF(p^m) arithmetic, trace, quadratic character.
//! - [`character`]: additive characters, Gauss sums and related exponential sums.
//! - [`code`]: defining sets, codewords, weight distributions, generator matrices.
//! - [`theory`]: closed-form predictions.
//! - [`verify`]: closed form vs brute force, check by check.
//! - [`cli`]: the `tracecode` command line.

pub mod character;
pub mod cli;
pub mod code;
pub mod error;
pub mod field;
pub mod signs;
pub mod theory;
pub mod verify;

pub use character::{CharacterSums, RootsOfUnity, SumPair};
pub use code::{CodeSummary, DefiningSet, GeneratorMatrix, WeightDistribution};
pub use error::{Error, Result};
pub use field::{Field, FieldSpec, FpElement, FqElement};
pub use theory::TheoreticalDistribution;

/// Complex value used for character sums.
pub type ComplexValue = num_complex::Complex<f64>;
/// Single-precision variant of [`ComplexValue`].
pub type ComplexValue32 = num_complex::Complex<f32>;
/// Character sums evaluated in double precision.
pub type CharacterSums64<'f> = CharacterSums<'f, f64>;
