//! Exact computations behind the existence argument for Bridgeland stability
//! conditions on smooth projective varieties.
//!
//! The crate is organised bottom-up:
//!
//! - [`perm`]: the symmetric group in one-line notation.
//! - [`poly`]: sparse polynomials over ℚ in `x₁..xₙ, y₁..yₙ` with the
//!   `Sₙ`-action and divided-difference operators.
//! - [`schubert`]: single and double Schubert polynomials, the staircase
//!   products and expansion in the Schubert basis over symmetric polynomials.
//! - [`soergel`]: the bimodule `R ⊗_{R^{Sₙ}} R`, the elements `S_w`, the
//!   evaluation maps `F_w` and the filtration `Γ_j`.
//! - [`kclass`]: the numerical lattice of `Eⁿ`, central charges `Z^{a,b}` and
//!   their twist/isogeny transformation laws.
//! - [`stability`]: exact phase comparison, split HN filtrations and the
//!   twist-chain relation calculus.
//!
//! Every identity check is carried out in exact rational arithmetic.

pub mod cert;
pub mod demazure;
pub mod error;
pub mod kclass;
mod linalg;
pub mod perm;
pub mod poly;
pub mod rational;
pub mod sample;
pub mod schubert;
pub mod soergel;
pub mod stability;

pub use error::{Error, Result};
pub use kclass::{ChargeParams, ExactComplex, LatticeVector};
pub use perm::Permutation;
pub use poly::Poly;
pub use rational::Rational;
pub use stability::{Phase, RelationFact, SplitSheafP1};
