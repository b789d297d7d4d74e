//! Exact computer algebra for products of (double) Schubert polynomials.
//!
//! The crate expands products `S_u(x;y) * S_v(x;z)` in the double Schubert
//! basis `{S_w(x;y)}` over the integers, with three coefficient regimes:
//! ordinary (`y = z = 0`), equivariant (`z = y`, coefficients rendered in the
//! negative-root basis), and mixed (`y`, `z` kept distinct).
//!
//! Fast expansions come from a Pieri-type path engine ([`pieri`], [`product`]):
//! one factor is reduced to its dominant approximation, written as a product
//! of factorial elementary symmetric polynomials, and multiplied in column by
//! column. Coefficients produced this way are sums over explicit paths of
//! products of differences `y_i - z_j`, so positivity is structural. A
//! divided-difference oracle ([`oracle`]) computes the same coefficients from
//! first principles for arbitrary inputs and backs every formula with an
//! independent check.

pub mod cli;
pub mod oracle;
pub mod perm;
pub mod pieri;
pub mod poly;
pub mod product;

pub use perm::Perm;
pub use pieri::CoeffMap;
pub use poly::{Poly, Var};
