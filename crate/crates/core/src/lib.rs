//! Exact point counting and Frobenius analysis for elliptic K3 surfaces
//! carrying an automorphism of order 11.
//!
//! The families handled here are
//!
//! * `y^2 = x^3 + e x^2 + t^11 - t` (the "epsilon" family),
//! * `y^2 = x^3 + g x + t^11 - t` (the "gamma" family),
//! * `y^2 + x y = x^3 + t^11` (the "uniform" model, any characteristic).
//!
//! In characteristic 11 the translation `t -> t + 1` is an automorphism of
//! order 11 commuting with Frobenius. Counting fixed points of
//! `phi^n . Frob_q` for all `n` at once, over `F_11` and `F_121` only, gives the
//! relative traces of Frobenius on the eigenspaces of `phi`, and from these the
//! degree-20 characteristic polynomial of Frobenius on the orthogonal
//! complement of the fibre/zero-section plane. [`analysis`] then turns that
//! polynomial into a Picard-number upper bound and the height of the formal
//! Brauer group.
//!
//! Everything that decides a result is exact: residues, big integers,
//! rationals and the cyclotomic field `Q(zeta_11)`. The only floating point is
//! the advisory unit-circle check in [`analysis`].

pub mod analysis;
pub mod cyclotomic;
pub mod delsarte;
pub mod equivariant;
mod error;
pub mod ffield;
pub mod kodaira;
pub mod polynomials;
pub mod surface;

pub use error::{Error, ErrorKind, Result};
