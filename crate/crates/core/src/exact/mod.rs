//! Exact integer, rational and polynomial arithmetic.

pub mod factor;
pub mod matrix;
pub mod poly;
pub mod polymat;
pub mod roots;
pub mod smith;
pub mod trig;

pub use matrix::{int, rat, rational_mod_z, symmetric_signature, IntMatrix, Matrix, RatMatrix};
pub use poly::{IntPoly, LaurentPoly, RatPoly};
pub use roots::{isolate_roots_in_interval, AlgebraicAngle, RealRoot};
pub use smith::{smith, smith_normal_form, SnfResult};
