//! Exact arithmetic in `Z[λ]`, `λ = 2cos(π/q)`, and its fraction field.

mod context;
mod element;
mod interval;
mod minpoly;
mod sqrt;
mod text;

pub use context::{make_context, RingContext, MAX_Q};
pub use element::{ProjPoint, RingInt, RingRat};
pub use interval::Interval;
pub use minpoly::{cyclotomic, min_poly_2cos};
pub use sqrt::sqrt_in_ring;
pub use text::{parse_proj_point, parse_ring_int, parse_ring_rat};
