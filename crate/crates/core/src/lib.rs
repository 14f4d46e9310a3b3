//! Cyclic, centered and horocyclic polygons in the hyperbolic plane.
//!
//! Given side lengths `(d_0, …, d_{n−1})` this crate decides whether a convex
//! polygon with those sides can be inscribed in a circle, whether it contains
//! the circle's center, computes the circumradius `J`, the central, base and
//! vertex angles, the radius-`R` defect with its derivatives, and explicit
//! vertex coordinates in the Poincaré disk or the upper half-plane.

pub mod angles;
pub mod embed;
pub mod error;
pub mod jacobian;
pub mod params;
pub mod radius;
mod solve;
pub mod trig;

pub use angles::{
    angles, angles_with_tol, defect, defect_lower_bound_horocyclic, defect_sector_form,
    defect_with_tol, isosceles_fan, min_defect_bc3, monotone_path, regular_defect, AngleData,
    FanMode, IsoscelesFan,
};
pub use embed::{
    embed_cyclic, embed_cyclic_with_tol, embed_horocyclic, emit, geodesic_segments, Embedding,
    Format, Segment,
};
pub use error::{Error, Result};
pub use jacobian::{jacobian, jacobian_with_tol, Jacobian, OneSided};
pub use params::{
    b0, b0_closed_n3, b0_closed_n4, canonicalize, classify, congruent, h0, is_cyclic_realizable,
    CanonicalForm, PolygonClass, SideLengths, DEFAULT_TOL,
};
pub use radius::{
    quad_diagonal, radius, radius_closed, radius_closed_quad, radius_closed_tri, radius_regular,
    radius_with_tol, Equation, RadiusResult,
};
pub use trig::{
    apex_angle, apex_angle_dj, apex_angle_excess, apex_half_tan, apex_half_tan_excess, base_angle,
    base_angle_excess, horocyclic_base_angle, model_distance, sector_defect, HPoint, Model,
};
