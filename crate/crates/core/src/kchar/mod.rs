//! Exact Laurent-character algebra for torus localization.
//!
//! Weights are [`Monomial`]s, virtual representations are [`Character`]s, and
//! the K-theoretic Euler operator [`efrak`] lands in [`FactoredForm`], which
//! stays factored until it is evaluated at a [`PointAssignment`] or
//! specialised to a [`UnivarRatFun`]. The cohomological Euler class [`ecoh`]
//! produces products of linear forms.

mod character;
mod cohom;
mod factored;
mod monomial;
mod point;
mod univar;

pub use character::Character;
pub use cohom::{ecoh, LinearFactored};
pub use factored::{efrak, substitute_halfweights, sum_univar, FactoredForm};
pub use monomial::{Monomial, Var};
pub use point::{
    with_fresh_points, PointAssignment, PointSampler, MAX_POINT_RETRIES, SAMPLE_MAX, SAMPLE_MIN,
};
pub use univar::{Poly, UnivarRatFun};
