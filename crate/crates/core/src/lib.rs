//! Exact torus-localization engine for the K-theoretic gauge origami
//! partition function on two intersecting lines.
//!
//! * [`kchar`]: Laurent characters, Euler operators, exact evaluation.
//! * [`vertex`]: fixed points and their virtual tangent characters.
//! * [`series`]: truncated q-series, plethystic exponentials and the
//!   localized, closed-form, twisted and cohomological partition functions.
//! * [`oracle`]: the same invariants recomputed on the Quot scheme of the plane.
//! * [`limits`]: framing limits and the factorization into rank-one pieces.
//! * [`suites`]: named verification suites shared by the CLI and the tests.

pub mod error;
pub mod kchar;
pub mod limits;
pub mod oracle;
pub mod series;
pub mod suites;
pub mod vertex;

pub use error::{Error, Result};
