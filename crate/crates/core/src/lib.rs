//! Λ-configurations of polygonal arcs.
//!
//! Every open arc of positive thickness has a pair of parallel support
//! lines and three touch points `p1 ≺ p2 ≺ p3`, consecutive along the arc,
//! with `p1` and `p3` on one line and `p2` alone on the other. This crate
//! finds all such configurations of a polyline, replays the rotating
//! support-line argument that produces one, verifies certificates, and
//! checks that simple arcs have exactly one.

pub mod arc;
pub mod cli;
pub mod error;
pub mod finder;
pub mod gen;
pub mod geom;
pub mod report;
pub mod support;
pub mod svg;

pub use arc::{ParamPoint, ParamPos, PolyArc};
pub use error::{Error, Result};
pub use finder::{
    direction_clusters, extract_triple, find_all, find_by_proof_trace, verify_certificate,
    LambdaConfig, ProofTrace,
};
pub use geom::{Angle, Point2};
pub use support::{touch_set, SupportLine, TouchSet};
