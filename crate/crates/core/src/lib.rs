//! Exact decision and computation of rational first integrals of foliations
//! of the projective plane.
//!
//! The crate is organised bottom-up:
//!
//! * [`numfield`]: exact arithmetic in Q and in simple number fields.
//! * [`polyforms`]: homogeneous forms, projective 1-forms and wedge tests.
//! * [`cluster`]: configurations of infinitely near points and their
//!   Picard lattice.
//! * [`linsys`]: linear systems of curves with assigned virtual multiplicities.
//! * [`cones`]: exact polyhedral cones under the intersection pairing.
//! * [`engine`]: the decision algorithms and the end-to-end pipeline.
//! * [`resolve`]: resolution of the foliation's singularities over the base field.

#![allow(clippy::needless_range_loop)]

pub mod cluster;
pub mod cones;
pub mod engine;
pub mod io;
pub mod linalg;
pub mod linsys;
pub mod numfield;
pub mod parse;
pub mod polyforms;
pub mod resolve;
