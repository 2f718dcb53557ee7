//! Tangency graphs of non-overlapping ball configurations.
//!
//! A [`geometry::Configuration`] is a finite set of closed balls in
//! `R^d` that may touch but not overlap, held either in exact rationals or in
//! binary64 with a relative tolerance. [`tangency::build_graph`] turns it into
//! the graph whose edges are touching pairs, and [`colouring`] colours that
//! graph greedily, with DSATUR, or exactly by branch and bound.
//!
//! [`constructions`] provides simplex cliques, kissing configurations and the
//! bound table `d + 2 <= chi(d) <= kappa(d) + 1 <= 3^d`; [`packing_gen`]
//! generates random tangent packings and Apollonian gaskets; [`harness`] runs
//! and summarises batches of experiments.

pub mod colouring;
pub mod constructions;
pub mod geometry;
pub mod harness;
pub mod packing_gen;
pub mod tangency;
