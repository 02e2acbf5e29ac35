//! Exact solvers, brute-force oracles and instance generators for scheduling
//! edge maintenance in a network so that two terminals stay connected as long
//! as possible.
//!
//! All time values and objective values are exact [`Rational`]s. The crate is
//! `no_std` and only needs `alloc`.

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;

pub mod approx;
pub mod error;
pub mod eval;
pub mod gen;
pub mod graph;
pub mod instance;
pub mod lp;
pub mod objective;
pub mod oracle;
pub mod path;
pub mod preemptive;
pub mod rational;
pub mod schedule;
mod slots;

pub use error::{Error, Result};
pub use objective::Objective;
pub use instance::{Edge, Instance, InstanceBuilder, Preemption};
pub use rational::Rational;
pub use schedule::{Interval, IntervalSet, Schedule};
