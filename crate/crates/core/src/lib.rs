//! Solvers for turning the cliques of a partitioned, drawn graph into
//! spanning paths so that no two kept edges cross.
//!
//! An [`Instance`](model::Instance) is a simple topological graph, abstracted
//! as its edge-pair crossing relation, together with a partition of the
//! vertices into cliques. A [`Solution`](model::Solution) picks one spanning
//! path per clique; the edges off the path are removed, and the solution is
//! valid when no crossing survives among kept edges.
//!
//! * [`exact`]: complete backtracking search, any clique size.
//! * [`twosat`]: polynomial decision for cliques of size at most three.
//! * [`oneplane`]: linear-time decision when every edge has at most one
//!   crossing.
//! * [`reduction`]: gadget construction from positive 1-in-3-SAT, with
//!   witness translation both ways and a brute-force formula oracle.
//! * [`generator`]: seeded random instances and formulas.
//! * [`format`] and [`cli`]: text formats and the `c2p` command line.

pub mod cli;
pub mod exact;
pub mod format;
pub mod generator;
pub mod model;
pub mod oneplane;
pub mod reduction;
pub mod twosat;
pub mod verify;

pub use model::{build_instance, Instance, InstanceBuilder, Outcome, Solution};
