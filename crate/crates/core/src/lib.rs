//! Reasoning with convex sets of probability functions, and accepting
//! statements into a corpus on probabilistic grounds.
//!
//! - [`algebra`]: finite world spaces, propositions, formula parsing.
//! - [`credal`]: distributions, credal sets, interval queries, Dutch books.
//! - [`updating`]: Bayesian and Jeffrey conditionalization.
//! - [`statinf`]: t-intervals, exact binomial intervals and tests.
//! - [`corpus`]: acceptance levels, queries, the lottery paradox, betting advice.
//! - [`cli`]: the `credence` command-line front end and its session file.

pub mod algebra;
pub mod cli;
pub mod corpus;
pub mod credal;
pub mod error;
pub mod rational;
pub mod statinf;
pub mod updating;

pub use algebra::{Proposition, WorldSpace};
pub use corpus::Corpus;
pub use credal::{CredalSet, Distribution, ProbabilityInterval};
pub use error::{Error, Result};
pub use rational::Rational;
