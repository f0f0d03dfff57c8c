//! Monogamy of contextual (KCBS-type) and Bell inequalities on commutation graphs.
//!
//! The crate is organised by subsystem:
//!
//! * [`graph`]: the commutation graph model and exact graph algorithms
//!   (chordality, independence number, clique cover, maximal cliques,
//!   chordal vertex decompositions).
//! * [`jpd`]: behaviors, clique trees and the constructive joint probability
//!   distribution for chordal graphs, plus an LP feasibility oracle.
//! * [`nd`]: the no-disturbance polytope as an exact linear program and
//!   classical (noncontextual) maxima.
//! * [`monogamy`]: clique-cover based monogamy verdicts and the two-pentagon
//!   minimality scan.
//! * [`quantum`]: the explicit four-dimensional projector families and their
//!   spectral bounds.
//! * [`bell`]: CHSH monogamy for three parties through the same machinery.
//!
//! Everything combinatorial is exact (`BigRational`); floating point is
//! confined to [`quantum`].

pub mod bell;
pub mod error;
pub mod fixtures;
pub mod generate;
pub mod graph;
pub mod jpd;
pub mod limits;
pub mod lp;
pub mod monogamy;
pub mod nd;
pub mod quantum;
pub mod rational;

pub use error::{Error, Result};
pub use graph::CommutationGraph;
pub use limits::Limits;
pub use rational::Rational;
