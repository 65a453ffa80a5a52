//! Necessary President: decide whether a distinguished candidate wins every
//! election that can arise when each party nominates one of its members.

pub mod condorcet;
pub mod election;
pub mod io;
pub mod reductions;
pub mod rule;
pub mod scoring;
pub mod solvers;

pub use condorcet::{Alpha, RankedPairsResult, TieBreak};
pub use election::{Candidate, Election, MajorityMatrix, ModelError, PartyInstance, ReducedElection, VoterType};
pub use rule::{Judge, Rule};
pub use scoring::{ScoreTable, ScoringRule};
pub use solvers::{Answer, Certificate, SolveError, Verdict};
