//! Decision procedures for Necessary President.
//!
//! Every solver answers YES, or NO together with a nominee set on which the
//! distinguished candidate loses and a candidate beating it there.

mod borda;
mod brute;
mod copeland;
pub mod matching;
mod maximin;
pub mod short;
mod vetolike;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::election::{Candidate, PartyInstance};
use crate::rule::{Judge, Rule};
use crate::scoring::ScoringRule;

pub use borda::{borda_delta, solve_borda};
pub use brute::{nomination_count, solve_bruteforce, DEFAULT_BRUTEFORCE_BUDGET};
pub use copeland::{copeland_pair_delta, solve_copeland};
pub use matching::saturating_matching;
pub use maximin::solve_maximin;
pub use short::{solve_short_fpt, solve_short_fpt_with_budget, StructureGuess, DEFAULT_GUESS_BUDGET};
pub use vetolike::{solve_vetolike_fpt, solve_vetolike_fpt_with_budget};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Answer {
    Yes,
    No,
}

impl fmt::Display for Answer {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Answer::Yes => "YES",
            Answer::No => "NO",
        })
    }
}

/// A nominee set containing p on which p is not a winner, and a nominee
/// beating p there.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Certificate {
    /// Sorted by candidate index.
    pub nominees: Vec<Candidate>,
    pub witness: Candidate,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SolverKind {
    BruteForce,
    Borda,
    Copeland,
    Maximin,
    Short,
    VetoLike,
}

impl SolverKind {
    pub fn name(&self) -> &'static str {
        match self {
            SolverKind::BruteForce => "bruteforce",
            SolverKind::Borda => "borda",
            SolverKind::Copeland => "copeland",
            SolverKind::Maximin => "maximin",
            SolverKind::Short => "short",
            SolverKind::VetoLike => "vetolike",
        }
    }

    /// The specialized solver for `rule`, if one exists.
    pub fn specialized_for(rule: &Rule) -> Option<SolverKind> {
        match rule {
            Rule::Scoring(ScoringRule::Borda) => Some(SolverKind::Borda),
            Rule::Scoring(ScoringRule::Short(_)) => Some(SolverKind::Short),
            Rule::Scoring(ScoringRule::VetoLike { .. }) => Some(SolverKind::VetoLike),
            Rule::Copeland(_) => Some(SolverKind::Copeland),
            Rule::Maximin => Some(SolverKind::Maximin),
            Rule::RankedPairs(_) => None,
        }
    }

    /// Auto routing: the specialized solver when one exists, brute force
    /// otherwise.
    pub fn auto(rule: &Rule) -> SolverKind {
        SolverKind::specialized_for(rule).unwrap_or(SolverKind::BruteForce)
    }
}

impl fmt::Display for SolverKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SolverKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(match s {
            "bruteforce" | "brute" => SolverKind::BruteForce,
            "borda" => SolverKind::Borda,
            "copeland" => SolverKind::Copeland,
            "maximin" => SolverKind::Maximin,
            "short" => SolverKind::Short,
            "vetolike" => SolverKind::VetoLike,
            _ => return Err(format!("unknown solver `{s}`")),
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdict {
    pub answer: Answer,
    pub certificate: Option<Certificate>,
    pub rule: Rule,
    pub solver: SolverKind,
    /// Guesses (or nominations, for brute force) examined.
    pub guesses: u64,
    pub notes: Vec<String>,
}

impl Verdict {
    pub(crate) fn yes(rule: Rule, solver: SolverKind, guesses: u64) -> Self {
        Verdict { answer: Answer::Yes, certificate: None, rule, solver, guesses, notes: Vec::new() }
    }

    pub(crate) fn no(rule: Rule, solver: SolverKind, guesses: u64, certificate: Certificate) -> Self {
        Verdict { answer: Answer::No, certificate: Some(certificate), rule, solver, guesses, notes: Vec::new() }
    }

    pub fn is_yes(&self) -> bool {
        self.answer == Answer::Yes
    }

    pub(crate) fn with_note(mut self, note: impl Into<String>) -> Self {
        self.notes.push(note.into());
        self
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolveError {
    #[error("budget exceeded: {what} needs {needed} but the budget is {budget}")]
    BudgetExceeded { what: &'static str, needed: String, budget: u64 },
    #[error("solver `{solver}` does not handle rule `{rule}`")]
    RuleMismatch { solver: SolverKind, rule: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CertificateError {
    #[error("nominees do not form a nomination: {0}")]
    NotANomination(String),
    #[error("distinguished candidate is not nominated")]
    MissingDistinguished,
    #[error("distinguished candidate wins the reduced election")]
    DistinguishedWins,
    #[error("witness is not a nominee")]
    WitnessNotNominated,
    #[error("witness does not beat the distinguished candidate")]
    WitnessDoesNotBeat,
}

/// Re-validates a NO certificate by direct winner determination.
pub fn check_certificate(instance: &PartyInstance, rule: &Rule, cert: &Certificate) -> Result<(), CertificateError> {
    instance.reduce(&cert.nominees).map_err(|e| CertificateError::NotANomination(e.to_string()))?;
    let p = instance.distinguished();
    if !cert.nominees.contains(&p) {
        return Err(CertificateError::MissingDistinguished);
    }
    if !cert.nominees.contains(&cert.witness) || cert.witness == p {
        return Err(CertificateError::WitnessNotNominated);
    }
    let out = Judge::new(instance.election(), rule).outcome(&cert.nominees);
    if out.is_winner(p) {
        return Err(CertificateError::DistinguishedWins);
    }
    if !out.beats(cert.witness, p) {
        return Err(CertificateError::WitnessDoesNotBeat);
    }
    Ok(())
}

/// Builds a certificate from a nominee set, if p loses there. `preferred` is
/// used as the witness when it beats p.
pub(crate) fn certify(judge: &Judge<'_>, p: Candidate, nominees: &[Candidate], preferred: Option<Candidate>) -> Option<Certificate> {
    let out = judge.outcome(nominees);
    if out.is_winner(p) {
        return None;
    }
    let witness = match preferred {
        Some(w) if out.beats(w, p) => w,
        _ => out.witness_against(p)?,
    };
    let mut nominees = nominees.to_vec();
    nominees.sort_unstable();
    Some(Certificate { nominees, witness })
}

/// Runs `solver` on `instance` under `rule`.
pub fn solve_with(instance: &PartyInstance, rule: &Rule, solver: SolverKind, brute_budget: u64) -> Result<Verdict, SolveError> {
    let mismatch = || SolveError::RuleMismatch { solver, rule: rule.to_string() };
    match (solver, rule) {
        (SolverKind::BruteForce, _) => solve_bruteforce(instance, rule, brute_budget),
        (SolverKind::Borda, Rule::Scoring(ScoringRule::Borda)) => Ok(solve_borda(instance)),
        (SolverKind::Copeland, Rule::Copeland(alpha)) => Ok(solve_copeland(instance, *alpha)),
        (SolverKind::Maximin, Rule::Maximin) => Ok(solve_maximin(instance)),
        (SolverKind::Short, Rule::Scoring(s @ ScoringRule::Short(_))) => solve_short_fpt(instance, s),
        (SolverKind::VetoLike, Rule::Scoring(s @ ScoringRule::VetoLike { .. })) => solve_vetolike_fpt(instance, s),
        _ => Err(mismatch()),
    }
}

/// Auto-routed solve.
pub fn solve(instance: &PartyInstance, rule: &Rule) -> Result<Verdict, SolveError> {
    solve_with(instance, rule, SolverKind::auto(rule), DEFAULT_BRUTEFORCE_BUDGET)
}
