//! Rule identifiers and winner determination on nominee sets.

use std::fmt;
use std::str::FromStr;

use crate::condorcet::{copeland_from_matrix, maximin_from_matrix, ranked_pairs_from_matrix, Alpha, TieBreak};
use crate::election::{Candidate, Election, MajorityMatrix, ReducedElection};
use crate::scoring::{positional_scores, score_winners, ScoringRule};

/// Any supported voting rule.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Rule {
    Scoring(ScoringRule),
    Copeland(Alpha),
    Maximin,
    RankedPairs(TieBreak),
}

impl Rule {
    pub fn borda() -> Self {
        Rule::Scoring(ScoringRule::Borda)
    }

    pub fn tiebreak(&self) -> Option<TieBreak> {
        match self {
            Rule::RankedPairs(tb) => Some(*tb),
            _ => None,
        }
    }

    fn needs_matrix(&self) -> bool {
        !matches!(self, Rule::Scoring(_))
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Rule::Scoring(s) => write!(f, "{s}"),
            Rule::Copeland(a) => write!(f, "copeland:{a}"),
            Rule::Maximin => write!(f, "maximin"),
            Rule::RankedPairs(TieBreak::Lexicographic) => write!(f, "rankedpairs:lex"),
            Rule::RankedPairs(tb) => write!(f, "rankedpairs:{tb}"),
        }
    }
}

impl FromStr for Rule {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let lower = s.to_ascii_lowercase();
        if lower == "maximin" {
            return Ok(Rule::Maximin);
        }
        if lower == "llull" {
            return Ok(Rule::Copeland(Alpha::ONE));
        }
        if let Some(a) = lower.strip_prefix("copeland:") {
            return a.parse().map(Rule::Copeland).map_err(|e| e.to_string());
        }
        if lower == "copeland" {
            return Ok(Rule::Copeland(Alpha::HALF));
        }
        if lower == "rankedpairs" {
            return Ok(Rule::RankedPairs(TieBreak::Lexicographic));
        }
        if let Some(tb) = lower.strip_prefix("rankedpairs:") {
            return tb.parse().map(Rule::RankedPairs);
        }
        s.parse().map(Rule::Scoring).map_err(|e: crate::scoring::ScoringError| e.to_string())
    }
}

/// Winner determination for one election under one rule, evaluated on many
/// nominee sets. Pairwise counts do not change under restriction, so the
/// majority matrix is built once.
pub struct Judge<'a> {
    election: &'a Election,
    rule: &'a Rule,
    matrix: Option<MajorityMatrix>,
}

/// The outcome on one nominee set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub winners: Vec<Candidate>,
    /// Locked arcs, for Ranked Pairs only.
    pub locked: Vec<(Candidate, Candidate)>,
    /// Per-candidate scores scaled to integers (Copeland: times the
    /// denominator of α); empty for Ranked Pairs.
    pub scores: Vec<u64>,
}

impl Outcome {
    pub fn is_winner(&self, c: Candidate) -> bool {
        self.winners.contains(&c)
    }

    /// Whether `w` strictly beats `p`: a higher score, or for Ranked Pairs a
    /// locked arc `w -> p`.
    pub fn beats(&self, w: Candidate, p: Candidate) -> bool {
        if self.scores.is_empty() {
            self.locked.contains(&(w, p))
        } else {
            self.scores[w] > self.scores[p]
        }
    }

    /// A candidate beating `p`, if `p` is not a winner: the lowest-index
    /// winner, or for Ranked Pairs the lowest-index source of a locked arc
    /// into `p`.
    pub fn witness_against(&self, p: Candidate) -> Option<Candidate> {
        if self.is_winner(p) {
            return None;
        }
        if self.scores.is_empty() {
            self.locked.iter().filter(|&&(_, b)| b == p).map(|&(a, _)| a).min()
        } else {
            self.winners.first().copied()
        }
    }
}

impl<'a> Judge<'a> {
    pub fn new(election: &'a Election, rule: &'a Rule) -> Self {
        let matrix = rule.needs_matrix().then(|| election.majority());
        Judge { election, rule, matrix }
    }

    pub fn rule(&self) -> &Rule {
        self.rule
    }

    pub fn election(&self) -> &'a Election {
        self.election
    }

    pub fn outcome(&self, nominees: &[Candidate]) -> Outcome {
        let mut sorted = nominees.to_vec();
        sorted.sort_unstable();
        match self.rule {
            Rule::Scoring(s) => {
                let red = ReducedElection::restrict(self.election, &sorted);
                let table = positional_scores(&red, s);
                let winners = score_winners(&table);
                let mut scores = vec![0; self.election.num_candidates()];
                for (c, v) in table.iter() {
                    scores[c] = v;
                }
                Outcome { winners, locked: Vec::new(), scores }
            }
            Rule::Copeland(alpha) => {
                let m = self.matrix.as_ref().expect("matrix");
                let t = copeland_from_matrix(m, &sorted, *alpha);
                let mut scores = vec![0; self.election.num_candidates()];
                for &c in &sorted {
                    scores[c] = t.scaled(c);
                }
                Outcome { winners: t.winners(), locked: Vec::new(), scores }
            }
            Rule::Maximin => {
                let m = self.matrix.as_ref().expect("matrix");
                let t = maximin_from_matrix(m, &sorted);
                let winners = score_winners(&t);
                let mut scores = vec![0; self.election.num_candidates()];
                for (c, v) in t.iter() {
                    scores[c] = v;
                }
                Outcome { winners, locked: Vec::new(), scores }
            }
            Rule::RankedPairs(tb) => {
                let m = self.matrix.as_ref().expect("matrix");
                let r = ranked_pairs_from_matrix(m, &sorted, *tb);
                Outcome { winners: r.winners, locked: r.locked, scores: Vec::new() }
            }
        }
    }

    pub fn winners(&self, nominees: &[Candidate]) -> Vec<Candidate> {
        self.outcome(nominees).winners
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_round_trip() {
        for s in ["borda", "short:1", "short:2,1", "vetolike:1;0", "copeland:1/2", "copeland:0/1", "maximin", "rankedpairs:lex", "rankedpairs:seed=9"]
        {
            let r: Rule = s.parse().unwrap();
            assert_eq!(r.to_string(), s);
        }
        assert_eq!("copeland:2/4".parse::<Rule>().unwrap(), Rule::Copeland(Alpha::HALF));
        assert_eq!("rankedpairs".parse::<Rule>().unwrap(), Rule::RankedPairs(TieBreak::Lexicographic));
        assert!("copeland:3/2".parse::<Rule>().is_err());
        assert!("nonsense".parse::<Rule>().is_err());
    }
}
