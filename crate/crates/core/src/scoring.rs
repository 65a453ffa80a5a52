//! Positional scoring rules: Borda, short (ℓ-prefix) and Veto-like
//! (ℓ-suffix) families.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::election::{Candidate, ReducedElection};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScoringError {
    #[error("scoring vector needs at least one position")]
    EmptyElection,
    #[error("short prefix must be non-empty, non-increasing and end with a positive entry")]
    BadShortPrefix,
    #[error("veto-like suffix must be non-empty, non-increasing and strictly below the top value")]
    BadVetoSuffix,
    #[error("cannot parse scoring rule `{0}`")]
    Parse(String),
}

/// A family of scoring vectors, one per reduced-election size.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum ScoringRule {
    /// `(m-1, m-2, ..., 0)`.
    Borda,
    /// `(a1, ..., aℓ, 0, ..., 0)` with `a1 ≥ ... ≥ aℓ > 0`.
    Short(Vec<u64>),
    /// `(a, ..., a, a1, ..., aℓ)` with `a > a1 ≥ ... ≥ aℓ`.
    VetoLike { top: u64, suffix: Vec<u64> },
}

fn non_increasing(v: &[u64]) -> bool {
    v.windows(2).all(|w| w[0] >= w[1])
}

impl ScoringRule {
    pub fn short(prefix: Vec<u64>) -> Result<Self, ScoringError> {
        if prefix.is_empty() || !non_increasing(&prefix) || *prefix.last().unwrap() == 0 {
            return Err(ScoringError::BadShortPrefix);
        }
        Ok(ScoringRule::Short(prefix))
    }

    pub fn veto_like(top: u64, suffix: Vec<u64>) -> Result<Self, ScoringError> {
        if suffix.is_empty() || !non_increasing(&suffix) || suffix[0] >= top {
            return Err(ScoringError::BadVetoSuffix);
        }
        Ok(ScoringRule::VetoLike { top, suffix })
    }

    pub fn plurality() -> Self {
        ScoringRule::Short(vec![1])
    }

    pub fn approval(l: usize) -> Self {
        ScoringRule::Short(vec![1; l.max(1)])
    }

    pub fn veto() -> Self {
        ScoringRule::VetoLike { top: 1, suffix: vec![0] }
    }

    pub fn k_veto(l: usize) -> Self {
        ScoringRule::VetoLike { top: 1, suffix: vec![0; l.max(1)] }
    }

    /// The constant ℓ of a short or Veto-like family.
    pub fn ell(&self) -> Option<usize> {
        match self {
            ScoringRule::Borda => None,
            ScoringRule::Short(p) => Some(p.len()),
            ScoringRule::VetoLike { suffix, .. } => Some(suffix.len()),
        }
    }

    /// True when an election of `m` candidates is too small for the
    /// family's ℓ and the vector had to be truncated.
    pub fn truncates_at(&self, m: usize) -> bool {
        match self.ell() {
            Some(l) => m < l,
            None => false,
        }
    }

    /// The concrete vector for an `m`-candidate election.
    pub fn effective_vector(&self, m: usize) -> Result<Vec<u64>, ScoringError> {
        if m == 0 {
            return Err(ScoringError::EmptyElection);
        }
        Ok(match self {
            ScoringRule::Borda => (0..m as u64).rev().collect(),
            ScoringRule::Short(prefix) => {
                let mut v: Vec<u64> = prefix.iter().copied().take(m).collect();
                v.resize(m, 0);
                v
            }
            ScoringRule::VetoLike { top, suffix } => {
                let l = suffix.len();
                let mut v = vec![*top; m.saturating_sub(l)];
                v.extend_from_slice(&suffix[l - l.min(m)..]);
                v
            }
        })
    }
}

impl fmt::Display for ScoringRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn join(v: &[u64]) -> String {
            v.iter().map(u64::to_string).collect::<Vec<_>>().join(",")
        }
        match self {
            ScoringRule::Borda => write!(f, "borda"),
            ScoringRule::Short(p) => write!(f, "short:{}", join(p)),
            ScoringRule::VetoLike { top, suffix } => write!(f, "vetolike:{top};{}", join(suffix)),
        }
    }
}

fn parse_list(s: &str) -> Option<Vec<u64>> {
    s.split(',').map(|x| x.trim().parse().ok()).collect()
}

impl FromStr for ScoringRule {
    type Err = ScoringError;

    /// Accepts `borda`, `short:a1,...,aℓ`, `vetolike:a;a1,...,aℓ`, and the
    /// aliases `plurality`, `veto`, `<k>-approval`, `<k>-veto`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let lower = s.to_ascii_lowercase();
        match lower.as_str() {
            "borda" => return Ok(ScoringRule::Borda),
            "plurality" => return Ok(ScoringRule::plurality()),
            "veto" => return Ok(ScoringRule::veto()),
            _ => {}
        }
        if let Some(rest) = lower.strip_prefix("short:") {
            let prefix = parse_list(rest).ok_or_else(|| ScoringError::Parse(s.into()))?;
            return ScoringRule::short(prefix);
        }
        if let Some(rest) = lower.strip_prefix("vetolike:") {
            let (top, suffix) = rest.split_once(';').ok_or_else(|| ScoringError::Parse(s.into()))?;
            let top = top.trim().parse().map_err(|_| ScoringError::Parse(s.into()))?;
            let suffix = parse_list(suffix).ok_or_else(|| ScoringError::Parse(s.into()))?;
            return ScoringRule::veto_like(top, suffix);
        }
        if let Some(k) = lower.strip_suffix("-approval") {
            let k: usize = k.parse().map_err(|_| ScoringError::Parse(s.into()))?;
            if k == 0 {
                return Err(ScoringError::BadShortPrefix);
            }
            return Ok(ScoringRule::approval(k));
        }
        if let Some(k) = lower.strip_suffix("-veto") {
            let k: usize = k.parse().map_err(|_| ScoringError::Parse(s.into()))?;
            if k == 0 {
                return Err(ScoringError::BadVetoSuffix);
            }
            return Ok(ScoringRule::k_veto(k));
        }
        Err(ScoringError::Parse(s.into()))
    }
}

/// Scores of the nominees of one reduced election.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScoreTable {
    nominees: Vec<Candidate>,
    /// Indexed by candidate; zero for non-nominees.
    scores: Vec<u64>,
    /// Set when the rule's vector was truncated or a convention was applied
    /// (e.g. Maximin with a single nominee).
    pub flagged: bool,
}

impl ScoreTable {
    pub(crate) fn new(nominees: Vec<Candidate>, scores: Vec<u64>, flagged: bool) -> Self {
        ScoreTable { nominees, scores, flagged }
    }

    pub fn nominees(&self) -> &[Candidate] {
        &self.nominees
    }

    pub fn get(&self, c: Candidate) -> Option<u64> {
        self.nominees.binary_search(&c).ok().map(|_| self.scores[c])
    }

    /// Score of a nominee. Panics for non-nominees in debug builds.
    #[inline]
    pub fn score(&self, c: Candidate) -> u64 {
        debug_assert!(self.nominees.binary_search(&c).is_ok());
        self.scores[c]
    }

    pub fn total(&self) -> u64 {
        self.nominees.iter().map(|&c| self.scores[c]).sum()
    }

    pub fn iter(&self) -> impl Iterator<Item = (Candidate, u64)> + '_ {
        self.nominees.iter().map(|&c| (c, self.scores[c]))
    }
}

pub fn positional_scores(reduced: &ReducedElection<'_>, rule: &ScoringRule) -> ScoreTable {
    let m = reduced.len();
    let vector = rule.effective_vector(m).expect("reduced election is nonempty");
    scores_with_vector(reduced, &vector, rule.truncates_at(m))
}

/// Positional scores for an explicit vector of length `reduced.len()`.
pub fn scores_with_vector(reduced: &ReducedElection<'_>, vector: &[u64], flagged: bool) -> ScoreTable {
    debug_assert_eq!(vector.len(), reduced.len());
    let n = reduced.election().num_candidates();
    let mut scores = vec![0u64; n];
    for t in 0..reduced.num_types() {
        let count = reduced.count(t);
        for &c in reduced.nominees() {
            scores[c] += count * vector[reduced.position(t, c) as usize];
        }
    }
    ScoreTable::new(reduced.nominees().to_vec(), scores, flagged)
}

/// All nominees attaining the maximum score.
pub fn score_winners(table: &ScoreTable) -> Vec<Candidate> {
    let best = table.iter().map(|(_, s)| s).max().unwrap_or(0);
    table.iter().filter(|&(_, s)| s == best).map(|(c, _)| c).collect()
}
