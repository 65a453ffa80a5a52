//! Copeland^α, Maximin and Ranked Pairs winner determination.
//!
//! Copeland scores are kept as integers scaled by the denominator of α so
//! ties are detected exactly.

use std::fmt;
use std::str::FromStr;

use num_rational::Ratio;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::election::{Candidate, MajorityMatrix, ReducedElection};
use crate::scoring::ScoreTable;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlphaError {
    #[error("alpha denominator must be positive")]
    ZeroDenominator,
    #[error("alpha must lie in [0, 1], got {0}/{1}")]
    OutOfRange(u64, u64),
    #[error("cannot parse alpha `{0}`")]
    Parse(String),
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// A rational tie reward α ∈ [0, 1], kept in lowest terms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Alpha {
    num: u64,
    den: u64,
}

impl Alpha {
    pub fn new(num: u64, den: u64) -> Result<Self, AlphaError> {
        if den == 0 {
            return Err(AlphaError::ZeroDenominator);
        }
        if num > den {
            return Err(AlphaError::OutOfRange(num, den));
        }
        let g = gcd(num, den).max(1);
        Ok(Alpha { num: num / g, den: den / g })
    }

    pub const ZERO: Alpha = Alpha { num: 0, den: 1 };
    pub const HALF: Alpha = Alpha { num: 1, den: 2 };
    pub const ONE: Alpha = Alpha { num: 1, den: 1 };

    pub fn numer(&self) -> u64 {
        self.num
    }

    pub fn denom(&self) -> u64 {
        self.den
    }

    pub fn to_ratio(self) -> Ratio<i64> {
        Ratio::new(self.num as i64, self.den as i64)
    }
}

impl fmt::Display for Alpha {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

impl FromStr for Alpha {
    type Err = AlphaError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || AlphaError::Parse(s.to_string());
        match s.trim().split_once('/') {
            Some((n, d)) => Alpha::new(n.trim().parse().map_err(|_| bad())?, d.trim().parse().map_err(|_| bad())?),
            None => {
                let n: u64 = s.trim().parse().map_err(|_| bad())?;
                Alpha::new(n, 1)
            }
        }
    }
}

/// Copeland^α scores, stored as numerators over `alpha.denom()`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CopelandTable {
    alpha: Alpha,
    nominees: Vec<Candidate>,
    scaled: Vec<u64>,
}

impl CopelandTable {
    pub fn alpha(&self) -> Alpha {
        self.alpha
    }

    pub fn nominees(&self) -> &[Candidate] {
        &self.nominees
    }

    /// Score times the denominator of α.
    pub fn scaled(&self, c: Candidate) -> u64 {
        self.scaled[c]
    }

    pub fn score(&self, c: Candidate) -> Ratio<i64> {
        Ratio::new(self.scaled[c] as i64, self.alpha.den as i64)
    }

    pub fn winners(&self) -> Vec<Candidate> {
        let best = self.nominees.iter().map(|&c| self.scaled[c]).max().unwrap_or(0);
        self.nominees.iter().copied().filter(|&c| self.scaled[c] == best).collect()
    }
}

/// Scaled contribution `Cpl(a, b) * den` of the head-to-head between `a` and `b`.
#[inline]
pub(crate) fn copeland_pair_scaled(m: &MajorityMatrix, a: Candidate, b: Candidate, alpha: Alpha) -> u64 {
    let (ab, ba) = (m.get(a, b), m.get(b, a));
    if ab > ba {
        alpha.den
    } else if ab == ba {
        alpha.num
    } else {
        0
    }
}

pub fn copeland_scores(reduced: &ReducedElection<'_>, alpha: Alpha) -> CopelandTable {
    let m = reduced.majority();
    copeland_from_matrix(&m, reduced.nominees(), alpha)
}

/// Copeland^α over `nominees` using a precomputed matrix; pairwise counts do
/// not change under restriction, so the full-election matrix may be passed.
pub fn copeland_from_matrix(m: &MajorityMatrix, nominees: &[Candidate], alpha: Alpha) -> CopelandTable {
    let mut scaled = vec![0u64; m.size()];
    for &a in nominees {
        scaled[a] = nominees.iter().filter(|&&b| b != a).map(|&b| copeland_pair_scaled(m, a, b, alpha)).sum();
    }
    let mut nominees = nominees.to_vec();
    nominees.sort_unstable();
    CopelandTable { alpha, nominees, scaled }
}

/// Maximin scores. With a single nominee the score is |V| by convention and
/// the table is flagged.
pub fn maximin_scores(reduced: &ReducedElection<'_>) -> ScoreTable {
    let m = reduced.majority();
    maximin_from_matrix(&m, reduced.nominees())
}

pub fn maximin_from_matrix(m: &MajorityMatrix, nominees: &[Candidate]) -> ScoreTable {
    let mut nominees = nominees.to_vec();
    nominees.sort_unstable();
    let mut scores = vec![0u64; m.size()];
    for &a in &nominees {
        scores[a] = nominees.iter().filter(|&&b| b != a).map(|&b| m.get(a, b)).min().unwrap_or(m.num_voters());
    }
    let flagged = nominees.len() == 1;
    ScoreTable::new(nominees, scores, flagged)
}

/// How equal-weight arcs are ordered in Ranked Pairs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
pub enum TieBreak {
    /// By (source index, target index).
    #[default]
    Lexicographic,
    /// By a per-arc key derived from the seed and the arc's endpoints, so the
    /// relative order of two arcs never depends on which other candidates are
    /// nominated.
    Seeded(u64),
}

impl TieBreak {
    fn key(&self, a: Candidate, b: Candidate) -> u64 {
        match *self {
            TieBreak::Lexicographic => ((a as u64) << 32) | b as u64,
            TieBreak::Seeded(seed) => mix64(seed ^ mix64(((a as u64) << 32) | b as u64)),
        }
    }
}

// splitmix64 finalizer
fn mix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

impl fmt::Display for TieBreak {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TieBreak::Lexicographic => write!(f, "lex"),
            TieBreak::Seeded(s) => write!(f, "seed={s}"),
        }
    }
}

impl FromStr for TieBreak {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "lex" | "" => Ok(TieBreak::Lexicographic),
            other => other
                .strip_prefix("seed=")
                .and_then(|n| n.parse().ok())
                .map(TieBreak::Seeded)
                .ok_or_else(|| format!("unknown tie-break policy `{s}`")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RankedPairsResult {
    /// Locked arcs in the order they were added.
    pub locked: Vec<(Candidate, Candidate)>,
    pub winners: Vec<Candidate>,
    pub tiebreak: TieBreak,
}

impl RankedPairsResult {
    pub fn is_locked(&self, a: Candidate, b: Candidate) -> bool {
        self.locked.contains(&(a, b))
    }
}

/// The strict-majority arcs among `nominees`, in processing order.
pub fn ranked_pairs_arcs(m: &MajorityMatrix, nominees: &[Candidate], tiebreak: TieBreak) -> Vec<(Candidate, Candidate)> {
    let mut arcs: Vec<(u64, u64, Candidate, Candidate)> = Vec::new();
    for &a in nominees {
        for &b in nominees {
            if a != b && m.defeats(a, b) {
                arcs.push((m.get(a, b), tiebreak.key(a, b), a, b));
            }
        }
    }
    arcs.sort_unstable_by(|x, y| y.0.cmp(&x.0).then(x.1.cmp(&y.1)));
    arcs.into_iter().map(|(_, _, a, b)| (a, b)).collect()
}

pub fn ranked_pairs_winners(reduced: &ReducedElection<'_>, tiebreak: TieBreak) -> RankedPairsResult {
    let m = reduced.majority();
    ranked_pairs_from_matrix(&m, reduced.nominees(), tiebreak)
}

pub fn ranked_pairs_from_matrix(m: &MajorityMatrix, nominees: &[Candidate], tiebreak: TieBreak) -> RankedPairsResult {
    let n = m.size();
    let mut succ: Vec<Vec<Candidate>> = vec![Vec::new(); n];
    let mut indegree = vec![0usize; n];
    let mut locked = Vec::new();
    let mut seen = vec![false; n];
    let mut stack = Vec::new();
    for (a, b) in ranked_pairs_arcs(m, nominees, tiebreak) {
        // adding a -> b closes a cycle iff b already reaches a
        if reaches(&succ, b, a, &mut seen, &mut stack) {
            continue;
        }
        succ[a].push(b);
        indegree[b] += 1;
        locked.push((a, b));
    }
    let mut winners: Vec<Candidate> = nominees.iter().copied().filter(|&c| indegree[c] == 0).collect();
    winners.sort_unstable();
    RankedPairsResult { locked, winners, tiebreak }
}

fn reaches(succ: &[Vec<Candidate>], from: Candidate, to: Candidate, seen: &mut [bool], stack: &mut Vec<Candidate>) -> bool {
    seen.iter_mut().for_each(|s| *s = false);
    stack.clear();
    stack.push(from);
    seen[from] = true;
    while let Some(x) = stack.pop() {
        if x == to {
            return true;
        }
        for &y in &succ[x] {
            if !seen[y] {
                seen[y] = true;
                stack.push(y);
            }
        }
    }
    false
}

/// The nominee defeating every other nominee, if any.
pub fn condorcet_winner(m: &MajorityMatrix, nominees: &[Candidate]) -> Option<Candidate> {
    nominees.iter().copied().find(|&a| nominees.iter().all(|&b| b == a || m.defeats(a, b)))
}
