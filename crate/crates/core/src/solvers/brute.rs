//! Exhaustive enumeration of nominations.

use crate::election::{Candidate, PartyInstance};
use crate::rule::{Judge, Rule};

use super::{certify, SolveError, SolverKind, Verdict};

pub const DEFAULT_BRUTEFORCE_BUDGET: u64 = 10_000_000;

/// Number of nominations containing p, saturating at `u64::MAX`.
pub fn nomination_count(instance: &PartyInstance) -> u64 {
    instance.other_parties().fold(1u64, |acc, j| acc.saturating_mul(instance.parties()[j].len() as u64))
}

/// Tries every nomination in which p's party nominates p. Parties are
/// ordered by increasing size and enumerated as a mixed-radix counter whose
/// first digit moves fastest; the first losing nomination is reported.
pub fn solve_bruteforce(instance: &PartyInstance, rule: &Rule, budget: u64) -> Result<Verdict, SolveError> {
    let total = nomination_count(instance);
    if total > budget {
        return Err(SolveError::BudgetExceeded {
            what: "brute-force nominations",
            needed: if total == u64::MAX { "more than 2^64".into() } else { total.to_string() },
            budget,
        });
    }
    let p = instance.distinguished();
    let mut parties: Vec<&[Candidate]> = instance.other_parties().map(|j| instance.parties()[j].as_slice()).collect();
    parties.sort_by_key(|b| b.len());
    let judge = Judge::new(instance.election(), rule);
    let mut digits = vec![0usize; parties.len()];
    let mut nominees: Vec<Candidate> = Vec::with_capacity(parties.len() + 1);
    let mut visited = 0u64;
    loop {
        nominees.clear();
        nominees.push(p);
        nominees.extend(parties.iter().zip(&digits).map(|(b, &d)| b[d]));
        visited += 1;
        if let Some(cert) = certify(&judge, p, &nominees, None) {
            return Ok(Verdict::no(rule.clone(), SolverKind::BruteForce, visited, cert));
        }
        let mut i = 0;
        loop {
            if i == digits.len() {
                return Ok(Verdict::yes(rule.clone(), SolverKind::BruteForce, visited));
            }
            digits[i] += 1;
            if digits[i] < parties[i].len() {
                break;
            }
            digits[i] = 0;
            i += 1;
        }
    }
}
