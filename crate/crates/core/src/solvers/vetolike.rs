//! FPT solver for Veto-like scoring rules.

use crate::election::{Candidate, PartyInstance};
use crate::rule::{Judge, Rule};
use crate::scoring::ScoringRule;

use super::short::{run, scored_prefix, DEFAULT_GUESS_BUDGET};
use super::{certify, SolveError, SolverKind, Verdict};

pub fn solve_vetolike_fpt(instance: &PartyInstance, rule: &ScoringRule) -> Result<Verdict, SolveError> {
    solve_vetolike_fpt_with_budget(instance, rule, DEFAULT_GUESS_BUDGET)
}

/// With at most ℓτ parties the rule is treated as a short rule over the
/// `t`-position vector. Otherwise some nominee always collects the top value
/// from every voter, so p loses iff some voter can be made to rank p among
/// the last ℓ nominees.
pub fn solve_vetolike_fpt_with_budget(instance: &PartyInstance, rule: &ScoringRule, budget: u64) -> Result<Verdict, SolveError> {
    let ScoringRule::VetoLike { suffix, .. } = rule else {
        return Err(SolveError::RuleMismatch { solver: SolverKind::VetoLike, rule: rule.to_string() });
    };
    let full = Rule::Scoring(rule.clone());
    let t = instance.num_parties();
    let ell = suffix.len();
    let tau = instance.election().num_types();
    if t <= ell * tau {
        let prefix = scored_prefix(rule, t);
        return run(instance, &full, &prefix, budget, SolverKind::VetoLike).map(|v| v.with_note(format!("treated as a {t}-position short rule")));
    }
    let e = instance.election();
    let p = instance.distinguished();
    let judge = Judge::new(e, &full);
    for i in 0..tau {
        let above: Vec<Option<Candidate>> =
            instance.other_parties().map(|j| instance.parties()[j].iter().copied().find(|&c| e.prefers(i, c, p))).collect();
        let count = above.iter().filter(|c| c.is_some()).count();
        if count + ell >= t {
            let nominees: Vec<Candidate> =
                std::iter::once(p).chain(instance.other_parties().zip(&above).map(|(j, c)| c.unwrap_or(instance.parties()[j][0]))).collect();
            let cert = certify(&judge, p, &nominees, None).expect("p misses the top value from one voter");
            return Ok(Verdict::no(full, SolverKind::VetoLike, (i + 1) as u64, cert));
        }
    }
    Ok(Verdict::yes(full, SolverKind::VetoLike, tau as u64))
}
