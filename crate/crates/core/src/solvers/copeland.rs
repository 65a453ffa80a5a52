//! Polynomial-time solver for Copeland^α.

use num_rational::Ratio;

use crate::condorcet::{copeland_pair_scaled, Alpha};
use crate::election::{Candidate, MajorityMatrix, PartyInstance};
use crate::rule::{Judge, Rule};

use super::{certify, SolverKind, Verdict};

/// `Cpl(w, c) - Cpl(p, c)`: how much the comparison with `c` widens the gap
/// between `w` and `p`.
pub fn copeland_pair_delta(c: Candidate, w: Candidate, p: Candidate, matrix: &MajorityMatrix, alpha: Alpha) -> Ratio<i64> {
    Ratio::new(scaled_delta(c, w, p, matrix, alpha), alpha.denom() as i64)
}

fn scaled_delta(c: Candidate, w: Candidate, p: Candidate, m: &MajorityMatrix, alpha: Alpha) -> i64 {
    copeland_pair_scaled(m, w, c, alpha) as i64 - copeland_pair_scaled(m, p, c, alpha) as i64
}

/// For each rival w, every other party nominates a member maximizing the
/// pair delta; NO iff the resulting score gap of w over p is positive.
pub fn solve_copeland(instance: &PartyInstance, alpha: Alpha) -> Verdict {
    let rule = Rule::Copeland(alpha);
    let m = instance.election().majority();
    let judge = Judge::new(instance.election(), &rule);
    let p = instance.distinguished();
    let mut guesses = 0;
    for w in instance.rivals() {
        guesses += 1;
        let pw = instance.party_of(w);
        let mut gap = copeland_pair_scaled(&m, w, p, alpha) as i64 - copeland_pair_scaled(&m, p, w, alpha) as i64;
        let mut nominees = vec![p, w];
        for j in instance.other_parties().filter(|&j| j != pw) {
            let (d, c) = instance.parties()[j]
                .iter()
                .map(|&c| (scaled_delta(c, w, p, &m, alpha), c))
                .max_by(|a, b| a.0.cmp(&b.0).then(b.1.cmp(&a.1)))
                .expect("parties are nonempty");
            gap += d;
            nominees.push(c);
        }
        if gap > 0 {
            let cert = certify(&judge, p, &nominees, Some(w)).expect("positive gap means p loses");
            return Verdict::no(rule, SolverKind::Copeland, guesses, cert);
        }
    }
    Verdict::yes(rule, SolverKind::Copeland, guesses)
}
