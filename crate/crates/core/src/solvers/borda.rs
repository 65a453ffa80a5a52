//! Polynomial-time solver for Borda.

use crate::election::{Candidate, Election, PartyInstance};
use crate::rule::{Judge, Rule};

use super::{certify, SolverKind, Verdict};

/// Voters with `w ≻ c ≻ p` minus voters with `p ≻ c ≻ w`.
pub fn borda_delta(c: Candidate, p: Candidate, w: Candidate, election: &Election) -> i64 {
    let mut delta = 0i64;
    for (t, vt) in election.voter_types().iter().enumerate() {
        let (rc, rp, rw) = (election.rank(t, c), election.rank(t, p), election.rank(t, w));
        if rw < rc && rc < rp {
            delta += vt.count as i64;
        } else if rp < rc && rc < rw {
            delta -= vt.count as i64;
        }
    }
    delta
}

/// For each rival w, every other party nominates a member maximizing the
/// Borda delta (lowest index on ties); NO as soon as p loses such a slate.
pub fn solve_borda(instance: &PartyInstance) -> Verdict {
    let rule = Rule::borda();
    let e = instance.election();
    let p = instance.distinguished();
    let judge = Judge::new(e, &rule);
    let mut guesses = 0;
    for w in instance.rivals() {
        guesses += 1;
        let pw = instance.party_of(w);
        let mut nominees = vec![p, w];
        for j in instance.other_parties().filter(|&j| j != pw) {
            let best = instance.parties()[j]
                .iter()
                .map(|&c| (borda_delta(c, p, w, e), c))
                .max_by(|a, b| a.0.cmp(&b.0).then(b.1.cmp(&a.1)))
                .expect("parties are nonempty");
            nominees.push(best.1);
        }
        if let Some(cert) = certify(&judge, p, &nominees, Some(w)) {
            return Verdict::no(rule, SolverKind::Borda, guesses, cert);
        }
    }
    Verdict::yes(rule, SolverKind::Borda, guesses)
}
