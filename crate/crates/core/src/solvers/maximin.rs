//! Polynomial-time solver for Maximin.

use crate::election::{Candidate, PartyInstance};
use crate::rule::{Judge, Rule};

use super::{certify, SolverKind, Verdict};

/// Guesses a rival w and the nominee ĉ realizing p's Maximin score ŝ =
/// N(p, ĉ), then asks every remaining party for a member c with N(w, c) > ŝ.
///
/// ĉ ranges over all rivals including w itself: when p's minimum is attained
/// against w, no third candidate fixes ŝ. This branch also covers instances
/// with only two parties.
pub fn solve_maximin(instance: &PartyInstance) -> Verdict {
    let rule = Rule::Maximin;
    let m = instance.election().majority();
    let judge = Judge::new(instance.election(), &rule);
    let p = instance.distinguished();
    let mut guesses = 0;
    for w in instance.rivals() {
        let pw = instance.party_of(w);
        for c_hat in instance.rivals().filter(|&c| c == w || instance.party_of(c) != pw) {
            guesses += 1;
            let s_hat = m.get(p, c_hat);
            if m.get(w, p) <= s_hat || (c_hat != w && m.get(w, c_hat) <= s_hat) {
                continue;
            }
            let fixed = instance.party_of(c_hat);
            let mut nominees: Vec<Candidate> = vec![p, w];
            if c_hat != w {
                nominees.push(c_hat);
            }
            let covered = instance.other_parties().filter(|&j| j != pw && j != fixed).all(|j| {
                match instance.parties()[j].iter().copied().find(|&c| m.get(w, c) > s_hat) {
                    Some(c) => {
                        nominees.push(c);
                        true
                    }
                    None => false,
                }
            });
            if covered {
                let cert = certify(&judge, p, &nominees, Some(w)).expect("coverage means p loses");
                let v = Verdict::no(rule, SolverKind::Maximin, guesses, cert);
                return if c_hat == w { v.with_note("p's minimum attained against the witness") } else { v };
            }
        }
    }
    Verdict::yes(rule, SolverKind::Maximin, guesses)
}
