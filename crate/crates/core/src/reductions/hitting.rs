//! Reductions from Hitting Set with parameter k. In the generated instance
//! p is a necessary president iff no k elements hit every set.

use super::{order_with_rest, Builder, HittingSetInstance, Reduction, ReductionError, ORDER_NOTE};
use crate::election::Candidate;
use crate::scoring::ScoringRule;

/// Parties P_1..P_k, each holding one copy of every element. Returns
/// `copies[i][r]` = the i-th copy of element r.
fn copy_parties(b: &mut Builder, h: &HittingSetInstance) -> Vec<Vec<Candidate>> {
    (0..h.k)
        .map(|i| {
            let copy: Vec<Candidate> = (0..h.n).map(|r| b.candidate(format!("s{}_{}", i + 1, r + 1))).collect();
            b.party(copy.clone());
            copy
        })
        .collect()
}

/// F_j^1 ≻ ... ≻ F_j^k.
fn copies_of(copies: &[Vec<Candidate>], set: &[usize]) -> Vec<Candidate> {
    copies.iter().flat_map(|copy| set.iter().map(move |&r| copy[r])).collect()
}

/// Short rules: t = k + 4ℓ − 2 parties, 6m+3 voters.
pub fn hitting_set_to_short(h: &HittingSetInstance, rule: &ScoringRule) -> Result<Reduction, ReductionError> {
    let ScoringRule::Short(prefix) = rule else {
        return Err(ReductionError::BadRule(rule.to_string()));
    };
    let l = prefix.len();
    let m = h.family.len() as u64;
    let mut b = Builder::default();
    let p = b.singleton("p");
    let w = b.singleton("w");
    let copies = copy_parties(&mut b, h);
    let d: Vec<Vec<Candidate>> = (1..=4).map(|i| b.dummies(&format!("d{i}"), l - 1)).collect();
    let n = b.num_candidates();

    b.voters(order_with_rest(n, &[&d[0][..], &[w]].concat(), &[]), 1, "w");
    for (j, f) in h.family.iter().enumerate() {
        let head = [copies_of(&copies, f), d[1].clone(), vec![p]].concat();
        b.voters(order_with_rest(n, &head, &[]), 2, format!("u{0} u'{0}", j + 1));
    }
    b.voters(order_with_rest(n, &[&[w][..], &d[2]].concat(), &[]), 2 * m + 1, "V0");
    b.voters(order_with_rest(n, &[&[p][..], &d[3]].concat(), &[]), 2 * m + 1, "V0'");
    b.finish(p, vec![ORDER_NOTE.into()])
}

/// Veto-like rules: t = k + ℓ + 1 parties, 2k+2m+1 voters.
pub fn hitting_set_to_vetolike(h: &HittingSetInstance, rule: &ScoringRule) -> Result<Reduction, ReductionError> {
    let ScoringRule::VetoLike { suffix, .. } = rule else {
        return Err(ReductionError::BadRule(rule.to_string()));
    };
    let mut b = Builder::default();
    let p = b.singleton("p");
    let w = b.singleton("w");
    let copies = copy_parties(&mut b, h);
    let d = b.dummies("d", suffix.len() - 1);
    let n = b.num_candidates();

    b.voters(order_with_rest(n, &[], &[&[p][..], &d].concat()), 1, "v0");
    for (i, copy) in copies.iter().enumerate() {
        b.voters(order_with_rest(n, &[], &[&copy[..], &d].concat()), 2, format!("W{}", i + 1));
    }
    for (j, f) in h.family.iter().enumerate() {
        let tail = [vec![w], copies_of(&copies, f), d.clone()].concat();
        b.voters(order_with_rest(n, &[], &tail), 2, format!("V{}", j + 1));
    }
    b.finish(p, vec![ORDER_NOTE.into()])
}
