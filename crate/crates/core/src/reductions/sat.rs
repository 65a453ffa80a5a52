//! Reductions from (2,2)-E3-SAT. In every generated instance p is a
//! necessary president iff the formula is unsatisfiable.

use super::{order_with_rest, Builder, Formula22E3, Literal, Reduction, ReductionError, ORDER_NOTE};
use crate::election::Candidate;
use crate::scoring::ScoringRule;

/// Literal candidates: `lit[v][1]` is x_v, `lit[v][0]` its negation.
fn literal_parties(b: &mut Builder, n: usize) -> Vec<[Candidate; 2]> {
    (0..n)
        .map(|v| {
            let pos = b.candidate(format!("x{}", v + 1));
            let neg = b.candidate(format!("nx{}", v + 1));
            b.party(vec![pos, neg]);
            [neg, pos]
        })
        .collect()
}

fn lit_candidate(lit: &[[Candidate; 2]], l: Literal) -> Candidate {
    lit[l.var][usize::from(l.positive)]
}

/// Short rules: singleton parties p, w, one party per variable and four
/// groups of ℓ−1 dummies; 6m+3 voters.
pub fn sat_to_short(phi: &Formula22E3, rule: &ScoringRule) -> Result<Reduction, ReductionError> {
    let ScoringRule::Short(prefix) = rule else {
        return Err(ReductionError::BadRule(rule.to_string()));
    };
    let l = prefix.len();
    let m = phi.clauses().len() as u64;
    let mut b = Builder::default();
    let p = b.singleton("p");
    let w = b.singleton("w");
    let lit = literal_parties(&mut b, phi.num_vars());
    let d: Vec<Vec<Candidate>> = (1..=4).map(|h| b.dummies(&format!("d{h}"), l - 1)).collect();
    let n = b.num_candidates();

    let cat = |parts: &[&[Candidate]]| parts.concat();
    b.voters(order_with_rest(n, &cat(&[&d[0], &[w]]), &[]), 1, "w");
    b.voters(order_with_rest(n, &cat(&[&[w], &d[1]]), &[]), 2 * m + 1, "V0");
    b.voters(order_with_rest(n, &cat(&[&[p], &d[2]]), &[]), 2 * m + 1, "V0'");
    for (j, c) in phi.clauses().iter().enumerate() {
        let ys: Vec<Candidate> = c.iter().map(|&x| lit_candidate(&lit, x)).collect();
        let head = cat(&[&ys, &d[3], &[p]]);
        b.voters(order_with_rest(n, &head, &[]), 2, format!("u{0} u'{0}", j + 1));
    }
    b.finish(p, vec![ORDER_NOTE.into()])
}

/// Veto-like rules: singleton parties p, w, one party per variable and ℓ−1
/// dummies; 2n+2m+1 voters.
pub fn sat_to_vetolike(phi: &Formula22E3, rule: &ScoringRule) -> Result<Reduction, ReductionError> {
    let ScoringRule::VetoLike { suffix, .. } = rule else {
        return Err(ReductionError::BadRule(rule.to_string()));
    };
    let mut b = Builder::default();
    let p = b.singleton("p");
    let w = b.singleton("w");
    let lit = literal_parties(&mut b, phi.num_vars());
    let d = b.dummies("d", suffix.len() - 1);
    let n = b.num_candidates();

    b.voters(order_with_rest(n, &[], &[&[p][..], &d].concat()), 1, "v0");
    for (i, pair) in lit.iter().enumerate() {
        let tail = [&[pair[1], pair[0]][..], &d].concat();
        b.voters(order_with_rest(n, &[], &tail), 2, format!("W{}", i + 1));
    }
    for (j, c) in phi.clauses().iter().enumerate() {
        let mut tail = vec![w];
        tail.extend(c.iter().map(|&x| lit_candidate(&lit, x)));
        tail.extend_from_slice(&d);
        b.voters(order_with_rest(n, &[], &tail), 2, format!("V{}", j + 1));
    }
    b.finish(p, vec![ORDER_NOTE.into()])
}

/// Ranked Pairs with 12 voters and parties of size at most 2.
///
/// Candidates: p, w, then x_1..x_r, ~x_1..~x_r, then C_i^j and finally
/// C_i^¬j, clause-major. In the z' voters each set A(ℓ) is listed in
/// reverse, so that two members of one A(ℓ) tie.
pub fn sat_to_ranked_pairs(phi: &Formula22E3) -> Result<Reduction, ReductionError> {
    let r = phi.num_vars();
    let q = phi.clauses().len();
    let mut b = Builder::default();
    let p = b.singleton("p");
    let w = b.singleton("w");
    let pos: Vec<Candidate> = (0..r).map(|v| b.candidate(format!("x{}", v + 1))).collect();
    let neg: Vec<Candidate> = (0..r).map(|v| b.candidate(format!("nx{}", v + 1))).collect();
    for v in 0..r {
        b.party(vec![pos[v], neg[v]]);
    }
    let plus: Vec<[Candidate; 3]> = (0..q).map(|i| [1, 2, 3].map(|j| b.candidate(format!("c{}_{j}", i + 1)))).collect();
    let minus: Vec<[Candidate; 3]> = (0..q).map(|i| [1, 2, 3].map(|j| b.candidate(format!("nc{}_{j}", i + 1)))).collect();
    for i in 0..q {
        for j in 0..3 {
            b.party(vec![plus[i][j], minus[i][j]]);
        }
    }
    let lits: Vec<Candidate> = pos.iter().chain(&neg).copied().collect();
    let lits_rev: Vec<Candidate> = lits.iter().rev().copied().collect();
    let plus_fwd: Vec<Candidate> = plus.iter().flatten().copied().collect();
    let plus_rev: Vec<Candidate> = plus_fwd.iter().rev().copied().collect();
    let minus_fwd: Vec<Candidate> = minus.iter().flatten().copied().collect();
    let minus_rev: Vec<Candidate> = minus_fwd.iter().rev().copied().collect();

    // A(ℓ): the C_i^j whose j-th literal is the complement of ℓ.
    let a_of = |l: Literal| -> Vec<Candidate> {
        let mut out = Vec::new();
        for (i, c) in phi.clauses().iter().enumerate() {
            for (j, &y) in c.iter().enumerate() {
                if y == l.negated() {
                    out.push(plus[i][j]);
                }
            }
        }
        out
    };
    let lit_cand = |l: Literal| if l.positive { pos[l.var] } else { neg[l.var] };
    let literal_seq: Vec<Literal> = (0..r).map(Literal::pos).chain((0..r).map(Literal::neg)).collect();

    let mut y = vec![p];
    y.extend(&lits);
    for c in &minus {
        y.extend([c[0], c[1]]);
    }
    y.extend(minus.iter().map(|c| c[2]));
    y.extend(&plus_fwd);
    y.push(w);

    let mut y12 = plus_rev.clone();
    y12.push(w);
    for c in minus.iter().rev() {
        y12.extend([c[1], c[2]]);
    }
    y12.push(p);
    y12.extend(minus.iter().rev().map(|c| c[0]));
    y12.extend(&lits_rev);

    let mut y34 = plus_rev.clone();
    y34.extend(minus.iter().rev().map(|c| c[2]));
    y34.push(w);
    for c in minus.iter().rev() {
        y34.extend([c[0], c[1]]);
    }
    y34.push(p);
    y34.extend(&lits_rev);

    let mut z = Vec::new();
    for &l in &literal_seq {
        z.push(lit_cand(l));
        z.extend(a_of(l));
    }
    z.extend([w, p]);
    z.extend(&minus_fwd);

    let mut z_tail = Vec::new();
    for &l in literal_seq.iter().rev() {
        z_tail.push(lit_cand(l));
        z_tail.extend(a_of(l).into_iter().rev());
    }
    let z1 = [&minus_rev[..], &[p, w], &z_tail].concat();
    let z2 = [&minus_rev[..], &[w, p], &z_tail].concat();

    b.voters(y, 4, "y1 y2 y3 y4");
    b.voters(y12, 2, "y'1 y'2");
    b.voters(y34, 2, "y'3 y'4");
    b.voters(z, 2, "z1 z2");
    b.voters(z1, 1, "z'1");
    b.voters(z2, 1, "z'2");
    b.finish(p, vec!["forward and reverse set orders use candidate index order".into(), "z' voters list each A(l) in reverse".into()])
}
