//! Ranked Pairs reduction from Multicolored Clique: 20 voters and
//! C(k,2) + k + 2 parties. p is a necessary president iff G has no clique
//! with one vertex from each color class.

use super::{Builder, Edge, MulticoloredGraph, Reduction, ReductionError};
use crate::election::Candidate;

struct EdgeCand {
    c: Candidate,
    /// Endpoints; `None` for the placeholder of an empty edge class.
    ends: Option<Edge>,
    /// The pair of classes (lower first).
    classes: (usize, usize),
}

/// Candidates: p, w, then vertices class by class, then edges grouped by
/// class pair. An edge class with no edges gets one placeholder candidate
/// incident to no vertex, so every party is nonempty; it sits after the
/// last vertex in forward blocks and first in reverse blocks.
pub fn clique_to_ranked_pairs(g: &MulticoloredGraph) -> Result<Reduction, ReductionError> {
    let (k, r) = (g.k(), g.r());
    let mut b = Builder::default();
    let p = b.singleton("p");
    let w = b.singleton("w");
    let u: Vec<Vec<Candidate>> = (0..k)
        .map(|i| {
            let class: Vec<Candidate> = (0..r).map(|a| b.candidate(format!("u{}_{}", i + 1, a + 1))).collect();
            b.party(class.clone());
            class
        })
        .collect();
    let mut edges: Vec<EdgeCand> = Vec::new();
    let mut notes = vec!["forward and reverse set orders use candidate index order".to_string()];
    if g.padded() > 0 {
        notes.push(format!("{} isolated vertices pad the color classes to equal size", g.padded()));
    }
    for i in 0..k {
        for j in i + 1..k {
            let mut party = Vec::new();
            for &(x, y) in g.edges().iter().filter(|(x, y)| x.0 == i && y.0 == j) {
                let c = b.candidate(format!("e{}_{}_{}_{}", i + 1, x.1 + 1, j + 1, y.1 + 1));
                party.push(c);
                edges.push(EdgeCand { c, ends: Some((x, y)), classes: (i, j) });
            }
            if party.is_empty() {
                let c = b.candidate(format!("e{}_{}_none", i + 1, j + 1));
                party.push(c);
                edges.push(EdgeCand { c, ends: None, classes: (i, j) });
                notes.push(format!("edge class {{{},{}}} is empty; placeholder candidate added", i + 1, j + 1));
            }
            b.party(party);
        }
    }

    let incident = |e: &EdgeCand, v: (usize, usize)| e.ends.is_some_and(|(x, y)| x == v || y == v);
    // Edges of class pair {i, h} with h > i (upper) or h < i (lower).
    let side = |e: &EdgeCand, i: usize, upper: bool| if upper { e.classes.0 == i } else { e.classes.1 == i };
    let set = |i: usize, upper: bool| -> Vec<Candidate> { edges.iter().filter(|e| side(e, i, upper)).map(|e| e.c).collect() };

    // A_i / B_i (forward) and A'_i / B'_i (reverse).
    let block = |i: usize, upper: bool, forward: bool| -> Vec<Candidate> {
        let mut out = Vec::new();
        let placeholders: Vec<Candidate> = edges.iter().filter(|e| side(e, i, upper) && e.ends.is_none()).map(|e| e.c).collect();
        if !forward {
            out.extend(placeholders.iter().rev());
        }
        let verts: Vec<usize> = if forward { (0..r).collect() } else { (0..r).rev().collect() };
        for a in verts {
            let mut es: Vec<Candidate> = edges.iter().filter(|e| side(e, i, upper) && incident(e, (i, a))).map(|e| e.c).collect();
            if !forward {
                es.reverse();
            }
            out.extend(es);
            out.push(u[i][a]);
        }
        if forward {
            out.extend(&placeholders);
        }
        out
    };
    let rev = |v: Vec<Candidate>| -> Vec<Candidate> { v.into_iter().rev().collect() };

    let a_fwd: Vec<Candidate> = (0..k).flat_map(|i| block(i, true, true)).collect();
    let a_rev: Vec<Candidate> = (0..k).rev().flat_map(|i| block(i, true, false)).collect();
    let b_fwd: Vec<Candidate> = (0..k).flat_map(|i| block(i, false, true)).collect();
    let b_rev: Vec<Candidate> = (0..k).rev().flat_map(|i| block(i, false, false)).collect();

    b.voters([&[p, w][..], &a_fwd].concat(), 1, "x1");
    b.voters([&[w, p][..], &a_fwd].concat(), 1, "x2");
    b.voters([&a_rev[..], &[w, p]].concat(), 2, "x'1 x'2");
    b.voters([&[p, w][..], &b_fwd].concat(), 2, "x3 x4");
    b.voters([&b_rev[..], &[w, p]].concat(), 2, "x'3 x'4");

    let mut y12 = vec![p, w];
    for (i, class) in u.iter().enumerate() {
        y12.extend(class);
        y12.extend(set(i, true));
    }
    let mut y12r = Vec::new();
    for i in (0..k).rev() {
        y12r.extend(rev(u[i].clone()));
        y12r.extend(rev(set(i, true)));
    }
    y12r.extend([w, p]);
    let mut y34 = vec![p, w];
    for (i, class) in u.iter().enumerate() {
        y34.extend(class);
        y34.extend(set(i, false));
    }
    let mut y34r = Vec::new();
    for i in (0..k).rev() {
        y34r.extend(rev(u[i].clone()));
        y34r.extend(rev(set(i, false)));
    }
    y34r.extend([w, p]);
    b.voters(y12, 2, "y1 y2");
    b.voters(y12r, 2, "y'1 y'2");
    b.voters(y34, 2, "y3 y4");
    b.voters(y34r, 2, "y'3 y'4");

    let all_u: Vec<Candidate> = u.iter().flatten().copied().collect();
    let all_e: Vec<Candidate> = edges.iter().map(|e| e.c).collect();
    b.voters([&[p][..], &all_u, &all_e, &[w]].concat(), 2, "z1 z2");
    b.voters([rev(all_e), vec![w, p], rev(all_u)].concat(), 2, "z'1 z'2");
    notes.push("y'3/y'4 list E_{k,<k} in reverse order".into());
    b.finish(p, notes)
}
