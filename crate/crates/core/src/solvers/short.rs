//! FPT solver (in the number of voter types) for short scoring rules.
//!
//! A guess fixes a rival w and the structure of a hypothetical losing
//! reduced election: for every voter type i and scored position j, which
//! party holds position j. Positions are labeled W (w's party), P (p's
//! party) or a generic class, numbered in order of first appearance in
//! row-major order, so every structure is produced exactly once. Each guess
//! is then realized, if possible, through a matching between the remaining
//! parties and the generic classes.

use crate::election::{Candidate, Election, PartyInstance};
use crate::rule::{Judge, Rule};
use crate::scoring::ScoringRule;

use super::matching::saturating_matching;
use super::{certify, SolveError, SolverKind, Verdict};

/// Default cap on `(τL)^(τL+2)·|C|`.
pub const DEFAULT_GUESS_BUDGET: u64 = 100_000_000_000_000;

const LABEL_W: u8 = 0;
const LABEL_P: u8 = 1;
const FIRST_GENERIC: u8 = 2;

/// One structure guess: `labels[i][j]` names the class holding position `j`
/// (0-based) of voter type `i`; 0 is w's party, 1 is p's party, 2.. are the
/// generic classes.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct StructureGuess {
    pub w: Candidate,
    pub labels: Vec<Vec<u8>>,
}

impl StructureGuess {
    fn cells(&self, label: u8) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (i, row) in self.labels.iter().enumerate() {
            for (j, &x) in row.iter().enumerate() {
                if x == label {
                    out.push((i, j));
                }
            }
        }
        out
    }

    /// The class of w's party.
    pub fn q_w(&self) -> Vec<(usize, usize)> {
        self.cells(LABEL_W)
    }

    /// The class of p's party; empty when p is never scored.
    pub fn q_p(&self) -> Vec<(usize, usize)> {
        self.cells(LABEL_P)
    }

    /// All nonempty classes, W first, then P, then the generic ones.
    pub fn classes(&self) -> Vec<Vec<(usize, usize)>> {
        let max = self.labels.iter().flatten().copied().max().unwrap_or(0);
        (0..=max).map(|x| self.cells(x)).filter(|c| !c.is_empty()).collect()
    }

    pub fn num_generic(&self) -> usize {
        self.labels.iter().flatten().filter(|&&x| x >= FIRST_GENERIC).copied().max().map_or(0, |m| (m - 1) as usize)
    }
}

/// The scored prefix used for `t` nominees: the effective vector with
/// trailing zeros removed.
pub(crate) fn scored_prefix(rule: &ScoringRule, t: usize) -> Vec<u64> {
    let mut v = rule.effective_vector(t).unwrap_or_default();
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

/// `(τL)^(τL+2)·|C|`, saturating.
pub(crate) fn guess_bound(tau: usize, l: usize, candidates: usize) -> u128 {
    let k = (tau * l) as u128;
    let mut acc: u128 = candidates as u128;
    for _ in 0..(tau * l + 2) {
        acc = acc.saturating_mul(k.max(1));
    }
    acc
}

pub fn solve_short_fpt(instance: &PartyInstance, rule: &ScoringRule) -> Result<Verdict, SolveError> {
    solve_short_fpt_with_budget(instance, rule, DEFAULT_GUESS_BUDGET)
}

pub fn solve_short_fpt_with_budget(instance: &PartyInstance, rule: &ScoringRule, budget: u64) -> Result<Verdict, SolveError> {
    if !matches!(rule, ScoringRule::Short(_)) {
        return Err(SolveError::RuleMismatch { solver: SolverKind::Short, rule: rule.to_string() });
    }
    let full = Rule::Scoring(rule.clone());
    let prefix = scored_prefix(rule, instance.num_parties());
    run(instance, &full, &prefix, budget, SolverKind::Short)
}

/// Runs the structure enumeration with an explicit scored prefix; `judge_rule`
/// must assign exactly `prefix` followed by zeros to a `t`-nominee election.
pub(crate) fn run(instance: &PartyInstance, judge_rule: &Rule, prefix: &[u64], budget: u64, kind: SolverKind) -> Result<Verdict, SolveError> {
    let tau = instance.election().num_types();
    let l = prefix.len();
    let bound = guess_bound(tau, l, instance.election().num_candidates());
    if bound > budget as u128 {
        return Err(SolveError::BudgetExceeded {
            what: "structure guesses (τL)^(τL+2)·|C|",
            needed: if bound == u128::MAX { "more than 2^128".into() } else { bound.to_string() },
            budget,
        });
    }
    if l == 0 || instance.num_parties() == 1 {
        // every nominee scores zero, or p runs alone
        return Ok(Verdict::yes(judge_rule.clone(), kind, 0));
    }
    let judge = Judge::new(instance.election(), judge_rule);
    let mut guesses = 0u64;
    for w in instance.rivals() {
        let mut search = Search::new(instance, prefix, w);
        let mut found = None;
        search.run(&mut |s: &Search<'_>| {
            guesses += 1;
            match s.realize() {
                Some(nominees) => match certify(&judge, instance.distinguished(), &nominees, Some(w)) {
                    Some(cert) => {
                        found = Some(cert);
                        false
                    }
                    None => true,
                },
                None => true,
            }
        });
        if let Some(cert) = found {
            return Ok(Verdict::no(judge_rule.clone(), kind, guesses, cert));
        }
    }
    Ok(Verdict::yes(judge_rule.clone(), kind, guesses))
}

/// Every structure guess for rival `w` that survives pruning.
pub fn enumerate_structures(instance: &PartyInstance, rule: &ScoringRule, w: Candidate) -> Vec<StructureGuess> {
    let prefix = scored_prefix(rule, instance.num_parties());
    let mut out = Vec::new();
    if prefix.is_empty() {
        return out;
    }
    let mut search = Search::new(instance, &prefix, w);
    search.run(&mut |s: &Search<'_>| {
        out.push(s.guess());
        true
    });
    out
}

/// The structure of the reduced election over `nominees` with respect to `w`,
/// in canonical labeling.
pub fn structure_of(instance: &PartyInstance, rule: &ScoringRule, nominees: &[Candidate], w: Candidate) -> StructureGuess {
    let prefix = scored_prefix(rule, instance.num_parties());
    let red = ReducedView::new(instance, nominees);
    let (home, pw) = (instance.home_party(), instance.party_of(w));
    let mut names: Vec<Option<u8>> = vec![None; instance.num_parties()];
    names[pw] = Some(LABEL_W);
    names[home] = Some(LABEL_P);
    let mut next = FIRST_GENERIC;
    let labels = (0..instance.election().num_types())
        .map(|i| {
            red.orders[i][..prefix.len()]
                .iter()
                .map(|&c| {
                    let party = instance.party_of(c);
                    *names[party].get_or_insert_with(|| {
                        next += 1;
                        next - 1
                    })
                })
                .collect()
        })
        .collect();
    StructureGuess { w, labels }
}

struct ReducedView {
    orders: Vec<Vec<Candidate>>,
}

impl ReducedView {
    fn new(instance: &PartyInstance, nominees: &[Candidate]) -> Self {
        let e = instance.election();
        let orders = e.voter_types().iter().map(|vt| vt.order.iter().copied().filter(|c| nominees.contains(c)).collect()).collect();
        ReducedView { orders }
    }
}

struct Search<'a> {
    instance: &'a PartyInstance,
    e: &'a Election,
    prefix: &'a [u64],
    p: Candidate,
    w: Candidate,
    tau: usize,
    l: usize,
    /// Parties other than p's and w's.
    hat_parties: Vec<usize>,
    /// Candidates of those parties.
    pool: Vec<Candidate>,
    /// `w ≻ p` per voter type.
    w_over_p: Vec<bool>,
    /// Largest score still obtainable from types `i..`.
    remaining: Vec<u64>,
    grid: Vec<u8>,
    generic: usize,
    /// Candidates well placed for each generic class on the completed rows.
    well_placed: Vec<Vec<Candidate>>,
    stop: bool,
}

impl<'a> Search<'a> {
    fn new(instance: &'a PartyInstance, prefix: &'a [u64], w: Candidate) -> Self {
        let e = instance.election();
        let tau = e.num_types();
        let p = instance.distinguished();
        let (home, pw) = (instance.home_party(), instance.party_of(w));
        let hat_parties: Vec<usize> = (0..instance.num_parties()).filter(|&j| j != home && j != pw).collect();
        let pool: Vec<Candidate> = hat_parties.iter().flat_map(|&j| instance.parties()[j].iter().copied()).collect();
        let w_over_p = (0..tau).map(|i| e.prefers(i, w, p)).collect();
        let mut remaining = vec![0u64; tau + 1];
        for i in (0..tau).rev() {
            remaining[i] = remaining[i + 1] + e.voter_types()[i].count * prefix[0];
        }
        Search {
            instance,
            e,
            prefix,
            p,
            w,
            tau,
            l: prefix.len(),
            hat_parties,
            pool,
            w_over_p,
            remaining,
            grid: vec![0; tau * prefix.len()],
            generic: 0,
            well_placed: Vec::new(),
            stop: false,
        }
    }

    fn guess(&self) -> StructureGuess {
        StructureGuess { w: self.w, labels: self.grid.chunks(self.l).map(|r| r.to_vec()).collect() }
    }

    /// Position of `label` in row `i`, or `l` when absent.
    fn pos(&self, i: usize, label: u8) -> usize {
        self.grid[i * self.l..(i + 1) * self.l].iter().position(|&x| x == label).unwrap_or(self.l)
    }

    fn run(&mut self, visit: &mut dyn FnMut(&Search<'_>) -> bool) {
        self.stop = false;
        self.generic = 0;
        self.well_placed.clear();
        self.cell(0, 0, 0, visit);
    }

    fn cell(&mut self, idx: usize, score_w: u64, score_p: u64, visit: &mut dyn FnMut(&Search<'_>) -> bool) {
        let (i, j) = (idx / self.l, idx % self.l);
        let row_start = i * self.l;
        for x in 0..(FIRST_GENERIC as usize + self.generic + 1) {
            let x = x as u8;
            if self.grid[row_start..idx].contains(&x) {
                continue;
            }
            let fresh = x as usize == FIRST_GENERIC as usize + self.generic;
            if fresh && self.generic >= self.hat_parties.len() {
                continue;
            }
            self.grid[idx] = x;
            if fresh {
                self.generic += 1;
            }
            if j + 1 == self.l {
                self.row_done(i, score_w, score_p, visit);
            } else {
                self.cell(idx + 1, score_w, score_p, visit);
            }
            if fresh {
                self.generic -= 1;
            }
            if self.stop {
                return;
            }
        }
    }

    fn row_done(&mut self, r: usize, score_w: u64, score_p: u64, visit: &mut dyn FnMut(&Search<'_>) -> bool) {
        let (jw, jp) = (self.pos(r, LABEL_W), self.pos(r, LABEL_P));
        let consistent = match (jw < self.l, jp < self.l) {
            (true, true) => (jw < jp) == self.w_over_p[r],
            (true, false) => self.w_over_p[r],
            (false, true) => !self.w_over_p[r],
            (false, false) => true,
        };
        if !consistent {
            return;
        }
        let count = self.e.voter_types()[r].count;
        let sw = score_w + if jw < self.l { count * self.prefix[jw] } else { 0 };
        let sp = score_p + if jp < self.l { count * self.prefix[jp] } else { 0 };
        if sw + self.remaining[r + 1] <= sp {
            return;
        }
        let saved = self.well_placed.clone();
        if self.refine(r) {
            if r + 1 == self.tau {
                if !visit(self) {
                    self.stop = true;
                }
            } else {
                self.cell((r + 1) * self.l, sw, sp, visit);
            }
        }
        self.well_placed = saved;
    }

    /// Whether `c` is consistent with class positions in row `i`.
    fn fits(&self, c: Candidate, i: usize, g: usize, jp: usize, jw: usize) -> bool {
        let ok = |other: usize, x: Candidate| (g == self.l && other == self.l) || (self.e.prefers(i, c, x) == (g < other));
        ok(jp, self.p) && ok(jw, self.w)
    }

    /// Narrows well-placed sets after row `r` completes; classes created on
    /// row `r` also check earlier rows, where they are absent.
    fn refine(&mut self, r: usize) -> bool {
        let (jw, jp) = (self.pos(r, LABEL_W), self.pos(r, LABEL_P));
        for k in 0..self.generic {
            let label = FIRST_GENERIC + k as u8;
            if k >= self.well_placed.len() {
                let mut set = self.pool.clone();
                for i in 0..r {
                    let (w_i, p_i) = (self.pos(i, LABEL_W), self.pos(i, LABEL_P));
                    set.retain(|&c| self.fits(c, i, self.l, p_i, w_i));
                }
                self.well_placed.push(set);
            }
            let g = self.pos(r, label);
            let mut set = std::mem::take(&mut self.well_placed[k]);
            set.retain(|&c| self.fits(c, r, g, jp, jw));
            if set.is_empty() {
                return false;
            }
            self.well_placed[k] = set;
        }
        true
    }

    /// Builds the nominee set from a covering matching, if one exists.
    fn realize(&self) -> Option<Vec<Candidate>> {
        let inst = self.instance;
        let hp = &self.hat_parties;
        let mut index_of = vec![usize::MAX; inst.num_parties()];
        for (k, &j) in hp.iter().enumerate() {
            index_of[j] = k;
        }
        let mut edges = Vec::new();
        for (g, set) in self.well_placed.iter().enumerate() {
            let mut seen = vec![false; hp.len()];
            for &c in set {
                let k = index_of[inst.party_of(c)];
                if !seen[k] {
                    seen[k] = true;
                    edges.push((k, g));
                }
            }
        }
        let w_rows: Vec<usize> = (0..self.tau).filter(|&i| self.pos(i, LABEL_W) < self.l).collect();
        let safe: Vec<Option<Candidate>> =
            hp.iter().map(|&j| inst.parties()[j].iter().copied().find(|&c| w_rows.iter().all(|&i| self.e.prefers(i, self.w, c)))).collect();
        let required_left: Vec<bool> = safe.iter().map(Option::is_none).collect();
        let matching = saturating_matching(hp.len(), self.generic, &edges, &required_left, &vec![true; self.generic])?;
        let mut nominees = vec![self.p, self.w];
        let mut covered = vec![false; hp.len()];
        for (k, g) in matching {
            covered[k] = true;
            let c = self.well_placed[g].iter().copied().filter(|&c| inst.party_of(c) == hp[k]).min()?;
            nominees.push(c);
        }
        for k in 0..hp.len() {
            if !covered[k] {
                nominees.push(safe[k].expect("uncovered parties are secure"));
            }
        }
        Some(nominees)
    }
}
