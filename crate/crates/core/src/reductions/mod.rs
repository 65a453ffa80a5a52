//! Hardness reductions into Necessary President, and exhaustive solvers for
//! their source problems.
//!
//! Wherever a construction leaves an order unspecified, candidates appear in
//! index order (or its reverse). Voter types carry the names used in the
//! constructions.

mod clique;
mod hitting;
mod sat;

use std::fmt;

use rand::seq::SliceRandom;
use rand::Rng;
use thiserror::Error;

use crate::election::{Candidate, Election, ModelError, PartyInstance, VoterType};

pub use clique::clique_to_ranked_pairs;
pub use hitting::{hitting_set_to_short, hitting_set_to_vetolike};
pub use sat::{sat_to_ranked_pairs, sat_to_short, sat_to_vetolike};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReductionError {
    #[error("invalid formula: {0}")]
    BadFormula(String),
    #[error("invalid hitting set instance: {0}")]
    BadHittingSet(String),
    #[error("invalid graph: {0}")]
    BadGraph(String),
    #[error("rule `{0}` does not fit this reduction")]
    BadRule(String),
    #[error("exhaustive search budget exceeded: {0}")]
    Budget(String),
    #[error(transparent)]
    Model(#[from] ModelError),
}

/// A generated instance together with notes on how unspecified choices were
/// resolved.
#[derive(Debug, Clone)]
pub struct Reduction {
    pub instance: PartyInstance,
    pub notes: Vec<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Literal {
    /// 0-based variable index.
    pub var: usize,
    pub positive: bool,
}

impl Literal {
    pub fn pos(var: usize) -> Self {
        Literal { var, positive: true }
    }

    pub fn neg(var: usize) -> Self {
        Literal { var, positive: false }
    }

    pub fn negated(self) -> Self {
        Literal { var: self.var, positive: !self.positive }
    }

    pub fn holds(self, assignment: &[bool]) -> bool {
        assignment[self.var] == self.positive
    }

    /// DIMACS encoding: `±(var + 1)`.
    pub fn to_dimacs(self) -> i64 {
        let v = self.var as i64 + 1;
        if self.positive {
            v
        } else {
            -v
        }
    }

    pub fn from_dimacs(x: i64) -> Option<Self> {
        (x != 0).then(|| Literal { var: (x.unsigned_abs() - 1) as usize, positive: x > 0 })
    }
}

impl fmt::Display for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.positive {
            write!(f, "x{}", self.var + 1)
        } else {
            write!(f, "~x{}", self.var + 1)
        }
    }
}

/// A 3-CNF formula in which every variable occurs exactly twice positively
/// and twice negatively.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Formula22E3 {
    n: usize,
    clauses: Vec<[Literal; 3]>,
}

impl Formula22E3 {
    pub fn new(n: usize, clauses: Vec<[Literal; 3]>) -> Result<Self, ReductionError> {
        let bad = |s: String| Err(ReductionError::BadFormula(s));
        if clauses.len() < 2 {
            return bad(format!("need at least 2 clauses, got {}", clauses.len()));
        }
        let mut occ = vec![[0usize; 2]; n];
        for (i, c) in clauses.iter().enumerate() {
            for (a, l) in c.iter().enumerate() {
                if l.var >= n {
                    return bad(format!("clause {} uses variable {} of {n}", i + 1, l.var + 1));
                }
                if c[..a].contains(l) {
                    return bad(format!("clause {} repeats literal {l}", i + 1));
                }
                occ[l.var][usize::from(l.positive)] += 1;
            }
        }
        if let Some(v) = occ.iter().position(|o| *o != [2, 2]) {
            return bad(format!("variable x{} occurs {} times positively and {} times negatively", v + 1, occ[v][1], occ[v][0]));
        }
        Ok(Formula22E3 { n, clauses })
    }

    pub fn num_vars(&self) -> usize {
        self.n
    }

    pub fn clauses(&self) -> &[[Literal; 3]] {
        &self.clauses
    }

    pub fn satisfied_by(&self, assignment: &[bool]) -> bool {
        self.clauses.iter().all(|c| c.iter().any(|l| l.holds(assignment)))
    }

    /// A uniformly shuffled arrangement of the 4n literal occurrences into
    /// clauses, retried until every clause has distinct literals. Requires
    /// `3 | n` (since 3m = 4n).
    pub fn random<R: Rng>(n: usize, rng: &mut R) -> Result<Self, ReductionError> {
        if n == 0 || !n.is_multiple_of(3) {
            return Err(ReductionError::BadFormula(format!("no (2,2)-E3 formula has {n} variables; need a positive multiple of 3")));
        }
        let mut occ: Vec<Literal> = (0..n).flat_map(|v| [Literal::pos(v), Literal::pos(v), Literal::neg(v), Literal::neg(v)]).collect();
        loop {
            occ.shuffle(rng);
            let clauses: Vec<[Literal; 3]> = occ.chunks(3).map(|c| [c[0], c[1], c[2]]).collect();
            if let Ok(f) = Formula22E3::new(n, clauses) {
                return Ok(f);
            }
        }
    }

    pub fn to_dimacs(&self) -> String {
        let mut s = format!("p cnf {} {}\n", self.n, self.clauses.len());
        for c in &self.clauses {
            s += &format!("{} {} {} 0\n", c[0].to_dimacs(), c[1].to_dimacs(), c[2].to_dimacs());
        }
        s
    }

    /// Parses DIMACS CNF; `c` lines are comments.
    pub fn from_dimacs(text: &str) -> Result<Self, ReductionError> {
        let bad = |s: &str| ReductionError::BadFormula(s.to_string());
        let mut n = None;
        let mut nums = Vec::new();
        for line in text.lines().map(str::trim) {
            if line.is_empty() || line.starts_with('c') || line.starts_with('%') {
                continue;
            }
            if let Some(rest) = line.strip_prefix('p') {
                let parts: Vec<&str> = rest.split_whitespace().collect();
                if parts.len() != 3 || parts[0] != "cnf" {
                    return Err(bad("malformed problem line"));
                }
                n = Some(parts[1].parse::<usize>().map_err(|_| bad("bad variable count"))?);
                continue;
            }
            for tok in line.split_whitespace() {
                nums.push(tok.parse::<i64>().map_err(|_| bad("bad literal"))?);
            }
        }
        let n = n.ok_or_else(|| bad("missing problem line"))?;
        let mut clauses = Vec::new();
        for chunk in nums.split(|&x| x == 0).filter(|c| !c.is_empty()) {
            if chunk.len() != 3 {
                return Err(bad("every clause needs exactly 3 literals"));
            }
            let l: Vec<Literal> = chunk.iter().map(|&x| Literal::from_dimacs(x).expect("nonzero")).collect();
            clauses.push([l[0], l[1], l[2]]);
        }
        Formula22E3::new(n, clauses)
    }
}

/// Scans all 2^n assignments (bit `v` of the counter is variable `v`).
pub fn enumerate_assignments(formula: &Formula22E3) -> Result<Option<Vec<bool>>, ReductionError> {
    let n = formula.num_vars();
    if n > 24 {
        return Err(ReductionError::Budget(format!("2^{n} assignments")));
    }
    for bits in 0u64..(1 << n) {
        let a: Vec<bool> = (0..n).map(|v| bits >> v & 1 == 1).collect();
        if formula.satisfied_by(&a) {
            return Ok(Some(a));
        }
    }
    Ok(None)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HittingSetInstance {
    /// Number of elements; elements are `0..n`.
    pub n: usize,
    pub family: Vec<Vec<usize>>,
    pub k: usize,
}

impl HittingSetInstance {
    pub fn new(n: usize, family: Vec<Vec<usize>>, k: usize) -> Result<Self, ReductionError> {
        let bad = |s: String| Err(ReductionError::BadHittingSet(s));
        if k == 0 {
            return bad("k must be positive".into());
        }
        if n == 0 {
            return bad("no elements".into());
        }
        let mut family = family;
        for (j, f) in family.iter_mut().enumerate() {
            f.sort_unstable();
            f.dedup();
            if f.is_empty() {
                return bad(format!("set {} is empty", j + 1));
            }
            if let Some(&x) = f.iter().find(|&&x| x >= n) {
                return bad(format!("set {} mentions element {} of {n}", j + 1, x + 1));
            }
        }
        Ok(HittingSetInstance { n, family, k })
    }

    pub fn is_hit_by(&self, chosen: &[usize]) -> bool {
        self.family.iter().all(|f| f.iter().any(|x| chosen.contains(x)))
    }

    /// Text form: a header `n k`, then one line of 1-based elements per set.
    pub fn to_text(&self) -> String {
        let mut s = format!("{} {}\n", self.n, self.k);
        for f in &self.family {
            let items: Vec<String> = f.iter().map(|x| (x + 1).to_string()).collect();
            s += &items.join(" ");
            s.push('\n');
        }
        s
    }

    pub fn from_text(text: &str) -> Result<Self, ReductionError> {
        let bad = |s: &str| ReductionError::BadHittingSet(s.to_string());
        let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#'));
        let header: Vec<usize> = lines
            .next()
            .ok_or_else(|| bad("missing header"))?
            .split_whitespace()
            .map(|t| t.parse().map_err(|_| bad("bad header")))
            .collect::<Result<_, _>>()?;
        if header.len() != 2 {
            return Err(bad("header must be `n k`"));
        }
        let family = lines
            .map(|l| {
                l.split_whitespace()
                    .map(|t| t.parse::<usize>().ok().filter(|&x| x > 0).map(|x| x - 1).ok_or_else(|| bad("bad element")))
                    .collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        HittingSetInstance::new(header[0], family, header[1])
    }
}

/// Smallest-first search over subsets of size at most k.
pub fn exhaustive_hitting_set(h: &HittingSetInstance) -> Result<Option<Vec<usize>>, ReductionError> {
    if h.n > 20 {
        return Err(ReductionError::Budget(format!("2^{} subsets", h.n)));
    }
    let mut best: Option<Vec<usize>> = None;
    for mask in 0u32..(1 << h.n) {
        let size = mask.count_ones() as usize;
        if size > h.k || best.as_ref().is_some_and(|b| b.len() <= size) {
            continue;
        }
        let chosen: Vec<usize> = (0..h.n).filter(|&x| mask >> x & 1 == 1).collect();
        if h.is_hit_by(&chosen) {
            best = Some(chosen);
        }
    }
    Ok(best)
}

/// `(color class, index within the class)`.
pub type Vertex = (usize, usize);
pub type Edge = (Vertex, Vertex);

/// A graph whose vertices are split into `k` independent color classes of
/// `r` vertices each. Vertex `(i, a)` is the `a`-th vertex of class `i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MulticoloredGraph {
    k: usize,
    r: usize,
    edges: Vec<Edge>,
    padded: usize,
}

impl MulticoloredGraph {
    /// Edges are normalized so the first endpoint has the smaller class, then
    /// sorted and deduplicated.
    pub fn new(k: usize, r: usize, edges: Vec<Edge>) -> Result<Self, ReductionError> {
        let bad = |s: String| Err(ReductionError::BadGraph(s));
        if k < 2 || r == 0 {
            return bad(format!("need k ≥ 2 classes of r ≥ 1 vertices, got k = {k}, r = {r}"));
        }
        let mut norm = Vec::with_capacity(edges.len());
        for (a, b) in edges {
            if a.0 >= k || b.0 >= k || a.1 >= r || b.1 >= r {
                return bad(format!("edge {a:?}-{b:?} out of range"));
            }
            if a.0 == b.0 {
                return bad(format!("edge {a:?}-{b:?} inside color class {}", a.0 + 1));
            }
            norm.push(if a.0 < b.0 { (a, b) } else { (b, a) });
        }
        norm.sort_unstable();
        norm.dedup();
        Ok(MulticoloredGraph { k, r, edges: norm, padded: 0 })
    }

    /// Classes of unequal sizes, padded with isolated vertices up to the
    /// largest one.
    pub fn with_sizes(sizes: &[usize], edges: Vec<Edge>) -> Result<Self, ReductionError> {
        let r = sizes.iter().copied().max().unwrap_or(0);
        for &((i, a), (j, b)) in &edges {
            if sizes.get(i).is_none_or(|&s| a >= s) || sizes.get(j).is_none_or(|&s| b >= s) {
                return Err(ReductionError::BadGraph(format!("edge ({i},{a})-({j},{b}) out of range")));
            }
        }
        let mut g = MulticoloredGraph::new(sizes.len(), r, edges)?;
        g.padded = sizes.iter().map(|&s| r - s).sum();
        Ok(g)
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    /// Number of isolated vertices added by [`MulticoloredGraph::with_sizes`].
    pub fn padded(&self) -> usize {
        self.padded
    }

    pub fn adjacent(&self, a: (usize, usize), b: (usize, usize)) -> bool {
        let e = if a.0 < b.0 { (a, b) } else { (b, a) };
        self.edges.binary_search(&e).is_ok()
    }

    /// Uniform random graph: each cross-class pair is an edge with
    /// probability `density`.
    pub fn random<R: Rng>(k: usize, r: usize, density: f64, rng: &mut R) -> Result<Self, ReductionError> {
        let mut edges = Vec::new();
        for i in 0..k {
            for j in i + 1..k {
                for a in 0..r {
                    for b in 0..r {
                        if rng.gen_bool(density) {
                            edges.push(((i, a), (j, b)));
                        }
                    }
                }
            }
        }
        MulticoloredGraph::new(k, r, edges)
    }

    /// Text form: header `k r`, then one edge per line as `i a j b`
    /// (1-based class and vertex indices).
    pub fn to_text(&self) -> String {
        let mut s = format!("{} {}\n", self.k, self.r);
        for &((i, a), (j, b)) in &self.edges {
            s += &format!("{} {} {} {}\n", i + 1, a + 1, j + 1, b + 1);
        }
        s
    }

    pub fn from_text(text: &str) -> Result<Self, ReductionError> {
        let bad = |s: &str| ReductionError::BadGraph(s.to_string());
        let mut rows = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'))
            .map(|l| l.split_whitespace().map(|t| t.parse::<usize>().map_err(|_| bad("bad number"))).collect::<Result<Vec<_>, _>>());
        let header = rows.next().ok_or_else(|| bad("missing header"))??;
        if header.len() != 2 {
            return Err(bad("header must be `k r`"));
        }
        let mut edges = Vec::new();
        for row in rows {
            let row = row?;
            if row.len() != 4 || row.contains(&0) {
                return Err(bad("edge lines must be `i a j b` with 1-based indices"));
            }
            edges.push(((row[0] - 1, row[1] - 1), (row[2] - 1, row[3] - 1)));
        }
        MulticoloredGraph::new(header[0], header[1], edges)
    }
}

/// One vertex index per class forming a clique, if any. Scans all r^k
/// choices in lexicographic order.
pub fn exhaustive_clique(g: &MulticoloredGraph) -> Result<Option<Vec<usize>>, ReductionError> {
    let total = (g.r as u128).checked_pow(g.k as u32).unwrap_or(u128::MAX);
    if total > 1 << 24 {
        return Err(ReductionError::Budget(format!("{}^{} vertex choices", g.r, g.k)));
    }
    let mut pick = vec![0usize; g.k];
    loop {
        let ok = (0..g.k).all(|i| (i + 1..g.k).all(|j| g.adjacent((i, pick[i]), (j, pick[j]))));
        if ok {
            return Ok(Some(pick));
        }
        let mut i = g.k;
        loop {
            if i == 0 {
                return Ok(None);
            }
            i -= 1;
            pick[i] += 1;
            if pick[i] < g.r {
                break;
            }
            pick[i] = 0;
        }
    }
}

/// Incremental construction of a generated instance.
#[derive(Default)]
pub(crate) struct Builder {
    labels: Vec<String>,
    parties: Vec<Vec<Candidate>>,
    voters: Vec<VoterType>,
}

impl Builder {
    pub fn candidate(&mut self, label: impl Into<String>) -> Candidate {
        self.labels.push(label.into());
        self.labels.len() - 1
    }

    /// A new candidate forming its own party.
    pub fn singleton(&mut self, label: impl Into<String>) -> Candidate {
        let c = self.candidate(label);
        self.parties.push(vec![c]);
        c
    }

    /// `count` dummies labelled `{prefix}_1, ...`, each its own party.
    pub fn dummies(&mut self, prefix: &str, count: usize) -> Vec<Candidate> {
        (1..=count).map(|i| self.singleton(format!("{prefix}_{i}"))).collect()
    }

    pub fn party(&mut self, members: Vec<Candidate>) {
        self.parties.push(members);
    }

    pub fn num_candidates(&self) -> usize {
        self.labels.len()
    }

    pub fn voters(&mut self, order: Vec<Candidate>, count: u64, names: impl Into<String>) {
        self.voters.push(VoterType::named(order, count, names));
    }

    pub fn finish(self, distinguished: Candidate, notes: Vec<String>) -> Result<Reduction, ReductionError> {
        let election = Election::new(self.labels, self.voters)?;
        let instance = PartyInstance::new(election, self.parties, distinguished)?;
        Ok(Reduction { instance, notes })
    }
}

pub(crate) const ORDER_NOTE: &str = "unspecified orders ([...], forward and reverse set orders) use candidate index order";

/// `head`, then every unlisted candidate in index order, then `tail`.
pub(crate) fn order_with_rest(n: usize, head: &[Candidate], tail: &[Candidate]) -> Vec<Candidate> {
    let mut used = vec![false; n];
    for &c in head.iter().chain(tail) {
        debug_assert!(!used[c], "candidate {c} listed twice");
        used[c] = true;
    }
    let mut order = head.to_vec();
    order.extend((0..n).filter(|&c| !used[c]));
    order.extend_from_slice(tail);
    order
}
