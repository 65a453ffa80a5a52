//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails outside the documented known gaps.

use std::path::Path;
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use necpres::condorcet::{condorcet_winner, copeland_from_matrix, maximin_from_matrix, ranked_pairs_arcs, ranked_pairs_from_matrix};
use necpres::io::{generate_random, parse_instance, RandomParams};
use necpres::reductions::{
    clique_to_ranked_pairs, enumerate_assignments, exhaustive_clique, exhaustive_hitting_set, hitting_set_to_short, hitting_set_to_vetolike,
    sat_to_ranked_pairs, sat_to_short, sat_to_vetolike, Edge, Formula22E3, HittingSetInstance, Literal, MulticoloredGraph,
};
use necpres::scoring::positional_scores;
use necpres::solvers::{check_certificate, solve_bruteforce, solve_short_fpt, solve_with, SolveError, SolverKind, DEFAULT_BRUTEFORCE_BUDGET};
use necpres::{Alpha, Candidate, MajorityMatrix, PartyInstance, Rule, ScoringRule, TieBreak};

type Outcome = Result<String, String>;

/// Criteria that cannot pass as stated; each failure is still printed as
/// FAIL. The README explains why.
const KNOWN_GAPS: &[(u32, &str)] = &[(4, "Ranked Pairs at n = 6 has 2^30 nominations, beyond the brute-force budget")];

fn rp() -> Rule {
    Rule::RankedPairs(TieBreak::Lexicographic)
}

fn short(v: &[u64]) -> ScoringRule {
    ScoringRule::short(v.to_vec()).unwrap()
}

fn fixture(name: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name).display().to_string()
}

/// All nominations containing p.
fn nominations(inst: &PartyInstance) -> Vec<Vec<Candidate>> {
    let mut out = vec![vec![inst.distinguished()]];
    for j in inst.other_parties() {
        out = out.iter().flat_map(|n| inst.parties()[j].iter().map(move |&c| [n.clone(), vec![c]].concat())).collect();
    }
    out
}

fn criterion_1() -> Outcome {
    let path = fixture("example1.txt");
    let start = Instant::now();
    let out = Command::new(env!("CARGO_BIN_EXE_necpres")).args(["solve", "--rule", "borda", "--file", &path]).output().map_err(|e| e.to_string())?;
    let cli_time = start.elapsed();
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).map_err(|e| format!("bad report: {e}"))?;
    if report["answer"] != "YES" {
        return Err(format!("answer {}", report["answer"]));
    }
    let inst = parse_instance(&std::fs::read_to_string(&path).unwrap()).unwrap();
    let start = Instant::now();
    let verdict = solve_with(&inst, &Rule::borda(), SolverKind::Borda, 0).unwrap();
    let lib_time = start.elapsed();
    if !verdict.is_yes() || lib_time >= Duration::from_millis(100) {
        return Err(format!("library solve: {} in {lib_time:?}", verdict.answer));
    }
    let p = inst.distinguished();
    let scores: Vec<u64> = nominations(&inst).iter().map(|n| positional_scores(&inst.reduce(n).unwrap(), &ScoringRule::Borda).score(p)).collect();
    if scores != [4, 4, 4, 4] {
        return Err(format!("p's Borda scores {scores:?}"));
    }
    Ok(format!("YES; sc(p) = 4 in all 4 reduced elections; solve {lib_time:?} (CLI round trip {cli_time:?})"))
}

/// Criterion-2 suite: returns (disagreements, NO verdicts, bad certificates).
fn oracle_suite() -> (Vec<String>, usize, Vec<String>, usize) {
    let rules: Vec<Rule> = vec![
        Rule::borda(),
        Rule::Copeland(Alpha::ZERO),
        Rule::Copeland(Alpha::HALF),
        Rule::Copeland(Alpha::ONE),
        Rule::Maximin,
        Rule::Scoring(ScoringRule::plurality()),
        Rule::Scoring(ScoringRule::approval(2)),
        Rule::Scoring(short(&[2, 1])),
        Rule::Scoring(ScoringRule::veto()),
        Rule::Scoring(ScoringRule::k_veto(2)),
    ];
    let mut disagreements = Vec::new();
    let mut bad_certs = Vec::new();
    let mut no_count = 0;
    let mut comparisons = 0;
    for i in 0..500u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(0xACCE_0000 + i);
        let candidates: usize = rng.gen_range(2..=8);
        let parties = rng.gen_range(candidates.div_ceil(3).max(1)..=candidates.min(4));
        let voters = rng.gen_range(1..=7);
        let types = rng.gen_range(1..=voters.min(3) as usize);
        let inst = generate_random(RandomParams { candidates, parties, voters, types, seed: rng.gen() }).unwrap();
        assert!(inst.max_party_size() <= 3);
        for rule in &rules {
            let kind = SolverKind::auto(rule);
            let fast = solve_with(&inst, rule, kind, 0);
            let slow = solve_bruteforce(&inst, rule, DEFAULT_BRUTEFORCE_BUDGET).unwrap();
            comparisons += 1;
            match fast {
                Ok(v) => {
                    if v.answer != slow.answer {
                        disagreements.push(format!("instance {i}, {rule}: {kind} {} vs brute force {}", v.answer, slow.answer));
                    }
                    for c in v.certificate.iter().chain(&slow.certificate) {
                        no_count += 1;
                        if let Err(e) = check_certificate(&inst, rule, c) {
                            bad_certs.push(format!("instance {i}, {rule}: {e}"));
                        }
                    }
                }
                Err(e) => disagreements.push(format!("instance {i}, {rule}: {kind} failed: {e}")),
            }
        }
    }
    (disagreements, no_count, bad_certs, comparisons)
}

fn sample_formulas(n: usize, count: usize, seed: u64) -> Result<Vec<Formula22E3>, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| Formula22E3::random(n, &mut rng).map_err(|e| e.to_string())).collect()
}

fn criterion_4() -> Outcome {
    let mut failures = Vec::new();
    let mut checks = 0;
    let mut vacuous = Vec::new();
    for n in 3..=6usize {
        if n % 3 != 0 {
            // 3m = 4n has no integral solution
            vacuous.push(n);
            if Formula22E3::random(n, &mut ChaCha8Rng::seed_from_u64(0)).is_ok() {
                failures.push(format!("n = {n}: generator accepted an impossible size"));
            }
            continue;
        }
        for (k, phi) in sample_formulas(n, 50, 4000 + n as u64)?.iter().enumerate() {
            let unsat = enumerate_assignments(phi).map_err(|e| e.to_string())?.is_none();
            let cases = [
                ("plurality", sat_to_short(phi, &ScoringRule::plurality()), Rule::Scoring(ScoringRule::plurality())),
                ("short:2,1", sat_to_short(phi, &short(&[2, 1])), Rule::Scoring(short(&[2, 1]))),
                ("veto", sat_to_vetolike(phi, &ScoringRule::veto()), Rule::Scoring(ScoringRule::veto())),
                ("rankedpairs", sat_to_ranked_pairs(phi), rp()),
            ];
            for (name, red, rule) in cases {
                checks += 1;
                let inst = red.map_err(|e| e.to_string())?.instance;
                match solve_bruteforce(&inst, &rule, DEFAULT_BRUTEFORCE_BUDGET) {
                    Ok(v) if v.is_yes() == unsat => {}
                    Ok(v) => failures.push(format!("n = {n} #{k} {name}: {} but unsatisfiable = {unsat}", v.answer)),
                    Err(SolveError::BudgetExceeded { needed, .. }) => {
                        failures.push(format!("n = {n} {name}: brute force refused ({needed} nominations)"))
                    }
                    Err(e) => failures.push(format!("n = {n} {name}: {e}")),
                }
            }
        }
    }
    let mut summary = format!("{checks} checks, n ∈ {{3, 6}} (n ∈ {vacuous:?} admit no formula)");
    if failures.is_empty() {
        return Ok(summary);
    }
    failures.dedup_by(|a, b| a.split(':').next() == b.split(':').next());
    summary = format!("{summary}; failures: {}", failures.join("; "));
    Err(summary)
}

fn random_hitting_set(rng: &mut ChaCha8Rng) -> HittingSetInstance {
    let n = rng.gen_range(1..=8);
    let m = rng.gen_range(0..=5);
    let k = rng.gen_range(1..=3);
    let family = (0..m).map(|_| (0..rng.gen_range(1..=3)).map(|_| rng.gen_range(0..n)).collect()).collect();
    HittingSetInstance::new(n, family, k).unwrap()
}

fn criterion_5() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5005);
    let mut failures = Vec::new();
    let mut seen = [[0usize; 2]; 2];
    let rules = [short(&[1]), short(&[2, 1]), ScoringRule::veto(), ScoringRule::k_veto(2)];
    for i in 0..120 {
        let h = random_hitting_set(&mut rng);
        let hit = exhaustive_hitting_set(&h).map_err(|e| e.to_string())?.is_some();
        seen[0][usize::from(hit)] += 1;
        for s in &rules {
            let red = if matches!(s, ScoringRule::Short(_)) { hitting_set_to_short(&h, s) } else { hitting_set_to_vetolike(&h, s) };
            let inst = red.map_err(|e| e.to_string())?.instance;
            let v = solve_bruteforce(&inst, &Rule::Scoring(s.clone()), DEFAULT_BRUTEFORCE_BUDGET).map_err(|e| e.to_string())?;
            if v.is_yes() == hit {
                failures.push(format!("hitting set #{i} under {s}"));
            }
        }
    }
    for i in 0..60 {
        let r = rng.gen_range(1..=3);
        let density = [0.3, 0.6, 0.9][i % 3];
        let g = MulticoloredGraph::random(3, r, density, &mut rng).unwrap();
        let clique = exhaustive_clique(&g).map_err(|e| e.to_string())?.is_some();
        seen[1][usize::from(clique)] += 1;
        let inst = clique_to_ranked_pairs(&g).map_err(|e| e.to_string())?.instance;
        let v = solve_bruteforce(&inst, &rp(), DEFAULT_BRUTEFORCE_BUDGET).map_err(|e| e.to_string())?;
        if v.is_yes() == clique {
            failures.push(format!("graph #{i}"));
        }
    }
    if seen.iter().flatten().any(|&c| c == 0) {
        failures.push(format!("a direction was never exercised: {seen:?}"));
    }
    let detail = format!("120 hitting sets ({} hittable) × 4 rules, 60 graphs k = 3, r ≤ 3 ({} with a clique)", seen[0][1], seen[1][1]);
    if failures.is_empty() {
        Ok(detail)
    } else {
        Err(format!("{detail}; failures: {}", failures.join(", ")))
    }
}

/// Number of ordered pairs deviating from the case analysis.
fn sat_table_mismatches(phi: &Formula22E3) -> usize {
    let inst = sat_to_ranked_pairs(phi).unwrap().instance;
    let m = inst.election().majority();
    let (r, q) = (phi.num_vars(), phi.clauses().len());
    let lit = |c: Candidate| (2..2 + 2 * r).contains(&c).then(|| if c < 2 + r { Literal::pos(c - 2) } else { Literal::neg(c - 2 - r) });
    let plus = |c: Candidate| (2 + 2 * r..2 + 2 * r + 3 * q).contains(&c).then(|| ((c - 2 - 2 * r) / 3, (c - 2 - 2 * r) % 3));
    let minus =
        |c: Candidate| (2 + 2 * r + 3 * q..2 + 2 * r + 6 * q).contains(&c).then(|| ((c - 2 - 2 * r - 3 * q) / 3, (c - 2 - 2 * r - 3 * q) % 3));
    let listed = |a: Candidate, b: Candidate| -> Option<u64> {
        match (a, b) {
            (1, 0) => return Some(7),
            (0, b) if lit(b).is_some() => return Some(10),
            (a, 1) if plus(a).is_some() => return Some(10),
            _ => {}
        }
        if let (Some(l), Some((i, j))) = (lit(a), plus(b)) {
            return Some(if phi.clauses()[i][j] == l.negated() { 8 } else { 6 });
        }
        match (a, minus(a), b, minus(b)) {
            (0, _, _, Some((_, 0))) | (_, Some((_, 2)), 1, _) => Some(8),
            (_, Some((i, 0)), _, Some((k, 1))) | (_, Some((i, 1)), _, Some((k, 2))) if i == k => Some(8),
            // weight-8 arcs the printed profile adds among the C_i^¬j
            (_, Some((k, 1)), _, Some((i, 0))) if k < i => Some(8),
            (_, Some((k, 1)), _, Some((i, 2))) if k > i => Some(8),
            _ => None,
        }
    };
    let n = inst.election().num_candidates();
    (0..n)
        .flat_map(|a| (0..n).map(move |b| (a, b)))
        .filter(|&(a, b)| a != b && m.get(a, b) != listed(a, b).or_else(|| listed(b, a).map(|x| 12 - x)).unwrap_or(6))
        .count()
}

fn clique_table_mismatches(g: &MulticoloredGraph) -> usize {
    let inst = clique_to_ranked_pairs(g).unwrap().instance;
    let e = inst.election();
    let m = e.majority();
    let vertex = |c: Candidate| (2..2 + g.k() * g.r()).contains(&c).then(|| ((c - 2) / g.r(), (c - 2) % g.r()));
    let edge = |c: Candidate| -> Option<((usize, usize), Option<Edge>)> {
        let f: Vec<usize> = e.label(c).strip_prefix('e')?.split('_').filter_map(|s| s.parse::<usize>().ok()).map(|x| x - 1).collect();
        Some(if f.len() == 2 { ((f[0], f[1]), None) } else { ((f[0], f[2]), Some(((f[0], f[1]), (f[2], f[3])))) })
    };
    let listed = |a: Candidate, b: Candidate| -> Option<u64> {
        if (a, b) == (1, 0) {
            return Some(11);
        }
        if a == 0 && vertex(b).is_some() || edge(a).is_some() && b == 1 {
            return Some(12);
        }
        let (v, ((i, j), ends)) = (vertex(a)?, edge(b)?);
        let linked = v.0 == i || v.0 == j;
        let incident = ends.is_some_and(|(x, y)| x == v || y == v);
        Some(if linked && !incident { 12 } else { 10 })
    };
    let n = e.num_candidates();
    (0..n)
        .flat_map(|a| (0..n).map(move |b| (a, b)))
        .filter(|&(a, b)| a != b && m.get(a, b) != listed(a, b).or_else(|| listed(b, a).map(|x| 20 - x)).unwrap_or(10))
        .count()
}

fn criterion_6() -> Outcome {
    let mut bad = Vec::new();
    let mut pairs = 0;
    for (n, seed) in [(3, 60), (6, 61)] {
        for phi in sample_formulas(n, 10, seed)? {
            let c = sat_table_mismatches(&phi);
            pairs += 1;
            if c > 0 {
                bad.push(format!("sat n = {n}: {c} pairs"));
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(66);
    for k in 2..=4 {
        for _ in 0..5 {
            let g = MulticoloredGraph::random(k, rng.gen_range(1..=3), 0.5, &mut rng).unwrap();
            pairs += 1;
            let c = clique_table_mismatches(&g);
            if c > 0 {
                bad.push(format!("clique k = {k}: {c} pairs"));
            }
        }
    }
    if bad.is_empty() {
        Ok(format!("{pairs} generated instances, every ordered pair matches"))
    } else {
        Err(bad.join(", "))
    }
}

fn criterion_7() -> Outcome {
    let mut bad = Vec::new();
    let mut check = |what: &str, got: (u64, usize, usize), want: (u64, usize, usize)| {
        if got != want {
            bad.push(format!("{what}: (|V|, t, s) = {got:?}, expected {want:?}"));
        }
    };
    let shape = |i: &PartyInstance| (i.election().num_voters(), i.num_parties(), i.max_party_size());
    for phi in sample_formulas(3, 3, 70)?.iter().chain(&sample_formulas(6, 3, 71)?) {
        let (n, m) = (phi.num_vars(), phi.clauses().len() as u64);
        for l in 1..=3usize {
            let s = short(&vec![1; l]);
            check("sat_to_short", shape(&sat_to_short(phi, &s).unwrap().instance), (6 * m + 3, n + 4 * l - 2, 2));
            let v = ScoringRule::k_veto(l);
            check("sat_to_vetolike", shape(&sat_to_vetolike(phi, &v).unwrap().instance), (2 * n as u64 + 2 * m + 1, n + l + 1, 2));
        }
        check("sat_to_ranked_pairs", shape(&sat_to_ranked_pairs(phi).unwrap().instance), (12, 2 + n + 3 * m as usize, 2));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(77);
    for _ in 0..10 {
        let h = random_hitting_set(&mut rng);
        let (k, m) = (h.k, h.family.len() as u64);
        for l in 1..=3usize {
            let si = hitting_set_to_short(&h, &short(&vec![1; l])).unwrap().instance;
            let s_max = h.n;
            check("hitting_set_to_short", shape(&si), (6 * m + 3, k + 4 * l - 2, s_max));
            let vi = hitting_set_to_vetolike(&h, &ScoringRule::k_veto(l)).unwrap().instance;
            check("hitting_set_to_vetolike", shape(&vi), (2 * k as u64 + 2 * m + 1, k + l + 1, s_max));
        }
    }
    for k in 2..=4 {
        let g = MulticoloredGraph::random(k, 2, 0.5, &mut rng).unwrap();
        let inst = clique_to_ranked_pairs(&g).unwrap().instance;
        if inst.election().num_voters() != 20 || inst.num_parties() != k * (k - 1) / 2 + k + 2 {
            bad.push(format!("clique k = {k}: |V| = {}, t = {}", inst.election().num_voters(), inst.num_parties()));
        }
    }
    if bad.is_empty() {
        Ok("voter counts, party counts and party sizes exact for all five generator families".into())
    } else {
        Err(bad.join("; "))
    }
}

fn criterion_8() -> Outcome {
    let inst = generate_random(RandomParams { candidates: 200, parties: 50, voters: 1000, types: 1000, seed: 8 }).unwrap();
    let mut times = Vec::new();
    for rule in [Rule::borda(), Rule::Copeland(Alpha::HALF), Rule::Maximin] {
        let start = Instant::now();
        let v = solve_with(&inst, &rule, SolverKind::auto(&rule), 0).map_err(|e| e.to_string())?;
        let t = start.elapsed();
        if t >= Duration::from_secs(10) {
            return Err(format!("{rule} took {t:?}"));
        }
        if let Some(c) = &v.certificate {
            check_certificate(&inst, &rule, c).map_err(|e| format!("{rule}: {e}"))?;
        }
        times.push(format!("{rule} {:.2}s ({})", t.as_secs_f64(), v.answer));
        match solve_bruteforce(&inst, &rule, DEFAULT_BRUTEFORCE_BUDGET) {
            Err(SolveError::BudgetExceeded { .. }) => {}
            other => return Err(format!("brute force did not refuse: {other:?}")),
        }
    }
    Ok(format!("|C| = 200, |V| = 1000, t = 50: {}; brute force refused", times.join(", ")))
}

fn criterion_9() -> Outcome {
    let rule = short(&[2, 1]);
    let mut lines = Vec::new();
    for seed in 0..3 {
        let inst = generate_random(RandomParams { candidates: 40, parties: 20, voters: 9, types: 3, seed: 900 + seed }).unwrap();
        if inst.election().num_types() != 3 {
            return Err("sampled instance has τ ≠ 3".into());
        }
        let start = Instant::now();
        let v = solve_short_fpt(&inst, &rule).map_err(|e| e.to_string())?;
        let t = start.elapsed();
        if t >= Duration::from_secs(120) {
            return Err(format!("took {t:?}"));
        }
        let oracle = solve_bruteforce(&inst, &Rule::Scoring(rule.clone()), u64::MAX);
        if let Ok(o) = oracle {
            if o.answer != v.answer {
                return Err("disagrees with brute force".into());
            }
        }
        lines.push(format!("{} in {:.2}s", v.answer, t.as_secs_f64()));
    }
    for (types, prefix) in [(6, vec![2, 1]), (4, vec![1, 1, 1]), (12, vec![1])] {
        let inst = generate_random(RandomParams { candidates: 40, parties: 20, voters: 30, types, seed: 990 }).unwrap();
        let start = Instant::now();
        match solve_short_fpt(&inst, &short(&prefix)) {
            Err(SolveError::BudgetExceeded { .. }) if start.elapsed() < Duration::from_secs(1) => {}
            other => return Err(format!("τ = {types}, ℓ = {} not refused promptly: {:?}", prefix.len(), other.map(|v| v.answer))),
        }
    }
    Ok(format!("τ = 3, ℓ = 2, |C| = 40, t = 20: {}; refused at τℓ = 12", lines.join(", ")))
}

fn permutations(m: usize) -> Vec<Vec<usize>> {
    if m == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(m - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, m - 1);
            out.push(q);
        }
    }
    out.sort();
    out
}

struct Sweep {
    m: usize,
    /// `pairs[o]` = the (a, b) index pairs with a above b in order o.
    pairs: Vec<Vec<usize>>,
    counts: Vec<u64>,
    profiles: u64,
    with_winner: u64,
    violations: Vec<String>,
}

impl Sweep {
    fn leaf(&mut self, voters: u64) {
        self.profiles += 1;
        let m = self.m;
        let mx = MajorityMatrix::from_counts(m, self.counts.clone(), voters);
        let all: Vec<Candidate> = (0..m).collect();
        let Some(cw) = condorcet_winner(&mx, &all) else { return };
        self.with_winner += 1;
        for alpha in [Alpha::ZERO, Alpha::HALF, Alpha::ONE] {
            if copeland_from_matrix(&mx, &all, alpha).winners() != [cw] {
                self.violations.push(format!("copeland:{alpha} on {:?}", self.counts));
            }
        }
        let mm = maximin_from_matrix(&mx, &all);
        let best = (0..m).map(|c| mm.score(c)).max().unwrap();
        if (0..m).filter(|&c| mm.score(c) == best).collect::<Vec<_>>() != [cw] || m > 1 && 2 * mm.score(cw) <= voters {
            self.violations.push(format!("maximin on {:?}", self.counts));
        }
        if ranked_pairs_from_matrix(&mx, &all, TieBreak::Lexicographic).winners != [cw] {
            self.violations.push(format!("ranked pairs on {:?}", self.counts));
        }
    }

    /// Multisets of `left` more orders with indices ≥ `from`.
    fn extend(&mut self, from: usize, left: usize, voters: u64) {
        self.leaf(voters);
        if left == 0 {
            return;
        }
        for o in from..self.pairs.len() {
            for &k in &self.pairs[o] {
                self.counts[k] += 1;
            }
            let pairs = std::mem::take(&mut self.pairs);
            self.pairs = pairs;
            self.extend(o, left - 1, voters + 1);
            for &k in &self.pairs[o] {
                self.counts[k] -= 1;
            }
        }
    }
}

/// Every profile with at most 5 candidates and at most 5 voters, up to
/// relabeling of candidates (the first voter ranks 0 > 1 > ... > m−1).
fn condorcet_sweep() -> (u64, u64, Vec<String>) {
    let (mut profiles, mut with_winner, mut violations) = (0, 0, Vec::new());
    for m in 1..=5 {
        let orders = permutations(m);
        let pairs = orders
            .iter()
            .map(|o| {
                let mut v = Vec::new();
                for i in 0..m {
                    for j in i + 1..m {
                        v.push(o[i] * m + o[j]);
                    }
                }
                v
            })
            .collect();
        let mut s = Sweep { m, pairs, counts: vec![0; m * m], profiles: 0, with_winner: 0, violations: Vec::new() };
        let identity = s.pairs[0].clone();
        for &k in &identity {
            s.counts[k] += 1;
        }
        s.extend(0, 4, 1);
        profiles += s.profiles;
        with_winner += s.with_winner;
        violations.extend(s.violations.into_iter().take(5));
    }
    (profiles, with_winner, violations)
}

fn criterion_10() -> Outcome {
    let mut violations: Vec<String> = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(1010);
    let scoring = [ScoringRule::Borda, ScoringRule::plurality(), short(&[3, 1]), ScoringRule::veto(), ScoringRule::veto_like(4, vec![2, 1]).unwrap()];
    for i in 0..400u64 {
        let candidates: usize = rng.gen_range(1..=9);
        let voters = rng.gen_range(1..=12);
        let inst = generate_random(RandomParams {
            candidates,
            parties: rng.gen_range(1..=candidates),
            voters,
            types: rng.gen_range(1..=voters as usize),
            seed: i,
        })
        .unwrap();
        let e = inst.election();
        let full = e.majority();
        for a in 0..candidates {
            for b in 0..candidates {
                if a != b && full.get(a, b) + full.get(b, a) != voters {
                    violations.push(format!("complement #{i}"));
                }
            }
        }
        let nominees: Vec<Candidate> = inst.parties().iter().map(|p| p[rng.gen_range(0..p.len())]).collect();
        let red = inst.reduce(&nominees).unwrap();
        for s in &scoring {
            let table = positional_scores(&red, s);
            let vec = s.effective_vector(nominees.len()).unwrap();
            if table.total() != voters * vec.iter().sum::<u64>() {
                violations.push(format!("conservation #{i} {s}"));
            }
        }
        let m = red.majority();
        for alpha in [Alpha::ZERO, Alpha::HALF, Alpha::ONE, Alpha::new(1, 3).unwrap()] {
            let t = copeland_from_matrix(&m, red.nominees(), alpha);
            let (mut decided, mut tied) = (0u64, 0u64);
            for (x, &a) in red.nominees().iter().enumerate() {
                for &b in &red.nominees()[x + 1..] {
                    if m.tied(a, b) {
                        tied += 1;
                    } else {
                        decided += 1;
                    }
                }
            }
            let total: u64 = red.nominees().iter().map(|&c| t.scaled(c)).sum();
            if red.nominees().len() > 1 && total != decided * alpha.denom() + 2 * tied * alpha.numer() {
                violations.push(format!("copeland pair identity #{i} α = {alpha}"));
            }
        }
        for tb in [TieBreak::Lexicographic, TieBreak::Seeded(i)] {
            let res = ranked_pairs_from_matrix(&m, red.nominees(), tb);
            let arcs = ranked_pairs_arcs(&m, red.nominees(), tb);
            let mut graph: Vec<(Candidate, Candidate)> = Vec::new();
            let mut next = res.locked.iter().peekable();
            for arc in arcs {
                if next.peek() == Some(&&arc) {
                    next.next();
                    graph.push(arc);
                    if !acyclic(&graph, candidates) {
                        violations.push(format!("ranked pairs cycle after lock #{i}"));
                    }
                } else {
                    let mut with = graph.clone();
                    with.push(arc);
                    if acyclic(&with, candidates) {
                        violations.push(format!("ranked pairs skipped a safe arc #{i}"));
                    }
                }
            }
            if next.next().is_some() || ranked_pairs_from_matrix(&m, red.nominees(), tb) != res {
                violations.push(format!("ranked pairs lock order/determinism #{i}"));
            }
        }
    }
    let (profiles, with_winner, sweep_violations) = condorcet_sweep();
    violations.extend(sweep_violations);
    if violations.is_empty() {
        Ok(format!(
            "400 random elections (conservation, complement, Copeland pair identity, Ranked Pairs locks); Condorcet sweep {profiles} profiles, {with_winner} with a Condorcet winner"
        ))
    } else {
        violations.truncate(10);
        Err(violations.join(", "))
    }
}

fn acyclic(arcs: &[(Candidate, Candidate)], n: usize) -> bool {
    let mut indeg = vec![0; n];
    for &(_, b) in arcs {
        indeg[b] += 1;
    }
    let mut stack: Vec<Candidate> = (0..n).filter(|&c| indeg[c] == 0).collect();
    let mut seen = 0;
    while let Some(x) = stack.pop() {
        seen += 1;
        for &(a, b) in arcs {
            if a == x {
                indeg[b] -= 1;
                if indeg[b] == 0 {
                    stack.push(b);
                }
            }
        }
    }
    seen == n
}

fn main() -> ExitCode {
    let mut results: Vec<(u32, Outcome, Duration)> = Vec::new();
    let mut timed = |id: u32, f: &dyn Fn() -> Outcome| {
        let start = Instant::now();
        let out = f();
        results.push((id, out, start.elapsed()));
        let (id, out, t) = results.last().unwrap();
        let (status, detail) = match out {
            Ok(d) => ("PASS", d.clone()),
            Err(d) => ("FAIL", d.clone()),
        };
        println!("criterion {id:>2}: {status} [{:.1}s] {detail}", t.as_secs_f64());
    };

    timed(1, &criterion_1);
    let start = Instant::now();
    let (disagreements, no_count, bad_certs, comparisons) = oracle_suite();
    let suite_time = start.elapsed();
    timed(2, &|| {
        if !disagreements.is_empty() {
            return Err(format!("{} disagreements: {}", disagreements.len(), disagreements[..disagreements.len().min(5)].join("; ")));
        }
        if suite_time >= Duration::from_secs(60) {
            return Err(format!("suite took {suite_time:?}"));
        }
        Ok(format!("500 instances × 10 rules, {comparisons} comparisons, zero disagreements in {:.1}s", suite_time.as_secs_f64()))
    });
    timed(3, &|| {
        if bad_certs.is_empty() {
            Ok(format!("{no_count} NO certificates re-validated"))
        } else {
            Err(format!("{} of {no_count} certificates invalid: {}", bad_certs.len(), bad_certs[..bad_certs.len().min(5)].join("; ")))
        }
    });
    timed(4, &|| {
        let start = Instant::now();
        let out = criterion_4()?;
        if start.elapsed() >= Duration::from_secs(120) {
            return Err(format!("{out}; took {:?}", start.elapsed()));
        }
        Ok(out)
    });
    timed(5, &criterion_5);
    timed(6, &criterion_6);
    timed(7, &criterion_7);
    timed(8, &criterion_8);
    timed(9, &criterion_9);
    timed(10, &criterion_10);

    let mut unexpected = 0;
    for (id, out, _) in &results {
        if out.is_err() {
            match KNOWN_GAPS.iter().find(|(k, _)| k == id) {
                Some((_, why)) => println!("criterion {id:>2}: known gap: {why}"),
                None => unexpected += 1,
            }
        }
    }
    let passed = results.iter().filter(|r| r.1.is_ok()).count();
    println!("acceptance: {passed}/{} criteria pass", results.len());
    if unexpected > 0 {
        ExitCode::FAILURE
    } else {
        ExitCode::SUCCESS
    }
}
