use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};

use necpres::io::{generate_random, parse_instance, serialize_with_comments, InstanceStats, RandomParams, VerdictReport};
use necpres::reductions::{
    clique_to_ranked_pairs, hitting_set_to_short, hitting_set_to_vetolike, sat_to_ranked_pairs, sat_to_short, sat_to_vetolike, Formula22E3,
    HittingSetInstance, MulticoloredGraph, Reduction,
};
use necpres::solvers::{check_certificate, solve_with, SolveError, SolverKind, DEFAULT_BRUTEFORCE_BUDGET};
use necpres::{PartyInstance, Rule, ScoringRule};

const BUDGET_ENV: &str = "NECPRES_BRUTEFORCE_BUDGET";

/// Exit codes.
const EXIT_OTHER: u8 = 1;
const EXIT_PARSE: u8 = 2;
const EXIT_BUDGET: u8 = 3;
const EXIT_DISAGREE: u8 = 4;
const EXIT_BAD_CERT: u8 = 5;

#[derive(Parser)]
#[command(name = "necpres", version, about = "Decide whether a candidate wins every nomination of the other parties")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve one instance and print a JSON verdict report.
    Solve {
        #[arg(long)]
        rule: String,
        #[arg(long)]
        file: PathBuf,
        /// auto, bruteforce, borda, copeland, maximin, short or vetolike.
        #[arg(long, default_value = "auto")]
        solver: String,
    },
    /// Re-validate the certificate in a verdict report.
    Check {
        #[arg(long)]
        file: PathBuf,
        #[arg(long)]
        certificate: PathBuf,
        /// Overrides the rule recorded in the report.
        #[arg(long)]
        rule: Option<String>,
    },
    /// Run the specialized solver and brute force; fail on disagreement.
    Crosscheck {
        #[arg(long)]
        rule: String,
        #[arg(long, conflicts_with = "random")]
        file: Option<PathBuf>,
        /// Check this many random instances instead of a file.
        #[arg(long)]
        random: Option<u64>,
        #[command(flatten)]
        params: GenArgs,
    },
    /// Compile a source-problem instance into a Necessary President file.
    Reduce {
        #[arg(long, value_enum)]
        from: Source,
        /// Scoring rule for sat/hittingset; ignored for ranked-pairs targets.
        #[arg(long)]
        rule: String,
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Print instance parameters and a majority-matrix summary.
    Stats {
        #[arg(long)]
        file: PathBuf,
    },
    /// Time the polynomial solvers on random instances.
    Bench {
        /// borda, copeland, maximin or all.
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
    /// Write a random instance.
    Generate {
        #[command(flatten)]
        params: GenArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(clap::Args, Clone, Copy)]
struct GenArgs {
    #[arg(long, default_value_t = 6)]
    candidates: usize,
    #[arg(long, default_value_t = 3)]
    parties: usize,
    #[arg(long, default_value_t = 5)]
    voters: u64,
    #[arg(long, default_value_t = 3)]
    types: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

impl GenArgs {
    fn params(self, seed: u64) -> RandomParams {
        RandomParams { candidates: self.candidates, parties: self.parties, voters: self.voters, types: self.types, seed }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Source {
    Sat,
    Hittingset,
    Clique,
}

struct Failure {
    code: u8,
    message: String,
}

fn fail(code: u8, message: impl Into<String>) -> Failure {
    Failure { code, message: message.into() }
}

type Outcome = Result<(), Failure>;

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| fail(EXIT_OTHER, format!("{}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> Outcome {
    fs::write(path, text).map_err(|e| fail(EXIT_OTHER, format!("{}: {e}", path.display())))
}

fn load(path: &Path) -> Result<PartyInstance, Failure> {
    parse_instance(&read(path)?).map_err(|e| fail(EXIT_PARSE, format!("{}: {e}", path.display())))
}

fn parse_rule(s: &str) -> Result<Rule, Failure> {
    s.parse().map_err(|e| fail(EXIT_PARSE, format!("rule `{s}`: {e}")))
}

fn brute_budget() -> Result<u64, Failure> {
    match std::env::var(BUDGET_ENV) {
        Ok(v) => v.trim().parse().map_err(|_| fail(EXIT_PARSE, format!("{BUDGET_ENV}: not a number: `{v}`"))),
        Err(_) => Ok(DEFAULT_BRUTEFORCE_BUDGET),
    }
}

fn solve_error(e: SolveError) -> Failure {
    match e {
        SolveError::BudgetExceeded { .. } => fail(EXIT_BUDGET, e.to_string()),
        SolveError::RuleMismatch { .. } => fail(EXIT_OTHER, e.to_string()),
    }
}

fn solve(rule: &str, file: &Path, solver: &str) -> Outcome {
    let instance = load(file)?;
    let rule = parse_rule(rule)?;
    let (kind, routing) = if solver == "auto" {
        let k = SolverKind::auto(&rule);
        (k, format!("auto: {rule} -> {k}"))
    } else {
        let k: SolverKind = solver.parse().map_err(|e: String| fail(EXIT_PARSE, e))?;
        (k, format!("explicit: {k}"))
    };
    let start = Instant::now();
    let verdict = solve_with(&instance, &rule, kind, brute_budget()?).map_err(solve_error)?;
    let ms = start.elapsed().as_secs_f64() * 1e3;
    println!("{}", VerdictReport::new(&instance, &verdict, routing, ms).to_json());
    Ok(())
}

fn check(file: &Path, certificate: &Path, rule: Option<&str>) -> Outcome {
    let instance = load(file)?;
    let report = VerdictReport::from_json(&read(certificate)?).map_err(|e| fail(EXIT_PARSE, format!("{}: {e}", certificate.display())))?;
    let rule = parse_rule(rule.unwrap_or(&report.rule))?;
    let doc = report.certificate.ok_or_else(|| fail(EXIT_BAD_CERT, "report carries no certificate"))?;
    let cert = doc.resolve(&instance).map_err(|e| fail(EXIT_BAD_CERT, format!("invalid certificate: {e}")))?;
    check_certificate(&instance, &rule, &cert).map_err(|e| fail(EXIT_BAD_CERT, format!("invalid certificate: {e}")))?;
    println!("valid: p loses under {rule}, beaten by {}", doc.witness);
    Ok(())
}

/// One comparison; returns a description of the disagreement, if any.
fn compare(instance: &PartyInstance, rule: &Rule, budget: u64) -> Result<Option<String>, Failure> {
    let kind = SolverKind::specialized_for(rule).ok_or_else(|| fail(EXIT_OTHER, format!("no specialized solver for `{rule}`")))?;
    let fast = solve_with(instance, rule, kind, budget).map_err(solve_error)?;
    let slow = solve_with(instance, rule, SolverKind::BruteForce, budget).map_err(solve_error)?;
    if let Some(c) = &fast.certificate {
        if let Err(e) = check_certificate(instance, rule, c) {
            return Ok(Some(format!("{kind} certificate rejected: {e}")));
        }
    }
    Ok((fast.answer != slow.answer).then(|| format!("{kind} says {}, brute force says {}", fast.answer, slow.answer)))
}

fn crosscheck(rule: &str, file: Option<&Path>, random: Option<u64>, params: GenArgs) -> Outcome {
    let rule = parse_rule(rule)?;
    let budget = brute_budget()?;
    if let Some(file) = file {
        let instance = load(file)?;
        return match compare(&instance, &rule, budget)? {
            None => {
                println!("agree");
                Ok(())
            }
            Some(d) => Err(fail(EXIT_DISAGREE, d)),
        };
    }
    let count = random.ok_or_else(|| fail(EXIT_OTHER, "pass --file or --random"))?;
    let mut bad = 0;
    for i in 0..count {
        let seed = params.seed.wrapping_add(i);
        let instance = generate_random(params.params(seed)).map_err(|e| fail(EXIT_OTHER, e.to_string()))?;
        if let Some(d) = compare(&instance, &rule, budget)? {
            eprintln!("seed {seed}: {d}");
            bad += 1;
        }
    }
    println!("{count} instances, {bad} disagreements");
    if bad > 0 {
        return Err(fail(EXIT_DISAGREE, format!("{bad} disagreements")));
    }
    Ok(())
}

fn reduce(from: Source, rule: &str, input: &Path, out: &Path) -> Outcome {
    let text = read(input)?;
    let parse_err = |e: necpres::reductions::ReductionError| fail(EXIT_PARSE, format!("{}: {e}", input.display()));
    let gen_err = |e: necpres::reductions::ReductionError| fail(EXIT_OTHER, e.to_string());
    let rule = parse_rule(rule)?;
    let scoring = || match &rule {
        Rule::Scoring(s @ (ScoringRule::Short(_) | ScoringRule::VetoLike { .. })) => Ok(s.clone()),
        _ => Err(fail(EXIT_OTHER, format!("rule `{rule}` has no reduction from this source"))),
    };
    let red: Reduction = match from {
        Source::Sat => {
            let phi = Formula22E3::from_dimacs(&text).map_err(parse_err)?;
            match &rule {
                Rule::RankedPairs(_) => sat_to_ranked_pairs(&phi),
                _ => match scoring()? {
                    s @ ScoringRule::Short(_) => sat_to_short(&phi, &s),
                    s => sat_to_vetolike(&phi, &s),
                },
            }
            .map_err(gen_err)?
        }
        Source::Hittingset => {
            let h = HittingSetInstance::from_text(&text).map_err(parse_err)?;
            match scoring()? {
                s @ ScoringRule::Short(_) => hitting_set_to_short(&h, &s),
                s => hitting_set_to_vetolike(&h, &s),
            }
            .map_err(gen_err)?
        }
        Source::Clique => {
            if !matches!(rule, Rule::RankedPairs(_)) {
                return Err(fail(EXIT_OTHER, "the clique reduction targets ranked pairs"));
            }
            let g = MulticoloredGraph::from_text(&text).map_err(parse_err)?;
            clique_to_ranked_pairs(&g).map_err(gen_err)?
        }
    };
    let mut comments = vec![format!("generated from {} under {rule}", input.display())];
    comments.extend(red.notes);
    write(out, &serialize_with_comments(&red.instance, &comments))
}

fn stats(file: &Path) -> Outcome {
    let instance = load(file)?;
    let s = InstanceStats::of(&instance);
    let e = instance.election();
    println!("t = {}  s = {}  tau = {}  |V| = {}  |C| = {}", s.parties, s.max_party_size, s.voter_types, s.voters, s.candidates);
    println!("distinguished: {}", e.label(instance.distinguished()));
    let m = e.majority();
    let n = e.num_candidates();
    let (mut arcs, mut ties) = (0, 0);
    let mut max_margin = 0;
    for a in 0..n {
        for b in a + 1..n {
            let (x, y) = (m.get(a, b), m.get(b, a));
            if x == y {
                ties += 1;
            } else {
                arcs += 1;
                max_margin = max_margin.max(x.abs_diff(y));
            }
        }
    }
    println!("majority graph: {arcs} arcs, {ties} ties, largest margin {max_margin}");
    let p = instance.distinguished();
    let beats = (0..n).filter(|&c| c != p && m.get(p, c) > m.get(c, p)).count();
    let beaten = (0..n).filter(|&c| c != p && m.get(c, p) > m.get(p, c)).count();
    println!("p beats {beats}, loses to {beaten} head-to-head");
    Ok(())
}

fn bench(suite: &str, seed: u64) -> Outcome {
    let rules: Vec<Rule> = match suite {
        "borda" => vec![Rule::borda()],
        "copeland" => vec!["copeland:1/2".parse().unwrap()],
        "maximin" => vec![Rule::Maximin],
        "all" => vec![Rule::borda(), "copeland:1/2".parse().unwrap(), Rule::Maximin],
        _ => return Err(fail(EXIT_OTHER, format!("unknown suite `{suite}` (borda, copeland, maximin, all)"))),
    };
    println!("{:<14} {:>5} {:>6} {:>4} {:>10}  answer", "rule", "|C|", "|V|", "t", "ms");
    for (c, v, t) in [(25, 100, 10), (50, 250, 20), (100, 500, 30), (200, 1000, 50)] {
        let instance =
            generate_random(RandomParams { candidates: c, parties: t, voters: v, types: 50, seed }).map_err(|e| fail(EXIT_OTHER, e.to_string()))?;
        for rule in &rules {
            let start = Instant::now();
            let verdict = solve_with(&instance, rule, SolverKind::auto(rule), 0).map_err(solve_error)?;
            let ms = start.elapsed().as_secs_f64() * 1e3;
            println!("{:<14} {c:>5} {v:>6} {t:>4} {ms:>10.2}  {}", rule.to_string(), verdict.answer);
        }
    }
    Ok(())
}

fn generate(params: GenArgs, out: Option<&Path>) -> Outcome {
    let instance = generate_random(params.params(params.seed)).map_err(|e| fail(EXIT_OTHER, e.to_string()))?;
    let comment = format!(
        "random: candidates={} parties={} voters={} types={} seed={}",
        params.candidates, params.parties, params.voters, params.types, params.seed
    );
    let text = serialize_with_comments(&instance, &[comment]);
    match out {
        Some(path) => write(path, &text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Solve { rule, file, solver } => solve(rule, file, solver),
        Command::Check { file, certificate, rule } => check(file, certificate, rule.as_deref()),
        Command::Crosscheck { rule, file, random, params } => crosscheck(rule, file.as_deref(), *random, *params),
        Command::Reduce { from, rule, input, out } => reduce(*from, rule, input, out),
        Command::Stats { file } => stats(file),
        Command::Bench { suite, seed } => bench(suite, *seed),
        Command::Generate { params, out } => generate(*params, out.as_deref()),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
