//! Instance files, random instances, PrefLib import and verdict reports.
//!
//! Instance format (`#` starts a comment):
//!
//! ```text
//! necpres 1
//! candidates a1 a2 b1 b2 p
//! [parties]
//! a1 a2
//! b1 b2
//! *p
//! [votes]
//! 1: p > a1 > b1 > a2 > b2  # v1
//! ```
//!
//! A comment after a vote line holds the names of those voters.

mod preflib;
mod report;

use std::collections::HashMap;
use std::fmt;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::election::{Election, ModelError, PartyInstance, VoterType};

pub use preflib::{import_preflib, parse_party_file, parse_preflib};
pub use report::{CertificateDoc, InstanceStats, VerdictReport};

pub const FORMAT_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub struct ParseError {
    /// 1-based; 0 when the error is not tied to one line.
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.line == 0 {
            f.write_str(&self.message)
        } else {
            write!(f, "line {}, column {}: {}", self.line, self.column, self.message)
        }
    }
}

impl ParseError {
    pub(crate) fn at(line: usize, column: usize, message: impl Into<String>) -> Self {
        ParseError { line, column, message: message.into() }
    }
}

impl From<ModelError> for ParseError {
    fn from(e: ModelError) -> Self {
        ParseError::at(0, 0, e.to_string())
    }
}

#[derive(PartialEq)]
enum Section {
    Header,
    Parties,
    Votes,
}

/// 1-based column of `needle` inside `line` (which it must borrow from).
fn col(line: &str, needle: &str) -> usize {
    needle.as_ptr() as usize - line.as_ptr() as usize + 1
}

pub fn parse_instance(text: &str) -> Result<PartyInstance, ParseError> {
    let mut section = Section::Header;
    let mut version_seen = false;
    let mut labels: Option<Vec<String>> = None;
    let mut index: HashMap<String, usize> = HashMap::new();
    let mut parties: Vec<Vec<usize>> = Vec::new();
    let mut star: Option<(usize, usize)> = None;
    let mut types: Vec<VoterType> = Vec::new();
    let mut type_lines: Vec<usize> = Vec::new();

    for (i, raw) in text.lines().enumerate() {
        let ln = i + 1;
        let (body, comment) = match raw.find('#') {
            Some(k) => (&raw[..k], Some(raw[k + 1..].trim())),
            None => (raw, None),
        };
        let body = body.trim_end();
        if body.trim().is_empty() {
            continue;
        }
        let trimmed = body.trim_start();
        match trimmed {
            "[parties]" => {
                if labels.is_none() {
                    return Err(ParseError::at(ln, 1, "`[parties]` before the `candidates` line"));
                }
                section = Section::Parties;
                continue;
            }
            "[votes]" => {
                if section != Section::Parties {
                    return Err(ParseError::at(ln, 1, "`[votes]` must follow the `[parties]` block"));
                }
                section = Section::Votes;
                continue;
            }
            _ => {}
        }
        match section {
            Section::Header => {
                let mut words = trimmed.split_whitespace();
                match words.next() {
                    Some("necpres") => {
                        let v = words.next().ok_or_else(|| ParseError::at(ln, body.len() + 1, "missing format version"))?;
                        if v != FORMAT_VERSION.to_string() {
                            return Err(ParseError::at(ln, col(raw, v), format!("unsupported format version `{v}`")));
                        }
                        version_seen = true;
                    }
                    Some("candidates") => {
                        if !version_seen {
                            return Err(ParseError::at(ln, 1, "missing `necpres 1` header"));
                        }
                        let mut ls = Vec::new();
                        for w in words {
                            if index.insert(w.to_string(), ls.len()).is_some() {
                                return Err(ParseError::at(ln, col(raw, w), format!("duplicate candidate label `{w}`")));
                            }
                            if w.starts_with('*') || w.contains(['>', ':']) {
                                return Err(ParseError::at(ln, col(raw, w), format!("label `{w}` contains a reserved character")));
                            }
                            ls.push(w.to_string());
                        }
                        if ls.is_empty() {
                            return Err(ParseError::at(ln, body.len() + 1, "no candidates"));
                        }
                        labels = Some(ls);
                    }
                    _ => return Err(ParseError::at(ln, col(raw, trimmed), "expected `necpres <version>` or `candidates ...`")),
                }
            }
            Section::Parties => {
                let mut party = Vec::new();
                for w in trimmed.split_whitespace() {
                    let (name, starred) = match w.strip_prefix('*') {
                        Some(n) => (n, true),
                        None => (w, false),
                    };
                    let &c = index.get(name).ok_or_else(|| ParseError::at(ln, col(raw, w), format!("unknown label `{name}`")))?;
                    if starred {
                        if star.is_some() {
                            return Err(ParseError::at(ln, col(raw, w), "duplicate `*`: only one distinguished candidate"));
                        }
                        star = Some((c, ln));
                    }
                    party.push(c);
                }
                parties.push(party);
            }
            Section::Votes => {
                let colon = trimmed.find(':').ok_or_else(|| ParseError::at(ln, col(raw, trimmed), "expected `count: a > b > ...`"))?;
                let count_str = trimmed[..colon].trim();
                let count: u64 = count_str
                    .parse()
                    .ok()
                    .filter(|&c| c > 0)
                    .ok_or_else(|| ParseError::at(ln, col(raw, trimmed), format!("malformed count `{count_str}`")))?;
                let n = labels.as_ref().map_or(0, Vec::len);
                let mut order = Vec::with_capacity(n);
                let mut seen = vec![false; n];
                for item in trimmed[colon + 1..].split('>') {
                    let name = item.trim();
                    let at = if name.is_empty() { col(raw, item) } else { col(raw, name) };
                    let &c = index.get(name).ok_or_else(|| ParseError::at(ln, at, format!("unknown label `{name}`")))?;
                    if std::mem::replace(&mut seen[c], true) {
                        return Err(ParseError::at(ln, at, format!("not a permutation: `{name}` listed twice")));
                    }
                    order.push(c);
                }
                if order.len() != n {
                    return Err(ParseError::at(ln, body.len() + 1, format!("not a permutation: lists {} of {n} candidates", order.len())));
                }
                types.push(VoterType { order, count, names: comment.filter(|c| !c.is_empty()).map(str::to_string) });
                type_lines.push(ln);
            }
        }
    }

    let labels = labels.ok_or_else(|| ParseError::at(0, 0, "missing `candidates` line"))?;
    if section != Section::Votes {
        return Err(ParseError::at(0, 0, "missing `[votes]` block"));
    }
    if types.is_empty() {
        return Err(ParseError::at(0, 0, "no voters"));
    }
    let (p, _) = star.ok_or_else(|| ParseError::at(0, 0, "no distinguished candidate (mark one with `*`)"))?;
    let election = Election::new(labels, types).map_err(|e| match e {
        ModelError::NotAPermutation { index, .. } | ModelError::ZeroCount { index } => ParseError::at(type_lines[index], 1, e.to_string()),
        e => e.into(),
    })?;
    Ok(PartyInstance::new(election, parties, p)?)
}

/// Canonical text: parties in instance order, one line per voter type,
/// voter names as trailing comments.
pub fn serialize_instance(instance: &PartyInstance) -> String {
    serialize_with_comments(instance, &[])
}

/// As [`serialize_instance`], with `comments` written as leading `#` lines.
pub fn serialize_with_comments(instance: &PartyInstance, comments: &[String]) -> String {
    let e = instance.election();
    let mut s = String::new();
    for c in comments {
        s += &format!("# {c}\n");
    }
    s += &format!("necpres {FORMAT_VERSION}\ncandidates {}\n[parties]\n", e.labels().join(" "));
    for party in instance.parties() {
        let names: Vec<String> =
            party.iter().map(|&c| if c == instance.distinguished() { format!("*{}", e.label(c)) } else { e.label(c).to_string() }).collect();
        s += &names.join(" ");
        s.push('\n');
    }
    s += "[votes]\n";
    for t in e.voter_types() {
        let order: Vec<&str> = t.order.iter().map(|&c| e.label(c)).collect();
        s += &format!("{}: {}", t.count, order.join(" > "));
        if let Some(n) = &t.names {
            s += &format!("  # {n}");
        }
        s.push('\n');
    }
    s
}

/// `serialize(parse(text))`.
pub fn normalize(text: &str) -> Result<String, ParseError> {
    parse_instance(text).map(|i| serialize_instance(&i))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RandomParams {
    pub candidates: usize,
    pub parties: usize,
    pub voters: u64,
    /// Requested voter types; identical draws merge, so the realized τ may
    /// be smaller.
    pub types: usize,
    pub seed: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GenerateError {
    #[error("infeasible parameters: {0}")]
    Infeasible(String),
}

/// Impartial culture: `types` uniformly random orders with a random
/// composition of `voters` into positive counts, and a balanced random
/// partition (party sizes differ by at most one). Labels are `c1, c2, ...`;
/// the distinguished candidate is drawn uniformly.
pub fn generate_random(params: RandomParams) -> Result<PartyInstance, GenerateError> {
    let RandomParams { candidates: n, parties: t, voters, types, seed } = params;
    let bad = |s: &str| Err(GenerateError::Infeasible(s.to_string()));
    if n == 0 {
        return bad("need at least one candidate");
    }
    if t == 0 || t > n {
        return bad("need 1 ≤ t ≤ |C|");
    }
    if types == 0 || types as u64 > voters {
        return bad("need 1 ≤ τ ≤ |V|");
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut cuts: Vec<u64> = rand::seq::index::sample(&mut rng, (voters - 1) as usize, types - 1).into_iter().map(|c| c as u64 + 1).collect();
    cuts.sort_unstable();
    cuts.push(voters);
    let mut prev = 0;
    let mut vt = Vec::with_capacity(types);
    for cut in cuts {
        let mut order: Vec<usize> = (0..n).collect();
        order.shuffle(&mut rng);
        vt.push(VoterType::new(order, cut - prev));
        prev = cut;
    }
    let election = Election::new((1..=n).map(|i| format!("c{i}")).collect(), vt).expect("valid by construction");
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(&mut rng);
    let mut parties = vec![Vec::new(); t];
    for (i, &c) in perm.iter().enumerate() {
        parties[i % t].push(c);
    }
    for party in &mut parties {
        party.sort_unstable();
    }
    let p = rng.gen_range(0..n);
    Ok(PartyInstance::new(election, parties, p).expect("valid by construction"))
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) const EXAMPLE_ONE: &str = "\
# three parties, three voters
necpres 1
candidates a1 a2 b1 b2 p
[parties]
a1 a2
b1 b2
*p
[votes]
1: p > a1 > b1 > a2 > b2  # v1
1: a1 > p > b1 > a2 > b2  # v2
1: b1 > b2 > a2 > p > a1  # v3
";

    #[test]
    fn example_one_parses() {
        let inst = parse_instance(EXAMPLE_ONE).unwrap();
        let reference = crate::election::tests::example_one();
        assert_eq!(inst.parties(), reference.parties());
        assert_eq!(inst.distinguished(), reference.distinguished());
        let orders: Vec<_> = inst.election().voter_types().iter().map(|t| t.order.clone()).collect();
        let want: Vec<_> = reference.election().voter_types().iter().map(|t| t.order.clone()).collect();
        assert_eq!(orders, want);
        assert_eq!(inst.election().voter_types()[0].names.as_deref(), Some("v1"));
    }

    #[test]
    fn round_trip() {
        let once = normalize(EXAMPLE_ONE).unwrap();
        assert_eq!(normalize(&once).unwrap(), once);
        assert!(once.starts_with("necpres 1\n"));
    }

    fn err(text: &str) -> ParseError {
        parse_instance(text).unwrap_err()
    }

    #[test]
    fn errors_are_positioned() {
        let e = err("necpres 1\ncandidates a b\n[parties]\na b\n[votes]\n");
        assert_eq!(e.message, "no voters");
        let e = err("necpres 1\ncandidates a b\n[parties]\n*a\nb\n[votes]\n1: a > c\n");
        assert_eq!((e.line, e.column), (7, 8));
        assert!(e.message.contains("unknown label `c`"));
        let e = err("necpres 1\ncandidates a b\n[parties]\n*a *b\n[votes]\n1: a > b\n");
        assert_eq!((e.line, e.column), (4, 4));
        assert!(e.message.contains("duplicate `*`"));
        let e = err("necpres 1\ncandidates a b\n[parties]\n*a b\n[votes]\nx: a > b\n");
        assert!(e.message.contains("malformed count"));
        assert_eq!(e.line, 6);
        let e = err("necpres 1\ncandidates a b\n[parties]\n*a b\n[votes]\n1: a > a\n");
        assert!(e.message.contains("not a permutation"));
        let e = err("necpres 1\ncandidates a b\n[parties]\n*a\n[votes]\n1: a > b\n");
        assert!(e.message.contains("partition does not cover C"));
        let e = err("necpres 2\n");
        assert!(e.message.contains("version"));
    }

    #[test]
    fn random_is_deterministic() {
        let params = RandomParams { candidates: 8, parties: 3, voters: 11, types: 4, seed: 42 };
        let a = serialize_instance(&generate_random(params).unwrap());
        let b = serialize_instance(&generate_random(params).unwrap());
        assert_eq!(a, b);
        let singles = generate_random(RandomParams { parties: 8, ..params }).unwrap();
        assert!(singles.parties().iter().all(|p| p.len() == 1));
        assert!(generate_random(RandomParams { parties: 9, ..params }).is_err());
        assert!(generate_random(RandomParams { types: 12, ..params }).is_err());
    }

    #[test]
    fn random_realized_tau_and_balance() {
        for seed in 0..1000 {
            let params = RandomParams { candidates: 3, parties: 2, voters: 6, types: 4, seed };
            let inst = generate_random(params).unwrap();
            assert!(inst.election().num_types() <= 4);
            assert_eq!(inst.election().num_voters(), 6);
            let sizes: Vec<usize> = inst.parties().iter().map(Vec::len).collect();
            assert!(sizes.iter().max().unwrap() - sizes.iter().min().unwrap() <= 1);
        }
    }
}
