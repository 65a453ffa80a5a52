//! PrefLib strict-order import. PrefLib has no notion of parties, so those
//! come from a sidecar file using the party-block syntax of the instance
//! format (one party per line, `*` on the distinguished candidate).

use std::collections::HashMap;

use super::ParseError;
use crate::election::{Candidate, Election, PartyInstance, VoterType};

/// Alternative names with whitespace replaced, or `a{i}` when unnamed.
fn sanitize(name: &str) -> String {
    name.split_whitespace().collect::<Vec<_>>().join("_").replace(['>', ':', '#', '*'], "_")
}

/// Parses a PrefLib `soc` file, modern (`# ALTERNATIVE NAME i: ...` headers)
/// or legacy (numeric header block). Returns labels and voter types.
pub fn parse_preflib(text: &str) -> Result<(Vec<String>, Vec<VoterType>), ParseError> {
    let lines: Vec<(usize, &str)> = text.lines().enumerate().map(|(i, l)| (i + 1, l.trim())).filter(|(_, l)| !l.is_empty()).collect();
    if lines.iter().any(|(_, l)| l.starts_with('#')) {
        parse_modern(&lines)
    } else {
        parse_legacy(&lines)
    }
}

fn order_from(ln: usize, items: &str, n: usize) -> Result<Vec<Candidate>, ParseError> {
    if items.contains('{') {
        return Err(ParseError::at(ln, 1, "ties are not supported (strict orders only)"));
    }
    let mut order = Vec::with_capacity(n);
    let mut seen = vec![false; n];
    for tok in items.split(',') {
        let a: usize = tok.trim().parse().map_err(|_| ParseError::at(ln, 1, format!("bad alternative `{}`", tok.trim())))?;
        if a == 0 || a > n {
            return Err(ParseError::at(ln, 1, format!("alternative {a} out of range 1..={n}")));
        }
        if std::mem::replace(&mut seen[a - 1], true) {
            return Err(ParseError::at(ln, 1, format!("not a permutation: alternative {a} listed twice")));
        }
        order.push(a - 1);
    }
    if order.len() != n {
        return Err(ParseError::at(ln, 1, format!("incomplete order: {} of {n} alternatives", order.len())));
    }
    Ok(order)
}

fn parse_modern(lines: &[(usize, &str)]) -> Result<(Vec<String>, Vec<VoterType>), ParseError> {
    let mut n = None;
    let mut names: HashMap<usize, String> = HashMap::new();
    let mut types = Vec::new();
    for &(ln, l) in lines {
        if let Some(meta) = l.strip_prefix('#') {
            let meta = meta.trim();
            if let Some(v) = meta.strip_prefix("NUMBER ALTERNATIVES:") {
                n = Some(v.trim().parse::<usize>().map_err(|_| ParseError::at(ln, 1, "bad NUMBER ALTERNATIVES"))?);
            } else if let Some(rest) = meta.strip_prefix("ALTERNATIVE NAME ") {
                let (i, name) = rest.split_once(':').ok_or_else(|| ParseError::at(ln, 1, "bad ALTERNATIVE NAME line"))?;
                let i: usize = i.trim().parse().map_err(|_| ParseError::at(ln, 1, "bad alternative index"))?;
                names.insert(i, sanitize(name.trim()));
            } else if let Some(t) = meta.strip_prefix("DATA TYPE:") {
                if t.trim() != "soc" {
                    return Err(ParseError::at(ln, 1, format!("unsupported data type `{}` (need soc)", t.trim())));
                }
            }
            continue;
        }
        let n = n.ok_or_else(|| ParseError::at(ln, 1, "order before `# NUMBER ALTERNATIVES`"))?;
        let (count, items) = l.split_once(':').ok_or_else(|| ParseError::at(ln, 1, "expected `count: a,b,...`"))?;
        let count: u64 = count.trim().parse().map_err(|_| ParseError::at(ln, 1, format!("malformed count `{}`", count.trim())))?;
        types.push(VoterType::new(order_from(ln, items, n)?, count));
    }
    let n = n.ok_or_else(|| ParseError::at(0, 0, "missing `# NUMBER ALTERNATIVES`"))?;
    let labels = (1..=n).map(|i| names.remove(&i).unwrap_or_else(|| format!("a{i}"))).collect();
    Ok((labels, types))
}

fn parse_legacy(lines: &[(usize, &str)]) -> Result<(Vec<String>, Vec<VoterType>), ParseError> {
    let mut it = lines.iter().copied();
    let (ln, first) = it.next().ok_or_else(|| ParseError::at(0, 0, "empty file"))?;
    let n: usize = first.parse().map_err(|_| ParseError::at(ln, 1, "expected the number of alternatives"))?;
    let mut labels = Vec::with_capacity(n);
    for i in 1..=n {
        let (ln, l) = it.next().ok_or_else(|| ParseError::at(0, 0, "truncated alternative list"))?;
        let (idx, name) = l.split_once(',').ok_or_else(|| ParseError::at(ln, 1, "expected `index,name`"))?;
        if idx.trim().parse::<usize>().ok() != Some(i) {
            return Err(ParseError::at(ln, 1, format!("expected alternative {i}")));
        }
        labels.push(sanitize(name.trim()));
    }
    it.next().ok_or_else(|| ParseError::at(0, 0, "missing voter summary line"))?;
    let mut types = Vec::new();
    for (ln, l) in it {
        let (count, items) = l.split_once(',').ok_or_else(|| ParseError::at(ln, 1, "expected `count,a,b,...`"))?;
        let count: u64 = count.trim().parse().map_err(|_| ParseError::at(ln, 1, format!("malformed count `{}`", count.trim())))?;
        types.push(VoterType::new(order_from(ln, items, n)?, count));
    }
    Ok((labels, types))
}

/// Parses a party sidecar against known labels. Returns the parties and
/// the distinguished candidate.
pub fn parse_party_file(text: &str, labels: &[String]) -> Result<(Vec<Vec<Candidate>>, Candidate), ParseError> {
    let index: HashMap<&str, Candidate> = labels.iter().enumerate().map(|(i, l)| (l.as_str(), i)).collect();
    let mut parties = Vec::new();
    let mut star = None;
    for (i, raw) in text.lines().enumerate() {
        let body = raw.split('#').next().unwrap_or("");
        if body.trim().is_empty() {
            continue;
        }
        let mut party = Vec::new();
        for w in body.split_whitespace() {
            let column = w.as_ptr() as usize - raw.as_ptr() as usize + 1;
            let name = w.strip_prefix('*').unwrap_or(w);
            let &c = index.get(name).ok_or_else(|| ParseError::at(i + 1, column, format!("unknown label `{name}`")))?;
            if w.starts_with('*') && star.replace(c).is_some() {
                return Err(ParseError::at(i + 1, column, "duplicate `*`: only one distinguished candidate"));
            }
            party.push(c);
        }
        parties.push(party);
    }
    let p = star.ok_or_else(|| ParseError::at(0, 0, "no distinguished candidate (mark one with `*`)"))?;
    Ok((parties, p))
}

/// PrefLib profile plus party sidecar.
pub fn import_preflib(soc: &str, parties: &str) -> Result<PartyInstance, ParseError> {
    let (labels, types) = parse_preflib(soc)?;
    let (parties, p) = parse_party_file(parties, &labels)?;
    let election = Election::new(labels, types)?;
    Ok(PartyInstance::new(election, parties, p)?)
}
