//! Election data model: candidates, voter types, party partitions, reduced
//! elections and the pairwise majority matrix.
//!
//! Candidates are dense indices `0..n`; labels only matter at the I/O
//! boundary. Every structure here is immutable once built.

use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

/// Dense candidate index.
pub type Candidate = usize;

/// Violations of the election / party model.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error("election has no candidates")]
    NoCandidates,
    #[error("no voters")]
    NoVoters,
    #[error("duplicate candidate label `{0}`")]
    DuplicateLabel(String),
    #[error("voter type {index}: not a permutation ({detail})")]
    NotAPermutation { index: usize, detail: String },
    #[error("voter type {index}: count must be at least 1")]
    ZeroCount { index: usize },
    #[error("party {party}: party is empty")]
    EmptyParty { party: usize },
    #[error("party {party}: candidate {candidate} is out of range")]
    PartyMemberOutOfRange { party: usize, candidate: Candidate },
    #[error("parties overlap: candidate {candidate} appears in parties {first} and {second}")]
    PartitionOverlap { candidate: Candidate, first: usize, second: usize },
    #[error("partition does not cover C: candidate {candidate} belongs to no party")]
    PartitionGap { candidate: Candidate },
    #[error("distinguished candidate {0} is not in C")]
    DistinguishedOutOfRange(Candidate),
    #[error("nominee {0} is not a candidate")]
    NomineeOutOfRange(Candidate),
    #[error("party {party} nominates {count} candidates, expected exactly one")]
    BadNomination { party: usize, count: usize },
}

/// A group of voters sharing one strict order over all candidates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VoterType {
    /// Candidates from most to least preferred.
    pub order: Vec<Candidate>,
    pub count: u64,
    /// Free-form voter names (e.g. `y1 y2`), kept for auditable output.
    pub names: Option<String>,
}

impl VoterType {
    pub fn new(order: Vec<Candidate>, count: u64) -> Self {
        VoterType { order, count, names: None }
    }

    pub fn named(order: Vec<Candidate>, count: u64, names: impl Into<String>) -> Self {
        VoterType { order, count, names: Some(names.into()) }
    }
}

fn check_permutation(order: &[Candidate], n: usize, index: usize) -> Result<(), ModelError> {
    if order.len() != n {
        return Err(ModelError::NotAPermutation { index, detail: format!("lists {} candidates, expected {n}", order.len()) });
    }
    let mut seen = vec![false; n];
    for &c in order {
        if c >= n {
            return Err(ModelError::NotAPermutation { index, detail: format!("candidate {c} out of range") });
        }
        if std::mem::replace(&mut seen[c], true) {
            return Err(ModelError::NotAPermutation { index, detail: format!("candidate {c} listed twice") });
        }
    }
    Ok(())
}

/// Merges identical orders, summing their counts. The first occurrence of an
/// order fixes its position in the output.
pub fn compress_voter_types(raw: impl IntoIterator<Item = VoterType>, n: usize) -> Result<Vec<VoterType>, ModelError> {
    let mut out: Vec<VoterType> = Vec::new();
    let mut index_of: HashMap<Vec<Candidate>, usize> = HashMap::new();
    for (i, vt) in raw.into_iter().enumerate() {
        check_permutation(&vt.order, n, i)?;
        if vt.count == 0 {
            return Err(ModelError::ZeroCount { index: i });
        }
        match index_of.get(&vt.order) {
            Some(&k) => {
                let slot = &mut out[k];
                slot.count += vt.count;
                slot.names = match (slot.names.take(), vt.names) {
                    (Some(a), Some(b)) => Some(format!("{a} {b}")),
                    (a, b) => a.or(b),
                };
            }
            None => {
                index_of.insert(vt.order.clone(), out.len());
                out.push(vt);
            }
        }
    }
    Ok(out)
}

/// Compresses plain orders, one voter each.
pub fn compress_orders(raw: &[Vec<Candidate>], n: usize) -> Result<Vec<VoterType>, ModelError> {
    compress_voter_types(raw.iter().map(|o| VoterType::new(o.clone(), 1)), n)
}

/// A full profile over every potential candidate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Election {
    labels: Vec<String>,
    types: Vec<VoterType>,
    /// `ranks[t][c]` = position of `c` in type `t` (0 = top).
    ranks: Vec<Vec<u32>>,
    total: u64,
}

impl Election {
    /// Builds and compresses an election. Fails on malformed orders, zero
    /// counts, duplicate labels or an empty profile.
    pub fn new(labels: Vec<String>, types: Vec<VoterType>) -> Result<Self, ModelError> {
        let n = labels.len();
        if n == 0 {
            return Err(ModelError::NoCandidates);
        }
        let mut seen = HashMap::new();
        for l in &labels {
            if seen.insert(l.as_str(), ()).is_some() {
                return Err(ModelError::DuplicateLabel(l.clone()));
            }
        }
        let types = compress_voter_types(types, n)?;
        if types.is_empty() {
            return Err(ModelError::NoVoters);
        }
        let ranks = types
            .iter()
            .map(|t| {
                let mut r = vec![0u32; n];
                for (pos, &c) in t.order.iter().enumerate() {
                    r[c] = pos as u32;
                }
                r
            })
            .collect();
        let total = types.iter().map(|t| t.count).sum();
        Ok(Election { labels, types, ranks, total })
    }

    /// Convenience constructor with labels `c0, c1, ...`.
    pub fn from_orders(n: usize, types: Vec<VoterType>) -> Result<Self, ModelError> {
        Election::new((0..n).map(|i| format!("c{i}")).collect(), types)
    }

    pub fn num_candidates(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, c: Candidate) -> &str {
        &self.labels[c]
    }

    pub fn candidate_by_label(&self, label: &str) -> Option<Candidate> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn voter_types(&self) -> &[VoterType] {
        &self.types
    }

    /// Number of distinct voter types (τ).
    pub fn num_types(&self) -> usize {
        self.types.len()
    }

    /// Total number of voters |V|.
    pub fn num_voters(&self) -> u64 {
        self.total
    }

    /// Position of `c` in voter type `t` (0 = most preferred).
    #[inline]
    pub fn rank(&self, t: usize, c: Candidate) -> u32 {
        self.ranks[t][c]
    }

    /// True iff voters of type `t` prefer `a` to `b`.
    #[inline]
    pub fn prefers(&self, t: usize, a: Candidate, b: Candidate) -> bool {
        self.ranks[t][a] < self.ranks[t][b]
    }

    pub fn majority(&self) -> MajorityMatrix {
        let all: Vec<Candidate> = (0..self.num_candidates()).collect();
        MajorityMatrix::over(self, &all)
    }
}

/// An election plus a partition of its candidates into parties and a
/// distinguished candidate `p`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartyInstance {
    election: Election,
    parties: Vec<Vec<Candidate>>,
    party_of: Vec<usize>,
    distinguished: Candidate,
}

impl PartyInstance {
    pub fn new(election: Election, parties: Vec<Vec<Candidate>>, distinguished: Candidate) -> Result<Self, ModelError> {
        let n = election.num_candidates();
        let mut party_of = vec![usize::MAX; n];
        for (j, block) in parties.iter().enumerate() {
            if block.is_empty() {
                return Err(ModelError::EmptyParty { party: j });
            }
            for &c in block {
                if c >= n {
                    return Err(ModelError::PartyMemberOutOfRange { party: j, candidate: c });
                }
                if party_of[c] != usize::MAX {
                    return Err(ModelError::PartitionOverlap { candidate: c, first: party_of[c], second: j });
                }
                party_of[c] = j;
            }
        }
        if let Some(c) = party_of.iter().position(|&j| j == usize::MAX) {
            return Err(ModelError::PartitionGap { candidate: c });
        }
        if distinguished >= n {
            return Err(ModelError::DistinguishedOutOfRange(distinguished));
        }
        Ok(PartyInstance { election, parties, party_of, distinguished })
    }

    pub fn election(&self) -> &Election {
        &self.election
    }

    pub fn parties(&self) -> &[Vec<Candidate>] {
        &self.parties
    }

    pub fn party_of(&self, c: Candidate) -> usize {
        self.party_of[c]
    }

    pub fn distinguished(&self) -> Candidate {
        self.distinguished
    }

    /// Index of the party containing `p`.
    pub fn home_party(&self) -> usize {
        self.party_of[self.distinguished]
    }

    /// Number of parties (t).
    pub fn num_parties(&self) -> usize {
        self.parties.len()
    }

    /// Largest party size (s).
    pub fn max_party_size(&self) -> usize {
        self.parties.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// Candidates that can face `p`: everyone outside p's party.
    pub fn rivals(&self) -> impl Iterator<Item = Candidate> + '_ {
        let home = self.home_party();
        (0..self.election.num_candidates()).filter(move |&c| self.party_of[c] != home)
    }

    /// Parties other than p's, in index order.
    pub fn other_parties(&self) -> impl Iterator<Item = usize> + '_ {
        let home = self.home_party();
        (0..self.parties.len()).filter(move |&j| j != home)
    }

    pub fn reduce(&self, nominees: &[Candidate]) -> Result<ReducedElection<'_>, ModelError> {
        reduce(self, nominees)
    }
}

/// Re-checks every model invariant of an already constructed instance.
pub fn validate(instance: &PartyInstance) -> Result<(), ModelError> {
    let e = &instance.election;
    let rebuilt = Election::new(e.labels.clone(), e.types.clone())?;
    if rebuilt.types.len() != e.types.len() {
        return Err(ModelError::NotAPermutation { index: 0, detail: "duplicate voter types".into() });
    }
    PartyInstance::new(rebuilt, instance.parties.clone(), instance.distinguished).map(|_| ())
}

/// The election restricted to one nominee per party.
#[derive(Debug, Clone)]
pub struct ReducedElection<'a> {
    election: &'a Election,
    nominees: Vec<Candidate>,
    /// `positions[t][c]` = position of nominee `c` in the restricted order of
    /// type `t`; `u32::MAX` for non-nominees.
    positions: Vec<Vec<u32>>,
}

/// Restricts the instance to `nominees`, which must contain exactly one
/// candidate of every party.
pub fn reduce<'a>(instance: &'a PartyInstance, nominees: &[Candidate]) -> Result<ReducedElection<'a>, ModelError> {
    let n = instance.election.num_candidates();
    let mut per_party = vec![0usize; instance.parties.len()];
    for &c in nominees {
        if c >= n {
            return Err(ModelError::NomineeOutOfRange(c));
        }
        per_party[instance.party_of[c]] += 1;
    }
    if let Some((party, &count)) = per_party.iter().enumerate().find(|(_, &k)| k != 1) {
        return Err(ModelError::BadNomination { party, count });
    }
    Ok(ReducedElection::restrict(&instance.election, nominees))
}

impl<'a> ReducedElection<'a> {
    /// Restricts `election` to an arbitrary nonempty set of distinct
    /// candidates, without any party check.
    pub fn restrict(election: &'a Election, nominees: &[Candidate]) -> Self {
        let n = election.num_candidates();
        let mut nominees = nominees.to_vec();
        nominees.sort_unstable();
        nominees.dedup();
        let mut member = vec![false; n];
        for &c in &nominees {
            member[c] = true;
        }
        let positions = election
            .types
            .iter()
            .map(|t| {
                let mut pos = vec![u32::MAX; n];
                let mut next = 0u32;
                for &c in &t.order {
                    if member[c] {
                        pos[c] = next;
                        next += 1;
                    }
                }
                pos
            })
            .collect();
        ReducedElection { election, nominees, positions }
    }

    pub fn election(&self) -> &'a Election {
        self.election
    }

    /// Nominees in increasing index order.
    pub fn nominees(&self) -> &[Candidate] {
        &self.nominees
    }

    pub fn len(&self) -> usize {
        self.nominees.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nominees.is_empty()
    }

    pub fn contains(&self, c: Candidate) -> bool {
        self.nominees.binary_search(&c).is_ok()
    }

    /// Position of nominee `c` in voter type `t`'s restricted order.
    #[inline]
    pub fn position(&self, t: usize, c: Candidate) -> u32 {
        self.positions[t][c]
    }

    /// The restricted order of voter type `t`.
    pub fn order(&self, t: usize) -> Vec<Candidate> {
        self.election.types[t].order.iter().copied().filter(|&c| self.positions[t][c] != u32::MAX).collect()
    }

    pub fn num_types(&self) -> usize {
        self.election.num_types()
    }

    pub fn count(&self, t: usize) -> u64 {
        self.election.types[t].count
    }

    pub fn num_voters(&self) -> u64 {
        self.election.num_voters()
    }

    pub fn majority(&self) -> MajorityMatrix {
        MajorityMatrix::over(self.election, &self.nominees)
    }
}

/// Pairwise counts `N(c, c')`: voters preferring `c` to `c'`.
///
/// Indexed by original candidate index; entries involving candidates outside
/// the set the matrix was built over are zero, as is the diagonal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MajorityMatrix {
    n: usize,
    counts: Vec<u64>,
    voters: u64,
}

impl MajorityMatrix {
    fn over(election: &Election, members: &[Candidate]) -> Self {
        let n = election.num_candidates();
        let mut counts = vec![0u64; n * n];
        for (t, vt) in election.types.iter().enumerate() {
            let r = &election.ranks[t];
            for &a in members {
                for &b in members {
                    if r[a] < r[b] {
                        counts[a * n + b] += vt.count;
                    }
                }
            }
        }
        MajorityMatrix { n, counts, voters: election.total }
    }

    /// From raw row-major counts over `n` candidates. Used by sweeps that
    /// build many small profiles without an `Election`.
    pub fn from_counts(n: usize, counts: Vec<u64>, voters: u64) -> Self {
        assert_eq!(counts.len(), n * n, "counts must be n×n");
        MajorityMatrix { n, counts, voters }
    }

    /// `N(a, b)`.
    #[inline]
    pub fn get(&self, a: Candidate, b: Candidate) -> u64 {
        self.counts[a * self.n + b]
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn num_voters(&self) -> u64 {
        self.voters
    }

    pub fn defeats(&self, a: Candidate, b: Candidate) -> bool {
        self.get(a, b) > self.get(b, a)
    }

    pub fn tied(&self, a: Candidate, b: Candidate) -> bool {
        a != b && self.get(a, b) == self.get(b, a)
    }
}

/// Pairwise matrix of a full election.
pub fn pairwise_matrix(election: &Election) -> MajorityMatrix {
    election.majority()
}

impl fmt::Display for MajorityMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for a in 0..self.n {
            let row: Vec<String> = (0..self.n).map(|b| self.get(a, b).to_string()).collect();
            writeln!(f, "{}", row.join(" "))?;
        }
        Ok(())
    }
}
