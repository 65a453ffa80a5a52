//! Machine-readable verdict documents.

use serde::{Deserialize, Serialize};

use crate::election::PartyInstance;
use crate::solvers::{Answer, Certificate, Verdict};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CertificateDoc {
    pub nominees: Vec<String>,
    pub witness: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InstanceStats {
    pub parties: usize,
    pub max_party_size: usize,
    pub voter_types: usize,
    pub voters: u64,
    pub candidates: usize,
}

impl InstanceStats {
    pub fn of(instance: &PartyInstance) -> Self {
        let e = instance.election();
        InstanceStats {
            parties: instance.num_parties(),
            max_party_size: instance.max_party_size(),
            voter_types: e.num_types(),
            voters: e.num_voters(),
            candidates: e.num_candidates(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerdictReport {
    pub rule: String,
    pub tiebreak: Option<String>,
    pub solver: String,
    /// How the solver was chosen, e.g. `auto: copeland`.
    pub routing: String,
    pub answer: Answer,
    pub certificate: Option<CertificateDoc>,
    pub stats: InstanceStats,
    pub guesses: u64,
    pub wall_ms: f64,
    pub notes: Vec<String>,
}

impl VerdictReport {
    pub fn new(instance: &PartyInstance, verdict: &Verdict, routing: String, wall_ms: f64) -> Self {
        let e = instance.election();
        VerdictReport {
            rule: verdict.rule.to_string(),
            tiebreak: verdict.rule.tiebreak().map(|t| t.to_string()),
            solver: verdict.solver.to_string(),
            routing,
            answer: verdict.answer,
            certificate: verdict.certificate.as_ref().map(|c| CertificateDoc {
                nominees: c.nominees.iter().map(|&n| e.label(n).to_string()).collect(),
                witness: e.label(c.witness).to_string(),
            }),
            stats: InstanceStats::of(instance),
            guesses: verdict.guesses,
            wall_ms,
            notes: verdict.notes.clone(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn from_json(text: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }
}

impl CertificateDoc {
    /// Resolves labels against `instance`.
    pub fn resolve(&self, instance: &PartyInstance) -> Result<Certificate, String> {
        let e = instance.election();
        let find = |l: &str| e.candidate_by_label(l).ok_or_else(|| format!("unknown label `{l}`"));
        let mut nominees = self.nominees.iter().map(|l| find(l)).collect::<Result<Vec<_>, _>>()?;
        nominees.sort_unstable();
        Ok(Certificate { nominees, witness: find(&self.witness)? })
    }
}
