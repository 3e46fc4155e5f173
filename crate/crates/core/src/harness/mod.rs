//! End-to-end verification scenarios and their reports.

mod diamond;
mod scott;
mod stallings;

pub use diamond::{
    corollary_rig_check, nilpotent_quotients_of, verify_diamond, DiamondOptions, SubgroupQuotients,
};
pub use scott::{scott_demo, MAX_COPIES};
pub use stallings::{verify_stallings, H2Claim};

use std::collections::BTreeMap;

use serde::Serialize;
use thiserror::Error;

use crate::cosetequiv::{CosetError, Gassmann, ZOutcome};
use crate::exactla::AbelianInvariants;
use crate::fpgrp::FpError;
use crate::homology::HomologyError;
use crate::nilquot::{IsoVerdict, NqError};
use crate::permgrp::PermError;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("not a subgroup of the ambient group")]
    NotASubgroup,
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error(transparent)]
    Perm(#[from] PermError),
    #[error(transparent)]
    Fp(#[from] FpError),
    #[error(transparent)]
    Nq(#[from] NqError),
    #[error(transparent)]
    Coset(#[from] CosetError),
    #[error(transparent)]
    Homology(#[from] HomologyError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    ConsistentWithTheorem,
    /// A hypothesis was machine-verified to fail; conclusions are not judged.
    HypothesisFailed,
    Inconclusive,
    /// A hypothesis holds and a conclusion fails, both machine-verified.
    CounterexampleCandidate,
}

impl Verdict {
    pub fn exit_code(self) -> i32 {
        match self {
            Verdict::ConsistentWithTheorem => 0,
            Verdict::HypothesisFailed | Verdict::CounterexampleCandidate => 1,
            Verdict::Inconclusive => 2,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Verified,
    Assumed,
    Failed,
    Unknown,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HypothesisCheck {
    pub name: String,
    pub status: Status,
    pub detail: String,
}

/// Comparison of N_j for one j (or of layer j = Γ_{j-1}/Γ_j).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LayerComparison {
    pub j: usize,
    pub left: AbelianInvariants,
    pub right: AbelianInvariants,
    pub left_order: String,
    pub right_order: String,
    /// The given map induces an isomorphism N_j → N_j (Stallings).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub induced_isomorphism: Option<bool>,
    /// Abstract isomorphism test (diamond).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub isomorphism: Option<IsoVerdict>,
    /// Layers and orders agree with the permutation-group lower central series.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cross_check: Option<bool>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CosetRecord {
    pub gassmann: Gassmann,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub z_equivalence: Option<ZOutcome>,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    pub schema: u32,
    pub scenario: String,
    pub inputs: BTreeMap<String, String>,
    pub hypotheses: Vec<HypothesisCheck>,
    pub layers: Vec<LayerComparison>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub coset: Option<CosetRecord>,
    pub facts: BTreeMap<String, String>,
    pub notes: Vec<String>,
    pub verdict: Verdict,
}

impl VerificationReport {
    pub fn new(scenario: &str) -> Self {
        VerificationReport {
            schema: SCHEMA_VERSION,
            scenario: scenario.to_string(),
            inputs: BTreeMap::new(),
            hypotheses: Vec::new(),
            layers: Vec::new(),
            coset: None,
            facts: BTreeMap::new(),
            notes: Vec::new(),
            verdict: Verdict::Inconclusive,
        }
    }

    pub fn input(&mut self, key: &str, value: impl ToString) {
        self.inputs.insert(key.to_string(), value.to_string());
    }

    pub fn fact(&mut self, key: &str, value: impl ToString) {
        self.facts.insert(key.to_string(), value.to_string());
    }

    pub fn hypothesis(&mut self, name: &str, status: Status, detail: impl Into<String>) {
        self.hypotheses.push(HypothesisCheck {
            name: name.to_string(),
            status,
            detail: detail.into(),
        });
    }

    pub fn hypothesis_status(&self, name: &str) -> Option<Status> {
        self.hypotheses
            .iter()
            .find(|h| h.name == name)
            .map(|h| h.status)
    }

    /// Human-readable summary.
    pub fn summary(&self) -> String {
        let mut out = format!("scenario: {}\n", self.scenario);
        for h in &self.hypotheses {
            out += &format!("hypothesis {}: {:?} ({})\n", h.name, h.status, h.detail);
        }
        for l in &self.layers {
            out += &format!("j = {}: {} | {}", l.j, l.left, l.right);
            if let Some(b) = l.induced_isomorphism {
                out += &format!("  induced iso: {b}");
            }
            if let Some(v) = &l.isomorphism {
                let s = match v {
                    IsoVerdict::Yes { .. } => "yes".to_string(),
                    IsoVerdict::No { invariant, .. } => format!("no ({invariant})"),
                    IsoVerdict::Unknown { .. } => "unknown".to_string(),
                };
                out += &format!("  isomorphic: {s}");
            }
            if let Some(c) = l.cross_check {
                out += &format!("  cross-check: {c}");
            }
            out += "\n";
        }
        for (k, v) in &self.facts {
            out += &format!("{k}: {v}\n");
        }
        for n in &self.notes {
            out += &format!("note: {n}\n");
        }
        out += &format!("verdict: {}\n", verdict_label(self.verdict));
        out
    }
}

pub fn verdict_label(v: Verdict) -> &'static str {
    match v {
        Verdict::ConsistentWithTheorem => "consistent-with-theorem",
        Verdict::HypothesisFailed => "hypothesis-failed",
        Verdict::Inconclusive => "inconclusive",
        Verdict::CounterexampleCandidate => "counterexample-candidate",
    }
}
