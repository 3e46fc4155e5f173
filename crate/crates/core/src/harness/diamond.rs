//! Nilpotent quotients of coset-equivalent subgroups of a finite group.

use super::{CosetRecord, HarnessError, LayerComparison, Status, Verdict, VerificationReport};
use crate::cosetequiv::{
    gassmann_equivalent, verify_certificate, z_coset_certify_with, Gassmann, ZOptions, ZOutcome,
    DEFAULT_EFFORT,
};
use crate::exactla::AbelianInvariants;
use crate::fpgrp::cayley_presentation;
use crate::homology::n_mod_commutators;
use crate::nilquot::{
    isomorphic_nilpotent, layer_invariants, nilpotent_quotient, order_or_hirsch, GroupSize,
    IsoVerdict, PcPresentation,
};
use crate::permgrp::PermGroup;

#[derive(Clone, Debug)]
pub struct DiamondOptions {
    /// Determinant evaluations for the Z-coset search.
    pub effort: u64,
    pub seed: u64,
    /// Image tuples tried by the isomorphism search.
    pub iso_effort: u64,
}

impl Default for DiamondOptions {
    fn default() -> Self {
        DiamondOptions {
            effort: DEFAULT_EFFORT,
            seed: 0,
            iso_effort: 1 << 16,
        }
    }
}

/// N_c of a finite permutation group from a presentation, together with the
/// layers and orders of its lower central series computed inside the
/// permutation group.
#[derive(Clone, Debug)]
pub struct SubgroupQuotients {
    pub pc: PcPresentation,
    pub layers: Vec<AbelianInvariants>,
    /// |Γ / Γ_j| for j = 1..=c from the permutation group.
    pub orders: Vec<crate::exactla::Int>,
    pub cross_check: Vec<bool>,
}

pub fn nilpotent_quotients_of(
    h: &PermGroup,
    class_c: usize,
) -> Result<SubgroupQuotients, HarnessError> {
    let (pres, _) = cayley_presentation(h);
    let pc = nilpotent_quotient(&pres, class_c)?;
    let lcs = h.lower_central_series();
    let term = |j: usize| &lcs[j.min(lcs.len() - 1)];
    let mut nq_layers = layer_invariants(&pc);
    nq_layers.resize(class_c.max(nq_layers.len()), AbelianInvariants::trivial());
    let mut layers = Vec::new();
    let mut orders = Vec::new();
    let mut cross_check = Vec::new();
    for j in 1..=class_c {
        let layer = n_mod_commutators(h, term(j - 1))?.0;
        let order = h.order().div_exact(&term(j).order());
        let nq_order = order_or_hirsch(&pc.truncate(j));
        cross_check.push(layer == nq_layers[j - 1] && nq_order == GroupSize::Finite(order.clone()));
        layers.push(layer);
        orders.push(order);
    }
    Ok(SubgroupQuotients {
        pc,
        layers,
        orders,
        cross_check,
    })
}

fn z_hypothesis(
    report: &mut VerificationReport,
    omega: &PermGroup,
    gamma: &PermGroup,
    lambda: &PermGroup,
    z: &ZOutcome,
) -> Status {
    let (status, detail) = match z {
        ZOutcome::Certified { certificate, .. } => {
            let ok = verify_certificate(omega, gamma, lambda, certificate);
            let status = if ok {
                Status::Verified
            } else {
                Status::Unknown
            };
            (status, format!("unimodular intertwiner, re-verified: {ok}"))
        }
        ZOutcome::Obstructed { obstruction, .. } => (Status::Failed, obstruction.to_string()),
        ZOutcome::Unknown { transcript } => (
            Status::Unknown,
            format!(
                "no certificate after {} evaluations",
                transcript.evaluations
            ),
        ),
    };
    report.hypothesis("Z-coset equivalence", status, detail);
    status
}

fn coset_checks(
    report: &mut VerificationReport,
    omega: &PermGroup,
    gamma: &PermGroup,
    lambda: &PermGroup,
    opts: &DiamondOptions,
) -> Result<Status, HarnessError> {
    if !gamma.is_subgroup_of(omega) || !lambda.is_subgroup_of(omega) {
        return Err(HarnessError::NotASubgroup);
    }
    report.input("effort", opts.effort);
    report.input("seed", opts.seed);
    report.fact("omega_order", omega.order());
    report.fact("gamma_order", gamma.order());
    report.fact("lambda_order", lambda.order());
    let gassmann = gassmann_equivalent(omega, gamma, lambda)?;
    let (gstatus, gdetail) = match &gassmann {
        Gassmann::Equivalent { .. } => {
            (Status::Verified, "permutation characters agree".to_string())
        }
        Gassmann::Inequivalent { obstruction } => (Status::Failed, obstruction.to_string()),
    };
    report.hypothesis("Gassmann equivalence", gstatus, gdetail);
    let zopts = ZOptions {
        effort: opts.effort,
        seed: opts.seed,
        ..ZOptions::default()
    };
    let z = z_coset_certify_with(omega, gamma, lambda, &zopts)?;
    let status = z_hypothesis(report, omega, gamma, lambda, &z);
    report.coset = Some(CosetRecord {
        gassmann,
        z_equivalence: Some(z),
    });
    Ok(status)
}

/// Compares N_j(Γ) and N_j(Λ) for j = 1..=class_c, against the outcome of
/// the Z-coset equivalence test.
pub fn verify_diamond(
    omega: &PermGroup,
    gamma: &PermGroup,
    lambda: &PermGroup,
    class_c: usize,
    opts: &DiamondOptions,
) -> Result<VerificationReport, HarnessError> {
    let mut report = VerificationReport::new("diamond");
    report.input("class", class_c);
    let z = coset_checks(&mut report, omega, gamma, lambda, opts)?;

    let qa = nilpotent_quotients_of(gamma, class_c)?;
    let qb = nilpotent_quotients_of(lambda, class_c)?;
    let (mut any_no, mut any_unknown, mut cross_ok) = (false, false, true);
    for j in 1..=class_c {
        let verdict = isomorphic_nilpotent(&qa.pc.truncate(j), &qb.pc.truncate(j), opts.iso_effort);
        any_no |= verdict.is_no();
        any_unknown |= matches!(verdict, IsoVerdict::Unknown { .. });
        let cross = qa.cross_check[j - 1] && qb.cross_check[j - 1];
        cross_ok &= cross;
        report.layers.push(LayerComparison {
            j,
            left: qa.layers[j - 1].clone(),
            right: qb.layers[j - 1].clone(),
            left_order: qa.orders[j - 1].to_string(),
            right_order: qb.orders[j - 1].to_string(),
            induced_isomorphism: None,
            isomorphism: Some(verdict),
            cross_check: Some(cross),
        });
    }
    report
        .notes
        .push("commutativity of the diamond with N_j(Ω) and N_j(Γ ∩ Λ) is not checked".into());
    if !cross_ok {
        report
            .notes
            .push("nilpotent quotient and lower central series disagree".into());
    }
    report.verdict = if !cross_ok {
        Verdict::Inconclusive
    } else if any_no {
        match z {
            Status::Verified => Verdict::CounterexampleCandidate,
            Status::Failed => Verdict::HypothesisFailed,
            _ => Verdict::Inconclusive,
        }
    } else if any_unknown {
        Verdict::Inconclusive
    } else {
        Verdict::ConsistentWithTheorem
    };
    Ok(report)
}

/// Γ ≅ Λ for Z-coset equivalent Γ, Λ in a finite group with Λ nilpotent.
pub fn corollary_rig_check(
    omega: &PermGroup,
    gamma: &PermGroup,
    lambda: &PermGroup,
    opts: &DiamondOptions,
) -> Result<VerificationReport, HarnessError> {
    let mut report = VerificationReport::new("corollary-rig");
    if !gamma.is_subgroup_of(omega) || !lambda.is_subgroup_of(omega) {
        return Err(HarnessError::NotASubgroup);
    }
    if !lambda.is_nilpotent() {
        report.hypothesis(
            "Λ nilpotent",
            Status::Failed,
            "lower central series does not reach 1",
        );
        report
            .notes
            .push("precondition failed; nothing checked".into());
        report.verdict = Verdict::HypothesisFailed;
        return Ok(report);
    }
    let class_of = |h: &PermGroup| h.lower_central_series().len() - 1;
    report.hypothesis(
        "Λ nilpotent",
        Status::Verified,
        format!("class {}", class_of(lambda)),
    );
    let z = coset_checks(&mut report, omega, gamma, lambda, opts)?;

    let verdict = if !gamma.is_nilpotent() {
        IsoVerdict::No {
            invariant: "nilpotent".into(),
            left: "false".into(),
            right: "true".into(),
        }
    } else {
        let c = class_of(gamma).max(class_of(lambda)).max(1);
        let qa = nilpotent_quotients_of(gamma, c)?;
        let qb = nilpotent_quotients_of(lambda, c)?;
        let whole = |q: &SubgroupQuotients, h: &PermGroup| {
            order_or_hirsch(&q.pc) == GroupSize::Finite(h.order())
        };
        if !whole(&qa, gamma) || !whole(&qb, lambda) {
            report
                .notes
                .push("nilpotent quotient of the top class differs from the group".into());
        }
        let v = isomorphic_nilpotent(&qa.pc, &qb.pc, opts.iso_effort);
        report.layers.push(LayerComparison {
            j: c,
            left: gamma.abelianization_finite(),
            right: lambda.abelianization_finite(),
            left_order: gamma.order().to_string(),
            right_order: lambda.order().to_string(),
            induced_isomorphism: None,
            isomorphism: Some(v.clone()),
            cross_check: Some(qa.cross_check.iter().chain(&qb.cross_check).all(|&b| b)),
        });
        v
    };
    report.fact(
        "isomorphic",
        match &verdict {
            IsoVerdict::Yes { .. } => "yes",
            IsoVerdict::No { .. } => "no",
            IsoVerdict::Unknown { .. } => "unknown",
        },
    );
    report.verdict = match (z, &verdict) {
        (Status::Failed, _) => {
            report
                .notes
                .push("hypothesis refuted, corollary vacuous".into());
            Verdict::HypothesisFailed
        }
        (Status::Verified, IsoVerdict::Yes { .. }) => Verdict::ConsistentWithTheorem,
        (Status::Verified, IsoVerdict::No { .. }) => Verdict::CounterexampleCandidate,
        _ => Verdict::Inconclusive,
    };
    Ok(report)
}
