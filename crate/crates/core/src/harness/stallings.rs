//! Stallings' theorem on a homomorphism of finitely presented groups.

use super::{HarnessError, LayerComparison, Status, Verdict, VerificationReport};
use crate::exactla::{AbelianHom, AbelianInvariants, AbelianQuotient, Int};
use crate::fpgrp::{todd_coxeter, FinitePresentation, FpHom};
use crate::homology::{h1_fp, h2_finite_bar};
use crate::nilquot::{
    is_homomorphism, layer_invariants, layer_isomorphisms, nilpotent_quotient, order_or_hirsch,
    PcPresentation,
};
use crate::permgrp::PermGroup;

/// Coset enumeration budget used to recognize small finite groups.
const FINITE_PROBE_COSETS: usize = 2000;

/// Externally supplied H_2 data for groups where it cannot be computed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum H2Claim {
    /// The induced map on H_2 is onto.
    Surjective,
    /// H_2 of the target vanishes.
    TargetTrivial,
}

/// H_2 of a presentation that defines a small finite group.
fn finite_h2(p: &FinitePresentation) -> Option<AbelianInvariants> {
    if p.relators().is_empty() {
        return if p.n_gens() == 0 {
            Some(AbelianInvariants::trivial())
        } else {
            None
        };
    }
    let table = todd_coxeter(p, &[], FINITE_PROBE_COSETS).ok()?;
    let n = table.n_cosets();
    let gens = (0..p.n_gens())
        .map(|g| table.generator_permutation(g))
        .collect();
    let g = PermGroup::new(n, gens).ok()?;
    h2_finite_bar(&g).ok()
}

fn h2_of_source(p: &FinitePresentation) -> Option<AbelianInvariants> {
    if p.relators().is_empty() {
        // free groups
        return Some(AbelianInvariants::trivial());
    }
    finite_h2(p)
}

pub fn verify_stallings(
    hom: &FpHom,
    class_c: usize,
    h2: Option<H2Claim>,
) -> Result<VerificationReport, HarnessError> {
    let (src, tgt) = (hom.source(), hom.target());
    let mut report = VerificationReport::new("stallings");
    report.input("class", class_c);
    report.input("source_generators", src.n_gens());
    report.input("target_generators", tgt.n_gens());
    report
        .notes
        .push("H_2 enters only through surjectivity of the induced map".into());

    let qa = AbelianQuotient::from_relations(src.n_gens(), &src.abelianization_matrix());
    let qb = AbelianQuotient::from_relations(tgt.n_gens(), &tgt.abelianization_matrix());
    let ambient: Vec<Vec<Int>> = hom
        .images()
        .iter()
        .map(|w| {
            w.exponent_sums(tgt.n_gens())
                .into_iter()
                .map(Int::from)
                .collect()
        })
        .collect();
    let h1_iso = AbelianHom::from_ambient(&qa, &qb, &ambient).is_isomorphism();
    let detail = format!("{} -> {}", h1_fp(src), h1_fp(tgt));
    if !h1_iso {
        report.hypothesis("H_1 isomorphism", Status::Failed, detail);
        report.notes.push("conclusion checks skipped".into());
        report.verdict = Verdict::HypothesisFailed;
        return Ok(report);
    }
    report.hypothesis("H_1 isomorphism", Status::Verified, detail);

    let (h2_status, h2_detail) = match (h2_of_source(src), finite_h2(tgt), &h2) {
        (_, Some(t), _) if t.is_trivial() => {
            (Status::Verified, "H_2 of the target is trivial".to_string())
        }
        (Some(s), Some(t), _) if s.is_trivial() => (
            Status::Failed,
            format!("H_2 of the source is trivial and of the target is {t}"),
        ),
        (_, _, Some(H2Claim::Surjective)) => (
            Status::Assumed,
            "surjectivity supplied by the caller".to_string(),
        ),
        (_, _, Some(H2Claim::TargetTrivial)) => (
            Status::Assumed,
            "trivial target H_2 supplied by the caller".to_string(),
        ),
        _ => (
            Status::Assumed,
            "not computable for these groups; assumed".to_string(),
        ),
    };
    report.hypothesis("H_2 surjectivity", h2_status, h2_detail);

    let pa = nilpotent_quotient(src, class_c)?;
    let pb = nilpotent_quotient(tgt, class_c)?;
    let x: Vec<_> = hom.images().iter().map(|w| pb.image_of(w)).collect();
    let imgs = pa.generator_images(&pb, &x);
    let hom_ok = is_homomorphism(&pa, &pb, &imgs);
    let mut isos = layer_isomorphisms(&pa, &pb, &imgs);
    isos.resize(class_c.max(isos.len()), true);
    let (la, lb) = (
        padded(layer_invariants(&pa), class_c),
        padded(layer_invariants(&pb), class_c),
    );
    let mut all = true;
    for j in 1..=class_c {
        let iso = hom_ok && isos[..j].iter().all(|&b| b);
        all &= iso;
        report.layers.push(LayerComparison {
            j,
            left: la[j - 1].clone(),
            right: lb[j - 1].clone(),
            left_order: size_of(&pa, j),
            right_order: size_of(&pb, j),
            induced_isomorphism: Some(iso),
            isomorphism: None,
            cross_check: None,
        });
    }
    report.verdict = match (all, h2_status) {
        (true, _) => Verdict::ConsistentWithTheorem,
        (false, Status::Verified) => Verdict::CounterexampleCandidate,
        (false, Status::Failed) => Verdict::HypothesisFailed,
        (false, _) => Verdict::Inconclusive,
    };
    Ok(report)
}

fn padded(mut v: Vec<AbelianInvariants>, len: usize) -> Vec<AbelianInvariants> {
    v.resize(len.max(v.len()), AbelianInvariants::trivial());
    v
}

fn size_of(pc: &PcPresentation, j: usize) -> String {
    order_or_hirsch(&pc.truncate(j)).to_string()
}
