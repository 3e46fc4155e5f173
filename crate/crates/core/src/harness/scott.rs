//! The Alt(5) pair in PSL(2, 29) and its products in PSL(2, 29)^s.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{CosetRecord, HarnessError, Status, Verdict, VerificationReport};
use crate::cosetequiv::{
    gassmann_equivalent, hall_product_surjective, permutation_character, verify_certificate,
    z_coset_certify, DEFAULT_EFFORT,
};
use crate::exactla::Int;
use crate::fpgrp::{FinitePresentation, PermHom};
use crate::permgrp::{
    conjugacy_classes, direct_power, is_conjugate_subgroups, scott_pair, PermGroup, Permutation,
};

pub const MAX_COPIES: usize = 2;

const HALL_SAMPLES: usize = 3;

fn label(eps: &[usize]) -> String {
    let parts: Vec<String> = eps.iter().map(|e| e.to_string()).collect();
    format!("L_({})", parts.join(","))
}

/// L_ε = L_{ε_1} × … × L_{ε_s} inside Ω^s acting on s blocks.
fn product_subgroup(parts: &[&PermGroup], degree: usize) -> PermGroup {
    let s = parts.len();
    let total = degree * s;
    let gens = parts
        .iter()
        .enumerate()
        .flat_map(|(k, h)| {
            h.generators()
                .iter()
                .map(move |g| g.shifted(k * degree, total))
        })
        .collect();
    PermGroup::new(total, gens).expect("shifted generators have the product degree")
}

fn random_generating_pair(omega: &PermGroup, rng: &mut ChaCha8Rng) -> Vec<Permutation> {
    loop {
        let pair = vec![omega.random_element(rng), omega.random_element(rng)];
        if omega.subgroup(pair.clone()).order() == omega.order() {
            return pair;
        }
    }
}

pub fn scott_demo(copies: usize, seed: u64) -> Result<VerificationReport, HarnessError> {
    if copies == 0 || copies > MAX_COPIES {
        return Err(HarnessError::Invalid(format!(
            "copies must be between 1 and {MAX_COPIES}"
        )));
    }
    let mut report = VerificationReport::new("scott-demo");
    report.input("copies", copies);
    report.input("seed", seed);
    let (omega, l0, l1) = scott_pair()?;
    let base = [&l0, &l1];
    let degree = omega.degree();
    report.fact("psl_order", omega.order());
    report.fact("alt5_orders", format!("{} {}", l0.order(), l1.order()));
    report.fact("index", omega.order().div_exact(&l0.order()));

    let gassmann = gassmann_equivalent(&omega, &l0, &l1)?;
    let factor_conjugate = is_conjugate_subgroups(&omega, &l0, &l1)?.is_some();
    report.fact("factor_non_conjugate", !factor_conjugate);
    let z = z_coset_certify(&omega, &l0, &l1, DEFAULT_EFFORT, seed)?;
    if let Some(cert) = z.certificate() {
        report.fact(
            "z_certificate_verified",
            verify_certificate(&omega, &l0, &l1, cert),
        );
    }
    let local_ok = z.transcript().local.iter().all(|c| c.witness.is_some());
    report.fact("local_checks_passed", local_ok);
    report.fact("z_outcome", z.label());
    let factor_gassmann = gassmann.is_equivalent();
    report.coset = Some(CosetRecord {
        gassmann,
        z_equivalence: Some(z),
    });

    // characters of the product coset spaces are products of the factor characters
    let classes = conjugacy_classes(&omega)?;
    let chars = [
        permutation_character(&classes, &omega, &l0)?,
        permutation_character(&classes, &omega, &l1)?,
    ];
    let product_char = |eps: &[usize]| -> Vec<u64> {
        eps.iter().fold(vec![1u64], |acc, &e| {
            acc.iter()
                .flat_map(|&a| chars[e].values.iter().map(move |&v| a * v))
                .collect()
        })
    };

    let big = if copies == 1 {
        omega.clone()
    } else {
        direct_power(&omega, copies)
    };
    let mut expected_order = Int::ONE;
    let mut expected_index = Int::ONE;
    for _ in 0..copies {
        expected_order = &expected_order * &omega.order();
        expected_index = &expected_index * &omega.order().div_exact(&l0.order());
    }
    report.fact("product_order", big.order());
    let epsilons: Vec<Vec<usize>> = (0..1usize << copies)
        .map(|m| (0..copies).map(|k| (m >> (copies - 1 - k)) & 1).collect())
        .collect();
    let mut all_ok = big.order() == expected_order && factor_gassmann && !factor_conjugate;
    for eps in &epsilons {
        let parts: Vec<&PermGroup> = eps.iter().map(|&e| base[e]).collect();
        let l = if copies == 1 {
            parts[0].clone()
        } else {
            product_subgroup(&parts, degree)
        };
        let index = big.order().div_exact(&l.order());
        all_ok &= l.is_subgroup_of(&big) && index == expected_index;
        report.fact(&format!("{} index", label(eps)), index);
    }
    let mut pairs = 0;
    for (i, a) in epsilons.iter().enumerate() {
        for b in &epsilons[i + 1..] {
            pairs += 1;
            let same_char = product_char(a) == product_char(b);
            // conjugation in Ω^s acts factorwise, and L_ε projects onto L_{ε_k}
            let non_conjugate = a.iter().zip(b).any(|(&x, &y)| x != y) && !factor_conjugate;
            all_ok &= same_char && non_conjugate;
            let key = format!("{} {}", label(a), label(b));
            report.fact(&format!("{key} gassmann"), same_char);
            report.fact(&format!("{key} non_conjugate"), non_conjugate);
        }
    }
    report.fact("pairs_checked", pairs);
    if copies == 1 {
        report.notes.push("the self-pair is skipped".into());
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let free = FinitePresentation::free(2);
    let mut hall_ok = true;
    for k in 0..HALL_SAMPLES {
        let homs: Vec<PermHom> = (0..2)
            .map(|_| {
                PermHom::new(
                    free.clone(),
                    omega.clone(),
                    random_generating_pair(&omega, &mut rng),
                )
            })
            .collect::<Result<_, _>>()?;
        let onto = hall_product_surjective(&homs)?;
        hall_ok &= onto;
        report.fact(&format!("hall_sample_{k}"), onto);
    }
    let f = PermHom::new(
        free,
        omega.clone(),
        random_generating_pair(&omega, &mut rng),
    )?;
    let diagonal = hall_product_surjective(&[f.clone(), f])?;
    report.fact("hall_diagonal_surjective", diagonal);
    hall_ok &= !diagonal;

    report.hypothesis(
        "Gassmann equivalence",
        if factor_gassmann {
            Status::Verified
        } else {
            Status::Failed
        },
        "permutation characters of PSL(2,29) on both coset spaces",
    );
    report.hypothesis(
        "Hall product surjectivity",
        if hall_ok {
            Status::Verified
        } else {
            Status::Failed
        },
        format!("{HALL_SAMPLES} random pairs onto, diagonal not onto"),
    );
    report.verdict = if all_ok && hall_ok {
        Verdict::ConsistentWithTheorem
    } else {
        Verdict::HypothesisFailed
    };
    Ok(report)
}
