//! Search for a unimodular intertwiner Z[Ω/Γ] → Z[Ω/Λ] among integer
//! combinations of Hecke operators, with local obstructions at small primes.
//!
//! The budget unit is one determinant evaluation of a candidate T over a
//! large prime; candidates failing the row-sum test (T·1 = s·1 forces s = ±1)
//! are rejected before any determinant is taken and do not count.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::gassmann::{gassmann_equivalent, Gassmann};
use super::hecke::{DoubleCosets, DEFAULT_HECKE_INDEX_BOUND};
use super::{CosetError, LocalWitness, Obstruction};
use crate::exactla::modp::det_mod_p;
use crate::exactla::{det, Int, IntMatrix};
use crate::permgrp::PermGroup;

pub const DEFAULT_EFFORT: u64 = 1000;
pub const DEFAULT_LOCAL_PRIMES: [u64; 6] = [2, 3, 5, 7, 11, 13];

const FILTER_PRIME: u64 = 2_147_483_647;
const LOCAL_EXHAUSTIVE_LIMIT: u64 = 512;
const LOCAL_TRIALS: u64 = 48;
const CHUNK: usize = 32;
/// Enumerated candidates per unit of effort before the sweep gives up on
/// finding row-sum survivors.
const ENUMERATION_FACTOR: u64 = 2000;

#[derive(Clone, Debug)]
pub struct ZOptions {
    pub effort: u64,
    pub seed: u64,
    pub primes: Vec<u64>,
    pub index_bound: usize,
}

impl Default for ZOptions {
    fn default() -> Self {
        ZOptions {
            effort: DEFAULT_EFFORT,
            seed: 0,
            primes: DEFAULT_LOCAL_PRIMES.to_vec(),
            index_bound: DEFAULT_HECKE_INDEX_BOUND,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LocalCheck {
    pub prime: u64,
    /// An invertible combination mod p, if one was found.
    pub witness: Option<Vec<u64>>,
    pub exhaustive: bool,
    pub evaluations: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ShellRecord {
    pub bound: i64,
    pub complete: bool,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SearchTranscript {
    pub index: usize,
    pub double_cosets: usize,
    pub orbit_lengths: Vec<usize>,
    pub local: Vec<LocalCheck>,
    pub shells: Vec<ShellRecord>,
    pub enumerated: u64,
    pub random_samples: u64,
    pub evaluations: u64,
    pub effort: u64,
    pub seed: u64,
}

#[derive(Clone, Debug, Serialize)]
pub struct EquivCertificate {
    pub coefficients: Vec<Int>,
    pub determinant: Int,
    pub index: usize,
    #[serde(skip)]
    pub matrix: IntMatrix,
}

#[derive(Clone, Debug, Serialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum ZOutcome {
    Certified {
        certificate: EquivCertificate,
        transcript: SearchTranscript,
    },
    Obstructed {
        obstruction: Obstruction,
        transcript: SearchTranscript,
    },
    Unknown {
        transcript: SearchTranscript,
    },
}

impl ZOutcome {
    pub fn certificate(&self) -> Option<&EquivCertificate> {
        match self {
            ZOutcome::Certified { certificate, .. } => Some(certificate),
            _ => None,
        }
    }

    pub fn obstruction(&self) -> Option<&Obstruction> {
        match self {
            ZOutcome::Obstructed { obstruction, .. } => Some(obstruction),
            _ => None,
        }
    }

    pub fn transcript(&self) -> &SearchTranscript {
        match self {
            ZOutcome::Certified { transcript, .. }
            | ZOutcome::Obstructed { transcript, .. }
            | ZOutcome::Unknown { transcript } => transcript,
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            ZOutcome::Certified { .. } => "certified",
            ZOutcome::Obstructed { .. } => "obstructed",
            ZOutcome::Unknown { .. } => "unknown",
        }
    }
}

pub fn z_coset_certify(
    omega: &PermGroup,
    gamma: &PermGroup,
    lambda: &PermGroup,
    effort: u64,
    seed: u64,
) -> Result<ZOutcome, CosetError> {
    z_coset_certify_with(
        omega,
        gamma,
        lambda,
        &ZOptions {
            effort,
            seed,
            ..ZOptions::default()
        },
    )
}

pub fn z_coset_certify_with(
    omega: &PermGroup,
    gamma: &PermGroup,
    lambda: &PermGroup,
    opts: &ZOptions,
) -> Result<ZOutcome, CosetError> {
    let mut transcript = SearchTranscript {
        effort: opts.effort,
        seed: opts.seed,
        ..Default::default()
    };
    if let Gassmann::Inequivalent { obstruction } = gassmann_equivalent(omega, gamma, lambda)? {
        return Ok(ZOutcome::Obstructed {
            obstruction,
            transcript,
        });
    }
    let dc = DoubleCosets::new(omega, gamma, lambda, opts.index_bound)?;
    let r = dc.count();
    transcript.index = dc.lambda_space.index();
    transcript.double_cosets = r;
    transcript.orbit_lengths = dc.orbit_lengths.clone();

    // a Γ-fixed Λ-coset means Λ = yΓy⁻¹ and its Hecke operator is a permutation matrix
    if let Some(d) = dc.orbit_lengths.iter().position(|&l| l == 1) {
        let mut c = vec![0i64; r];
        c[d] = 1;
        if let Some(cert) = confirm(&dc, &c) {
            return Ok(ZOutcome::Certified {
                certificate: cert,
                transcript,
            });
        }
    }

    for &p in &opts.primes {
        if dc.orbit_lengths.iter().all(|&l| (l as u64).is_multiple_of(p)) {
            let witness = LocalWitness::RowSums {
                orbit_lengths: dc.orbit_lengths.clone(),
            };
            return Ok(ZOutcome::Obstructed {
                obstruction: Obstruction::LocalAtP { prime: p, witness },
                transcript,
            });
        }
        let check = local_check(&dc, p, opts.seed);
        let refuted = check.exhaustive && check.witness.is_none();
        let combinations = check.evaluations;
        transcript.local.push(check);
        if refuted {
            let witness = LocalWitness::Exhaustive { combinations };
            return Ok(ZOutcome::Obstructed {
                obstruction: Obstruction::LocalAtP { prime: p, witness },
                transcript,
            });
        }
    }

    if let Some(cert) = integral_search(&dc, opts, &mut transcript) {
        return Ok(ZOutcome::Certified {
            certificate: cert,
            transcript,
        });
    }
    Ok(ZOutcome::Unknown { transcript })
}

fn row_sum(dc: &DoubleCosets, c: &[i64]) -> i64 {
    c.iter()
        .zip(&dc.orbit_lengths)
        .map(|(&x, &l)| x * l as i64)
        .sum()
}

fn det_of_combination_mod(dc: &DoubleCosets, c: &[u64], p: u64) -> u64 {
    det_mod_p(dc.labels.len(), dc.combination_mod_p(c), p)
}

fn local_check(dc: &DoubleCosets, p: u64, seed: u64) -> LocalCheck {
    let r = dc.count();
    let lengths: Vec<u64> = dc.orbit_lengths.iter().map(|&l| l as u64 % p).collect();
    let passes = |c: &[u64]| c.iter().zip(&lengths).map(|(x, l)| x * l).sum::<u64>() % p != 0;
    let space = u32::try_from(r).ok().and_then(|e| p.checked_pow(e));
    let mut check = LocalCheck {
        prime: p,
        witness: None,
        exhaustive: false,
        evaluations: 0,
    };
    match space {
        Some(total) if total <= LOCAL_EXHAUSTIVE_LIMIT => {
            check.exhaustive = true;
            for code in 1..total {
                let mut c = vec![0u64; r];
                let mut x = code;
                for v in c.iter_mut().rev() {
                    *v = x % p;
                    x /= p;
                }
                if !passes(&c) {
                    continue;
                }
                check.evaluations += 1;
                if det_of_combination_mod(dc, &c, p) != 0 {
                    check.witness = Some(c);
                    break;
                }
            }
        }
        _ => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed ^ p.wrapping_mul(0x9e37_79b9_7f4a_7c15));
            for _ in 0..LOCAL_TRIALS {
                let c: Vec<u64> = (0..r).map(|_| rng.gen_range(0..p)).collect();
                if !passes(&c) {
                    continue;
                }
                check.evaluations += 1;
                if det_of_combination_mod(dc, &c, p) != 0 {
                    check.witness = Some(c);
                    break;
                }
            }
        }
    }
    check
}

/// Coefficient vectors of max-norm exactly b, ordered by support size, then
/// support (lexicographic), then values in the order 1, -1, 2, -2, ….
struct Shell {
    r: usize,
    b: i64,
    k: usize,
    support: Vec<usize>,
    digits: Vec<usize>,
    values: Vec<i64>,
    started: bool,
}

impl Shell {
    fn new(r: usize, b: i64) -> Self {
        let values = (1..=b).flat_map(|v| [v, -v]).collect();
        Shell {
            r,
            b,
            k: 1,
            support: vec![0],
            digits: vec![0],
            values,
            started: false,
        }
    }

    fn advance(&mut self) -> bool {
        if !self.started {
            self.started = true;
            return self.r > 0;
        }
        let nv = self.values.len();
        for i in (0..self.k).rev() {
            self.digits[i] += 1;
            if self.digits[i] < nv {
                return true;
            }
            self.digits[i] = 0;
        }
        // next support of the same size
        let (k, r) = (self.k, self.r);
        let mut i = k;
        while i > 0 {
            i -= 1;
            if self.support[i] < r - k + i {
                self.support[i] += 1;
                for j in i + 1..k {
                    self.support[j] = self.support[j - 1] + 1;
                }
                return true;
            }
        }
        if k == r {
            return false;
        }
        self.k += 1;
        self.support = (0..self.k).collect();
        self.digits = vec![0; self.k];
        true
    }

    fn next_vector(&mut self) -> Option<Vec<i64>> {
        loop {
            if !self.advance() {
                return None;
            }
            let vals: Vec<i64> = self.digits.iter().map(|&d| self.values[d]).collect();
            if vals.iter().any(|v| v.abs() == self.b) {
                let mut c = vec![0i64; self.r];
                for (&s, v) in self.support.iter().zip(vals) {
                    c[s] = v;
                }
                return Some(c);
            }
        }
    }
}

fn passes_filter(dc: &DoubleCosets, c: &[i64]) -> bool {
    let d = det_of_combination_mod(dc, &reduce(c, FILTER_PRIME), FILTER_PRIME);
    d == 1 || d == FILTER_PRIME - 1
}

fn reduce(c: &[i64], p: u64) -> Vec<u64> {
    c.iter().map(|&x| x.rem_euclid(p as i64) as u64).collect()
}

/// Evaluates a chunk of row-sum survivors; the first (in order) that is
/// confirmed unimodular wins regardless of thread scheduling.
fn evaluate_chunk(dc: &DoubleCosets, chunk: &[Vec<i64>]) -> Option<EquivCertificate> {
    let hits: Vec<usize> = chunk
        .par_iter()
        .enumerate()
        .filter(|(_, c)| passes_filter(dc, c))
        .map(|(i, _)| i)
        .collect();
    hits.into_iter().find_map(|i| confirm(dc, &chunk[i]))
}

fn confirm(dc: &DoubleCosets, c: &[i64]) -> Option<EquivCertificate> {
    let coefficients: Vec<Int> = c.iter().map(|&x| Int::from(x)).collect();
    let matrix = dc.combination(&coefficients);
    let determinant = det(&matrix);
    if determinant.is_unit() {
        Some(EquivCertificate {
            coefficients,
            determinant,
            index: dc.labels.len(),
            matrix,
        })
    } else {
        None
    }
}

fn integral_search(
    dc: &DoubleCosets,
    opts: &ZOptions,
    t: &mut SearchTranscript,
) -> Option<EquivCertificate> {
    let r = dc.count();
    let sweep_budget = opts.effort.div_ceil(2);
    let enumeration_cap = opts.effort.saturating_mul(ENUMERATION_FACTOR);
    let mut chunk = Vec::with_capacity(CHUNK);
    let mut b = 1i64;
    'shells: while t.evaluations < sweep_budget && t.enumerated < enumeration_cap {
        let mut shell = Shell::new(r, b);
        loop {
            let Some(c) = shell.next_vector() else {
                t.shells.push(ShellRecord {
                    bound: b,
                    complete: true,
                });
                break;
            };
            t.enumerated += 1;
            if row_sum(dc, &c).abs() == 1 {
                chunk.push(c);
            }
            let out_of_budget = t.evaluations + chunk.len() as u64 >= sweep_budget
                || t.enumerated >= enumeration_cap;
            if chunk.len() == CHUNK || out_of_budget {
                t.evaluations += chunk.len() as u64;
                if let Some(cert) = evaluate_chunk(dc, &chunk) {
                    t.shells.push(ShellRecord {
                        bound: b,
                        complete: false,
                    });
                    return Some(cert);
                }
                chunk.clear();
                if out_of_budget {
                    t.shells.push(ShellRecord {
                        bound: b,
                        complete: false,
                    });
                    break 'shells;
                }
            }
        }
        b += 1;
    }
    if !chunk.is_empty() {
        t.evaluations += chunk.len() as u64;
        if let Some(cert) = evaluate_chunk(dc, &chunk) {
            return Some(cert);
        }
        chunk.clear();
    }

    let width = t.shells.last().map_or(1, |s| s.bound.max(1));
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut draws = 0u64;
    while t.evaluations < opts.effort && draws < enumeration_cap {
        draws += 1;
        let c: Vec<i64> = (0..r).map(|_| rng.gen_range(-width..=width)).collect();
        if row_sum(dc, &c).abs() != 1 {
            continue;
        }
        t.random_samples += 1;
        chunk.push(c);
        if chunk.len() == CHUNK || t.evaluations + chunk.len() as u64 >= opts.effort {
            t.evaluations += chunk.len() as u64;
            if let Some(cert) = evaluate_chunk(dc, &chunk) {
                return Some(cert);
            }
            chunk.clear();
        }
    }
    None
}

/// Re-checks a certificate from scratch: rebuilds T from fresh coset
/// spaces, compares T ρ_Γ(g) with ρ_Λ(g) T by matrix products for every
/// generator g of Ω, and takes an exact determinant.
pub fn verify_certificate(
    omega: &PermGroup,
    gamma: &PermGroup,
    lambda: &PermGroup,
    cert: &EquivCertificate,
) -> bool {
    let Ok(dc) = DoubleCosets::new(omega, gamma, lambda, cert.index.max(1)) else {
        return false;
    };
    if cert.coefficients.len() != dc.count() {
        return false;
    }
    let t = dc.combination(&cert.coefficients);
    let perm_matrix = |action: &[u32]| {
        let n = action.len();
        let mut m = IntMatrix::zero(n, n);
        for (i, &j) in action.iter().enumerate() {
            m.set(i, j as usize, Int::ONE);
        }
        m
    };
    for s in 0..omega.generators().len() {
        let pg = perm_matrix(&dc.gamma_space.action[s]);
        let pl = perm_matrix(&dc.lambda_space.action[s]);
        if pl.mul(&t).ok() != t.mul(&pg).ok() {
            return false;
        }
    }
    let d = det(&t);
    d.is_unit() && d == cert.determinant
}
