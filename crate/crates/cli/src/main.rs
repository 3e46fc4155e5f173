use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{anyhow, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use sha2::{Digest, Sha256};

use nilq::cosetequiv::{
    gassmann_equivalent, gassmann_pair_search, verify_certificate, z_coset_certify_with,
    CosetError, ZOptions, ZOutcome, DEFAULT_EFFORT,
};
use nilq::exactla::AbelianInvariants;
use nilq::fpgrp::{FinitePresentation, FpError, FpHom};
use nilq::harness::{
    corollary_rig_check, scott_demo, verify_diamond, verify_stallings, CosetRecord, DiamondOptions,
    H2Claim, HarnessError, LayerComparison, Verdict, VerificationReport,
};
use nilq::homology::{five_term_check_with, h1_fp, h1_perm, h2_finite_bar_with, HomologyError};
use nilq::nilquot::{layer_invariants, nilpotent_quotient, order_or_hirsch, NqError};
use nilq::permgrp::{PermError, PermGroup};

const DEFAULT_H2_ORDER: u64 = 60;

#[derive(Parser)]
#[command(
    name = "nilq",
    version,
    about = "Nilpotent quotients, homology and coset equivalence of small groups"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Common {
    /// Write the report as JSON to this file.
    #[arg(long)]
    json: Option<PathBuf>,
}

#[derive(Args)]
struct Triple {
    /// Ambient permutation group.
    #[arg(long)]
    perm: PathBuf,
    #[arg(long)]
    sub1: PathBuf,
    #[arg(long)]
    sub2: PathBuf,
}

#[derive(Clone, Copy, ValueEnum)]
enum ClaimArg {
    Surjective,
    TargetTrivial,
}

#[derive(Subcommand)]
enum Command {
    /// Nilpotent quotient of a finitely presented group.
    Nq {
        presentation: PathBuf,
        #[arg(long)]
        class: usize,
        /// Include the full pc presentation in the output.
        #[arg(long)]
        dump_pc: bool,
        #[command(flatten)]
        common: Common,
    },
    /// Abelianization of a presentation or of a permutation group.
    H1 {
        #[arg(required_unless_present = "perm", conflicts_with = "perm")]
        presentation: Option<PathBuf>,
        #[arg(long)]
        perm: Option<PathBuf>,
        #[command(flatten)]
        common: Common,
    },
    /// Schur multiplier of a finite permutation group.
    H2 {
        #[arg(long)]
        perm: PathBuf,
        #[arg(long, default_value_t = DEFAULT_H2_ORDER)]
        max_order: u64,
        #[command(flatten)]
        common: Common,
    },
    /// Five-term exact sequence of a normal subgroup.
    Fiveterm {
        #[arg(long)]
        perm: PathBuf,
        #[arg(long)]
        normal: PathBuf,
        #[arg(long, default_value_t = DEFAULT_H2_ORDER)]
        max_order: u64,
        #[command(flatten)]
        common: Common,
    },
    /// Compare permutation characters of two subgroups.
    Gassmann {
        #[command(flatten)]
        triple: Triple,
        #[command(flatten)]
        common: Common,
    },
    /// Search for a unimodular intertwiner between two coset modules.
    Zcert {
        #[command(flatten)]
        triple: Triple,
        #[arg(long, default_value_t = DEFAULT_EFFORT)]
        effort: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        common: Common,
    },
    /// Compare nilpotent quotients of two coset-equivalent subgroups.
    Diamond {
        #[command(flatten)]
        triple: Triple,
        #[arg(long)]
        class: usize,
        #[arg(long, default_value_t = DEFAULT_EFFORT)]
        effort: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        common: Common,
    },
    /// Isomorphism of Z-coset equivalent subgroups when the second is nilpotent.
    Rig {
        #[command(flatten)]
        triple: Triple,
        #[arg(long, default_value_t = DEFAULT_EFFORT)]
        effort: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        common: Common,
    },
    /// Check the conclusion of Stallings' theorem for a homomorphism.
    Stallings {
        #[arg(long)]
        source: PathBuf,
        #[arg(long)]
        target: PathBuf,
        /// One target word per line, the images of the source generators in order.
        #[arg(long)]
        images: PathBuf,
        #[arg(long)]
        class: usize,
        /// H_2 information for groups where it is not computed.
        #[arg(long, value_enum)]
        h2_claim: Option<ClaimArg>,
        #[command(flatten)]
        common: Common,
    },
    /// Non-conjugate Gassmann pairs in every group file of a directory.
    Search {
        #[arg(long)]
        catalog: PathBuf,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        common: Common,
    },
    /// The Alt(5) pair in PSL(2, 29) and its products.
    ScottDemo {
        #[arg(long, default_value_t = 1)]
        copies: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        common: Common,
    },
}

/// Report plus command-specific payload.
#[derive(Serialize)]
struct Output {
    #[serde(flatten)]
    report: VerificationReport,
    #[serde(skip_serializing_if = "Option::is_none")]
    data: Option<serde_json::Value>,
}

impl Output {
    fn new(report: VerificationReport) -> Self {
        Output { report, data: None }
    }

    fn with(report: VerificationReport, data: impl Serialize) -> Result<Self> {
        Ok(Output {
            report,
            data: Some(serde_json::to_value(data)?),
        })
    }
}

struct Input {
    text: String,
    sha256: String,
}

fn read_input(path: &Path) -> Result<Input> {
    let bytes = fs::read(path).with_context(|| format!("reading {}", path.display()))?;
    let sha256 = hex::encode(Sha256::digest(&bytes));
    let text =
        String::from_utf8(bytes).with_context(|| format!("{} is not UTF-8", path.display()))?;
    Ok(Input { text, sha256 })
}

fn load_group(report: &mut VerificationReport, key: &str, path: &Path) -> Result<PermGroup> {
    let input = read_input(path)?;
    report.input(&format!("{key}_sha256"), &input.sha256);
    PermGroup::parse(&input.text).with_context(|| format!("parsing {}", path.display()))
}

fn load_presentation(
    report: &mut VerificationReport,
    key: &str,
    path: &Path,
) -> Result<FinitePresentation> {
    let input = read_input(path)?;
    report.input(&format!("{key}_sha256"), &input.sha256);
    FinitePresentation::parse(&input.text).with_context(|| format!("parsing {}", path.display()))
}

fn load_triple(
    report: &mut VerificationReport,
    t: &Triple,
) -> Result<(PermGroup, PermGroup, PermGroup)> {
    Ok((
        load_group(report, "perm", &t.perm)?,
        load_group(report, "sub1", &t.sub1)?,
        load_group(report, "sub2", &t.sub2)?,
    ))
}

fn boolean_verdict(b: bool) -> Verdict {
    if b {
        Verdict::ConsistentWithTheorem
    } else {
        Verdict::HypothesisFailed
    }
}

/// A search or enumeration ran out of its budget.
fn is_budget(err: &anyhow::Error) -> bool {
    err.chain().any(|e| {
        matches!(
            e.downcast_ref::<HomologyError>(),
            Some(HomologyError::OrderBound { .. })
        ) || matches!(
            e.downcast_ref::<NqError>(),
            Some(NqError::GeneratorBudget { .. })
        ) || matches!(
            e.downcast_ref::<FpError>(),
            Some(FpError::CosetBudgetExceeded { .. })
        ) || matches!(
            e.downcast_ref::<PermError>(),
            Some(PermError::OrderBoundExceeded { .. })
        ) || matches!(
            e.downcast_ref::<HarnessError>(),
            Some(HarnessError::Homology(HomologyError::OrderBound { .. }))
                | Some(HarnessError::Nq(NqError::GeneratorBudget { .. }))
                | Some(HarnessError::Fp(FpError::CosetBudgetExceeded { .. }))
        ) || matches!(
            e.downcast_ref::<CosetError>(),
            Some(CosetError::Perm(PermError::OrderBoundExceeded { .. }))
        )
    })
}

fn nq(
    report: &mut VerificationReport,
    path: &Path,
    class: usize,
    dump_pc: bool,
) -> Result<Option<serde_json::Value>> {
    let pres = load_presentation(report, "presentation", path)?;
    report.input("class", class);
    let pc = nilpotent_quotient(&pres, class)?;
    let layers = layer_invariants(&pc);
    let torsion_free = layers.iter().all(|l| l.torsion.is_empty());
    for j in 1..=class {
        let layer = layers
            .get(j - 1)
            .cloned()
            .unwrap_or_else(AbelianInvariants::trivial);
        let size = order_or_hirsch(&pc.truncate(j)).to_string();
        report.layers.push(LayerComparison {
            j,
            left: layer.clone(),
            right: layer,
            left_order: size.clone(),
            right_order: size,
            induced_isomorphism: None,
            isomorphism: None,
            cross_check: None,
        });
    }
    let ranks: Vec<String> = layers.iter().map(|l| l.free_rank.to_string()).collect();
    report.fact("layer_ranks", ranks.join(" "));
    report.fact("layers_torsion_free", torsion_free);
    report.fact("pc_generators", pc.n_gens());
    report.fact("size", order_or_hirsch(&pc));
    report
        .notes
        .push("each layer is listed on both sides".into());
    report.verdict = Verdict::ConsistentWithTheorem;
    if dump_pc {
        println!("{pc}");
        return Ok(Some(serde_json::to_value(&pc)?));
    }
    Ok(None)
}

fn run(cmd: Command, report: &mut VerificationReport) -> Result<Option<serde_json::Value>> {
    let mut data = None;
    match cmd {
        Command::Nq {
            presentation,
            class,
            dump_pc,
            ..
        } => {
            data = nq(report, &presentation, class, dump_pc)?;
        }
        Command::H1 {
            presentation, perm, ..
        } => {
            let h1 = match (presentation, perm) {
                (Some(p), _) => h1_fp(&load_presentation(report, "presentation", &p)?),
                (None, Some(g)) => h1_perm(&load_group(report, "perm", &g)?),
                (None, None) => return Err(anyhow!("a presentation or --perm is required")),
            };
            report.fact("h1", &h1);
            report.verdict = Verdict::ConsistentWithTheorem;
            data = Some(serde_json::to_value(&h1)?);
        }
        Command::H2 {
            perm, max_order, ..
        } => {
            let g = load_group(report, "perm", &perm)?;
            report.input("max_order", max_order);
            report.fact("order", g.order());
            let h2 = h2_finite_bar_with(&g, max_order)?;
            report.fact("h2", &h2);
            report.verdict = Verdict::ConsistentWithTheorem;
            data = Some(serde_json::to_value(&h2)?);
        }
        Command::Fiveterm {
            perm,
            normal,
            max_order,
            ..
        } => {
            let g = load_group(report, "perm", &perm)?;
            let n = load_group(report, "normal", &normal)?;
            report.input("max_order", max_order);
            let five = five_term_check_with(&g, &n, max_order, None)?;
            let names = ["H_2(G)", "H_2(G/N)", "N/[G,N]", "H_1(G)", "H_1(G/N)"];
            for (name, group) in names.iter().zip(&five.groups) {
                report.fact(name, group);
            }
            for (name, ok) in ["exact at H_2(G/N)", "exact at N/[G,N]", "exact at H_1(G)"]
                .iter()
                .zip(five.exact)
            {
                report.fact(name, ok);
            }
            report.fact("compositions_zero", five.compositions_zero);
            report.verdict = boolean_verdict(five.is_exact());
            data = Some(serde_json::to_value(&five)?);
        }
        Command::Gassmann { triple, .. } => {
            let (o, a, b) = load_triple(report, &triple)?;
            let g = gassmann_equivalent(&o, &a, &b)?;
            report.fact("gassmann_equivalent", g.is_equivalent());
            report.verdict = boolean_verdict(g.is_equivalent());
            report.coset = Some(CosetRecord {
                gassmann: g,
                z_equivalence: None,
            });
        }
        Command::Zcert {
            triple,
            effort,
            seed,
            ..
        } => {
            let (o, a, b) = load_triple(report, &triple)?;
            report.input("effort", effort);
            report.input("seed", seed);
            let g = gassmann_equivalent(&o, &a, &b)?;
            let z = z_coset_certify_with(
                &o,
                &a,
                &b,
                &ZOptions {
                    effort,
                    seed,
                    ..ZOptions::default()
                },
            )?;
            report.fact("outcome", z.label());
            report.verdict = match &z {
                ZOutcome::Certified { certificate, .. } => {
                    let ok = verify_certificate(&o, &a, &b, certificate);
                    report.fact("certificate_verified", ok);
                    if ok {
                        Verdict::ConsistentWithTheorem
                    } else {
                        Verdict::Inconclusive
                    }
                }
                ZOutcome::Obstructed { obstruction, .. } => {
                    report.fact("obstruction", obstruction);
                    Verdict::HypothesisFailed
                }
                ZOutcome::Unknown { .. } => Verdict::Inconclusive,
            };
            report.coset = Some(CosetRecord {
                gassmann: g,
                z_equivalence: Some(z),
            });
        }
        Command::Diamond {
            triple,
            class,
            effort,
            seed,
            ..
        } => {
            let (o, a, b) = load_triple(report, &triple)?;
            let opts = DiamondOptions {
                effort,
                seed,
                ..DiamondOptions::default()
            };
            merge(report, verify_diamond(&o, &a, &b, class, &opts)?);
        }
        Command::Rig {
            triple,
            effort,
            seed,
            ..
        } => {
            let (o, a, b) = load_triple(report, &triple)?;
            let opts = DiamondOptions {
                effort,
                seed,
                ..DiamondOptions::default()
            };
            merge(report, corollary_rig_check(&o, &a, &b, &opts)?);
        }
        Command::Stallings {
            source,
            target,
            images,
            class,
            h2_claim,
            ..
        } => {
            let src = load_presentation(report, "source", &source)?;
            let tgt = load_presentation(report, "target", &target)?;
            let imgs = read_input(&images)?;
            report.input("images_sha256", &imgs.sha256);
            let words = imgs
                .text
                .lines()
                .map(|l| l.split('#').next().unwrap().trim())
                .filter(|l| !l.is_empty())
                .map(|l| tgt.parse_word(l))
                .collect::<Result<Vec<_>, _>>()
                .with_context(|| format!("parsing {}", images.display()))?;
            let hom = FpHom::new(src, tgt, words)?;
            let claim = h2_claim.map(|c| match c {
                ClaimArg::Surjective => H2Claim::Surjective,
                ClaimArg::TargetTrivial => H2Claim::TargetTrivial,
            });
            merge(report, verify_stallings(&hom, class, claim)?);
        }
        Command::Search { catalog, seed, .. } => {
            report.input("seed", seed);
            let mut files: Vec<PathBuf> = fs::read_dir(&catalog)
                .with_context(|| format!("reading {}", catalog.display()))?
                .map(|e| e.map(|e| e.path()))
                .collect::<Result<_, _>>()?;
            files.retain(|p| p.is_file());
            files.sort();
            if files.is_empty() {
                return Err(anyhow!("no group files in {}", catalog.display()));
            }
            let mut groups = Vec::new();
            for f in &files {
                let name = f
                    .file_stem()
                    .map(|s| s.to_string_lossy().into_owned())
                    .unwrap_or_default();
                groups.push((
                    name.clone(),
                    load_group(report, &format!("catalog/{name}"), f)?,
                ));
            }
            let entries = gassmann_pair_search(&groups, seed);
            let mut all_complete = true;
            for e in &entries {
                all_complete &= e.complete && e.skipped.is_none();
                report.fact(&format!("{} pairs", e.name), e.pairs.len());
                report.fact(&format!("{} complete", e.name), e.complete);
                if let Some(why) = &e.skipped {
                    report.notes.push(format!("{} skipped: {why}", e.name));
                }
            }
            report.fact(
                "total_pairs",
                entries.iter().map(|e| e.pairs.len()).sum::<usize>(),
            );
            report.verdict = if all_complete {
                Verdict::ConsistentWithTheorem
            } else {
                Verdict::Inconclusive
            };
            data = Some(serde_json::to_value(&entries)?);
        }
        Command::ScottDemo { copies, seed, .. } => {
            merge(report, scott_demo(copies, seed)?);
        }
    }
    Ok(data)
}

/// Keeps the input hashes already recorded and takes everything else from `r`.
fn merge(report: &mut VerificationReport, mut r: VerificationReport) {
    let hashes = std::mem::take(&mut report.inputs);
    r.inputs.extend(hashes);
    *report = r;
}

fn scenario_and_json(cmd: &Command) -> (&'static str, Option<PathBuf>) {
    match cmd {
        Command::Nq { common, .. } => ("nq", common.json.clone()),
        Command::H1 { common, .. } => ("h1", common.json.clone()),
        Command::H2 { common, .. } => ("h2", common.json.clone()),
        Command::Fiveterm { common, .. } => ("fiveterm", common.json.clone()),
        Command::Gassmann { common, .. } => ("gassmann", common.json.clone()),
        Command::Zcert { common, .. } => ("zcert", common.json.clone()),
        Command::Diamond { common, .. } => ("diamond", common.json.clone()),
        Command::Rig { common, .. } => ("corollary-rig", common.json.clone()),
        Command::Stallings { common, .. } => ("stallings", common.json.clone()),
        Command::Search { common, .. } => ("search", common.json.clone()),
        Command::ScottDemo { common, .. } => ("scott-demo", common.json.clone()),
    }
}

fn write_json(path: &Path, out: &Output) -> Result<()> {
    let mut text = serde_json::to_string_pretty(out)?;
    text.push('\n');
    fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (scenario, json) = scenario_and_json(&cli.command);
    let start = Instant::now();
    let mut report = VerificationReport::new(scenario);
    let out = match run(cli.command, &mut report) {
        Ok(data) => match data {
            Some(d) => Output::with(report, d),
            None => Ok(Output::new(report)),
        },
        Err(e) if is_budget(&e) => {
            eprintln!("budget exhausted: {e:#}");
            report.notes.push(format!("budget exhausted: {e:#}"));
            report.verdict = Verdict::Inconclusive;
            Ok(Output::new(report))
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            return ExitCode::from(3);
        }
    };
    let out = match out {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e:#}");
            return ExitCode::from(3);
        }
    };
    print!("{}", out.report.summary());
    eprintln!("elapsed: {:.3} s", start.elapsed().as_secs_f64());
    if let Some(path) = json {
        if let Err(e) = write_json(&path, &out) {
            eprintln!("error: {e:#}");
            return ExitCode::from(3);
        }
    }
    ExitCode::from(out.report.verdict.exit_code() as u8)
}
