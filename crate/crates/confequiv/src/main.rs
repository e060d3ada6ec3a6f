//! Command-line interface: every subcommand prints a JSON report on
//! standard output (diagnostics and timing stay on standard error) and
//! encodes its mathematical verdict in the exit status — 0 for success,
//! 1 for mismatch/infeasible/invalid verdicts, 2 for input errors.

use clap::{Args, Parser, Subcommand};
use confequiv::amenability::{build_system, solve, FeasibilityVerdict};
use confequiv::catalog::{class_data, compare_catalogs, CatalogStore, CompareVerdict};
use confequiv::configuration::{
    configurations, stabilized_configurations, two_sided_configurations, ConfigurationSet,
    SetKind,
};
use confequiv::decomposition::{pieces_bound, verify_decomposition, Verdict, VerifyScope, Violation};
use confequiv::error::{Error, Result};
use confequiv::group::Group;
use confequiv::partition::{atoms, meet, pullback_partition, similar, QuotientMap};
use confequiv::schema::{self, RunReport};
use serde_json::{json, Value};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

mod demo;

#[derive(Parser)]
#[command(
    name = "confequiv",
    version,
    about = "Configuration sets, amenability certificates, and canonical catalogs \
             of finitely generated groups"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
    /// Directory for the catalog cache (CONFEQUIV_CACHE_DIR also sets it)
    #[arg(long, global = true, value_name = "DIR")]
    cache_dir: Option<PathBuf>,
    /// Indent width of the JSON report; 0 prints one line
    #[arg(long, global = true, default_value_t = 2, value_name = "N")]
    json_indent: usize,
    /// Seed for randomized demonstration samples
    #[arg(long, global = true, default_value_t = 1729)]
    seed: u64,
}

#[derive(Args)]
struct PairArgs {
    /// Group: shorthand (Z6, V4, S3, D4, Q8, F2, Z2xZ3, paper-K/G/H), JSON, or .json file
    #[arg(long)]
    group: String,
    /// Comma list of generator names or element indices
    #[arg(long)]
    gens: Option<String>,
    /// Partition: singletons, one-block, first-letter, or JSON
    #[arg(long)]
    partition: String,
    /// Observation radius (required on infinite views)
    #[arg(long)]
    radius: Option<u32>,
    /// Consecutive equal radii required to call an observation stable
    #[arg(long, default_value_t = 2)]
    stable_span: u32,
}

#[derive(Args)]
struct BoundsArgs {
    /// Largest generating-tuple size
    #[arg(long, default_value_t = 2)]
    max_n: usize,
    /// Largest partition block count
    #[arg(long, default_value_t = 4)]
    max_m: usize,
    /// Catalog two-sided configuration sets instead of one-sided
    #[arg(long)]
    two_sided: bool,
}

#[derive(Subcommand)]
enum Cmd {
    /// One-sided configuration set of a configuration pair
    Con(PairArgs),
    /// Two-sided configuration set of a configuration pair
    Con2(PairArgs),
    /// Atoms of the sigma algebra generated by a family of element sets
    Atoms {
        #[arg(long)]
        group: String,
        /// JSON list of element-name sets, e.g. [["0","1"],["1","2"]]
        #[arg(long)]
        sets: String,
    },
    /// Meet (common refinement) of two partitions
    Meet {
        #[arg(long)]
        group: String,
        #[arg(long)]
        partition: String,
        #[arg(long)]
        partition_b: String,
    },
    /// Similarity of two refinement pairs, possibly over different groups
    Similar {
        #[arg(long)]
        group: String,
        /// The finer partition of the first pair
        #[arg(long)]
        fine: String,
        /// The coarser partition of the first pair
        #[arg(long)]
        coarse: String,
        /// Second group (defaults to the first)
        #[arg(long)]
        group_b: Option<String>,
        #[arg(long)]
        fine_b: String,
        #[arg(long)]
        coarse_b: String,
    },
    /// Pull a partition of a quotient back to the source group
    Pullback {
        /// Builtin (Z4/Z2, V4/Z2, S3/Z2, D4/V4) or JSON quotient map
        #[arg(long)]
        quotient: String,
        /// Partition of the quotient group
        #[arg(long)]
        partition: String,
    },
    /// Feasibility of the invariant-weighting system of a configuration pair
    Amen(PairArgs),
    /// Verify a claimed paradoxical decomposition
    VerifyDecomp {
        #[arg(long)]
        group: String,
        #[arg(long)]
        gens: Option<String>,
        /// Builtin classical-free, JSON, or a .json file
        #[arg(long)]
        claim: String,
        /// Ball radius for infinite views (finite views verify on the whole group)
        #[arg(long)]
        radius: Option<u32>,
    },
    /// Conjugacy classes, class number, and center
    Classdata {
        #[arg(long)]
        group: String,
    },
    /// Canonical configuration catalog within bounds
    Catalog {
        #[arg(long)]
        group: String,
        #[command(flatten)]
        bounds: BoundsArgs,
    },
    /// Compare the catalogs of two groups at equal bounds
    Compare {
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
        #[command(flatten)]
        bounds: BoundsArgs,
    },
    /// Demonstration battery for the matrix-group construction
    PaperDemo {
        /// Run only the generator-identity checks
        #[arg(long)]
        identities: bool,
        /// Run only the automorphism checks
        #[arg(long)]
        phi: bool,
        /// Run only the torsion and order checks
        #[arg(long)]
        orders: bool,
        /// Exponent range for the identity families
        #[arg(long, default_value = "-6..6", allow_hyphen_values = true)]
        m_range: String,
        /// Random sample count for the oracle-agreement checks
        #[arg(long, default_value_t = 10_000)]
        samples: usize,
        /// Longest generator word tried in the torsion search
        #[arg(long, default_value_t = 6)]
        max_word_len: usize,
        /// Largest order the torsion search certifies
        #[arg(long, default_value_t = 100)]
        order_bound: u64,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let started = Instant::now();
    match run(&cli) {
        Ok((report, negative)) => {
            println!("{}", schema::render_report(&report, cli.json_indent));
            eprintln!(
                "confequiv: {} finished in {:.3?}",
                report.command,
                started.elapsed()
            );
            if negative {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(e) => {
            eprintln!("confequiv: error: {e}");
            ExitCode::from(2)
        }
    }
}

fn build_group(spec: &str) -> Result<Group> {
    Group::build(&schema::parse_group_spec(spec)?)
}

/// Group, generators, and partition of a configuration pair, plus the
/// configuration set observed exactly (finite) or on a stabilizing ball.
fn configuration_pair(args: &PairArgs, kind: SetKind) -> Result<(Group, Value, ConfigurationSet)> {
    let group = build_group(&args.group)?;
    let gens = schema::resolve_generators(&group, args.gens.as_deref())?;
    let partition = schema::parse_partition_spec(&group, &args.partition)?;
    let cs = match args.radius {
        Some(r) => stabilized_configurations(&group, &gens, &partition, r, args.stable_span, kind)?,
        None => {
            if !group.is_finite() {
                return Err(Error::UnsupportedOnInfinite(
                    "pass --radius to observe this view on a ball".into(),
                ));
            }
            match kind {
                SetKind::OneSided => configurations(&group, &gens, &partition)?,
                SetKind::TwoSided => two_sided_configurations(&group, &gens, &partition)?,
            }
        }
    };
    let inputs = json!({
        "group": args.group,
        "gens": schema::element_names(&group, &gens),
        "partition": args.partition,
        "radius": args.radius,
        "stable_span": args.stable_span,
    });
    Ok((group, inputs, cs))
}

fn cache_dir_of(cli: &Cli) -> Option<PathBuf> {
    cli.cache_dir
        .clone()
        .or_else(|| std::env::var_os("CONFEQUIV_CACHE_DIR").map(PathBuf::from))
}

fn violation_value(group: &Group, verdict: &Verdict) -> Value {
    match verdict {
        Verdict::Valid => Value::Null,
        Verdict::Invalid { witness, violation } => {
            let v = match violation {
                Violation::Overlap { first, second } => json!({
                    "type": "overlap",
                    "first": [first.0, first.1],
                    "second": [second.0, second.1],
                }),
                Violation::Uncovered { group } => json!({
                    "type": "uncovered",
                    "group": group,
                }),
            };
            json!({ "witness": group.name_of(witness), "violation": v })
        }
    }
}

fn run(cli: &Cli) -> Result<(RunReport, bool)> {
    match &cli.cmd {
        Cmd::Con(args) => {
            let (_, inputs, cs) = configuration_pair(args, SetKind::OneSided)?;
            let report = RunReport {
                command: "con".into(),
                inputs,
                results: serde_json::to_value(&cs).expect("configuration sets serialize"),
            };
            Ok((report, false))
        }
        Cmd::Con2(args) => {
            let (_, inputs, cs) = configuration_pair(args, SetKind::TwoSided)?;
            let report = RunReport {
                command: "con2".into(),
                inputs,
                results: serde_json::to_value(&cs).expect("configuration sets serialize"),
            };
            Ok((report, false))
        }
        Cmd::Atoms { group, sets } => {
            let g = build_group(group)?;
            let family = schema::parse_sets_spec(&g, sets)?;
            let universe = g.elements()?;
            let p = atoms(&universe, &family)?;
            let report = RunReport {
                command: "atoms".into(),
                inputs: json!({ "group": group, "sets": sets }),
                results: schema::partition_value(&g, &p),
            };
            Ok((report, false))
        }
        Cmd::Meet { group, partition, partition_b } => {
            let g = build_group(group)?;
            let universe = g.elements()?;
            let p = schema::parse_partition_spec(&g, partition)?;
            let q = schema::parse_partition_spec(&g, partition_b)?;
            let met = meet(&universe, &p, &q)?;
            let report = RunReport {
                command: "meet".into(),
                inputs: json!({ "group": group, "partition": partition, "partition_b": partition_b }),
                results: schema::partition_value(&g, &met),
            };
            Ok((report, false))
        }
        Cmd::Similar { group, fine, coarse, group_b, fine_b, coarse_b } => {
            let ga = build_group(group)?;
            let gb = match group_b {
                Some(s) => build_group(s)?,
                None => ga.clone(),
            };
            let fa = schema::parse_partition_spec(&ga, fine)?;
            let ca = schema::parse_partition_spec(&ga, coarse)?;
            let fb = schema::parse_partition_spec(&gb, fine_b)?;
            let cb = schema::parse_partition_spec(&gb, coarse_b)?;
            let ua = ga.elements()?;
            let ub = gb.elements()?;
            let witness = similar(&ua, &fa, &ca, &ub, &fb, &cb)?;
            let incidence = |inc: &[std::collections::BTreeSet<u8>]| -> Value {
                inc.iter()
                    .map(|s| s.iter().copied().collect::<Vec<u8>>())
                    .collect::<Vec<_>>()
                    .into()
            };
            let report = RunReport {
                command: "similar".into(),
                inputs: json!({
                    "group": group, "fine": fine, "coarse": coarse,
                    "group_b": group_b, "fine_b": fine_b, "coarse_b": coarse_b,
                }),
                results: json!({
                    "similar": witness.matches,
                    "incidence_a": incidence(&witness.incidence_a),
                    "incidence_b": incidence(&witness.incidence_b),
                }),
            };
            Ok((report, !witness.matches))
        }
        Cmd::Pullback { quotient, partition } => {
            let q = schema::parse_quotient_spec(quotient)?;
            let target_partition = schema::parse_partition_spec(q.target(), partition)?;
            let source = q.source().clone();
            let pulled = pullback_partition(&QuotientMap::Finite(q), &target_partition)?;
            let report = RunReport {
                command: "pullback".into(),
                inputs: json!({ "quotient": quotient, "partition": partition }),
                results: schema::partition_value(&source, &pulled),
            };
            Ok((report, false))
        }
        Cmd::Amen(args) => {
            let (_, inputs, cs) = configuration_pair(args, SetKind::OneSided)?;
            let system = build_system(&cs)?;
            let verdict = solve(&system);
            let infeasible = matches!(verdict, FeasibilityVerdict::Infeasible { .. });
            let report = RunReport {
                command: "amen".into(),
                inputs,
                results: json!({
                    "configuration": serde_json::to_value(&cs).expect("serializes"),
                    "system": {
                        "variables": system.variables.len(),
                        "balance_rows": system.balance.len(),
                    },
                    "verdict": serde_json::to_value(&verdict).expect("serializes"),
                }),
            };
            Ok((report, infeasible))
        }
        Cmd::VerifyDecomp { group, gens, claim, radius } => {
            let g = build_group(group)?;
            let gen_els = schema::resolve_generators(&g, gens.as_deref())?;
            let parsed = schema::parse_claim_spec(&g, gen_els.len(), claim)?;
            let scope = match radius {
                Some(r) => VerifyScope::Ball { radius: *r },
                None => {
                    if g.is_finite() {
                        VerifyScope::WholeGroup
                    } else {
                        return Err(Error::UnsupportedOnInfinite(
                            "pass --radius to verify on a ball of this view".into(),
                        ));
                    }
                }
            };
            let verdict = verify_decomposition(&g, &gen_els, &parsed, scope)?;
            let valid = verdict.is_valid();
            let report = RunReport {
                command: "verify-decomp".into(),
                inputs: json!({
                    "group": group,
                    "gens": schema::element_names(&g, &gen_els),
                    "claim": claim,
                    "radius": radius,
                }),
                results: json!({
                    "valid": valid,
                    "pieces_bound": pieces_bound(&parsed),
                    "failure": violation_value(&g, &verdict),
                }),
            };
            Ok((report, !valid))
        }
        Cmd::Classdata { group } => {
            let g = build_group(group)?;
            let data = class_data(&g)?;
            let classes: Vec<Vec<String>> = data
                .classes
                .iter()
                .map(|c| schema::element_names(&g, c))
                .collect();
            let report = RunReport {
                command: "classdata".into(),
                inputs: json!({ "group": group }),
                results: json!({
                    "class_number": data.class_number,
                    "class_sizes": data.classes.iter().map(Vec::len).collect::<Vec<_>>(),
                    "classes": classes,
                    "center": schema::element_names(&g, &data.center),
                }),
            };
            Ok((report, false))
        }
        Cmd::Catalog { group, bounds } => {
            let g = build_group(group)?;
            let store = CatalogStore::new(cache_dir_of(cli));
            let kind = if bounds.two_sided { SetKind::TwoSided } else { SetKind::OneSided };
            let catalog = store.catalog(&g, bounds.max_n, bounds.max_m, kind)?;
            let report = RunReport {
                command: "catalog".into(),
                inputs: json!({
                    "group": group,
                    "max_n": bounds.max_n,
                    "max_m": bounds.max_m,
                    "kind": kind,
                }),
                results: json!({
                    "group_id": catalog.group_id,
                    "count": catalog.sets.len(),
                    "sets": catalog.sets,
                }),
            };
            Ok((report, false))
        }
        Cmd::Compare { a, b, bounds } => {
            let ga = build_group(a)?;
            let gb = build_group(b)?;
            let store = CatalogStore::new(cache_dir_of(cli));
            let kind = if bounds.two_sided { SetKind::TwoSided } else { SetKind::OneSided };
            let ca = store.catalog(&ga, bounds.max_n, bounds.max_m, kind)?;
            let cb = store.catalog(&gb, bounds.max_n, bounds.max_m, kind)?;
            let cmp = compare_catalogs(&ca, &cb)?;
            let equal = cmp.verdict == CompareVerdict::Equal;
            let summary = format!(
                "{} {}",
                if equal { "coincides" } else { "differs" },
                cmp.scope()
            );
            let report = RunReport {
                command: "compare".into(),
                inputs: json!({
                    "a": a,
                    "b": b,
                    "max_n": bounds.max_n,
                    "max_m": bounds.max_m,
                    "kind": kind,
                }),
                results: json!({
                    "verdict": serde_json::to_value(cmp.verdict).expect("serializes"),
                    "summary": summary,
                    "left_count": ca.sets.len(),
                    "right_count": cb.sets.len(),
                    "only_left_count": cmp.only_left.len(),
                    "only_right_count": cmp.only_right.len(),
                    "witness_left": cmp.only_left.first(),
                    "witness_right": cmp.only_right.first(),
                }),
            };
            Ok((report, !equal))
        }
        Cmd::PaperDemo {
            identities,
            phi,
            orders,
            m_range,
            samples,
            max_word_len,
            order_bound,
        } => {
            let (m_lo, m_hi) = parse_range(m_range)?;
            let settings = demo::Settings {
                seed: cli.seed,
                samples: *samples,
                m_lo,
                m_hi,
                max_word_len: *max_word_len,
                order_bound: *order_bound,
                select: demo::Selection {
                    identities: *identities,
                    phi: *phi,
                    orders: *orders,
                },
            };
            let outcome = demo::run(&settings);
            let all_passed = outcome.all_passed();
            let report = RunReport {
                command: "paper-demo".into(),
                inputs: json!({
                    "identities": identities,
                    "phi": phi,
                    "orders": orders,
                    "m_range": m_range,
                    "samples": samples,
                    "max_word_len": max_word_len,
                    "order_bound": order_bound,
                    "seed": cli.seed,
                }),
                results: outcome.to_value(),
            };
            Ok((report, !all_passed))
        }
    }
}

fn parse_range(s: &str) -> Result<(i64, i64)> {
    let err = || Error::InvalidGroupSpec(format!("bad range '{s}'; expected lo..hi"));
    let (lo, hi) = s.split_once("..").ok_or_else(err)?;
    let lo: i64 = lo.trim().parse().map_err(|_| err())?;
    let hi: i64 = hi.trim().parse().map_err(|_| err())?;
    if lo > hi {
        return Err(err());
    }
    Ok((lo, hi))
}
