//! Command-line front end.
//!
//! Exit codes: 0 when every printed verdict agrees, 2 when any verdict
//! mismatches (or any reproduction claim fails), 1 on usage or runtime
//! errors. Reports are deterministic: nothing time- or host-dependent is
//! serialized, and there is no randomness anywhere in the tool — timing goes
//! to stderr only.

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Parser, Subcommand};

use bch_lab::bch::{
    bch_bound_check, build_bch, dim_closed_even, dim_closed_odd, griesmer_check,
    min_distance_bruteforce, BchDescriptor, GriesmerVerdict,
};
use bch_lab::cosets::{
    all_leaders, coset_of, default_scan_cap, is_leader, largest_leader_qm1, largest_leaders_half,
    smallest_nonleader_even_m, CosetSpace,
};
use bch_lab::field::{checked_pow, FieldCtx};
use bch_lab::poly::{parity_check, Poly};
use bch_lab::report::{
    to_json, weights_csv, BchReport, CharSumReport, CharSumRowOut, CosetReport, DimClosedBlock,
    DistributionBlock, LeaderEntry, ReproReport, RunManifest, Verdict, WeightsReport,
};
use bch_lab::weights::{
    build_family, char_sum_moments_expected, char_sum_moments_numeric, char_sum_rows_closed,
    char_sum_rows_match, char_sum_rows_numeric, char_sum_side_conditions, closed_form_distribution,
    FamilyKind, WeightDistribution,
};
use bch_lab::DEFAULT_ENUM_CAP;

use bchlab::repro;

/// Workbench for cyclic codes of length (q^m - 1)/lambda over GF(q):
/// cyclotomic coset structure, BCH-style construction, closed-form dimensions
/// and weight distributions, each checked against brute-force oracles.
#[derive(Parser)]
#[command(name = "bchlab", version, disable_help_subcommand = true)]
struct Cli {
    /// Alphabet size q = p^s (a prime power).
    #[arg(long, global = true)]
    q: Option<u64>,

    /// Extension degree m (codes live in GF(q^m)).
    #[arg(long, global = true)]
    m: Option<u32>,

    /// Length divisor: n = (q^m - 1)/lambda; lambda must divide q - 1.
    #[arg(long, global = true, default_value_t = 1)]
    lambda: u64,

    /// Designed distance delta.
    #[arg(long, global = true)]
    delta: Option<u64>,

    /// First exponent of the defining window (narrow sense is b = 1).
    #[arg(long, global = true, default_value_t = 1)]
    b: u64,

    /// Use the even-like subcode (adjoins the zero coset; requires b = 1).
    #[arg(long, global = true)]
    hat: bool,

    /// Worker threads for enumeration (the BCHLAB_THREADS environment
    /// variable overrides this flag).
    #[arg(long, global = true, value_name = "N")]
    threads: Option<usize>,

    /// Write the JSON report to this path.
    #[arg(long, global = true, value_name = "PATH")]
    json: Option<PathBuf>,

    /// Write a CSV mirror of the weight table to this path (weights only).
    #[arg(long, global = true, value_name = "PATH")]
    csv: Option<PathBuf>,

    /// Largest extension field the run may build, as p^k or a plain integer.
    #[arg(long, global = true, value_name = "P^K", default_value = "2^24")]
    max_field: String,

    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Cyclotomic coset structure of Z/n under multiplication by q.
    Cosets {
        /// Check the K largest coset leaders against their closed forms
        /// (lambda = 2: K <= 3, third leader needs m >= 6; lambda = q-1: K = 1).
        #[arg(long, value_name = "K")]
        largest: Option<u32>,

        /// Check the smallest non-leader coprime-to-q index (even m) against
        /// its closed form.
        #[arg(long)]
        smallest_nonleader: bool,

        /// Include the full leader table in the report.
        #[arg(long)]
        list: bool,

        /// With --list, also include coset members for cosets of at most this
        /// size (0 = never).
        #[arg(long, default_value_t = 0, value_name = "SIZE")]
        members_threshold: u32,
    },

    /// Construct the code with the given parameters and verify it.
    Bch {
        /// Compare the constructed dimension against the closed-form ladder.
        #[arg(long)]
        dim_closed: bool,

        /// Measure the true minimum distance by exhaustive enumeration.
        #[arg(long)]
        min_distance: bool,
    },

    /// Weight distributions: closed form, enumeration oracle, or both.
    Weights {
        /// Family: hat-delta1, C-delta1, hat-delta2, C-delta2, V1..V5, QM1,
        /// or T-dist (the character-sum value distribution).
        #[arg(long)]
        family: String,

        /// Emit the closed-form table only (no field is built).
        #[arg(long)]
        table: bool,

        /// Emit the enumeration oracle's table only.
        #[arg(long)]
        enumerate: bool,

        /// Compute both and compare (the default).
        #[arg(long)]
        verify: bool,
    },

    /// Run the whole reproduction grid and print a per-claim PASS/FAIL matrix.
    ReproAll,
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            std::process::exit(code);
        }
    };
    let started = Instant::now();
    let code = match run(cli) {
        Ok(true) => 0,
        Ok(false) => 2,
        Err(msg) => {
            eprintln!("error: {msg}");
            1
        }
    };
    eprintln!("elapsed: {:.3}s", started.elapsed().as_secs_f64());
    std::process::exit(code);
}

fn run(cli: Cli) -> Result<bool, String> {
    init_threads(cli.threads)?;
    let max_field = parse_size(&cli.max_field)?;
    match cli.cmd {
        Cmd::Cosets {
            largest,
            smallest_nonleader,
            list,
            members_threshold,
        } => cmd_cosets(
            &cli,
            max_field,
            largest,
            smallest_nonleader,
            list,
            members_threshold,
        ),
        Cmd::Bch {
            dim_closed,
            min_distance,
        } => cmd_bch(&cli, max_field, dim_closed, min_distance),
        Cmd::Weights {
            ref family,
            table,
            enumerate,
            verify,
        } => cmd_weights(&cli, max_field, family, table, enumerate, verify),
        Cmd::ReproAll => cmd_repro_all(&cli, max_field),
    }
}

/// BCHLAB_THREADS overrides --threads; with neither, rayon's default stands.
fn init_threads(flag: Option<usize>) -> Result<(), String> {
    let n = match std::env::var("BCHLAB_THREADS") {
        Ok(s) => Some(
            s.trim()
                .parse::<usize>()
                .map_err(|_| format!("BCHLAB_THREADS must be a positive integer, got {s:?}"))?,
        ),
        Err(_) => flag,
    };
    if let Some(n) = n {
        if n == 0 {
            return Err("thread count must be at least 1".into());
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| format!("thread pool: {e}"))?;
    }
    Ok(())
}

/// Accepts "p^k" (e.g. 2^24, 3^4) or a plain integer.
fn parse_size(s: &str) -> Result<u64, String> {
    let t = s.trim();
    if let Some((base, exp)) = t.split_once('^') {
        let b: u64 = base
            .trim()
            .parse()
            .map_err(|_| format!("--max-field: bad base in {t:?}"))?;
        let e: u32 = exp
            .trim()
            .parse()
            .map_err(|_| format!("--max-field: bad exponent in {t:?}"))?;
        checked_pow(b, e).ok_or_else(|| format!("--max-field {t} overflows"))
    } else {
        t.parse()
            .map_err(|_| format!("--max-field expects an integer or p^k, got {t:?}"))
    }
}

fn need<T: Copy>(v: Option<T>, flag: &str) -> Result<T, String> {
    v.ok_or_else(|| format!("{flag} is required for this subcommand"))
}

fn es(e: bch_lab::Error) -> String {
    e.to_string()
}

fn base_params(cli: &Cli, q: u64, m: u32) -> BTreeMap<String, String> {
    let mut p = BTreeMap::new();
    p.insert("q".into(), q.to_string());
    p.insert("m".into(), m.to_string());
    p.insert("lambda".into(), cli.lambda.to_string());
    p.insert("max_field".into(), cli.max_field.trim().to_string());
    p
}

fn write_outputs(
    json: &Option<PathBuf>,
    csv: &Option<PathBuf>,
    json_text: String,
    csv_text: Option<String>,
) -> Result<(), String> {
    if let Some(path) = json {
        std::fs::write(path, json_text).map_err(|e| format!("writing {}: {e}", path.display()))?;
        eprintln!("json report written to {}", path.display());
    }
    match (csv, csv_text) {
        (Some(path), Some(text)) => {
            std::fs::write(path, text).map_err(|e| format!("writing {}: {e}", path.display()))?;
            eprintln!("csv written to {}", path.display());
        }
        (Some(_), None) => {
            return Err("--csv applies only to the weights subcommand (weight tables)".into())
        }
        _ => {}
    }
    Ok(())
}

fn print_verdicts(verdicts: &[Verdict]) {
    for v in verdicts {
        let mark = if v.ok { "OK" } else { "MISMATCH" };
        println!(
            "[{}] {}: expected {}, got {} — {mark}",
            v.source, v.claim, v.expected, v.actual
        );
    }
}

// ---------------------------------------------------------------------------
// cosets
// ---------------------------------------------------------------------------

fn cmd_cosets(
    cli: &Cli,
    _max_field: u64,
    largest: Option<u32>,
    smallest_nonleader: bool,
    list: bool,
    members_threshold: u32,
) -> Result<bool, String> {
    let q = need(cli.q, "--q")?;
    let m = need(cli.m, "--m")?;
    let space = CosetSpace::new(q, m, cli.lambda).map_err(es)?;
    let mut params = base_params(cli, q, m);
    if let Some(k) = largest {
        params.insert("largest".into(), k.to_string());
    }
    if smallest_nonleader {
        params.insert("smallest_nonleader".into(), "true".into());
    }
    println!("cosets: q={q} m={m} lambda={} n={}", cli.lambda, space.n);

    let leaders = all_leaders(&space, default_scan_cap()).map_err(es)?;
    let leader_count = leaders.len() as u64;
    println!("coset leaders: {leader_count} (zero coset included)");

    let mut verdicts = Vec::new();
    let mut largest_out = None;
    if let Some(k) = largest {
        if !(1..=3).contains(&k) {
            return Err("--largest takes K in 1..=3".into());
        }
        let stated: Vec<(u64, u32)> = if cli.lambda == 2 {
            let lh = largest_leaders_half(q, m).map_err(es)?;
            let mut v = vec![lh.delta1, lh.delta2];
            if let Some(d3) = lh.delta3 {
                v.push(d3);
            }
            if (k as usize) > v.len() {
                return Err(format!(
                    "--largest {k}: the third-leader closed form needs m >= 6 (m = {m})"
                ));
            }
            v.truncate(k as usize);
            v
        } else if cli.lambda > 1 && cli.lambda == q - 1 {
            if k != 1 {
                return Err("--largest: only K = 1 has a closed form at lambda = q - 1".into());
            }
            vec![largest_leader_qm1(q, m).map_err(es)?]
        } else {
            return Err(format!(
                "--largest has closed forms for lambda = 2 or lambda = q - 1 only \
                 (lambda = {})",
                cli.lambda
            ));
        };
        let top: Vec<(u64, u32)> = leaders
            .iter()
            .filter(|&&(l, _)| l != 0)
            .rev()
            .take(k as usize)
            .copied()
            .collect();
        for (rank, (cf, scan)) in stated.iter().zip(top.iter()).enumerate() {
            verdicts.push(Verdict::compare(
                &format!("largest leader #{}", rank + 1),
                "closed form vs full leader scan",
                scan.0,
                cf.0,
            ));
            verdicts.push(Verdict::compare(
                &format!("coset size of leader #{}", rank + 1),
                "closed form vs full leader scan",
                scan.1,
                cf.1,
            ));
        }
        largest_out = Some(
            stated
                .iter()
                .map(|&(leader, size)| LeaderEntry {
                    leader,
                    size,
                    members: None,
                })
                .collect::<Vec<_>>(),
        );
    }

    let mut smallest_out = None;
    if smallest_nonleader {
        let stated = smallest_nonleader_even_m(&space).map_err(es)?;
        let mut scan = 1;
        let found = loop {
            if scan >= space.n {
                break None;
            }
            if scan % q != 0 && !is_leader(&space, scan).map_err(es)? {
                break Some(scan);
            }
            scan += 1;
        };
        let found = found.ok_or("no non-leader found below n")?;
        verdicts.push(Verdict::compare(
            "smallest non-leader not divisible by q",
            "closed form vs linear scan",
            found,
            stated,
        ));
        smallest_out = Some(stated);
        println!("smallest non-leader (coprime-to-q digits): {stated}");
    }

    let leaders_out = if list {
        Some(
            leaders
                .iter()
                .map(|&(leader, size)| {
                    let members = if members_threshold > 0 && size <= members_threshold {
                        Some(
                            coset_of(&space, leader)
                                .expect("leader is in range")
                                .members,
                        )
                    } else {
                        None
                    };
                    LeaderEntry {
                        leader,
                        size,
                        members,
                    }
                })
                .collect::<Vec<_>>(),
        )
    } else {
        None
    };
    if let Some(ls) = &leaders_out {
        for e in ls {
            match &e.members {
                Some(ms) => println!("  leader {:>6} size {} members {:?}", e.leader, e.size, ms),
                None => println!("  leader {:>6} size {}", e.leader, e.size),
            }
        }
    }

    print_verdicts(&verdicts);
    let ok = verdicts.iter().all(|v| v.ok);
    if !verdicts.is_empty() {
        println!(
            "verdict: {}/{} OK",
            verdicts.iter().filter(|v| v.ok).count(),
            verdicts.len()
        );
    }
    let report = CosetReport {
        manifest: RunManifest::new("cosets", params),
        q,
        m,
        lambda: cli.lambda,
        n: space.n,
        leader_count,
        leaders: leaders_out,
        largest: largest_out,
        smallest_nonleader: smallest_out,
        verdicts,
        ok,
    };
    write_outputs(&cli.json, &cli.csv, to_json(&report), None)?;
    Ok(ok)
}

// ---------------------------------------------------------------------------
// bch
// ---------------------------------------------------------------------------

fn cmd_bch(
    cli: &Cli,
    max_field: u64,
    dim_closed: bool,
    min_distance: bool,
) -> Result<bool, String> {
    let q = need(cli.q, "--q")?;
    let m = need(cli.m, "--m")?;
    let delta = need(cli.delta, "--delta")?;
    let ctx = FieldCtx::for_q(q, m, max_field).map_err(es)?;
    let desc = BchDescriptor {
        q,
        m,
        lambda: cli.lambda,
        delta,
        b: cli.b,
        hat: cli.hat,
    };
    let code = build_bch(&ctx, &desc).map_err(es)?;
    let mut params = base_params(cli, q, m);
    params.insert("delta".into(), delta.to_string());
    params.insert("b".into(), cli.b.to_string());
    params.insert("hat".into(), cli.hat.to_string());

    println!(
        "bch: {desc}  n={} k={} |D|={}",
        code.n, code.k, code.defining_set_size
    );

    let mut verdicts = Vec::new();

    // The generator must complement its parity-check polynomial to x^n - 1.
    let h = parity_check(&ctx.sub, code.n, &code.generator).map_err(es)?;
    let product = code.generator.mul(&ctx.sub, &h);
    let target = Poly::x_pow_minus_one(&ctx.sub, code.n);
    verdicts.push(Verdict::compare(
        "generator times parity-check equals x^n - 1",
        "polynomial division oracle vs reconstructed product",
        true,
        product.to_labels(&ctx.sub) == target.to_labels(&ctx.sub),
    ));

    let mut dim_block = None;
    if dim_closed {
        if cli.b != 1 {
            eprintln!("note: the closed-form dimension ladder covers b = 1 only; skipping");
        } else {
            let closed = if m % 2 == 1 {
                dim_closed_odd(q, m, cli.lambda, delta).map(|k| (k, "odd-m digit count".into()))
            } else {
                dim_closed_even(q, m, cli.lambda, delta)
            };
            match closed {
                Ok((k_closed, branch)) => {
                    let k_closed = k_closed - u64::from(cli.hat);
                    verdicts.push(Verdict::compare(
                        "dimension",
                        "digit-count closed form vs coset-union construction",
                        code.k,
                        k_closed,
                    ));
                    println!("closed-form dimension: {k_closed} (branch: {branch})");
                    dim_block = Some(DimClosedBlock {
                        k: k_closed,
                        branch,
                        source: "digit-count closed form".into(),
                    });
                }
                Err(e) => {
                    eprintln!("note: no closed-form dimension for these parameters: {e}");
                }
            }
        }
    }

    let designed = delta + u64::from(cli.hat);
    let mut d_out = None;
    let mut griesmer_out = None;
    if min_distance {
        let d = min_distance_bruteforce(&ctx, &code, DEFAULT_ENUM_CAP).map_err(es)?;
        println!("minimum distance (exhaustive): {d}");
        verdicts.push(Verdict::compare(
            "minimum distance meets the designed-distance bound",
            "exhaustive enumeration vs designed distance",
            true,
            bch_bound_check(&desc, d),
        ));
        let g = griesmer_check(code.n, code.k, d, q);
        let g_str = match g {
            GriesmerVerdict::Meets => "meets",
            GriesmerVerdict::Satisfies => "satisfies",
            GriesmerVerdict::Violates => "violates",
        };
        println!("length-optimality bound: {g_str}");
        verdicts.push(Verdict::compare(
            "length-optimality bound not violated",
            "bound arithmetic vs measured parameters",
            true,
            g != GriesmerVerdict::Violates,
        ));
        d_out = Some(d);
        griesmer_out = Some(g_str.to_string());
    }

    print_verdicts(&verdicts);
    let ok = verdicts.iter().all(|v| v.ok);
    println!(
        "verdict: {}/{} OK",
        verdicts.iter().filter(|v| v.ok).count(),
        verdicts.len()
    );
    let report = BchReport {
        manifest: RunManifest::new("bch", params).with_field(&ctx),
        q,
        m,
        lambda: cli.lambda,
        delta,
        b: cli.b,
        hat: cli.hat,
        n: code.n,
        k: code.k,
        generator: code.generator.to_labels(&ctx.sub),
        defining_set_size: code.defining_set_size,
        nonzero_leaders: code
            .nonzero_leaders
            .iter()
            .map(|&(leader, size)| LeaderEntry {
                leader,
                size,
                members: None,
            })
            .collect(),
        dim_closed: dim_block,
        d_bruteforce: d_out,
        designed_distance_bound: designed,
        griesmer: griesmer_out,
        verdicts,
        ok,
    };
    write_outputs(&cli.json, &cli.csv, to_json(&report), None)?;
    Ok(ok)
}

// ---------------------------------------------------------------------------
// weights
// ---------------------------------------------------------------------------

enum FamilyTarget {
    Kind(FamilyKind),
    CharSum,
}

fn resolve_family(name: &str, m: u32) -> Result<FamilyTarget, String> {
    let lower = name.to_ascii_lowercase();
    let kind = match lower.as_str() {
        "hat-delta1" => FamilyKind::HatDelta1,
        "c-delta1" => FamilyKind::CDelta1,
        "hat-delta2" => {
            if m % 2 == 1 {
                FamilyKind::V1
            } else {
                FamilyKind::V2
            }
        }
        "c-delta2" => {
            if m % 2 == 1 {
                FamilyKind::V4
            } else {
                FamilyKind::V5
            }
        }
        "v1" => FamilyKind::V1,
        "v2" => FamilyKind::V2,
        "v3" => FamilyKind::V3,
        "v4" => FamilyKind::V4,
        "v5" => FamilyKind::V5,
        "qm1" => FamilyKind::Qm1OneWeight,
        "t-dist" => return Ok(FamilyTarget::CharSum),
        other => {
            return Err(format!(
                "unknown family {other:?}; known: hat-delta1, C-delta1, hat-delta2, C-delta2, \
                 V1, V2, V3, V4, V5, QM1, T-dist"
            ))
        }
    };
    Ok(FamilyTarget::Kind(kind))
}

fn cmd_weights(
    cli: &Cli,
    max_field: u64,
    family: &str,
    table: bool,
    enumerate: bool,
    verify: bool,
) -> Result<bool, String> {
    let q = need(cli.q, "--q")?;
    let m = need(cli.m, "--m")?;
    let target = resolve_family(family, m)?;
    let kind = match target {
        FamilyTarget::CharSum => return cmd_char_sum(cli, max_field, q, m),
        FamilyTarget::Kind(k) => k,
    };
    // --table alone: closed form only; --enumerate alone: oracle only;
    // --verify, both flags, or no flags: both plus comparison verdicts.
    let (do_closed, do_enum) = match (table, enumerate, verify) {
        (true, false, false) => (true, false),
        (false, true, false) => (false, true),
        _ => (true, true),
    };
    let mut params = base_params(cli, q, m);
    params.insert("family".into(), kind.name().into());

    let closed = if do_closed {
        Some(closed_form_distribution(q, m, kind).map_err(es)?)
    } else {
        None
    };
    let (enumerated, ctx) = if do_enum {
        let ctx = FieldCtx::for_q(q, m, max_field).map_err(es)?;
        let fam = build_family(&ctx, kind).map_err(es)?;
        let counts = fam.eval.enumerate(&ctx, DEFAULT_ENUM_CAP).map_err(es)?;
        (
            Some(WeightDistribution::from_counts(
                fam.length, fam.dim, &counts,
            )),
            Some(ctx),
        )
    } else {
        (None, None)
    };

    let shown = closed
        .as_ref()
        .or(enumerated.as_ref())
        .expect("one side is always computed");
    let (length, k) = (shown.length, shown.dim);
    println!("weights {}: q={q} m={m} -> [{length}, {k}]", kind.name());
    if let Some(c) = &closed {
        println!(
            "closed form:  {}  (d = {})",
            c.enumerator(),
            c.minimum_distance().map_or("-".into(), |d| d.to_string())
        );
    }
    if let Some(e) = &enumerated {
        println!(
            "enumeration:  {}  (d = {})",
            e.enumerator(),
            e.minimum_distance().map_or("-".into(), |d| d.to_string())
        );
    }

    let mut verdicts = Vec::new();
    if let (Some(c), Some(e)) = (&closed, &enumerated) {
        verdicts.push(Verdict::compare(
            "weight distribution",
            "closed form vs trace enumeration",
            c.enumerator(),
            e.enumerator(),
        ));
        let matched = c.rows == e.rows && c.length == e.length && c.dim == e.dim;
        println!(
            "[closed form vs trace enumeration] distribution: {}",
            if matched { "MATCH" } else { "MISMATCH" }
        );
    }
    let ok = verdicts.iter().all(|v| v.ok);

    let mut manifest = RunManifest::new("weights", params);
    if let Some(ctx) = &ctx {
        manifest = manifest.with_field(ctx);
    }
    let report = WeightsReport {
        manifest,
        family: kind.name().into(),
        q,
        m,
        length,
        k,
        closed_form: closed
            .as_ref()
            .map(|c| DistributionBlock::new("closed_form", c)),
        enumeration: enumerated
            .as_ref()
            .map(|e| DistributionBlock::new("enumeration", e)),
        verdicts,
        ok,
    };
    let csv_text = Some(weights_csv(&report));
    write_outputs(&cli.json, &cli.csv, to_json(&report), csv_text)?;
    Ok(ok)
}

fn cmd_char_sum(cli: &Cli, max_field: u64, q: u64, m: u32) -> Result<bool, String> {
    if cli.csv.is_some() {
        return Err("--csv applies to weight tables, not the character-sum distribution".into());
    }
    let ctx = FieldCtx::for_q(q, m, max_field).map_err(es)?;
    let mut params = base_params(cli, q, m);
    params.insert("family".into(), "T-dist".into());

    let numeric = char_sum_rows_numeric(&ctx).map_err(es)?;
    let closed = char_sum_rows_closed(&ctx).map_err(es)?;
    println!("character-sum value distribution: q={q} m={m}");
    println!("  rank  value                          multiplicity");
    for r in &closed {
        println!("  {:>4}  {:<30} {}", r.rank, r.value.to_string(), r.mult);
    }

    let mut verdicts = Vec::new();
    verdicts.push(Verdict::compare(
        "value distribution multiset",
        "closed (rank, value, multiplicity) rows vs exhaustive histogram",
        true,
        char_sum_rows_match(&numeric, &closed),
    ));
    if m % 2 == 1 {
        let expected = char_sum_moments_expected(&ctx).map_err(es)?;
        let numeric_moments = char_sum_moments_numeric(&ctx).map_err(es)?;
        for (name, e, n) in [
            ("first power sum", &expected.sum1, &numeric_moments.sum1),
            ("second power sum", &expected.sum2, &numeric_moments.sum2),
            ("third power sum", &expected.sum3, &numeric_moments.sum3),
            (
                "twisted square sum",
                &expected.twisted_square,
                &numeric_moments.twisted_square,
            ),
        ] {
            verdicts.push(Verdict::compare(
                name,
                "closed power sum vs exhaustive summation",
                e.to_string(),
                n.to_string(),
            ));
        }
        verdicts.push(Verdict::compare(
            "corank constraints and signed multiplicity identity",
            "closed side conditions vs numeric rows",
            true,
            char_sum_side_conditions(&ctx, &numeric),
        ));
    } else {
        eprintln!("note: moment identities apply to odd m only; checked the multiset alone");
    }

    print_verdicts(&verdicts);
    let ok = verdicts.iter().all(|v| v.ok);
    println!(
        "verdict: {}/{} OK",
        verdicts.iter().filter(|v| v.ok).count(),
        verdicts.len()
    );
    let report = CharSumReport {
        manifest: RunManifest::new("weights", params).with_field(&ctx),
        q,
        m,
        rows_closed: CharSumRowOut::from_rows(&closed),
        rows_numeric: CharSumRowOut::from_rows(&numeric),
        verdicts,
        ok,
    };
    write_outputs(&cli.json, &cli.csv, to_json(&report), None)?;
    Ok(ok)
}

// ---------------------------------------------------------------------------
// repro-all
// ---------------------------------------------------------------------------

fn cmd_repro_all(cli: &Cli, max_field: u64) -> Result<bool, String> {
    if cli.csv.is_some() {
        return Err("--csv applies to the weights subcommand, not repro-all".into());
    }
    let rows = repro::run_all(max_field as u128);
    let width = rows.iter().map(|r| r.id.len()).max().unwrap_or(0);
    for r in &rows {
        let extra = if r.status == "PASS" {
            String::new()
        } else {
            format!("  <- {}", r.detail)
        };
        println!(
            "[{:<4}] {:<width$}  {}  ({}){extra}",
            r.status,
            r.id,
            r.claim,
            r.source,
            width = width
        );
    }
    let pass = rows.iter().filter(|r| r.status == "PASS").count();
    let fail = rows.iter().filter(|r| r.status == "FAIL").count();
    let skip = rows.iter().filter(|r| r.status == "SKIP").count();
    println!(
        "summary: {pass} pass, {fail} fail, {skip} skip of {} claims",
        rows.len()
    );

    let mut params = BTreeMap::new();
    params.insert("max_field".into(), cli.max_field.trim().to_string());
    let report = ReproReport::new(RunManifest::new("repro-all", params), rows);
    write_outputs(&cli.json, &cli.csv, to_json(&report), None)?;
    Ok(fail == 0)
}
