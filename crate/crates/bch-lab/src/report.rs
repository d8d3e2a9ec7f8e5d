//! Machine-readable reports.
//!
//! Every report embeds a [`RunManifest`] pinning the command, its parameters,
//! and the primitive polynomials that define the field tables, so that a
//! rerun with the same invocation reproduces byte-identical JSON. Nothing
//! time- or host-dependent is serialized. Weight-distribution frequencies are
//! serialized as decimal strings so arbitrary-precision counts survive every
//! JSON parser.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::field::FieldCtx;
use crate::weights::{CharSumRow, WeightDistribution};

/// The field tower behind a report: GF(p^s) ⊂ GF(p^{s·m}), pinned by the
/// primitive polynomials (coefficient lists over GF(p), lowest degree first).
#[derive(Clone, Debug, Serialize)]
pub struct FieldManifest {
    pub p: u64,
    pub s: u32,
    pub m: u32,
    pub prim_poly_q: Vec<u64>,
    pub prim_poly_qm: Vec<u64>,
}

impl FieldManifest {
    pub fn from_ctx(ctx: &FieldCtx) -> FieldManifest {
        FieldManifest {
            p: ctx.p,
            s: ctx.s,
            m: ctx.m,
            prim_poly_q: ctx.sub.prim_poly.clone(),
            prim_poly_qm: ctx.ext.prim_poly.clone(),
        }
    }
}

/// Invocation record embedded in every report. Deliberately excludes timing
/// (which goes to stderr) so identical invocations serialize identically.
#[derive(Clone, Debug, Serialize)]
pub struct RunManifest {
    pub tool: String,
    pub version: String,
    pub command: String,
    pub parameters: BTreeMap<String, String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub field: Option<FieldManifest>,
}

impl RunManifest {
    pub fn new(command: &str, parameters: BTreeMap<String, String>) -> RunManifest {
        RunManifest {
            tool: "bchlab".into(),
            version: env!("CARGO_PKG_VERSION").into(),
            command: command.into(),
            parameters,
            field: None,
        }
    }

    pub fn with_field(mut self, ctx: &FieldCtx) -> RunManifest {
        self.field = Some(FieldManifest::from_ctx(ctx));
        self
    }
}

/// One checked claim. `source` names the evidence on each side (closed form,
/// enumeration, oracle scan, …) — a verdict is never emitted without it.
#[derive(Clone, Debug, Serialize)]
pub struct Verdict {
    pub claim: String,
    pub source: String,
    pub expected: String,
    pub actual: String,
    pub ok: bool,
}

impl Verdict {
    pub fn compare<T: PartialEq + std::fmt::Display>(
        claim: &str,
        source: &str,
        expected: T,
        actual: T,
    ) -> Verdict {
        Verdict {
            claim: claim.into(),
            source: source.into(),
            ok: expected == actual,
            expected: expected.to_string(),
            actual: actual.to_string(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct LeaderEntry {
    pub leader: u64,
    pub size: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub members: Option<Vec<u64>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CosetReport {
    pub manifest: RunManifest,
    pub q: u64,
    pub m: u32,
    pub lambda: u64,
    pub n: u64,
    pub leader_count: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub leaders: Option<Vec<LeaderEntry>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub largest: Option<Vec<LeaderEntry>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub smallest_nonleader: Option<u64>,
    pub verdicts: Vec<Verdict>,
    pub ok: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct DimClosedBlock {
    pub k: u64,
    pub branch: String,
    pub source: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct BchReport {
    pub manifest: RunManifest,
    pub q: u64,
    pub m: u32,
    pub lambda: u64,
    pub delta: u64,
    pub b: u64,
    pub hat: bool,
    pub n: u64,
    pub k: u64,
    /// Generator coefficients as canonical GF(q) labels, lowest degree first.
    pub generator: Vec<u64>,
    pub defining_set_size: u64,
    pub nonzero_leaders: Vec<LeaderEntry>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dim_closed: Option<DimClosedBlock>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub d_bruteforce: Option<u64>,
    /// The designed-distance lower bound the code must meet (δ, or δ+1 for
    /// the even-like subcode).
    pub designed_distance_bound: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub griesmer: Option<String>,
    pub verdicts: Vec<Verdict>,
    pub ok: bool,
}

/// One weight distribution with its provenance.
#[derive(Clone, Debug, Serialize)]
pub struct DistributionBlock {
    pub source: String,
    /// `[weight, frequency-as-decimal-string]` pairs, ascending by weight.
    pub entries: Vec<(u64, String)>,
    pub enumerator: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub minimum_distance: Option<u64>,
}

impl DistributionBlock {
    pub fn new(source: &str, dist: &WeightDistribution) -> DistributionBlock {
        DistributionBlock {
            source: source.into(),
            entries: dist.rows.iter().map(|(&w, f)| (w, f.to_string())).collect(),
            enumerator: dist.enumerator(),
            minimum_distance: dist.minimum_distance(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct WeightsReport {
    pub manifest: RunManifest,
    pub family: String,
    pub q: u64,
    pub m: u32,
    pub length: u64,
    pub k: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub closed_form: Option<DistributionBlock>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub enumeration: Option<DistributionBlock>,
    pub verdicts: Vec<Verdict>,
    pub ok: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct CharSumRowOut {
    pub rank: u32,
    pub value: String,
    pub mult: u64,
}

impl CharSumRowOut {
    pub fn from_rows(rows: &[CharSumRow]) -> Vec<CharSumRowOut> {
        rows.iter()
            .map(|r| CharSumRowOut {
                rank: r.rank,
                value: r.value.to_string(),
                mult: r.mult,
            })
            .collect()
    }
}

/// Report for the character-sum value distribution of the quadratic pencil.
#[derive(Clone, Debug, Serialize)]
pub struct CharSumReport {
    pub manifest: RunManifest,
    pub q: u64,
    pub m: u32,
    pub rows_closed: Vec<CharSumRowOut>,
    pub rows_numeric: Vec<CharSumRowOut>,
    pub verdicts: Vec<Verdict>,
    pub ok: bool,
}

/// One claim of the reproduction matrix.
#[derive(Clone, Debug, Serialize)]
pub struct ClaimRow {
    pub id: String,
    pub claim: String,
    pub source: String,
    /// "PASS" | "FAIL" | "SKIP"
    pub status: String,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct ReproReport {
    pub manifest: RunManifest,
    pub claims: Vec<ClaimRow>,
    pub pass: u64,
    pub fail: u64,
    pub skip: u64,
    pub ok: bool,
}

impl ReproReport {
    pub fn new(manifest: RunManifest, claims: Vec<ClaimRow>) -> ReproReport {
        let pass = claims.iter().filter(|c| c.status == "PASS").count() as u64;
        let fail = claims.iter().filter(|c| c.status == "FAIL").count() as u64;
        let skip = claims.iter().filter(|c| c.status == "SKIP").count() as u64;
        ReproReport {
            manifest,
            claims,
            pass,
            fail,
            skip,
            ok: fail == 0,
        }
    }
}

/// Serializes a report as pretty JSON with a trailing newline. Field order
/// follows the struct definitions and maps are ordered, so equal inputs give
/// byte-identical output.
pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("reports always serialize");
    s.push('\n');
    s
}

/// CSV mirror of a weights report: one row per distribution entry, same
/// columns as the JSON blocks.
pub fn weights_csv(report: &WeightsReport) -> String {
    let mut out = String::from("family,q,m,length,k,source,weight,frequency\n");
    for block in [&report.closed_form, &report.enumeration]
        .into_iter()
        .flatten()
    {
        for (w, f) in &block.entries {
            out.push_str(&format!(
                "{},{},{},{},{},{},{},{}\n",
                report.family, report.q, report.m, report.length, report.k, block.source, w, f
            ));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weights::{closed_form_distribution, FamilyKind};

    #[test]
    fn json_is_deterministic_and_embeds_manifest() {
        let ctx = FieldCtx::for_q(3, 3, crate::DEFAULT_MAX_FIELD).unwrap();
        let mut params = BTreeMap::new();
        params.insert("q".into(), "3".into());
        params.insert("m".into(), "3".into());
        let dist = closed_form_distribution(3, 3, FamilyKind::CDelta1).unwrap();
        let make = || WeightsReport {
            manifest: RunManifest::new("weights", params.clone()).with_field(&ctx),
            family: "C-delta1".into(),
            q: 3,
            m: 3,
            length: dist.length,
            k: dist.dim,
            closed_form: Some(DistributionBlock::new("closed_form", &dist)),
            enumeration: None,
            verdicts: vec![Verdict::compare("dimension", "closed_form", 4u64, 4u64)],
            ok: true,
        };
        let a = to_json(&make());
        let b = to_json(&make());
        assert_eq!(a, b);
        assert!(a.contains("\"prim_poly_qm\""));
        assert!(a.contains("\"command\": \"weights\""));
        assert!(a.ends_with('\n'));
        // Frequencies must be strings.
        assert!(a.contains("\"26\""));
    }

    #[test]
    fn csv_mirror_lists_every_entry() {
        let dist = closed_form_distribution(3, 3, FamilyKind::CDelta1).unwrap();
        let report = WeightsReport {
            manifest: RunManifest::new("weights", BTreeMap::new()),
            family: "C-delta1".into(),
            q: 3,
            m: 3,
            length: dist.length,
            k: dist.dim,
            closed_form: Some(DistributionBlock::new("closed_form", &dist)),
            enumeration: None,
            verdicts: Vec::new(),
            ok: true,
        };
        let csv = weights_csv(&report);
        let lines: Vec<&str> = csv.trim_end().lines().collect();
        assert_eq!(lines[0], "family,q,m,length,k,source,weight,frequency");
        // 0, 7, 9, 10, 13 → five rows.
        assert_eq!(lines.len(), 6);
        assert!(lines[1].starts_with("C-delta1,3,3,13,4,closed_form,0,1"));
        assert!(lines.iter().any(|l| l.ends_with("closed_form,13,2")));
    }
}
