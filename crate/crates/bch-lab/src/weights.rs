//! Closed-form weight distributions for the code families with one, two, or
//! three nonzero cyclotomic cosets, and the exponential-sum machinery that
//! underlies them.
//!
//! The families live at two lengths: (q^m − 1)/2 (λ = 2, q odd) and
//! (q^m − 1)/(q − 1) (λ = q − 1). Each family is a trace code whose message
//! components correspond to the largest one or two coset leaders, optionally
//! extended by a constant term. This module provides:
//!
//! * [`build_family`] — the trace representation with canonical exponents,
//!   cross-checked at build time against the coset-leader formulas;
//! * [`closed_form_distribution`] — the predicted weight distribution as
//!   exact integers;
//! * [`QuadraticPencil`] — the two-parameter family of quadratic forms whose
//!   character sums drive the two-coset weight formulas, with exact values
//!   in Z[ζ_p], ranks computed two independent ways, and moment identities;
//! * pointwise weight-formula checks and concatenation-structure checks that
//!   tie the closed forms to exhaustively enumerated codewords.

use std::collections::{BTreeMap, HashSet};

use num_bigint::BigUint;

use crate::cosets::{largest_leader_qm1, largest_leaders_half};
use crate::cycint::{surd_q, ClosedGauss, CycInt};
use crate::enumerate::{TraceComp, TraceEval};
use crate::field::{mulrem, quadratic_character, El, FieldCtx};
use crate::{Error, Result};

// ---------------------------------------------------------------------------
// Weight distributions as exact objects.
// ---------------------------------------------------------------------------

/// A weight distribution: frequency per weight, including the zero word.
/// Frequencies are arbitrary-precision so the closed forms stay exact for
/// any (q, m), not just desk-scale fields.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightDistribution {
    pub length: u64,
    /// log_q of the code size.
    pub dim: u64,
    pub rows: BTreeMap<u64, BigUint>,
}

impl WeightDistribution {
    pub fn from_counts(length: u64, dim: u64, counts: &BTreeMap<u64, u64>) -> WeightDistribution {
        let rows = counts
            .iter()
            .filter(|&(_, &c)| c > 0)
            .map(|(&w, &c)| (w, BigUint::from(c)))
            .collect();
        WeightDistribution { length, dim, rows }
    }

    /// Total number of codewords (must equal q^dim).
    pub fn total(&self) -> BigUint {
        self.rows.values().sum()
    }

    pub fn nonzero_weights(&self) -> Vec<u64> {
        self.rows.keys().copied().filter(|&w| w > 0).collect()
    }

    pub fn minimum_distance(&self) -> Option<u64> {
        self.nonzero_weights().first().copied()
    }

    pub fn is_one_weight(&self) -> bool {
        self.nonzero_weights().len() == 1
    }

    /// Classic enumerator string: `1+26z^7+26z^9+...`.
    pub fn enumerator(&self) -> String {
        let mut parts = Vec::new();
        for (&w, f) in &self.rows {
            if w == 0 {
                parts.push(f.to_string());
            } else if w == 1 {
                parts.push(format!("{f}z"));
            } else {
                parts.push(format!("{f}z^{w}"));
            }
        }
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join("+")
        }
    }
}

fn qpow(q: u64, e: u32) -> BigUint {
    BigUint::from(q).pow(e)
}

/// Exact division; the closed-form frequencies are integers by construction,
/// so a nonzero remainder means a transcription bug and must abort loudly.
fn exact_div(n: BigUint, d: u64) -> BigUint {
    let d = BigUint::from(d);
    assert!(
        (&n % &d) == BigUint::from(0u8),
        "frequency formula not divisible: {n} / {d}"
    );
    n / d
}

struct DistBuilder {
    length: u64,
    dim: u64,
    rows: BTreeMap<u64, BigUint>,
}

impl DistBuilder {
    fn new(length: u64, dim: u64) -> DistBuilder {
        let mut rows = BTreeMap::new();
        rows.insert(0u64, BigUint::from(1u8));
        DistBuilder { length, dim, rows }
    }

    /// Adds a row, merging equal weights and dropping zero frequencies.
    /// (Zero-frequency rows may carry out-of-range weights at degenerate
    /// parameters, so they are discarded before any range check.)
    fn push(&mut self, weight: u64, freq: BigUint) {
        if freq != BigUint::from(0u8) {
            assert!(weight <= self.length, "weight exceeds the code length");
            *self
                .rows
                .entry(weight)
                .or_insert_with(|| BigUint::from(0u8)) += freq;
        }
    }

    fn finish(self, q: u64) -> WeightDistribution {
        let out = WeightDistribution {
            length: self.length,
            dim: self.dim,
            rows: self.rows,
        };
        assert_eq!(
            out.total(),
            qpow(q, out.dim as u32),
            "row frequencies must sum to the code size"
        );
        out
    }
}

// ---------------------------------------------------------------------------
// The families.
// ---------------------------------------------------------------------------

/// The code families with closed-form weight distributions.
///
/// At length (q^m − 1)/2 (λ = 2, q odd), with δ₁ > δ₂ the two largest coset
/// leaders:
/// * `HatDelta1` — defining set is everything except the δ₁ coset
///   (the zero coset included): a one-weight code.
/// * `CDelta1`   — everything except the δ₁ coset and the zero coset; the
///   previous family plus a constant term.
/// * `V1`/`V2`   — everything except the δ₁ and δ₂ cosets, zero coset
///   included (odd m / even m).
/// * `V4`/`V5`   — the same with the zero coset also excluded, i.e. the
///   two-coset family plus a constant term (odd m / even m).
/// * `V3`        — the length-(q^m−1)/(q−1) code whose (q−1)/2-fold repeated,
///   scalar-twisted concatenation is `V1`/`V2`.
///
/// At length (q^m − 1)/(q − 1) (λ = q − 1, q > 3, m ≥ q):
/// * `Qm1OneWeight` — everything except the largest-leader coset, zero coset
///   included: a one-weight code for (m − 1) mod (q − 1) ∈ {0, 1}.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FamilyKind {
    HatDelta1,
    CDelta1,
    V1,
    V2,
    V3,
    V4,
    V5,
    Qm1OneWeight,
}

impl FamilyKind {
    pub const ALL: [FamilyKind; 8] = [
        FamilyKind::HatDelta1,
        FamilyKind::CDelta1,
        FamilyKind::V1,
        FamilyKind::V2,
        FamilyKind::V3,
        FamilyKind::V4,
        FamilyKind::V5,
        FamilyKind::Qm1OneWeight,
    ];

    pub fn name(self) -> &'static str {
        match self {
            FamilyKind::HatDelta1 => "hat-delta1",
            FamilyKind::CDelta1 => "C-delta1",
            FamilyKind::V1 => "V1",
            FamilyKind::V2 => "V2",
            FamilyKind::V3 => "V3",
            FamilyKind::V4 => "V4",
            FamilyKind::V5 => "V5",
            FamilyKind::Qm1OneWeight => "QM1",
        }
    }
}

/// A built family: its trace representation plus headline parameters.
pub struct TraceFamily {
    pub kind: FamilyKind,
    pub lambda: u64,
    pub length: u64,
    pub dim: u64,
    pub eval: TraceEval,
}

/// True when e1 and e2 lie in the same orbit of multiplication by q
/// modulo q^m − 1 (so the trace components they define coincide).
fn same_q_orbit(e1: u64, e2: u64, q: u64, modulus: u64, m: u32) -> bool {
    let mut x = e2 % modulus;
    for _ in 0..m {
        if x == e1 % modulus {
            return true;
        }
        x = mulrem(x, q, modulus);
    }
    false
}

/// Builds the trace representation of a family over the given field tower,
/// verifying at build time that every canonical exponent is q-orbit
/// equivalent to the negated-and-scaled coset leader it stands for, and that
/// the stated component degrees match the actual coset sizes.
pub fn build_family(ctx: &FieldCtx, kind: FamilyKind) -> Result<TraceFamily> {
    let q = ctx.q;
    let m = ctx.m;
    let group = ctx.qm - 1;
    let h = m / 2;

    // Exponent standing for coset leader d at length (q^m−1)/lambda:
    // the parity-check root is θ^d = α^{lambda·d}, and the component
    // exponent is its negation.
    let leader_exponent = |lambda: u64, d: u64| (group - mulrem(lambda, d, group)) % group;

    let fam = match kind {
        FamilyKind::HatDelta1 | FamilyKind::CDelta1 => {
            let lh = largest_leaders_half(q, m)?;
            let (d1, size1) = lh.delta1;
            let tau = if m % 2 == 1 {
                q.pow(m - 1) + q.pow((m - 1) / 2)
            } else {
                q.pow(m - 1) + q.pow(h - 1)
            };
            assert_eq!(
                tau,
                leader_exponent(2, d1),
                "canonical exponent must equal the negated largest leader"
            );
            let with_constant = kind == FamilyKind::CDelta1;
            let dim = size1 as u64 + u64::from(with_constant);
            TraceFamily {
                kind,
                lambda: 2,
                length: group / 2,
                dim,
                eval: TraceEval {
                    length: group / 2,
                    comps: vec![TraceComp {
                        mj: size1,
                        exponent: tau,
                    }],
                    with_constant,
                },
            }
        }
        FamilyKind::V1 | FamilyKind::V4 => {
            if m % 2 == 0 || m < 3 {
                return Err(Error::KindParityMismatch);
            }
            let lh = largest_leaders_half(q, m)?;
            let e1 = q.pow((m - 1) / 2) + 1;
            let e2 = q.pow((m - 3) / 2) + 1;
            assert!(
                same_q_orbit(e1, leader_exponent(2, lh.delta1.0), q, group, m),
                "first exponent must represent the largest leader"
            );
            assert!(
                same_q_orbit(e2, leader_exponent(2, lh.delta2.0), q, group, m),
                "second exponent must represent the second-largest leader"
            );
            assert_eq!(lh.delta1.1, m);
            assert_eq!(lh.delta2.1, m);
            let with_constant = kind == FamilyKind::V4;
            TraceFamily {
                kind,
                lambda: 2,
                length: group / 2,
                dim: 2 * m as u64 + u64::from(with_constant),
                eval: TraceEval {
                    length: group / 2,
                    comps: vec![
                        TraceComp {
                            mj: m,
                            exponent: e1,
                        },
                        TraceComp {
                            mj: m,
                            exponent: e2,
                        },
                    ],
                    with_constant,
                },
            }
        }
        FamilyKind::V2 | FamilyKind::V5 => {
            if m % 2 == 1 || m < 2 {
                return Err(Error::KindParityMismatch);
            }
            let lh = largest_leaders_half(q, m)?;
            let e1 = q.pow(h) + 1;
            let e2 = q.pow(h - 1) + 1;
            assert!(
                same_q_orbit(e1, leader_exponent(2, lh.delta1.0), q, group, m),
                "first exponent must represent the largest leader"
            );
            assert!(
                same_q_orbit(e2, leader_exponent(2, lh.delta2.0), q, group, m),
                "second exponent must represent the second-largest leader"
            );
            assert_eq!(lh.delta1.1, h);
            assert_eq!(lh.delta2.1, m);
            let with_constant = kind == FamilyKind::V5;
            TraceFamily {
                kind,
                lambda: 2,
                length: group / 2,
                dim: (3 * m as u64) / 2 + u64::from(with_constant),
                eval: TraceEval {
                    length: group / 2,
                    comps: vec![
                        TraceComp {
                            mj: h,
                            exponent: e1,
                        },
                        TraceComp {
                            mj: m,
                            exponent: e2,
                        },
                    ],
                    with_constant,
                },
            }
        }
        FamilyKind::V3 => {
            if q % 2 == 0 {
                return Err(Error::EvenQ);
            }
            let length = group / (q - 1);
            let comps = if m % 2 == 1 {
                if m < 3 {
                    return Err(Error::KindParityMismatch);
                }
                vec![
                    TraceComp {
                        mj: m,
                        exponent: q.pow((m - 1) / 2) + 1,
                    },
                    TraceComp {
                        mj: m,
                        exponent: q.pow((m - 3) / 2) + 1,
                    },
                ]
            } else {
                vec![
                    TraceComp {
                        mj: h,
                        exponent: q.pow(h) + 1,
                    },
                    TraceComp {
                        mj: m,
                        exponent: q.pow(h - 1) + 1,
                    },
                ]
            };
            let dim = comps.iter().map(|c| c.mj as u64).sum();
            TraceFamily {
                kind,
                lambda: q - 1,
                length,
                dim,
                eval: TraceEval {
                    length,
                    comps,
                    with_constant: false,
                },
            }
        }
        FamilyKind::Qm1OneWeight => {
            let (delta, size) = largest_leader_qm1(q, m)?;
            let b = (m as u64 - 1) % (q - 1);
            let a = (m as u64 - 1) / (q - 1);
            let tau = match b {
                0 => {
                    let mut t = q.pow(m - 1);
                    for l in 1..=(q - 2) as u32 {
                        t += q.pow(a as u32 * l);
                    }
                    t
                }
                1 => {
                    let cap = (q - 1) / 2;
                    let mut t = q.pow(m - 1);
                    for l in 1..=cap as u32 {
                        t += q.pow(a as u32 * l);
                    }
                    for l in (cap + 1) as u32..=(q - 2) as u32 {
                        t += q.pow(a as u32 * l + 1);
                    }
                    t
                }
                other => return Err(Error::UnsupportedResidue(other)),
            };
            assert_eq!(
                tau,
                leader_exponent(q - 1, delta),
                "canonical exponent must equal the negated largest leader"
            );
            let expect_size = if b == 1 && q % 2 == 1 { m / 2 } else { m };
            assert_eq!(size, expect_size, "coset size of the largest leader");
            TraceFamily {
                kind,
                lambda: q - 1,
                length: group / (q - 1),
                dim: size as u64,
                eval: TraceEval {
                    length: group / (q - 1),
                    comps: vec![TraceComp {
                        mj: size,
                        exponent: tau,
                    }],
                    with_constant: false,
                },
            }
        }
    };
    debug_assert_eq!(
        fam.eval.message_count(ctx),
        (q as u128).pow(fam.dim as u32),
        "message space must have q^dim elements"
    );
    Ok(fam)
}

// ---------------------------------------------------------------------------
// Closed-form distributions.
// ---------------------------------------------------------------------------

/// The predicted weight distribution of a family, as exact integers.
/// Rows with equal weights are merged; zero-frequency rows are dropped.
pub fn closed_form_distribution(q: u64, m: u32, kind: FamilyKind) -> Result<WeightDistribution> {
    let require_odd_q = |kind: FamilyKind| -> Result<()> {
        if q % 2 == 0 {
            return Err(Error::EvenQ);
        }
        let _ = kind;
        Ok(())
    };
    let h = m / 2;
    let n_half = (checked_qm(q, m)? - 1) / 2;
    let n_proj = (checked_qm(q, m)? - 1) / (q - 1);

    match kind {
        FamilyKind::HatDelta1 => {
            require_odd_q(kind)?;
            if m % 2 == 1 {
                let mut d = DistBuilder::new(n_half, m as u64);
                d.push((q - 1) * q.pow(m - 1) / 2, qpow(q, m) - BigUint::from(1u8));
                Ok(d.finish(q))
            } else {
                let mut d = DistBuilder::new(n_half, h as u64);
                d.push(
                    (q - 1) * (q.pow(m - 1) + q.pow(h - 1)) / 2,
                    qpow(q, h) - BigUint::from(1u8),
                );
                Ok(d.finish(q))
            }
        }
        FamilyKind::CDelta1 => {
            require_odd_q(kind)?;
            let qm = q.pow(m);
            if m % 2 == 1 {
                let root = q.pow((m - 1) / 2);
                let mut d = DistBuilder::new(n_half, m as u64 + 1);
                let half_big =
                    exact_div((qpow(q, m) - BigUint::from(1u8)) * BigUint::from(q - 1), 2);
                d.push((qm - qm / q - root - 1) / 2, half_big.clone());
                d.push((qm - qm / q) / 2, qpow(q, m) - BigUint::from(1u8));
                d.push((qm - qm / q + root - 1) / 2, half_big);
                d.push((qm - 1) / 2, BigUint::from(q - 1));
                Ok(d.finish(q))
            } else {
                let mut d = DistBuilder::new(n_half, h as u64 + 1);
                d.push(
                    (qm - qm / q - q.pow(h - 1) - 1) / 2,
                    BigUint::from(q - 1) * (qpow(q, h) - BigUint::from(1u8)),
                );
                d.push(
                    (q - 1) * (q.pow(m - 1) + q.pow(h - 1)) / 2,
                    qpow(q, h) - BigUint::from(1u8),
                );
                d.push((qm - 1) / 2, BigUint::from(q - 1));
                Ok(d.finish(q))
            }
        }
        FamilyKind::V1 => {
            require_odd_q(kind)?;
            if m % 2 == 0 || m < 3 {
                return Err(Error::KindParityMismatch);
            }
            let mut d = DistBuilder::new(n_half, 2 * m as u64);
            for (w, f) in two_coset_rows_odd(q, m, true) {
                d.push(w, f);
            }
            Ok(d.finish(q))
        }
        FamilyKind::V2 => {
            require_odd_q(kind)?;
            if m % 2 == 1 {
                return Err(Error::KindParityMismatch);
            }
            let mut d = DistBuilder::new(n_half, 3 * m as u64 / 2);
            for (w, f) in two_coset_rows_even(q, m, true) {
                d.push(w, f);
            }
            Ok(d.finish(q))
        }
        FamilyKind::V3 => {
            require_odd_q(kind)?;
            let (dim, rows) = if m % 2 == 1 {
                if m < 3 {
                    return Err(Error::KindParityMismatch);
                }
                (2 * m as u64, two_coset_rows_odd(q, m, false))
            } else {
                (3 * m as u64 / 2, two_coset_rows_even(q, m, false))
            };
            let mut d = DistBuilder::new(n_proj, dim);
            for (w, f) in rows {
                d.push(w, f);
            }
            Ok(d.finish(q))
        }
        FamilyKind::V4 => {
            require_odd_q(kind)?;
            if m % 2 == 0 || m < 3 {
                return Err(Error::KindParityMismatch);
            }
            let qm = q.pow(m);
            let qm1 = qm / q;
            let rs = q.pow((m - 1) / 2); // q^{(m-1)/2}
            let rb = q.pow((m + 1) / 2); // q^{(m+1)/2}
            let big = qpow(q, m) - BigUint::from(1u8);
            let mut d = DistBuilder::new(n_half, 2 * m as u64 + 1);
            d.push(
                (qm - qm1 - rb - 1) / 2,
                exact_div(
                    big.clone() * (qpow(q, m - 1) - BigUint::from(1u8)),
                    2 * (q + 1),
                ),
            );
            d.push(
                (qm - qm1 - rb + rs) / 2,
                exact_div(big.clone() * (qpow(q, m - 1) + BigUint::from(rs)), 2),
            );
            d.push(
                (qm - qm1 - rs - 1) / 2,
                exact_div(
                    big.clone()
                        * (qpow(q, m + 2) - qpow(q, m) - qpow(q, m - 1) - qpow(q, (m + 3) / 2)
                            + qpow(q, (m - 1) / 2)
                            + qpow(q, 2)),
                    2 * (q + 1),
                ),
            );
            d.push(
                (qm - qm1) / 2,
                big.clone() * (qpow(q, m) - qpow(q, m - 1) + BigUint::from(1u8)),
            );
            d.push(
                (qm - qm1 + rs - 1) / 2,
                exact_div(
                    big.clone()
                        * (qpow(q, m + 2) - qpow(q, m) - qpow(q, m - 1) + qpow(q, (m + 3) / 2)
                            - qpow(q, (m - 1) / 2)
                            + qpow(q, 2)),
                    2 * (q + 1),
                ),
            );
            d.push(
                (qm - qm1 + rb - rs) / 2,
                exact_div(big.clone() * (qpow(q, m - 1) - BigUint::from(rs)), 2),
            );
            d.push(
                (qm - qm1 + rb - 1) / 2,
                exact_div(big * (qpow(q, m - 1) - BigUint::from(1u8)), 2 * (q + 1)),
            );
            d.push((qm - 1) / 2, BigUint::from(q - 1));
            Ok(d.finish(q))
        }
        FamilyKind::V5 => {
            require_odd_q(kind)?;
            if m % 2 == 1 {
                return Err(Error::KindParityMismatch);
            }
            let qm = q.pow(m);
            let qm1 = qm / q;
            let rh = q.pow(h); // q^{m/2}
            let rs = q.pow(h - 1); // q^{(m-2)/2}
            let big = qpow(q, m) - BigUint::from(1u8);
            let mut d = DistBuilder::new(n_half, 3 * m as u64 / 2 + 1);
            d.push(
                (qm - qm1 - rh - 1) / 2,
                exact_div(
                    big.clone() * (qpow(q, h + 1) + qpow(q, h - 1) - BigUint::from(2u8)),
                    2 * (q + 1),
                ),
            );
            d.push(
                (qm - qm1 - rh + rs) / 2,
                exact_div(
                    big.clone() * (qpow(q, h + 1) + BigUint::from(q)),
                    2 * (q + 1),
                ),
            );
            d.push(
                (qm - qm1 - rs - 1) / 2,
                exact_div(
                    (qpow(q, h) - BigUint::from(1u8))
                        * (qpow(q, m + 1) - BigUint::from(2u8) * qpow(q, m) + BigUint::from(q)),
                    2,
                ),
            );
            d.push((qm - qm1) / 2, big.clone() * BigUint::from(rs));
            d.push(
                (qm - qm1 + rs - 1) / 2,
                exact_div(
                    big.clone() * (qpow(q, h + 1) + BigUint::from(q)) * BigUint::from(q - 1),
                    2 * (q + 1),
                ),
            );
            d.push(
                (qm - qm1 + rh - rs) / 2,
                exact_div(
                    (qpow(q, h + 1) - BigUint::from(q))
                        * (qpow(q, m) - BigUint::from(2u8) * qpow(q, m - 1) + BigUint::from(1u8)),
                    2 * (q - 1),
                ),
            );
            d.push(
                (qm - qm1 + rh - 1) / 2,
                exact_div(big.clone() * (BigUint::from(rh) - BigUint::from(rs)), 2),
            );
            d.push(
                (qm - qm1 + rh * q - rh) / 2,
                exact_div(big * (BigUint::from(rs) - BigUint::from(1u8)), q * q - 1),
            );
            d.push((qm - 1) / 2, BigUint::from(q - 1));
            Ok(d.finish(q))
        }
        FamilyKind::Qm1OneWeight => {
            if q <= 3 {
                return Err(Error::QTooSmall);
            }
            if (m as u64) < q {
                return Err(Error::OutOfProvenRange(format!(
                    "one-weight family at length (q^m-1)/(q-1) needs m >= q, got m = {m}"
                )));
            }
            let b = (m as u64 - 1) % (q - 1);
            match b {
                0 => {
                    let mut d = DistBuilder::new(n_proj, m as u64);
                    d.push(q.pow(m - 1), qpow(q, m) - BigUint::from(1u8));
                    Ok(d.finish(q))
                }
                1 if q % 2 == 0 => {
                    let mut d = DistBuilder::new(n_proj, m as u64);
                    d.push(q.pow(m - 1), qpow(q, m) - BigUint::from(1u8));
                    Ok(d.finish(q))
                }
                1 => {
                    let mut d = DistBuilder::new(n_proj, h as u64);
                    d.push(
                        (q.pow(h) + 1) * q.pow(h - 1),
                        qpow(q, h) - BigUint::from(1u8),
                    );
                    Ok(d.finish(q))
                }
                other => Err(Error::UnsupportedResidue(other)),
            }
        }
    }
}

fn checked_qm(q: u64, m: u32) -> Result<u64> {
    crate::field::checked_pow(q, m)
        .ok_or_else(|| Error::SizeExceeded((q as u128).pow(m), u64::MAX as u128))
}

/// Rows of the two-coset family for odd m: `full_length` selects between the
/// λ = 2 weights and the λ = q − 1 weights (the latter are the former scaled
/// by 2/(q−1); the frequencies coincide).
fn two_coset_rows_odd(q: u64, m: u32, full_length: bool) -> Vec<(u64, BigUint)> {
    let root = q.pow((m - 1) / 2);
    let qm1 = q.pow(m - 1);
    let big = qpow(q, m) - BigUint::from(1u8);
    let scale = |w: u64| if full_length { (q - 1) * w / 2 } else { w };
    vec![
        (
            scale(qm1 - root),
            exact_div(big.clone() * (qpow(q, m - 1) + BigUint::from(root)), 2),
        ),
        (
            scale(qm1),
            big.clone() * (qpow(q, m) - qpow(q, m - 1) + BigUint::from(1u8)),
        ),
        (
            scale(qm1 + root),
            exact_div(big * (qpow(q, m - 1) - BigUint::from(root)), 2),
        ),
    ]
}

/// Rows of the two-coset family for even m; same `full_length` convention.
fn two_coset_rows_even(q: u64, m: u32, full_length: bool) -> Vec<(u64, BigUint)> {
    let h = m / 2;
    let rs = q.pow(h - 1); // q^{(m-2)/2}
    let rh = q.pow(h);
    let qm1 = q.pow(m - 1);
    let big = qpow(q, m) - BigUint::from(1u8);
    let scale = |w: u64| if full_length { (q - 1) * w / 2 } else { w };
    vec![
        (
            scale(qm1 - rs),
            exact_div(
                big.clone() * (qpow(q, h + 1) + BigUint::from(q)),
                2 * (q + 1),
            ),
        ),
        (scale(qm1), big.clone() * BigUint::from(rs)),
        (
            scale(qm1 + rs),
            exact_div(
                (qpow(q, h + 1) - BigUint::from(q))
                    * (qpow(q, m) - BigUint::from(2u8) * qpow(q, m - 1) + BigUint::from(1u8)),
                2 * (q - 1),
            ),
        ),
        (
            scale(qm1 + rh),
            exact_div(big * (BigUint::from(rs) - BigUint::from(1u8)), q * q - 1),
        ),
    ]
}

// ---------------------------------------------------------------------------
// The quadratic-form pencil and its character sums.
// ---------------------------------------------------------------------------

/// The two-parameter family of GF(q)-valued quadratic forms on GF(q^m) that
/// underlies the two-coset codes:
///
/// * odd m (≥ 3):  Q_{a,b}(x) = Tr_{q^m/q}(a·x^{q^{(m−1)/2}+1} + b·x^{q^{(m−3)/2}+1}),
///   (a, b) ∈ GF(q^m) × GF(q^m);
/// * even m (≥ 2), h = m/2:  Q_{a,b}(x) = Tr_{q^h/q}(a·x^{q^h+1}) + Tr_{q^m/q}(b·x^{q^{h−1}+1}),
///   (a, b) ∈ GF(q^h) × GF(q^m).
///
/// For each (a, b) the character sum S = Σ_x ζ_p^{Tr(Q(x))} is an exact
/// element of Z[ζ_p]; the form's rank r over GF(q) decides how codeword
/// weights depend on S.
pub struct QuadraticPencil<'a> {
    pub ctx: &'a FieldCtx,
    /// Exponent of the a-term.
    pub exp1: u64,
    /// Exponent of the b-term.
    pub exp2: u64,
    /// a ranges over GF(q^deg1).
    pub deg1: u32,
    /// b ranges over GF(q^deg2) = GF(q^m).
    pub deg2: u32,
    /// tr1[i] = packed label of the a-term trace at α^i (last slot: input 0).
    tr1: Vec<u8>,
    tr2: Vec<u8>,
    /// addq[x*q+y] = packed label of x + y in GF(q).
    addq: Vec<u8>,
    /// trp[label] = absolute trace GF(q) → GF(p), as a ζ_p exponent.
    trp: Vec<usize>,
}

impl<'a> QuadraticPencil<'a> {
    pub fn new(ctx: &'a FieldCtx) -> Result<QuadraticPencil<'a>> {
        if ctx.p == 2 {
            return Err(Error::EvenCharacteristic);
        }
        if ctx.q > 256 {
            return Err(Error::UnsupportedParams(
                "label tables need q <= 256".into(),
            ));
        }
        let (exp1, exp2, deg1) = if ctx.m % 2 == 1 {
            if ctx.m < 3 {
                return Err(Error::OutOfProvenRange(
                    "the quadratic pencil needs m >= 3 for odd m".into(),
                ));
            }
            (
                ctx.q.pow((ctx.m - 1) / 2) + 1,
                ctx.q.pow((ctx.m - 3) / 2) + 1,
                ctx.m,
            )
        } else {
            (
                ctx.q.pow(ctx.m / 2) + 1,
                ctx.q.pow(ctx.m / 2 - 1) + 1,
                ctx.m / 2,
            )
        };
        let ord = (ctx.qm - 1) as usize;
        // Trace tables indexed by discrete log; the final slot is the zero
        // input. For the a-term the inputs always lie in GF(q^deg1) (a does,
        // and x^exp1 has order dividing (q^m−1)/step), so only those slots
        // are ever read; the rest stay zero.
        let mut tr1 = vec![0u8; ord + 1];
        let step1 = (ctx.qm - 1) / (ctx.q.pow(deg1) - 1);
        let mut i = 0usize;
        while i < ord {
            tr1[i] = ctx
                .sub
                .packed_of(ctx.trace_subext_to_q(El::Pow(i as u64), deg1))
                as u8;
            i += step1 as usize;
        }
        let mut tr2 = vec![0u8; ord + 1];
        for (i, slot) in tr2.iter_mut().enumerate().take(ord) {
            *slot = ctx.sub.packed_of(ctx.trace_to_q(El::Pow(i as u64))) as u8;
        }
        let q = ctx.q as usize;
        let mut addq = vec![0u8; q * q];
        for x in 0..q {
            for y in 0..q {
                addq[x * q + y] = ctx.sub.add_packed(x as u64, y as u64) as u8;
            }
        }
        let trp = (0..q)
            .map(|l| ctx.sub.trace_to_prime(ctx.sub.el_from_packed(l as u64)) as usize)
            .collect();
        Ok(QuadraticPencil {
            ctx,
            exp1,
            exp2,
            deg1,
            deg2: ctx.m,
            tr1,
            tr2,
            addq,
            trp,
        })
    }

    pub fn a_elements(&self) -> Vec<El> {
        self.ctx.subext_elements(self.deg1)
    }

    pub fn b_elements(&self) -> Vec<El> {
        self.ctx.subext_elements(self.deg2)
    }

    /// Q_{a,b}(x) as a packed GF(q) label.
    pub fn q_label(&self, a: El, b: El, x: El) -> u64 {
        let ord = self.ctx.qm - 1;
        let lx = match x {
            El::Zero => return 0,
            El::Pow(e) => e,
        };
        let t1 = match a {
            El::Zero => 0u8,
            El::Pow(la) => self.tr1[((la + mulrem(lx, self.exp1, ord)) % ord) as usize],
        };
        let t2 = match b {
            El::Zero => 0u8,
            El::Pow(lb) => self.tr2[((lb + mulrem(lx, self.exp2, ord)) % ord) as usize],
        };
        self.addq[t1 as usize * self.ctx.q as usize + t2 as usize] as u64
    }

    /// The exact character sum Σ_{x ∈ GF(q^m)} ζ_p^{Tr(Q_{a,b}(x))}.
    pub fn char_sum(&self, a: El, b: El) -> CycInt {
        let ctx = self.ctx;
        let ord = (ctx.qm - 1) as usize;
        let q = ctx.q as usize;
        let mut hist = vec![0i128; ctx.p as usize];
        hist[0] += 1; // x = 0 contributes Q(0) = 0.
        let e1 = (self.exp1 % (ctx.qm - 1)) as usize;
        let e2 = (self.exp2 % (ctx.qm - 1)) as usize;
        match (a, b) {
            (El::Zero, El::Zero) => hist[0] += ord as i128,
            (El::Pow(la), El::Zero) => {
                let mut r1 = la as usize;
                for _ in 0..ord {
                    hist[self.trp[self.tr1[r1] as usize]] += 1;
                    r1 += e1;
                    if r1 >= ord {
                        r1 -= ord;
                    }
                }
            }
            (El::Zero, El::Pow(lb)) => {
                let mut r2 = lb as usize;
                for _ in 0..ord {
                    hist[self.trp[self.tr2[r2] as usize]] += 1;
                    r2 += e2;
                    if r2 >= ord {
                        r2 -= ord;
                    }
                }
            }
            (El::Pow(la), El::Pow(lb)) => {
                let mut r1 = la as usize;
                let mut r2 = lb as usize;
                for _ in 0..ord {
                    let lbl = self.addq[self.tr1[r1] as usize * q + self.tr2[r2] as usize];
                    hist[self.trp[lbl as usize]] += 1;
                    r1 += e1;
                    if r1 >= ord {
                        r1 -= ord;
                    }
                    r2 += e2;
                    if r2 >= ord {
                        r2 -= ord;
                    }
                }
            }
        }
        CycInt::from_histogram(ctx.p, &hist)
    }

    /// Weight of the codeword (Q_{a,b}(α^ℓ) + c)_{ℓ=0}^{n−1} at half length
    /// n = (q^m − 1)/2, where c is a packed GF(q) label.
    pub fn weight_with_constant(&self, a: El, b: El, c: u64) -> u64 {
        let ctx = self.ctx;
        let n = ((ctx.qm - 1) / 2) as usize;
        let ord = (ctx.qm - 1) as usize;
        let q = ctx.q as usize;
        let e1 = self.exp1 as usize % ord;
        let e2 = self.exp2 as usize % ord;
        let (mut r1, la_zero) = match a {
            El::Zero => (0usize, true),
            El::Pow(la) => (la as usize, false),
        };
        let (mut r2, lb_zero) = match b {
            El::Zero => (0usize, true),
            El::Pow(lb) => (lb as usize, false),
        };
        let mut w = 0u64;
        for _ in 0..n {
            let t1 = if la_zero { 0 } else { self.tr1[r1] };
            let t2 = if lb_zero { 0 } else { self.tr2[r2] };
            let v = self.addq[self.addq[t1 as usize * q + t2 as usize] as usize * q + c as usize];
            if v != 0 {
                w += 1;
            }
            if !la_zero {
                r1 += e1;
                if r1 >= ord {
                    r1 -= ord;
                }
            }
            if !lb_zero {
                r2 += e2;
                if r2 >= ord {
                    r2 -= ord;
                }
            }
        }
        w
    }

    /// Rank of Q_{a,b} over GF(q) via the Gram matrix of its polar form
    /// B(x, y) = Q(x+y) − Q(x) − Q(y) on the basis {α^i : i < m}.
    pub fn rank_gram(&self, a: El, b: El) -> u32 {
        let ctx = self.ctx;
        let m = ctx.m as usize;
        let basis: Vec<El> = (0..m).map(|i| El::Pow(i as u64)).collect();
        let qb: Vec<El> = basis
            .iter()
            .map(|&x| ctx.sub.el_from_packed(self.q_label(a, b, x)))
            .collect();
        let mut mat: Vec<Vec<El>> = Vec::with_capacity(m);
        for i in 0..m {
            let mut row = Vec::with_capacity(m);
            for j in 0..m {
                let sum = ctx.ext.add(basis[i], basis[j]);
                let qij = ctx.sub.el_from_packed(self.q_label(a, b, sum));
                row.push(ctx.sub.sub(ctx.sub.sub(qij, qb[i]), qb[j]));
            }
            mat.push(row);
        }
        crate::field::rank_over_field(&ctx.sub, &mut mat)
    }

    /// Rank via the size of the radical {x : B(x, y) = 0 for all y}, counted
    /// by brute force — an oracle for [`Self::rank_gram`], independent of any
    /// matrix elimination.
    pub fn rank_radical_bruteforce(&self, a: El, b: El) -> u32 {
        let ctx = self.ctx;
        let m = ctx.m as usize;
        let basis: Vec<El> = (0..m).map(|i| El::Pow(i as u64)).collect();
        let qb: Vec<El> = basis
            .iter()
            .map(|&x| ctx.sub.el_from_packed(self.q_label(a, b, x)))
            .collect();
        let mut kernel = 0u64;
        for x in ctx.ext.elements() {
            let qx = ctx.sub.el_from_packed(self.q_label(a, b, x));
            let in_radical = (0..m).all(|j| {
                let qxj = ctx
                    .sub
                    .el_from_packed(self.q_label(a, b, ctx.ext.add(x, basis[j])));
                ctx.sub.sub(ctx.sub.sub(qxj, qx), qb[j]).is_zero()
            });
            if in_radical {
                kernel += 1;
            }
        }
        // kernel = q^(m - r)
        let mut d = 0u32;
        let mut k = kernel;
        while k > 1 {
            assert_eq!(k % ctx.q, 0, "radical size must be a power of q");
            k /= ctx.q;
            d += 1;
        }
        ctx.m - d
    }
}

/// One row of a character-sum value distribution: the form's rank, the exact
/// sum in Z[ζ_p], and how many (a, b) pairs attain it.
#[derive(Clone, Debug)]
pub struct CharSumRow {
    pub rank: u32,
    pub value: CycInt,
    pub mult: u64,
}

fn sort_rows(rows: &mut Vec<CharSumRow>) {
    rows.sort_by(|x, y| {
        y.rank
            .cmp(&x.rank)
            .then_with(|| x.value.coeffs().cmp(y.value.coeffs()))
    });
}

/// True when the two row lists agree as multisets of (rank, value, mult).
pub fn char_sum_rows_match(a: &[CharSumRow], b: &[CharSumRow]) -> bool {
    if a.len() != b.len() {
        return false;
    }
    let mut used = vec![false; b.len()];
    for row in a {
        match b.iter().enumerate().find(|(i, r)| {
            !used[*i] && r.rank == row.rank && r.value == row.value && r.mult == row.mult
        }) {
            Some((i, _)) => used[i] = true,
            None => return false,
        }
    }
    true
}

/// The full (rank, value) distribution of the pencil's character sums, by
/// exhaustive evaluation over every (a, b).
pub fn char_sum_rows_numeric(ctx: &FieldCtx) -> Result<Vec<CharSumRow>> {
    let pencil = QuadraticPencil::new(ctx)?;
    let mut rows: Vec<CharSumRow> = Vec::new();
    for &a in &pencil.a_elements() {
        for &b in &pencil.b_elements() {
            let r = pencil.rank_gram(a, b);
            let v = pencil.char_sum(a, b);
            match rows.iter_mut().find(|row| row.rank == r && row.value == v) {
                Some(row) => row.mult += 1,
                None => rows.push(CharSumRow {
                    rank: r,
                    value: v,
                    mult: 1,
                }),
            }
        }
    }
    sort_rows(&mut rows);
    Ok(rows)
}

/// The predicted (rank, value) distribution of the pencil's character sums.
///
/// For odd m the values at even-corank ranks are rational and the others are
/// integer multiples of √q (or i√q when q ≡ 3 mod 4); for even m the roles
/// swap. Multiplicities are exact polynomials in q.
pub fn char_sum_rows_closed(ctx: &FieldCtx) -> Result<Vec<CharSumRow>> {
    if ctx.p == 2 {
        return Err(Error::EvenCharacteristic);
    }
    let q = ctx.q as u128;
    let m = ctx.m;
    let p = ctx.p;
    let qm = (ctx.qm) as u128;
    let surd = surd_q(ctx.p, ctx.s); // √q or i√q in Z[ζ_p]
    let rat = |v: i128| CycInt::from_int(p, v);
    let mut rows = Vec::new();
    if m % 2 == 1 {
        if m < 3 {
            return Err(Error::OutOfProvenRange(
                "closed character-sum rows need m >= 3 for odd m".into(),
            ));
        }
        let qi = |e: u32| (ctx.q as i128).pow(e);
        let qu = |e: u32| q.pow(e);
        // rank m: ±q^{(m-1)/2}·√q, equal multiplicities.
        let mult_m =
            ((qm - 1) * (qu(m + 2) - qu(m + 1) - qu(m) + qu(2)) / (2 * (q * q - 1))) as u64;
        let val_m = surd.scale(qi((m - 1) / 2));
        rows.push(CharSumRow {
            rank: m,
            value: val_m.clone(),
            mult: mult_m,
        });
        rows.push(CharSumRow {
            rank: m,
            value: val_m.neg(),
            mult: mult_m,
        });
        // rank m−1: ±q^{(m+1)/2}, skewed multiplicities.
        rows.push(CharSumRow {
            rank: m - 1,
            value: rat(qi((m + 1) / 2)),
            mult: ((qm - 1) * (qu(m - 1) + qu((m - 1) / 2)) / 2) as u64,
        });
        rows.push(CharSumRow {
            rank: m - 1,
            value: rat(-qi((m + 1) / 2)),
            mult: ((qm - 1) * (qu(m - 1) - qu((m - 1) / 2)) / 2) as u64,
        });
        // rank m−2: ±q^{(m+1)/2}·√q, equal multiplicities.
        let mult_m2 = ((qm - 1) * (qu(m - 1) - 1) / (2 * (q * q - 1))) as u64;
        let val_m2 = surd.scale(qi((m + 1) / 2));
        rows.push(CharSumRow {
            rank: m - 2,
            value: val_m2.clone(),
            mult: mult_m2,
        });
        rows.push(CharSumRow {
            rank: m - 2,
            value: val_m2.neg(),
            mult: mult_m2,
        });
        rows.push(CharSumRow {
            rank: 0,
            value: rat(qm as i128),
            mult: 1,
        });
    } else {
        let h = m / 2;
        let qi = |e: u32| (ctx.q as i128).pow(e);
        let qu = |e: u32| q.pow(e);
        // rank m: ±q^{m/2}, different multiplicities.
        rows.push(CharSumRow {
            rank: m,
            value: rat(qi(h)),
            mult: ((qm - 1) * (qu(h + 1) + q) / (2 * (q + 1))) as u64,
        });
        rows.push(CharSumRow {
            rank: m,
            value: rat(-qi(h)),
            mult: ((qu(h) - 1) * (qu(m + 1) - 2 * qu(m) + q) / (2 * (q - 1))) as u64,
        });
        // rank m−1: ±q^{m/2}·√q, equal multiplicities.
        let mult_m1 = ((qm - 1) * qu(h - 1) / 2) as u64;
        let val_m1 = surd.scale(qi(h));
        rows.push(CharSumRow {
            rank: m - 1,
            value: val_m1.clone(),
            mult: mult_m1,
        });
        rows.push(CharSumRow {
            rank: m - 1,
            value: val_m1.neg(),
            mult: mult_m1,
        });
        // rank m−2: −q^{(m+2)/2} only.
        rows.push(CharSumRow {
            rank: m - 2,
            value: rat(-qi(h + 1)),
            mult: ((qm - 1) * (qu(h - 1) - 1) / (q * q - 1)) as u64,
        });
        rows.push(CharSumRow {
            rank: 0,
            value: rat(qm as i128),
            mult: 1,
        });
    }
    rows.retain(|r| r.mult > 0);
    sort_rows(&mut rows);
    Ok(rows)
}

/// Power-sum identities of the pencil's character sums (odd m): the first
/// three power sums of S(a,b) over all pairs, and the second power sum of
/// the scalar-twisted aggregate Σ_{y ∈ GF(q)^*} S(ya, yb).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharSumMoments {
    pub sum1: CycInt,
    pub sum2: CycInt,
    pub sum3: CycInt,
    pub twisted_square: CycInt,
}

/// Exact moments by exhaustive evaluation (odd m).
pub fn char_sum_moments_numeric(ctx: &FieldCtx) -> Result<CharSumMoments> {
    if ctx.m % 2 == 0 {
        return Err(Error::OddM);
    }
    let pencil = QuadraticPencil::new(ctx)?;
    let ord = ctx.qm - 1;
    let sz = ctx.qm as usize; // elements of GF(q^m): index 0 = zero, i+1 = α^i
    let el_of = |i: usize| -> El {
        if i == 0 {
            El::Zero
        } else {
            El::Pow((i - 1) as u64)
        }
    };
    // Intern distinct values; store a class id per pair.
    let mut classes: Vec<CycInt> = Vec::new();
    let mut pair_class = vec![0u8; sz * sz];
    for ia in 0..sz {
        for ib in 0..sz {
            let v = pencil.char_sum(el_of(ia), el_of(ib));
            let cid = match classes.iter().position(|c| *c == v) {
                Some(i) => i,
                None => {
                    classes.push(v);
                    classes.len() - 1
                }
            };
            assert!(cid < 256, "unexpectedly many distinct character sums");
            pair_class[ia * sz + ib] = cid as u8;
        }
    }
    let mut mults = vec![0i128; classes.len()];
    for &c in &pair_class {
        mults[c as usize] += 1;
    }
    let p = ctx.p;
    let mut sum1 = CycInt::zero(p);
    let mut sum2 = CycInt::zero(p);
    let mut sum3 = CycInt::zero(p);
    for (c, &mult) in classes.iter().zip(&mults) {
        sum1 = sum1.add(&c.scale(mult));
        let c2 = c.mul(c);
        sum2 = sum2.add(&c2.scale(mult));
        sum3 = sum3.add(&c2.mul(c).scale(mult));
    }
    // Twisted aggregate: S(a,b) summed over the scalar orbit y ∈ GF(q)^*.
    let stepq = ord / (ctx.q - 1);
    let twist = |i: usize, cy: u64| -> usize {
        if i == 0 {
            0
        } else {
            (((i as u64 - 1) + cy * stepq) % ord) as usize + 1
        }
    };
    let mut twisted_square = CycInt::zero(p);
    for ia in 0..sz {
        for ib in 0..sz {
            let mut s = CycInt::zero(p);
            for cy in 0..ctx.q - 1 {
                let cls = pair_class[twist(ia, cy) * sz + twist(ib, cy)];
                s = s.add(&classes[cls as usize]);
            }
            twisted_square = twisted_square.add(&s.mul(&s));
        }
    }
    Ok(CharSumMoments {
        sum1,
        sum2,
        sum3,
        twisted_square,
    })
}

/// The predicted moments (odd m): Σ S = q^{2m};
/// Σ S² = q^{2m} when q ≡ 3 (mod 4) and (2q^m − 1)·q^{2m} when q ≡ 1 (mod 4);
/// Σ S³ = (q^m + q^{m−1} − 1)·q^{2m+1}; twisted square sum = (q−1)²·q^{3m}.
pub fn char_sum_moments_expected(ctx: &FieldCtx) -> Result<CharSumMoments> {
    if ctx.m % 2 == 0 {
        return Err(Error::OddM);
    }
    let p = ctx.p;
    let q = ctx.q as i128;
    let m = ctx.m;
    let qp = |e: u32| q.pow(e);
    let sum2 = if ctx.q % 4 == 3 {
        qp(2 * m)
    } else {
        (2 * qp(m) - 1) * qp(2 * m)
    };
    Ok(CharSumMoments {
        sum1: CycInt::from_int(p, qp(2 * m)),
        sum2: CycInt::from_int(p, sum2),
        sum3: CycInt::from_int(p, (qp(m) + qp(m - 1) - 1) * qp(2 * m + 1)),
        twisted_square: CycInt::from_int(p, (q - 1) * (q - 1) * qp(3 * m)),
    })
}

/// Skew conditions on the numeric rows (odd m): no corank-3 forms occur
/// (the zero form, whose rank 0 equals m − 3 when m = 3, does not count),
/// and the rational rank-(m−1) values ±q^{(m+1)/2} differ in multiplicity by
/// exactly (q^m − 1)·q^{(m−1)/2}.
pub fn char_sum_side_conditions(ctx: &FieldCtx, rows: &[CharSumRow]) -> bool {
    let m = ctx.m;
    let zero_form_value = CycInt::from_int(ctx.p, ctx.qm as i128);
    if rows
        .iter()
        .any(|r| r.rank == m - 3 && r.value != zero_form_value)
    {
        return false;
    }
    let val = (ctx.q as i128).pow((m + 1) / 2);
    let plus: i128 = rows
        .iter()
        .filter(|r| r.rank == m - 1 && r.value == CycInt::from_int(ctx.p, val))
        .map(|r| r.mult as i128)
        .sum();
    let minus: i128 = rows
        .iter()
        .filter(|r| r.rank == m - 1 && r.value == CycInt::from_int(ctx.p, -val))
        .map(|r| r.mult as i128)
        .sum();
    let expect = ((ctx.qm - 1) as i128) * (ctx.q as i128).pow((m - 1) / 2);
    plus - minus == expect
}

// ---------------------------------------------------------------------------
// Pointwise weight-formula checks.
// ---------------------------------------------------------------------------

/// Checks, for every (a, b) ≠ (0, 0), that the weight of the two-coset
/// codeword (Q_{a,b}(α^ℓ))_{ℓ<n} at n = (q^m−1)/2 matches the character-sum
/// prediction: (q−1)q^{m−1}/2 for odd rank, (q−1)(q^m − S)/(2q) for even
/// rank (where S is rational). Returns the number of pairs checked.
pub fn weight_formula_check(ctx: &FieldCtx) -> Result<u64> {
    let pencil = QuadraticPencil::new(ctx)?;
    let q = ctx.q;
    let mut checked = 0u64;
    for &a in &pencil.a_elements() {
        for &b in &pencil.b_elements() {
            if a.is_zero() && b.is_zero() {
                continue;
            }
            let r = pencil.rank_gram(a, b);
            let w = pencil.weight_with_constant(a, b, 0);
            if r % 2 == 1 {
                assert_eq!(
                    w,
                    (q - 1) * q.pow(ctx.m - 1) / 2,
                    "odd-rank weight must be constant"
                );
            } else {
                let s = pencil
                    .char_sum(a, b)
                    .is_rational()
                    .expect("even-rank character sum must be rational");
                let num = (q as i128 - 1) * (ctx.qm as i128 - s);
                let den = 2 * q as i128;
                assert_eq!(num % den, 0, "weight formula must divide exactly");
                assert_eq!(w as i128, num / den, "even-rank weight prediction");
            }
            checked += 1;
        }
    }
    Ok(checked)
}

/// Checks the constant-extended weight formula for every (a, b) and every
/// nonzero constant c: for even rank w = [q(q^m − q^{m−1} − 1) + S]/(2q);
/// for odd rank w = [q(q^m − q^{m−1} − 1) − η(c)·S·G]/(2q) where G is the
/// closed Gauss sum of GF(q) and η its quadratic character. Returns the
/// number of (a, b, c) triples checked.
pub fn constant_term_weight_check(ctx: &FieldCtx) -> Result<u64> {
    let pencil = QuadraticPencil::new(ctx)?;
    let gauss = ClosedGauss::new(ctx.p, ctx.s)?.to_cycint();
    let q = ctx.q;
    let base = q as i128 * (ctx.qm as i128 - ctx.qm as i128 / q as i128 - 1);
    let den = 2 * q as i128;
    let mut checked = 0u64;
    for &a in &pencil.a_elements() {
        for &b in &pencil.b_elements() {
            let r = pencil.rank_gram(a, b);
            let s = pencil.char_sum(a, b);
            for c in 1..q {
                let w = pencil.weight_with_constant(a, b, c) as i128;
                let num = if r % 2 == 0 {
                    let t = s.is_rational().expect("even-rank sum must be rational");
                    base + t
                } else {
                    let eta = quadratic_character(&ctx.sub, ctx.sub.el_from_packed(c))?;
                    let prod = s
                        .mul(&gauss)
                        .scale(eta as i128)
                        .is_rational()
                        .expect("odd-rank sum times the Gauss sum must be rational");
                    base - prod
                };
                assert_eq!(num % den, 0, "weight formula must divide exactly");
                assert_eq!(w, num / den, "constant-extended weight prediction");
                checked += 1;
            }
        }
    }
    Ok(checked)
}

/// Checks the scalar-twist identity Σ_x ζ^{Tr(y·Q_{a,b}(x))} = η(y)^r·S(a,b)
/// on deterministic pseudo-random (a, b, y) triples. Returns the number of
/// triples checked.
pub fn character_twist_check(ctx: &FieldCtx, trials: u32) -> Result<u32> {
    let pencil = QuadraticPencil::new(ctx)?;
    let q = ctx.q;
    let mut state: u64 = 0x9E37_79B9_7F4A_7C15;
    let mut next = |bound: u64| {
        state = state
            .wrapping_mul(6364136223846793005)
            .wrapping_add(1442695040888963407);
        (state >> 33) % bound
    };
    let el_of = |i: u64| if i == 0 { El::Zero } else { El::Pow(i - 1) };
    for _ in 0..trials {
        let a = el_of(next(ctx.qm));
        let b = el_of(next(ctx.qm));
        let y_lbl = 1 + next(q - 1); // nonzero packed labels are 1..q
        let y = ctx.sub.el_from_packed(y_lbl);
        // Left side: histogram of Tr_p(y·Q(x)) over all x.
        let mut hist = vec![0i128; ctx.p as usize];
        for x in ctx.ext.elements() {
            let v = ctx.sub.el_from_packed(pencil.q_label(a, b, x));
            let e = ctx.sub.trace_to_prime(ctx.sub.mul(y, v));
            hist[e as usize] += 1;
        }
        let lhs = CycInt::from_histogram(ctx.p, &hist);
        // Right side: η(y)^rank · S(a,b).
        let r = pencil.rank_gram(a, b);
        let eta = quadratic_character(&ctx.sub, y)?;
        let sign = if r % 2 == 1 { eta as i128 } else { 1 };
        let rhs = pencil.char_sum(a, b).scale(sign);
        assert_eq!(lhs, rhs, "scalar twist identity");
    }
    Ok(trials)
}

// ---------------------------------------------------------------------------
// Concatenation / repetition structure.
// ---------------------------------------------------------------------------

/// Outcome of a repetition-structure check: the long code's words are
/// `copies` concatenated repetitions of a short code's words.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ConcatReport {
    pub copies: u64,
    pub short_len: u64,
    pub short_dim: u64,
    pub short_weight: u64,
    pub messages_checked: u64,
}

fn check_repetition_structure(
    ctx: &FieldCtx,
    fam: &TraceFamily,
    short_len: u64,
    short_weight: u64,
) -> Result<ConcatReport> {
    assert_eq!(
        fam.eval.comps.len(),
        1,
        "repetition checks need one component"
    );
    assert!(!fam.eval.with_constant);
    assert_eq!(
        fam.length % short_len,
        0,
        "short length must divide the length"
    );
    let copies = fam.length / short_len;
    let mut seen = HashSet::new();
    let mut messages_checked = 0u64;
    for a in fam.eval.component_elements(ctx, 0) {
        let word = fam.eval.codeword(ctx, &[a]);
        for (l, &v) in word.iter().enumerate() {
            assert_eq!(
                v,
                word[l % short_len as usize],
                "codeword must repeat with period {short_len}"
            );
        }
        let short: Vec<u8> = word[..short_len as usize].to_vec();
        let w = short.iter().filter(|&&v| v != 0).count() as u64;
        if !a.is_zero() {
            assert_eq!(w, short_weight, "short code must be one-weight");
        }
        assert!(seen.insert(short), "short words must be distinct");
        messages_checked += 1;
    }
    Ok(ConcatReport {
        copies,
        short_len,
        short_dim: fam.dim,
        short_weight,
        messages_checked,
    })
}

/// For even m, the one-weight code at length (q^m−1)/2 consists of
/// (q^h+1)/2 concatenated copies of a one-weight [q^h−1, h, q^h − q^{h−1}]
/// code (h = m/2).
pub fn concat_check_one_weight_half(ctx: &FieldCtx) -> Result<ConcatReport> {
    if ctx.m % 2 == 1 {
        return Err(Error::OddM);
    }
    let fam = build_family(ctx, FamilyKind::HatDelta1)?;
    let h = ctx.m / 2;
    let short_len = ctx.q.pow(h) - 1;
    let short_weight = ctx.q.pow(h) - ctx.q.pow(h - 1);
    let rep = check_repetition_structure(ctx, &fam, short_len, short_weight)?;
    assert_eq!(rep.copies, (ctx.q.pow(h) + 1) / 2);
    Ok(rep)
}

/// For the λ = q−1 one-weight family with (m−1) ≡ 1 (mod q−1) and q odd,
/// the words are (q^{m/2}+1)/2 concatenated copies of a one-weight
/// [2(q^{m/2}−1)/(q−1), m/2, 2q^{m/2−1}] code.
pub fn concat_check_qm1_half(ctx: &FieldCtx) -> Result<ConcatReport> {
    if ctx.q % 2 == 0 {
        return Err(Error::EvenQ);
    }
    let b = (ctx.m as u64 - 1) % (ctx.q - 1);
    if b != 1 {
        return Err(Error::UnsupportedResidue(b));
    }
    let fam = build_family(ctx, FamilyKind::Qm1OneWeight)?;
    let h = ctx.m / 2;
    let short_len = 2 * (ctx.q.pow(h) - 1) / (ctx.q - 1);
    let short_weight = 2 * ctx.q.pow(h - 1);
    let rep = check_repetition_structure(ctx, &fam, short_len, short_weight)?;
    assert_eq!(rep.copies, (ctx.q.pow(h) + 1) / 2);
    Ok(rep)
}

/// The two-coset code at length (q^m−1)/2 splits into t = (q−1)/2 blocks of
/// length N = (q^m−1)/(q−1): block j equals the projective-length code's
/// word scaled by γ^{2j}, γ = α^N a primitive element of GF(q). Checks the
/// identity for every message; returns how many messages were checked.
pub fn concat_check_projective_blocks(ctx: &FieldCtx) -> Result<u64> {
    let long_kind = if ctx.m % 2 == 1 {
        FamilyKind::V1
    } else {
        FamilyKind::V2
    };
    let long = build_family(ctx, long_kind)?;
    let proj = build_family(ctx, FamilyKind::V3)?;
    assert_eq!(long.eval.comps, proj.eval.comps);
    let n_big = long.length as usize;
    let n_small = proj.length as usize;
    let t = ((ctx.q - 1) / 2) as usize;
    assert_eq!(n_big, n_small * t);
    // γ = α^N generates GF(q)^*.
    let gamma = ctx
        .to_sub(El::Pow(proj.length % (ctx.qm - 1)))
        .expect("α^N must lie in GF(q)");
    let mut checked = 0u64;
    for a in proj.eval.component_elements(ctx, 0) {
        for b in proj.eval.component_elements(ctx, 1) {
            let big = long.eval.codeword(ctx, &[a, b]);
            let small = proj.eval.codeword(ctx, &[a, b]);
            for j in 0..t {
                let scale = ctx.sub.pow(gamma, 2 * j as u64);
                for l in 0..n_small {
                    let expect = ctx.sub.mul(scale, ctx.sub.el_from_packed(small[l] as u64));
                    assert_eq!(
                        big[j * n_small + l] as u64,
                        ctx.sub.packed_of(expect),
                        "block {j} must be the γ^{{2j}}-scaled projective word"
                    );
                }
            }
            checked += 1;
        }
    }
    Ok(checked)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bch::{build_bch, weights_genmatrix, BchDescriptor};
    use crate::DEFAULT_ENUM_CAP;

    fn ctx_for(q: u64, m: u32) -> FieldCtx {
        FieldCtx::for_q(q, m, crate::DEFAULT_MAX_FIELD).unwrap()
    }

    fn enumerated(ctx: &FieldCtx, kind: FamilyKind) -> WeightDistribution {
        let fam = build_family(ctx, kind).unwrap();
        let counts = fam.eval.enumerate(ctx, DEFAULT_ENUM_CAP).unwrap();
        WeightDistribution::from_counts(fam.length, fam.dim, &counts)
    }

    #[test]
    fn closed_forms_match_enumeration_odd_m() {
        let ctx = ctx_for(3, 3);
        for kind in [
            FamilyKind::HatDelta1,
            FamilyKind::CDelta1,
            FamilyKind::V1,
            FamilyKind::V3,
            FamilyKind::V4,
        ] {
            let closed = closed_form_distribution(3, 3, kind).unwrap();
            assert_eq!(closed, enumerated(&ctx, kind), "kind {:?}", kind);
        }
        let ctx = ctx_for(5, 3);
        for kind in [FamilyKind::CDelta1, FamilyKind::V3] {
            let closed = closed_form_distribution(5, 3, kind).unwrap();
            assert_eq!(closed, enumerated(&ctx, kind), "kind {:?}", kind);
        }
    }

    #[test]
    fn closed_forms_match_enumeration_even_m() {
        let ctx = ctx_for(3, 4);
        for kind in [
            FamilyKind::HatDelta1,
            FamilyKind::CDelta1,
            FamilyKind::V2,
            FamilyKind::V3,
            FamilyKind::V5,
        ] {
            let closed = closed_form_distribution(3, 4, kind).unwrap();
            assert_eq!(closed, enumerated(&ctx, kind), "kind {:?}", kind);
        }
        // m = 2 exercises the degenerate rows, and q = 9 a non-prime field.
        let ctx = ctx_for(5, 2);
        for kind in [FamilyKind::V2, FamilyKind::V3, FamilyKind::V5] {
            let closed = closed_form_distribution(5, 2, kind).unwrap();
            assert_eq!(closed, enumerated(&ctx, kind), "kind {:?}", kind);
        }
        let ctx = ctx_for(9, 2);
        for kind in [FamilyKind::CDelta1, FamilyKind::V2] {
            let closed = closed_form_distribution(9, 2, kind).unwrap();
            assert_eq!(closed, enumerated(&ctx, kind), "kind {:?}", kind);
        }
    }

    #[test]
    fn projective_mds_fixture() {
        let closed = closed_form_distribution(5, 2, FamilyKind::V3).unwrap();
        assert_eq!(closed.enumerator(), "1+60z^4+24z^5+40z^6");
        assert_eq!((closed.length, closed.dim), (6, 3));
        // MDS: d = n − k + 1.
        assert_eq!(closed.minimum_distance(), Some(4));
    }

    #[test]
    fn one_weight_families_at_projective_length() {
        // (m−1) ≡ 0 (mod q−1).
        let ctx = ctx_for(5, 5);
        let closed = closed_form_distribution(5, 5, FamilyKind::Qm1OneWeight).unwrap();
        assert!(closed.is_one_weight());
        assert_eq!(closed.minimum_distance(), Some(625));
        assert_eq!(closed, enumerated(&ctx, FamilyKind::Qm1OneWeight));
        // (m−1) ≡ 1 (mod q−1), q odd: half dimension.
        let ctx = ctx_for(5, 6);
        let closed = closed_form_distribution(5, 6, FamilyKind::Qm1OneWeight).unwrap();
        assert!(closed.is_one_weight());
        assert_eq!((closed.length, closed.dim), (3906, 3));
        assert_eq!(closed.minimum_distance(), Some(3150));
        assert_eq!(closed, enumerated(&ctx, FamilyKind::Qm1OneWeight));
    }

    #[test]
    fn families_agree_with_constructed_codes() {
        // The trace families must reproduce the actual cyclic codes they
        // stand for: same distribution via the generator-matrix engine.
        let ctx = ctx_for(3, 3);
        let lh = largest_leaders_half(3, 3).unwrap();
        for (kind, delta, hat) in [
            (FamilyKind::HatDelta1, lh.delta1.0, true),
            (FamilyKind::CDelta1, lh.delta1.0, false),
            (FamilyKind::V1, lh.delta2.0, true),
            (FamilyKind::V4, lh.delta2.0, false),
        ] {
            let code = build_bch(
                &ctx,
                &BchDescriptor {
                    q: 3,
                    m: 3,
                    lambda: 2,
                    delta,
                    b: 1,
                    hat,
                },
            )
            .unwrap();
            let counts = weights_genmatrix(&ctx, &code, DEFAULT_ENUM_CAP).unwrap();
            let from_code = WeightDistribution::from_counts(code.n, code.k, &counts);
            let closed = closed_form_distribution(3, 3, kind).unwrap();
            assert_eq!(closed, from_code, "kind {:?}", kind);
        }
    }

    #[test]
    fn char_sum_distribution_matches_closed_rows() {
        for (q, m) in [(3u64, 3u32), (3, 4), (5, 2), (9, 2)] {
            let ctx = ctx_for(q, m);
            let numeric = char_sum_rows_numeric(&ctx).unwrap();
            let closed = char_sum_rows_closed(&ctx).unwrap();
            assert!(
                char_sum_rows_match(&numeric, &closed),
                "(q, m) = ({q}, {m}): numeric {numeric:?} vs closed {closed:?}"
            );
            // Rank range sanity: corank 0, 1, 2 (and 3 for odd m ≥ 5), plus
            // the zero form.
            for row in &numeric {
                assert!(row.rank == 0 || row.rank + 3 >= m, "rank {}", row.rank);
            }
        }
    }

    #[test]
    fn char_sum_moments_and_side_conditions() {
        let ctx = ctx_for(3, 3);
        let numeric = char_sum_moments_numeric(&ctx).unwrap();
        let expected = char_sum_moments_expected(&ctx).unwrap();
        assert_eq!(numeric, expected);
        let rows = char_sum_rows_numeric(&ctx).unwrap();
        assert!(char_sum_side_conditions(&ctx, &rows));
    }

    #[test]
    fn rank_oracle_agreement() {
        for (q, m) in [(3u64, 3u32), (3, 4)] {
            let ctx = ctx_for(q, m);
            let pencil = QuadraticPencil::new(&ctx).unwrap();
            for &a in &pencil.a_elements() {
                for &b in &pencil.b_elements() {
                    assert_eq!(
                        pencil.rank_gram(a, b),
                        pencil.rank_radical_bruteforce(a, b),
                        "(q, m) = ({q}, {m}), a = {a:?}, b = {b:?}"
                    );
                }
            }
        }
    }

    #[test]
    fn pointwise_weight_formulas() {
        let ctx = ctx_for(3, 3);
        assert_eq!(weight_formula_check(&ctx).unwrap(), 27 * 27 - 1);
        assert_eq!(constant_term_weight_check(&ctx).unwrap(), 27 * 27 * 2);
        let ctx = ctx_for(3, 4);
        assert_eq!(weight_formula_check(&ctx).unwrap(), 9 * 81 - 1);
        let ctx = ctx_for(5, 2);
        assert_eq!(constant_term_weight_check(&ctx).unwrap(), 5 * 25 * 4);
    }

    #[test]
    fn scalar_twist_identity() {
        let ctx = ctx_for(3, 3);
        assert_eq!(character_twist_check(&ctx, 100).unwrap(), 100);
    }

    #[test]
    fn concatenation_structure() {
        let ctx = ctx_for(3, 4);
        let rep = concat_check_one_weight_half(&ctx).unwrap();
        assert_eq!(
            (rep.copies, rep.short_len, rep.short_dim, rep.short_weight),
            (5, 8, 2, 6)
        );
        let ctx = ctx_for(5, 3);
        assert_eq!(concat_check_projective_blocks(&ctx).unwrap(), 125 * 125);
        let ctx = ctx_for(9, 2);
        assert_eq!(concat_check_projective_blocks(&ctx).unwrap(), 9 * 81);
        let ctx = ctx_for(5, 6);
        let rep = concat_check_qm1_half(&ctx).unwrap();
        assert_eq!(
            (rep.copies, rep.short_len, rep.short_dim, rep.short_weight),
            (63, 62, 3, 50)
        );
    }

    #[test]
    fn family_gates() {
        let ctx = ctx_for(3, 4);
        assert!(matches!(
            build_family(&ctx, FamilyKind::V1),
            Err(Error::KindParityMismatch)
        ));
        let ctx = ctx_for(3, 3);
        assert!(matches!(
            build_family(&ctx, FamilyKind::V2),
            Err(Error::KindParityMismatch)
        ));
        assert!(matches!(
            build_family(&ctx, FamilyKind::Qm1OneWeight),
            Err(Error::QTooSmall)
        ));
        let ctx = ctx_for(5, 4);
        assert!(matches!(
            build_family(&ctx, FamilyKind::Qm1OneWeight),
            Err(Error::OutOfProvenRange(_))
        ));
        let ctx = ctx_for(5, 7);
        assert!(matches!(
            build_family(&ctx, FamilyKind::Qm1OneWeight),
            Err(Error::UnsupportedResidue(2))
        ));
        assert!(matches!(
            closed_form_distribution(4, 6, FamilyKind::Qm1OneWeight),
            Err(Error::UnsupportedResidue(2))
        ));
        assert!(matches!(
            closed_form_distribution(4, 4, FamilyKind::V2),
            Err(Error::EvenQ)
        ));
    }
}
