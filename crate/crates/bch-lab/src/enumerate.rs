//! Exhaustive weight enumeration.
//!
//! Two independent engines:
//!
//! * [`TraceEval`] evaluates codeword families given as sums of relative
//!   traces, c_ℓ = Σ_j Tr_{GF(q^{m_j})/GF(q)}(a_j α^{e_j ℓ}) (+ c), walking
//!   the whole message space with per-component contribution tables and
//!   shared prefix sums;
//! * [`enumerate_weights_genmatrix`] spans all multiples of a generator
//!   polynomial with an odometer over message digits, touching one row per
//!   digit change.
//!
//! Both count codewords by Hamming weight; agreement between them (and with
//! closed forms) is what the test suite is built on. Symbols are packed
//! GF(q) labels in u8, so q ≤ 256 here — far beyond the enumerable range
//! anyway.

use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::field::{mulrem, El, FieldCtx, TableField};
use crate::{Error, Result};

/// One trace component: a_j ranges over GF(q^{m_j}), contributing
/// Tr_{GF(q^{m_j})/GF(q)}(a_j · α^{e_j · ℓ}) to coordinate ℓ.
/// α^{e_j} must lie in GF(q^{m_j}) so the trace argument stays there.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TraceComp {
    pub mj: u32,
    pub exponent: u64,
}

/// A codeword family in trace form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceEval {
    pub length: u64,
    pub comps: Vec<TraceComp>,
    /// When set, an extra GF(q) message symbol is added to every coordinate.
    pub with_constant: bool,
}

impl TraceEval {
    /// Number of messages the full walk visits: Π q^{m_j} (· q for the
    /// constant).
    pub fn message_count(&self, ctx: &FieldCtx) -> u128 {
        let mut total: u128 = 1;
        for c in &self.comps {
            total = total.saturating_mul((ctx.q as u128).pow(c.mj));
        }
        if self.with_constant {
            total = total.saturating_mul(ctx.q as u128);
        }
        total
    }

    /// Full weight distribution (weight → number of messages), walking every
    /// message. Distinct messages giving equal codewords are counted
    /// separately — for the families in this crate the map is injective, and
    /// the total always equals `message_count`.
    pub fn enumerate(&self, ctx: &FieldCtx, cap: u64) -> Result<BTreeMap<u64, u64>> {
        let total = self.message_count(ctx);
        if total > cap as u128 {
            return Err(Error::SizeExceeded(total, cap as u128));
        }
        if ctx.q > 256 {
            return Err(Error::UnsupportedParams(
                "enumeration stores GF(q) labels in bytes and needs q <= 256".into(),
            ));
        }
        if self.comps.is_empty() {
            // Degenerate family: only the constant symbol (the repetition
            // words c·(1,…,1)), or just the zero word without it.
            let mut counts = BTreeMap::new();
            counts.insert(0u64, 1);
            if self.with_constant {
                counts.insert(self.length, ctx.q - 1);
            }
            return Ok(counts);
        }
        let n = self.length as usize;
        let q = ctx.q as usize;
        let tabs = LabelTables::new(&ctx.sub);

        // Contribution tables: contrib[j][v * n + ℓ] = label of the j-th
        // component's summand for message value index v at coordinate ℓ.
        let contribs: Vec<Vec<u8>> = self
            .comps
            .iter()
            .map(|comp| self.contribution_table(ctx, comp))
            .collect();
        let sizes: Vec<usize> = self
            .comps
            .iter()
            .map(|c| (ctx.q.pow(c.mj)) as usize)
            .collect();

        // Parallelize over the first component's message values.
        let counts = (0..sizes[0])
            .into_par_iter()
            .map(|v0| {
                let mut local: BTreeMap<u64, u64> = BTreeMap::new();
                let mut bufs: Vec<Vec<u8>> = (1..self.comps.len()).map(|_| vec![0u8; n]).collect();
                let first = &contribs[0][v0 * n..(v0 + 1) * n];
                self.walk_rest(
                    ctx, &tabs, q, n, first, &contribs, &sizes, 1, &mut bufs, &mut local,
                );
                local
            })
            .reduce(BTreeMap::new, merge_counts);
        Ok(counts)
    }

    #[allow(clippy::too_many_arguments)]
    fn walk_rest(
        &self,
        ctx: &FieldCtx,
        tabs: &LabelTables,
        q: usize,
        n: usize,
        partial: &[u8],
        contribs: &[Vec<u8>],
        sizes: &[usize],
        depth: usize,
        bufs: &mut [Vec<u8>],
        counts: &mut BTreeMap<u64, u64>,
    ) {
        if depth == self.comps.len() {
            self.tally_leaf(ctx, tabs, q, partial, counts);
            return;
        }
        let last_level = depth == self.comps.len() - 1 && !self.with_constant;
        for v in 0..sizes[depth] {
            let contrib = &contribs[depth][v * n..(v + 1) * n];
            if last_level {
                // Fused add-and-count for the innermost level.
                let mut zeros = 0u64;
                for l in 0..n {
                    let s = tabs.add[(partial[l] as usize) * q + contrib[l] as usize];
                    zeros += (s == 0) as u64;
                }
                *counts.entry(self.length - zeros).or_insert(0) += 1;
            } else {
                let (head, tail) = bufs.split_at_mut(1);
                let buf = &mut head[0];
                for l in 0..n {
                    buf[l] = tabs.add[(partial[l] as usize) * q + contrib[l] as usize];
                }
                self.walk_rest(
                    ctx,
                    tabs,
                    q,
                    n,
                    buf,
                    contribs,
                    sizes,
                    depth + 1,
                    tail,
                    counts,
                );
            }
        }
    }

    fn tally_leaf(
        &self,
        _ctx: &FieldCtx,
        tabs: &LabelTables,
        q: usize,
        partial: &[u8],
        counts: &mut BTreeMap<u64, u64>,
    ) {
        if self.with_constant {
            // Adding constant c zeroes exactly the coordinates equal to −c.
            let mut hist = vec![0u64; q];
            for &v in partial {
                hist[v as usize] += 1;
            }
            for c in 0..q {
                let zeros = hist[tabs.neg[c] as usize];
                *counts.entry(self.length - zeros).or_insert(0) += 1;
            }
        } else {
            let zeros = partial.iter().filter(|&&v| v == 0).count() as u64;
            *counts.entry(self.length - zeros).or_insert(0) += 1;
        }
    }

    /// Builds the contribution table of one component.
    fn contribution_table(&self, ctx: &FieldCtx, comp: &TraceComp) -> Vec<u8> {
        let n = self.length as usize;
        let group = ctx.qm - 1;
        let sub_size = ctx.q.pow(comp.mj);
        let step = group / (sub_size - 1);
        assert_eq!(
            comp.exponent % step,
            0,
            "α^e must lie in GF(q^mj) for the trace to be defined"
        );
        // Trace labels for the elements of GF(q^{m_j}), indexed by exponent/step.
        let tr: Vec<u8> = (0..sub_size - 1)
            .map(|c| {
                let z = El::Pow(c * step);
                ctx.sub.packed_of(ctx.trace_subext_to_q(z, comp.mj)) as u8
            })
            .collect();
        let mut out = vec![0u8; sub_size as usize * n];
        // v = 0 contributes zero everywhere (row 0 stays zero);
        // v = α^{c·step} contributes tr[(c·step + e·ℓ)/step mod (sub_size−1)].
        let e_red = comp.exponent % group / step; // exponent in subfield units
        for c in 0..sub_size - 1 {
            let row = &mut out[(c + 1) as usize * n..(c + 2) as usize * n];
            let mut idx = c;
            for slot in row.iter_mut() {
                *slot = tr[idx as usize];
                idx += e_red;
                if idx >= sub_size - 1 {
                    idx -= sub_size - 1;
                }
            }
        }
        out
    }

    /// The message-value list (element of GF(q^{m_j}) per value index) of a
    /// component, matching the indexing of the walk: index 0 is zero, index
    /// c+1 is α^{c·step}.
    pub fn component_elements(&self, ctx: &FieldCtx, j: usize) -> Vec<El> {
        ctx.subext_elements(self.comps[j].mj)
    }

    /// Evaluates one codeword coordinate-by-coordinate (slow path used by
    /// structural checks). `message` holds one element per component, then
    /// optionally the constant as a sub-field element.
    pub fn codeword(&self, ctx: &FieldCtx, message: &[El]) -> Vec<u8> {
        let want = self.comps.len() + usize::from(self.with_constant);
        assert_eq!(message.len(), want, "message arity mismatch");
        let n = self.length as usize;
        let mut out = vec![0u8; n];
        for (j, comp) in self.comps.iter().enumerate() {
            let a = message[j];
            if a.is_zero() {
                continue;
            }
            let mut w = El::ONE;
            let stepper = El::Pow(comp.exponent % (ctx.qm - 1));
            for slot in out.iter_mut().take(n) {
                let z = ctx.ext.mul(a, w);
                let t = ctx.sub.packed_of(ctx.trace_subext_to_q(z, comp.mj));
                *slot = ctx.sub.add_packed(*slot as u64, t) as u8;
                w = ctx.ext.mul(w, stepper);
            }
        }
        if self.with_constant {
            let c = ctx.sub.packed_of(*message.last().unwrap());
            for slot in out.iter_mut() {
                *slot = ctx.sub.add_packed(*slot as u64, c) as u8;
            }
        }
        out
    }
}

/// GF(q) label arithmetic tables (labels are packed representations).
pub struct LabelTables {
    pub q: usize,
    pub add: Vec<u8>,
    pub mul: Vec<u8>,
    pub neg: Vec<u8>,
}

impl LabelTables {
    pub fn new(sub: &TableField) -> LabelTables {
        let q = sub.order as usize;
        assert!(q <= 256, "labels are bytes");
        let mut add = vec![0u8; q * q];
        let mut mul = vec![0u8; q * q];
        let mut neg = vec![0u8; q];
        for a in 0..q as u64 {
            neg[a as usize] = sub.packed_of(sub.neg(sub.el_from_packed(a))) as u8;
            for b in 0..q as u64 {
                add[a as usize * q + b as usize] = sub.add_packed(a, b) as u8;
                let prod = sub.mul(sub.el_from_packed(a), sub.el_from_packed(b));
                mul[a as usize * q + b as usize] = sub.packed_of(prod) as u8;
            }
        }
        LabelTables { q, add, mul, neg }
    }
}

fn merge_counts(mut a: BTreeMap<u64, u64>, b: BTreeMap<u64, u64>) -> BTreeMap<u64, u64> {
    for (w, c) in b {
        *a.entry(w).or_insert(0) += c;
    }
    a
}

/// Weight distribution of the code spanned by the rows x^i·g(x), i < k,
/// inside GF(q)^n — an implementation-independent companion to the trace
/// walk. `gen_labels` holds the generator's coefficients as packed labels,
/// lowest degree first.
pub fn enumerate_weights_genmatrix(
    sub: &TableField,
    gen_labels: &[u64],
    n: u64,
    cap: u64,
) -> Result<BTreeMap<u64, u64>> {
    let q = sub.order;
    assert!(
        !gen_labels.is_empty() && *gen_labels.last().unwrap() != 0,
        "generator must be nonzero with exact degree"
    );
    let deg = gen_labels.len() - 1;
    let k = n as usize - deg;
    let total = (q as u128).saturating_pow(k as u32);
    if total > cap as u128 {
        return Err(Error::SizeExceeded(total, cap as u128));
    }
    let tabs = LabelTables::new(sub);
    let qs = q as usize;
    let n = n as usize;
    let row: Vec<u8> = gen_labels.iter().map(|&v| v as u8).collect();

    let mut counts: BTreeMap<u64, u64> = BTreeMap::new();
    let mut digits = vec![0u8; k];
    let mut cw = vec![0u8; n];
    counts.insert(0, 1); // the zero message
    let mut remaining = total - 1;
    while remaining > 0 {
        // Odometer increment; every digit change updates the codeword by
        // (new − old) · row shifted to that digit's position.
        let mut pos = 0usize;
        loop {
            let old = digits[pos];
            let new = if old as usize + 1 == qs { 0 } else { old + 1 };
            digits[pos] = new;
            let delta = tabs.add[new as usize * qs + tabs.neg[old as usize] as usize];
            debug_assert_ne!(delta, 0);
            for (j, &g) in row.iter().enumerate() {
                if g == 0 {
                    continue;
                }
                let scaled = tabs.mul[delta as usize * qs + g as usize];
                let slot = &mut cw[pos + j];
                *slot = tabs.add[*slot as usize * qs + scaled as usize];
            }
            if new != 0 {
                break;
            }
            pos += 1;
        }
        let zeros = cw.iter().filter(|&&v| v == 0).count() as u64;
        *counts.entry(n as u64 - zeros).or_insert(0) += 1;
        remaining -= 1;
    }
    Ok(counts)
}

/// Multiplies a trace exponent and reduces it the way coordinate walks do.
pub fn reduced_exponent(ctx: &FieldCtx, e: u64, l: u64) -> u64 {
    mulrem(e % (ctx.qm - 1), l, ctx.qm - 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trace_walk_matches_slow_codeword_evaluation() {
        // One full-field component over GF(3^3)/GF(3), n = 13: compare the
        // table-driven walk against direct per-message evaluation.
        let ctx = FieldCtx::with_default_cap(3, 1, 3).unwrap();
        let fam = TraceEval {
            length: 13,
            comps: vec![TraceComp { mj: 3, exponent: 2 }],
            with_constant: true,
        };
        let dist = fam.enumerate(&ctx, 1 << 20).unwrap();
        let mut slow: BTreeMap<u64, u64> = BTreeMap::new();
        for a in ctx.subext_elements(3) {
            for c in ctx.sub.elements() {
                let cw = fam.codeword(&ctx, &[a, c]);
                let w = cw.iter().filter(|&&v| v != 0).count() as u64;
                *slow.entry(w).or_insert(0) += 1;
            }
        }
        assert_eq!(dist, slow);
        let total: u64 = dist.values().sum();
        assert_eq!(total as u128, fam.message_count(&ctx));
    }

    #[test]
    fn constant_only_family_is_the_repetition_code() {
        // No trace components at all: the family degenerates to the
        // constant words c·(1,…,1), i.e. the [n, 1, n] repetition code.
        let ctx = FieldCtx::with_default_cap(3, 1, 3).unwrap();
        let fam = TraceEval {
            length: 26,
            comps: vec![],
            with_constant: true,
        };
        assert_eq!(fam.message_count(&ctx), 3);
        let dist = fam.enumerate(&ctx, 1 << 20).unwrap();
        assert_eq!(dist, BTreeMap::from([(0, 1), (26, 2)]));

        let zero_only = TraceEval {
            length: 26,
            comps: vec![],
            with_constant: false,
        };
        assert_eq!(
            zero_only.enumerate(&ctx, 1 << 20).unwrap(),
            BTreeMap::from([(0, 1)])
        );
    }

    #[test]
    fn two_component_walk_matches_slow_path() {
        let ctx = FieldCtx::with_default_cap(3, 1, 4).unwrap();
        // Components GF(3^2) and GF(3^4) inside GF(3^4); exponents must keep
        // α^e inside the right intermediate field: step for mj=2 is
        // (81−1)/(9−1) = 10.
        let fam = TraceEval {
            length: 40,
            comps: vec![
                TraceComp {
                    mj: 2,
                    exponent: 10,
                },
                TraceComp { mj: 4, exponent: 7 },
            ],
            with_constant: false,
        };
        let dist = fam.enumerate(&ctx, 1 << 20).unwrap();
        let mut slow: BTreeMap<u64, u64> = BTreeMap::new();
        for a in ctx.subext_elements(2) {
            for b in ctx.subext_elements(4) {
                let cw = fam.codeword(&ctx, &[a, b]);
                let w = cw.iter().filter(|&&v| v != 0).count() as u64;
                *slow.entry(w).or_insert(0) += 1;
            }
        }
        assert_eq!(dist, slow);
    }

    #[test]
    fn genmatrix_counts_repetition_code() {
        // g = 1 + x + x² over GF(2) generates the [3,1] repetition code
        // {000, 111}: weights {0, 3}.
        let f2 = TableField::with_default_cap(2, 1).unwrap();
        let dist = enumerate_weights_genmatrix(&f2, &[1, 1, 1], 3, 100).unwrap();
        assert_eq!(dist, BTreeMap::from([(0, 1), (3, 1)]));
    }

    #[test]
    fn genmatrix_full_space() {
        // g = 1 over GF(3), n = 2: all 9 words of GF(3)².
        let f3 = TableField::with_default_cap(3, 1).unwrap();
        let dist = enumerate_weights_genmatrix(&f3, &[1], 2, 100).unwrap();
        assert_eq!(dist, BTreeMap::from([(0, 1), (1, 4), (2, 4)]));
    }

    #[test]
    fn caps_are_enforced() {
        let ctx = FieldCtx::with_default_cap(3, 1, 3).unwrap();
        let fam = TraceEval {
            length: 13,
            comps: vec![TraceComp { mj: 3, exponent: 2 }],
            with_constant: false,
        };
        assert!(matches!(
            fam.enumerate(&ctx, 5),
            Err(Error::SizeExceeded(27, 5))
        ));
    }
}
