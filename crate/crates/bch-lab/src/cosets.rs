//! q-cyclotomic cosets modulo n = (q^m − 1)/λ and the closed-form results
//! about their leaders: digit tests for leadership, the complete description
//! of non-leaders below n/q^(m/2−1) for even m, the smallest non-leader, the
//! first three largest leaders for λ = 2, and the largest leader for
//! λ = q − 1. Each closed form has a brute-force companion used as an oracle.

use std::collections::BTreeMap;

use crate::field::mulrem;
use crate::{Error, Result, DEFAULT_ENUM_CAP};

/// The coset structure parameters: cosets C_i = {i·q^j mod n} for
/// n = (q^m − 1)/λ with λ | q − 1. Guarantees ord_n(q) = m.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CosetSpace {
    pub q: u64,
    pub m: u32,
    pub lambda: u64,
    pub n: u64,
}

impl CosetSpace {
    pub fn new(q: u64, m: u32, lambda: u64) -> Result<CosetSpace> {
        crate::field::split_prime_power(q)?;
        assert!(m >= 1, "m must be positive");
        if lambda == 0 || (q - 1) % lambda != 0 {
            return Err(Error::NotADivisor(format!(
                "lambda = {lambda} must divide q - 1 = {}",
                q - 1
            )));
        }
        let qm = crate::field::checked_pow(q, m)
            .ok_or(Error::SizeExceeded(u128::MAX, u64::MAX as u128))?;
        let n = (qm - 1) / lambda;
        // ord_n(q) = m: q^m ≡ 1 holds by construction; no smaller power may.
        for j in 1..m {
            if (q.pow(j) - 1) % n == 0 {
                return Err(Error::OutOfProvenRange(format!(
                    "ord_{{{n}}}({q}) = {j} < m = {m}"
                )));
            }
        }
        Ok(CosetSpace { q, m, lambda, n })
    }

    /// q^m − 1 = λ·n.
    pub fn qm_minus_one(&self) -> u64 {
        self.lambda * self.n
    }

    /// Base-q digits of i, least significant first, padded to m digits.
    /// Well defined for i < q^m.
    pub fn digits(&self, i: u64) -> Vec<u64> {
        let mut v = Vec::with_capacity(self.m as usize);
        let mut x = i;
        for _ in 0..self.m {
            v.push(x % self.q);
            x /= self.q;
        }
        debug_assert_eq!(x, 0);
        v
    }
}

/// One coset, fully materialized.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CosetRecord {
    pub leader: u64,
    pub size: u32,
    /// Members in orbit order starting from the leader.
    pub members: Vec<u64>,
}

/// The full coset C_i with its leader.
pub fn coset_of(space: &CosetSpace, i: u64) -> Result<CosetRecord> {
    if i >= space.n {
        return Err(Error::OutOfRange(i, space.n));
    }
    let mut members = vec![i];
    let mut leader = i;
    let mut j = mulrem(i, space.q, space.n);
    while j != i {
        members.push(j);
        leader = leader.min(j);
        j = mulrem(j, space.q, space.n);
    }
    // Rotate so the orbit starts at its leader.
    let pos = members.iter().position(|&x| x == leader).unwrap();
    members.rotate_left(pos);
    Ok(CosetRecord {
        leader,
        size: members.len() as u32,
        members,
    })
}

/// Whether i is the smallest member of its coset. Walks the orbit with an
/// early exit on the first smaller member, using O(1) memory.
pub fn is_leader(space: &CosetSpace, i: u64) -> Result<bool> {
    if i >= space.n {
        return Err(Error::OutOfRange(i, space.n));
    }
    let mut j = mulrem(i, space.q, space.n);
    while j != i {
        if j < i {
            return Ok(false);
        }
        j = mulrem(j, space.q, space.n);
    }
    Ok(true)
}

/// |C_i|: the least k with i·q^k ≡ i (mod n).
pub fn coset_size(space: &CosetSpace, i: u64) -> Result<u32> {
    if i >= space.n {
        return Err(Error::OutOfRange(i, space.n));
    }
    let mut k = 1u32;
    let mut j = mulrem(i, space.q, space.n);
    while j != i {
        j = mulrem(j, space.q, space.n);
        k += 1;
    }
    Ok(k)
}

/// Digit-combinatorial necessary conditions for i to be a coset leader,
/// on the base-q digits (i_0, …, i_{m−1}) of i, least significant first.
///
/// General condition (any λ): i_{m−1} ≤ (q−1)/λ − 1, and i_ℓ ≥ i_{m−1} for
/// every ℓ ≤ m−2.
///
/// Refinement for λ = q−1 with q > 3 and m ≥ q (writing m−1 = a(q−1) + b and
/// ε = a+1 when b = q−2, else ε = a): i_{m−1} = 0 always; and whenever the ε
/// digits i_{m−1−ε}, …, i_{m−2} all equal q−1, the remaining interior digits
/// must satisfy 1 ≤ i_{ℓ−1} ≤ i_ℓ for all 1 ≤ ℓ ≤ m−2.
///
/// These are necessary conditions only: every leader passes, some
/// non-leaders pass too.
pub fn leader_digit_conditions(space: &CosetSpace, i: u64) -> Result<bool> {
    if i >= space.n {
        return Err(Error::OutOfRange(i, space.n));
    }
    if i == 0 {
        return Ok(true);
    }
    let q = space.q;
    let lam = space.lambda;
    let d = space.digits(i);
    let mu = space.m as usize;
    let top = d[mu - 1];
    if top > (q - 1) / lam - 1 {
        return Ok(false);
    }
    if d[..mu - 1].iter().any(|&dl| dl < top) {
        return Ok(false);
    }
    // Refinement for λ = q − 1, q > 3, m ≥ q.
    if lam == q - 1 && q > 3 && space.m as u64 >= q {
        // i_{m−1} ≤ (q−1)/λ − 1 = 0 is already enforced above.
        let b = (space.m as u64 - 1) % (q - 1);
        let a = (space.m as u64 - 1) / (q - 1);
        let eps = if b == q - 2 { a + 1 } else { a };
        let run_ok = (0..eps as usize).all(|k| mu >= 2 + k && d[mu - 2 - k] == q - 1);
        if run_ok {
            for l in 1..=mu - 2 {
                if d[l - 1] < 1 || d[l - 1] > d[l] {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// The three parametrized sets Δ_0, Δ_1, Δ_2 that exhaust the non-leaders
/// i ≤ (q^{h+1}−1)/λ with i ≢ 0 (mod q), for even m = 2h ≥ 4 (materialized).
#[derive(Clone, Debug, Default)]
pub struct NonLeaderSets {
    pub delta0: Vec<u64>,
    pub delta1: Vec<u64>,
    pub delta2: Vec<u64>,
}

impl NonLeaderSets {
    pub fn union_sorted(&self) -> Vec<u64> {
        let mut v: Vec<u64> = self
            .delta0
            .iter()
            .chain(&self.delta1)
            .chain(&self.delta2)
            .copied()
            .collect();
        v.sort_unstable();
        v.dedup();
        v
    }
}

/// Materializes Δ_0, Δ_1, Δ_2 for even m = 2h ≥ 4, with
/// f(a, b, c) = a·q^h + b·(q^h − 1)/λ + c:
///   Δ_0 = { f(a, 0, c) : 1 ≤ c < a ≤ (q−1)/λ },
///   Δ_1 = { f(a, b, c) : 1 ≤ c ≤ a < (q−1)/λ, 1 ≤ b ≤ λ−1 },
///   Δ_2 = { f(a, b, a+1) : 0 ≤ a < (q−1)/λ, λ/2 < b ≤ λ−1 }.
pub fn nonleader_sets_even_m(space: &CosetSpace) -> Result<NonLeaderSets> {
    if space.m % 2 != 0 {
        return Err(Error::OddM);
    }
    if space.m < 4 {
        return Err(Error::OutOfProvenRange(
            "the non-leader description needs m = 2h >= 4".into(),
        ));
    }
    let h = space.m / 2;
    let q = space.q;
    let lam = space.lambda;
    let qh = q.pow(h);
    let step = (qh - 1) / lam;
    let f = |a: u64, b: u64, c: u64| a * qh + b * step + c;
    let mut sets = NonLeaderSets::default();
    let amax = (q - 1) / lam;
    for a in 1..=amax {
        for c in 1..a {
            sets.delta0.push(f(a, 0, c));
        }
    }
    for a in 1..amax {
        for b in 1..lam {
            for c in 1..=a {
                sets.delta1.push(f(a, b, c));
            }
        }
    }
    // Strict λ/2 < b: the first admissible b is ⌊λ/2⌋ + 1 for either parity.
    for a in 0..amax {
        for b in lam / 2 + 1..lam {
            sets.delta2.push(f(a, b, a + 1));
        }
    }
    Ok(sets)
}

/// Smallest non-leader that is not a multiple of q, for even m = 2h ≥ 4:
///   λ = 1:      2q^h + 1
///   λ = 2:      (3q^h + 1)/2
///   odd λ ≥ 3:  ((λ+1)q^h + λ − 1)/(2λ)
///   even λ ≥ 4: ((λ+2)q^h + λ − 2)/(2λ)
pub fn smallest_nonleader_even_m(space: &CosetSpace) -> Result<u64> {
    if space.m % 2 != 0 {
        return Err(Error::OddM);
    }
    if space.m < 4 {
        return Err(Error::OutOfProvenRange(
            "the smallest-non-leader formula needs m = 2h >= 4".into(),
        ));
    }
    let q = space.q;
    let lam = space.lambda;
    let qh = q.pow(space.m / 2);
    Ok(match lam {
        1 => 2 * qh + 1,
        2 => (3 * qh + 1) / 2,
        l if l % 2 == 1 => ((l + 1) * qh + l - 1) / (2 * l),
        l => ((l + 2) * qh + l - 2) / (2 * l),
    })
}

/// Coset sizes in the half-length regime: for even m = 2h and
/// 1 ≤ i ≤ (q^{h+1}−1)/λ with i ≢ 0 (mod q), the size of C_i is h exactly
/// when i lies in the arithmetic progression below, and m otherwise:
///   λ odd:  { c(q^h + 1)       : 1 ≤ c ≤ (q−1)/λ }
///   λ even: { c(q^h + 1)/2     : 1 ≤ c ≤ 2(q−1)/λ }
pub fn half_size_progression(space: &CosetSpace) -> Result<Vec<u64>> {
    if space.m % 2 != 0 {
        return Err(Error::OddM);
    }
    let h = space.m / 2;
    let q = space.q;
    let lam = space.lambda;
    let qh = q.pow(h);
    Ok(if lam % 2 == 1 {
        (1..=(q - 1) / lam).map(|c| c * (qh + 1)).collect()
    } else {
        (1..=2 * (q - 1) / lam).map(|c| c * (qh + 1) / 2).collect()
    })
}

/// The first three largest coset leaders for λ = 2 (q odd), with coset sizes:
///   δ₁ = (q^m − 1 − q^{m−1} − q^{⌊(m−1)/2⌋})/2, size m if m odd, m/2 if even;
///   δ₂ = (q^m − 1 − q^{m−1} − q^{⌊(m+1)/2⌋})/2, size m;
///   δ₃ = (q^m − 1 − q^{m−1} − q^{⌊(m+3)/2⌋})/2, size m — requires m ≥ 6.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LargestHalf {
    pub delta1: (u64, u32),
    pub delta2: (u64, u32),
    pub delta3: Option<(u64, u32)>,
}

pub fn largest_leaders_half(q: u64, m: u32) -> Result<LargestHalf> {
    if q % 2 == 0 {
        return Err(Error::EvenQ);
    }
    let space = CosetSpace::new(q, m, 2)?;
    let qm = space.qm_minus_one() + 1;
    let d1 = (qm - 1 - qm / q - q.pow((m - 1) / 2)) / 2;
    let s1 = if m % 2 == 1 { m } else { m / 2 };
    let d2 = (qm - 1 - qm / q - q.pow((m + 1) / 2)) / 2;
    let d3 = if m >= 6 {
        Some(((qm - 1 - qm / q - q.pow((m + 3) / 2)) / 2, m))
    } else {
        None
    };
    let out = LargestHalf {
        delta1: (d1, s1),
        delta2: (d2, m),
        delta3: d3,
    };
    // Closed forms are still checked against the orbit walk on every call,
    // so a transcription slip can never propagate silently.
    for (val, size) in [out.delta1, out.delta2].into_iter().chain(out.delta3) {
        assert!(
            is_leader(&space, val)?,
            "stated leader {val} is not a leader"
        );
        assert_eq!(
            coset_size(&space, val)?,
            size,
            "coset size mismatch at {val}"
        );
    }
    Ok(out)
}

/// δ₃ with its size, erroring when m < 6.
pub fn largest_leader_third(q: u64, m: u32) -> Result<(u64, u32)> {
    largest_leaders_half(q, m)?
        .delta3
        .ok_or(Error::MTooSmallForDelta3)
}

/// The largest coset leader for λ = q − 1 and m ≥ q > 3, writing
/// m − 1 = a(q−1) + b. Covered residues:
///   b = 0:     δ = (q^m − 1 − q^{m−1} − Σ_{ℓ=1}^{q−2} q^{aℓ})/(q−1), size m;
///   b = 1:     δ = (q^m − 1 − q^{m−1} − Σ_{ℓ=1}^{A} q^{aℓ}
///                   − Σ_{ℓ=A+1}^{q−2} q^{aℓ+1})/(q−1), A = ⌊(q−1)/2⌋,
///              size m/2 for odd q, m for even q;
///   b = q − 2: δ = (q^m − 1 − q^{m−1} − Σ_{ℓ=1}^{q−2} q^{(a+1)ℓ−1})/(q−1),
///              size a + 1.
pub fn largest_leader_qm1(q: u64, m: u32) -> Result<(u64, u32)> {
    if q <= 3 {
        return Err(Error::QTooSmall);
    }
    if (m as u64) < q {
        return Err(Error::OutOfProvenRange(format!(
            "largest-leader formula for lambda = q - 1 needs m >= q (m = {m}, q = {q})"
        )));
    }
    let space = CosetSpace::new(q, m, q - 1)?;
    let qm = space.qm_minus_one() + 1;
    let a = (m as u64 - 1) / (q - 1);
    let b = (m as u64 - 1) % (q - 1);
    let (delta, size): (u64, u32) = match b {
        0 => {
            let tail: u64 = (1..=q - 2).map(|l| q.pow((a * l) as u32)).sum();
            ((qm - 1 - qm / q - tail) / (q - 1), m)
        }
        1 => {
            let cap_a = (q - 1) / 2;
            let tail: u64 = (1..=cap_a).map(|l| q.pow((a * l) as u32)).sum::<u64>()
                + (cap_a + 1..=q - 2)
                    .map(|l| q.pow((a * l + 1) as u32))
                    .sum::<u64>();
            let size = if q % 2 == 1 { m / 2 } else { m };
            ((qm - 1 - qm / q - tail) / (q - 1), size)
        }
        r if r == q - 2 => {
            let tail: u64 = (1..=q - 2).map(|l| q.pow(((a + 1) * l - 1) as u32)).sum();
            ((qm - 1 - qm / q - tail) / (q - 1), a as u32 + 1)
        }
        other => return Err(Error::UnsupportedResidue(other)),
    };
    assert!(
        is_leader(&space, delta)?,
        "stated leader {delta} is not a leader"
    );
    assert_eq!(
        coset_size(&space, delta)?,
        size,
        "coset size mismatch at {delta}"
    );
    Ok((delta, size))
}

/// Brute-force scan over `lo..=hi`: (leader?, coset size) per index.
/// Caps the walk at `cap` indices.
pub fn bruteforce_leader_scan(
    space: &CosetSpace,
    lo: u64,
    hi: u64,
    cap: u64,
) -> Result<BTreeMap<u64, (bool, u32)>> {
    if hi >= space.n {
        return Err(Error::OutOfRange(hi, space.n));
    }
    let count = hi.saturating_sub(lo) + 1;
    if count > cap {
        return Err(Error::SizeExceeded(count as u128, cap as u128));
    }
    use rayon::prelude::*;
    let entries: Vec<(u64, (bool, u32))> = (lo..hi + 1)
        .into_par_iter()
        .map(|i| {
            let mut leader = true;
            let mut size = 1u32;
            let mut j = mulrem(i, space.q, space.n);
            while j != i {
                if j < i {
                    leader = false;
                }
                size += 1;
                j = mulrem(j, space.q, space.n);
            }
            (i, (leader, size))
        })
        .collect();
    Ok(entries.into_iter().collect())
}

/// All coset leaders with sizes, ascending, via one linear mark pass.
/// Cost O(n) marks; memory one byte per index.
pub fn all_leaders(space: &CosetSpace, cap: u64) -> Result<Vec<(u64, u32)>> {
    if space.n > cap {
        return Err(Error::SizeExceeded(space.n as u128, cap as u128));
    }
    let n = space.n as usize;
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for i in 0..space.n {
        if seen[i as usize] {
            continue;
        }
        let mut size = 1u32;
        seen[i as usize] = true;
        let mut j = mulrem(i, space.q, space.n);
        while j != i {
            seen[j as usize] = true;
            size += 1;
            j = mulrem(j, space.q, space.n);
        }
        out.push((i, size));
    }
    Ok(out)
}

/// Convenience: default scan cap.
pub fn default_scan_cap() -> u64 {
    DEFAULT_ENUM_CAP
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cosets_partition_and_sizes_divide_m() {
        for (q, m, lambda) in [
            (3u64, 3u32, 1u64),
            (3, 3, 2),
            (3, 4, 2),
            (5, 3, 2),
            (4, 3, 3),
            (9, 2, 4),
        ] {
            let space = CosetSpace::new(q, m, lambda).unwrap();
            let leaders = all_leaders(&space, 1 << 20).unwrap();
            let total: u64 = leaders.iter().map(|&(_, s)| s as u64).sum();
            assert_eq!(total, space.n, "sizes must sum to n");
            for &(l, s) in &leaders {
                assert!(m % s == 0, "coset size {s} must divide m = {m}");
                assert!(is_leader(&space, l).unwrap());
                let rec = coset_of(&space, l).unwrap();
                assert_eq!(rec.size, s);
                assert_eq!(rec.leader, l);
                assert_eq!(rec.members.len(), s as usize);
            }
        }
    }

    #[test]
    fn leader_walk_agrees_with_full_materialization() {
        let space = CosetSpace::new(3, 4, 2).unwrap();
        for i in 0..space.n {
            let rec = coset_of(&space, i).unwrap();
            assert_eq!(is_leader(&space, i).unwrap(), rec.leader == i);
            assert_eq!(coset_size(&space, i).unwrap(), rec.size);
        }
    }

    #[test]
    fn known_leaders_small_cases() {
        // q = 3, λ = 2, m = 3 → n = 13: leaders 0, 1, 2, 4, 7.
        let space = CosetSpace::new(3, 3, 2).unwrap();
        let leaders: Vec<u64> = all_leaders(&space, 1000)
            .unwrap()
            .into_iter()
            .map(|(l, _)| l)
            .collect();
        assert_eq!(leaders, vec![0, 1, 2, 4, 7]);
        // The largest two leaders are 7 and 4, matching the λ = 2 formulas.
        let lh = largest_leaders_half(3, 3).unwrap();
        assert_eq!(lh.delta1, (7, 3));
        assert_eq!(lh.delta2, (4, 3));
        assert!(lh.delta3.is_none());
    }

    #[test]
    fn digit_conditions_are_necessary() {
        // Every actual leader satisfies the digit conditions (they are
        // necessary, not sufficient).
        for (q, m, lambda) in [
            (3u64, 4u32, 2u64),
            (5, 3, 2),
            (5, 4, 4),
            (4, 4, 3),
            (7, 3, 3),
        ] {
            let space = CosetSpace::new(q, m, lambda).unwrap();
            for i in 1..space.n {
                if is_leader(&space, i).unwrap() {
                    assert!(
                        leader_digit_conditions(&space, i).unwrap(),
                        "leader {i} of (q={q}, m={m}, λ={lambda}) fails the digit test"
                    );
                }
            }
        }
    }

    #[test]
    fn refined_digit_conditions_for_lambda_q_minus_one() {
        // Cases with m ≥ q, where the refinement is active; it must stay
        // necessary for all leaders.
        for (q, m) in [(4u64, 4u32), (4, 5), (5, 5), (5, 6)] {
            let space = CosetSpace::new(q, m, q - 1).unwrap();
            for i in 1..space.n {
                if is_leader(&space, i).unwrap() {
                    assert!(
                        leader_digit_conditions(&space, i).unwrap(),
                        "leader {i} of (q={q}, m={m}, λ=q−1) fails the refined digit test"
                    );
                }
            }
        }
    }

    #[test]
    fn nonleader_sets_match_bruteforce_exactly() {
        // For even m the three sets describe the non-leaders i ≢ 0 (mod q)
        // below (q^{h+1}−1)/λ exactly.
        for (q, m, lambda) in [
            (3u64, 4u32, 1u64),
            (3, 4, 2),
            (5, 4, 2),
            (5, 4, 4),
            (7, 4, 2),
            (7, 4, 3),
            (7, 4, 6),
            (4, 4, 3),
            (3, 6, 2),
            (9, 4, 8),
        ] {
            let space = CosetSpace::new(q, m, lambda).unwrap();
            let h = m / 2;
            let bound = (q.pow(h + 1) - 1) / lambda;
            let sets = nonleader_sets_even_m(&space).unwrap();
            let described = sets.union_sorted();
            for &x in &described {
                assert!(x <= bound, "described value {x} beyond the proven range");
            }
            let mut actual = Vec::new();
            for i in 1..=bound {
                if i % q == 0 {
                    continue;
                }
                if !is_leader(&space, i).unwrap() {
                    actual.push(i);
                }
            }
            assert_eq!(described, actual, "(q={q}, m={m}, λ={lambda})");
        }
    }

    #[test]
    fn smallest_nonleader_formula_matches_scan() {
        for (q, m, lambda) in [
            (3u64, 4u32, 1u64),
            (3, 4, 2),
            (5, 4, 1),
            (5, 4, 2),
            (5, 4, 4),
            (7, 4, 2),
            (7, 4, 3),
            (7, 4, 6),
            (9, 4, 4),
            (9, 4, 8),
            (3, 6, 2),
            (4, 4, 3),
            (8, 4, 7),
        ] {
            let space = CosetSpace::new(q, m, lambda).unwrap();
            let stated = smallest_nonleader_even_m(&space).unwrap();
            let mut scan = 1;
            loop {
                if scan % q != 0 && !is_leader(&space, scan).unwrap() {
                    break;
                }
                scan += 1;
            }
            assert_eq!(stated, scan, "(q={q}, m={m}, λ={lambda})");
        }
    }

    #[test]
    fn half_size_progression_matches_scan() {
        for (q, m, lambda) in [
            (3u64, 4u32, 2u64),
            (5, 4, 2),
            (5, 4, 4),
            (7, 4, 3),
            (7, 4, 6),
            (4, 4, 3),
            (3, 6, 2),
        ] {
            let space = CosetSpace::new(q, m, lambda).unwrap();
            let h = m / 2;
            let bound = (q.pow(h + 1) - 1) / lambda;
            let stated = half_size_progression(&space).unwrap();
            let mut actual = Vec::new();
            for i in 1..=bound {
                if i % q == 0 {
                    continue;
                }
                let s = coset_size(&space, i).unwrap();
                assert!(s == m || s == h, "size {s} for {i} is neither m nor m/2");
                if s == h {
                    actual.push(i);
                }
            }
            assert_eq!(stated, actual, "(q={q}, m={m}, λ={lambda})");
        }
    }

    #[test]
    fn qm1_largest_leader_spot_checks() {
        // Frozen values, previously cross-checked against full scans.
        assert_eq!(largest_leader_qm1(5, 5).unwrap(), (586, 5));
        assert_eq!(largest_leader_qm1(5, 6).unwrap(), (2961, 3));
        assert_eq!(largest_leader_qm1(4, 6).unwrap(), (1001, 2));
        assert!(matches!(largest_leader_qm1(3, 4), Err(Error::QTooSmall)));
        assert!(matches!(
            largest_leader_qm1(7, 5),
            Err(Error::OutOfProvenRange(_))
        ));
        // q = 5: residues b ∈ {0, 1, 3} are covered; m = 7 gives b = 2.
        assert!(matches!(
            largest_leader_qm1(5, 7),
            Err(Error::UnsupportedResidue(2))
        ));
    }

    #[test]
    fn scan_matches_pointwise_api() {
        let space = CosetSpace::new(5, 3, 2).unwrap();
        let scan = bruteforce_leader_scan(&space, 0, space.n - 1, 10_000).unwrap();
        for (i, (lead, size)) in scan {
            assert_eq!(lead, is_leader(&space, i).unwrap());
            assert_eq!(size, coset_size(&space, i).unwrap());
        }
        assert!(matches!(
            bruteforce_leader_scan(&space, 0, space.n - 1, 10),
            Err(Error::SizeExceeded(..))
        ));
    }
}
