//! Property suites over randomly sampled parameters, plus two deterministic
//! invariance checks. Each suite states one structural invariant of the
//! library and tests it against an independent recomputation:
//!
//! * cyclotomic cosets partition {0, …, n−1} and their sizes divide m;
//! * the digit conditions hold for every brute-force coset leader;
//! * a constructed generator times its parity-check equals x^n − 1;
//! * adjoining the zero coset drops the dimension by exactly one;
//! * the measured minimum distance meets the designed-distance bound;
//! * the quadratic-character twist identity for the pencil's sums;
//! * weight distributions do not depend on the primitive polynomial.

use proptest::prelude::*;

use bch_lab::bch::{
    bch_bound_check, build_bch, defining_set_sizes_upto, min_distance_bruteforce,
    weights_genmatrix, BchDescriptor,
};
use bch_lab::cosets::{all_leaders, default_scan_cap, leader_digit_conditions, CosetSpace};
use bch_lab::field::{find_primitive_polys, split_prime_power, FieldCtx};
use bch_lab::poly::{parity_check, Poly};
use bch_lab::weights::{
    build_family, character_twist_check, closed_form_distribution, FamilyKind, WeightDistribution,
};
use bch_lab::{DEFAULT_ENUM_CAP, DEFAULT_MAX_FIELD};

/// Parameter pool (q, m, λ) with λ | q − 1, kept small enough that every
/// derived scan or enumeration is exhaustive within the default caps.
const SPACES: &[(u64, u32, u64)] = &[
    (3, 3, 2),
    (3, 4, 2),
    (3, 5, 1),
    (4, 3, 3),
    (5, 2, 2),
    (5, 3, 4),
    (7, 2, 3),
    (7, 3, 2),
    (8, 3, 7),
    (9, 2, 8),
];

/// Pool for the digit-condition suite: includes λ = q − 1 entries, where the
/// refined conditions (digit bound plus circular-run bound) take effect.
const DIGIT_SPACES: &[(u64, u32, u64)] = &[
    (3, 3, 2),
    (3, 4, 2),
    (5, 3, 2),
    (5, 4, 4),
    (5, 5, 4),
    (5, 6, 4),
    (4, 4, 3),
    (7, 3, 6),
    (7, 4, 6),
];

/// Pool for suites that brute-force codewords: small n so that q^k stays
/// enumerable for most sampled δ.
const SMALL_SPACES: &[(u64, u32, u64)] = &[
    (3, 3, 1),
    (3, 3, 2),
    (4, 3, 3),
    (5, 2, 2),
    (7, 2, 3),
    (9, 2, 8),
];

fn space(pool: &'static [(u64, u32, u64)]) -> impl Strategy<Value = (u64, u32, u64)> {
    prop::sample::select(pool)
}

/// A space together with a designed distance 2 ≤ δ ≤ n and a hat flag.
fn code_params(
    pool: &'static [(u64, u32, u64)],
) -> impl Strategy<Value = (u64, u32, u64, u64, bool)> {
    space(pool).prop_flat_map(|(q, m, lambda)| {
        let n = (q.pow(m) - 1) / lambda;
        (Just((q, m, lambda)), 2..=n, any::<bool>())
            .prop_map(|((q, m, lambda), delta, hat)| (q, m, lambda, delta, hat))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    /// The cosets partition the index set: leader-tagged sizes sum to n,
    /// every index lands in exactly one coset, and each size divides m.
    #[test]
    fn cosets_partition_the_index_set(params in space(SPACES)) {
        let (q, m, lambda) = params;
        let space = CosetSpace::new(q, m, lambda).unwrap();
        let leaders = all_leaders(&space, default_scan_cap()).unwrap();
        let total: u64 = leaders.iter().map(|&(_, size)| size as u64).sum();
        prop_assert_eq!(total, space.n, "coset sizes must sum to n = {}", space.n);
        for &(leader, size) in &leaders {
            prop_assert_eq!(
                m % size,
                0,
                "coset of {} has size {}, which does not divide m = {}",
                leader,
                size,
                m
            );
        }
        // Leaders are strictly increasing and start at the zero coset.
        prop_assert_eq!(leaders[0], (0, 1));
        for pair in leaders.windows(2) {
            prop_assert!(pair[0].0 < pair[1].0);
        }
    }

    /// Every leader found by exhaustive orbit scan satisfies the
    /// base-q digit conditions (they are necessary, never violated).
    #[test]
    fn scanned_leaders_satisfy_digit_conditions(params in space(DIGIT_SPACES)) {
        let (q, m, lambda) = params;
        let space = CosetSpace::new(q, m, lambda).unwrap();
        for (leader, _) in all_leaders(&space, default_scan_cap()).unwrap() {
            if leader == 0 {
                continue;
            }
            prop_assert!(
                leader_digit_conditions(&space, leader).unwrap(),
                "leader {} of (q={}, m={}, lambda={}) fails the digit conditions",
                leader,
                q,
                m,
                lambda
            );
        }
    }

    /// The constructed generator g divides x^n − 1 with quotient h and
    /// g·h = x^n − 1 exactly; deg g + dimension = n.
    #[test]
    fn generator_times_parity_check_is_x_n_minus_one(
        (q, m, lambda, delta, hat) in code_params(SPACES)
    ) {
        let ctx = FieldCtx::for_q(q, m, DEFAULT_MAX_FIELD).unwrap();
        let desc = BchDescriptor { q, m, lambda, delta, b: 1, hat };
        let code = build_bch(&ctx, &desc).unwrap();
        prop_assert_eq!(
            code.generator.degree(),
            Some((code.n - code.k) as usize),
            "generator degree must be n - k"
        );
        let h = parity_check(&ctx.sub, code.n, &code.generator).unwrap();
        let product = code.generator.mul(&ctx.sub, &h);
        let target = Poly::x_pow_minus_one(&ctx.sub, code.n);
        prop_assert_eq!(
            product.to_labels(&ctx.sub),
            target.to_labels(&ctx.sub),
            "{}: g * h != x^n - 1",
            desc
        );
    }

    /// Adjoining the zero coset to a narrow-sense defining set removes
    /// exactly one dimension, for every δ.
    #[test]
    fn zero_coset_drops_dimension_by_one(
        (q, m, lambda, delta, _) in code_params(SPACES)
    ) {
        let ctx = FieldCtx::for_q(q, m, DEFAULT_MAX_FIELD).unwrap();
        let base = BchDescriptor { q, m, lambda, delta, b: 1, hat: false };
        let plain = build_bch(&ctx, &base).unwrap();
        let hat = build_bch(&ctx, &BchDescriptor { hat: true, ..base }).unwrap();
        prop_assert_eq!(
            hat.k + 1,
            plain.k,
            "{}: hat dimension {} is not one below {}",
            base,
            hat.k,
            plain.k
        );
    }

    /// Exhaustively measured minimum distance is at least the designed
    /// distance (δ, or δ + 1 for the hat variant).
    #[test]
    fn measured_distance_meets_designed_bound(
        (q, m, lambda, delta, hat) in code_params(SMALL_SPACES)
    ) {
        let space = CosetSpace::new(q, m, lambda).unwrap();
        let sizes = defining_set_sizes_upto(&space, 1, hat, delta).unwrap();
        let k = space.n - sizes[(delta - 2) as usize];
        prop_assume!(k >= 1);
        // Keep the message walk small; rejecting costs only the scan above.
        prop_assume!((q as u128).checked_pow(k as u32).is_some_and(|c| c <= 300_000));
        let ctx = FieldCtx::for_q(q, m, DEFAULT_MAX_FIELD).unwrap();
        let desc = BchDescriptor { q, m, lambda, delta, b: 1, hat };
        let code = build_bch(&ctx, &desc).unwrap();
        prop_assert_eq!(code.k, k, "survey dimension disagrees with construction");
        let d = min_distance_bruteforce(&ctx, &code, DEFAULT_ENUM_CAP).unwrap();
        prop_assert!(
            bch_bound_check(&desc, d),
            "{}: measured d = {} is below the designed distance",
            desc,
            d
        );
    }
}

/// Σ_x ζ^{Tr(y·Q(x))} = η(y)^rank · S for the quadratic pencil, on 100
/// deterministic pseudo-random (coefficients, scalar) triples per field.
#[test]
fn quadratic_character_twist_identity() {
    for (q, m) in [(3u64, 3u32), (3, 4), (5, 3)] {
        let ctx = FieldCtx::for_q(q, m, DEFAULT_MAX_FIELD).unwrap();
        let checked = character_twist_check(&ctx, 100).unwrap();
        assert_eq!(checked, 100, "twist identity run at (q={q}, m={m})");
    }
}

/// Weight distributions are properties of the code, not of the field
/// representation: rebuilding every family over an alternate primitive
/// polynomial reproduces the same rows, as does a generator-matrix walk
/// of a constructed code.
#[test]
fn distributions_survive_representation_change() {
    let pool: [(FamilyKind, u64, u32); 4] = [
        (FamilyKind::HatDelta1, 3, 3),
        (FamilyKind::CDelta1, 3, 3),
        (FamilyKind::V3, 5, 2),
        (FamilyKind::V2, 9, 2),
    ];
    for (kind, q, m) in pool {
        let (p, s) = split_prime_power(q).unwrap();
        let alt_poly = &find_primitive_polys(p, s * m, 2).unwrap()[1];
        let base = FieldCtx::for_q(q, m, DEFAULT_MAX_FIELD).unwrap();
        let alt = FieldCtx::with_ext_poly(p, s, m, DEFAULT_MAX_FIELD, alt_poly).unwrap();
        let closed = closed_form_distribution(q, m, kind).unwrap();
        for ctx in [&base, &alt] {
            let fam = build_family(ctx, kind).unwrap();
            let counts = fam.eval.enumerate(ctx, DEFAULT_ENUM_CAP).unwrap();
            let dist = WeightDistribution::from_counts(fam.length, fam.dim, &counts);
            assert_eq!(
                dist.rows,
                closed.rows,
                "{} (q={q}, m={m}) under poly {:?}",
                kind.name(),
                ctx.ext.prim_poly
            );
        }
    }

    let desc = BchDescriptor {
        q: 3,
        m: 3,
        lambda: 2,
        delta: 4,
        b: 1,
        hat: false,
    };
    let base = FieldCtx::for_q(3, 3, DEFAULT_MAX_FIELD).unwrap();
    let alt_poly = &find_primitive_polys(3, 3, 2).unwrap()[1];
    let alt = FieldCtx::with_ext_poly(3, 1, 3, DEFAULT_MAX_FIELD, alt_poly).unwrap();
    let w_base =
        weights_genmatrix(&base, &build_bch(&base, &desc).unwrap(), DEFAULT_ENUM_CAP).unwrap();
    let w_alt =
        weights_genmatrix(&alt, &build_bch(&alt, &desc).unwrap(), DEFAULT_ENUM_CAP).unwrap();
    assert_eq!(
        w_base, w_alt,
        "{desc}: distribution depends on the representation"
    );
}
