//! Table-driven finite fields GF(p^d) with a discrete-log element
//! representation, plus the two-field context GF(q) ⊂ GF(q^m) used by all
//! higher layers.
//!
//! Elements are `El::Zero` or `El::Pow(k)` meaning α^k for a fixed primitive
//! element α (the residue of x modulo the chosen primitive polynomial).
//! Multiplication is exponent arithmetic; addition goes through exp/log
//! tables over "packed" representations (base-p digit vectors packed into a
//! u64, digit i holding the coefficient of α^i).
//!
//! The primitive polynomial of each degree is chosen deterministically: among
//! monic candidates x^d + c_{d-1}x^{d-1} + … + c_0 with c_0 ≠ 0, the one whose
//! packed constant part Σ c_i p^i is smallest. Two runs therefore always
//! agree on every exponent and every table.

use std::sync::OnceLock;

use crate::{Error, Result, DEFAULT_MAX_FIELD};

/// Field element: zero or a power of the fixed primitive element.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum El {
    Zero,
    Pow(u64),
}

impl El {
    pub const ONE: El = El::Pow(0);

    pub fn is_zero(self) -> bool {
        matches!(self, El::Zero)
    }
}

/// Checks primality by trial division (fields here are small, so this is cheap).
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// Prime factorization as sorted (prime, exponent) pairs.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while (d as u128) * (d as u128) <= n as u128 {
        if n % d == 0 {
            let mut e = 0;
            while n % d == 0 {
                n /= d;
                e += 1;
            }
            out.push((d, e));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// b^e with overflow check (u64 result).
pub fn checked_pow(b: u64, e: u32) -> Option<u64> {
    let mut acc: u64 = 1;
    for _ in 0..e {
        acc = acc.checked_mul(b)?;
    }
    Some(acc)
}

/// (a * b) mod n without overflow.
pub fn mulrem(a: u64, b: u64, n: u64) -> u64 {
    ((a as u128 * b as u128) % n as u128) as u64
}

/// a^e mod n without overflow.
pub fn powrem(a: u64, mut e: u64, n: u64) -> u64 {
    let mut base = a % n;
    let mut acc = 1 % n;
    while e > 0 {
        if e & 1 == 1 {
            acc = mulrem(acc, base, n);
        }
        base = mulrem(base, base, n);
        e >>= 1;
    }
    acc
}

/// Multiplicative inverse of a modulo n (n > 1, gcd(a, n) = 1).
pub fn invrem(a: u64, n: u64) -> u64 {
    let (mut r0, mut r1) = (n as i128, (a % n) as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    assert_eq!(r0, 1, "invrem: arguments not coprime");
    t0.rem_euclid(n as i128) as u64
}

/// Multiplicative order of a modulo n (gcd(a, n) = 1).
pub fn mul_order(a: u64, n: u64) -> u64 {
    // ord | φ(n) hmm: compute by walking divisors of the group exponent is
    // overkill here; a simple walk is fine for the sizes we use.
    let mut k = 1u64;
    let mut x = a % n;
    while x != 1 {
        x = mulrem(x, a, n);
        k += 1;
        assert!(k <= n, "mul_order: a is not a unit mod n");
    }
    k
}

// ---------------------------------------------------------------------------
// Dense polynomial arithmetic over GF(p), used only to locate the primitive
// polynomial that seeds each field's tables.
// ---------------------------------------------------------------------------

fn gfp_poly_mulmod(a: &[u64], b: &[u64], f: &[u64], p: u64) -> Vec<u64> {
    let d = f.len() - 1;
    let mut prod = vec![0u64; a.len() + b.len() - 1];
    for (i, &ai) in a.iter().enumerate() {
        if ai == 0 {
            continue;
        }
        for (j, &bj) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + ai * bj) % p;
        }
    }
    // reduce by monic f of degree d
    for i in (d..prod.len()).rev() {
        let c = prod[i];
        if c == 0 {
            continue;
        }
        prod[i] = 0;
        for j in 0..d {
            let sub = (c * f[j]) % p;
            prod[i - d + j] = (prod[i - d + j] + p * p - sub) % p;
        }
    }
    prod.truncate(d);
    prod.resize(d, 0);
    prod
}

fn gfp_poly_powmod(base: &[u64], mut e: u64, f: &[u64], p: u64) -> Vec<u64> {
    let d = f.len() - 1;
    let mut acc = vec![0u64; d];
    acc[0] = 1;
    let mut b = base.to_vec();
    while e > 0 {
        if e & 1 == 1 {
            acc = gfp_poly_mulmod(&acc, &b, f, p);
        }
        b = gfp_poly_mulmod(&b, &b, f, p);
        e >>= 1;
    }
    acc
}

fn is_one(v: &[u64]) -> bool {
    v.first() == Some(&1) && v[1..].iter().all(|&c| c == 0)
}

/// Finds the deterministic primitive polynomial of degree d over GF(p):
/// the monic polynomial with the smallest packed constant part whose root
/// has multiplicative order p^d − 1.
pub fn find_primitive_poly(p: u64, d: u32) -> Result<Vec<u64>> {
    Ok(find_primitive_polys(p, d, 1)?.remove(0))
}

/// In GF(p)[x]/(c), checks ord(x) == p^d − 1. That both certifies c
/// irreducible (a proper factor ring has fewer than p^d − 1 units) and
/// makes x a generator, i.e. c primitive. `factors` are the prime factors
/// of p^d − 1.
fn poly_generator_has_full_order(
    c: &[u64],
    p: u64,
    d: u32,
    group: u64,
    factors: &[(u64, u32)],
) -> bool {
    let xv = if d == 1 {
        // GF(p): "x" reduces to the constant -c_0.
        vec![(p - c[0]) % p]
    } else {
        let mut v = vec![0u64; d as usize];
        v[1] = 1;
        v
    };
    is_one(&gfp_poly_powmod(&xv, group, c, p))
        && factors
            .iter()
            .all(|&(r, _)| !is_one(&gfp_poly_powmod(&xv, group / r, c, p)))
}

/// p^deg, capped at `max_order`.
fn field_order_checked(p: u64, deg: u32, max_order: u64) -> Result<u64> {
    checked_pow(p, deg)
        .filter(|&o| o <= max_order)
        .ok_or_else(|| {
            let sz = (1..=deg).fold(1u128, |a, _| a.saturating_mul(p as u128));
            Error::SizeExceeded(sz, max_order as u128)
        })
}

/// The first `count` monic primitive polynomials of degree d over GF(p), in
/// a fixed deterministic order (ascending packed coefficient vectors).
/// Everything the library computes must be invariant under which of them
/// backs the field tables.
pub fn find_primitive_polys(p: u64, d: u32, count: usize) -> Result<Vec<Vec<u64>>> {
    let order = checked_pow(p, d).ok_or(Error::SizeExceeded(u128::MAX, u64::MAX as u128))?;
    let group = order - 1;
    let factors = factorize(group);
    let mut out = Vec::with_capacity(count);
    for packed in 1..order {
        let mut c = Vec::with_capacity(d as usize + 1);
        let mut rest = packed;
        for _ in 0..d {
            c.push(rest % p);
            rest /= p;
        }
        if c[0] == 0 {
            continue;
        }
        c.push(1); // monic leading coefficient
        if poly_generator_has_full_order(&c, p, d, group, &factors) {
            out.push(c);
            if out.len() == count {
                return Ok(out);
            }
        }
    }
    Err(Error::NoPrimitivePolyFound)
}

// ---------------------------------------------------------------------------
// TableField
// ---------------------------------------------------------------------------

/// GF(p^deg) with exp/log tables over packed digit vectors.
pub struct TableField {
    pub p: u64,
    pub deg: u32,
    /// p^deg.
    pub order: u64,
    /// Monic primitive polynomial, coefficients `prim_poly[i]` of x^i,
    /// length deg + 1.
    pub prim_poly: Vec<u64>,
    /// exp[k] = packed representation of α^k, for k < order − 1.
    exp: Vec<u32>,
    /// log[v] = exponent of the element with packed representation v;
    /// log[0] is a sentinel (u32::MAX).
    log: Vec<u32>,
    /// Absolute trace to GF(p) of α^i for i < deg.
    trace_basis: Vec<u64>,
    /// Lazily built full trace table (packed value → trace in GF(p)).
    trace_tab: OnceLock<Vec<u16>>,
}

impl TableField {
    /// Builds GF(p^deg) with the deterministic primitive polynomial,
    /// refusing fields larger than `max_order`.
    pub fn new(p: u64, deg: u32, max_order: u64) -> Result<TableField> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        assert!(deg >= 1, "field degree must be positive");
        let order = field_order_checked(p, deg, max_order)?;
        let prim_poly = find_primitive_poly(p, deg)?;
        TableField::from_validated_poly(p, deg, order, prim_poly)
    }

    /// Builds GF(p^deg) from a caller-chosen monic primitive polynomial
    /// (coefficients of x^i over GF(p), length deg + 1). The polynomial is
    /// checked for primitivity; table contents — and everything derived from
    /// them — must not depend on which primitive polynomial is used.
    pub fn with_poly(p: u64, deg: u32, prim_poly: &[u64], max_order: u64) -> Result<TableField> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        assert!(deg >= 1, "field degree must be positive");
        let order = field_order_checked(p, deg, max_order)?;
        let du = deg as usize;
        let shape_ok = prim_poly.len() == du + 1
            && prim_poly[du] == 1
            && prim_poly[0] != 0
            && prim_poly.iter().all(|&c| c < p);
        let group = order - 1;
        if !shape_ok || !poly_generator_has_full_order(prim_poly, p, deg, group, &factorize(group))
        {
            return Err(Error::UnsupportedParams(format!(
                "{prim_poly:?} is not a monic primitive polynomial of degree {deg} over GF({p})"
            )));
        }
        TableField::from_validated_poly(p, deg, order, prim_poly.to_vec())
    }

    fn from_validated_poly(
        p: u64,
        deg: u32,
        order: u64,
        prim_poly: Vec<u64>,
    ) -> Result<TableField> {
        let du = deg as usize;
        let mut exp = vec![0u32; (order - 1) as usize];
        let mut log = vec![u32::MAX; order as usize];
        // Digit vector of the current power of α, starting from α^0 = 1.
        let mut digits = vec![0u64; du];
        digits[0] = 1;
        for (k, slot) in exp.iter_mut().enumerate() {
            let mut packed = 0u64;
            for i in (0..du).rev() {
                packed = packed * p + digits[i];
            }
            *slot = packed as u32;
            debug_assert_eq!(
                log[packed as usize],
                u32::MAX,
                "primitive walk revisited a value"
            );
            log[packed as usize] = k as u32;
            // multiply by α: shift digits up and fold α^deg = −(low part of f)
            let top = digits[du - 1];
            for i in (1..du).rev() {
                digits[i] = digits[i - 1];
            }
            digits[0] = 0;
            if top != 0 {
                for i in 0..du {
                    digits[i] = (digits[i] + (p - prim_poly[i]) % p * top) % p;
                }
            }
        }
        assert!(
            digits[0] == 1 && digits[1..].iter().all(|&c| c == 0),
            "primitive element order mismatch"
        );

        let mut f = TableField {
            p,
            deg,
            order,
            prim_poly,
            exp,
            log,
            trace_basis: Vec::new(),
            trace_tab: OnceLock::new(),
        };
        // Absolute trace of each basis power: Tr(α^i) = Σ_j α^{i p^j}.
        let mut basis = Vec::with_capacity(du);
        for i in 0..deg as u64 {
            let mut acc = El::Zero;
            let mut e = i;
            for _ in 0..deg {
                acc = f.add(acc, El::Pow(e % (order - 1)));
                e = mulrem(e, p, order - 1);
            }
            let v = f.packed_of(acc);
            assert!(
                v < p,
                "trace of a basis power landed outside the prime field"
            );
            basis.push(v);
        }
        f.trace_basis = basis;
        Ok(f)
    }

    /// Convenience constructor with the default size cap.
    pub fn with_default_cap(p: u64, deg: u32) -> Result<TableField> {
        TableField::new(p, deg, DEFAULT_MAX_FIELD)
    }

    /// Packed digit-vector representation of an element.
    pub fn packed_of(&self, x: El) -> u64 {
        match x {
            El::Zero => 0,
            El::Pow(k) => {
                debug_assert!(k < self.order - 1);
                self.exp[k as usize] as u64
            }
        }
    }

    /// Element with the given packed representation.
    pub fn el_from_packed(&self, v: u64) -> El {
        if v == 0 {
            El::Zero
        } else {
            let k = self.log[v as usize];
            debug_assert_ne!(k, u32::MAX, "packed value out of range");
            El::Pow(k as u64)
        }
    }

    /// Adds two packed representations digit-wise mod p.
    pub fn add_packed(&self, a: u64, b: u64) -> u64 {
        if self.p == 2 {
            return a ^ b;
        }
        let mut a = a;
        let mut b = b;
        let mut out = 0u64;
        let mut place = 1u64;
        while a > 0 || b > 0 {
            let s = (a % self.p + b % self.p) % self.p;
            out += s * place;
            place *= self.p;
            a /= self.p;
            b /= self.p;
        }
        out
    }

    pub fn add(&self, x: El, y: El) -> El {
        match (x, y) {
            (El::Zero, z) | (z, El::Zero) => z,
            _ => self.el_from_packed(self.add_packed(self.packed_of(x), self.packed_of(y))),
        }
    }

    pub fn neg(&self, x: El) -> El {
        if self.p == 2 {
            return x;
        }
        match x {
            El::Zero => El::Zero,
            El::Pow(k) => El::Pow((k + (self.order - 1) / 2) % (self.order - 1)),
        }
    }

    pub fn sub(&self, x: El, y: El) -> El {
        self.add(x, self.neg(y))
    }

    pub fn mul(&self, x: El, y: El) -> El {
        match (x, y) {
            (El::Zero, _) | (_, El::Zero) => El::Zero,
            (El::Pow(a), El::Pow(b)) => El::Pow((a + b) % (self.order - 1)),
        }
    }

    pub fn inv(&self, x: El) -> El {
        match x {
            El::Zero => panic!("inverse of zero"),
            El::Pow(0) => El::Pow(0),
            El::Pow(k) => El::Pow(self.order - 1 - k),
        }
    }

    pub fn div(&self, x: El, y: El) -> El {
        self.mul(x, self.inv(y))
    }

    /// x^e for a non-negative integer exponent (0^0 = 1).
    pub fn pow(&self, x: El, e: u64) -> El {
        match x {
            El::Zero => {
                if e == 0 {
                    El::ONE
                } else {
                    El::Zero
                }
            }
            El::Pow(k) => El::Pow(mulrem(k, e % (self.order - 1), self.order - 1)),
        }
    }

    /// x^(p^j), the j-fold characteristic Frobenius.
    pub fn frobenius(&self, x: El, j: u32) -> El {
        self.pow(x, powrem(self.p, j as u64, self.order - 1))
    }

    /// Absolute trace down to GF(p), returned as an integer in [0, p).
    pub fn trace_to_prime(&self, x: El) -> u64 {
        // For big fields compute directly; for small ones build a table once.
        if self.order > (1 << 20) {
            return self.trace_packed_direct(self.packed_of(x));
        }
        let tab = self.trace_tab.get_or_init(|| {
            (0..self.order)
                .map(|v| self.trace_packed_direct(v) as u16)
                .collect()
        });
        tab[self.packed_of(x) as usize] as u64
    }

    fn trace_packed_direct(&self, mut v: u64) -> u64 {
        let mut acc = 0u64;
        for i in 0..self.deg as usize {
            acc = (acc + (v % self.p) * self.trace_basis[i]) % self.p;
            v /= self.p;
        }
        acc
    }

    /// All elements, zero first, then ascending powers of α.
    pub fn elements(&self) -> impl Iterator<Item = El> + '_ {
        std::iter::once(El::Zero).chain((0..self.order - 1).map(El::Pow))
    }

    /// Evaluates a polynomial with coefficients in [0, p) at a field element
    /// (constants of GF(p) pack to themselves in every extension).
    pub fn eval_prime_poly(&self, coeffs: &[u64], x: El) -> El {
        let mut acc = El::Zero;
        for &c in coeffs.iter().rev() {
            acc = self.mul(acc, x);
            acc = self.add(acc, self.el_from_packed(c));
        }
        acc
    }
}

/// Quadratic character η on GF(p^deg)^*: +1 on squares, −1 on non-squares,
/// 0 on zero. Requires odd characteristic.
pub fn quadratic_character(f: &TableField, x: El) -> Result<i32> {
    if f.p == 2 {
        return Err(Error::EvenCharacteristic);
    }
    Ok(match x {
        El::Zero => 0,
        El::Pow(k) => {
            if k % 2 == 0 {
                1
            } else {
                -1
            }
        }
    })
}

// ---------------------------------------------------------------------------
// FieldCtx: GF(q) inside GF(q^m)
// ---------------------------------------------------------------------------

/// The pair GF(q) ⊂ GF(q^m) with q = p^s, both built over GF(p), plus the
/// exponent arithmetic that identifies GF(q) with the order-(q−1) subgroup
/// (and zero) of GF(q^m).
pub struct FieldCtx {
    pub p: u64,
    pub s: u32,
    pub m: u32,
    /// q = p^s.
    pub q: u64,
    /// q^m.
    pub qm: u64,
    pub sub: TableField,
    pub ext: TableField,
    /// (q^m − 1)/(q − 1): subfield elements are the powers of α^t.
    pub t: u64,
    /// sub's generator maps to ext's α^(t·emb_u).
    emb_u: u64,
    /// Inverse of emb_u modulo q − 1.
    emb_u_inv: u64,
    /// Lazily built inverse change-of-basis matrix for GF(q)-coordinates
    /// in the basis {α^i : i < m}; entries mod p, row-major (s·m)².
    coord_inv: OnceLock<Vec<u64>>,
}

impl FieldCtx {
    /// q = p^s must be a prime power, m ≥ 1; q^m is capped at `max_field`.
    pub fn new(p: u64, s: u32, m: u32, max_field: u64) -> Result<FieldCtx> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        assert!(s >= 1 && m >= 1, "field context needs s >= 1 and m >= 1");
        let ext = TableField::new(p, s * m, max_field)?;
        let sub = TableField::new(p, s, max_field)?;
        Ok(FieldCtx::assemble(p, s, m, sub, ext))
    }

    /// Like [`FieldCtx::new`], but building GF(q^m) from a caller-chosen
    /// primitive polynomial. Every quantity the library derives must be
    /// invariant under this choice; the test suite exercises exactly that.
    pub fn with_ext_poly(
        p: u64,
        s: u32,
        m: u32,
        max_field: u64,
        ext_poly: &[u64],
    ) -> Result<FieldCtx> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        assert!(s >= 1 && m >= 1, "field context needs s >= 1 and m >= 1");
        let ext = TableField::with_poly(p, s * m, ext_poly, max_field)?;
        let sub = TableField::new(p, s, max_field)?;
        Ok(FieldCtx::assemble(p, s, m, sub, ext))
    }

    fn assemble(p: u64, s: u32, m: u32, sub: TableField, ext: TableField) -> FieldCtx {
        let q = sub.order;
        let qm = ext.order;
        let t = (qm - 1) / (q - 1);

        // The image of sub's generator in ext is some α^{t·u} that is a root
        // of sub's primitive polynomial; u is determined up to Frobenius, so
        // take the smallest candidate for determinism.
        let mut emb_u = 0u64;
        if q == 2 {
            emb_u = 1; // GF(2) embeds trivially; t = qm − 1 and 1 ↦ 1
        } else {
            for u in 1..q - 1 {
                let cand = El::Pow(mulrem(t, u, qm - 1));
                if ext.eval_prime_poly(&sub.prim_poly, cand).is_zero() {
                    emb_u = u;
                    break;
                }
            }
            assert_ne!(emb_u, 0, "no embedding root found (internal bug)");
        }
        let emb_u_inv = if q == 2 { 1 } else { invrem(emb_u, q - 1) };

        FieldCtx {
            p,
            s,
            m,
            q,
            qm,
            sub,
            ext,
            t,
            emb_u,
            emb_u_inv,
            coord_inv: OnceLock::new(),
        }
    }

    /// Context with the default field-size cap.
    pub fn with_default_cap(p: u64, s: u32, m: u32) -> Result<FieldCtx> {
        FieldCtx::new(p, s, m, DEFAULT_MAX_FIELD)
    }

    /// Builds a context from a prime power q = p^s and extension degree m.
    pub fn for_q(q: u64, m: u32, max_field: u64) -> Result<FieldCtx> {
        let (p, s) = split_prime_power(q)?;
        FieldCtx::new(p, s, m, max_field)
    }

    /// Maps an element of GF(q) into GF(q^m).
    pub fn embed(&self, x: El) -> El {
        match x {
            El::Zero => El::Zero,
            El::Pow(k) => El::Pow(mulrem(
                mulrem(self.t, self.emb_u, self.qm - 1),
                k,
                self.qm - 1,
            )),
        }
    }

    /// Maps an element of GF(q^m) back to GF(q) if it lies in the subfield.
    pub fn to_sub(&self, z: El) -> Option<El> {
        match z {
            El::Zero => Some(El::Zero),
            El::Pow(e) => {
                if e % self.t != 0 {
                    None
                } else {
                    let c = e / self.t;
                    Some(El::Pow(mulrem(c, self.emb_u_inv, self.q - 1)))
                }
            }
        }
    }

    /// Packed GF(q) label (in [0, q)) of a subfield element of GF(q^m).
    /// Panics if the element is not in the subfield.
    pub fn sub_label(&self, z: El) -> u64 {
        let x = self.to_sub(z).expect("element not in GF(q)");
        self.sub.packed_of(x)
    }

    /// Relative trace GF(q^m) → GF(q), returned as an element of `sub`.
    pub fn trace_to_q(&self, z: El) -> El {
        self.trace_subext_to_q(z, self.m)
    }

    /// Relative trace GF(q^mj) → GF(q) for mj | m, where z must lie in the
    /// intermediate field GF(q^mj) ⊆ GF(q^m). Returned as an element of `sub`.
    pub fn trace_subext_to_q(&self, z: El, mj: u32) -> El {
        debug_assert_eq!(self.m % mj, 0, "mj must divide m");
        let mut acc = El::Zero;
        let mut w = z;
        for _ in 0..mj {
            acc = self.ext.add(acc, w);
            w = self.ext.pow(w, self.q);
        }
        debug_assert_eq!(
            self.ext.pow(z, powrem(self.q, mj as u64, self.qm - 1)),
            z,
            "element not in the stated intermediate field"
        );
        self.to_sub(acc)
            .expect("trace landed outside GF(q) (internal bug)")
    }

    /// Absolute trace GF(q^m) → GF(p) as an integer in [0, p).
    pub fn trace_to_p(&self, z: El) -> u64 {
        self.ext.trace_to_prime(z)
    }

    /// Elements of the intermediate field GF(q^mj) ⊆ GF(q^m), zero first.
    pub fn subext_elements(&self, mj: u32) -> Vec<El> {
        assert_eq!(self.m % mj, 0, "mj must divide m");
        let sz = checked_pow(self.q, mj).expect("intermediate field too large");
        let step = (self.qm - 1) / (sz - 1);
        std::iter::once(El::Zero)
            .chain((0..sz - 1).map(|c| El::Pow(c * step)))
            .collect()
    }

    /// GF(q)-coordinates of z in the basis {α^i : i < m} of GF(q^m), as
    /// elements of `sub`. α is primitive, hence of degree m over GF(q), so
    /// this basis is valid.
    pub fn coords_over_sub(&self, z: El) -> Vec<El> {
        let sm = (self.s * self.m) as usize;
        let inv = self.coord_inv.get_or_init(|| {
            // Column (i*s + j) holds the GF(p)-digit vector of α^i · β^j,
            // where β is the embedded generator of GF(q).
            let mut mat = vec![0u64; sm * sm];
            for i in 0..self.m as usize {
                for j in 0..self.s as usize {
                    // β^j (with β the embedded generator of GF(q)) is a
                    // GF(p)-basis of GF(q) because the generator has degree s.
                    let prod = self
                        .ext
                        .mul(El::Pow(i as u64), self.embed(El::Pow(j as u64)));
                    let mut v = self.ext.packed_of(prod);
                    let col = i * self.s as usize + j;
                    for row in 0..sm {
                        mat[row * sm + col] = v % self.p;
                        v /= self.p;
                    }
                }
            }
            invert_matrix_mod_p(&mat, sm, self.p).expect("basis matrix is singular (internal bug)")
        });
        let mut digits = Vec::with_capacity(sm);
        let mut v = self.ext.packed_of(z);
        for _ in 0..sm {
            digits.push(v % self.p);
            v /= self.p;
        }
        let mut out = Vec::with_capacity(self.m as usize);
        for i in 0..self.m as usize {
            let mut packed = 0u64;
            for j in (0..self.s as usize).rev() {
                let row = i * self.s as usize + j;
                let y: u64 = (0..sm)
                    .map(|c| inv[row * sm + c] * digits[c] % self.p)
                    .sum::<u64>()
                    % self.p;
                packed = packed * self.p + y;
            }
            out.push(self.sub.el_from_packed(packed));
        }
        out
    }
}

/// Splits a prime power q into (p, s), rejecting non-prime-powers.
pub fn split_prime_power(q: u64) -> Result<(u64, u32)> {
    if q < 2 {
        return Err(Error::NotPrime(q));
    }
    let f = factorize(q);
    if f.len() != 1 {
        return Err(Error::NotPrime(q));
    }
    Ok((f[0].0, f[0].1))
}

/// Gauss–Jordan inversion of an n×n matrix over GF(p); row-major input.
fn invert_matrix_mod_p(mat: &[u64], n: usize, p: u64) -> Option<Vec<u64>> {
    let mut a = mat.to_vec();
    let mut inv = vec![0u64; n * n];
    for i in 0..n {
        inv[i * n + i] = 1;
    }
    for col in 0..n {
        let pivot = (col..n).find(|&r| a[r * n + col] != 0)?;
        if pivot != col {
            for j in 0..n {
                a.swap(col * n + j, pivot * n + j);
                inv.swap(col * n + j, pivot * n + j);
            }
        }
        let pinv = invrem(a[col * n + col], p);
        for j in 0..n {
            a[col * n + j] = a[col * n + j] * pinv % p;
            inv[col * n + j] = inv[col * n + j] * pinv % p;
        }
        for r in 0..n {
            if r == col || a[r * n + col] == 0 {
                continue;
            }
            let factor = a[r * n + col];
            for j in 0..n {
                a[r * n + j] = (a[r * n + j] + (p - factor) * a[col * n + j]) % p;
                inv[r * n + j] = (inv[r * n + j] + (p - factor) * inv[col * n + j]) % p;
            }
        }
    }
    Some(inv)
}

/// Rank of an r×c matrix with entries in `sub`, by Gaussian elimination.
pub fn rank_over_field(f: &TableField, mat: &mut Vec<Vec<El>>) -> u32 {
    let rows = mat.len();
    if rows == 0 {
        return 0;
    }
    let cols = mat[0].len();
    let mut rank = 0usize;
    for col in 0..cols {
        let Some(pr) = (rank..rows).find(|&r| !mat[r][col].is_zero()) else {
            continue;
        };
        mat.swap(rank, pr);
        let pinv = f.inv(mat[rank][col]);
        for j in col..cols {
            mat[rank][j] = f.mul(mat[rank][j], pinv);
        }
        for r in 0..rows {
            if r == rank || mat[r][col].is_zero() {
                continue;
            }
            let factor = mat[r][col];
            for j in col..cols {
                let sub = f.mul(factor, mat[rank][j]);
                mat[r][j] = f.sub(mat[r][j], sub);
            }
        }
        rank += 1;
        if rank == rows {
            break;
        }
    }
    rank as u32
}
