//! Univariate polynomials over a `TableField`, plus the two constructions
//! cyclic-code work needs: minimal polynomials of extension-field elements
//! and the parity-check companion of a generator.
//!
//! A polynomial is a coefficient vector, lowest degree first, with no
//! trailing zeros (the zero polynomial is the empty vector). All operations
//! take the field explicitly so that `Poly` values stay plain data.

use crate::field::{El, FieldCtx, TableField};
use crate::{Error, Result};

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Poly {
    pub c: Vec<El>,
}

impl Poly {
    pub fn zero() -> Poly {
        Poly { c: Vec::new() }
    }

    pub fn one() -> Poly {
        Poly { c: vec![El::ONE] }
    }

    pub fn x() -> Poly {
        Poly {
            c: vec![El::Zero, El::ONE],
        }
    }

    pub fn from_coeffs(mut c: Vec<El>) -> Poly {
        while c.last() == Some(&El::Zero) {
            c.pop();
        }
        Poly { c }
    }

    /// x^n − 1.
    pub fn x_pow_minus_one(f: &TableField, n: u64) -> Poly {
        let mut c = vec![El::Zero; n as usize + 1];
        c[0] = f.neg(El::ONE);
        c[n as usize] = El::ONE;
        Poly { c }
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    /// Degree, or None for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<El> {
        self.c.last().copied()
    }

    pub fn add(&self, f: &TableField, other: &Poly) -> Poly {
        let n = self.c.len().max(other.c.len());
        let mut c = Vec::with_capacity(n);
        for i in 0..n {
            let a = self.c.get(i).copied().unwrap_or(El::Zero);
            let b = other.c.get(i).copied().unwrap_or(El::Zero);
            c.push(f.add(a, b));
        }
        Poly::from_coeffs(c)
    }

    pub fn sub(&self, f: &TableField, other: &Poly) -> Poly {
        self.add(f, &other.scale(f, f.neg(El::ONE)))
    }

    pub fn scale(&self, f: &TableField, k: El) -> Poly {
        if k.is_zero() {
            return Poly::zero();
        }
        Poly {
            c: self.c.iter().map(|&a| f.mul(a, k)).collect(),
        }
    }

    pub fn mul(&self, f: &TableField, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut c = vec![El::Zero; self.c.len() + other.c.len() - 1];
        for (i, &a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in other.c.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                c[i + j] = f.add(c[i + j], f.mul(a, b));
            }
        }
        Poly::from_coeffs(c)
    }

    /// Euclidean division: self = q·div + r with deg r < deg div.
    pub fn divmod(&self, f: &TableField, div: &Poly) -> Result<(Poly, Poly)> {
        if div.is_zero() {
            return Err(Error::DivisionByZeroPoly);
        }
        let dd = div.degree().unwrap();
        let lead_inv = f.inv(div.leading().unwrap());
        let mut rem = self.c.clone();
        let mut quo = vec![El::Zero; self.c.len().saturating_sub(dd)];
        while rem.len() > dd {
            let k = rem.len() - 1;
            let coef = f.mul(*rem.last().unwrap(), lead_inv);
            if !coef.is_zero() {
                quo[k - dd] = coef;
                for (j, &dc) in div.c.iter().enumerate() {
                    let t = f.mul(coef, dc);
                    rem[k - dd + j] = f.sub(rem[k - dd + j], t);
                }
            }
            debug_assert!(rem.last().unwrap().is_zero());
            rem.pop();
            while rem.last() == Some(&El::Zero) {
                rem.pop();
            }
            if rem.len() <= dd {
                break;
            }
        }
        Ok((Poly::from_coeffs(quo), Poly::from_coeffs(rem)))
    }

    pub fn rem(&self, f: &TableField, div: &Poly) -> Result<Poly> {
        Ok(self.divmod(f, div)?.1)
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, f: &TableField, other: &Poly) -> Result<Poly> {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(f, &b)?;
            a = b;
            b = r;
        }
        Ok(a.monic(f))
    }

    /// Least common multiple (monic).
    pub fn lcm(&self, f: &TableField, other: &Poly) -> Result<Poly> {
        if self.is_zero() || other.is_zero() {
            return Ok(Poly::zero());
        }
        let g = self.gcd(f, other)?;
        let (q, r) = self.divmod(f, &g)?;
        debug_assert!(r.is_zero());
        Ok(q.mul(f, other).monic(f))
    }

    pub fn monic(&self, f: &TableField) -> Poly {
        match self.leading() {
            None | Some(El::Pow(0)) => self.clone(),
            Some(lead) => self.scale(f, f.inv(lead)),
        }
    }

    pub fn eval(&self, f: &TableField, x: El) -> El {
        let mut acc = El::Zero;
        for &c in self.c.iter().rev() {
            acc = f.add(f.mul(acc, x), c);
        }
        acc
    }

    /// Coefficients as packed labels in [0, field order), lowest degree first.
    pub fn to_labels(&self, f: &TableField) -> Vec<u64> {
        self.c.iter().map(|&c| f.packed_of(c)).collect()
    }
}

/// Minimal polynomial over GF(q) of θ^i, where θ = α^λ has order n = (q^m−1)/λ.
/// Computed as Π_{j ∈ C_i} (x − θ^j) over GF(q^m) and mapped down; every
/// coefficient must land in GF(q), which doubles as a sanity check that the
/// exponent orbit really was Frobenius-closed.
///
/// The returned coefficients are elements of `ctx.sub`.
pub fn minimal_polynomial(ctx: &FieldCtx, n: u64, i: u64) -> Result<Poly> {
    if (ctx.qm - 1) % n != 0 {
        return Err(Error::NotADivisor(format!(
            "n = {n} must divide q^m - 1 = {}",
            ctx.qm - 1
        )));
    }
    if i >= n {
        return Err(Error::OutOfRange(i, n));
    }
    let lambda = (ctx.qm - 1) / n;
    let mut prod = product_over_orbit(ctx, n, lambda, std::iter::once(i));
    let mut c = Vec::with_capacity(prod.len());
    for co in prod.drain(..) {
        c.push(ctx.to_sub(co).ok_or(Error::CoefficientNotInSubfield)?);
    }
    Ok(Poly::from_coeffs(c))
}

/// Π over the q-orbits of the given exponents i (mod n) of (x − θ^{j}),
/// θ = α^λ, computed in the extension field. Exponents whose orbit was
/// already consumed by an earlier seed are multiplied in again — callers
/// pass orbit representatives. Coefficients come back in `ctx.ext`.
pub(crate) fn product_over_orbit(
    ctx: &FieldCtx,
    n: u64,
    lambda: u64,
    seeds: impl Iterator<Item = u64>,
) -> Vec<El> {
    let mut prod = vec![El::ONE];
    for i in seeds {
        let mut j = i;
        loop {
            let root = El::Pow(crate::field::mulrem(lambda, j, ctx.qm - 1));
            let neg_root = ctx.ext.neg(root);
            // prod ← prod · (x − root), in place
            prod.push(El::Zero);
            for k in (1..prod.len()).rev() {
                let keep = ctx.ext.mul(prod[k], neg_root);
                prod[k] = ctx.ext.add(prod[k - 1], keep);
            }
            prod[0] = ctx.ext.mul(prod[0], neg_root);
            j = crate::field::mulrem(j, ctx.q, n);
            if j == i {
                break;
            }
        }
    }
    prod
}

/// The parity-check companion h = (x^n − 1)/g over the given field;
/// errors if g does not divide x^n − 1.
pub fn parity_check(f: &TableField, n: u64, g: &Poly) -> Result<Poly> {
    let (h, r) = Poly::x_pow_minus_one(f, n).divmod(f, g)?;
    if !r.is_zero() {
        return Err(Error::NotADivisor(
            "generator polynomial does not divide x^n - 1".into(),
        ));
    }
    Ok(h)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::TableField;

    fn f3() -> TableField {
        TableField::with_default_cap(3, 1).unwrap()
    }

    #[test]
    fn divmod_reconstructs() {
        let f = f3();
        let a = Poly::from_coeffs(vec![El::ONE, El::Zero, El::Pow(1), El::ONE]);
        let b = Poly::from_coeffs(vec![El::Pow(1), El::ONE]);
        let (q, r) = a.divmod(&f, &b).unwrap();
        let back = q.mul(&f, &b).add(&f, &r);
        assert_eq!(back, a);
        assert!(r.degree() < b.degree());
    }

    #[test]
    fn gcd_divides_both() {
        let f = f3();
        let a = Poly::x_pow_minus_one(&f, 8);
        let b = Poly::x_pow_minus_one(&f, 12);
        let g = a.gcd(&f, &b).unwrap();
        // gcd(x^8−1, x^12−1) = x^gcd(8,12)−1 = x^4−1
        assert_eq!(g, Poly::x_pow_minus_one(&f, 4));
        assert!(a.rem(&f, &g).unwrap().is_zero());
        assert!(b.rem(&f, &g).unwrap().is_zero());
    }

    #[test]
    fn division_by_zero_is_an_error() {
        let f = f3();
        let a = Poly::one();
        assert!(matches!(
            a.divmod(&f, &Poly::zero()),
            Err(Error::DivisionByZeroPoly)
        ));
    }

    #[test]
    fn minimal_polynomials_factor_x_n_minus_one() {
        // n = 13 = (3³−1)/2; the 3-cyclotomic cosets mod 13 have leaders
        // 0, 1, 2, 4, 7 and the minimal polynomials multiply back to x¹³−1.
        let ctx = FieldCtx::with_default_cap(3, 1, 3).unwrap();
        let n = 13;
        let mut prod = Poly::one();
        for leader in [0u64, 1, 2, 4, 7] {
            let mp = minimal_polynomial(&ctx, n, leader).unwrap();
            assert_eq!(mp.leading(), Some(El::ONE), "minimal polynomial is monic");
            prod = prod.mul(&ctx.sub, &mp);
        }
        assert_eq!(prod, Poly::x_pow_minus_one(&ctx.sub, n));
    }

    #[test]
    fn parity_check_complements_generator() {
        let ctx = FieldCtx::with_default_cap(3, 1, 3).unwrap();
        let g = minimal_polynomial(&ctx, 13, 1).unwrap();
        let h = parity_check(&ctx.sub, 13, &g).unwrap();
        assert_eq!(h.mul(&ctx.sub, &g), Poly::x_pow_minus_one(&ctx.sub, 13));
        assert!(matches!(
            parity_check(&ctx.sub, 12, &g),
            Err(Error::NotADivisor(_))
        ));
    }

    #[test]
    fn out_of_range_exponent_is_rejected() {
        let ctx = FieldCtx::with_default_cap(3, 1, 3).unwrap();
        assert!(matches!(
            minimal_polynomial(&ctx, 13, 13),
            Err(Error::OutOfRange(13, 13))
        ));
        assert!(matches!(
            minimal_polynomial(&ctx, 12, 1),
            Err(Error::NotADivisor(_))
        ));
    }
}
