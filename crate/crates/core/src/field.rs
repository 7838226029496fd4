//! Arithmetic in GF(p^k) on a polynomial basis. The modulus is the
//! lexicographically least monic irreducible polynomial of degree k, found by
//! exhaustive search, so a given (p, k) always yields the same field.

use crate::numtheory::is_prime_u64;
use crate::PcgError;

/// An element of GF(p^k), stored canonically as the integer
/// `c_0 + c_1 p + ... + c_{k-1} p^{k-1}` of its basis coefficients.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldElement(pub u16);

impl FieldElement {
    pub const ZERO: FieldElement = FieldElement(0);
    pub const ONE: FieldElement = FieldElement(1);

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

/// A concrete GF(p^k) with `p^k <= 2^16` and `1 <= k <= 8`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FieldCtx {
    p: u64,
    k: u32,
    q: u64,
    /// Monic irreducible modulus, `modulus[i]` = coefficient of x^i,
    /// `modulus[k] = 1`.
    modulus: Vec<u64>,
    /// Dense multiplication table for small fields (q <= 256).
    mul_table: Option<Vec<u16>>,
}

fn poly_rem(mut poly: Vec<u64>, divisor: &[u64], p: u64) -> Vec<u64> {
    let d = divisor.len() - 1;
    // divisor is monic
    while poly.len() > d {
        let lead = *poly.last().unwrap() % p;
        let shift = poly.len() - 1 - d;
        if lead != 0 {
            for i in 0..=d {
                let sub = (divisor[i] * lead) % p;
                let idx = shift + i;
                poly[idx] = (poly[idx] + p - sub % p) % p;
            }
        }
        poly.pop();
    }
    while poly.len() > 1 && *poly.last().unwrap() == 0 {
        poly.pop();
    }
    poly
}

fn poly_is_irreducible(candidate: &[u64], p: u64) -> bool {
    let k = candidate.len() - 1;
    // No root in GF(p).
    for x in 0..p {
        let mut acc = 0u64;
        for &c in candidate.iter().rev() {
            acc = (acc * x + c) % p;
        }
        if acc == 0 {
            return false;
        }
    }
    if k <= 3 {
        // Degree 2 or 3 with no root is irreducible.
        return true;
    }
    // Trial division by every monic polynomial of degree 2..=k/2 (degree-1
    // factors were excluded by the root check).
    for d in 2..=(k / 2) {
        let count = p.pow(d as u32);
        for v in 0..count {
            let mut divisor = vec![0u64; d + 1];
            let mut t = v;
            for item in divisor.iter_mut().take(d) {
                *item = t % p;
                t /= p;
            }
            divisor[d] = 1;
            let rem = poly_rem(candidate.to_vec(), &divisor, p);
            if rem.len() == 1 && rem[0] == 0 {
                return false;
            }
        }
    }
    true
}

/// Builds GF(p^k). Rejects non-prime p, out-of-range degrees, and fields
/// larger than 2^16.
pub fn field_build(p: u64, k: u32) -> Result<FieldCtx, PcgError> {
    if !is_prime_u64(p) {
        return Err(PcgError::InvalidParameter(format!(
            "field characteristic {p} is not prime"
        )));
    }
    if !(1..=8).contains(&k) {
        return Err(PcgError::InvalidParameter(format!(
            "field degree {k} out of range 1..=8"
        )));
    }
    let q = p.checked_pow(k).filter(|&q| q <= 1 << 16).ok_or_else(|| {
        PcgError::InvalidParameter(format!("field size {p}^{k} exceeds 2^16"))
    })?;
    let mut modulus = None;
    for v in 0..q {
        let mut cand = vec![0u64; k as usize + 1];
        let mut t = v;
        for item in cand.iter_mut().take(k as usize) {
            *item = t % p;
            t /= p;
        }
        cand[k as usize] = 1;
        if poly_is_irreducible(&cand, p) {
            modulus = Some(cand);
            break;
        }
    }
    let modulus = modulus.expect("an irreducible polynomial of every degree exists");
    let mut ctx = FieldCtx {
        p,
        k,
        q,
        modulus,
        mul_table: None,
    };
    if q <= 256 {
        let mut table = vec![0u16; (q * q) as usize];
        for a in 0..q {
            for b in a..q {
                let v = ctx.mul_raw(FieldElement(a as u16), FieldElement(b as u16)).0;
                table[(a * q + b) as usize] = v;
                table[(b * q + a) as usize] = v;
            }
        }
        ctx.mul_table = Some(table);
    }
    Ok(ctx)
}

impl FieldCtx {
    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.k
    }

    /// Field size p^k.
    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    /// Polynomial-basis coefficients of `a`, constant term first.
    pub fn coeffs(&self, a: FieldElement) -> Vec<u64> {
        let mut out = vec![0u64; self.k as usize];
        let mut v = a.0 as u64;
        for c in out.iter_mut() {
            *c = v % self.p;
            v /= self.p;
        }
        out
    }

    pub fn from_coeffs(&self, coeffs: &[u64]) -> FieldElement {
        assert!(coeffs.len() <= self.k as usize);
        let mut v = 0u64;
        for &c in coeffs.iter().rev() {
            v = v * self.p + c % self.p;
        }
        FieldElement(v as u16)
    }

    pub fn element(&self, value: u64) -> FieldElement {
        assert!(value < self.q);
        FieldElement(value as u16)
    }

    pub fn elements(&self) -> impl Iterator<Item = FieldElement> {
        (0..self.q as u16).map(FieldElement)
    }

    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        if self.p == 2 {
            return FieldElement(a.0 ^ b.0);
        }
        let mut va = a.0 as u64;
        let mut vb = b.0 as u64;
        let mut out = 0u64;
        let mut place = 1u64;
        for _ in 0..self.k {
            out += place * ((va % self.p + vb % self.p) % self.p);
            va /= self.p;
            vb /= self.p;
            place *= self.p;
        }
        FieldElement(out as u16)
    }

    pub fn neg(&self, a: FieldElement) -> FieldElement {
        if self.p == 2 {
            return a;
        }
        let mut va = a.0 as u64;
        let mut out = 0u64;
        let mut place = 1u64;
        for _ in 0..self.k {
            out += place * ((self.p - va % self.p) % self.p);
            va /= self.p;
            place *= self.p;
        }
        FieldElement(out as u16)
    }

    pub fn sub(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.add(a, self.neg(b))
    }

    fn mul_raw(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        let ca = self.coeffs(a);
        let cb = self.coeffs(b);
        let k = self.k as usize;
        let mut prod = vec![0u64; 2 * k - 1];
        for (i, &x) in ca.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in cb.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x * y) % self.p;
            }
        }
        let rem = poly_rem(prod, &self.modulus, self.p);
        self.from_coeffs(&rem)
    }

    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        match &self.mul_table {
            Some(t) => FieldElement(t[(a.0 as u64 * self.q + b.0 as u64) as usize]),
            None => self.mul_raw(a, b),
        }
    }

    pub fn pow(&self, a: FieldElement, mut e: u64) -> FieldElement {
        let mut base = a;
        let mut acc = FieldElement::ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Multiplicative inverse; inverting zero is an error.
    pub fn inv(&self, a: FieldElement) -> Result<FieldElement, PcgError> {
        if a.is_zero() {
            return Err(PcgError::InvalidParameter(
                "inversion of zero field element".into(),
            ));
        }
        Ok(self.pow(a, self.q - 2))
    }

    /// Least `t >= 1` with `a^t = 1`, via the prime factorization of q - 1.
    pub fn multiplicative_order(&self, a: FieldElement) -> u64 {
        assert!(!a.is_zero(), "order of zero is undefined");
        let group = self.q - 1;
        let mut order = group;
        let mut rest = group;
        let mut d = 2u64;
        let mut primes = Vec::new();
        while d * d <= rest {
            if rest % d == 0 {
                primes.push(d);
                while rest % d == 0 {
                    rest /= d;
                }
            }
            d += 1;
        }
        if rest > 1 {
            primes.push(rest);
        }
        for p in primes {
            while order % p == 0 && self.pow(a, order / p) == FieldElement::ONE {
                order /= p;
            }
        }
        order
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn build_small_fields() {
        let f2 = field_build(2, 1).unwrap();
        assert_eq!(f2.modulus(), &[0, 1]); // x
        let f4 = field_build(2, 2).unwrap();
        assert_eq!(f4.modulus(), &[1, 1, 1]); // x^2 + x + 1
        let f3 = field_build(3, 1).unwrap();
        assert_eq!(f3.q(), 3);
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(field_build(4, 1).is_err());
        assert!(field_build(2, 0).is_err());
        assert!(field_build(2, 9).is_err());
        assert!(field_build(257, 2).is_err()); // 257^2 > 2^16
    }

    #[test]
    fn gf4_arithmetic() {
        let f = field_build(2, 2).unwrap();
        let x = f.element(2); // the polynomial x
        // x * x reduces to x + 1 under x^2 + x + 1.
        assert_eq!(f.mul(x, x), f.element(3));
        assert_eq!(f.multiplicative_order(x), 3);
    }

    #[test]
    fn gf5_inverse() {
        let f = field_build(5, 1).unwrap();
        assert_eq!(f.inv(f.element(2)).unwrap(), f.element(3));
        assert!(f.inv(FieldElement::ZERO).is_err());
    }

    #[test]
    fn additive_identity() {
        let f = field_build(7, 2).unwrap();
        for a in f.elements() {
            assert_eq!(f.add(a, FieldElement::ZERO), a);
        }
    }

    #[test]
    fn gf9_has_a_generator_of_order_8() {
        let f = field_build(3, 2).unwrap();
        // Exhaustive power enumeration for each candidate.
        let mut found = false;
        for a in f.elements().filter(|a| !a.is_zero()) {
            let mut seen = std::collections::HashSet::new();
            let mut v = FieldElement::ONE;
            for _ in 0..8 {
                v = f.mul(v, a);
                seen.insert(v);
            }
            if seen.len() == 8 {
                assert_eq!(f.multiplicative_order(a), 8);
                found = true;
            }
        }
        assert!(found);
    }

    #[test]
    fn field_axioms_all_small_fields() {
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
        for (p, kmax) in [(2u64, 8u32), (3, 5), (5, 3), (7, 2), (11, 2), (13, 2)] {
            for k in 1..=kmax {
                if p.pow(k) > 256 {
                    continue;
                }
                let f = field_build(p, k).unwrap();
                for _ in 0..200 {
                    let a = f.element(rng.gen_range(0..f.q()));
                    let b = f.element(rng.gen_range(0..f.q()));
                    let c = f.element(rng.gen_range(0..f.q()));
                    assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
                    assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
                    assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                    assert_eq!(f.add(a, f.neg(a)), FieldElement::ZERO);
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                    if !a.is_zero() {
                        assert_eq!(f.mul(a, f.inv(a).unwrap()), FieldElement::ONE);
                    }
                }
                // Orders divide q - 1.
                for a in f.elements().filter(|a| !a.is_zero()) {
                    assert_eq!((f.q() - 1) % f.multiplicative_order(a), 0);
                }
            }
        }
    }
}
