//! Exact arithmetic in F_q = F_{p^e}.
//!
//! An element is stored as the integer `c0 + c1*p + ... + c_{e-1}*p^{e-1}`
//! built from its coefficient vector over the polynomial basis. All
//! arithmetic goes through tables built once per field from honest
//! polynomial arithmetic modulo the defining polynomial.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Largest field order for which tables are built.
pub const MAX_FIELD_ORDER: u32 = 256;

/// A finite field together with its multiplication tables.
pub struct FieldSpec {
    p: u32,
    e: u32,
    q: u32,
    modulus: Vec<u32>,
    add: Vec<u32>,
    mul: Vec<u32>,
    neg: Vec<u32>,
    inv: Vec<u32>,
    // frob[j][x] = x^(p^j)
    frob: Vec<Vec<u32>>,
    primitive: u32,
}

/// Shared handle to a field; every matrix and code carries one.
pub type Field = Arc<FieldSpec>;

impl fmt::Debug for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "F_{}(p={}, e={}, modulus={:?})",
            self.q, self.p, self.e, self.modulus
        )
    }
}

impl PartialEq for FieldSpec {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.e == other.e
    }
}
impl Eq for FieldSpec {}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Splits q into (p, e) with q = p^e, using the smallest prime divisor.
pub fn split_prime_power(q: u64) -> Result<(u32, u32)> {
    if q < 2 {
        return Err(Error::NotPrimePower(q));
    }
    let mut p = 2;
    while !q.is_multiple_of(p) {
        p += 1;
    }
    let mut rest = q;
    let mut e = 0;
    while rest.is_multiple_of(p) {
        rest /= p;
        e += 1;
    }
    if rest != 1 {
        return Err(Error::NotPrimePower(q));
    }
    Ok((p as u32, e))
}

// Polynomials over F_p as coefficient vectors, low degree first.

fn trim(mut a: Vec<u32>) -> Vec<u32> {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

fn poly_mul(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u32; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % p;
        }
    }
    trim(out)
}

/// Remainder of `a` modulo the monic polynomial `m`.
fn poly_rem(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    let mut r = trim(a.to_vec());
    let dm = m.len() - 1;
    while r.len() > dm {
        let lead = *r.last().unwrap();
        let shift = r.len() - 1 - dm;
        for (i, &c) in m.iter().enumerate() {
            r[shift + i] = (r[shift + i] + p - (lead * c) % p) % p;
        }
        r = trim(r);
    }
    r
}

fn monic_of_degree(d: u32, index: u64, p: u32) -> Vec<u32> {
    // index enumerates lower coefficients with c0 most significant
    let mut c = vec![0u32; d as usize + 1];
    let mut t = index;
    for i in (0..d as usize).rev() {
        c[i] = (t % p as u64) as u32;
        t /= p as u64;
    }
    c[d as usize] = 1;
    c
}

fn is_irreducible(f: &[u32], p: u32) -> bool {
    let deg = (f.len() - 1) as u32;
    for d in 1..=deg / 2 {
        for idx in 0..(p as u64).pow(d) {
            let g = monic_of_degree(d, idx, p);
            if poly_rem(f, &g, p).is_empty() {
                return false;
            }
        }
    }
    true
}

/// Lexicographically smallest monic irreducible polynomial of degree e,
/// coefficients compared from the constant term upward.
pub fn default_modulus(p: u32, e: u32) -> Vec<u32> {
    (0..(p as u64).pow(e))
        .map(|idx| monic_of_degree(e, idx, p))
        .find(|f| is_irreducible(f, p))
        .expect("an irreducible polynomial exists in every degree")
}

impl FieldSpec {
    /// Builds F_{p^e} with the default modulus.
    pub fn new(p: u32, e: u32) -> Result<Field> {
        if !is_prime(p as u64) {
            return Err(Error::NotPrime(p as u64));
        }
        if e < 1 {
            return Err(Error::ZeroDegree);
        }
        let q = (p as u64).checked_pow(e).unwrap_or(u64::MAX);
        crate::error::guard("field order", q as u128, MAX_FIELD_ORDER as u128)?;
        let q = q as u32;
        let modulus = default_modulus(p, e);

        let to_coeffs = |x: u32| -> Vec<u32> {
            let mut c = Vec::with_capacity(e as usize);
            let mut t = x;
            for _ in 0..e {
                c.push(t % p);
                t /= p;
            }
            c
        };
        let from_coeffs = |c: &[u32]| -> u32 { c.iter().rev().fold(0, |acc, &d| acc * p + d) };

        let n = q as usize;
        let mut add = vec![0; n * n];
        let mut mul = vec![0; n * n];
        for a in 0..q {
            let ca = to_coeffs(a);
            for b in 0..q {
                let cb = to_coeffs(b);
                let s: Vec<u32> = ca.iter().zip(&cb).map(|(x, y)| (x + y) % p).collect();
                add[(a * q + b) as usize] = from_coeffs(&s);
                let prod = poly_rem(
                    &poly_mul(&trim(ca.clone()), &trim(cb.clone()), p),
                    &modulus,
                    p,
                );
                mul[(a * q + b) as usize] = from_coeffs(&prod);
            }
        }
        let mut neg = vec![0; n];
        let mut inv = vec![0; n];
        for a in 0..q {
            for b in 0..q {
                if add[(a * q + b) as usize] == 0 {
                    neg[a as usize] = b;
                }
                if mul[(a * q + b) as usize] == 1 {
                    inv[a as usize] = b;
                }
            }
        }
        let pow_table = |x: u32, k: u64| -> u32 {
            let mut r = 1u32;
            for _ in 0..k {
                r = mul[(r * q + x) as usize];
            }
            r
        };
        let mut frob = Vec::with_capacity(e as usize);
        for j in 0..e {
            let k = (p as u64).pow(j);
            frob.push(
                (0..q)
                    .map(|x| if x == 0 { 0 } else { pow_table(x, k) })
                    .collect(),
            );
        }
        let primitive = (1..q)
            .find(|&g| {
                let mut r = g;
                let mut ord = 1;
                while r != 1 {
                    r = mul[(r * q + g) as usize];
                    ord += 1;
                }
                ord == q - 1
            })
            .unwrap_or(1);
        Ok(Arc::new(FieldSpec {
            p,
            e,
            q,
            modulus,
            add,
            mul,
            neg,
            inv,
            frob,
            primitive,
        }))
    }

    /// Builds F_q, reading q as p^e with the smallest prime p.
    pub fn from_order(q: u64) -> Result<Field> {
        let (p, e) = split_prime_power(q)?;
        FieldSpec::new(p, e)
    }

    pub fn p(&self) -> u32 {
        self.p
    }
    pub fn e(&self) -> u32 {
        self.e
    }
    pub fn q(&self) -> u32 {
        self.q
    }
    /// Defining polynomial, low degree first, including the leading 1.
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }
    pub fn primitive_element(&self) -> u32 {
        self.primitive
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        self.add[(a * self.q + b) as usize]
    }
    #[inline]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg[b as usize])
    }
    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        self.neg[a as usize]
    }
    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        self.mul[(a * self.q + b) as usize]
    }
    /// Inverse of a nonzero element; zero maps to zero.
    #[inline]
    pub fn inv(&self, a: u32) -> u32 {
        debug_assert!(a != 0, "inverse of zero");
        self.inv[a as usize]
    }
    pub fn try_inv(&self, a: u32) -> Result<u32> {
        if a == 0 {
            Err(Error::ZeroInverse)
        } else {
            Ok(self.inv[a as usize])
        }
    }
    #[inline]
    pub fn div(&self, a: u32, b: u32) -> u32 {
        self.mul(a, self.inv(b))
    }

    /// a^k; negative k goes through the inverse.
    pub fn pow(&self, a: u32, k: i64) -> Result<u32> {
        let base = if k < 0 { self.try_inv(a)? } else { a };
        let mut exp = k.unsigned_abs();
        let mut r = 1;
        let mut b = base;
        while exp > 0 {
            if exp & 1 == 1 {
                r = self.mul(r, b);
            }
            b = self.mul(b, b);
            exp >>= 1;
        }
        Ok(r)
    }

    /// x ↦ x^(p^j).
    #[inline]
    pub fn frobenius(&self, j: u32, a: u32) -> u32 {
        self.frob[(j % self.e) as usize][a as usize]
    }

    /// Image of an integer in the prime subfield.
    pub fn from_int(&self, n: i64) -> u32 {
        n.rem_euclid(self.p as i64) as u32
    }

    pub fn coeffs(&self, a: u32) -> Vec<u32> {
        let mut c = Vec::with_capacity(self.e as usize);
        let mut t = a;
        for _ in 0..self.e {
            c.push(t % self.p);
            t /= self.p;
        }
        c
    }

    pub fn from_coeffs(&self, c: &[u32]) -> Result<u32> {
        if c.len() > self.e as usize || c.iter().any(|&d| d >= self.p) {
            return Err(Error::Parse(format!("bad coefficient vector {c:?}")));
        }
        Ok(c.iter().rev().fold(0, |acc, &d| acc * self.p + d))
    }

    pub fn elements(&self) -> std::ops::Range<u32> {
        0..self.q
    }

    pub fn nonzero(&self) -> std::ops::Range<u32> {
        1..self.q
    }

    /// Multiplicative order of a nonzero element.
    pub fn order(&self, a: u32) -> u32 {
        let mut r = a;
        let mut k = 1;
        while r != 1 {
            r = self.mul(r, a);
            k += 1;
        }
        k
    }

    /// Bare integer for prime fields, `[c0,c1,...]` otherwise.
    pub fn format(&self, a: u32) -> String {
        if self.e == 1 {
            a.to_string()
        } else {
            let parts: Vec<String> = self.coeffs(a).iter().map(|c| c.to_string()).collect();
            format!("[{}]", parts.join(","))
        }
    }

    pub fn parse(&self, s: &str) -> Result<u32> {
        let s = s.trim();
        if let Some(inner) = s.strip_prefix('[').and_then(|t| t.strip_suffix(']')) {
            let c: std::result::Result<Vec<u32>, _> =
                inner.split(',').map(|t| t.trim().parse::<u32>()).collect();
            let c = c.map_err(|err| Error::Parse(format!("{s}: {err}")))?;
            self.from_coeffs(&c)
        } else {
            // bare integers name elements of the prime subfield
            let v: i64 = s
                .parse()
                .map_err(|err| Error::Parse(format!("{s}: {err}")))?;
            Ok(self.from_int(v))
        }
    }
}

/// Constructs F_{p^e}.
pub fn fq_make(p: u32, e: u32) -> Result<Field> {
    FieldSpec::new(p, e)
}

/// An element bundled with its field, for callers outside the hot paths.
#[derive(Clone)]
pub struct FieldElement {
    pub spec: Field,
    pub value: u32,
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.spec.format(self.value))
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.spec.format(self.value))
    }
}

impl PartialEq for FieldElement {
    fn eq(&self, other: &Self) -> bool {
        *self.spec == *other.spec && self.value == other.value
    }
}
impl Eq for FieldElement {}

impl FieldElement {
    pub fn new(spec: &Field, value: u32) -> Result<Self> {
        if value >= spec.q() {
            return Err(Error::Parse(format!(
                "{value} is not an element of F_{}",
                spec.q()
            )));
        }
        Ok(FieldElement {
            spec: spec.clone(),
            value,
        })
    }

    pub fn coeffs(&self) -> Vec<u32> {
        self.spec.coeffs(self.value)
    }

    fn same(&self, other: &Self) -> Result<()> {
        if *self.spec == *other.spec {
            Ok(())
        } else {
            Err(Error::FieldMismatch)
        }
    }

    fn with(&self, value: u32) -> Self {
        FieldElement {
            spec: self.spec.clone(),
            value,
        }
    }
}

pub fn fq_add(a: &FieldElement, b: &FieldElement) -> Result<FieldElement> {
    a.same(b)?;
    Ok(a.with(a.spec.add(a.value, b.value)))
}

pub fn fq_mul(a: &FieldElement, b: &FieldElement) -> Result<FieldElement> {
    a.same(b)?;
    Ok(a.with(a.spec.mul(a.value, b.value)))
}

pub fn fq_inv(a: &FieldElement) -> Result<FieldElement> {
    Ok(a.with(a.spec.try_inv(a.value)?))
}

pub fn fq_pow(a: &FieldElement, k: i64) -> Result<FieldElement> {
    Ok(a.with(a.spec.pow(a.value, k)?))
}

/// x ↦ x^(p^j), j in [0, e).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct FieldAutomorphism {
    pub exponent: u32,
}

impl FieldAutomorphism {
    pub const IDENTITY: FieldAutomorphism = FieldAutomorphism { exponent: 0 };

    pub fn new(exponent: u32, spec: &FieldSpec) -> Self {
        FieldAutomorphism {
            exponent: exponent % spec.e(),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.exponent == 0
    }

    #[inline]
    pub fn apply(&self, spec: &FieldSpec, a: u32) -> u32 {
        if self.exponent == 0 {
            a
        } else {
            spec.frobenius(self.exponent, a)
        }
    }

    pub fn compose(&self, other: &Self, spec: &FieldSpec) -> Self {
        FieldAutomorphism::new(self.exponent + other.exponent, spec)
    }

    pub fn inverse(&self, spec: &FieldSpec) -> Self {
        FieldAutomorphism::new(spec.e() - self.exponent % spec.e(), spec)
    }
}

/// All e automorphisms, identity first.
pub fn field_automorphisms(spec: &FieldSpec) -> Vec<FieldAutomorphism> {
    (0..spec.e())
        .map(|j| FieldAutomorphism { exponent: j })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_moduli() {
        assert_eq!(default_modulus(2, 1), vec![0, 1]);
        assert_eq!(default_modulus(2, 2), vec![1, 1, 1]);
        assert_eq!(default_modulus(3, 2), vec![1, 0, 1]);
        assert_eq!(default_modulus(2, 3), vec![1, 0, 1, 1]);
    }

    #[test]
    fn small_identities() {
        let f5 = fq_make(5, 1).unwrap();
        assert_eq!(f5.inv(2), 3);
        let f4 = fq_make(2, 2).unwrap();
        // x has encoding 2, x+1 has encoding 3
        assert_eq!(f4.mul(2, 2), 3);
        assert_eq!(field_automorphisms(&f4).len(), 2);
        assert_eq!(field_automorphisms(&fq_make(2, 1).unwrap()).len(), 1);
        assert_eq!(field_automorphisms(&fq_make(3, 2).unwrap()).len(), 2);
    }

    #[test]
    fn rejects_bad_input() {
        assert_eq!(fq_make(4, 1).unwrap_err(), Error::NotPrime(4));
        assert_eq!(fq_make(2, 0).unwrap_err(), Error::ZeroDegree);
        assert!(fq_make(2, 9).unwrap_err().is_guard());
        assert_eq!(split_prime_power(12).unwrap_err(), Error::NotPrimePower(12));
        assert_eq!(split_prime_power(64).unwrap(), (2, 6));
    }

    #[test]
    fn exhaustive_axioms() {
        for (p, e) in [
            (2, 1),
            (3, 1),
            (2, 2),
            (5, 1),
            (7, 1),
            (2, 3),
            (3, 2),
            (2, 4),
        ] {
            let f = fq_make(p, e).unwrap();
            let q = f.q();
            for a in 0..q {
                assert_eq!(f.pow(a, q as i64).unwrap(), a);
                if a != 0 {
                    assert_eq!(f.pow(a, (q - 1) as i64).unwrap(), 1);
                    assert_eq!(f.inv(f.inv(a)), a);
                    assert_eq!(f.pow(a, -1).unwrap(), f.inv(a));
                }
                // frobenius^e is the identity
                let mut x = a;
                for _ in 0..e {
                    x = f.frobenius(1, x);
                }
                assert_eq!(x, a);
                for b in 0..q {
                    for j in 0..e {
                        let mu = FieldAutomorphism::new(j, &f);
                        assert_eq!(
                            mu.apply(&f, f.add(a, b)),
                            f.add(mu.apply(&f, a), mu.apply(&f, b))
                        );
                        assert_eq!(
                            mu.apply(&f, f.mul(a, b)),
                            f.mul(mu.apply(&f, a), mu.apply(&f, b))
                        );
                    }
                    for c in 0..q {
                        assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                        assert_eq!(f.mul(a, f.mul(b, c)), f.mul(f.mul(a, b), c));
                    }
                }
            }
            assert_eq!(f.order(f.primitive_element()), q - 1);
        }
    }

    #[test]
    fn wrapper_and_text() {
        let f4 = fq_make(2, 2).unwrap();
        let f2 = fq_make(2, 1).unwrap();
        let x = FieldElement::new(&f4, 2).unwrap();
        assert_eq!(fq_mul(&x, &x).unwrap().coeffs(), vec![1, 1]);
        assert_eq!(
            fq_inv(&FieldElement::new(&f4, 0).unwrap()).unwrap_err(),
            Error::ZeroInverse
        );
        let one2 = FieldElement::new(&f2, 1).unwrap();
        assert_eq!(fq_add(&x, &one2).unwrap_err(), Error::FieldMismatch);
        assert_eq!(fq_pow(&x, 3).unwrap().value, 1);
        assert_eq!(f4.format(3), "[1,1]");
        assert_eq!(f4.parse("[0,1]").unwrap(), 2);
        let f7 = fq_make(7, 1).unwrap();
        assert_eq!(f7.format(5), "5");
        assert_eq!(f7.parse("-1").unwrap(), 6);
    }
}
