//! Dense univariate polynomials over a [`Field`].
//!
//! A [`Poly`] only stores coefficients; all arithmetic goes through a
//! [`PolyRing`], which carries the coefficient field.

use std::cmp::Ordering;

use num_bigint::BigUint;

use super::field::Field;
use crate::arith::factorize;
use crate::error::{Error, Result};

/// Coefficients low-to-high; the leading coefficient is nonzero unless the
/// polynomial is zero (empty vector).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Poly<E> {
    coeffs: Vec<E>,
}

impl<E> Poly<E> {
    pub fn coeffs(&self) -> &[E] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<E> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree with the convention `deg 0 = -1`.
    pub fn deg(&self) -> isize {
        self.coeffs.len() as isize - 1
    }

    pub fn coeff(&self, i: usize) -> Option<&E> {
        self.coeffs.get(i)
    }

    pub fn lc(&self) -> Option<&E> {
        self.coeffs.last()
    }
}

/// Order by degree first, then by coefficients from the top down.
pub fn cmp_deg_lex<E: Ord>(a: &Poly<E>, b: &Poly<E>) -> Ordering {
    a.coeffs
        .len()
        .cmp(&b.coeffs.len())
        .then_with(|| a.coeffs.iter().rev().cmp(b.coeffs.iter().rev()))
}

#[derive(Clone, Debug)]
pub struct PolyRing<F: Field> {
    field: F,
}

impl<F: Field> PolyRing<F> {
    pub fn new(field: F) -> Self {
        PolyRing { field }
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn zero(&self) -> Poly<F::Elem> {
        Poly { coeffs: Vec::new() }
    }

    pub fn one(&self) -> Poly<F::Elem> {
        self.constant(self.field.one())
    }

    pub fn x(&self) -> Poly<F::Elem> {
        self.monomial(self.field.one(), 1)
    }

    pub fn constant(&self, c: F::Elem) -> Poly<F::Elem> {
        self.from_coeffs(vec![c])
    }

    pub fn monomial(&self, c: F::Elem, k: usize) -> Poly<F::Elem> {
        let mut coeffs = vec![self.field.zero(); k];
        coeffs.push(c);
        self.from_coeffs(coeffs)
    }

    pub fn from_coeffs(&self, mut coeffs: Vec<F::Elem>) -> Poly<F::Elem> {
        while coeffs.last().is_some_and(|c| self.field.is_zero(c)) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn from_u64s(&self, coeffs: &[u64]) -> Poly<F::Elem> {
        self.from_coeffs(coeffs.iter().map(|&c| self.field.from_u64(c)).collect())
    }

    pub fn is_monic(&self, a: &Poly<F::Elem>) -> bool {
        a.lc().is_some_and(|c| self.field.is_one(c))
    }

    pub fn is_one(&self, a: &Poly<F::Elem>) -> bool {
        a.degree() == Some(0) && self.field.is_one(&a.coeffs[0])
    }

    pub fn monic(&self, a: &Poly<F::Elem>) -> Poly<F::Elem> {
        match a.lc() {
            None => a.clone(),
            Some(lc) => {
                let inv = self.field.inv(lc).expect("nonzero leading coefficient");
                self.scale(a, &inv)
            }
        }
    }

    pub fn add(&self, a: &Poly<F::Elem>, b: &Poly<F::Elem>) -> Poly<F::Elem> {
        let n = a.coeffs.len().max(b.coeffs.len());
        let z = self.field.zero();
        let coeffs = (0..n)
            .map(|i| self.field.add(a.coeffs.get(i).unwrap_or(&z), b.coeffs.get(i).unwrap_or(&z)))
            .collect();
        self.from_coeffs(coeffs)
    }

    pub fn sub(&self, a: &Poly<F::Elem>, b: &Poly<F::Elem>) -> Poly<F::Elem> {
        let n = a.coeffs.len().max(b.coeffs.len());
        let z = self.field.zero();
        let coeffs = (0..n)
            .map(|i| self.field.sub(a.coeffs.get(i).unwrap_or(&z), b.coeffs.get(i).unwrap_or(&z)))
            .collect();
        self.from_coeffs(coeffs)
    }

    pub fn neg(&self, a: &Poly<F::Elem>) -> Poly<F::Elem> {
        Poly { coeffs: a.coeffs.iter().map(|c| self.field.neg(c)).collect() }
    }

    pub fn scale(&self, a: &Poly<F::Elem>, c: &F::Elem) -> Poly<F::Elem> {
        self.from_coeffs(a.coeffs.iter().map(|x| self.field.mul(x, c)).collect())
    }

    /// `a · X^k`
    pub fn shift(&self, a: &Poly<F::Elem>, k: usize) -> Poly<F::Elem> {
        if a.is_zero() {
            return a.clone();
        }
        let mut coeffs = vec![self.field.zero(); k];
        coeffs.extend(a.coeffs.iter().cloned());
        Poly { coeffs }
    }

    pub fn mul(&self, a: &Poly<F::Elem>, b: &Poly<F::Elem>) -> Poly<F::Elem> {
        if a.is_zero() || b.is_zero() {
            return self.zero();
        }
        let mut out = vec![self.field.zero(); a.coeffs.len() + b.coeffs.len() - 1];
        for (i, x) in a.coeffs.iter().enumerate() {
            if self.field.is_zero(x) {
                continue;
            }
            for (j, y) in b.coeffs.iter().enumerate() {
                let t = self.field.mul(x, y);
                out[i + j] = self.field.add(&out[i + j], &t);
            }
        }
        self.from_coeffs(out)
    }

    pub fn divrem(
        &self,
        a: &Poly<F::Elem>,
        b: &Poly<F::Elem>,
    ) -> Result<(Poly<F::Elem>, Poly<F::Elem>)> {
        let db = b.degree().ok_or_else(|| Error::Domain("division by the zero polynomial".into()))?;
        if a.deg() < db as isize {
            return Ok((self.zero(), a.clone()));
        }
        let inv_lc = self.field.inv(b.lc().unwrap())?;
        let monic_b = self.field.is_one(b.lc().unwrap());
        let mut rem = a.coeffs.clone();
        let mut quot = vec![self.field.zero(); rem.len() - db];
        for top in (db..rem.len()).rev() {
            let c = rem[top].clone();
            if self.field.is_zero(&c) {
                continue;
            }
            let factor = if monic_b { c } else { self.field.mul(&c, &inv_lc) };
            for (j, bj) in b.coeffs.iter().enumerate() {
                let idx = top - db + j;
                rem[idx] = self.field.sub(&rem[idx], &self.field.mul(&factor, bj));
            }
            quot[top - db] = factor;
        }
        rem.truncate(db);
        Ok((self.from_coeffs(quot), self.from_coeffs(rem)))
    }

    pub fn rem(&self, a: &Poly<F::Elem>, b: &Poly<F::Elem>) -> Result<Poly<F::Elem>> {
        Ok(self.divrem(a, b)?.1)
    }

    /// Quotient when `b | a` is known; errors otherwise.
    pub fn div_exact(&self, a: &Poly<F::Elem>, b: &Poly<F::Elem>) -> Result<Poly<F::Elem>> {
        let (q, r) = self.divrem(a, b)?;
        if !r.is_zero() {
            return Err(Error::Internal("inexact polynomial division".into()));
        }
        Ok(q)
    }

    pub fn divides(&self, b: &Poly<F::Elem>, a: &Poly<F::Elem>) -> bool {
        self.rem(a, b).map(|r| r.is_zero()).unwrap_or(false)
    }

    pub fn eval(&self, a: &Poly<F::Elem>, x: &F::Elem) -> F::Elem {
        a.coeffs
            .iter()
            .rev()
            .fold(self.field.zero(), |acc, c| self.field.add(&self.field.mul(&acc, x), c))
    }

    pub fn derivative(&self, a: &Poly<F::Elem>) -> Poly<F::Elem> {
        let coeffs = a
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| self.field.mul(c, &self.field.from_u64(i as u64)))
            .collect();
        self.from_coeffs(coeffs)
    }

    /// Monic gcd (zero only when both inputs are zero).
    pub fn gcd(&self, a: &Poly<F::Elem>, b: &Poly<F::Elem>) -> Poly<F::Elem> {
        let (mut r0, mut r1) = (a.clone(), b.clone());
        while !r1.is_zero() {
            let r = self.rem(&r0, &r1).expect("nonzero divisor");
            r0 = r1;
            r1 = r;
        }
        self.monic(&r0)
    }

    /// Returns `(g, s, t)` with `s·a + t·b = g` and `g` monic.
    pub fn xgcd(
        &self,
        a: &Poly<F::Elem>,
        b: &Poly<F::Elem>,
    ) -> (Poly<F::Elem>, Poly<F::Elem>, Poly<F::Elem>) {
        let (mut r0, mut r1) = (a.clone(), b.clone());
        let (mut s0, mut s1) = (self.one(), self.zero());
        let (mut t0, mut t1) = (self.zero(), self.one());
        while !r1.is_zero() {
            let (q, r) = self.divrem(&r0, &r1).expect("nonzero divisor");
            let s = self.sub(&s0, &self.mul(&q, &s1));
            let t = self.sub(&t0, &self.mul(&q, &t1));
            (r0, r1) = (r1, r);
            (s0, s1) = (s1, s);
            (t0, t1) = (t1, t);
        }
        match r0.lc() {
            None => (r0, s0, t0),
            Some(lc) => {
                let inv = self.field.inv(lc).expect("nonzero");
                (self.scale(&r0, &inv), self.scale(&s0, &inv), self.scale(&t0, &inv))
            }
        }
    }

    pub fn mulmod(
        &self,
        a: &Poly<F::Elem>,
        b: &Poly<F::Elem>,
        m: &Poly<F::Elem>,
    ) -> Poly<F::Elem> {
        self.rem(&self.mul(a, b), m).expect("nonzero modulus")
    }

    pub fn powmod(&self, a: &Poly<F::Elem>, e: &BigUint, m: &Poly<F::Elem>) -> Poly<F::Elem> {
        let base = self.rem(a, m).expect("nonzero modulus");
        let mut acc = self.rem(&self.one(), m).expect("nonzero modulus");
        for i in (0..e.bits()).rev() {
            acc = self.mulmod(&acc, &acc, m);
            if e.bit(i) {
                acc = self.mulmod(&acc, &base, m);
            }
        }
        acc
    }

    pub fn powmod_u64(&self, a: &Poly<F::Elem>, e: u64, m: &Poly<F::Elem>) -> Poly<F::Elem> {
        self.powmod(a, &BigUint::from(e), m)
    }

    pub fn pow(&self, a: &Poly<F::Elem>, mut e: u32) -> Poly<F::Elem> {
        let mut acc = self.one();
        let mut base = a.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    /// `X^(q^i) mod m` for `i = 0..=count`, by iterated Frobenius.
    pub fn frobenius_powers(&self, m: &Poly<F::Elem>, count: usize) -> Vec<Poly<F::Elem>> {
        let q = self.field.size();
        let mut out = Vec::with_capacity(count + 1);
        let mut cur = self.rem(&self.x(), m).expect("nonzero modulus");
        out.push(cur.clone());
        for _ in 0..count {
            cur = self.powmod(&cur, &q, m);
            out.push(cur.clone());
        }
        out
    }

    /// Rabin's irreducibility test.
    pub fn is_irreducible(&self, a: &Poly<F::Elem>) -> bool {
        let n = match a.degree() {
            None | Some(0) => return false,
            Some(1) => return true,
            Some(n) => n,
        };
        let a = self.monic(a);
        let frob = self.frobenius_powers(&a, n);
        let x = self.rem(&self.x(), &a).unwrap();
        if frob[n] != x {
            return false;
        }
        for (r, _) in factorize(n as u64) {
            let h = self.sub(&frob[n / r as usize], &x);
            if !self.is_one(&self.gcd(&h, &a)) {
                return false;
            }
        }
        true
    }

    /// `v^i mod u` for `i = 1..=k`.
    pub fn modcomp_powers(
        &self,
        v: &Poly<F::Elem>,
        u: &Poly<F::Elem>,
        k: usize,
    ) -> Result<Vec<Poly<F::Elem>>> {
        if u.is_zero() {
            return Err(Error::Domain("modulus must be nonzero".into()));
        }
        let base = self.rem(v, u)?;
        let mut out = Vec::with_capacity(k);
        let mut cur = base.clone();
        for _ in 0..k {
            out.push(cur.clone());
            cur = self.mulmod(&cur, &base, u);
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::field::FieldSpec;

    fn ring(p: u64) -> PolyRing<FieldSpec> {
        PolyRing::new(FieldSpec::prime(p).unwrap())
    }

    #[test]
    fn arithmetic_examples() {
        let r = ring(5);
        let a = r.from_u64s(&[1, 1]);
        let b = r.from_u64s(&[4, 1]);
        assert_eq!(r.mul(&a, &b), r.from_u64s(&[4, 0, 1]));
        let (q, rem) = r.divrem(&r.from_u64s(&[0, 0, 0, 1]), &r.from_u64s(&[1, 0, 1])).unwrap();
        assert_eq!(q, r.from_u64s(&[0, 1]));
        assert_eq!(rem, r.from_u64s(&[0, 4]));
        assert!(r.divrem(&a, &r.zero()).is_err());

        let r31 = ring(31);
        assert_eq!(r31.eval(&r31.from_u64s(&[7, 3, 1]), &2), 17);
    }

    #[test]
    fn gcd_examples() {
        let r = ring(5);
        let g = r.gcd(&r.from_u64s(&[4, 0, 1]), &r.from_u64s(&[4, 1]));
        assert_eq!(g, r.from_u64s(&[4, 1]));
        let g = r.gcd(&r.from_u64s(&[1, 0, 1]), &r.from_u64s(&[2, 0, 1]));
        assert!(r.is_one(&g));
    }

    #[test]
    fn irreducibility_examples() {
        let r = ring(5);
        assert!(r.is_irreducible(&r.from_u64s(&[2, 0, 1])));
        assert!(!r.is_irreducible(&r.from_u64s(&[4, 0, 1])));
        let r2 = ring(2);
        assert!(r2.is_irreducible(&r2.from_u64s(&[1, 1, 1])));
        assert!(!r2.is_irreducible(&r2.from_u64s(&[1, 0, 1])));
    }

    #[test]
    fn modcomp_examples() {
        let r = ring(5);
        let u = r.from_u64s(&[1, 0, 1]);
        let v = r.x();
        let pw = r.modcomp_powers(&v, &u, 2).unwrap();
        assert_eq!(pw, vec![r.x(), r.from_u64s(&[4])]);
        assert_eq!(r.modcomp_powers(&v, &u, 1).unwrap(), vec![v]);
    }

    #[test]
    fn deg_lex_order() {
        let r = ring(2);
        let mut v = vec![r.from_u64s(&[1, 1, 1]), r.from_u64s(&[1, 1]), r.from_u64s(&[0, 1])];
        v.sort_by(cmp_deg_lex);
        assert_eq!(v[0], r.x());
        assert_eq!(v[2].degree(), Some(2));
    }
}
