//! Finite fields: `F_q` given by a [`FieldSpec`] and residue fields
//! `K[X]/(m)` over any other field.

use std::fmt::Debug;
use std::hash::Hash;

use num_bigint::BigUint;
use rand::{Rng, RngCore};

use super::poly::{Poly, PolyRing};
use crate::arith::{add_mod, is_prime, mul_mod, sub_mod};
use crate::error::{Error, Result};

/// Exact arithmetic in a finite field with a canonical element representation.
pub trait Field: Clone + Debug + Send + Sync {
    type Elem: Clone + PartialEq + Eq + Hash + Ord + Debug + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Result<Self::Elem>;
    /// Image of the integer `n` under `Z → F`.
    fn from_u64(&self, n: u64) -> Self::Elem;
    fn characteristic(&self) -> u64;
    /// Degree over the prime field.
    fn degree(&self) -> u32;
    fn random(&self, rng: &mut dyn RngCore) -> Self::Elem;
    /// The `index`-th element in a fixed enumeration of the field, `index < size`.
    fn element(&self, index: u64) -> Self::Elem;

    fn size(&self) -> BigUint {
        BigUint::from(self.characteristic()).pow(self.degree())
    }

    fn size_u64(&self) -> Option<u64> {
        (self.characteristic() as u128)
            .checked_pow(self.degree())
            .filter(|&s| s <= u64::MAX as u128)
            .map(|s| s as u64)
    }

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    fn pow(&self, a: &Self::Elem, e: &BigUint) -> Self::Elem {
        let mut acc = self.one();
        for i in (0..e.bits()).rev() {
            acc = self.mul(&acc, &acc);
            if e.bit(i) {
                acc = self.mul(&acc, a);
            }
        }
        acc
    }

    fn pow_u64(&self, a: &Self::Elem, mut e: u64) -> Self::Elem {
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

    /// The unique `p`-th root (Frobenius is bijective on finite fields).
    fn pth_root(&self, a: &Self::Elem) -> Self::Elem {
        let p = BigUint::from(self.characteristic());
        let e = p.pow(self.degree() - 1);
        self.pow(a, &e)
    }
}

/// `F_q` with `q = p^k`; elements are packed base-`p` digit vectors in a `u64`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FieldSpec {
    p: u64,
    k: u32,
    /// Monic irreducible modulus of degree `k` over `F_p`, low-to-high (empty when `k == 1`).
    modulus: Vec<u64>,
    q: u64,
}

impl FieldSpec {
    pub fn prime(p: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::Domain(format!("{p} is not prime")));
        }
        if p >= 1 << 61 {
            return Err(Error::Domain(format!("characteristic {p} exceeds 2^61")));
        }
        Ok(FieldSpec { p, k: 1, modulus: Vec::new(), q: p })
    }

    /// `F_p[t]/(modulus)`; `modulus` given low-to-high, must be monic irreducible of degree `k ≤ 16`.
    pub fn extension(p: u64, modulus: Vec<u64>) -> Result<Self> {
        let base = FieldSpec::prime(p)?;
        let k = modulus.len().saturating_sub(1) as u32;
        if k == 0 {
            return Err(Error::Domain("extension modulus must have positive degree".into()));
        }
        if k == 1 {
            return Ok(base);
        }
        if k > 16 {
            return Err(Error::Domain(format!("extension degree {k} exceeds 16")));
        }
        let q = (p as u128).checked_pow(k).filter(|&q| q < 1u128 << 62).ok_or_else(|| {
            Error::Domain(format!("field size {p}^{k} does not fit a machine word"))
        })? as u64;
        let modulus: Vec<u64> = modulus.into_iter().map(|c| c % p).collect();
        if *modulus.last().unwrap() != 1 {
            return Err(Error::Domain("extension modulus must be monic".into()));
        }
        let ring = PolyRing::new(base);
        let m = ring.from_coeffs(modulus.clone());
        if !ring.is_irreducible(&m) {
            return Err(Error::Domain(format!("modulus {:?} is reducible over F_{p}", modulus)));
        }
        Ok(FieldSpec { p, k, modulus, q })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    /// Digit vector (length `k`) of a packed element.
    pub fn digits(&self, mut a: u64) -> Vec<u64> {
        let mut out = Vec::with_capacity(self.k as usize);
        for _ in 0..self.k {
            out.push(a % self.p);
            a /= self.p;
        }
        out
    }

    pub fn pack(&self, digits: &[u64]) -> u64 {
        digits.iter().rev().fold(0u64, |acc, &d| acc * self.p + d % self.p)
    }

    fn digits_fixed(&self, mut a: u64) -> [u64; 16] {
        let mut out = [0u64; 16];
        for d in out.iter_mut().take(self.k as usize) {
            *d = a % self.p;
            a /= self.p;
        }
        out
    }

    fn pack_fixed(&self, digits: &[u64]) -> u64 {
        digits.iter().rev().fold(0u64, |acc, &d| acc * self.p + d)
    }

    fn ext_mul(&self, a: u64, b: u64) -> u64 {
        let k = self.k as usize;
        let p = self.p as u128;
        let da = self.digits_fixed(a);
        let db = self.digits_fixed(b);
        let mut prod = [0u128; 32];
        for i in 0..k {
            if da[i] == 0 {
                continue;
            }
            for j in 0..k {
                prod[i + j] = (prod[i + j] + da[i] as u128 * db[j] as u128) % p;
            }
        }
        for top in (k..2 * k - 1).rev() {
            let c = prod[top];
            if c == 0 {
                continue;
            }
            for j in 0..k {
                let idx = top - k + j;
                let t = c * self.modulus[j] as u128 % p;
                prod[idx] = (prod[idx] + p - t) % p;
            }
        }
        let mut out = [0u64; 16];
        for i in 0..k {
            out[i] = prod[i] as u64;
        }
        self.pack_fixed(&out[..k])
    }

    /// Text form: `p=31` or `p=2,k=2,mod=1,1,1`.
    pub fn encode(&self) -> String {
        if self.k == 1 {
            format!("p={}", self.p)
        } else {
            let m: Vec<String> = self.modulus.iter().map(|c| c.to_string()).collect();
            format!("p={},k={},mod={}", self.p, self.k, m.join(","))
        }
    }

    pub fn parse(text: &str) -> Result<Self> {
        let text = text.trim();
        let mut p = None;
        let mut k = None;
        let mut modulus = None;
        // "mod=" swallows the remaining comma-separated list
        let (head, tail) = match text.find("mod=") {
            Some(pos) => (&text[..pos], Some(&text[pos + 4..])),
            None => (text, None),
        };
        for part in head.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let (key, value) = part
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("bad field spec component '{part}'")))?;
            let v: u64 = value
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad integer in field spec: '{value}'")))?;
            match key.trim() {
                "p" => p = Some(v),
                "k" => k = Some(v as u32),
                other => return Err(Error::Parse(format!("unknown field spec key '{other}'"))),
            }
        }
        if let Some(tail) = tail {
            let coeffs: std::result::Result<Vec<u64>, _> =
                tail.split(',').map(|s| s.trim().parse::<u64>()).collect();
            modulus = Some(coeffs.map_err(|_| Error::Parse(format!("bad modulus '{tail}'")))?);
        }
        let p = p.ok_or_else(|| Error::Parse("field spec lacks p=".into()))?;
        match (k.unwrap_or(1), modulus) {
            (1, None) => FieldSpec::prime(p),
            (k, Some(m)) => {
                if m.len() as u32 != k + 1 {
                    return Err(Error::Parse(format!("modulus has degree {} but k={k}", m.len() - 1)));
                }
                FieldSpec::extension(p, m)
            }
            (k, None) => Err(Error::Parse(format!("k={k} requires mod=..."))),
        }
    }
}

impl Field for FieldSpec {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }

    fn add(&self, a: &u64, b: &u64) -> u64 {
        if self.k == 1 {
            return add_mod(*a, *b, self.p);
        }
        let (mut da, db) = (self.digits_fixed(*a), self.digits_fixed(*b));
        for (x, y) in da.iter_mut().zip(db) {
            *x = add_mod(*x, y, self.p);
        }
        self.pack_fixed(&da[..self.k as usize])
    }

    fn sub(&self, a: &u64, b: &u64) -> u64 {
        if self.k == 1 {
            return sub_mod(*a, *b, self.p);
        }
        let (mut da, db) = (self.digits_fixed(*a), self.digits_fixed(*b));
        for (x, y) in da.iter_mut().zip(db) {
            *x = sub_mod(*x, y, self.p);
        }
        self.pack_fixed(&da[..self.k as usize])
    }

    fn neg(&self, a: &u64) -> u64 {
        self.sub(&0, a)
    }

    fn mul(&self, a: &u64, b: &u64) -> u64 {
        if self.k == 1 {
            mul_mod(*a, *b, self.p)
        } else {
            self.ext_mul(*a, *b)
        }
    }

    fn inv(&self, a: &u64) -> Result<u64> {
        if *a == 0 {
            return Err(Error::Domain("inverse of zero".into()));
        }
        Ok(self.pow_u64(a, self.q - 2))
    }

    fn from_u64(&self, n: u64) -> u64 {
        n % self.p
    }

    fn characteristic(&self) -> u64 {
        self.p
    }

    fn degree(&self) -> u32 {
        self.k
    }

    fn random(&self, rng: &mut dyn RngCore) -> u64 {
        rng.gen_range(0..self.q)
    }

    fn element(&self, index: u64) -> u64 {
        debug_assert!(index < self.q);
        index
    }

    fn size_u64(&self) -> Option<u64> {
        Some(self.q)
    }
}

/// `K[X]/(m)` for a monic irreducible `m` over a field `K`.
#[derive(Clone, Debug)]
pub struct ResidueField<F: Field> {
    ring: PolyRing<F>,
    modulus: Poly<F::Elem>,
}

impl<F: Field> ResidueField<F> {
    /// `modulus` must be monic irreducible; irreducibility is the caller's promise
    /// (checked in debug builds).
    pub fn new(base: F, modulus: Poly<F::Elem>) -> Self {
        let ring = PolyRing::new(base);
        debug_assert!(ring.is_monic(&modulus) && ring.is_irreducible(&modulus));
        ResidueField { ring, modulus }
    }

    pub fn base(&self) -> &F {
        self.ring.field()
    }

    pub fn base_ring(&self) -> &PolyRing<F> {
        &self.ring
    }

    pub fn modulus(&self) -> &Poly<F::Elem> {
        &self.modulus
    }

    /// Reduce an arbitrary base polynomial into the residue field.
    pub fn reduce(&self, a: &Poly<F::Elem>) -> Poly<F::Elem> {
        self.ring.rem(a, &self.modulus).expect("modulus is nonzero")
    }

    pub fn embed(&self, c: &F::Elem) -> Poly<F::Elem> {
        self.ring.constant(c.clone())
    }

    fn ext_degree(&self) -> usize {
        self.modulus.degree().unwrap_or(0)
    }
}

impl<F: Field> Field for ResidueField<F> {
    type Elem = Poly<F::Elem>;

    fn zero(&self) -> Self::Elem {
        self.ring.zero()
    }
    fn one(&self) -> Self::Elem {
        self.ring.one()
    }
    fn is_zero(&self, a: &Self::Elem) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.ring.add(a, b)
    }
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.ring.sub(a, b)
    }
    fn neg(&self, a: &Self::Elem) -> Self::Elem {
        self.ring.neg(a)
    }
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.reduce(&self.ring.mul(a, b))
    }
    fn inv(&self, a: &Self::Elem) -> Result<Self::Elem> {
        if a.is_zero() {
            return Err(Error::Domain("inverse of zero".into()));
        }
        let (g, s, _) = self.ring.xgcd(a, &self.modulus);
        if g.degree() != Some(0) {
            return Err(Error::Domain("element is not invertible modulo a reducible modulus".into()));
        }
        Ok(self.reduce(&s))
    }
    fn from_u64(&self, n: u64) -> Self::Elem {
        self.ring.constant(self.base().from_u64(n))
    }
    fn characteristic(&self) -> u64 {
        self.base().characteristic()
    }
    fn degree(&self) -> u32 {
        self.base().degree() * self.ext_degree() as u32
    }
    fn random(&self, rng: &mut dyn RngCore) -> Self::Elem {
        let coeffs = (0..self.ext_degree()).map(|_| self.base().random(rng)).collect();
        self.ring.from_coeffs(coeffs)
    }
    fn element(&self, mut index: u64) -> Self::Elem {
        let q = self.base().size_u64().expect("enumerable base field");
        let mut coeffs = Vec::with_capacity(self.ext_degree());
        for _ in 0..self.ext_degree() {
            coeffs.push(self.base().element(index % q));
            index /= q;
        }
        self.ring.from_coeffs(coeffs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_examples() {
        let f = FieldSpec::prime(31).unwrap();
        assert_eq!(f.inv(&2).unwrap(), 16);
        assert_eq!(f.pow_u64(&3, 30), 1);
        assert!(f.inv(&0).is_err());
        assert!(FieldSpec::prime(33).is_err());
    }

    #[test]
    fn gf4_multiplication() {
        let f = FieldSpec::parse("p=2,k=2,mod=1,1,1").unwrap();
        assert_eq!(f.q(), 4);
        let t = f.pack(&[0, 1]);
        assert_eq!(f.mul(&t, &t), f.pack(&[1, 1]));
        assert_eq!(f.encode(), "p=2,k=2,mod=1,1,1");
        for a in 1..4 {
            assert_eq!(f.mul(&a, &f.inv(&a).unwrap()), 1);
        }
    }

    #[test]
    fn reducible_modulus_rejected() {
        assert!(FieldSpec::extension(2, vec![1, 0, 1]).is_err());
        assert!(FieldSpec::parse("p=5,k=2").is_err());
    }

    #[test]
    fn residue_field_inverse() {
        let f = FieldSpec::prime(5).unwrap();
        let ring = PolyRing::new(f.clone());
        let m = ring.from_coeffs(vec![2, 0, 1]); // X^2 + 2
        let k = ResidueField::new(f, m);
        assert_eq!(k.size_u64(), Some(25));
        for i in 1..25 {
            let a = k.element(i);
            assert!(k.is_one(&k.mul(&a, &k.inv(&a).unwrap())));
        }
    }
}
