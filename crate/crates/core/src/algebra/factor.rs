//! Factorization over finite fields: squarefree decomposition, distinct-degree
//! splitting (with an early-abort smoothness mode) and Cantor–Zassenhaus.

use num_bigint::BigUint;
use num_traits::One;
use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::field::Field;
use super::poly::{cmp_deg_lex, Poly, PolyRing};

/// Factorization as `(monic irreducible, multiplicity)` pairs in degree-lex order.
pub type Factorization<E> = Vec<(Poly<E>, u32)>;

impl<F: Field> PolyRing<F> {
    /// `c(X^p) -> c(X)^{1/p}` style root of a polynomial whose derivative vanishes.
    fn poly_pth_root(&self, a: &Poly<F::Elem>) -> Poly<F::Elem> {
        let p = self.field().characteristic() as usize;
        let coeffs = a
            .coeffs()
            .iter()
            .step_by(p)
            .map(|c| self.field().pth_root(c))
            .collect();
        self.from_coeffs(coeffs)
    }

    /// Squarefree decomposition of a nonzero polynomial (monic parts, unsorted).
    pub fn squarefree(&self, a: &Poly<F::Elem>) -> Factorization<F::Elem> {
        let f = self.monic(a);
        let mut out = Vec::new();
        if f.deg() <= 0 {
            return out;
        }
        let mut c = self.gcd(&f, &self.derivative(&f));
        let mut w = self.div_exact(&f, &c).expect("gcd divides");
        let mut i = 1u32;
        while !self.is_one(&w) {
            let y = self.gcd(&w, &c);
            let z = self.div_exact(&w, &y).expect("gcd divides");
            if !self.is_one(&z) {
                out.push((z, i));
            }
            i += 1;
            c = self.div_exact(&c, &y).expect("gcd divides");
            w = y;
        }
        if !self.is_one(&c) {
            let p = self.field().characteristic() as u32;
            for (g, e) in self.squarefree(&self.poly_pth_root(&c)) {
                out.push((g, e * p));
            }
        }
        out
    }

    /// Distinct-degree factorization of a squarefree monic polynomial.
    ///
    /// With `limit = Some(mu)` this returns `None` as soon as some factor is
    /// known to have degree above `mu`.
    pub fn distinct_degree(
        &self,
        a: &Poly<F::Elem>,
        limit: Option<usize>,
    ) -> Option<Vec<(Poly<F::Elem>, usize)>> {
        let q = self.field().size();
        let mut f = self.monic(a);
        let mut out = Vec::new();
        let x = self.x();
        let mut h = self.rem(&x, &f).ok()?;
        let mut d = 1usize;
        while f.deg() >= 2 * d as isize {
            if limit.is_some_and(|mu| d > mu) {
                return None;
            }
            h = self.powmod(&h, &q, &f);
            let g = self.gcd(&self.sub(&h, &x), &f);
            if !self.is_one(&g) {
                f = self.div_exact(&f, &g).expect("gcd divides");
                h = self.rem(&h, &f).expect("nonzero");
                out.push((g, d));
            }
            d += 1;
        }
        if let Some(df) = f.degree().filter(|&df| df > 0) {
            if limit.is_some_and(|mu| df > mu) {
                return None;
            }
            out.push((f, df));
        }
        Some(out)
    }

    /// Split a squarefree monic product of degree-`d` irreducibles.
    pub fn equal_degree(
        &self,
        a: &Poly<F::Elem>,
        d: usize,
        rng: &mut dyn RngCore,
    ) -> Vec<Poly<F::Elem>> {
        let n = a.degree().expect("nonzero input");
        if n == d {
            return vec![self.monic(a)];
        }
        let field = self.field();
        let odd = field.characteristic() != 2;
        let exponent = if odd {
            (field.size().pow(d as u32) - BigUint::one()) / 2u32
        } else {
            BigUint::one()
        };
        let trace_len = field.degree() as usize * d;
        loop {
            let r = self.from_coeffs((0..n).map(|_| field.random(rng)).collect());
            if r.deg() <= 0 {
                continue;
            }
            let b = if odd {
                self.sub(&self.powmod(&r, &exponent, a), &self.one())
            } else {
                let mut t = self.rem(&r, a).expect("nonzero");
                let mut acc = t.clone();
                for _ in 1..trace_len {
                    t = self.mulmod(&t, &t, a);
                    acc = self.add(&acc, &t);
                }
                acc
            };
            let g = self.gcd(&b, a);
            if let Some(dg) = g.degree() {
                if dg > 0 && dg < n {
                    let h = self.div_exact(a, &g).expect("gcd divides");
                    let mut out = self.equal_degree(&g, d, rng);
                    out.extend(self.equal_degree(&h, d, rng));
                    return out;
                }
            }
        }
    }

    fn assemble(&self, parts: Vec<(Poly<F::Elem>, u32)>) -> Factorization<F::Elem> {
        let mut parts = parts;
        parts.sort_by(|a, b| cmp_deg_lex(&a.0, &b.0));
        let mut out: Factorization<F::Elem> = Vec::new();
        for (p, e) in parts {
            match out.last_mut() {
                Some((q, m)) if *q == p => *m += e,
                _ => out.push((p, e)),
            }
        }
        out
    }

    /// Full factorization with an explicit random source for the splitting step.
    pub fn factor_with(&self, a: &Poly<F::Elem>, rng: &mut dyn RngCore) -> Factorization<F::Elem> {
        let mut parts = Vec::new();
        for (s, e) in self.squarefree(a) {
            let dd = self.distinct_degree(&s, None).expect("no limit");
            for (g, d) in dd {
                for h in self.equal_degree(&g, d, rng) {
                    parts.push((h, e));
                }
            }
        }
        self.assemble(parts)
    }

    /// Full factorization. The output is canonical, so a fixed internal seed is used.
    pub fn factor(&self, a: &Poly<F::Elem>) -> Factorization<F::Elem> {
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
        self.factor_with(a, &mut rng)
    }

    /// Factorization if every irreducible factor has degree `<= mu`, else `None`.
    pub fn smooth_factor(&self, a: &Poly<F::Elem>, mu: usize) -> Option<Factorization<F::Elem>> {
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
        let sqf = self.squarefree(a);
        let mut dds = Vec::with_capacity(sqf.len());
        for (s, e) in sqf {
            dds.push((self.distinct_degree(&s, Some(mu))?, e));
        }
        let mut parts = Vec::new();
        for (dd, e) in dds {
            for (g, d) in dd {
                for h in self.equal_degree(&g, d, &mut rng) {
                    parts.push((h, e));
                }
            }
        }
        Some(self.assemble(parts))
    }

    /// `gcd(a, X^Q − X)`: the product of the distinct linear factors of `a`.
    pub fn linear_part(&self, a: &Poly<F::Elem>) -> Poly<F::Elem> {
        if a.deg() <= 0 {
            return self.one();
        }
        let a = self.monic(a);
        let x = self.x();
        let h = self.powmod(&x, &self.field().size(), &a);
        self.gcd(&self.sub(&h, &x), &a)
    }

    /// Number of distinct roots in the coefficient field.
    pub fn count_roots(&self, a: &Poly<F::Elem>) -> usize {
        if a.is_zero() {
            panic!("count_roots of the zero polynomial");
        }
        self.linear_part(a).degree().unwrap_or(0)
    }

    /// Distinct roots, in field-element order.
    pub fn roots(&self, a: &Poly<F::Elem>) -> Vec<F::Elem>
    where
        F::Elem: Ord,
    {
        let lin = self.linear_part(a);
        if lin.deg() <= 0 {
            return Vec::new();
        }
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
        let mut out: Vec<F::Elem> = self
            .equal_degree(&lin, 1, &mut rng)
            .into_iter()
            .map(|l| self.field().neg(&l.coeffs()[0].clone()))
            .collect();
        out.sort();
        out
    }

    /// Monic polynomials of exact degree `m`, in index order (`c_0` varies fastest).
    pub fn monic_of_degree(&self, m: usize) -> impl Iterator<Item = Poly<F::Elem>> + '_ {
        let q = self.field().size_u64().expect("enumerable field");
        let total = q.checked_pow(m as u32).expect("enumeration too large");
        (0..total).map(move |mut idx| {
            let mut coeffs = Vec::with_capacity(m + 1);
            for _ in 0..m {
                coeffs.push(self.field().element(idx % q));
                idx /= q;
            }
            coeffs.push(self.field().one());
            self.from_coeffs(coeffs)
        })
    }

    /// All monic irreducibles of degree `1..=mu`, ordered by degree, then by
    /// coefficient vector with the highest non-leading coefficient most significant.
    pub fn irreducibles_up_to(&self, mu: usize) -> Vec<Poly<F::Elem>> {
        (1..=mu)
            .flat_map(|m| self.monic_of_degree(m).filter(|u| self.is_irreducible(u)))
            .collect()
    }
}

/// Number of monic irreducibles of degree `m` over `F_q` (necklace formula).
pub fn count_irreducible(q: u64, m: u32) -> u64 {
    let mut sum: i128 = 0;
    for t in 1..=m {
        if m % t == 0 {
            sum += crate::arith::mobius(t as u64) as i128 * (q as i128).pow(m / t);
        }
    }
    (sum / m as i128) as u64
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::field::FieldSpec;

    fn ring(p: u64) -> PolyRing<FieldSpec> {
        PolyRing::new(FieldSpec::prime(p).unwrap())
    }

    #[test]
    fn factor_examples() {
        let r = ring(5);
        let f = r.factor(&r.from_u64s(&[4, 0, 1]));
        assert_eq!(f, vec![(r.from_u64s(&[1, 1]), 1), (r.from_u64s(&[4, 1]), 1)]);

        let r2 = ring(2);
        let f = r2.factor(&r2.from_u64s(&[0, 1, 0, 0, 1]));
        assert_eq!(
            f,
            vec![
                (r2.from_u64s(&[0, 1]), 1),
                (r2.from_u64s(&[1, 1]), 1),
                (r2.from_u64s(&[1, 1, 1]), 1)
            ]
        );
    }

    #[test]
    fn smoothness_examples() {
        let r = ring(2);
        let a = r.mul(&r.pow(&r.from_u64s(&[1, 1]), 2), &r.from_u64s(&[1, 1, 1]));
        let s = r.smooth_factor(&a, 2).unwrap();
        assert_eq!(s, vec![(r.from_u64s(&[1, 1]), 2), (r.from_u64s(&[1, 1, 1]), 1)]);
        assert!(r.smooth_factor(&a, 1).is_none());
    }

    #[test]
    fn inseparable_parts() {
        let r = ring(3);
        // (X+1)^3 (X^2+1)^6 has zero derivative pieces
        let a = r.mul(&r.pow(&r.from_u64s(&[1, 1]), 3), &r.pow(&r.from_u64s(&[1, 0, 1]), 6));
        let f = r.factor(&a);
        assert_eq!(f, vec![(r.from_u64s(&[1, 1]), 3), (r.from_u64s(&[1, 0, 1]), 6)]);
    }

    #[test]
    fn irreducible_enumeration() {
        let r2 = ring(2);
        let irr = r2.irreducibles_up_to(2);
        assert_eq!(irr, vec![r2.from_u64s(&[0, 1]), r2.from_u64s(&[1, 1]), r2.from_u64s(&[1, 1, 1])]);
        assert_eq!(count_irreducible(3, 3), 8);
        for q in [2u64, 3, 5, 7] {
            let r = ring(q);
            for m in 1..=4u32 {
                if q.pow(m) > 3000 {
                    continue;
                }
                let c = r.monic_of_degree(m as usize).filter(|u| r.is_irreducible(u)).count();
                assert_eq!(c as u64, count_irreducible(q, m), "q={q} m={m}");
            }
        }
    }

    #[test]
    fn roots_over_gf4() {
        let f = FieldSpec::extension(2, vec![1, 1, 1]).unwrap();
        let r = PolyRing::new(f);
        // X^4 - X splits completely over F_4
        let a = r.from_u64s(&[0, 1, 0, 0, 1]);
        assert_eq!(r.roots(&a), vec![0, 1, 2, 3]);
        let fac = r.factor(&r.from_u64s(&[1, 1, 0, 0, 0, 1]));
        let back = fac.iter().fold(r.one(), |acc, (p, e)| r.mul(&acc, &r.pow(p, *e)));
        assert_eq!(back, r.from_u64s(&[1, 1, 0, 0, 0, 1]));
    }
}
